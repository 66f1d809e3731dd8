#include "redcard/circuit.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "redcard/errors.hpp"

namespace redcard {

Gate Gate::rotation(PauliString p, double angle) {
  return {GateKind::pauli_rotation, 0, 0, p.canonical(), angle};
}

void Circuit::push(Gate gate) {
  const std::uint32_t total = total_qubits();
  switch (gate.kind) {
    case GateKind::pauli_rotation:
      if (!gate.pauli.has_value()) {
        throw PreconditionError("rotation gate without a Pauli axis");
      }
      if (gate.pauli->n_qubits() != n_qubits) {
        throw DimensionError("rotation axis width does not match the circuit");
      }
      break;
    case GateKind::cnot:
      if (gate.q0 >= total || gate.q1 >= total || gate.q0 == gate.q1) {
        throw DimensionError("bad cnot qubit indices");
      }
      break;
    case GateKind::barrier:
      break;
    default:
      if (gate.q0 >= total) {
        throw DimensionError("gate qubit index out of range");
      }
  }
  gates.push_back(std::move(gate));
}

std::size_t Circuit::count(GateKind kind) const {
  std::size_t n = 0;
  for (const auto& g : gates) {
    if (g.kind == kind) ++n;
  }
  return n;
}

namespace {

std::string qubit_name(const Circuit& c, std::uint32_t q) {
  if (q < c.n_qubits) return "q[" + std::to_string(q) + "]";
  return "anc[" + std::to_string(q - c.n_qubits) + "]";
}

void emit_rotation(const Circuit& c, const Gate& g, std::ostringstream& out) {
  const PauliString& p = *g.pauli;
  std::vector<std::uint32_t> support;
  for (std::uint32_t q = 0; q < p.n_qubits(); ++q) {
    if (p.site(q) != 'I') support.push_back(q);
  }
  if (support.empty()) return;  // global phase only

  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, g.angle,
                                 std::chars_format::general, 17);
  const std::string angle_text(buf, end);

  for (std::uint32_t q : support) {
    const char letter = p.site(q);
    if (letter == 'X') {
      out << "h " << qubit_name(c, q) << ";\n";
    } else if (letter == 'Y') {
      out << "sdg " << qubit_name(c, q) << ";\n";
      out << "h " << qubit_name(c, q) << ";\n";
    }
  }
  for (std::size_t i = 0; i + 1 < support.size(); ++i) {
    out << "cx " << qubit_name(c, support[i]) << "," << qubit_name(c, support[i + 1])
        << ";\n";
  }
  out << "rz(" << angle_text << ") " << qubit_name(c, support.back()) << ";\n";
  for (std::size_t i = support.size() - 1; i-- > 0;) {
    out << "cx " << qubit_name(c, support[i]) << "," << qubit_name(c, support[i + 1])
        << ";\n";
  }
  for (auto it = support.rbegin(); it != support.rend(); ++it) {
    const char letter = p.site(*it);
    if (letter == 'X') {
      out << "h " << qubit_name(c, *it) << ";\n";
    } else if (letter == 'Y') {
      out << "h " << qubit_name(c, *it) << ";\n";
      out << "s " << qubit_name(c, *it) << ";\n";
    }
  }
}

}  // namespace

std::string export_qasm(const Circuit& circuit) {
  std::ostringstream out;
  out << "OPENQASM 2.0;\n";
  out << "include \"qelib1.inc\";\n";
  if (circuit.n_qubits > 0) {
    out << "qreg q[" << circuit.n_qubits << "];\n";
  }
  if (circuit.n_ancillas > 0) {
    out << "qreg anc[" << circuit.n_ancillas << "];\n";
  }
  for (const auto& g : circuit.gates) {
    switch (g.kind) {
      case GateKind::pauli_rotation:
        emit_rotation(circuit, g, out);
        break;
      case GateKind::h:
        out << "h " << qubit_name(circuit, g.q0) << ";\n";
        break;
      case GateKind::s:
        out << "s " << qubit_name(circuit, g.q0) << ";\n";
        break;
      case GateKind::sdg:
        out << "sdg " << qubit_name(circuit, g.q0) << ";\n";
        break;
      case GateKind::cnot:
        out << "cx " << qubit_name(circuit, g.q0) << ","
            << qubit_name(circuit, g.q1) << ";\n";
        break;
      case GateKind::reset:
        out << "reset " << qubit_name(circuit, g.q0) << ";\n";
        break;
      case GateKind::barrier:
        out << "barrier;\n";
        break;
    }
  }
  return out.str();
}

namespace {

struct QasmCursor {
  std::string_view text;
  std::size_t pos = 0;

  std::optional<std::string> next_statement() {
    while (pos < text.size()) {
      // Skip whitespace and // comments between statements.
      if (std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
        continue;
      }
      if (text.compare(pos, 2, "//") == 0) {
        while (pos < text.size() && text[pos] != '\n') ++pos;
        continue;
      }
      break;
    }
    if (pos >= text.size()) return std::nullopt;
    const std::size_t end = text.find(';', pos);
    if (end == std::string_view::npos) {
      throw PreconditionError("unterminated QASM statement");
    }
    std::string stmt(text.substr(pos, end - pos));
    pos = end + 1;
    return stmt;
  }
};

std::uint32_t parse_qubit(const Circuit& c, std::string_view token) {
  auto parse_index = [&](std::string_view prefix) -> std::optional<std::uint32_t> {
    if (token.size() < prefix.size() + 3 ||
        token.substr(0, prefix.size()) != prefix ||
        token[prefix.size()] != '[' || token.back() != ']') {
      return std::nullopt;
    }
    std::uint32_t idx = 0;
    const char* first = token.data() + prefix.size() + 1;
    const char* last = token.data() + token.size() - 1;
    auto [p, ec] = std::from_chars(first, last, idx);
    if (ec != std::errc() || p != last) return std::nullopt;
    return idx;
  };
  if (auto idx = parse_index("q")) {
    if (*idx >= c.n_qubits) throw DimensionError("qubit index out of range");
    return *idx;
  }
  if (auto idx = parse_index("anc")) {
    if (*idx >= c.n_ancillas) throw DimensionError("ancilla index out of range");
    return c.n_qubits + *idx;
  }
  throw PreconditionError("bad qubit reference '" + std::string(token) + "'");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

}  // namespace

Circuit parse_qasm(std::string_view text) {
  Circuit circuit;
  bool header_seen = false;
  QasmCursor cursor{text};
  while (auto stmt_opt = cursor.next_statement()) {
    std::string_view stmt = trim(*stmt_opt);
    if (stmt.empty()) continue;
    if (stmt.rfind("OPENQASM", 0) == 0) {
      header_seen = true;
      continue;
    }
    if (stmt.rfind("include", 0) == 0) continue;
    if (stmt.rfind("qreg", 0) == 0) {
      std::string_view decl = trim(stmt.substr(4));
      const std::size_t open = decl.find('[');
      const std::size_t close = decl.find(']');
      if (open == std::string_view::npos || close == std::string_view::npos) {
        throw PreconditionError("bad qreg declaration");
      }
      std::uint32_t size = 0;
      auto [p, ec] =
          std::from_chars(decl.data() + open + 1, decl.data() + close, size);
      if (ec != std::errc()) throw PreconditionError("bad qreg size");
      const std::string_view name = trim(decl.substr(0, open));
      if (name == "q") {
        circuit.n_qubits = size;
      } else if (name == "anc") {
        circuit.n_ancillas = size;
      } else {
        throw PreconditionError("unknown register '" + std::string(name) + "'");
      }
      continue;
    }
    if (stmt == "barrier") {
      circuit.push(Gate::barrier());
      continue;
    }
    const std::size_t space = stmt.find_first_of(" \t(");
    const std::string_view op =
        space == std::string_view::npos ? stmt : stmt.substr(0, space);
    if (op == "rz") {
      const std::size_t open = stmt.find('(');
      const std::size_t close = stmt.find(')');
      if (open == std::string_view::npos || close == std::string_view::npos) {
        throw PreconditionError("bad rz statement");
      }
      const std::string angle_text(trim(stmt.substr(open + 1, close - open - 1)));
      double angle = 0;
      try {
        angle = std::stod(angle_text);
      } catch (const std::exception&) {
        throw PreconditionError("bad rz angle '" + angle_text + "'");
      }
      const std::uint32_t q = parse_qubit(circuit, trim(stmt.substr(close + 1)));
      if (q >= circuit.n_qubits) {
        throw PreconditionError("rz on an ancilla is not part of the dialect");
      }
      circuit.push(Gate::rotation(
          PauliString::from_sites(circuit.n_qubits, {{q, 'Z'}}), angle));
      continue;
    }
    const std::string_view args = trim(stmt.substr(op.size()));
    if (op == "cx") {
      const std::size_t comma = args.find(',');
      if (comma == std::string_view::npos) {
        throw PreconditionError("bad cx statement");
      }
      circuit.push(Gate::cnot(parse_qubit(circuit, trim(args.substr(0, comma))),
                              parse_qubit(circuit, trim(args.substr(comma + 1)))));
      continue;
    }
    const std::uint32_t q = parse_qubit(circuit, args);
    if (op == "h") {
      circuit.push(Gate::hadamard(q));
    } else if (op == "s") {
      circuit.push(Gate::s_gate(q));
    } else if (op == "sdg") {
      circuit.push(Gate::sdg_gate(q));
    } else if (op == "reset") {
      circuit.push(Gate::reset(q));
    } else {
      throw PreconditionError("unknown QASM op '" + std::string(op) + "'");
    }
  }
  if (!header_seen) {
    throw PreconditionError("missing OPENQASM header");
  }
  return circuit;
}

}  // namespace redcard
