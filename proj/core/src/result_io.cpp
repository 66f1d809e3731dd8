#include "redcard/result_io.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "redcard/errors.hpp"

namespace redcard {

namespace {

using json = nlohmann::ordered_json;

json strings_json(const std::vector<PauliString>& strings) {
  json out = json::array();
  for (const auto& p : strings) out.push_back(p.to_string());
  return out;
}

std::vector<PauliString> strings_from_json(const json& j,
                                           std::uint32_t n_qubits) {
  std::vector<PauliString> out;
  for (const auto& entry : j) {
    out.push_back(parse_pauli(entry.get<std::string>(), n_qubits));
  }
  return out;
}

json sum_json(const PauliSum& sum) {
  json out = json::array();
  for (const auto& [p, c] : sum.terms()) {
    out.push_back({{"string", p.to_string()}, {"coeff", c}});
  }
  return out;
}

PauliSum sum_from_json(const json& j, std::uint32_t n_qubits) {
  PauliSum sum(n_qubits);
  for (const auto& entry : j) {
    sum.add(parse_pauli(entry.at("string").get<std::string>(), n_qubits),
            entry.at("coeff").get<double>());
  }
  return sum;
}

json model_json(const ModelSpec& model) {
  return {{"family", to_string(model.family)},
          {"sites", model.sites},
          {"Jx", model.coupling_x},
          {"Jy", model.coupling_y},
          {"Jz", model.coupling_z},
          {"g", model.field},
          {"boundary", model.periodic ? "periodic" : "open"}};
}

ModelSpec model_from_json(const json& j) {
  ModelSpec model;
  model.family = parse_model_family(j.at("family").get<std::string>());
  model.sites = j.at("sites").get<std::uint32_t>();
  model.coupling_x = j.at("Jx").get<double>();
  model.coupling_y = j.at("Jy").get<double>();
  model.coupling_z = j.at("Jz").get<double>();
  model.field = j.at("g").get<double>();
  model.periodic = j.at("boundary").get<std::string>() == "periodic";
  return model;
}

json config_json(const SynthesisConfig& config) {
  json out = {{"seed", config.seed},
              {"backend", to_string(config.backend)},
              {"shots", config.shots},
              {"depolarizing", config.depolarizing},
              {"ansatz", to_string(config.ansatz)},
              {"target_residual", config.target_residual},
              {"max_sweeps", config.max_sweeps},
              {"improvement_tol", config.improvement_tol},
              {"patience", config.patience},
              {"flat_tol", config.flat_tol},
              {"staging_tol", config.staging_tol},
              {"max_dla_dim", config.max_dla_dim}};
  out["h_seed"] =
      config.h_seed.has_value() ? json(config.h_seed->to_string()) : json();
  out["h_order"] = config.h_order;
  return out;
}

SynthesisConfig config_from_json(const json& j) {
  SynthesisConfig config;
  config.seed = j.at("seed").get<std::uint64_t>();
  config.backend = j.at("backend").get<std::string>() == "shots"
                       ? BackendKind::shots
                       : BackendKind::exact;
  config.shots = j.at("shots").get<std::uint64_t>();
  config.depolarizing = j.at("depolarizing").get<double>();
  config.ansatz = j.at("ansatz").get<std::string>() == "compressed"
                      ? AnsatzKind::compressed
                      : AnsatzKind::standard;
  config.target_residual = j.at("target_residual").get<double>();
  config.max_sweeps = j.at("max_sweeps").get<std::uint64_t>();
  config.improvement_tol = j.at("improvement_tol").get<double>();
  config.patience = j.at("patience").get<int>();
  config.flat_tol = j.at("flat_tol").get<double>();
  config.staging_tol = j.at("staging_tol").get<double>();
  config.max_dla_dim = j.at("max_dla_dim").get<std::size_t>();
  if (!j.at("h_seed").is_null()) {
    config.h_seed = parse_pauli(j.at("h_seed").get<std::string>());
  }
  config.h_order = j.at("h_order").get<std::vector<std::size_t>>();
  return config;
}

}  // namespace

std::string to_result_json(const ResultDocument& doc) {
  const SynthesisResult& r = doc.result;
  json out;
  out["schema"] = "redcard-result-v1";
  out["model"] = model_json(doc.model);
  out["method"] = to_string(doc.method);
  out["config"] = config_json(doc.config);
  out["n_qubits"] = r.n_qubits;
  out["dla_dim"] = r.dla_dim;
  out["k_dim"] = r.k_dim;
  out["m_dim"] = r.m_dim;
  out["h_basis"] = strings_json(r.h_basis);
  out["b_basis"] = strings_json(r.b_basis);

  json fragments = json::array();
  for (const auto& frag : r.fragments) {
    fragments.push_back({{"factors", strings_json(frag.factors)},
                         {"angles", frag.angles},
                         {"sweeps", frag.sweeps},
                         {"converged", frag.converged},
                         {"staging_residual", frag.staging_residual}});
  }
  out["fragments"] = std::move(fragments);
  out["h_final"] = sum_json(r.h_final);
  out["residual"] = r.final_residual;

  json trace = json::array();
  for (const auto& point : r.trace) {
    trace.push_back({{"fragment", point.fragment},
                     {"cost", point.cost},
                     {"residual", point.residual}});
  }
  out["trace"] = std::move(trace);
  out["cost_calls"] = r.cost_calls;
  out["total_sweeps"] = r.total_sweeps;
  out["converged"] = r.converged;
  out["seed"] = r.seed;
  return out.dump(2) + "\n";
}

ResultDocument from_result_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("bad result JSON: ") + e.what());
  }
  if (j.value("schema", "") != "redcard-result-v1") {
    throw PreconditionError("unrecognized result schema");
  }
  ResultDocument doc;
  doc.model = model_from_json(j.at("model"));
  doc.config = config_from_json(j.at("config"));
  doc.method = j.at("method").get<std::string>() == "standard"
                   ? Method::standard
                   : Method::redcard;

  SynthesisResult& r = doc.result;
  r.method = doc.method;
  r.n_qubits = j.at("n_qubits").get<std::uint32_t>();
  r.dla_dim = j.at("dla_dim").get<std::size_t>();
  r.k_dim = j.at("k_dim").get<std::size_t>();
  r.m_dim = j.at("m_dim").get<std::size_t>();
  r.h_basis = strings_from_json(j.at("h_basis"), r.n_qubits);
  r.b_basis = strings_from_json(j.at("b_basis"), r.n_qubits);
  for (const auto& entry : j.at("fragments")) {
    FragmentResult frag;
    frag.factors = strings_from_json(entry.at("factors"), r.n_qubits);
    frag.angles = entry.at("angles").get<std::vector<double>>();
    frag.sweeps = entry.at("sweeps").get<std::uint64_t>();
    frag.converged = entry.at("converged").get<bool>();
    frag.staging_residual = entry.at("staging_residual").get<double>();
    r.fragments.push_back(std::move(frag));
  }
  r.h_final = sum_from_json(j.at("h_final"), r.n_qubits);
  r.final_residual = j.at("residual").get<double>();
  for (const auto& entry : j.at("trace")) {
    r.trace.push_back({entry.at("fragment").get<std::uint32_t>(),
                       entry.at("cost").get<double>(),
                       entry.at("residual").get<double>()});
  }
  r.cost_calls = j.at("cost_calls").get<std::uint64_t>();
  r.total_sweeps = j.at("total_sweeps").get<std::uint64_t>();
  r.converged = j.at("converged").get<bool>();
  r.seed = j.at("seed").get<std::uint64_t>();
  return doc;
}

std::string trace_csv(const SynthesisResult& result) {
  std::ostringstream out;
  out << "sweep,fragment,cost,residual\n";
  std::size_t sweep = 0;
  for (const auto& point : result.trace) {
    out << sweep++ << ',' << point.fragment << ','
        << json(point.cost).dump() << ',' << json(point.residual).dump()
        << '\n';
  }
  return out.str();
}

std::string dla_report_json(const Dla& dla, const FrustrationGraph& graph) {
  json out;
  out["dim"] = dla.dim();
  out["n_qubits"] = dla.n_qubits;
  out["basis"] = strings_json(dla.basis);
  out["generator_indices"] = dla.generator_indices;
  out["components"] = graph.component;
  out["n_components"] = graph.n_components;
  return out.dump(2) + "\n";
}

std::string decompose_report_json(const CartanStructure& structure,
                                  const OrderingReport& report) {
  json out;
  out["k_dim"] = structure.k_basis.size();
  out["m_dim"] = structure.m_basis.size();
  out["h"] = strings_json(structure.h_basis);
  out["b"] = strings_json(structure.b_basis);
  out["fragment_sizes"] = structure.fragment_sizes();

  json components = json::array();
  for (const auto& entry : report.components) {
    json c = {{"component", entry.component},
              {"b_positions", entry.b_positions},
              {"sizes", entry.sizes},
              {"nonempty_strictly_decreasing",
               entry.nonempty_strictly_decreasing},
              {"empties_at_end", entry.empties_at_end},
              {"linear_law_applicable", entry.linear_law_applicable}};
    if (entry.linear_law_applicable) {
      c["linear_law_holds"] = entry.linear_law_holds;
      c["linear_base"] = entry.linear_base;
      c["linear_slope_unit"] = entry.linear_slope_unit;
    }
    components.push_back(std::move(c));
  }
  out["ordering_report"] = {{"ok", report.ok},
                            {"components", std::move(components)}};
  return out.dump(2) + "\n";
}

}  // namespace redcard
