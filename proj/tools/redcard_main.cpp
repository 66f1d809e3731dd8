#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "redcard/bench.hpp"
#include "redcard/emit.hpp"
#include "redcard/errors.hpp"
#include "redcard/oracle.hpp"
#include "redcard/result_io.hpp"

namespace {

using namespace redcard;

struct ModelFlags {
  std::string family = "tfim";
  std::uint32_t sites = 4;
  double coupling = 1.0;
  double coupling_x = 1.0;
  double coupling_y = 1.0;
  double coupling_z = 1.0;
  double field = 0.5;
  bool periodic = false;
  bool coupling_set = false;

  ModelSpec resolve() const {
    ModelSpec spec;
    spec.family = parse_model_family(family);
    spec.sites = sites;
    spec.coupling_x = coupling_set ? coupling : coupling_x;
    spec.coupling_y = coupling_set ? coupling : coupling_y;
    spec.coupling_z = coupling_set ? coupling : coupling_z;
    spec.field = field;
    spec.periodic = periodic;
    return spec;
  }
};

void add_model_flags(CLI::App* cmd, ModelFlags& flags) {
  cmd->add_option("--model", flags.family, "Model family: tfim|tfxy|xy|heisenberg")
      ->capture_default_str();
  cmd->add_option("--sites", flags.sites, "Number of chain sites")
      ->capture_default_str();
  cmd->add_option("-J", flags.coupling, "Sets Jx, Jy and Jz together")
      ->each([&flags](const std::string&) { flags.coupling_set = true; });
  cmd->add_option("-x,--Jx", flags.coupling_x, "X-bond coupling")
      ->capture_default_str();
  cmd->add_option("-y,--Jy", flags.coupling_y, "Y-bond coupling")
      ->capture_default_str();
  cmd->add_option("-z,--Jz", flags.coupling_z, "Z-bond coupling")
      ->capture_default_str();
  cmd->add_option("-g", flags.field, "Transverse field strength")
      ->capture_default_str();
  cmd->add_flag("--periodic", flags.periodic,
                "Add the wrap bond (experimental)");
}

struct SynthFlags {
  std::uint64_t seed = 1;
  std::string backend = "exact";
  std::uint64_t shots = 800;
  double depolarizing = 0.0;
  std::string ansatz = "standard";
  double target_residual = 0.01;
  std::uint64_t max_sweeps = 100000;
  std::size_t max_dla_dim = kDefaultMaxDlaDim;
  std::string h_seed;
  std::vector<std::size_t> h_order;

  SynthesisConfig resolve(std::uint32_t n_qubits) const {
    SynthesisConfig config;
    config.seed = seed;
    if (backend == "exact") {
      config.backend = BackendKind::exact;
    } else if (backend == "shots") {
      config.backend = BackendKind::shots;
    } else {
      throw PreconditionError("backend must be exact or shots");
    }
    config.shots = shots;
    config.depolarizing = depolarizing;
    if (ansatz == "standard") {
      config.ansatz = AnsatzKind::standard;
    } else if (ansatz == "compressed") {
      config.ansatz = AnsatzKind::compressed;
    } else {
      throw PreconditionError("ansatz must be standard or compressed");
    }
    config.target_residual = target_residual;
    config.max_sweeps = max_sweeps;
    config.max_dla_dim = max_dla_dim;
    if (!h_seed.empty()) config.h_seed = parse_pauli(h_seed, n_qubits);
    // The CLI takes a 1-indexed permutation.
    for (std::size_t idx : h_order) {
      if (idx == 0) throw PreconditionError("--h-order is 1-indexed");
      config.h_order.push_back(idx - 1);
    }
    return config;
  }
};

void add_synth_flags(CLI::App* cmd, SynthFlags& flags) {
  cmd->add_option("--seed", flags.seed, "PRNG seed")->capture_default_str();
  cmd->add_option("--backend", flags.backend, "Cost backend: exact|shots")
      ->capture_default_str();
  cmd->add_option("--shots", flags.shots, "Shots per term (shots backend)")
      ->capture_default_str();
  cmd->add_option("--depol", flags.depolarizing,
                  "Depolarizing scale in [0,1] (shots backend)")
      ->capture_default_str();
  cmd->add_option("--ansatz", flags.ansatz,
                  "Coordinate patch: standard|compressed")
      ->capture_default_str();
  cmd->add_option("--target-residual", flags.target_residual,
                  "Convergence threshold on the relative residual")
      ->capture_default_str();
  cmd->add_option("--max-sweeps", flags.max_sweeps,
                  "Global cap on optimization sweeps")
      ->capture_default_str();
  cmd->add_option("--max-dla-dim", flags.max_dla_dim,
                  "Abort closure beyond this dimension")
      ->capture_default_str();
  cmd->add_option("--h-seed", flags.h_seed,
                  "Pauli string seeding the Abelian subalgebra scan");
  cmd->add_option("--h-order", flags.h_order,
                  "1-indexed permutation applied to the subalgebra order")
      ->delimiter(',');
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot open output file " + path);
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int run(int argc, char** argv) {
  CLI::App app{"Fixed-depth circuit synthesis for exp(-itH) via reductive "
               "Cartan decomposition"};
  app.require_subcommand(1);

  // dla
  auto* dla_cmd = app.add_subcommand("dla", "Generate the dynamical Lie algebra");
  ModelFlags dla_model;
  add_model_flags(dla_cmd, dla_model);
  std::size_t dla_max_dim = kDefaultMaxDlaDim;
  std::string dla_out;
  bool dla_json = false;
  dla_cmd->add_option("--max-dla-dim", dla_max_dim)->capture_default_str();
  dla_cmd->add_flag("--json", dla_json, "Emit the JSON report");
  dla_cmd->add_option("-o,--out", dla_out, "Output path (default stdout)");

  // decompose
  auto* dec_cmd =
      app.add_subcommand("decompose", "Cartan split, subalgebra and fragments");
  ModelFlags dec_model;
  SynthFlags dec_synth;
  add_model_flags(dec_cmd, dec_model);
  add_synth_flags(dec_cmd, dec_synth);
  std::string dec_out;
  bool dec_json = false;
  dec_cmd->add_flag("--json", dec_json, "Emit the JSON report");
  dec_cmd->add_option("-o,--out", dec_out, "Output path (default stdout)");

  // synthesize
  auto* syn_cmd = app.add_subcommand(
      "synthesize", "Optimize the full pipeline and write a result file");
  ModelFlags syn_model;
  SynthFlags syn_synth;
  add_model_flags(syn_cmd, syn_model);
  add_synth_flags(syn_cmd, syn_synth);
  std::string syn_method = "redcard";
  std::string syn_out;
  std::string syn_csv;
  syn_cmd->add_option("--method", syn_method, "redcard|standard")
      ->capture_default_str();
  syn_cmd->add_option("--out", syn_out, "Result JSON path (default stdout)");
  syn_cmd->add_option("--csv", syn_csv, "Also write the residual trace as CSV");

  // verify
  auto* ver_cmd = app.add_subcommand(
      "verify", "Compare the emitted circuit against the dense evolution");
  std::string ver_result;
  std::vector<double> ver_times{0.1, 1.0, 10.0};
  bool ver_json = false;
  bool ver_compressed = false;
  std::string ver_out;
  ver_cmd->add_option("--result", ver_result, "Result JSON path")->required();
  ver_cmd->add_option("-t,--times", ver_times, "Evolution times")
      ->delimiter(',');
  ver_cmd->add_flag("--compressed", ver_compressed,
                    "Verify the compressed emission");
  ver_cmd->add_flag("--json", ver_json, "Emit the JSON table");
  ver_cmd->add_option("-o,--out", ver_out, "Output path (default stdout)");

  // emit
  auto* emit_cmd = app.add_subcommand("emit", "Export the evolution circuit");
  std::string emit_result;
  double emit_time = 1.0;
  bool emit_compressed = false;
  bool emit_force = false;
  std::string emit_format = "qasm";
  std::string emit_out;
  emit_cmd->add_option("--result", emit_result, "Result JSON path")->required();
  emit_cmd->add_option("-t,--time", emit_time, "Evolution time")
      ->capture_default_str();
  emit_cmd->add_flag("--compressed", emit_compressed,
                     "Use the compressed doublet emission");
  emit_cmd->add_flag("--force", emit_force, "Emit even if not converged");
  emit_cmd->add_option("--format", emit_format, "Only qasm is supported")
      ->capture_default_str();
  emit_cmd->add_option("-o,--out", emit_out, "Output path (default stdout)");

  // bench
  auto* bench_cmd = app.add_subcommand(
      "bench", "Compare cost-call statistics of both pipelines over seeds");
  ModelFlags bench_model;
  SynthFlags bench_synth;
  add_model_flags(bench_cmd, bench_model);
  add_synth_flags(bench_cmd, bench_synth);
  std::uint32_t bench_seeds = 10;
  unsigned bench_threads = 0;
  std::string bench_out;
  bench_cmd->add_option("--seeds", bench_seeds, "Number of seeds")
      ->capture_default_str();
  bench_cmd->add_option("--threads", bench_threads,
                        "Worker threads (0 = auto, REDCARD_THREADS caps)")
      ->capture_default_str();
  bench_cmd->add_option("-o,--out", bench_out, "Output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (dla_cmd->parsed()) {
    const PauliSum h = build_model(dla_model.resolve());
    const Dla dla = generate_dla(h, dla_max_dim);
    const FrustrationGraph graph = frustration_components(dla);
    if (dla_json || !dla_out.empty()) {
      write_output(dla_report_json(dla, graph), dla_out);
    } else {
      std::cout << "dim " << dla.dim() << ", components " << graph.n_components
                << "\n";
    }
    return 0;
  }

  if (dec_cmd->parsed()) {
    const ModelSpec model = dec_model.resolve();
    const PauliSum h = build_model(model);
    const SynthesisConfig config = dec_synth.resolve(h.n_qubits());
    const Dla dla = generate_dla(h, config.max_dla_dim);
    CartanOptions options;
    options.h_seed = config.h_seed;
    options.h_order = config.h_order;
    const CartanStructure structure = build_cartan_structure(dla, h, options);
    const FrustrationGraph graph = frustration_components(dla);
    const OrderingReport report = check_ordering(
        structure.fragments, graph, dla, structure.b_basis, structure.m_basis);
    if (dec_json || !dec_out.empty()) {
      write_output(decompose_report_json(structure, report), dec_out);
    } else {
      std::cout << "k " << structure.k_basis.size() << ", m "
                << structure.m_basis.size() << ", fragments";
      for (std::size_t s : structure.fragment_sizes()) std::cout << ' ' << s;
      std::cout << "\n";
    }
    return 0;
  }

  if (syn_cmd->parsed()) {
    ResultDocument doc;
    doc.model = syn_model.resolve();
    const PauliSum h = build_model(doc.model);
    doc.config = syn_synth.resolve(h.n_qubits());
    if (syn_method == "redcard") {
      doc.method = Method::redcard;
      doc.result = run_redcard(h, doc.config);
    } else if (syn_method == "standard") {
      doc.method = Method::standard;
      doc.result = run_standard(h, doc.config);
    } else {
      throw PreconditionError("method must be redcard or standard");
    }
    write_output(to_result_json(doc), syn_out);
    if (!syn_csv.empty()) write_output(trace_csv(doc.result), syn_csv);
    return 0;
  }

  if (ver_cmd->parsed()) {
    const ResultDocument doc = from_result_json(read_file(ver_result));
    const PauliSum h = build_model(doc.model);
    const DenseOperator h_dense = to_dense(h);
    const double h_norm = h_dense.norm();

    std::ostringstream lines;
    bool all_within = true;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (double t : ver_times) {
      const Circuit circuit =
          ver_compressed ? build_compressed_tfxy_circuit(doc.result, t, true)
                         : build_evolution_circuit(doc.result, t, true);
      const double distance =
          unitary_distance(circuit_unitary(circuit), expm_i(h_dense, t));
      const double bound =
          10.0 * doc.result.final_residual * h_norm * std::abs(t) + 1e-8;
      const bool within = distance <= bound;
      all_within = all_within && within;
      rows.push_back({{"t", t},
                      {"distance", distance},
                      {"bound", bound},
                      {"within_bound", within}});
      lines << "t=" << t << " distance=" << distance << " bound=" << bound
            << (within ? " ok" : " EXCEEDED") << "\n";
    }
    if (ver_json || !ver_out.empty()) {
      nlohmann::ordered_json out;
      out["residual"] = doc.result.final_residual;
      out["rows"] = std::move(rows);
      out["all_within_bound"] = all_within;
      write_output(out.dump(2) + "\n", ver_out);
    } else {
      std::cout << lines.str();
    }
    return all_within ? 0 : 1;
  }

  if (emit_cmd->parsed()) {
    if (emit_format != "qasm") {
      throw PreconditionError("unsupported format " + emit_format);
    }
    const ResultDocument doc = from_result_json(read_file(emit_result));
    const Circuit circuit =
        emit_compressed
            ? build_compressed_tfxy_circuit(doc.result, emit_time, emit_force)
            : build_evolution_circuit(doc.result, emit_time, emit_force);
    write_output(export_qasm(circuit), emit_out);
    return 0;
  }

  if (bench_cmd->parsed()) {
    BenchConfig config;
    config.model = bench_model.resolve();
    const PauliSum h = build_model(config.model);
    config.synthesis = bench_synth.resolve(h.n_qubits());
    config.n_seeds = bench_seeds;
    config.first_seed = bench_synth.seed;
    config.threads = bench_threads;
    const BenchReport report = run_bench(config);
    write_output(bench_report_json(report), bench_out);
    if (report.redcard.n_converged == 0 && report.standard.n_converged == 0) {
      std::cerr << "no converging runs\n";
      return 1;
    }
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const redcard::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
