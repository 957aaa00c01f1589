// Command-line driver: algebra verification, multiplication tables,
// asynchronous runs, transition graphs, realification, and the
// octonion-vs-real energy experiment.

#include "hhnn/activation.hpp"
#include "hhnn/algebra.hpp"
#include "hhnn/graph.hpp"
#include "hhnn/io.hpp"
#include "hhnn/network.hpp"
#include "hhnn/realify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using nlohmann::json;
using namespace hhnn;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

AlgebraSystem resolve_algebra(const std::string& id) {
  if (id.size() > 5 && id.rfind(".json") == id.size() - 5) {
    json j = json::parse(read_text_file(id));
    return algebra_from_json(j);
  }
  return algebra_from_id(id);
}

Activation resolve_activation(const std::string& id, int K) {
  if (id == "csgn" || id == "tsgn") return Activation::parse(id + ":" + std::to_string(K));
  return Activation::parse(id);
}

std::string unit_label(int dim, int mu) {
  if (mu == 0) return "1";
  static const char* low[] = {"", "i", "j", "k"};
  if (dim <= 4) return low[mu];
  return "i" + std::to_string(mu);
}

std::string cell_string(const Algebra& alg, int mu, int nu) {
  std::string out;
  for (int k = 0; k < alg.dim(); ++k) {
    const Rat& c = alg.c(mu, nu, k);
    if (c == 0) continue;
    std::string coeff;
    if (denominator(c) == 1) {
      const auto num = numerator(c);
      if (num == 1)
        coeff = "";
      else if (num == -1)
        coeff = "-";
      else
        coeff = num.str();
    } else {
      coeff = rat_to_string(c);
    }
    std::string term = k == 0 ? (coeff.empty() ? "1" : (coeff == "-" ? "-1" : coeff))
                              : coeff + unit_label(alg.dim(), k);
    if (!out.empty() && term[0] != '-') out += '+';
    out += term;
  }
  return out.empty() ? "0" : out;
}

int cmd_table(const std::string& algebra_id) {
  AlgebraSystem sys = resolve_algebra(algebra_id);
  const Algebra& alg = *sys.algebra;
  const int n = alg.dim();

  std::vector<std::vector<std::string>> cells(static_cast<std::size_t>(n) + 1,
                                              std::vector<std::string>(static_cast<std::size_t>(n) + 1));
  cells[0][0] = alg.name();
  for (int k = 0; k < n; ++k) {
    cells[0][static_cast<std::size_t>(k) + 1] = unit_label(n, k);
    cells[static_cast<std::size_t>(k) + 1][0] = unit_label(n, k);
  }
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu)
      cells[static_cast<std::size_t>(mu) + 1][static_cast<std::size_t>(nu) + 1] =
          cell_string(alg, mu, nu);

  std::vector<std::size_t> width(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());

  for (std::size_t r = 0; r < cells.size(); ++r) {
    std::string line;
    for (std::size_t c = 0; c < cells[r].size(); ++c) {
      if (c) line += c == 1 ? " | " : "  ";
      line += std::string(width[c] - cells[r][c].size(), ' ') + cells[r][c];
    }
    std::cout << line << '\n';
    if (r == 0) {
      std::string rule(line.size(), '-');
      std::cout << rule << '\n';
    }
  }
  return kOk;
}

int cmd_verify(const std::string& algebra_id, const std::string& involution_id,
               const std::string& activation_id, int K, int samples, std::uint64_t seed) {
  AlgebraSystem sys = resolve_algebra(algebra_id);
  if (!involution_id.empty()) sys.involution = involution_from_id(involution_id, sys.algebra->dim());

  json report;
  report["algebra"] = sys.algebra->name();
  report["dim"] = sys.algebra->dim();
  report["involution"] =
      std::vector<int>(sys.involution.signs().begin(), sys.involution.signs().end());

  bool ok = true;

  const InvolutionCheck inv = is_reverse_involution(*sys.algebra, sys.involution);
  report["reverse_involution"] = inv.ok;
  if (!inv.ok) {
    report["reverse_involution_witness"] = {inv.witness.mu, inv.witness.nu};
    ok = false;
  }

  const ReahnCheck assoc = is_reahn(*sys.algebra);
  report["real_part_associative"] = assoc.ok;
  if (!assoc.ok) {
    report["real_part_associative_witness"] = {assoc.witness.mu, assoc.witness.nu,
                                               assoc.witness.rho};
    ok = false;
  }

  report["psd"] = is_positive_semidefinite(*sys.algebra, sys.involution);

  if (!activation_id.empty()) {
    const Activation activation = resolve_activation(activation_id, K);
    const BProjectionReport bp =
        verify_b_projection(activation, sys.algebra, sys.involution, samples, seed);
    json b;
    b["activation"] = activation.id();
    b["ok"] = bp.ok;
    b["samples"] = bp.samples_checked;
    if (!bp.ok) {
      b["witness_input"] = std::vector<double>(bp.q->coeffs().begin(), bp.q->coeffs().end());
      b["witness_state"] = std::vector<double>(bp.s->coeffs().begin(), bp.s->coeffs().end());
      ok = false;
    }
    report["b_projection"] = std::move(b);
  }

  std::cout << report.dump(2) << '\n';
  return ok ? kOk : kViolation;
}

std::string run_summary(const Trace& trace) {
  std::ostringstream os;
  os << (trace.converged ? "converged" : "did not converge") << " after " << trace.sweeps
     << " sweeps, " << trace.change_count() << " state changes, energy "
     << trace.initial_energy << " -> " << trace.final_energy();
  return os.str();
}

json trace_stats(const Trace& trace) {
  return {{"converged", trace.converged},
          {"sweeps", trace.sweeps},
          {"changes", trace.change_count()},
          {"initial_energy", trace.initial_energy},
          {"final_energy", trace.final_energy()}};
}

int cmd_run(const std::string& config_id, int sweeps, std::uint64_t seed, bool seed_given,
            const std::string& out_csv, const std::string& out_meta) {
  NetworkConfig config = load_network_config(config_id);
  Network net = config.net;
  if (seed_given) {
    Schedule s = net.schedule();
    s.seed = seed;
    net = Network(net.algebra(), net.tau(), net.activation(), net.size(), net.weights(), s);
  }
  StateVector x0 = config.initial
                       ? *config.initial
                       : random_state(net.activation(), net.algebra(), net.size(),
                                      net.schedule().seed + 1);

  const Trace trace = run(net, x0, sweeps);

  if (!out_csv.empty()) {
    std::ostringstream os;
    write_trace_csv(os, trace);
    write_text_file(out_csv, os.str());
  }
  if (!out_meta.empty()) {
    const json config_json = network_config_to_json(net, x0);
    json meta;
    meta["command"] = "run";
    meta["config"] = config_id;
    meta["seed"] = net.schedule().seed;
    meta["max_sweeps"] = sweeps;
    meta["config_hash"] = hex64(fnv1a64(config_json.dump()));
    meta["result"] = trace_stats(trace);
    write_text_file(out_meta, meta.dump(2) + "\n");
  }
  std::cout << run_summary(trace) << '\n';
  return kOk;
}

int cmd_graph(const std::string& config_id, const std::string& out_dot,
              const std::string& out_classification, std::int64_t highlight,
              bool highlight_given, std::int64_t node_cap) {
  const NetworkConfig config = load_network_config(config_id);
  const TransitionGraph g = enumerate_graph(config.net, node_cap);
  const Classification cls = classify(g);

  std::optional<std::int64_t> hi;
  if (highlight_given)
    hi = highlight;
  else if (config.initial)
    hi = g.encode(*config.initial);

  if (!out_dot.empty()) write_text_file(out_dot, to_dot(g, hi));
  const json cj = classification_to_json(g, cls);
  if (!out_classification.empty()) write_text_file(out_classification, cj.dump(2) + "\n");

  std::cout << cj["counts"].dump() << '\n';
  return kOk;
}

int cmd_realify(const std::string& config_id, const std::string& out_csv,
                const std::string& out_config) {
  const NetworkConfig config = load_network_config(config_id);
  RealifiedNetwork rn = realify_network(config.net);

  if (!out_csv.empty()) write_text_file(out_csv, matrix_to_csv(rn.matrix));
  if (!out_config.empty()) {
    std::optional<StateVector> initial;
    if (config.initial)
      initial = phi_inv(phi(*config.initial), rn.net.algebra(), rn.net.size());
    write_text_file(out_config, network_config_to_json(rn.net, initial).dump(2) + "\n");
  }
  std::cout << "realified " << config.net.size() << " neurons of dimension "
            << config.net.algebra()->dim() << " into " << rn.net.size() << " real neurons\n";
  return kOk;
}

int cmd_octonion_experiment(int n, std::uint64_t seed, int sweeps, const std::string& out_prefix) {
  AlgebraSystem oct = builtin_algebra("O");
  const Activation act = Activation::split();

  Schedule schedule;
  schedule.seed = seed;
  Network net(oct.algebra, oct.involution, act, n,
              random_hermitian_weights(n, oct.algebra, oct.involution, seed), schedule);
  const StateVector x0 = random_state(act, oct.algebra, n, seed + 1);

  const Trace oct_trace = run(net, x0, sweeps);

  RealifiedNetwork rn = realify_network(net);
  const StateVector y0 = phi_inv(phi(x0), rn.net.algebra(), rn.net.size());
  const Trace real_trace = run(rn.net, y0, sweeps);

  if (!out_prefix.empty()) {
    std::ostringstream oct_csv, real_csv;
    write_trace_csv(oct_csv, oct_trace);
    write_trace_csv(real_csv, real_trace);
    write_text_file(out_prefix + ".oct.csv", oct_csv.str());
    write_text_file(out_prefix + ".real.csv", real_csv.str());

    json meta;
    meta["command"] = "octonion-exp";
    meta["N"] = n;
    meta["seed"] = seed;
    meta["max_sweeps"] = sweeps;
    meta["config_hash"] = hex64(fnv1a64(network_config_to_json(net, x0).dump()));
    meta["octonion"] = trace_stats(oct_trace);
    meta["realified"] = trace_stats(real_trace);
    write_text_file(out_prefix + ".meta.json", meta.dump(2) + "\n");
  }

  std::cout << "octonion net: " << run_summary(oct_trace) << '\n';
  std::cout << "realified net: " << run_summary(real_trace) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hypercomplex Hopfield network toolkit"};
  app.require_subcommand(1);

  std::string algebra_id = "C";
  std::string involution_id;
  std::string activation_id;
  std::string config_id;
  std::string out_path, meta_path, classification_path, out_config_path, out_prefix;
  int K = 2;
  int samples = 10000;
  int sweeps = 1000;
  int n_neurons = 100;
  std::uint64_t seed = 0;
  std::int64_t highlight = 0;
  std::int64_t node_cap = kDefaultNodeCap;

  CLI::App* verify = app.add_subcommand(
      "verify", "Check involution/associativity/positivity laws and activation optimality");
  verify->add_option("--algebra", algebra_id, "Algebra id (R,C,U,D,Q,T,O, cd:k, cl2:kappa) or JSON file");
  verify->add_option("--involution", involution_id, "identity, natural, tessarine, or sign list");
  verify->add_option("--activation", activation_id, "Optional activation to verify against the form");
  verify->add_option("--K", K, "Phase resolution for csgn/tsgn");
  verify->add_option("--samples", samples, "Sample count for activation verification");
  verify->add_option("--seed", seed, "Sampling seed");

  CLI::App* table = app.add_subcommand("table", "Print the basis multiplication table");
  table->add_option("--algebra", algebra_id, "Algebra id or JSON file");

  CLI::App* run_cmd = app.add_subcommand("run", "Run asynchronous updates from a config");
  run_cmd->add_option("--config", config_id, "Config file or preset")->required();
  run_cmd->add_option("--sweeps", sweeps, "Sweep limit");
  CLI::Option* run_seed = run_cmd->add_option("--seed", seed, "Overrides the config seed");
  run_cmd->add_option("--out", out_path, "Trace CSV path");
  run_cmd->add_option("--meta", meta_path, "Metadata JSON path");

  CLI::App* graph_cmd = app.add_subcommand("graph", "Enumerate the full transition graph");
  graph_cmd->add_option("--config", config_id, "Config file or preset")->required();
  graph_cmd->add_option("--out", out_path, "DOT output path");
  graph_cmd->add_option("--classification", classification_path, "Classification JSON path");
  CLI::Option* hi_opt =
      graph_cmd->add_option("--highlight", highlight, "Node whose reachable edges are marked");
  graph_cmd->add_option("--node-cap", node_cap, "Abort above this many nodes");

  CLI::App* realify_cmd =
      app.add_subcommand("realify", "Export the real block matrix of a sign network");
  realify_cmd->add_option("--config", config_id, "Config file or preset")->required();
  realify_cmd->add_option("--out", out_path, "Matrix CSV path");
  realify_cmd->add_option("--out-config", out_config_path, "Realified network config path");

  CLI::App* oct_cmd = app.add_subcommand(
      "octonion-exp", "Energy descent comparison: octonion net vs its realification");
  oct_cmd->add_option("--N", n_neurons, "Neuron count");
  oct_cmd->add_option("--seed", seed, "Weight/initial-state seed");
  oct_cmd->add_option("--sweeps", sweeps, "Sweep limit");
  oct_cmd->add_option("--out", out_prefix, "Output prefix (.oct.csv, .real.csv, .meta.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (verify->parsed())
      return cmd_verify(algebra_id, involution_id, activation_id, K, samples, seed);
    if (table->parsed()) return cmd_table(algebra_id);
    if (run_cmd->parsed())
      return cmd_run(config_id, sweeps, seed, run_seed->count() > 0, out_path, meta_path);
    if (graph_cmd->parsed())
      return cmd_graph(config_id, out_path, classification_path, highlight, hi_opt->count() > 0,
                       node_cap);
    if (realify_cmd->parsed()) return cmd_realify(config_id, out_path, out_config_path);
    if (oct_cmd->parsed()) return cmd_octonion_experiment(n_neurons, seed, sweeps, out_prefix);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
