#include "hhnn/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hhnn {

namespace {

using nlohmann::json;

void check_keys(const json& j, std::initializer_list<const char*> allowed, const char* what) {
  if (!j.is_object()) throw std::invalid_argument(std::string(what) + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* a : allowed)
      if (it.key() == a) {
        known = true;
        break;
      }
    if (!known)
      throw std::invalid_argument(std::string("unknown field in ") + what + ": '" + it.key() +
                                  "'");
  }
}

const json& require(const json& j, const char* key, const char* what) {
  const auto it = j.find(key);
  if (it == j.end())
    throw std::invalid_argument(std::string(what) + " is missing field '" + key + "'");
  return *it;
}

Involution involution_from_json(const json& j, int dim) {
  if (j.is_string()) return involution_from_id(j.get<std::string>(), dim);
  if (j.is_array()) {
    std::vector<int> signs;
    for (const auto& v : j) signs.push_back(v.get<int>());
    if (static_cast<int>(signs.size()) != dim)
      throw std::invalid_argument("involution sign list does not match the algebra dimension");
    return Involution(std::move(signs));
  }
  throw std::invalid_argument("involution must be a name or a sign array");
}

std::vector<double> coeffs_from_json(const json& j, int dim, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw std::invalid_argument(std::string(what) + " must be an array of dim coefficients");
  std::vector<double> c;
  c.reserve(j.size());
  for (const auto& v : j) c.push_back(v.get<double>());
  return c;
}

}  // namespace

json algebra_to_json(const Algebra& algebra, const Involution& tau) {
  if (tau.dim() != algebra.dim())
    throw std::invalid_argument("involution dimension does not match the algebra");
  json j;
  j["name"] = algebra.name();
  j["dim"] = algebra.dim();
  json constants = json::array();
  for (const Rat& r : algebra.tensor()) constants.push_back(rat_to_string(r));
  j["constants"] = std::move(constants);
  j["involution"] = std::vector<int>(tau.signs().begin(), tau.signs().end());
  return j;
}

AlgebraSystem algebra_from_json(const json& j) {
  check_keys(j, {"name", "dim", "constants", "involution"}, "algebra document");
  const std::string name = require(j, "name", "algebra document").get<std::string>();
  const int dim = require(j, "dim", "algebra document").get<int>();
  if (dim < 1) throw std::invalid_argument("algebra dimension must be >= 1");
  const json& constants = require(j, "constants", "algebra document");
  const auto expected = static_cast<std::size_t>(dim) * dim * dim;
  if (!constants.is_array() || constants.size() != expected)
    throw std::invalid_argument("constants must hold dim^3 rationals");
  std::vector<Rat> tensor;
  tensor.reserve(expected);
  for (const auto& v : constants) tensor.push_back(rat_from_string(v.get<std::string>()));
  AlgebraPtr algebra = Algebra::create(name, dim, std::move(tensor));
  Involution tau = involution_from_json(require(j, "involution", "algebra document"), dim);
  return {std::move(algebra), std::move(tau)};
}

json network_config_to_json(const Network& net, const std::optional<StateVector>& initial) {
  json j;
  j["algebra"] = net.algebra()->name();
  j["involution"] = std::vector<int>(net.tau().signs().begin(), net.tau().signs().end());
  j["activation"] = net.activation().id();
  j["N"] = net.size();
  json weights = json::array();
  for (const HNumber& w : net.weights())
    weights.push_back(std::vector<double>(w.coeffs().begin(), w.coeffs().end()));
  j["weights"] = std::move(weights);
  j["schedule"] =
      net.schedule().kind == Schedule::Kind::cyclic ? "cyclic" : "random_permutation";
  j["seed"] = net.schedule().seed;
  if (initial) {
    json init = json::array();
    for (const HNumber& xi : *initial)
      init.push_back(std::vector<double>(xi.coeffs().begin(), xi.coeffs().end()));
    j["initial"] = std::move(init);
  }
  return j;
}

NetworkConfig network_config_from_json(const json& j) {
  check_keys(j, {"algebra", "involution", "activation", "N", "weights", "schedule", "seed",
                 "initial"},
             "network config");
  AlgebraSystem sys =
      algebra_from_id(require(j, "algebra", "network config").get<std::string>());
  const int dim = sys.algebra->dim();
  Involution tau = involution_from_json(require(j, "involution", "network config"), dim);
  Activation activation =
      Activation::parse(require(j, "activation", "network config").get<std::string>());
  const int n = require(j, "N", "network config").get<int>();
  if (n < 1) throw std::invalid_argument("N must be >= 1");

  const json& wj = require(j, "weights", "network config");
  if (!wj.is_array() || wj.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("weights must hold N*N coefficient vectors (row-major)");
  std::vector<HNumber> weights;
  weights.reserve(wj.size());
  for (const auto& entry : wj)
    weights.emplace_back(sys.algebra, coeffs_from_json(entry, dim, "weight"));

  Schedule schedule;
  if (const auto it = j.find("schedule"); it != j.end()) {
    const std::string s = it->get<std::string>();
    if (s == "cyclic")
      schedule.kind = Schedule::Kind::cyclic;
    else if (s == "random_permutation")
      schedule.kind = Schedule::Kind::random_permutation;
    else
      throw std::invalid_argument("unknown schedule: '" + s + "'");
  }
  if (const auto it = j.find("seed"); it != j.end()) schedule.seed = it->get<std::uint64_t>();

  NetworkConfig config{
      Network(sys.algebra, std::move(tau), activation, n, std::move(weights), schedule), {}};

  if (const auto it = j.find("initial"); it != j.end()) {
    if (!it->is_array() || it->size() != static_cast<std::size_t>(n))
      throw std::invalid_argument("initial must hold N coefficient vectors");
    StateVector x0;
    x0.reserve(static_cast<std::size_t>(n));
    for (const auto& entry : *it)
      x0.emplace_back(sys.algebra, coeffs_from_json(entry, dim, "initial state"));
    config.initial = std::move(x0);
  }
  return config;
}

namespace {

std::vector<std::string> split_id(const std::string& id) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos <= id.size()) {
    std::size_t colon = id.find(':', pos);
    if (colon == std::string::npos) colon = id.size();
    parts.push_back(id.substr(pos, colon - pos));
    pos = colon + 1;
  }
  return parts;
}

// The two-neuron demonstration pair: no self-feedback, w12 = w21 = 1 + 3i.
// The involution is chosen per variant so that the stable pairings are
// hermitian and the unstable ones are not.
NetworkConfig two_neuron_preset(const std::string& alg_name, const std::string& act_name) {
  Activation activation = Activation::parse(act_name);
  if (activation.kind() != Activation::Kind::split &&
      activation.kind() != Activation::Kind::conj_split)
    throw std::invalid_argument("two-neuron preset supports split and conj_split only");

  AlgebraSystem sys = builtin_algebra(alg_name);
  if (sys.algebra->dim() != 2)
    throw std::invalid_argument("two-neuron preset needs a 2-dimensional algebra");

  const bool is_split = activation.kind() == Activation::Kind::split;
  Involution tau = Involution::identity(2);
  if (is_split && alg_name == "C") tau = Involution::natural(2);
  if (!is_split && alg_name == "U") tau = Involution::natural(2);

  const HNumber zero = HNumber::zero(sys.algebra);
  const HNumber w(sys.algebra, {1.0, 3.0});
  Network net(sys.algebra, std::move(tau), activation, 2, {zero, w, w, zero});

  StateVector x0{HNumber(sys.algebra, {-1.0, -1.0}), HNumber(sys.algebra, {1.0, 1.0})};
  return {std::move(net), std::move(x0)};
}

}  // namespace

NetworkConfig load_network_config(const std::string& path_or_preset) {
  if (path_or_preset.rfind("two-neuron-real:", 0) == 0) {
    const auto parts = split_id(path_or_preset);
    if (parts.size() != 2) throw std::invalid_argument("expected two-neuron-real:<C|U|D>");
    NetworkConfig base = two_neuron_preset(parts[1], "split");
    RealifiedNetwork rn = realify_network(base.net);
    std::optional<StateVector> initial;
    if (base.initial)
      initial = phi_inv(phi(*base.initial), rn.net.algebra(), rn.net.size());
    return {std::move(rn.net), std::move(initial)};
  }
  if (path_or_preset.rfind("two-neuron:", 0) == 0) {
    const auto parts = split_id(path_or_preset);
    if (parts.size() != 3)
      throw std::invalid_argument("expected two-neuron:<C|U|D>:<split|conj_split>");
    return two_neuron_preset(parts[1], parts[2]);
  }
  std::ifstream in(path_or_preset);
  if (!in) throw std::invalid_argument("cannot open config: " + path_or_preset);
  json j;
  in >> j;
  return network_config_from_json(j);
}

void write_trace_csv(std::ostream& os, const Trace& trace) {
  os << "t,neuron,changed,energy\n";
  char buf[40];
  for (const TraceEvent& e : trace.events) {
    std::snprintf(buf, sizeof(buf), "%.17g", e.energy_after);
    os << e.t << ',' << e.neuron << ',' << (e.changed ? 1 : 0) << ',' << buf << '\n';
  }
}

json classification_to_json(const TransitionGraph& g, const Classification& c) {
  json j;
  j["fixed_points"] = c.fixed_points;
  j["cyclic_nodes"] = c.cyclic_nodes;
  j["counts"] = {{"nodes", g.node_count()},
                 {"edges", g.edges().size()},
                 {"fixed_points", c.fixed_points.size()},
                 {"cyclic_nodes", c.cyclic_nodes.size()}};
  return j;
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace hhnn
