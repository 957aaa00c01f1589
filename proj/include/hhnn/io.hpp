#pragma once

#include "hhnn/graph.hpp"
#include "hhnn/network.hpp"
#include "hhnn/realify.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace hhnn {

/// {"name", "dim", "constants": dim^3 exact "num/den" strings in row-major
/// (mu, nu, k) order, "involution": sign array}.  Round-trips exactly.
nlohmann::json algebra_to_json(const Algebra& algebra, const Involution& tau);
AlgebraSystem algebra_from_json(const nlohmann::json& j);

struct NetworkConfig {
  Network net;
  std::optional<StateVector> initial;
};

/// Network description: algebra id, involution, activation id, N, row-major
/// weight coefficient vectors, schedule, seed, optional initial state.
/// Unknown fields are rejected.
nlohmann::json network_config_to_json(const Network& net,
                                      const std::optional<StateVector>& initial = {});
NetworkConfig network_config_from_json(const nlohmann::json& j);

/// Reads a config file, or builds one of the named presets:
///   two-neuron:<C|U|D>:<split|conj_split>   the two-neuron demonstration
///                                           pair w12 = w21 = 1+3i
///   two-neuron-real:<C|U|D>                 its realification (split only)
NetworkConfig load_network_config(const std::string& path_or_preset);

/// Columns t, neuron, changed (0/1), energy ("%.17g").
void write_trace_csv(std::ostream& os, const Trace& trace);

nlohmann::json classification_to_json(const TransitionGraph& g, const Classification& c);

std::uint64_t fnv1a64(std::string_view text);
std::string hex64(std::uint64_t value);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace hhnn
