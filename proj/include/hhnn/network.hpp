#pragma once

#include "hhnn/activation.hpp"
#include "hhnn/algebra.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace hhnn {

/// State values closer than this (max coefficient distance) count as the
/// same state: initial states snap onto the canonical instance, and a neuron
/// holds when its proposed update would move it by less.  Finite state sets
/// are unaffected (distinct states are far apart); for the normalizing
/// activation this is what makes asynchronous runs terminate instead of
/// creeping through last-ulp adjustments forever.
inline constexpr double kStateSnapTol = 1e-9;

struct Schedule {
  enum class Kind { cyclic, random_permutation };
  Kind kind = Kind::cyclic;
  std::uint64_t seed = 0;
};

/// Recurrent single-layer network over one algebra: N neurons, an N x N
/// synaptic matrix (row-major, w(i, j) weighs neuron j's input to neuron i),
/// an activation, and the involution defining the energy's bilinear form.
class Network {
public:
  Network(AlgebraPtr algebra, Involution tau, Activation activation, int n_neurons,
          std::vector<HNumber> weights, Schedule schedule = {});

  int size() const { return n_; }
  const AlgebraPtr& algebra() const { return algebra_; }
  const Involution& tau() const { return tau_; }
  const Activation& activation() const { return activation_; }
  const Schedule& schedule() const { return schedule_; }
  const std::vector<HNumber>& weights() const { return weights_; }

  const HNumber& w(int i, int j) const {
    return weights_[static_cast<std::size_t>(i) * n_ + j];
  }

private:
  AlgebraPtr algebra_;
  Involution tau_;
  Activation activation_;
  int n_;
  std::vector<HNumber> weights_;
  Schedule schedule_;
};

using StateVector = std::vector<HNumber>;

/// v_i = sum_j w(i, j) x_j.
HNumber potential(const Network& net, const StateVector& x, int i);

/// All N potentials.
std::vector<HNumber> potentials(const Network& net, const StateVector& x);

/// The value neuron i would move to, or nullopt when it holds (potential
/// outside the activation's domain, or the activation reproduces x_i up to
/// kStateSnapTol).
std::optional<HNumber> step_value(const Network& net, const StateVector& x, int i);

/// Asynchronous single-neuron update; second member reports whether the
/// state actually changed.
std::pair<StateVector, bool> step(const Network& net, const StateVector& x, int i);

/// E(x) = -1/2 sum_{i,j} B(x_i, w(i,j) x_j).  The parallel version reduces
/// per-row partial sums in index order, so both give identical results up to
/// floating-point associativity inside a row.
double energy(const Network& net, const StateVector& x);
double energy_serial(const Network& net, const StateVector& x);

/// Exact bilinear expansion of E(x with x_i := next) - E(x); no symmetry
/// assumptions on the weights.
double energy_delta(const Network& net, const StateVector& x, int i, const HNumber& next);

/// Two-term decomposition -B(next - x_i, v_i) - 1/2 B(next - x_i,
/// w(i,i) (next - x_i)); agrees with energy_delta when the weights are
/// hermitian with respect to tau.
double energy_delta_hermitian(const Network& net, const StateVector& x, int i,
                              const HNumber& next);

/// Structural hypotheses under which asynchronous updates descend the energy.
struct ConditionReport {
  bool hermitian = false;        // w(j, i) = tau(w(i, j)) for all pairs
  bool zero_self = false;        // every w(i, i) = 0
  bool nonneg_real_self = false; // every w(i, i) real with w(i, i) >= 0
  bool algebra_psd = false;      // B is positive semidefinite on the algebra

  bool self_feedback_ok() const { return zero_self || (nonneg_real_self && algebra_psd); }
  bool convergent() const { return hermitian && self_feedback_ok(); }
};

ConditionReport check_conditions(const Network& net);

struct TraceEvent {
  std::int64_t t = 0;  // update attempt counter, starting at 0
  int neuron = 0;
  bool changed = false;
  HNumber before, after, potential;
  double energy_after = 0.0;
};

struct Trace {
  std::vector<TraceEvent> events;
  bool converged = false;
  int sweeps = 0;
  double initial_energy = 0.0;

  std::int64_t change_count() const;
  double final_energy() const {
    return events.empty() ? initial_energy : events.back().energy_after;
  }
};

/// Runs asynchronous updates sweep by sweep until a full sweep holds every
/// neuron (converged) or max_sweeps is exhausted.  x0 components must lie in
/// the activation's state set; values within 1e-9 of a canonical state are
/// snapped onto it.  The energy column is maintained incrementally via
/// energy_delta.
Trace run(const Network& net, const StateVector& x0, int max_sweeps = 1000);

/// Hermitian synaptic matrix with zero (or the given real) self-feedback:
/// free entries get componentwise standard normal coefficients, mirrored as
/// w(j, i) = tau(w(i, j)).
std::vector<HNumber> random_hermitian_weights(int n_neurons, const AlgebraPtr& algebra,
                                              const Involution& tau, std::uint64_t seed,
                                              double self_weight = 0.0);

/// Independent uniform draws from the activation's state set (unit-sphere
/// points for sigma).
StateVector random_state(const Activation& activation, const AlgebraPtr& algebra, int n_neurons,
                         std::uint64_t seed);

}  // namespace hhnn
