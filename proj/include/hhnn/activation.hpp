#pragma once

#include "hhnn/algebra.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hhnn {

/// Inputs closer than this to an activation's decision boundary (or to the
/// origin) are treated as outside its domain: the neuron holds its state.
inline constexpr double kDomainEps = 1e-12;

/// Random test points are redrawn when they fall within this margin of a
/// decision boundary, so verification never hinges on ties.
inline constexpr double kBoundaryMargin = 1e-9;

/// Quantization-style activation applied to a neuron's activation potential.
///
/// All variants map a nonboundary input to a fixed state set:
///   csgn:K      phase quantizer on dim-2 numbers; K states on the unit circle
///   tsgn:K      csgn:K on each of the two complex components u = (p0, p1),
///               v = (p2, p3) of a dim-4 number; K^2 states
///   split       componentwise sign, any dimension; 2^dim states
///   conj_split  (sgn p0, -sgn p1) on dim-2 numbers; 4 states
///   sigma       p / |p|, the unit sphere (infinite state set)
class Activation {
public:
  enum class Kind { csgn, tsgn, split, conj_split, sigma };

  static Activation csgn(int resolution);
  static Activation tsgn(int resolution);
  static Activation split();
  static Activation conj_split();
  static Activation sigma();

  /// Inverse of id(): "csgn:4", "tsgn:2", "split", "conj_split", "sigma".
  static Activation parse(const std::string& id);
  std::string id() const;

  Kind kind() const { return kind_; }
  int resolution() const { return resolution_; }

  /// nullopt when v lies on a decision boundary (within kDomainEps); the
  /// caller is expected to hold the previous state in that case.
  std::optional<HNumber> apply(const HNumber& v) const;

  bool finite_states() const { return kind_ != Kind::sigma; }

  /// Canonical denumeration of the reachable states; throws for sigma.
  /// Orderings are fixed: csgn by increasing phase, split in binary
  /// reflected Gray order starting from the all-positive vector, tsgn
  /// u-major.  Elements are bitwise identical to apply() outputs.
  std::vector<HNumber> state_set(const AlgebraPtr& algebra) const;

  /// Distance from v to the nearest decision boundary (0 when on one).
  double boundary_margin(const HNumber& v) const;

private:
  Activation(Kind kind, int resolution) : kind_(kind), resolution_(resolution) {}

  void check_dim(int dim) const;

  Kind kind_;
  int resolution_;
};

struct BProjectionReport {
  bool ok = true;
  int samples_checked = 0;
  // first counterexample: a state s with B(s, q) > B(f(q), q)
  std::optional<HNumber> q;
  std::optional<HNumber> s;
};

/// Samples activation potentials q (componentwise standard normal, redrawn
/// near decision boundaries) and checks that f(q) maximizes B(., q) over the
/// state set.  For sigma the comparison runs against random unit vectors.
/// Ties do not count as violations.
BProjectionReport verify_b_projection(const Activation& activation, const AlgebraPtr& algebra,
                                      const Involution& tau, int samples, std::uint64_t seed);

}  // namespace hhnn
