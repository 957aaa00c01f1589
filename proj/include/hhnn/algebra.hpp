#pragma once

#include "hhnn/rational.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace hhnn {

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// A finite-dimensional real algebra with a distinguished unit basis element.
///
/// The multiplication is fully described by the structure-constant tensor
/// c(mu, nu, k): the coefficient of e_k in the product e_mu * e_nu.  Index 0
/// is the real unit, so c(0, nu, k) = delta(nu, k) and c(mu, 0, k) =
/// delta(mu, k); construction rejects tensors violating this.  Constants are
/// kept as exact rationals so that structural law checks are decidable; a
/// parallel double-precision term list drives runtime products.
class Algebra {
public:
  /// Tensor is flat row-major: index (mu * dim + nu) * dim + k.
  static AlgebraPtr create(std::string name, int dim, std::vector<Rat> tensor);

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }

  const Rat& c(int mu, int nu, int k) const {
    return tensor_[(static_cast<std::size_t>(mu) * dim_ + nu) * dim_ + k];
  }
  std::span<const Rat> tensor() const { return tensor_; }

  /// Structural equality: dimension and tensor; names are labels only.
  bool operator==(const Algebra& other) const {
    return dim_ == other.dim_ && tensor_ == other.tensor_;
  }

  /// acc += a * b, all buffers dim()-sized coefficient vectors.
  void mul_acc(const double* a, const double* b, double* acc) const;

private:
  Algebra(std::string name, int dim, std::vector<Rat> tensor);

  struct Term {
    int k;
    double c;
  };

  std::string name_;
  int dim_;
  std::vector<Rat> tensor_;
  // terms_[term_off_[mu*dim+nu] .. term_off_[mu*dim+nu+1]) are the nonzero
  // products of e_mu * e_nu in double precision.
  std::vector<std::uint32_t> term_off_;
  std::vector<Term> terms_;
};

/// Element of a fixed algebra, stored as a real coefficient vector.
class HNumber {
public:
  HNumber(AlgebraPtr algebra, std::vector<double> coeffs);

  static HNumber zero(AlgebraPtr algebra);
  static HNumber one(AlgebraPtr algebra);
  static HNumber basis(AlgebraPtr algebra, int mu);
  static HNumber from_real(AlgebraPtr algebra, double value);

  const AlgebraPtr& algebra() const { return algebra_; }
  int dim() const { return static_cast<int>(coeffs_.size()); }
  double operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
  std::span<const double> coeffs() const { return coeffs_; }
  double* data() { return coeffs_.data(); }
  const double* data() const { return coeffs_.data(); }
  double real_part() const { return coeffs_[0]; }

  /// Same algebra (structurally) and bitwise-identical coefficients.
  bool operator==(const HNumber& other) const;
  bool operator!=(const HNumber& other) const { return !(*this == other); }

private:
  AlgebraPtr algebra_;
  std::vector<double> coeffs_;
};

// Arithmetic rejects operands bound to different algebras
// (std::invalid_argument), where "different" is structural inequality.
HNumber operator+(const HNumber& a, const HNumber& b);
HNumber operator-(const HNumber& a, const HNumber& b);
HNumber operator-(const HNumber& a);
HNumber operator*(const HNumber& a, const HNumber& b);
HNumber operator*(double s, const HNumber& a);

/// Euclidean norm of the coefficient vector.
double abs_value(const HNumber& p);

/// Compact display form, e.g. "1+3i", "-1-i", "2+i1-i7" above dim 4.
std::string to_string(const HNumber& p);

/// Throws std::invalid_argument unless a and b live in the same algebra.
void require_same_algebra(const HNumber& a, const HNumber& b);

/// Diagonal sign map on the basis: e_k -> sign(k) * e_k, sign(0) = +1.
/// This is the shape every involution used here takes; whether a given
/// sign pattern actually reverses products is a property of the algebra
/// and is tested by is_reverse_involution.
class Involution {
public:
  explicit Involution(std::vector<int> signs);

  static Involution identity(int dim);
  /// +1 on the unit, -1 on every other basis element.
  static Involution natural(int dim);
  /// The dim-4 pattern (+1, -1, +1, -1).
  static Involution tessarine();

  int dim() const { return static_cast<int>(signs_.size()); }
  int sign(int k) const { return signs_[static_cast<std::size_t>(k)]; }
  std::span<const int> signs() const { return signs_; }

  HNumber apply(const HNumber& p) const;

  bool operator==(const Involution& other) const { return signs_ == other.signs_; }

private:
  std::vector<int> signs_;
};

struct PairWitness {
  int mu = -1;
  int nu = -1;
};

struct TripleWitness {
  int mu = -1;
  int nu = -1;
  int rho = -1;
};

struct InvolutionCheck {
  bool ok = true;
  PairWitness witness;  // first basis pair with tau(e_mu e_nu) != tau(e_nu) tau(e_mu)
};

struct ReahnCheck {
  bool ok = true;
  TripleWitness witness;  // first basis triple with Re((e_mu e_nu) e_rho) != Re(e_mu (e_nu e_rho))
};

/// Checks tau(p q) = tau(q) tau(p) on all basis pairs, exactly.
InvolutionCheck is_reverse_involution(const Algebra& algebra, const Involution& tau);

/// Checks real-part associativity Re((p q) r) = Re(p (q r)) on all basis
/// triples, exactly.
ReahnCheck is_reahn(const Algebra& algebra);

/// Tests whether the bilinear form B(p, q) = Re(tau(p) q) is positive
/// semidefinite, by exact diagonal-pivot elimination of its Gram matrix.
bool is_positive_semidefinite(const Algebra& algebra, const Involution& tau);

/// B(p, q) = Re(tau(p) q).
double bilinear_b(const Involution& tau, const HNumber& p, const HNumber& q);

/// Re((p q) r - p (q r)).
double associator_re(const HNumber& p, const HNumber& q, const HNumber& r);

/// An algebra together with its conventional involution.
struct AlgebraSystem {
  AlgebraPtr algebra;
  Involution involution;
};

/// Built-in systems by name:
///   R  reals                       (identity involution)
///   C  complex numbers             (conjugation)
///   U  hyperbolic numbers, i^2=+1  (conjugation)
///   D  dual numbers, i^2=0         (conjugation)
///   Q  quaternions                 (conjugation)
///   T  tessarines                  (+1,-1,+1,-1 sign pattern)
///   O  octonions                   (conjugation)
AlgebraSystem builtin_algebra(const std::string& name);

/// Doubling construction: level 0 is R, level 1 matches C, 2 matches Q,
/// 3 matches O.  Levels above 6 (dim 64) are rejected.
AlgebraPtr cayley_dickson(int level);

/// Two-dimensional algebra with i^2 = kappa; kappa in {-1, 0, +1} gives
/// C, D, U respectively.
AlgebraPtr clifford2(const Rat& kappa);

/// Resolves "R".."O", "cd:<k>", "cl2:<kappa>" to a system with its
/// conventional involution (conjugation for cd:, cl2:).
AlgebraSystem algebra_from_id(const std::string& id);

/// Resolves "identity", "natural", "tessarine", or a comma-separated sign
/// list like "+1,-1,-1,+1" against the given dimension.
Involution involution_from_id(const std::string& id, int dim);

}  // namespace hhnn
