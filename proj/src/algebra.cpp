#include "hhnn/algebra.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace hhnn {

namespace {

std::size_t tensor_index(int dim, int mu, int nu, int k) {
  return (static_cast<std::size_t>(mu) * dim + nu) * dim + k;
}

}  // namespace

Algebra::Algebra(std::string name, int dim, std::vector<Rat> tensor)
    : name_(std::move(name)), dim_(dim), tensor_(std::move(tensor)) {
  if (dim_ < 1) throw std::invalid_argument("algebra dimension must be >= 1");
  const auto expected = static_cast<std::size_t>(dim_) * dim_ * dim_;
  if (tensor_.size() != expected)
    throw std::invalid_argument("structure tensor must have dim^3 entries");
  for (int nu = 0; nu < dim_; ++nu)
    for (int k = 0; k < dim_; ++k) {
      const Rat want = (nu == k) ? 1 : 0;
      if (c(0, nu, k) != want || c(nu, 0, k) != want)
        throw std::invalid_argument("basis element 0 must act as the unit");
    }

  term_off_.assign(static_cast<std::size_t>(dim_) * dim_ + 1, 0);
  for (int mu = 0; mu < dim_; ++mu)
    for (int nu = 0; nu < dim_; ++nu) {
      for (int k = 0; k < dim_; ++k) {
        const Rat& v = c(mu, nu, k);
        if (v != 0) terms_.push_back({k, static_cast<double>(v)});
      }
      term_off_[static_cast<std::size_t>(mu) * dim_ + nu + 1] =
          static_cast<std::uint32_t>(terms_.size());
    }
}

AlgebraPtr Algebra::create(std::string name, int dim, std::vector<Rat> tensor) {
  return AlgebraPtr(new Algebra(std::move(name), dim, std::move(tensor)));
}

void Algebra::mul_acc(const double* a, const double* b, double* acc) const {
  const int d = dim_;
  for (int mu = 0; mu < d; ++mu) {
    const double am = a[mu];
    if (am == 0.0) continue;
    const std::uint32_t* off = &term_off_[static_cast<std::size_t>(mu) * d];
    for (int nu = 0; nu < d; ++nu) {
      const double f = am * b[nu];
      if (f == 0.0) continue;
      const std::uint32_t end = off[nu + 1];
      for (std::uint32_t t = off[nu]; t < end; ++t) acc[terms_[t].k] += f * terms_[t].c;
    }
  }
}

HNumber::HNumber(AlgebraPtr algebra, std::vector<double> coeffs)
    : algebra_(std::move(algebra)), coeffs_(std::move(coeffs)) {
  if (!algebra_) throw std::invalid_argument("number requires an algebra");
  if (static_cast<int>(coeffs_.size()) != algebra_->dim())
    throw std::invalid_argument("coefficient count must equal the algebra dimension");
}

HNumber HNumber::zero(AlgebraPtr algebra) {
  std::vector<double> c(algebra ? algebra->dim() : 0, 0.0);
  return HNumber(std::move(algebra), std::move(c));
}

HNumber HNumber::one(AlgebraPtr algebra) { return from_real(std::move(algebra), 1.0); }

HNumber HNumber::basis(AlgebraPtr algebra, int mu) {
  if (!algebra || mu < 0 || mu >= algebra->dim())
    throw std::invalid_argument("basis index out of range");
  std::vector<double> c(algebra->dim(), 0.0);
  c[static_cast<std::size_t>(mu)] = 1.0;
  return HNumber(std::move(algebra), std::move(c));
}

HNumber HNumber::from_real(AlgebraPtr algebra, double value) {
  if (!algebra) throw std::invalid_argument("number requires an algebra");
  std::vector<double> c(algebra->dim(), 0.0);
  c[0] = value;
  return HNumber(std::move(algebra), std::move(c));
}

bool HNumber::operator==(const HNumber& other) const {
  if (algebra_.get() != other.algebra_.get() && !(*algebra_ == *other.algebra_)) return false;
  return coeffs_ == other.coeffs_;
}

void require_same_algebra(const HNumber& a, const HNumber& b) {
  if (a.algebra().get() == b.algebra().get()) return;
  if (*a.algebra() == *b.algebra()) return;
  throw std::invalid_argument("operands belong to different algebras: " + a.algebra()->name() +
                              " vs " + b.algebra()->name());
}

HNumber operator+(const HNumber& a, const HNumber& b) {
  require_same_algebra(a, b);
  std::vector<double> c(a.coeffs().begin(), a.coeffs().end());
  for (int k = 0; k < a.dim(); ++k) c[static_cast<std::size_t>(k)] += b[k];
  return HNumber(a.algebra(), std::move(c));
}

HNumber operator-(const HNumber& a, const HNumber& b) {
  require_same_algebra(a, b);
  std::vector<double> c(a.coeffs().begin(), a.coeffs().end());
  for (int k = 0; k < a.dim(); ++k) c[static_cast<std::size_t>(k)] -= b[k];
  return HNumber(a.algebra(), std::move(c));
}

HNumber operator-(const HNumber& a) { return -1.0 * a; }

HNumber operator*(const HNumber& a, const HNumber& b) {
  require_same_algebra(a, b);
  std::vector<double> c(static_cast<std::size_t>(a.dim()), 0.0);
  a.algebra()->mul_acc(a.data(), b.data(), c.data());
  return HNumber(a.algebra(), std::move(c));
}

HNumber operator*(double s, const HNumber& a) {
  std::vector<double> c(a.coeffs().begin(), a.coeffs().end());
  for (double& v : c) v *= s;
  return HNumber(a.algebra(), std::move(c));
}

double abs_value(const HNumber& p) {
  double acc = 0.0;
  for (int k = 0; k < p.dim(); ++k) acc += p[k] * p[k];
  return std::sqrt(acc);
}

namespace {

std::string unit_name(int dim, int mu) {
  static const char* low[] = {"", "i", "j", "k"};
  if (dim <= 4) return low[mu];
  return "i" + std::to_string(mu);
}

std::string coeff_str(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

std::string to_string(const HNumber& p) {
  std::string out;
  const int d = p.dim();
  if (p[0] != 0.0 || d == 1) out = coeff_str(p[0]);
  for (int mu = 1; mu < d; ++mu) {
    const double v = p[mu];
    if (v == 0.0) continue;
    if (!out.empty() && v >= 0.0) out += '+';
    if (v == -1.0)
      out += '-';
    else if (v != 1.0)
      out += coeff_str(v);
    out += unit_name(d, mu);
  }
  if (out.empty()) out = "0";
  return out;
}

Involution::Involution(std::vector<int> signs) : signs_(std::move(signs)) {
  if (signs_.empty()) throw std::invalid_argument("involution needs at least one sign");
  if (signs_[0] != 1) throw std::invalid_argument("involution must fix the real unit");
  for (int s : signs_)
    if (s != 1 && s != -1) throw std::invalid_argument("involution signs must be +1 or -1");
}

Involution Involution::identity(int dim) { return Involution(std::vector<int>(dim, 1)); }

Involution Involution::natural(int dim) {
  std::vector<int> s(dim, -1);
  s[0] = 1;
  return Involution(std::move(s));
}

Involution Involution::tessarine() { return Involution({1, -1, 1, -1}); }

HNumber Involution::apply(const HNumber& p) const {
  if (p.dim() != dim())
    throw std::invalid_argument("involution dimension does not match the operand");
  std::vector<double> c(p.coeffs().begin(), p.coeffs().end());
  for (int k = 0; k < dim(); ++k)
    if (signs_[static_cast<std::size_t>(k)] < 0) c[static_cast<std::size_t>(k)] = -c[static_cast<std::size_t>(k)];
  return HNumber(p.algebra(), std::move(c));
}

InvolutionCheck is_reverse_involution(const Algebra& algebra, const Involution& tau) {
  if (tau.dim() != algebra.dim())
    throw std::invalid_argument("involution dimension does not match the algebra");
  const int n = algebra.dim();
  // tau(e_mu e_nu) = sum_k sign(k) c(mu,nu,k) e_k must equal
  // tau(e_nu) tau(e_mu) = sign(mu) sign(nu) sum_k c(nu,mu,k) e_k.
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu) {
      const int snn = tau.sign(mu) * tau.sign(nu);
      for (int k = 0; k < n; ++k) {
        if (tau.sign(k) * algebra.c(mu, nu, k) != snn * algebra.c(nu, mu, k))
          return {false, {mu, nu}};
      }
    }
  return {};
}

ReahnCheck is_reahn(const Algebra& algebra) {
  const int n = algebra.dim();
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu)
      for (int rho = 0; rho < n; ++rho) {
        Rat lhs = 0, rhs = 0;
        for (int k = 0; k < n; ++k) {
          const Rat& a = algebra.c(mu, nu, k);
          if (a != 0) lhs += a * algebra.c(k, rho, 0);
          const Rat& b = algebra.c(nu, rho, k);
          if (b != 0) rhs += b * algebra.c(mu, k, 0);
        }
        if (lhs != rhs) return {false, {mu, nu, rho}};
      }
  return {};
}

namespace {

// Symmetric PSD test by repeated Schur complements on positive pivots.
// A symmetric matrix is PSD iff every zero-diagonal row is entirely zero
// and the complement with respect to any positive pivot is PSD.
bool psd_eliminate(std::vector<Rat>& g, int n) {
  std::vector<int> active(static_cast<std::size_t>(n));
  std::iota(active.begin(), active.end(), 0);
  const auto at = [&](int r, int c) -> Rat& { return g[static_cast<std::size_t>(r) * n + c]; };

  while (!active.empty()) {
    for (int i : active)
      if (at(i, i) < 0) return false;
    std::vector<int> next;
    next.reserve(active.size());
    for (int i : active) {
      if (at(i, i) == 0) {
        for (int j : active)
          if (at(i, j) != 0) return false;
      } else {
        next.push_back(i);
      }
    }
    if (next.empty()) return true;
    const int p = next.front();
    next.erase(next.begin());
    const Rat piv = at(p, p);
    for (int i : next)
      for (int j : next) at(i, j) -= at(i, p) * at(p, j) / piv;
    active = std::move(next);
  }
  return true;
}

}  // namespace

bool is_positive_semidefinite(const Algebra& algebra, const Involution& tau) {
  if (tau.dim() != algebra.dim())
    throw std::invalid_argument("involution dimension does not match the algebra");
  const int n = algebra.dim();
  std::vector<Rat> gram(static_cast<std::size_t>(n) * n);
  // B(e_mu, e_nu) = Re(tau(e_mu) e_nu) = sign(mu) c(mu, nu, 0).
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu)
      gram[static_cast<std::size_t>(mu) * n + nu] = tau.sign(mu) * algebra.c(mu, nu, 0);
  return psd_eliminate(gram, n);
}

double bilinear_b(const Involution& tau, const HNumber& p, const HNumber& q) {
  require_same_algebra(p, q);
  if (tau.dim() != p.dim())
    throw std::invalid_argument("involution dimension does not match the operands");
  // Only the real part of tau(p) q is needed: sum over mu, nu of
  // sign(mu) p_mu q_nu c(mu, nu, 0).
  const Algebra& alg = *p.algebra();
  const int n = p.dim();
  double acc = 0.0;
  for (int mu = 0; mu < n; ++mu) {
    const double pm = p[mu] * tau.sign(mu);
    if (pm == 0.0) continue;
    for (int nu = 0; nu < n; ++nu) {
      const Rat& c0 = alg.c(mu, nu, 0);
      if (c0 != 0) acc += pm * q[nu] * static_cast<double>(c0);
    }
  }
  return acc;
}

double associator_re(const HNumber& p, const HNumber& q, const HNumber& r) {
  require_same_algebra(p, q);
  require_same_algebra(q, r);
  const HNumber lhs = (p * q) * r;
  const HNumber rhs = p * (q * r);
  return lhs.real_part() - rhs.real_part();
}

namespace {

std::vector<Rat> real_tensor() { return {Rat(1)}; }

std::vector<Rat> clifford2_tensor(const Rat& kappa) {
  std::vector<Rat> t(8, Rat(0));
  t[tensor_index(2, 0, 0, 0)] = 1;
  t[tensor_index(2, 0, 1, 1)] = 1;
  t[tensor_index(2, 1, 0, 1)] = 1;
  t[tensor_index(2, 1, 1, 0)] = kappa;
  return t;
}

// index pairs (mu, nu, k, value) describing e_mu e_nu = value * e_k
struct Cell {
  int mu, nu, k, v;
};

std::vector<Rat> table4(std::initializer_list<Cell> cells) {
  std::vector<Rat> t(64, Rat(0));
  for (int nu = 0; nu < 4; ++nu) {
    t[tensor_index(4, 0, nu, nu)] = 1;
    t[tensor_index(4, nu, 0, nu)] = 1;
  }
  for (const Cell& c : cells) t[tensor_index(4, c.mu, c.nu, c.k)] = c.v;
  return t;
}

std::vector<Rat> quaternion_tensor() {
  return table4({{1, 1, 0, -1},
                 {1, 2, 3, 1},
                 {1, 3, 2, -1},
                 {2, 1, 3, -1},
                 {2, 2, 0, -1},
                 {2, 3, 1, 1},
                 {3, 1, 2, 1},
                 {3, 2, 1, -1},
                 {3, 3, 0, -1}});
}

std::vector<Rat> tessarine_tensor() {
  return table4({{1, 1, 0, -1},
                 {1, 2, 3, 1},
                 {1, 3, 2, -1},
                 {2, 1, 3, 1},
                 {2, 2, 0, 1},
                 {2, 3, 1, 1},
                 {3, 1, 2, -1},
                 {3, 2, 1, 1},
                 {3, 3, 0, -1}});
}

// One doubling step: from the tensor of a dim-d algebra with the natural
// conjugation, build the dim-2d product
//   (a, b) (c, d) = (a c - conj(d) b, d a + b conj(c)).
// On basis elements, with u, v in the lower level and s(q) the conjugation
// sign of e_q:
//   (u,0)(v,0) = (u v, 0)        (0,u)(v,0) = (0, u conj(v)) = s(v) (0, u v)
//   (u,0)(0,v) = (0, v u)        (0,u)(0,v) = (-conj(v) u, 0) = -s(v) (v u, 0)
std::vector<Rat> double_tensor(const std::vector<Rat>& t, int d) {
  const int dd = 2 * d;
  std::vector<Rat> out(static_cast<std::size_t>(dd) * dd * dd, Rat(0));
  const auto in = [&](int m, int n, int k) -> const Rat& { return t[tensor_index(d, m, n, k)]; };
  const auto sgn = [](int q) { return q == 0 ? 1 : -1; };
  for (int a = 0; a < dd; ++a)
    for (int b = 0; b < dd; ++b) {
      const bool ah = a >= d, bh = b >= d;
      const int p = ah ? a - d : a;
      const int q = bh ? b - d : b;
      for (int k = 0; k < d; ++k) {
        Rat v;
        int dst;
        if (!ah && !bh) {
          v = in(p, q, k);
          dst = k;
        } else if (!ah && bh) {
          v = in(q, p, k);
          dst = d + k;
        } else if (ah && !bh) {
          v = sgn(q) * in(p, q, k);
          dst = d + k;
        } else {
          v = -sgn(q) * in(q, p, k);
          dst = k;
        }
        if (v != 0) out[tensor_index(dd, a, b, dst)] = v;
      }
    }
  return out;
}

}  // namespace

AlgebraPtr cayley_dickson(int level) {
  if (level < 0 || level > 6)
    throw std::out_of_range("doubling level must be between 0 and 6");
  std::vector<Rat> t = real_tensor();
  int d = 1;
  for (int l = 0; l < level; ++l) {
    t = double_tensor(t, d);
    d *= 2;
  }
  return Algebra::create("cd:" + std::to_string(level), d, std::move(t));
}

AlgebraPtr clifford2(const Rat& kappa) {
  std::string label = "cl2:" + rat_to_string(kappa);
  return Algebra::create(std::move(label), 2, clifford2_tensor(kappa));
}

AlgebraSystem builtin_algebra(const std::string& name) {
  if (name == "R") return {Algebra::create("R", 1, real_tensor()), Involution::identity(1)};
  if (name == "C")
    return {Algebra::create("C", 2, clifford2_tensor(-1)), Involution::natural(2)};
  if (name == "U")
    return {Algebra::create("U", 2, clifford2_tensor(1)), Involution::natural(2)};
  if (name == "D")
    return {Algebra::create("D", 2, clifford2_tensor(0)), Involution::natural(2)};
  if (name == "Q") return {Algebra::create("Q", 4, quaternion_tensor()), Involution::natural(4)};
  if (name == "T") return {Algebra::create("T", 4, tessarine_tensor()), Involution::tessarine()};
  if (name == "O") {
    AlgebraPtr cd3 = cayley_dickson(3);
    return {Algebra::create("O", 8, std::vector<Rat>(cd3->tensor().begin(), cd3->tensor().end())),
            Involution::natural(8)};
  }
  throw std::invalid_argument("unknown algebra name: '" + name + "'");
}

AlgebraSystem algebra_from_id(const std::string& id) {
  if (id.rfind("cd:", 0) == 0) {
    const int level = std::stoi(id.substr(3));
    AlgebraPtr alg = cayley_dickson(level);
    return {alg, alg->dim() == 1 ? Involution::identity(1) : Involution::natural(alg->dim())};
  }
  if (id.rfind("cl2:", 0) == 0) {
    const Rat kappa = rat_from_string(id.substr(4));
    return {clifford2(kappa), Involution::natural(2)};
  }
  return builtin_algebra(id);
}

Involution involution_from_id(const std::string& id, int dim) {
  if (id == "identity") return Involution::identity(dim);
  if (id == "natural") return Involution::natural(dim);
  if (id == "tessarine") {
    if (dim != 4) throw std::invalid_argument("the tessarine involution needs dimension 4");
    return Involution::tessarine();
  }
  // comma-separated sign list
  std::vector<int> signs;
  std::size_t pos = 0;
  while (pos <= id.size()) {
    std::size_t comma = id.find(',', pos);
    if (comma == std::string::npos) comma = id.size();
    const std::string tok = id.substr(pos, comma - pos);
    if (tok == "1" || tok == "+1")
      signs.push_back(1);
    else if (tok == "-1")
      signs.push_back(-1);
    else
      throw std::invalid_argument("unknown involution id: '" + id + "'");
    pos = comma + 1;
  }
  if (static_cast<int>(signs.size()) != dim)
    throw std::invalid_argument("involution sign list does not match dimension");
  return Involution(std::move(signs));
}

}  // namespace hhnn
