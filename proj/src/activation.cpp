#include "hhnn/activation.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace hhnn {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Sector index m in 0..K-1 such that arg(z) is within pi/K of 2 pi m / K,
// or nullopt when z is at the origin or on a sector boundary.
std::optional<int> csgn_sector(int K, double re, double im) {
  const double r = std::hypot(re, im);
  if (r <= kDomainEps) return std::nullopt;
  double theta = std::atan2(im, re);
  if (theta < 0) theta += kTwoPi;
  const double half = std::numbers::pi / K;
  const double residue = std::fmod(theta, 2.0 * half);
  if (std::abs(residue - half) <= kDomainEps) return std::nullopt;
  int m = static_cast<int>(std::llround(theta / (2.0 * half))) % K;
  return m;
}

// The two coefficients of the sector-m state.  Both apply() and state_set()
// go through here so their outputs are bitwise identical.  States on the
// axes are exact, so e.g. K = 2 yields the real pair {1, -1} with no
// sin(pi) residue.
std::pair<double, double> csgn_state(int K, int m) {
  if ((4 * m) % K == 0) {
    switch ((4 * m / K) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double phase = kTwoPi * m / K;
  return {std::cos(phase), std::sin(phase)};
}

// Angular distance from theta to the nearest sector boundary, scaled back
// to a euclidean margin at radius r.
double csgn_margin(int K, double re, double im) {
  const double r = std::hypot(re, im);
  if (r == 0.0) return 0.0;
  double theta = std::atan2(im, re);
  if (theta < 0) theta += kTwoPi;
  const double half = std::numbers::pi / K;
  const double residue = std::fmod(theta, 2.0 * half);
  const double ang = std::abs(residue - half);
  return std::min(r, r * std::sin(ang));
}

int gray_code(int i) { return i ^ (i >> 1); }

}  // namespace

Activation Activation::csgn(int resolution) {
  if (resolution < 2) throw std::invalid_argument("phase resolution must be at least 2");
  return Activation(Kind::csgn, resolution);
}

Activation Activation::tsgn(int resolution) {
  if (resolution < 2) throw std::invalid_argument("phase resolution must be at least 2");
  return Activation(Kind::tsgn, resolution);
}

Activation Activation::split() { return Activation(Kind::split, 0); }
Activation Activation::conj_split() { return Activation(Kind::conj_split, 0); }
Activation Activation::sigma() { return Activation(Kind::sigma, 0); }

Activation Activation::parse(const std::string& id) {
  if (id.rfind("csgn:", 0) == 0) return csgn(std::stoi(id.substr(5)));
  if (id.rfind("tsgn:", 0) == 0) return tsgn(std::stoi(id.substr(5)));
  if (id == "split") return split();
  if (id == "conj_split") return conj_split();
  if (id == "sigma") return sigma();
  throw std::invalid_argument("unknown activation id: '" + id + "'");
}

std::string Activation::id() const {
  switch (kind_) {
    case Kind::csgn: return "csgn:" + std::to_string(resolution_);
    case Kind::tsgn: return "tsgn:" + std::to_string(resolution_);
    case Kind::split: return "split";
    case Kind::conj_split: return "conj_split";
    case Kind::sigma: return "sigma";
  }
  return {};
}

void Activation::check_dim(int dim) const {
  switch (kind_) {
    case Kind::csgn:
    case Kind::conj_split:
      if (dim != 2) throw std::invalid_argument(id() + " needs a 2-dimensional algebra");
      break;
    case Kind::tsgn:
      if (dim != 4) throw std::invalid_argument(id() + " needs a 4-dimensional algebra");
      break;
    case Kind::split:
    case Kind::sigma:
      break;
  }
}

std::optional<HNumber> Activation::apply(const HNumber& v) const {
  check_dim(v.dim());
  switch (kind_) {
    case Kind::csgn: {
      const auto m = csgn_sector(resolution_, v[0], v[1]);
      if (!m) return std::nullopt;
      const auto [re, im] = csgn_state(resolution_, *m);
      return HNumber(v.algebra(), {re, im});
    }
    case Kind::tsgn: {
      const auto mu = csgn_sector(resolution_, v[0], v[1]);
      const auto mv = csgn_sector(resolution_, v[2], v[3]);
      if (!mu || !mv) return std::nullopt;
      const auto [u0, u1] = csgn_state(resolution_, *mu);
      const auto [v0, v1] = csgn_state(resolution_, *mv);
      return HNumber(v.algebra(), {u0, u1, v0, v1});
    }
    case Kind::split: {
      std::vector<double> c(static_cast<std::size_t>(v.dim()));
      for (int k = 0; k < v.dim(); ++k) {
        if (std::abs(v[k]) <= kDomainEps) return std::nullopt;
        c[static_cast<std::size_t>(k)] = v[k] > 0 ? 1.0 : -1.0;
      }
      return HNumber(v.algebra(), std::move(c));
    }
    case Kind::conj_split: {
      if (std::abs(v[0]) <= kDomainEps || std::abs(v[1]) <= kDomainEps) return std::nullopt;
      return HNumber(v.algebra(), {v[0] > 0 ? 1.0 : -1.0, v[1] > 0 ? -1.0 : 1.0});
    }
    case Kind::sigma: {
      const double r = abs_value(v);
      if (r <= kDomainEps) return std::nullopt;
      return (1.0 / r) * v;
    }
  }
  return std::nullopt;
}

std::vector<HNumber> Activation::state_set(const AlgebraPtr& algebra) const {
  check_dim(algebra->dim());
  std::vector<HNumber> states;
  switch (kind_) {
    case Kind::csgn:
      for (int m = 0; m < resolution_; ++m) {
        const auto [re, im] = csgn_state(resolution_, m);
        states.emplace_back(algebra, std::vector<double>{re, im});
      }
      break;
    case Kind::tsgn:
      for (int mu = 0; mu < resolution_; ++mu)
        for (int mv = 0; mv < resolution_; ++mv) {
          const auto [u0, u1] = csgn_state(resolution_, mu);
          const auto [v0, v1] = csgn_state(resolution_, mv);
          states.emplace_back(algebra, std::vector<double>{u0, u1, v0, v1});
        }
      break;
    case Kind::split:
    case Kind::conj_split: {
      const int d = algebra->dim();
      if (d > 20) throw std::invalid_argument("state set too large to enumerate");
      for (int i = 0; i < (1 << d); ++i) {
        const int g = gray_code(i);
        std::vector<double> c(static_cast<std::size_t>(d));
        for (int k = 0; k < d; ++k)
          c[static_cast<std::size_t>(k)] = (g >> (d - 1 - k)) & 1 ? -1.0 : 1.0;
        states.emplace_back(algebra, std::move(c));
      }
      break;
    }
    case Kind::sigma:
      throw std::logic_error("sigma has no finite state set");
  }
  return states;
}

double Activation::boundary_margin(const HNumber& v) const {
  check_dim(v.dim());
  switch (kind_) {
    case Kind::csgn:
      return csgn_margin(resolution_, v[0], v[1]);
    case Kind::tsgn:
      return std::min(csgn_margin(resolution_, v[0], v[1]),
                      csgn_margin(resolution_, v[2], v[3]));
    case Kind::split: {
      double m = std::abs(v[0]);
      for (int k = 1; k < v.dim(); ++k) m = std::min(m, std::abs(v[k]));
      return m;
    }
    case Kind::conj_split:
      return std::min(std::abs(v[0]), std::abs(v[1]));
    case Kind::sigma:
      return abs_value(v);
  }
  return 0.0;
}

BProjectionReport verify_b_projection(const Activation& activation, const AlgebraPtr& algebra,
                                      const Involution& tau, int samples, std::uint64_t seed) {
  const int d = algebra->dim();
  if (tau.dim() != d)
    throw std::invalid_argument("involution dimension does not match the algebra");

  std::mt19937_64 eng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const auto draw = [&] {
    std::vector<double> c(static_cast<std::size_t>(d));
    for (double& x : c) x = gauss(eng);
    return HNumber(algebra, std::move(c));
  };

  std::vector<HNumber> states;
  if (activation.finite_states()) states = activation.state_set(algebra);

  BProjectionReport report;
  for (int i = 0; i < samples; ++i) {
    HNumber q = draw();
    int guard = 0;
    while (activation.boundary_margin(q) <= kBoundaryMargin) {
      q = draw();
      if (++guard > 1000) throw std::runtime_error("cannot sample away from boundaries");
    }
    const auto fq = activation.apply(q);
    if (!fq) throw std::logic_error("activation undefined despite boundary margin");
    const double best = bilinear_b(tau, *fq, q);

    ++report.samples_checked;
    const auto flag = [&](const HNumber& s) {
      if (bilinear_b(tau, s, q) > best) {
        report.ok = false;
        if (!report.q) {
          report.q = q;
          report.s = s;
        }
        return true;
      }
      return false;
    };

    if (activation.finite_states()) {
      for (const HNumber& s : states)
        if (flag(s)) break;
    } else {
      // compare against random unit-sphere competitors
      for (int trial = 0; trial < 8; ++trial) {
        HNumber s = draw();
        const double r = abs_value(s);
        if (r <= kBoundaryMargin) continue;
        s = (1.0 / r) * s;
        if (flag(s)) break;
      }
    }
  }
  return report;
}

}  // namespace hhnn
