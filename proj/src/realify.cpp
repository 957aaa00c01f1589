#include "hhnn/realify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace hhnn {

RealMatrix left_mul_matrix(const HNumber& w) {
  const int d = w.dim();
  const AlgebraPtr& alg = w.algebra();
  RealMatrix m(d, d);
  std::vector<double> col(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    const HNumber ek = HNumber::basis(alg, k);
    std::fill(col.begin(), col.end(), 0.0);
    alg->mul_acc(w.data(), ek.data(), col.data());
    for (int r = 0; r < d; ++r) m.at(r, k) = col[static_cast<std::size_t>(r)];
  }
  return m;
}

void matvec_serial(const RealMatrix& m, std::span<const double> x, std::span<double> y) {
  if (static_cast<int>(x.size()) != m.cols || static_cast<int>(y.size()) != m.rows)
    throw std::invalid_argument("matvec dimension mismatch");
  for (int r = 0; r < m.rows; ++r) {
    const double* row = &m.a[static_cast<std::size_t>(r) * m.cols];
    double acc = 0.0;
    for (int c = 0; c < m.cols; ++c) acc += row[c] * x[static_cast<std::size_t>(c)];
    y[static_cast<std::size_t>(r)] = acc;
  }
}

void matvec(const RealMatrix& m, std::span<const double> x, std::span<double> y) {
  if (static_cast<int>(x.size()) != m.cols || static_cast<int>(y.size()) != m.rows)
    throw std::invalid_argument("matvec dimension mismatch");
  const int rows = m.rows;
#pragma omp parallel for schedule(static)
  for (int r = 0; r < rows; ++r) {
    const double* row = &m.a[static_cast<std::size_t>(r) * m.cols];
    double acc = 0.0;
    for (int c = 0; c < m.cols; ++c) acc += row[c] * x[static_cast<std::size_t>(c)];
    y[static_cast<std::size_t>(r)] = acc;
  }
}

std::vector<double> phi(const std::vector<HNumber>& x) {
  std::vector<double> out;
  if (x.empty()) return out;
  out.reserve(x.size() * static_cast<std::size_t>(x[0].dim()));
  for (const HNumber& xi : x) out.insert(out.end(), xi.coeffs().begin(), xi.coeffs().end());
  return out;
}

StateVector phi_inv(std::span<const double> y, const AlgebraPtr& algebra, int n_neurons) {
  const int d = algebra->dim();
  if (y.size() != static_cast<std::size_t>(n_neurons) * d)
    throw std::invalid_argument("vector length does not match N * dim");
  StateVector x;
  x.reserve(static_cast<std::size_t>(n_neurons));
  for (int i = 0; i < n_neurons; ++i) {
    std::vector<double> c(y.begin() + static_cast<std::ptrdiff_t>(i) * d,
                          y.begin() + static_cast<std::ptrdiff_t>(i + 1) * d);
    x.emplace_back(algebra, std::move(c));
  }
  return x;
}

RealifiedNetwork realify_network(const Network& net) {
  if (net.activation().kind() != Activation::Kind::split)
    throw std::invalid_argument(
        "only componentwise-sign networks realify to an equivalent sign network");
  const int n = net.size();
  const int d = net.algebra()->dim();
  const int m = n * d;

  RealMatrix big(m, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const RealMatrix block = left_mul_matrix(net.w(i, j));
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) big.at(i * d + r, j * d + c) = block.at(r, c);
    }

  AlgebraSystem real = builtin_algebra("R");
  std::vector<HNumber> weights;
  weights.reserve(static_cast<std::size_t>(m) * m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c)
      weights.push_back(HNumber::from_real(real.algebra, big.at(r, c)));

  Network rn(real.algebra, real.involution, Activation::split(), m, std::move(weights),
             net.schedule());
  return {std::move(big), std::move(rn)};
}

RealifyCheck verify_realification(const Network& net, int trials, std::uint64_t seed) {
  const RealifiedNetwork rn = realify_network(net);
  RealifyCheck check;
  std::vector<double> lhs(static_cast<std::size_t>(rn.matrix.rows));
  for (int trial = 0; trial < trials; ++trial) {
    const StateVector x =
        random_state(net.activation(), net.algebra(), net.size(), seed + static_cast<std::uint64_t>(trial));
    const std::vector<double> px = phi(x);
    matvec(rn.matrix, px, lhs);
    const std::vector<double> rhs = phi(potentials(net, x));
    double err = 0.0;
    for (std::size_t k = 0; k < rhs.size(); ++k)
      err = std::max(err, std::abs(lhs[k] - rhs[k]));
    check.max_err = std::max(check.max_err, err);
    ++check.trials;
    if (err > 1e-12 && check.ok) {
      check.ok = false;
      check.witness = x;
    }
  }
  return check;
}

std::string matrix_to_csv(const RealMatrix& m) {
  std::string out;
  char buf[40];
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", m.at(r, c));
      if (c) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace hhnn
