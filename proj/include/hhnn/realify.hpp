#pragma once

#include "hhnn/network.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hhnn {

struct RealMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;  // row-major

  RealMatrix() = default;
  RealMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

  double& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

  bool operator==(const RealMatrix&) const = default;
};

/// Matrix of left multiplication by w: column k holds the coefficients of
/// w * e_k.
RealMatrix left_mul_matrix(const HNumber& w);

/// y = M x; the parallel version distributes rows.
void matvec(const RealMatrix& m, std::span<const double> x, std::span<double> y);
void matvec_serial(const RealMatrix& m, std::span<const double> x, std::span<double> y);

/// Concatenated coefficient vectors, neuron-major.
std::vector<double> phi(const std::vector<HNumber>& x);
StateVector phi_inv(std::span<const double> y, const AlgebraPtr& algebra, int n_neurons);

struct RealifiedNetwork {
  RealMatrix matrix;  // (N*dim) x (N*dim), block (i, j) = left_mul_matrix(w(i, j))
  Network net;        // equivalent real network: componentwise sign activation
};

/// Real equivalent of a componentwise-sign network: potentials commute with
/// phi, i.e. matrix * phi(x) = phi(potentials(net, x)).  Requires the split
/// activation (the realified update must be the componentwise sign of the
/// realified potential).
RealifiedNetwork realify_network(const Network& net);

struct RealifyCheck {
  bool ok = true;
  int trials = 0;
  double max_err = 0.0;
  StateVector witness;  // first state exceeding the tolerance, if any
};

/// Draws random states and compares matrix * phi(x) against
/// phi(potentials(net, x)) with tolerance 1e-12 (max norm).
RealifyCheck verify_realification(const Network& net, int trials, std::uint64_t seed);

/// One line per row, "%.17g" cells, comma-separated.
std::string matrix_to_csv(const RealMatrix& m);

}  // namespace hhnn
