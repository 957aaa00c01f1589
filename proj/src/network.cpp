#include "hhnn/network.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace hhnn {

Network::Network(AlgebraPtr algebra, Involution tau, Activation activation, int n_neurons,
                 std::vector<HNumber> weights, Schedule schedule)
    : algebra_(std::move(algebra)),
      tau_(std::move(tau)),
      activation_(activation),
      n_(n_neurons),
      weights_(std::move(weights)),
      schedule_(schedule) {
  if (!algebra_) throw std::invalid_argument("network requires an algebra");
  if (n_ < 1) throw std::invalid_argument("network needs at least one neuron");
  if (tau_.dim() != algebra_->dim())
    throw std::invalid_argument("involution dimension does not match the algebra");
  if (weights_.size() != static_cast<std::size_t>(n_) * n_)
    throw std::invalid_argument("weight matrix must have N*N entries");
  for (const HNumber& w : weights_)
    if (w.algebra().get() != algebra_.get() && !(*w.algebra() == *algebra_))
      throw std::invalid_argument("weight bound to a different algebra");
}

namespace {

void check_state(const Network& net, const StateVector& x) {
  if (x.size() != static_cast<std::size_t>(net.size()))
    throw std::invalid_argument("state vector length does not match the network");
  for (const HNumber& xi : x)
    if (xi.dim() != net.algebra()->dim())
      throw std::invalid_argument("state component dimension mismatch");
}

// Single accept-or-hold decision shared by step_value and run: a domain
// failure holds, and so does a proposal within kStateSnapTol of the current
// state (max coefficient distance).
std::optional<HNumber> accept_update(const Network& net, const HNumber& v, const HNumber& cur) {
  auto next = net.activation().apply(v);
  if (!next) return std::nullopt;
  if (*next == cur) return std::nullopt;
  double dist = 0.0;
  for (int k = 0; k < cur.dim(); ++k) dist = std::max(dist, std::abs((*next)[k] - cur[k]));
  if (dist <= kStateSnapTol) return std::nullopt;
  return next;
}

}  // namespace

HNumber potential(const Network& net, const StateVector& x, int i) {
  check_state(net, x);
  const int d = net.algebra()->dim();
  std::vector<double> acc(static_cast<std::size_t>(d), 0.0);
  for (int j = 0; j < net.size(); ++j)
    net.algebra()->mul_acc(net.w(i, j).data(), x[static_cast<std::size_t>(j)].data(), acc.data());
  return HNumber(net.algebra(), std::move(acc));
}

std::vector<HNumber> potentials(const Network& net, const StateVector& x) {
  std::vector<HNumber> out;
  out.reserve(static_cast<std::size_t>(net.size()));
  for (int i = 0; i < net.size(); ++i) out.push_back(potential(net, x, i));
  return out;
}

std::optional<HNumber> step_value(const Network& net, const StateVector& x, int i) {
  return accept_update(net, potential(net, x, i), x[static_cast<std::size_t>(i)]);
}

std::pair<StateVector, bool> step(const Network& net, const StateVector& x, int i) {
  auto next = step_value(net, x, i);
  StateVector y = x;
  if (!next) return {std::move(y), false};
  y[static_cast<std::size_t>(i)] = std::move(*next);
  return {std::move(y), true};
}

namespace {

double row_energy(const Network& net, const StateVector& x, int i, std::vector<double>& scratch) {
  double acc = 0.0;
  for (int j = 0; j < net.size(); ++j) {
    std::fill(scratch.begin(), scratch.end(), 0.0);
    net.algebra()->mul_acc(net.w(i, j).data(), x[static_cast<std::size_t>(j)].data(),
                           scratch.data());
    acc += bilinear_b(net.tau(), x[static_cast<std::size_t>(i)],
                      HNumber(net.algebra(), scratch));
  }
  return acc;
}

}  // namespace

double energy_serial(const Network& net, const StateVector& x) {
  check_state(net, x);
  std::vector<double> scratch(static_cast<std::size_t>(net.algebra()->dim()));
  double acc = 0.0;
  for (int i = 0; i < net.size(); ++i) acc += row_energy(net, x, i, scratch);
  return -0.5 * acc;
}

double energy(const Network& net, const StateVector& x) {
  check_state(net, x);
  const int n = net.size();
  std::vector<double> partial(static_cast<std::size_t>(n), 0.0);
#pragma omp parallel
  {
    std::vector<double> scratch(static_cast<std::size_t>(net.algebra()->dim()));
#pragma omp for schedule(static)
    for (int i = 0; i < n; ++i) partial[static_cast<std::size_t>(i)] = row_energy(net, x, i, scratch);
  }
  double acc = 0.0;
  for (double p : partial) acc += p;
  return -0.5 * acc;
}

double energy_delta(const Network& net, const StateVector& x, int i, const HNumber& next) {
  check_state(net, x);
  const HNumber& old = x[static_cast<std::size_t>(i)];
  const HNumber diff = next - old;
  double acc = 0.0;
  // row i: B(x_i, w(i,j) x_j) moves by B(diff, w(i,j) x_j) for j != i
  for (int j = 0; j < net.size(); ++j) {
    if (j == i) continue;
    acc += bilinear_b(net.tau(), diff, net.w(i, j) * x[static_cast<std::size_t>(j)]);
  }
  // column i: B(x_a, w(a,i) x_i) moves by B(x_a, w(a,i) diff) for a != i
  for (int a = 0; a < net.size(); ++a) {
    if (a == i) continue;
    acc += bilinear_b(net.tau(), x[static_cast<std::size_t>(a)], net.w(a, i) * diff);
  }
  // the (i,i) cell is quadratic in x_i, replace it outright
  acc += bilinear_b(net.tau(), next, net.w(i, i) * next) -
         bilinear_b(net.tau(), old, net.w(i, i) * old);
  return -0.5 * acc;
}

double energy_delta_hermitian(const Network& net, const StateVector& x, int i,
                              const HNumber& next) {
  const HNumber diff = next - x[static_cast<std::size_t>(i)];
  const HNumber v = potential(net, x, i);
  return -bilinear_b(net.tau(), diff, v) -
         0.5 * bilinear_b(net.tau(), diff, net.w(i, i) * diff);
}

ConditionReport check_conditions(const Network& net) {
  constexpr double tol = 1e-12;
  ConditionReport report;

  report.hermitian = true;
  for (int i = 0; i < net.size() && report.hermitian; ++i)
    for (int j = 0; j < net.size(); ++j) {
      const HNumber lhs = net.tau().apply(net.w(i, j));
      const HNumber& rhs = net.w(j, i);
      for (int k = 0; k < net.algebra()->dim(); ++k)
        if (std::abs(lhs[k] - rhs[k]) > tol) {
          report.hermitian = false;
          break;
        }
      if (!report.hermitian) break;
    }

  report.zero_self = true;
  report.nonneg_real_self = true;
  for (int i = 0; i < net.size(); ++i) {
    const HNumber& wii = net.w(i, i);
    if (wii.real_part() < -tol) report.nonneg_real_self = false;
    for (int k = 0; k < net.algebra()->dim(); ++k) {
      if (std::abs(wii[k]) > tol) report.zero_self = false;
      if (k > 0 && std::abs(wii[k]) > tol) report.nonneg_real_self = false;
    }
  }

  report.algebra_psd = is_positive_semidefinite(*net.algebra(), net.tau());
  return report;
}

std::int64_t Trace::change_count() const {
  std::int64_t n = 0;
  for (const TraceEvent& e : events) n += e.changed ? 1 : 0;
  return n;
}

namespace {

// Snap x0 components onto the canonical state instances so later equality
// tests are exact.  Finite sets: nearest state within kStateSnapTol.  Sigma:
// any vector within kStateSnapTol of unit norm, renormalized.
StateVector canonicalize_initial(const Network& net, const StateVector& x0) {
  check_state(net, x0);
  StateVector out;
  out.reserve(x0.size());
  if (net.activation().finite_states()) {
    const std::vector<HNumber> states = net.activation().state_set(net.algebra());
    for (const HNumber& xi : x0) {
      const HNumber* bestp = nullptr;
      double best = kStateSnapTol;
      for (const HNumber& s : states) {
        double dist = 0.0;
        for (int k = 0; k < xi.dim(); ++k) dist = std::max(dist, std::abs(xi[k] - s[k]));
        if (dist <= best) {
          best = dist;
          bestp = &s;
        }
      }
      if (!bestp) throw std::invalid_argument("initial state not in the activation's state set");
      out.push_back(*bestp);
    }
  } else {
    for (const HNumber& xi : x0) {
      const double r = abs_value(xi);
      if (std::abs(r - 1.0) > kStateSnapTol)
        throw std::invalid_argument("initial state must lie on the unit sphere");
      out.push_back((1.0 / r) * xi);
    }
  }
  return out;
}

}  // namespace

Trace run(const Network& net, const StateVector& x0, int max_sweeps) {
  if (max_sweeps < 1) throw std::invalid_argument("max_sweeps must be positive");
  StateVector x = canonicalize_initial(net, x0);

  Trace trace;
  trace.initial_energy = energy(net, x);
  double e = trace.initial_energy;

  std::vector<int> order(static_cast<std::size_t>(net.size()));
  for (int i = 0; i < net.size(); ++i) order[static_cast<std::size_t>(i)] = i;
  std::mt19937_64 eng(net.schedule().seed);

  std::int64_t t = 0;
  while (trace.sweeps < max_sweeps) {
    if (net.schedule().kind == Schedule::Kind::random_permutation)
      std::shuffle(order.begin(), order.end(), eng);
    int changes = 0;
    for (int idx = 0; idx < net.size(); ++idx) {
      const int i = order[static_cast<std::size_t>(idx)];
      const HNumber v = potential(net, x, i);
      auto next = accept_update(net, v, x[static_cast<std::size_t>(i)]);
      TraceEvent ev{t, i, false, x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(i)],
                    v, e};
      if (next) {
        e += energy_delta(net, x, i, *next);
        ev.changed = true;
        ev.after = *next;
        ev.energy_after = e;
        x[static_cast<std::size_t>(i)] = std::move(*next);
        ++changes;
      }
      trace.events.push_back(std::move(ev));
      ++t;
    }
    ++trace.sweeps;
    if (changes == 0) {
      trace.converged = true;
      break;
    }
  }
  return trace;
}

std::vector<HNumber> random_hermitian_weights(int n_neurons, const AlgebraPtr& algebra,
                                              const Involution& tau, std::uint64_t seed,
                                              double self_weight) {
  if (n_neurons < 1) throw std::invalid_argument("need at least one neuron");
  if (tau.dim() != algebra->dim())
    throw std::invalid_argument("involution dimension does not match the algebra");
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int d = algebra->dim();

  std::vector<HNumber> w(static_cast<std::size_t>(n_neurons) * n_neurons,
                         HNumber::zero(algebra));
  for (int i = 0; i < n_neurons; ++i)
    w[static_cast<std::size_t>(i) * n_neurons + i] = HNumber::from_real(algebra, self_weight);
  for (int i = 0; i < n_neurons; ++i)
    for (int j = i + 1; j < n_neurons; ++j) {
      std::vector<double> c(static_cast<std::size_t>(d));
      for (double& v : c) v = gauss(eng);
      HNumber wij(algebra, std::move(c));
      w[static_cast<std::size_t>(j) * n_neurons + i] = tau.apply(wij);
      w[static_cast<std::size_t>(i) * n_neurons + j] = std::move(wij);
    }
  return w;
}

StateVector random_state(const Activation& activation, const AlgebraPtr& algebra, int n_neurons,
                         std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  StateVector x;
  x.reserve(static_cast<std::size_t>(n_neurons));
  if (activation.finite_states()) {
    const std::vector<HNumber> states = activation.state_set(algebra);
    std::uniform_int_distribution<std::size_t> pick(0, states.size() - 1);
    for (int i = 0; i < n_neurons; ++i) x.push_back(states[pick(eng)]);
  } else {
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int i = 0; i < n_neurons; ++i) {
      std::vector<double> c(static_cast<std::size_t>(algebra->dim()));
      double r = 0.0;
      while (r <= kDomainEps) {
        for (double& v : c) v = gauss(eng);
        r = 0.0;
        for (double v : c) r += v * v;
        r = std::sqrt(r);
      }
      for (double& v : c) v /= r;
      x.emplace_back(algebra, std::move(c));
    }
  }
  return x;
}

}  // namespace hhnn
