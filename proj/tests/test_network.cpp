#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hhnn/network.hpp"
#include "helpers.hpp"

#include <cmath>
#include <random>
#include <set>

using namespace hhnn;
using hhnn::testing::random_real_number;

namespace {

const AlgebraPtr kC = builtin_algebra("C").algebra;
const AlgebraPtr kU = builtin_algebra("U").algebra;
const AlgebraPtr kR = builtin_algebra("R").algebra;
const AlgebraPtr kO = builtin_algebra("O").algebra;

// Two neurons, no self-feedback, both cross weights 1+3i.  Over U with the
// identity involution this matrix is hermitian; over C with conjugation it
// is not, which is exactly what makes the two dynamics differ.
Network coupled_pair(const AlgebraPtr& alg, Involution tau, Activation act) {
  const HNumber zero = HNumber::zero(alg);
  const HNumber w(alg, {1.0, 3.0});
  return Network(alg, std::move(tau), std::move(act), 2, {zero, w, w, zero});
}

StateVector pair_start(const AlgebraPtr& alg) {
  return {HNumber(alg, {-1.0, -1.0}), HNumber(alg, {1.0, 1.0})};
}

Network random_net(const AlgebraPtr& alg, Involution tau, Activation act, int n,
                   std::uint64_t seed, bool hermitian, double self_weight = 0.0) {
  if (hermitian)
    return Network(alg, std::move(tau), std::move(act), n,
                   random_hermitian_weights(n, alg, tau, seed, self_weight));
  std::mt19937_64 eng(seed);
  std::vector<HNumber> w;
  for (int k = 0; k < n * n; ++k) w.push_back(random_real_number(alg, eng));
  return Network(alg, std::move(tau), std::move(act), n, std::move(w));
}

}  // namespace

TEST_CASE("construction validates shapes") {
  const Involution id2 = Involution::identity(2);
  const std::vector<HNumber> w(4, HNumber::zero(kC));
  CHECK_THROWS_AS(Network(kC, id2, Activation::split(), 3, w), std::invalid_argument);
  CHECK_THROWS_AS(Network(kC, Involution::identity(4), Activation::split(), 2, w),
                  std::invalid_argument);
  const std::vector<HNumber> wrong(4, HNumber::zero(kU));
  CHECK_THROWS_AS(Network(kC, id2, Activation::split(), 2, wrong), std::invalid_argument);

  // structurally equal algebras interoperate even across distinct instances
  const AlgebraPtr c2 = clifford2(Rat(-1));
  const std::vector<HNumber> ok(4, HNumber::zero(c2));
  CHECK_NOTHROW(Network(kC, id2, Activation::split(), 2, ok));
}

TEST_CASE("activation potential is the weighted left sum") {
  const Network net = coupled_pair(kU, Involution::identity(2), Activation::split());
  const StateVector x = pair_start(kU);

  // (1+3i)(1+i) with i^2 = +1
  CHECK(potential(net, x, 0) == HNumber(kU, {4.0, 4.0}));
  CHECK(potential(net, x, 1) == HNumber(kU, {-4.0, -4.0}));

  const auto all = potentials(net, x);
  REQUIRE(all.size() == 2);
  CHECK(all[0] == potential(net, x, 0));
  CHECK(all[1] == potential(net, x, 1));

  const Network zero_net(kU, Involution::identity(2), Activation::split(), 2,
                         std::vector<HNumber>(4, HNumber::zero(kU)));
  CHECK(potential(zero_net, x, 0) == HNumber::zero(kU));

  CHECK_THROWS_AS(potential(net, {x[0]}, 0), std::invalid_argument);
}

TEST_CASE("single neuron updates") {
  const Network net = coupled_pair(kU, Involution::identity(2), Activation::split());
  const StateVector x = pair_start(kU);

  const auto v0 = step_value(net, x, 0);
  REQUIRE(v0.has_value());
  CHECK(*v0 == HNumber(kU, {1.0, 1.0}));

  // neuron 1 already sits at the sign of its potential only after neuron 0
  // moves; from the start it wants to flip as well
  const auto [x1, changed] = step(net, x, 0);
  CHECK(changed);
  CHECK(x1[0] == HNumber(kU, {1.0, 1.0}));
  CHECK(x1[1] == x[1]);

  const auto hold = step_value(net, x1, 1);
  CHECK_FALSE(hold.has_value());
  const auto [x2, changed2] = step(net, x1, 1);
  CHECK_FALSE(changed2);
  CHECK(x2[1] == x1[1]);

  // zero weights put every potential on the boundary: neurons hold
  const Network zero_net(kU, Involution::identity(2), Activation::split(), 2,
                         std::vector<HNumber>(4, HNumber::zero(kU)));
  CHECK_FALSE(step_value(zero_net, x, 0).has_value());
}

TEST_CASE("energy of the coupled pair") {
  const Network net = coupled_pair(kU, Involution::identity(2), Activation::split());
  const StateVector aligned = {HNumber(kU, {1.0, 1.0}), HNumber(kU, {1.0, 1.0})};
  CHECK(energy(net, aligned) == -8.0);
  CHECK(energy(net, pair_start(kU)) == 8.0);
  CHECK(energy_serial(net, aligned) == -8.0);

  const Network zero_net(kU, Involution::identity(2), Activation::split(), 2,
                         std::vector<HNumber>(4, HNumber::zero(kU)));
  CHECK(energy(zero_net, aligned) == 0.0);
}

TEST_CASE("parallel and serial energy agree") {
  std::mt19937_64 eng(17);
  const Involution nat8 = Involution::natural(8);
  const Network net = random_net(kO, nat8, Activation::split(), 24, 99, true);
  for (int trial = 0; trial < 5; ++trial) {
    const StateVector x = random_state(net.activation(), kO, net.size(), eng());
    const double a = energy(net, x);
    const double b = energy_serial(net, x);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("incremental energy matches a full recompute") {
  std::mt19937_64 eng(23);
  const struct {
    AlgebraPtr alg;
    Involution tau;
    Activation act;
  } cases[] = {
      {kC, Involution::natural(2), Activation::csgn(4)},
      {kC, Involution::identity(2), Activation::split()},
      {kO, Involution::natural(8), Activation::split()},
  };
  for (const auto& cs : cases) {
    for (bool hermitian : {false, true}) {
      const Network net = random_net(cs.alg, cs.tau, cs.act, 6, eng(), hermitian);
      const auto states = cs.act.state_set(cs.alg);
      std::uniform_int_distribution<std::size_t> pick(0, states.size() - 1);
      for (int trial = 0; trial < 25; ++trial) {
        StateVector x = random_state(cs.act, cs.alg, net.size(), eng());
        const int i = static_cast<int>(eng() % net.size());
        const HNumber next = states[pick(eng)];
        const double before = energy(net, x);
        const double delta = energy_delta(net, x, i, next);
        StateVector y = x;
        y[static_cast<std::size_t>(i)] = next;
        const double full = energy(net, y) - before;
        CHECK(delta == doctest::Approx(full).epsilon(1e-9));
        if (hermitian) {
          const double two_term = energy_delta_hermitian(net, x, i, next);
          CHECK(two_term == doctest::Approx(full).epsilon(1e-9));
        }
      }
    }
  }
}

TEST_CASE("structural condition report") {
  const Involution id2 = Involution::identity(2);
  const Involution nat2 = Involution::natural(2);

  const Network good = coupled_pair(kU, id2, Activation::split());
  const ConditionReport r = check_conditions(good);
  CHECK(r.hermitian);
  CHECK(r.zero_self);
  CHECK(r.algebra_psd);
  CHECK(r.convergent());

  // same matrix read over C with conjugation: w(1,0) != conj(w(0,1))
  const Network bad = coupled_pair(kC, nat2, Activation::split());
  const ConditionReport rb = check_conditions(bad);
  CHECK_FALSE(rb.hermitian);
  CHECK_FALSE(rb.convergent());
  CHECK(rb.algebra_psd);

  // nonnegative real self-feedback is accepted when B is psd
  Network self = random_net(kC, nat2, Activation::csgn(4), 3, 5, true, 0.5);
  const ConditionReport rs = check_conditions(self);
  CHECK(rs.hermitian);
  CHECK_FALSE(rs.zero_self);
  CHECK(rs.nonneg_real_self);
  CHECK(rs.self_feedback_ok());
  CHECK(rs.convergent());

  // ... but not when it is indefinite, as with hyperbolic conjugation
  const Network hyper = random_net(kU, nat2, Activation::split(), 3, 5, true, 0.5);
  const ConditionReport rh = check_conditions(hyper);
  CHECK(rh.hermitian);
  CHECK(rh.nonneg_real_self);
  CHECK_FALSE(rh.algebra_psd);
  CHECK_FALSE(rh.self_feedback_ok());
  CHECK_FALSE(rh.convergent());
}

TEST_CASE("hermitian pair settles in one change") {
  const Network net = coupled_pair(kU, Involution::identity(2), Activation::split());
  const Trace trace = run(net, pair_start(kU));

  CHECK(trace.converged);
  CHECK(trace.sweeps == 2);
  CHECK(trace.change_count() == 1);
  CHECK(trace.initial_energy == 8.0);
  CHECK(trace.final_energy() == -8.0);

  REQUIRE(trace.events.size() == 4);
  CHECK(trace.events[0].neuron == 0);
  CHECK(trace.events[0].changed);
  CHECK(trace.events[0].after == HNumber(kU, {1.0, 1.0}));
  CHECK(trace.events[0].energy_after == -8.0);
  CHECK(trace.events[1].changed == false);
  for (std::size_t k = 0; k < trace.events.size(); ++k)
    CHECK(trace.events[k].t == static_cast<std::int64_t>(k));
}

TEST_CASE("non-hermitian pair cycles forever") {
  const Network net = coupled_pair(kC, Involution::natural(2), Activation::split());
  const Trace trace = run(net, pair_start(kC), 50);

  CHECK_FALSE(trace.converged);
  CHECK(trace.sweeps == 50);
  // every sweep flips both neurons: the orbit is a 2-cycle of sweep states
  CHECK(trace.change_count() == 100);

  // first few states of the orbit, by hand
  CHECK(trace.events[0].after == HNumber(kC, {-1.0, 1.0}));
  CHECK(trace.events[1].after == HNumber(kC, {-1.0, -1.0}));
  CHECK(trace.events[2].after == HNumber(kC, {1.0, -1.0}));
  CHECK(trace.events[3].after == HNumber(kC, {1.0, 1.0}));
}

TEST_CASE("zero weights converge immediately") {
  const Network net(kC, Involution::natural(2), Activation::split(), 3,
                    std::vector<HNumber>(9, HNumber::zero(kC)));
  const StateVector x0 = random_state(net.activation(), kC, 3, 7);
  const Trace trace = run(net, x0);
  CHECK(trace.converged);
  CHECK(trace.sweeps == 1);
  CHECK(trace.change_count() == 0);
  CHECK(trace.initial_energy == 0.0);
}

TEST_CASE("boundary potential holds the neuron") {
  // w = i sends the +1 state onto the csgn:2 sector boundary
  const Network net(kC, Involution::natural(2), Activation::csgn(2), 1,
                    {HNumber(kC, {0.0, 1.0})});
  const Trace trace = run(net, {HNumber::one(kC)});
  CHECK(trace.converged);
  CHECK(trace.change_count() == 0);
  CHECK(trace.events[0].after == HNumber::one(kC));
}

TEST_CASE("initial states are validated and snapped") {
  const Network net = coupled_pair(kU, Involution::identity(2), Activation::split());

  CHECK_THROWS_AS(run(net, {HNumber::one(kU)}), std::invalid_argument);
  CHECK_THROWS_AS(run(net, {HNumber(kU, {2.0, 2.0}), HNumber(kU, {1.0, 1.0})}),
                  std::invalid_argument);

  const StateVector wobbly = {HNumber(kU, {-1.0 + 1e-12, -1.0 - 1e-12}),
                              HNumber(kU, {1.0, 1.0 - 1e-12})};
  const Trace trace = run(net, wobbly);
  CHECK(trace.events[0].before == HNumber(kU, {-1.0, -1.0}));
  CHECK(trace.initial_energy == 8.0);
}

TEST_CASE("random permutation schedule visits every neuron once per sweep") {
  const int n = 7;
  Schedule sched{Schedule::Kind::random_permutation, 12345};
  const Network net(kC, Involution::natural(2), Activation::split(), n,
                    random_hermitian_weights(n, kC, Involution::natural(2), 31), sched);
  const StateVector x0 = random_state(net.activation(), kC, n, 8);
  const Trace trace = run(net, x0);
  CHECK(trace.converged);
  REQUIRE(trace.events.size() % n == 0);
  bool shuffled = false;
  for (std::size_t s = 0; s * n < trace.events.size(); ++s) {
    std::set<int> seen;
    for (int k = 0; k < n; ++k) {
      const TraceEvent& ev = trace.events[s * n + static_cast<std::size_t>(k)];
      seen.insert(ev.neuron);
      if (ev.neuron != k) shuffled = true;
    }
    CHECK(seen.size() == static_cast<std::size_t>(n));
  }
  CHECK(shuffled);

  // identical inputs replay identically
  const Trace again = run(net, x0);
  REQUIRE(again.events.size() == trace.events.size());
  for (std::size_t k = 0; k < trace.events.size(); ++k)
    CHECK(again.events[k].neuron == trace.events[k].neuron);
}

TEST_CASE("random hermitian weights have the promised structure") {
  const Involution nat4 = Involution::natural(4);
  const AlgebraPtr q = builtin_algebra("Q").algebra;
  const auto w = random_hermitian_weights(5, q, nat4, 77, 0.5);
  REQUIRE(w.size() == 25);
  for (int i = 0; i < 5; ++i) {
    CHECK(w[static_cast<std::size_t>(i) * 5 + i] == HNumber::from_real(q, 0.5));
    for (int j = 0; j < 5; ++j)
      CHECK(w[static_cast<std::size_t>(j) * 5 + i] ==
            nat4.apply(w[static_cast<std::size_t>(i) * 5 + j]));
  }

  CHECK(random_hermitian_weights(5, q, nat4, 77, 0.5) == w);
  CHECK(random_hermitian_weights(5, q, nat4, 78, 0.5) != w);
}

TEST_CASE("random states are drawn from the state set") {
  const Activation act = Activation::csgn(3);
  const auto states = act.state_set(kC);
  const StateVector x = random_state(act, kC, 50, 4);
  std::set<int> hit;
  for (const HNumber& xi : x) {
    bool found = false;
    for (std::size_t s = 0; s < states.size(); ++s)
      if (states[s] == xi) {
        found = true;
        hit.insert(static_cast<int>(s));
      }
    CHECK(found);
  }
  CHECK(hit.size() == states.size());
  CHECK(random_state(act, kC, 50, 4) == x);

  for (const HNumber& xi : random_state(Activation::sigma(), kO, 20, 9))
    CHECK(abs_value(xi) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("convergent networks descend the energy and reach fixed points") {
  std::mt19937_64 eng(41);
  const struct {
    AlgebraPtr alg;
    Involution tau;
    Activation act;
  } cases[] = {
      {kC, Involution::natural(2), Activation::csgn(4)},
      {kC, Involution::natural(2), Activation::split()},
      {builtin_algebra("T").algebra, Involution::tessarine(), Activation::tsgn(2)},
      {kO, Involution::natural(8), Activation::split()},
  };
  for (const auto& cs : cases) {
    for (int rep = 0; rep < 5; ++rep) {
      const Network net = random_net(cs.alg, cs.tau, cs.act, 10, eng(), true);
      REQUIRE(check_conditions(net).convergent());
      const StateVector x0 = random_state(cs.act, cs.alg, net.size(), eng());
      const Trace trace = run(net, x0);
      CHECK(trace.converged);
      double e = trace.initial_energy;
      for (const TraceEvent& ev : trace.events) {
        if (ev.changed)
          CHECK(ev.energy_after < e - 1e-9 * std::abs(e) + 1e-15);
        else
          CHECK(ev.energy_after == doctest::Approx(e).epsilon(1e-12));
        e = ev.energy_after;
      }
      // a converged state is a fixed point: no neuron wants to move
      StateVector final_state = x0;
      for (const TraceEvent& ev : trace.events)
        if (ev.changed) final_state[static_cast<std::size_t>(ev.neuron)] = ev.after;
      for (int i = 0; i < net.size(); ++i)
        CHECK_FALSE(step_value(net, final_state, i).has_value());
    }
  }
}

TEST_CASE("every start of a small hermitian network converges") {
  const Involution nat2 = Involution::natural(2);
  const Network net(kC, nat2, Activation::split(), 2,
                    random_hermitian_weights(2, kC, nat2, 6));
  const auto states = Activation::split().state_set(kC);
  for (const HNumber& a : states)
    for (const HNumber& b : states) {
      const Trace trace = run(net, {a, b});
      CHECK(trace.converged);
      CHECK(trace.final_energy() <= trace.initial_energy + 1e-12);
    }

  const Involution id1 = Involution::identity(1);
  const Network rnet(kR, id1, Activation::split(), 3,
                     random_hermitian_weights(3, kR, id1, 13));
  const auto rs = Activation::split().state_set(kR);
  for (const HNumber& a : rs)
    for (const HNumber& b : rs)
      for (const HNumber& c : rs) CHECK(run(rnet, {a, b, c}).converged);
}
