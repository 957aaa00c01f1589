// Timing comparison between the serial reference kernels and their
// OpenMP counterparts: transition-graph enumeration, energy evaluation,
// and the realified matrix-vector product.

#include "hhnn/graph.hpp"
#include "hhnn/io.hpp"
#include "hhnn/network.hpp"
#include "hhnn/realify.hpp"

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

namespace {

using namespace hhnn;

double time_best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void report(const char* label, double serial_s, double parallel_s) {
  std::printf("%-24s serial %9.4f s   parallel %9.4f s   speedup %5.2fx\n", label, serial_s,
              parallel_s, serial_s / parallel_s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs OpenMP kernel timings"};
  int graph_neurons = 9;
  int energy_neurons = 300;
  int reps = 3;
  std::uint64_t seed = 42;
  app.add_option("--graph-neurons", graph_neurons,
                 "Sign-network size for enumeration (4^n nodes)");
  app.add_option("--energy-neurons", energy_neurons, "Octonion network size for energy/matvec");
  app.add_option("--reps", reps, "Repetitions, best time kept");
  app.add_option("--seed", seed, "Weight seed");
  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled in this build\n");
#endif

  {
    AlgebraSystem sys = builtin_algebra("C");
    Network net(sys.algebra, sys.involution, Activation::split(), graph_neurons,
                random_hermitian_weights(graph_neurons, sys.algebra, sys.involution, seed));
    const std::int64_t cap = std::int64_t(1) << (2 * graph_neurons + 2);
    const double serial_s =
        time_best_of(reps, [&] { enumerate_graph_serial(net, cap); });
    const double parallel_s = time_best_of(reps, [&] { enumerate_graph(net, cap); });
    const TransitionGraph g = enumerate_graph(net, cap);
    std::printf("graph: %lld nodes, %zu edges\n", static_cast<long long>(g.node_count()),
                g.edges().size());
    report("enumerate_graph", serial_s, parallel_s);
  }

  {
    AlgebraSystem sys = builtin_algebra("O");
    Network net(sys.algebra, sys.involution, Activation::split(), energy_neurons,
                random_hermitian_weights(energy_neurons, sys.algebra, sys.involution, seed));
    const StateVector x = random_state(Activation::split(), sys.algebra, energy_neurons, seed + 1);
    volatile double sink = 0.0;
    const double serial_s = time_best_of(reps, [&] { sink = energy_serial(net, x); });
    const double parallel_s = time_best_of(reps, [&] { sink = energy(net, x); });
    (void)sink;
    report("energy", serial_s, parallel_s);

    RealifiedNetwork rn = realify_network(net);
    std::vector<double> in = phi(x), out(in.size());
    const double mv_serial =
        time_best_of(reps, [&] { for (int k = 0; k < 50; ++k) matvec_serial(rn.matrix, in, out); });
    const double mv_parallel =
        time_best_of(reps, [&] { for (int k = 0; k < 50; ++k) matvec(rn.matrix, in, out); });
    report("matvec x50", mv_serial, mv_parallel);
  }

  return 0;
}
