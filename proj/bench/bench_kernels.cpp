// Serial reference vs OpenMP kernels on the k = 2 Borromean ornament.
//
//   bench_kernels [k] [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include <omp.h>

#include "ornament/constructions.hpp"
#include "ornament/degree.hpp"
#include "ornament/sweep.hpp"

using namespace ornament;

namespace {

double best_of(int repeats, const std::function<long()>& f, long& value) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    value = f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, int repeats, const std::function<long(Execution)>& f) {
  long serial = 0, parallel = 0;
  const double ts = best_of(repeats, [&] { return f(Execution::serial); }, serial);
  const double tp = best_of(repeats, [&] { return f(Execution::parallel); }, parallel);
  std::printf("%-22s %10.3f %10.3f %8.2fx  %s\n", name, ts, tp, ts / tp, serial == parallel ? "agree" : "DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  const int k = argc > 1 ? std::atoi(argv[1]) : 2;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
  const Ornament b = make_borromean(k);
  const RayDirection dir = random_direction(2 * b.ambient_dim(), 1);
  const HomotopyTrack track = sweep_to_trivial(b, 1).track;

  std::printf("k = %d, %zu facets per component, %d OpenMP threads\n", k, b.components[0].domain.facets.size(),
              omp_get_max_threads());
  std::printf("%-22s %10s %10s %9s\n", "kernel", "serial s", "openmp s", "speedup");
  row("validate_ornament", repeats, [&](Execution e) { return validate_ornament(b, e).valid() ? 1L : 0L; });
  row("mu_via_degree", repeats, [&](Execution e) { return mu_via_degree(b, dir, e).mu; });
  row("detect_triple_points", repeats, [&](Execution e) {
    long sum = 0;
    for (const auto& p : detect_triple_points(track, e)) sum += p.sign;
    return sum;
  });
}
