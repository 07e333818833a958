// Compares the serial and OpenMP batch runners on identical workloads and
// checks they produce identical draws. Usage:
//   throughput_bench [n] [k] [samples] [seed]
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>

#include "rrcolor/batch.hpp"
#include "rrcolor/graph.hpp"

using namespace rrcolor;

namespace {

template <typename F>
std::pair<double, std::vector<SampleResult>> timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  auto result = f();
  const auto t1 = std::chrono::steady_clock::now();
  return {std::chrono::duration<double, std::milli>(t1 - t0).count(), std::move(result)};
}

}  // namespace

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 512;
  const int k = argc > 2 ? std::atoi(argv[2]) : 13;
  const int samples = argc > 3 ? std::atoi(argv[3]) : 2000;
  const std::uint64_t seed = argc > 4 ? std::strtoull(argv[4], nullptr, 0) : 1;

  const Graph g = make_cycle(n);
  std::printf("cycle n=%d, k=%d, samples=%d, seed=%llu\n", n, k, samples,
              static_cast<unsigned long long>(seed));

  auto [serial_ms, serial] =
      timed([&] { return sample_batch_serial(g, k, seed, samples); });
  auto [parallel_ms, parallel] =
      timed([&] { return sample_batch_parallel(g, k, seed, samples); });

  for (int i = 0; i < samples; ++i) {
    if (serial[i].coloring != parallel[i].coloring ||
        serial[i].metrics.total_steps != parallel[i].metrics.total_steps ||
        serial[i].metrics.random_bits != parallel[i].metrics.random_bits) {
      std::printf("MISMATCH at sample %d\n", i);
      return 1;
    }
  }

  std::printf("serial    %10.1f ms  (%.1f samples/s)\n", serial_ms, samples * 1000.0 / serial_ms);
  std::printf("parallel  %10.1f ms  (%.1f samples/s)\n", parallel_ms,
              samples * 1000.0 / parallel_ms);
  std::printf("speedup   %10.2fx, outputs identical\n", serial_ms / parallel_ms);
  return 0;
}
