// Copyright 2026 The fairot Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference vs OpenMP backend on the hot loops: the log-sum-exp
// reduction, a full Sinkhorn solve and the 1-D transform.

#include <chrono>
#include <cstdio>
#include <vector>

#include "CLI11.hpp"
#include "fairot/interpolation.hpp"
#include "fairot/kernels.hpp"
#include "fairot/random.hpp"
#include "fairot/synth.hpp"
#include "fairot/transport1d.hpp"
#include "fairot/transportnd.hpp"

namespace {

using fairot::kernels::Backend;

template <typename Fn>
double best_of(int reps, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial_ms, double omp_ms) {
  std::printf("%-28s serial %9.3f ms   openmp %9.3f ms   speedup %5.2fx\n", name,
              serial_ms, omp_ms, serial_ms / omp_ms);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fairot kernel benchmark"};
  std::size_t n = 2000;
  std::size_t m = 2000;
  int reps = 3;
  app.add_option("--rows", n, "Source points")->capture_default_str();
  app.add_option("--cols", m, "Target points")->capture_default_str();
  app.add_option("--reps", reps, "Repetitions (best of)")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  std::printf("openmp available: %s, threads: %d\n",
              fairot::kernels::openmp_available() ? "yes" : "no",
              fairot::kernels::max_threads());

  fairot::PortableRng rng(7);
  std::vector<double> cost(n * m), potential(m), out(n);
  for (auto& c : cost) c = 100.0 * rng.uniform01();
  for (auto& p : potential) p = rng.uniform01();
  const auto lse = [&](Backend b) {
    return best_of(reps, [&] { fairot::kernels::log_sum_exp_rows(cost, m, potential, out, b); });
  };
  report("log_sum_exp_rows", lse(Backend::serial), lse(Backend::openmp));

  std::vector<double> x(n * 2), y(m * 2);
  for (auto& v : x) v = rng.uniform01();
  for (auto& v : y) v = rng.uniform01();
  const auto mu = fairot::uniform_measure(x, 2);
  const auto nu = fairot::uniform_measure(y, 2);
  const auto solve = [&](Backend b) {
    fairot::SinkhornParams params;
    params.epsilon = 0.05;
    params.backend = b;
    return best_of(1, [&] { (void)fairot::sinkhorn_plan(mu, nu, params); });
  };
  report("sinkhorn_plan (eps 0.05)", solve(Backend::serial), solve(Backend::openmp));

  const auto pop = fairot::build_population(
      fairot::generate_synthetic(fairot::two_gaussian_scenario(200000), 1), 1);
  const auto bary = fairot::fit_barycenter(pop, fairot::BarycenterWeighting::size_proportional,
                                           fairot::kDefaultGridSize);
  const auto transform = [&](Backend b) {
    return best_of(reps, [&] {
      (void)fairot::interpolate_scores(pop, bary, fairot::ThetaPolicy(0.5), b);
    });
  };
  report("interpolate_scores (400k)", transform(Backend::serial), transform(Backend::openmp));
  return 0;
}
