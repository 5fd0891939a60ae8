// Copyright 2026 The wolfsocp Authors
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

// Captures one step of the low-ceiling mission and times the three dual
// solvers on it across precisions.
//
//   solver_race [step]

#include "wolfsocp/wolfsocp.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

int main(int argc, char** argv) {
  using namespace wolfsocp;
  const std::size_t step = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 8;
  const PlannerConfig cfg;
  const Trajectory t = fly(Ceiling{0.08}, cfg, QuadParams{});
  const CapturedStep c = capture_subproblem(t, step, Ceiling{0.08}, cfg, QuadParams{});
  std::printf("step %zu: n=%d, L=%d, dual dimension %d\n", step, c.dual.n(), c.dual.L, c.dual.dim());

  constexpr std::array solvers{SolverKind::Wolfe, SolverKind::Pgd, SolverKind::CuttingPlane};
  constexpr std::array precisions{1e-2, 1e-3, 1e-4};
  BenchOptions opts;
  opts.repeats = 3;
  opts.lambda_max = cfg.lambda_max;
  opts.limits.cpm_time_limit = 20.0;
  const BenchReport r = bench(c.primal, solvers, precisions, opts);
  std::printf("%-6s %9s %5s %12s %7s %7s %11s\n", "solver", "precision", "fail", "seconds", "outer", "inner", "delta");
  for (const BenchRow& row : r.rows)
    std::printf("%-6s %9.0e %5d %12.6f %7d %7d %11.3e\n", std::string(to_string(row.solver)).c_str(), row.precision,
                int(row.fail), row.seconds, row.outer_iters, row.inner_iters, row.delta);
}
