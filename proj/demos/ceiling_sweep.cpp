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

// Flies the vehicle under ceilings of decreasing height and prints how each
// mission ended.
//
//   ceiling_sweep [precision]

#include "wolfsocp/wolfsocp.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

int main(int argc, char** argv) {
  using namespace wolfsocp;
  PlannerConfig cfg;
  if (argc > 1) cfg.precision = std::strtod(argv[1], nullptr);
  std::printf("%8s  %-12s %6s %9s %9s %10s\n", "ceiling", "status", "steps", "max z", "miss", "opt s");
  for (double h : {0.35, 0.2, 0.12, 0.08, 0.05, 0.03, 0.01}) {
    const Trajectory t = fly(Ceiling{h}, cfg, QuadParams{});
    double zmax = t.final_state(2);
    for (const StepRecord& r : t.steps) zmax = std::max(zmax, r.state(2));
    const double miss = (t.final_state.head<3>() - cfg.goal.head<3>()).norm();
    const double opt = t.steps.empty() ? 0.0 : replay_metrics(t).opt_s;
    std::printf("%8.2f  %-12s %6zu %9.4f %9.4f %10.4f\n", h, std::string(to_string(t.status)).c_str(), t.steps.size(),
                zmax, miss, opt);
  }
}
