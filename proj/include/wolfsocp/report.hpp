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

#pragma once

#include "wolfsocp/socp.hpp"

#include <chrono>

namespace wolfsocp {

/// Outcome of one dual solve. Shared by every solver so the benchmark
/// harness can treat them uniformly.
struct SolveReport {
  bool fail = true;
  DualPoint z_star;
  int outer_iters = 0;
  int inner_iters = 0;
  double final_delta = 0.0;
  double wall_time = 0.0;

  // Diagnostics. None of these change the fail flag.
  int gram_fallbacks = 0;
  bool inner_cap_hit = false;
  bool atom_cap_hit = false;
  int max_active = 0;
  int invariant_violations = 0;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace wolfsocp
