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

#include "wolfsocp/bench.hpp"
#include "wolfsocp/cutting_plane.hpp"
#include "wolfsocp/gp_sensing.hpp"
#include "wolfsocp/horizon.hpp"
#include "wolfsocp/io.hpp"
#include "wolfsocp/linalg.hpp"
#include "wolfsocp/pgd.hpp"
#include "wolfsocp/planner.hpp"
#include "wolfsocp/projection.hpp"
#include "wolfsocp/quadrotor.hpp"
#include "wolfsocp/report.hpp"
#include "wolfsocp/rng.hpp"
#include "wolfsocp/socp.hpp"
#include "wolfsocp/wolfe.hpp"
