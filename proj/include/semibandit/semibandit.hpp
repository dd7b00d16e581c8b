#pragma once

// Umbrella header for the semibandit library: combinatorial semi-bandit
// primitives, the CombUCB1 agent, benchmark environments, offline
// optimization oracles, regret-bound evaluators, and the experiment
// harness.

#include "semibandit/agent.hpp"
#include "semibandit/bounds.hpp"
#include "semibandit/config.hpp"
#include "semibandit/csv.hpp"
#include "semibandit/env.hpp"
#include "semibandit/grid.hpp"
#include "semibandit/harness.hpp"
#include "semibandit/oracle.hpp"
#include "semibandit/rng.hpp"
#include "semibandit/types.hpp"
#include "semibandit/verify.hpp"
