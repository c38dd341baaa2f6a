#pragma once

// Numerical solver for the region-variable gluing system. Random restarts
// feed a damped least-squares iteration; accepted solutions are
// deduplicated by their (pinched set, volume) signature. Everything is
// single threaded and deterministic for a fixed seed.

#include <cstdint>
#include <vector>

#include "pinchlab/gluing.hpp"

namespace pinchlab {

struct SolverConfig {
  int restarts = 200;
  std::uint64_t seed = 1;
  double accept_tol = 1e-10;   // max residual accepted
  double dedup_tol = 1e-6;     // volume clustering width (relative)
  int max_newton_steps = 100;  // damped least-squares iterations per start
};

enum class rep_class { abelian, partially_abelian, nowhere_pinched };
const char* to_string(rep_class c);

// region whose variable is pinned to 1: most corners, ties to smallest id
int gauge_region(const Diagram& d);

std::vector<WSolution> solve(const Diagram& d, const SolverConfig& cfg = {});

rep_class classify(const Diagram& d, const WSolution& s);

}  // namespace pinchlab
