#pragma once

// Critical point of the reduced dynamics: the (p_c, beta_c) pair where
// non-uniform fixed points first appear. p_c solves
//     p * (1 + (N-1) * exp((1 - N*p) / (N*p*(1-p)))) = 1
// and beta_c = (N-1) / (N * p_c * (1 - p_c)). p = 1/N always solves the
// first equation (the uniform branch); for N > 2 the relevant root is the
// non-uniform one on (1/N, 1), which yields beta_c strictly below N, i.e.
// the new minima appear before the uniform point loses stability.

#include "mhn/types.hpp"

#include <vector>

namespace mhn {

struct CriticalPoint {
  Index count = 0;     // N
  double p_c = 0.0;
  double beta_c = 0.0;
};

// Left-hand side minus right-hand side of the p_c equation.
double critical_residual(double p, Index n);

// Stability multiplier beta_c * (p - p^2 + p*(1-p)/(N-1)) at p = p_c; equals
// 1 at a genuine critical point (the fixed point is marginal there).
double marginal_slope(const CriticalPoint& point);

// N = 2 is the symmetric pitchfork (1/2, 2); N > 2 locates the non-uniform
// root by a 10^4-point scan of (1/N, 1) followed by bisection to width 1e-13,
// then re-checks the residual against 1e-10.
CriticalPoint solve_critical(Index n);

std::vector<CriticalPoint> critical_sweep(const std::vector<Index>& n_values);

}  // namespace mhn
