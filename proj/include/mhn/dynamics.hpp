#pragma once

// Reduced dynamics on the probability simplex: p' = softmax(beta_eff * p).
// For equidistant equal-norm patterns this map is exactly the full network
// read through its softmax weights, with all geometry absorbed into beta_eff.
// The module also provides the reduced Jacobian used for stability analysis,
// the energy expressed in p for unit-norm equidistant patterns, and cobweb
// data for the scalar N=2 case.

#include "mhn/types.hpp"

#include <optional>
#include <utility>

namespace mhn {

struct PDynamicsConfig {
  Index count = 2;          // N
  double beta_eff = 1.0;
  double tol = 1e-12;       // sup-norm stopping threshold on p
  int max_iters = 100000;
};
void validate(const PDynamicsConfig& config);

struct FixedPointResult {
  ProbVector p_star;
  bool converged = false;
  int iterations = 0;
  // Largest |eigenvalue| of the reduced Jacobian at p_star; filled on
  // convergence for N >= 2. Values below 1 indicate a stable fixed point.
  std::optional<double> spectral_radius_estimate;
};

// softmax(beta_eff * p), max-shifted.
ProbVector p_update(const ProbVector& p, double beta_eff);

// Iterate p_update from p0 until ||p' - p||_inf < tol or max_iters.
FixedPointResult find_fixed_point(const ProbVector& p0,
                                  const PDynamicsConfig& config);

// Jacobian of the reduced map in the N-1 free coordinates (p_N eliminated by
// normalization): J_ij = beta_eff * p'_i * (delta_ij - p'_j + p'_N) where
// p' = p_update(p). Its spectrum decides stability; the uniform fixed point
// gives beta_eff/N * I, hence instability exactly at beta_eff = N.
Matrix jacobian(const ProbVector& p, double beta_eff);

// Energy as a function of p for unit-norm equidistant patterns with pairwise
// cosine cos_theta:
//   E(p) = -(1/beta) * lse(a) + 0.5 * ((1-c) * sum_i p_i^2 + c),
// where a_i = beta * ((1-c) * p_i + c). Addends are accumulated in sorted
// order, so the value is exactly invariant under permutations of p.
double energy_in_p(const ProbVector& p, double beta, double cos_theta);

// Scalar N=2 reduction f(p) = [softmax(beta_eff * (p, 1-p))]_1.
double scalar_map(double p, double beta_eff);

// Orbit of scalar_map from p0 plus the sampled graph of f over [0, 1]
// (grid step 1e-3), the raw material for a cobweb diagram.
struct CobwebTrace {
  std::vector<double> orbit;                      // p_0 .. p_steps
  std::vector<std::pair<double, double>> graph;   // (p, f(p))
};
CobwebTrace cobweb_trace(double p0, double beta_eff, int steps);

}  // namespace mhn
