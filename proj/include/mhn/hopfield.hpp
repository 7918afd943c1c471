#pragma once

// Full-dimensional modern Hopfield network: energy, softmax update rule, and
// fixed-point iteration. The update xi' = X * softmax(beta * X^T xi) is a
// concave-convex (CCCP) step, so the energy is non-increasing along every
// trajectory; tests and callers may rely on that up to 1e-10 slack.

#include "mhn/types.hpp"

namespace mhn {

// log(sum_i exp(z_i)) with the max-shift, safe for arguments of any size.
double log_sum_exp(const Vector& z);

// exp(z_i - max z) / sum, entrywise non-negative and summing to 1 (< 1e-12
// error) even for extreme inputs.
ProbVector stable_softmax(const Vector& z);

// E(xi) = -(1/beta) * log sum_i exp(beta * x_i^T xi) + 0.5 * xi^T xi
double energy(const StateVector& xi, const PatternSet& patterns, double beta);

// p_i = exp(beta * x_i^T xi) / sum_k exp(beta * x_k^T xi)
ProbVector softmax_probabilities(const StateVector& xi,
                                 const PatternSet& patterns, double beta);

// One CCCP step: xi' = X * softmax_probabilities(xi).
StateVector update_state(const StateVector& xi, const PatternSet& patterns,
                         double beta);

// Iterate update_state until ||xi' - xi||_2 < tol or max_iters steps, keeping
// the full state / energy / p history (all include the starting point).
// Non-convergence is reported through the record, not as an error.
TrajectoryRecord iterate_to_fixed_point(const StateVector& xi0,
                                        const PatternSet& patterns,
                                        double beta, double tol = 1e-8,
                                        int max_iters = 10000);

// History-free variant for batch experiments. Performs the exact same update
// sequence as iterate_to_fixed_point and returns only the endpoint.
struct Endpoint {
  StateVector xi;
  bool converged = false;
  int iterations = 0;
};
Endpoint run_to_fixed_point(const StateVector& xi0, const PatternSet& patterns,
                            double beta, double tol = 1e-8,
                            int max_iters = 10000);

}  // namespace mhn
