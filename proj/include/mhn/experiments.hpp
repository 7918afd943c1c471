#pragma once

// Experiment drivers: KL order-parameter sweeps over beta, minima counting
// from noisy pattern starts, and one-dimensional map sections (cobweb
// diagram plus energy section) for the two-pattern case.
//
// Sweep points and trial trajectories are independent work items. Each driver
// has an OpenMP-parallel kernel and a plain serial loop over the same
// per-item function; results are written by index, so both paths produce
// bit-identical output and the serial path doubles as the reference
// implementation for tests and benchmarks.

#include "mhn/dynamics.hpp"
#include "mhn/patterns.hpp"
#include "mhn/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mhn {

enum class SweepKind { kl_divergence, minima_count };

struct SweepRecord {
  double beta = 0.0;
  std::optional<double> beta_eff;          // absent for free-form patterns
  std::optional<double> beta_over_beta_c;  // filled by KL sweeps
  double value = 0.0;                      // normalized KL or minima count
  bool converged = true;
  int excluded_trials = 0;                 // minima sweeps only
};

struct SweepResult {
  SweepKind kind = SweepKind::kl_divergence;
  std::vector<SweepRecord> records;  // sorted by beta
  std::string metadata;              // human-readable spec/dataset descriptor
  double normalization_constant = 0.0;
  bool normalize_by_beta_c = false;  // preferred abscissa for plots
};

// Execution policy for the drivers; parallel=false selects the serial
// reference loop.
struct ExecPolicy {
  bool parallel = true;
};

// (sum_i p_i * ln(N * p_i)) / normalization_constant with 0*ln(0) = 0.
// The divergence is mathematically non-negative; tiny negative rounding
// residue is clamped to 0 so normalized values stay in [0, 1].
double kl_to_uniform(const ProbVector& p, double normalization_constant);

// Fixed-point KL order parameter across a beta grid for an equidistant spec.
// Per beta: beta_eff, then find_fixed_point from the perturbed one-hot start,
// then the KL of the endpoint normalized by ln(N). Non-convergence flags the
// record rather than failing the sweep.
SweepResult order_parameter_sweep(const EquidistantSpec& spec,
                                  std::vector<double> betas,
                                  bool normalize_by_beta_c,
                                  const ExecPolicy& exec = {});

// Iteration controls for the full-network trajectories behind minima counts.
struct CensusConfig {
  double tol = 1e-8;
  int max_iters = 10000;
};

// Distinct energy minima found from noisy starts around each pattern, plus
// how many trials landed in each (representatives are the lowest-energy
// endpoint of their cluster). Excluded trials did not converge.
struct MinimaCensus {
  double beta = 0.0;
  std::vector<StateVector> minima;
  std::vector<int> counts;
  int excluded_trials = 0;
};

// For each pattern, start trials_per_pattern trajectories at pattern + noise
// (iid Gaussian, std noise_sigma per component, stream seeded by
// (seed, pattern, trial)), run them to a fixed point, and single-linkage
// cluster the converged endpoints at L2 threshold distinct_tol * sqrt(d).
MinimaCensus count_minima(const PatternSet& patterns, double beta,
                          double noise_sigma, int trials_per_pattern,
                          uint64_t seed, double distinct_tol,
                          const CensusConfig& census = {},
                          const ExecPolicy& exec = {});

// count_minima across a beta grid; value column is the minima count.
SweepResult minima_count_sweep(const PatternSet& patterns,
                               std::vector<double> betas, double noise_sigma,
                               int trials_per_pattern, uint64_t seed,
                               double distinct_tol,
                               const CensusConfig& census = {},
                               const ExecPolicy& exec = {});

// Default noise scale: 0.1 * (mean pattern norm) / sqrt(d), i.e. noise
// displaces a start by about 10% of a typical pattern norm.
double default_noise_sigma(const PatternSet& patterns);

// One-dimensional section through the N-pattern simplex used by the cobweb
// figures: p_vec = (p, (1-p)/(N-1), ...). f_of_p is the first component of
// the updated vector; energy is evaluated on the same section with unit-norm
// orthogonal patterns (cos_theta = 0). Grid step 1e-3 over [0, 1].
struct MapSection {
  double beta = 0.0;
  std::vector<double> p_grid;
  std::vector<double> f_of_p;
  std::vector<double> energy;
  CobwebTrace cobweb;  // orbit meaningful for N = 2
};
std::vector<MapSection> map_sections(
    const std::vector<double>& beta_values, Index n = 2, double orbit_p0 = 0.6,
    int orbit_steps = 40);

}  // namespace mhn
