#include "mhn/experiments.hpp"

#include "mhn/critical.hpp"
#include "mhn/hopfield.hpp"
#include "mhn/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace mhn {

namespace {

// Twin execution paths over independent work items. Results must be written
// by index inside f so that thread scheduling cannot affect the output; the
// plain loop is the serial reference used by tests and benchmarks.
template <typename F>
void for_each_index(Index count, const ExecPolicy& exec, F&& f) {
  if (exec.parallel) {
#pragma omp parallel for schedule(dynamic)
    for (Index k = 0; k < count; ++k) f(k);
  } else {
    for (Index k = 0; k < count; ++k) f(k);
  }
}

std::vector<double> sorted_positive_betas(std::vector<double> betas,
                                          const char* where) {
  if (betas.empty()) {
    throw validation_error(std::string(where) + ": beta list is empty");
  }
  for (double b : betas) {
    if (!(b > 0.0) || !std::isfinite(b)) {
      throw validation_error(std::string(where) +
                             ": every beta must be positive and finite");
    }
  }
  std::sort(betas.begin(), betas.end());
  return betas;
}

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Symmetric section through the simplex: all mass not on pattern 1 is spread
// evenly over the other N-1 patterns. The section is invariant under the
// update, so iterating it is the honest N-dimensional generalization of the
// scalar N=2 map.
ProbVector section_vector(double p, Index n) {
  ProbVector vec = ProbVector::Constant(
      n, (1.0 - p) / static_cast<double>(n - 1));
  vec(0) = p;
  return vec;
}

double section_map(double p, double beta_eff, Index n) {
  return p_update(section_vector(p, n), beta_eff)(0);
}

// Minimal union-find for single-linkage clustering.
class DisjointSets {
 public:
  explicit DisjointSets(size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), size_t{0});
  }
  size_t find(size_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  void unite(size_t a, size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<size_t> parent_;
};

}  // namespace

double kl_to_uniform(const ProbVector& p, double normalization_constant) {
  require_on_simplex(p, "kl_to_uniform");
  if (!(normalization_constant > 0.0) ||
      !std::isfinite(normalization_constant)) {
    throw validation_error(
        "kl_to_uniform: normalization_constant must be positive");
  }
  const double nd = static_cast<double>(p.size());
  double sum = 0.0;
  for (Index i = 0; i < p.size(); ++i) {
    if (p(i) > 0.0) sum += p(i) * std::log(nd * p(i));
  }
  return std::max(0.0, sum / normalization_constant);
}

SweepResult order_parameter_sweep(const EquidistantSpec& spec,
                                  std::vector<double> betas,
                                  bool normalize_by_beta_c,
                                  const ExecPolicy& exec) {
  validate(spec);
  if (spec.count < 2) {
    throw validation_error(
        "order_parameter_sweep: need at least two patterns");
  }
  betas = sorted_positive_betas(std::move(betas), "order_parameter_sweep");

  const double beta_c = solve_critical(spec.count).beta_c;
  const double ln_n = std::log(static_cast<double>(spec.count));

  SweepResult result;
  result.kind = SweepKind::kl_divergence;
  result.normalization_constant = ln_n;
  result.normalize_by_beta_c = normalize_by_beta_c;
  result.metadata = "equidistant d=" + std::to_string(spec.dim) +
                    " N=" + std::to_string(spec.count) +
                    " norm=" + format_value(spec.norm) +
                    " cos_theta=" + format_value(spec.cos_theta);
  result.records.resize(betas.size());

  for_each_index(static_cast<Index>(betas.size()), exec, [&](Index k) {
    const EffectiveTemperature et = effective_beta(betas[k], spec);
    PDynamicsConfig config;
    config.count = spec.count;
    config.beta_eff = et.beta_eff;
    const FixedPointResult fixed =
        find_fixed_point(perturbed_one_hot(spec.count), config);

    SweepRecord rec;
    rec.beta = betas[k];
    rec.beta_eff = et.beta_eff;
    rec.beta_over_beta_c = et.beta_eff / beta_c;
    rec.value = kl_to_uniform(fixed.p_star, ln_n);
    rec.converged = fixed.converged;
    result.records[k] = rec;
  });
  return result;
}

MinimaCensus count_minima(const PatternSet& patterns, double beta,
                          double noise_sigma, int trials_per_pattern,
                          uint64_t seed, double distinct_tol,
                          const CensusConfig& census, const ExecPolicy& exec) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw validation_error("count_minima: beta must be positive");
  }
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw validation_error("count_minima: noise_sigma must be >= 0");
  }
  if (trials_per_pattern < 1) {
    throw validation_error("count_minima: trials_per_pattern must be >= 1");
  }
  if (!(distinct_tol > 0.0)) {
    throw validation_error("count_minima: distinct_tol must be positive");
  }
  if (!(census.tol > 0.0) || census.max_iters < 1) {
    throw validation_error("count_minima: bad iteration controls");
  }

  const Index n = patterns.count();
  const Index d = patterns.dim();
  const Index total = n * trials_per_pattern;

  std::vector<StateVector> endpoints(total);
  std::vector<char> converged(total, 0);
  std::vector<double> endpoint_energy(total, 0.0);

  for_each_index(total, exec, [&](Index k) {
    const Index pattern = k / trials_per_pattern;
    const Index trial = k % trials_per_pattern;
    StateVector start = patterns.data().col(pattern);
    if (noise_sigma > 0.0) {
      GaussianStream noise(trial_stream_seed(
          seed, static_cast<uint64_t>(pattern), static_cast<uint64_t>(trial)));
      for (Index i = 0; i < d; ++i) start(i) += noise_sigma * noise.next();
    }
    Endpoint end =
        run_to_fixed_point(start, patterns, beta, census.tol, census.max_iters);
    if (end.converged) {
      endpoint_energy[k] = energy(end.xi, patterns, beta);
      converged[k] = 1;
    }
    endpoints[k] = std::move(end.xi);
  });

  // Single-linkage clustering of the converged endpoints: the transitive
  // closure of "closer than distinct_tol * sqrt(d)".
  std::vector<Index> kept;
  for (Index k = 0; k < total; ++k) {
    if (converged[k]) kept.push_back(k);
  }
  const double threshold = distinct_tol * std::sqrt(static_cast<double>(d));
  DisjointSets sets(kept.size());
  for (size_t a = 0; a < kept.size(); ++a) {
    for (size_t b = a + 1; b < kept.size(); ++b) {
      if (sets.find(a) == sets.find(b)) continue;
      if ((endpoints[kept[a]] - endpoints[kept[b]]).norm() <= threshold) {
        sets.unite(a, b);
      }
    }
  }

  // Clusters ordered by first trial index; representative = lowest-energy
  // member (earliest trial wins ties), i.e. the best minimum found.
  MinimaCensus out;
  out.beta = beta;
  out.excluded_trials = static_cast<int>(total) - static_cast<int>(kept.size());
  std::vector<int> root_to_cluster(kept.size(), -1);
  std::vector<double> best_energy;
  for (size_t a = 0; a < kept.size(); ++a) {
    const size_t root = sets.find(a);
    int cluster = root_to_cluster[root];
    if (cluster < 0) {
      cluster = static_cast<int>(out.minima.size());
      root_to_cluster[root] = cluster;
      out.minima.push_back(endpoints[kept[a]]);
      out.counts.push_back(0);
      best_energy.push_back(endpoint_energy[kept[a]]);
    } else if (endpoint_energy[kept[a]] < best_energy[cluster]) {
      best_energy[cluster] = endpoint_energy[kept[a]];
      out.minima[cluster] = endpoints[kept[a]];
    }
    out.counts[cluster] += 1;
  }
  return out;
}

SweepResult minima_count_sweep(const PatternSet& patterns,
                               std::vector<double> betas, double noise_sigma,
                               int trials_per_pattern, uint64_t seed,
                               double distinct_tol, const CensusConfig& census,
                               const ExecPolicy& exec) {
  betas = sorted_positive_betas(std::move(betas), "minima_count_sweep");

  SweepResult result;
  result.kind = SweepKind::minima_count;
  result.metadata = "patterns d=" + std::to_string(patterns.dim()) +
                    " N=" + std::to_string(patterns.count()) +
                    " noise_sigma=" + format_value(noise_sigma) +
                    " trials=" + std::to_string(trials_per_pattern) +
                    " seed=" + std::to_string(seed) +
                    " distinct_tol=" + format_value(distinct_tol);
  result.records.reserve(betas.size());

  for (double beta : betas) {
    const MinimaCensus census_at_beta =
        count_minima(patterns, beta, noise_sigma, trials_per_pattern, seed,
                     distinct_tol, census, exec);
    SweepRecord rec;
    rec.beta = beta;
    rec.value = static_cast<double>(census_at_beta.minima.size());
    rec.excluded_trials = census_at_beta.excluded_trials;
    result.records.push_back(rec);
  }
  return result;
}

double default_noise_sigma(const PatternSet& patterns) {
  const double mean_norm = patterns.data().colwise().norm().mean();
  return 0.1 * mean_norm / std::sqrt(static_cast<double>(patterns.dim()));
}

std::vector<MapSection> map_sections(
    const std::vector<double>& beta_values, Index n, double orbit_p0,
    int orbit_steps) {
  if (n < 2) throw validation_error("map_sections: need n >= 2");
  if (!(orbit_p0 >= 0.0 && orbit_p0 <= 1.0)) {
    throw validation_error("map_sections: orbit_p0 must be in [0,1]");
  }
  if (orbit_steps < 0) {
    throw validation_error("map_sections: orbit_steps must be >= 0");
  }
  const std::vector<double> betas =
      sorted_positive_betas(beta_values, "map_sections");

  constexpr int kGridPoints = 1001;
  std::vector<MapSection> blocks;
  blocks.reserve(betas.size());
  for (double beta : betas) {
    MapSection block;
    block.beta = beta;
    block.p_grid.reserve(kGridPoints);
    block.f_of_p.reserve(kGridPoints);
    block.energy.reserve(kGridPoints);
    for (int i = 0; i < kGridPoints; ++i) {
      const double p = static_cast<double>(i) / (kGridPoints - 1);
      const ProbVector vec = section_vector(p, n);
      block.p_grid.push_back(p);
      block.f_of_p.push_back(p_update(vec, beta)(0));
      block.energy.push_back(energy_in_p(vec, beta, 0.0));
    }
    block.cobweb.orbit.reserve(static_cast<size_t>(orbit_steps) + 1);
    block.cobweb.orbit.push_back(orbit_p0);
    for (int k = 0; k < orbit_steps; ++k) {
      block.cobweb.orbit.push_back(
          section_map(block.cobweb.orbit.back(), beta, n));
    }
    block.cobweb.graph.reserve(kGridPoints);
    for (int i = 0; i < kGridPoints; ++i) {
      block.cobweb.graph.emplace_back(block.p_grid[i], block.f_of_p[i]);
    }
    blocks.push_back(std::move(block));
  }
  return blocks;
}

}  // namespace mhn
