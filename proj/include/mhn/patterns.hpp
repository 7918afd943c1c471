#pragma once

// Equidistant equal-norm pattern construction and the effective inverse
// temperature. A set of N patterns with common norm and common pairwise angle
// theta has Gram matrix
//     (X^T X)_ij = norm^2 * (cos_theta + (1 - cos_theta) * delta_ij),
// whose eigenvalues are norm^2*(1 - cos_theta) with multiplicity N-1 and
// norm^2*(1 + (N-1)*cos_theta) once. Any matrix square root of that Gram,
// zero-padded to d rows, realizes the set; all such realizations differ by an
// orthogonal transform and are equivalent for the dynamics.

#include "mhn/types.hpp"

namespace mhn {

struct EquidistantSpec {
  Index dim = 0;           // d
  Index count = 0;         // N
  double norm = 1.0;       // common pattern norm, > 0
  double cos_theta = 0.0;  // common pairwise cosine
};

// Feasibility rules enforced:
//   * N <= d + 1 and cos_theta in [-1/(N-1), 1) keep the Gram matrix PSD and
//     the reduced dynamics well-defined (cos_theta = 1 would collapse all
//     patterns onto one ray and zero out the effective temperature);
//   * the Gram rank (N - 1 if the top eigenvalue vanishes, else N) must fit
//     into d rows, so N = d + 1 is only realizable at cos_theta = -1/(N-1),
//     the regular simplex.
void validate(const EquidistantSpec& spec);

PatternSet build_equidistant(const EquidistantSpec& spec);

struct EffectiveTemperature {
  double beta = 0.0;
  double beta_eff = 0.0;  // beta * norm^2 * (1 - cos_theta)
};
EffectiveTemperature effective_beta(double beta, const EquidistantSpec& spec);

// Norms and pairwise cosines of arbitrary patterns; see GramMetadata for the
// zero-norm sentinel convention.
GramMetadata gram_metadata(const PatternSet& patterns);

}  // namespace mhn
