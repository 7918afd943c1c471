#include "mhn/critical.hpp"

#include <cmath>
#include <string>

namespace mhn {

double critical_residual(double p, Index n) {
  if (n < 2) throw validation_error("critical_residual: need n >= 2");
  if (!(p > 0.0 && p < 1.0)) {
    throw validation_error(
        "critical_residual: p must lie strictly inside (0, 1)");
  }
  const double nd = static_cast<double>(n);
  const double arg = (1.0 - nd * p) / (nd * p * (1.0 - p));
  return p * (1.0 + (nd - 1.0) * std::exp(arg)) - 1.0;
}

double marginal_slope(const CriticalPoint& point) {
  if (point.count < 2) throw validation_error("marginal_slope: need n >= 2");
  const double p = point.p_c;
  const double nd = static_cast<double>(point.count);
  return point.beta_c * (p - p * p + p * (1.0 - p) / (nd - 1.0));
}

CriticalPoint solve_critical(Index n) {
  if (n < 2) throw validation_error("solve_critical: need n >= 2");
  if (n == 2) {
    // Pitchfork: both roots of the residual coincide at p = 1/2, and
    // beta_c = (N-1)/(N/4) = 2 follows directly.
    return {2, 0.5, 2.0};
  }

  const double nd = static_cast<double>(n);
  const double lo = 1.0 / nd + 1e-9;
  const double hi = 1.0 - 1e-9;
  constexpr int kScanPoints = 10000;

  // The residual leaves 0 at the double root p = 1/N, rises to a positive
  // maximum, and crosses back through zero at the wanted root. Scanning for
  // the maximum first keeps the bracket away from the uniform root.
  std::vector<double> grid(kScanPoints), res(kScanPoints);
  int arg_max = 0;
  for (int i = 0; i < kScanPoints; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / (kScanPoints - 1);
    res[i] = critical_residual(grid[i], n);
    if (res[i] > res[arg_max]) arg_max = i;
  }

  int bracket = -1;
  for (int i = arg_max; i + 1 < kScanPoints; ++i) {
    if (res[i] > 0.0 && res[i + 1] <= 0.0) {
      bracket = i;
      break;
    }
  }
  if (bracket < 0) {
    throw compute_error(
        "solve_critical: no sign change above the residual maximum for N = " +
        std::to_string(n) + " (max residual " + std::to_string(res[arg_max]) +
        " at p = " + std::to_string(grid[arg_max]) + ")");
  }

  double a = grid[bracket];      // residual > 0
  double b = grid[bracket + 1];  // residual <= 0
  while (b - a > 1e-13) {
    const double mid = 0.5 * (a + b);
    if (critical_residual(mid, n) > 0.0) {
      a = mid;
    } else {
      b = mid;
    }
  }
  const double p_c = 0.5 * (a + b);

  if (std::abs(critical_residual(p_c, n)) >= 1e-10) {
    throw compute_error(
        "solve_critical: bisection failed the residual check for N = " +
        std::to_string(n));
  }
  const double beta_c = (nd - 1.0) / (nd * p_c * (1.0 - p_c));
  return {n, p_c, beta_c};
}

std::vector<CriticalPoint> critical_sweep(const std::vector<Index>& n_values) {
  std::vector<CriticalPoint> out;
  out.reserve(n_values.size());
  for (size_t i = 0; i < n_values.size(); ++i) {
    try {
      out.push_back(solve_critical(n_values[i]));
    } catch (const validation_error&) {
      throw;  // bad input, not a solver failure: keep the error class
    } catch (const std::exception& e) {
      throw compute_error("critical_sweep: entry " + std::to_string(i) +
                          " (N = " + std::to_string(n_values[i]) +
                          ") failed: " + e.what());
    }
  }
  return out;
}

}  // namespace mhn
