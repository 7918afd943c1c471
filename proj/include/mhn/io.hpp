#pragma once

// Serialization helpers shared by the CLI and tests: shortest-round-trip
// float formatting, beta-grid parsing, and the CSV schemas for each output
// kind. All output is deterministic: identical inputs produce byte-identical
// text.

#include "mhn/critical.hpp"
#include "mhn/experiments.hpp"
#include "mhn/types.hpp"

#include <string>
#include <vector>

namespace mhn {

// %.17g: enough digits to reconstruct the exact double.
std::string format_double(double value);

// "start:stop:count[log|lin]"; spacing defaults to log because sweeps span
// decades. count points inclusive of both endpoints (count == 1 -> {start}).
std::vector<double> parse_beta_grid(const std::string& text);

// Log-spaced grid with exact endpoints.
std::vector<double> geometric_grid(double start, double stop, int count);
std::vector<double> linear_grid(double start, double stop, int count);

// CSV emitters, one per schema.
std::string critical_csv(const std::vector<CriticalPoint>& points);
std::string kl_sweep_csv(const SweepResult& sweep);
std::string minima_sweep_csv(const SweepResult& sweep);
std::string sections_csv(const std::vector<MapSection>& blocks);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace mhn
