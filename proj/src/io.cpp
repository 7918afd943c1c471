#include "mhn/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace mhn {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::vector<double> geometric_grid(double start, double stop, int count) {
  if (count < 1) throw validation_error("geometric_grid: count must be >= 1");
  if (!(start > 0.0) || !(stop > 0.0)) {
    throw validation_error("geometric_grid: log spacing needs positive bounds");
  }
  if (stop < start) {
    throw validation_error("geometric_grid: stop must be >= start");
  }
  std::vector<double> grid(count);
  if (count == 1) {
    grid[0] = start;
    return grid;
  }
  const double log_start = std::log(start);
  const double log_stop = std::log(stop);
  for (int i = 0; i < count; ++i) {
    grid[i] = std::exp(log_start +
                       (log_stop - log_start) * i / (count - 1));
  }
  grid.front() = start;  // exact endpoints regardless of exp/log rounding
  grid.back() = stop;
  return grid;
}

std::vector<double> linear_grid(double start, double stop, int count) {
  if (count < 1) throw validation_error("linear_grid: count must be >= 1");
  if (stop < start) {
    throw validation_error("linear_grid: stop must be >= start");
  }
  std::vector<double> grid(count);
  if (count == 1) {
    grid[0] = start;
    return grid;
  }
  for (int i = 0; i < count; ++i) {
    grid[i] = start + (stop - start) * i / (count - 1);
  }
  grid.front() = start;
  grid.back() = stop;
  return grid;
}

std::vector<double> parse_beta_grid(const std::string& text) {
  const auto fail = [&](const std::string& why) -> std::vector<double> {
    throw validation_error("parse_beta_grid: " + why + " in \"" + text +
                           "\" (expected start:stop:count[log|lin])");
  };

  const size_t first = text.find(':');
  const size_t second = first == std::string::npos
                            ? std::string::npos
                            : text.find(':', first + 1);
  if (first == std::string::npos || second == std::string::npos) {
    return fail("missing ':' separators");
  }

  std::string count_part = text.substr(second + 1);
  bool log_spacing = true;
  if (count_part.size() >= 3 &&
      count_part.compare(count_part.size() - 3, 3, "log") == 0) {
    count_part.resize(count_part.size() - 3);
  } else if (count_part.size() >= 3 &&
             count_part.compare(count_part.size() - 3, 3, "lin") == 0) {
    count_part.resize(count_part.size() - 3);
    log_spacing = false;
  }

  double start = 0.0, stop = 0.0;
  long count = 0;
  try {
    size_t used = 0;
    start = std::stod(text.substr(0, first), &used);
    if (used != first) return fail("bad start value");
    const std::string stop_text = text.substr(first + 1, second - first - 1);
    stop = std::stod(stop_text, &used);
    if (used != stop_text.size()) return fail("bad stop value");
    count = std::stol(count_part, &used);
    if (used != count_part.size()) return fail("bad count value");
  } catch (const std::exception&) {
    return fail("unparseable number");
  }
  if (count < 1 || count > 1000000) return fail("count out of range");
  return log_spacing ? geometric_grid(start, stop, static_cast<int>(count))
                     : linear_grid(start, stop, static_cast<int>(count));
}

std::string critical_csv(const std::vector<CriticalPoint>& points) {
  std::string out = "N,p_c,beta_c\n";
  for (const CriticalPoint& point : points) {
    out += std::to_string(point.count) + "," + format_double(point.p_c) + "," +
           format_double(point.beta_c) + "\n";
  }
  return out;
}

std::string kl_sweep_csv(const SweepResult& sweep) {
  std::string out;
  out += "# kind=kl_divergence\n";
  out += "# " + sweep.metadata + "\n";
  out += "# normalization_constant=" +
         format_double(sweep.normalization_constant) + "\n";
  out += "beta,beta_eff,beta_over_beta_c,kl_normalized,converged\n";
  for (const SweepRecord& rec : sweep.records) {
    out += format_double(rec.beta) + ",";
    out += format_double(rec.beta_eff.value_or(
               std::numeric_limits<double>::quiet_NaN())) +
           ",";
    out += format_double(rec.beta_over_beta_c.value_or(
               std::numeric_limits<double>::quiet_NaN())) +
           ",";
    out += format_double(rec.value) + ",";
    out += rec.converged ? "1\n" : "0\n";
  }
  return out;
}

std::string minima_sweep_csv(const SweepResult& sweep) {
  std::string out;
  out += "# kind=minima_count\n";
  out += "# " + sweep.metadata + "\n";
  out += "beta,minima_count,excluded_trials\n";
  for (const SweepRecord& rec : sweep.records) {
    out += format_double(rec.beta) + "," +
           std::to_string(static_cast<long>(rec.value)) + "," +
           std::to_string(rec.excluded_trials) + "\n";
  }
  return out;
}

std::string sections_csv(const std::vector<MapSection>& blocks) {
  std::string out;
  for (const MapSection& block : blocks) {
    out += "# beta=" + format_double(block.beta) + "\n";
    out += "p,f_of_p,energy\n";
    for (size_t i = 0; i < block.p_grid.size(); ++i) {
      out += format_double(block.p_grid[i]) + "," +
             format_double(block.f_of_p[i]) + "," +
             format_double(block.energy[i]) + "\n";
    }
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw io_error("write failed: " + path);
}

}  // namespace mhn
