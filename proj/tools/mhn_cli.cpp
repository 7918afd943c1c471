// Command-line surface for the Hopfield phase-transition toolkit.
//
// Subcommands:
//   solve-critical  critical points (p_c, beta_c) over a list of N
//   sweep-kl        KL order-parameter sweep for equidistant pattern sets
//   mnist           minima counting over a beta grid for MNIST digit patterns
//   cobweb          cobweb + 1D energy section data for the N=2 reduction
//
// Every run writes CSV (canonical), SVG plots (optional), and a resolved
// config JSON next to them. Reruns with identical flags produce byte-identical
// files. Exit codes: 0 success, 1 validation error, 2 runtime/convergence
// failure, 3 I/O error.

#include "mhn/critical.hpp"
#include "mhn/dynamics.hpp"
#include "mhn/experiments.hpp"
#include "mhn/io.hpp"
#include "mhn/mnist.hpp"
#include "mhn/patterns.hpp"
#include "mhn/svg.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

// --out flag beats MHN_OUTPUT_DIR beats ./mhn_out.
std::string resolve_output_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("MHN_OUTPUT_DIR"); env && *env) {
    return env;
  }
  return "mhn_out";
}

fs::path prepare_output_dir(const std::string& flag_value) {
  const fs::path dir = resolve_output_dir(flag_value);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw mhn::io_error("cannot create output directory " + dir.string() +
                        ": " + ec.message());
  }
  return dir;
}

void write_config(const fs::path& dir, const std::string& name,
                  const ordered_json& config) {
  mhn::write_text_file((dir / name).string(), config.dump(2) + "\n");
}

// "2", "2:100" (inclusive), or "2,5,10".
std::vector<mhn::Index> parse_n_list(const std::string& text) {
  const auto fail = [&]() {
    throw mhn::validation_error("bad N list \"" + text +
                                "\" (expected n, a:b, or a,b,c)");
  };
  const auto to_index = [&](const std::string& part) -> mhn::Index {
    size_t used = 0;
    long v = 0;
    try {
      v = std::stol(part, &used);
    } catch (const std::exception&) {
      fail();
    }
    if (used != part.size() || v < 1) fail();
    return static_cast<mhn::Index>(v);
  };

  std::vector<mhn::Index> out;
  if (const size_t colon = text.find(':'); colon != std::string::npos) {
    const mhn::Index lo = to_index(text.substr(0, colon));
    const mhn::Index hi = to_index(text.substr(colon + 1));
    if (hi < lo) fail();
    for (mhn::Index n = lo; n <= hi; ++n) out.push_back(n);
    return out;
  }
  size_t pos = 0;
  for (;;) {
    const size_t comma = text.find(',', pos);
    const std::string part = comma == std::string::npos
                                 ? text.substr(pos)
                                 : text.substr(pos, comma - pos);
    if (part.empty()) fail();
    out.push_back(to_index(part));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  size_t pos = 0;
  for (;;) {
    const size_t comma = text.find(',', pos);
    const std::string part = comma == std::string::npos
                                 ? text.substr(pos)
                                 : text.substr(pos, comma - pos);
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != part.size()) {
      throw mhn::validation_error("bad number \"" + part + "\" in list \"" +
                                  text + "\"");
    }
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

// --------------------------------------------------------------- shared ---

struct CommonFlags {
  std::string out_dir;
  bool svg = true;
  bool serial = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& common) {
  cmd->add_option("--out", common.out_dir,
                  "Output directory (default: $MHN_OUTPUT_DIR or ./mhn_out)");
  cmd->add_flag("--svg,!--no-svg", common.svg, "Emit SVG plots (default on)");
  cmd->add_flag("--serial", common.serial,
                "Run sweeps on the serial reference path instead of OpenMP");
}

// ------------------------------------------------------- solve-critical ---

struct SolveCriticalArgs {
  CommonFlags common;
  std::string n_text = "2:100";
};

void run_solve_critical(const SolveCriticalArgs& args) {
  const std::vector<mhn::Index> n_values = parse_n_list(args.n_text);
  const std::vector<mhn::CriticalPoint> points = mhn::critical_sweep(n_values);

  const fs::path dir = prepare_output_dir(args.common.out_dir);
  mhn::write_text_file((dir / "critical.csv").string(),
                       mhn::critical_csv(points));

  if (args.common.svg) {
    mhn::PlotSpec plot;
    plot.title = "Critical inverse temperature vs pattern count";
    plot.x_label = "N";
    plot.y_label = "beta_c";
    mhn::Series line;
    line.label = "beta_c(N)";
    for (const mhn::CriticalPoint& p : points) {
      line.x.push_back(static_cast<double>(p.count));
      line.y.push_back(p.beta_c);
    }
    mhn::Series dots = line;
    dots.label.clear();
    dots.style = mhn::Series::Style::scatter;
    plot.series = {line, dots};
    mhn::write_text_file((dir / "critical.svg").string(),
                         mhn::render_svg(plot));
  }

  ordered_json config;
  config["command"] = "solve-critical";
  config["n"] = args.n_text;
  config["n_count"] = points.size();
  config["svg"] = args.common.svg;
  config["output_dir"] = dir.string();
  write_config(dir, "solve_critical_config.json", config);
}

// ------------------------------------------------------------- sweep-kl ---

struct SweepKlArgs {
  CommonFlags common;
  std::string n_text;
  std::string d_text;
  double norm = 1.0;
  double cos_theta = 0.0;
  bool cos_theta_given = false;
  std::string beta_grid = "0.01:100:80log";
  bool normalize_beta = false;
};

void run_sweep_kl(const SweepKlArgs& args) {
  if (args.n_text.empty() && args.d_text.empty()) {
    throw mhn::validation_error("sweep-kl: pass --n and/or --d");
  }

  // Resolve the spec list. --n drives; --d (same length, or one value for
  // all) overrides the default d = N. --d alone means the maximal equidistant
  // family: N = d + 1 at cos_theta = -1/(N-1), the regular simplex, which is
  // the only equidistant geometry with d + 1 patterns.
  std::vector<mhn::EquidistantSpec> specs;
  if (!args.n_text.empty()) {
    const std::vector<mhn::Index> n_values = parse_n_list(args.n_text);
    std::vector<mhn::Index> d_values;
    if (!args.d_text.empty()) {
      d_values = parse_n_list(args.d_text);
      if (d_values.size() == 1) {
        d_values.assign(n_values.size(), d_values[0]);
      }
      if (d_values.size() != n_values.size()) {
        throw mhn::validation_error(
            "sweep-kl: --d must have one value or match --n in length");
      }
    }
    for (size_t i = 0; i < n_values.size(); ++i) {
      mhn::EquidistantSpec spec;
      spec.count = n_values[i];
      spec.dim = d_values.empty() ? n_values[i] : d_values[i];
      spec.norm = args.norm;
      spec.cos_theta = args.cos_theta;
      specs.push_back(spec);
    }
  } else {
    for (mhn::Index d : parse_n_list(args.d_text)) {
      mhn::EquidistantSpec spec;
      spec.dim = d;
      spec.count = d + 1;
      spec.norm = args.norm;
      spec.cos_theta = args.cos_theta_given
                           ? args.cos_theta
                           : -1.0 / static_cast<double>(d);
      specs.push_back(spec);
    }
  }

  const std::vector<double> betas = mhn::parse_beta_grid(args.beta_grid);
  const mhn::ExecPolicy exec{!args.common.serial};

  std::vector<mhn::SweepResult> sweeps;
  sweeps.reserve(specs.size());
  for (const mhn::EquidistantSpec& spec : specs) {
    sweeps.push_back(mhn::order_parameter_sweep(spec, betas,
                                                args.normalize_beta, exec));
  }

  const fs::path dir = prepare_output_dir(args.common.out_dir);
  for (size_t i = 0; i < specs.size(); ++i) {
    const std::string name =
        "kl_sweep_N" + std::to_string(specs[i].count) + ".csv";
    mhn::write_text_file((dir / name).string(), mhn::kl_sweep_csv(sweeps[i]));
  }

  if (args.common.svg) {
    // Raw beta_eff abscissa and the beta_eff/beta_c collapse.
    for (const bool collapse : {false, true}) {
      mhn::PlotSpec plot;
      plot.title = collapse ? "Order parameter, transition-normalized"
                            : "Order parameter vs effective beta";
      plot.x_label = collapse ? "beta_eff / beta_c" : "beta_eff";
      plot.y_label = "normalized KL divergence";
      plot.log_x = true;
      for (size_t i = 0; i < sweeps.size(); ++i) {
        mhn::Series s;
        s.label = "N=" + std::to_string(specs[i].count);
        for (const mhn::SweepRecord& rec : sweeps[i].records) {
          s.x.push_back(collapse ? rec.beta_over_beta_c.value_or(0.0)
                                 : rec.beta_eff.value_or(0.0));
          s.y.push_back(rec.value);
        }
        plot.series.push_back(std::move(s));
      }
      const std::string name =
          collapse ? "kl_sweep_collapse.svg" : "kl_sweep_beta.svg";
      mhn::write_text_file((dir / name).string(), mhn::render_svg(plot));
    }
  }

  ordered_json config;
  config["command"] = "sweep-kl";
  config["n"] = args.n_text;
  config["d"] = args.d_text;
  ordered_json spec_list = ordered_json::array();
  for (const mhn::EquidistantSpec& spec : specs) {
    ordered_json js;
    js["d"] = spec.dim;
    js["N"] = spec.count;
    js["norm"] = spec.norm;
    js["cos_theta"] = spec.cos_theta;
    spec_list.push_back(js);
  }
  config["specs"] = spec_list;
  config["beta_grid"] = args.beta_grid;
  config["beta_points"] = betas.size();
  config["normalize_beta"] = args.normalize_beta;
  config["serial"] = args.common.serial;
  config["svg"] = args.common.svg;
  config["output_dir"] = dir.string();
  write_config(dir, "sweep_kl_config.json", config);
}

// ---------------------------------------------------------------- mnist ---

struct MnistArgs {
  CommonFlags common;
  std::string idx_path;
  mhn::Index n = 25;
  uint64_t seed = 1;
  int trials = 4;
  double noise_sigma = -1.0;  // < 0: derive from the pattern norms
  double distinct_tol = 1e-3;
  // wide enough to cover both phases: the count plateaus near N around
  // beta ~ 1-10 for unit-interval digit patterns
  std::string beta_grid = "1e-4:10:40log";
  std::string scale = "unit_interval";
};

void run_mnist(const MnistArgs& args) {
  const mhn::IdxImageFile file = mhn::load_idx_images(args.idx_path);
  const mhn::PixelScale scale = args.scale == "raw"
                                    ? mhn::PixelScale::raw
                                    : mhn::PixelScale::unit_interval;
  const mhn::PatternSet patterns =
      mhn::select_patterns(file, static_cast<int>(args.n), args.seed, scale);

  const double sigma = args.noise_sigma >= 0.0
                           ? args.noise_sigma
                           : mhn::default_noise_sigma(patterns);
  const std::vector<double> betas = mhn::parse_beta_grid(args.beta_grid);
  const mhn::ExecPolicy exec{!args.common.serial};

  const mhn::SweepResult sweep =
      mhn::minima_count_sweep(patterns, betas, sigma, args.trials, args.seed,
                              args.distinct_tol, {}, exec);

  const fs::path dir = prepare_output_dir(args.common.out_dir);
  mhn::write_text_file((dir / "minima.csv").string(),
                       mhn::minima_sweep_csv(sweep));

  if (args.common.svg) {
    mhn::PlotSpec plot;
    plot.title = "Distinct energy minima vs beta (N=" +
                 std::to_string(patterns.count()) + " MNIST digits)";
    plot.x_label = "beta";
    plot.y_label = "minima count";
    plot.log_x = true;
    mhn::Series s;
    s.label = "N=" + std::to_string(patterns.count());
    s.style = mhn::Series::Style::step;
    for (const mhn::SweepRecord& rec : sweep.records) {
      s.x.push_back(rec.beta);
      s.y.push_back(rec.value);
    }
    plot.series.push_back(std::move(s));
    mhn::write_text_file((dir / "minima.svg").string(), mhn::render_svg(plot));
  }

  ordered_json config;
  config["command"] = "mnist";
  config["idx"] = args.idx_path;
  config["n"] = args.n;
  config["seed"] = args.seed;
  config["trials"] = args.trials;
  config["noise_sigma"] = sigma;
  config["noise_sigma_source"] =
      args.noise_sigma >= 0.0 ? "flag" : "0.1*mean_norm/sqrt(d)";
  config["distinct_tol"] = args.distinct_tol;
  config["beta_grid"] = args.beta_grid;
  config["beta_points"] = betas.size();
  config["scale"] = args.scale;
  config["serial"] = args.common.serial;
  config["svg"] = args.common.svg;
  config["output_dir"] = dir.string();
  write_config(dir, "mnist_config.json", config);
}

// --------------------------------------------------------------- cobweb ---

struct CobwebArgs {
  CommonFlags common;
  std::string betas_text = "0.5,2,8";
  mhn::Index n = 2;
  double orbit_p0 = 0.6;
  int orbit_steps = 40;
};

void run_cobweb(const CobwebArgs& args) {
  const std::vector<double> betas = parse_double_list(args.betas_text);
  const std::vector<mhn::MapSection> blocks = mhn::map_sections(
      betas, args.n, args.orbit_p0, args.orbit_steps);

  const fs::path dir = prepare_output_dir(args.common.out_dir);
  mhn::write_text_file((dir / "cobweb.csv").string(),
                       mhn::sections_csv(blocks));

  if (args.common.svg) {
    // One cobweb diagram per beta: map graph, diagonal, and the orbit
    // staircase (p_k, p_k) -> (p_k, p_{k+1}) -> (p_{k+1}, p_{k+1}).
    for (const mhn::MapSection& block : blocks) {
      mhn::PlotSpec plot;
      const std::string beta_text = mhn::format_double(block.beta);
      plot.title = "Cobweb diagram, beta=" + beta_text;
      plot.x_label = "p";
      plot.y_label = "f(p)";

      mhn::Series graph;
      graph.label = "f(p)";
      for (const auto& [p, f] : block.cobweb.graph) {
        graph.x.push_back(p);
        graph.y.push_back(f);
      }
      mhn::Series diagonal;
      diagonal.label = "p";
      diagonal.x = {0.0, 1.0};
      diagonal.y = {0.0, 1.0};
      mhn::Series orbit;
      orbit.label = "orbit";
      const std::vector<double>& o = block.cobweb.orbit;
      orbit.x.push_back(o[0]);
      orbit.y.push_back(o[0]);
      for (size_t k = 0; k + 1 < o.size(); ++k) {
        orbit.x.push_back(o[k]);
        orbit.y.push_back(o[k + 1]);
        orbit.x.push_back(o[k + 1]);
        orbit.y.push_back(o[k + 1]);
      }
      plot.series = {graph, diagonal, orbit};
      mhn::write_text_file(
          (dir / ("cobweb_beta" + beta_text + ".svg")).string(),
          mhn::render_svg(plot));
    }

    mhn::PlotSpec energy_plot;
    energy_plot.title = "Energy along the symmetric section";
    energy_plot.x_label = "p";
    energy_plot.y_label = "energy";
    for (const mhn::MapSection& block : blocks) {
      mhn::Series s;
      s.label = "beta=" + mhn::format_double(block.beta);
      s.x = block.p_grid;
      s.y = block.energy;
      energy_plot.series.push_back(std::move(s));
    }
    mhn::write_text_file((dir / "energy_sections.svg").string(),
                         mhn::render_svg(energy_plot));
  }

  ordered_json config;
  config["command"] = "cobweb";
  config["betas"] = args.betas_text;
  config["n"] = args.n;
  config["orbit_p0"] = args.orbit_p0;
  config["orbit_steps"] = args.orbit_steps;
  config["grid_step"] = 1e-3;
  config["svg"] = args.common.svg;
  config["output_dir"] = dir.string();
  write_config(dir, "cobweb_config.json", config);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modern Hopfield network phase-transition toolkit"};
  app.require_subcommand(1);

  SolveCriticalArgs solve_args;
  CLI::App* solve = app.add_subcommand(
      "solve-critical", "Solve (p_c, beta_c) for a list of pattern counts");
  solve->add_option("--n", solve_args.n_text,
                    "Pattern counts: n, a:b (inclusive), or a,b,c")
      ->capture_default_str();
  add_common_flags(solve, solve_args.common);

  SweepKlArgs kl_args;
  CLI::App* kl = app.add_subcommand(
      "sweep-kl", "KL order-parameter sweep for equidistant pattern sets");
  kl->add_option("--n", kl_args.n_text,
                 "Pattern counts (d defaults to N: orthonormal patterns)");
  kl->add_option("--d", kl_args.d_text,
                 "Dimensions; alone it implies N=d+1 regular-simplex sets");
  kl->add_option("--norm", kl_args.norm, "Common pattern norm")
      ->capture_default_str();
  CLI::Option* cos_opt =
      kl->add_option("--cos-theta", kl_args.cos_theta,
                     "Common pairwise cosine")
          ->capture_default_str();
  kl->add_option("--beta-grid", kl_args.beta_grid,
                 "start:stop:count[log|lin]")
      ->capture_default_str();
  kl->add_flag("--normalize-beta", kl_args.normalize_beta,
               "Report the beta axis as beta_eff/beta_c");
  add_common_flags(kl, kl_args.common);

  MnistArgs mnist_args;
  CLI::App* mnist = app.add_subcommand(
      "mnist", "Count distinct minima for MNIST digit patterns over beta");
  mnist->add_option("--idx", mnist_args.idx_path,
                    "IDX image file (.gz accepted)")
      ->required();
  mnist->add_option("--n", mnist_args.n, "Number of digits to store")
      ->capture_default_str();
  mnist->add_option("--seed", mnist_args.seed,
                    "Seed for digit selection and trial noise")
      ->capture_default_str();
  mnist->add_option("--trials", mnist_args.trials, "Noisy starts per pattern")
      ->capture_default_str();
  mnist->add_option("--noise-sigma", mnist_args.noise_sigma,
                    "Noise std per component (< 0: 0.1*mean_norm/sqrt(d))");
  mnist->add_option("--distinct-tol", mnist_args.distinct_tol,
                    "Cluster threshold, scaled by sqrt(d)")
      ->capture_default_str();
  mnist->add_option("--beta-grid", mnist_args.beta_grid,
                    "start:stop:count[log|lin]")
      ->capture_default_str();
  mnist->add_option("--scale", mnist_args.scale, "Pixel scaling")
      ->check(CLI::IsMember({"unit_interval", "raw"}))
      ->capture_default_str();
  add_common_flags(mnist, mnist_args.common);

  CobwebArgs cobweb_args;
  CLI::App* cobweb = app.add_subcommand(
      "cobweb", "Cobweb + energy-section data for the reduced map");
  cobweb->add_option("--betas", cobweb_args.betas_text,
                       "Comma-separated beta values")
      ->capture_default_str();
  cobweb->add_option("--n", cobweb_args.n, "Pattern count of the section")
      ->capture_default_str();
  cobweb->add_option("--p0", cobweb_args.orbit_p0, "Cobweb orbit start")
      ->capture_default_str();
  cobweb->add_option("--steps", cobweb_args.orbit_steps,
                       "Cobweb orbit length")
      ->capture_default_str();
  add_common_flags(cobweb, cobweb_args.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // flag/value problems are validation errors
  }

  try {
    if (solve->parsed()) {
      run_solve_critical(solve_args);
    } else if (kl->parsed()) {
      kl_args.cos_theta_given = cos_opt->count() > 0;
      run_sweep_kl(kl_args);
    } else if (mnist->parsed()) {
      run_mnist(mnist_args);
    } else if (cobweb->parsed()) {
      run_cobweb(cobweb_args);
    }
  } catch (const mhn::validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const mhn::io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const mhn::compute_error& e) {
    std::cerr << "compute error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
