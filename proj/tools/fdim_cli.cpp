#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "fdim/bootstrap.hpp"
#include "fdim/core.hpp"
#include "fdim/covariance.hpp"
#include "fdim/experiment.hpp"
#include "fdim/io.hpp"
#include "fdim/methods.hpp"
#include "fdim/plot.hpp"
#include "fdim/random.hpp"
#include "fdim/simulate.hpp"
#include "fdim/windowing.hpp"

namespace {

using namespace fractal;

// Error raised while running one named method.
struct MethodFailure {
  std::string method;
  Error error;
};

struct InputOptions {
  std::string path;
  std::string format;
  std::string column = "0";
  int dim = 0;

  InputSpec spec() const {
    InputSpec s;
    s.path = path;
    if (!format.empty()) s.format = parse_input_format(format);
    if (dim != 0) s.dimension = dim;
    s.column = column;
    return s;
  }
};

void add_input(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("input", in.path, "Input file")->required();
  cmd->add_option("--format", in.format, "csv-column | whitespace-text | raw-f64-le | csv-matrix");
  cmd->add_option("--column", in.column, "Column name or 0-based index for csv-column input");
  cmd->add_option("--dim", in.dim, "Force dimensionality (1 or 2)")->check(CLI::IsMember({1, 2}));
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    std::cout.flush();
  } else {
    write_file(out, text);
  }
}

std::vector<MethodSpec> resolve_methods(const std::vector<std::string>& names, const Data& data) {
  const bool grid = std::holds_alternative<Grid>(data);
  std::vector<MethodSpec> methods;
  if (names.empty()) {
    methods.push_back(parse_method(grid ? "transect.var" : "madogram"));
    return methods;
  }
  for (const auto& n : names) {
    MethodSpec m = parse_method(n);
    if (m.two_dimensional() != grid) {
      throw Error(ErrorCode::ParseError, "method '" + m.label() + "' needs " + (grid ? "1D" : "2D") + " input but '" +
                                             n + "' was given " + (grid ? "a matrix" : "a series"));
    }
    methods.push_back(std::move(m));
  }
  return methods;
}

Estimate run_on(const Data& data, const MethodSpec& m) {
  try {
    return std::visit([&](const auto& d) { return run_method(d, m); }, data);
  } catch (const Error& e) {
    throw MethodFailure{m.label(), e};
  }
}

OutputRecord base_record(const std::string& path, const Data& data) {
  OutputRecord rec;
  rec.input = path;
  if (const auto* s = std::get_if<Series>(&data)) {
    rec.dimension = 1;
    rec.length = s->size();
  } else {
    rec.dimension = 2;
    rec.length = std::get<Grid>(data).values().size();
  }
  return rec;
}

const Series& need_series(const Data& data, const char* command) {
  const auto* s = std::get_if<Series>(&data);
  if (!s) throw Error(ErrorCode::ParseError, std::string(command) + " needs 1D input, got a matrix");
  return *s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractal dimension estimation for series and surfaces"};
  app.require_subcommand(1);
  std::size_t threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");

  // estimate
  InputOptions est_in;
  std::vector<std::string> est_methods;
  std::string est_out;
  std::string est_plot;
  auto* estimate = app.add_subcommand("estimate", "Estimate fractal dimension of a series or grid");
  add_input(estimate, est_in);
  estimate->add_option("--method,-m", est_methods, "name[:key=value]..., repeatable");
  estimate->add_option("--out,-o", est_out, "JSON output path (default stdout)");
  estimate->add_option("--plot", est_plot, "SVG log-log plot path");
  estimate->add_option("--threads", threads, "Worker threads");

  // window
  InputOptions win_in;
  std::vector<std::string> win_methods;
  std::size_t win_width = 1024;
  std::size_t win_step = 10;
  std::string win_out;
  std::string win_trace;
  auto* window = app.add_subcommand("window", "Sliding-window estimates along a series");
  add_input(window, win_in);
  window->add_option("--method,-m", win_methods, "name[:key=value]..., repeatable");
  window->add_option("--window", win_width, "Block width in samples")->capture_default_str();
  window->add_option("--step", win_step, "Offset between block starts")->capture_default_str();
  window->add_option("--out,-o", win_out, "JSON output path (default stdout)");
  window->add_option("--trace", win_trace, "CSV trace path (default <out>.trace.csv when --out is set)");
  window->add_option("--threads", threads, "Worker threads");

  // simulate
  std::string sim_family = "powered_exponential";
  double sim_alpha = 1.0;
  double sim_c = 1.0;
  double sim_tau = 1.0;
  double sim_variance = 1.0;
  std::size_t sim_n = 1024;
  std::size_t sim_n2 = 0;
  std::uint64_t sim_seed = 0;
  std::size_t sim_outliers = 0;
  double sim_outlier_sd = 0.1;
  std::string sim_format;
  std::string sim_out;
  auto* simulate = app.add_subcommand("simulate", "Draw a Gaussian path or field");
  simulate->add_option("--family", sim_family, "powered_exponential | cauchy | dagum | fbm")->capture_default_str();
  simulate->add_option("--alpha", sim_alpha, "Fractal index")->capture_default_str();
  simulate->add_option("--c", sim_c, "Range parameter")->capture_default_str();
  simulate->add_option("--tau", sim_tau, "Cauchy/Dagum tail parameter")->capture_default_str();
  simulate->add_option("--variance", sim_variance, "Sill")->capture_default_str();
  simulate->add_option("--n", sim_n, "Grid divisor; n + 1 points per axis")->capture_default_str();
  simulate->add_option("--n2", sim_n2, "Second axis divisor; simulates a field when set");
  simulate->add_option("--seed", sim_seed, "Seed")->capture_default_str();
  simulate->add_option("--outliers", sim_outliers, "Number of additive outliers");
  simulate->add_option("--outlier-sd", sim_outlier_sd, "Outlier standard deviation")->capture_default_str();
  simulate->add_option("--format", sim_format, "csv-column | whitespace-text | raw-f64-le | csv-matrix");
  simulate->add_option("--out,-o", sim_out, "Output path (default stdout)");

  // bootstrap
  InputOptions boot_in;
  std::string boot_method = "madogram";
  std::size_t boot_b = 200;
  double boot_level = 0.90;
  std::uint64_t boot_seed = 0;
  std::string boot_out;
  std::string boot_plot;
  auto* bootstrap = app.add_subcommand("bootstrap", "Parametric bootstrap interval for fd");
  add_input(bootstrap, boot_in);
  bootstrap->add_option("--method,-m", boot_method, "Estimator")->capture_default_str();
  bootstrap->add_option("--boot", boot_b, "Replicates B")->capture_default_str();
  bootstrap->add_option("--level", boot_level, "Interval level")->capture_default_str();
  bootstrap->add_option("--seed", boot_seed, "Seed")->capture_default_str();
  bootstrap->add_option("--out,-o", boot_out, "JSON output path (default stdout)");
  bootstrap->add_option("--plot", boot_plot, "SVG log-log plot of the point estimate");
  bootstrap->add_option("--threads", threads, "Worker threads");

  // experiment
  std::string exp_config;
  std::string exp_out;
  std::string exp_json;
  long exp_threads = -1;
  auto* experiment = app.add_subcommand("experiment", "Monte Carlo study from a JSON config");
  experiment->add_option("config", exp_config, "Study config (JSON)")->required();
  experiment->add_option("--out,-o", exp_out, "CSV output path (default stdout)");
  experiment->add_option("--json", exp_json, "JSON output path");
  experiment->add_option("--threads", exp_threads, "Worker threads (overrides the config)");

  // plot
  std::string plot_record;
  std::string plot_out;
  auto* plot = app.add_subcommand("plot", "Render the log-log diagnostics of a JSON record");
  plot->add_option("record", plot_record, "JSON record from estimate or bootstrap")->required();
  plot->add_option("--out,-o", plot_out, "SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << error_json(ErrorCode::InvalidParameters, e.what());
    return 2;
  }

  try {
    if (*estimate) {
      const Data data = load_input(est_in.spec());
      const auto methods = resolve_methods(est_methods, data);
      OutputRecord rec = base_record(est_in.path, data);
      for (const auto& m : methods) rec.estimates.push_back({m.label(), run_on(data, m)});
      emit(est_out, record_to_json(rec));
      if (!est_plot.empty()) emit_loglog_plot(panels_from(rec), est_plot);
    } else if (*window) {
      const Data data = load_input(win_in.spec());
      const Series& series = need_series(data, "window");
      WindowSpec spec;
      spec.width = win_width;
      spec.step = win_step;
      spec.methods = resolve_methods(win_methods, data);
      WindowTrace trace;
      trace.width = win_width;
      trace.step = win_step;
      for (const auto& m : spec.methods) trace.methods.push_back(m.label());
      trace.records = sliding_estimates(series, spec, threads);
      OutputRecord rec = base_record(win_in.path, data);
      rec.window = std::move(trace);
      emit(win_out, record_to_json(rec));
      std::string trace_path = win_trace;
      if (trace_path.empty() && !win_out.empty() && win_out != "-") trace_path = win_out + ".trace.csv";
      if (!trace_path.empty()) write_file(trace_path, window_trace_csv(*rec.window));
    } else if (*simulate) {
      CovarianceModel model{parse_family(sim_family), sim_alpha, sim_c, sim_tau, sim_variance};
      model.validate();
      if (sim_n < 1) throw Error(ErrorCode::InvalidParameters, "n must be at least 1");
      std::optional<Data> data;
      if (sim_n2 > 0) {
        Grid g = simulate_2d(model, sim_n, sim_n2, sim_seed);
        if (sim_outliers > 0) g = contaminate(g, {sim_outliers, sim_outlier_sd}, derive_seed(sim_seed, {0x6f75746cULL}));
        data.emplace(std::move(g));
      } else {
        Series s = simulate_1d(model, sim_n, sim_seed);
        if (sim_outliers > 0) s = contaminate(s, {sim_outliers, sim_outlier_sd}, derive_seed(sim_seed, {0x6f75746cULL}));
        data.emplace(std::move(s));
      }
      const bool grid = std::holds_alternative<Grid>(*data);
      InputFormat format = sim_format.empty() ? (sim_out.empty() ? (grid ? InputFormat::CsvMatrix : InputFormat::Text)
                                                                 : guess_format(sim_out, grid ? 2 : 1))
                                              : parse_input_format(sim_format);
      if (grid && (format == InputFormat::CsvColumn || format == InputFormat::Text)) format = InputFormat::CsvMatrix;
      if (!grid && format == InputFormat::CsvMatrix) {
        throw Error(ErrorCode::InvalidParameters, "csv-matrix output needs --n2");
      }
      switch (format) {
        case InputFormat::CsvColumn: emit(sim_out, series_to_csv(std::get<Series>(*data))); break;
        case InputFormat::Text: emit(sim_out, series_to_text(std::get<Series>(*data))); break;
        case InputFormat::CsvMatrix: emit(sim_out, grid_to_csv(std::get<Grid>(*data))); break;
        case InputFormat::RawF64:
          if (sim_out.empty() || sim_out == "-") throw Error(ErrorCode::InvalidParameters, "raw output needs --out");
          write_file(sim_out, grid ? grid_to_raw(std::get<Grid>(*data)) : series_to_raw(std::get<Series>(*data)));
          write_file(sim_out + ".json", raw_sidecar(*data));
          break;
      }
    } else if (*bootstrap) {
      const Data data = load_input(boot_in.spec());
      const Series& series = need_series(data, "bootstrap");
      BootstrapConfig cfg;
      cfg.method = resolve_methods({boot_method}, data).front();
      cfg.replicates = boot_b;
      cfg.level = boot_level;
      cfg.seed = boot_seed;
      cfg.threads = threads;
      BootstrapResult result;
      try {
        result = bootstrap_ci(series, cfg);
      } catch (const Error& e) {
        throw MethodFailure{cfg.method.label(), e};
      }
      OutputRecord rec = base_record(boot_in.path, data);
      rec.estimates.push_back({cfg.method.label(), result.point});
      rec.bootstrap = std::move(result);
      emit(boot_out, record_to_json(rec));
      if (!boot_plot.empty()) emit_loglog_plot(panels_from(rec), boot_plot);
    } else if (*experiment) {
      StudyConfig cfg = parse_study_config(read_file(exp_config));
      if (exp_threads >= 0) cfg.threads = static_cast<std::size_t>(exp_threads);
      const StudyResult result = run_study(cfg);
      emit(exp_out, study_to_csv(result));
      if (!exp_json.empty()) write_file(exp_json, study_to_json(result));
    } else if (*plot) {
      emit_loglog_plot(panels_from_json(read_file(plot_record)), plot_out);
    }
  } catch (const MethodFailure& f) {
    std::cerr << error_json(f.error.code(), f.error.what(), f.method);
    return exit_code(f.error.code());
  } catch (const Error& e) {
    std::cerr << error_json(e.code(), e.what());
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << error_json(ErrorCode::IoError, e.what());
    return 3;
  }
  return 0;
}
