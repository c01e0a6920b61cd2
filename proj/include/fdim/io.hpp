#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fdim/bootstrap.hpp"
#include "fdim/core.hpp"
#include "fdim/windowing.hpp"

namespace fractal {

enum class InputFormat { CsvColumn, Text, RawF64, CsvMatrix };

InputFormat parse_input_format(std::string_view name);
std::string_view to_string(InputFormat format);
/// .csv -> csv-column (csv-matrix when dimension is 2), .f64/.bin/.raw -> raw-f64-le, anything else text.
InputFormat guess_format(const std::string& path, int dimension);

struct InputSpec {
  std::string path;
  std::optional<InputFormat> format;
  /// 1 or 2; unset means "whatever the format gives".
  std::optional<int> dimension;
  /// Column for csv-column input: a header name or a 0-based index.
  std::string column = "0";
};

using Data = std::variant<Series, Grid>;

std::vector<double> parse_csv_column(std::string_view text, const std::string& column);
std::vector<double> parse_text_values(std::string_view text);
Grid parse_csv_matrix(std::string_view text);

Data load_input(const InputSpec& spec);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view bytes);

/// Every value printed with 17 significant digits, so reading it back is exact.
std::string format_double(double v);
std::string series_to_csv(const Series& series);
std::string series_to_text(const Series& series);
std::string grid_to_csv(const Grid& grid);
/// Little-endian doubles plus the sidecar document that goes next to them.
std::string series_to_raw(const Series& series);
std::string grid_to_raw(const Grid& grid);
std::string raw_sidecar(const Data& data);

struct MethodOutcome {
  std::string method;
  std::variant<Estimate, BlockError> result;
};

struct WindowTrace {
  std::size_t width = 0;
  std::size_t step = 0;
  std::vector<std::string> methods;
  std::vector<WindowRecord> records;
};

struct OutputRecord {
  std::string input;
  int dimension = 1;
  std::size_t length = 0;
  std::vector<MethodOutcome> estimates;
  std::optional<WindowTrace> window;
  std::optional<BootstrapResult> bootstrap;
};

inline constexpr int kSchemaVersion = 1;

std::string record_to_json(const OutputRecord& record);
/// midpoint,start,method,fd,error
std::string window_trace_csv(const WindowTrace& trace);

/// One estimator's log-log diagnostics as read back from a JSON record.
struct PlotPanel {
  std::string method;
  double fd = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<LogLogPoint> used;
  std::vector<LogLogPoint> excluded;
};

PlotPanel panel_from(const MethodOutcome& outcome);
std::vector<PlotPanel> panels_from(const OutputRecord& record);
std::vector<PlotPanel> panels_from_json(std::string_view json_text);

std::string error_json(ErrorCode code, std::string_view message, std::string_view method = {});
/// 2 usage, 3 data, 4 numeric degeneracy.
int exit_code(ErrorCode code);

}  // namespace fractal
