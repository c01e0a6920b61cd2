#include "fdim/io.hpp"

#include <json.hpp>

#include <bit>
#include <cctype>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace fractal {

using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  s = s.substr(first, last - first + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    lines.push_back(text.substr(pos, end - pos));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return fields;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

double need_finite(std::optional<double> v, std::string_view raw, std::size_t line) {
  if (!v) parse_fail(line, "'" + std::string(trim(raw)) + "' is not a number");
  if (!std::isfinite(*v)) parse_fail(line, "non-finite value");
  return *v;
}

std::string extension(const std::string& path) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return {};
  std::string ext = path.substr(dot + 1);
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext;
}

std::vector<double> decode_raw(const std::string& bytes) {
  if (bytes.size() % 8 != 0) throw Error(ErrorCode::ParseError, "raw input size is not a multiple of 8 bytes");
  std::vector<double> out(bytes.size() / 8);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint64_t bits = 0;
    for (int b = 7; b >= 0; --b) bits = (bits << 8) | static_cast<unsigned char>(bytes[i * 8 + b]);
    out[i] = std::bit_cast<double>(bits);
  }
  return out;
}

std::string encode_raw(std::span<const double> values) {
  std::string out(values.size() * 8, '\0');
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto bits = std::bit_cast<std::uint64_t>(values[i]);
    for (int b = 0; b < 8; ++b) {
      out[i * 8 + b] = static_cast<char>(bits & 0xff);
      bits >>= 8;
    }
  }
  return out;
}

json points_json(const std::vector<LogLogPoint>& points, bool used) {
  json out = json::array();
  for (const auto& pt : points) out.push_back({{"s", pt.s}, {"y", pt.y}, {"used", used}});
  return out;
}

json estimate_json(const Estimate& e) {
  json points = points_json(e.fit.points, true);
  for (auto& pt : points_json(e.excluded, false)) points.push_back(std::move(pt));
  json out = {{"method", e.method},
              {"fd", e.fd},
              {"scale", e.scale},
              {"p", e.p ? json(*e.p) : json(nullptr)},
              {"slope", e.fit.slope},
              {"intercept", e.fit.intercept},
              {"points", points},
              {"warnings", e.warnings}};
  if (!e.fit.weights.empty()) out["weights"] = e.fit.weights;
  return out;
}

json error_object(ErrorCode code, std::string_view message) {
  return {{"code", std::string(to_string(code))}, {"message", std::string(message)}};
}

}  // namespace

InputFormat parse_input_format(std::string_view name) {
  if (name == "csv-column" || name == "csv") return InputFormat::CsvColumn;
  if (name == "whitespace-text" || name == "text") return InputFormat::Text;
  if (name == "raw-f64-le" || name == "raw") return InputFormat::RawF64;
  if (name == "csv-matrix" || name == "matrix") return InputFormat::CsvMatrix;
  throw Error(ErrorCode::InvalidParameters, "unknown format '" + std::string(name) + "'");
}

std::string_view to_string(InputFormat format) {
  switch (format) {
    case InputFormat::CsvColumn: return "csv-column";
    case InputFormat::Text: return "whitespace-text";
    case InputFormat::RawF64: return "raw-f64-le";
    case InputFormat::CsvMatrix: return "csv-matrix";
  }
  return "?";
}

InputFormat guess_format(const std::string& path, int dimension) {
  const std::string ext = extension(path);
  if (ext == "csv") return dimension == 2 ? InputFormat::CsvMatrix : InputFormat::CsvColumn;
  if (ext == "f64" || ext == "bin" || ext == "raw") return InputFormat::RawF64;
  return InputFormat::Text;
}

std::vector<double> parse_csv_column(std::string_view text, const std::string& column) {
  const auto lines = split_lines(text);
  std::optional<std::size_t> index;
  if (auto v = to_double(column); v && *v >= 0 && std::floor(*v) == *v) index = static_cast<std::size_t>(*v);

  std::vector<double> values;
  bool first = true;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    if (trim(lines[ln]).empty()) continue;
    const auto fields = split_fields(lines[ln]);
    if (first) {
      first = false;
      // a header is a first row whose selected cell is not numeric
      bool header = false;
      if (!index) {
        for (std::size_t k = 0; k < fields.size(); ++k) {
          if (trim(fields[k]) == column) {
            index = k;
            header = true;
            break;
          }
        }
        if (!index) throw Error(ErrorCode::ParseError, "no column named '" + column + "'");
      } else if (*index < fields.size() && !to_double(fields[*index])) {
        header = true;
      }
      if (header) continue;
    }
    if (*index >= fields.size()) parse_fail(ln + 1, "missing column " + std::to_string(*index));
    values.push_back(need_finite(to_double(fields[*index]), fields[*index], ln + 1));
  }
  return values;
}

std::vector<double> parse_text_values(std::string_view text) {
  std::vector<double> values;
  const auto lines = split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    std::string_view line = lines[ln];
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      if (pos >= line.size()) break;
      std::size_t end = pos;
      while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
      const auto token = line.substr(pos, end - pos);
      values.push_back(need_finite(to_double(token), token, ln + 1));
      pos = end;
    }
  }
  return values;
}

Grid parse_csv_matrix(std::string_view text) {
  const auto lines = split_lines(text);
  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t cols = 0;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    if (trim(lines[ln]).empty()) continue;
    const auto fields = split_fields(lines[ln]);
    if (rows == 0) {
      cols = fields.size();
    } else if (fields.size() != cols) {
      parse_fail(ln + 1, "expected " + std::to_string(cols) + " fields, found " + std::to_string(fields.size()));
    }
    for (auto f : fields) values.push_back(need_finite(to_double(f), f, ln + 1));
    ++rows;
  }
  if (rows < 2 || cols < 2) throw Error(ErrorCode::ParseError, "matrix input needs at least 2 rows and 2 columns");
  return Grid(rows, cols, std::move(values));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "': " + std::strerror(errno));
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IoError, "read failed on '" + path + "'");
  return buf.str();
}

void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "': " + std::strerror(errno));
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed on '" + path + "'");
}

Data load_input(const InputSpec& spec) {
  const int dim_hint = spec.dimension.value_or(1);
  const InputFormat format = spec.format.value_or(guess_format(spec.path, dim_hint));
  if (spec.dimension == 2 && (format == InputFormat::CsvColumn || format == InputFormat::Text)) {
    throw Error(ErrorCode::ParseError, std::string(to_string(format)) + " input is one-dimensional");
  }
  if (spec.dimension == 1 && format == InputFormat::CsvMatrix) {
    throw Error(ErrorCode::ParseError, "csv-matrix input is two-dimensional");
  }
  const std::string text = read_file(spec.path);
  auto series = [](std::vector<double> v) -> Data {
    if (v.size() < 2) throw Error(ErrorCode::ParseError, "input holds fewer than 2 values");
    return Series(std::move(v));
  };

  switch (format) {
    case InputFormat::CsvColumn: return series(parse_csv_column(text, spec.column));
    case InputFormat::Text: return series(parse_text_values(text));
    case InputFormat::CsvMatrix: return parse_csv_matrix(text);
    case InputFormat::RawF64: {
      json side;
      try {
        side = json::parse(read_file(spec.path + ".json"));
      } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("raw sidecar: ") + e.what());
      }
      std::vector<double> values = decode_raw(text);
      for (double v : values) {
        if (!std::isfinite(v)) throw Error(ErrorCode::ParseError, "raw input holds a non-finite value");
      }
      try {
        if (side.contains("rows")) {
          const auto rows = side.at("rows").get<std::size_t>();
          const auto cols = side.at("cols").get<std::size_t>();
          if (spec.dimension == 1) throw Error(ErrorCode::ParseError, "raw sidecar describes a matrix");
          if (rows * cols != values.size()) throw Error(ErrorCode::ParseError, "raw sidecar shape does not match file size");
          if (rows < 2 || cols < 2) throw Error(ErrorCode::ParseError, "matrix input needs at least 2 rows and 2 columns");
          return Grid(rows, cols, std::move(values));
        }
        const auto length = side.at("length").get<std::size_t>();
        if (spec.dimension == 2) throw Error(ErrorCode::ParseError, "raw sidecar describes a series");
        if (length != values.size()) throw Error(ErrorCode::ParseError, "raw sidecar length does not match file size");
      } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("raw sidecar: ") + e.what());
      }
      return series(std::move(values));
    }
  }
  throw Error(ErrorCode::ParseError, "unsupported format");
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string series_to_csv(const Series& series) {
  std::string out = "x\n";
  for (double v : series.values()) {
    out += format_double(v);
    out += '\n';
  }
  return out;
}

std::string series_to_text(const Series& series) {
  std::string out;
  for (double v : series.values()) {
    out += format_double(v);
    out += '\n';
  }
  return out;
}

std::string grid_to_csv(const Grid& grid) {
  std::string out;
  for (std::size_t i = 0; i < grid.rows(); ++i) {
    for (std::size_t j = 0; j < grid.cols(); ++j) {
      if (j) out += ',';
      out += format_double(grid(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string series_to_raw(const Series& series) { return encode_raw(series.values()); }
std::string grid_to_raw(const Grid& grid) { return encode_raw(grid.values()); }

std::string raw_sidecar(const Data& data) {
  if (const auto* s = std::get_if<Series>(&data)) return json{{"length", s->size()}}.dump() + "\n";
  const auto& g = std::get<Grid>(data);
  return json{{"cols", g.cols()}, {"rows", g.rows()}}.dump() + "\n";
}

std::string record_to_json(const OutputRecord& record) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["input"] = record.input;
  doc["dimension"] = record.dimension;
  doc["length"] = record.length;
  json estimates = json::array();
  for (const auto& m : record.estimates) {
    if (const auto* e = std::get_if<Estimate>(&m.result)) {
      json item = estimate_json(*e);
      item["label"] = m.method;
      estimates.push_back(std::move(item));
    } else {
      const auto& err = std::get<BlockError>(m.result);
      estimates.push_back({{"label", m.method}, {"error", error_object(err.code, err.message)}});
    }
  }
  doc["estimates"] = std::move(estimates);

  if (record.window) {
    const auto& w = *record.window;
    json blocks = json::array();
    for (const auto& rec : w.records) {
      json results = json::array();
      for (std::size_t k = 0; k < rec.results.size(); ++k) {
        if (const auto* e = std::get_if<Estimate>(&rec.results[k])) {
          results.push_back({{"method", w.methods[k]}, {"fd", e->fd}, {"scale", e->scale}});
        } else {
          const auto& err = std::get<BlockError>(rec.results[k]);
          results.push_back({{"method", w.methods[k]}, {"error", error_object(err.code, err.message)}});
        }
      }
      blocks.push_back({{"start", rec.start}, {"midpoint", rec.midpoint}, {"results", std::move(results)}});
    }
    doc["window"] = {{"width", w.width}, {"step", w.step}, {"methods", w.methods}, {"blocks", std::move(blocks)}};
  }

  if (record.bootstrap) {
    const auto& b = *record.bootstrap;
    doc["bootstrap"] = {{"method", b.point.method},
                        {"fd", b.point.fd},
                        {"level", b.level},
                        {"lower", b.lower},
                        {"upper", b.upper},
                        {"replicates", b.replicates},
                        {"failures", b.failures},
                        {"alpha", b.alpha},
                        {"range", b.range},
                        {"estimates", b.boot_estimates},
                        {"warnings", b.warnings}};
  }
  return doc.dump(2) + "\n";
}

std::string window_trace_csv(const WindowTrace& trace) {
  std::string out = "midpoint,start,method,fd,error\n";
  for (const auto& rec : trace.records) {
    for (std::size_t k = 0; k < rec.results.size(); ++k) {
      out += std::to_string(rec.midpoint) + ',' + std::to_string(rec.start) + ',' + trace.methods[k] + ',';
      if (const auto* e = std::get_if<Estimate>(&rec.results[k])) {
        out += format_double(e->fd) + ",\n";
      } else {
        out += "nan," + std::string(to_string(std::get<BlockError>(rec.results[k]).code)) + '\n';
      }
    }
  }
  return out;
}

PlotPanel panel_from(const MethodOutcome& outcome) {
  const auto* e = std::get_if<Estimate>(&outcome.result);
  if (!e) throw Error(ErrorCode::InvalidInput, "method '" + outcome.method + "' has no estimate to plot");
  return PlotPanel{outcome.method, e->fd, e->fit.slope, e->fit.intercept, e->fit.points, e->excluded};
}

std::vector<PlotPanel> panels_from(const OutputRecord& record) {
  std::vector<PlotPanel> panels;
  for (const auto& m : record.estimates) {
    if (std::holds_alternative<Estimate>(m.result)) panels.push_back(panel_from(m));
  }
  return panels;
}

std::vector<PlotPanel> panels_from_json(std::string_view json_text) {
  std::vector<PlotPanel> panels;
  try {
    const json doc = json::parse(json_text);
    if (!doc.contains("estimates")) return panels;
    for (const auto& item : doc.at("estimates")) {
      if (item.contains("error")) continue;
      PlotPanel p;
      p.method = item.value("label", item.value("method", std::string()));
      p.fd = item.at("fd").get<double>();
      p.slope = item.at("slope").get<double>();
      p.intercept = item.at("intercept").get<double>();
      for (const auto& pt : item.at("points")) {
        const LogLogPoint point{pt.at("s").get<double>(), pt.at("y").get<double>()};
        (pt.value("used", true) ? p.used : p.excluded).push_back(point);
      }
      panels.push_back(std::move(p));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("record: ") + e.what());
  }
  return panels;
}

std::string error_json(ErrorCode code, std::string_view message, std::string_view method) {
  json err = error_object(code, message);
  if (!method.empty()) err["method"] = std::string(method);
  err["exit_code"] = exit_code(code);
  return json{{"error", err}}.dump() + "\n";
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameters:
      return 2;
    case ErrorCode::InvalidInput:
    case ErrorCode::ParseError:
    case ErrorCode::IoError:
    case ErrorCode::SeriesTooShort:
    case ErrorCode::LagOutOfRange:
    case ErrorCode::WindowTooLarge:
      return 3;
    case ErrorCode::DegenerateRegression:
    case ErrorCode::DegenerateSeries:
    case ErrorCode::DegenerateGrid:
    case ErrorCode::InsufficientScales:
    case ErrorCode::NoPairs:
    case ErrorCode::AllTransectsDegenerate:
    case ErrorCode::EmbeddingFailure:
    case ErrorCode::EstimateOutOfRange:
      return 4;
  }
  return 1;
}

}  // namespace fractal
