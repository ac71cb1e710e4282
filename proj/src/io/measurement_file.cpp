#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string_view>
#include <vector>

#include "rotomo/io.hpp"

namespace rotomo::io {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view text, const std::string& where) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(where + ": cannot parse real from '" + std::string(text) + "'");
  }
  return value;
}

long parse_integer(std::string_view text, const std::string& where) {
  text = trim(text);
  long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(where + ": cannot parse integer from '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    parts.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

std::string format_real(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string measurement_to_csv(const MeasurementGrid& grid) {
  std::string out;
  out.reserve(grid.values.size() * 64 + 128);
  out += "# omega=" + format_real(grid.omega) + ", kind=" + std::string(to_string(grid.kind)) +
         ", k=" + std::to_string(grid.k) + ", m=" + std::to_string(grid.m) + ", n_t=" + std::to_string(grid.n_t) +
         ", n_x=" + std::to_string(grid.n_x()) + ", n_periods=" + std::to_string(grid.n_periods) + "\n";
  for (int it = 0; it < grid.n_t; ++it) {
    const std::string t = format_real(grid.time(it));
    for (int j = 0; j < grid.n_x(); ++j) {
      out += t;
      out += ", ";
      out += format_real(grid.x_grid.nodes[j]);
      out += ", ";
      out += format_real(grid.x_grid.weights[j]);
      out += ", ";
      out += format_real(grid.at(it, j));
      out += "\n";
    }
  }
  return out;
}

MeasurementGrid measurement_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  MeasurementGrid grid;

  // Header.
  if (!std::getline(in, line)) throw ParseError("measurement file: empty");
  ++line_no;
  std::string_view header = trim(line);
  if (header.empty() || header.front() != '#') throw ParseError("measurement file line 1: expected '# omega=..., ...' header");
  header.remove_prefix(1);
  bool seen[7] = {};
  const char* names[7] = {"omega", "kind", "k", "m", "n_t", "n_x", "n_periods"};
  long n_x = 0;
  for (std::string_view item : split(header, ',')) {
    item = trim(item);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw ParseError("measurement file line 1: malformed header field '" + std::string(item) + "'");
    const std::string_view key = trim(item.substr(0, eq));
    const std::string_view value = trim(item.substr(eq + 1));
    const std::string where = "measurement file line 1 field '" + std::string(key) + "'";
    int slot = -1;
    for (int i = 0; i < 7; ++i) {
      if (key == names[i]) slot = i;
    }
    if (slot < 0) throw ParseError(where + ": unknown header field");
    seen[slot] = true;
    switch (slot) {
      case 0: grid.omega = parse_real(value, where); break;
      case 1:
        try {
          grid.kind = parse_rotor_kind(value);
        } catch (const std::invalid_argument& e) {
          throw ParseError(where + ": " + e.what());
        }
        break;
      case 2: grid.k = static_cast<int>(parse_integer(value, where)); break;
      case 3: grid.m = static_cast<int>(parse_integer(value, where)); break;
      case 4: grid.n_t = static_cast<int>(parse_integer(value, where)); break;
      case 5: n_x = parse_integer(value, where); break;
      case 6: grid.n_periods = static_cast<int>(parse_integer(value, where)); break;
    }
  }
  for (int i = 0; i < 7; ++i) {
    if (!seen[i]) throw ParseError(std::string("measurement file line 1: missing header field '") + names[i] + "'");
  }
  if (!(grid.omega > 0.0) || grid.n_t < 1 || n_x < 1 || grid.n_periods < 1) {
    throw ParseError("measurement file line 1: omega, n_t, n_x and n_periods must be positive");
  }
  grid.period = std::numbers::pi / grid.omega;
  grid.x_grid.nodes.assign(n_x, 0.0);
  grid.x_grid.weights.assign(n_x, 0.0);
  grid.values.assign(static_cast<std::size_t>(grid.n_t) * n_x, 0.0);

  const double dt = grid.dt();
  long row = 0;
  const long expected = static_cast<long>(grid.n_t) * n_x;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const std::string where = "measurement file line " + std::to_string(line_no);
    if (row >= expected) throw ParseError(where + ": more rows than n_t * n_x = " + std::to_string(expected));
    const auto cols = split(body, ',');
    if (cols.size() != 4) throw ParseError(where + ": expected 4 columns 't, x, weight, pr'");
    const int it = static_cast<int>(row / n_x);
    const int j = static_cast<int>(row % n_x);
    const double t = parse_real(cols[0], where + " column t");
    const double x = parse_real(cols[1], where + " column x");
    const double w = parse_real(cols[2], where + " column weight");
    const double pr = parse_real(cols[3], where + " column pr");
    if (std::abs(t - it * dt) > 1e-12 * std::max(1.0, std::abs(it * dt))) {
      throw ParseError(where + " column t: expected t = " + format_real(it * dt));
    }
    if (it == 0) {
      if (!(x >= -1.0 && x <= 1.0) || !(w > 0.0)) throw ParseError(where + ": node outside [-1, 1] or non-positive weight");
      grid.x_grid.nodes[j] = x;
      grid.x_grid.weights[j] = w;
    } else if (x != grid.x_grid.nodes[j] || w != grid.x_grid.weights[j]) {
      throw ParseError(where + ": x grid differs from the first time slice");
    }
    grid.values[row] = pr;
    ++row;
  }
  if (row != expected) {
    throw ParseError("measurement file: found " + std::to_string(row) + " data rows, expected n_t * n_x = " + std::to_string(expected));
  }
  return grid;
}

void write_measurement(const std::filesystem::path& path, const MeasurementGrid& grid) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << measurement_to_csv(grid);
}

MeasurementGrid read_measurement(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return measurement_from_csv(buf.str());
}

}  // namespace rotomo::io
