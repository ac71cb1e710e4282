#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

#include "rotomo/io.hpp"

namespace rotomo::io {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <class T>
T parse_number(std::string_view text, const std::string& where) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(where + ": cannot parse '" + std::string(text) + "'");
  }
  return value;
}

bool parse_bool(std::string_view text, const std::string& where) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ParseError(where + ": expected true or false, got '" + std::string(text) + "'");
}

}  // namespace

ExperimentConfig config_from_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = line;
    if (const std::size_t hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    const std::size_t eq = body.find('=');
    if (eq == std::string_view::npos) throw ParseError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key(trim(body.substr(0, eq)));
    const std::string_view value = trim(body.substr(eq + 1));
    const std::string where = "config line " + std::to_string(line_no) + " key '" + key + "'";

    if (key == "spec.kind") {
      try {
        cfg.spec.kind = parse_rotor_kind(value);
      } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what());
      }
    } else if (key == "spec.omega") {
      cfg.spec.omega = parse_number<double>(value, where);
    } else if (key == "spec.omega2") {
      cfg.spec.omega2 = parse_number<double>(value, where);
    } else if (key == "spec.d_cd") {
      cfg.spec.d_cd = parse_number<double>(value, where);
    } else if (key == "spec.k") {
      cfg.spec.k = parse_number<int>(value, where);
    } else if (key == "spec.m") {
      cfg.spec.m = parse_number<int>(value, where);
    } else if (key == "j_max") {
      cfg.j_max = parse_number<int>(value, where);
    } else if (key == "sampling.n_periods") {
      cfg.sampling.n_periods = parse_number<int>(value, where);
    } else if (key == "sampling.n_t") {
      cfg.sampling.n_t = parse_number<int>(value, where);
    } else if (key == "sampling.n_x") {
      cfg.sampling.n_x = parse_number<int>(value, where);
    } else if (key == "sampling.j_search_cap") {
      cfg.sampling.j_search_cap = parse_number<int>(value, where);
    } else if (key == "noise.samples_per_time") {
      if (!cfg.noise) cfg.noise.emplace();
      cfg.noise->samples_per_time = parse_number<std::int64_t>(value, where);
    } else if (key == "noise.seed") {
      if (!cfg.noise) cfg.noise.emplace();
      cfg.noise->seed = parse_number<std::uint64_t>(value, where);
    } else if (key == "state.kind") {
      try {
        cfg.state_kind = parse_state_kind(value);
      } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what());
      }
    } else if (key == "state.kick") {
      cfg.kick_strength = parse_number<double>(value, where);
    } else if (key == "seed") {
      cfg.seed = parse_number<std::uint64_t>(value, where);
    } else if (key == "threshold") {
      cfg.threshold = parse_number<double>(value, where);
    } else if (key == "reconstruct.project_psd") {
      cfg.project_psd = parse_bool(value, where);
    } else {
      throw ParseError(where + ": unknown key");
    }
  }
  if (cfg.noise && cfg.noise->samples_per_time <= 0) cfg.noise.reset();
  if (cfg.j_max < 0) throw ParseError("config: j_max must be >= 0");
  return cfg;
}

ExperimentConfig read_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_text(buf.str());
}

}  // namespace rotomo::io
