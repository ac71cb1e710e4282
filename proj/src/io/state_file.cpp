#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rotomo/io.hpp"

namespace rotomo::io {

std::string state_to_json(const DensityBlock& block) {
  nlohmann::json doc;
  doc["k"] = block.k();
  doc["m"] = block.m();
  doc["j_max"] = block.j_max();
  nlohmann::json entries = nlohmann::json::array();
  for (int j1 = block.j_min(); j1 <= block.j_max(); ++j1) {
    for (int j2 = j1; j2 <= block.j_max(); ++j2) {
      const std::complex<double> v = block(j1, j2);
      if (v == 0.0) continue;
      entries.push_back({j1, j2, v.real(), v.imag()});
    }
  }
  doc["entries"] = std::move(entries);
  return doc.dump(1) + "\n";
}

DensityBlock state_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("state file: ") + e.what());
  }
  auto field = [&](const char* name) -> int {
    if (!doc.contains(name) || !doc[name].is_number_integer()) {
      throw ParseError(std::string("state file: missing or non-integer field '") + name + "'");
    }
    return doc[name].get<int>();
  };
  const int k = field("k");
  const int m = field("m");
  const int j_max = field("j_max");
  if (!doc.contains("entries") || !doc["entries"].is_array()) throw ParseError("state file: missing array field 'entries'");

  DensityBlock block(k, m, j_max);
  std::size_t idx = 0;
  for (const auto& entry : doc["entries"]) {
    const std::string where = "state file: entries[" + std::to_string(idx++) + "]";
    if (!entry.is_array() || entry.size() != 4 || !entry[0].is_number_integer() || !entry[1].is_number_integer() ||
        !entry[2].is_number() || !entry[3].is_number()) {
      throw ParseError(where + ": expected [J1, J2, re, im]");
    }
    const int j1 = entry[0].get<int>();
    const int j2 = entry[1].get<int>();
    if (j1 > j2) throw ParseError(where + ": only the upper triangle (J1 <= J2) may be listed");
    if (j1 < block.j_min() || j2 > j_max) throw ParseError(where + ": index outside [M_km, j_max]");
    const double im = entry[3].get<double>();
    if (j1 == j2 && std::abs(im) > 1e-12) throw ParseError(where + ": diagonal element must be real");
    block.set(j1, j2, {entry[2].get<double>(), im});
  }
  return block;
}

void write_state(const std::filesystem::path& path, const DensityBlock& block) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << state_to_json(block);
}

DensityBlock read_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return state_from_json(buf.str());
}

}  // namespace rotomo::io
