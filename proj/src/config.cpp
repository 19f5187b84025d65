#include "rlelcs/config.hpp"

#include <fstream>
#include <istream>

#include "rlelcs/errors.hpp"

namespace rlelcs {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::int64_t to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ParameterError("config key '" + key + "' expects an integer, got '" + v + "'");
  }
}

}  // namespace

KeyValues parse_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  std::int64_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", number);
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError("empty key", number);
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

KeyValues load_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file " + path, 0);
  return parse_key_values(in);
}

void SolverConfig::apply(const KeyValues& kv) {
  cost.apply(kv);
  for (const auto& [key, value] : kv) {
    if (key == "d_min") d_min = to_int(key, value);
    else if (key == "r_constant") r_constant = std::stod(value);
    else if (key == "step_budget") step_budget = to_int(key, value);
    else if (key == "mode") mode = parse_walk_mode(value);
    else if (key == "anchors") scheme = parse_anchor_scheme(value);
    else if (key == "seed") seed = static_cast<std::uint64_t>(to_int(key, value));
  }
  if (d_min < 1) throw ParameterError("d_min must be positive");
  if (!(r_constant > 0)) throw ParameterError("r_constant must be positive");
  if (step_budget < 0) throw ParameterError("step_budget must be non-negative");
}

}  // namespace rlelcs
