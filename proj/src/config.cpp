#include "aniso/config.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "aniso/io.hpp"
#include "aniso/util.hpp"

namespace aniso {

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_number(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  if (s.empty()) throw config_error("empty number for key: " + key);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw config_error("not a number for key " + key + ": '" + s + "'");
  return v;
}

}  // namespace

Config Config::from_text(std::string text) {
  Config c;
  c.text_ = std::move(text);
  std::istringstream in(c.text_);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto cut = line.find_first_of("#;");
    if (cut != std::string::npos) line.erase(cut);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3)
        throw config_error("line " + std::to_string(lineno) + ": malformed section header");
      section = lower(trim(line.substr(1, line.size() - 2)));
      if (section.empty())
        throw config_error("line " + std::to_string(lineno) + ": empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("line " + std::to_string(lineno) + ": expected `key = value`");
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw config_error("line " + std::to_string(lineno) + ": empty key");
    if (section.empty())
      throw config_error("line " + std::to_string(lineno) + ": key outside any [section]");
    c.kv_[section + "." + key] = value;
  }
  return c;
}

Config Config::from_file(const std::string& path) {
  std::string bytes;
  try {
    bytes = read_text_file(path);
  } catch (const std::exception& e) {
    throw config_error(e.what());
  }
  return from_text(std::move(bytes));
}

bool Config::has(const std::string& key) const { return kv_.count(lower(key)) > 0; }

const std::string& Config::get(const std::string& key) const {
  const auto it = kv_.find(lower(key));
  if (it == kv_.end()) throw config_error("missing config key: " + key);
  return it->second;
}

std::string Config::get(const std::string& key, const std::string& fallback) const {
  const auto it = kv_.find(lower(key));
  return it == kv_.end() ? fallback : it->second;
}

double Config::number(const std::string& key) const { return parse_number(key, get(key)); }

double Config::number(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

int Config::integer(const std::string& key, int fallback) const {
  if (!has(key)) return fallback;
  const double v = number(key);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    throw config_error("expected an integer for key " + key);
  return i;
}

bool Config::flag(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string v = lower(trim(get(key)));
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw config_error("expected a boolean for key " + key + ": '" + v + "'");
}

std::vector<double> Config::list(const std::string& key) const {
  const std::string& raw = get(key);
  std::vector<double> out;
  std::string item;
  std::istringstream in(raw);
  while (std::getline(in, item, ',')) out.push_back(parse_number(key, item));
  if (out.empty()) throw config_error("empty list for key: " + key);
  return out;
}

std::vector<double> Config::list(const std::string& key, std::vector<double> fallback) const {
  return has(key) ? list(key) : std::move(fallback);
}

std::uint64_t Config::hash() const { return fnv1a64(text_); }

FinslerNorm norm_from_config(const Config& c) {
  const std::string kind = lower(c.get("norm.kind", "euclidean"));
  try {
    if (kind == "euclidean") return FinslerNorm::euclidean(2);
    if (kind == "weighted_q") {
      if (!c.has("norm.q")) throw config_error("weighted_q norm needs norm.q");
      const auto w = c.list("norm.weights", {1.0, 1.0});
      if (w.size() != 2)
        throw config_error("norm.weights needs exactly 2 entries in the plane");
      return FinslerNorm::weighted_q(c.number("norm.q"), w);
    }
    if (kind == "quadratic") {
      const auto m = c.list("norm.matrix");
      if (m.size() != 4)
        throw config_error("norm.matrix needs 4 row-major entries in the plane");
      return FinslerNorm::quadratic(2, m);
    }
  } catch (const std::invalid_argument& e) {
    throw config_error(std::string("invalid [norm] section: ") + e.what());
  }
  throw config_error("unknown norm.kind: " + kind);
}

AnalyticDomain domain_from_config(const Config& c, const FinslerNorm& F) {
  const std::string family = lower(c.get("domain.family", "wulff"));
  const std::array<double, 2> center = {c.number("domain.center_x", 0.0),
                                        c.number("domain.center_y", 0.0)};
  try {
    if (family == "wulff")
      return AnalyticDomain::wulff(F, c.number("domain.r", 1.0), center);
    if (family == "ellipse")
      return AnalyticDomain::ellipse(c.number("domain.a"), c.number("domain.b"), center);
    if (family == "rectangle")
      return AnalyticDomain::rectangle(c.number("domain.width"), c.number("domain.height"),
                                       center);
    if (family == "annulus")
      return AnalyticDomain::annulus(F, c.number("domain.r_inner"),
                                     c.number("domain.r_outer"), center);
  } catch (const std::invalid_argument& e) {
    throw config_error(std::string("invalid [domain] section: ") + e.what());
  }
  throw config_error("unknown domain.family: " + family);
}

SolverOptions solver_from_config(const Config& c) {
  SolverOptions o;
  o.tol = c.number("solver.tol", o.tol);
  o.max_outer = c.integer("solver.max_outer", o.max_outer);
  o.max_inner = c.integer("solver.max_inner", o.max_inner);
  o.thresholds = c.integer("solver.thresholds", o.thresholds);
  o.annulus_scan = c.flag("solver.annulus_scan", o.annulus_scan);
  o.descent_tol = c.number("solver.descent_tol", o.descent_tol);
  o.descent_max_iter = c.integer("solver.descent_max_iter", o.descent_max_iter);
  if (!(o.tol > 0) || !(o.descent_tol > 0))
    throw config_error("solver tolerances must be positive");
  if (o.max_outer < 1 || o.max_inner < 1 || o.thresholds < 2 || o.descent_max_iter < 1)
    throw config_error("solver iteration counts must be positive");
  return o;
}

}  // namespace aniso
