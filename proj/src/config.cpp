#include "pmc/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "pmc/error.hpp"

namespace pmc {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
  throw Error("config: " + path + ": " + msg);
}

long get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<long>();
}

std::vector<long> get_ints(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) bad(path, "expected a nonempty array of integers");
  std::vector<long> out;
  for (const auto& v : j) out.push_back(get_int(v, path));
  return out;
}

bool small_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

TowerSpec parse_tower(const std::string& name, const json& j) {
  const std::string at = "towers." + name;
  if (!j.is_object()) bad(at, "expected a table");
  TowerSpec t;
  t.name = name;
  for (const auto& [key, val] : j.items()) {
    if (key == "p") {
      t.p = get_int(val, at + ".p");
    } else if (key == "top") {
      if (!val.is_string()) bad(at + ".top", "expected a field name");
      t.top = val.get<std::string>();
    } else if (key == "s") {
      t.s = get_ints(val, at + ".s");
    } else if (key == "f") {
      t.f = get_int(val, at + ".f");
    } else if (key == "levels") {
      t.levels = get_ints(val, at + ".levels");
    } else if (key == "ks") {
      for (long k : get_ints(val, at + ".ks")) {
        if (k <= 0) bad(at + ".ks", "weights must be positive");
        t.ks.push_back(static_cast<unsigned long>(k));
      }
    } else {
      bad(at + "." + key, "unknown field");
    }
  }
  return t;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"claim",     "hio",       "dr",
                                                 "pseudomeasure", "special-g", "four-star",
                                                 "prop9",     "theorem"};
  return names;
}

RunConfig default_config() {
  RunConfig cfg;
  cfg.checks = suite_names();
  cfg.towers = {
      {"t1", 2, "Qrt5", {2, 5}, 20, {40}, {2, 4}},
      {"t2", 3, "Qz7p", {3, 7}, 63, {189}, {2, 4}},
  };
  return cfg;
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw Error("config: top level must be a table");

  RunConfig cfg = default_config();
  for (const auto& [key, val] : j.items()) {
    if (key == "seed") {
      long s = get_int(val, "seed");
      if (s < 0) bad("seed", "must be nonnegative");
      cfg.seed = static_cast<unsigned long>(s);
    } else if (key == "workers") {
      cfg.workers = static_cast<int>(get_int(val, "workers"));
    } else if (key == "alpha_max") {
      cfg.alpha_max = get_int(val, "alpha_max");
    } else if (key == "random_eps") {
      cfg.random_eps = static_cast<int>(get_int(val, "random_eps"));
    } else if (key == "group_cap") {
      cfg.group_cap = get_int(val, "group_cap");
    } else if (key == "out") {
      if (!val.is_string()) bad("out", "expected a directory path");
      cfg.out_dir = val.get<std::string>();
    } else if (key == "checks") {
      if (!val.is_array()) bad("checks", "expected an array of suite names");
      cfg.checks.clear();
      for (const auto& c : val) {
        if (!c.is_string()) bad("checks", "expected suite names");
        cfg.checks.push_back(c.get<std::string>());
      }
    } else if (key == "towers") {
      if (!val.is_object()) bad("towers", "expected a table of towers");
      cfg.towers.clear();
      for (const auto& [name, tj] : val.items()) cfg.towers.push_back(parse_tower(name, tj));
    } else {
      bad(key, "unknown field");
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void validate_config(const RunConfig& cfg) {
  if (cfg.workers < 1 || cfg.workers > 64) bad("workers", "must be in [1, 64]");
  if (cfg.alpha_max < 1 || cfg.alpha_max > 8) bad("alpha_max", "must be in [1, 8]");
  if (cfg.random_eps < 0 || cfg.random_eps > 16) bad("random_eps", "must be in [0, 16]");
  if (cfg.group_cap < 1 || cfg.group_cap > 1000) bad("group_cap", "must be in [1, 1000]");

  const auto& known = suite_names();
  std::set<std::string> seen;
  for (const auto& c : cfg.checks) {
    if (std::find(known.begin(), known.end(), c) == known.end())
      bad("checks", "unknown suite " + c);
    if (!seen.insert(c).second) bad("checks", "duplicate suite " + c);
  }

  bool tower_suite = false;
  bool needs_f = false;
  for (const auto& c : cfg.checks) {
    if (c != "claim" && c != "hio") tower_suite = true;
    if (c == "special-g" || c == "four-star" || c == "theorem") needs_f = true;
  }
  if (tower_suite && cfg.towers.empty())
    bad("towers", "the selected checks need at least one tower");

  std::set<std::string> names;
  for (const auto& t : cfg.towers) {
    const std::string at = "towers." + t.name;
    if (t.name.empty()) bad("towers", "tower names must be nonempty");
    if (!names.insert(t.name).second) bad(at, "duplicate tower name");
    if (!small_prime(t.p)) bad(at + ".p", std::to_string(t.p) + " is not prime");
    if (t.top.empty()) bad(at + ".top", "a top field is required");
    if (t.s.empty()) bad(at + ".s", "a prime set is required");
    for (long q : t.s)
      if (!small_prime(q)) bad(at + ".s", std::to_string(q) + " is not prime");
    if (std::find(t.s.begin(), t.s.end(), t.p) == t.s.end())
      bad(at + ".s", "must contain p = " + std::to_string(t.p));
    if (t.f < 0) bad(at + ".f", "must be nonnegative");
    if (needs_f && t.f == 0) bad(at + ".f", "required by special-g, four-star, theorem");
    if (t.levels.empty()) bad(at + ".levels", "at least one working level is required");
    for (long l : t.levels)
      if (l < 2) bad(at + ".levels", "levels must exceed 1");
    if (t.ks.empty()) bad(at + ".ks", "at least one weight is required");
    for (unsigned long k : t.ks)
      if (k % 2 != 0) bad(at + ".ks", "weights must be even");
  }
}

}  // namespace pmc
