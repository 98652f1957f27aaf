#ifndef PMC_CONFIG_HPP
#define PMC_CONFIG_HPP

#include <string>
#include <vector>

namespace pmc {

// One Galois frame to run tower checks over.
struct TowerSpec {
  std::string name;
  long p = 0;
  std::string top;
  std::vector<long> s;
  long f = 0;  // conductor of the distinguished shift 1/(1+f); 0 = none
  std::vector<long> levels;
  std::vector<unsigned long> ks;
};

// A full run: which suites, over which towers, with which knobs. Everything
// that influences check results lives here, so a config pins the report
// bytes; wall-clock data never enters the deterministic outputs.
struct RunConfig {
  unsigned long seed = 1;
  int workers = 1;
  long alpha_max = 5;
  int random_eps = 2;
  long group_cap = 27;
  std::string out_dir;
  std::vector<std::string> checks;
  std::vector<TowerSpec> towers;
};

const std::vector<std::string>& suite_names();

RunConfig default_config();

// Config text is one JSON object; absent keys keep their defaults, and a
// present "checks" array narrows the suite list (possibly to nothing).
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Field-level validation; error messages carry the offending field path.
void validate_config(const RunConfig& cfg);

}  // namespace pmc

#endif
