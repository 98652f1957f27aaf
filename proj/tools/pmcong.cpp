// Command line front end: runs the congruence suites from a config file and
// writes deterministic reports, plus a small admin mode for the on-disk
// caches of Bernoulli numbers and subgroup lattice Moebius values.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pmc/bernoulli.hpp"
#include "pmc/config.hpp"
#include "pmc/error.hpp"
#include "pmc/finite_group.hpp"
#include "pmc/runner.hpp"

namespace fs = std::filesystem;
using pmc::Error;

namespace {

std::string cache_dir_from_env() {
  const char* d = std::getenv("PMCONG_CACHE_DIR");
  return d && *d ? d : "pmcong-cache";
}

constexpr unsigned long kBernoulliTop = 60;

int cache_build() {
  fs::path dir = cache_dir_from_env();
  fs::create_directories(dir);

  std::ofstream bf(dir / "bernoulli.cache");
  bf << 1 << " " << pmc::bernoulli_number(1).get_str() << "\n";
  for (unsigned long k = 2; k <= kBernoulliTop; k += 2)
    bf << k << " " << pmc::bernoulli_number(k).get_str() << "\n";

  std::ofstream mf(dir / "moebius.cache");
  auto groups = pmc::load_group_catalog(pmc::default_data_dir() + "/groups.cat");
  for (const auto& [name, cg] : groups) {
    pmc::SubgroupLattice lat = pmc::subgroup_lattice(cg.group);
    for (size_t i = 0; i < lat.subgroups.size(); ++i)
      mf << name << " " << i << " " << lat.subgroups[i].size() << " "
         << lat.moebius[i].get_str() << "\n";
  }
  std::cout << "built " << (dir / "bernoulli.cache").string() << "\n";
  std::cout << "built " << (dir / "moebius.cache").string() << "\n";
  return 0;
}

pmc::Rational parse_fraction(const std::string& s) {
  pmc::Rational q(s);
  q.canonicalize();
  return q;
}

int cache_verify() {
  fs::path dir = cache_dir_from_env();
  fs::path bpath = dir / "bernoulli.cache";
  fs::path mpath = dir / "moebius.cache";
  for (const fs::path& p : {bpath, mpath})
    if (!fs::exists(p)) {
      std::cerr << "cache: missing " << p.string() << " (run cache build)\n";
      return 2;
    }

  long bad = 0;
  {
    std::ifstream in(bpath);
    unsigned long k;
    std::string val;
    while (in >> k >> val) {
      pmc::Rational want = pmc::bernoulli_number(k);
      if (parse_fraction(val) != want) {
        std::cout << "bernoulli.cache: B_" << k << " cached " << val << " recomputed "
                  << want.get_str() << "\n";
        ++bad;
      }
    }
  }
  {
    auto groups = pmc::load_group_catalog(pmc::default_data_dir() + "/groups.cat");
    std::map<std::string, pmc::SubgroupLattice> lats;  // rebuilt lazily per group
    std::ifstream in(mpath);
    std::string name;
    size_t idx;
    size_t size;
    std::string mu;
    while (in >> name >> idx >> size >> mu) {
      auto git = groups.find(name);
      if (git == groups.end()) {
        std::cout << "moebius.cache: unknown group " << name << "\n";
        ++bad;
        continue;
      }
      if (!lats.count(name)) lats.emplace(name, pmc::subgroup_lattice(git->second.group));
      const pmc::SubgroupLattice& lat = lats.at(name);
      if (idx >= lat.subgroups.size()) {
        std::cout << "moebius.cache: " << name << " has no subgroup index " << idx << "\n";
        ++bad;
        continue;
      }
      if (lat.subgroups[idx].size() != size || lat.moebius[idx].get_str() != mu) {
        std::cout << "moebius.cache: " << name << "[" << idx << "] cached (" << size << ", "
                  << mu << ") recomputed (" << lat.subgroups[idx].size() << ", "
                  << lat.moebius[idx].get_str() << ")\n";
        ++bad;
      }
    }
  }
  if (bad) {
    std::cout << bad << " cache mismatch" << (bad == 1 ? "" : "es") << "\n";
    return 1;
  }
  std::cout << "cache clean\n";
  return 0;
}

int cache_clear() {
  fs::path dir = cache_dir_from_env();
  for (const char* f : {"bernoulli.cache", "moebius.cache"}) {
    std::error_code ec;
    if (fs::remove(dir / f, ec)) std::cout << "removed " << (dir / f).string() << "\n";
  }
  return 0;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact congruence verification workbench"};
  std::string config_path, tower_name, checks_csv, out_dir;
  int workers_opt = 0;
  long long seed_opt = -1;
  app.add_option("--config", config_path, "run configuration file (JSON)")
      ->check(CLI::ExistingFile);
  app.add_option("--tower", tower_name, "restrict to the named tower");
  app.add_option("--checks", checks_csv, "comma separated suite list");
  app.add_option("--workers", workers_opt, "worker thread count");
  app.add_option("--out", out_dir, "directory for report.txt, summary.csv, bundle.json");
  app.add_option("--seed", seed_opt, "seed for the random test functions");

  for (const std::string& s : pmc::suite_names())
    app.add_subcommand(s, "run only the " + s + " suite")->fallthrough();
  app.add_subcommand("all", "run every suite")->fallthrough();
  CLI::App* cache = app.add_subcommand("cache", "manage the on-disk caches");
  cache->add_subcommand("build", "write bernoulli and moebius caches");
  cache->add_subcommand("verify", "recompute and compare every cached value");
  cache->add_subcommand("clear", "remove the cache files");
  cache->require_subcommand(1);
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int r = app.exit(e);
    return r == 0 ? 0 : 2;
  }

  try {
    if (cache->parsed()) {
      const std::string mode = cache->get_subcommands().front()->get_name();
      if (mode == "build") return cache_build();
      if (mode == "verify") return cache_verify();
      return cache_clear();
    }

    pmc::RunConfig cfg =
        config_path.empty() ? pmc::default_config() : pmc::load_config(config_path);
    for (const CLI::App* sub : app.get_subcommands()) {
      if (sub->get_name() == "all")
        cfg.checks = pmc::suite_names();
      else
        cfg.checks = {sub->get_name()};
    }
    if (!checks_csv.empty()) cfg.checks = split_csv(checks_csv);
    if (!tower_name.empty()) {
      std::vector<pmc::TowerSpec> kept;
      for (auto& t : cfg.towers)
        if (t.name == tower_name) kept.push_back(t);
      if (kept.empty()) throw Error("config: no tower named " + tower_name);
      cfg.towers = std::move(kept);
    }
    if (workers_opt > 0) cfg.workers = workers_opt;
    if (app.count("--seed")) {
      if (seed_opt < 0) throw Error("config: seed: must be nonnegative");
      cfg.seed = static_cast<unsigned long>(seed_opt);
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    pmc::validate_config(cfg);

    pmc::ReportBundle bundle = pmc::run_config(cfg);
    if (!cfg.out_dir.empty()) {
      fs::create_directories(cfg.out_dir);
      fs::path dir = cfg.out_dir;
      std::ofstream(dir / "report.txt") << pmc::render_report(bundle);
      std::ofstream(dir / "summary.csv") << pmc::render_csv(bundle);
      std::ofstream(dir / "bundle.json") << pmc::render_json(bundle, true);
      for (const char* f : {"report.txt", "summary.csv", "bundle.json"})
        std::cout << "wrote " << (dir / f).string() << "\n";
      std::cout << "summary: total=" << bundle.rows.size() << " passed=" << bundle.passed
                << " failed=" << bundle.failed << " vacuous=" << bundle.vacuous << "\n";
    } else {
      std::cout << pmc::render_report(bundle);
    }
    return bundle.failed > 0 ? 1 : 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
