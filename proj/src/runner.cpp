#include "pmc/runner.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <array>
#include <atomic>
#include <chrono>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "pmc/error.hpp"
#include "pmc/finite_group.hpp"

namespace pmc {

namespace {

struct TowerCtx {
  TowerSpec spec;
  std::shared_ptr<Tower> tw;
  // distinguished shift per working level, present when spec.f admits one
  std::map<long, SpecialG> special;
};

std::vector<TowerCtx> build_towers(const RunConfig& cfg, bool strict_special) {
  std::vector<TowerCtx> out;
  for (const auto& spec : cfg.towers) {
    TowerCtx ctx;
    ctx.spec = spec;
    try {
      ctx.tw = std::make_shared<Tower>(make_tower(spec.p, spec.top, spec.s));
    } catch (const Error& e) {
      throw Error("config: towers." + spec.name + ": " + e.what());
    }
    for (long level : spec.levels) {
      try {
        tower_level(*ctx.tw, ctx.tw->top(), level);
      } catch (const Error& e) {
        throw Error("config: towers." + spec.name + ".levels: " + std::to_string(level) + ": " +
                    e.what());
      }
      if (spec.f <= 0) continue;
      try {
        ctx.special.emplace(level, select_special_g(*ctx.tw, spec.f, level));
      } catch (const Error& e) {
        // suites that center on the shift treat an impossible f as a config
        // mistake; the rest just run without the extra element
        if (strict_special)
          throw Error("config: towers." + spec.name + ".f: " + e.what());
      }
    }
    out.push_back(std::move(ctx));
  }
  return out;
}

const std::vector<Rational>& claim_multipliers() {
  static const std::vector<Rational> rs = {2, -2, 3,  -3,
                                           5, 7,  make_rational(1, 3), make_rational(3, 5)};
  return rs;
}

std::string join_longs(const std::vector<long>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

std::string join_ks(const std::vector<unsigned long>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

std::string join_names(const std::vector<std::string>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
  return out;
}

const char* verdict(const CheckReport& r) {
  return !r.pass ? "FAIL" : (r.vacuous ? "VACUOUS" : "PASS");
}

}  // namespace

std::vector<PlannedJob> plan_jobs(const RunConfig& cfg) {
  validate_config(cfg);
  bool strict_special = false;
  for (const auto& c : cfg.checks)
    if (c == "special-g" || c == "four-star" || c == "theorem") strict_special = true;

  std::vector<PlannedJob> jobs;
  std::vector<TowerCtx> towers = build_towers(cfg, strict_special);
  auto groups = std::make_shared<std::map<std::string, CatalogGroup>>(
      load_group_catalog(default_data_dir() + "/groups.cat"));

  for (const std::string& suite : cfg.checks) {
    if (suite == "claim") {
      for (const auto& [name, cg] : *groups) {
        if (cg.group.size() > cfg.group_cap) continue;
        for (const Rational& r : claim_multipliers()) {
          if (padic_valuation(r, Integer(cg.p)) != 0) continue;
          jobs.push_back({suite, [groups, name = name, r] {
                            const CatalogGroup& g = groups->at(name);
                            return check_claim(name, g.group, g.p, r);
                          }});
        }
      }
    } else if (suite == "hio") {
      for (const auto& [name, cg] : *groups)
        jobs.push_back({suite, [groups, name = name] {
                          const CatalogGroup& g = groups->at(name);
                          return check_hio(name, g.group, g.p);
                        }});
    } else if (suite == "dr") {
      for (const auto& tc : towers)
        for (long level : tc.spec.levels)
          for (size_t fi = 0; fi < tc.tw->fields.size(); ++fi) {
            auto sp = tc.special.count(level)
                          ? std::optional<ShiftedClass>(tc.special.at(level).g)
                          : std::nullopt;
            jobs.push_back({suite, [tw = tc.tw, level, fi, sp, ks = tc.spec.ks,
                                    seed = cfg.seed, nr = cfg.random_eps] {
                              const TowerField& tf = tw->fields[fi];
                              LevelData ld = tower_level(*tw, tf.field, level);
                              std::vector<ShiftedClass> gs;
                              for (long c : ld.classes) gs.push_back(shifted_class(ld, c));
                              if (sp) gs.push_back(power_shift(ld, *sp, tf.field.degree));
                              auto eps = atom_eps_set(ld);
                              for (auto& e : even_eps_set(ld, seed, nr))
                                eps.push_back(std::move(e));
                              return check_dr(ld, gs, ks, eps);
                            }});
          }
    } else if (suite == "pseudomeasure") {
      for (const auto& tc : towers)
        for (long level : tc.spec.levels)
          for (size_t fi = 0; fi < tc.tw->fields.size(); ++fi) {
            LevelData ld = tower_level(*tc.tw, tc.tw->fields[fi].field, level);
            auto sp = tc.special.count(level)
                          ? std::optional<ShiftedClass>(tc.special.at(level).g)
                          : std::nullopt;
            int deg = tc.tw->fields[fi].field.degree;
            std::vector<long> head(ld.classes.begin(),
                                   ld.classes.begin() + std::min<size_t>(3, ld.classes.size()));

            auto lift = [tw = tc.tw, level, fi, sp, deg](long cls, bool special) {
              LevelData l = tower_level(*tw, tw->fields[fi].field, level);
              return special ? power_shift(l, *sp, deg) : shifted_class(l, cls);
            };
            for (long c : head)
              jobs.push_back({suite, [tw = tc.tw, level, fi, c, lift, ks = tc.spec.ks] {
                                LevelData l = tower_level(*tw, tw->fields[fi].field, level);
                                return check_k_independence(l, lift(c, false), ks);
                              }});
            if (sp)
              jobs.push_back({suite, [tw = tc.tw, level, fi, lift, ks = tc.spec.ks] {
                                LevelData l = tower_level(*tw, tw->fields[fi].field, level);
                                return check_k_independence(l, lift(0, true), ks);
                              }});
            for (long a : head)
              for (long b : head)
                jobs.push_back({suite, [tw = tc.tw, level, fi, a, b, lift, k = tc.spec.ks[0]] {
                                  LevelData l = tower_level(*tw, tw->fields[fi].field, level);
                                  return check_cocycle(l, lift(a, false), lift(b, false), k);
                                }});
            if (sp)
              jobs.push_back({suite, [tw = tc.tw, level, fi, lift, h = head[0],
                                      k = tc.spec.ks[0]] {
                                LevelData l = tower_level(*tw, tw->fields[fi].field, level);
                                return check_cocycle(l, lift(0, true), lift(h, false), k);
                              }});

            long coarse = level / tc.spec.p;
            bool droppable = level % tc.spec.p == 0 &&
                             coarse % tc.tw->fields[fi].field.conductor == 0;
            if (droppable) {
              long v = 0;
              for (long c2 = coarse; c2 % tc.spec.p == 0; c2 /= tc.spec.p) ++v;
              droppable = v >= (tc.spec.p == 2 ? 2 : 1);
            }
            if (droppable) {
              long g0 = head.size() > 1 ? head[1] : head[0];
              jobs.push_back({suite, [tw = tc.tw, level, coarse, fi, g0, lift,
                                      k = tc.spec.ks[0]] {
                                LevelData fine = tower_level(*tw, tw->fields[fi].field, level);
                                LevelData down = tower_level(*tw, tw->fields[fi].field, coarse);
                                return check_level_projection(fine, down, lift(g0, false), k);
                              }});
              if (sp)
                jobs.push_back({suite, [tw = tc.tw, level, coarse, fi, lift,
                                        k = tc.spec.ks[0]] {
                                  LevelData fine = tower_level(*tw, tw->fields[fi].field, level);
                                  LevelData down =
                                      tower_level(*tw, tw->fields[fi].field, coarse);
                                  return check_level_projection(fine, down, lift(0, true), k);
                                }});
            }
          }
    } else if (suite == "special-g") {
      for (const auto& tc : towers)
        for (long level : tc.spec.levels) {
          SpecialG sg = tc.special.at(level);
          jobs.push_back({suite, [sg] { return sg.report; }});
        }
    } else if (suite == "four-star") {
      for (const auto& tc : towers)
        for (long level : tc.spec.levels) {
          ShiftedClass g = tc.special.at(level).g;
          LevelData ld = tower_level(*tc.tw, tc.tw->top(), level);
          auto eps = even_eps_set(ld, cfg.seed, cfg.random_eps);
          for (unsigned long k : tc.spec.ks)
            for (const auto& e : eps)
              jobs.push_back({suite, [tw = tc.tw, level, k, e, g] {
                                return check_four_star(*tw, level, k, e, g);
                              }});
        }
    } else if (suite == "prop9") {
      for (const auto& tc : towers)
        for (long level : tc.spec.levels) {
          LevelData ld = tower_level(*tc.tw, tc.tw->top(), level);
          auto eps = even_eps_set(ld, cfg.seed, cfg.random_eps);
          jobs.push_back({suite, [tw = tc.tw, level, amax = cfg.alpha_max, ks = tc.spec.ks,
                                  eps] { return check_prop9(*tw, level, amax, ks, eps); }});
          for (size_t fi = 0; fi < tc.tw->fields.size(); ++fi)
            for (long alpha = 1; alpha <= cfg.alpha_max; ++alpha)
              jobs.push_back({suite, [tw = tc.tw, fi, alpha] {
                                return check_iota_bijection(*tw, tw->fields[fi].field, alpha);
                              }});
          for (long alpha = 2; alpha <= std::min<long>(3, cfg.alpha_max); ++alpha)
            jobs.push_back({suite, [tw = tc.tw, level, alpha, k = tc.spec.ks[0],
                                    e = eps.front()] {
                              return check_orbit_decomposition(*tw, level, alpha, k, e);
                            }});
        }
    } else if (suite == "theorem") {
      for (const auto& tc : towers)
        for (long level : tc.spec.levels) {
          ShiftedClass g = tc.special.at(level).g;
          for (unsigned long k : tc.spec.ks)
            jobs.push_back({suite, [tw = tc.tw, level, k, g] {
                              return check_theorem(*tw, level, k, g);
                            }});
        }
    }
  }
  return jobs;
}

ReportBundle run_config(const RunConfig& cfg) {
  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  std::vector<PlannedJob> jobs = plan_jobs(cfg);

  ReportBundle b;
  b.config = cfg;
  b.rows.resize(jobs.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= jobs.size()) break;
      auto s0 = clock::now();
      ReportRow row;
      row.suite = jobs[i].suite;
      try {
        row.report = jobs[i].run();
      } catch (const std::exception& e) {
        row.report.name = jobs[i].suite;
        row.report.params = "(aborted)";
        row.report.pass = false;
        row.report.witness = {std::string("error: ") + e.what()};
      }
      row.report.seconds = std::chrono::duration<double>(clock::now() - s0).count();
      b.rows[i] = std::move(row);
    }
  };

  size_t n = std::min<size_t>(static_cast<size_t>(std::max(cfg.workers, 1)), jobs.size());
  if (n <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (size_t i = 0; i < n; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  for (const auto& row : b.rows) {
    if (!row.report.pass)
      ++b.failed;
    else if (row.report.vacuous)
      ++b.vacuous;
    else
      ++b.passed;
  }
  b.seconds = std::chrono::duration<double>(clock::now() - t0).count();
  return b;
}

std::string render_report(const ReportBundle& b) {
  std::ostringstream out;
  out << "pmcong verification report\n";
  out << "seed=" << b.config.seed << " alpha_max=" << b.config.alpha_max
      << " random_eps=" << b.config.random_eps << " group_cap=" << b.config.group_cap << "\n";
  out << "checks: " << join_names(b.config.checks) << "\n";
  out << "towers:";
  for (const auto& t : b.config.towers)
    out << " " << t.name << "(p=" << t.p << " top=" << t.top << " s=" << join_longs(t.s)
        << " f=" << t.f << " levels=" << join_longs(t.levels) << " ks=" << join_ks(t.ks) << ")";
  out << "\n\n";
  for (const auto& row : b.rows) {
    out << verdict(row.report) << " " << row.report.name;
    if (!row.report.params.empty()) out << " [" << row.report.params << "]";
    out << "\n";
    for (const auto& w : row.report.witness) out << "    " << w << "\n";
  }
  out << "\nsummary: total=" << b.rows.size() << " passed=" << b.passed
      << " failed=" << b.failed << " vacuous=" << b.vacuous << "\n";
  return out.str();
}

std::string render_csv(const ReportBundle& b) {
  std::ostringstream out;
  out << "suite,total,passed,failed,vacuous\n";
  std::vector<std::string> order;
  std::map<std::string, std::array<long, 4>> agg;
  for (const auto& row : b.rows) {
    if (!agg.count(row.suite)) order.push_back(row.suite);
    auto& a = agg[row.suite];
    ++a[0];
    if (!row.report.pass)
      ++a[2];
    else if (row.report.vacuous)
      ++a[3];
    else
      ++a[1];
  }
  for (const auto& s : order) {
    const auto& a = agg[s];
    out << s << "," << a[0] << "," << a[1] << "," << a[2] << "," << a[3] << "\n";
  }
  return out.str();
}

std::string render_json(const ReportBundle& b, bool with_timings) {
  nlohmann::json j;
  j["meta"] = {{"seed", b.config.seed},
               {"alpha_max", b.config.alpha_max},
               {"random_eps", b.config.random_eps},
               {"group_cap", b.config.group_cap},
               {"checks", b.config.checks},
               {"gmp", std::string(gmp_version)},
               {"mpfr", std::string(mpfr_get_version())}};
  nlohmann::json towers = nlohmann::json::array();
  for (const auto& t : b.config.towers)
    towers.push_back({{"name", t.name},
                      {"p", t.p},
                      {"top", t.top},
                      {"s", t.s},
                      {"f", t.f},
                      {"levels", t.levels},
                      {"ks", t.ks}});
  j["meta"]["towers"] = towers;
  if (with_timings) {
    j["meta"]["workers"] = b.config.workers;
    j["meta"]["seconds"] = b.seconds;
  }
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : b.rows) {
    nlohmann::json r = {{"suite", row.suite},       {"name", row.report.name},
                        {"params", row.report.params}, {"pass", row.report.pass},
                        {"vacuous", row.report.vacuous}, {"witness", row.report.witness}};
    if (with_timings) r["seconds"] = row.report.seconds;
    rows.push_back(std::move(r));
  }
  j["checks"] = rows;
  j["summary"] = {{"total", b.rows.size()},
                  {"passed", b.passed},
                  {"failed", b.failed},
                  {"vacuous", b.vacuous}};
  return j.dump(2) + "\n";
}

}  // namespace pmc
