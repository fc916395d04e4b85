#include "relaynet/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <iostream>

#include "relaynet/config.hpp"
#include "relaynet/csv.hpp"
#include "relaynet/errors.hpp"
#include "relaynet/parallel.hpp"
#include "relaynet/units.hpp"

namespace relaynet {

namespace {

struct Infeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Job {
  RunConfig cfg;
  std::filesystem::path out;
  std::string hash;
};

std::string num(double v) { return format_number(v); }

std::string relay_list(const std::vector<Point>& relays) {
  std::string s;
  for (const auto& r : relays) {
    if (!s.empty()) s += ';';
    s += num(r.x) + ' ' + num(r.y);
  }
  return s;
}

void emit(const Job& job, const std::string& name, const CsvTable& table) {
  write_csv((job.out / name).string(), table, job.hash);
}

void summary(const Job& job, const std::string& name, const std::string& text) {
  write_text((job.out / name).string(), fmt::format("config-hash: {}\n{}", job.hash, text));
}

std::vector<PointModel> model_grid(const CellLayout& layout, const std::vector<UserPos>& grid, const Job& job) {
  std::vector<PointModel> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { out[i] = evaluate_point(grid[i], layout, job.cfg.scheme, job.cfg.ctx); });
  return out;
}

int map_rea(const Job& job) {
  CellLayout layout = job.cfg.layout.build();
  auto grid = sector_grid(layout);
  auto models = model_grid(layout, grid, job);
  CsvTable t{"rea-map/1", {"x", "y", "relay", "p_cr", "p_low1", "p_low2", "p_low", "p_relay", "outage_ok"}, {}};
  for (double p : job.cfg.thresholds.p_t) t.columns.push_back("rea_" + num(p));
  std::size_t members = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& p = models[i].probs;
    std::vector<std::string> row{num(grid[i].x), num(grid[i].y), std::to_string(models[i].relay), num(p.p_cr),
                                 num(p.p_low1), num(p.p_low2), num(p.p_low), num(p.p_relay()),
                                 p.outage_ok ? "1" : "0"};
    for (double pt : job.cfg.thresholds.p_t) {
      bool in = rea_membership(p, pt);
      members += in;
      row.push_back(in ? "1" : "0");
    }
    t.add(std::move(row));
  }
  emit(job, "rea_map.csv", t);
  summary(job, "rea_map.txt", fmt::format("points: {}\nthresholds: {}\nmemberships: {}\n", grid.size(),
                                          job.cfg.thresholds.p_t.size(), members));
  return kExitOk;
}

int map_eea(const Job& job) {
  CellLayout layout = job.cfg.layout.build();
  auto grid = sector_grid(layout);
  auto models = model_grid(layout, grid, job);
  CsvTable t{"eea-map/1", {"x", "y", "relay", "e_cr", "e_cd", "e_er_lb", "e_ed_ub", "e_total", "outage_ok"}, {}};
  for (double e : job.cfg.thresholds.e_t) t.columns.push_back("eea_" + num(e));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& e = models[i].energy;
    std::vector<std::string> row{num(grid[i].x),   num(grid[i].y),    std::to_string(models[i].relay),
                                 num(e.e_cr),      num(e.e_cd),       num(e.e_er_lb),
                                 num(e.e_ed_ub),   num(e.total),      models[i].probs.outage_ok ? "1" : "0"};
    for (double et : job.cfg.thresholds.e_t) row.push_back(eea_membership(e, et) ? "1" : "0");
    t.add(std::move(row));
  }
  emit(job, "eea_map.csv", t);
  double mean = 0.0;
  for (const auto& m : models) mean += m.energy.total;
  summary(job, "eea_map.txt", fmt::format("points: {}\nmean_energy: {}\n", grid.size(), num(mean / grid.size())));
  return kExitOk;
}

int map_ici(const Job& job) {
  CellLayout layout = job.cfg.layout.build();
  auto grid = sector_grid(layout);
  auto models = model_grid(layout, grid, job);
  std::vector<double> w(layout.n_r(), 0.0);
  for (const auto& m : models) {
    if (m.relay != kNoRelay) w[m.relay] += m.relay_rf / grid.size();
  }
  CsvTable t{"ici-map/1", {"cell", "x", "y", "interference"}, {}};
  auto cells = neighbor_cells(layout);
  double peak = 0.0;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    std::vector<double> level(cells[c].grid.size(), 0.0);
    parallel_for(level.size(), [&](std::size_t i) {
      for (int k = 0; k < layout.n_r(); ++k) {
        level[i] += interference_at(w[k], cells[c].grid[i], layout.relays()[k], job.cfg.ctx.scenario);
      }
    });
    for (std::size_t i = 0; i < level.size(); ++i) {
      peak = std::max(peak, level[i]);
      t.add({std::to_string(c + 2), num(cells[c].grid[i].x), num(cells[c].grid[i].y), num(level[i])});
    }
  }
  emit(job, "ici_map.csv", t);
  summary(job, "ici_map.txt", fmt::format("victims: {}\npeak_interference: {}\n", t.rows.size(), num(peak)));
  return kExitOk;
}

int gamma_cmd(const Job& job) {
  CellLayout layout = job.cfg.layout.build();
  GammaReport g = gamma(layout, job.cfg.scheme, job.cfg.ctx);
  CsvTable t{"gamma/1", {"d_b", "n_r", "scheme", "upsilon_gain", "upsilon_loss", "gamma", "regime"}, {}};
  t.add({num(layout.d_b()), std::to_string(layout.n_r()), to_string(job.cfg.scheme), num(g.upsilon_gain),
         num(g.upsilon_loss), num(g.gamma), g.regime()});
  emit(job, "gamma.csv", t);
  summary(job, "gamma.txt", fmt::format("gamma: {}\nupsilon_gain: {}\nupsilon_loss: {}\nregime: {}\n", num(g.gamma),
                                        num(g.upsilon_gain), num(g.upsilon_loss), g.regime()));
  return kExitOk;
}

OptimizeOptions options_of(const RunConfig& cfg) {
  OptimizeOptions o;
  o.search_step = cfg.optimize.search_step;
  o.symmetric = cfg.optimize.symmetric;
  o.grid_step = cfg.layout.grid_step;
  return o;
}

std::vector<double> sweep_radii(const RunConfig& cfg) {
  return cfg.optimize.d_b.empty() ? std::vector<double>{cfg.layout.d_b} : cfg.optimize.d_b;
}

int psi_cmd(const Job& job) {
  CsvTable t{"psi/1", {"d_b", "n_r", "scheme", "feasible", "e_max", "e_idle", "area", "psi", "relays"}, {}};
  bool any = false;
  std::string text;
  auto add = [&](const PsiReport& r) {
    any = any || r.feasible;
    t.add({num(r.d_b), std::to_string(r.relays.size()), to_string(job.cfg.scheme), r.feasible ? "1" : "0",
           num(r.e_max), num(r.e_idle), num(r.area), num(r.psi), relay_list(r.relays)});
    text += fmt::format("d_b={} n_r={} feasible={} psi={}\n", num(r.d_b), r.relays.size(), r.feasible, num(r.psi));
    if (r.first_uncovered) {
      text += fmt::format("  first uncovered point: {} {}\n", num(r.first_uncovered->x), num(r.first_uncovered->y));
    }
  };
  if (job.cfg.optimize.d_b.empty()) {
    add(psi(job.cfg.layout.build(), job.cfg.scheme, job.cfg.ctx));
  } else {
    for (double d_b : job.cfg.optimize.d_b) {
      auto results = optimize(Objective::Psi, job.cfg.optimize.n_r, d_b, job.cfg.scheme, job.cfg.ctx, options_of(job.cfg));
      for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& best = results[i];
        int n_r = job.cfg.optimize.n_r[i];
        if (best.feasible) {
          double step = job.cfg.layout.grid_step > 0.0 ? job.cfg.layout.grid_step : d_b / 30.0;
          add(psi(CellLayout(d_b, best.relays, step), job.cfg.scheme, job.cfg.ctx));
        } else {
          PsiReport r;
          r.d_b = d_b;
          r.relays.assign(n_r, Point{});
          r.psi = std::numeric_limits<double>::quiet_NaN();
          add(r);
        }
      }
    }
  }
  emit(job, "psi.csv", t);
  summary(job, "psi.txt", text);
  if (!any) throw Infeasible("no evaluated layout covers the sector");
  return kExitOk;
}

int optimize_cmd(const Job& job) {
  CsvTable t{"optimize/1", {"d_b", "n_r", "objective", "value", "relays"}, {}};
  bool any = false;
  std::string text;
  for (double d_b : sweep_radii(job.cfg)) {
    auto results = optimize(job.cfg.optimize.objective, job.cfg.optimize.n_r, d_b, job.cfg.scheme, job.cfg.ctx,
                            options_of(job.cfg));
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& r = results[i];
      int n_r = job.cfg.optimize.n_r[i];
      any = any || r.feasible;
      double value = r.feasible ? r.value : std::numeric_limits<double>::quiet_NaN();
      t.add({num(d_b), std::to_string(n_r), to_string(r.objective), num(value), relay_list(r.relays)});
      text += fmt::format("d_b={} n_r={} {}={} layouts={}\n", num(d_b), n_r, to_string(r.objective), num(value),
                          r.layouts_evaluated);
    }
  }
  emit(job, "optimize.csv", t);
  summary(job, "optimize.txt", text);
  if (!any) throw Infeasible("no feasible layout found");
  return kExitOk;
}

int scheme_map_cmd(const Job& job) {
  CellLayout layout = job.cfg.layout.build();
  SchemeMap m = scheme_map(layout, job.cfg.ctx, job.cfg.scheme_map.candidates);
  CsvTable t{"scheme-map/1", {"x", "y", "scheme"}, {}};
  for (std::size_t i = 0; i < m.points.size(); ++i) {
    t.add({num(m.points[i].x), num(m.points[i].y), to_string(m.schemes[i])});
  }
  emit(job, "scheme_map.csv", t);
  std::string text = fmt::format("baseline_gamma: {}\nselected_gamma: {}\n", num(m.baseline.gamma), num(m.selected.gamma));
  for (SchemeKind k : {SchemeKind::DTx, SchemeKind::TwoHop, SchemeKind::EoPdf, SchemeKind::IrPdf}) {
    text += fmt::format("{}: {}\n", to_string(k), m.count(k));
  }
  summary(job, "scheme_map.txt", text);
  return kExitOk;
}

int validate_cmd(const Job& job) {
  CellLayout layout = job.cfg.layout.build();
  auto r = error_ratios(layout, job.cfg.scheme, job.cfg.thresholds, job.cfg.ctx, job.cfg.oracle.samples,
                        job.cfg.oracle.seed);
  CsvTable t{"validation/1", {"kind", "threshold", "mismatches", "reference", "zeta"}, {}};
  for (const auto& z : r.breakdown) {
    t.add({z.kind, num(z.threshold), std::to_string(z.mismatches), std::to_string(z.reference), num(z.zeta)});
  }
  emit(job, "validation.csv", t);
  summary(job, "validation.txt",
          fmt::format("points: {}\nsamples: {}\nseed: {}\nzeta_r: {}\nzeta_e: {}\nzeta_i: {}\n", r.points, r.samples,
                      r.seed, num(r.zeta_r), num(r.zeta_e), num(r.zeta_i)));
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Relay-aided cellular downlink models"};
  std::string command, config_path, out_dir = ".", grid_step;
  std::uint64_t seed = 0;
  int threads = 0;
  const std::vector<std::string> commands{"map-rea", "map-eea", "map-ici", "gamma",
                                          "psi",     "optimize", "scheme-map", "validate"};
  app.add_option("command", command, "Subcommand")->required()->check(CLI::IsMember(commands));
  app.add_option("--config", config_path, "YAML run configuration")->required();
  app.add_option("--out", out_dir, "Output directory");
  auto* seed_opt = app.add_option("--seed", seed, "Oracle seed");
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--grid-step", grid_step, "Grid spacing with unit, e.g. \"20 m\"");
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (threads > 0) set_thread_count(threads);
    Job job;
    job.cfg = load_run_config(config_path);
    std::string overrides;
    if (*seed_opt) {
      job.cfg.oracle.seed = seed;
      overrides += fmt::format(";seed={}", seed);
    }
    if (!grid_step.empty()) {
      job.cfg.layout.grid_step = parse_quantity(grid_step, Dimension::Length);
      overrides += ";grid-step=" + num(job.cfg.layout.grid_step);
      (void)job.cfg.layout.build();
    }
    job.hash = fmt::format("{:016x}", fnv1a(job.cfg.fingerprint + overrides));
    job.out = out_dir;
    std::filesystem::create_directories(job.out);

    if (command == "map-rea") return map_rea(job);
    if (command == "map-eea") return map_eea(job);
    if (command == "map-ici") return map_ici(job);
    if (command == "gamma") return gamma_cmd(job);
    if (command == "psi") return psi_cmd(job);
    if (command == "optimize") return optimize_cmd(job);
    if (command == "scheme-map") return scheme_map_cmd(job);
    return validate_cmd(job);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const UnitError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const GridError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "output error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace relaynet
