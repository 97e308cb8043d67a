#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "io.hpp"
#include "kinetic/format.hpp"
#include "kinetic/moments.hpp"
#include "kinetic/picard.hpp"
#include "kinetic/summation.hpp"
#include "kinetic/verify.hpp"
#include "scenario.hpp"

#ifndef KINETIC_VERSION
#define KINETIC_VERSION "unknown"
#endif

namespace kinetic::app {
namespace fs = std::filesystem;

namespace {

constexpr double kLedgerTolerance = 1e-3;
constexpr double kWeakFormTolerance = 1e-3;
constexpr double kHomogeneousTolerance = 1e-3;
// Metric values below this are round-off; orders between them are not measured.
constexpr double kRoundOff = 1e-13;

std::vector<double> ledger_orders(double m) {
  std::set<double> orders{0.0, 2.0, 3.0, m};
  return {orders.begin(), orders.end()};
}

Check make_check(std::string name, double value, double tolerance) {
  return Check{std::move(name), value, tolerance, std::isfinite(value) && value < tolerance};
}

void report_checks(const std::vector<Check>& checks, const fs::path& file, std::ostream& log) {
  std::ofstream out(file, std::ios::binary);
  for (const auto& c : checks) {
    std::ostringstream line;
    line << "check=" << c.name << " value=" << format_double(c.value) << " tolerance=" << format_double(c.tolerance)
         << " status=" << (c.pass ? "pass" : "FAIL");
    out << line.str() << '\n';
    log << line.str() << '\n';
  }
}

void write_manifest(const fs::path& out, const std::string& command, const RunConfig* cfg) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(out)) {
    if (entry.is_regular_file() && entry.path().filename() != "manifest.json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  nlohmann::ordered_json manifest;
  manifest["tool"] = "kinetic";
  manifest["version"] = KINETIC_VERSION;
  manifest["command"] = command;
  if (cfg != nullptr) {
    manifest["config"] = nlohmann::json::parse(cfg->canonical());
    manifest["config_checksum"] = cfg->checksum();
  }
  nlohmann::ordered_json sums = nlohmann::ordered_json::object();
  for (const auto& f : files) sums[fs::relative(f, out).generic_string()] = "fnv1a64:" + file_checksum(f);
  manifest["files"] = sums;
  std::ofstream(out / "manifest.json", std::ios::binary) << manifest.dump(2) << '\n';
}

void require_memory(const RunConfig& cfg, double factor) {
  const double need = estimated_run_bytes(cfg) * factor;
  const double have = available_memory_bytes();
  if (need > 0.8 * have) {
    std::ostringstream msg;
    msg << "estimated memory " << need / 1048576.0 << " MiB exceeds the budget of " << 0.8 * have / 1048576.0
        << " MiB (80% of available); reduce cells, shells, angles or steps";
    throw ConfigError(msg.str());
  }
}

TrajectoryInfo info_for(const RunConfig& cfg, const std::string& solver) {
  return TrajectoryInfo{solver,
                        cfg.picard.horizon,
                        cfg.picard.steps,
                        cfg.kernel.profile,
                        cfg.kernel.kappa,
                        cfg.kernel.lambda,
                        cfg.damping.kind,
                        cfg.damping.c,
                        cfg.picard.moment_order,
                        cfg.checksum()};
}

void write_ledgers(CsvWriter& csv, const std::string& solver, const Trajectory& traj, const DampingModel& mu,
                   double m, std::vector<Check>* checks) {
  for (double order : ledger_orders(m)) {
    const EnergyLedger ledger = energy_ledger(traj, mu, order);
    for (std::size_t j = 0; j < ledger.time.size(); ++j) {
      csv << solver << order << ledger.time[j] << ledger.energy[j] << ledger.damping[j] << ledger.residual[j];
      csv.end_row();
    }
    if (checks != nullptr) {
      checks->push_back(make_check(solver + "_ledger_m" + format_double(order), ledger.max_relative_residual(),
                                   kLedgerTolerance));
    }
  }
}

void write_moments(CsvWriter& csv, const std::string& solver, const Trajectory& traj, double m) {
  const SpatialGrid& sg = traj.grid().spatial();
  for (std::size_t j = 0; j < traj.size(); ++j) {
    const MomentSet ms = compute_moments(traj[j], m);
    for (std::size_t c = 0; c < sg.cell_count(); ++c) {
      const Vec3 x = sg.center(c);
      csv << solver << traj.time(j) << c << x[0] << x[1] << x[2] << ms.density[c] << ms.current[c][0]
          << ms.current[c][1] << ms.current[c][2] << ms.absolute[c];
      csv.end_row();
    }
  }
}

void write_trace(const IterateTrace& trace, const PicardConfig& pc, const fs::path& file, const std::string& sum) {
  CsvWriter csv(file, sum,
                {"k", "diff_sup", "sup_norm", "max_energy", "sup_bound_margin", "energy_bound_margin",
                 "sup_bound_holds", "energy_bound_holds"});
  for (const auto& rec : trace.iterates) {
    IterateTrace single = trace;
    single.iterates = {rec};
    const GronwallReport g = check_gronwall_trace(single, pc, trace.reverse_mass, trace.lambda);
    csv << rec.k << rec.diff_sup << rec.sup_norm
        << *std::max_element(rec.energy_by_node.begin(), rec.energy_by_node.end()) << g.sup_norm.worst_margin
        << g.energy.worst_margin << std::string(g.sup_norm.pass ? "1" : "0") << std::string(g.energy.pass ? "1" : "0");
    csv.end_row();
  }
}

bool spatially_homogeneous(const DistributionField& f) {
  const std::size_t cells = f.grid().spatial().cell_count();
  const std::size_t n = f.grid().velocity_nodes();
  const auto v = f.values();
  for (std::size_t c = 1; c < cells; ++c) {
    for (std::size_t k = 0; k < n; ++k) {
      if (v[c * n + k] != v[k]) return false;
    }
  }
  return true;
}

double mean(const std::vector<double>& v) {
  CompensatedSum s;
  for (double x : v) s.add(x);
  return s.value() / static_cast<double>(v.size());
}

}  // namespace

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

double relative_l1_gap(const Trajectory& a, const Trajectory& b) {
  if (a.size() != b.size()) throw GridMismatch("relative_l1_gap: node counts differ");
  double gap = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const auto x = a[j].values();
    const auto y = b[j].values();
    if (x.size() != y.size()) throw GridMismatch("relative_l1_gap: field sizes differ");
    CompensatedSum diff;
    CompensatedSum norm;
    for (std::size_t q = 0; q < x.size(); ++q) {
      diff.add(std::abs(x[q] - y[q]));
      norm.add(std::abs(x[q]));
    }
    if (norm.value() > 0.0) gap = std::max(gap, diff.value() / norm.value());
  }
  return gap;
}

double homogeneous_density_error(const Trajectory& traj, const DampingModel& mu) {
  if (!spatially_homogeneous(traj[0])) return std::numeric_limits<double>::quiet_NaN();
  const double n0 = mean(density(traj[0]));
  if (n0 == 0.0) return 0.0;
  double err = 0.0;
  for (std::size_t j = 0; j < traj.size(); ++j) {
    const double exact = mu.evolve_density(n0, traj.time(j));
    err = std::max(err, std::abs(mean(density(traj[j])) - exact) / exact);
  }
  return err;
}

int cmd_run(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
  require_memory(cfg, 1.0);
  const Scenario sc = build_scenario(cfg);
  fs::create_directories(out);
  const std::string sum = cfg.checksum();
  std::vector<Check> checks;

  log << "picard: " << cfg.picard.steps << " steps to T=" << format_double(cfg.picard.horizon) << ", "
      << sc.grid->size() << " phase nodes\n";
  PicardResult picard = [&] {
    try {
      return run_picard(sc.initial, sc.kernel, sc.damping, cfg.picard);
    } catch (const PicardDivergence& e) {
      write_trace(e.trace(), cfg.picard, out / "picard_trace.csv", sum);
      throw;
    }
  }();
  write_trace(picard.trace, cfg.picard, out / "picard_trace.csv", sum);
  log << "picard: converged after " << picard.trace.iterates.size() << " sweeps\n";

  const GronwallReport gronwall =
      check_gronwall_trace(picard.trace, cfg.picard, picard.trace.reverse_mass, picard.trace.lambda);
  checks.push_back({"gronwall_sup_violations", static_cast<double>(gronwall.sup_norm.violations), 1.0,
                    gronwall.sup_norm.pass});
  checks.push_back({"gronwall_energy_violations", static_cast<double>(gronwall.energy.violations), 1.0,
                    gronwall.energy.pass});

  std::optional<Trajectory> splitting;
  if (cfg.output.splitting) {
    splitting = run_splitting(sc.initial, sc.kernel, sc.damping, cfg.picard.horizon, cfg.picard.steps);
    CsvWriter gap(out / "solver_gap.csv", sum, {"t", "relative_l1_gap"});
    for (std::size_t j = 0; j < picard.trajectory.size(); ++j) {
      const Trajectory a(cfg.picard.horizon, 1, {picard.trajectory[j], picard.trajectory[j]});
      const Trajectory b(cfg.picard.horizon, 1, {(*splitting)[j], (*splitting)[j]});
      gap << picard.trajectory.time(j) << relative_l1_gap(a, b);
      gap.end_row();
    }
    log << "splitting: relative L1 gap to picard " << format_double(relative_l1_gap(picard.trajectory, *splitting))
        << '\n';
  }

  {
    CsvWriter csv(out / "energy_ledger.csv", sum, {"solver", "m", "t", "energy", "damping", "residual"});
    write_ledgers(csv, "picard", picard.trajectory, sc.damping, cfg.picard.moment_order, &checks);
    if (splitting) write_ledgers(csv, "splitting", *splitting, sc.damping, cfg.picard.moment_order, nullptr);
  }
  if (cfg.output.moments) {
    CsvWriter csv(out / "moments.csv", sum,
                  {"solver", "t", "cell", "x1", "x2", "x3", "density", "current1", "current2", "current3",
                   "moment_m"});
    write_moments(csv, "picard", picard.trajectory, cfg.picard.moment_order);
    if (splitting) write_moments(csv, "splitting", *splitting, cfg.picard.moment_order);
  }
  if (spatially_homogeneous(sc.initial)) {
    const double n0 = mean(density(sc.initial));
    CsvWriter csv(out / "homogeneous_decay.csv", sum, {"t", "density", "exact", "relative_error"});
    for (std::size_t j = 0; j < picard.trajectory.size(); ++j) {
      const double n = mean(density(picard.trajectory[j]));
      const double exact = sc.damping.evolve_density(n0, picard.trajectory.time(j));
      csv << picard.trajectory.time(j) << n << exact << (exact > 0.0 ? std::abs(n - exact) / exact : std::abs(n));
      csv.end_row();
    }
    checks.push_back(make_check("homogeneous_density_error", homogeneous_density_error(picard.trajectory, sc.damping),
                                kHomogeneousTolerance));
  }
  if (cfg.output.snapshots) {
    write_trajectory(picard.trajectory, info_for(cfg, "picard"), out / "picard");
    if (splitting) write_trajectory(*splitting, info_for(cfg, "splitting"), out / "splitting");
  }
  report_checks(checks, out / "summary.txt", log);
  write_manifest(out, "run", &cfg);
  return all_pass(checks) ? 0 : 1;
}

KernelReport kernel_report(const RunConfig& cfg, const KernelHook& hook) {
  const auto& g = cfg.grid;
  auto velocity = std::make_shared<const VelocityGrid>(build_velocity_grid(g.shells, g.angles, g.s_max, g.polar_nodes));
  const AngularProfile profile = make_profile(cfg.kernel);
  ScatteringKernel kernel = build_kernel(profile, velocity, cfg.kernel.lambda);
  if (hook) kernel = hook(kernel);

  KernelReport report;
  report.checks.push_back(make_check("normalization_defect", normalization_defect(kernel), 1e-12));
  const double kbar = reverse_mass_bound(kernel);
  if (profile.rotation_invariant()) {
    report.checks.push_back(make_check("reverse_mass_minus_one", std::abs(kbar - 1.0), 1e-10));
  } else {
    report.checks.push_back({"reverse_mass", kbar, std::numeric_limits<double>::infinity(), std::isfinite(kbar)});
  }
  static const double quaternions[][4] = {
      {1.0, 0.3, -0.2, 0.5}, {0.2, 1.0, 0.4, -0.7}, {0.5, 0.5, 0.5, 0.5}, {0.9, -0.1, 0.8, 0.3}, {0.1, 0.2, 0.3, 0.9}};
  double rotation = 0.0;
  for (const auto& q : quaternions) {
    rotation = std::max(rotation, rotation_invariance_residual(profile, velocity, cfg.kernel.lambda,
                                                               rotation_from_quaternion(q[0], q[1], q[2], q[3])));
  }
  report.checks.push_back(make_check("rotation_invariance_residual", rotation, 1e-10));
  double h_err = 0.0;
  for (double s : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const double h = self_similar_H(s);
    report.h_table.push_back({s, h});
    h_err = std::max(h_err, std::abs(h - 1.0 / (s * s * s)) * s * s * s);
  }
  report.checks.push_back(make_check("h_law_relative_error", h_err, 1e-14));
  return report;
}

int cmd_verify_kernel(const RunConfig& cfg, const fs::path& out, std::ostream& log, const KernelHook& hook) {
  const KernelReport report = kernel_report(cfg, hook);
  fs::create_directories(out);
  log << "kernel profile=" << cfg.kernel.profile << " kappa=" << format_double(cfg.kernel.kappa)
      << " lambda=" << format_double(cfg.kernel.lambda) << " angles=" << cfg.grid.angles << '\n';
  {
    CsvWriter csv(out / "h_law.csv", cfg.checksum(), {"speed", "H"});
    for (const auto& row : report.h_table) {
      csv << row[0] << row[1];
      csv.end_row();
      log << "h_law speed=" << format_double(row[0]) << " H=" << format_double(row[1]) << '\n';
    }
  }
  report_checks(report.checks, out / "kernel_report.txt", log);
  write_manifest(out, "verify-kernel", &cfg);
  return all_pass(report.checks) ? 0 : 1;
}

ConvergenceStudy convergence_study(const RunConfig& cfg, int levels, std::ostream* log) {
  if (levels < 2) throw ConfigError("convergence: at least 2 levels required (got " + std::to_string(levels) + ")");
  std::vector<RunConfig> configs;
  for (int l = 0; l < levels; ++l) configs.push_back(coarsened(cfg, 1 << (levels - 1 - l)));
  require_memory(cfg, 1.0);

  const auto analytic = initial_function(cfg);
  const bool exact_transport = analytic.has_value() && cfg.initial.mollify_eps == 0.0;

  ConvergenceStudy study;
  for (int l = 0; l < levels; ++l) {
    const RunConfig& c = configs[static_cast<std::size_t>(l)];
    const Scenario sc = build_scenario(c);
    LevelMetrics lm;
    lm.level = l;
    lm.cells = c.grid.cells;
    lm.steps = c.picard.steps;
    if (log != nullptr) {
      *log << "level " << l << ": cells " << c.grid.cells[0] << ", steps " << c.picard.steps << '\n';
    }

    if (exact_transport) {
      const ScatteringKernel free = build_kernel(make_profile(c.kernel), sc.velocity, 0.0);
      const PicardResult r = run_picard(sc.initial, free, DampingModel::zero(), c.picard);
      const DistributionField& last = r.trajectory[r.trajectory.size() - 1];
      const double T = c.picard.horizon;
      const SpatialGrid& sg = sc.grid->spatial();
      const DistributionField exact = DistributionField::sample(sc.grid, [&](const Vec3& x, const Vec3& xi) {
        Vec3 back = x;
        for (int d = 0; d < sg.dim(); ++d) back[d] = sg.wrap(d, x[d] - T * xi[d]);
        return (*analytic)(back, xi);
      });
      const Trajectory a(T, 1, {exact, exact});
      const Trajectory b(T, 1, {last, last});
      lm.values["transport_error"] = relative_l1_gap(a, b);
    }

    {
      RunConfig hc = c;
      for (int d = 0; d < hc.grid.dim; ++d) hc.grid.cells[d] = 2;
      const Scenario hs = build_scenario(hc);
      // Spatial average of the level's initial data.
      const std::size_t n = hs.grid->velocity_nodes();
      std::vector<double> avg(n, 0.0);
      const auto src = sc.initial.values();
      const std::size_t cells = sc.grid->spatial().cell_count();
      for (std::size_t k = 0; k < n; ++k) {
        CompensatedSum s;
        for (std::size_t cc = 0; cc < cells; ++cc) s.add(src[cc * n + k]);
        avg[k] = s.value() / static_cast<double>(cells);
      }
      std::vector<double> values(hs.grid->size());
      for (std::size_t cc = 0; cc < hs.grid->spatial().cell_count(); ++cc) {
        std::copy(avg.begin(), avg.end(), values.begin() + static_cast<std::ptrdiff_t>(cc * n));
      }
      const DistributionField f0(hs.grid, std::move(values));
      const PicardResult r = run_picard(f0, hs.kernel, hs.damping, hc.picard);
      lm.values["homogeneous_decay_error"] = homogeneous_density_error(r.trajectory, hs.damping);
    }

    const PicardResult r = run_picard(sc.initial, sc.kernel, sc.damping, c.picard);
    const GronwallReport gr = check_gronwall_trace(r.trace, c.picard, reverse_mass_bound(sc.kernel), sc.kernel.lambda());
    lm.gronwall_violations = gr.sup_norm.violations + gr.energy.violations;
    double ledger = 0.0;
    for (double m : {0.0, 2.0, 3.0}) {
      ledger = std::max(ledger, energy_ledger(r.trajectory, sc.damping, m).max_relative_residual());
    }
    lm.values["ledger_residual"] = ledger;
    const auto battery = standard_test_battery(sc.grid->spatial(), c.picard.horizon);
    double weak = 0.0;
    for (const auto& w : weak_form_residual(r.trajectory, sc.kernel, sc.damping, battery)) {
      weak = std::max(weak, w.relative());
    }
    lm.values["weak_form_residual"] = weak;
    const Trajectory split = run_splitting(sc.initial, sc.kernel, sc.damping, c.picard.horizon, c.picard.steps);
    lm.values["picard_splitting_gap"] = relative_l1_gap(r.trajectory, split);
    study.levels.push_back(std::move(lm));
  }

  for (const auto& [metric, _] : study.levels.back().values) {
    for (int l = 0; l + 1 < levels; ++l) {
      const double coarse = study.levels[static_cast<std::size_t>(l)].values.at(metric);
      const double fine = study.levels[static_cast<std::size_t>(l) + 1].values.at(metric);
      const double order = (coarse < kRoundOff && fine < kRoundOff) ? std::numeric_limits<double>::quiet_NaN()
                                                                      : std::log2(coarse / fine);
      study.orders.push_back({metric, l, l + 1, order});
    }
  }

  // Order requirements: minimum over all level pairs, or closeness to 2 on the finest pair.
  auto orders_of = [&](const std::string& metric) {
    std::vector<double> out;
    for (const auto& o : study.orders) {
      if (o.metric == metric) out.push_back(o.order);
    }
    return out;
  };
  auto min_order_check = [&](const std::string& metric, double floor) {
    const auto os = orders_of(metric);
    if (os.empty()) return;
    double worst = std::numeric_limits<double>::infinity();
    bool pass = true;
    for (double o : os) {
      if (std::isnan(o)) continue;
      worst = std::min(worst, o);
      pass = pass && o >= floor;
    }
    study.checks.push_back({metric + "_min_order", worst, floor, pass});
  };
  auto second_order_check = [&](const std::string& metric) {
    const auto os = orders_of(metric);
    const double o = os.back();
    study.checks.push_back({metric + "_order_minus_2", std::isnan(o) ? 0.0 : std::abs(o - 2.0), 0.3,
                            std::isnan(o) || std::abs(o - 2.0) <= 0.3});
  };
  if (exact_transport) min_order_check("transport_error", 1.0);
  second_order_check("homogeneous_decay_error");
  second_order_check("ledger_residual");
  min_order_check("weak_form_residual", 1.0);
  min_order_check("picard_splitting_gap", std::numeric_limits<double>::min());
  std::size_t violations = 0;
  for (const auto& lm : study.levels) violations += lm.gronwall_violations;
  study.checks.push_back({"gronwall_violations", static_cast<double>(violations), 0.0, violations == 0});
  return study;
}

int cmd_convergence(const RunConfig& cfg, int levels, const fs::path& out, std::ostream& log) {
  const ConvergenceStudy study = convergence_study(cfg, levels, &log);
  fs::create_directories(out);
  const std::string sum = cfg.checksum();
  {
    CsvWriter csv(out / "convergence.csv", sum, {"level", "cells1", "cells2", "cells3", "steps", "metric", "value"});
    for (const auto& lm : study.levels) {
      for (const auto& [metric, value] : lm.values) {
        csv << lm.level << lm.cells[0] << lm.cells[1] << lm.cells[2] << lm.steps << metric << value;
        csv.end_row();
      }
    }
  }
  {
    CsvWriter csv(out / "orders.csv", sum, {"metric", "coarse_level", "fine_level", "order"});
    for (const auto& o : study.orders) {
      csv << o.metric << o.coarse << o.fine << o.order;
      csv.end_row();
      log << "order " << o.metric << " " << o.coarse << "->" << o.fine << ": " << format_double(o.order) << '\n';
    }
  }
  report_checks(study.checks, out / "summary.txt", log);
  write_manifest(out, "convergence", &cfg);
  return all_pass(study.checks) ? 0 : 1;
}

int cmd_energy_report(const fs::path& dir, const fs::path& out, std::ostream& log) {
  const StoredTrajectory st = read_trajectory(dir);
  fs::create_directories(out);
  std::vector<Check> checks;
  const std::string& sum = st.info.config_checksum;
  {
    CsvWriter csv(out / "energy_report.csv", sum, {"solver", "m", "t", "energy", "damping", "residual"});
    write_ledgers(csv, st.info.solver, st.trajectory, st.damping, st.info.moment_order, &checks);
  }
  double decrease = 0.0;
  for (double m : ledger_orders(st.info.moment_order)) {
    const EnergyLedger ledger = energy_ledger(st.trajectory, st.damping, m);
    for (std::size_t j = 1; j < ledger.damping.size(); ++j) {
      decrease = std::max(decrease, ledger.damping[j - 1] - ledger.damping[j]);
    }
  }
  checks.push_back({"damping_integral_decrease", decrease, 0.0, decrease <= 0.0});

  const MomentHypothesis mh = moment_hypothesis(st.trajectory, st.info.moment_order);
  double rise = 0.0;
  {
    CsvWriter csv(out / "moment_hypothesis.csv", sum, {"t", "moment_3_plus_m"});
    for (std::size_t j = 0; j < mh.by_node.size(); ++j) {
      csv << st.trajectory.time(j) << mh.by_node[j];
      csv.end_row();
      if (j > 0 && mh.by_node[0] > 0.0) rise = std::max(rise, (mh.by_node[j] - mh.by_node[j - 1]) / mh.by_node[0]);
    }
  }
  log << "moment hypothesis constant sup_t int |xi|^(3+m) f = " << format_double(mh.sup) << '\n';
  checks.push_back(make_check("moment_hypothesis_relative_rise", rise, kLedgerTolerance));
  report_checks(checks, out / "energy_summary.txt", log);
  return all_pass(checks) ? 0 : 1;
}

int cmd_weak_form(const fs::path& dir, const fs::path& out, std::ostream& log) {
  const StoredTrajectory st = read_trajectory(dir);
  fs::create_directories(out);
  const auto battery = standard_test_battery(st.trajectory.grid().spatial(), st.trajectory.horizon());
  const auto residuals = weak_form_residual(st.trajectory, st.kernel, st.damping, battery);
  std::vector<Check> checks;
  CsvWriter csv(out / "weak_form.csv", st.info.config_checksum, {"test_function", "residual", "scale", "relative"});
  for (const auto& r : residuals) {
    csv << r.name << r.residual << r.scale << r.relative();
    csv.end_row();
    checks.push_back(make_check("weak_form[" + r.name + "]", r.relative(), kWeakFormTolerance));
  }
  report_checks(checks, out / "weak_form_summary.txt", log);
  return all_pass(checks) ? 0 : 1;
}

}  // namespace kinetic::app
