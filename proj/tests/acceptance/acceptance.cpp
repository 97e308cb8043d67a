// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "config.hpp"
#include "fixtures.hpp"
#include "kinetic/error.hpp"
#include "kinetic/format.hpp"
#include "kinetic/moments.hpp"
#include "kinetic/parallel.hpp"
#include "kinetic/picard.hpp"
#include "kinetic/snapshot.hpp"
#include "kinetic/verify.hpp"
#include "scenario.hpp"

using namespace kinetic;
using namespace kinetic::app;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = KINETIC_CONFIG_DIR;

// Every negative entry is rejected by DistributionField; any such rejection
// anywhere in the suite is a positivity failure.
std::size_t g_positivity_failures = 0;
// Gronwall violations of every Picard run made below.
std::size_t g_gronwall_violations = 0;
std::size_t g_gronwall_runs = 0;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string fmt(double v) { return format_double(v); }

PicardResult picard(const DistributionField& f0, const ScatteringKernel& K, const DampingModel& mu,
                    const PicardConfig& cfg) {
  PicardResult r = run_picard(f0, K, mu, cfg);
  const GronwallReport gr = check_gronwall_trace(r.trace, cfg, reverse_mass_bound(K), K.lambda());
  g_gronwall_violations += gr.sup_norm.violations + gr.energy.violations;
  ++g_gronwall_runs;
  return r;
}

const Check* find_check(const ConvergenceStudy& s, const std::string& name) {
  for (const auto& c : s.checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::vector<double> orders(const ConvergenceStudy& s, const std::string& metric) {
  std::vector<double> out;
  for (const auto& o : s.orders) {
    if (o.metric == metric) out.push_back(o.order);
  }
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "/" : "") + fmt(v[i]);
  return s;
}

void add_study_gronwall(const ConvergenceStudy& s) {
  for (const auto& lm : s.levels) {
    g_gronwall_violations += lm.gronwall_violations;
    ++g_gronwall_runs;
  }
}

// Shared convergence studies of the default scenario (with and without damping).
struct Studies {
  ConvergenceStudy damped;
  ConvergenceStudy undamped;
  double seconds = 0.0;
};

Studies& studies() {
  static Studies s = [] {
    const auto t0 = std::chrono::steady_clock::now();
    Studies out;
    const RunConfig cfg = load_config(kConfigs / "default.json");
    out.damped = convergence_study(cfg, 3);
    RunConfig free = cfg;
    free.damping.kind = "zero";
    out.undamped = convergence_study(free, 3);
    add_study_gronwall(out.damped);
    add_study_gronwall(out.undamped);
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
  }();
  return s;
}

// 1. Kernel laws.
void kernel_laws(Outcome& o) {
  auto vg = testing::velocity(4, 32);
  double worst_norm = 0.0, worst_rev = 0.0, worst_rot = 0.0, worst_h = 0.0;
  const double quats[][4] = {{0.9, -0.1, 0.8, 0.3}, {0.2, 0.7, -0.4, 0.5}, {1.0, 0.0, 0.0, 0.3}};
  for (const auto& p : {AngularProfile::isotropic(), AngularProfile::forward_peaked(3.0)}) {
    const ScatteringKernel K = build_kernel(p, vg, 1.0);
    worst_norm = std::max(worst_norm, normalization_defect(K));
    worst_rev = std::max(worst_rev, std::abs(reverse_mass_bound(K) - 1.0));
    for (const auto& q : quats) {
      worst_rot = std::max(worst_rot, rotation_invariance_residual(p, vg, 1.0, rotation_from_quaternion(q[0], q[1], q[2], q[3])));
    }
  }
  for (double s : {0.25, 0.5, 1.0, 2.0, 4.0, 3.0, 0.1}) {
    const double exact = 1.0 / (s * s * s);
    worst_h = std::max(worst_h, std::abs(self_similar_H(s) - exact) / exact);
  }
  o.detail << "normalization=" << fmt(worst_norm) << " reverse_mass=" << fmt(worst_rev)
           << " rotation=" << fmt(worst_rot) << " H_law=" << fmt(worst_h);
  o.require(worst_norm < 1e-12, "normalization defect < 1e-12");
  o.require(worst_rev < 1e-10, "|K_bar - 1| < 1e-10");
  o.require(worst_rot < 1e-10, "rotation residual < 1e-10");
  o.require(worst_h <= 1e-14, "H(s) = s^-3 to 1e-14");
}

// 2. Collision invariants.
void collision_invariants(Outcome& o) {
  auto g = testing::phase_grid(2, 4, 1.0, 4, 16, 2.0);
  auto vg = std::make_shared<const VelocityGrid>(g->velocity());
  const ScatteringKernel Ks[] = {build_kernel(AngularProfile::isotropic(), vg, 1.0),
                                 build_kernel(AngularProfile::forward_peaked(3.0), vg, 1.0)};
  std::mt19937_64 rng(20240601);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = testing::random_field(g, rng, 0.0, 1.0 + trial % 7);
    for (double m : {0.0, 1.0, 2.0, 3.0}) {
      const double scale =
          phase_integral(f, [m](const Vec3&, const Vec3& xi) { return 1.0 + std::pow(std::sqrt(dot(xi, xi)), m); });
      for (const auto& K : Ks) worst = std::max(worst, collision_invariant_defect(f, K, m) / scale);
    }
  }
  o.detail << "fields=100 worst_relative_defect=" << fmt(worst);
  o.require(worst < 1e-12, "defect < 1e-12 x scale");
}

// 4. Constructive scheme.
void scheme(Outcome& o) {
  // Free transport on grid-aligned characteristics: two opposite equatorial
  // directions at |xi| = 1 and dt = h, so every step moves one whole cell.
  {
    auto vg = std::make_shared<const VelocityGrid>(build_velocity_grid(1, 2, 2.0));
    auto g = make_phase_grid(SpatialGrid(2, {1.0, 1.0, 1.0}, {8, 8, 1}), *vg);
    std::mt19937_64 rng(4);
    const auto f0 = testing::random_field(g, rng);
    PicardConfig cfg;
    cfg.horizon = 1.0;
    cfg.steps = 8;
    const auto r = picard(f0, build_kernel(AngularProfile::isotropic(), vg, 0.0), DampingModel::zero(), cfg);
    const auto& sg = g->spatial();
    double err = 0.0;
    for (std::size_t j = 0; j < r.trajectory.size(); ++j) {
      for (std::size_t c = 0; c < sg.cell_count(); ++c) {
        auto idx = sg.coords(c);
        for (std::size_t a = 0; a < 2; ++a) {
          // Whole-cell displacement j dt xi_d / h along each active axis.
          auto src = idx;
          for (int d = 0; d < 2; ++d) {
            const int shift = static_cast<int>(std::lround(vg->velocity(0, a)[d] * static_cast<double>(j)));
            src[d] = ((idx[d] - shift) % 8 + 8) % 8;
          }
          err = std::max(err, std::abs(r.trajectory[j](c, 0, a) - f0(sg.index(src), 0, a)));
        }
      }
    }
    o.detail << "aligned_iterations=" << r.trace.fixed_point_iterate << " aligned_error=" << fmt(err);
    o.require(r.trace.fixed_point_iterate == 1, "free transport converges in one iteration");
    o.require(err == 0.0, "exact translation on grid-aligned shifts");
  }
  // Free transport at the default geometry (not grid-aligned).
  {
    const RunConfig cfg = load_config(kConfigs / "default.json");
    const Scenario sc = build_scenario(cfg);
    const auto r = picard(sc.initial, build_kernel(make_profile(cfg.kernel), sc.velocity, 0.0), DampingModel::zero(),
                          cfg.picard);
    o.detail << " default_free_iterations=" << r.trace.fixed_point_iterate;
    o.require(r.trace.fixed_point_iterate == 1, "free transport at default converges in one iteration");
  }
  // Homogeneous decay n(t) = n0 / (1 + c n0 t).
  {
    const RunConfig cfg = load_config(kConfigs / "homogeneous_decay.json");
    const Scenario sc = build_scenario(cfg);
    RunConfig half = cfg;
    half.picard.steps /= 2;
    const double fine = homogeneous_density_error(picard(sc.initial, sc.kernel, sc.damping, cfg.picard).trajectory, sc.damping);
    const double coarse =
        homogeneous_density_error(picard(sc.initial, sc.kernel, sc.damping, half.picard).trajectory, sc.damping);
    const double order = std::log2(coarse / fine);
    o.detail << " homogeneous_error=" << fmt(fine) << " (Nt=" << cfg.picard.steps << ") order=" << fmt(order);
    o.require(fine < 1e-3, "homogeneous error < 1e-3");
    o.require(std::abs(order - 2.0) <= 0.3, "homogeneous order 2 +- 0.3");
  }
  // Angular relaxation of the current at rate lambda.
  {
    RunConfig cfg = load_config(kConfigs / "homogeneous_decay.json");
    cfg.damping.kind = "zero";
    cfg.picard.horizon = 1.0;
    cfg.picard.steps = 100;
    const Scenario sc = build_scenario(cfg);
    const auto r = picard(sc.initial, sc.kernel, sc.damping, cfg.picard);
    const double j0 = compute_moments(sc.initial, 0.0).current[0][0];
    const double jT = compute_moments(r.trajectory[r.trajectory.size() - 1], 0.0).current[0][0];
    const double rate = -std::log(jT / j0) / cfg.picard.horizon;
    const double rel = std::abs(rate - cfg.kernel.lambda) / cfg.kernel.lambda;
    o.detail << " relaxation_rate=" << fmt(rate) << " lambda=" << fmt(cfg.kernel.lambda);
    o.require(rel < 0.02, "relaxation rate within 2% of lambda");
  }
}

// 5. Picard vs splitting.
void dual_solver(Outcome& o) {
  const auto& s = studies().damped;
  const double gap = s.levels.back().values.at("picard_splitting_gap");
  const auto os = orders(s, "picard_splitting_gap");
  std::vector<double> gaps;
  for (const auto& lm : s.levels) gaps.push_back(lm.values.at("picard_splitting_gap"));
  o.detail << "gap=" << fmt(gap) << " gaps=" << join(gaps) << " orders=" << join(os);
  o.require(gap < 5e-3, "gap < 5e-3 at default resolution");
  for (double v : os) o.require(v > 0.0, "gap shrinks under refinement");
}

// 6. Energy ledger.
void energy(Outcome& o) {
  const RunConfig cfg = load_config(kConfigs / "default.json");
  const Scenario sc = build_scenario(cfg);
  const auto r = picard(sc.initial, sc.kernel, sc.damping, cfg.picard);
  o.detail << "default:";
  for (double m : {0.0, 2.0, 3.0}) {
    const double res = energy_ledger(r.trajectory, sc.damping, m).max_relative_residual();
    o.detail << " m" << m << "=" << fmt(res);
    o.require(res < 1e-3, "ledger residual < 1e-3 E_m(0)");
  }
  for (const auto* s : {&studies().damped, &studies().undamped}) {
    const bool damped = s == &studies().damped;
    std::vector<double> values;
    for (const auto& lm : s->levels) values.push_back(lm.values.at("ledger_residual"));
    const auto os = orders(*s, "ledger_residual");
    o.detail << (damped ? " refinement=" : " mu0_drift=") << join(values) << " orders=" << join(os);
    o.require(values.back() < 1e-3, damped ? "ledger residual < 1e-3" : "mu=0 drift < 1e-3");
    const Check* c = find_check(*s, "ledger_residual_order_minus_2");
    o.require(c != nullptr && c->pass, damped ? "ledger order 2 +- 0.3" : "mu=0 drift order 2 +- 0.3");
  }
}

// 7. Weak form.
void weak_form(Outcome& o) {
  const auto& s = studies().damped;
  std::vector<double> values;
  for (const auto& lm : s.levels) values.push_back(lm.values.at("weak_form_residual"));
  const auto os = orders(s, "weak_form_residual");
  o.detail << "relative=" << join(values) << " orders=" << join(os);
  for (double v : os) o.require(std::isnan(v) || v >= 1.0, "weak-form order >= 1");
  o.require(values.back() < 1e-3, "finest residual < 1e-3 x scale");
  // Per test function at the finest level.
  const RunConfig cfg = load_config(kConfigs / "default.json");
  const Scenario sc = build_scenario(cfg);
  const auto r = picard(sc.initial, sc.kernel, sc.damping, cfg.picard);
  const auto battery = standard_test_battery(sc.grid->spatial(), cfg.picard.horizon);
  double worst = 0.0;
  for (const auto& w : weak_form_residual(r.trajectory, sc.kernel, sc.damping, battery)) {
    worst = std::max(worst, w.relative());
  }
  o.detail << " battery_worst=" << fmt(worst);
  o.require(worst < 1e-3, "every battery function < 1e-3 x scale");
}

// 8. Moment interpolation.
void moment_interpolation(Outcome& o) {
  auto g = testing::phase_grid(2, 4, 1.0, 6, 16, 3.0);
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> radius(0.05, 4.0);
  std::size_t checked = 0, violations = 0, optimal_violations = 0;
  const double ps[] = {1.0, 2.0, 3.0, 4.5};
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = testing::random_field(g, rng, 0.0, 0.5 + trial);
    const double p = ps[trial % 4];
    for (int r = 0; r < 10; ++r) {
      const InterpolationBound b = interpolation_bound(f, p, radius(rng));
      for (std::size_t c = 0; c < b.lhs.size(); ++c) {
        ++checked;
        if (b.lhs[c] > b.rhs[c] * (1.0 + 1e-10)) ++violations;
      }
    }
    const OptimalRadiusBound ob = optimal_radius_bound(f, p);
    for (std::size_t c = 0; c < ob.lhs.size(); ++c) {
      if (ob.lhs[c] > ob.rhs[c] * (1.0 + 1e-10) || ob.rhs[c] > ob.collapsed[c] * (1.0 + 1e-10)) ++optimal_violations;
    }
  }
  o.detail << "cells_checked=" << checked << " violations=" << violations << " optimal_violations=" << optimal_violations;
  o.require(violations == 0, "pointwise bound");
  o.require(optimal_violations == 0, "optimal-R collapse");
}

// 9. Mollification.
void mollification(Outcome& o) {
  auto g = testing::phase_grid(2, 12, 1.0, 3, 16, 2.0);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> eps_dist(0.05, 0.5);
  double worst_comm = 0.0, worst_mass = 0.0, worst_energy = 0.0;
  const std::size_t slices = g->velocity_nodes();
  const std::size_t cells = g->spatial().cell_count();
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = testing::random_field(g, rng);
    const double eps = eps_dist(rng);
    const auto cd = commutation_defect(f, [](const Vec3& xi) { return 1.0 + xi[0] * xi[1] + std::sin(xi[2]); }, eps);
    worst_comm = std::max(worst_comm, cd.defect / cd.scale);
    const auto mf = mollify(f, eps);
    for (std::size_t k = 0; k < slices; ++k) {
      double a = 0.0, b = 0.0;
      for (std::size_t c = 0; c < cells; ++c) {
        a += f.values()[c * slices + k];
        b += mf.values()[c * slices + k];
      }
      worst_mass = std::max(worst_mass, std::abs(b - a) / a);
    }
    for (double m : {0.0, 2.0, 3.0}) {
      const double E = energy_functional(f, m);
      worst_energy = std::max(worst_energy, std::abs(energy_functional(mf, m) - E) / E);
    }
  }
  o.detail << "fields=50 commutation=" << fmt(worst_comm) << " mass=" << fmt(worst_mass)
           << " energy=" << fmt(worst_energy);
  o.require(worst_comm < 1e-13, "commutation defect < 1e-13 x scale");
  o.require(worst_mass < 1e-13, "mass preservation to 1e-13");
  o.require(worst_energy < 1e-13, "E_m invariance to 1e-13");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 10. Positivity and determinism.
void positivity_determinism(Outcome& o) {
  const RunConfig cfg = load_config(kConfigs / "default.json");
  const fs::path root = fs::temp_directory_path() / "kinetic_acceptance";
  fs::remove_all(root);
  std::ostringstream log;
  set_worker_count(1);
  const int a = cmd_run(cfg, root / "a", log);
  set_worker_count(0);
  const int b = cmd_run(cfg, root / "b", log);
  set_worker_count(3);
  const int c = cmd_run(cfg, root / "c", log);
  set_worker_count(0);
  std::size_t files = 0, differing = 0;
  for (const auto& entry : fs::recursive_directory_iterator(root / "a")) {
    if (!entry.is_regular_file()) continue;
    ++files;
    const auto rel = fs::relative(entry.path(), root / "a");
    const std::string ref = slurp(entry.path());
    if (!fs::exists(root / "b" / rel) || slurp(root / "b" / rel) != ref) ++differing;
    if (!fs::exists(root / "c" / rel) || slurp(root / "c" / rel) != ref) ++differing;
  }
  // Stored iterates are re-read through the validating constructor.
  double min_entry = 0.0;
  std::size_t stored = 0;
  for (const char* solver : {"picard", "splitting"}) {
    for (const auto& entry : fs::directory_iterator(root / "a" / solver)) {
      if (entry.path().extension() != ".hdr") continue;
      const DistributionField f = read_snapshot(entry.path().parent_path() / entry.path().stem());
      ++stored;
      for (double v : f.values()) min_entry = std::min(min_entry, v);
    }
  }
  fs::remove_all(root);
  o.detail << "runs=3 exit=" << a << "/" << b << "/" << c << " files=" << files << " differing=" << differing
           << " stored_fields=" << stored << " min_entry=" << fmt(min_entry)
           << " rejected_negative=" << g_positivity_failures;
  o.require(a == 0 && b == 0 && c == 0, "runs succeed");
  o.require(files > 0 && differing == 0, "reruns byte-identical");
  o.require(stored > 0 && min_entry >= 0.0, "no negative stored entry");
  o.require(g_positivity_failures == 0, "no negative entry in any acceptance run");
}

// 3. Gronwall: analytic envelopes plus every Picard run above.
void gronwall(Outcome& o) {
  const double tuples[][4] = {{0, 0, 0, 1},       {1, 0, 0, 0},       {0, 2, 0, 0.5},    {0, 0, 3, 0.1},
                              {1, 2, 3, 0.2},     {3, 2, 1, 0.2},     {0.5, 0.5, 0.5, 2}, {10, 1, 1, 0.01},
                              {1e-3, 1e-4, 0, 5}, {2, 2, 7, 0},       {0.1, 4, 2, 1.5},  {6, 6, 6, 0.25}};
  double worst = 0.0;
  for (const auto& t : tuples) {
    const double K = std::max({t[0], t[1], t[2]});
    const double exact = K * std::exp(K * t[3]);
    const double got = gronwall_envelope(t[0], t[1], t[2], t[3]);
    worst = std::max(worst, exact == 0.0 ? std::abs(got) : std::abs(got - exact) / exact);
  }
  o.detail << "tuples=" << std::size(tuples) << " envelope_error=" << fmt(worst) << " picard_runs=" << g_gronwall_runs
           << " violations=" << g_gronwall_violations;
  o.require(worst <= 1e-14, "envelope matches K e^{Kt} to 1e-14");
  o.require(g_gronwall_runs > 0, "Picard runs observed");
  o.require(g_gronwall_violations == 0, "zero envelope violations");
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;  // runtime target; exceeding it fails the criterion
  std::function<void(Outcome&)> body;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "kernel laws", 1.0, kernel_laws},
      {2, "collision invariants", 10.0, collision_invariants},
      {4, "constructive scheme", 120.0, scheme},
      {5, "picard vs splitting", 600.0, dual_solver},
      {6, "energy ledger", 600.0, energy},
      {7, "weak formulation", 600.0, weak_form},
      {8, "moment interpolation", 600.0, moment_interpolation},
      {9, "mollification", 600.0, mollification},
      {10, "positivity and determinism", 600.0, positivity_determinism},
      {3, "gronwall envelopes", 600.0, gronwall},  // last: audits every Picard run above
  };

  struct Line {
    int id;
    std::string text;
    bool pass;
  };
  std::vector<Line> lines;
  for (auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const InvalidValue& e) {
      ++g_positivity_failures;
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (seconds > c.budget_seconds) o.require(false, "runtime " + fmt(seconds) + " s over budget");
    std::ostringstream line;
    line << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << o.detail.str()
         << " time=" << std::fixed;
    line.precision(2);
    line << seconds << "s";
    lines.push_back({c.id, line.str(), o.pass});
    std::cerr << "  finished criterion " << c.id << '\n';
  }
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) { return a.id < b.id; });
  bool all = true;
  for (const auto& l : lines) {
    std::cout << l.text << '\n';
    all = all && l.pass;
  }
  std::cout << (all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << '\n';
  return all ? 0 : 1;
}
