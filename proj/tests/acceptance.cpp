// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero if
// any criterion fails.

#include "oracles/t_nls_oracle.hpp"
#include "wavescreen/coefficients.hpp"
#include "wavescreen/config.hpp"
#include "wavescreen/degeneracy.hpp"
#include "wavescreen/errors.hpp"
#include "wavescreen/manifold.hpp"
#include "wavescreen/report.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace wavescreen;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double budget_s;  // 0 = no runtime bound
  std::function<Outcome()> run;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

const WaveSystem nls111 = make_system(SystemId::NlsKdv, {1, 1, 1});

bool same_point(std::span<const double> a, std::span<const double> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

Outcome parameterization() {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-5, 5);
  const auto& m3 = builtin_process("nls-M3");
  const auto& cal = builtin_process("ck-calM1");
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const auto p = param_m3_nlskdv(u(rng), u(rng));
    const auto mm = mismatch(m3, nls111, p.ks);
    worst = std::max({worst, std::abs(mm.dk), std::abs(mm.dw)});
  }
  const SystemParams sets[] = {{2, 1, -1}, {1, 3, 1}, {1, 1, 1}, {-1, -1, -2}, {0.5, 2, 0.25}};
  int ck_points = 0;
  for (const auto& ps : sets) {
    const auto sys = make_system(SystemId::KdvCkdv, ps);
    for (int i = 0; i < 10000; ++i) {
      const double k2 = u(rng), k4 = u(rng);
      for (auto sheet : {Sheet::plus, Sheet::minus}) {
        const auto q = param_m1_kdvckdv(k2, k4, ps, sheet);
        if (!q) continue;
        const auto mm = mismatch(cal, sys, q->ks);
        worst = std::max({worst, std::abs(mm.dk), std::abs(mm.dw)});
        ++ck_points;
      }
    }
  }
  return {worst < 1e-12 && ck_points > 0,
          "max residual " + fmt(worst) + " over 10000 + " + std::to_string(ck_points) + " points"};
}

Outcome removable() {
  SamplingOptions opts;
  opts.k_min = 0.0;  // M1 is the zero-wavenumber component only
  const auto m1 = sample_manifold(make_chart(builtin_process("nls-M1"), nls111), 1000, 2, opts);
  const auto m2 = sample_manifold(make_chart(builtin_process("nls-M2"), nls111), 1000, 3, opts);
  int u_nonzero = 0, u_poles = 0, v_nonzero = 0, v_poles = 0;
  for (const auto& p : m1.points) {
    u_nonzero += kernel3(KernelId::U_nls, p.ks, nls111.params()) != 0.0;
    u_poles += transform_kernel(KernelId::U1_nls, p.ks, nls111).is_pole();
  }
  for (const auto& p : m2.points) {
    v_nonzero += kernel3(KernelId::V_nls, p.ks, nls111.params()) != 0.0;
    v_poles += transform_kernel(KernelId::U2_nls, p.ks, nls111).is_pole();
  }
  const bool enough = m1.points.size() == 1000 && m2.points.size() == 1000;
  return {enough && u_nonzero == 0 && u_poles == 0 && v_nonzero == 0 && v_poles == 0,
          "M1: U!=0 at " + std::to_string(u_nonzero) + ", poles " + std::to_string(u_poles) +
              "; M2: V!=0 at " + std::to_string(v_nonzero) + ", poles " + std::to_string(v_poles) +
              " (of " + std::to_string(m1.points.size()) + "/" + std::to_string(m2.points.size()) +
              ")"};
}

Outcome coefficient_oracle() {
  // T vanishes identically when k2, k4 > 0 (every term is gated), so generic
  // points are drawn with k2, k4 < 0 where the long waves interact.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5, -0.05);
  int n = 0, nonzero = 0;
  double worst = 0.0;
  while (n < 100) {
    const auto p = param_m3_nlskdv(u(rng), u(rng));
    const auto& k = p.ks;
    if (oracle::min_denominator(k[0], k[1], k[2], k[3]) < 1e-3) continue;
    const auto ref = oracle::t_nls(k[0], k[1], k[2], k[3], 1, 1);
    const auto got = evaluate_t_nls(k, nls111.params());
    const double want = static_cast<double>(ref.t1 + ref.t2);
    const double rel = got.total.is_pole()
                           ? INFINITY
                           : std::abs(got.total.value - want) / std::max(std::abs(want), 1e-300);
    worst = std::max(worst, want == 0.0 && got.total.value == 0.0 ? 0.0 : rel);
    nonzero += std::abs(got.total.value) > 1e-6;
    ++n;
  }
  return {worst < 1e-9 && nonzero >= 99,
          "max rel err " + fmt(worst) + ", nonzero at " + std::to_string(nonzero) + "/100"};
}

Outcome sign_regions() {
  std::string detail;
  bool ok = true;
  for (const auto& [region, want] :
       {std::pair{region_a1(), SignVerdict::all_negative}, {region_a2(), SignVerdict::all_positive}}) {
    for (auto id : {KernelId::P1_ck, KernelId::S1_ck}) {
      detail += std::string(to_string(id)) + "/" + region.name + ": ";
      try {
        const auto r = sign_scan(id, region, 1000, 4);
        const bool pass = r.verdict == want && r.min_abs > 0.0 && r.valid == 1000;
        ok = ok && pass;
        detail += std::string(to_string(r.verdict)) + " (" + std::to_string(r.valid) + " valid, " +
                  std::to_string(r.negative) + "-/" + std::to_string(r.positive) + "+); ";
      } catch (const EmptyRegionError&) {
        ok = false;
        detail += "no all-negative manifold points; ";
      }
    }
  }
  return {ok, detail};
}

Outcome rank_oracle() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  Eigen::MatrixXd args(500, 4);
  for (int i = 0; i < 500; ++i) {
    const double x = u(rng), y = u(rng);
    args.row(i) << x, y, x + y, x - y;
  }
  const auto c = build_collocation(args, web_layout(4), BasisKind::chebyshev, 4);
  const auto r = rank_analyze(c, {});
  double worst = 0.0;
  for (const auto& e : r.extra) worst = std::max(worst, e.residual_norm);
  return {r.nullspace_dim == 3 && worst < 1e-8,
          "relations " + std::to_string(r.nullspace_dim) + ", max residual " + fmt(worst)};
}

Outcome nondegeneracy() {
  const auto ck = make_system(SystemId::KdvCkdv, {2, 1, -1});
  int runs = 0, good = 0;
  std::string bad;
  for (const auto& [name, sys] : {std::pair<std::string, WaveSystem>{"nls-M3", nls111},
                                  std::pair<std::string, WaveSystem>{"ck-calM1", ck}}) {
    for (int degree : {4, 6, 8}) {
      for (std::uint64_t seed : {1u, 2u}) {
        for (auto basis : {BasisKind::chebyshev, BasisKind::monomial}) {
          DegeneracyOptions o;
          o.degree = degree;
          o.seed = seed;
          o.basis = basis;
          const auto r = degeneracy_verdict(builtin_process(name), sys, o);
          ++runs;
          if (r.verdict == DegeneracyVerdict::nondegenerate_rank2)
            ++good;
          else
            bad += " " + name + "/D" + std::to_string(degree) + "=" + std::string(to_string(r.verdict));
        }
      }
    }
  }
  return {good == runs, std::to_string(good) + "/" + std::to_string(runs) + " nondegenerate" + bad};
}

Outcome special_cases() {
  const auto& cal = builtin_process("ck-calM1");
  std::string detail;
  bool ok = true;
  auto degenerate = [&](const std::string& label, const RankReport& r) {
    bool extra_tied = false;
    if (r.tied) {
      for (const auto& e : r.tied->extra) extra_tied = extra_tied || e.residual_norm < 1e-6;
    }
    const bool pass = r.verdict == DegeneracyVerdict::degenerate_rank3_plus || extra_tied;
    ok = ok && pass;
    detail += label + ": " + std::string(to_string(r.verdict)) + " via " + r.decided_by + "; ";
  };
  degenerate("a=g=1", degeneracy_verdict(cal, make_system(SystemId::KdvCkdv, {1, 1, 1})));
  const auto a0 = make_system(SystemId::KdvCkdv, {0, 1, 1});
  const auto chart = make_chart(cal, a0);
  if (chart.solver != ChartSolver::generic_poly) ok = false;
  degenerate("a=0", degeneracy_verdict(chart, {}));
  degenerate("g=0", degeneracy_verdict(cal, make_system(SystemId::KdvCkdv, {1, 1, 0})));

  const AnalysisConfig cfg;
  const auto scan = scan_params(parse_grid_axis("-2:2:41"), parse_grid_axis("-2:2:41"), 1.0, cfg);
  int special = 0;
  for (const auto& row : scan.cells)
    for (auto v : row) special += v == OverallVerdict::special_case_open;
  const bool localized = special_cells_localized(scan);
  ok = ok && localized && special > 0;
  detail += "scan: " + std::to_string(special) + " special cells, localized=" +
            (localized ? "yes" : "no");
  return {ok, detail};
}

Outcome billiard() {
  const auto& quad = builtin_process("quad4");
  DegeneracyOptions o;
  o.points = 1000;
  const auto r = degeneracy_verdict(quad, nls111, o);
  const auto& m3 = builtin_process("nls-M3");
  const auto s = sample_manifold(make_chart(m3, nls111), 1000, 1);
  const double f3 = detect_billiard(s.points, m3);
  return {r.billiard_fraction == 1.0 && r.verdict == DegeneracyVerdict::billiard_infinite_rank &&
              f3 < 0.05,
          "quad4 fraction " + fmt(r.billiard_fraction) + " (" + std::string(to_string(r.verdict)) +
              "), M3 fraction " + fmt(f3)};
}

Outcome three_wave() {
  const auto& m1 = builtin_process("ck-M1");
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-5, 5);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const SystemParams p{u(rng), u(rng), u(rng)};
    const auto sys = make_system(SystemId::KdvCkdv, p);
    const double k2 = u(rng), k3 = u(rng);
    const std::vector<double> ks{k2 + k3, k2, k3};
    const double want = -3.0 * p.gamma * ks[0] * k2 * k3;
    const double err = std::abs(mismatch(m1, sys, ks).dw - want) / std::max(1.0, std::abs(want));
    worst = std::max(worst, err);
  }
  const auto r = degeneracy_verdict(m1, make_system(SystemId::KdvCkdv, {1, 1, 0}));
  return {worst < 1e-12 && r.full_manifold && r.verdict == DegeneracyVerdict::degenerate_rank3_plus,
          "max factorization error " + fmt(worst) + ", gamma=0: full_manifold=" +
              (r.full_manifold ? "yes" : "no") + ", " + std::string(to_string(r.verdict))};
}

Outcome end_to_end() {
  const AnalysisConfig cfg;
  const auto rn = analyze(nls111, cfg);
  bool m3_ist = false;
  for (const auto& f : rn.findings)
    m3_ist = m3_ist || (f.process == "nls-M3" && f.implication == Implication::blocks_ist_solvability);
  const auto ck = make_system(SystemId::KdvCkdv, {1, 1, 1});
  const auto rc = analyze(ck, cfg);
  const auto j1 = to_json(rn, cfg).dump() + to_json(rc, cfg).dump();
  const auto j2 = to_json(analyze(nls111, cfg), cfg).dump() + to_json(analyze(ck, cfg), cfg).dump();
  return {rn.overall == OverallVerdict::nonintegrable && m3_ist &&
              rc.overall == OverallVerdict::special_case_open && j1 == j2,
          "nls-kdv " + std::string(to_string(rn.overall)) + " (M3 blocks IST: " +
              (m3_ist ? "yes" : "no") + "), kdv-ckdv " + std::string(to_string(rc.overall)) +
              ", identical JSON: " + (j1 == j2 ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "parameterization fidelity", 1.0, parameterization},
      {2, "removable singularities", 0.0, removable},
      {3, "coefficient oracle", 0.0, coefficient_oracle},
      {4, "sign regions", 10.0, sign_regions},
      {5, "rank solver oracle", 0.0, rank_oracle},
      {6, "nondegeneracy verdicts", 0.0, nondegeneracy},
      {7, "special cases", 300.0, special_cases},
      {8, "billiard detection", 0.0, billiard},
      {9, "three-wave structure", 0.0, three_wave},
      {10, "end-to-end", 0.0, end_to_end},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0.0 && dt > c.budget_s) {
      o.pass = false;
      o.detail += " [over time budget " + fmt(c.budget_s) + " s]";
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << ' ' << c.id << ' ' << c.title << " (" << fmt(dt)
              << " s): " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << '/' << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
