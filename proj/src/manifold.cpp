#include "wavescreen/manifold.hpp"

#include "wavescreen/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

namespace wavescreen {

std::string to_string(const BranchTag& tag) {
  switch (tag.kind) {
    case BranchTag::Kind::plus: return "plus";
    case BranchTag::Kind::minus: return "minus";
    case BranchTag::Kind::root: return "root" + std::to_string(tag.index);
  }
  return "root";
}

std::string to_string(ChartSolver solver) {
  switch (solver) {
    case ChartSolver::closed_form_nlskdv_m3: return "closed_form_nlskdv_M3";
    case ChartSolver::closed_form_kdvckdv_m1: return "closed_form_kdvckdv_M1";
    case ChartSolver::generic_poly: return "generic_poly";
  }
  return "generic_poly";
}

namespace {

ManifoldPoint with_residuals(const ResonanceProcess& process, const WaveSystem& system,
                             std::vector<double> ks, BranchTag tag) {
  const auto mm = mismatch(process, system, ks);
  return {std::move(ks), mm.dk, mm.dw, tag};
}

const WaveSystem& nls_reference() {
  static const WaveSystem sys = make_system(SystemId::NlsKdv, {});
  return sys;
}

Polynomial abs_law(const DispersionLaw& law) {
  auto p = law.polynomial().coeffs();
  for (auto& c : p) c = std::abs(c);
  return Polynomial(std::move(p));
}

// Frequency constraint after eliminating one wavenumber, as a polynomial in
// the remaining unknown. `magnitude` carries the same construction with every
// input replaced by its absolute value and is used to judge cancellation.
struct Elimination {
  int eliminated = -1;
  int root = -1;
  double a = 0.0;  // k_eliminated = a * x + b
  double b = 0.0;
  Polynomial poly;
  Polynomial magnitude;
};

Elimination eliminate(const ResonanceProcess& process, const WaveSystem& system,
                      const std::map<int, double>& free_assignment) {
  const int n = process.arity();
  std::vector<int> unsolved;
  for (int j = 0; j < n; ++j)
    if (!free_assignment.contains(j)) unsolved.push_back(j);
  for (const auto& [idx, _] : free_assignment)
    if (idx < 0 || idx >= n) throw ArgumentError("free index out of range: " + std::to_string(idx));
  if (unsolved.size() != 2)
    throw ArgumentError("solve_chart needs exactly two unsolved wave indices, got " +
                        std::to_string(unsolved.size()));

  Elimination e;
  e.eliminated = unsolved[0];
  e.root = unsolved[1];
  const auto& we = process.waves[static_cast<std::size_t>(e.eliminated)];
  const auto& wr = process.waves[static_cast<std::size_t>(e.root)];

  long double rest_k = 0.0L, rest_w = 0.0L, rest_abs_k = 0.0L, rest_abs_w = 0.0L;
  for (const auto& [idx, k] : free_assignment) {
    const auto& w = process.waves[static_cast<std::size_t>(idx)];
    rest_k += w.sigma * static_cast<long double>(k);
    rest_abs_k += std::abs(static_cast<long double>(k));
    const auto& law = system.law(w.branch);
    rest_w += w.sigma * eval_dispersion_extended(law, k);
    rest_abs_w += abs_law(law).eval_extended(std::abs(static_cast<long double>(k)));
  }
  // sigma_e k_e + sigma_r x + rest_k = 0
  e.a = -static_cast<double>(we.sigma * wr.sigma);
  e.b = -static_cast<double>(we.sigma * rest_k);

  const auto& law_e = system.law(we.branch);
  const auto& law_r = system.law(wr.branch);
  e.poly = law_e.polynomial().compose_affine(e.a, e.b) * static_cast<double>(we.sigma) +
           law_r.polynomial() * static_cast<double>(wr.sigma) +
           Polynomial({static_cast<double>(rest_w)});
  e.magnitude = abs_law(law_e).compose_affine(1.0, static_cast<double>(rest_abs_k)) +
                abs_law(law_r) + Polynomial({static_cast<double>(rest_abs_w)});
  e.poly = clean_cancellation(e.poly, e.magnitude, 64.0 * std::numeric_limits<double>::epsilon());
  return e;
}

constexpr std::array<double, 2> kProbes{0.7310241, -1.3719773};

bool structurally_nonconstant(const ResonanceProcess& process, const WaveSystem& system,
                              const std::vector<int>& free_indices) {
  for (std::size_t t = 0; t < kProbes.size(); ++t) {
    std::map<int, double> assign;
    double v = kProbes[t];
    for (int idx : free_indices) {
      assign[idx] = v;
      v = -0.6180339 * v + 0.25;
    }
    if (eliminate(process, system, assign).poly.degree() >= 1) return true;
  }
  return false;
}

std::vector<std::vector<int>> candidate_free_sets(int arity) {
  if (arity == 3) return {{1}, {0}, {2}};
  return {{1, 3}, {0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}};
}

}  // namespace

ManifoldPoint param_m3_nlskdv(double k2, double k4) {
  const long double a = k2, b = k4;
  const long double q = -(a * a + a * b + b * b);
  const auto k1 = static_cast<double>((q + b - a) / 2.0L);
  const auto k3 = static_cast<double>((q + a - b) / 2.0L);
  return with_residuals(builtin_process("nls-M3"), nls_reference(), {k1, k2, k3, k4},
                        {BranchTag::Kind::plus, 0});
}

std::optional<ManifoldPoint> param_m1_kdvckdv(double k2, double k4, const SystemParams& params,
                                              Sheet sheet) {
  if (params.alpha == 0.0)
    throw ArgumentError("param_m1_kdvckdv requires alpha != 0; use the generic chart");
  const long double al = params.alpha, be = params.beta, ga = params.gamma;
  const long double a = k2, b = k4;
  const long double bracket =
      4.0L * be - (a * a + b * b) * (al - 4.0L * ga) - 2.0L * a * b * (al + 2.0L * ga);
  const long double radicand = bracket / (3.0L * al);
  if (!(radicand >= 0.0L)) return std::nullopt;
  const long double p = (sheet == Sheet::plus ? 1.0L : -1.0L) * std::sqrt(radicand);
  const long double s = a + b;
  const auto k1 = static_cast<double>((s + p) / 2.0L);
  const auto k3 = static_cast<double>((p - s) / 2.0L);
  const auto sys = make_system(SystemId::KdvCkdv, params);
  return with_residuals(builtin_process("ck-calM1"), sys, {k1, k2, k3, k4},
                        {sheet == Sheet::plus ? BranchTag::Kind::plus : BranchTag::Kind::minus, 0});
}

ChartSolution solve_chart(const ResonanceProcess& process, const WaveSystem& system,
                          const std::map<int, double>& free_assignment,
                          const ManifoldTolerances& tol) {
  validate(process);
  const auto e = eliminate(process, system, free_assignment);
  ChartSolution out;
  if (e.poly.is_zero()) {
    out.full_manifold = true;
    return out;
  }
  if (e.poly.degree() > 6)
    throw ArgumentError("eliminated polynomial has degree " + std::to_string(e.poly.degree()) +
                        " > 6");

  RootOptions ro;
  ro.merge_tol = tol.merge_tol;
  const auto roots = real_roots(e.poly, ro);
  std::vector<double> ks(static_cast<std::size_t>(process.arity()));
  for (const auto& [idx, k] : free_assignment) ks[static_cast<std::size_t>(idx)] = k;
  int index = 0;
  for (double x : roots) {
    ks[static_cast<std::size_t>(e.root)] = x;
    ks[static_cast<std::size_t>(e.eliminated)] =
        static_cast<double>(static_cast<long double>(e.a) * x + static_cast<long double>(e.b));
    auto pt = with_residuals(process, system, ks, {BranchTag::Kind::root, index++});
    if (std::abs(pt.residual_k) <= tol.tol_res && std::abs(pt.residual_w) <= tol.tol_res)
      out.points.push_back(std::move(pt));
  }
  return out;
}

ManifoldChart make_generic_chart(const ResonanceProcess& process, const WaveSystem& system,
                                 std::vector<int> free_indices, Interval domain) {
  validate(process);
  if (static_cast<int>(free_indices.size()) != process.arity() - 2)
    throw ArgumentError("chart needs arity - 2 free indices");
  if (!(domain.lo < domain.hi)) throw ArgumentError("empty sampling domain");
  std::vector<Interval> dom(free_indices.size(), domain);
  return {process, system, std::move(free_indices), std::move(dom), ChartSolver::generic_poly};
}

ManifoldChart make_chart(const ResonanceProcess& process, const WaveSystem& system,
                         Interval domain) {
  validate(process);
  if (!(domain.lo < domain.hi)) throw ArgumentError("empty sampling domain");
  const std::vector<Interval> dom2(2, domain);
  if (process.name == "nls-M3" && system.id() == SystemId::NlsKdv)
    return {process, system, {1, 3}, dom2, ChartSolver::closed_form_nlskdv_m3};
  if (process.name == "ck-calM1" && system.id() == SystemId::KdvCkdv &&
      system.params().alpha != 0.0)
    return {process, system, {1, 3}, dom2, ChartSolver::closed_form_kdvckdv_m1};

  const auto candidates = candidate_free_sets(process.arity());
  for (const auto& c : candidates)
    if (structurally_nonconstant(process, system, c))
      return make_generic_chart(process, system, c, domain);
  return make_generic_chart(process, system, candidates.front(), domain);
}

ChartSolution solve_at(const ManifoldChart& chart, std::span<const double> free_values,
                       const ManifoldTolerances& tol) {
  if (free_values.size() != chart.free_indices.size())
    throw ArgumentError("wrong number of free values for chart");
  ChartSolution out;
  switch (chart.solver) {
    case ChartSolver::closed_form_nlskdv_m3:
      out.points.push_back(param_m3_nlskdv(free_values[0], free_values[1]));
      return out;
    case ChartSolver::closed_form_kdvckdv_m1:
      for (auto sheet : {Sheet::plus, Sheet::minus})
        if (auto p = param_m1_kdvckdv(free_values[0], free_values[1], chart.system.params(), sheet))
          out.points.push_back(std::move(*p));
      return out;
    case ChartSolver::generic_poly: {
      std::map<int, double> assign;
      for (std::size_t i = 0; i < free_values.size(); ++i)
        assign[chart.free_indices[i]] = free_values[i];
      return solve_chart(chart.process, chart.system, assign, tol);
    }
  }
  return out;
}

SampleResult sample_manifold(const ManifoldChart& chart, int count, std::uint64_t seed,
                             const SamplingOptions& opts) {
  if (count < 1) throw ArgumentError("sample count must be >= 1");
  for (const auto& d : chart.domain)
    if (!(d.lo < d.hi)) throw ArgumentError("empty sampling domain");

  std::mt19937_64 rng(seed);
  std::vector<std::uniform_real_distribution<double>> draws;
  for (const auto& d : chart.domain) draws.emplace_back(d.lo, d.hi);
  std::uniform_real_distribution<double> full_draw(chart.domain.front().lo, chart.domain.front().hi);

  SampleResult res;
  const long max_attempts = static_cast<long>(count) * std::max(1, opts.max_attempts_factor);
  std::vector<double> free(chart.free_indices.size());

  auto admissible = [&](const ManifoldPoint& p) {
    for (double k : p.ks) {
      if (std::abs(k) < opts.k_min) return false;
      if (opts.all_negative && !(k < 0.0)) return false;
    }
    return std::abs(p.residual_k) <= opts.tol.tol_res && std::abs(p.residual_w) <= opts.tol.tol_res;
  };

  while (static_cast<int>(res.points.size()) < count && res.attempts < max_attempts) {
    ++res.attempts;
    for (std::size_t i = 0; i < free.size(); ++i) free[i] = draws[i](rng);
    auto sol = solve_at(chart, free, opts.tol);
    if (sol.full_manifold) {
      res.full_manifold = true;
      std::map<int, double> assign;
      for (std::size_t i = 0; i < free.size(); ++i) assign[chart.free_indices[i]] = free[i];
      const auto e = eliminate(chart.process, chart.system, assign);
      const double x = full_draw(rng);
      std::vector<double> ks(static_cast<std::size_t>(chart.process.arity()));
      for (const auto& [idx, k] : assign) ks[static_cast<std::size_t>(idx)] = k;
      ks[static_cast<std::size_t>(e.root)] = x;
      ks[static_cast<std::size_t>(e.eliminated)] =
          static_cast<double>(static_cast<long double>(e.a) * x + static_cast<long double>(e.b));
      sol.points.push_back(
          with_residuals(chart.process, chart.system, std::move(ks), {BranchTag::Kind::root, 0}));
    }
    for (auto& p : sol.points) {
      if (static_cast<int>(res.points.size()) >= count) break;
      if (admissible(p)) res.points.push_back(std::move(p));
    }
    if (res.points.empty() && opts.empty_probe_attempts > 0 &&
        res.attempts >= opts.empty_probe_attempts)
      break;
  }
  res.partial = static_cast<int>(res.points.size()) < count;
  return res;
}

bool is_billiard_point(const ManifoldPoint& point, const ResonanceProcess& process, double tol) {
  if (process.arity() != 4) throw ArgumentError("billiard detection needs arity 4");
  if (point.ks.size() != 4) throw ArgumentError("point arity does not match process");
  auto compatible = [&](int a, int b) {
    const auto& wa = process.waves[static_cast<std::size_t>(a)];
    const auto& wb = process.waves[static_cast<std::size_t>(b)];
    return wa.branch == wb.branch && wa.sigma == -wb.sigma &&
           std::abs(point.ks[static_cast<std::size_t>(a)] - point.ks[static_cast<std::size_t>(b)]) <=
               tol;
  };
  static constexpr std::array<std::array<int, 4>, 3> matchings{
      {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
  return std::ranges::any_of(matchings, [&](const auto& m) {
    return compatible(m[0], m[1]) && compatible(m[2], m[3]);
  });
}

double detect_billiard(std::span<const ManifoldPoint> points, const ResonanceProcess& process,
                       double tol) {
  if (process.arity() != 4) throw ArgumentError("billiard detection needs arity 4");
  if (points.empty()) return 0.0;
  const auto hits = std::ranges::count_if(
      points, [&](const ManifoldPoint& p) { return is_billiard_point(p, process, tol); });
  return static_cast<double>(hits) / static_cast<double>(points.size());
}

}  // namespace wavescreen
