#include "wavescreen/report.hpp"

#include "wavescreen/errors.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <future>
#include <mutex>
#include <thread>

namespace wavescreen {

using nlohmann::json;

std::string_view to_string(ManifoldStatus s) noexcept {
  switch (s) {
    case ManifoldStatus::empty: return "empty";
    case ManifoldStatus::billiard: return "billiard";
    case ManifoldStatus::generic: return "generic";
  }
  return "?";
}

std::string_view to_string(CoefficientStatusOnManifold s) noexcept {
  switch (s) {
    case CoefficientStatusOnManifold::vanishes_on_manifold: return "vanishes_on_manifold";
    case CoefficientStatusOnManifold::nonzero: return "nonzero";
    case CoefficientStatusOnManifold::not_available: return "not_available";
  }
  return "?";
}

std::string_view to_string(Implication s) noexcept {
  switch (s) {
    case Implication::none: return "none";
    case Implication::blocks_complete_integrability: return "blocks_complete_integrability";
    case Implication::blocks_ist_solvability: return "blocks_ist_solvability";
  }
  return "?";
}

std::string_view to_string(OverallVerdict s) noexcept {
  switch (s) {
    case OverallVerdict::nonintegrable: return "nonintegrable";
    case OverallVerdict::special_case_open: return "special_case_open";
    case OverallVerdict::no_obstruction_found: return "no_obstruction_found";
  }
  return "?";
}

std::optional<KernelId> coefficient_for(std::string_view name) {
  if (name == "nls-M1") return KernelId::U_nls;
  if (name == "nls-M2") return KernelId::V_nls;
  if (name == "nls-M3") return KernelId::T_nls;
  if (name == "ck-M1") return KernelId::V_ck;
  if (name == "ck-M2" || name == "ck-M3") return KernelId::U_ck;
  if (name == "ck-calM1") return KernelId::T1_ck;
  return std::nullopt;  // not printed for the other four-wave processes
}

Implication implication_of(ManifoldStatus manifold, CoefficientStatusOnManifold coefficient,
                           const std::optional<RankReport>& degeneracy) noexcept {
  if (manifold == ManifoldStatus::empty) return Implication::none;
  if (coefficient != CoefficientStatusOnManifold::nonzero) return Implication::none;
  if (degeneracy && degeneracy->verdict == DegeneracyVerdict::nondegenerate_rank2)
    return Implication::blocks_ist_solvability;
  return Implication::blocks_complete_integrability;
}

OverallVerdict overall_of(const SystemFlags& flags, double beta,
                          const std::vector<ObstructionFinding>& findings) noexcept {
  auto any = [&](Implication i) {
    return std::ranges::any_of(findings, [i](const auto& f) { return f.implication == i; });
  };
  if (any(Implication::blocks_ist_solvability)) return OverallVerdict::nonintegrable;
  if (flags.special_case() && beta != 0.0) return OverallVerdict::special_case_open;
  if (any(Implication::blocks_complete_integrability)) return OverallVerdict::nonintegrable;
  return OverallVerdict::no_obstruction_found;
}

std::uint64_t process_seed(std::uint64_t run_seed, std::string_view process_name) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (unsigned char c : process_name) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::uint64_t z = run_seed ^ h;  // splitmix64 finalizer
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ObstructionFinding analyze_process(const ResonanceProcess& process, const WaveSystem& system,
                                   const AnalysisConfig& config, std::uint64_t seed) {
  ObstructionFinding f;
  f.process = process.name;
  f.seed = seed;
  const auto chart = make_chart(process, system, config.domain());
  const auto sample = sample_manifold(chart, config.points, seed, config.sampling());
  f.n_points = static_cast<int>(sample.points.size());
  if (sample.points.empty()) return f;  // empty manifold: nothing to obstruct

  f.degeneracy = degeneracy_from_sample(chart, sample, config.degeneracy(seed));
  f.manifold_status = f.degeneracy->verdict == DegeneracyVerdict::billiard_infinite_rank
                          ? ManifoldStatus::billiard
                          : ManifoldStatus::generic;

  f.coefficient.kernel = coefficient_for(process.name);
  if (f.coefficient.kernel) {
    const auto guard = config.guard();
    for (const auto& p : sample.points) {
      const auto v =
          evaluate_coefficient(*f.coefficient.kernel, p.ks, system.params(), guard, config.tol_res);
      ++f.coefficient.evaluated;
      if (v.is_pole()) {
        ++f.coefficient.poles;
        ++f.coefficient.nonzero;
      } else if (std::abs(v.value) > config.eps_num) {
        ++f.coefficient.nonzero;
        f.coefficient.max_abs = std::max(f.coefficient.max_abs, std::abs(v.value));
      }
    }
    f.coefficient_status = f.coefficient.nonzero > 0
                               ? CoefficientStatusOnManifold::nonzero
                               : CoefficientStatusOnManifold::vanishes_on_manifold;
  }
  f.implication = implication_of(f.manifold_status, f.coefficient_status, f.degeneracy);
  return f;
}

IntegrabilityReport analyze(const WaveSystem& system, const AnalysisConfig& config, bool parallel,
                            AnalysisScope scope) {
  if (system.id() == SystemId::Custom)
    throw ConfigError("analyze needs a built-in system (nls-kdv or kdv-ckdv)");
  IntegrabilityReport rep;
  rep.system = system.id();
  rep.params = system.params();
  rep.flags = system.flags();

  auto processes = processes_for(system.id());
  if (scope == AnalysisScope::verdict_inputs)
    std::erase_if(processes, [](const auto& p) { return !coefficient_for(p.name); });
  if (parallel) {
    std::vector<std::future<ObstructionFinding>> jobs;
    for (const auto& p : processes)
      jobs.push_back(std::async(std::launch::async, [&, p] {
        return analyze_process(p, system, config, process_seed(config.seed, p.name));
      }));
    for (auto& j : jobs) rep.findings.push_back(j.get());
  } else {
    for (const auto& p : processes)
      rep.findings.push_back(
          analyze_process(p, system, config, process_seed(config.seed, p.name)));
  }
  rep.overall = overall_of(rep.flags, rep.params.beta, rep.findings);
  rep.inconclusive = std::ranges::any_of(rep.findings, [](const auto& f) {
    return f.degeneracy && f.degeneracy->verdict == DegeneracyVerdict::inconclusive;
  });
  return rep;
}

double GridAxis::at(int i) const noexcept {
  if (n <= 1) return lo;
  if (i == n - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

GridAxis parse_grid_axis(std::string_view text) {
  GridAxis g;
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw ConfigError("grid axis must be LO:HI:N, got " + std::string(text));
  auto num = [&](std::string_view s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(std::string(s), &used);
      if (used != s.size()) throw ConfigError("");
      return v;
    } catch (const std::exception&) {
      throw ConfigError("bad number in grid axis: " + std::string(s));
    }
  };
  g.lo = num(text.substr(0, c1));
  g.hi = num(text.substr(c1 + 1, c2 - c1 - 1));
  const auto ns = text.substr(c2 + 1);
  const auto [ptr, ec] = std::from_chars(ns.data(), ns.data() + ns.size(), g.n);
  if (ec != std::errc{} || ptr != ns.data() + ns.size() || g.n < 1)
    throw ConfigError("bad count in grid axis: " + std::string(ns));
  if (!(g.lo <= g.hi)) throw ConfigError("grid axis needs LO <= HI");
  return g;
}

ScanResult scan_params(const GridAxis& alpha, const GridAxis& gamma, double beta,
                       const AnalysisConfig& config, int threads) {
  if (alpha.n * gamma.n < 9) throw ArgumentError("scan needs at least 9 grid cells");
  ScanResult res;
  res.alpha = alpha;
  res.gamma = gamma;
  res.beta = beta;
  res.cells.assign(static_cast<std::size_t>(alpha.n),
                   std::vector<OverallVerdict>(static_cast<std::size_t>(gamma.n)));
  res.inconclusive.assign(static_cast<std::size_t>(alpha.n),
                          std::vector<bool>(static_cast<std::size_t>(gamma.n), false));

  AnalysisConfig cell_cfg = config;
  cell_cfg.points = config.scan_points;
  const int total = alpha.n * gamma.n;
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex mu;

  auto worker = [&] {
    for (int idx = next++; idx < total; idx = next++) {
      const int i = idx / gamma.n, j = idx % gamma.n;
      try {
        const auto sys = make_system(SystemId::KdvCkdv, {alpha.at(i), beta, gamma.at(j)});
        const auto rep = analyze(sys, cell_cfg, false, AnalysisScope::verdict_inputs);
        std::lock_guard lock(mu);
        res.cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = rep.overall;
        res.inconclusive[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = rep.inconclusive;
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        next = total;
      }
    }
  };
  const int n_threads =
      std::max(1, threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return res;
}

bool special_cells_localized(const ScanResult& scan) {
  auto step = [](const GridAxis& g) { return g.n > 1 ? (g.hi - g.lo) / (g.n - 1) : 0.0; };
  const double tol = 1.000001 * std::max(step(scan.alpha), step(scan.gamma));
  for (int i = 0; i < scan.alpha.n; ++i)
    for (int j = 0; j < scan.gamma.n; ++j) {
      if (scan.cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] !=
          OverallVerdict::special_case_open)
        continue;
      const double a = scan.alpha.at(i), g = scan.gamma.at(j);
      if (std::abs(a) > tol && std::abs(g) > tol && std::abs(a - g) > tol) return false;
    }
  return true;
}

// --- JSON ---------------------------------------------------------------------

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json to_json(const ModeReport& r) {
  json known = json::array();
  for (const auto& k : r.known)
    known.push_back({{"name", k.name}, {"residual", finite_or_null(k.residual)}, {"found", k.found}});
  json extra = json::array();
  for (const auto& e : r.extra)
    extra.push_back({{"coefficients", e.coefficients}, {"residual_norm", e.residual_norm}});
  return {{"mode", to_string(r.mode)},
          {"degree", r.degree},
          {"width", r.width},
          {"singular_values", r.singular_values},
          {"nullspace_dim", r.nullspace_dim},
          {"known_rank", r.known_rank},
          {"n_beyond_known", r.n_beyond_known},
          {"gap", finite_or_null(r.gap)},
          {"known", known},
          {"extra_relations", extra},
          {"verdict", to_string(r.verdict)}};
}

json to_json(const RankReport& r) {
  return {{"singular_values", r.singular_values},
          {"n_beyond_known", r.n_beyond_known},
          {"verdict", to_string(r.verdict)},
          {"decided_by", r.decided_by},
          {"tied", r.tied ? to_json(*r.tied) : json(nullptr)},
          {"web", r.web ? to_json(*r.web) : json(nullptr)},
          {"billiard_fraction", r.billiard_fraction},
          {"full_manifold", r.full_manifold},
          {"n_points", r.n_points},
          {"partial", r.partial},
          {"note", r.note}};
}

json to_json(const AnalysisConfig& c) {
  return {{"tol_res", c.tol_res},       {"merge_tol", c.merge_tol},
          {"billiard_tol", c.billiard_tol}, {"eps_den", c.eps_den},
          {"eps_num", c.eps_num},       {"k_min", c.k_min},
          {"domain_lo", c.domain_lo},   {"domain_hi", c.domain_hi},
          {"rank_tol", c.rank_tol},     {"gap_factor", c.gap_factor},
          {"basis", to_string(c.basis)}, {"degree", c.degree},
          {"points", c.points},         {"scan_points", c.scan_points},
          {"max_attempts_factor", c.max_attempts_factor},
          {"empty_probe_attempts", c.empty_probe_attempts}, {"seed", c.seed}};
}

json to_json(const IntegrabilityReport& r, const AnalysisConfig& config) {
  json findings = json::array();
  for (const auto& f : r.findings) {
    json coeff = {{"kernel", f.coefficient.kernel ? json(to_string(*f.coefficient.kernel)) : json(nullptr)},
                  {"evaluated", f.coefficient.evaluated},
                  {"nonzero", f.coefficient.nonzero},
                  {"poles", f.coefficient.poles},
                  {"max_abs", f.coefficient.max_abs}};
    findings.push_back({{"process", f.process},
                        {"manifold_status", to_string(f.manifold_status)},
                        {"coefficient_status", to_string(f.coefficient_status)},
                        {"coefficient", coeff},
                        {"degeneracy", f.degeneracy ? to_json(*f.degeneracy) : json(nullptr)},
                        {"implication", to_string(f.implication)},
                        {"seed", f.seed},
                        {"n_points", f.n_points}});
  }
  return {{"schema", 1},
          {"system", to_string(r.system)},
          {"params", {{"alpha", r.params.alpha}, {"beta", r.params.beta}, {"gamma", r.params.gamma}}},
          {"flags",
           {{"uncoupled", r.flags.uncoupled},
            {"alpha_zero", r.flags.alpha_zero},
            {"gamma_zero", r.flags.gamma_zero},
            {"alpha_eq_gamma", r.flags.alpha_eq_gamma},
            {"special_case", r.flags.special_case()}}},
          {"findings", findings},
          {"overall", to_string(r.overall)},
          {"inconclusive", r.inconclusive},
          {"config", to_json(config)}};
}

json to_json(const ScanResult& r, const AnalysisConfig& config) {
  json alphas = json::array(), gammas = json::array(), cells = json::array();
  for (int i = 0; i < r.alpha.n; ++i) alphas.push_back(r.alpha.at(i));
  for (int j = 0; j < r.gamma.n; ++j) gammas.push_back(r.gamma.at(j));
  for (int i = 0; i < r.alpha.n; ++i) {
    json row = json::array();
    for (int j = 0; j < r.gamma.n; ++j)
      row.push_back(to_string(r.cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
    cells.push_back(row);
  }
  return {{"schema", 1},
          {"system", "kdv-ckdv"},
          {"beta", r.beta},
          {"alpha", alphas},
          {"gamma", gammas},
          {"verdicts", cells},
          {"inconclusive", r.inconclusive},
          {"special_cells_localized", special_cells_localized(r)},
          {"config", to_json(config)}};
}

}  // namespace wavescreen
