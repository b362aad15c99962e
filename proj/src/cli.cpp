#include "wavescreen/cli.hpp"

#include "wavescreen/errors.hpp"
#include "wavescreen/io.hpp"
#include "wavescreen/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

namespace wavescreen {

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kInconclusive = 2;

struct SystemArgs {
  std::string system;
  SystemParams params;
};

void add_system_args(CLI::App* cmd, SystemArgs& s, bool need_system) {
  auto* opt = cmd->add_option("--system", s.system, "nls-kdv or kdv-ckdv");
  if (need_system) opt->required();
  cmd->add_option("--alpha", s.params.alpha, "alpha");
  cmd->add_option("--beta", s.params.beta, "beta");
  cmd->add_option("--gamma", s.params.gamma, "gamma");
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path);
  return f;
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
  } else {
    auto f = open_out(out_path);
    f << text;
  }
}

// Process names imply their system unless --system says otherwise.
WaveSystem system_for_process(const ResonanceProcess& p, const SystemArgs& s) {
  const SystemId id = s.system.empty() ? system_of(p) : system_id_from_string(s.system);
  return make_system(id, s.params);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Integrability screening of 1D two-branch dispersive wave systems", "wavescreen"};
  app.set_config("--config", "", "key = value file with tolerances and basis settings");
  app.require_subcommand(1);
  app.fallthrough();

  AnalysisConfig cfg;
  std::string basis = "chebyshev";
  app.add_option("--tol_res", cfg.tol_res, "manifold residual tolerance");
  app.add_option("--merge_tol", cfg.merge_tol, "root merge tolerance");
  app.add_option("--billiard_tol", cfg.billiard_tol, "billiard pairing tolerance");
  app.add_option("--eps_den", cfg.eps_den, "guarded-ratio denominator cutoff");
  app.add_option("--eps_num", cfg.eps_num, "guarded-ratio numerator cutoff");
  app.add_option("--k_min", cfg.k_min, "discard points with any |k| below this");
  app.add_option("--domain_lo", cfg.domain_lo, "sampling box lower edge");
  app.add_option("--domain_hi", cfg.domain_hi, "sampling box upper edge");
  app.add_option("--rank_tol", cfg.rank_tol, "relative singular-value cutoff");
  app.add_option("--gap_factor", cfg.gap_factor, "required spectral gap");
  app.add_option("--basis", basis, "chebyshev or monomial");
  app.add_option("--degree", cfg.degree, "basis degree");
  app.add_option("--points", cfg.points, "manifold samples per process");
  app.add_option("--scan_points", cfg.scan_points, "manifold samples per process in scans");
  app.add_option("--max_attempts_factor", cfg.max_attempts_factor, "sampler attempts per point");
  app.add_option("--empty_probe_attempts", cfg.empty_probe_attempts,
                 "declare a manifold empty after this many fruitless draws (0 = never)");
  app.add_option("--seed", cfg.seed, "run seed");

  // analyze
  SystemArgs an_sys;
  std::string an_out;
  auto* analyze_cmd = app.add_subcommand("analyze", "screen a built-in system");
  add_system_args(analyze_cmd, an_sys, true);
  analyze_cmd->add_option("--out", an_out, "JSON report path (stdout if omitted)");

  // sample
  SystemArgs sa_sys;
  std::string sa_process, sa_out;
  int sa_count = 100;
  bool sa_negative = false;
  auto* sample_cmd = app.add_subcommand("sample", "sample a resonance manifold to CSV");
  sample_cmd->add_option("--process", sa_process, "process name")->required();
  sample_cmd->add_option("--count", sa_count, "number of points");
  sample_cmd->add_option("--out", sa_out, "CSV path (stdout if omitted)");
  sample_cmd->add_flag("--all_negative", sa_negative, "keep only points with every k < 0");
  add_system_args(sample_cmd, sa_sys, false);

  // coeff
  SystemArgs co_sys;
  std::string co_id, co_at, co_in, co_out;
  auto* coeff_cmd = app.add_subcommand("coeff", "evaluate a kernel or coefficient");
  coeff_cmd->add_option("--id", co_id, "kernel id, e.g. T_nls")->required();
  auto* at_opt = coeff_cmd->add_option("--at", co_at, "k1,k2,k3[,k4]");
  auto* in_opt = coeff_cmd->add_option("--in", co_in, "CSV of wavenumber rows");
  at_opt->excludes(in_opt);
  coeff_cmd->add_option("--out", co_out, "CSV path (stdout if omitted)");
  add_system_args(coeff_cmd, co_sys, false);

  // rank
  SystemArgs ra_sys;
  std::string ra_process, ra_mode = "tied", ra_out;
  auto* rank_cmd = app.add_subcommand("rank", "degeneracy rank test of one process");
  rank_cmd->add_option("--process", ra_process, "process name")->required();
  rank_cmd->add_option("--mode", ra_mode, "web or tied")->check(CLI::IsMember({"web", "tied"}));
  rank_cmd->add_option("--out", ra_out, "JSON path (stdout if omitted)");
  add_system_args(rank_cmd, ra_sys, false);

  // scan
  std::string sc_alpha = "-2:2:41", sc_gamma = "-2:2:41", sc_out;
  double sc_beta = 1.0;
  int sc_threads = 0;
  auto* scan_cmd = app.add_subcommand("scan", "KdV-CKdV verdicts over an (alpha, gamma) grid");
  scan_cmd->add_option("--alpha", sc_alpha, "LO:HI:N");
  scan_cmd->add_option("--gamma", sc_gamma, "LO:HI:N");
  scan_cmd->add_option("--beta", sc_beta, "fixed beta");
  scan_cmd->add_option("--threads", sc_threads, "worker threads (0 = hardware)");
  scan_cmd->add_option("--out", sc_out, "JSON path (stdout if omitted)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kError;
  }

  try {
    cfg.basis = basis_kind_from_string(basis);

    if (*analyze_cmd) {
      const auto sys = make_system(system_id_from_string(an_sys.system), an_sys.params);
      const auto rep = analyze(sys, cfg);
      emit(to_json(rep, cfg).dump(2) + "\n", an_out, out);
      if (!an_out.empty()) out << to_string(rep.overall) << '\n';
      return rep.inconclusive ? kInconclusive : kOk;
    }

    if (*sample_cmd) {
      const auto& proc = builtin_process(sa_process);
      const auto sys = system_for_process(proc, sa_sys);
      auto opts = cfg.sampling();
      opts.all_negative = sa_negative;
      const auto res =
          sample_manifold(make_chart(proc, sys, cfg.domain()), sa_count, cfg.seed, opts);
      std::ostringstream csv;
      write_points_csv(csv, res.points, proc.arity());
      emit(csv.str(), sa_out, out);
      if (res.partial)
        err << "warning: " << res.points.size() << " of " << sa_count << " points after "
            << res.attempts << " attempts\n";
      if (res.full_manifold) err << "note: full manifold (frequency constraint implied)\n";
      return kOk;
    }

    if (*coeff_cmd) {
      const auto id = kernel_id_from_string(co_id);
      const int arity = kernel_arity(id);
      std::vector<std::vector<double>> rows;
      if (!co_at.empty()) {
        rows.push_back(parse_number_list(co_at));
      } else if (!co_in.empty()) {
        std::ifstream f(co_in);
        if (!f) throw ConfigError("cannot read " + co_in);
        rows = read_ks_csv(f, arity);
      } else {
        throw ArgumentError("coeff needs --at or --in");
      }
      std::vector<CoefficientRow> table;
      for (const auto& ks : rows) {
        if (static_cast<int>(ks.size()) != arity)
          throw ArgumentError(co_id + " takes " + std::to_string(arity) + " wavenumbers");
        if (id == KernelId::T_nls || id == KernelId::T1_ck) {
          const auto b = id == KernelId::T_nls
                             ? evaluate_t_nls(ks, co_sys.params, cfg.guard(), cfg.tol_res)
                             : evaluate_t1_ck(ks, co_sys.params, cfg.guard(), cfg.tol_res);
          table.push_back({ks, b.total, "total"});
          table.push_back({ks, b.part1, "part1"});
          table.push_back({ks, b.part2, "part2"});
          if (b.off_manifold) err << "warning: point off the resonance manifold\n";
        } else {
          table.push_back(
              {ks, evaluate_coefficient(id, ks, co_sys.params, cfg.guard(), cfg.tol_res), co_id});
        }
      }
      std::ostringstream csv;
      write_coefficients_csv(csv, table, arity);
      emit(csv.str(), co_out, out);
      return kOk;
    }

    if (*rank_cmd) {
      const auto& proc = builtin_process(ra_process);
      const auto sys = system_for_process(proc, ra_sys);
      const auto chart = make_chart(proc, sys, cfg.domain());
      const auto sample = sample_manifold(chart, cfg.points, cfg.seed, cfg.sampling());
      nlohmann::json j = {{"schema", 1}, {"process", proc.name}, {"n_points", sample.points.size()},
                          {"full_manifold", sample.full_manifold}};
      bool inconclusive = false;
      if (sample.full_manifold) {
        j["verdict"] = to_string(DegeneracyVerdict::degenerate_rank3_plus);
        j["note"] = "frequency constraint implied by the momentum constraint";
      } else {
        if (sample.points.empty()) throw EmptyRegionError("no admissible points on " + proc.name);
        if (proc.arity() == 4) {
          const double frac = detect_billiard(sample.points, proc, cfg.billiard_tol);
          j["billiard_fraction"] = frac;
        }
        const auto mode = web_mode_from_string(ra_mode);
        if (mode == WebMode::web && proc.arity() != 4)
          throw ArgumentError("web mode needs a four-wave process");
        const auto rep = analyze_mode(sample.points, proc, sys, mode, cfg.basis, cfg.degree,
                                      {cfg.rank_tol, cfg.gap_factor, 1e-6});
        j["report"] = to_json(rep);
        j["singular_values"] = rep.singular_values;
        j["n_beyond_known"] = rep.n_beyond_known;
        j["verdict"] = to_string(rep.verdict);
        inconclusive = rep.verdict == DegeneracyVerdict::inconclusive;
      }
      emit(j.dump(2) + "\n", ra_out, out);
      return inconclusive ? kInconclusive : kOk;
    }

    if (*scan_cmd) {
      const auto res =
          scan_params(parse_grid_axis(sc_alpha), parse_grid_axis(sc_gamma), sc_beta, cfg, sc_threads);
      emit(to_json(res, cfg).dump(2) + "\n", sc_out, out);
      bool any_inconclusive = false;
      for (const auto& row : res.inconclusive)
        for (bool b : row) any_inconclusive = any_inconclusive || b;
      return any_inconclusive ? kInconclusive : kOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace wavescreen
