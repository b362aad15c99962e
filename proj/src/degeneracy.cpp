#include "wavescreen/degeneracy.hpp"

#include "wavescreen/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wavescreen {

std::string_view to_string(WebMode mode) noexcept { return mode == WebMode::web ? "web" : "tied"; }

WebMode web_mode_from_string(std::string_view name) {
  if (name == "web") return WebMode::web;
  if (name == "tied") return WebMode::tied;
  throw ConfigError("unknown mode: " + std::string(name));
}

std::string_view to_string(DegeneracyVerdict v) noexcept {
  switch (v) {
    case DegeneracyVerdict::nondegenerate_rank2: return "nondegenerate_rank2";
    case DegeneracyVerdict::degenerate_rank3_plus: return "degenerate_rank3_plus";
    case DegeneracyVerdict::billiard_infinite_rank: return "billiard_infinite_rank";
    case DegeneracyVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

CollocationLayout web_layout(int n_args) {
  CollocationLayout l;
  for (int j = 0; j < n_args; ++j) l.uses.push_back({{j, 1.0}});
  return l;
}

CollocationLayout tied_layout(const ResonanceProcess& process) {
  CollocationLayout l;
  l.uses.resize(2);
  for (int j = 0; j < process.arity(); ++j) {
    const auto& w = process.waves[static_cast<std::size_t>(j)];
    l.uses[w.branch == Branch::short_wave ? 0 : 1].push_back({j, static_cast<double>(w.sigma)});
  }
  return l;
}

Collocation build_collocation(const Eigen::MatrixXd& args, const CollocationLayout& layout,
                              BasisKind kind, int degree) {
  if (degree < 2) throw ArgumentError("basis degree must be >= 2");
  const int nf = layout.n_functions();
  const auto rows = args.rows();
  const int block = degree + 1;
  if (rows < 4 * block)
    throw ArgumentError("collocation needs at least " + std::to_string(4 * block) + " points, got " +
                        std::to_string(rows));

  Collocation c;
  c.layout = layout;
  c.basis.kind = kind;
  c.basis.degree = degree;
  for (const auto& uses : layout.uses) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& [j, _] : uses) {
      lo = std::min(lo, args.col(j).minCoeff());
      hi = std::max(hi, args.col(j).maxCoeff());
    }
    if (uses.empty()) lo = -1.0, hi = 1.0;
    if (!(hi - lo > 1e-12 * std::max(1.0, std::abs(lo)))) lo -= 1.0, hi += 1.0;
    c.basis.intervals.push_back({lo, hi});
  }

  c.matrix = Eigen::MatrixXd::Zero(rows, nf * block);
  std::vector<double> phi(static_cast<std::size_t>(block));
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (int f = 0; f < nf; ++f) {
      const auto& iv = c.basis.intervals[static_cast<std::size_t>(f)];
      for (const auto& [j, w] : layout.uses[static_cast<std::size_t>(f)]) {
        eval_basis(kind, degree, to_unit(iv, args(i, j)), phi);
        for (int d = 0; d < block; ++d) c.matrix(i, f * block + d) += w * phi[static_cast<std::size_t>(d)];
      }
    }
  }
  c.matrix.rowwise() -= c.matrix.colwise().mean();
  return c;
}

Collocation build_collocation(std::span<const ManifoldPoint> points,
                              const ResonanceProcess& process, BasisKind kind, int degree,
                              WebMode mode) {
  const int n = process.arity();
  Eigen::MatrixXd args(static_cast<Eigen::Index>(points.size()), n);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (static_cast<int>(points[i].ks.size()) != n)
      throw ArgumentError("point arity does not match process");
    for (int j = 0; j < n; ++j)
      args(static_cast<Eigen::Index>(i), j) = points[i].ks[static_cast<std::size_t>(j)];
  }
  return build_collocation(args, mode == WebMode::web ? web_layout(n) : tied_layout(process), kind,
                           degree);
}

std::vector<KnownRelation> known_relations(const ResonanceProcess& process,
                                           const WaveSystem& system, WebMode mode) {
  const Polynomial identity({0.0, 1.0});
  KnownRelation momentum{"momentum", {}}, frequency{"frequency", {}};
  if (mode == WebMode::web) {
    for (const auto& w : process.waves) {
      momentum.functions.push_back(identity * static_cast<double>(w.sigma));
      frequency.functions.push_back(system.law(w.branch).polynomial() *
                                    static_cast<double>(w.sigma));
    }
  } else {
    for (auto b : {Branch::short_wave, Branch::long_wave}) {
      momentum.functions.push_back(identity);
      frequency.functions.push_back(system.law(b).polynomial());
    }
  }
  return {momentum, frequency};
}

ModeReport rank_analyze(const Collocation& colloc, std::span<const KnownRelation> known,
                        const RankOptions& opts) {
  const auto& A = colloc.matrix;
  const int block = colloc.basis.degree + 1;
  const auto width = A.cols();

  ModeReport rep;
  rep.degree = colloc.basis.degree;
  rep.width = static_cast<int>(width);

  Eigen::VectorXd norms = A.colwise().norm();
  const double max_norm = norms.maxCoeff();
  std::vector<Eigen::Index> kept;
  for (Eigen::Index c = 0; c < width; ++c)
    if (norms(c) > 1e-12 * max_norm) kept.push_back(c);
  const auto m = static_cast<Eigen::Index>(kept.size());

  Eigen::MatrixXd An(A.rows(), m);
  Eigen::VectorXd kn(m);
  for (Eigen::Index c = 0; c < m; ++c) {
    kn(c) = norms(kept[static_cast<std::size_t>(c)]);
    An.col(c) = A.col(kept[static_cast<std::size_t>(c)]) / kn(c);
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(An, Eigen::ComputeFullV);
  const Eigen::VectorXd s = svd.singularValues();
  rep.singular_values.assign(s.data(), s.data() + s.size());
  const double smax = s.size() ? s(0) : 0.0;
  const double thr = opts.rank_tol * smax;
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) >= thr) ++rank;
  rep.nullspace_dim = static_cast<int>(m - rank);

  if (rank == 0) {
    rep.gap = 0.0;
  } else if (rank < s.size()) {
    rep.gap = s(rank) > 0.0 ? s(rank - 1) / s(rank) : std::numeric_limits<double>::infinity();
  } else if (rank < m) {
    rep.gap = std::numeric_limits<double>::infinity();  // more columns than rows
  } else {
    rep.gap = s(rank - 1) / thr;
  }
  const bool clean_gap = rep.gap >= opts.gap_factor;

  const Eigen::MatrixXd N = svd.matrixV().rightCols(m - rank);
  std::vector<Eigen::VectorXd> coords;   // known relations in nullspace coordinates
  std::vector<Eigen::VectorXd> plain;    // same relations as raw basis coefficients
  bool all_found = true;
  for (const auto& rel : known) {
    if (static_cast<int>(rel.functions.size()) != colloc.layout.n_functions())
      throw ArgumentError("known relation has the wrong number of functions");
    Eigen::VectorXd full = Eigen::VectorXd::Zero(width);
    for (int f = 0; f < colloc.layout.n_functions(); ++f) {
      const auto cf = to_basis(rel.functions[static_cast<std::size_t>(f)], colloc.basis.kind,
                               colloc.basis.degree,
                               colloc.basis.intervals[static_cast<std::size_t>(f)]);
      for (int d = 0; d < block; ++d) full(f * block + d) = cf[static_cast<std::size_t>(d)];
    }
    Eigen::VectorXd v(m);
    for (Eigen::Index c = 0; c < m; ++c) v(c) = full(kept[static_cast<std::size_t>(c)]) * kn(c);
    KnownCheck chk{rel.name, 0.0, true};
    const double vn = v.norm();
    if (vn > 0.0) {
      v /= vn;
      const Eigen::VectorXd proj = N.transpose() * v;
      chk.residual = (v - N * proj).norm();
      chk.found = chk.residual < opts.known_tol;
      if (chk.found) {
        coords.push_back(proj);
        Eigen::VectorXd c(m);
        for (Eigen::Index q = 0; q < m; ++q) c(q) = full(kept[static_cast<std::size_t>(q)]);
        plain.push_back(c.normalized());
      }
    }
    all_found = all_found && chk.found;
    rep.known.push_back(chk);
  }

  if (!clean_gap) {
    rep.verdict = DegeneracyVerdict::inconclusive;
    return rep;
  }
  if (!all_found) {
    std::string msg = "known relation missing from the numeric nullspace:";
    for (const auto& k : rep.known)
      if (!k.found) msg += " " + k.name + " (residual " + std::to_string(k.residual) + ")";
    throw ConsistencyError(msg);
  }

  Eigen::MatrixXd U_rest = Eigen::MatrixXd::Identity(N.cols(), N.cols());
  if (!coords.empty() && N.cols() > 0) {
    Eigen::MatrixXd K(N.cols(), static_cast<Eigen::Index>(coords.size()));
    for (std::size_t i = 0; i < coords.size(); ++i) K.col(static_cast<Eigen::Index>(i)) = coords[i];
    // Independence is judged on the raw coefficients: column scaling can make
    // a genuine relation look parallel to another one when it lives on a
    // nearly vanishing column.
    Eigen::MatrixXd P(m, static_cast<Eigen::Index>(plain.size()));
    for (std::size_t i = 0; i < plain.size(); ++i) P.col(static_cast<Eigen::Index>(i)) = plain[i];
    const Eigen::VectorXd ps = Eigen::JacobiSVD<Eigen::MatrixXd>(P).singularValues();
    int kr = 0;
    while (kr < ps.size() && ps(kr) > opts.known_tol) ++kr;
    kr = std::min<int>(kr, static_cast<int>(N.cols()));
    rep.known_rank = kr;
    Eigen::JacobiSVD<Eigen::MatrixXd> ksvd(K, Eigen::ComputeFullU);
    U_rest = ksvd.matrixU().rightCols(N.cols() - kr);
  }
  rep.n_beyond_known = rep.nullspace_dim - rep.known_rank;

  const Eigen::MatrixXd extra = N * U_rest;
  for (Eigen::Index e = 0; e < extra.cols(); ++e) {
    AbelianRelation rel;
    rel.residual_norm = smax > 0.0 ? (An * extra.col(e)).norm() / smax : 0.0;
    Eigen::VectorXd full = Eigen::VectorXd::Zero(width);
    for (Eigen::Index c = 0; c < m; ++c) full(kept[static_cast<std::size_t>(c)]) = extra(c, e) / kn(c);
    for (int f = 0; f < colloc.layout.n_functions(); ++f)
      rel.coefficients.emplace_back(full.data() + f * block, full.data() + (f + 1) * block);
    rep.extra.push_back(std::move(rel));
  }
  rep.verdict = rep.n_beyond_known > 0 ? DegeneracyVerdict::degenerate_rank3_plus
                                       : DegeneracyVerdict::nondegenerate_rank2;
  return rep;
}

ModeReport analyze_mode(std::span<const ManifoldPoint> points, const ResonanceProcess& process,
                        const WaveSystem& system, WebMode mode, BasisKind basis, int degree,
                        const RankOptions& opts) {
  const auto colloc = build_collocation(points, process, basis, degree, mode);
  const auto known = known_relations(process, system, mode);
  auto rep = rank_analyze(colloc, known, opts);
  rep.mode = mode;
  return rep;
}

RankReport degeneracy_verdict(const ManifoldChart& chart, const DegeneracyOptions& opts) {
  return degeneracy_from_sample(chart, sample_manifold(chart, opts.points, opts.seed, opts.sampling),
                                opts);
}

RankReport degeneracy_from_sample(const ManifoldChart& chart, const SampleResult& sample,
                                  const DegeneracyOptions& opts) {
  const auto& process = chart.process;
  RankReport rep;
  rep.n_points = static_cast<int>(sample.points.size());
  rep.partial = sample.partial;

  if (sample.full_manifold) {
    rep.full_manifold = true;
    rep.verdict = DegeneracyVerdict::degenerate_rank3_plus;
    rep.decided_by = "full_manifold";
    rep.note = "frequency constraint implied by the momentum constraint";
    return rep;
  }
  if (sample.points.empty())
    throw EmptyRegionError("no admissible points on " + process.name);

  if (process.arity() == 4) {
    rep.billiard_fraction =
        detect_billiard(sample.points, process, opts.sampling.tol.billiard_tol);
    if (rep.billiard_fraction == 1.0) {
      if (rep.n_points >= opts.billiard_min_points) {
        rep.verdict = DegeneracyVerdict::billiard_infinite_rank;
        rep.decided_by = "billiard";
      } else {
        rep.verdict = DegeneracyVerdict::inconclusive;
        rep.decided_by = "sampling";
        rep.note = "all points paired but fewer than " + std::to_string(opts.billiard_min_points) +
                   " samples";
      }
      return rep;
    }
  }

  const int needed = process.arity() * (opts.degree + 1);
  if (rep.n_points < std::max(needed, 4 * (opts.degree + 1))) {
    rep.verdict = DegeneracyVerdict::inconclusive;
    rep.decided_by = "sampling";
    rep.note = "too few manifold points (" + std::to_string(rep.n_points) + ")";
    return rep;
  }

  rep.tied = analyze_mode(sample.points, process, chart.system, WebMode::tied, opts.basis,
                          opts.degree, opts.rank);
  if (process.arity() == 4)
    rep.web = analyze_mode(sample.points, process, chart.system, WebMode::web, opts.basis,
                           opts.degree, opts.rank);

  auto pick = [&](const ModeReport& m, std::string_view by) {
    rep.verdict = m.verdict;
    rep.n_beyond_known = m.n_beyond_known;
    rep.singular_values = m.singular_values;
    rep.decided_by = std::string(by);
  };
  const ModeReport& tied = *rep.tied;
  if (tied.verdict == DegeneracyVerdict::degenerate_rank3_plus) {
    pick(tied, "tied");
  } else if (rep.web && rep.web->verdict == DegeneracyVerdict::degenerate_rank3_plus) {
    pick(*rep.web, "web");
  } else if (tied.verdict == DegeneracyVerdict::inconclusive) {
    pick(tied, "tied");
  } else if (rep.web && rep.web->verdict == DegeneracyVerdict::inconclusive) {
    pick(*rep.web, "web");
  } else {
    pick(tied, "tied");
  }
  return rep;
}

RankReport degeneracy_verdict(const ResonanceProcess& process, const WaveSystem& system,
                              const DegeneracyOptions& opts) {
  return degeneracy_verdict(make_chart(process, system, opts.domain), opts);
}

}  // namespace wavescreen
