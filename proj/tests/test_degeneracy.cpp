#include "wavescreen/degeneracy.hpp"
#include "wavescreen/errors.hpp"

#include <doctest.h>

#include <random>

using namespace wavescreen;

namespace {

const WaveSystem nls = make_system(SystemId::NlsKdv, {});

DegeneracyOptions quick(int degree = 6, int points = 800, std::uint64_t seed = 1) {
  DegeneracyOptions o;
  o.degree = degree;
  o.points = points;
  o.seed = seed;
  return o;
}

}  // namespace

TEST_CASE("basis conversion reproduces the polynomial") {
  const Polynomial p({0.3, -1.0, 0.5, 0.0, 0.25});
  const Interval iv{-4.0, 2.0};
  for (auto kind : {BasisKind::chebyshev, BasisKind::monomial}) {
    const auto c = to_basis(p, kind, 6, iv);
    std::vector<double> phi(7);
    for (double k : {-4.0, -1.3, 0.0, 0.7, 2.0}) {
      eval_basis(kind, 6, to_unit(iv, k), phi);
      double s = 0.0;
      for (int d = 0; d <= 6; ++d) s += c[d] * phi[d];
      CHECK(s == doctest::Approx(p(k)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS((void)to_basis(p, BasisKind::chebyshev, 3, iv), ArgumentError);
  CHECK_THROWS_AS((void)basis_kind_from_string("legendre"), ConfigError);
}

TEST_CASE("collocation widths") {
  const auto& m3 = builtin_process("nls-M3");
  const auto s = sample_manifold(make_chart(m3, nls), 100, 1);
  const auto web = build_collocation(s.points, m3, BasisKind::chebyshev, 8, WebMode::web);
  CHECK(web.matrix.cols() == 36);
  CHECK(web.matrix.rows() == 100);
  const auto tied = build_collocation(s.points, m3, BasisKind::chebyshev, 8, WebMode::tied);
  CHECK(tied.matrix.cols() == 18);
  CHECK_THROWS_AS((void)build_collocation(std::span(s.points).first(20), m3, BasisKind::chebyshev,
                                          8, WebMode::web),
                  ArgumentError);
  CHECK(tied_layout(m3).n_functions() == 2);
  CHECK(web_layout(4).n_functions() == 4);
}

TEST_CASE("synthetic four-web x, y, x+y, x-y has rank three") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  Eigen::MatrixXd args(400, 4);
  for (int i = 0; i < 400; ++i) {
    const double x = u(rng), y = u(rng);
    args.row(i) << x, y, x + y, x - y;
  }
  for (auto kind : {BasisKind::chebyshev, BasisKind::monomial}) {
    for (int degree : {3, 6, 8}) {
      const auto c = build_collocation(args, web_layout(4), kind, degree);
      const auto r = rank_analyze(c, {});
      CHECK(r.nullspace_dim == 3);
      CHECK(r.n_beyond_known == 3);
      CHECK(r.gap > 1e6);
      CHECK(r.verdict == DegeneracyVerdict::degenerate_rank3_plus);
    }
  }
}

TEST_CASE("known relations are recovered") {
  const auto& m3 = builtin_process("nls-M3");
  const auto s = sample_manifold(make_chart(m3, nls), 600, 2);
  for (auto mode : {WebMode::web, WebMode::tied}) {
    const auto r = analyze_mode(s.points, m3, nls, mode, BasisKind::chebyshev, 6);
    REQUIRE(r.known.size() == 2);
    for (const auto& k : r.known) {
      CHECK(k.found);
      CHECK(k.residual < 1e-6);
    }
    CHECK(r.known_rank == 2);
    CHECK(r.n_beyond_known == 0);
    CHECK(r.verdict == DegeneracyVerdict::nondegenerate_rank2);
  }
}

TEST_CASE("verdicts on reference systems") {
  SUBCASE("NLS-KdV four-wave manifold is nondegenerate") {
    const auto r = degeneracy_verdict(builtin_process("nls-M3"), nls, quick());
    CHECK(r.verdict == DegeneracyVerdict::nondegenerate_rank2);
    CHECK(r.billiard_fraction < 0.05);
  }
  SUBCASE("KdV-CKdV generic parameters are nondegenerate") {
    const auto ck = make_system(SystemId::KdvCkdv, {2, 1, -1});
    const auto r = degeneracy_verdict(builtin_process("ck-calM1"), ck, quick());
    CHECK(r.verdict == DegeneracyVerdict::nondegenerate_rank2);
  }
  SUBCASE("alpha = gamma is degenerate") {
    const auto ck = make_system(SystemId::KdvCkdv, {1, 1, 1});
    const auto r = degeneracy_verdict(builtin_process("ck-calM1"), ck, quick());
    CHECK(r.verdict == DegeneracyVerdict::degenerate_rank3_plus);
    CHECK(r.n_beyond_known >= 1);
  }
  SUBCASE("gamma = 0 full three-wave manifold is degenerate by rule") {
    const auto ck = make_system(SystemId::KdvCkdv, {1, 1, 0});
    const auto r = degeneracy_verdict(builtin_process("ck-M1"), ck, quick());
    CHECK(r.full_manifold);
    CHECK(r.verdict == DegeneracyVerdict::degenerate_rank3_plus);
  }
  SUBCASE("trivial single-branch manifold is a billiard") {
    auto o = quick(6, 1200);
    const auto r = degeneracy_verdict(builtin_process("quad4"), nls, o);
    CHECK(r.billiard_fraction == 1.0);
    CHECK(r.verdict == DegeneracyVerdict::billiard_infinite_rank);
  }
}

TEST_CASE("verdicts are deterministic for a fixed seed") {
  const auto ck = make_system(SystemId::KdvCkdv, {2, 1, -1});
  const auto a = degeneracy_verdict(builtin_process("ck-calM1"), ck, quick(4, 300, 5));
  const auto b = degeneracy_verdict(builtin_process("ck-calM1"), ck, quick(4, 300, 5));
  CHECK(a.verdict == b.verdict);
  CHECK(a.singular_values == b.singular_values);
}

TEST_CASE("property: extra relations do not shrink as the degree grows") {
  const auto ck = make_system(SystemId::KdvCkdv, {1, 1, 1});
  const auto& cal = builtin_process("ck-calM1");
  const auto s = sample_manifold(make_chart(cal, ck), 800, 4);
  int prev = -1;
  for (int d : {4, 6, 8}) {
    const auto r = analyze_mode(s.points, cal, ck, WebMode::web, BasisKind::chebyshev, d);
    CHECK(r.n_beyond_known >= prev);
    prev = r.n_beyond_known;
  }
  CHECK(prev >= 1);
}

TEST_CASE("billiard manifolds: nullspace grows with the degree") {
  const auto& quad = builtin_process("quad4");
  const auto s = sample_manifold(make_chart(quad, nls), 800, 6);
  int prev = -1;
  for (int d : {3, 5, 7}) {
    const auto r = analyze_mode(s.points, quad, nls, WebMode::web, BasisKind::chebyshev, d);
    CHECK(r.nullspace_dim > prev);
    prev = r.nullspace_dim;
  }
}
