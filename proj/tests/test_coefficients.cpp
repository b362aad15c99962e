#include "oracles/t_nls_oracle.hpp"
#include "wavescreen/coefficients.hpp"
#include "wavescreen/errors.hpp"
#include "wavescreen/manifold.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace wavescreen;

namespace {

const double root2pi = std::sqrt(2.0 * std::numbers::pi);

CoefficientBreakdown t_at(std::vector<double> ks, SystemParams p = {}) {
  return evaluate_t_nls(ks, p);
}

}  // namespace

TEST_CASE("cubic kernel examples") {
  const SystemParams p{1.0, 1.0, 1.0};
  const std::vector<double> a{1.0, -4.0, 5.0};
  CHECK(kernel3(KernelId::V_nls, a, p) == doctest::Approx(-2.0 / root2pi));
  const std::vector<double> pos{1.0, 4.0, 5.0};
  CHECK(kernel3(KernelId::V_nls, pos, p) == 0.0);
  const std::vector<double> neg{-1.0, -1.0, -4.0};
  CHECK(kernel3(KernelId::U_nls, neg, p) == doctest::Approx(-2.0 / (2.0 * root2pi)));
  CHECK(kernel3(KernelId::V_ck, neg, p) == doctest::Approx(-1.0 / root2pi));
  CHECK(kernel3(KernelId::U_ck, neg, p) == doctest::Approx(-4.0 / root2pi));
  const std::vector<double> mixed{-1.0, 1.0, -4.0};
  CHECK(kernel3(KernelId::U_ck, mixed, p) == 0.0);
  CHECK(kernel_w_nls({2.0, 1.0, 1.0}) == doctest::Approx(-2.0 / (4.0 * std::numbers::pi)));
  CHECK_THROWS_AS((void)kernel3(KernelId::T_nls, neg, p), ArgumentError);
}

TEST_CASE("kernel ids") {
  for (int i = 0; i <= static_cast<int>(KernelId::T1_ck); ++i) {
    const auto id = static_cast<KernelId>(i);
    CHECK(kernel_id_from_string(to_string(id)) == id);
  }
  CHECK(kernel_arity(KernelId::T_nls) == 4);
  CHECK(kernel_arity(KernelId::B1_ck) == 3);
  CHECK(kernel_system(KernelId::P1_ck) == SystemId::KdvCkdv);
  CHECK_THROWS_AS((void)kernel_id_from_string("X_nls"), ArgumentError);
}

TEST_CASE("guarded_ratio") {
  CHECK(guarded_ratio(1.0, 4.0).value == 0.25);
  CHECK(guarded_ratio(1.0, 4.0).status == CoefficientStatus::finite);
  const auto removable = guarded_ratio(1e-12, 1e-9);
  CHECK(removable.status == CoefficientStatus::removable_zero);
  CHECK(removable.value == 0.0);
  const auto pole = guarded_ratio(1.0, 1e-9);
  CHECK(pole.is_pole());
  CHECK(std::isnan(pole.value));
  // a large factor must not hide a vanishing one
  const std::vector<double> factors{1e6, 1e-10};
  CHECK(guarded_ratio(1.0, factors).is_pole());
  const std::vector<double> ok{2.0, 4.0};
  CHECK(guarded_ratio(1.0, ok).value == 0.125);

  const std::vector<CoefficientValue> terms{{1.0, CoefficientStatus::finite},
                                            {0.0, CoefficientStatus::removable_zero}};
  CHECK(sum_values(terms).value == 1.0);
  const std::vector<CoefficientValue> with_pole{{1.0, CoefficientStatus::finite}, pole};
  CHECK(sum_values(with_pole).is_pole());
  const std::vector<CoefficientValue> zeros{{0.0, CoefficientStatus::removable_zero}};
  CHECK(sum_values(zeros).status == CoefficientStatus::removable_zero);
}

TEST_CASE("transformation kernels") {
  const auto nls = make_system(SystemId::NlsKdv, {1, 1, 1});
  const std::vector<double> lmn{-3.0, -1.0, -2.0};
  const double u = kernel3(KernelId::U_nls, lmn, nls.params());
  const double den = 27.0 - 1.0 - 8.0;  // W(l) - W(m) - W(n), W = -k^3
  CHECK(transform_kernel(KernelId::U1_nls, lmn, nls).value == doctest::Approx(-u / den));
  const std::vector<double> off{-3.0, -1.0, -1.0};
  CHECK_THROWS_AS((void)transform_kernel(KernelId::U1_nls, off, nls), ArgumentError);

  const auto ck = make_system(SystemId::KdvCkdv, {2, 1, -1});
  CHECK_THROWS_AS((void)transform_kernel(KernelId::U1_nls, lmn, ck), ArgumentError);
  CHECK(transform_kernel(KernelId::A1_ck, lmn, ck).status == CoefficientStatus::finite);
  const std::vector<double> b1{-3.0, -1.0, 2.0};  // l - m + n = 0
  CHECK_NOTHROW((void)transform_kernel(KernelId::B1_ck, b1, ck));
  CHECK_THROWS_AS((void)transform_kernel(KernelId::B1_ck, lmn, ck), ArgumentError);

  // gamma = 0: the long-wave law is linear and the A1 denominator vanishes identically
  const auto ck0 = make_system(SystemId::KdvCkdv, {1, 1, 0});
  CHECK(transform_kernel(KernelId::A1_ck, lmn, ck0).is_pole());
}

TEST_CASE("T_nls: parts add up, beta = 0 gives zero") {
  const auto b = t_at({-4, -1, -3, -2});
  CHECK(b.total.value == doctest::Approx(b.part1.value + b.part2.value).epsilon(1e-14));
  CHECK(b.terms.size() == 8);
  CHECK_FALSE(b.off_manifold);
  const auto z = t_at({-4, -1, -3, -2}, {1, 0, 1});
  CHECK(z.total.value == 0.0);
  CHECK(t_at({-4, -1, -3, -2.5}).off_manifold);
}

TEST_CASE("T_nls matches the high-precision reference values") {
  struct Ref {
    std::vector<double> ks;
    double t1, t2, t;
  };
  const Ref refs[] = {
      {{-4, -1, -3, -2}, 0.1312961294395779684767999, 0.1504434816495164222129999,
       0.2817396110890943906897997},
      {{-6.625, -0.5, -4.125, -3}, 0.1328372328027744480135923, 0.4594916889739448026035384,
       0.5923289217767192506171307},
      {{0.125, -2, -3.375, 1.5}, 0.0, 0.0, 0.0},
      {{-3, 1, -4, 2}, 0.0, 0.0, 0.0},
  };
  for (const auto& r : refs) {
    const auto b = t_at(r.ks);
    CHECK(b.part1.value == doctest::Approx(r.t1).epsilon(1e-9));
    CHECK(b.part2.value == doctest::Approx(r.t2).epsilon(1e-9));
    CHECK(b.total.value == doctest::Approx(r.t).epsilon(1e-9));
  }
}

TEST_CASE("P1 and S1 match the high-precision reference values") {
  struct Ref {
    std::vector<double> ks;
    SystemParams p;
    double p1, s1;
  };
  const Ref refs[] = {
      {{-0.61799003609699361895, -0.25, -0.11799003609699361895, -0.25}, {2, 1, -1},
       -0.9104703341847279200625561, 0.3438139723494776761075387},
      {{-1.7807764064044151375, -0.5, -0.28077640640441513746, -1}, {1, 3, 1},
       -5.789562554014708818162909, 2.864788975654116043839908},
      {{-2.6568285846778443486, -2, -0.15682858467784434859, -0.5}, {-1, -1, -2},
       1.223476096278231207541652, -0.1881555931965573951715647},
  };
  for (const auto& r : refs) {
    const auto b = evaluate_t1_ck(r.ks, r.p);
    CHECK_FALSE(b.off_manifold);
    CHECK(b.part1.value == doctest::Approx(r.p1).epsilon(1e-9));
    CHECK(b.part2.value == doctest::Approx(r.s1).epsilon(1e-9));
    CHECK(b.total.value == doctest::Approx(r.p1 + r.s1).epsilon(1e-9));
  }
}

TEST_CASE("property: T_nls agrees with the independent transcription") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-5, 5);
  int compared = 0, nonzero = 0;
  for (int i = 0; i < 20000 && compared < 2000; ++i) {
    const auto p = param_m3_nlskdv(u(rng), u(rng));
    const auto& k = p.ks;
    if (oracle::min_denominator(k[0], k[1], k[2], k[3]) < 1e-3) continue;
    const double beta = 0.5 + (i % 4) * 0.5, gamma = -1.0 + (i % 5) * 0.5;
    const auto ref = oracle::t_nls(k[0], k[1], k[2], k[3], beta, gamma);
    const auto got = evaluate_t_nls(k, {1.0, beta, gamma});
    REQUIRE_FALSE(got.total.is_pole());
    const double want = static_cast<double>(ref.t1 + ref.t2);
    CHECK(got.total.value == doctest::Approx(want).epsilon(1e-9).scale(1e-12));
    ++compared;
    nonzero += std::abs(want) > 1e-8;
  }
  CHECK(compared == 2000);
  CHECK(nonzero > 100);
}

TEST_CASE("property: T_nls vanishes when k2 and k4 are both positive") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.01, 5);
  for (int i = 0; i < 2000; ++i) {
    const auto p = param_m3_nlskdv(u(rng), u(rng));
    const auto t = evaluate_t_nls(p.ks, {});
    if (!t.total.is_pole()) CHECK(t.total.value == 0.0);
  }
}

TEST_CASE("T_nls along a path through a vanishing denominator") {
  // k4 = 3 fixed, k2 -> -2: no term is allowed to blow up on the negative side
  double prev = std::nan("");
  for (int i = 1; i <= 40; ++i) {
    const double h = std::ldexp(1.0, -i / 2);
    const auto p = param_m3_nlskdv(-2.0 + h, 3.0);
    const auto t = evaluate_t_nls(p.ks, {});
    if (t.total.is_pole()) continue;
    CHECK(std::isfinite(t.total.value));
    if (!std::isnan(prev)) CHECK(std::abs(t.total.value - prev) <= 1.0);
    prev = t.total.value;
  }
}

TEST_CASE("property: joint parameter scaling scales P1 and S1 linearly") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-3, 0);
  const SystemParams p{2, 1, -1};
  int checked = 0;
  for (int i = 0; i < 4000 && checked < 200; ++i) {
    const auto q = param_m1_kdvckdv(u(rng), u(rng), p, i % 2 ? Sheet::plus : Sheet::minus);
    if (!q) continue;
    const auto a = evaluate_t1_ck(q->ks, p);
    if (a.part1.is_pole() || a.part2.is_pole()) continue;
    for (double lam : {0.5, 3.0}) {
      const auto b = evaluate_t1_ck(q->ks, {lam * p.alpha, lam * p.beta, lam * p.gamma});
      CHECK_FALSE(b.off_manifold);
      CHECK(b.part1.value == doctest::Approx(lam * a.part1.value).epsilon(1e-9).scale(1e-12));
      CHECK(b.part2.value == doctest::Approx(lam * a.part2.value).epsilon(1e-9).scale(1e-12));
    }
    ++checked;
  }
  CHECK(checked == 200);
}

TEST_CASE("property: kernels are linear in beta at fixed wavenumbers") {
  const std::vector<double> ks{-1.5, -0.5, -1.0};
  for (auto id : {KernelId::V_nls, KernelId::V_ck, KernelId::U_ck}) {
    const double one = kernel3(id, ks, {1.0, 1.0, 1.0});
    CHECK(kernel3(id, ks, {1.0, 2.5, 1.0}) == doctest::Approx(2.5 * one));
  }
}

TEST_CASE("sign scans") {
  SignScanOptions opts;
  opts.max_attempts_factor = 20;
  CHECK_THROWS_AS((void)sign_scan(KernelId::P1_ck, region_a1(), 100, 1, opts), EmptyRegionError);
  CHECK_THROWS_AS((void)sign_scan(KernelId::T_nls, region_a1(), 100, 1, opts), ArgumentError);
  CHECK_THROWS_AS((void)sign_scan(KernelId::P1_ck, region_a1(), 10, 1, opts), ArgumentError);

  ParamRegion box{"box", {1.5, 2.5}, {0.5, 1.5}, {-1.5, -0.5}, [](const SystemParams&) { return true; }};
  const auto a = sign_scan(KernelId::P1_ck, box, 200, 9, opts);
  const auto b = sign_scan(KernelId::P1_ck, box, 200, 9, opts);
  CHECK(a.valid == b.valid);
  CHECK(a.negative == b.negative);
  CHECK(a.min_abs == b.min_abs);
  CHECK(a.valid > 0);
  CHECK(a.negative + a.positive + a.zero + a.poles == a.valid);
}
