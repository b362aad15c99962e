#include "wavescreen/coefficients.hpp"

#include "wavescreen/errors.hpp"
#include "wavescreen/process.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace wavescreen {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
const double kSqrt2Pi = std::sqrt(2.0 * std::numbers::pi);

struct KernelInfo {
  KernelId id;
  std::string_view name;
  int arity;
  SystemId system;
};

constexpr std::array<KernelInfo, 16> kKernels{{
    {KernelId::U_nls, "U_nls", 3, SystemId::NlsKdv},
    {KernelId::V_nls, "V_nls", 3, SystemId::NlsKdv},
    {KernelId::W_nls, "W_nls", 4, SystemId::NlsKdv},
    {KernelId::U1_nls, "U1_nls", 3, SystemId::NlsKdv},
    {KernelId::U2_nls, "U2_nls", 3, SystemId::NlsKdv},
    {KernelId::V_ck, "V_ck", 3, SystemId::KdvCkdv},
    {KernelId::U_ck, "U_ck", 3, SystemId::KdvCkdv},
    {KernelId::A1_ck, "A1_ck", 3, SystemId::KdvCkdv},
    {KernelId::B1_ck, "B1_ck", 3, SystemId::KdvCkdv},
    {KernelId::B2_ck, "B2_ck", 3, SystemId::KdvCkdv},
    {KernelId::T_nls, "T_nls", 4, SystemId::NlsKdv},
    {KernelId::T1_nls, "T1_nls", 4, SystemId::NlsKdv},
    {KernelId::T2_nls, "T2_nls", 4, SystemId::NlsKdv},
    {KernelId::P1_ck, "P1_ck", 4, SystemId::KdvCkdv},
    {KernelId::S1_ck, "S1_ck", 4, SystemId::KdvCkdv},
    {KernelId::T1_ck, "T1_ck", 4, SystemId::KdvCkdv},
}};

const KernelInfo& info(KernelId id) {
  for (const auto& k : kKernels)
    if (k.id == id) return k;
  throw ArgumentError("unknown kernel id");
}

void require_arity(KernelId id, std::span<const double> ks) {
  const int n = info(id).arity;
  if (static_cast<int>(ks.size()) != n)
    throw ArgumentError(std::string(info(id).name) + " takes " + std::to_string(n) +
                        " wavenumbers, got " + std::to_string(ks.size()));
}

// Kernels written with explicit arguments so the printed formulas read the same.
struct NlsKernels {
  double beta, gamma;
  double U(double a, double b, double c) const {
    return -gamma / (2.0 * kSqrt2Pi) * std::sqrt(std::abs(a * b * c)) * heaviside(-a) *
           heaviside(-b) * heaviside(-c);
  }
  double V(double /*a*/, double b, double /*c*/) const {
    return -beta / kSqrt2Pi * std::sqrt(std::abs(b)) * heaviside(-b);
  }
  static double w(double k) { return k * k; }
  static double W(double k) { return -k * k * k; }
};

struct CkKernels {
  double alpha, beta, gamma;
  double V(double a, double b, double c) const {
    return -beta / (2.0 * kSqrt2Pi) * std::sqrt(std::abs(a * b * c)) * heaviside(-a) *
           heaviside(-b) * heaviside(-c);
  }
  double U(double a, double b, double c) const { return 4.0 * V(a, b, c); }
  double w(double k) const { return 2.0 * beta * k - alpha * k * k * k; }
  double W(double k) const { return beta * k - gamma * k * k * k; }
};

CoefficientValue ratio2(double num, double d1, double d2, const GuardTolerances& tol) {
  const std::array<double, 2> den{d1, d2};
  return guarded_ratio(num, den, tol);
}

bool off_manifold(std::string_view process, SystemId sys, const SystemParams& params,
                  std::span<const double> ks, double tol_res) {
  const auto mm = mismatch(builtin_process(process), make_system(sys, params), ks);
  return !(std::abs(mm.dk) <= tol_res && std::abs(mm.dw) <= tol_res);
}

}  // namespace

std::string_view to_string(KernelId id) noexcept {
  for (const auto& k : kKernels)
    if (k.id == id) return k.name;
  return "?";
}

KernelId kernel_id_from_string(std::string_view name) {
  for (const auto& k : kKernels)
    if (k.name == name) return k.id;
  throw ArgumentError("unknown kernel id: " + std::string(name));
}

int kernel_arity(KernelId id) noexcept {
  for (const auto& k : kKernels)
    if (k.id == id) return k.arity;
  return 0;
}

SystemId kernel_system(KernelId id) noexcept {
  for (const auto& k : kKernels)
    if (k.id == id) return k.system;
  return SystemId::Custom;
}

std::string_view to_string(CoefficientStatus s) noexcept {
  switch (s) {
    case CoefficientStatus::finite: return "finite";
    case CoefficientStatus::removable_zero: return "removable_zero";
    case CoefficientStatus::pole: return "pole";
  }
  return "?";
}

std::string_view to_string(SignVerdict v) noexcept {
  switch (v) {
    case SignVerdict::all_negative: return "all_negative";
    case SignVerdict::all_positive: return "all_positive";
    case SignVerdict::mixed: return "mixed";
  }
  return "?";
}

CoefficientValue guarded_ratio(double num, double den, const GuardTolerances& tol) {
  if (std::abs(den) >= tol.eps_den) return {num / den, CoefficientStatus::finite};
  if (std::abs(num) < tol.eps_num) return {0.0, CoefficientStatus::removable_zero};
  return {kNaN, CoefficientStatus::pole};
}

CoefficientValue guarded_ratio(double num, std::span<const double> den_factors,
                               const GuardTolerances& tol) {
  double den = 1.0;
  for (double d : den_factors) {
    if (std::abs(d) < tol.eps_den) {
      if (std::abs(num) < tol.eps_num) return {0.0, CoefficientStatus::removable_zero};
      return {kNaN, CoefficientStatus::pole};
    }
    den *= d;
  }
  return {num / den, CoefficientStatus::finite};
}

CoefficientValue sum_values(std::span<const CoefficientValue> terms) {
  double s = 0.0;
  bool all_removable = !terms.empty();
  for (const auto& t : terms) {
    if (t.is_pole()) return {kNaN, CoefficientStatus::pole};
    if (t.status != CoefficientStatus::removable_zero) all_removable = false;
    s += t.value;
  }
  return {s, all_removable ? CoefficientStatus::removable_zero : CoefficientStatus::finite};
}

double kernel3(KernelId id, std::span<const double> ks, const SystemParams& params) {
  if (ks.size() != 3) throw ArgumentError("cubic kernels take 3 wavenumbers");
  switch (id) {
    case KernelId::U_nls: return NlsKernels{params.beta, params.gamma}.U(ks[0], ks[1], ks[2]);
    case KernelId::V_nls: return NlsKernels{params.beta, params.gamma}.V(ks[0], ks[1], ks[2]);
    case KernelId::V_ck:
      return CkKernels{params.alpha, params.beta, params.gamma}.V(ks[0], ks[1], ks[2]);
    case KernelId::U_ck:
      return CkKernels{params.alpha, params.beta, params.gamma}.U(ks[0], ks[1], ks[2]);
    default:
      throw ArgumentError(std::string(to_string(id)) + " is not a cubic kernel");
  }
}

double kernel_w_nls(const SystemParams& params) noexcept {
  return -params.alpha / (4.0 * std::numbers::pi);
}

CoefficientValue transform_kernel(KernelId id, std::span<const double> ks,
                                  const WaveSystem& system, const GuardTolerances& tol,
                                  double tol_res) {
  if (ks.size() != 3) throw ArgumentError("transformation kernels take 3 wavenumbers");
  const double l = ks[0], m = ks[1], n = ks[2];
  const double linear = id == KernelId::B1_ck ? l - m + n : l - m - n;
  if (!(std::abs(linear) <= tol_res))
    throw ArgumentError(std::string(to_string(id)) + ": wavenumbers violate the linear constraint");

  const auto& p = system.params();
  auto w = [&](double k) { return system.frequency(Branch::short_wave, k); };
  auto W = [&](double k) { return system.frequency(Branch::long_wave, k); };
  auto need = [&](SystemId s) {
    if (system.id() != s)
      throw ArgumentError(std::string(to_string(id)) + " belongs to " +
                          std::string(to_string(s)));
  };
  switch (id) {
    case KernelId::U1_nls:
      need(SystemId::NlsKdv);
      return guarded_ratio(-kernel3(KernelId::U_nls, ks, p), W(l) - W(m) - W(n), tol);
    case KernelId::U2_nls:
      need(SystemId::NlsKdv);
      return guarded_ratio(-kernel3(KernelId::V_nls, ks, p), w(l) - W(m) - w(n), tol);
    case KernelId::A1_ck:
      need(SystemId::KdvCkdv);
      return guarded_ratio(-kernel3(KernelId::V_ck, ks, p), W(l) - W(m) - W(n), tol);
    case KernelId::B1_ck:
      need(SystemId::KdvCkdv);
      return guarded_ratio(-kernel3(KernelId::U_ck, ks, p), w(l) - W(m) + w(n), tol);
    case KernelId::B2_ck:
      need(SystemId::KdvCkdv);
      return guarded_ratio(-kernel3(KernelId::U_ck, ks, p), w(l) - W(m) - w(n), tol);
    default:
      throw ArgumentError(std::string(to_string(id)) + " is not a transformation kernel");
  }
}

CoefficientBreakdown evaluate_t_nls(std::span<const double> ks, const SystemParams& params,
                                    const GuardTolerances& tol, double tol_res) {
  if (ks.size() != 4) throw ArgumentError("T_nls takes 4 wavenumbers");
  const double k1 = ks[0], k2 = ks[1], k3 = ks[2], k4 = ks[3];
  const NlsKernels K{params.beta, params.gamma};
  auto w = &NlsKernels::w;
  auto W = &NlsKernels::W;

  CoefficientBreakdown out;
  out.off_manifold = off_manifold("nls-M3", SystemId::NlsKdv, params, ks, tol_res);
  out.terms = {
      // T1
      guarded_ratio(2.0 * K.V(k3 + k4, k4, k3) * K.V(k1 + k2, k2, k1),
                    w(k1) + W(k2) - w(k1 + k2), tol),
      guarded_ratio(2.0 * K.V(k1, k4, k1 - k4) * K.V(k3, k2, k3 - k2),
                    w(k1) - W(k4) - w(k1 - k4), tol),
      guarded_ratio(4.0 * K.V(k1, k1 - k3, k3) * K.U(k4, k2, k4 - k2),
                    W(k4) - W(k2) - W(k4 - k2), tol),
      guarded_ratio(4.0 * K.V(k3, k3 - k1, k1) * K.U(k4, k2, k2 - k4),
                    W(k2) - W(k4) - W(k2 - k4), tol),
      // T2
      ratio2(w(k1 + k2) * K.V(k4 + k3, k4, k3) * K.V(k1 + k2, k2, k1),
             w(k4 + k3) - W(k4) - w(k3), w(k2 + k1) - W(k2) - w(k1), tol),
      ratio2(w(k3 - k2) * K.V(k3, k2, k3 - k2) * K.V(k1, k4, k1 - k4),
             w(k3) - W(k2) - w(k3 - k2), w(k1) - W(k4) - w(k1 - k4), tol),
      ratio2(2.0 * W(k4 - k2) * K.U(k4, k2, k4 - k2) * K.V(k1, k1 - k3, k3),
             W(k4) - W(k2) - W(k4 - k2), w(k1) - W(k1 - k3) - w(k3), tol),
      ratio2(2.0 * W(k2 - k4) * K.U(k2, k4, k2 - k4) * K.V(k3, k3 - k1, k1),
             W(k2) - W(k4) - W(k2 - k4), w(k3) - W(k3 - k1) - w(k1), tol),
  };
  const std::span<const CoefficientValue> all(out.terms);
  out.part1 = sum_values(all.first(4));
  out.part2 = sum_values(all.last(4));
  out.total = sum_values(all);
  return out;
}

CoefficientBreakdown evaluate_t1_ck(std::span<const double> ks, const SystemParams& params,
                                    const GuardTolerances& tol, double tol_res) {
  if (ks.size() != 4) throw ArgumentError("T1_ck takes 4 wavenumbers");
  const double k1 = ks[0], k2 = ks[1], k3 = ks[2], k4 = ks[3];
  const CkKernels K{params.alpha, params.beta, params.gamma};
  auto w = [&](double k) { return K.w(k); };
  auto W = [&](double k) { return K.W(k); };

  CoefficientBreakdown out;
  out.off_manifold = off_manifold("ck-calM1", SystemId::KdvCkdv, params, ks, tol_res);
  out.terms = {
      // P1
      ratio2(-W(k1 - k3) * K.U(k1, k1 - k3, k3) * K.V(k2 + k4, k2, k4),
             w(k1) - W(k1 - k3) - w(k3), W(k2 + k4) - W(k2) - W(k4), tol),
      ratio2(-w(k1 - k2) * K.U(k1, k2, k1 - k2) * K.U(k3 + k4, k3, k4),
             w(k1) - W(k2) - w(k1 - k2), w(k3 + k4) - W(k4) - w(k3), tol),
      // S1
      guarded_ratio(2.0 * K.U(k2 + k3, k2, k3) * K.U(k1, k4, k1 - k4),
                    w(k1) - W(k4) - w(k1 - k4), tol),
      guarded_ratio(2.0 * K.V(k2 + k4, k2, k4) * K.U(k1, k1 - k3, k3),
                    w(k1) - W(k1 - k3) - w(k3), tol),
  };
  const std::span<const CoefficientValue> all(out.terms);
  out.part1 = sum_values(all.first(2));
  out.part2 = sum_values(all.last(2));
  out.total = sum_values(all);
  return out;
}

CoefficientValue evaluate_coefficient(KernelId id, std::span<const double> ks,
                                      const SystemParams& params, const GuardTolerances& tol,
                                      double tol_res) {
  require_arity(id, ks);
  switch (id) {
    case KernelId::U_nls:
    case KernelId::V_nls:
    case KernelId::V_ck:
    case KernelId::U_ck:
      return {kernel3(id, ks, params), CoefficientStatus::finite};
    case KernelId::W_nls:
      return {kernel_w_nls(params), CoefficientStatus::finite};
    case KernelId::U1_nls:
    case KernelId::U2_nls:
    case KernelId::A1_ck:
    case KernelId::B1_ck:
    case KernelId::B2_ck:
      return transform_kernel(id, ks, make_system(kernel_system(id), params), tol, tol_res);
    case KernelId::T_nls: return evaluate_t_nls(ks, params, tol, tol_res).total;
    case KernelId::T1_nls: return evaluate_t_nls(ks, params, tol, tol_res).part1;
    case KernelId::T2_nls: return evaluate_t_nls(ks, params, tol, tol_res).part2;
    case KernelId::P1_ck: return evaluate_t1_ck(ks, params, tol, tol_res).part1;
    case KernelId::S1_ck: return evaluate_t1_ck(ks, params, tol, tol_res).part2;
    case KernelId::T1_ck: return evaluate_t1_ck(ks, params, tol, tol_res).total;
  }
  throw ArgumentError("unknown kernel id");
}

ParamRegion region_a1() {
  return {"A1", {-2.0, 0.0}, {0.0, 2.0}, {-2.0, 0.0}, [](const SystemParams& p) {
            return p.alpha < 0.0 && p.beta > 0.0 && p.alpha < p.gamma && p.gamma < 0.0;
          }};
}

ParamRegion region_a2() {
  return {"A2", {0.0, 2.0}, {-2.0, 0.0}, {0.0, 2.0}, [](const SystemParams& p) {
            return p.alpha > 0.0 && p.beta < 0.0 && p.alpha > p.gamma && p.gamma > 0.0;
          }};
}

SignScanResult sign_scan(KernelId id, const ParamRegion& region, int samples, std::uint64_t seed,
                         const SignScanOptions& opts) {
  if (id != KernelId::P1_ck && id != KernelId::S1_ck && id != KernelId::T1_ck)
    throw ArgumentError("sign_scan supports P1_ck, S1_ck and T1_ck");
  if (samples < 100) throw ArgumentError("sign_scan needs at least 100 samples");

  std::mt19937_64 rng(seed);
  using U = std::uniform_real_distribution<double>;
  U da(region.alpha.lo, region.alpha.hi), db(region.beta.lo, region.beta.hi),
      dg(region.gamma.lo, region.gamma.hi), dk(opts.k_domain.lo, opts.k_domain.hi);
  std::bernoulli_distribution coin(0.5);

  SignScanResult res;
  res.min_abs = std::numeric_limits<double>::infinity();
  const long max_attempts = static_cast<long>(samples) * std::max(1, opts.max_attempts_factor);
  while (res.valid < samples && res.attempts < max_attempts) {
    ++res.attempts;
    SystemParams p{da(rng), db(rng), dg(rng)};
    const double k2 = dk(rng), k4 = dk(rng);
    const Sheet sheet = coin(rng) ? Sheet::plus : Sheet::minus;
    if (region.admits && !region.admits(p)) continue;
    if (p.alpha == 0.0) continue;
    const auto pt = param_m1_kdvckdv(k2, k4, p, sheet);
    if (!pt) continue;
    bool ok = std::abs(pt->residual_k) <= opts.tol_res && std::abs(pt->residual_w) <= opts.tol_res;
    for (double k : pt->ks) ok = ok && k < 0.0 && std::abs(k) >= opts.k_min;
    if (!ok) continue;

    const auto v = evaluate_coefficient(id, pt->ks, p, opts.guard, opts.tol_res);
    ++res.valid;
    if (v.is_pole()) {
      ++res.poles;
      continue;
    }
    res.min_abs = std::min(res.min_abs, std::abs(v.value));
    if (v.value < 0.0)
      ++res.negative;
    else if (v.value > 0.0)
      ++res.positive;
    else
      ++res.zero;
  }
  if (res.valid == 0)
    throw EmptyRegionError("sign_scan: no on-manifold points with all k_j < 0 in region " +
                           region.name);
  res.partial = res.valid < samples;
  if (res.negative == res.valid)
    res.verdict = SignVerdict::all_negative;
  else if (res.positive == res.valid)
    res.verdict = SignVerdict::all_positive;
  else
    res.verdict = SignVerdict::mixed;
  if (res.poles == res.valid) res.min_abs = 0.0;
  return res;
}

}  // namespace wavescreen
