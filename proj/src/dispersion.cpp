#include "wavescreen/dispersion.hpp"

#include "wavescreen/errors.hpp"

#include <string>

namespace wavescreen {

std::string_view to_string(Branch b) noexcept {
  return b == Branch::short_wave ? "short" : "long";
}

DispersionLaw::DispersionLaw(std::vector<double> coeffs_from_linear)
    : coeffs_(std::move(coeffs_from_linear)) {}

int DispersionLaw::degree() const noexcept {
  for (int d = static_cast<int>(coeffs_.size()); d >= 1; --d) {
    if (coeffs_[static_cast<std::size_t>(d - 1)] != 0.0) return d;
  }
  return 0;
}

Polynomial DispersionLaw::polynomial() const {
  std::vector<double> c(coeffs_.size() + 1, 0.0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i + 1] = coeffs_[i];
  return Polynomial(std::move(c));
}

double eval_dispersion(const DispersionLaw& law, double k) noexcept {
  const auto& c = law.coeffs();
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (acc + *it) * k;
  return acc;
}

long double eval_dispersion_extended(const DispersionLaw& law, long double k) noexcept {
  const auto& c = law.coeffs();
  long double acc = 0.0L;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (acc + *it) * k;
  return acc;
}

std::string_view to_string(SystemId id) noexcept {
  switch (id) {
    case SystemId::NlsKdv: return "nls-kdv";
    case SystemId::KdvCkdv: return "kdv-ckdv";
    case SystemId::Custom: return "custom";
  }
  return "custom";
}

SystemId system_id_from_string(std::string_view name) {
  if (name == "nls-kdv") return SystemId::NlsKdv;
  if (name == "kdv-ckdv") return SystemId::KdvCkdv;
  if (name == "custom") return SystemId::Custom;
  throw ConfigError("unknown system '" + std::string(name) + "'");
}

WaveSystem::WaveSystem(SystemId id, SystemParams params, DispersionLaw short_law,
                       DispersionLaw long_law)
    : id_(id), params_(params), short_(std::move(short_law)), long_(std::move(long_law)) {
  flags_.uncoupled = params_.beta == 0.0;
  if (id_ == SystemId::KdvCkdv) {
    flags_.alpha_zero = params_.alpha == 0.0;
    flags_.gamma_zero = params_.gamma == 0.0;
    flags_.alpha_eq_gamma = params_.alpha == params_.gamma;
  }
}

WaveSystem make_system(SystemId id, const SystemParams& p) {
  switch (id) {
    case SystemId::NlsKdv:
      return WaveSystem(id, p, DispersionLaw({0.0, 1.0}), DispersionLaw({0.0, 0.0, -1.0}));
    case SystemId::KdvCkdv:
      return WaveSystem(id, p, DispersionLaw({2.0 * p.beta, 0.0, -p.alpha}),
                        DispersionLaw({p.beta, 0.0, -p.gamma}));
    case SystemId::Custom:
      break;
  }
  throw ConfigError("custom system requires explicit dispersion laws");
}

WaveSystem make_custom_system(const SystemParams& params, DispersionLaw short_law,
                              DispersionLaw long_law) {
  if (short_law.coeffs().empty() || long_law.coeffs().empty()) {
    throw ConfigError("custom system requires both dispersion laws");
  }
  return WaveSystem(SystemId::Custom, params, std::move(short_law), std::move(long_law));
}

}  // namespace wavescreen
