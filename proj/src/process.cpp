#include "wavescreen/process.hpp"

#include "wavescreen/errors.hpp"

#include <algorithm>

namespace wavescreen {

namespace {

constexpr Branch S = Branch::short_wave;
constexpr Branch L = Branch::long_wave;

const std::vector<ResonanceProcess>& registry() {
  static const std::vector<ResonanceProcess> all = {
      {"nls-M1", {{1, L}, {-1, L}, {-1, L}}},
      {"nls-M2", {{1, S}, {-1, L}, {-1, S}}},
      {"nls-M3", {{1, S}, {1, L}, {-1, S}, {-1, L}}},
      {"ck-M1", {{1, L}, {-1, L}, {-1, L}}},
      {"ck-M2", {{1, S}, {-1, L}, {1, S}}},
      {"ck-M3", {{1, S}, {-1, L}, {-1, S}}},
      {"ck-calM1", {{1, S}, {-1, L}, {-1, S}, {-1, L}}},
      {"ck-calM2", {{1, S}, {1, L}, {-1, S}, {-1, L}}},
      {"ck-calM3", {{1, S}, {1, L}, {1, S}, {-1, L}}},
      {"ck-calM4", {{1, S}, {1, L}, {1, S}, {1, L}}},
      {"ck-calM5", {{1, S}, {-1, L}, {1, S}, {-1, L}}},
      {"quad4", {{1, S}, {1, S}, {-1, S}, {-1, S}}},
  };
  return all;
}

}  // namespace

void validate(const ResonanceProcess& process) {
  if (process.arity() != 3 && process.arity() != 4) {
    throw ArgumentError("process '" + process.name + "' must have 3 or 4 waves");
  }
  for (const auto& w : process.waves) {
    if (w.sigma != 1 && w.sigma != -1) throw ArgumentError("wave sign must be +1 or -1");
  }
}

Mismatch mismatch(const ResonanceProcess& process, const WaveSystem& system,
                  std::span<const double> ks) {
  if (ks.size() != process.waves.size()) {
    throw ArgumentError("mismatch: expected " + std::to_string(process.waves.size()) +
                        " wavenumbers, got " + std::to_string(ks.size()));
  }
  long double dk = 0.0L;
  long double dw = 0.0L;
  for (std::size_t j = 0; j < ks.size(); ++j) {
    const auto& w = process.waves[j];
    dk += w.sigma * static_cast<long double>(ks[j]);
    dw += w.sigma * eval_dispersion_extended(system.law(w.branch), ks[j]);
  }
  return {static_cast<double>(dk), static_cast<double>(dw)};
}

const ResonanceProcess& builtin_process(std::string_view name) {
  const auto& all = registry();
  auto it = std::find_if(all.begin(), all.end(), [&](const auto& p) { return p.name == name; });
  if (it == all.end()) throw ArgumentError("unknown process '" + std::string(name) + "'");
  return *it;
}

std::vector<std::string> builtin_process_names() {
  std::vector<std::string> out;
  for (const auto& p : registry()) out.push_back(p.name);
  return out;
}

std::vector<ResonanceProcess> processes_for(SystemId id) {
  std::vector<ResonanceProcess> out;
  const std::string_view prefix = id == SystemId::NlsKdv ? "nls-" : "ck-";
  if (id == SystemId::Custom) return out;
  for (const auto& p : registry()) {
    if (p.name.starts_with(prefix)) out.push_back(p);
  }
  return out;
}

SystemId system_of(const ResonanceProcess& process) {
  if (process.name.starts_with("ck-")) return SystemId::KdvCkdv;
  if (process.name.starts_with("nls-") || process.name == "quad4") return SystemId::NlsKdv;
  return SystemId::Custom;
}

}  // namespace wavescreen
