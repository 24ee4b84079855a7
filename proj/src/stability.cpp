#include "nanotrap/stability.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "nanotrap/errors.hpp"

namespace nanotrap {

namespace {

constexpr const char* kModule = "stability";

void require(bool ok, const char* parameter, const char* bound) {
  if (!ok) throw PreconditionError(kModule, parameter, bound);
}

Metric below(std::string name, double value, std::string unit, double threshold) {
  return {std::move(name), value, std::move(unit), threshold, Metric::Bound::below, value < threshold};
}

Metric above(std::string name, double value, std::string unit, double threshold) {
  return {std::move(name), value, std::move(unit), threshold, Metric::Bound::above, value > threshold};
}

Metric report_only(std::string name, double value, std::string unit) {
  return {std::move(name), value, std::move(unit), std::nullopt, Metric::Bound::none, true};
}

}  // namespace

double NoiseSpectrum::at_larmor(double current) const {
  if (model == Model::user_constant) return S_I;
  return 2.0 * kConstants.e * current / 3.0;
}

void NoiseSpectrum::validate() const { require(S_I >= 0.0, "S_I", "S_I >= 0"); }

double noise_spin_flip_rate(const SingleWellTrap& trap, const NoiseSpectrum& spectrum, const AtomSpecies& species) {
  spectrum.validate();
  require(trap.y0 > 0.0, "y0", "y0 > 0");
  const auto& c = kConstants;
  const double coupling = c.mu0 * species.moment() / (kTwoPi * c.hbar * trap.y0);
  return coupling * coupling * spectrum.at_larmor(trap.I) / 2.0;
}

double thermal_sigma(const NanowireSpec& wire, double temperature) {
  require(temperature >= 0.0, "T", "T >= 0");
  wire.validate();
  const double L = wire.length;
  return std::sqrt(kConstants.kB * temperature * L * L * L / (192.0 * wire.young * wire.moment_of_inertia()));
}

double fundamental_mode_frequency(const NanowireSpec& wire) {
  wire.validate();
  const double L = wire.length;
  return kBeamBeta1 * kBeamBeta1 / (L * L) *
         std::sqrt(wire.young * wire.moment_of_inertia() / wire.lineal_density());
}

FrequencyMismatch frequency_mismatch_flag(double omega_trap, double omega_f, double threshold) {
  require(omega_trap > 0.0, "omega", "omega > 0");
  require(omega_f > 0.0, "omega_f", "omega_f > 0");
  const double ratio = omega_f / omega_trap;
  return {ratio, ratio > threshold};
}

FrequencyMismatch frequency_mismatch_flag(const SingleWellTrap& trap, const NanowireSpec& wire, double threshold) {
  return frequency_mismatch_flag(trap.omega, fundamental_mode_frequency(wire), threshold);
}

double current_noise_decoherence(const SingleWellTrap& trap, const NanowireSpec& wire, double temperature,
                                 const AtomSpecies& species) {
  (void)species;  // coupling goes through muB directly
  require(temperature >= 0.0, "T", "T >= 0");
  wire.validate();
  const auto& c = kConstants;
  const double y3 = trap.y0 * trap.y0 * trap.y0;
  const double coupling = c.mu0 * c.muB / kTwoPi;
  return 3.0 * kPi / (4.0 * c.hbar) * c.kB * temperature * wire.conductivity * wire.conduction_area / y3 * coupling *
         coupling * trap.chi / (c.hbar * trap.omega);
}

double casimir_polder_scale(double distance, double C4) {
  require(distance > 0.0, "r", "r > 0");
  require(C4 >= 0.0, "C4", "C4 >= 0");
  const double r2 = distance * distance;
  return C4 / (kConstants.hbar * r2 * r2);
}

double static_deflection(double z, const NanowireSpec& wire, double current, double pair_half_distance) {
  wire.validate();
  require(z >= 0.0 && z <= wire.length, "z", "0 <= z <= L");
  require(current > 0.0, "I", "I > 0");
  require(pair_half_distance > 0.0, "x0", "x0 > 0");
  const double span = z * (wire.length - z);
  return kConstants.mu0 * current * current * span * span /
         (96.0 * kPi * wire.young * wire.moment_of_inertia() * pair_half_distance);
}

bool StabilityReport::all_pass() const {
  for (const auto& m : metrics) {
    if (!m.pass) return false;
  }
  return true;
}

StabilityReport stability_report(const SingleWellTrap& trap, const NanowireSpec& wire, double temperature,
                                 const AtomSpecies& species, const NoiseSpectrum& spectrum,
                                 const ReportOptions& options) {
  species.validate();
  wire.validate();
  const auto& th = options.thresholds;

  StabilityReport r{};
  r.trap = trap;
  r.wire = wire;
  r.temperature = temperature;
  r.loss_per_osc = trap.loss_rate / trap.omega;
  r.adiabaticity = trap.omega / trap.omega_L;
  r.gamma_sf = noise_spin_flip_rate(trap, spectrum, species);
  r.sigma_thermal = thermal_sigma(wire, temperature);
  r.omega_f = fundamental_mode_frequency(wire);
  r.gamma_c_over_omega = current_noise_decoherence(trap, wire, temperature, species);
  const double cp_distance = options.cp_distance.value_or(trap.y0 - wire.outer_radius);
  r.v_cp_scale = casimir_polder_scale(cp_distance, options.C4);
  r.deflection_max = options.pair_half_distance
                         ? static_deflection(0.5 * wire.length, wire, trap.I, *options.pair_half_distance)
                         : 0.0;

  r.metrics.push_back(below("loss_per_osc", r.loss_per_osc, "1", th.loss_per_osc));
  r.metrics.push_back(below("adiabaticity", r.adiabaticity, "1", 1.0));
  r.metrics.push_back(below("gamma_sf", r.gamma_sf, "1/s", th.gamma_sf));
  r.metrics.push_back(below("sigma_thermal", r.sigma_thermal, "m", th.sigma_over_l0 * trap.l0));
  r.metrics.push_back(above("omega_f", r.omega_f, "rad/s", th.frequency_ratio * trap.omega));
  r.metrics.push_back(below("gamma_c_over_omega", r.gamma_c_over_omega, "1", th.gamma_c_over_omega));
  r.metrics.push_back(report_only("v_cp_scale", r.v_cp_scale, "rad/s"));
  if (options.pair_half_distance) {
    r.metrics.push_back(
        below("deflection_max", r.deflection_max, "m", th.deflection_over_x0 * *options.pair_half_distance));
  } else {
    r.metrics.push_back(report_only("deflection_max", r.deflection_max, "m"));
  }
  return r;
}

nlohmann::json to_json(const StabilityReport& report) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& m : report.metrics) {
    out[m.name] = {
        {"value", m.value},
        {"unit", m.unit},
        {"threshold", m.threshold ? nlohmann::json(*m.threshold) : nlohmann::json(nullptr)},
        {"pass", m.pass},
    };
  }
  return out;
}

}  // namespace nanotrap
