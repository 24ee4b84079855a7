#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nanotrap/constants.hpp"
#include "nanotrap/singlewell.hpp"

namespace nanotrap {

/// Current noise power spectral density at the Larmor frequency.
struct NoiseSpectrum {
  enum class Model { shot_noise_diffusive, user_constant };

  Model model = Model::shot_noise_diffusive;
  double S_I = 0.0;  ///< [A^2 s], only read for user_constant
  /// Transport voltage [V]. Not used by any formula; it documents the
  /// hbar omega_L << kB T << e V0 regime in which the white shot-noise
  /// level applies.
  double transport_voltage = 1.0;

  static NoiseSpectrum shot_noise() { return {}; }
  static NoiseSpectrum constant(double S_I) { return {Model::user_constant, S_I, 1.0}; }

  /// S_I(omega_L); 2 e I / 3 for a diffusive wire regardless of omega_L.
  double at_larmor(double current) const;
  void validate() const;
};

inline constexpr double kBeamBeta1 = 4.73;
inline constexpr double kRb87MetalC4 = 1.8e-55;  ///< [J m^4]

/// gamma_sf = (mu0 mu / (2 pi hbar y0))^2 S_I(omega_L) / 2 [1/s]
double noise_spin_flip_rate(const SingleWellTrap& trap, const NoiseSpectrum& spectrum, const AtomSpecies& species);

/// RMS midpoint displacement of a doubly clamped beam, sqrt(kB T L^3 / (192 Y M_I)) [m].
double thermal_sigma(const NanowireSpec& wire, double temperature);

/// (beta1^2 / L^2) sqrt(Y M_I / (rho A_c)), rho the volume mass density [rad/s]
double fundamental_mode_frequency(const NanowireSpec& wire);

struct FrequencyMismatch {
  double ratio;  ///< omega_f / omega
  bool decoupled;
};

FrequencyMismatch frequency_mismatch_flag(const SingleWellTrap& trap, const NanowireSpec& wire,
                                          double threshold = 10.0);
FrequencyMismatch frequency_mismatch_flag(double omega_trap, double omega_f, double threshold = 10.0);

/// gamma_c / omega from thermal current fluctuations in the wire (uses muB, not mu).
double current_noise_decoherence(const SingleWellTrap& trap, const NanowireSpec& wire, double temperature,
                                 const AtomSpecies& species);

/// |V_CP| / hbar = C4 / (hbar r^4) for the infinite-plane form [rad/s].
double casimir_polder_scale(double distance, double C4);

/// Static deflection of one wire of a pair repelled by the other (line force
/// mu0 I^2 / (4 pi x0)), clamped at both ends:
///   phi(z) = mu0 I^2 z^2 (L - z)^2 / (96 pi Y M_I x0).
double static_deflection(double z, const NanowireSpec& wire, double current, double pair_half_distance);

struct BudgetThresholds {
  double loss_per_osc = 1e-5;
  double gamma_sf = 1.0;  ///< [1/s]
  double frequency_ratio = 10.0;
  double gamma_c_over_omega = 1e-6;
  double sigma_over_l0 = 0.1;
  double deflection_over_x0 = 0.01;
};

struct ReportOptions {
  BudgetThresholds thresholds;
  std::optional<double> pair_half_distance;  ///< set for the two-wire layout [m]
  double C4 = kRb87MetalC4;
  std::optional<double> cp_distance;  ///< default: cloud to wire surface, y0 - r_o [m]
};

struct Metric {
  enum class Bound { below, above, none };

  std::string name;
  double value;
  std::string unit;
  std::optional<double> threshold;
  Bound bound;
  bool pass;
};

struct StabilityReport {
  double gamma_sf;
  double sigma_thermal;
  double omega_f;
  double gamma_c_over_omega;
  double v_cp_scale;
  double deflection_max;
  double adiabaticity;
  double loss_per_osc;

  SingleWellTrap trap;
  NanowireSpec wire;
  double temperature;
  std::vector<Metric> metrics;

  bool all_pass() const;
};

StabilityReport stability_report(const SingleWellTrap& trap, const NanowireSpec& wire, double temperature,
                                 const AtomSpecies& species, const NoiseSpectrum& spectrum,
                                 const ReportOptions& options = {});

/// {"<metric>": {"value", "unit", "threshold", "pass"}, ...}; threshold is null for
/// report-only metrics.
nlohmann::json to_json(const StabilityReport& report);

}  // namespace nanotrap
