#pragma once

#include <cstdint>
#include <ostream>
#include <string_view>
#include <vector>

#include "nanotrap/constants.hpp"
#include "nanotrap/csv.hpp"

namespace nanotrap {

/// Olshanii's constant, -zeta(1/2).
inline constexpr double kCirConstant = 1.4603;

enum class GasRegime { tonks_girardeau, crossover, thomas_fermi };

std::string_view to_string(GasRegime regime);  // "TG", "crossover", "TF"

/// eta below `tg_below` is Tonks-Girardeau, above `tf_above` Thomas-Fermi.
struct RegimeThresholds {
  double tg_below = 0.5;
  double tf_above = 2.0;
};

/// a1D = -(l0^2 / a)(1 - C a / (sqrt(2) l0)), signed [m].
/// Throws ResonanceError within `resonance_window` (relative) of the CIR.
double a1d_from_confinement(double a3d, double l0, double resonance_window = 1e-6);

/// 3D scattering length of the confinement-induced resonance, sqrt(2) l0 / C [m].
double cir_position(double l0);

/// g1D = -2 hbar^2 / (m a1D) [J m].
double coupling_1d(double a1d, const AtomSpecies& species);

/// Central Thomas-Fermi density [1/m],
///   n_TF = [(9/64) N^2 (m omega_z / hbar)^2 |a1D|]^(1/3).
double tf_density(std::int64_t N, double omega_z, double a1d, const AtomSpecies& species);

GasRegime classify_regime(double eta, const RegimeThresholds& thresholds = {});

struct CloudLength {
  double length;     ///< selected by regime [m]
  GasRegime regime;
  double eta;
  double tf_length;  ///< [3 N (hbar / m omega_z)^2 / |a1D|]^(1/3)
  double tg_length;  ///< [2 N hbar / (m omega_z)]^(1/2)
};

/// Crossover returns the arithmetic mean of the two candidates.
CloudLength cloud_length(std::int64_t N, double omega_z, double a1d, const AtomSpecies& species,
                         const RegimeThresholds& thresholds = {});

/// Largest N whose cloud fits into fill_fraction * L, found by bisection.
/// Returns 0 if a single atom does not fit.
std::int64_t max_atoms_for_wire(double suspended_length, double omega_z, double a1d, const AtomSpecies& species,
                                double fill_fraction, const RegimeThresholds& thresholds = {});

struct GasProfile {
  double omega;    ///< [rad/s]
  double omega_z;  ///< [rad/s]
  std::int64_t N;
  double a1d;  ///< [m]
  double g1d;  ///< [J m]
  double eta;
  GasRegime regime;
  double length;  ///< [m]
  double n_tf;    ///< [1/m]
  double tf_length;
  double tg_length;
};

/// Full 1D characterisation for a transverse trap frequency and atom number.
GasProfile characterize_gas(double omega, double omega_z, std::int64_t N, const AtomSpecies& species,
                            const RegimeThresholds& thresholds = {});

struct Table2Request {
  double omega;  ///< [rad/s]
  std::int64_t N;
};

std::vector<Table2Request> table2_reference_rows();

/// Columns nu_kHz,a1d_nm,N,eta,ell_um,regime.
csv::Table make_table2(const std::vector<GasProfile>& rows);
void write_table2_csv(std::ostream& out, const std::vector<GasProfile>& rows);

}  // namespace nanotrap
