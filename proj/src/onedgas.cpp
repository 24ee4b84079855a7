#include "nanotrap/onedgas.hpp"

#include <cmath>
#include <string>

#include "nanotrap/csv.hpp"
#include "nanotrap/errors.hpp"

namespace nanotrap {

namespace {

constexpr const char* kModule = "onedgas";

void require(bool ok, const char* parameter, const char* bound) {
  if (!ok) throw PreconditionError(kModule, parameter, bound);
}

// hbar / (m omega_z), the squared longitudinal oscillator length.
double axial_length_squared(double omega_z, const AtomSpecies& species) {
  return kConstants.hbar / (species.mass * omega_z);
}

}  // namespace

std::string_view to_string(GasRegime regime) {
  switch (regime) {
    case GasRegime::tonks_girardeau:
      return "TG";
    case GasRegime::crossover:
      return "crossover";
    case GasRegime::thomas_fermi:
      return "TF";
  }
  return "?";
}

double a1d_from_confinement(double a3d, double l0, double resonance_window) {
  require(a3d > 0.0, "a3d", "a3d > 0");
  require(l0 > 0.0, "l0", "l0 > 0");
  const double resonance = cir_position(l0);
  if (std::abs(a3d - resonance) <= resonance_window * resonance) {
    throw ResonanceError("a3d = " + std::to_string(a3d) + " m is on the confinement-induced resonance at " +
                         std::to_string(resonance) + " m");
  }
  return -(l0 * l0 / a3d) * (1.0 - kCirConstant * a3d / (std::sqrt(2.0) * l0));
}

double cir_position(double l0) {
  require(l0 > 0.0, "l0", "l0 > 0");
  return std::sqrt(2.0) * l0 / kCirConstant;
}

double coupling_1d(double a1d, const AtomSpecies& species) {
  require(a1d != 0.0, "a1d", "a1d != 0");
  const double hbar = kConstants.hbar;
  return -2.0 * hbar * hbar / (species.mass * a1d);
}

double tf_density(std::int64_t N, double omega_z, double a1d, const AtomSpecies& species) {
  require(N >= 1, "N", "N >= 1");
  require(omega_z > 0.0, "omega_z", "omega_z > 0");
  require(a1d != 0.0, "a1d", "a1d != 0");
  // (m omega_z / hbar)^2 = 1 / a_z^4 keeps n an inverse length; (m omega_z hbar)^2 would not.
  const double inv_az2 = 1.0 / axial_length_squared(omega_z, species);
  const double n = static_cast<double>(N);
  return std::cbrt(9.0 / 64.0 * n * n * inv_az2 * inv_az2 * std::abs(a1d));
}

GasRegime classify_regime(double eta, const RegimeThresholds& thresholds) {
  require(eta >= 0.0, "eta", "eta >= 0");
  if (eta < thresholds.tg_below) return GasRegime::tonks_girardeau;
  if (eta > thresholds.tf_above) return GasRegime::thomas_fermi;
  return GasRegime::crossover;
}

CloudLength cloud_length(std::int64_t N, double omega_z, double a1d, const AtomSpecies& species,
                         const RegimeThresholds& thresholds) {
  const double eta = tf_density(N, omega_z, a1d, species) * std::abs(a1d);
  const double az2 = axial_length_squared(omega_z, species);
  const double n = static_cast<double>(N);
  const double tf = std::cbrt(3.0 * n * az2 * az2 / std::abs(a1d));
  const double tg = std::sqrt(2.0 * n * az2);
  const GasRegime regime = classify_regime(eta, thresholds);
  double length = 0.5 * (tf + tg);
  if (regime == GasRegime::thomas_fermi) length = tf;
  if (regime == GasRegime::tonks_girardeau) length = tg;
  return {length, regime, eta, tf, tg};
}

std::int64_t max_atoms_for_wire(double suspended_length, double omega_z, double a1d, const AtomSpecies& species,
                                double fill_fraction, const RegimeThresholds& thresholds) {
  require(suspended_length > 0.0, "L", "L > 0");
  require(fill_fraction > 0.0 && fill_fraction <= 1.0, "fill_fraction", "0 < fill_fraction <= 1");
  const double budget = fill_fraction * suspended_length;
  auto fits = [&](std::int64_t n) { return cloud_length(n, omega_z, a1d, species, thresholds).length <= budget; };

  if (!fits(1)) return 0;
  std::int64_t lo = 1, hi = 2;
  while (fits(hi)) {
    lo = hi;
    if (hi > (std::int64_t{1} << 61)) throw ConvergenceError("max_atoms_for_wire: no upper bracket");
    hi *= 2;
  }
  // fits(lo) and !fits(hi) hold throughout.
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (fits(mid) ? lo : hi) = mid;
  }
  return lo;
}

GasProfile characterize_gas(double omega, double omega_z, std::int64_t N, const AtomSpecies& species,
                            const RegimeThresholds& thresholds) {
  require(omega > 0.0, "omega", "omega > 0");
  require(omega_z > 0.0 && omega_z < omega, "omega_z", "0 < omega_z < omega");
  species.validate();
  const double l0 = std::sqrt(kConstants.hbar / (species.mass * omega));
  const double a1d = a1d_from_confinement(species.a3d, l0);
  const double n_tf = tf_density(N, omega_z, a1d, species);
  const CloudLength cl = cloud_length(N, omega_z, a1d, species, thresholds);
  return GasProfile{omega,     omega_z, N, a1d, coupling_1d(a1d, species), n_tf * std::abs(a1d), cl.regime, cl.length,
                    n_tf,      cl.tf_length, cl.tg_length};
}

std::vector<Table2Request> table2_reference_rows() {
  constexpr double kHz = kTwoPi * 1e3;
  return {{460 * kHz, 30},  {460 * kHz, 50},    {73.8 * kHz, 30},   {73.8 * kHz, 50},
          {73.8 * kHz, 100}, {28.76 * kHz, 30}, {28.76 * kHz, 50}, {28.76 * kHz, 100}};
}

csv::Table make_table2(const std::vector<GasProfile>& rows) {
  csv::Table table{{"nu_kHz", "a1d_nm", "N", "eta", "ell_um", "regime"}, {}};
  for (const auto& g : rows) {
    table.rows.push_back(
        {g.omega / kTwoPi * 1e-3, g.a1d * 1e9, g.N, g.eta, g.length * 1e6, std::string(to_string(g.regime))});
  }
  return table;
}

void write_table2_csv(std::ostream& out, const std::vector<GasProfile>& rows) { make_table2(rows).write_csv(out); }

}  // namespace nanotrap
