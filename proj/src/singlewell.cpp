#include "nanotrap/singlewell.hpp"

#include <cmath>

#include "nanotrap/csv.hpp"
#include "nanotrap/errors.hpp"

namespace nanotrap {

namespace {

constexpr const char* kModule = "singlewell";

void require(bool ok, const char* parameter, const char* bound) {
  if (!ok) throw PreconditionError(kModule, parameter, bound);
}

SingleWellTrap assemble(double I, double y0, double omega, double Bz, const AtomSpecies& species) {
  const auto& c = kConstants;
  const double mu = species.moment();
  SingleWellTrap t{};
  t.I = I;
  t.y0 = y0;
  t.omega = omega;
  t.l0 = std::sqrt(c.hbar / (species.mass * omega));
  t.d = y0 / t.l0;
  t.Bz = Bz;
  t.Bx = c.mu0 * I / (kTwoPi * y0);
  t.omega_L = mu * Bz / c.hbar;
  t.chi = c.hbar * omega / (mu * Bz);
  // Evaluated directly: design_from_fields may land outside 0 < chi < 1 and warns instead.
  t.loss_rate = 0.5 * kPi * omega * std::exp(1.0 - 1.0 / t.chi);
  t.confinement = t.d >= kConfiningD ? Confinement::confining : Confinement::weak;
  if (t.confinement == Confinement::weak) {
    t.warnings.push_back({"weak_confinement", "d = " + std::to_string(t.d) +
                                                  " < 5: escape barrier is only a few quanta, harmonic "
                                                  "approximation unreliable"});
  }
  return t;
}

}  // namespace

SingleWellTrap design_from_current_and_d(double I, double d, double chi, const AtomSpecies& species) {
  require(I > 0.0, "I", "I > 0");
  require(d > 0.0, "d", "d > 0");
  require(chi > 0.0, "chi", "chi > 0");
  require(chi < 1.0, "chi", "chi < 1 (adiabatic: omega << omega_L)");
  species.validate();

  const auto& c = kConstants;
  const double mu = species.moment();
  const double gradient_scale = c.mu0 * I / (kTwoPi * d * d);
  const double omega =
      species.mass * chi * mu * mu / (c.hbar * c.hbar * c.hbar) * gradient_scale * gradient_scale;
  const double l0 = std::sqrt(c.hbar / (species.mass * omega));
  const double Bz = c.hbar * omega / (mu * chi);
  return assemble(I, d * l0, omega, Bz, species);
}

SingleWellTrap design_from_fields(double I, double Bx, double Bz, const AtomSpecies& species) {
  require(I > 0.0, "I", "I > 0");
  require(Bx > 0.0, "Bx", "Bx > 0");
  require(Bz > 0.0, "Bz", "Bz > 0");
  species.validate();

  const auto& c = kConstants;
  const double y0 = c.mu0 * I / (kTwoPi * Bx);
  const double omega = std::sqrt(species.moment() / (species.mass * Bz)) * c.mu0 * I / (kTwoPi * y0 * y0);
  SingleWellTrap t = assemble(I, y0, omega, Bz, species);
  if (!(t.chi < 1.0)) {
    t.warnings.push_back({"non_adiabatic", "chi = " + std::to_string(t.chi) + " >= 1: omega is not << omega_L"});
  }
  return t;
}

double majorana_loss_rate(double omega, double chi) {
  require(omega > 0.0, "omega", "omega > 0");
  require(chi > 0.0 && chi < 1.0, "chi", "0 < chi < 1");
  return 0.5 * kPi * omega * std::exp(1.0 - 1.0 / chi);
}

double escape_barrier(double d, double chi) {
  require(d >= 0.0, "d", "d >= 0");
  require(chi > 0.0, "chi", "chi > 0");
  const double d2 = d * d;
  return d2 / (1.0 + std::sqrt(1.0 + chi * d2));
}

HarmonicCheck numeric_frequency_check(const SingleWellTrap& trap, const AtomSpecies& species,
                                      const numerics::ToleranceConfig& tol) {
  tol.validate();
  const WireLayout layout = trap.layout();
  const BiasFields bias = trap.bias();
  const Vec3 start = trap.minimum();
  const double h = tol.fd_step * trap.l0;
  const double energy_scale = species.moment() * trap.Bz / trap.l0;

  auto gradient = [&](numerics::Point2 p) { return potential_gradient({p.x, p.y, 0.0}, layout, bias, species); };
  const auto found = numerics::damped_newton_minimize(gradient, {start[0], start[1]}, {h, h},
                                                      1e-14 * energy_scale, tol.max_iterations);
  const double drift = std::hypot(found.point.x - start[0], found.point.y - start[1]) / trap.l0;
  if (drift > 1e-3) {
    throw ConvergenceError("located minimum drifted " + std::to_string(drift) + " l0 from the analytic position");
  }

  auto energy = [&](numerics::Point2 p) { return potential_above_floor({p.x, p.y, 0.0}, layout, bias, species); };
  const auto hessian = numerics::fd_hessian(energy, found.point, {h, h});
  const auto k = numerics::symmetric_eigenvalues(hessian);
  const double wx = std::sqrt(k[0] / species.mass);
  const double wy = std::sqrt(k[1] / species.mass);
  const double dev = std::max(std::abs(wx / trap.omega - 1.0), std::abs(wy / trap.omega - 1.0));
  return {dev, wx, wy, drift};
}

std::vector<Table1Request> table1_reference_rows() {
  return {{1000e-6, 10}, {250e-6, 5}, {250e-6, 10}, {100e-6, 5}, {100e-6, 10}, {50e-6, 5}, {25e-6, 5}};
}

csv::Table make_table1(const std::vector<SingleWellTrap>& traps) {
  csv::Table table{{"I_uA", "d", "chi", "nu_kHz", "y0_nm", "l0_nm", "Bx_G", "Bz_G", "loss_per_osc"}, {}};
  for (const auto& t : traps) {
    table.rows.push_back({t.I * 1e6, t.d, t.chi, t.omega / kTwoPi * 1e-3, t.y0 * 1e9, t.l0 * 1e9, t.Bx * 1e4,
                          t.Bz * 1e4, t.loss_rate / t.omega});
  }
  return table;
}

void write_table1_csv(std::ostream& out, const std::vector<SingleWellTrap>& traps) {
  make_table1(traps).write_csv(out);
}

}  // namespace nanotrap
