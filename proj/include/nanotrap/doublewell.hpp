#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "nanotrap/constants.hpp"
#include "nanotrap/csv.hpp"
#include "nanotrap/magnetics.hpp"

namespace nanotrap {

/// Two co-propagating wires at (-x0, 0) and (+x0, 0) with a transverse bias
/// that places the field zeros at y0 (+-sqrt(x0^2/y0^2 - 1), 1).
struct DoubleWellTrap {
  double I;      ///< per wire [A]
  double x0;     ///< wire half-separation [m]
  double y0;     ///< height of the minima [m]
  double dx;     ///< x0 / l0
  double dy;     ///< y0 / l0
  double omega;  ///< well frequency [rad/s]
  double l0;     ///< [m]
  double chi;
  double Bx;  ///< [T]
  double Bz;  ///< [T]
  std::array<Vec3, 2> minima;  ///< left, right [m]
  double barrier;              ///< D [J]
  double barrier_over_hbar_omega;
  double omega0;  ///< single-well reference frequency at y0 = x0/2 [rad/s]
  /// Largest |B_perp| / Bz over the two analytic minima.
  double minimum_field_residual;
  // Temperature equivalents, hbar omega / kB and D / kB [K].
  double hbar_omega_over_kB;
  double barrier_over_kB;

  BiasFields bias() const { return {Bx, Bz}; }
  WireLayout layout() const { return WireLayout::pair(x0, I); }
};

/// omega = [mu^2 chi / (m hbar) (mu0 I / 2 pi)^2 y0^-2 (y0^-2 - x0^-2)]^(1/3)
DoubleWellTrap design_double(double I, double x0, double y0, double chi, const AtomSpecies& species);

/// Single-wire frequency for the same current and the bias that puts the trap at y0 = x0/2.
double reference_omega0(double I, double x0, double chi, const AtomSpecies& species);

/// omega / omega0 = [(1/16) (x0/y0)^4 (1 - y0^2/x0^2)]^(1/3)
double frequency_ratio(double x0, double y0);

/// D / (hbar omega) = chi^-1 [1 + chi dy^2 (1 - dy/dx) / (1 + dy/dx)]^(1/2) - chi^-1.
/// This is the height of the true saddle of the pair potential, which sits at (0, dx).
double barrier_height(double dx, double dy, double chi);

/// Wire half-separation that gives `omega0` for current I (bisection on log x0).
double pair_x0_for_omega0(double I, double omega0, double chi, const AtomSpecies& species);

struct WkbOptions {
  int scan_samples = 10000;
  double root_tol = 1e-10;
  double quad_rel_tol = 1e-6;
};

struct WkbResult {
  double x_a;  ///< left turning point on y = dy [l0]
  double x_b;
  double action;
  double ratio;  ///< Gamma / omega = exp(-action); underflows to 0 beyond action ~ 745
};

/// Leading-order WKB splitting along the line y = dy joining the minima.
///
/// The tunnelling energy is one quantum above the well floor, so the
/// integrand is sqrt(2 [V - 1/chi - 1]) and the turning points are its zeros
/// on either side of x = 0. Each half of the action is integrated with
/// x = x_turn +- u^2, which removes the square-root endpoint behaviour.
/// Throws NoBarrierError when D / (hbar omega) <= 1.
WkbResult wkb_tunneling(const DoubleWellTrap& trap, const WkbOptions& options = {});

struct Fig3Row {
  double y0_over_x0;
  double omega_over_omega0;
  std::optional<double> gamma_over_omega;  ///< empty where WKB does not apply
  std::optional<double> action;
  double barrier_over_hbar_omega;
  double current;  ///< [A]
};

std::vector<Fig3Row> fig3_sweep(double I, double x0, double chi, const AtomSpecies& species,
                                std::span<const double> ratio_grid, const WkbOptions& options = {});

/// n points evenly spaced on [lo, hi].
std::vector<double> linear_grid(double lo, double hi, int n);

/// Default Gamma/omega level that marks the tunnelling regime.
inline constexpr double kTunnelingThreshold = 1e-3;

/// omega/omega0 at which Gamma/omega first reaches `threshold` along the
/// sweep, interpolating log(Gamma/omega) linearly between adjacent rows.
std::optional<double> tunneling_onset(const std::vector<Fig3Row>& rows, double threshold = kTunnelingThreshold);

/// Columns y0_over_x0,omega_over_omega0,gamma_over_omega,current_uA; NA marks rows
/// without a WKB rate.
csv::Table make_fig3_table(const std::vector<Fig3Row>& rows);
void write_fig3_csv(std::ostream& out, const std::vector<Fig3Row>& rows);

}  // namespace nanotrap
