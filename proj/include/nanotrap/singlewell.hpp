#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "nanotrap/constants.hpp"
#include "nanotrap/csv.hpp"
#include "nanotrap/magnetics.hpp"
#include "nanotrap/numerics.hpp"

namespace nanotrap {

/// Below this d the escape barrier is only a few quanta and the harmonic
/// picture stops being trustworthy.
inline constexpr double kConfiningD = 5.0;

enum class Confinement { confining, weak };

struct TrapWarning {
  std::string code;
  std::string message;
};

/// Single-wire side guide. The wire sits at x = -x0 (x0 is free; it only
/// translates the picture) and the trap bottom at (-x0, y0).
struct SingleWellTrap {
  double I;          ///< [A]
  double y0;         ///< [m]
  double omega;      ///< transverse angular frequency [rad/s]
  double l0;         ///< sqrt(hbar / m omega) [m]
  double d;          ///< y0 / l0
  double chi;        ///< hbar omega / (mu Bz)
  double Bx;         ///< [T]
  double Bz;         ///< [T]
  double loss_rate;  ///< Majorana loss [1/s]
  double omega_L;    ///< Larmor angular frequency mu Bz / hbar [rad/s]
  Confinement confinement;
  std::vector<TrapWarning> warnings;

  BiasFields bias() const { return {Bx, Bz}; }
  WireLayout layout(double x0 = 0.0) const { return WireLayout::single(x0, I); }
  Vec3 minimum(double x0 = 0.0) const { return {-x0, y0, 0.0}; }
};

/// Trap for a given current, geometry d = y0/l0 and adiabaticity chi:
///   omega = (m chi mu^2 / hbar^3) (mu0 I / (2 pi d^2))^2.
SingleWellTrap design_from_current_and_d(double I, double d, double chi, const AtomSpecies& species);

/// Trap produced by a current and the two bias fields.
SingleWellTrap design_from_fields(double I, double Bx, double Bz, const AtomSpecies& species);

/// Gamma_loss = (pi omega / 2) exp(1 - 1/chi).
double majorana_loss_rate(double omega, double chi);

/// V(inf) - V_min in units of hbar omega, i.e. chi^-1 [(1 + chi d^2)^(1/2) - 1].
double escape_barrier(double d, double chi);

struct HarmonicCheck {
  double deviation;      ///< max_i |omega_i / omega - 1|
  double omega_x;        ///< numerical eigenfrequencies [rad/s]
  double omega_y;
  double minimum_drift;  ///< distance of the located minimum from (-x0, y0), in l0
};

/// Locates the minimum of mu|B| numerically, takes a finite-difference
/// Hessian there and compares the two eigenfrequencies with trap.omega.
/// Throws ConvergenceError if the minimum drifts more than 1e-3 l0.
HarmonicCheck numeric_frequency_check(const SingleWellTrap& trap, const AtomSpecies& species,
                                      const numerics::ToleranceConfig& tol = {});

struct Table1Request {
  double I;  ///< [A]
  double d;
};

/// The seven (I, d) combinations of the reference design table.
std::vector<Table1Request> table1_reference_rows();

/// Columns I_uA,d,chi,nu_kHz,y0_nm,l0_nm,Bx_G,Bz_G,loss_per_osc.
csv::Table make_table1(const std::vector<SingleWellTrap>& traps);
void write_table1_csv(std::ostream& out, const std::vector<SingleWellTrap>& traps);

}  // namespace nanotrap
