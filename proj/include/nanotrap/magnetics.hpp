#pragma once

#include <array>
#include <functional>
#include <ostream>
#include <vector>

#include "nanotrap/constants.hpp"
#include "nanotrap/csv.hpp"
#include "nanotrap/numerics.hpp"

namespace nanotrap {

using Vec3 = std::array<double, 3>;

/// Homogeneous bias field. Bz > 0 keeps the trap bottom away from zero field.
struct BiasFields {
  double Bx;  ///< [T]
  double Bz;  ///< [T]

  void validate() const;
};

/// Infinitely long straight wires parallel to z, all at y = 0, carrying the
/// same co-propagating current.
struct WireLayout {
  std::vector<double> offsets;  ///< x positions of the wire axes [m]
  double current;               ///< per wire [A]

  static WireLayout single(double x0, double current);  ///< wire at -x0
  static WireLayout pair(double x0, double current);    ///< wires at -x0 and +x0

  void validate() const;
};

/// Transverse coordinates in units of the oscillator length l0.
struct DimensionlessPoint {
  double x;
  double y;
};

/// Exclusion radius around a wire axis [m] (or [l0] for the dimensionless evaluators).
inline constexpr double kWireExclusion = 1e-12;

Vec3 field_at(const Vec3& point, const WireLayout& layout, const BiasFields& bias,
              double exclusion = kWireExclusion);

/// d(Bx, By)/d(x, y) of the wire fields at a point; the bias is uniform and drops out.
struct TransverseJacobian {
  double dBx_dx, dBx_dy, dBy_dx, dBy_dy;
};

TransverseJacobian field_jacobian(const Vec3& point, const WireLayout& layout, double exclusion = kWireExclusion);

/// mu |B| [J].
double potential_at(const Vec3& point, const WireLayout& layout, const BiasFields& bias, const AtomSpecies& species,
                    double exclusion = kWireExclusion);

/// mu (|B| - Bz) [J], evaluated as mu B_perp^2 / (|B| + Bz) so it keeps full
/// relative precision close to the trap bottom.
double potential_above_floor(const Vec3& point, const WireLayout& layout, const BiasFields& bias,
                             const AtomSpecies& species, double exclusion = kWireExclusion);

/// Transverse gradient of mu |B| [J/m], from the analytic field Jacobian.
numerics::Point2 potential_gradient(const Vec3& point, const WireLayout& layout, const BiasFields& bias,
                                    const AtomSpecies& species, double exclusion = kWireExclusion);

// Dimensionless trap potentials, energies in units of hbar*omega, lengths in
// units of l0. Both have their floor at 1/chi.

/// Single wire at x = -x_offset:
///   chi V = sqrt(1 + chi (d^2 [u^2 - d y + y^2]^2 + d^4 u^2) / (u^2 + y^2)^2),  u = x + x_offset.
double dimensionless_single_potential(DimensionlessPoint p, double d, double chi, double x_offset,
                                      double exclusion = kWireExclusion);

/// Wire pair at x = -dx and x = +dx with minima at (+-sqrt(dx^2 - dy^2), dy).
double dimensionless_double_potential(DimensionlessPoint p, double dx, double dy, double chi,
                                      double exclusion = kWireExclusion);

// V - 1/chi for the two evaluators above, computed without cancellation.
double dimensionless_single_excess(DimensionlessPoint p, double d, double chi, double x_offset,
                                   double exclusion = kWireExclusion);
double dimensionless_double_excess(DimensionlessPoint p, double dx, double dy, double chi,
                                   double exclusion = kWireExclusion);

struct GridSpec {
  double x_min, x_max;
  int nx;
  double y_min, y_max;
  int ny;

  void validate() const;
};

struct GridSample {
  double x, y, value;
};

/// Samples `potential` on a regular grid. Rows are lines of constant y
/// (ascending); within a row x ascends fastest.
std::vector<GridSample> evaluate_grid(const GridSpec& spec,
                                      const std::function<double(DimensionlessPoint)>& potential);

/// Columns x_over_l0,y_over_l0,V_over_hbar_omega.
csv::Table make_grid_table(const std::vector<GridSample>& samples);
void write_grid_csv(std::ostream& out, const std::vector<GridSample>& samples);

}  // namespace nanotrap
