#include "nanotrap/magnetics.hpp"

#include <cmath>
#include <string>

#include "nanotrap/csv.hpp"
#include "nanotrap/errors.hpp"

namespace nanotrap {

namespace {

constexpr const char* kModule = "magnetics";

double wire_prefactor(double current) { return kConstants.mu0 * current / kTwoPi; }

void check_exclusion(double r2, double exclusion, double x_wire) {
  if (!(r2 >= exclusion * exclusion) || r2 == 0.0) {
    throw SingularPointError("evaluation point within " + std::to_string(exclusion) + " of the wire axis at x = " +
                             std::to_string(x_wire));
  }
}

// Bracketed terms of the two dimensionless potentials, i.e. chi V = sqrt(1 + chi S).
double single_shape(DimensionlessPoint p, double d, double x_offset, double exclusion) {
  const double u = p.x + x_offset;
  const double r2 = u * u + p.y * p.y;
  check_exclusion(r2, exclusion, -x_offset);
  const double a = r2 - d * p.y;
  return (d * d * a * a + d * d * d * d * u * u) / (r2 * r2);
}

double double_shape(DimensionlessPoint p, double dx, double dy, double exclusion) {
  const double ul = p.x + dx;
  const double ur = p.x - dx;
  const double rl2 = ul * ul + p.y * p.y;
  const double rr2 = ur * ur + p.y * p.y;
  check_exclusion(rl2, exclusion, -dx);
  check_exclusion(rr2, exclusion, dx);
  const double bx = -p.y / rl2 - p.y / rr2 + 1.0 / dy;
  const double by = ul / rl2 + ur / rr2;
  const double dy2 = dy * dy;
  return dy2 * dy2 / (1.0 - dy2 / (dx * dx)) * (bx * bx + by * by);
}

}  // namespace

void BiasFields::validate() const {
  if (!(Bz > 0.0)) throw PreconditionError(kModule, "Bz", "Bz > 0");
  if (!(Bx >= 0.0)) throw PreconditionError(kModule, "Bx", "Bx >= 0");
}

WireLayout WireLayout::single(double x0, double current) { return WireLayout{{-x0}, current}; }

WireLayout WireLayout::pair(double x0, double current) { return WireLayout{{-x0, x0}, current}; }

void WireLayout::validate() const {
  if (offsets.empty()) throw PreconditionError(kModule, "offsets", "at least one wire");
  if (!(current > 0.0)) throw PreconditionError(kModule, "I", "I > 0");
  if (offsets.size() == 2 && !(offsets[1] > 0.0 && offsets[0] == -offsets[1])) {
    throw PreconditionError(kModule, "x0", "pair offsets at -x0, +x0 with x0 > 0");
  }
}

Vec3 field_at(const Vec3& point, const WireLayout& layout, const BiasFields& bias, double exclusion) {
  layout.validate();
  bias.validate();
  const double g = wire_prefactor(layout.current);
  Vec3 b{bias.Bx, 0.0, bias.Bz};
  for (double xw : layout.offsets) {
    const double u = point[0] - xw;
    const double r2 = u * u + point[1] * point[1];
    check_exclusion(r2, exclusion, xw);
    b[0] += -g * point[1] / r2;
    b[1] += g * u / r2;
  }
  return b;
}

TransverseJacobian field_jacobian(const Vec3& point, const WireLayout& layout, double exclusion) {
  layout.validate();
  const double g = wire_prefactor(layout.current);
  TransverseJacobian j{0.0, 0.0, 0.0, 0.0};
  for (double xw : layout.offsets) {
    const double u = point[0] - xw;
    const double y = point[1];
    const double r2 = u * u + y * y;
    check_exclusion(r2, exclusion, xw);
    const double r4 = r2 * r2;
    const double shear = g * (y * y - u * u) / r4;
    const double cross = 2.0 * g * u * y / r4;
    j.dBx_dx += cross;
    j.dBx_dy += shear;
    j.dBy_dx += shear;
    j.dBy_dy -= cross;
  }
  return j;
}

double potential_at(const Vec3& point, const WireLayout& layout, const BiasFields& bias, const AtomSpecies& species,
                    double exclusion) {
  const Vec3 b = field_at(point, layout, bias, exclusion);
  return species.moment() * std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
}

double potential_above_floor(const Vec3& point, const WireLayout& layout, const BiasFields& bias,
                             const AtomSpecies& species, double exclusion) {
  const Vec3 b = field_at(point, layout, bias, exclusion);
  const double perp2 = b[0] * b[0] + b[1] * b[1];
  const double norm = std::sqrt(perp2 + b[2] * b[2]);
  return species.moment() * perp2 / (norm + std::abs(b[2]));
}

numerics::Point2 potential_gradient(const Vec3& point, const WireLayout& layout, const BiasFields& bias,
                                    const AtomSpecies& species, double exclusion) {
  const Vec3 b = field_at(point, layout, bias, exclusion);
  const TransverseJacobian j = field_jacobian(point, layout, exclusion);
  const double scale = species.moment() / std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
  return {scale * (b[0] * j.dBx_dx + b[1] * j.dBy_dx), scale * (b[0] * j.dBx_dy + b[1] * j.dBy_dy)};
}

double dimensionless_single_potential(DimensionlessPoint p, double d, double chi, double x_offset,
                                      double exclusion) {
  if (!(chi > 0.0)) throw PreconditionError(kModule, "chi", "chi > 0");
  if (!(d > 0.0)) throw PreconditionError(kModule, "d", "d > 0");
  return std::sqrt(1.0 + chi * single_shape(p, d, x_offset, exclusion)) / chi;
}

double dimensionless_double_potential(DimensionlessPoint p, double dx, double dy, double chi, double exclusion) {
  if (!(chi > 0.0)) throw PreconditionError(kModule, "chi", "chi > 0");
  if (!(dy > 0.0 && dx > dy)) throw PreconditionError(kModule, "dx, dy", "dx > dy > 0");
  return std::sqrt(1.0 + chi * double_shape(p, dx, dy, exclusion)) / chi;
}

double dimensionless_single_excess(DimensionlessPoint p, double d, double chi, double x_offset, double exclusion) {
  if (!(chi > 0.0)) throw PreconditionError(kModule, "chi", "chi > 0");
  if (!(d > 0.0)) throw PreconditionError(kModule, "d", "d > 0");
  const double s = single_shape(p, d, x_offset, exclusion);
  return s / (1.0 + std::sqrt(1.0 + chi * s));
}

double dimensionless_double_excess(DimensionlessPoint p, double dx, double dy, double chi, double exclusion) {
  if (!(chi > 0.0)) throw PreconditionError(kModule, "chi", "chi > 0");
  if (!(dy > 0.0 && dx > dy)) throw PreconditionError(kModule, "dx, dy", "dx > dy > 0");
  const double s = double_shape(p, dx, dy, exclusion);
  return s / (1.0 + std::sqrt(1.0 + chi * s));
}

void GridSpec::validate() const {
  if (nx < 2 || ny < 2) throw PreconditionError(kModule, "nx, ny", ">= 2");
  if (!(x_max > x_min)) throw PreconditionError(kModule, "x_min, x_max", "x_min < x_max");
  if (!(y_max > y_min)) throw PreconditionError(kModule, "y_min, y_max", "y_min < y_max");
}

std::vector<GridSample> evaluate_grid(const GridSpec& spec,
                                      const std::function<double(DimensionlessPoint)>& potential) {
  spec.validate();
  std::vector<GridSample> out;
  out.reserve(static_cast<std::size_t>(spec.nx) * static_cast<std::size_t>(spec.ny));
  const double hx = (spec.x_max - spec.x_min) / (spec.nx - 1);
  const double hy = (spec.y_max - spec.y_min) / (spec.ny - 1);
  for (int j = 0; j < spec.ny; ++j) {
    const double y = spec.y_min + j * hy;
    for (int i = 0; i < spec.nx; ++i) {
      const double x = spec.x_min + i * hx;
      out.push_back({x, y, potential({x, y})});
    }
  }
  return out;
}

csv::Table make_grid_table(const std::vector<GridSample>& samples) {
  csv::Table t{{"x_over_l0", "y_over_l0", "V_over_hbar_omega"}, {}};
  t.rows.reserve(samples.size());
  for (const auto& s : samples) t.rows.push_back({s.x, s.y, s.value});
  return t;
}

void write_grid_csv(std::ostream& out, const std::vector<GridSample>& samples) {
  make_grid_table(samples).write_csv(out);
}

}  // namespace nanotrap
