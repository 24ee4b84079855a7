#include "nanotrap/doublewell.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nanotrap/csv.hpp"
#include "nanotrap/errors.hpp"
#include "nanotrap/numerics.hpp"

namespace nanotrap {

namespace {

constexpr const char* kModule = "doublewell";

void require(bool ok, const char* parameter, const char* bound) {
  if (!ok) throw PreconditionError(kModule, parameter, bound);
}

double wire_prefactor(double current) { return kConstants.mu0 * current / kTwoPi; }

}  // namespace

double reference_omega0(double I, double x0, double chi, const AtomSpecies& species) {
  require(I > 0.0, "I", "I > 0");
  require(x0 > 0.0, "x0", "x0 > 0");
  require(chi > 0.0, "chi", "chi > 0");
  const double y0 = 0.5 * x0;
  const double gradient = wire_prefactor(I) / (y0 * y0);
  const double mu = species.moment();
  return std::cbrt(gradient * gradient * mu * mu * chi / (species.mass * kConstants.hbar));
}

double frequency_ratio(double x0, double y0) {
  require(y0 > 0.0 && x0 >= y0, "x0, y0", "x0 >= y0 > 0");
  const double q = x0 / y0;
  const double q2 = q * q;
  return std::cbrt(q2 * q2 * (1.0 - 1.0 / q2) / 16.0);
}

double barrier_height(double dx, double dy, double chi) {
  require(dy > 0.0 && dx >= dy, "dx, dy", "dx >= dy > 0");
  require(chi > 0.0, "chi", "chi > 0");
  const double r = dy / dx;
  const double s = dy * dy * (1.0 - r) / (1.0 + r);
  return s / (1.0 + std::sqrt(1.0 + chi * s));
}

DoubleWellTrap design_double(double I, double x0, double y0, double chi, const AtomSpecies& species) {
  require(I > 0.0, "I", "I > 0");
  require(y0 > 0.0, "y0", "y0 > 0");
  require(x0 > y0, "x0", "x0 > y0 (bistability)");
  require(chi > 0.0 && chi < 1.0, "chi", "0 < chi < 1 (adiabatic)");
  species.validate();

  const auto& c = kConstants;
  const double mu = species.moment();
  const double g = wire_prefactor(I);
  const double inv_y2 = 1.0 / (y0 * y0);
  const double omega = std::cbrt(mu * mu * chi / (species.mass * c.hbar) * g * g * inv_y2 * (inv_y2 - 1.0 / (x0 * x0)));

  DoubleWellTrap t{};
  t.I = I;
  t.x0 = x0;
  t.y0 = y0;
  t.chi = chi;
  t.omega = omega;
  t.l0 = std::sqrt(c.hbar / (species.mass * omega));
  t.dx = x0 / t.l0;
  t.dy = y0 / t.l0;
  t.Bz = c.hbar * omega / (mu * chi);
  t.Bx = g / y0;
  const double xm = y0 * std::sqrt(x0 * x0 / (y0 * y0) - 1.0);
  t.minima = {Vec3{-xm, y0, 0.0}, Vec3{xm, y0, 0.0}};
  t.barrier_over_hbar_omega = barrier_height(t.dx, t.dy, chi);
  t.barrier = t.barrier_over_hbar_omega * c.hbar * omega;
  t.omega0 = reference_omega0(I, x0, chi, species);
  t.hbar_omega_over_kB = c.hbar * omega / c.kB;
  t.barrier_over_kB = t.barrier / c.kB;

  t.minimum_field_residual = 0.0;
  for (const auto& p : t.minima) {
    const Vec3 b = field_at(p, t.layout(), t.bias());
    t.minimum_field_residual = std::max(t.minimum_field_residual, std::hypot(b[0], b[1]) / t.Bz);
  }
  return t;
}

double pair_x0_for_omega0(double I, double omega0, double chi, const AtomSpecies& species) {
  require(omega0 > 0.0, "omega0", "omega0 > 0");
  // omega0 falls monotonically as x0 grows; bracket in log x0 then bisect.
  auto mismatch = [&](double log_x0) { return std::log(reference_omega0(I, std::exp(log_x0), chi, species) / omega0); };
  double lo = std::log(1e-9), hi = lo;
  while (mismatch(lo) < 0.0) lo -= std::log(2.0);
  while (mismatch(hi) > 0.0) hi += std::log(2.0);
  if (lo == hi) return std::exp(lo);
  const auto root = numerics::find_root_bracketed(mismatch, lo, hi, 1e-14, 400);
  return std::exp(root.root);
}

WkbResult wkb_tunneling(const DoubleWellTrap& trap, const WkbOptions& options) {
  if (!(trap.barrier_over_hbar_omega > 1.0)) {
    throw NoBarrierError("barrier D = " + std::to_string(trap.barrier_over_hbar_omega) +
                         " hbar omega leaves no forbidden region at one quantum above the well floor");
  }
  const double dx = trap.dx, dy = trap.dy, chi = trap.chi;
  // Energy above E = 1/chi + 1 along the line through both minima.
  auto excess = [&](double x) { return dimensionless_double_excess({x, dy}, dx, dy, chi) - 1.0; };

  const double x_min = std::sqrt(dx * dx - dy * dy);
  auto scan = [&](double from, double to) {
    const int n = options.scan_samples;
    double prev_x = from, prev_f = excess(from);
    for (int i = 1; i <= n; ++i) {
      const double x = from + (to - from) * i / n;
      const double f = excess(x);
      if ((prev_f < 0.0) != (f < 0.0)) {
        return numerics::find_root_bracketed(excess, prev_x, x, options.root_tol).root;
      }
      prev_x = x;
      prev_f = f;
    }
    throw BracketError("no turning point found scanning x in [" + std::to_string(from) + ", " +
                       std::to_string(to) + "] on y = dy");
  };
  const double x_a = scan(-x_min, 0.0);
  const double x_b = scan(x_min, 0.0);

  const double mid = 0.5 * (x_a + x_b);
  auto left = [&](double u) { return 2.0 * u * std::sqrt(2.0 * std::max(excess(x_a + u * u), 0.0)); };
  auto right = [&](double u) { return 2.0 * u * std::sqrt(2.0 * std::max(excess(x_b - u * u), 0.0)); };
  const double action = numerics::adaptive_integral(left, 0.0, std::sqrt(mid - x_a), options.quad_rel_tol).value +
                        numerics::adaptive_integral(right, 0.0, std::sqrt(x_b - mid), options.quad_rel_tol).value;
  return {x_a, x_b, action, std::exp(-action)};
}

std::vector<Fig3Row> fig3_sweep(double I, double x0, double chi, const AtomSpecies& species,
                                std::span<const double> ratio_grid, const WkbOptions& options) {
  std::vector<Fig3Row> rows;
  rows.reserve(ratio_grid.size());
  for (double r : ratio_grid) {
    require(r > 0.0 && r < 1.0, "y0_over_x0", "0 < y0/x0 < 1");
    const DoubleWellTrap trap = design_double(I, x0, r * x0, chi, species);
    Fig3Row row{r, frequency_ratio(x0, r * x0), std::nullopt, std::nullopt, trap.barrier_over_hbar_omega, I};
    if (trap.barrier_over_hbar_omega > 1.0) {
      const WkbResult w = wkb_tunneling(trap, options);
      row.gamma_over_omega = w.ratio;
      row.action = w.action;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
  require(n >= 2, "n", "n >= 2");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return out;
}

std::optional<double> tunneling_onset(const std::vector<Fig3Row>& rows, double threshold) {
  const double target = std::log(threshold);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& a = rows[i - 1];
    const auto& b = rows[i];
    if (!a.action || !b.action) continue;
    const double la = -*a.action, lb = -*b.action;
    if (la < target && lb >= target) {
      const double t = (target - la) / (lb - la);
      return a.omega_over_omega0 + t * (b.omega_over_omega0 - a.omega_over_omega0);
    }
  }
  return std::nullopt;
}

csv::Table make_fig3_table(const std::vector<Fig3Row>& rows) {
  csv::Table table{{"y0_over_x0", "omega_over_omega0", "gamma_over_omega", "current_uA"}, {}};
  for (const auto& r : rows) {
    csv::Cell gamma = r.gamma_over_omega ? csv::Cell(*r.gamma_over_omega) : csv::Cell();
    table.rows.push_back({r.y0_over_x0, r.omega_over_omega0, gamma, r.current * 1e6});
  }
  return table;
}

void write_fig3_csv(std::ostream& out, const std::vector<Fig3Row>& rows) { make_fig3_table(rows).write_csv(out); }

}  // namespace nanotrap
