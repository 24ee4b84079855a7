#pragma once

// Test-only reference computations. Nothing here calls into the library's
// field, potential or numerics code; each quantity is rebuilt from first
// principles so agreement is evidence rather than tautology.

#include <array>
#include <functional>
#include <vector>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kMu0 = 1.25663706212e-6;
inline constexpr double kHbar = 1.054571817e-34;
inline constexpr double kMuB = 9.2740100783e-24;
inline constexpr double kKB = 1.380649e-23;
inline constexpr double kCharge = 1.602176634e-19;
inline constexpr double kRbMass = 86.909180527 * 1.66053906660e-27;
inline constexpr double kRbMoment = 2.0 * 0.5 * kMuB;  // mF gF muB for F = 2, mF = 2, gF = 1/2

/// Straight wires along z at (x_i, 0), current I each, plus bias (Bx, 0, Bz).
struct Wires {
  std::vector<double> x;
  double I;
  double Bx;
  double Bz;
};

/// |B| from direct Biot-Savart summation [T].
double field_magnitude(const Wires& w, double x, double y);
/// Transverse field components (Bx, By) [T].
void transverse_field(const Wires& w, double x, double y, double& bx, double& by);

/// Trap frequencies (ascending) from a central-difference Hessian of
/// mu |B| at (x, y), step h [m]. Returns angular frequencies [rad/s].
std::vector<double> hessian_frequencies(const Wires& w, double x, double y, double h, double moment = kRbMoment,
                                        double mass = kRbMass);

/// Golden-section minimum of f on [a, b].
double golden_minimum(const std::function<double(double)>& f, double a, double b, double tol = 1e-13);

/// Roots of f on [a, b]: a dense scan of n cells followed by bisection to
/// machine precision in every sign-changing cell.
std::vector<double> dense_scan_roots(const std::function<double(double)>& f, double a, double b, int n);

/// Composite trapezoid with n points.
double trapezoid(const std::function<double(double)>& f, double a, double b, long n);

/// Uniformly loaded clamped-clamped Euler-Bernoulli beam EI w'''' = q on
/// [0, L], solved with the 5-point stencil and ghost-point clamped
/// conditions on n intervals. Returns w at the n + 1 nodes.
std::vector<double> clamped_beam_fd(double L, double q, double EI, int n);

}  // namespace oracle
