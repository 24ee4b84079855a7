#pragma once

#include <array>
#include <functional>

namespace nanotrap::numerics {

/// Default tolerances for the shared kernels. Chosen two orders of magnitude
/// tighter than any physics-level acceptance tolerance.
struct ToleranceConfig {
  double root_abs_tol = 1e-10;
  double quad_rel_tol = 1e-6;
  double fd_step = 1e-4;  ///< relative to the natural length scale of the caller
  int max_iterations = 200;

  void validate() const;
};

using ScalarFunction = std::function<double(double)>;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

using ScalarField2 = std::function<double(Point2)>;
using VectorField2 = std::function<Point2(Point2)>;
using Matrix2 = std::array<std::array<double, 2>, 2>;

struct RootResult {
  double root;
  double residual;  ///< f(root)
  int iterations;
};

/// Brent's method on a sign-changing bracket. Throws BracketError when
/// f(a) f(b) > 0 and ConvergenceError after `max_iterations`.
RootResult find_root_bracketed(const ScalarFunction& f, double a, double b, double tol = 1e-10,
                               int max_iterations = 200);

struct IntegralResult {
  double value;
  double abs_error;  ///< estimate, |K15 - G7| summed over the final partition
  int subdivisions;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature.
///
/// Bisects the interval with the largest error estimate until the summed
/// estimate is below rel_tol * |value|. Endpoint singularities of the
/// integrable power type are handled by refinement alone, but callers with a
/// known square-root endpoint should substitute first for speed.
IntegralResult adaptive_integral(const ScalarFunction& f, double a, double b, double rel_tol = 1e-6,
                                 int max_subdivisions = 5000);

/// Central-difference Hessian with per-axis absolute steps. The mixed term
/// uses the four-corner stencil, so the result is symmetric exactly.
Matrix2 fd_hessian(const ScalarField2& f, Point2 p, Point2 step);

/// Eigenvalues of a symmetric 2x2 matrix, ascending.
std::array<double, 2> symmetric_eigenvalues(const Matrix2& m);

struct MinimizeResult {
  Point2 point;
  double gradient_norm;
  int iterations;
};

/// Damped Newton iteration on an analytic gradient. The Hessian is the
/// symmetrised central-difference Jacobian of `gradient` with steps `step`;
/// steps are halved until the gradient norm decreases.
MinimizeResult damped_newton_minimize(const VectorField2& gradient, Point2 start, Point2 step, double gradient_tol,
                                      int max_iterations = 100);

}  // namespace nanotrap::numerics
