#include "nanotrap/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "nanotrap/errors.hpp"

namespace nanotrap::numerics {

void ToleranceConfig::validate() const {
  if (!(root_abs_tol > 0.0)) throw PreconditionError("numerics", "root_abs_tol", "> 0");
  if (!(quad_rel_tol > 0.0)) throw PreconditionError("numerics", "quad_rel_tol", "> 0");
  if (!(fd_step > 0.0)) throw PreconditionError("numerics", "fd_step", "> 0");
  if (max_iterations < 1) throw PreconditionError("numerics", "max_iterations", ">= 1");
}

RootResult find_root_bracketed(const ScalarFunction& f, double a, double b, double tol, int max_iterations) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return {a, fa, 0};
  if (fb == 0.0) return {b, fb, 0};
  if (!(fa * fb < 0.0)) {
    throw BracketError("no sign change on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
  }

  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int it = 1; it <= max_iterations; ++it) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return {b, fb, it};

    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;  // secant
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : std::copysign(tol1, xm);
    fb = f(b);
  }
  throw ConvergenceError("root finder did not converge in " + std::to_string(max_iterations) + " iterations");
}

namespace {

// 15-point Kronrod nodes (symmetric half) with the embedded 7-point Gauss rule.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780, 0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
  double a, b, value, error;
};

Panel gauss_kronrod(const ScalarFunction& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrod[7];
  double gauss = fc * kGauss[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kKronrod[i] * sum;
    if (i % 2 == 1) gauss += kGauss[i / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

IntegralResult adaptive_integral(const ScalarFunction& f, double a, double b, double rel_tol, int max_subdivisions) {
  if (a == b) return {0.0, 0.0, 0};
  const double sign = b < a ? -1.0 : 1.0;
  if (b < a) std::swap(a, b);

  auto by_error = [](const Panel& l, const Panel& r) { return l.error < r.error; };
  std::vector<Panel> heap{gauss_kronrod(f, a, b)};
  double value = heap.front().value;
  double error = heap.front().error;
  int subdivisions = 0;

  constexpr double eps = std::numeric_limits<double>::epsilon();
  while (error > std::max(rel_tol * std::abs(value), 50.0 * eps * std::abs(value)) && error > 0.0) {
    if (subdivisions >= max_subdivisions) {
      throw ConvergenceError("adaptive_integral: no convergence after " + std::to_string(max_subdivisions) +
                             " subdivisions (error estimate " + std::to_string(error) + ")");
    }
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw ConvergenceError("adaptive_integral: interval collapsed below machine resolution");
    }
    const Panel left = gauss_kronrod(f, worst.a, mid);
    const Panel right = gauss_kronrod(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), by_error);
    ++subdivisions;
  }

  // Re-sum from the partition so accumulated update rounding does not leak in.
  std::sort(heap.begin(), heap.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
  double total = 0.0, total_error = 0.0;
  for (const auto& p : heap) {
    total += p.value;
    total_error += p.error;
  }
  return {sign * total, total_error, subdivisions};
}

Matrix2 fd_hessian(const ScalarField2& f, Point2 p, Point2 step) {
  const double hx = step.x, hy = step.y;
  const double f0 = f(p);
  const double fxx = (f({p.x + hx, p.y}) - 2.0 * f0 + f({p.x - hx, p.y})) / (hx * hx);
  const double fyy = (f({p.x, p.y + hy}) - 2.0 * f0 + f({p.x, p.y - hy})) / (hy * hy);
  const double fxy = (f({p.x + hx, p.y + hy}) - f({p.x + hx, p.y - hy}) - f({p.x - hx, p.y + hy}) +
                      f({p.x - hx, p.y - hy})) /
                     (4.0 * hx * hy);
  return {{{fxx, fxy}, {fxy, fyy}}};
}

std::array<double, 2> symmetric_eigenvalues(const Matrix2& m) {
  const double mean = 0.5 * (m[0][0] + m[1][1]);
  const double half_diff = 0.5 * (m[0][0] - m[1][1]);
  const double radius = std::hypot(half_diff, m[0][1]);
  return {mean - radius, mean + radius};
}

MinimizeResult damped_newton_minimize(const VectorField2& gradient, Point2 start, Point2 step, double gradient_tol,
                                      int max_iterations) {
  Point2 x = start;
  Point2 g = gradient(x);
  double gnorm = std::hypot(g.x, g.y);
  int it = 0;
  for (; it < max_iterations && gnorm > gradient_tol; ++it) {
    const Point2 gxp = gradient({x.x + step.x, x.y});
    const Point2 gxm = gradient({x.x - step.x, x.y});
    const Point2 gyp = gradient({x.x, x.y + step.y});
    const Point2 gym = gradient({x.x, x.y - step.y});
    const double hxx = (gxp.x - gxm.x) / (2.0 * step.x);
    const double hyy = (gyp.y - gym.y) / (2.0 * step.y);
    const double hxy = 0.5 * ((gxp.y - gxm.y) / (2.0 * step.x) + (gyp.x - gym.x) / (2.0 * step.y));
    const double det = hxx * hyy - hxy * hxy;
    if (!(det > 0.0 && hxx > 0.0)) {
      throw ConvergenceError("damped Newton: Hessian not positive definite at iterate");
    }
    Point2 delta{-(hyy * g.x - hxy * g.y) / det, -(-hxy * g.x + hxx * g.y) / det};

    double damping = 1.0;
    bool accepted = false;
    for (int halvings = 0; halvings < 40; ++halvings) {
      const Point2 trial{x.x + damping * delta.x, x.y + damping * delta.y};
      const Point2 gt = gradient(trial);
      const double tnorm = std::hypot(gt.x, gt.y);
      if (tnorm < gnorm) {
        x = trial;
        g = gt;
        gnorm = tnorm;
        accepted = true;
        break;
      }
      damping *= 0.5;
    }
    if (!accepted) break;  // at the floating-point floor of the gradient
  }
  return {x, gnorm, it};
}

}  // namespace nanotrap::numerics
