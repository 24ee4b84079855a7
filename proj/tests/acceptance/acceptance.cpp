// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "nanotrap/constants.hpp"
#include "nanotrap/doublewell.hpp"
#include "nanotrap/magnetics.hpp"
#include "nanotrap/onedgas.hpp"
#include "nanotrap/singlewell.hpp"
#include "nanotrap/stability.hpp"
#include "oracles.hpp"

using namespace nanotrap;

namespace {

constexpr double kChi = 0.067;

struct Criterion {
  int id;
  std::string title;
  std::vector<std::string> failures;
  int checks = 0;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
};

double rel(double value, double expected) { return std::abs(value / expected - 1.0); }

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

void table1(Criterion& c) {
  struct Row {
    double I_uA, d, nu_kHz, y0_nm, l0_nm;
  };
  const Row rows[] = {{1000, 10, 460, 144, 14}, {250, 5, 460, 72, 14},  {250, 10, 28.7, 576, 58},
                      {100, 5, 73.8, 180, 36},  {100, 10, 4.6, 1440, 144}, {50, 5, 18.4, 360, 72},
                      {25, 5, 4.6, 720, 144}};
  for (const auto& r : rows) {
    const auto t = design_from_current_and_d(r.I_uA * 1e-6, r.d, kChi, default_rb87());
    const double nu = t.omega / kTwoPi * 1e-3, y0 = t.y0 * 1e9, l0 = t.l0 * 1e9;
    c.expect(rel(nu, r.nu_kHz) <= 0.15, fmt("I=%g uA: nu %.4g kHz vs %.4g", r.I_uA, nu, r.nu_kHz));
    c.expect(rel(y0, r.y0_nm) <= 0.15, fmt("I=%g uA: y0 %.4g nm vs %.4g", r.I_uA, y0, r.y0_nm));
    c.expect(rel(l0, r.l0_nm) <= 0.15, fmt("I=%g uA: l0 %.4g nm vs %.4g", r.I_uA, l0, r.l0_nm));
  }
}

void reference_trap(Criterion& c) {
  const auto t = design_from_current_and_d(100e-6, 10.0, kChi, default_rb87());
  const double nu = t.omega / kTwoPi, Bx = t.Bx * 1e4, y0 = t.y0 * 1e9;
  c.expect(rel(nu, 4.6e3) <= 0.10, fmt("nu %.4g Hz vs 4600 Hz (10%%)", nu));
  c.expect(rel(Bx, 0.14) <= 0.05, fmt("Bx %.4g G vs 0.14 G (5%%)", Bx));
  c.expect(rel(y0, 1440.0) <= 0.10, fmt("y0 %.5g nm vs 1440 nm (10%%)", y0));
}

void stability_budget(Criterion& c) {
  const AtomSpecies rb = default_rb87();
  const NanowireSpec wire = default_mwnt();
  SingleWellTrap near{};
  near.I = 100e-6;
  near.y0 = 180e-9;
  const double gsf = noise_spin_flip_rate(near, NoiseSpectrum::shot_noise(), rb);
  c.expect(rel(gsf, 0.051) <= 0.10, fmt("gamma_sf %.4g Hz vs 0.051 Hz (10%%)", gsf));

  const double sigma = thermal_sigma(wire, 300.0) * 1e9;
  c.expect(sigma >= 0.15 && sigma <= 0.35, fmt("sigma %.4g nm outside [0.15, 0.35]", sigma));

  const double wf = fundamental_mode_frequency(wire) / kTwoPi;
  c.expect(rel(wf, 11.9e6) <= 0.15, fmt("omega_f/2pi %.4g Hz vs 11.9 MHz (15%%)", wf));

  const double cp = casimir_polder_scale(1e-6, kRb87MetalC4) / kTwoPi;
  c.expect(rel(cp, 290.0) <= 0.05, fmt("Casimir-Polder scale/2pi %.4g Hz vs 290 Hz (5%%)", cp));

  const auto ref = design_from_current_and_d(100e-6, 10.0, kChi, rb);
  const double gc = current_noise_decoherence(ref, wire, 300.0, rb);
  c.expect(gc < 1e-8, fmt("gamma_c/omega %.3g not below 1e-8", gc));

  const double w0 = reference_omega0(200e-6, 200e-9, kChi, rb);
  const double x0 = pair_x0_for_omega0(1000e-6, w0, kChi, rb);
  const double phi = static_deflection(0.5 * wire.length, wire, 1000e-6, x0) * 1e9;
  c.expect(phi >= 0.01 && phi <= 0.09, fmt("phi(L/2) %.4g nm not within a factor 3 of 0.03 nm (x0 = %.4g nm)", phi,
                                           x0 * 1e9));
}

void table2(Criterion& c) {
  struct Row {
    double nu_kHz;
    std::int64_t N;
    double eta, ell_um;
  };
  const Row rows[] = {{460, 30, 0.11, 7.7},   {460, 50, 0.15, 10},    {73.8, 30, 0.67, 7.3},
                      {73.8, 50, 0.94, 8.7},  {73.8, 100, 1.49, 11},  {28.76, 30, 2.55, 5.3},
                      {28.76, 50, 3.58, 6.3}, {28.76, 100, 5.72, 7.9}};
  for (const auto& r : rows) {
    const auto g = characterize_gas(kTwoPi * r.nu_kHz * 1e3, kTwoPi * 100.0, r.N, default_rb87());
    const double ell = g.length * 1e6;
    c.expect(rel(ell, r.ell_um) <= 0.25, fmt("nu=%g kHz: ell %.4g um vs %.4g", r.nu_kHz, ell, r.ell_um));
    if (r.eta > 1.0) {
      c.expect(rel(g.eta, r.eta) <= 0.20, fmt("nu=%g kHz: eta %.4g vs %.4g", r.nu_kHz, g.eta, r.eta));
    }
  }
}

void double_reference(Criterion& c) {
  const double w0 = reference_omega0(200e-6, 200e-9, kChi, default_rb87()) / kTwoPi;
  c.expect(rel(w0, 291e3) <= 0.05, fmt("omega0/2pi %.5g Hz vs 291 kHz (5%%)", w0));
  const double r = frequency_ratio(200e-9, 100e-9);
  c.expect(std::abs(r - std::cbrt(0.75)) <= 1e-10, fmt("frequency_ratio(x0/2) = %.15g", r));
}

void fig3(Criterion& c) {
  const AtomSpecies rb = default_rb87();
  const auto grid = linear_grid(0.05, 0.95, 91);
  const double w0 = reference_omega0(200e-6, 200e-9, kChi, rb);
  const double x0b = pair_x0_for_omega0(1000e-6, w0, kChi, rb);
  const auto low = fig3_sweep(200e-6, 200e-9, kChi, rb, grid);
  const auto high = fig3_sweep(1000e-6, x0b, kChi, rb, grid);
  for (const auto* rows : {&low, &high}) {
    for (std::size_t i = 1; i < rows->size(); ++i) {
      const auto& a = (*rows)[i - 1];
      const auto& b = (*rows)[i];
      c.expect(b.omega_over_omega0 < a.omega_over_omega0, fmt("omega/omega0 not decreasing at y0/x0 = %.3g", b.y0_over_x0));
      if (a.gamma_over_omega && b.gamma_over_omega && *a.gamma_over_omega > 0.0) {
        c.expect(*b.gamma_over_omega > *a.gamma_over_omega,
                 fmt("Gamma/omega not increasing at y0/x0 = %.3g", b.y0_over_x0));
      }
    }
  }
  c.expect(frequency_ratio(1.0, 1.0 - 1e-9) < 1e-2, "omega/omega0 does not vanish as y0/x0 -> 1");
  c.expect(frequency_ratio(1.0, 1.0) == 0.0, "omega/omega0 at y0 = x0 is not 0");
  const auto onset_low = tunneling_onset(low);
  const auto onset_high = tunneling_onset(high);
  c.expect(onset_low.has_value() && onset_high.has_value(), "a sweep never reaches Gamma/omega = 1e-3");
  if (onset_low && onset_high) {
    std::printf("  info: tunnelling onset omega/omega0: I=200 uA %.3f, I=1000 uA %.3f (x0 = %.1f nm)\n", *onset_low,
                *onset_high, x0b * 1e9);
    c.expect(*onset_low - *onset_high > 0.1,
             fmt("onset gap %.3f not above 0.1 (%.3f vs %.3f)", *onset_low - *onset_high, *onset_low, *onset_high));
  }
}

void oracle_equivalence(Criterion& c) {
  const AtomSpecies rb = default_rb87();
  // Analytic single-well frequencies vs FD Hessian of the independently built field.
  for (auto [I, d] : std::vector<std::pair<double, double>>{{1000e-6, 10}, {250e-6, 5}, {250e-6, 10}, {100e-6, 5},
                                                              {100e-6, 10}, {50e-6, 5}, {25e-6, 5}}) {
    const auto t = design_from_current_and_d(I, d, kChi, rb);
    for (double w : oracle::hessian_frequencies({{0.0}, t.I, t.Bx, t.Bz}, 0.0, t.y0, 1e-3 * t.l0)) {
      c.expect(rel(w, t.omega) <= 0.01, fmt("single well I=%g d=%g: FD omega off by %.3g", I, d, rel(w, t.omega)));
    }
  }
  // Double well, and barrier vs saddle of the independently built field.
  for (double ratio : {0.3, 0.5, 0.7, 0.8}) {
    const auto t = design_double(200e-6, 200e-9, ratio * 200e-9, kChi, rb);
    const oracle::Wires w{{-t.x0, t.x0}, t.I, t.Bx, t.Bz};
    for (double f : oracle::hessian_frequencies(w, t.minima[1][0], t.y0, 1e-3 * t.l0)) {
      c.expect(rel(f, t.omega) <= 0.01, fmt("double well y0/x0=%g: FD omega off by %.3g", ratio, rel(f, t.omega)));
    }
    const double hw = oracle::kHbar * t.omega;
    auto axis = [&](double y) { return rb.moment() * (oracle::field_magnitude(w, 0.0, y) - t.Bz) / hw; };
    const double ys = oracle::golden_minimum(axis, 0.01 * t.y0, 4.0 * t.x0);
    const double D = barrier_height(t.dx, t.dy, t.chi);
    c.expect(rel(D, axis(ys)) <= 1e-6, fmt("barrier y0/x0=%g: closed form %.10g vs saddle %.10g", ratio, D, axis(ys)));
    c.expect(rel(ys, t.x0) <= 1e-5, fmt("saddle at y = %.6g x0, expected x0", ys / t.x0));

    if (t.barrier_over_hbar_omega <= 1.0) continue;
    // WKB action vs a 10^6-point trapezoid with its own turning points.
    auto line = [&](double x) { return rb.moment() * (oracle::field_magnitude(w, x * t.l0, t.y0) - t.Bz) / hw - 1.0; };
    const double xm = t.minima[1][0] / t.l0;
    const auto left = oracle::dense_scan_roots(line, -xm, 0.0, 100000);
    const auto right = oracle::dense_scan_roots(line, 0.0, xm, 100000);
    c.expect(left.size() == 1 && right.size() == 1, fmt("WKB y0/x0=%g: oracle turning points not unique", ratio));
    if (left.size() != 1 || right.size() != 1) continue;
    const double dense = oracle::trapezoid([&](double x) { return std::sqrt(std::max(0.0, 2.0 * line(x))); },
                                           left.front(), right.front(), 1000000);
    const double action = wkb_tunneling(t).action;
    c.expect(rel(action, dense) <= 1e-4, fmt("WKB y0/x0=%g: action %.8g vs dense %.8g", ratio, action, dense));
  }
  // Static deflection vs finite-difference clamped-beam solve (Richardson on n, 2n).
  const NanowireSpec wire = default_mwnt();
  const double I = 1000e-6, x0 = 447e-9, L = wire.length;
  const double EI = wire.young * wire.moment_of_inertia();
  const double q = oracle::kMu0 * I * I / (4.0 * oracle::kPi * x0);
  const int n = 200;
  const auto coarse = oracle::clamped_beam_fd(L, q, EI, n);
  const auto fine = oracle::clamped_beam_fd(L, q, EI, 2 * n);
  for (int k = 1; k < 8; ++k) {
    const double fd = (4.0 * fine[k * n / 4] - coarse[k * n / 8]) / 3.0;
    const double z = L * k / 8.0;
    const double phi = static_deflection(z, wire, I, x0);
    c.expect(rel(phi, fd) <= 1e-6, fmt("deflection z=%g L: %.10g vs FD %.10g", k / 8.0, phi, fd));
  }
}

void invariants(Criterion& c) {
  const AtomSpecies rb = default_rb87();
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> uI(10e-6, 2e-3), ud(2.0, 30.0), uc(0.005, 0.9), ux(50e-9, 2e-6),
      ur(0.05, 0.95), uu(-1.0, 1.0);
  const int samples = 1000;
  int zero_fail = 0, floor_fail = 0, relation_fail = 0, coupling_fail = 0, double_fail = 0, mono_fail = 0;
  for (int i = 0; i < samples; ++i) {
    // Single-well: field zero at the minimum and the five coupled relations.
    const auto t = design_from_current_and_d(uI(rng), ud(rng), uc(rng), rb);
    double bx = 0, by = 0;
    oracle::transverse_field({{0.0}, t.I, t.Bx, t.Bz}, 0.0, t.y0, bx, by);
    if (!(std::hypot(bx, by) < 1e-10 * t.Bz)) ++zero_fail;
    const double l0 = std::sqrt(oracle::kHbar / (rb.mass * t.omega));
    if (rel(t.l0, l0) > 1e-10 || rel(t.d, t.y0 / t.l0) > 1e-10 ||
        rel(t.Bx, oracle::kMu0 * t.I / (2 * oracle::kPi * t.y0)) > 1e-10 ||
        rel(t.chi, oracle::kHbar * t.omega / (rb.moment() * t.Bz)) > 1e-10) {
      ++relation_fail;
    }
    if (design_from_current_and_d(1.01 * t.I, t.d, t.chi, rb).omega <= t.omega) ++mono_fail;
    if (escape_barrier(1.01 * t.d, t.chi) <= escape_barrier(t.d, t.chi)) ++mono_fail;

    // Double-well: field zero at both analytic minima, floor 1/chi there.
    const double x0 = ux(rng);
    const auto dw = design_double(uI(rng), x0, ur(rng) * x0, uc(rng) * 0.5 + 0.01, rb);
    const oracle::Wires pair{{-dw.x0, dw.x0}, dw.I, dw.Bx, dw.Bz};
    for (const auto& m : dw.minima) {
      oracle::transverse_field(pair, m[0], m[1], bx, by);
      if (!(std::hypot(bx, by) < 1e-10 * dw.Bz)) ++zero_fail;
      if (rel(dimensionless_double_potential({m[0] / dw.l0, m[1] / dw.l0}, dw.dx, dw.dy, dw.chi), 1.0 / dw.chi) > 1e-8) {
        ++double_fail;
      }
    }
    if (!(dw.omega / dw.omega0 > 0.0) || rel(dw.omega / dw.omega0, frequency_ratio(dw.x0, dw.y0)) > 1e-10) ++double_fail;

    // Zeeman floor on random points of both layouts.
    const AtomSpecies s = rb;
    for (int k = 0; k < 4; ++k) {
      const Vec3 p{uu(rng) * 3.0 * x0, std::abs(uu(rng)) * 3.0 * x0 + 1e-9, 0.0};
      if (potential_at(p, dw.layout(), dw.bias(), s) < s.moment() * dw.Bz) ++floor_fail;
      if (potential_at(p, t.layout(), t.bias(), s) < s.moment() * t.Bz) ++floor_fail;
    }

    // g1d a1d = -2 hbar^2 / m.
    const double a1d = -std::pow(10.0, -9.0 + 3.0 * (uu(rng) + 1.0));
    if (rel(coupling_1d(a1d, rb) * a1d, -2.0 * oracle::kHbar * oracle::kHbar / rb.mass) > 4e-16) ++coupling_fail;
  }
  c.expect(zero_fail == 0, fmt("%g analytic minima with |B_perp| >= 1e-10 Bz", zero_fail));
  c.expect(floor_fail == 0, fmt("%g points below the Zeeman floor", floor_fail));
  c.expect(relation_fail == 0, fmt("%g single-well traps break the coupled relations", relation_fail));
  c.expect(coupling_fail == 0, fmt("%g samples with g1d a1d != -2 hbar^2/m", coupling_fail));
  c.expect(double_fail == 0, fmt("%g double-well samples break minima or frequency invariants", double_fail));
  c.expect(mono_fail == 0, fmt("%g monotonicity violations", mono_fail));
  std::printf("  info: invariant suite ran %d random configurations\n", samples);
}

}  // namespace

int main() {
  std::vector<std::pair<Criterion, std::function<void(Criterion&)>>> suite;
  suite.push_back({{1, "Single-wire reference designs (nu, y0, l0 within 15%)", {}}, table1});
  suite.push_back({{2, "Reference trap I=100 uA, d=10 (nu 10%, Bx 5%, y0 10%)", {}}, reference_trap});
  suite.push_back({{3, "Stability budget", {}}, stability_budget});
  suite.push_back({{4, "1D gas reference configurations (eta 20% for eta > 1, ell 25%)", {}}, table2});
  suite.push_back({{5, "Double-well reference omega0 and frequency ratio", {}}, double_reference});
  suite.push_back({{6, "Tunnelling sweep properties and onset ordering", {}}, fig3});
  suite.push_back({{7, "Oracle equivalence (FD Hessian, saddle, dense WKB, FD beam)", {}}, oracle_equivalence});
  suite.push_back({{8, "Invariant suite over random inputs", {}}, invariants});

  int failed = 0;
  for (auto& [criterion, body] : suite) {
    try {
      body(criterion);
    } catch (const std::exception& e) {
      criterion.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = criterion.failures.empty();
    std::printf("%s criterion %d: %s [%d checks]\n", ok ? "PASS" : "FAIL", criterion.id, criterion.title.c_str(),
                criterion.checks);
    for (const auto& f : criterion.failures) std::printf("  fail: %s\n", f.c_str());
    if (!ok) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(suite.size()) - failed, suite.size());
  return failed == 0 ? 0 : 1;
}
