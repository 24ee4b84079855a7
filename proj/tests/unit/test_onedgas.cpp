#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>

#include "nanotrap/errors.hpp"
#include "nanotrap/onedgas.hpp"

using namespace nanotrap;
using Catch::Matchers::WithinRel;

namespace {

double l0_for(double omega) { return std::sqrt(kConstants.hbar / (default_rb87().mass * omega)); }

constexpr double kOmegaZ = kTwoPi * 100.0;

}  // namespace

TEST_CASE("1D scattering length at the highest reference frequency", "[onedgas]") {
  const double a1d = a1d_from_confinement(5.3e-9, l0_for(kTwoPi * 460e3));
  CHECK(a1d < 0.0);
  CHECK(std::abs(a1d / -26.65e-9 - 1.0) < 0.20);
}

TEST_CASE("1D scattering length limits", "[onedgas]") {
  const double l0 = 50e-9;
  const double cir = cir_position(l0);
  const double near = a1d_from_confinement(cir * (1.0 - 1e-5), l0);
  const double nearer = a1d_from_confinement(cir * (1.0 - 1e-6 * 2.0), l0);
  CHECK(near < 0.0);
  CHECK(nearer < 0.0);
  CHECK(std::abs(nearer) < std::abs(near));
  CHECK(std::abs(near) < 1e-3 * l0);

  const double a3d = 1e-4 * l0;
  CHECK_THAT(a1d_from_confinement(a3d, l0), WithinRel(-l0 * l0 / a3d, 1e-3));
}

TEST_CASE("confinement-induced resonance position", "[onedgas]") {
  CHECK_THAT(cir_position(14e-9), WithinRel(13.56e-9, 1e-3));
  CHECK_THAT(cir_position(28e-9), WithinRel(2.0 * cir_position(14e-9), 1e-15));
  CHECK_THROWS_AS(a1d_from_confinement(cir_position(14e-9), 14e-9), ResonanceError);
  CHECK_THROWS_AS(a1d_from_confinement(-1e-9, 14e-9), PreconditionError);
}

TEST_CASE("a1d is continuous away from the resonance", "[onedgas]") {
  std::mt19937_64 rng(307);
  const double l0 = 40e-9;
  const double cir = cir_position(l0);
  std::uniform_real_distribution<double> u(1e-3 * cir, 3.0 * cir);
  for (int i = 0; i < 1000; ++i) {
    const double a = u(rng);
    if (std::abs(a / cir - 1.0) < 1e-2) continue;
    const double da = 1e-9 * a;
    const double f0 = a1d_from_confinement(a, l0), f1 = a1d_from_confinement(a + da, l0);
    const double slope = std::abs(f1 - f0) / da;
    const double expected = l0 * l0 / (a * a);  // |d a1d / d a3d|
    REQUIRE(slope < 10.0 * expected + 1.0);
  }
}

TEST_CASE("coupling constant identity", "[onedgas]") {
  const AtomSpecies rb = default_rb87();
  const double target = -2.0 * kConstants.hbar * kConstants.hbar / rb.mass;
  std::mt19937_64 rng(311);
  std::uniform_real_distribution<double> u(-1e-5, -1e-10);
  for (int i = 0; i < 1000; ++i) {
    const double a = u(rng);
    REQUIRE_THAT(coupling_1d(a, rb) * a, WithinRel(target, 4e-16));
  }
  CHECK_THROWS_AS(coupling_1d(0.0, rb), PreconditionError);
}

TEST_CASE("Thomas-Fermi density", "[onedgas]") {
  const AtomSpecies rb = default_rb87();
  const double a1d = -603e-9;
  const double eta = tf_density(100, kOmegaZ, a1d, rb) * std::abs(a1d);
  CHECK(std::abs(eta / 5.72 - 1.0) < 0.15);
  CHECK_THAT(tf_density(400, kOmegaZ, a1d, rb), WithinRel(std::pow(4.0, 2.0 / 3.0) * tf_density(100, kOmegaZ, a1d, rb), 1e-14));
  // n_TF l_TF = 3N/4 is a pure number: a units audit of both formulas.
  for (std::int64_t N : {1, 7, 30, 1000}) {
    const auto c = cloud_length(N, kOmegaZ, a1d, rb);
    CHECK_THAT(tf_density(N, kOmegaZ, a1d, rb) * c.tf_length, WithinRel(0.75 * static_cast<double>(N), 1e-13));
  }
}

TEST_CASE("regime classification", "[onedgas]") {
  CHECK(classify_regime(0.11) == GasRegime::tonks_girardeau);
  CHECK(classify_regime(5.72) == GasRegime::thomas_fermi);
  CHECK(classify_regime(1.0) == GasRegime::crossover);
  CHECK(classify_regime(0.5) == GasRegime::crossover);
  CHECK(classify_regime(2.0) == GasRegime::crossover);
  CHECK(to_string(GasRegime::tonks_girardeau) == "TG");
  CHECK(to_string(GasRegime::thomas_fermi) == "TF");
  CHECK(to_string(GasRegime::crossover) == "crossover");
}

TEST_CASE("cloud lengths for the reference gas configurations", "[onedgas]") {
  const AtomSpecies rb = default_rb87();
  const auto top = characterize_gas(kTwoPi * 460e3, kOmegaZ, 30, rb);
  CHECK(std::abs(top.length / 7.7e-6 - 1.0) < 0.25);
  const auto bottom = characterize_gas(kTwoPi * 28.76e3, kOmegaZ, 100, rb);
  CHECK(std::abs(bottom.length / 7.9e-6 - 1.0) < 0.25);
  CHECK(bottom.regime == GasRegime::thomas_fermi);

  const auto a = cloud_length(30, kOmegaZ, -30e-9, rb);
  const auto b = cloud_length(30, kOmegaZ, -3000e-9, rb);
  CHECK(a.tg_length == b.tg_length);
}

TEST_CASE("TF and TG lengths agree within 35 percent in the crossover band", "[onedgas]") {
  const AtomSpecies rb = default_rb87();
  std::mt19937_64 rng(313);
  std::uniform_int_distribution<std::int64_t> uN(1, 2000);
  std::uniform_real_distribution<double> uw(kTwoPi * 10.0, kTwoPi * 1000.0), ua(-5e-6, -1e-9);
  int sampled = 0;
  while (sampled < 1000) {
    const auto c = cloud_length(uN(rng), uw(rng), ua(rng), rb);
    if (c.eta < 0.5 || c.eta > 2.0) continue;
    ++sampled;
    REQUIRE(std::abs(c.tf_length - c.tg_length) / std::max(c.tf_length, c.tg_length) < 0.35);
    // closed form of the ratio in terms of eta
    REQUIRE_THAT(c.tf_length / c.tg_length, WithinRel(std::sqrt(3.0) / 2.0 * std::pow(c.eta, -0.25), 1e-12));
  }
}

TEST_CASE("lengths grow with N and shrink with omega_z in each regime", "[onedgas]") {
  const AtomSpecies rb = default_rb87();
  std::mt19937_64 rng(317);
  std::uniform_int_distribution<std::int64_t> uN(1, 5000);
  std::uniform_real_distribution<double> uw(kTwoPi * 10.0, kTwoPi * 1000.0), ua(-5e-6, -1e-9);
  for (int i = 0; i < 1000; ++i) {
    const std::int64_t N = uN(rng);
    const double w = uw(rng), a = ua(rng);
    const auto c = cloud_length(N, w, a, rb);
    const auto more = cloud_length(N + 1, w, a, rb);
    const auto stiffer = cloud_length(N, 1.01 * w, a, rb);
    REQUIRE(more.tf_length > c.tf_length);
    REQUIRE(more.tg_length > c.tg_length);
    REQUIRE(stiffer.tf_length < c.tf_length);
    REQUIRE(stiffer.tg_length < c.tg_length);
    if (more.regime == c.regime) REQUIRE(more.length > c.length);
  }
}

TEST_CASE("atom capacity of a suspended wire", "[onedgas]") {
  const AtomSpecies rb = default_rb87();
  const double a1d = a1d_from_confinement(rb.a3d, l0_for(kTwoPi * 460e3));
  const auto n = max_atoms_for_wire(10e-6, kOmegaZ, a1d, rb, 1.0);
  CHECK(n >= 10);
  CHECK(n < 100);
  CHECK(cloud_length(n, kOmegaZ, a1d, rb).length <= 10e-6);
  CHECK(cloud_length(n + 1, kOmegaZ, a1d, rb).length > 10e-6);
  CHECK_THROWS_AS(max_atoms_for_wire(10e-6, kOmegaZ, a1d, rb, 0.0), PreconditionError);
  CHECK(max_atoms_for_wire(1e-9, kOmegaZ, a1d, rb, 1.0) == 0);

  std::mt19937_64 rng(331);
  std::uniform_real_distribution<double> uL(1e-6, 100e-6), uf(0.05, 1.0), ua(-3e-6, -5e-9);
  for (int i = 0; i < 1000; ++i) {
    const double L = uL(rng), f = uf(rng), a = ua(rng);
    const auto m = max_atoms_for_wire(L, kOmegaZ, a, rb, f);
    if (m == 0) continue;
    REQUIRE(cloud_length(m, kOmegaZ, a, rb).length <= f * L);
    REQUIRE(cloud_length(m + 1, kOmegaZ, a, rb).length > f * L);
  }
}

TEST_CASE("gas characterisation preconditions and invariants", "[onedgas]") {
  const AtomSpecies rb = default_rb87();
  CHECK_THROWS_AS(characterize_gas(kOmegaZ, kOmegaZ, 30, rb), PreconditionError);
  CHECK_THROWS_AS(characterize_gas(kTwoPi * 460e3, kOmegaZ, 0, rb), PreconditionError);
  const auto g = characterize_gas(kTwoPi * 73.8e3, kOmegaZ, 50, rb);
  CHECK_THAT(g.eta, WithinRel(g.n_tf * std::abs(g.a1d), 1e-15));
  CHECK_THAT(g.g1d * g.a1d, WithinRel(-2.0 * kConstants.hbar * kConstants.hbar / rb.mass, 4e-16));
}

TEST_CASE("gas sweep CSV schema", "[onedgas]") {
  const AtomSpecies rb = default_rb87();
  std::vector<GasProfile> rows;
  for (const auto& r : table2_reference_rows()) rows.push_back(characterize_gas(r.omega, kOmegaZ, r.N, rb));
  REQUIRE(rows.size() == 8);
  std::ostringstream out;
  write_table2_csv(out, rows);
  CHECK(out.str().rfind("nu_kHz,a1d_nm,N,eta,ell_um,regime\n", 0) == 0);
}
