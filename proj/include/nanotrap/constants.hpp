#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json_fwd.hpp>

namespace nanotrap {

/// CODATA 2018 values, SI units. Every module reads constants from here.
struct PhysicalConstants {
  double mu0;   ///< vacuum permeability [T m / A]
  double hbar;  ///< reduced Planck constant [J s]
  double kB;    ///< Boltzmann constant [J / K]
  double muB;   ///< Bohr magneton [J / T]
  double e;     ///< elementary charge [C]
  double amu;   ///< atomic mass unit [kg]
};

inline constexpr PhysicalConstants kConstants{
    1.25663706212e-6, 1.054571817e-34, 1.380649e-23, 9.2740100783e-24, 1.602176634e-19, 1.66053906660e-27,
};

inline constexpr std::string_view kConstantsVersion = "CODATA-2018";

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

struct AtomSpecies {
  double mass;  ///< [kg]
  double F;
  double mF;
  double gF;
  double a3d;  ///< 3D s-wave scattering length [m]

  /// Magnetic moment mF gF muB [J/T].
  double moment() const noexcept { return mF * gF * kConstants.muB; }

  /// Throws PreconditionError unless mass > 0, |mF| <= F and the state is weak-field seeking.
  void validate() const;
};

/// Suspended nanowire geometry and material. Derived section properties are
/// computed on demand from the radii so they can never drift out of sync.
struct NanowireSpec {
  double length;        ///< suspended length L [m]
  double total_length;  ///< total length Ltot [m]
  double outer_radius;  ///< [m]
  double inner_radius;  ///< [m]
  double young;         ///< Young's modulus [Pa]
  double density;       ///< volumetric mass density [kg/m^3]
  double conductivity;  ///< sigma0 [S/m]
  double conduction_area;  ///< area carrying the current [m^2]

  double moment_of_inertia() const noexcept;  ///< pi (ro^4 - ri^4) / 4 [m^4]
  double cross_section() const noexcept;      ///< pi (ro^2 - ri^2) [m^2]
  double lineal_density() const noexcept;     ///< density * cross_section [kg/m]

  void validate() const;
};

/// 87Rb in |F, mF> = |2, 2>, gF = 1/2.
AtomSpecies default_rb87();

/// Calibrated multiwall nanotube. The values are not tabulated anywhere; they
/// are fitted so the beam formulas give the quoted 11.9 MHz fundamental mode
/// and ~0.2 nm room-temperature displacement for a 10 um suspension.
NanowireSpec default_mwnt();

inline constexpr std::string_view kDefaultsVersion = "1";

// JSON documents use unit-suffixed keys (mass_kg, L_m, ...). Missing keys keep
// the value from `base`; unknown keys are rejected with PreconditionError.
AtomSpecies species_from_json(const nlohmann::json& doc, const AtomSpecies& base = default_rb87());
NanowireSpec wire_from_json(const nlohmann::json& doc, const NanowireSpec& base = default_mwnt());
nlohmann::json to_json(const AtomSpecies& species);
nlohmann::json to_json(const NanowireSpec& wire);

struct DatasetDefaults {
  std::string version;
  AtomSpecies species;
  NanowireSpec wire;
};

/// Reads a versioned defaults document ({"version", "species", "wire"}).
DatasetDefaults load_defaults(const std::string& path);

}  // namespace nanotrap
