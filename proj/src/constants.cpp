#include "nanotrap/constants.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "nanotrap/errors.hpp"

namespace nanotrap {

namespace {

constexpr const char* kModule = "constants";

void require(bool ok, const char* parameter, const char* bound) {
  if (!ok) throw PreconditionError(kModule, parameter, bound);
}

void reject_unknown_keys(const nlohmann::json& doc, const std::set<std::string>& known, const char* what) {
  if (!doc.is_object()) throw PreconditionError(kModule, what, "must be a JSON object");
  for (const auto& item : doc.items()) {
    if (!known.count(item.key())) throw PreconditionError(kModule, std::string(what) + "." + item.key(), "unknown key");
  }
}

double read_number(const nlohmann::json& doc, const char* key, double fallback) {
  if (!doc.contains(key)) return fallback;
  const auto& v = doc.at(key);
  if (!v.is_number()) throw PreconditionError(kModule, key, "must be a number");
  return v.get<double>();
}

}  // namespace

void AtomSpecies::validate() const {
  require(std::isfinite(mass) && mass > 0.0, "mass_kg", "mass > 0");
  require(F >= 0.0, "F", "F >= 0");
  require(std::abs(mF) <= F, "mF", "|mF| <= F");
  require(moment() > 0.0, "mF*gF", "mF gF muB > 0 (weak-field seeker)");
  require(std::isfinite(a3d) && a3d > 0.0, "a3d_m", "a3d > 0");
}

double NanowireSpec::moment_of_inertia() const noexcept {
  const double ro2 = outer_radius * outer_radius;
  const double ri2 = inner_radius * inner_radius;
  return kPi * (ro2 * ro2 - ri2 * ri2) / 4.0;
}

double NanowireSpec::cross_section() const noexcept {
  return kPi * (outer_radius * outer_radius - inner_radius * inner_radius);
}

double NanowireSpec::lineal_density() const noexcept { return density * cross_section(); }

void NanowireSpec::validate() const {
  require(length > 0.0, "L_m", "L > 0");
  require(total_length >= length, "Ltot_m", "L <= Ltot");
  require(inner_radius >= 0.0, "r_i_m", "r_i >= 0");
  require(outer_radius > inner_radius, "r_o_m", "r_i < r_o");
  require(young > 0.0, "Y_Pa", "Y > 0");
  require(density > 0.0, "rho_kg_m3", "rho > 0");
  require(conductivity > 0.0, "sigma0_S_m", "sigma0 > 0");
  require(conduction_area > 0.0, "A_m2", "A > 0");
}

AtomSpecies default_rb87() {
  return AtomSpecies{
      86.909180527 * kConstants.amu,
      2.0,
      2.0,
      0.5,
      5.3e-9,
  };
}

NanowireSpec default_mwnt() {
  // Solid rope, r_o = 24 nm. sigma0 and the conduction area are assumptions:
  // 1e6 S/m is a representative MWNT conductivity and the current is taken to
  // fill the whole cross section.
  constexpr double ro = 24e-9;
  return NanowireSpec{
      10e-6, 20e-6, ro, 0.0, 1.0e12, 1300.0, 1.0e6, kPi * (ro * ro),
  };
}

AtomSpecies species_from_json(const nlohmann::json& doc, const AtomSpecies& base) {
  reject_unknown_keys(doc, {"mass_kg", "F", "mF", "gF", "a3d_m"}, "species");
  AtomSpecies s{
      read_number(doc, "mass_kg", base.mass), read_number(doc, "F", base.F),   read_number(doc, "mF", base.mF),
      read_number(doc, "gF", base.gF),        read_number(doc, "a3d_m", base.a3d),
  };
  s.validate();
  return s;
}

NanowireSpec wire_from_json(const nlohmann::json& doc, const NanowireSpec& base) {
  reject_unknown_keys(doc, {"L_m", "Ltot_m", "r_o_m", "r_i_m", "Y_Pa", "rho_kg_m3", "sigma0_S_m", "A_m2"}, "wire");
  NanowireSpec w{
      read_number(doc, "L_m", base.length),
      read_number(doc, "Ltot_m", base.total_length),
      read_number(doc, "r_o_m", base.outer_radius),
      read_number(doc, "r_i_m", base.inner_radius),
      read_number(doc, "Y_Pa", base.young),
      read_number(doc, "rho_kg_m3", base.density),
      read_number(doc, "sigma0_S_m", base.conductivity),
      read_number(doc, "A_m2", base.conduction_area),
  };
  w.validate();
  return w;
}

nlohmann::json to_json(const AtomSpecies& s) {
  return {{"mass_kg", s.mass}, {"F", s.F}, {"mF", s.mF}, {"gF", s.gF}, {"a3d_m", s.a3d}};
}

nlohmann::json to_json(const NanowireSpec& w) {
  return {{"L_m", w.length},       {"Ltot_m", w.total_length},      {"r_o_m", w.outer_radius},
          {"r_i_m", w.inner_radius}, {"Y_Pa", w.young},             {"rho_kg_m3", w.density},
          {"sigma0_S_m", w.conductivity}, {"A_m2", w.conduction_area}};
}

DatasetDefaults load_defaults(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open defaults file: " + path);
  const auto doc = nlohmann::json::parse(in);
  reject_unknown_keys(doc, {"version", "species", "wire"}, "defaults");
  return DatasetDefaults{
      doc.at("version").get<std::string>(),
      species_from_json(doc.value("species", nlohmann::json::object())),
      wire_from_json(doc.value("wire", nlohmann::json::object())),
  };
}

}  // namespace nanotrap
