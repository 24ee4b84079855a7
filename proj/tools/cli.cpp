#include "nanotrap/cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nanotrap/constants.hpp"
#include "nanotrap/csv.hpp"
#include "nanotrap/doublewell.hpp"
#include "nanotrap/errors.hpp"
#include "nanotrap/magnetics.hpp"
#include "nanotrap/onedgas.hpp"
#include "nanotrap/singlewell.hpp"
#include "nanotrap/stability.hpp"

namespace nanotrap::cli {

namespace {

using nlohmann::json;

constexpr double kDefaultChi = 0.067;
constexpr const char* kTable1Rows = "1000:10,250:5,250:10,100:5,100:10,50:5,25:5";
constexpr const char* kTable2Rows = "460:30,460:50,73.8:30,73.8:50,73.8:100,28.76:30,28.76:50,28.76:100";

struct CommandInfo {
  Command command;
  const char* name;
  const char* help;
};

constexpr CommandInfo kCommands[] = {
    {Command::single, "single", "Design one single-wire trap"},
    {Command::sweep_table1, "sweep-table1", "Single-wire designs for a list of I_uA:d pairs"},
    {Command::gas, "gas", "1D gas characterisation for one transverse frequency"},
    {Command::sweep_table2, "sweep-table2", "1D gas characterisation for a list of nu_kHz:N pairs"},
    {Command::stability, "stability", "Destructive-effects budget for a single-wire trap"},
    {Command::double_well, "double", "Design a two-wire double-well trap"},
    {Command::fig3, "fig3", "Double-well frequency and WKB tunnelling sweep over y0/x0"},
    {Command::grid, "grid", "Dimensionless potential on a transverse grid"},
};

std::optional<double> parse_double(const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

// "a:b,c:d" -> {(a, b), (c, d)}; nullopt on any malformed entry.
std::optional<std::vector<std::pair<double, double>>> parse_pairs(const std::string& s) {
  std::vector<std::pair<double, double>> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) return std::nullopt;
    const auto a = parse_double(item.substr(0, colon));
    const auto b = parse_double(item.substr(colon + 1));
    if (!a || !b) return std::nullopt;
    out.emplace_back(*a, *b);
  }
  if (out.empty()) return std::nullopt;
  return out;
}

const ParamSpec* find_spec(Command command, const std::string& name) {
  for (const auto& s : param_specs(command)) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

AtomSpecies species_for(const RunConfig& cfg) {
  AtomSpecies s = species_from_json(cfg.species);
  if (auto it = cfg.numbers.find("a3d"); it != cfg.numbers.end()) s.a3d = it->second;
  return s;
}

json table_to_json(const csv::Table& table) {
  json rows = json::array();
  for (const auto& row : table.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto& cell = row[i];
      json v;
      if (auto d = std::get_if<double>(&cell)) {
        v = std::isfinite(*d) ? json(*d) : json(nullptr);
      } else if (auto n = std::get_if<std::int64_t>(&cell)) {
        v = *n;
      } else if (auto t = std::get_if<std::string>(&cell)) {
        v = *t;
      }
      obj[table.columns[i]] = v;
    }
    rows.push_back(std::move(obj));
  }
  return json{{"columns", table.columns}, {"rows", rows}};
}

json meta_block(const RunConfig& cfg, const std::vector<std::string>& warnings) {
  return json{{"tool", "nanotrap"},
              {"constants_version", std::string(kConstantsVersion)},
              {"defaults_version", std::string(kDefaultsVersion)},
              {"config", config_to_json(cfg)},
              {"warnings", warnings}};
}

void collect(const SingleWellTrap& trap, std::vector<std::string>& warnings) {
  for (const auto& w : trap.warnings) warnings.push_back(w.code + ": " + w.message);
}

csv::Table double_table(const DoubleWellTrap& t, const std::optional<WkbResult>& wkb) {
  csv::Table table{{"I_uA", "x0_nm", "y0_nm", "chi", "nu_kHz", "nu0_kHz", "omega_over_omega0", "dx", "dy", "Bx_G",
                    "Bz_G", "barrier_over_hbar_omega", "gamma_over_omega", "action"},
                   {}};
  const csv::Cell gamma = wkb ? csv::Cell(wkb->ratio) : csv::Cell();
  const csv::Cell action = wkb ? csv::Cell(wkb->action) : csv::Cell();
  table.rows.push_back({t.I * 1e6, t.x0 * 1e9, t.y0 * 1e9, t.chi, t.omega / kTwoPi * 1e-3, t.omega0 / kTwoPi * 1e-3,
                        t.omega / t.omega0, t.dx, t.dy, t.Bx * 1e4, t.Bz * 1e4, t.barrier_over_hbar_omega, gamma,
                        action});
  return table;
}

csv::Table stability_table(const StabilityReport& r) {
  csv::Table table{{"metric", "value", "unit", "threshold", "pass"}, {}};
  for (const auto& m : r.metrics) {
    table.rows.push_back({m.name, m.value, m.unit, m.threshold ? csv::Cell(*m.threshold) : csv::Cell(),
                          std::string(m.pass ? "true" : "false")});
  }
  return table;
}

std::string emit(const RunConfig& cfg, const csv::Table& table, const std::vector<std::string>& warnings,
                 const json* report = nullptr) {
  std::ostringstream out;
  if (cfg.format == Format::csv) {
    table.write_csv(out);
  } else {
    json doc = report ? json{{"report", *report}} : table_to_json(table);
    doc["meta"] = meta_block(cfg, warnings);
    out << doc.dump(2) << '\n';
  }
  return out.str();
}

}  // namespace

std::string_view to_string(Command command) {
  for (const auto& c : kCommands) {
    if (c.command == command) return c.name;
  }
  return "?";
}

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& c : kCommands) {
    if (name == c.name) return c.command;
  }
  return std::nullopt;
}

const std::vector<ParamSpec>& param_specs(Command command) {
  static const std::map<Command, std::vector<ParamSpec>> specs = [] {
    const ParamSpec chi{"chi", Kind::dimensionless, json(kDefaultChi), "adiabaticity hbar omega / (mu Bz)"};
    const ParamSpec omega_z{"omega_z", Kind::frequency, json(kTwoPi * 100.0), "longitudinal trap frequency"};
    const ParamSpec a3d{"a3d", Kind::length, std::nullopt, "3D scattering length override"};
    std::map<Command, std::vector<ParamSpec>> m;
    m[Command::single] = {
        {"I", Kind::current, std::nullopt, "wire current"},
        {"d", Kind::dimensionless, std::nullopt, "y0 / l0"},
        chi,
        {"Bx", Kind::field, std::nullopt, "transverse bias (with Bz, instead of d and chi)"},
        {"Bz", Kind::field, std::nullopt, "longitudinal bias"},
    };
    m[Command::sweep_table1] = {chi, {"rows", Kind::text, json(kTable1Rows), "comma-separated I_uA:d pairs"}};
    m[Command::gas] = {
        {"omega", Kind::frequency, std::nullopt, "transverse trap frequency"},
        omega_z,
        {"N", Kind::count, json(30), "atom number"},
        a3d,
    };
    m[Command::sweep_table2] = {omega_z, {"rows", Kind::text, json(kTable2Rows), "comma-separated nu_kHz:N pairs"},
                                a3d};
    m[Command::stability] = {
        {"I", Kind::current, std::nullopt, "wire current"},
        {"d", Kind::dimensionless, std::nullopt, "y0 / l0"},
        chi,
        {"T", Kind::temperature, json(300.0), "wire temperature"},
        {"x0_pair", Kind::length, std::nullopt, "half-separation of a wire pair (enables the deflection budget)"},
        {"noise", Kind::text, json("shot"), "current noise model: shot | constant"},
        {"S_I", Kind::spectral_density, std::nullopt, "noise spectral density for --noise constant [A^2 s]"},
        {"C4", Kind::c4, json(kRb87MetalC4), "Casimir-Polder coefficient [J m^4]"},
        {"cp_distance", Kind::length, std::nullopt, "Casimir-Polder reference distance (default y0 - r_o)"},
    };
    m[Command::double_well] = {
        {"I", Kind::current, std::nullopt, "current per wire"},
        {"x0", Kind::length, std::nullopt, "wire half-separation"},
        {"y0", Kind::length, std::nullopt, "height of the minima"},
        chi,
    };
    m[Command::fig3] = {
        {"I", Kind::current, json(200e-6), "current per wire"},
        {"x0", Kind::length, json(200e-9), "wire half-separation"},
        chi,
        {"I2", Kind::current, json(1000e-6), "second current at matched omega0 (0 disables)"},
        {"ratio_min", Kind::dimensionless, json(0.05), "first y0/x0"},
        {"ratio_max", Kind::dimensionless, json(0.95), "last y0/x0"},
        {"ratio_steps", Kind::count, json(19), "number of y0/x0 samples"},
    };
    m[Command::grid] = {
        {"mode", Kind::text, json("single"), "single | double"},
        {"I", Kind::current, std::nullopt, "current per wire (double mode)"},
        {"d", Kind::dimensionless, std::nullopt, "y0 / l0 (single mode)"},
        {"x0", Kind::length, std::nullopt, "wire half-separation (double mode)"},
        {"y0", Kind::length, std::nullopt, "height of the minima (double mode)"},
        chi,
        {"nx", Kind::count, json(201), "grid points along x"},
        {"ny", Kind::count, json(201), "grid points along y"},
        {"x_min", Kind::dimensionless, std::nullopt, "grid extent [l0]"},
        {"x_max", Kind::dimensionless, std::nullopt, "grid extent [l0]"},
        {"y_min", Kind::dimensionless, std::nullopt, "grid extent [l0]"},
        {"y_max", Kind::dimensionless, std::nullopt, "grid extent [l0]"},
    };
    return m;
  }();
  return specs.at(command);
}

double paper_to_si(Kind kind) {
  switch (kind) {
    case Kind::current:
      return 1e-6;
    case Kind::length:
      return 1e-9;
    case Kind::frequency:
      return kTwoPi * 1e3;
    case Kind::field:
      return 1e-4;
    default:
      return 1.0;
  }
}

std::string Violation::message() const { return module + ": " + parameter + " violates " + bound; }

RunConfig make_config(Command command, Units units, const std::map<std::string, json>& raw) {
  RunConfig cfg;
  cfg.command = command;
  cfg.units = units;
  for (const auto& [name, value] : raw) {
    const ParamSpec* spec = find_spec(command, name);
    if (!spec) throw PreconditionError("cli", name, "unknown parameter for " + std::string(to_string(command)));
    if (spec->kind == Kind::text) {
      if (!value.is_string()) throw PreconditionError("cli", name, "must be a string");
      cfg.text[name] = value.get<std::string>();
      continue;
    }
    if (!value.is_number()) throw PreconditionError("cli", name, "must be a number");
    const double v = value.get<double>();
    if (spec->kind == Kind::count && v != std::floor(v)) throw PreconditionError("cli", name, "must be an integer");
    cfg.numbers[name] = units == Units::paper ? v * paper_to_si(spec->kind) : v;
  }
  for (const auto& spec : param_specs(command)) {
    if (!spec.default_value || cfg.has(spec.name)) continue;
    if (spec.kind == Kind::text) {
      cfg.text[spec.name] = spec.default_value->get<std::string>();
    } else {
      cfg.numbers[spec.name] = spec.default_value->get<double>();
    }
  }
  return cfg;
}

RunConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw PreconditionError("cli", "config", "must be a JSON object");
  for (const auto& item : doc.items()) {
    static const std::set<std::string> known{"command", "units", "params", "species", "wire", "output", "format"};
    if (!known.count(item.key())) throw PreconditionError("cli", item.key(), "unknown config key");
  }
  if (!doc.contains("command") || !doc.at("command").is_string()) {
    throw PreconditionError("cli", "command", "required string");
  }
  const auto command = parse_command(doc.at("command").get<std::string>());
  if (!command) throw PreconditionError("cli", "command", "one of the known subcommands");

  Units units = Units::si;
  if (doc.contains("units")) {
    const auto u = doc.at("units").get<std::string>();
    if (u == "paper") {
      units = Units::paper;
    } else if (u != "si") {
      throw PreconditionError("cli", "units", "si | paper");
    }
  }
  std::map<std::string, json> raw;
  if (doc.contains("params")) {
    if (!doc.at("params").is_object()) throw PreconditionError("cli", "params", "must be a JSON object");
    for (const auto& item : doc.at("params").items()) raw[item.key()] = item.value();
  }
  RunConfig cfg = make_config(*command, units, raw);
  if (doc.contains("species")) cfg.species = doc.at("species");
  if (doc.contains("wire")) cfg.wire = doc.at("wire");
  if (doc.contains("output")) cfg.output = doc.at("output").get<std::string>();
  if (doc.contains("format")) {
    const auto f = doc.at("format").get<std::string>();
    if (f == "json") {
      cfg.format = Format::json;
    } else if (f != "csv") {
      throw PreconditionError("cli", "format", "csv | json");
    }
  }
  return cfg;
}

json config_to_json(const RunConfig& cfg) {
  json params = json::object();
  for (const auto& [k, v] : cfg.numbers) params[k] = v;
  for (const auto& [k, v] : cfg.text) params[k] = v;
  return json{{"command", std::string(to_string(cfg.command))},
              {"units", "si"},
              {"params", params},
              {"species", cfg.species},
              {"wire", cfg.wire},
              {"format", cfg.format == Format::csv ? "csv" : "json"}};
}

std::vector<Violation> validate(const RunConfig& cfg) {
  std::vector<Violation> out;
  auto num = [&](const std::string& n) -> std::optional<double> {
    auto it = cfg.numbers.find(n);
    if (it == cfg.numbers.end()) return std::nullopt;
    return it->second;
  };
  auto txt = [&](const std::string& n) -> std::string {
    auto it = cfg.text.find(n);
    return it == cfg.text.end() ? std::string() : it->second;
  };
  auto add = [&](std::string module, std::string parameter, std::string bound) {
    out.push_back({std::move(module), std::move(parameter), std::move(bound)});
  };
  auto required_positive = [&](const char* module, const char* name) {
    const auto v = num(name);
    if (!v) {
      add(module, name, "required");
    } else if (!(*v > 0.0)) {
      add(module, name, std::string(name) + " > 0");
    }
  };
  auto optional_positive = [&](const char* module, const char* name) {
    if (const auto v = num(name); v && !(*v > 0.0)) add(module, name, std::string(name) + " > 0");
  };
  auto check_chi = [&](const char* module) {
    if (const auto chi = num("chi"); chi && !(*chi > 0.0 && *chi < 1.0)) {
      add(module, "chi", "0 < chi < 1 (adiabaticity: omega << omega_L)");
    }
  };
  auto check_count = [&](const char* module, const char* name, double min) {
    if (const auto v = num(name); v && !(*v >= min)) add(module, name, std::string(name) + " >= " + std::to_string(int(min)));
  };

  try {
    species_from_json(cfg.species).validate();
  } catch (const PreconditionError& e) {
    add(e.module(), "species." + e.parameter(), e.bound());
  }
  try {
    wire_from_json(cfg.wire);
  } catch (const PreconditionError& e) {
    add(e.module(), "wire." + e.parameter(), e.bound());
  }
  optional_positive("onedgas", "a3d");

  switch (cfg.command) {
    case Command::single: {
      required_positive("singlewell", "I");
      const bool by_d = num("d").has_value();
      const bool by_fields = num("Bx").has_value() || num("Bz").has_value();
      if (by_d && by_fields) {
        add("cli", "d, Bx, Bz", "either d or (Bx, Bz), not both");
      } else if (by_d) {
        optional_positive("singlewell", "d");
        check_chi("singlewell");
      } else if (by_fields) {
        required_positive("singlewell", "Bx");
        required_positive("singlewell", "Bz");
      } else {
        add("cli", "d, Bx, Bz", "one of d or (Bx, Bz) required");
      }
      break;
    }
    case Command::sweep_table1: {
      check_chi("singlewell");
      const auto rows = parse_pairs(txt("rows"));
      if (!rows) {
        add("cli", "rows", "comma-separated I_uA:d pairs");
      } else {
        for (const auto& [I, d] : *rows) {
          if (!(I > 0.0 && d > 0.0)) add("singlewell", "rows", "I > 0 and d > 0 in every row");
        }
      }
      break;
    }
    case Command::gas:
    case Command::sweep_table2: {
      std::vector<double> omegas;
      if (cfg.command == Command::gas) {
        required_positive("onedgas", "omega");
        check_count("onedgas", "N", 1);
        if (auto w = num("omega")) omegas.push_back(*w);
      } else {
        const auto rows = parse_pairs(txt("rows"));
        if (!rows) {
          add("cli", "rows", "comma-separated nu_kHz:N pairs");
        } else {
          for (const auto& [nu, N] : *rows) {
            if (!(nu > 0.0)) add("onedgas", "rows", "nu > 0 in every row");
            if (!(N >= 1.0 && N == std::floor(N))) add("onedgas", "rows", "integer N >= 1 in every row");
            omegas.push_back(nu * kTwoPi * 1e3);
          }
        }
      }
      required_positive("onedgas", "omega_z");
      const auto wz = num("omega_z");
      for (double w : omegas) {
        if (wz && w > 0.0 && !(*wz < w)) add("onedgas", "omega_z", "omega_z < omega");
      }
      try {
        const AtomSpecies s = species_for(cfg);
        for (double w : omegas) {
          if (!(w > 0.0 && s.a3d > 0.0)) continue;
          const double l0 = std::sqrt(kConstants.hbar / (s.mass * w));
          if (std::abs(s.a3d - cir_position(l0)) <= 1e-6 * cir_position(l0)) {
            add("onedgas", "a3d", "off the confinement-induced resonance sqrt(2) l0 / C");
          }
        }
      } catch (const PreconditionError&) {
        // already reported through the species checks
      }
      break;
    }
    case Command::stability: {
      required_positive("singlewell", "I");
      required_positive("singlewell", "d");
      check_chi("singlewell");
      if (const auto T = num("T"); T && !(*T >= 0.0)) add("stability", "T", "T >= 0");
      optional_positive("stability", "x0_pair");
      optional_positive("stability", "cp_distance");
      if (const auto c4 = num("C4"); c4 && !(*c4 >= 0.0)) add("stability", "C4", "C4 >= 0");
      const auto noise = txt("noise");
      if (noise == "constant") {
        const auto s = num("S_I");
        if (!s) {
          add("stability", "S_I", "required for --noise constant");
        } else if (!(*s >= 0.0)) {
          add("stability", "S_I", "S_I >= 0");
        }
      } else if (noise != "shot") {
        add("stability", "noise", "shot | constant");
      }
      break;
    }
    case Command::double_well: {
      required_positive("doublewell", "I");
      required_positive("doublewell", "x0");
      required_positive("doublewell", "y0");
      check_chi("doublewell");
      const auto x0 = num("x0"), y0 = num("y0");
      if (x0 && y0 && !(*x0 > *y0)) add("doublewell", "x0", "x0 > y0 (bistability)");
      break;
    }
    case Command::fig3: {
      required_positive("doublewell", "I");
      required_positive("doublewell", "x0");
      check_chi("doublewell");
      if (const auto i2 = num("I2"); i2 && !(*i2 >= 0.0)) add("doublewell", "I2", "I2 >= 0");
      const auto lo = num("ratio_min"), hi = num("ratio_max");
      if (lo && hi && !(*lo > 0.0 && *lo < *hi && *hi < 1.0)) {
        add("doublewell", "ratio_min, ratio_max", "0 < ratio_min < ratio_max < 1");
      }
      check_count("doublewell", "ratio_steps", 2);
      break;
    }
    case Command::grid: {
      const auto mode = txt("mode");
      check_chi(mode == "double" ? "doublewell" : "magnetics");
      if (mode == "single") {
        required_positive("magnetics", "d");
      } else if (mode == "double") {
        required_positive("doublewell", "I");
        required_positive("doublewell", "x0");
        required_positive("doublewell", "y0");
        const auto x0 = num("x0"), y0 = num("y0");
        if (x0 && y0 && !(*x0 > *y0)) add("doublewell", "x0", "x0 > y0 (bistability)");
      } else {
        add("magnetics", "mode", "single | double");
      }
      check_count("magnetics", "nx", 2);
      check_count("magnetics", "ny", 2);
      const auto x_min = num("x_min"), x_max = num("x_max"), y_min = num("y_min"), y_max = num("y_max");
      if (x_min && x_max && !(*x_min < *x_max)) add("magnetics", "x_min, x_max", "x_min < x_max");
      if (y_min && y_max && !(*y_min < *y_max)) add("magnetics", "y_min, y_max", "y_min < y_max");
      break;
    }
  }
  return out;
}

std::string render(const RunConfig& cfg, std::vector<std::string>* warnings_out) {
  std::vector<std::string> warnings;
  const AtomSpecies species = species_for(cfg);
  auto num = [&](const char* n) { return cfg.numbers.at(n); };
  auto opt = [&](const char* n) -> std::optional<double> {
    auto it = cfg.numbers.find(n);
    if (it == cfg.numbers.end()) return std::nullopt;
    return it->second;
  };

  std::string artifact;
  switch (cfg.command) {
    case Command::single: {
      const SingleWellTrap trap = opt("d") ? design_from_current_and_d(num("I"), num("d"), num("chi"), species)
                                           : design_from_fields(num("I"), num("Bx"), num("Bz"), species);
      collect(trap, warnings);
      artifact = emit(cfg, make_table1({trap}), warnings);
      break;
    }
    case Command::sweep_table1: {
      std::vector<SingleWellTrap> traps;
      const auto pairs = *parse_pairs(cfg.text.at("rows"));
      for (const auto& [I_uA, d] : pairs) {
        traps.push_back(design_from_current_and_d(I_uA * 1e-6, d, num("chi"), species));
        collect(traps.back(), warnings);
      }
      artifact = emit(cfg, make_table1(traps), warnings);
      break;
    }
    case Command::gas: {
      const auto g = characterize_gas(num("omega"), num("omega_z"), static_cast<std::int64_t>(num("N")), species);
      artifact = emit(cfg, make_table2({g}), warnings);
      break;
    }
    case Command::sweep_table2: {
      std::vector<GasProfile> rows;
      const auto pairs = *parse_pairs(cfg.text.at("rows"));
      for (const auto& [nu, N] : pairs) {
        rows.push_back(characterize_gas(nu * kTwoPi * 1e3, num("omega_z"), static_cast<std::int64_t>(N), species));
      }
      artifact = emit(cfg, make_table2(rows), warnings);
      break;
    }
    case Command::stability: {
      const SingleWellTrap trap = design_from_current_and_d(num("I"), num("d"), num("chi"), species);
      collect(trap, warnings);
      const NanowireSpec wire = wire_from_json(cfg.wire);
      const NoiseSpectrum spectrum =
          cfg.text.at("noise") == "constant" ? NoiseSpectrum::constant(num("S_I")) : NoiseSpectrum::shot_noise();
      ReportOptions options;
      options.pair_half_distance = opt("x0_pair");
      options.C4 = num("C4");
      options.cp_distance = opt("cp_distance");
      const StabilityReport report = stability_report(trap, wire, num("T"), species, spectrum, options);
      const json doc = to_json(report);
      artifact = emit(cfg, stability_table(report), warnings, &doc);
      break;
    }
    case Command::double_well: {
      const DoubleWellTrap trap = design_double(num("I"), num("x0"), num("y0"), num("chi"), species);
      std::optional<WkbResult> wkb;
      if (trap.barrier_over_hbar_omega > 1.0) {
        wkb = wkb_tunneling(trap);
      } else {
        warnings.push_back("no_barrier: D <= hbar omega, no WKB rate");
      }
      artifact = emit(cfg, double_table(trap, wkb), warnings);
      break;
    }
    case Command::fig3: {
      const auto grid = linear_grid(num("ratio_min"), num("ratio_max"), static_cast<int>(num("ratio_steps")));
      auto rows = fig3_sweep(num("I"), num("x0"), num("chi"), species, grid);
      if (num("I2") > 0.0) {
        const double omega0 = reference_omega0(num("I"), num("x0"), num("chi"), species);
        const double x0_2 = pair_x0_for_omega0(num("I2"), omega0, num("chi"), species);
        const auto more = fig3_sweep(num("I2"), x0_2, num("chi"), species, grid);
        rows.insert(rows.end(), more.begin(), more.end());
      }
      artifact = emit(cfg, make_fig3_table(rows), warnings);
      break;
    }
    case Command::grid: {
      const bool twin = cfg.text.at("mode") == "double";
      const double chi = num("chi");
      GridSpec spec{};
      std::function<double(DimensionlessPoint)> potential;
      if (twin) {
        const DoubleWellTrap trap = design_double(num("I"), num("x0"), num("y0"), chi, species);
        spec = {-1.5 * trap.dx, 1.5 * trap.dx, 0, 0.25 * trap.dy, 2.0 * trap.dy, 0};
        potential = [dx = trap.dx, dy = trap.dy, chi](DimensionlessPoint p) {
          return dimensionless_double_potential(p, dx, dy, chi);
        };
      } else {
        const double d = num("d");
        spec = {-2.0 * d, 2.0 * d, 0, 0.1 * d, 3.0 * d, 0};
        potential = [d, chi](DimensionlessPoint p) { return dimensionless_single_potential(p, d, chi, 0.0); };
      }
      spec.nx = static_cast<int>(num("nx"));
      spec.ny = static_cast<int>(num("ny"));
      spec.x_min = opt("x_min").value_or(spec.x_min);
      spec.x_max = opt("x_max").value_or(spec.x_max);
      spec.y_min = opt("y_min").value_or(spec.y_min);
      spec.y_max = opt("y_max").value_or(spec.y_max);
      auto guarded = [&](DimensionlessPoint p) {
        try {
          return potential(p);
        } catch (const SingularPointError&) {
          return std::numeric_limits<double>::quiet_NaN();
        }
      };
      artifact = emit(cfg, make_grid_table(evaluate_grid(spec, guarded)), warnings);
      break;
    }
  }
  if (warnings_out) *warnings_out = warnings;
  return artifact;
}

int run(const RunConfig& cfg, std::ostream& stdout_sink, std::ostream& diagnostics) {
  const auto violations = validate(cfg);
  if (!violations.empty()) {
    for (const auto& v : violations) diagnostics << "error: " << v.message() << '\n';
    return kExitValidation;
  }

  std::string artifact;
  std::vector<std::string> warnings;
  try {
    artifact = render(cfg, &warnings);
  } catch (const Error& e) {
    diagnostics << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  for (const auto& w : warnings) diagnostics << "warning: " << w << '\n';

  if (cfg.output == "-") {
    stdout_sink << artifact;
    stdout_sink.flush();
    return stdout_sink ? kExitOk : kExitIo;
  }

  namespace fs = std::filesystem;
  const fs::path target(cfg.output);
  const fs::path staging = fs::path(cfg.output + ".tmp");
  {
    std::ofstream out(staging, std::ios::binary | std::ios::trunc);
    if (!out) {
      diagnostics << "error: cannot open " << staging.string() << " for writing\n";
      return kExitIo;
    }
    out << artifact;
    out.flush();
    if (!out) {
      diagnostics << "error: write to " << staging.string() << " failed\n";
      std::error_code ignored;
      fs::remove(staging, ignored);
      return kExitIo;
    }
  }
  std::error_code ec;
  fs::rename(staging, target, ec);
  if (ec) {
    diagnostics << "error: cannot move output into place: " << ec.message() << '\n';
    fs::remove(staging, ec);
    return kExitIo;
  }
  return kExitOk;
}

namespace {

enum class LoadStatus { ok, io, parse };

LoadStatus load_json_file(const std::string& path, json& out, std::ostream& diagnostics) {
  std::ifstream in(path);
  if (!in) {
    diagnostics << "error: cannot read " << path << '\n';
    return LoadStatus::io;
  }
  try {
    out = json::parse(in);
  } catch (const json::parse_error& e) {
    diagnostics << "error: " << path << ": " << e.what() << '\n';
    return LoadStatus::parse;
  }
  return LoadStatus::ok;
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& stdout_sink, std::ostream& diagnostics) {
  CLI::App app{"Design calculator for nanowire atom waveguides", "nanotrap"};
  std::string config_path, output, format, units = "si", species_path, wire_path;
  app.add_option("--config", config_path, "Run from a JSON config document");
  app.add_option("--output,-o", output, "Output path, or - for standard output");
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--units", units, "si | paper (uA, nm, kHz, G)")->check(CLI::IsMember({"si", "paper"}));
  app.add_option("--species", species_path, "JSON species overrides");
  app.add_option("--wire", wire_path, "JSON wire overrides");
  app.require_subcommand(0, 1);

  std::map<Command, std::map<std::string, std::string>> raw_values;
  std::map<Command, CLI::App*> subcommands;
  for (const auto& info : kCommands) {
    CLI::App* sub = app.add_subcommand(info.name, info.help);
    sub->fallthrough();
    auto& values = raw_values[info.command];
    for (const auto& spec : param_specs(info.command)) {
      sub->add_option("--" + spec.name, values[spec.name], spec.help);
    }
    subcommands[info.command] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    stdout_sink << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    stdout_sink << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    diagnostics << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  std::optional<Command> chosen;
  for (const auto& [command, sub] : subcommands) {
    if (sub->parsed()) chosen = command;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) {
      if (chosen) {
        diagnostics << "error: --config and a subcommand are mutually exclusive\n";
        return kExitValidation;
      }
      json doc;
      if (auto st = load_json_file(config_path, doc, diagnostics); st != LoadStatus::ok) {
        return st == LoadStatus::io ? kExitIo : kExitValidation;
      }
      cfg = config_from_json(doc);
    } else {
      if (!chosen) {
        diagnostics << "error: a subcommand or --config is required\n" << app.help();
        return kExitValidation;
      }
      std::map<std::string, json> raw;
      for (const auto& spec : param_specs(*chosen)) {
        const CLI::App* sub = subcommands.at(*chosen);
        if (sub->get_option("--" + spec.name)->count() == 0) continue;
        const std::string& text = raw_values[*chosen][spec.name];
        if (spec.kind == Kind::text) {
          raw[spec.name] = text;
        } else if (const auto v = parse_double(text)) {
          raw[spec.name] = *v;
        } else {
          diagnostics << "error: cli: --" << spec.name << " expects a number, got '" << text << "'\n";
          return kExitValidation;
        }
      }
      cfg = make_config(*chosen, units == "paper" ? Units::paper : Units::si, raw);
    }
    if (!species_path.empty()) {
      if (auto st = load_json_file(species_path, cfg.species, diagnostics); st != LoadStatus::ok) {
        return st == LoadStatus::io ? kExitIo : kExitValidation;
      }
    }
    if (!wire_path.empty()) {
      if (auto st = load_json_file(wire_path, cfg.wire, diagnostics); st != LoadStatus::ok) {
        return st == LoadStatus::io ? kExitIo : kExitValidation;
      }
    }
  } catch (const PreconditionError& e) {
    diagnostics << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const json::exception& e) {
    diagnostics << "error: config: " << e.what() << '\n';
    return kExitValidation;
  }
  if (!output.empty()) cfg.output = output;
  if (!format.empty()) cfg.format = format == "json" ? Format::json : Format::csv;

  return run(cfg, stdout_sink, diagnostics);
}

}  // namespace nanotrap::cli
