#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace nanotrap::cli {

enum class Command { single, sweep_table1, gas, sweep_table2, stability, double_well, fig3, grid };
enum class Units { si, paper };
enum class Format { csv, json };

std::string_view to_string(Command command);
std::optional<Command> parse_command(std::string_view name);

/// Physical kind of a parameter; decides the --units paper conversion.
enum class Kind { current, length, frequency, field, temperature, dimensionless, count, spectral_density, c4, text };

struct ParamSpec {
  std::string name;
  Kind kind;
  /// SI default for numeric kinds, literal default for text; absent means optional/required per command.
  std::optional<nlohmann::json> default_value;
  std::string help;
};

const std::vector<ParamSpec>& param_specs(Command command);

/// Multiplier taking a value in paper units (uA, nm, kHz with 2 pi factored
/// out, G) to SI. Identity for every other kind.
double paper_to_si(Kind kind);

/// A fully normalised run request. Numeric parameters are stored in SI
/// whatever units they were supplied in.
struct RunConfig {
  Command command = Command::single;
  Units units = Units::si;
  std::map<std::string, double> numbers;
  std::map<std::string, std::string> text;
  nlohmann::json species = nlohmann::json::object();  ///< overrides on top of 87Rb
  nlohmann::json wire = nlohmann::json::object();     ///< overrides on top of the default MWNT
  std::string output = "-";
  Format format = Format::csv;

  bool has(const std::string& name) const { return numbers.count(name) || text.count(name); }
};

struct Violation {
  std::string module;
  std::string parameter;
  std::string bound;

  std::string message() const;
};

/// Adds defaults and converts raw values supplied in `units` to SI. Raw
/// values are JSON numbers (or strings for text parameters). Unknown
/// parameter names throw PreconditionError.
RunConfig make_config(Command command, Units units, const std::map<std::string, nlohmann::json>& raw);

/// Parses a --config document:
///   {"command", "units", "params": {...}, "species": {...}, "wire": {...}, "output", "format"}
RunConfig config_from_json(const nlohmann::json& doc);

/// Canonical echo of a config (SI, defaults filled, no output path).
nlohmann::json config_to_json(const RunConfig& config);

/// Empty iff run() would pass every precondition check.
std::vector<Violation> validate(const RunConfig& config);

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitIo = 3;

/// Produces the artifact bytes for a valid config. Throws on model errors.
std::string render(const RunConfig& config, std::vector<std::string>* warnings = nullptr);

/// Validates, renders, and writes the artifact (write-then-rename, or to
/// `stdout_sink` when output is "-"). Returns an exit status.
int run(const RunConfig& config, std::ostream& stdout_sink, std::ostream& diagnostics);

/// Full command-line entry point.
int main_entry(int argc, const char* const* argv, std::ostream& stdout_sink, std::ostream& diagnostics);

}  // namespace nanotrap::cli
