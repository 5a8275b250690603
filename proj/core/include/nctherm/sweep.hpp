#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "nctherm/domain_gate.hpp"
#include "nctherm/model.hpp"
#include "nctherm/options.hpp"

namespace nctherm::sweep {

enum class Spacing { Linear, Log };

// Axis variables: q beta theta theta_scaled B E1 E2 omega_c omega0
struct Axis {
  std::string variable;
  double start = 0.0;
  double stop = 1.0;
  int count = 2;
  Spacing spacing = Spacing::Linear;

  std::vector<double> values() const;
};

struct SweepSpec {
  std::vector<Axis> axes;
  std::vector<std::string> quantities;  // subset of logZ Z U C F M chi
  PhysicalParams base;
  double q = 1.0;
  double beta = 1.0;
  bool skip_invalid = true;
  PrefactorMode prefactor_mode = PrefactorMode::Reduced;
  Tolerances tol;
  unsigned workers = 1;
  std::string preset;  // empty unless built by preset()

  // InvalidSpec on any broken invariant.
  void validate() const;
};

using Cell = std::variant<std::monostate, double, std::string>;

struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  nlohmann::json meta;
};

// Row-major over the axes, first axis slowest. Throws AllPointsInvalid when nothing
// passes the gate, DomainRejected on the first rejected point when !skip_invalid.
SweepTable run(const SweepSpec& spec);

enum class Format { Csv, Json };
Format format_from_string(const std::string& s);

void emit(const SweepTable& t, Format f, std::ostream& os);
void emit(const SweepTable& t, Format f, const std::string& path);  // IoFailure

SweepTable table_from_json(const nlohmann::json& j);

// fig1..fig6; InvalidSpec for anything else.
SweepSpec preset(const std::string& name);
std::vector<std::string> preset_names();

bool is_axis_variable(const std::string& v);
bool is_quantity(const std::string& v);

void to_json(nlohmann::json& j, const SweepSpec& s);

}  // namespace nctherm::sweep
