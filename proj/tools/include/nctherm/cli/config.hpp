#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "nctherm/model.hpp"
#include "nctherm/options.hpp"

namespace nctherm::cli {

struct FullConfig {
  PhysicalParams params;
  double q = 1.0;
  double beta = 1.0;
  Tolerances tol;
  PrefactorMode prefactor_mode = PrefactorMode::Reduced;
};

// Blocks: units, fields, nc, geometry, statistics, tolerances, prefactor_mode.
// Unknown keys are rejected. `overrides` has the same shape and is merged on top of
// the document before validation, so command-line flags win over file values.
FullConfig parse_config(const std::string& text, const nlohmann::json& overrides = nlohmann::json::object());
FullConfig config_from_json(const nlohmann::json& doc);

nlohmann::json config_to_json(const FullConfig& c);

}  // namespace nctherm::cli
