#include "nctherm/cli/config.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <optional>

#include "nctherm/error.hpp"

namespace nctherm::cli {

namespace {

using Setter = std::function<void(FullConfig&, double)>;

const std::map<std::string, std::map<std::string, Setter>>& schema() {
  static const std::map<std::string, std::map<std::string, Setter>> s = {
      {"units",
       {{"hbar", [](FullConfig& c, double v) { c.params.hbar = v; }},
        {"kB", [](FullConfig& c, double v) { c.params.k_B = v; }},
        {"M", [](FullConfig& c, double v) { c.params.mass = v; }},
        {"e", [](FullConfig& c, double v) { c.params.charge = v; }},
        {"c", [](FullConfig& c, double v) { c.params.light_speed = v; }}}},
      {"fields",
       {{"B", [](FullConfig& c, double v) { c.params.B = v; }},
        {"E1", [](FullConfig& c, double v) { c.params.E1 = v; }},
        {"E2", [](FullConfig& c, double v) { c.params.E2 = v; }},
        {"omega0", [](FullConfig& c, double v) { c.params.omega0 = v; }},
        {"omega_c", nullptr}}},  // converted to B once the units are known
      {"nc", {{"theta", [](FullConfig& c, double v) { c.params.theta = v; }}, {"theta_scaled", nullptr}}},
      {"geometry",
       {{"R", [](FullConfig& c, double v) { c.params.R = v; }},
        {"Lz", [](FullConfig& c, double v) { c.params.Lz = v; }}}},
      {"statistics",
       {{"q", [](FullConfig& c, double v) { c.q = v; }},
        {"beta", [](FullConfig& c, double v) { c.beta = v; }},
        {"n", [](FullConfig& c, double v) { c.params.n = v; }}}},
      {"tolerances",
       {{"rel_tol", [](FullConfig& c, double v) { c.tol.rel_tol = v; }},
        {"eps_q", [](FullConfig& c, double v) { c.tol.eps_q = v; }},
        {"eps_theta", [](FullConfig& c, double v) { c.tol.eps_theta = v; }},
        {"fd_eps1", [](FullConfig& c, double v) { c.tol.fd_eps1 = v; }},
        {"fd_eps2", [](FullConfig& c, double v) { c.tol.fd_eps2 = v; }}}},
  };
  return s;
}

[[noreturn]] void invalid(const std::string& key, const std::string& what) {
  raise(Errc::ValidationError, key + ": " + what);
}

void positive(const std::string& key, double v) {
  if (!(v > 0) || !std::isfinite(v)) invalid(key, "must be > 0");
}

std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line, col = 1;
    else ++col;
  }
  return {line, col};
}

}  // namespace

FullConfig config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) raise(Errc::ValidationError, "config: top level must be an object");
  FullConfig c;
  std::optional<double> omega_c, theta_scaled;
  bool theta_given = false;

  for (const auto& [block, body] : doc.items()) {
    if (block == "prefactor_mode") {
      if (!body.is_string()) invalid(block, "must be \"Full\" or \"Reduced\"");
      try {
        c.prefactor_mode = prefactor_mode_from_string(body.get<std::string>());
      } catch (const Error&) {
        invalid(block, "must be \"Full\" or \"Reduced\"");
      }
      continue;
    }
    const auto it = schema().find(block);
    if (it == schema().end()) invalid(block, "unknown key");
    if (!body.is_object()) invalid(block, "must be an object");
    for (const auto& [key, val] : body.items()) {
      const std::string path = block + "." + key;
      const auto k = it->second.find(key);
      if (k == it->second.end()) invalid(path, "unknown key");
      if (!val.is_number()) invalid(path, "must be a number");
      const double v = val.get<double>();
      if (!std::isfinite(v)) invalid(path, "must be finite");
      if (key == "omega_c") omega_c = v;
      else if (key == "theta_scaled") theta_scaled = v;
      else k->second(c, v);
      if (key == "theta") theta_given = true;
    }
  }

  positive("units.hbar", c.params.hbar);
  positive("units.kB", c.params.k_B);
  positive("units.M", c.params.mass);
  positive("units.e", c.params.charge);
  positive("units.c", c.params.light_speed);
  positive("geometry.R", c.params.R);
  positive("geometry.Lz", c.params.Lz);
  positive("statistics.n", c.params.n);
  positive("statistics.beta", c.beta);
  positive("tolerances.rel_tol", c.tol.rel_tol);
  positive("tolerances.fd_eps1", c.tol.fd_eps1);
  positive("tolerances.fd_eps2", c.tol.fd_eps2);
  if (c.tol.eps_q < 0) invalid("tolerances.eps_q", "must be >= 0");
  if (c.tol.eps_theta < 0) invalid("tolerances.eps_theta", "must be >= 0");
  if (c.params.omega0 < 0) invalid("fields.omega0", "must be >= 0");

  if (!(c.q > 0)) invalid("statistics.q", "q must be > 0");
  if (std::fabs(c.q - 1.5) <= c.tol.eps_q)
    invalid("statistics.q", "q excluded: critical boundary");

  if (omega_c) {
    positive("fields.omega_c", *omega_c);
    if (doc.contains("fields") && doc["fields"].contains("B")) invalid("fields.omega_c", "give either B or omega_c");
    c.params = with_omega_c(c.params, *omega_c);
  }
  positive("fields.B", c.params.B);

  if (theta_scaled) {
    if (theta_given) invalid("nc.theta_scaled", "give either theta or theta_scaled");
    if (*theta_scaled < 0) invalid("nc.theta_scaled", "theta must be ≥ 0");
    c.params = with_theta_scaled(c.params, *theta_scaled);
  }
  if (c.params.theta < 0) invalid("nc.theta", "theta must be ≥ 0");

  try {
    c.params.validate();
  } catch (const Error& e) {
    raise(Errc::ValidationError, e.what());
  }
  return c;
}

FullConfig parse_config(const std::string& text, const nlohmann::json& overrides) {
  nlohmann::json doc;
  try {
    doc = text.find_first_not_of(" \t\r\n") == std::string::npos ? nlohmann::json::object()
                                                                  : nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    raise(Errc::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
  if (!doc.is_object()) raise(Errc::ValidationError, "config: top level must be an object");
  // theta and theta_scaled are alternatives; a flag for one replaces a file value for the other
  if (overrides.contains("nc") && doc.contains("nc") && doc["nc"].is_object()) {
    if (overrides["nc"].contains("theta")) doc["nc"].erase("theta_scaled");
    if (overrides["nc"].contains("theta_scaled")) doc["nc"].erase("theta");
  }
  if (overrides.contains("fields") && doc.contains("fields") && doc["fields"].is_object()) {
    if (overrides["fields"].contains("B")) doc["fields"].erase("omega_c");
    if (overrides["fields"].contains("omega_c")) doc["fields"].erase("B");
  }
  doc.merge_patch(overrides);
  return config_from_json(doc);
}

nlohmann::json config_to_json(const FullConfig& c) {
  const PhysicalParams& p = c.params;
  return {{"units", {{"hbar", p.hbar}, {"kB", p.k_B}, {"M", p.mass}, {"e", p.charge}, {"c", p.light_speed}}},
          {"fields", {{"B", p.B}, {"E1", p.E1}, {"E2", p.E2}, {"omega0", p.omega0}}},
          {"nc", {{"theta", p.theta}}},
          {"geometry", {{"R", p.R}, {"Lz", p.Lz}}},
          {"statistics", {{"q", c.q}, {"beta", c.beta}, {"n", p.n}}},
          {"tolerances",
           {{"rel_tol", c.tol.rel_tol},
            {"eps_q", c.tol.eps_q},
            {"eps_theta", c.tol.eps_theta},
            {"fd_eps1", c.tol.fd_eps1},
            {"fd_eps2", c.tol.fd_eps2}}},
          {"prefactor_mode", std::string(to_string(c.prefactor_mode))}};
}

}  // namespace nctherm::cli
