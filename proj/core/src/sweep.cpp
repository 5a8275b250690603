#include "nctherm/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "nctherm/error.hpp"
#include "nctherm/thermo.hpp"
#include "nctherm/version.hpp"

namespace nctherm::sweep {

namespace {

const std::vector<std::string> kAxisVars = {"q",  "beta", "theta",   "theta_scaled", "B",
                                            "E1", "E2",   "omega_c", "omega0"};
const std::vector<std::string> kQuantities = {"logZ", "Z", "U", "C", "F", "M", "chi"};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Point {
  double q, beta;
  PhysicalParams p;
};

Point make_point(const SweepSpec& spec, const std::vector<double>& coords) {
  Point pt{spec.q, spec.beta, spec.base};
  double g = 0.0;
  bool set_g = false;
  for (std::size_t i = 0; i < spec.axes.size(); ++i) {
    const std::string& v = spec.axes[i].variable;
    const double x = coords[i];
    if (v == "q") pt.q = x;
    else if (v == "beta") pt.beta = x;
    else if (v == "theta") pt.p.theta = x;
    else if (v == "theta_scaled") g = x, set_g = true;
    else if (v == "B") pt.p.B = x;
    else if (v == "E1") pt.p.E1 = x;
    else if (v == "E2") pt.p.E2 = x;
    else if (v == "omega_c") pt.p = with_omega_c(pt.p, x);
    else if (v == "omega0") pt.p.omega0 = x;
  }
  // theta_scaled depends on the field, so it goes last
  if (set_g) pt.p = with_theta_scaled(pt.p, g);
  return pt;
}

Cell quantity_cell(const ThermoSet& t, const std::string& name) {
  double v = 0.0;
  if (name == "logZ") v = t.logZ;
  else if (name == "Z") {
    if (t.Z_overflow) return std::monostate{};
    v = t.Z;
  } else if (name == "U") v = t.U;
  else if (name == "C") v = t.C_heat;
  else if (name == "F") v = t.F;
  else if (name == "M") v = t.Mag;
  else if (name == "chi") v = t.Chi;
  if (!std::isfinite(v)) return std::monostate{};
  return v;
}

struct Outcome {
  std::vector<Cell> row;
  bool accepted = false;
  std::string reason;
};

Outcome evaluate_point(const SweepSpec& spec, const std::vector<double>& coords) {
  Outcome o;
  for (double c : coords) o.row.emplace_back(c);
  const std::size_t nq = spec.quantities.size();
  std::string label = "Invalid";
  try {
    const Point pt = make_point(spec, coords);
    gate::GateOptions gopt;
    gopt.eps_q = spec.tol.eps_q;
    gopt.eps_theta = spec.tol.eps_theta;
    const gate::DomainReport rep = gate::classify(pt.q, pt.p, pt.beta, gopt);
    label = std::string(gate::to_string(rep.domain_label));
    if (rep.accepted()) {
      o.accepted = true;
      ThermoOptions to;
      to.mode = spec.prefactor_mode;
      to.eps_q = spec.tol.eps_q;
      try {
        const ThermoSet t = evaluate(StatState(pt.q, pt.beta, pt.p), to);
        for (const auto& name : spec.quantities) o.row.push_back(quantity_cell(t, name));
      } catch (const Error&) {
        o.row.resize(o.row.size() + nq);
      }
    } else {
      o.reason = rep.reason();
      o.row.resize(o.row.size() + nq);
    }
  } catch (const Error& e) {
    o.reason = e.what();
    o.row.resize(coords.size() + nq);
  }
  o.row.emplace_back(label);
  return o;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::vector<double> Axis::values() const {
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    if (spacing == Spacing::Log)
      v[i] = std::exp(std::log(start) + t * (std::log(stop) - std::log(start)));
    else
      v[i] = start + t * (stop - start);
  }
  // pin the endpoints exactly
  v.front() = start;
  v.back() = stop;
  return v;
}

bool is_axis_variable(const std::string& v) {
  return std::find(kAxisVars.begin(), kAxisVars.end(), v) != kAxisVars.end();
}

bool is_quantity(const std::string& v) {
  return std::find(kQuantities.begin(), kQuantities.end(), v) != kQuantities.end();
}

void SweepSpec::validate() const {
  if (axes.empty() || axes.size() > 3) raise(Errc::InvalidSpec, "need 1 to 3 axes");
  std::set<std::string> seen;
  for (const Axis& a : axes) {
    if (!is_axis_variable(a.variable)) raise(Errc::InvalidSpec, "unknown axis variable '" + a.variable + "'");
    if (!seen.insert(a.variable).second) raise(Errc::InvalidSpec, "axis '" + a.variable + "' repeated");
    if (a.count < 2) raise(Errc::InvalidSpec, "axis '" + a.variable + "' needs count >= 2");
    if (!(a.start < a.stop)) raise(Errc::InvalidSpec, "axis '" + a.variable + "' needs start < stop");
    if (a.spacing == Spacing::Log && !(a.start > 0))
      raise(Errc::InvalidSpec, "log axis '" + a.variable + "' needs start > 0");
  }
  std::set<std::string> qs;
  for (const auto& q : quantities) {
    if (!is_quantity(q)) raise(Errc::InvalidSpec, "unknown quantity '" + q + "'");
    if (!qs.insert(q).second) raise(Errc::InvalidSpec, "quantity '" + q + "' repeated");
  }
}

SweepTable run(const SweepSpec& spec) {
  spec.validate();
  std::vector<std::vector<double>> grids;
  std::size_t total = 1;
  for (const Axis& a : spec.axes) {
    grids.push_back(a.values());
    total *= grids.back().size();
  }

  std::vector<std::vector<double>> coords(total);
  for (std::size_t r = 0; r < total; ++r) {
    std::size_t rem = r;
    coords[r].resize(grids.size());
    for (std::size_t k = grids.size(); k-- > 0;) {
      coords[r][k] = grids[k][rem % grids[k].size()];
      rem /= grids[k].size();
    }
  }

  std::vector<Outcome> out(total);
  unsigned workers = spec.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : spec.workers;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));
  if (workers <= 1) {
    for (std::size_t r = 0; r < total; ++r) out[r] = evaluate_point(spec, coords[r]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t r; (r = next.fetch_add(1)) < total;) out[r] = evaluate_point(spec, coords[r]);
      });
    for (auto& t : pool) t.join();
  }

  std::size_t accepted = 0;
  for (std::size_t r = 0; r < total; ++r) {
    if (out[r].accepted) {
      ++accepted;
    } else if (!spec.skip_invalid) {
      std::ostringstream msg;
      msg << "row " << r << " rejected: " << out[r].reason;
      raise(Errc::DomainRejected, msg.str());
    }
  }
  if (accepted == 0) raise(Errc::AllPointsInvalid, "no grid point passed the domain gate");

  SweepTable t;
  for (const Axis& a : spec.axes) t.columns.push_back(a.variable);
  for (const auto& q : spec.quantities) t.columns.push_back(q);
  t.columns.push_back("domain_label");
  t.rows.reserve(total);
  for (auto& o : out) t.rows.push_back(std::move(o.row));

  nlohmann::json spec_json;
  to_json(spec_json, spec);
  t.meta = {{"tool", "nctherm"},
            {"version", kVersion},
            {"timestamp", utc_timestamp()},
            {"spec", spec_json},
            {"accepted_points", accepted},
            {"total_points", total}};
  if (!spec.preset.empty())
    t.meta["note"] = "preset ranges are tool defaults; the source figures print no axis values";
  return t;
}

Format format_from_string(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  raise(Errc::InvalidSpec, "unknown format '" + s + "' (csv|json)");
}

void emit(const SweepTable& t, Format f, std::ostream& os) {
  if (f == Format::Csv) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_field(t.columns[i]);
    os << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) os << ',';
        if (const auto* d = std::get_if<double>(&row[i])) os << format_double(*d);
        else if (const auto* s = std::get_if<std::string>(&row[i])) os << csv_field(*s);
      }
      os << '\n';
    }
    return;
  }
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& c : row) {
      if (const auto* d = std::get_if<double>(&c)) r.push_back(*d);
      else if (const auto* s = std::get_if<std::string>(&c)) r.push_back(*s);
      else r.push_back(nullptr);
    }
    rows.push_back(std::move(r));
  }
  nlohmann::json j{{"meta", t.meta}, {"columns", t.columns}, {"rows", std::move(rows)}};
  os << j.dump(2) << '\n';
}

void emit(const SweepTable& t, Format f, const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) raise(Errc::IoFailure, "cannot open '" + path + "': " + std::strerror(errno));
  emit(t, f, os);
  os.flush();
  if (!os) raise(Errc::IoFailure, "write to '" + path + "' failed: " + std::strerror(errno));
}

SweepTable table_from_json(const nlohmann::json& j) {
  SweepTable t;
  try {
    t.meta = j.at("meta");
    t.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& r : j.at("rows")) {
      std::vector<Cell> row;
      for (const auto& c : r) {
        if (c.is_null()) row.emplace_back(std::monostate{});
        else if (c.is_number()) row.emplace_back(c.get<double>());
        else row.emplace_back(c.get<std::string>());
      }
      t.rows.push_back(std::move(row));
    }
  } catch (const nlohmann::json::exception& e) {
    raise(Errc::ParseError, std::string("sweep table: ") + e.what());
  }
  return t;
}

std::vector<std::string> preset_names() { return {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6"}; }

SweepSpec preset(const std::string& name) {
  SweepSpec s;
  s.preset = name;
  if (name == "fig1") {  // Z over (q, beta)
    s.axes = {{"q", 1.01, 1.35, 20, Spacing::Linear}, {"beta", 0.1, 10.0, 30, Spacing::Log}};
    s.quantities = {"logZ", "Z"};
  } else if (name == "fig2") {  // contour of Z across q = 1
    s.axes = {{"q", 0.9, 1.3, 41, Spacing::Linear}, {"beta", 0.1, 10.0, 41, Spacing::Log}};
    s.quantities = {"Z"};
  } else if (name == "fig3") {  // cross sections: Z against beta for a few q
    s.axes = {{"q", 0.9, 1.3, 5, Spacing::Linear}, {"beta", 0.1, 10.0, 40, Spacing::Log}};
    s.quantities = {"logZ", "Z"};
  } else if (name == "fig4") {  // sensitivity to theta and omega_c
    s.axes = {{"theta", 0.0, 0.4, 21, Spacing::Linear}, {"omega_c", 0.5, 2.0, 16, Spacing::Linear}};
    s.q = 1.1;
    s.quantities = {"logZ", "Z"};
  } else if (name == "fig5") {  // M against q for a few theta
    s.axes = {{"theta", 0.0, 0.2, 3, Spacing::Linear}, {"q", 1.05, 1.35, 31, Spacing::Linear}};
    s.prefactor_mode = PrefactorMode::Full;
    s.quantities = {"M"};
  } else if (name == "fig6") {  // chi against B at high beta
    s.axes = {{"theta", 0.0, 0.1, 3, Spacing::Linear}, {"B", 0.1, 3.0, 30, Spacing::Log}};
    s.q = 1.05;
    s.beta = 5.0;
    s.prefactor_mode = PrefactorMode::Full;
    s.quantities = {"chi"};
  } else {
    raise(Errc::InvalidSpec, "unknown preset '" + name + "' (fig1..fig6)");
  }
  return s;
}

void to_json(nlohmann::json& j, const SweepSpec& s) {
  nlohmann::json axes = nlohmann::json::array();
  for (const Axis& a : s.axes)
    axes.push_back({{"variable", a.variable},
                    {"start", a.start},
                    {"stop", a.stop},
                    {"count", a.count},
                    {"spacing", a.spacing == Spacing::Log ? "log" : "linear"}});
  nlohmann::json base;
  to_json(base, s.base);
  j = nlohmann::json{{"axes", axes},
                     {"quantities", s.quantities},
                     {"q", s.q},
                     {"beta", s.beta},
                     {"params", base},
                     {"skip_invalid", s.skip_invalid},
                     {"prefactor_mode", std::string(to_string(s.prefactor_mode))}};
  if (!s.preset.empty()) j["preset"] = s.preset;
}

}  // namespace nctherm::sweep
