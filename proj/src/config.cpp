#include "corrdyn/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "corrdyn/errors.hpp"
#include "corrdyn/pauli.hpp"

namespace corrdyn {

namespace {

using json = nlohmann::json;
using cplx = std::complex<double>;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where, "expected a finite number");
  return v;
}

Eigen::Vector3d vec3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) fail(where, "expected an array of 3 numbers");
  return {number(j[0], where), number(j[1], where), number(j[2], where)};
}

Eigen::Matrix3d mat3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) fail(where, "expected a 3x3 array");
  Eigen::Matrix3d m;
  for (int r = 0; r < 3; ++r) m.row(r) = vec3(j[r], where).transpose();
  return m;
}

Task parse_task(const std::string& s) {
  if (s == "evolve") return Task::Evolve;
  if (s == "spectrum") return Task::Spectrum;
  if (s == "resolvent") return Task::Resolvent;
  if (s == "decompose") return Task::Decompose;
  if (s == "validate") return Task::Validate;
  fail("tasks", "unknown task \"" + s + "\"");
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing key \"") + key + "\"");
  return *it;
}

InitialState parse_initial(const json& j, int n) {
  if (!j.is_object()) fail("initial_state", "expected an object");
  const std::string type = require(j, "type", "initial_state").get<std::string>();
  InitialState s;
  if (type == "product") {
    s.kind = InitialState::Kind::Product;
    const json& b = require(j, "bloch", "initial_state");
    if (!b.is_array() || static_cast<int>(b.size()) != n) fail("initial_state.bloch", "need one vector per site");
    for (std::size_t i = 0; i < b.size(); ++i) {
      const std::string where = "initial_state.bloch[" + std::to_string(i) + "]";
      const Eigen::Vector3d v = vec3(b[i], where);
      if (v.norm() > 1.0 + 1e-12) fail(where, "Bloch vector longer than 1");
      s.bloch.push_back(v);
    }
  } else if (type == "named") {
    s.kind = InitialState::Kind::Named;
    s.name = require(j, "name", "initial_state").get<std::string>();
    if (s.name != "cat" && s.name != "ghz" && s.name != "w")
      fail("initial_state.name", "unknown state \"" + s.name + "\" (cat, ghz, w)");
    if (n < 2) fail("initial_state", "named states need at least 2 sites");
    if (j.contains("phase")) s.phase = number(j["phase"], "initial_state.phase");
  } else if (type == "correlators") {
    s.kind = InitialState::Kind::Correlators;
    const json& v = require(j, "values", "initial_state");
    if (!v.is_object()) fail("initial_state.values", "expected an object of label: value");
    for (auto it = v.begin(); it != v.end(); ++it) {
      const std::string where = "initial_state.values[\"" + it.key() + "\"]";
      const double x = number(it.value(), where);
      if (std::abs(x) > 1.0) fail(where, "correlator outside [-1, 1]");
      const PauliString p = parse_pauli_string(it.key(), n);
      if (!p.is_cartesian()) fail(where, "initial correlators must use x, y, z axes");
      if (p.is_identity()) fail(where, "the identity slot is fixed at 1");
      s.values.emplace_back(index_of(p).code, x);
    }
  } else if (type == "random_pure") {
    s.kind = InitialState::Kind::RandomPure;
    const json& seed = require(j, "seed", "initial_state");
    if (!seed.is_number_unsigned()) fail("initial_state.seed", "expected a nonnegative integer");
    s.seed = seed.get<std::uint64_t>();
  } else {
    fail("initial_state.type", "unknown type \"" + type + "\"");
  }
  return s;
}

}  // namespace

std::string_view task_name(Task t) {
  switch (t) {
    case Task::Evolve: return "evolve";
    case Task::Spectrum: return "spectrum";
    case Task::Resolvent: return "resolvent";
    case Task::Decompose: return "decompose";
    case Task::Validate: return "validate";
  }
  return "?";
}

Observable parse_observable(std::string_view label, int n_sites) {
  const PauliString s = parse_pauli_string(label, n_sites);
  if (s.is_identity()) throw ParseError("observable \"" + std::string(label) + "\" is the identity");
  Observable obs{std::string(label), !s.is_cartesian(), {{0, cplx(1.0)}}};
  const double r = 1.0 / std::sqrt(2.0);
  for (int site = 0; site < n_sites; ++site) {
    std::vector<std::pair<int, cplx>> factors;
    switch (s.axis(site)) {
      case Axis::I: continue;
      case Axis::Plus: factors = {{1, r}, {2, cplx(0, r)}}; break;
      case Axis::Minus: factors = {{1, r}, {2, cplx(0, -r)}}; break;
      default: factors = {{static_cast<int>(s.axis(site)), 1.0}};
    }
    std::vector<std::pair<std::uint64_t, cplx>> next;
    for (const auto& [code, w] : obs.terms)
      for (const auto& [digit, f] : factors) next.emplace_back(code::with_digit(code, site, digit), w * f);
    obs.terms = std::move(next);
  }
  return obs;
}

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("config: expected a top-level object");

  try {
    const json& sites = require(doc, "sites", "config");
    if (!sites.is_number_integer() || sites.get<int>() < 1 || sites.get<int>() > kMaxSites)
      fail("sites", "expected an integer in 1.." + std::to_string(kMaxSites));
    const int n = sites.get<int>();
    RunConfig cfg{SpinHamiltonian(n), {}, {}, {}, {}, {}, {}};

    if (doc.contains("fields")) {
      const json& f = doc["fields"];
      if (!f.is_array() || static_cast<int>(f.size()) != n) fail("fields", "need one 3-vector per site");
      for (int i = 0; i < n; ++i) cfg.hamiltonian.set_field(i, vec3(f[i], "fields[" + std::to_string(i) + "]"));
    }
    if (doc.contains("couplings")) {
      const json& cs = doc["couplings"];
      if (!cs.is_array()) fail("couplings", "expected an array");
      for (std::size_t k = 0; k < cs.size(); ++k) {
        const std::string where = "couplings[" + std::to_string(k) + "]";
        const json& c = cs[k];
        if (!c.is_object()) fail(where, "expected an object {i, j, V}");
        const json& i = require(c, "i", where);
        const json& j = require(c, "j", where);
        if (!i.is_number_integer() || !j.is_number_integer()) fail(where, "i and j must be integers");
        const int a = i.get<int>(), b = j.get<int>();
        if (a < 0 || b >= n || a >= b) fail(where, "need 0 <= i < j < sites");
        cfg.hamiltonian.add_coupling(a, b, mat3(require(c, "V", where), where + ".V"));
      }
    }

    cfg.initial = parse_initial(require(doc, "initial_state", "config"), n);

    if (doc.contains("time")) {
      const json& t = doc["time"];
      if (!t.is_object()) fail("time", "expected an object");
      if (t.contains("t_max")) cfg.time.t_max = number(t["t_max"], "time.t_max");
      if (cfg.time.t_max < 0) fail("time.t_max", "must be >= 0");
      if (t.contains("dt")) {
        cfg.time.dt = number(t["dt"], "time.dt");
        if (cfg.time.dt <= 0) fail("time.dt", "must be > 0");
      }
      if (t.contains("stride")) {
        if (!t["stride"].is_number_unsigned() || t["stride"].get<std::size_t>() == 0)
          fail("time.stride", "must be a positive integer");
        cfg.time.stride = t["stride"].get<std::size_t>();
      }
      if (t.contains("method")) {
        const std::string m = t["method"].get<std::string>();
        if (m == "rk4")
          cfg.time.method = Integrator::Rk4;
        else if (m == "taylor")
          cfg.time.method = Integrator::Taylor;
        else
          fail("time.method", "expected \"rk4\" or \"taylor\"");
      }
    }

    if (doc.contains("observables")) {
      const json& o = doc["observables"];
      if (!o.is_array()) fail("observables", "expected an array of labels");
      for (const auto& label : o) {
        if (!label.is_string()) fail("observables", "labels must be strings");
        cfg.observables.push_back(parse_observable(label.get<std::string>(), n));
      }
    }

    const json& tasks = require(doc, "tasks", "config");
    if (!tasks.is_array() || tasks.empty()) fail("tasks", "expected a nonempty array");
    for (const auto& t : tasks) {
      if (!t.is_string()) fail("tasks", "task names must be strings");
      cfg.tasks.push_back(parse_task(t.get<std::string>()));
    }

    if (doc.contains("spectrum")) {
      const json& s = doc["spectrum"];
      if (s.contains("epsilon")) {
        cfg.spectrum.epsilon = number(s["epsilon"], "spectrum.epsilon");
        if (*cfg.spectrum.epsilon <= 0) fail("spectrum.epsilon", "must be > 0");
      }
      if (s.contains("omega_min")) cfg.spectrum.omega_min = number(s["omega_min"], "spectrum.omega_min");
      if (s.contains("omega_max")) cfg.spectrum.omega_max = number(s["omega_max"], "spectrum.omega_max");
      if (s.contains("points")) {
        if (!s["points"].is_number_unsigned() || s["points"].get<std::size_t>() < 2)
          fail("spectrum.points", "must be an integer >= 2");
        cfg.spectrum.grid_points = s["points"].get<std::size_t>();
      }
    }

    if (doc.contains("resolvent")) {
      const json& zs = require(doc["resolvent"], "z", "resolvent");
      if (!zs.is_array()) fail("resolvent.z", "expected an array of [re, im] pairs");
      for (const auto& z : zs) {
        if (!z.is_array() || z.size() != 2) fail("resolvent.z", "expected [re, im]");
        cfg.resolvent_points.emplace_back(number(z[0], "resolvent.z"), number(z[1], "resolvent.z"));
      }
    }

    if (doc.contains("validate") && doc["validate"].contains("tolerance"))
      cfg.validate_tolerance = number(doc["validate"]["tolerance"], "validate.tolerance");

    return cfg;
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace corrdyn
