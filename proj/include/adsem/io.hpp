#pragma once

#include <cstdio>
#include <sstream>
#include <string>

#include <json.hpp>

#include "adsem/bounds.hpp"
#include "adsem/charges.hpp"

namespace adsem {

/// Canonical float formatting: 9 significant digits. Emitting through this
/// everywhere makes parse/re-emit round trips byte-identical.
inline std::string format_g9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Charge file (JSON): {"E0":..., "c":[...], "c_prime":[...], "J":[...],
//                      "q":..., "b0":..., "b":[...], "errors":{...}}
// ---------------------------------------------------------------------------

inline json charges_to_json(const ChargeSet& values, const ChargeSet& errors) {
  auto num = [](double v) { return json::parse(format_g9(v)); };
  auto vec = [&](const Eigen::Vector3d& v) {
    return json::array({num(v(0)), num(v(1)), num(v(2))});
  };
  json j;
  j["E0"] = num(values.E0);
  j["c"] = vec(values.c);
  j["c_prime"] = vec(values.c_prime);
  j["J"] = vec(values.J);
  j["q"] = num(values.q);
  j["b0"] = num(values.b0);
  j["b"] = vec(values.b);
  json err;
  for (ChargeId id : kAllCharges) err[charge_name(id)] = num(charge_value(errors, id));
  j["errors"] = err;
  return j;
}

inline json charges_to_json(const ChargeReport& report) {
  return charges_to_json(report.values, report.errors);
}

struct ChargeFile {
  ChargeSet values;
  ChargeSet errors;
};

inline ChargeFile charges_from_json(const json& j) {
  ChargeFile f;
  auto vec = [](const json& a) {
    return Eigen::Vector3d(a.at(0).get<double>(), a.at(1).get<double>(),
                           a.at(2).get<double>());
  };
  f.values.E0 = j.at("E0").get<double>();
  f.values.c = vec(j.at("c"));
  f.values.c_prime = vec(j.at("c_prime"));
  f.values.J = vec(j.at("J"));
  f.values.q = j.at("q").get<double>();
  f.values.b0 = j.at("b0").get<double>();
  f.values.b = vec(j.at("b"));
  if (j.contains("errors"))
    for (ChargeId id : kAllCharges) {
      const auto& err = j.at("errors");
      if (err.contains(charge_name(id)))
        charge_ref(f.errors, id) = err.at(charge_name(id)).get<double>();
    }
  return f;
}

// ---------------------------------------------------------------------------
// CSV: header `charge,value,error`, one row per charge
// ---------------------------------------------------------------------------

inline std::string charges_to_csv(const ChargeSet& values, const ChargeSet& errors) {
  std::ostringstream os;
  os << "charge,value,error\n";
  for (ChargeId id : kAllCharges)
    os << charge_name(id) << ',' << format_g9(charge_value(values, id)) << ','
       << format_g9(charge_value(errors, id)) << '\n';
  return os.str();
}

inline std::string charges_to_csv(const ChargeReport& report) {
  return charges_to_csv(report.values, report.errors);
}

inline ChargeFile charges_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != "charge,value,error")
    throw std::invalid_argument("charges_from_csv: bad header");
  ChargeFile f;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto p1 = line.find(',');
    const auto p2 = line.find(',', p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos)
      throw std::invalid_argument("charges_from_csv: bad row: " + line);
    const std::string name = line.substr(0, p1);
    const double value = std::stod(line.substr(p1 + 1, p2 - p1 - 1));
    const double error = std::stod(line.substr(p2 + 1));
    bool known = false;
    for (ChargeId id : kAllCharges)
      if (name == charge_name(id)) {
        charge_ref(f.values, id) = value;
        charge_ref(f.errors, id) = error;
        known = true;
      }
    if (!known) throw std::invalid_argument("charges_from_csv: unknown charge " + name);
  }
  return f;
}

// ---------------------------------------------------------------------------
// Bound report JSON: {E0, branches, active branch, PSD verdict, min eigenvalue}
// ---------------------------------------------------------------------------

inline json bound_report_to_json(const ChargeSet& cs) {
  auto num = [](double v) { return json::parse(format_g9(v)); };
  const QMatrix Q = build_Q(cs);
  const PsdReport psd = psd_report(Q);
  const BoundReport bounds = bound_thm52_report(cs);
  json j;
  j["E0"] = num(cs.E0);
  json branches = json::array();
  for (double b : bounds.branches) branches.push_back(num(b));
  j["branches"] = branches;
  j["bound"] = num(bounds.bound);
  j["active_branch"] = bounds.active_branch;
  j["psd"] = psd.psd;
  j["min_eigenvalue"] = num(psd.min_eigenvalue);
  j["satisfies_bound"] = cs.E0 >= bounds.bound - 1e-10;
  return j;
}

}  // namespace adsem
