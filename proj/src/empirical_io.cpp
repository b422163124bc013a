#include "esamp/empirical_io.hpp"

#include <stdexcept>

namespace esamp {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json horizon_to_json(const HorizonSchedule& h) {
  ordered_json j;
  j["checkpoints"] = h.checkpoints;
  j["epsilon"] = h.epsilon;
  j["guard"] = h.guard;
  return j;
}

HorizonSchedule horizon_from_json(const json& j, size_t n) {
  HorizonSchedule h;
  h.checkpoints = j.at("checkpoints").get<std::vector<size_t>>();
  h.epsilon = j.at("epsilon").get<double>();
  h.guard = j.value("guard", h.checkpoints.empty() ? 0 : h.checkpoints.front());
  h.validate(n);
  return h;
}

ordered_json verdict_to_json(const EmpiricalVerdict& v) {
  ordered_json j;
  j["schema_version"] = 1;
  j["type"] = "verdict";
  j["classifier"] = v.classifier;
  j["status"] = to_string(v.status);
  j["n"] = v.n;
  j["horizon"] = horizon_to_json(v.horizon);
  ordered_json cs = ordered_json::array();
  for (const auto& c : v.criteria) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["value"] = c.value;
    cj["threshold"] = c.threshold;
    cj["pass"] = c.pass;
    cj["gating"] = c.gating;
    if (!c.note.empty()) cj["note"] = c.note;
    cs.push_back(std::move(cj));
  }
  j["criteria"] = std::move(cs);
  if (!v.witness.empty()) j["witness"] = v.witness;
  return j;
}

ordered_json measure_to_json(const EmpiricalMeasure& m) {
  ordered_json j;
  j["schema_version"] = 1;
  j["type"] = "measure";
  j["n"] = m.n;
  switch (m.kind) {
    case EmpiricalMeasure::Kind::FinitePmf: {
      j["kind"] = "finite_pmf";
      j["alphabet"] = m.alphabet_size;
      ordered_json ps = ordered_json::array();
      for (const auto& p : m.pmf) ps.push_back(to_string(p));
      j["pmf"] = std::move(ps);
      break;
    }
    case EmpiricalMeasure::Kind::CountablePmf: {
      j["kind"] = "countable_pmf";
      ordered_json ps = ordered_json::object();
      for (const auto& [v, p] : m.npmf) ps[std::to_string(v)] = to_string(p);
      j["pmf"] = std::move(ps);
      j["tail_mass"] = to_string(m.tail_mass);
      break;
    }
    case EmpiricalMeasure::Kind::StepCdf: {
      j["kind"] = "step_cdf";
      ordered_json atoms = ordered_json::array();
      for (size_t i = 0; i < m.xs.size(); ++i) {
        ordered_json a;
        a["x"] = m.xs[i];
        a["w"] = to_string(m.weights[i]);
        atoms.push_back(std::move(a));
      }
      j["atoms"] = std::move(atoms);
      break;
    }
  }
  return j;
}

EmpiricalMeasure measure_from_json(const json& j) {
  if (j.value("type", "") != "measure")
    throw std::invalid_argument("measure: wrong or missing type field");
  EmpiricalMeasure m;
  m.n = j.value("n", size_t{0});
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "finite_pmf") {
    m.kind = EmpiricalMeasure::Kind::FinitePmf;
    m.alphabet_size = j.at("alphabet").get<int>();
    for (const auto& p : j.at("pmf"))
      m.pmf.push_back(parse_rational(p.get<std::string>()));
    if (static_cast<int>(m.pmf.size()) != m.alphabet_size)
      throw std::invalid_argument("measure: pmf length mismatch");
  } else if (kind == "countable_pmf") {
    m.kind = EmpiricalMeasure::Kind::CountablePmf;
    for (const auto& [key, val] : j.at("pmf").items())
      m.npmf[std::stoll(key)] = parse_rational(val.get<std::string>());
    m.tail_mass = parse_rational(j.value("tail_mass", std::string("0")));
  } else if (kind == "step_cdf") {
    m.kind = EmpiricalMeasure::Kind::StepCdf;
    for (const auto& a : j.at("atoms")) {
      double x = a.at("x").get<double>();
      if (!m.xs.empty() && !(x > m.xs.back()))
        throw std::invalid_argument("measure: atoms must strictly increase");
      m.xs.push_back(x);
      m.weights.push_back(parse_rational(a.at("w").get<std::string>()));
    }
  } else {
    throw std::invalid_argument("measure: unknown kind " + kind);
  }
  if (m.total_mass() != Rational(1))
    throw std::invalid_argument("measure: mass must sum to exactly 1");
  return m;
}

}  // namespace esamp
