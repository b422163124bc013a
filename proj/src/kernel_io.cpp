#include "esamp/kernel_io.hpp"

#include <stdexcept>

namespace esamp {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json space_to_json(const FiniteSpace& s) {
  ordered_json j;
  j["label"] = s.label();
  j["size"] = s.size();
  if (s.has_names()) {
    ordered_json names = ordered_json::array();
    for (int i = 0; i < s.size(); ++i) names.push_back(s.name_of(i));
    j["names"] = std::move(names);
  }
  return j;
}

FiniteSpace space_from_json(const json& j) {
  if (!j.is_object() || !j.contains("size"))
    throw std::invalid_argument("space: expected object with 'size'");
  std::string label = j.value("label", std::string("X"));
  int size = j.at("size").get<int>();
  if (j.contains("names")) {
    std::vector<std::string> names = j.at("names").get<std::vector<std::string>>();
    if (static_cast<int>(names.size()) != size)
      throw std::invalid_argument("space: names/size mismatch");
    return FiniteSpace(std::move(label), std::move(names));
  }
  return FiniteSpace(std::move(label), size);
}

ordered_json kernel_to_json(const PartialKernel& k) {
  ordered_json j;
  j["source"] = space_to_json(k.source());
  j["target"] = space_to_json(k.target());
  ordered_json rows = ordered_json::object();
  for (const auto& [x, row] : k.rows()) {
    ordered_json arr = ordered_json::array();
    for (const Rational& p : row) arr.push_back(to_string(p));
    rows[k.source().name_of(x)] = std::move(arr);
  }
  j["rows"] = std::move(rows);
  return j;
}

PartialKernel kernel_from_json(const json& j) {
  FiniteSpace src = space_from_json(j.at("source"));
  FiniteSpace tgt = space_from_json(j.at("target"));
  if (!j.contains("rows") || !j.at("rows").is_object())
    throw std::invalid_argument("kernel: expected 'rows' object");
  PartialKernel::Rows rows;
  for (const auto& [key, val] : j.at("rows").items()) {
    int x = src.index_of(key);
    if (x < 0)
      throw std::invalid_argument("kernel: unknown source element '" + key + "'");
    PartialKernel::Row row;
    for (const auto& cell : val) row.push_back(parse_rational(cell.get<std::string>()));
    if (!rows.emplace(x, std::move(row)).second)
      throw std::invalid_argument("kernel: duplicate row for '" + key + "'");
  }
  return PartialKernel(std::move(src), std::move(tgt), std::move(rows));
}

}  // namespace esamp
