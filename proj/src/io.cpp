#include "ghspace/io.hpp"

#include <fstream>
#include <limits>
#include <stdexcept>

namespace ghspace {

nlohmann::json space_to_json(const MetricSpace& m) {
  nlohmann::json j;
  j["labels"] = m.labels();
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto row = nlohmann::json::array();
    for (std::size_t k = 0; k < m.size(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  j["dist"] = std::move(rows);
  return j;
}

MetricSpace space_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("labels") || !j.contains("dist"))
    throw std::invalid_argument("space json: need 'labels' and 'dist'");
  std::vector<std::string> labels = j.at("labels").get<std::vector<std::string>>();
  const auto& rows = j.at("dist");
  if (!rows.is_array())
    throw std::invalid_argument("space json: 'dist' must be an array of rows");
  std::vector<std::vector<double>> d;
  d.reserve(rows.size());
  for (const auto& row : rows) d.push_back(row.get<std::vector<double>>());
  return MetricSpace::from_rows(std::move(labels), d);
}

MetricSpace load_space(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  return space_from_json(j);
}

void save_space(const MetricSpace& m, const std::string& path,
                const nlohmann::json* extra) {
  nlohmann::json j = space_to_json(m);
  if (extra)
    for (auto it = extra->begin(); it != extra->end(); ++it) j[it.key()] = *it;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(1) << "\n";
}

nlohmann::json spider_params_to_json(const SpiderParams& p) {
  return {{"a", p.a}, {"N", p.a.size()}};
}

SpiderParams spider_params_from_json(const nlohmann::json& j) {
  SpiderParams p;
  p.a = j.at("a").get<std::vector<double>>();
  if (j.contains("N") && j.at("N").get<std::size_t>() != p.a.size())
    throw std::invalid_argument("spider params json: N does not match a");
  return p;
}

nlohmann::json spider_layout_to_json(const SpiderLayout& l) {
  std::vector<std::size_t> legs;
  std::vector<double> s;
  for (const auto& node : l.nodes) {
    legs.push_back(node.leg);
    s.push_back(node.s);
  }
  return {{"leg", legs}, {"s", s}};
}

nlohmann::json family_config_to_json(const FamilyConfig& cfg) {
  nlohmann::json j;
  auto anchors = nlohmann::json::array();
  for (const auto& a : cfg.anchors) anchors.push_back(space_to_json(a));
  j["anchors"] = std::move(anchors);
  j["anchor_points"] = cfg.anchor_points;
  j["grid"] = cfg.grid;
  if (cfg.branch_count) j["m"] = cfg.branch_count;
  j["spider"] = {{"legs", cfg.spider_legs}, {"grid", cfg.spider_grid}};
  if (!cfg.wedge.empty()) j["wedge"] = cfg.wedge;
  j["product_cap"] = cfg.product_cap;
  return j;
}

FamilyConfig family_config_from_json(const nlohmann::json& j) {
  FamilyConfig cfg;
  for (const auto& a : j.at("anchors")) cfg.anchors.push_back(space_from_json(a));
  for (const auto& v : j.at("anchor_points"))
    cfg.anchor_points.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
  if (j.contains("grid")) cfg.grid = j.at("grid").get<std::size_t>();
  if (j.contains("m")) cfg.branch_count = j.at("m").get<std::size_t>();
  if (j.contains("spider")) {
    cfg.spider_legs = j.at("spider").at("legs").get<std::size_t>();
    cfg.spider_grid = j.at("spider").at("grid").get<std::size_t>();
  }
  if (j.contains("wedge"))
    cfg.wedge = j.at("wedge").get<std::vector<std::size_t>>();
  if (j.contains("product_cap"))
    cfg.product_cap = j.at("product_cap").get<std::size_t>();
  normalize_config(cfg);
  return cfg;
}

FamilyConfig load_family_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  return family_config_from_json(j);
}

nlohmann::json cert_to_json(const RoughIsometryCert& c) {
  nlohmann::json j;
  if (c.R == std::numeric_limits<double>::infinity())
    j["R"] = "inf";
  else
    j["R"] = c.R;
  j["eps"] = c.eps;
  std::vector<long long> map;
  for (std::size_t v : c.map)
    map.push_back(v == kUnmapped ? -1 : static_cast<long long>(v));
  j["map"] = std::move(map);
  j["verdict"] = c.verdict;
  auto viol = nlohmann::json::array();
  for (const auto& v : c.violations)
    viol.push_back({{"condition", v.condition},
                    {"i", v.i},
                    {"j", v.j},
                    {"amount", v.amount}});
  j["violations"] = std::move(viol);
  return j;
}

RoughIsometryCert cert_from_json(const nlohmann::json& j) {
  RoughIsometryCert c;
  if (j.at("R").is_string()) {
    if (j.at("R").get<std::string>() != "inf")
      throw std::invalid_argument("cert json: R must be a number or \"inf\"");
    c.R = std::numeric_limits<double>::infinity();
  } else {
    c.R = j.at("R").get<double>();
  }
  c.eps = j.at("eps").get<double>();
  for (long long v : j.at("map").get<std::vector<long long>>())
    c.map.push_back(v < 0 ? kUnmapped : static_cast<std::size_t>(v));
  c.verdict = j.at("verdict").get<bool>();
  if (j.contains("violations"))
    for (const auto& v : j.at("violations"))
      c.violations.push_back({v.at("condition").get<int>(),
                              v.at("i").get<std::size_t>(),
                              v.at("j").get<std::size_t>(),
                              v.at("amount").get<double>()});
  return c;
}

}  // namespace ghspace
