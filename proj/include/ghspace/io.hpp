#pragma once

#include <json.hpp>

#include <string>

#include "ghspace/core.hpp"
#include "ghspace/family.hpp"
#include "ghspace/pointed.hpp"
#include "ghspace/spider.hpp"

namespace ghspace {

// Space file schema: { "labels": [string...], "dist": [[number...]...] }.
// Doubles are emitted with shortest round-trip precision, so a save/load
// cycle reproduces the matrix bit-exactly. Unknown keys are ignored on
// load, which lets spider files carry their layout alongside the matrix.

nlohmann::json space_to_json(const MetricSpace& m);
MetricSpace space_from_json(const nlohmann::json& j);

MetricSpace load_space(const std::string& path);
void save_space(const MetricSpace& m, const std::string& path,
                const nlohmann::json* extra = nullptr);

// SpiderParams: { "a": [numbers], "N": int } (N must match a's length).
nlohmann::json spider_params_to_json(const SpiderParams& p);
SpiderParams spider_params_from_json(const nlohmann::json& j);

// Layout block for white-box tests: { "leg": [ints], "s": [numbers] }.
nlohmann::json spider_layout_to_json(const SpiderLayout& l);

// FamilyConfig:
// { "anchors": [space...], "anchor_points": [[x,y]...], "grid": int,
//   "m": int?, "spider": {"legs": int, "grid": int}, "wedge": [ints]?,
//   "product_cap": int? }
nlohmann::json family_config_to_json(const FamilyConfig& cfg);
FamilyConfig family_config_from_json(const nlohmann::json& j);
FamilyConfig load_family_config(const std::string& path);

// Rough-isometry certificate:
// { "R": number | "inf", "eps": number, "map": [ints, -1 off the ball],
//   "verdict": bool, "violations": [{"condition","i","j","amount"}...] }
nlohmann::json cert_to_json(const RoughIsometryCert& c);
RoughIsometryCert cert_from_json(const nlohmann::json& j);

}  // namespace ghspace
