#pragma once

#include <string>

#include "json.hpp"
#include "stratrelease/core.hpp"

namespace stratrelease {

// Instance document schema (unknown fields rejected):
//   domain          {"lo": num, "hi": num} or {"lo": [x, y], "hi": [x, y]}
//   f, h            threshold number, {"w": [..], "b": ..}, or {"accepts": [..]}
//   support         list of classifiers in the same forms
//   prior_weights   list of positive reals summing to 1
//   prior_interval  optional {"a": .., "b": ..} continuous uniform prior
//   distribution    {"atoms": [[x, p], ..], "uniform_pieces": [[lo, hi, p], ..]}
//   cost            {"kind": "abs1d", "k": ..}, {"kind": "pnorm2d", "p": 1|2|"inf"},
//                   or {"kind": "table", "entries": [[from, to, c], ..]}
//   agents          optional [[x, y], ..] for 2-D instances
nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& doc);

std::string serialize_instance(const Instance& inst);
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);

}  // namespace stratrelease
