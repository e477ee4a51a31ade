#pragma once

#include <map>
#include <string>

#include "catenae/slogic.hpp"

namespace catenae::slogic {

/// Parses a fusion tree:
///   {"op":"consensus","children":[...]}
///   {"op":"discount","trust":{...},"target":{...}}
///   {"b":..,"d":..,"u":..,"a":..}  or evidence  {"r":..,"s":..,"a":..}
/// Leaves may carry an "id". Syntax errors throw ParseError, bad structure
/// ValidationError.
FusionNode parse_fusion_tree(const std::string& json_text, const std::string& source = "<tree>");
FusionNode load_fusion_tree(const std::string& path);

/// A forest for ranking: {"query":"q1","docs":{"d1":<tree>, ...}}.
struct FusionForest {
  std::string query_id = "q1";
  std::map<std::string, FusionNode> trees;
};

FusionForest parse_fusion_forest(const std::string& json_text, const std::string& source = "<forest>");
FusionForest load_fusion_forest(const std::string& path);

/// {"b":..,"d":..,"u":..,"a":..,"expectation":..} with round-trip precision.
std::string opinion_to_json(const Opinion& w);

}  // namespace catenae::slogic
