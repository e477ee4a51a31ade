#include "catenae/fusion_json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "catenae/error.hpp"

namespace catenae::slogic {

namespace {

using nlohmann::json;

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + upto, '\n'));
    throw ParseError(source, line, e.what());
  }
}

double number_field(const json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number()) {
    throw ValidationError(fmt::format("{}: field '{}' must be a number", where, key));
  }
  return it->get<double>();
}

FusionNode node_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) throw ValidationError(fmt::format("{}: fusion node must be an object", where));
  if (const auto op = j.find("op"); op != j.end()) {
    if (!op->is_string()) throw ValidationError(fmt::format("{}: 'op' must be a string", where));
    const auto name = op->get<std::string>();
    if (name == "consensus") {
      const auto c = j.find("children");
      if (c == j.end() || !c->is_array()) {
        throw ValidationError(fmt::format("{}: consensus needs a 'children' array", where));
      }
      std::vector<FusionNode> children;
      for (std::size_t i = 0; i < c->size(); ++i) {
        children.push_back(node_from_json((*c)[i], fmt::format("{}.children[{}]", where, i)));
      }
      if (children.size() < 2) {
        throw ValidationError(fmt::format("{}: consensus needs at least 2 children", where));
      }
      return FusionNode::consensus(std::move(children));
    }
    if (name == "discount") {
      if (!j.contains("trust") || !j.contains("target")) {
        throw ValidationError(fmt::format("{}: discount needs 'trust' and 'target'", where));
      }
      return FusionNode::discount(node_from_json(j["trust"], where + ".trust"),
                                  node_from_json(j["target"], where + ".target"));
    }
    throw ValidationError(fmt::format("{}: unknown op '{}'", where, name));
  }

  std::string id;
  if (const auto it = j.find("id"); it != j.end() && it->is_string()) id = it->get<std::string>();
  const double a = j.contains("a") ? number_field(j, "a", where) : 0.5;
  Opinion w;
  if (j.contains("r") || j.contains("s")) {
    const double r = j.contains("r") ? number_field(j, "r", where) : 0.0;
    const double s = j.contains("s") ? number_field(j, "s", where) : 0.0;
    try {
      w = opinion_from_evidence(r, s, a);
    } catch (const ParameterError& e) {
      throw ValidationError(fmt::format("{}: {}", where, e.what()));
    }
  } else {
    w = {number_field(j, "b", where), number_field(j, "d", where), number_field(j, "u", where), a};
  }
  try {
    validate(w);
  } catch (const ValidationError& e) {
    throw ValidationError(fmt::format("{}: {}", where, e.what()));
  }
  return FusionNode::leaf(w, std::move(id));
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

FusionNode parse_fusion_tree(const std::string& json_text, const std::string& source) {
  return node_from_json(parse_json(json_text, source), source);
}

FusionNode load_fusion_tree(const std::string& path) { return parse_fusion_tree(slurp(path), path); }

FusionForest parse_fusion_forest(const std::string& json_text, const std::string& source) {
  const auto j = parse_json(json_text, source);
  if (!j.is_object() || !j.contains("docs") || !j["docs"].is_object()) {
    throw ValidationError(fmt::format("{}: forest needs a 'docs' object", source));
  }
  FusionForest forest;
  if (const auto q = j.find("query"); q != j.end()) {
    if (!q->is_string()) throw ValidationError(fmt::format("{}: 'query' must be a string", source));
    forest.query_id = q->get<std::string>();
  }
  for (const auto& [doc, tree] : j["docs"].items()) {
    forest.trees.emplace(doc, node_from_json(tree, fmt::format("{}.docs.{}", source, doc)));
  }
  return forest;
}

FusionForest load_fusion_forest(const std::string& path) { return parse_fusion_forest(slurp(path), path); }

std::string opinion_to_json(const Opinion& w) {
  return fmt::format(R"({{"b":{:.17g},"d":{:.17g},"u":{:.17g},"a":{:.17g},"expectation":{:.17g}}})", w.b,
                     w.d, w.u, w.a, expectation(w));
}

}  // namespace catenae::slogic
