#pragma once

#include <array>
#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "catenae/text.hpp"

namespace catenae::text {

/// Syntactic role of an entity mention; kAbsent marks an empty grid cell.
enum class Role : char { kSubject = 's', kObject = 'o', kOther = 'x', kAbsent = '-' };

char to_char(Role role);
/// Accepts 's', 'o', 'x' and '-'; throws ValidationError otherwise.
Role role_from_char(char c);

struct EntityMention {
  std::size_t sentence_index = 0;
  std::string entity_id;
  Role role = Role::kOther;
};

/// Inclusive token span [token_start, token_end] carrying a rhetorical label.
struct RelationSpan {
  std::string label;
  std::size_t token_start = 0;
  std::size_t token_end = 0;
};

/// Grammatical modification: `dependent` modifies `head`.
struct ModifierLink {
  std::string head;
  std::string dependent;
};

using SynonymMap = std::unordered_map<std::string, std::vector<std::string>>;

struct AnnotationSet {
  std::vector<EntityMention> entity_mentions;
  std::vector<RelationSpan> relation_spans;
  std::vector<ModifierLink> modifiers;
  SynonymMap synonyms;
};

/// The closed vocabulary of rhetorical relation labels, sorted.
const std::array<std::string_view, 15>& relation_labels();
bool is_relation_label(std::string_view label);

/// Parses the annotation TSV format:
///   ent <sentence_index> <entity_id> <s|o|x>
///   rel <label> <token_start> <token_end>
///   mod <head_term> <dependent_term>
/// Blank lines and lines starting with '#' are skipped. When `doc` is given,
/// relation spans are checked against its token count. Sentence indices are
/// checked later by the entity grid. Throws ParseError (with line number) or
/// ValidationError.
AnnotationSet parse_annotations(std::istream& in, const Document* doc,
                                const std::string& source_name = "<annotations>");

AnnotationSet load_annotations(const std::string& path, const Document* doc = nullptr);
inline AnnotationSet load_annotations(const std::string& path, const Document& doc) {
  return load_annotations(path, &doc);
}

/// Synonym TSV: `term<TAB>syn1,syn2,...`. Repeated terms append in file order.
SynonymMap parse_synonyms(std::istream& in, const std::string& source_name = "<synonyms>");
SynonymMap load_synonyms(const std::string& path);

}  // namespace catenae::text
