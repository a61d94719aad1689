#pragma once

// OPAAL lexicon: categorized business terminology (Object, Process, Actor,
// Attribute) plus Links between terms. Parsing keeps declaration order so
// parse/serialize round-trips exactly; validation and diffing are pure.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "easinnova/diagnostics.hpp"
#include "easinnova/matrix.hpp"

namespace easinnova {

enum class TermCategory { Object, Process, Actor, Attribute };

inline constexpr std::array<TermCategory, 4> all_categories() {
  return {TermCategory::Object, TermCategory::Process, TermCategory::Actor,
          TermCategory::Attribute};
}

inline std::string_view to_string(TermCategory c) {
  switch (c) {
    case TermCategory::Object: return "object";
    case TermCategory::Process: return "process";
    case TermCategory::Actor: return "actor";
    case TermCategory::Attribute: return "attribute";
  }
  return "?";
}

inline std::optional<TermCategory> parse_category(std::string_view s) {
  if (s == "object") return TermCategory::Object;
  if (s == "process") return TermCategory::Process;
  if (s == "actor") return TermCategory::Actor;
  if (s == "attribute") return TermCategory::Attribute;
  return std::nullopt;
}

struct Term {
  std::string name;
  TermCategory category = TermCategory::Object;
  std::string description;  // optional, empty when absent
};

// Stored directionally as written; compared unordered for identity.
struct Link {
  std::string source;
  std::string target;

  bool same_pair(const Link& other) const {
    return (source == other.source && target == other.target) ||
           (source == other.target && target == other.source);
  }
};

struct OpaalLexicon {
  Stage stage = Stage::AsIs;  // ASIS or TOBE
  std::vector<Term> terms;
  std::vector<Link> links;

  bool has(const std::string& name, TermCategory category) const {
    return std::any_of(terms.begin(), terms.end(), [&](const Term& t) {
      return t.name == name && t.category == category;
    });
  }

  // All categories a name is declared under (a name may appear in several).
  std::set<TermCategory> categories_of(const std::string& name) const {
    std::set<TermCategory> out;
    for (const auto& t : terms)
      if (t.name == name) out.insert(t.category);
    return out;
  }

  std::vector<std::string> names(TermCategory category) const {
    std::vector<std::string> out;
    for (const auto& t : terms)
      if (t.category == category) out.push_back(t.name);
    return out;
  }

  bool declared(const std::string& name) const {
    return std::any_of(terms.begin(), terms.end(),
                       [&](const Term& t) { return t.name == name; });
  }

  CellId cell() const { return {Layer::Cim, stage}; }
};

// Resolution preference for names declared under several categories.
inline std::optional<TermCategory> primary_category(const OpaalLexicon& lex,
                                                    const std::string& name) {
  static constexpr std::array<TermCategory, 4> preference = {
      TermCategory::Object, TermCategory::Actor, TermCategory::Process,
      TermCategory::Attribute};
  auto cats = lex.categories_of(name);
  for (TermCategory c : preference)
    if (cats.count(c)) return c;
  return std::nullopt;
}

struct LexiconParseResult {
  OpaalLexicon lexicon;
  std::vector<Diagnostic> diagnostics;
};

namespace detail {

inline std::string lexicon_subject(Stage stage) {
  return CellId{Layer::Cim, stage}.path() + "/lexicon";
}

inline bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  return std::none_of(s.begin(), s.end(),
                      [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace detail

// Well-formed entries are loaded; malformed entries are skipped with an
// Error diagnostic. The document envelope must be a JSON object.
inline LexiconParseResult parse_lexicon(const nlohmann::json& doc) {
  LexiconParseResult result;
  OpaalLexicon& lex = result.lexicon;

  if (!doc.is_object()) {
    result.diagnostics.push_back(make_error("OPAAL-PARSE", lex.cell(),
                                            detail::lexicon_subject(lex.stage),
                                            "lexicon document is not a JSON object"));
    return result;
  }
  if (doc.contains("stage") && doc["stage"].is_string()) {
    auto stage = parse_stage(doc["stage"].get<std::string>());
    if (stage && *stage != Stage::Transformation) {
      lex.stage = *stage;
    } else {
      result.diagnostics.push_back(
          make_error("OPAAL-PARSE", lex.cell(), detail::lexicon_subject(lex.stage),
                     "unknown lexicon stage '" + doc["stage"].get<std::string>() + "'"));
    }
  }
  const std::string subject = detail::lexicon_subject(lex.stage);

  if (doc.contains("terms")) {
    if (!doc["terms"].is_array()) {
      result.diagnostics.push_back(
          make_error("OPAAL-PARSE", lex.cell(), subject, "'terms' must be an array"));
    } else {
      for (const auto& entry : doc["terms"]) {
        if (!entry.is_object() || !entry.contains("name") || !entry["name"].is_string() ||
            !entry.contains("category") || !entry["category"].is_string()) {
          result.diagnostics.push_back(make_error(
              "OPAAL-PARSE", lex.cell(), subject,
              "term entry must be an object with string 'name' and 'category'"));
          continue;
        }
        Term term;
        term.name = entry["name"].get<std::string>();
        if (!detail::valid_identifier(term.name)) {
          result.diagnostics.push_back(make_error(
              "OPAAL-PARSE", lex.cell(), subject,
              "term name '" + term.name + "' must be non-empty without whitespace"));
          continue;
        }
        auto category = parse_category(entry["category"].get<std::string>());
        if (!category) {
          result.diagnostics.push_back(make_error(
              "OPAAL-PARSE", lex.cell(), subject,
              "unknown category '" + entry["category"].get<std::string>() + "' for term '" +
                  term.name + "'"));
          continue;
        }
        term.category = *category;
        if (entry.contains("description") && entry["description"].is_string())
          term.description = entry["description"].get<std::string>();
        if (lex.has(term.name, term.category)) {
          result.diagnostics.push_back(make_warning(
              "OPAAL-DUP", lex.cell(), subject,
              "duplicate declaration of " + std::string(to_string(term.category)) +
                  " term '" + term.name + "' skipped"));
          continue;
        }
        lex.terms.push_back(std::move(term));
      }
    }
  }

  if (doc.contains("links")) {
    if (!doc["links"].is_array()) {
      result.diagnostics.push_back(
          make_error("OPAAL-PARSE", lex.cell(), subject, "'links' must be an array"));
    } else {
      for (const auto& entry : doc["links"]) {
        if (!entry.is_object() || !entry.contains("source") || !entry["source"].is_string() ||
            !entry.contains("target") || !entry["target"].is_string()) {
          result.diagnostics.push_back(make_error(
              "OPAAL-PARSE", lex.cell(), subject,
              "link entry must be an object with string 'source' and 'target'"));
          continue;
        }
        Link link{entry["source"].get<std::string>(), entry["target"].get<std::string>()};
        if (!detail::valid_identifier(link.source) || !detail::valid_identifier(link.target)) {
          result.diagnostics.push_back(
              make_error("OPAAL-PARSE", lex.cell(), subject,
                         "link endpoints must be non-empty without whitespace"));
          continue;
        }
        lex.links.push_back(std::move(link));
      }
    }
  }

  sort_diagnostics(result.diagnostics);
  return result;
}

inline nlohmann::ordered_json serialize_lexicon(const OpaalLexicon& lex) {
  nlohmann::ordered_json doc;
  doc["stage"] = std::string(to_string(lex.stage));
  doc["terms"] = nlohmann::ordered_json::array();
  for (const auto& term : lex.terms) {
    nlohmann::ordered_json t;
    t["name"] = term.name;
    t["category"] = std::string(to_string(term.category));
    if (!term.description.empty()) t["description"] = term.description;
    doc["terms"].push_back(std::move(t));
  }
  doc["links"] = nlohmann::ordered_json::array();
  for (const auto& link : lex.links) {
    doc["links"].push_back({{"source", link.source}, {"target", link.target}});
  }
  return doc;
}

struct LexiconValidationSettings {
  bool gerund_lint = true;
};

// Per-stage defaults mirror the paper's own naming shift between the AsIs
// and ToBe lexicons: lint gerunds for AsIs, not for ToBe.
inline LexiconValidationSettings default_lexicon_settings(Stage stage) {
  return {.gerund_lint = stage == Stage::AsIs};
}

// Names referenced by process models of the same stage; used only by the
// OPAAL-ORPHAN check. Leave empty when validating a lexicon standalone.
struct ModelUsage {
  std::set<std::string> used_names;
};

namespace detail {

// A Process term passes the gerund lint when at least one of its CamelCase
// words ends in "ing" (SubmittingOrder passes, SubmitOrder does not).
inline bool contains_gerund(const std::string& name) {
  std::vector<std::string> words;
  std::string current;
  for (char ch : name) {
    if ((std::isupper(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-') &&
        !current.empty()) {
      words.push_back(current);
      current.clear();
    }
    if (ch != '_' && ch != '-') current += ch;
  }
  if (!current.empty()) words.push_back(current);
  for (auto& w : words) {
    if (w.size() >= 3) {
      std::string tail = w.substr(w.size() - 3);
      std::transform(tail.begin(), tail.end(), tail.begin(),
                     [](unsigned char c) { return std::tolower(c); });
      if (tail == "ing") return true;
    }
  }
  return false;
}

}  // namespace detail

// R1 only: link endpoints must resolve to declared terms. Shared between
// validate_lexicon and the consistency rule engine.
inline std::vector<Diagnostic> check_link_endpoints(const OpaalLexicon& lex) {
  std::vector<Diagnostic> out;
  const std::string subject = detail::lexicon_subject(lex.stage);
  std::set<std::string> reported;
  for (const auto& link : lex.links) {
    for (const std::string& endpoint : {link.source, link.target}) {
      if (!lex.declared(endpoint) && reported.insert(endpoint).second) {
        out.push_back(make_error("R1", lex.cell(), subject,
                                 "link endpoint '" + endpoint +
                                     "' is not a declared term (link " + link.source + "-" +
                                     link.target + ")"));
      }
    }
  }
  sort_diagnostics(out);
  return out;
}

inline std::vector<Diagnostic> validate_lexicon(const OpaalLexicon& lex,
                                                const LexiconValidationSettings& settings,
                                                const ModelUsage& usage = {}) {
  std::vector<Diagnostic> out = check_link_endpoints(lex);
  const std::string subject = detail::lexicon_subject(lex.stage);

  // OPAAL-XCAT: one warning per name declared under several categories.
  std::map<std::string, std::set<TermCategory>> by_name;
  for (const auto& term : lex.terms) by_name[term.name].insert(term.category);
  for (const auto& [name, cats] : by_name) {
    if (cats.size() > 1) {
      std::string list;
      for (TermCategory c : cats) {
        if (!list.empty()) list += ", ";
        list += to_string(c);
      }
      out.push_back(make_warning("OPAAL-XCAT", lex.cell(), subject,
                                 "term '" + name + "' is declared in several categories (" +
                                     list + ")"));
    }
  }

  if (settings.gerund_lint) {
    for (const auto& term : lex.terms) {
      if (term.category == TermCategory::Process && !detail::contains_gerund(term.name)) {
        out.push_back(make_warning(
            "OPAAL-GERUND", lex.cell(), subject,
            "process term '" + term.name + "' does not contain a gerund ('...ing')"));
      }
    }
  }

  // OPAAL-ORPHAN: declared but used nowhere (no link, no model reference).
  std::set<std::string> linked;
  for (const auto& link : lex.links) {
    linked.insert(link.source);
    linked.insert(link.target);
  }
  for (const auto& [name, cats] : by_name) {
    if (!linked.count(name) && !usage.used_names.count(name)) {
      out.push_back(make_info("OPAAL-ORPHAN", lex.cell(), subject,
                              "term '" + name + "' participates in no link and no process model"));
    }
  }

  // Ambiguous link endpoints resolve by category preference; report it.
  std::set<std::string> ambiguous_reported;
  for (const auto& link : lex.links) {
    for (const std::string& endpoint : {link.source, link.target}) {
      auto cats = lex.categories_of(endpoint);
      if (cats.size() > 1 && ambiguous_reported.insert(endpoint).second) {
        out.push_back(make_info(
            "OPAAL-AMBIG", lex.cell(), subject,
            "link endpoint '" + endpoint + "' is ambiguous; resolved as " +
                std::string(to_string(*primary_category(lex, endpoint)))));
      }
    }
  }

  sort_diagnostics(out);
  return out;
}

struct CategoryDiff {
  std::set<std::string> added;
  std::set<std::string> removed;
  std::set<std::string> kept;
};

struct LexiconDiff {
  std::map<TermCategory, CategoryDiff> categories;
};

inline LexiconDiff diff_lexicons(const OpaalLexicon& a, const OpaalLexicon& b) {
  LexiconDiff diff;
  for (TermCategory category : all_categories()) {
    auto names_a = a.names(category);
    auto names_b = b.names(category);
    std::set<std::string> set_a(names_a.begin(), names_a.end());
    std::set<std::string> set_b(names_b.begin(), names_b.end());
    CategoryDiff& cd = diff.categories[category];
    for (const auto& n : set_b)
      (set_a.count(n) ? cd.kept : cd.added).insert(n);
    for (const auto& n : set_a)
      if (!set_b.count(n)) cd.removed.insert(n);
  }
  return diff;
}

struct UseCase {
  std::string actor;
  std::string action;

  auto operator<=>(const UseCase&) const = default;
};

// One use case per link whose endpoints are (Actor, Process) in either
// order. Links with unresolvable endpoints contribute nothing.
inline std::vector<UseCase> derive_use_cases(const OpaalLexicon& lex) {
  std::vector<UseCase> out;
  for (const auto& link : lex.links) {
    auto src = lex.categories_of(link.source);
    auto tgt = lex.categories_of(link.target);
    if (src.count(TermCategory::Actor) && tgt.count(TermCategory::Process)) {
      out.push_back({link.source, link.target});
    } else if (tgt.count(TermCategory::Actor) && src.count(TermCategory::Process)) {
      out.push_back({link.target, link.source});
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct SkeletonClass {
  std::string name;
  std::vector<std::string> attributes;

  bool operator==(const SkeletonClass&) const = default;
};

struct Association {
  std::string source;
  std::string target;
  std::string label;  // optional

  auto operator<=>(const Association&) const = default;
};

struct ClassModelSkeleton {
  std::vector<SkeletonClass> classes;
  std::vector<Association> associations;

  bool operator==(const ClassModelSkeleton&) const = default;

  const SkeletonClass* find_class(const std::string& name) const {
    for (const auto& c : classes)
      if (c.name == name) return &c;
    return nullptr;
  }
};

// Classes are the Object and Actor terms. A link whose far endpoint is
// declared as an Attribute attaches it to the class; a link between two
// class terms becomes an association. Other links belong to the use-case
// and process views and are skipped here.
inline ClassModelSkeleton derive_class_skeleton(const OpaalLexicon& lex) {
  ClassModelSkeleton skeleton;
  std::set<std::string> class_names;
  for (const auto& term : lex.terms) {
    if (term.category == TermCategory::Object || term.category == TermCategory::Actor)
      class_names.insert(term.name);
  }
  for (const auto& name : class_names) skeleton.classes.push_back({name, {}});

  auto add_attribute = [&](const std::string& class_name, const std::string& attribute) {
    for (auto& c : skeleton.classes) {
      if (c.name == class_name) {
        if (std::find(c.attributes.begin(), c.attributes.end(), attribute) ==
            c.attributes.end())
          c.attributes.push_back(attribute);
        return;
      }
    }
  };

  std::vector<Association> associations;
  for (const auto& link : lex.links) {
    auto src = lex.categories_of(link.source);
    auto tgt = lex.categories_of(link.target);
    const bool src_is_class = class_names.count(link.source) > 0;
    const bool tgt_is_class = class_names.count(link.target) > 0;
    if (src_is_class && tgt.count(TermCategory::Attribute)) {
      add_attribute(link.source, link.target);
    } else if (tgt_is_class && src.count(TermCategory::Attribute)) {
      add_attribute(link.target, link.source);
    } else if (src_is_class && tgt_is_class) {
      Association assoc{link.source, link.target, ""};
      bool duplicate = std::any_of(associations.begin(), associations.end(),
                                   [&](const Association& a) {
                                     return (a.source == assoc.source && a.target == assoc.target) ||
                                            (a.source == assoc.target && a.target == assoc.source);
                                   });
      if (!duplicate) associations.push_back(std::move(assoc));
    }
  }
  std::sort(associations.begin(), associations.end());
  skeleton.associations = std::move(associations);
  for (auto& c : skeleton.classes) std::sort(c.attributes.begin(), c.attributes.end());
  return skeleton;
}

inline nlohmann::ordered_json use_cases_to_json(Stage stage, std::span<const UseCase> ucs) {
  nlohmann::ordered_json doc;
  doc["stage"] = std::string(to_string(stage));
  doc["use_cases"] = nlohmann::ordered_json::array();
  for (const auto& uc : ucs)
    doc["use_cases"].push_back({{"actor", uc.actor}, {"action", uc.action}});
  return doc;
}

inline nlohmann::ordered_json skeleton_to_json(Stage stage, const ClassModelSkeleton& sk) {
  nlohmann::ordered_json doc;
  doc["stage"] = std::string(to_string(stage));
  doc["classes"] = nlohmann::ordered_json::array();
  for (const auto& c : sk.classes) {
    nlohmann::ordered_json cls;
    cls["name"] = c.name;
    cls["attributes"] = c.attributes;
    doc["classes"].push_back(std::move(cls));
  }
  doc["associations"] = nlohmann::ordered_json::array();
  for (const auto& a : sk.associations) {
    nlohmann::ordered_json assoc;
    assoc["source"] = a.source;
    assoc["target"] = a.target;
    if (!a.label.empty()) assoc["label"] = a.label;
    doc["associations"].push_back(std::move(assoc));
  }
  return doc;
}

}  // namespace easinnova
