#pragma once

// Minimal namespace-aware XML reader covering the subset BPMN interchange
// needs: prolog, comments, CDATA, elements with single/double quoted
// attributes, self-closing tags, the five predefined entities and numeric
// character references. DOCTYPE and processing beyond the prolog are
// rejected. Throws XmlError on anything malformed.

#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace easinnova::xml {

struct XmlError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Element {
  std::string name;  // qualified name as written, e.g. "bpmn:definitions"
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<Element> children;
  std::string text;  // concatenated character data

  std::optional<std::string> attribute(const std::string& key) const {
    for (const auto& [k, v] : attributes)
      if (k == key) return v;
    return std::nullopt;
  }
};

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view input) : input_(input) {}

  Element parse_document() {
    skip_prolog();
    Element root = parse_element();
    skip_misc();
    if (pos_ != input_.size()) fail("content after document element");
    return root;
  }

 private:
  std::string_view input_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& message) const {
    throw XmlError("malformed XML at offset " + std::to_string(pos_) + ": " + message);
  }

  bool eof() const { return pos_ >= input_.size(); }
  char peek() const { return input_[pos_]; }
  bool starts_with(std::string_view s) const { return input_.substr(pos_, s.size()) == s; }

  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  void skip_comment() {
    pos_ += 4;  // "<!--"
    auto end = input_.find("-->", pos_);
    if (end == std::string_view::npos) fail("unterminated comment");
    pos_ = end + 3;
  }

  void skip_misc() {
    for (;;) {
      skip_ws();
      if (starts_with("<!--")) {
        skip_comment();
      } else if (starts_with("<?")) {
        auto end = input_.find("?>", pos_);
        if (end == std::string_view::npos) fail("unterminated processing instruction");
        pos_ = end + 2;
      } else {
        return;
      }
    }
  }

  void skip_prolog() {
    skip_ws();
    if (starts_with("<?xml")) {
      auto end = input_.find("?>", pos_);
      if (end == std::string_view::npos) fail("unterminated XML declaration");
      pos_ = end + 2;
    }
    skip_misc();
    if (starts_with("<!DOCTYPE")) fail("DOCTYPE is not supported");
  }

  static bool name_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':';
  }
  static bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':' || c == '-' ||
           c == '.';
  }

  std::string parse_name() {
    if (eof() || !name_start(peek())) fail("expected a name");
    std::size_t start = pos_;
    while (!eof() && name_char(peek())) ++pos_;
    return std::string(input_.substr(start, pos_ - start));
  }

  std::string decode_entities(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] != '&') {
        out += raw[i];
        continue;
      }
      auto semi = raw.find(';', i);
      if (semi == std::string_view::npos) fail("unterminated entity reference");
      std::string_view entity = raw.substr(i + 1, semi - i - 1);
      if (entity == "lt")
        out += '<';
      else if (entity == "gt")
        out += '>';
      else if (entity == "amp")
        out += '&';
      else if (entity == "quot")
        out += '"';
      else if (entity == "apos")
        out += '\'';
      else if (!entity.empty() && entity[0] == '#') {
        int base = 10;
        std::string_view digits = entity.substr(1);
        if (!digits.empty() && (digits[0] == 'x' || digits[0] == 'X')) {
          base = 16;
          digits = digits.substr(1);
        }
        unsigned long code = 0;
        try {
          code = std::stoul(std::string(digits), nullptr, base);
        } catch (...) {
          fail("bad character reference");
        }
        // Encode as UTF-8.
        if (code < 0x80) {
          out += static_cast<char>(code);
        } else if (code < 0x800) {
          out += static_cast<char>(0xC0 | (code >> 6));
          out += static_cast<char>(0x80 | (code & 0x3F));
        } else if (code < 0x10000) {
          out += static_cast<char>(0xE0 | (code >> 12));
          out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
          out += static_cast<char>(0x80 | (code & 0x3F));
        } else {
          out += static_cast<char>(0xF0 | (code >> 18));
          out += static_cast<char>(0x80 | ((code >> 12) & 0x3F));
          out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
          out += static_cast<char>(0x80 | (code & 0x3F));
        }
      } else {
        fail("unknown entity '&" + std::string(entity) + ";'");
      }
      i = semi;
    }
    return out;
  }

  Element parse_element() {
    if (eof() || peek() != '<') fail("expected an element");
    ++pos_;
    Element element;
    element.name = parse_name();
    for (;;) {
      skip_ws();
      if (eof()) fail("unterminated start tag");
      if (peek() == '>') {
        ++pos_;
        parse_content(element);
        return element;
      }
      if (starts_with("/>")) {
        pos_ += 2;
        return element;
      }
      std::string key = parse_name();
      skip_ws();
      if (eof() || peek() != '=') fail("expected '=' after attribute name");
      ++pos_;
      skip_ws();
      if (eof() || (peek() != '"' && peek() != '\'')) fail("expected quoted attribute value");
      char quote = peek();
      ++pos_;
      std::size_t start = pos_;
      while (!eof() && peek() != quote) {
        if (peek() == '<') fail("'<' in attribute value");
        ++pos_;
      }
      if (eof()) fail("unterminated attribute value");
      std::string value = decode_entities(input_.substr(start, pos_ - start));
      ++pos_;
      for (const auto& [existing, _] : element.attributes)
        if (existing == key) fail("duplicate attribute '" + key + "'");
      element.attributes.emplace_back(std::move(key), std::move(value));
    }
  }

  void parse_content(Element& element) {
    for (;;) {
      if (eof()) fail("unterminated element '" + element.name + "'");
      if (starts_with("<!--")) {
        skip_comment();
        continue;
      }
      if (starts_with("<![CDATA[")) {
        pos_ += 9;
        auto end = input_.find("]]>", pos_);
        if (end == std::string_view::npos) fail("unterminated CDATA section");
        element.text += std::string(input_.substr(pos_, end - pos_));
        pos_ = end + 3;
        continue;
      }
      if (starts_with("</")) {
        pos_ += 2;
        std::string closing = parse_name();
        if (closing != element.name)
          fail("mismatched closing tag '" + closing + "' for '" + element.name + "'");
        skip_ws();
        if (eof() || peek() != '>') fail("malformed closing tag");
        ++pos_;
        return;
      }
      if (peek() == '<') {
        element.children.push_back(parse_element());
        continue;
      }
      std::size_t start = pos_;
      while (!eof() && peek() != '<') ++pos_;
      element.text += decode_entities(input_.substr(start, pos_ - start));
    }
  }
};

}  // namespace detail

inline Element parse(std::string_view input) { return detail::Parser(input).parse_document(); }

inline std::string escape_text(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string escape_attribute(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      case '\n': out += "&#10;"; break;
      case '\t': out += "&#9;"; break;
      default: out += c;
    }
  }
  return out;
}

// Resolves the prefix of a qualified name against the xmlns declarations in
// scope. Returns (namespace uri, local name).
struct NamespaceScope {
  std::map<std::string, std::string> bindings;  // prefix -> uri; "" = default

  NamespaceScope with(const Element& element) const {
    NamespaceScope inner = *this;
    for (const auto& [key, value] : element.attributes) {
      if (key == "xmlns")
        inner.bindings[""] = value;
      else if (key.rfind("xmlns:", 0) == 0)
        inner.bindings[key.substr(6)] = value;
    }
    return inner;
  }

  std::pair<std::string, std::string> resolve(const std::string& qualified) const {
    auto colon = qualified.find(':');
    std::string prefix = colon == std::string::npos ? "" : qualified.substr(0, colon);
    std::string local = colon == std::string::npos ? qualified : qualified.substr(colon + 1);
    auto it = bindings.find(prefix);
    return {it == bindings.end() ? "" : it->second, local};
  }
};

}  // namespace easinnova::xml
