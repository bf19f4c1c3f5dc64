#include "hoil/context.hpp"

#include <algorithm>
#include <cctype>

namespace hoil {

namespace {

std::string quote_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

}  // namespace

std::string TagValue::print() const {
  if (is_int()) return std::to_string(as_int());
  return quote_string(as_string());
}

TagSet TagSet::from_values(std::vector<TagValue> values) {
  if (values.empty()) {
    throw Error(ErrorCode::ConstructionError, "tag set must be non-empty");
  }
  const bool ints = values.front().is_int();
  for (const auto& v : values) {
    if (v.is_int() != ints) {
      throw Error(ErrorCode::ConstructionError,
                  "tag set mixes integer and string tags");
    }
  }
  std::sort(values.begin(), values.end());
  auto dup = std::adjacent_find(values.begin(), values.end());
  if (dup != values.end()) {
    throw Error(ErrorCode::ConstructionError,
                "duplicate tag " + dup->print() + " in tag set");
  }
  TagSet ts;
  ts.values_ = std::move(values);
  return ts;
}

bool TagSet::is_member(const TagValue& t) const {
  return std::binary_search(values_.begin(), values_.end(), t);
}

const TagValue& TagSet::first() const { return values_.front(); }
const TagValue& TagSet::last() const { return values_.back(); }

const TagValue& TagSet::next(const TagValue& t) const {
  auto it = std::lower_bound(values_.begin(), values_.end(), t);
  if (it == values_.end() || *it != t) {
    throw Error(ErrorCode::MembershipError,
                "tag " + t.print() + " is not in the tag set " + print());
  }
  ++it;
  if (it == values_.end()) {
    throw Error(ErrorCode::RangeError,
                "tag " + t.print() + " is the last element of " + print());
  }
  return *it;
}

std::string TagSet::print() const {
  std::string out = "{";
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) out += ',';
    out += values_[i].print();
  }
  out += '}';
  return out;
}

bool Context::has(const std::string& dimension) const {
  return bindings_.count(dimension) != 0;
}

const TagValue* Context::find(const std::string& dimension) const {
  auto it = bindings_.find(dimension);
  return it == bindings_.end() ? nullptr : &it->second;
}

Context Context::with(const std::string& dimension, TagValue tag) const {
  if (const TagValue* existing = find(dimension)) {
    if (*existing != tag) {
      throw Error(ErrorCode::ConflictError,
                  "dimension " + dimension + " already bound to " +
                      existing->print() + ", cannot also bind " + tag.print());
    }
    return *this;
  }
  auto copy = bindings_;
  copy.emplace(dimension, std::move(tag));
  return Context(std::move(copy));
}

std::string Context::print() const {
  std::string out = "[";
  bool first = true;
  for (const auto& [dim, tag] : bindings_) {
    if (!first) out += ',';
    first = false;
    out += dim;
    out += ':';
    out += tag.print();
  }
  out += ']';
  return out;
}

Context ctx_union(const Context& c1, const Context& c2) {
  auto merged = c1.bindings();
  for (const auto& [dim, tag] : c2.bindings()) {
    auto [it, inserted] = merged.emplace(dim, tag);
    if (!inserted && it->second != tag) {
      throw Error(ErrorCode::ConflictError,
                  "union conflict on dimension " + dim + ": " +
                      it->second.print() + " vs " + tag.print());
    }
  }
  return Context(std::move(merged));
}

Context ctx_difference(const Context& c1, const Context& c2) {
  std::map<std::string, TagValue> out;
  for (const auto& [dim, tag] : c1.bindings()) {
    const TagValue* other = c2.find(dim);
    if (other == nullptr || *other != tag) out.emplace(dim, tag);
  }
  return Context(std::move(out));
}

Context ctx_intersection(const Context& c1, const Context& c2) {
  std::map<std::string, TagValue> out;
  for (const auto& [dim, tag] : c1.bindings()) {
    const TagValue* other = c2.find(dim);
    if (other != nullptr && *other == tag) out.emplace(dim, tag);
  }
  return Context(std::move(out));
}

bool is_sub_context(const Context& c1, const Context& c2) {
  for (const auto& [dim, tag] : c1.bindings()) {
    const TagValue* other = c2.find(dim);
    if (other == nullptr || *other != tag) return false;
  }
  return true;
}

Context ctx_projection(const Context& c, const std::set<std::string>& dims) {
  std::map<std::string, TagValue> out;
  for (const auto& [dim, tag] : c.bindings()) {
    if (dims.count(dim)) out.emplace(dim, tag);
  }
  return Context(std::move(out));
}

Context ctx_hiding(const Context& c, const std::set<std::string>& dims) {
  std::map<std::string, TagValue> out;
  for (const auto& [dim, tag] : c.bindings()) {
    if (!dims.count(dim)) out.emplace(dim, tag);
  }
  return Context(std::move(out));
}

Context ctx_override(const Context& c1, const Context& c2) {
  auto merged = c1.bindings();
  for (const auto& [dim, tag] : c2.bindings()) {
    merged.insert_or_assign(dim, tag);
  }
  return Context(std::move(merged));
}

// Minimal literal parser for context values used on their own (CLI --context,
// python bindings, tests). The expression language has its own lexer; this one
// accepts only literal tags.
namespace {

struct LiteralCursor {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  void expect(char c) {
    if (peek() != c) {
      throw Error(ErrorCode::SyntaxError,
                  std::string("expected '") + c + "' in context literal");
    }
    ++pos;
  }
  bool consume(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
};

std::string parse_identifier(LiteralCursor& cur) {
  cur.skip_ws();
  std::size_t start = cur.pos;
  while (cur.pos < cur.text.size() &&
         (std::isalnum(static_cast<unsigned char>(cur.text[cur.pos])) ||
          cur.text[cur.pos] == '_')) {
    ++cur.pos;
  }
  if (cur.pos == start || std::isdigit(static_cast<unsigned char>(cur.text[start]))) {
    throw Error(ErrorCode::SyntaxError, "expected dimension name in context literal");
  }
  return std::string(cur.text.substr(start, cur.pos - start));
}

TagValue parse_tag(LiteralCursor& cur) {
  char c = cur.peek();
  if (c == '"') {
    ++cur.pos;
    std::string out;
    while (cur.pos < cur.text.size() && cur.text[cur.pos] != '"') {
      char ch = cur.text[cur.pos++];
      if (ch == '\\' && cur.pos < cur.text.size()) {
        char esc = cur.text[cur.pos++];
        switch (esc) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case 'r': out += '\r'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default:
            throw Error(ErrorCode::SyntaxError,
                        std::string("unknown escape \\") + esc + " in string tag");
        }
      } else {
        out += ch;
      }
    }
    if (cur.pos >= cur.text.size()) {
      throw Error(ErrorCode::SyntaxError, "unterminated string tag");
    }
    ++cur.pos;  // closing quote
    return TagValue::of_string(std::move(out));
  }
  bool neg = false;
  if (c == '-') {
    neg = true;
    ++cur.pos;
    c = cur.peek();
  }
  if (!std::isdigit(static_cast<unsigned char>(c))) {
    throw Error(ErrorCode::SyntaxError, "expected integer or string tag");
  }
  std::int64_t v = 0;
  while (cur.pos < cur.text.size() &&
         std::isdigit(static_cast<unsigned char>(cur.text[cur.pos]))) {
    v = v * 10 + (cur.text[cur.pos] - '0');
    ++cur.pos;
  }
  return TagValue::of_int(neg ? -v : v);
}

}  // namespace

Context Context::parse(std::string_view text) {
  LiteralCursor cur{text};
  cur.expect('[');
  std::map<std::string, TagValue> bindings;
  if (!cur.consume(']')) {
    do {
      std::string dim = parse_identifier(cur);
      cur.expect(':');
      TagValue tag = parse_tag(cur);
      auto [it, inserted] = bindings.emplace(dim, tag);
      if (!inserted && it->second != tag) {
        throw Error(ErrorCode::ConflictError,
                    "dimension " + dim + " bound twice in context literal");
      }
    } while (cur.consume(','));
    cur.expect(']');
  }
  if (!cur.eof()) {
    throw Error(ErrorCode::SyntaxError, "trailing input after context literal");
  }
  return Context(std::move(bindings));
}

}  // namespace hoil
