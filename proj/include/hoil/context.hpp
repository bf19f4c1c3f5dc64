#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "hoil/diagnostics.hpp"

namespace hoil {

/// A dimension tag: a 64-bit integer or a string. Exactly one variant.
class TagValue {
 public:
  static TagValue of_int(std::int64_t v) { return TagValue(v); }
  static TagValue of_string(std::string v) { return TagValue(std::move(v)); }

  bool is_int() const { return std::holds_alternative<std::int64_t>(v_); }
  bool is_string() const { return std::holds_alternative<std::string>(v_); }
  std::int64_t as_int() const { return std::get<std::int64_t>(v_); }
  const std::string& as_string() const { return std::get<std::string>(v_); }

  bool operator==(const TagValue& other) const { return v_ == other.v_; }
  bool operator!=(const TagValue& other) const { return v_ != other.v_; }
  /// Integer order or lexicographic string order; integers sort before strings
  /// so mixed comparisons are still total for map keys.
  bool operator<(const TagValue& other) const { return v_ < other.v_; }

  /// `5` or `"x"` (quoted, escaped).
  std::string print() const;

 private:
  explicit TagValue(std::int64_t v) : v_(v) {}
  explicit TagValue(std::string v) : v_(std::move(v)) {}
  std::variant<std::int64_t, std::string> v_;
};

/// Ordered finite set of distinct tags, all of one variant. Stored strictly
/// increasing; construction sorts and rejects duplicates or mixed variants.
class TagSet {
 public:
  static TagSet from_values(std::vector<TagValue> values);

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  const std::vector<TagValue>& values() const { return values_; }

  bool is_member(const TagValue& t) const;
  const TagValue& first() const;
  const TagValue& last() const;
  /// Successor of t. t not in the set -> membership error; t last -> range error.
  const TagValue& next(const TagValue& t) const;

  bool operator==(const TagSet& other) const { return values_ == other.values_; }

  std::string print() const;  // {1,3,7}

 private:
  std::vector<TagValue> values_;
};

/// A declared dimension: a name plus an optional admissible tag set.
struct DimensionDecl {
  std::string name;
  std::optional<TagSet> tags;
};

/// A simple context: a finite map dimension name -> tag, enumerable in
/// canonical (name-sorted) order. Immutable in spirit: operators return
/// fresh contexts.
class Context {
 public:
  Context() = default;
  explicit Context(std::map<std::string, TagValue> bindings)
      : bindings_(std::move(bindings)) {}

  static Context parse(std::string_view text);  // literal form [d:1,e:"x"]

  std::size_t size() const { return bindings_.size(); }
  bool empty() const { return bindings_.empty(); }
  const std::map<std::string, TagValue>& bindings() const { return bindings_; }

  bool has(const std::string& dimension) const;
  const TagValue* find(const std::string& dimension) const;

  /// Returns the extended context; rebinding an existing dimension to a
  /// different tag is a conflict (contexts stay simple).
  Context with(const std::string& dimension, TagValue tag) const;

  bool operator==(const Context& other) const { return bindings_ == other.bindings_; }
  bool operator!=(const Context& other) const { return bindings_ != other.bindings_; }

  /// Canonical literal, sorted by dimension name: [d:1,e:"x"]; [] when empty.
  std::string print() const;

 private:
  std::map<std::string, TagValue> bindings_;
};

// Context calculus over simple contexts. union/difference/intersection and
// isSubContext treat a context as its set of (dimension, tag) pairs.

/// Pair-set union. Shared dimension with differing tags -> conflict error;
/// override is the resolving operation.
Context ctx_union(const Context& c1, const Context& c2);
Context ctx_difference(const Context& c1, const Context& c2);
Context ctx_intersection(const Context& c1, const Context& c2);
bool is_sub_context(const Context& c1, const Context& c2);
Context ctx_projection(const Context& c, const std::set<std::string>& dims);
Context ctx_hiding(const Context& c, const std::set<std::string>& dims);
/// Right-biased union: every dimension of c2 wins.
Context ctx_override(const Context& c1, const Context& c2);

}  // namespace hoil
