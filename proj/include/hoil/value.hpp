#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hoil/context.hpp"
#include "hoil/diagnostics.hpp"

namespace hoil {

struct Closure;  // parameter list + body expression; defined in ast.hpp

enum class TypeName {
  Integer,
  Float,
  Double,
  Boolean,
  Character,
  String,
  Void,
  Dimension,
  Context,
  Array,
  Object,
  Embed,
  Function,
  Operator,
  Top,  // lattice top only; never the tag of a constructible value
};

/// Surface spelling of a bare type name ("array" without its element).
std::string_view type_name_spelling(TypeName n);

/// The type of a Value and a node of the join lattice. Array tags carry their
/// element tag; Object tags carry a type name ("" is the unnamed object
/// family top).
class TypeTag {
 public:
  static TypeTag integer() { return TypeTag(TypeName::Integer); }
  static TypeTag floating() { return TypeTag(TypeName::Float); }
  static TypeTag doubling() { return TypeTag(TypeName::Double); }
  static TypeTag boolean() { return TypeTag(TypeName::Boolean); }
  static TypeTag character() { return TypeTag(TypeName::Character); }
  static TypeTag string() { return TypeTag(TypeName::String); }
  static TypeTag void_tag() { return TypeTag(TypeName::Void); }
  static TypeTag dimension() { return TypeTag(TypeName::Dimension); }
  static TypeTag context() { return TypeTag(TypeName::Context); }
  static TypeTag array(TypeTag element);
  static TypeTag object(std::string name = "");
  static TypeTag embed() { return TypeTag(TypeName::Embed); }
  static TypeTag function() { return TypeTag(TypeName::Function); }
  static TypeTag operator_tag() { return TypeTag(TypeName::Operator); }
  static TypeTag top() { return TypeTag(TypeName::Top); }

  TypeName name() const { return name_; }
  bool is(TypeName n) const { return name_ == n; }
  bool is_top() const { return name_ == TypeName::Top; }
  bool is_array() const { return name_ == TypeName::Array; }
  bool is_object() const { return name_ == TypeName::Object; }

  /// Element tag; only for Array tags.
  const TypeTag& element() const;
  /// Object type name; "" for the unnamed family top. Only for Object tags.
  const std::string& object_name() const;

  bool operator==(const TypeTag& other) const;
  bool operator!=(const TypeTag& other) const { return !(*this == other); }

  /// Surface spelling: int, float, double, bool, char, string, void,
  /// dimension, context, array<...>, object, embed, function, operator, top.
  std::string print() const;
  /// Parses a surface spelling; array<...> nests. Unknown name -> type error.
  static TypeTag parse(std::string_view text);

 private:
  explicit TypeTag(TypeName name) : name_(name) {}
  TypeName name_;
  std::shared_ptr<const TypeTag> element_;
  std::string object_name_;
};

/// Immutable runtime value. Every operation returns a fresh Value; payloads
/// of composite values are shared read-only, so copies are cheap.
class Value {
 public:
  struct DimensionPayload {
    std::string name;
    TagValue tag;
    bool operator==(const DimensionPayload& o) const {
      return name == o.name && tag == o.tag;
    }
  };
  struct ObjectPayload {
    std::string type_name;
    std::vector<std::pair<std::string, Value>> fields;  // construction order
  };
  struct EmbedPayload {
    std::string uri;
    std::string registry_handle;  // "" when absent; no code is ever loaded
    bool operator==(const EmbedPayload& o) const {
      return uri == o.uri && registry_handle == o.registry_handle;
    }
  };
  /// Function/operator payload: a host-registry handle (closure == nullptr)
  /// or a lang-level closure.
  struct CallablePayload {
    std::string name;
    std::size_t arity = 0;
    std::shared_ptr<const Closure> closure;
  };

  static Value of_int(std::int64_t v);
  static Value of_float(float v);
  static Value of_double(double v);
  static Value of_bool(bool v);
  static Value of_char(char32_t v);
  static Value of_string(std::string v);
  static Value void_value();
  static Value dimension(std::string name, TagValue tag);
  static Value context(Context c);
  /// Homogeneous array; every element must already carry element_tag.
  static Value array(TypeTag element_tag, std::vector<Value> elements);
  static Value object(std::string type_name,
                      std::vector<std::pair<std::string, Value>> fields);
  static Value embed(std::string uri, std::string registry_handle = "");
  static Value function(std::string name, std::size_t arity);
  static Value function(std::string name, std::shared_ptr<const Closure> closure,
                        std::size_t arity);
  static Value operator_value(std::string name, std::size_t arity);

  const TypeTag& tag() const { return tag_; }

  bool is(TypeName n) const { return tag_.is(n); }

  std::int64_t as_int() const { return expect<std::int64_t>(TypeName::Integer); }
  float as_float() const { return expect<float>(TypeName::Float); }
  double as_double() const { return expect<double>(TypeName::Double); }
  /// Boolean payload; a Void value reads as true.
  bool as_bool() const;
  char32_t as_char() const { return expect<char32_t>(TypeName::Character); }
  const std::string& as_string() const;
  const DimensionPayload& as_dimension() const;
  const Context& as_context() const;
  const std::vector<Value>& as_array() const;
  const ObjectPayload& as_object() const;
  const EmbedPayload& as_embed() const;
  const CallablePayload& as_callable() const;

  /// Retags a value in place of an upcast the lattice sanctions; payload is
  /// shared with the source. Used by the evaluator for static if-merges.
  Value retagged(TypeTag tag) const;

  /// Canonical text form, e.g. `42:int`, `[d:1]:context`. Bit-exact in
  /// golden tests.
  std::string print() const;

 private:
  Value(TypeTag tag, std::variant<std::monostate, std::int64_t, float, double,
                                  bool, char32_t, std::string, DimensionPayload,
                                  Context, std::shared_ptr<const std::vector<Value>>,
                                  std::shared_ptr<const ObjectPayload>, EmbedPayload,
                                  CallablePayload>
                         payload)
      : tag_(std::move(tag)), payload_(std::move(payload)) {}

  template <typename T>
  const T& expect(TypeName n) const {
    if (!tag_.is(n)) {
      throw Error(ErrorCode::TypeError,
                  std::string("expected a ") + std::string(type_name_spelling(n)) +
                      " value, got " + tag_.print());
    }
    return std::get<T>(payload_);
  }

  TypeTag tag_;
  std::variant<std::monostate, std::int64_t, float, double, bool, char32_t,
               std::string, DimensionPayload, Context,
               std::shared_ptr<const std::vector<Value>>,
               std::shared_ptr<const ObjectPayload>, EmbedPayload, CallablePayload>
      payload_;

  friend bool payload_equal(const Value& a, const Value& b);
};

// Core operations (composite kind plus the uniform interface).

TypeTag type_of(const Value& v);

/// Structural equality: same tag and recursively equal payloads. Float and
/// double compare by bit pattern (reflexive; NaN == NaN here, unlike the
/// numeric-kind comparison). Void and Boolean true compare equal. No numeric
/// promotion across tags.
Value equals(const Value& a, const Value& b);
bool equals_bool(const Value& a, const Value& b);

Value construct_object(std::string type_name,
                       std::vector<std::pair<std::string, Value>> fields);

/// Membership decision for composite values: Object field (or bridge-bound
/// method via "TypeName.member"), Context dimension, or Dimension attribute
/// ("name"/"tag"). Absence is a membership error.
class ProcedureRegistry;
Value dot(const Value& v, const std::string& member,
          const ProcedureRegistry* registry = nullptr);

Value array_index(const Value& array, const Value& index);
Value array_length(const Value& array);

Value string_concat(const Value& a, const Value& b);
Value string_length(const Value& s);

}  // namespace hoil
