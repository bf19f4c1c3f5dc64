#include "hoil/value.hpp"

#include <bit>
#include <charconv>
#include <set>

#include "hoil/bridge.hpp"

namespace hoil {

namespace {

std::string escape_into(const std::string& s, char quote) {
  std::string out(1, quote);
  for (char c : s) {
    switch (c) {
      case '"': out += quote == '"' ? "\\\"" : "\""; break;
      case '\'': out += quote == '\'' ? "\\'" : "'"; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  out += quote;
  return out;
}

std::string encode_utf8(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
  return out;
}

template <typename F>
std::string shortest_float(F v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

// Payload part of the canonical form, without the :tag suffix. Array elements
// print in this bare form; their tag lives in the array's suffix.
std::string print_payload(const Value& v);

std::string print_fields(const Value::ObjectPayload& obj) {
  std::string out = obj.type_name + "{";
  bool first = true;
  for (const auto& [name, value] : obj.fields) {
    if (!first) out += ',';
    first = false;
    out += name;
    out += ':';
    out += value.print();
  }
  out += '}';
  return out;
}

std::string print_payload(const Value& v) {
  switch (v.tag().name()) {
    case TypeName::Integer: return std::to_string(v.as_int());
    case TypeName::Float: return shortest_float(v.as_float());
    case TypeName::Double: return shortest_float(v.as_double());
    case TypeName::Boolean: return v.as_bool() ? "true" : "false";
    case TypeName::Character: return escape_into(encode_utf8(v.as_char()), '\'');
    case TypeName::String: return escape_into(v.as_string(), '"');
    case TypeName::Void: return "true";
    case TypeName::Dimension: {
      const auto& d = v.as_dimension();
      return d.name + ":" + d.tag.print();
    }
    case TypeName::Context: return v.as_context().print();
    case TypeName::Array: {
      std::string out = "[";
      bool first = true;
      for (const Value& e : v.as_array()) {
        if (!first) out += ',';
        first = false;
        out += print_payload(e);
      }
      out += ']';
      return out;
    }
    case TypeName::Object: return print_fields(v.as_object());
    case TypeName::Embed: return "embed(" + escape_into(v.as_embed().uri, '"') + ")";
    case TypeName::Function:
    case TypeName::Operator: {
      const auto& c = v.as_callable();
      return c.name + "/" + std::to_string(c.arity);
    }
    case TypeName::Top: break;
  }
  throw Error(ErrorCode::TypeError, "top is not a printable value");
}

}  // namespace

std::string_view type_name_spelling(TypeName n) {
  switch (n) {
    case TypeName::Integer: return "int";
    case TypeName::Float: return "float";
    case TypeName::Double: return "double";
    case TypeName::Boolean: return "bool";
    case TypeName::Character: return "char";
    case TypeName::String: return "string";
    case TypeName::Void: return "void";
    case TypeName::Dimension: return "dimension";
    case TypeName::Context: return "context";
    case TypeName::Array: return "array";
    case TypeName::Object: return "object";
    case TypeName::Embed: return "embed";
    case TypeName::Function: return "function";
    case TypeName::Operator: return "operator";
    case TypeName::Top: return "top";
  }
  return "?";
}

TypeTag TypeTag::array(TypeTag element) {
  TypeTag t(TypeName::Array);
  t.element_ = std::make_shared<const TypeTag>(std::move(element));
  return t;
}

TypeTag TypeTag::object(std::string name) {
  TypeTag t(TypeName::Object);
  t.object_name_ = std::move(name);
  return t;
}

const TypeTag& TypeTag::element() const {
  if (!is_array() || !element_) {
    throw Error(ErrorCode::TypeError, "type " + print() + " has no element type");
  }
  return *element_;
}

const std::string& TypeTag::object_name() const {
  if (!is_object()) {
    throw Error(ErrorCode::TypeError, "type " + print() + " has no object name");
  }
  return object_name_;
}

bool TypeTag::operator==(const TypeTag& other) const {
  if (name_ != other.name_) return false;
  if (name_ == TypeName::Array) return *element_ == *other.element_;
  if (name_ == TypeName::Object) return object_name_ == other.object_name_;
  return true;
}

std::string TypeTag::print() const {
  if (is_array()) return "array<" + element().print() + ">";
  return std::string(type_name_spelling(name_));
}

TypeTag TypeTag::parse(std::string_view text) {
  auto strip = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = strip(text);
  if (text.starts_with("array<") && text.ends_with(">")) {
    return TypeTag::array(TypeTag::parse(text.substr(6, text.size() - 7)));
  }
  static const std::pair<std::string_view, TypeName> names[] = {
      {"int", TypeName::Integer},     {"float", TypeName::Float},
      {"double", TypeName::Double},   {"bool", TypeName::Boolean},
      {"char", TypeName::Character},  {"string", TypeName::String},
      {"void", TypeName::Void},       {"dimension", TypeName::Dimension},
      {"context", TypeName::Context}, {"object", TypeName::Object},
      {"embed", TypeName::Embed},     {"function", TypeName::Function},
      {"operator", TypeName::Operator}, {"top", TypeName::Top},
  };
  for (const auto& [spelling, name] : names) {
    if (text == spelling) {
      return name == TypeName::Object ? TypeTag::object() : TypeTag(name);
    }
  }
  if (text == "array") {
    throw Error(ErrorCode::TypeError, "array needs an element type, e.g. array<int>");
  }
  throw Error(ErrorCode::TypeError, "unknown type name '" + std::string(text) + "'");
}

Value Value::of_int(std::int64_t v) { return Value(TypeTag::integer(), v); }
Value Value::of_float(float v) { return Value(TypeTag::floating(), v); }
Value Value::of_double(double v) { return Value(TypeTag::doubling(), v); }
Value Value::of_bool(bool v) { return Value(TypeTag::boolean(), v); }
Value Value::of_char(char32_t v) { return Value(TypeTag::character(), v); }
Value Value::of_string(std::string v) {
  return Value(TypeTag::string(), std::move(v));
}
Value Value::void_value() { return Value(TypeTag::void_tag(), std::monostate{}); }

Value Value::dimension(std::string name, TagValue tag) {
  return Value(TypeTag::dimension(), DimensionPayload{std::move(name), std::move(tag)});
}

Value Value::context(Context c) { return Value(TypeTag::context(), std::move(c)); }

Value Value::array(TypeTag element_tag, std::vector<Value> elements) {
  for (const Value& e : elements) {
    if (e.tag() != element_tag) {
      throw Error(ErrorCode::TypeError,
                  "array element " + e.print() + " does not carry element type " +
                      element_tag.print());
    }
  }
  return Value(TypeTag::array(std::move(element_tag)),
               std::make_shared<const std::vector<Value>>(std::move(elements)));
}

Value Value::object(std::string type_name,
                    std::vector<std::pair<std::string, Value>> fields) {
  std::set<std::string_view> seen;
  for (const auto& [name, value] : fields) {
    if (!seen.insert(name).second) {
      throw Error(ErrorCode::ConstructionError,
                  "duplicate field '" + name + "' in object " + type_name);
    }
  }
  TypeTag tag = TypeTag::object(type_name);
  auto payload = std::make_shared<const ObjectPayload>(
      ObjectPayload{std::move(type_name), std::move(fields)});
  return Value(std::move(tag), std::move(payload));
}

Value Value::embed(std::string uri, std::string registry_handle) {
  return Value(TypeTag::embed(), EmbedPayload{std::move(uri), std::move(registry_handle)});
}

Value Value::function(std::string name, std::size_t arity) {
  return Value(TypeTag::function(), CallablePayload{std::move(name), arity, nullptr});
}

Value Value::function(std::string name, std::shared_ptr<const Closure> closure,
                      std::size_t arity) {
  return Value(TypeTag::function(),
               CallablePayload{std::move(name), arity, std::move(closure)});
}

Value Value::operator_value(std::string name, std::size_t arity) {
  return Value(TypeTag::operator_tag(), CallablePayload{std::move(name), arity, nullptr});
}

bool Value::as_bool() const {
  if (tag_.is(TypeName::Void)) return true;  // void reads as true, always
  return expect<bool>(TypeName::Boolean);
}

const std::string& Value::as_string() const {
  return expect<std::string>(TypeName::String);
}

const Value::DimensionPayload& Value::as_dimension() const {
  return expect<DimensionPayload>(TypeName::Dimension);
}

const Context& Value::as_context() const { return expect<Context>(TypeName::Context); }

const std::vector<Value>& Value::as_array() const {
  return *expect<std::shared_ptr<const std::vector<Value>>>(TypeName::Array);
}

const Value::ObjectPayload& Value::as_object() const {
  return *expect<std::shared_ptr<const ObjectPayload>>(TypeName::Object);
}

const Value::EmbedPayload& Value::as_embed() const {
  return expect<EmbedPayload>(TypeName::Embed);
}

const Value::CallablePayload& Value::as_callable() const {
  if (tag_.is(TypeName::Operator)) return std::get<CallablePayload>(payload_);
  return expect<CallablePayload>(TypeName::Function);
}

Value Value::retagged(TypeTag tag) const {
  Value copy = *this;
  copy.tag_ = std::move(tag);
  return copy;
}

std::string Value::print() const {
  return print_payload(*this) + ":" + tag_.print();
}

TypeTag type_of(const Value& v) { return v.tag(); }

bool payload_equal(const Value& a, const Value& b) {
  switch (a.tag().name()) {
    case TypeName::Integer: return a.as_int() == b.as_int();
    // bit-pattern equality keeps the identity axiom reflexive on NaN;
    // numeric IEEE equality is the kinds comparison operator instead
    case TypeName::Float:
      return std::bit_cast<std::uint32_t>(a.as_float()) ==
             std::bit_cast<std::uint32_t>(b.as_float());
    case TypeName::Double:
      return std::bit_cast<std::uint64_t>(a.as_double()) ==
             std::bit_cast<std::uint64_t>(b.as_double());
    case TypeName::Boolean: return a.as_bool() == b.as_bool();
    case TypeName::Character: return a.as_char() == b.as_char();
    case TypeName::String: return a.as_string() == b.as_string();
    case TypeName::Void: return true;
    case TypeName::Dimension: return a.as_dimension() == b.as_dimension();
    case TypeName::Context: return a.as_context() == b.as_context();
    case TypeName::Array: {
      const auto& av = a.as_array();
      const auto& bv = b.as_array();
      if (av.size() != bv.size()) return false;
      for (std::size_t i = 0; i < av.size(); ++i) {
        if (!equals_bool(av[i], bv[i])) return false;
      }
      return true;
    }
    case TypeName::Object: {
      // order-insensitive: extensionality is about membership, not order
      const auto& ao = a.as_object();
      const auto& bo = b.as_object();
      if (ao.type_name != bo.type_name || ao.fields.size() != bo.fields.size()) {
        return false;
      }
      for (const auto& [name, value] : ao.fields) {
        bool found = false;
        for (const auto& [bname, bvalue] : bo.fields) {
          if (bname == name) {
            if (!equals_bool(value, bvalue)) return false;
            found = true;
            break;
          }
        }
        if (!found) return false;
      }
      return true;
    }
    case TypeName::Embed: return a.as_embed() == b.as_embed();
    case TypeName::Function:
    case TypeName::Operator: {
      const auto& ac = a.as_callable();
      const auto& bc = b.as_callable();
      return ac.name == bc.name && ac.arity == bc.arity && ac.closure == bc.closure;
    }
    case TypeName::Top: return false;
  }
  return false;
}

bool equals_bool(const Value& a, const Value& b) {
  if (a.tag() != b.tag()) {
    // the one sanctioned cross-tag equality: void reads as boolean true
    auto void_vs_bool = [](const Value& x, const Value& y) {
      return x.is(TypeName::Void) && y.is(TypeName::Boolean) && y.as_bool();
    };
    return void_vs_bool(a, b) || void_vs_bool(b, a);
  }
  return payload_equal(a, b);
}

Value equals(const Value& a, const Value& b) {
  return Value::of_bool(equals_bool(a, b));
}

Value construct_object(std::string type_name,
                       std::vector<std::pair<std::string, Value>> fields) {
  return Value::object(std::move(type_name), std::move(fields));
}

Value dot(const Value& v, const std::string& member, const ProcedureRegistry* registry) {
  switch (v.tag().name()) {
    case TypeName::Object: {
      const auto& obj = v.as_object();
      for (const auto& [name, value] : obj.fields) {
        if (name == member) return value;
      }
      if (registry != nullptr) {
        const std::string key = obj.type_name + "." + member;
        if (registry->contains(key)) return registry->function_value(key);
      }
      throw Error(ErrorCode::MembershipError,
                  "object " + obj.type_name + " has no member '" + member + "'");
    }
    case TypeName::Context: {
      const Context& c = v.as_context();
      if (const TagValue* tag = c.find(member)) {
        return tag->is_int() ? Value::of_int(tag->as_int())
                             : Value::of_string(tag->as_string());
      }
      throw Error(ErrorCode::MembershipError,
                  "context " + c.print() + " has no dimension '" + member + "'");
    }
    case TypeName::Dimension: {
      const auto& d = v.as_dimension();
      if (member == "name") return Value::of_string(d.name);
      if (member == "tag") {
        return d.tag.is_int() ? Value::of_int(d.tag.as_int())
                              : Value::of_string(d.tag.as_string());
      }
      throw Error(ErrorCode::MembershipError,
                  "dimension values have members 'name' and 'tag', not '" + member + "'");
    }
    default:
      throw Error(ErrorCode::TypeError,
                  "'.' applies to object, context, or dimension values, got " +
                      v.tag().print());
  }
}

Value array_index(const Value& array, const Value& index) {
  if (!array.is(TypeName::Array)) {
    throw Error(ErrorCode::TypeError,
                "indexing applies to array values, got " + array.tag().print());
  }
  if (!index.is(TypeName::Integer)) {
    throw Error(ErrorCode::TypeError,
                "array index must be int, got " + index.tag().print());
  }
  const auto& elems = array.as_array();
  const std::int64_t i = index.as_int();
  if (i < 0 || static_cast<std::size_t>(i) >= elems.size()) {
    throw Error(ErrorCode::IndexError,
                "index " + std::to_string(i) + " out of bounds for array of length " +
                    std::to_string(elems.size()));
  }
  return elems[static_cast<std::size_t>(i)];
}

Value array_length(const Value& array) {
  if (!array.is(TypeName::Array)) {
    throw Error(ErrorCode::TypeError,
                "length applies to array or string values, got " + array.tag().print());
  }
  return Value::of_int(static_cast<std::int64_t>(array.as_array().size()));
}

Value string_concat(const Value& a, const Value& b) {
  if (!a.is(TypeName::String) || !b.is(TypeName::String)) {
    throw Error(ErrorCode::TypeError,
                "concat requires two strings, got " + a.tag().print() + " and " +
                    b.tag().print());
  }
  return Value::of_string(a.as_string() + b.as_string());
}

Value string_length(const Value& s) {
  if (!s.is(TypeName::String)) {
    throw Error(ErrorCode::TypeError,
                "length applies to array or string values, got " + s.tag().print());
  }
  return Value::of_int(static_cast<std::int64_t>(s.as_string().size()));
}

}  // namespace hoil
