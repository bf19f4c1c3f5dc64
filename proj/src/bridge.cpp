#include "hoil/bridge.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>


namespace hoil {

HostDescriptor HostDescriptor::h_array(HostDescriptor element) {
  HostDescriptor d(Base::Array);
  d.element_ = std::make_shared<const HostDescriptor>(std::move(element));
  return d;
}

const HostDescriptor& HostDescriptor::element() const {
  if (!is_array() || !element_) {
    throw Error(ErrorCode::TypeError, "descriptor " + spelling() + " has no element");
  }
  return *element_;
}

bool HostDescriptor::operator==(const HostDescriptor& other) const {
  if (base_ != other.base_) return false;
  if (base_ == Base::Array) return *element_ == *other.element_;
  return true;
}

std::string HostDescriptor::spelling() const {
  switch (base_) {
    case Base::Int: return "int";
    case Base::Byte: return "byte";
    case Base::Long: return "long";
    case Base::Float: return "float";
    case Base::Double: return "double";
    case Base::Boolean: return "boolean";
    case Base::Char: return "char";
    case Base::String: return "String";
    case Base::Method: return "Method";
    case Base::Object: return "Object";
    case Base::Void: return "void";
    case Base::Array: return element().spelling() + "[]";
  }
  return "?";
}

HostDescriptor HostDescriptor::parse(std::string_view text) {
  auto strip = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = strip(text);
  if (text.ends_with("[]")) {
    return h_array(parse(text.substr(0, text.size() - 2)));
  }
  static const std::pair<std::string_view, Base> names[] = {
      {"int", Base::Int},         {"byte", Base::Byte},     {"long", Base::Long},
      {"float", Base::Float},     {"double", Base::Double}, {"boolean", Base::Boolean},
      {"char", Base::Char},       {"String", Base::String}, {"Method", Base::Method},
      {"Object", Base::Object},   {"void", Base::Void},
  };
  for (const auto& [spelling, base] : names) {
    if (text == spelling) return HostDescriptor(base);
  }
  throw Error(ErrorCode::SyntaxError,
              "unknown host type descriptor '" + std::string(text) + "'");
}

std::string HostSignature::spelling() const {
  std::string out = name + "(";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ", ";
    out += params[i].spelling();
  }
  out += ") -> " + returns.spelling();
  return out;
}

const std::vector<MappingRow>& mapping_table() {
  using Half = MappingRow::Half;
  static const std::vector<MappingRow> table = {
      // return half: host method results to intensional expression types
      {Half::ReturnTypes, {"int", "byte", "long"}, {"int", "dimension"}, TypeName::Integer},
      {Half::ReturnTypes, {"float"}, {"float"}, TypeName::Float},
      {Half::ReturnTypes, {"double"}, {"double"}, TypeName::Double},
      {Half::ReturnTypes, {"boolean"}, {"bool"}, TypeName::Boolean},
      {Half::ReturnTypes, {"char"}, {"char"}, TypeName::Character},
      {Half::ReturnTypes, {"String"}, {"string", "dimension"}, TypeName::String},
      {Half::ReturnTypes, {"Method"}, {"function"}, TypeName::Function},
      {Half::ReturnTypes, {"Method"}, {"operator"}, TypeName::Operator},
      {Half::ReturnTypes, {"[]"}, {"[]"}, TypeName::Array},
      {Half::ReturnTypes, {"Object"}, {"class"}, TypeName::Object},
      {Half::ReturnTypes, {"Object"}, {"URL"}, TypeName::Embed},
      {Half::ReturnTypes, {"void"}, {"bool::true"}, TypeName::Void},
      // parameter half: intensional parameter types to host types
      {Half::ParamTypes, {"String"}, {"string"}, TypeName::String},
      {Half::ParamTypes, {"float"}, {"float"}, TypeName::Float},
      {Half::ParamTypes, {"double"}, {"double"}, TypeName::Double},
      {Half::ParamTypes, {"int"}, {"int"}, TypeName::Integer},
      {Half::ParamTypes, {"int", "String"}, {"dimension"}, TypeName::Dimension},
      {Half::ParamTypes, {"boolean"}, {"bool"}, TypeName::Boolean},
      {Half::ParamTypes, {"Object"}, {"class"}, TypeName::Object},
      {Half::ParamTypes, {"Object"}, {"URL"}, TypeName::Embed},
      {Half::ParamTypes, {"[]"}, {"[]"}, TypeName::Array},
      {Half::ParamTypes, {"Method"}, {"operator"}, TypeName::Operator},
      {Half::ParamTypes, {"Method"}, {"function"}, TypeName::Function},
  };
  return table;
}

namespace {

std::string join_list(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out;
}

}  // namespace

std::string internal_type_name(TypeName n) {
  switch (n) {
    case TypeName::Integer: return "Integer";
    case TypeName::Float: return "Float";
    case TypeName::Double: return "Double";
    case TypeName::Boolean: return "Boolean";
    case TypeName::Character: return "Character";
    case TypeName::String: return "String";
    case TypeName::Void: return "Void";
    case TypeName::Dimension: return "Dimension";
    case TypeName::Context: return "Context";
    case TypeName::Array: return "Array";
    case TypeName::Object: return "Object";
    case TypeName::Embed: return "Embed";
    case TypeName::Function: return "Function";
    case TypeName::Operator: return "Operator";
    case TypeName::Top: return "Top";
  }
  return "?";
}

std::string render_mapping_table() {
  std::ostringstream out;
  auto column = [](const std::string& s, std::size_t width) {
    std::string c = s;
    if (c.size() < width) c.append(width - c.size(), ' ');
    return c;
  };
  out << column("host return type", 20) << column("intensional expression type", 30)
      << "internal type\n";
  for (const auto& row : mapping_table()) {
    if (row.half != MappingRow::Half::ReturnTypes) continue;
    out << column(join_list(row.host), 20) << column(join_list(row.surface), 30)
        << internal_type_name(row.internal) << '\n';
  }
  out << '\n';
  out << column("intensional parameter type", 30) << column("host parameter type", 22)
      << "internal type\n";
  for (const auto& row : mapping_table()) {
    if (row.half != MappingRow::Half::ParamTypes) continue;
    out << column(join_list(row.surface), 30) << column(join_list(row.host), 22)
        << internal_type_name(row.internal) << '\n';
  }
  return out.str();
}

namespace {

TypeName base_return_internal(const HostDescriptor& d, RegisteredAs as) {
  const std::string spelling =
      d.is_array() ? std::string("[]") : d.spelling();
  for (const auto& row : mapping_table()) {
    if (row.half != MappingRow::Half::ReturnTypes) continue;
    if (std::find(row.host.begin(), row.host.end(), spelling) == row.host.end()) {
      continue;
    }
    // Method and Object appear in two rows each; pick by registration
    if (row.internal == TypeName::Function || row.internal == TypeName::Operator) {
      return as == RegisteredAs::Operator ? TypeName::Operator : TypeName::Function;
    }
    if (row.internal == TypeName::Object || row.internal == TypeName::Embed) {
      return as == RegisteredAs::Embed ? TypeName::Embed : TypeName::Object;
    }
    return row.internal;
  }
  throw Error(ErrorCode::TypeError, "descriptor " + d.spelling() + " has no return row");
}

}  // namespace

TypeTag host_return_to_tag(const HostDescriptor& d, RegisteredAs as) {
  if (d.is_array()) {
    return TypeTag::array(host_return_to_tag(d.element(), as));
  }
  switch (base_return_internal(d, as)) {
    case TypeName::Integer: return TypeTag::integer();
    case TypeName::Float: return TypeTag::floating();
    case TypeName::Double: return TypeTag::doubling();
    case TypeName::Boolean: return TypeTag::boolean();
    case TypeName::Character: return TypeTag::character();
    case TypeName::String: return TypeTag::string();
    case TypeName::Function: return TypeTag::function();
    case TypeName::Operator: return TypeTag::operator_tag();
    case TypeName::Object: return TypeTag::object();
    case TypeName::Embed: return TypeTag::embed();
    case TypeName::Void: return TypeTag::void_tag();
    default:
      throw Error(ErrorCode::TypeError, "unexpected internal type for " + d.spelling());
  }
}

std::vector<HostDescriptor> param_tag_to_host(const TypeTag& t) {
  if (t.is_array()) {
    std::vector<HostDescriptor> out;
    for (const HostDescriptor& elem : param_tag_to_host(t.element())) {
      out.push_back(HostDescriptor::h_array(elem));
    }
    return out;
  }
  for (const auto& row : mapping_table()) {
    if (row.half != MappingRow::Half::ParamTypes) continue;
    if (row.internal != t.name()) continue;
    std::vector<HostDescriptor> out;
    for (const std::string& spelling : row.host) {
      out.push_back(HostDescriptor::parse(spelling));
    }
    return out;
  }
  throw Error(ErrorCode::UnmappableParameter,
              "type " + t.print() + " has no host parameter mapping");
}

void ProcedureRegistry::register_procedure(HostSignature signature,
                                           HostCallable callable, RegisteredAs as) {
  const std::string name = signature.name;
  auto [it, inserted] = entries_.emplace(
      name, Entry{std::move(signature), as, std::move(callable)});
  if (!inserted) {
    throw Error(ErrorCode::DuplicateRegistration,
                "procedure '" + name + "' is already registered");
  }
}

bool ProcedureRegistry::contains(const std::string& name) const {
  return entries_.count(name) != 0;
}

const ProcedureRegistry::Entry* ProcedureRegistry::find(const std::string& name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

Value ProcedureRegistry::function_value(const std::string& name) const {
  const Entry* entry = find(name);
  if (entry == nullptr) {
    throw Error(ErrorCode::UnknownProcedure, "unknown procedure '" + name + "'");
  }
  const std::size_t arity = entry->signature.params.size();
  if (entry->registered_as == RegisteredAs::Operator) {
    return Value::operator_value(name, arity);
  }
  return Value::function(name, arity);
}

// Exact tag match for return contracts, except that any named object
// satisfies the unnamed object family a host Object row produces; arrays
// match elementwise. Deliberately narrower than subtyping: a void result
// does not satisfy a declared boolean, nor an operator a function.
static bool return_shape_ok(const TypeTag& got, const TypeTag& want) {
  if (got == want) return true;
  if (want.is_object() && want.object_name().empty() && got.is_object()) return true;
  if (want.is_array() && got.is_array()) {
    return return_shape_ok(got.element(), want.element());
  }
  return false;
}

bool descriptor_admits(const HostDescriptor& declared, const TypeTag& arg) {
  std::vector<HostDescriptor> admissible;
  try {
    admissible = param_tag_to_host(arg);
  } catch (const Error&) {
    return false;  // no parameter row at all
  }
  for (const HostDescriptor& d : admissible) {
    if (d == declared) return true;
  }
  if (declared.is(HostDescriptor::Base::Byte) || declared.is(HostDescriptor::Base::Long)) {
    for (const HostDescriptor& d : admissible) {
      if (d.is(HostDescriptor::Base::Int)) return true;
    }
  }
  if (declared.is_array() && arg.is_array()) {
    return descriptor_admits(declared.element(), arg.element());
  }
  return false;
}

namespace {

// Host-side view of an argument: dimensions decay to their tag, arrays
// marshal elementwise, everything else passes unchanged.
Value marshal_argument(const HostDescriptor& declared, const Value& arg) {
  if (arg.is(TypeName::Dimension)) {
    const auto& dim = arg.as_dimension();
    return dim.tag.is_int() ? Value::of_int(dim.tag.as_int())
                            : Value::of_string(dim.tag.as_string());
  }
  if (declared.is_array() && arg.is(TypeName::Array)) {
    const auto& elems = arg.as_array();
    bool needs_marshal = false;
    for (const Value& e : elems) {
      if (e.is(TypeName::Dimension)) needs_marshal = true;
    }
    if (!needs_marshal) return arg;
    std::vector<Value> out;
    out.reserve(elems.size());
    for (const Value& e : elems) out.push_back(marshal_argument(declared.element(), e));
    return Value::array(host_return_to_tag(declared.element()), std::move(out));
  }
  return arg;
}

void check_byte_range(const HostDescriptor& declared, const Value& marshaled,
                      const std::string& proc, std::size_t position) {
  if (declared.is(HostDescriptor::Base::Byte) && marshaled.is(TypeName::Integer)) {
    const std::int64_t v = marshaled.as_int();
    if (v < -128 || v > 127) {
      throw Error(ErrorCode::ParameterMismatch,
                  "argument " + std::to_string(position + 1) + " of '" + proc +
                      "': value " + std::to_string(v) + " does not fit byte");
    }
  }
  if (declared.is_array() && marshaled.is(TypeName::Array)) {
    for (std::size_t i = 0; i < marshaled.as_array().size(); ++i) {
      check_byte_range(declared.element(), marshaled.as_array()[i], proc, position);
    }
  }
}

}  // namespace

Value ProcedureRegistry::invoke(const std::string& name,
                                std::span<const Value> args) const {
  const Entry* entry = find(name);
  if (entry == nullptr) {
    throw Error(ErrorCode::UnknownProcedure, "unknown procedure '" + name + "'");
  }
  const HostSignature& sig = entry->signature;
  if (args.size() != sig.params.size()) {
    throw Error(ErrorCode::ArityMismatch,
                "'" + name + "' expects " + std::to_string(sig.params.size()) +
                    " argument(s), got " + std::to_string(args.size()));
  }
  std::vector<Value> marshaled;
  marshaled.reserve(args.size());
  for (std::size_t i = 0; i < args.size(); ++i) {
    const HostDescriptor& declared = sig.params[i];
    const Value& arg = args[i];
    // a dimension argument chooses int vs String by its runtime tag variant
    if (arg.is(TypeName::Dimension)) {
      const bool is_int = arg.as_dimension().tag.is_int();
      const bool wants_int = declared.is(HostDescriptor::Base::Int) ||
                             declared.is(HostDescriptor::Base::Byte) ||
                             declared.is(HostDescriptor::Base::Long);
      const bool wants_string = declared.is(HostDescriptor::Base::String);
      if (!((is_int && wants_int) || (!is_int && wants_string))) {
        throw Error(ErrorCode::ParameterMismatch,
                    "argument " + std::to_string(i + 1) + " of '" + name +
                        "': dimension with " + std::string(is_int ? "int" : "String") +
                        " tag does not match declared " + declared.spelling());
      }
    } else if (!descriptor_admits(declared, arg.tag())) {
      throw Error(ErrorCode::ParameterMismatch,
                  "argument " + std::to_string(i + 1) + " of '" + name +
                      "': expected " + declared.spelling() + ", got " +
                      arg.tag().print());
    }
    Value m = marshal_argument(declared, arg);
    check_byte_range(declared, m, name, i);
    marshaled.push_back(std::move(m));
  }

  Value result = entry->callable(marshaled);

  const TypeTag expected = host_return_to_tag(sig.returns, entry->registered_as);
  if (!return_shape_ok(result.tag(), expected)) {
    throw Error(ErrorCode::ReturnContract,
                "'" + name + "' declared to return " + sig.returns.spelling() +
                    " (" + expected.print() + ") but produced " + result.tag().print());
  }
  return result;
}

Value invoke_from_host(const HostSignature& signature,
                       const std::function<Value(std::span<const Value>)>& fn,
                       std::span<const Value> host_args) {
  if (host_args.size() != signature.params.size()) {
    throw Error(ErrorCode::ArityMismatch,
                "'" + signature.name + "' expects " +
                    std::to_string(signature.params.size()) + " argument(s), got " +
                    std::to_string(host_args.size()));
  }
  // reverse order: host arguments enter through the return half
  for (std::size_t i = 0; i < host_args.size(); ++i) {
    const TypeTag expected = host_return_to_tag(signature.params[i]);
    if (!return_shape_ok(host_args[i].tag(), expected)) {
      throw Error(ErrorCode::ParameterMismatch,
                  "argument " + std::to_string(i + 1) + " of '" + signature.name +
                      "': host " + signature.params[i].spelling() + " carries " +
                      expected.print() + ", got " + host_args[i].tag().print());
    }
  }
  Value result = fn(host_args);
  // ... and the intensional result leaves through the parameter half
  std::vector<HostDescriptor> admissible;
  try {
    admissible = param_tag_to_host(result.tag());
  } catch (const Error&) {
    throw Error(ErrorCode::ReturnContract,
                "result type " + result.tag().print() +
                    " has no host mapping for '" + signature.name + "'");
  }
  if (std::find(admissible.begin(), admissible.end(), signature.returns) ==
      admissible.end()) {
    throw Error(ErrorCode::ReturnContract,
                "'" + signature.name + "' declared to return " +
                    signature.returns.spelling() + " but produced " +
                    result.tag().print());
  }
  return result;
}

std::vector<HostSignature> parse_signatures(std::string_view text,
                                            const std::string& file) {
  std::vector<HostSignature> out;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string_view line = text.substr(
        start, end == std::string_view::npos ? std::string_view::npos : end - start);
    ++line_no;
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;

    if (auto comment = line.find("//"); comment != std::string_view::npos) {
      line = line.substr(0, comment);
    }
    bool blank = true;
    for (char c : line) {
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    }
    if (blank) continue;

    auto fail = [&](const std::string& msg) -> Error {
      return Error(ErrorCode::SyntaxError, msg + " in " + file,
                   SourcePos{line_no, 1});
    };
    std::size_t open = line.find('(');
    std::size_t close = line.find(')');
    std::size_t arrow = line.find("->");
    if (open == std::string_view::npos || close == std::string_view::npos ||
        arrow == std::string_view::npos || close < open || arrow < close) {
      throw fail("malformed signature line (want name(param, ...) -> return)");
    }
    HostSignature sig;
    {
      std::string_view name = line.substr(0, open);
      while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front())))
        name.remove_prefix(1);
      while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back())))
        name.remove_suffix(1);
      if (name.empty()) throw fail("missing procedure name");
      sig.name = std::string(name);
    }
    std::string_view params = line.substr(open + 1, close - open - 1);
    while (!params.empty()) {
      std::size_t comma = params.find(',');
      std::string_view piece = params.substr(0, comma);
      bool piece_blank = true;
      for (char c : piece) {
        if (!std::isspace(static_cast<unsigned char>(c))) piece_blank = false;
      }
      if (!piece_blank) {
        sig.params.push_back(HostDescriptor::parse(piece));
      } else if (comma != std::string_view::npos || !sig.params.empty()) {
        throw fail("empty parameter descriptor");
      }
      if (comma == std::string_view::npos) break;
      params = params.substr(comma + 1);
    }
    sig.returns = HostDescriptor::parse(line.substr(arrow + 2));
    out.push_back(std::move(sig));
  }
  return out;
}

}  // namespace hoil
