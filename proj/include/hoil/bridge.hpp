#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hoil/value.hpp"

namespace hoil {

/// Host-side type descriptor; closed set matching the adapter table, plus
/// array nesting. Spelled int byte long float double boolean char String
/// Method Object void, arrays as elem[].
class HostDescriptor {
 public:
  enum class Base {
    Int, Byte, Long, Float, Double, Boolean, Char, String, Method, Object, Void, Array
  };

  static HostDescriptor h_int() { return HostDescriptor(Base::Int); }
  static HostDescriptor h_byte() { return HostDescriptor(Base::Byte); }
  static HostDescriptor h_long() { return HostDescriptor(Base::Long); }
  static HostDescriptor h_float() { return HostDescriptor(Base::Float); }
  static HostDescriptor h_double() { return HostDescriptor(Base::Double); }
  static HostDescriptor h_boolean() { return HostDescriptor(Base::Boolean); }
  static HostDescriptor h_char() { return HostDescriptor(Base::Char); }
  static HostDescriptor h_string() { return HostDescriptor(Base::String); }
  static HostDescriptor h_method() { return HostDescriptor(Base::Method); }
  static HostDescriptor h_object() { return HostDescriptor(Base::Object); }
  static HostDescriptor h_void() { return HostDescriptor(Base::Void); }
  static HostDescriptor h_array(HostDescriptor element);

  Base base() const { return base_; }
  bool is(Base b) const { return base_ == b; }
  bool is_array() const { return base_ == Base::Array; }
  const HostDescriptor& element() const;

  bool operator==(const HostDescriptor& other) const;
  bool operator!=(const HostDescriptor& other) const { return !(*this == other); }

  std::string spelling() const;  // "long", "String", "double[]", ...
  static HostDescriptor parse(std::string_view text);

 private:
  explicit HostDescriptor(Base b) : base_(b) {}
  Base base_;
  std::shared_ptr<const HostDescriptor> element_;
};

/// Declared procedure signature: the binding contract between intensional
/// expressions and host procedures.
struct HostSignature {
  std::string name;
  std::vector<HostDescriptor> params;
  HostDescriptor returns = HostDescriptor::h_void();

  std::string spelling() const;  // name(param, ...) -> return
};

/// Resolves the table's many-to-one rows: a Method result may stand for a
/// function or an operator, an Object result for an object or an embed.
enum class RegisteredAs { Function, Operator, Object, Embed };

/// One row of the type-adapter table. Both mapping directions are derived
/// from the same declarative rows, so they cannot drift apart.
struct MappingRow {
  enum class Half { ReturnTypes, ParamTypes };
  Half half;
  std::vector<std::string> host;    // host-side spellings
  std::vector<std::string> surface; // intensional-side spellings
  TypeName internal;
};

const std::vector<MappingRow>& mapping_table();
std::string render_mapping_table();
/// Internal column spelling of a table row: Integer, Float, ...
std::string internal_type_name(TypeName n);

/// Maps a host return descriptor to the internal type, per the table's
/// return half. Method and Object resolve via registration metadata; arrays
/// lift elementwise.
TypeTag host_return_to_tag(const HostDescriptor& d,
                           RegisteredAs as = RegisteredAs::Function);

/// Maps an intensional parameter type to its admissible host descriptors in
/// table order (dimension -> int, String). Types without a parameter row
/// (context, void, char, top) are an unmappable-parameter error.
std::vector<HostDescriptor> param_tag_to_host(const TypeTag& t);

/// Whether a declared descriptor admits an argument of the given tag: the
/// descriptor must occur among the tag's parameter mappings. byte and long
/// collapse into the int family; byte additionally narrows at call time.
bool descriptor_admits(const HostDescriptor& declared, const TypeTag& arg);

using HostCallable = std::function<Value(std::span<const Value>)>;

/// Host procedures registered against declared signatures. The registry is
/// append-only after setup; callables are required to be pure (documented,
/// not enforced).
class ProcedureRegistry {
 public:
  struct Entry {
    HostSignature signature;
    RegisteredAs registered_as = RegisteredAs::Function;
    HostCallable callable;
  };

  void register_procedure(HostSignature signature, HostCallable callable,
                          RegisteredAs as = RegisteredAs::Function);
  bool contains(const std::string& name) const;
  const Entry* find(const std::string& name) const;
  std::size_t size() const { return entries_.size(); }

  /// Function (or operator) value handle for a registered procedure.
  Value function_value(const std::string& name) const;

  /// Dynamically checks every argument tag against the declared descriptor
  /// through the parameter half of the table, marshals, calls, and checks the
  /// result against the declared return through the return half. An h-void
  /// return yields the void value (reads as true).
  Value invoke(const std::string& name, std::span<const Value> args) const;

 private:
  std::map<std::string, Entry> entries_;
};

/// Hook for the reverse direction (host code calling an intensional
/// function): the same table rows applied in the reverse order, i.e. host
/// arguments map through the return half and the result must map back onto
/// the declared return descriptor through the parameter half.
Value invoke_from_host(const HostSignature& signature,
                       const std::function<Value(std::span<const Value>)>& fn,
                       std::span<const Value> host_args);

/// Parses the signature declaration format: one `name(param, ...) -> return`
/// per line; blank lines and // comments ignored.
std::vector<HostSignature> parse_signatures(std::string_view text,
                                            const std::string& file = "<signatures>");

}  // namespace hoil
