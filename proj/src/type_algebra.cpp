#include "hoil/type_algebra.hpp"

namespace hoil {

namespace {

bool subtype_impl(const TypeTag& sub, const TypeTag& super, bool dimension_edge) {
  if (sub == super) return true;
  if (super.is_top()) return true;
  if (sub.is_top()) return false;
  switch (sub.name()) {
    case TypeName::Void:
      return super.is(TypeName::Boolean);
    case TypeName::Operator:
      return super.is(TypeName::Function);
    case TypeName::Object:
      // named objects sit under the unnamed family top
      return super.is_object() && super.object_name().empty();
    case TypeName::Array:
      if (super.is_object() && super.object_name().empty()) return true;
      return super.is_array() &&
             subtype_impl(sub.element(), super.element(), dimension_edge);
    case TypeName::Integer:
    case TypeName::String:
      return dimension_edge && super.is(TypeName::Dimension);
    default:
      return false;
  }
}

bool dimension_family(const TypeTag& t) {
  return t.is(TypeName::Integer) || t.is(TypeName::String) ||
         t.is(TypeName::Dimension);
}

bool object_family(const TypeTag& t) { return t.is_array() || t.is_object(); }

}  // namespace

bool is_subtype(const TypeTag& sub, const TypeTag& super) {
  return subtype_impl(sub, super, false);
}

bool joinable_above(const TypeTag& sub, const TypeTag& super) {
  return subtype_impl(sub, super, true);
}

TypeTag join(const TypeTag& t1, const TypeTag& t2) {
  if (t1 == t2) return t1;
  if (t1.is_top() || t2.is_top()) return TypeTag::top();
  if (dimension_family(t1) && dimension_family(t2)) return TypeTag::dimension();
  if (t1.is_array() && t2.is_array()) {
    TypeTag elem = join(t1.element(), t2.element());
    if (elem.is_top()) return TypeTag::object();
    return TypeTag::array(std::move(elem));
  }
  if (object_family(t1) && object_family(t2)) return TypeTag::object();
  auto pair_is = [&](TypeName a, TypeName b) {
    return (t1.is(a) && t2.is(b)) || (t1.is(b) && t2.is(a));
  };
  if (pair_is(TypeName::Void, TypeName::Boolean)) return TypeTag::boolean();
  if (pair_is(TypeName::Operator, TypeName::Function)) return TypeTag::function();
  return TypeTag::top();
}

std::optional<Kind> join_kind(const TypeTag& t1, const TypeTag& t2) {
  for (Kind k : {Kind::Numeric, Kind::Logic, Kind::Bitwise, Kind::Intensional,
                 Kind::Composite, Kind::Function}) {
    if (kind_member(t1, k) && kind_member(t2, k)) return k;
  }
  return std::nullopt;
}

}  // namespace hoil
