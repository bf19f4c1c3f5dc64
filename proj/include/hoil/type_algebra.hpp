#pragma once

#include <optional>

#include "hoil/kinds.hpp"
#include "hoil/value.hpp"

namespace hoil {

// Subtype hierarchy: named object < object, array<e> < object, void < bool,
// operator < function, everything constructible < top. Arrays are covariant
// in their element. dimension is the designated join of int and string but
// NOT their supertype for subsumption; conversion stays explicit.

bool is_subtype(const TypeTag& sub, const TypeTag& super);

/// is_subtype extended with the int/string-below-dimension edge (recursively
/// through arrays). This is the order the join operation is least in.
bool joinable_above(const TypeTag& sub, const TypeTag& super);

/// Union type of two types: least upper bound in the joinable order.
///   join(t, t) = t          join(t, top) = top
///   join(int, string) = dimension
///   join(array<a>, array<b>) = array<join(a,b)>, or object when that is top
///   array/object families meet at object; void|bool = bool; operator|function = function
/// Total and associative; siblings with no common family join at top.
TypeTag join(const TypeTag& t1, const TypeTag& t2);

/// The kind-level union: a kind containing both tags, if any, chosen in the
/// priority order numeric, logic, bitwise, intensional, composite, function.
std::optional<Kind> join_kind(const TypeTag& t1, const TypeTag& t2);

}  // namespace hoil
