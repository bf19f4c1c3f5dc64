#pragma once

#include <optional>
#include <vector>

#include "hoil/value.hpp"

namespace hoil {

/// Categories of types sharing an operator family. Not exposed to programs;
/// the delegates below are selected by membership.
enum class Kind { Numeric, Logic, Bitwise, Intensional, Composite, Function };

std::string_view kind_name(Kind k);

/// Exact membership:
///   Numeric  A = {int, float, double}
///   Logic    L = {bool}
///   Bitwise  B = {int, float, double, bool}
///   Intens.  C = {context, dimension}
///   Composite D = {object, array, embed, string}
///   Function F = {function, operator, embed}
/// char and void belong to no kind. Order of the result follows the
/// priority A, L, B, C, D, F.
std::vector<Kind> kinds_of(const TypeTag& t);  // Top -> undefined-kind error
bool kind_member(const TypeTag& t, Kind k);    // total; Top is in no kind

enum class ArithOp { Add, Subtract, Multiply, Divide, Mod, Pow };
enum class CompareOp { Gt, Lt, Ge, Le, Eq };
enum class LogicOp { And, Or, Xor, Nand, Nor };
enum class BitwiseOp { And, Or, Xor, Nand, Nor };

std::string_view arith_op_name(ArithOp op);
std::string_view compare_op_name(CompareOp op);
std::string_view logic_op_name(LogicOp op);
std::string_view bitwise_op_name(BitwiseOp op);

/// Promotion rank within the numeric kind: int < float < double.
int numeric_rank(const TypeTag& t);  // kind error if not numeric
/// T_max of two numeric tags: the larger rank, so no information is lost.
TypeTag promote(const TypeTag& a, const TypeTag& b);

/// Arithmetic on the numeric kind. Result tag is the promotion of the
/// operand tags and the operation is computed in that representation.
/// Integer arithmetic wraps two's-complement; integer divide/mod by zero is
/// an arithmetic error; float/double follow IEEE 754. Integer pow requires a
/// non-negative exponent.
Value arith(ArithOp op, const Value& a, const Value& b);

/// Ordering/equality on the numeric kind; operands compare after promotion
/// and the result is always boolean.
Value compare(CompareOp op, const Value& a, const Value& b);

/// Logic kind: boolean operands only (a void operand reads as true). No
/// numeric coercion.
Value logic(LogicOp op, const Value& a, const Value& b);
Value logic_not(const Value& a);

/// Bitwise kind: operand tags must be identical (no implicit casts) and the
/// result keeps that tag. Integers operate on all 64 bits, booleans on one,
/// float/double on their IEEE 754 bit patterns.
Value bitwise(BitwiseOp op, const Value& a, const Value& b);
Value bitwise_not(const Value& a);

}  // namespace hoil
