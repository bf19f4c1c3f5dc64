#include "hoil/kinds.hpp"

#include <bit>
#include <cmath>

namespace hoil {

std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::Numeric: return "numeric";
    case Kind::Logic: return "logic";
    case Kind::Bitwise: return "bitwise";
    case Kind::Intensional: return "intensional";
    case Kind::Composite: return "composite";
    case Kind::Function: return "function";
  }
  return "?";
}

bool kind_member(const TypeTag& t, Kind k) {
  switch (k) {
    case Kind::Numeric:
      return t.is(TypeName::Integer) || t.is(TypeName::Float) || t.is(TypeName::Double);
    case Kind::Logic:
      return t.is(TypeName::Boolean);
    case Kind::Bitwise:
      return t.is(TypeName::Integer) || t.is(TypeName::Float) ||
             t.is(TypeName::Double) || t.is(TypeName::Boolean);
    case Kind::Intensional:
      return t.is(TypeName::Context) || t.is(TypeName::Dimension);
    case Kind::Composite:
      return t.is(TypeName::Object) || t.is(TypeName::Array) ||
             t.is(TypeName::Embed) || t.is(TypeName::String);
    case Kind::Function:
      return t.is(TypeName::Function) || t.is(TypeName::Operator) ||
             t.is(TypeName::Embed);
  }
  return false;
}

std::vector<Kind> kinds_of(const TypeTag& t) {
  if (t.is_top()) {
    throw Error(ErrorCode::UndefinedKind, "top has no kind");
  }
  std::vector<Kind> out;
  for (Kind k : {Kind::Numeric, Kind::Logic, Kind::Bitwise, Kind::Intensional,
                 Kind::Composite, Kind::Function}) {
    if (kind_member(t, k)) out.push_back(k);
  }
  return out;
}

std::string_view arith_op_name(ArithOp op) {
  switch (op) {
    case ArithOp::Add: return "+";
    case ArithOp::Subtract: return "-";
    case ArithOp::Multiply: return "*";
    case ArithOp::Divide: return "/";
    case ArithOp::Mod: return "%";
    case ArithOp::Pow: return "^";
  }
  return "?";
}

std::string_view compare_op_name(CompareOp op) {
  switch (op) {
    case CompareOp::Gt: return ">";
    case CompareOp::Lt: return "<";
    case CompareOp::Ge: return ">=";
    case CompareOp::Le: return "<=";
    case CompareOp::Eq: return "==";
  }
  return "?";
}

std::string_view logic_op_name(LogicOp op) {
  switch (op) {
    case LogicOp::And: return "&&";
    case LogicOp::Or: return "||";
    case LogicOp::Xor: return "xor";
    case LogicOp::Nand: return "nand";
    case LogicOp::Nor: return "nor";
  }
  return "?";
}

std::string_view bitwise_op_name(BitwiseOp op) {
  switch (op) {
    case BitwiseOp::And: return "&";
    case BitwiseOp::Or: return "|";
    case BitwiseOp::Xor: return "bxor";
    case BitwiseOp::Nand: return "bnand";
    case BitwiseOp::Nor: return "bnor";
  }
  return "?";
}

int numeric_rank(const TypeTag& t) {
  switch (t.name()) {
    case TypeName::Integer: return 0;
    case TypeName::Float: return 1;
    case TypeName::Double: return 2;
    default:
      throw Error(ErrorCode::KindError,
                  "numeric operation on non-numeric type " + t.print());
  }
}

TypeTag promote(const TypeTag& a, const TypeTag& b) {
  return numeric_rank(a) >= numeric_rank(b) ? a : b;
}

namespace {

std::int64_t to_int(const Value& v) { return v.as_int(); }

float to_float_rep(const Value& v) {
  return v.is(TypeName::Integer) ? static_cast<float>(v.as_int()) : v.as_float();
}

double to_double_rep(const Value& v) {
  switch (v.tag().name()) {
    case TypeName::Integer: return static_cast<double>(v.as_int());
    case TypeName::Float: return static_cast<double>(v.as_float());
    default: return v.as_double();
  }
}

// wrapping two's-complement helpers; plain signed overflow would be UB
std::int64_t wrap_add(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) +
                                   static_cast<std::uint64_t>(b));
}
std::int64_t wrap_sub(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) -
                                   static_cast<std::uint64_t>(b));
}
std::int64_t wrap_mul(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) *
                                   static_cast<std::uint64_t>(b));
}

std::int64_t int_arith(ArithOp op, std::int64_t a, std::int64_t b) {
  switch (op) {
    case ArithOp::Add: return wrap_add(a, b);
    case ArithOp::Subtract: return wrap_sub(a, b);
    case ArithOp::Multiply: return wrap_mul(a, b);
    case ArithOp::Divide:
      if (b == 0) throw Error(ErrorCode::ArithmeticError, "integer division by zero");
      if (a == INT64_MIN && b == -1) return INT64_MIN;  // wraps
      return a / b;
    case ArithOp::Mod:
      if (b == 0) throw Error(ErrorCode::ArithmeticError, "integer modulo by zero");
      if (a == INT64_MIN && b == -1) return 0;
      return a % b;  // truncated division, sign of the dividend
    case ArithOp::Pow: {
      if (b < 0) {
        throw Error(ErrorCode::ArithmeticError,
                    "integer pow with negative exponent " + std::to_string(b));
      }
      std::int64_t result = 1;
      std::int64_t base = a;
      std::uint64_t exp = static_cast<std::uint64_t>(b);
      while (exp > 0) {
        if (exp & 1) result = wrap_mul(result, base);
        base = wrap_mul(base, base);
        exp >>= 1;
      }
      return result;
    }
  }
  throw Error(ErrorCode::ArithmeticError, "bad arithmetic operator");
}

template <typename F>
F float_arith(ArithOp op, F a, F b) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Subtract: return a - b;
    case ArithOp::Multiply: return a * b;
    case ArithOp::Divide: return a / b;  // IEEE 754: inf / nan
    case ArithOp::Mod: return std::fmod(a, b);
    case ArithOp::Pow: return std::pow(a, b);
  }
  throw Error(ErrorCode::ArithmeticError, "bad arithmetic operator");
}

void require_numeric(const Value& v, std::string_view op) {
  if (!kind_member(v.tag(), Kind::Numeric)) {
    throw Error(ErrorCode::KindError,
                "operand of '" + std::string(op) + "' must be numeric, got " +
                    v.tag().print());
  }
}

bool logic_operand(const Value& v, std::string_view op) {
  if (v.is(TypeName::Void)) return true;  // void reads as true
  if (!v.is(TypeName::Boolean)) {
    throw Error(ErrorCode::KindError,
                "operand of '" + std::string(op) + "' must be bool, got " +
                    v.tag().print());
  }
  return v.as_bool();
}

std::uint64_t bit_pattern(const Value& v) {
  switch (v.tag().name()) {
    case TypeName::Integer: return static_cast<std::uint64_t>(v.as_int());
    case TypeName::Float: return std::bit_cast<std::uint32_t>(v.as_float());
    case TypeName::Double: return std::bit_cast<std::uint64_t>(v.as_double());
    case TypeName::Boolean: return v.as_bool() ? 1 : 0;
    default: break;
  }
  throw Error(ErrorCode::KindError,
              "bitwise operation on non-bitwise type " + v.tag().print());
}

Value from_bit_pattern(const TypeTag& tag, std::uint64_t bits) {
  switch (tag.name()) {
    case TypeName::Integer: return Value::of_int(static_cast<std::int64_t>(bits));
    case TypeName::Float:
      return Value::of_float(std::bit_cast<float>(static_cast<std::uint32_t>(bits)));
    case TypeName::Double: return Value::of_double(std::bit_cast<double>(bits));
    case TypeName::Boolean: return Value::of_bool((bits & 1) != 0);
    default: break;
  }
  throw Error(ErrorCode::KindError, "bitwise result for non-bitwise type " + tag.print());
}

// one-bit mask for booleans, 32 for float patterns, 64 otherwise
std::uint64_t pattern_mask(const TypeTag& tag) {
  switch (tag.name()) {
    case TypeName::Boolean: return 1;
    case TypeName::Float: return 0xFFFFFFFFull;
    default: return ~0ull;
  }
}

}  // namespace

Value arith(ArithOp op, const Value& a, const Value& b) {
  require_numeric(a, arith_op_name(op));
  require_numeric(b, arith_op_name(op));
  const TypeTag result = promote(a.tag(), b.tag());
  switch (result.name()) {
    case TypeName::Integer: return Value::of_int(int_arith(op, to_int(a), to_int(b)));
    case TypeName::Float:
      return Value::of_float(float_arith(op, to_float_rep(a), to_float_rep(b)));
    default:
      return Value::of_double(float_arith(op, to_double_rep(a), to_double_rep(b)));
  }
}

Value compare(CompareOp op, const Value& a, const Value& b) {
  require_numeric(a, compare_op_name(op));
  require_numeric(b, compare_op_name(op));
  const TypeTag promoted = promote(a.tag(), b.tag());
  auto apply = [op](auto x, auto y) {
    switch (op) {
      case CompareOp::Gt: return x > y;
      case CompareOp::Lt: return x < y;
      case CompareOp::Ge: return x >= y;
      case CompareOp::Le: return x <= y;
      case CompareOp::Eq: return x == y;
    }
    return false;
  };
  switch (promoted.name()) {
    case TypeName::Integer: return Value::of_bool(apply(to_int(a), to_int(b)));
    case TypeName::Float:
      return Value::of_bool(apply(to_float_rep(a), to_float_rep(b)));
    default:
      return Value::of_bool(apply(to_double_rep(a), to_double_rep(b)));
  }
}

Value logic(LogicOp op, const Value& a, const Value& b) {
  const bool x = logic_operand(a, logic_op_name(op));
  const bool y = logic_operand(b, logic_op_name(op));
  switch (op) {
    case LogicOp::And: return Value::of_bool(x && y);
    case LogicOp::Or: return Value::of_bool(x || y);
    case LogicOp::Xor: return Value::of_bool(x != y);
    case LogicOp::Nand: return Value::of_bool(!(x && y));
    case LogicOp::Nor: return Value::of_bool(!(x || y));
  }
  throw Error(ErrorCode::KindError, "bad logic operator");
}

Value logic_not(const Value& a) { return Value::of_bool(!logic_operand(a, "!")); }

Value bitwise(BitwiseOp op, const Value& a, const Value& b) {
  if (!kind_member(a.tag(), Kind::Bitwise) || !kind_member(b.tag(), Kind::Bitwise)) {
    const TypeTag& bad = kind_member(a.tag(), Kind::Bitwise) ? b.tag() : a.tag();
    throw Error(ErrorCode::KindError,
                "bitwise operation on non-bitwise type " + bad.print());
  }
  if (a.tag() != b.tag()) {
    throw Error(ErrorCode::StrictTypeError,
                "bitwise '" + std::string(bitwise_op_name(op)) +
                    "' requires identical operand types, got " + a.tag().print() +
                    " and " + b.tag().print());
  }
  const std::uint64_t x = bit_pattern(a);
  const std::uint64_t y = bit_pattern(b);
  const std::uint64_t mask = pattern_mask(a.tag());
  std::uint64_t bits = 0;
  switch (op) {
    case BitwiseOp::And: bits = x & y; break;
    case BitwiseOp::Or: bits = x | y; break;
    case BitwiseOp::Xor: bits = x ^ y; break;
    case BitwiseOp::Nand: bits = ~(x & y) & mask; break;
    case BitwiseOp::Nor: bits = ~(x | y) & mask; break;
  }
  return from_bit_pattern(a.tag(), bits);
}

Value bitwise_not(const Value& a) {
  const std::uint64_t bits = bit_pattern(a);
  return from_bit_pattern(a.tag(), ~bits & pattern_mask(a.tag()));
}

}  // namespace hoil
