#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hoil/bridge.hpp"
#include "hoil/context.hpp"
#include "hoil/kinds.hpp"
#include "hoil/value.hpp"

namespace hoil {

struct Expr;
using ExprPtr = std::shared_ptr<Expr>;

struct LiteralExpr {
  Value value;
};

struct IdentExpr {
  std::string name;
};

enum class UnaryOp { Neg, Not, BitNot };

struct UnaryExpr {
  UnaryOp op;
  ExprPtr operand;
};

enum class BinaryKind { Arith, Compare, Logic, Bitwise };

struct BinaryExpr {
  BinaryKind kind;
  // exactly one of these is meaningful, selected by kind
  ArithOp arith{};
  CompareOp comp{};
  LogicOp logic{};
  BitwiseOp bitwise{};
  ExprPtr lhs;
  ExprPtr rhs;

  std::string_view op_name() const;
};

/// #d — the current tag of dimension d.
struct QueryExpr {
  std::string dimension;
};

struct ContextPair {
  std::string dimension;
  ExprPtr tag;
  SourcePos pos;
};

/// e @ [d:e1, ...] — evaluate e with the listed dimensions overridden.
struct SwitchExpr {
  ExprPtr body;
  std::vector<ContextPair> pairs;
};

/// [d:e1, ...] as a first-class context value.
struct ContextLiteralExpr {
  std::vector<ContextPair> pairs;
};

struct ArrayExpr {
  std::vector<ExprPtr> elements;
};

struct CallExpr {
  ExprPtr callee;  // identifier or any expression producing a function value
  std::vector<ExprPtr> args;
};

struct DotExpr {
  ExprPtr object;
  std::string member;
};

struct IndexExpr {
  ExprPtr array;
  ExprPtr index;
};

struct IfExpr {
  ExprPtr condition;
  ExprPtr then_branch;
  ExprPtr else_branch;
};

struct DimensionDeclNode {
  std::string name;
  std::optional<TagSet> tags;
  SourcePos pos;
};

struct VarBinding {
  std::string name;
  ExprPtr expr;
  SourcePos pos;
  int binding_id = 0;  // unique per binding site; warehouse key component
};

struct WhereExpr {
  ExprPtr body;
  std::vector<DimensionDeclNode> dimensions;
  std::vector<VarBinding> bindings;
};

struct Expr {
  SourcePos pos;
  std::variant<LiteralExpr, IdentExpr, UnaryExpr, BinaryExpr, QueryExpr, SwitchExpr,
               ContextLiteralExpr, ArrayExpr, CallExpr, DotExpr, IndexExpr, IfExpr,
               WhereExpr>
      node;
  // set by check(); absent means the tag is only known at run time
  std::optional<TypeTag> static_tag;
};

/// A lang-level function value payload: parameters plus a body expression.
struct Closure {
  std::vector<std::string> params;
  ExprPtr body;
};

struct Program {
  ExprPtr root;
  std::vector<HostSignature> signatures;  // declared via %signatures
  Context initial_context;                // declared via %context
  std::string source_name = "<expr>";
  bool checked = false;
  int binding_count = 0;
};

}  // namespace hoil
