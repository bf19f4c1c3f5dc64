#include "hoil/eval.hpp"

#include <memory>

#include "hoil/type_algebra.hpp"

namespace hoil {

const Value* Warehouse::lookup(int binding_id, const std::string& context_key) {
  auto it = entries_.find({binding_id, context_key});
  if (it == entries_.end()) {
    ++misses_;
    return nullptr;
  }
  ++hits_;
  return &it->second;
}

void Warehouse::insert(int binding_id, const std::string& context_key, Value value) {
  entries_.emplace(std::pair<int, std::string>{binding_id, context_key},
                   std::move(value));
}

WarehouseStats Warehouse::stats() const {
  return WarehouseStats{hits_, misses_, entries_.size()};
}

void Warehouse::clear() {
  entries_.clear();
  hits_ = 0;
  misses_ = 0;
}

namespace {

// Lexical frames. A where frame exposes its bindings and remembers the
// environment they close over; a param frame binds closure parameters to
// values. Frames are shared, never mutated after construction.
struct EnvFrame {
  const WhereExpr* where = nullptr;
  std::map<std::string, Value> params;
  std::map<std::string, const TagSet*> tag_sets;  // declared dimension tag sets
  std::shared_ptr<const EnvFrame> parent;
};
using EnvPtr = std::shared_ptr<const EnvFrame>;

class Evaluator {
 public:
  Evaluator(const Program& program, const ProcedureRegistry& registry,
            Warehouse* warehouse)
      : program_(program), registry_(registry), warehouse_(warehouse) {}

  Value run(const Context& context) {
    return eval_expr(*program_.root, context, nullptr);
  }

 private:
  Value eval_expr(const Expr& e, const Context& ctx, const EnvPtr& env) {
    try {
      return std::visit(
          [&](const auto& node) -> Value { return eval_node(e, node, ctx, env); },
          e.node);
    } catch (Error& err) {
      if (!err.pos() && e.pos.valid()) {
        throw Error(err.code(), err.what(), e.pos);
      }
      throw;
    }
  }

  Value eval_node(const Expr&, const LiteralExpr& node, const Context&, const EnvPtr&) {
    return node.value;
  }

  Value eval_node(const Expr& e, const IdentExpr& node, const Context& ctx,
                  const EnvPtr& env) {
    // resolution order: closure params and where bindings, then dimensions,
    // then builtins and registered procedures
    for (EnvPtr frame = env; frame; frame = frame->parent) {
      auto param = frame->params.find(node.name);
      if (param != frame->params.end()) return param->second;
      if (frame->where != nullptr) {
        for (const VarBinding& binding : frame->where->bindings) {
          if (binding.name == node.name) {
            return eval_binding(binding, ctx, frame);
          }
        }
      }
    }
    if (dimension_in_scope(node.name, ctx, env)) {
      const TagValue* tag = ctx.find(node.name);
      if (tag == nullptr) {
        throw Error(ErrorCode::UnboundDimension,
                    "dimension '" + node.name + "' has no tag in the current context",
                    e.pos);
      }
      return Value::dimension(node.name, *tag);
    }
    if (node.name == "length" || node.name == "concat") {
      return Value::function(node.name, node.name == "length" ? 1 : 2);
    }
    if (registry_.contains(node.name)) return registry_.function_value(node.name);
    throw Error(ErrorCode::UnknownIdentifier, "unknown identifier '" + node.name + "'",
                e.pos);
  }

  Value eval_binding(const VarBinding& binding, const Context& ctx, const EnvPtr& frame) {
    // a binding under a closure frame may read parameters, which are not
    // part of the (binding, context) key; such bindings are not cached
    bool cacheable = warehouse_ != nullptr;
    for (EnvPtr f = frame; cacheable && f; f = f->parent) {
      if (!f->params.empty()) cacheable = false;
    }
    const std::string key = cacheable ? ctx.print() : std::string();
    if (cacheable) {
      if (const Value* cached = warehouse_->lookup(binding.binding_id, key)) {
        return *cached;
      }
    }
    Value value = eval_expr(*binding.expr, ctx, frame);
    if (cacheable) {
      warehouse_->insert(binding.binding_id, key, value);
    }
    return value;
  }

  bool dimension_in_scope(const std::string& name, const Context& ctx,
                          const EnvPtr& env) {
    for (EnvPtr frame = env; frame; frame = frame->parent) {
      if (frame->where != nullptr) {
        for (const DimensionDeclNode& dim : frame->where->dimensions) {
          if (dim.name == name) return true;
        }
      }
    }
    return ctx.has(name) || program_.initial_context.has(name);
  }

  const TagSet* declared_tag_set(const std::string& name, const EnvPtr& env) {
    for (EnvPtr frame = env; frame; frame = frame->parent) {
      auto it = frame->tag_sets.find(name);
      if (it != frame->tag_sets.end()) return it->second;
      if (frame->where != nullptr) {
        for (const DimensionDeclNode& dim : frame->where->dimensions) {
          if (dim.name == name) return dim.tags ? &*dim.tags : nullptr;
        }
      }
    }
    return nullptr;
  }

  Value eval_node(const Expr& e, const UnaryExpr& node, const Context& ctx,
                  const EnvPtr& env) {
    Value v = eval_expr(*node.operand, ctx, env);
    switch (node.op) {
      case UnaryOp::Neg:
        switch (v.tag().name()) {
          case TypeName::Integer:
            return Value::of_int(static_cast<std::int64_t>(
                -static_cast<std::uint64_t>(v.as_int())));
          case TypeName::Float: return Value::of_float(-v.as_float());
          case TypeName::Double: return Value::of_double(-v.as_double());
          default:
            throw Error(ErrorCode::KindError,
                        "operand of '-' must be numeric, got " + v.tag().print(), e.pos);
        }
      case UnaryOp::Not: return logic_not(v);
      case UnaryOp::BitNot: return bitwise_not(v);
    }
    throw Error(ErrorCode::TypeError, "bad unary operator", e.pos);
  }

  Value eval_node(const Expr&, const BinaryExpr& node, const Context& ctx,
                  const EnvPtr& env) {
    Value lhs = eval_expr(*node.lhs, ctx, env);
    Value rhs = eval_expr(*node.rhs, ctx, env);
    switch (node.kind) {
      case BinaryKind::Arith: return arith(node.arith, lhs, rhs);
      case BinaryKind::Compare: return compare(node.comp, lhs, rhs);
      case BinaryKind::Logic: return logic(node.logic, lhs, rhs);
      case BinaryKind::Bitwise: return bitwise(node.bitwise, lhs, rhs);
    }
    throw Error(ErrorCode::TypeError, "bad binary operator");
  }

  Value eval_node(const Expr& e, const QueryExpr& node, const Context& ctx,
                  const EnvPtr&) {
    const TagValue* tag = ctx.find(node.dimension);
    if (tag == nullptr) {
      throw Error(ErrorCode::UnboundDimension,
                  "dimension '" + node.dimension + "' has no tag in the current context",
                  e.pos);
    }
    return tag->is_int() ? Value::of_int(tag->as_int())
                         : Value::of_string(tag->as_string());
  }

  TagValue tag_from_value(const Value& v, const ContextPair& pair) {
    switch (v.tag().name()) {
      case TypeName::Integer: return TagValue::of_int(v.as_int());
      case TypeName::String: return TagValue::of_string(v.as_string());
      default:
        throw Error(ErrorCode::TypeError,
                    "tag for dimension '" + pair.dimension +
                        "' must be int or string, got " + v.tag().print(),
                    pair.pos);
    }
  }

  Value eval_node(const Expr&, const SwitchExpr& node, const Context& ctx,
                  const EnvPtr& env) {
    Context switched = ctx;
    for (const ContextPair& pair : node.pairs) {
      // tags evaluate in the original context, before any override
      Value v = eval_expr(*pair.tag, ctx, env);
      TagValue tag = tag_from_value(v, pair);
      if (const TagSet* ts = declared_tag_set(pair.dimension, env)) {
        if (!ts->is_member(tag)) {
          throw Error(ErrorCode::TagSetViolation,
                      "tag " + tag.print() + " is not in the declared tag set " +
                          ts->print() + " of dimension '" + pair.dimension + "'",
                      pair.pos);
        }
      }
      switched = ctx_override(switched, Context({{pair.dimension, tag}}));
    }
    return eval_expr(*node.body, switched, env);
  }

  Value eval_node(const Expr&, const ContextLiteralExpr& node, const Context& ctx,
                  const EnvPtr& env) {
    Context out;
    for (const ContextPair& pair : node.pairs) {
      Value v = eval_expr(*pair.tag, ctx, env);
      // first-class contexts stay simple: conflicting rebinding is an error
      out = out.with(pair.dimension, tag_from_value(v, pair));
    }
    return Value::context(std::move(out));
  }

  Value eval_node(const Expr& e, const ArrayExpr& node, const Context& ctx,
                  const EnvPtr& env) {
    std::vector<Value> elements;
    elements.reserve(node.elements.size());
    for (const ExprPtr& element : node.elements) {
      elements.push_back(eval_expr(*element, ctx, env));
    }
    const TypeTag elem_tag = elements.front().tag();
    for (const Value& v : elements) {
      if (v.tag() != elem_tag) {
        throw Error(ErrorCode::TypeError,
                    "array elements must share one type, got " + elem_tag.print() +
                        " and " + v.tag().print(),
                    e.pos);
      }
    }
    return Value::array(elem_tag, std::move(elements));
  }

  Value eval_node(const Expr& e, const CallExpr& node, const Context& ctx,
                  const EnvPtr& env) {
    if (const auto* ident = std::get_if<IdentExpr>(&node.callee->node)) {
      if (!shadowed(ident->name, env)) {
        if (ident->name == "length" || ident->name == "concat") {
          return call_builtin(e, node, ident->name, ctx, env);
        }
        if (registry_.contains(ident->name)) {
          std::vector<Value> args = eval_args(node, ctx, env);
          return registry_.invoke(ident->name, args);
        }
      }
    }
    Value callee = eval_expr(*node.callee, ctx, env);
    if (!callee.is(TypeName::Function) && !callee.is(TypeName::Operator)) {
      throw Error(ErrorCode::TypeError,
                  "call target must be a function or operator, got " +
                      callee.tag().print(),
                  e.pos);
    }
    const auto& callable = callee.as_callable();
    std::vector<Value> args = eval_args(node, ctx, env);
    if (callable.closure == nullptr) {
      // host handle: builtins carry their own names, the rest dispatch
      // through the registry
      if (callable.name == "length" && args.size() == 1) {
        return args[0].is(TypeName::String) ? string_length(args[0])
                                            : array_length(args[0]);
      }
      if (callable.name == "concat" && args.size() == 2) {
        return string_concat(args[0], args[1]);
      }
      return registry_.invoke(callable.name, args);
    }
    const Closure& closure = *callable.closure;
    if (args.size() != closure.params.size()) {
      throw Error(ErrorCode::ArityMismatch,
                  "'" + callable.name + "' expects " +
                      std::to_string(closure.params.size()) + " argument(s), got " +
                      std::to_string(args.size()),
                  e.pos);
    }
    auto frame = std::make_shared<EnvFrame>();
    for (std::size_t i = 0; i < args.size(); ++i) {
      frame->params.emplace(closure.params[i], args[i]);
    }
    // closures capture nothing; the evaluation context flows through
    return eval_expr(*closure.body, ctx, frame);
  }

  bool shadowed(const std::string& name, const EnvPtr& env) {
    for (EnvPtr frame = env; frame; frame = frame->parent) {
      if (frame->params.count(name)) return true;
      if (frame->where != nullptr) {
        for (const VarBinding& binding : frame->where->bindings) {
          if (binding.name == name) return true;
        }
        for (const DimensionDeclNode& dim : frame->where->dimensions) {
          if (dim.name == name) return true;
        }
      }
    }
    return false;
  }

  std::vector<Value> eval_args(const CallExpr& node, const Context& ctx,
                               const EnvPtr& env) {
    std::vector<Value> args;
    args.reserve(node.args.size());
    for (const ExprPtr& arg : node.args) args.push_back(eval_expr(*arg, ctx, env));
    return args;
  }

  Value call_builtin(const Expr& e, const CallExpr& node, const std::string& name,
                     const Context& ctx, const EnvPtr& env) {
    std::vector<Value> args = eval_args(node, ctx, env);
    if (name == "length") {
      if (args.size() != 1) {
        throw Error(ErrorCode::ArityMismatch, "'length' expects 1 argument", e.pos);
      }
      return args[0].is(TypeName::String) ? string_length(args[0])
                                          : array_length(args[0]);
    }
    if (args.size() != 2) {
      throw Error(ErrorCode::ArityMismatch, "'concat' expects 2 arguments", e.pos);
    }
    return string_concat(args[0], args[1]);
  }

  Value eval_node(const Expr&, const DotExpr& node, const Context& ctx,
                  const EnvPtr& env) {
    Value object = eval_expr(*node.object, ctx, env);
    return dot(object, node.member, &registry_);
  }

  Value eval_node(const Expr&, const IndexExpr& node, const Context& ctx,
                  const EnvPtr& env) {
    Value array = eval_expr(*node.array, ctx, env);
    Value index = eval_expr(*node.index, ctx, env);
    return array_index(array, index);
  }

  Value eval_node(const Expr& e, const IfExpr& node, const Context& ctx,
                  const EnvPtr& env) {
    Value cond = eval_expr(*node.condition, ctx, env);
    bool taken;
    if (cond.is(TypeName::Void)) {
      taken = true;
    } else if (cond.is(TypeName::Boolean)) {
      taken = cond.as_bool();
    } else {
      throw Error(ErrorCode::KindError,
                  "if condition must be bool, got " + cond.tag().print(),
                  node.condition->pos);
    }
    Value result = eval_expr(taken ? *node.then_branch : *node.else_branch, ctx, env);
    // deliver the checker's merge tag where a sanctioned coercion exists
    if (e.static_tag && result.tag() != *e.static_tag) {
      if (e.static_tag->is(TypeName::Boolean) && result.is(TypeName::Void)) {
        return Value::of_bool(true);
      }
      if (e.static_tag->is(TypeName::Function) && result.is(TypeName::Operator)) {
        return result.retagged(TypeTag::function());
      }
      if (e.static_tag->is_object() && result.tag().is_object()) {
        return result.retagged(*e.static_tag);
      }
    }
    return result;
  }

  Value eval_node(const Expr&, const WhereExpr& node, const Context& ctx,
                  const EnvPtr& env) {
    auto frame = std::make_shared<EnvFrame>();
    frame->where = &node;
    frame->parent = env;
    return eval_expr(*node.body, ctx, frame);
  }

  const Program& program_;
  const ProcedureRegistry& registry_;
  Warehouse* warehouse_;
};

}  // namespace

Value eval(const Program& program, const Context& c0,
           const ProcedureRegistry& registry, Warehouse* warehouse) {
  if (!program.checked) {
    throw Error(ErrorCode::TypeError, "program must pass check() before eval()");
  }
  Evaluator evaluator(program, registry, warehouse);
  return evaluator.run(ctx_override(program.initial_context, c0));
}

}  // namespace hoil
