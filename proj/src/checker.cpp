#include "hoil/checker.hpp"

#include <map>
#include <memory>
#include <set>

#include "hoil/type_algebra.hpp"

namespace hoil {

namespace {

struct ProcedureInfo {
  const HostSignature* signature;
  RegisteredAs registered_as;
};

class Checker {
 public:
  Checker(Program& program, const ProcedureRegistry* registry)
      : program_(program) {
    for (const HostSignature& sig : program.signatures) {
      procedures_.emplace(sig.name, ProcedureInfo{&sig, RegisteredAs::Function});
    }
    if (registry != nullptr) {
      registry_ = registry;
    }
    for (const auto& [dim, tag] : program.initial_context.bindings()) {
      (void)tag;
      global_dims_.insert(dim);
    }
  }

  std::vector<Diagnostic> run() {
    Scope root;
    root.parent = nullptr;
    check_expr(*program_.root, root);
    program_.checked = diagnostics_.empty();
    return std::move(diagnostics_);
  }

 private:
  struct Scope {
    const Scope* parent = nullptr;
    std::map<std::string, const VarBinding*> bindings;
    std::set<std::string> dimensions;
  };

  void diagnose(ErrorCode code, SourcePos pos, std::string message) {
    Diagnostic d;
    d.file = program_.source_name;
    d.pos = pos;
    d.message = std::move(message);
    d.code = code;
    diagnostics_.push_back(std::move(d));
  }

  const ProcedureInfo* find_procedure(const std::string& name) {
    if (registry_ != nullptr) {
      if (const ProcedureRegistry::Entry* e = registry_->find(name)) {
        cached_info_[name] = ProcedureInfo{&e->signature, e->registered_as};
        return &cached_info_[name];
      }
    }
    auto it = procedures_.find(name);
    return it == procedures_.end() ? nullptr : &it->second;
  }

  const VarBinding* find_binding(const Scope& scope, const std::string& name) {
    for (const Scope* s = &scope; s != nullptr; s = s->parent) {
      auto it = s->bindings.find(name);
      if (it != s->bindings.end()) return it->second;
    }
    return nullptr;
  }

  bool dimension_in_scope(const Scope& scope, const std::string& name) {
    for (const Scope* s = &scope; s != nullptr; s = s->parent) {
      if (s->dimensions.count(name)) return true;
    }
    return global_dims_.count(name) != 0;
  }

  std::optional<TypeTag> binding_tag(const VarBinding* binding, const Scope& scope) {
    auto memo = binding_tags_.find(binding);
    if (memo != binding_tags_.end()) return memo->second;
    if (!in_progress_.insert(binding).second) {
      // recursive binding: its tag depends on evaluation, stays dynamic
      return std::nullopt;
    }
    std::optional<TypeTag> tag = check_expr(*binding->expr, scope);
    in_progress_.erase(binding);
    binding_tags_.emplace(binding, tag);
    return tag;
  }

  std::optional<TypeTag> check_expr(Expr& e, const Scope& scope) {
    std::optional<TypeTag> tag = dispatch(e, scope);
    e.static_tag = tag;
    return tag;
  }

  std::optional<TypeTag> dispatch(Expr& e, const Scope& scope) {
    return std::visit(
        [&](auto& node) -> std::optional<TypeTag> { return check_node(e, node, scope); },
        e.node);
  }

  std::optional<TypeTag> check_node(Expr&, LiteralExpr& node, const Scope&) {
    return node.value.tag();
  }

  std::optional<TypeTag> check_node(Expr& e, IdentExpr& node, const Scope& scope) {
    if (const VarBinding* binding = find_binding(scope, node.name)) {
      return binding_tag(binding, *binding_scopes_.at(binding));
    }
    if (dimension_in_scope(scope, node.name)) return TypeTag::dimension();
    if (node.name == "length" || node.name == "concat") return TypeTag::function();
    if (const ProcedureInfo* proc = find_procedure(node.name)) {
      return proc->registered_as == RegisteredAs::Operator ? TypeTag::operator_tag()
                                                           : TypeTag::function();
    }
    diagnose(ErrorCode::UnknownIdentifier, e.pos, "unknown identifier '" + node.name + "'");
    return std::nullopt;
  }

  std::optional<TypeTag> check_node(Expr& e, UnaryExpr& node, const Scope& scope) {
    std::optional<TypeTag> operand = check_expr(*node.operand, scope);
    switch (node.op) {
      case UnaryOp::Neg:
        if (operand && !kind_member(*operand, Kind::Numeric)) {
          diagnose(ErrorCode::KindError, e.pos,
                   "operand of '-' must be numeric, got " + operand->print());
          return std::nullopt;
        }
        return operand;
      case UnaryOp::Not:
        if (operand && !operand->is(TypeName::Boolean) && !operand->is(TypeName::Void)) {
          diagnose(ErrorCode::KindError, e.pos,
                   "operand of '!' must be bool, got " + operand->print());
          return std::nullopt;
        }
        return TypeTag::boolean();
      case UnaryOp::BitNot:
        if (operand && !kind_member(*operand, Kind::Bitwise)) {
          diagnose(ErrorCode::KindError, e.pos,
                   "operand of '~' must be a bitwise type, got " + operand->print());
          return std::nullopt;
        }
        return operand;
    }
    return std::nullopt;
  }

  std::optional<TypeTag> check_node(Expr& e, BinaryExpr& node, const Scope& scope) {
    std::optional<TypeTag> lhs = check_expr(*node.lhs, scope);
    std::optional<TypeTag> rhs = check_expr(*node.rhs, scope);
    switch (node.kind) {
      case BinaryKind::Arith: {
        bool bad = false;
        for (const auto& t : {lhs, rhs}) {
          if (t && !kind_member(*t, Kind::Numeric)) {
            diagnose(ErrorCode::KindError, e.pos,
                     "operand of '" + std::string(node.op_name()) +
                         "' must be numeric, got " + t->print());
            bad = true;
          }
        }
        if (bad || !lhs || !rhs) return std::nullopt;
        return promote(*lhs, *rhs);
      }
      case BinaryKind::Compare: {
        bool bad = false;
        for (const auto& t : {lhs, rhs}) {
          if (t && !kind_member(*t, Kind::Numeric)) {
            diagnose(ErrorCode::KindError, e.pos,
                     "operand of '" + std::string(node.op_name()) +
                         "' must be numeric, got " + t->print());
            bad = true;
          }
        }
        return bad ? std::nullopt : std::optional<TypeTag>(TypeTag::boolean());
      }
      case BinaryKind::Logic: {
        bool bad = false;
        for (const auto& t : {lhs, rhs}) {
          if (t && !t->is(TypeName::Boolean) && !t->is(TypeName::Void)) {
            diagnose(ErrorCode::KindError, e.pos,
                     "operand of '" + std::string(node.op_name()) +
                         "' must be bool, got " + t->print());
            bad = true;
          }
        }
        return bad ? std::nullopt : std::optional<TypeTag>(TypeTag::boolean());
      }
      case BinaryKind::Bitwise: {
        bool bad = false;
        for (const auto& t : {lhs, rhs}) {
          if (t && !kind_member(*t, Kind::Bitwise)) {
            diagnose(ErrorCode::KindError, e.pos,
                     "operand of '" + std::string(node.op_name()) +
                         "' must be a bitwise type, got " + t->print());
            bad = true;
          }
        }
        if (bad) return std::nullopt;
        if (lhs && rhs) {
          if (*lhs != *rhs) {
            // no implicit casts for the bitwise kind, int vs double included
            diagnose(ErrorCode::StrictTypeError, e.pos,
                     "bitwise '" + std::string(node.op_name()) +
                         "' requires identical operand types, got " + lhs->print() +
                         " and " + rhs->print());
            return std::nullopt;
          }
          return lhs;
        }
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

  std::optional<TypeTag> check_node(Expr& e, QueryExpr& node, const Scope& scope) {
    if (!dimension_in_scope(scope, node.dimension)) {
      diagnose(ErrorCode::UnknownDimension, e.pos,
               "unknown dimension '" + node.dimension + "' in '#" + node.dimension + "'");
    }
    return std::nullopt;  // int or string, per the runtime tag
  }

  void check_context_pairs(std::vector<ContextPair>& pairs, const Scope& scope) {
    for (ContextPair& pair : pairs) {
      std::optional<TypeTag> tag = check_expr(*pair.tag, scope);
      if (tag && !tag->is(TypeName::Integer) && !tag->is(TypeName::String)) {
        diagnose(ErrorCode::TypeError, pair.pos,
                 "tag for dimension '" + pair.dimension + "' must be int or string, got " +
                     tag->print());
      }
    }
  }

  std::optional<TypeTag> check_node(Expr&, SwitchExpr& node, const Scope& scope) {
    check_context_pairs(node.pairs, scope);
    Scope inner;
    inner.parent = &scope;
    for (const ContextPair& pair : node.pairs) {
      inner.dimensions.insert(pair.dimension);  // @ introduces the dimension
    }
    return check_expr(*node.body, inner);
  }

  std::optional<TypeTag> check_node(Expr&, ContextLiteralExpr& node, const Scope& scope) {
    check_context_pairs(node.pairs, scope);
    return TypeTag::context();
  }

  std::optional<TypeTag> check_node(Expr& e, ArrayExpr& node, const Scope& scope) {
    std::optional<TypeTag> elem;
    bool all_static = true;
    bool bad = false;
    for (ExprPtr& element : node.elements) {
      std::optional<TypeTag> t = check_expr(*element, scope);
      if (!t) {
        all_static = false;
        continue;
      }
      if (!elem) {
        elem = t;
      } else if (*elem != *t) {
        diagnose(ErrorCode::TypeError, element->pos,
                 "array elements must share one type, got " + elem->print() + " and " +
                     t->print());
        bad = true;
      }
    }
    (void)e;
    if (bad || !all_static || !elem) return std::nullopt;
    return TypeTag::array(*elem);
  }

  std::optional<TypeTag> check_node(Expr& e, CallExpr& node, const Scope& scope) {
    // builtin and registered procedures are reached by bare name unless a
    // local binding or dimension shadows it
    if (auto* ident = std::get_if<IdentExpr>(&node.callee->node)) {
      const bool shadowed = find_binding(scope, ident->name) != nullptr ||
                            dimension_in_scope(scope, ident->name);
      if (!shadowed && (ident->name == "length" || ident->name == "concat")) {
        return check_builtin_call(e, node, *ident, scope);
      }
      if (!shadowed) {
        if (const ProcedureInfo* proc = find_procedure(ident->name)) {
          node.callee->static_tag =
              proc->registered_as == RegisteredAs::Operator
                  ? std::optional<TypeTag>(TypeTag::operator_tag())
                  : std::optional<TypeTag>(TypeTag::function());
          return check_procedure_call(e, node, *proc, scope);
        }
      }
    }
    std::optional<TypeTag> callee = check_expr(*node.callee, scope);
    if (callee && !callee->is(TypeName::Function) && !callee->is(TypeName::Operator)) {
      diagnose(ErrorCode::TypeError, e.pos,
               "call target must be a function or operator, got " + callee->print());
    }
    for (ExprPtr& arg : node.args) check_expr(*arg, scope);
    return std::nullopt;
  }

  std::optional<TypeTag> check_builtin_call(Expr& e, CallExpr& node, IdentExpr& ident,
                                            const Scope& scope) {
    std::vector<std::optional<TypeTag>> args;
    for (ExprPtr& arg : node.args) args.push_back(check_expr(*arg, scope));
    if (ident.name == "length") {
      if (args.size() != 1) {
        diagnose(ErrorCode::ArityMismatch, e.pos, "'length' expects 1 argument");
        return std::nullopt;
      }
      if (args[0] && !args[0]->is_array() && !args[0]->is(TypeName::String)) {
        diagnose(ErrorCode::TypeError, e.pos,
                 "'length' applies to array or string values, got " + args[0]->print());
        return std::nullopt;
      }
      return TypeTag::integer();
    }
    if (args.size() != 2) {
      diagnose(ErrorCode::ArityMismatch, e.pos, "'concat' expects 2 arguments");
      return std::nullopt;
    }
    for (const auto& t : args) {
      if (t && !t->is(TypeName::String)) {
        diagnose(ErrorCode::TypeError, e.pos,
                 "'concat' requires two strings, got " + t->print());
        return std::nullopt;
      }
    }
    return TypeTag::string();
  }

  std::optional<TypeTag> check_procedure_call(Expr& e, CallExpr& node,
                                              const ProcedureInfo& proc,
                                              const Scope& scope) {
    const HostSignature& sig = *proc.signature;
    if (node.args.size() != sig.params.size()) {
      diagnose(ErrorCode::ArityMismatch, e.pos,
               "'" + sig.name + "' expects " + std::to_string(sig.params.size()) +
                   " argument(s), got " + std::to_string(node.args.size()));
      for (ExprPtr& arg : node.args) check_expr(*arg, scope);
      return std::nullopt;
    }
    for (std::size_t i = 0; i < node.args.size(); ++i) {
      std::optional<TypeTag> t = check_expr(*node.args[i], scope);
      // static arguments are checked against the contract now, dynamic ones
      // when the boundary is crossed
      if (t && !descriptor_admits(sig.params[i], *t)) {
        diagnose(ErrorCode::ParameterMismatch, node.args[i]->pos,
                 "argument " + std::to_string(i + 1) + " of '" + sig.name +
                     "': expected " + sig.params[i].spelling() + ", got " + t->print());
      }
    }
    return host_return_to_tag(sig.returns, proc.registered_as);
  }

  std::optional<TypeTag> check_node(Expr& e, DotExpr& node, const Scope& scope) {
    std::optional<TypeTag> object = check_expr(*node.object, scope);
    if (object && !object->is_object() && !object->is(TypeName::Context) &&
        !object->is(TypeName::Dimension)) {
      diagnose(ErrorCode::TypeError, e.pos,
               "'.' applies to object, context, or dimension values, got " +
                   object->print());
    }
    return std::nullopt;  // member tags are payload-dependent
  }

  std::optional<TypeTag> check_node(Expr& e, IndexExpr& node, const Scope& scope) {
    std::optional<TypeTag> array = check_expr(*node.array, scope);
    std::optional<TypeTag> index = check_expr(*node.index, scope);
    if (index && !index->is(TypeName::Integer)) {
      diagnose(ErrorCode::TypeError, node.index->pos,
               "array index must be int, got " + index->print());
    }
    if (array) {
      if (!array->is_array()) {
        diagnose(ErrorCode::TypeError, e.pos,
                 "indexing applies to array values, got " + array->print());
        return std::nullopt;
      }
      return array->element();
    }
    return std::nullopt;
  }

  std::optional<TypeTag> check_node(Expr& e, IfExpr& node, const Scope& scope) {
    std::optional<TypeTag> cond = check_expr(*node.condition, scope);
    if (cond && !cond->is(TypeName::Boolean) && !cond->is(TypeName::Void)) {
      diagnose(ErrorCode::KindError, node.condition->pos,
               "if condition must be bool, got " + cond->print());
    }
    std::optional<TypeTag> t1 = check_expr(*node.then_branch, scope);
    std::optional<TypeTag> t2 = check_expr(*node.else_branch, scope);
    (void)e;
    if (!t1 || !t2) return std::nullopt;
    if (*t1 == *t2) return t1;
    // a static merge tag is assigned only where evaluation can actually
    // deliver it: void coerces to boolean true, operators forget into
    // functions, named objects into the object family. Everything else
    // (int/string under dimension, array covariance) stays dynamic because
    // those conversions are explicit by design.
    TypeTag merged = join(*t1, *t2);
    auto both_in = [&](TypeName a, TypeName b) {
      return (t1->is(a) && t2->is(b)) || (t1->is(b) && t2->is(a));
    };
    if (both_in(TypeName::Void, TypeName::Boolean)) return merged;       // bool
    if (both_in(TypeName::Operator, TypeName::Function)) return merged;  // function
    if (t1->is_object() && t2->is_object()) return merged;               // object
    return std::nullopt;
  }

  std::optional<TypeTag> check_node(Expr&, WhereExpr& node, const Scope& scope) {
    Scope inner;
    inner.parent = &scope;
    std::set<std::string> names;
    for (const DimensionDeclNode& dim : node.dimensions) {
      if (!names.insert(dim.name).second) {
        diagnose(ErrorCode::ConstructionError, dim.pos,
                 "'" + dim.name + "' declared twice in the same where");
        continue;
      }
      inner.dimensions.insert(dim.name);
    }
    for (const VarBinding& binding : node.bindings) {
      if (!names.insert(binding.name).second) {
        diagnose(ErrorCode::ConstructionError, binding.pos,
                 "'" + binding.name + "' declared twice in the same where");
        continue;
      }
      inner.bindings.emplace(binding.name, &binding);
    }
    scopes_.push_back(std::make_unique<Scope>(std::move(inner)));
    Scope* frame = scopes_.back().get();
    for (const VarBinding& binding : node.bindings) {
      binding_scopes_[&binding] = frame;
    }
    // check every binding even if unused
    for (const VarBinding& binding : node.bindings) {
      binding_tag(&binding, *frame);
    }
    return check_expr(*node.body, *frame);
  }

  Program& program_;
  const ProcedureRegistry* registry_ = nullptr;
  std::map<std::string, ProcedureInfo> procedures_;
  std::map<std::string, ProcedureInfo> cached_info_;
  std::set<std::string> global_dims_;
  std::vector<Diagnostic> diagnostics_;
  std::map<const VarBinding*, std::optional<TypeTag>> binding_tags_;
  std::map<const VarBinding*, const Scope*> binding_scopes_;
  std::set<const VarBinding*> in_progress_;
  std::vector<std::unique_ptr<Scope>> scopes_;
};

}  // namespace

std::string_view BinaryExpr::op_name() const {
  switch (kind) {
    case BinaryKind::Arith: return arith_op_name(arith);
    case BinaryKind::Compare: return compare_op_name(comp);
    case BinaryKind::Logic: return logic_op_name(logic);
    case BinaryKind::Bitwise: return bitwise_op_name(bitwise);
  }
  return "?";
}

std::vector<Diagnostic> check(Program& program, const ProcedureRegistry* registry) {
  if (!program.root) {
    throw Error(ErrorCode::TypeError, "program has no expression");
  }
  Checker checker(program, registry);
  return checker.run();
}

}  // namespace hoil
