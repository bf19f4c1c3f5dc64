// Acceptance suite: one criterion per section, one pass/fail line each.
// Exit code 0 only when every criterion passes.

#include <array>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include "../generators.hpp"
#include "hoil/builtins.hpp"
#include "hoil/checker.hpp"
#include "hoil/cli.hpp"
#include "hoil/eval.hpp"
#include "hoil/parser.hpp"
#include "hoil/type_algebra.hpp"

using namespace hoil;

namespace {

struct Criterion {
  int number;
  std::string name;
  std::function<void(std::vector<std::string>&)> body;  // pushes failures
};

#define EXPECT(cond)                                                              \
  do {                                                                            \
    if (!(cond)) failures.push_back(std::string(#cond) + " at line " +            \
                                    std::to_string(__LINE__));                    \
  } while (0)

#define EXPECT_MSG(cond, msg)                                                     \
  do {                                                                            \
    if (!(cond)) failures.push_back(std::string(msg) + " at line " +              \
                                    std::to_string(__LINE__));                    \
  } while (0)

// ---------------------------------------------------------------------------
// 1. Table conformance: every row of the adapter table, both halves, exact.

void criterion_table(std::vector<std::string>& failures) {
  struct ReturnRow {
    std::vector<std::string> host;
    std::vector<std::string> surface;
    std::string internal;
  };
  // the published table, frozen here independently of the implementation
  const std::vector<ReturnRow> expected_returns = {
      {{"int", "byte", "long"}, {"int", "dimension"}, "Integer"},
      {{"float"}, {"float"}, "Float"},
      {{"double"}, {"double"}, "Double"},
      {{"boolean"}, {"bool"}, "Boolean"},
      {{"char"}, {"char"}, "Character"},
      {{"String"}, {"string", "dimension"}, "String"},
      {{"Method"}, {"function"}, "Function"},
      {{"Method"}, {"operator"}, "Operator"},
      {{"[]"}, {"[]"}, "Array"},
      {{"Object"}, {"class"}, "Object"},
      {{"Object"}, {"URL"}, "Embed"},
      {{"void"}, {"bool::true"}, "Void"},
  };
  const std::vector<ReturnRow> expected_params = {
      {{"String"}, {"string"}, "String"},
      {{"float"}, {"float"}, "Float"},
      {{"double"}, {"double"}, "Double"},
      {{"int"}, {"int"}, "Integer"},
      {{"int", "String"}, {"dimension"}, "Dimension"},
      {{"boolean"}, {"bool"}, "Boolean"},
      {{"Object"}, {"class"}, "Object"},
      {{"Object"}, {"URL"}, "Embed"},
      {{"[]"}, {"[]"}, "Array"},
      {{"Method"}, {"operator"}, "Operator"},
      {{"Method"}, {"function"}, "Function"},
  };

  int row_assertions = 0;
  std::vector<ReturnRow> loaded_returns, loaded_params;
  for (const MappingRow& row : mapping_table()) {
    ReturnRow r{row.host, row.surface, internal_type_name(row.internal)};
    (row.half == MappingRow::Half::ReturnTypes ? loaded_returns : loaded_params)
        .push_back(std::move(r));
  }
  EXPECT(loaded_returns.size() == 12);
  EXPECT(loaded_params.size() == 11);
  for (std::size_t i = 0; i < expected_returns.size(); ++i) {
    const auto& want = expected_returns[i];
    const auto& got = loaded_returns[i];
    EXPECT_MSG(got.host == want.host && got.surface == want.surface &&
                   got.internal == want.internal,
               "return row " + std::to_string(i + 1) + " drifted");
    ++row_assertions;
  }
  for (std::size_t i = 0; i < expected_params.size(); ++i) {
    const auto& want = expected_params[i];
    const auto& got = loaded_params[i];
    EXPECT_MSG(got.host == want.host && got.surface == want.surface &&
                   got.internal == want.internal,
               "param row " + std::to_string(i + 1) + " drifted");
    ++row_assertions;
  }
  EXPECT(row_assertions == 23);

  // the functions agree with the rows they were loaded from
  for (const char* spelling : {"int", "byte", "long"}) {
    EXPECT(host_return_to_tag(HostDescriptor::parse(spelling)) == TypeTag::integer());
  }
  EXPECT(host_return_to_tag(HostDescriptor::h_float()) == TypeTag::floating());
  EXPECT(host_return_to_tag(HostDescriptor::h_double()) == TypeTag::doubling());
  EXPECT(host_return_to_tag(HostDescriptor::h_boolean()) == TypeTag::boolean());
  EXPECT(host_return_to_tag(HostDescriptor::h_char()) == TypeTag::character());
  EXPECT(host_return_to_tag(HostDescriptor::h_string()) == TypeTag::string());
  EXPECT(host_return_to_tag(HostDescriptor::h_method()) == TypeTag::function());
  EXPECT(host_return_to_tag(HostDescriptor::h_method(), RegisteredAs::Operator) ==
         TypeTag::operator_tag());
  EXPECT(host_return_to_tag(HostDescriptor::h_array(HostDescriptor::h_long())) ==
         TypeTag::array(TypeTag::integer()));
  EXPECT(host_return_to_tag(HostDescriptor::h_object()) == TypeTag::object());
  EXPECT(host_return_to_tag(HostDescriptor::h_object(), RegisteredAs::Embed) ==
         TypeTag::embed());
  EXPECT(host_return_to_tag(HostDescriptor::h_void()) == TypeTag::void_tag());

  using DV = std::vector<HostDescriptor>;
  EXPECT(param_tag_to_host(TypeTag::string()) == DV{HostDescriptor::h_string()});
  EXPECT(param_tag_to_host(TypeTag::floating()) == DV{HostDescriptor::h_float()});
  EXPECT(param_tag_to_host(TypeTag::doubling()) == DV{HostDescriptor::h_double()});
  EXPECT(param_tag_to_host(TypeTag::integer()) == DV{HostDescriptor::h_int()});
  EXPECT(param_tag_to_host(TypeTag::dimension()) ==
         (DV{HostDescriptor::h_int(), HostDescriptor::h_string()}));
  EXPECT(param_tag_to_host(TypeTag::boolean()) == DV{HostDescriptor::h_boolean()});
  EXPECT(param_tag_to_host(TypeTag::object("P")) == DV{HostDescriptor::h_object()});
  EXPECT(param_tag_to_host(TypeTag::embed()) == DV{HostDescriptor::h_object()});
  EXPECT(param_tag_to_host(TypeTag::array(TypeTag::integer())) ==
         DV{HostDescriptor::h_array(HostDescriptor::h_int())});
  EXPECT(param_tag_to_host(TypeTag::operator_tag()) == DV{HostDescriptor::h_method()});
  EXPECT(param_tag_to_host(TypeTag::function()) == DV{HostDescriptor::h_method()});

  // void maps to a value that evaluates as boolean true
  ProcedureRegistry registry;
  registry.register_procedure(
      HostSignature{"fire", {}, HostDescriptor::h_void()},
      [](std::span<const Value>) { return Value::void_value(); });
  const Value v = registry.invoke("fire", std::vector<Value>{});
  EXPECT(v.tag() == TypeTag::void_tag());
  EXPECT(v.as_bool() == true);
  EXPECT(logic(LogicOp::And, v, Value::of_bool(true)).as_bool());
}

// ---------------------------------------------------------------------------
// 2. Union identities plus lattice laws against the brute-force LCA oracle.

std::vector<TypeTag> oracle_up_chain(const TypeTag& t) {
  switch (t.name()) {
    case TypeName::Top: return {TypeTag::top()};
    case TypeName::Integer:
      return {TypeTag::integer(), TypeTag::dimension(), TypeTag::top()};
    case TypeName::String:
      return {TypeTag::string(), TypeTag::dimension(), TypeTag::top()};
    case TypeName::Void: return {TypeTag::void_tag(), TypeTag::boolean(), TypeTag::top()};
    case TypeName::Operator:
      return {TypeTag::operator_tag(), TypeTag::function(), TypeTag::top()};
    case TypeName::Object:
      if (t.object_name().empty()) return {TypeTag::object(), TypeTag::top()};
      return {t, TypeTag::object(), TypeTag::top()};
    case TypeName::Array: {
      std::vector<TypeTag> out;
      for (const TypeTag& e : oracle_up_chain(t.element())) {
        if (!e.is_top()) out.push_back(TypeTag::array(e));
      }
      out.push_back(TypeTag::object());
      out.push_back(TypeTag::top());
      return out;
    }
    default: return {t, TypeTag::top()};
  }
}

TypeTag oracle_lub(const TypeTag& a, const TypeTag& b) {
  for (const TypeTag& t : oracle_up_chain(a)) {
    for (const TypeTag& u : oracle_up_chain(b)) {
      if (t == u) return t;
    }
  }
  return TypeTag::top();
}

void criterion_union(std::vector<std::string>& failures) {
  const std::vector<TypeTag> grid = testing::tag_grid();

  for (const TypeTag& t : grid) {
    EXPECT(join(t, TypeTag::top()) == TypeTag::top());  // top absorbs every T
  }
  EXPECT(join(TypeTag::array(TypeTag::doubling()), TypeTag::object()) ==
         TypeTag::object());
  EXPECT(join(TypeTag::void_tag(), TypeTag::boolean()) == TypeTag::boolean());
  EXPECT(join(TypeTag::operator_tag(), TypeTag::function()) == TypeTag::function());
  EXPECT(join(TypeTag::integer(), TypeTag::string()) == TypeTag::dimension());

  // the six kind-level joins: every pair inside a kind set joins in a kind
  // that still contains both members
  const std::vector<std::pair<Kind, std::vector<TypeTag>>> kind_sets = {
      {Kind::Numeric, {TypeTag::integer(), TypeTag::floating(), TypeTag::doubling()}},
      {Kind::Logic, {TypeTag::boolean()}},
      {Kind::Bitwise,
       {TypeTag::integer(), TypeTag::floating(), TypeTag::doubling(),
        TypeTag::boolean()}},
      {Kind::Intensional, {TypeTag::context(), TypeTag::dimension()}},
      {Kind::Composite,
       {TypeTag::object(), TypeTag::array(TypeTag::integer()), TypeTag::embed(),
        TypeTag::string()}},
      {Kind::Function, {TypeTag::function(), TypeTag::operator_tag(), TypeTag::embed()}},
  };
  for (const auto& [kind, members] : kind_sets) {
    for (const TypeTag& a : members) {
      for (const TypeTag& b : members) {
        const std::optional<Kind> k = join_kind(a, b);
        EXPECT_MSG(k.has_value(), "join_kind empty inside " + std::string(kind_name(kind)));
        if (k) {
          EXPECT(kind_member(a, *k));
          EXPECT(kind_member(b, *k));
        }
      }
    }
  }

  int counterexamples = 0;
  for (const TypeTag& a : grid) {
    for (const TypeTag& b : grid) {
      if (!(join(a, b) == join(b, a))) ++counterexamples;
      if (!(join(a, a) == a)) ++counterexamples;
      if (!(join(a, b) == oracle_lub(a, b))) ++counterexamples;
      for (const TypeTag& c : grid) {
        if (!(join(join(a, b), c) == join(a, join(b, c)))) ++counterexamples;
      }
    }
  }
  EXPECT_MSG(counterexamples == 0,
             std::to_string(counterexamples) + " lattice counterexamples");
}

// ---------------------------------------------------------------------------
// 3. Operator semantics: truth table, promotion grid, bitwise grid, De Morgan.

void criterion_operators(std::vector<std::string>& failures) {
  const std::vector<TypeTag> numeric = {TypeTag::integer(), TypeTag::floating(),
                                        TypeTag::doubling()};
  auto one_of = [](const TypeTag& t, double v) {
    switch (t.name()) {
      case TypeName::Integer: return Value::of_int(static_cast<std::int64_t>(v));
      case TypeName::Float: return Value::of_float(static_cast<float>(v));
      default: return Value::of_double(v);
    }
  };

  // 24-entry logic truth table: six operators over the four input pairs
  // (not consumes its left input)
  int table_entries = 0;
  for (bool x : {false, true}) {
    for (bool y : {false, true}) {
      const Value vx = Value::of_bool(x);
      const Value vy = Value::of_bool(y);
      const std::pair<std::string, bool> expected[] = {
          {"and", x && y},   {"or", x || y}, {"xor", x != y},
          {"nand", !(x && y)}, {"nor", !(x || y)}, {"not", !x},
      };
      for (const auto& [op, want] : expected) {
        bool got;
        if (op == "and") got = logic(LogicOp::And, vx, vy).as_bool();
        else if (op == "or") got = logic(LogicOp::Or, vx, vy).as_bool();
        else if (op == "xor") got = logic(LogicOp::Xor, vx, vy).as_bool();
        else if (op == "nand") got = logic(LogicOp::Nand, vx, vy).as_bool();
        else if (op == "nor") got = logic(LogicOp::Nor, vx, vy).as_bool();
        else got = logic_not(vx).as_bool();
        EXPECT_MSG(got == want, op + " truth table entry");
        ++table_entries;
      }
    }
  }
  EXPECT(table_entries == 24);

  // 3x3 promotion grid across every arithmetic operator
  for (const TypeTag& a : numeric) {
    for (const TypeTag& b : numeric) {
      const TypeTag expected = numeric_rank(a) >= numeric_rank(b) ? a : b;
      for (ArithOp op : {ArithOp::Add, ArithOp::Subtract, ArithOp::Multiply,
                         ArithOp::Divide, ArithOp::Mod, ArithOp::Pow}) {
        EXPECT(arith(op, one_of(a, 6), one_of(b, 3)).tag() == expected);
      }
      for (CompareOp op : {CompareOp::Gt, CompareOp::Lt, CompareOp::Ge, CompareOp::Le,
                           CompareOp::Eq}) {
        EXPECT(compare(op, one_of(a, 6), one_of(b, 3)).tag() == TypeTag::boolean());
      }
    }
  }

  // 4x4 bitwise grid: closure on the diagonal, strict-type error off it
  const std::vector<TypeTag> b_kind = {TypeTag::integer(), TypeTag::floating(),
                                       TypeTag::doubling(), TypeTag::boolean()};
  for (const TypeTag& a : b_kind) {
    for (const TypeTag& b : b_kind) {
      const Value va = a.is(TypeName::Boolean) ? Value::of_bool(true) : one_of(a, 5);
      const Value vb = b.is(TypeName::Boolean) ? Value::of_bool(false) : one_of(b, 3);
      for (BitwiseOp op : {BitwiseOp::And, BitwiseOp::Or, BitwiseOp::Xor,
                           BitwiseOp::Nand, BitwiseOp::Nor}) {
        if (a == b) {
          EXPECT(bitwise(op, va, vb).tag() == a);
        } else {
          bool strict = false;
          try {
            bitwise(op, va, vb);
          } catch (const Error& e) {
            strict = e.code() == ErrorCode::StrictTypeError;
          }
          EXPECT_MSG(strict, "mixed bitwise tags must be a strict-type error");
        }
      }
    }
  }

  // De Morgan at both levels, 10^3 random inputs
  testing::Rng rng(1003);
  for (int i = 0; i < 1000; ++i) {
    const Value x = Value::of_bool(testing::coin(rng));
    const Value y = Value::of_bool(testing::coin(rng));
    EXPECT(equals_bool(logic(LogicOp::Nand, x, y), logic_not(logic(LogicOp::And, x, y))));
    EXPECT(equals_bool(logic(LogicOp::Nor, x, y), logic_not(logic(LogicOp::Or, x, y))));
    const Value a = Value::of_int(testing::pick_int(rng, INT64_MIN / 2, INT64_MAX / 2));
    const Value b = Value::of_int(testing::pick_int(rng, INT64_MIN / 2, INT64_MAX / 2));
    EXPECT(equals_bool(bitwise(BitwiseOp::Nand, a, b),
                       bitwise_not(bitwise(BitwiseOp::And, a, b))));
    EXPECT(equals_bool(bitwise(BitwiseOp::Nor, a, b),
                       bitwise_not(bitwise(BitwiseOp::Or, a, b))));
  }
}

// ---------------------------------------------------------------------------
// 4. Context calculus against the pair-set oracle, 10^4 randomized cases.

void criterion_context(std::vector<std::string>& failures) {
  using PairSet = std::set<std::pair<std::string, std::string>>;
  auto pairs_of = [](const Context& c) {
    PairSet out;
    for (const auto& [dim, tag] : c.bindings()) out.insert({dim, tag.print()});
    return out;
  };

  testing::Rng rng(10004);
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    const Context a = testing::random_context(rng);
    const Context b = testing::random_context(rng);
    const Context c = testing::random_context(rng);
    ++checked;

    // intersection laws
    EXPECT(pairs_of(ctx_intersection(a, b)) == pairs_of(ctx_intersection(b, a)));
    EXPECT(ctx_intersection(a, a) == a);
    EXPECT(ctx_intersection(ctx_intersection(a, b), c) ==
           ctx_intersection(a, ctx_intersection(b, c)));
    EXPECT(ctx_difference(a, a).empty());

    // union laws where defined, conflict error otherwise
    bool conflict = false;
    try {
      const Context ab = ctx_union(a, b);
      PairSet expected = pairs_of(a);
      for (const auto& p : pairs_of(b)) expected.insert(p);
      EXPECT(pairs_of(ab) == expected);
      EXPECT(ab == ctx_union(b, a));
      EXPECT(ab.size() == a.size() + b.size() - ctx_intersection(a, b).size());
      try {
        EXPECT(ctx_union(ctx_union(a, b), c) == ctx_union(a, ctx_union(b, c)));
      } catch (const Error&) {
        // associativity holds whenever every union involved is defined
      }
    } catch (const Error& e) {
      conflict = e.code() == ErrorCode::ConflictError;
      EXPECT(conflict);
    }
    EXPECT(ctx_union(a, a) == a);

    // partial order
    EXPECT(is_sub_context(a, a));
    if (is_sub_context(a, b) && is_sub_context(b, a)) EXPECT(a == b);
    if (is_sub_context(a, b) && is_sub_context(b, c)) EXPECT(is_sub_context(a, c));

    // override
    EXPECT(ctx_override(ctx_override(a, b), c) == ctx_override(a, ctx_override(b, c)));
    const Context ov = ctx_override(a, b);
    for (const auto& [dim, tag] : b.bindings()) EXPECT(*ov.find(dim) == tag);
    for (const auto& [dim, tag] : a.bindings()) {
      if (!b.has(dim)) EXPECT(*ov.find(dim) == tag);
    }

    // projection and hiding partition the context
    std::set<std::string> dims;
    for (const auto& [dim, tag] : a.bindings()) {
      if (testing::coin(rng)) dims.insert(dim);
    }
    const Context proj = ctx_projection(a, dims);
    const Context hid = ctx_hiding(a, dims);
    EXPECT(ctx_union(proj, hid) == a);
    EXPECT(ctx_intersection(proj, hid).empty());

    // extensionality: rebuilding in reverse insertion order changes nothing
    std::map<std::string, TagValue> rebuilt;
    for (auto it = a.bindings().rbegin(); it != a.bindings().rend(); ++it) {
      rebuilt.emplace(it->first, it->second);
    }
    EXPECT(Context(rebuilt) == a);

    // every operator preserved the simple-context invariant by construction
    // (at most one tag per dimension is structural in the map representation)
  }
  EXPECT(checked == 10000);
}

// ---------------------------------------------------------------------------
// 5. Axioms: identity, comprehension, infinity.

void criterion_axioms(std::vector<std::string>& failures) {
  testing::Rng rng(555);

  // identity: equals is an equivalence over generated values
  for (int i = 0; i < 1000; ++i) {
    const Value a = testing::random_value(rng);
    const Value b = testing::coin(rng) ? a : testing::random_value(rng);
    const Value c = testing::coin(rng) ? b : testing::random_value(rng);
    EXPECT(equals_bool(a, a));
    EXPECT(equals_bool(a, b) == equals_bool(b, a));
    if (equals_bool(a, b) && equals_bool(b, c)) EXPECT(equals_bool(a, c));
  }

  // comprehension: arbitrary finite collections form arrays and objects
  for (int i = 0; i < 300; ++i) {
    const TypeTag elem = testing::random_scalar_tag(rng);
    std::vector<Value> elems;
    const int n = static_cast<int>(testing::pick_int(rng, 0, 6));
    for (int k = 0; k < n; ++k) {
      elems.push_back(testing::random_value_of(rng, elem, 1));
    }
    const Value arr = Value::array(elem, elems);
    EXPECT(array_length(arr).as_int() == n);
    for (int k = 0; k < n; ++k) {
      EXPECT(equals_bool(array_index(arr, Value::of_int(k)), elems[k]));
    }

    static const char* names[] = {"a", "b", "c", "d", "e", "f"};
    std::vector<std::pair<std::string, Value>> fields;
    const int m = static_cast<int>(testing::pick_int(rng, 0, 5));
    for (int k = 0; k < m; ++k) {
      fields.emplace_back(names[k], testing::random_value(rng, 1));
    }
    const Value obj = construct_object("P", fields);
    for (const auto& [name, value] : fields) {
      EXPECT(equals_bool(dot(obj, name), value));
    }
  }

  // infinity: < on the integers is transitive, irreflexive, strongly connected
  auto lt = [](std::int64_t a, std::int64_t b) {
    return compare(CompareOp::Lt, Value::of_int(a), Value::of_int(b)).as_bool();
  };
  for (int i = 0; i < 1000; ++i) {
    const std::int64_t x = testing::pick_int(rng, -1000, 1000);
    const std::int64_t y = testing::pick_int(rng, -1000, 1000);
    const std::int64_t z = testing::pick_int(rng, -1000, 1000);
    EXPECT(!lt(x, x));
    if (x != y) EXPECT(lt(x, y) || lt(y, x));
    if (lt(x, y) && lt(y, z)) EXPECT(lt(x, z));
  }
}

// ---------------------------------------------------------------------------
// 6. Hybrid boundary fuzzing: typed success or typed failure, never a silent
//    wrong-typed value.

HostDescriptor random_descriptor(testing::Rng& rng, bool allow_array = true) {
  switch (testing::pick_int(rng, 0, allow_array ? 10 : 9)) {
    case 0: return HostDescriptor::h_int();
    case 1: return HostDescriptor::h_byte();
    case 2: return HostDescriptor::h_long();
    case 3: return HostDescriptor::h_float();
    case 4: return HostDescriptor::h_double();
    case 5: return HostDescriptor::h_boolean();
    case 6: return HostDescriptor::h_char();
    case 7: return HostDescriptor::h_string();
    case 8: return HostDescriptor::h_method();
    case 9: return HostDescriptor::h_object();
    default: return HostDescriptor::h_array(random_descriptor(rng, false));
  }
}

Value honest_value_for(const TypeTag& tag, testing::Rng& rng) {
  if (tag.is_array()) {
    std::vector<Value> elems;
    const int n = static_cast<int>(testing::pick_int(rng, 0, 2));
    for (int i = 0; i < n; ++i) elems.push_back(honest_value_for(tag.element(), rng));
    return Value::array(tag.element(), std::move(elems));
  }
  switch (tag.name()) {
    case TypeName::Integer: return Value::of_int(testing::pick_int(rng, -100, 100));
    case TypeName::Float: return Value::of_float(1.5f);
    case TypeName::Double: return Value::of_double(2.5);
    case TypeName::Boolean: return Value::of_bool(true);
    case TypeName::Character: return Value::of_char(U'k');
    case TypeName::String: return Value::of_string("host");
    case TypeName::Void: return Value::void_value();
    case TypeName::Function: return Value::function("h", 0);
    case TypeName::Operator: return Value::operator_value("h", 0);
    case TypeName::Object: return Value::object("Host", {});
    case TypeName::Embed: return Value::embed("host:uri");
    default: return Value::void_value();
  }
}

void criterion_boundary(std::vector<std::string>& failures) {
  testing::Rng rng(6006);
  int invocations = 0, successes = 0, typed_failures = 0;
  for (int i = 0; i < 1000; ++i) {
    ProcedureRegistry registry;
    HostSignature sig;
    sig.name = "p";
    const int arity = static_cast<int>(testing::pick_int(rng, 0, 3));
    for (int k = 0; k < arity; ++k) sig.params.push_back(random_descriptor(rng));
    sig.returns = testing::pick_int(rng, 0, 5) == 0 ? HostDescriptor::h_void()
                                                    : random_descriptor(rng);
    const RegisteredAs as =
        std::array{RegisteredAs::Function, RegisteredAs::Operator, RegisteredAs::Object,
                   RegisteredAs::Embed}[testing::pick_int(rng, 0, 3)];
    const TypeTag expected = host_return_to_tag(sig.returns, as);
    registry.register_procedure(
        sig,
        [expected, &rng](std::span<const Value>) { return honest_value_for(expected, rng); },
        as);

    std::vector<Value> args;
    for (int k = 0; k < arity; ++k) args.push_back(testing::random_value(rng, 1));

    ++invocations;
    try {
      const Value result = registry.invoke("p", args);
      EXPECT_MSG(is_subtype(result.tag(), expected),
                 "result tag " + result.tag().print() + " escaped the declared " +
                     expected.print());
      if (sig.returns.is(HostDescriptor::Base::Void)) {
        EXPECT(logic(LogicOp::And, result, Value::of_bool(true)).as_bool());
      }
      ++successes;
    } catch (const Error&) {
      ++typed_failures;  // typed mismatch; anything else would escape EXPECT
    }
  }
  EXPECT(invocations == 1000);
  EXPECT(successes + typed_failures == 1000);
  EXPECT(successes > 50);       // the fuzz must exercise both outcomes
  EXPECT(typed_failures > 50);

  // dedicated h-void path: always logic-compatible true
  ProcedureRegistry registry;
  registry.register_procedure(HostSignature{"v", {}, HostDescriptor::h_void()},
                              [](std::span<const Value>) { return Value::void_value(); });
  for (int i = 0; i < 10; ++i) {
    EXPECT(logic(LogicOp::And, registry.invoke("v", std::vector<Value>{}),
                 Value::of_bool(true))
               .as_bool());
  }
}

// ---------------------------------------------------------------------------
// 7. Eduction: golden programs, instrumented sharing, warehouse equivalence.

struct Outcome {
  std::string value;
  std::string error;
};

Outcome run_program(const std::string& source, const std::string& context,
                    bool warehouse, ProcedureRegistry* custom = nullptr) {
  Outcome out;
  try {
    Program program = parse(source);
    program.initial_context =
        ctx_override(program.initial_context, Context::parse(context));
    ProcedureRegistry local;
    ProcedureRegistry& registry = custom ? *custom : local;
    register_program_signatures(registry, program);
    add_default_builtins(registry);
    auto diagnostics = check(program, &registry);
    if (!diagnostics.empty()) {
      out.error = std::string(error_code_name(diagnostics.front().code));
      return out;
    }
    Warehouse w;
    out.value = eval(program, Context{}, registry, warehouse ? &w : nullptr).print();
  } catch (const Error& e) {
    out.error = error_code_name(e.code());
  }
  return out;
}

void criterion_eduction(std::vector<std::string>& failures) {
  EXPECT(run_program("#d @ [d:5] where dimension d end", "[]", true).value == "5:int");
  EXPECT(run_program("(#d + 1) @ [d:1]", "[]", true).value == "2:int");
  EXPECT(run_program("1 + 2.5", "[]", true).value == "3.5:double");
  EXPECT(run_program("true & 1", "[]", true).error == "strict-type-error");

  // the shared subexpression calls its instrumented procedure once with the
  // warehouse on, twice with it off
  for (bool warehouse : {true, false}) {
    int calls = 0;
    ProcedureRegistry registry;
    registry.register_procedure(
        HostSignature{"f", {HostDescriptor::h_long()}, HostDescriptor::h_long()},
        [&calls](std::span<const Value> args) {
          ++calls;
          return Value::of_int(args[0].as_int());
        });
    const Outcome out = run_program(
        "x @ [d:1] + x @ [d:1] where dimension d; x = f(#d) end", "[]", warehouse,
        &registry);
    EXPECT(out.value == "2:int");
    EXPECT_MSG(calls == (warehouse ? 1 : 2),
               "instrumented call count with warehouse " +
                   std::string(warehouse ? "on" : "off"));
  }

  // warehouse on/off agree value-for-value over 500 generated programs
  testing::Rng rng(7007);
  int agreed = 0;
  for (int i = 0; i < 500; ++i) {
    const std::string source = testing::random_expr_source(rng, 3);
    const Outcome with = run_program(source, "[d:0,e:1]", true);
    const Outcome without = run_program(source, "[d:0,e:1]", false);
    EXPECT_MSG(with.value == without.value && with.error == without.error,
               "warehouse changed the outcome of: " + source);
    if (with.value == without.value && with.error == without.error) ++agreed;
  }
  EXPECT(agreed == 500);
}

// ---------------------------------------------------------------------------
// 8. CLI contract: bit-exact stdout and exit codes, text and JSON.

std::string read_golden(const std::string& name, std::vector<std::string>& failures) {
  std::ifstream f(std::string(HOIL_GOLDEN_DIR) + "/" + name);
  if (!f) {
    failures.push_back("missing golden file " + name);
    return {};
  }
  std::ostringstream buffer;
  buffer << f.rdbuf();
  return buffer.str();
}

void criterion_cli(std::vector<std::string>& failures) {
  struct Case {
    std::vector<std::string> args;
    std::string golden_out;
    std::string golden_err;  // empty means "must be empty"
    int exit_code;
  };
  const std::vector<Case> cases = {
      {{"eval", "-e", "1 + 2.5"}, "eval_add.txt", "", 0},
      {{"eval", "--json", "-e", "1 + 2.5"}, "eval_add.json", "", 0},
      {{"join", "int", "string"}, "join_int_string.txt", "", 0},
      {{"join", "--json", "int", "string"}, "join_int_string.json", "", 0},
      {{"eval", "-e", "true & 1"}, "eval_strict_err.txt", "eval_strict_err.stderr.txt", 1},
      {{"eval", "--json", "-e", "true & 1"}, "eval_strict_err.json", "", 1},
  };
  for (const Case& c : cases) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(c.args, out, err);
    EXPECT_MSG(code == c.exit_code, "exit code for " + c.args[0]);
    EXPECT_MSG(out.str() == read_golden(c.golden_out, failures),
               "stdout drifted from " + c.golden_out);
    if (c.golden_err.empty()) {
      EXPECT_MSG(err.str().empty(), "stderr expected empty for " + c.golden_out);
    } else {
      EXPECT_MSG(err.str() == read_golden(c.golden_err, failures),
                 "stderr drifted from " + c.golden_err);
    }
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "table-conformance", criterion_table},
      {2, "union-identities", criterion_union},
      {3, "operator-semantics", criterion_operators},
      {4, "context-calculus", criterion_context},
      {5, "type-theory-axioms", criterion_axioms},
      {6, "hybrid-boundary", criterion_boundary},
      {7, "eduction", criterion_eduction},
      {8, "cli-contract", criterion_cli},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    std::vector<std::string> failures;
    try {
      c.body(failures);
    } catch (const std::exception& e) {
      failures.push_back(std::string("unexpected exception: ") + e.what());
    }
    if (failures.empty()) {
      std::printf("PASS  %d. %s\n", c.number, c.name.c_str());
    } else {
      ++failed;
      std::printf("FAIL  %d. %s (%zu failure%s)\n", c.number, c.name.c_str(),
                  failures.size(), failures.size() == 1 ? "" : "s");
      for (const std::string& f : failures) {
        std::printf("      - %s\n", f.c_str());
      }
    }
  }
  if (failed == 0) {
    std::printf("all %zu acceptance criteria passed\n", criteria.size());
  } else {
    std::printf("%d of %zu acceptance criteria failed\n", failed, criteria.size());
  }
  return failed == 0 ? 0 : 1;
}
