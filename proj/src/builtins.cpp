#include "hoil/builtins.hpp"

#include <atomic>
#include <cctype>
#include <cmath>
#include <iostream>

namespace hoil {

namespace {

std::atomic<std::int64_t> tick_counter{0};

// payload-driven numeric helpers so one builtin serves whichever numeric
// signature a program declares for it
double numeric_of(const Value& v) {
  switch (v.tag().name()) {
    case TypeName::Integer: return static_cast<double>(v.as_int());
    case TypeName::Float: return static_cast<double>(v.as_float());
    default: return v.as_double();
  }
}

Value same_shape(const Value& like, double v) {
  switch (like.tag().name()) {
    case TypeName::Integer: return Value::of_int(static_cast<std::int64_t>(v));
    case TypeName::Float: return Value::of_float(static_cast<float>(v));
    default: return Value::of_double(v);
  }
}

Value builtin_abs(std::span<const Value> args) {
  const Value& x = args[0];
  if (x.is(TypeName::Integer)) {
    const std::int64_t v = x.as_int();
    return Value::of_int(v == INT64_MIN ? INT64_MIN : (v < 0 ? -v : v));
  }
  return same_shape(x, std::fabs(numeric_of(x)));
}

Value builtin_min(std::span<const Value> args) {
  return numeric_of(args[0]) <= numeric_of(args[1]) ? args[0] : args[1];
}

Value builtin_max(std::span<const Value> args) {
  return numeric_of(args[0]) >= numeric_of(args[1]) ? args[0] : args[1];
}

Value builtin_sqrt(std::span<const Value> args) {
  return Value::of_double(std::sqrt(numeric_of(args[0])));
}

Value builtin_floor(std::span<const Value> args) {
  return Value::of_double(std::floor(numeric_of(args[0])));
}

Value builtin_ceil(std::span<const Value> args) {
  return Value::of_double(std::ceil(numeric_of(args[0])));
}

Value builtin_upper(std::span<const Value> args) {
  std::string s = args[0].as_string();
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return Value::of_string(std::move(s));
}

Value builtin_lower(std::span<const Value> args) {
  std::string s = args[0].as_string();
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return Value::of_string(std::move(s));
}

Value builtin_log(std::span<const Value> args) {
  std::cerr << "log: " << args[0].as_string() << '\n';
  return Value::void_value();
}

Value builtin_tick(std::span<const Value>) {
  return Value::of_int(++tick_counter);
}

HostCallable find_builtin(const std::string& name) {
  if (name == "abs") return builtin_abs;
  if (name == "min") return builtin_min;
  if (name == "max") return builtin_max;
  if (name == "sqrt") return builtin_sqrt;
  if (name == "floor") return builtin_floor;
  if (name == "ceil") return builtin_ceil;
  if (name == "upper") return builtin_upper;
  if (name == "lower") return builtin_lower;
  if (name == "log") return builtin_log;
  if (name == "tick") return builtin_tick;
  return nullptr;
}

HostSignature sig(std::string name, std::vector<HostDescriptor> params,
                  HostDescriptor returns) {
  return HostSignature{std::move(name), std::move(params), std::move(returns)};
}

}  // namespace

void reset_tick_counter() { tick_counter = 0; }

void register_program_signatures(ProcedureRegistry& registry, const Program& program) {
  for (const HostSignature& signature : program.signatures) {
    if (registry.contains(signature.name)) continue;
    HostCallable callable = find_builtin(signature.name);
    if (!callable) {
      const std::string name = signature.name;
      callable = [name](std::span<const Value>) -> Value {
        throw Error(ErrorCode::UnknownProcedure,
                    "no host binding registered for '" + name + "'");
      };
    }
    registry.register_procedure(signature, std::move(callable));
  }
}

void add_default_builtins(ProcedureRegistry& registry) {
  const auto d_long = HostDescriptor::h_long();
  const auto d_double = HostDescriptor::h_double();
  const auto d_string = HostDescriptor::h_string();
  const std::pair<HostSignature, HostCallable> defaults[] = {
      {sig("abs", {d_long}, d_long), builtin_abs},
      {sig("min", {d_long, d_long}, d_long), builtin_min},
      {sig("max", {d_long, d_long}, d_long), builtin_max},
      {sig("sqrt", {d_double}, d_double), builtin_sqrt},
      {sig("floor", {d_double}, d_double), builtin_floor},
      {sig("ceil", {d_double}, d_double), builtin_ceil},
      {sig("upper", {d_string}, d_string), builtin_upper},
      {sig("lower", {d_string}, d_string), builtin_lower},
      {sig("log", {d_string}, HostDescriptor::h_void()), builtin_log},
      {sig("tick", {}, d_long), builtin_tick},
  };
  for (const auto& [signature, callable] : defaults) {
    if (!registry.contains(signature.name)) {
      registry.register_procedure(signature, callable);
    }
  }
}

ProcedureRegistry make_builtin_registry() {
  ProcedureRegistry registry;
  add_default_builtins(registry);
  return registry;
}

}  // namespace hoil
