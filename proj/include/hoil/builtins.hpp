#pragma once

#include "hoil/ast.hpp"
#include "hoil/bridge.hpp"

namespace hoil {

/// Registers the stock host procedures (abs, min, max, sqrt, floor, ceil,
/// upper, lower, log, tick) under the given signatures when names match, and
/// binds any other declared signature to a callable that fails with a typed
/// error if invoked. Signatures already present in the registry are skipped.
void register_program_signatures(ProcedureRegistry& registry, const Program& program);

/// Adds the stock procedures under their default signatures, skipping names
/// already registered (a program's own declaration wins).
void add_default_builtins(ProcedureRegistry& registry);

/// A registry preloaded with the stock procedures under their default
/// signatures. `tick` is a process-local counter (1, 2, ...) kept for
/// observing warehouse behavior; everything else is pure.
ProcedureRegistry make_builtin_registry();

/// Resets the tick counter; tests use this for reproducible runs.
void reset_tick_counter();

}  // namespace hoil
