#pragma once

#include <vector>

#include "hoil/ast.hpp"

namespace hoil {

/// Static type checking. Literals and closed operator applications receive
/// static tags; expressions whose tag depends on the runtime context stay
/// dynamic and are re-checked during evaluation. Annotates the program in
/// place and returns all diagnostics found; the program is marked checked
/// when there are none.
///
/// The registry, when given, supplies procedures registered beside the
/// program's own signature declarations.
std::vector<Diagnostic> check(Program& program,
                              const ProcedureRegistry* registry = nullptr);

}  // namespace hoil
