#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hoil {

/// Command-line driver. Results go to out, diagnostics to err (in --json
/// mode everything is one JSON object on out). Exit codes: 0 success,
/// 1 type/eval errors, 2 usage errors, 3 I/O errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hoil
