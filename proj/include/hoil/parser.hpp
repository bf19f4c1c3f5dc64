#pragma once

#include <string>

#include "hoil/ast.hpp"

namespace hoil {

/// Parses a program: optional %signatures ... %end block, optional
/// %context [..] line, then one expression. Throws Error with the position
/// of the first syntax error.
Program parse(std::string_view source, std::string source_name = "<expr>");

}  // namespace hoil
