#pragma once

#include <string_view>

#include "xplan/lang/ast.hpp"
#include "xplan/lang/diagnostic.hpp"

namespace xplan::lang {

/// Parses a domain file. Throws ParseError with a positioned diagnostic listing
/// the expected tokens, or naming the duplicate declaration.
DomainModel parse_domain(std::string_view text);

/// Parses an instance file. Whether the named domain exists is checked by validate().
InstanceModel parse_instance(std::string_view text);

/// Parses a single expression (used by tests and tools).
ExprPtr parse_expression(std::string_view text);

} // namespace xplan::lang
