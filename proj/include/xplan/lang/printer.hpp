#pragma once

#include <string>
#include <vector>

#include "xplan/lang/ast.hpp"

namespace xplan::lang {

std::string pretty_print(const DomainModel& d);
std::string pretty_print(const InstanceModel& m);
std::string pretty_print(const Expr& e);

/// A `non-fluents { ... };` block on its own, indented for embedding in an instance.
std::string print_nonfluents_block(const std::vector<Assignment>& assignments);

/// Shortest decimal form that reads back to the same double.
std::string format_number(double v);

} // namespace xplan::lang
