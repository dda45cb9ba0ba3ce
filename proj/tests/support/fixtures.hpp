#pragma once

#include <filesystem>
#include <string>

#include "xplan/grounding/model.hpp"
#include "xplan/scenario/librarian.hpp"

namespace xplan::testing {

/// Parses, validates and grounds a domain/instance pair given as text.
grounding::GroundedModel ground_text(const std::string& domain, const std::string& instance,
                                     const grounding::GroundOptions& options = {});

/// Builds the librarian from `config` and grounds the printed text.
grounding::GroundedModel ground_librarian(const scenario::LibrarianConfig& config);

/// Sets a parameterless state fluent by value name ("true", "textual", "book_location").
void set_value(const grounding::GroundedModel& model, grounding::GroundState& s, const std::string& fluent,
               const std::string& value);

/// Name of the value a parameterless state fluent holds in `s`.
std::string value_of(const grounding::GroundedModel& model, const grounding::GroundState& s,
                     const std::string& fluent);

/// First ground action with this label; throws if absent.
grounding::ActionId action_named(const grounding::GroundedModel& model, const std::string& label);

/// Empty directory under the system temp dir, unique to this process and `name`.
std::filesystem::path scratch_dir(const std::string& name);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

} // namespace xplan::testing
