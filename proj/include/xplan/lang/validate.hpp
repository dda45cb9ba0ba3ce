#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xplan/lang/ast.hpp"
#include "xplan/lang/diagnostic.hpp"

namespace xplan::lang {

/// A domain/instance pair that passed every validation rule, with the symbol
/// tables grounding needs. Only validate() creates one.
class CheckedModel {
public:
    const DomainModel& domain() const { return domain_; }
    const InstanceModel& instance() const { return instance_; }

    const FluentDecl* fluent(const std::string& name) const;
    const EnumDecl* enum_type(const std::string& name) const;
    bool is_object_type(const std::string& name) const;

    /// Enum values or instance objects of a parameter type, in declaration order.
    const std::vector<std::string>& members(const std::string& type) const;

    /// Index of `value` within `type`, if it is a member.
    std::optional<int> member_index(const std::string& type, const std::string& value) const;

    /// Enum type that declares `value` (enum values are unique across the domain).
    std::optional<std::string> enum_of_value(const std::string& value) const;

    /// Type of instance object `name`.
    std::optional<std::string> type_of_object(const std::string& name) const;

private:
    friend CheckedModel validate(const DomainModel&, const InstanceModel&);
    CheckedModel() = default;

    DomainModel domain_;
    InstanceModel instance_;
    std::map<std::string, std::size_t> fluent_index_;
    std::map<std::string, std::size_t> enum_index_;
    std::map<std::string, std::vector<std::string>> members_;
    std::map<std::string, std::string> value_type_; // enum value -> enum type
    std::map<std::string, std::string> object_type_; // object -> object type
};

/// Checks every rule; throws ValidationError carrying one diagnostic per violation.
CheckedModel validate(const DomainModel& domain, const InstanceModel& instance);

/// Absolute tolerance for Discrete normalization.
inline constexpr double kNormalizationTolerance = 1e-9;

} // namespace xplan::lang
