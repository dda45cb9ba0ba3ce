#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace xplan {

enum class Representation { textual, visual };
enum class Detail { rich, poor };
enum class Duration { long_, short_ };
enum class Scope { local, global };

/// One explanation configuration: a value from each of the four attribute domains.
struct ExplanationAttributes {
    Representation representation = Representation::textual;
    Detail detail = Detail::rich;
    Duration duration = Duration::long_;
    Scope scope = Scope::local;

    bool operator==(const ExplanationAttributes&) const = default;

    /// "visual, poor, long, global"
    std::string to_string() const;

    /// All 16 tuples, representation varying slowest.
    static std::array<ExplanationAttributes, 16> all();
};

std::string_view to_string(Representation v);
std::string_view to_string(Detail v);
std::string_view to_string(Duration v);
std::string_view to_string(Scope v);

std::optional<Representation> parse_representation(std::string_view s);
std::optional<Detail> parse_detail(std::string_view s);
std::optional<Duration> parse_duration(std::string_view s);
std::optional<Scope> parse_scope(std::string_view s);

} // namespace xplan
