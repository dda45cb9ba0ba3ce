#include "xplan/attributes.hpp"

namespace xplan {

std::string_view to_string(Representation v) { return v == Representation::textual ? "textual" : "visual"; }
std::string_view to_string(Detail v) { return v == Detail::rich ? "rich" : "poor"; }
std::string_view to_string(Duration v) { return v == Duration::long_ ? "long" : "short"; }
std::string_view to_string(Scope v) { return v == Scope::local ? "local" : "global"; }

std::optional<Representation> parse_representation(std::string_view s) {
    if (s == "textual") return Representation::textual;
    if (s == "visual") return Representation::visual;
    return std::nullopt;
}

std::optional<Detail> parse_detail(std::string_view s) {
    if (s == "rich") return Detail::rich;
    if (s == "poor") return Detail::poor;
    return std::nullopt;
}

std::optional<Duration> parse_duration(std::string_view s) {
    if (s == "long") return Duration::long_;
    if (s == "short") return Duration::short_;
    return std::nullopt;
}

std::optional<Scope> parse_scope(std::string_view s) {
    if (s == "local") return Scope::local;
    if (s == "global") return Scope::global;
    return std::nullopt;
}

std::string ExplanationAttributes::to_string() const {
    std::string out;
    out += xplan::to_string(representation);
    out += ", ";
    out += xplan::to_string(detail);
    out += ", ";
    out += xplan::to_string(duration);
    out += ", ";
    out += xplan::to_string(scope);
    return out;
}

std::array<ExplanationAttributes, 16> ExplanationAttributes::all() {
    std::array<ExplanationAttributes, 16> out{};
    for (int i = 0; i < 16; ++i) {
        out[i] = ExplanationAttributes{
            static_cast<Representation>((i >> 3) & 1),
            static_cast<Detail>((i >> 2) & 1),
            static_cast<Duration>((i >> 1) & 1),
            static_cast<Scope>(i & 1),
        };
    }
    return out;
}

} // namespace xplan
