#include "xplan/lang/diagnostic.hpp"

namespace xplan::lang {

std::string Diagnostic::format() const {
    return "error[" + code + "]: " + std::to_string(pos.line) + ":" + std::to_string(pos.column) +
           ": " + message;
}

ParseError::ParseError(Diagnostic d) : InputError(d.format()), diag_(std::move(d)) {}

namespace {
std::string join(const std::vector<Diagnostic>& ds) {
    std::string out;
    for (const auto& d : ds) {
        if (!out.empty()) out += '\n';
        out += d.format();
    }
    return out;
}
} // namespace

ValidationError::ValidationError(std::vector<Diagnostic> ds) : InputError(join(ds)), diags_(std::move(ds)) {}

} // namespace xplan::lang
