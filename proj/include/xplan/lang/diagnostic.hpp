#pragma once

#include <string>
#include <vector>

#include "xplan/errors.hpp"
#include "xplan/lang/ast.hpp"

namespace xplan::lang {

/// Diagnostic codes. Each validation rule owns one code so tools can match on it.
namespace code {
inline constexpr const char* syntax = "E-SYNTAX";
inline constexpr const char* duplicate = "E-DUP";
inline constexpr const char* cpf = "E-CPF";         // missing / duplicate / misplaced CPF
inline constexpr const char* reference = "E-REF";   // undeclared name
inline constexpr const char* type = "E-TYPE";
inline constexpr const char* arity = "E-ARITY";
inline constexpr const char* normalization = "E-NORM";
inline constexpr const char* probability = "E-PROB"; // Bernoulli parameter outside [0,1]
inline constexpr const char* stochastic = "E-STOCH"; // stochastic node in a deterministic position
inline constexpr const char* enum_decl = "E-ENUM";
inline constexpr const char* assignment = "E-ASSIGN";
inline constexpr const char* domain = "E-DOMAIN";
inline constexpr const char* instance = "E-INST";
} // namespace code

struct Diagnostic {
    std::string code;
    SourcePos pos;
    std::string message;

    /// `error[CODE]: line:col: message`
    std::string format() const;
};

class ParseError : public InputError {
public:
    explicit ParseError(Diagnostic d);
    const Diagnostic& diagnostic() const { return diag_; }

private:
    Diagnostic diag_;
};

class ValidationError : public InputError {
public:
    explicit ValidationError(std::vector<Diagnostic> ds);
    const std::vector<Diagnostic>& diagnostics() const { return diags_; }

private:
    std::vector<Diagnostic> diags_;
};

} // namespace xplan::lang
