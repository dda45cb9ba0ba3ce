#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "xplan/lang/ast.hpp"

namespace xplan::lang::detail {

enum class Tok {
    end,
    ident,
    number,
    variable,   // ?x
    enum_value, // @x
    object,     // $x
    lbrace, rbrace, lparen, rparen, lbracket, rbracket,
    semicolon, comma, colon, prime,
    assign,     // =
    eq, neq, lt, le, gt, ge,
    plus, minus, star, slash,
    logical_and, logical_or, logical_not, implies,
};

struct Token {
    Tok kind = Tok::end;
    std::string text; // identifier / sigil name without the sigil / number lexeme
    double number = 0.0;
    SourcePos pos;
};

/// Splits the whole input up front. Throws ParseError on an unknown character.
std::vector<Token> tokenize(std::string_view text);

std::string describe(Tok kind);
std::string describe(const Token& t);

} // namespace xplan::lang::detail
