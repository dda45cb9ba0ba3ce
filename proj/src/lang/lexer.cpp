#include "lexer.hpp"

#include <array>
#include <cctype>
#include <charconv>

#include "xplan/lang/diagnostic.hpp"

namespace xplan::lang::detail {

namespace {

// Keywords spelled with a hyphen; the lexer joins `non` `-` `fluent` into one token.
constexpr std::array<std::string_view, 6> kHyphenated = {
    "state-fluent", "action-fluent", "non-fluent", "non-fluents", "init-state", "action-preconditions",
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Token t;
            t.pos = {line_, col_};
            if (at_end()) {
                out.push_back(t);
                return out;
            }
            char c = peek();
            if (ident_start(c)) {
                t.kind = Tok::ident;
                t.text = identifier();
                join_hyphenated(t.text);
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                number(t);
            } else if (c == '?' || c == '@' || c == '$') {
                advance();
                if (at_end() || !ident_start(peek())) fail(t.pos, std::string("expected a name after '") + c + "'");
                t.kind = c == '?' ? Tok::variable : c == '@' ? Tok::enum_value : Tok::object;
                t.text = identifier();
            } else {
                punct(t);
            }
            out.push_back(std::move(t));
        }
    }

private:
    bool at_end() const { return i_ >= text_.size(); }
    char peek(std::size_t k = 0) const { return i_ + k < text_.size() ? text_[i_ + k] : '\0'; }

    void advance() {
        if (text_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }

    void skip_space() {
        while (!at_end()) {
            char c = peek();
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (!at_end() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    std::string identifier() {
        std::string s;
        while (!at_end() && ident_char(peek())) {
            s += peek();
            advance();
        }
        return s;
    }

    void join_hyphenated(std::string& word) {
        for (;;) {
            if (peek() != '-' || !ident_start(peek(1))) return;
            std::size_t j = i_ + 1;
            while (j < text_.size() && ident_char(text_[j])) ++j;
            std::string candidate = word + "-" + std::string(text_.substr(i_ + 1, j - i_ - 1));
            bool known = false;
            for (auto k : kHyphenated) {
                if (k == candidate || (k.size() > candidate.size() && k.substr(0, candidate.size() + 1) == candidate + "-")) {
                    known = true;
                }
            }
            if (!known) return;
            while (i_ < j) advance();
            word = std::move(candidate);
        }
    }

    void number(Token& t) {
        std::size_t start = i_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
        if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
            advance();
            while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
        }
        if (peek() == 'e' || peek() == 'E') {
            std::size_t k = 1;
            if (peek(1) == '+' || peek(1) == '-') k = 2;
            if (std::isdigit(static_cast<unsigned char>(peek(k)))) {
                for (std::size_t n = 0; n < k; ++n) advance();
                while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
            }
        }
        t.kind = Tok::number;
        t.text = std::string(text_.substr(start, i_ - start));
        // One exact decimal-to-binary conversion of the lexeme.
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
        if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) {
            fail(t.pos, "malformed number '" + t.text + "'");
        }
    }

    void punct(Token& t) {
        char c = peek();
        char n = peek(1);
        auto one = [&](Tok k) {
            t.kind = k;
            t.text = std::string(1, c);
            advance();
        };
        auto two = [&](Tok k) {
            t.kind = k;
            t.text = std::string{c, n};
            advance();
            advance();
        };
        switch (c) {
        case '{': return one(Tok::lbrace);
        case '}': return one(Tok::rbrace);
        case '(': return one(Tok::lparen);
        case ')': return one(Tok::rparen);
        case '[': return one(Tok::lbracket);
        case ']': return one(Tok::rbracket);
        case ';': return one(Tok::semicolon);
        case ',': return one(Tok::comma);
        case ':': return one(Tok::colon);
        case '\'': return one(Tok::prime);
        case '+': return one(Tok::plus);
        case '-': return one(Tok::minus);
        case '*': return one(Tok::star);
        case '/': return one(Tok::slash);
        case '^':
        case '&': return one(Tok::logical_and);
        case '|': return one(Tok::logical_or);
        case '=':
            if (n == '=') return two(Tok::eq);
            if (n == '>') return two(Tok::implies);
            return one(Tok::assign);
        case '~':
        case '!':
            if (n == '=') return two(Tok::neq);
            return one(Tok::logical_not);
        case '<':
            if (n == '=') return two(Tok::le);
            return one(Tok::lt);
        case '>':
            if (n == '=') return two(Tok::ge);
            return one(Tok::gt);
        default:
            fail(t.pos, std::string("unexpected character '") + c + "'");
        }
    }

    [[noreturn]] void fail(SourcePos pos, std::string msg) {
        throw ParseError(Diagnostic{code::syntax, pos, std::move(msg)});
    }

    std::string_view text_;
    std::size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;
};

} // namespace

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

std::string describe(Tok kind) {
    switch (kind) {
    case Tok::end: return "end of input";
    case Tok::ident: return "identifier";
    case Tok::number: return "number";
    case Tok::variable: return "'?variable'";
    case Tok::enum_value: return "'@value'";
    case Tok::object: return "'$object'";
    case Tok::lbrace: return "'{'";
    case Tok::rbrace: return "'}'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::lbracket: return "'['";
    case Tok::rbracket: return "']'";
    case Tok::semicolon: return "';'";
    case Tok::comma: return "','";
    case Tok::colon: return "':'";
    case Tok::prime: return "'''";
    case Tok::assign: return "'='";
    case Tok::eq: return "'=='";
    case Tok::neq: return "'~='";
    case Tok::lt: return "'<'";
    case Tok::le: return "'<='";
    case Tok::gt: return "'>'";
    case Tok::ge: return "'>='";
    case Tok::plus: return "'+'";
    case Tok::minus: return "'-'";
    case Tok::star: return "'*'";
    case Tok::slash: return "'/'";
    case Tok::logical_and: return "'^'";
    case Tok::logical_or: return "'|'";
    case Tok::logical_not: return "'~'";
    case Tok::implies: return "'=>'";
    }
    return "?";
}

std::string describe(const Token& t) {
    switch (t.kind) {
    case Tok::ident: return "'" + t.text + "'";
    case Tok::number: return "number " + t.text;
    case Tok::variable: return "'?" + t.text + "'";
    case Tok::enum_value: return "'@" + t.text + "'";
    case Tok::object: return "'$" + t.text + "'";
    default: return describe(t.kind);
    }
}

} // namespace xplan::lang::detail
