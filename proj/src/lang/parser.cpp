#include "xplan/lang/parser.hpp"

#include <initializer_list>
#include <set>

#include "lexer.hpp"

namespace xplan::lang {

namespace {

using detail::Tok;
using detail::Token;

bool is_aggregate_keyword(const std::string& s) {
    return s == "sum_" || s == "prod_" || s == "exists_" || s == "forall_";
}

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(detail::tokenize(text)) {}

    DomainModel domain() {
        DomainModel d;
        keyword("domain");
        d.name = expect(Tok::ident, "domain name").text;
        expect(Tok::lbrace);
        std::set<std::string> seen;
        bool saw_reward = false;
        while (!at(Tok::rbrace)) {
            const Token& head = peek();
            if (head.kind != Tok::ident) {
                fail_expected({"'requirements'", "'types'", "'pvariables'", "'cstate'", "'cpfs'", "'reward'",
                               "'action-preconditions'", "'}'"});
            }
            std::string section = head.text;
            bool repeatable = section == "cstate" || section == "pvariables" || section == "types";
            if (!repeatable && !seen.insert(section).second) {
                fail(code::duplicate, head.pos, "section '" + section + "' appears twice");
            }
            if (section == "requirements") {
                requirements(d);
            } else if (section == "types") {
                types(d);
            } else if (section == "pvariables") {
                pvariables(d);
            } else if (section == "cstate") {
                state_block(d);
            } else if (section == "cpfs") {
                cpfs(d);
            } else if (section == "reward") {
                next();
                expect(Tok::assign);
                d.reward = expression();
                expect(Tok::semicolon);
                saw_reward = true;
            } else if (section == "action-preconditions") {
                next();
                expect(Tok::lbrace);
                while (!at(Tok::rbrace)) {
                    d.preconditions.push_back(expression());
                    expect(Tok::semicolon);
                }
                close_block();
            } else {
                fail_expected({"'requirements'", "'types'", "'pvariables'", "'cstate'", "'cpfs'", "'reward'",
                               "'action-preconditions'", "'}'"});
            }
        }
        expect(Tok::rbrace);
        expect(Tok::end);
        if (!saw_reward) fail(code::syntax, peek().pos, "domain '" + d.name + "' has no reward section");
        return d;
    }

    InstanceModel instance() {
        InstanceModel m;
        keyword("instance");
        m.name = expect(Tok::ident, "instance name").text;
        expect(Tok::lbrace);
        std::set<std::string> seen;
        SourcePos open = peek().pos;
        while (!at(Tok::rbrace)) {
            const Token& head = peek();
            static const std::initializer_list<const char*> kSections = {
                "'domain'", "'objects'", "'non-fluents'", "'init-state'", "'horizon'", "'discount'", "'}'"};
            if (head.kind != Tok::ident) fail_expected(kSections);
            std::string section = head.text;
            if (!seen.insert(section).second) {
                fail(code::duplicate, head.pos, "section '" + section + "' appears twice");
            }
            if (section == "domain") {
                next();
                expect(Tok::assign);
                m.domain_name = expect(Tok::ident, "domain name").text;
                expect(Tok::semicolon);
            } else if (section == "objects") {
                objects(m);
            } else if (section == "non-fluents") {
                next();
                m.non_fluents = assignments();
            } else if (section == "init-state") {
                next();
                m.init_state = assignments();
            } else if (section == "horizon") {
                next();
                expect(Tok::assign);
                const Token& n = expect(Tok::number, "horizon");
                if (n.number != static_cast<double>(static_cast<int>(n.number)) || n.number < 0) {
                    fail(code::syntax, n.pos, "horizon must be a non-negative integer, found " + n.text);
                }
                m.horizon = static_cast<int>(n.number);
                expect(Tok::semicolon);
            } else if (section == "discount") {
                next();
                expect(Tok::assign);
                m.discount = expect(Tok::number, "discount").number;
                expect(Tok::semicolon);
            } else {
                fail_expected(kSections);
            }
        }
        expect(Tok::rbrace);
        expect(Tok::end);
        if (!seen.count("domain")) fail(code::syntax, open, "instance '" + m.name + "' has no 'domain = ...;' line");
        if (!seen.count("horizon")) fail(code::syntax, open, "instance '" + m.name + "' has no 'horizon = ...;' line");
        return m;
    }

    ExprPtr standalone_expression() {
        ExprPtr e = expression();
        expect(Tok::end);
        return e;
    }

private:
    // --- token plumbing -------------------------------------------------

    const Token& peek(std::size_t k = 0) const {
        std::size_t j = std::min(i_ + k, toks_.size() - 1);
        return toks_[j];
    }
    bool at(Tok k) const { return peek().kind == k; }
    bool at_ident(std::string_view word) const { return at(Tok::ident) && peek().text == word; }
    const Token& next() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }

    bool accept(Tok k) {
        if (!at(k)) return false;
        next();
        return true;
    }

    const Token& expect(Tok k, const std::string& what = "") {
        if (!at(k)) {
            std::string wanted = detail::describe(k);
            if (!what.empty()) wanted += " (" + what + ")";
            fail_expected({wanted});
        }
        return next();
    }

    void keyword(std::string_view word) {
        if (!at_ident(word)) fail_expected({"'" + std::string(word) + "'"});
        next();
    }

    // Sections end with `}` and an optional `;`.
    void close_block() {
        expect(Tok::rbrace);
        accept(Tok::semicolon);
    }

    [[noreturn]] void fail(const char* c, SourcePos pos, std::string msg) const {
        throw ParseError(Diagnostic{c, pos, std::move(msg)});
    }

    [[noreturn]] void fail_expected(std::initializer_list<std::string> expected) const {
        std::string set;
        for (const auto& e : expected) {
            if (!set.empty()) set += ", ";
            set += e;
        }
        std::string msg = expected.size() == 1 ? "expected " + set : "expected one of {" + set + "}";
        fail(code::syntax, peek().pos, msg + ", found " + detail::describe(peek()));
    }
    [[noreturn]] void fail_expected(std::initializer_list<const char*> expected) const {
        std::string set;
        for (const auto* e : expected) {
            if (!set.empty()) set += ", ";
            set += e;
        }
        fail(code::syntax, peek().pos, "expected one of {" + set + "}, found " + detail::describe(peek()));
    }

    // --- domain sections ------------------------------------------------

    void requirements(DomainModel& d) {
        next();
        expect(Tok::assign);
        expect(Tok::lbrace);
        if (!at(Tok::rbrace)) {
            do {
                std::string tag = expect(Tok::ident, "requirement").text;
                while (at(Tok::minus) && peek(1).kind == Tok::ident) {
                    next();
                    tag += "-" + next().text;
                }
                d.requirements.push_back(tag);
            } while (accept(Tok::comma));
        }
        close_block();
    }

    void declare_type(const std::string& name, SourcePos pos) {
        if (!type_names_.insert(name).second) fail(code::duplicate, pos, "type '" + name + "' declared twice");
    }

    void declare_fluent(const std::string& name, SourcePos pos) {
        if (!fluent_names_.insert(name).second) {
            fail(code::duplicate, pos, "fluent '" + name + "' declared twice");
        }
    }

    std::vector<std::string> value_list() {
        std::vector<std::string> values;
        expect(Tok::lbrace);
        do {
            if (at(Tok::enum_value) || at(Tok::ident)) {
                values.push_back(next().text);
            } else {
                fail_expected({"'@value'", "identifier"});
            }
        } while (accept(Tok::comma));
        expect(Tok::rbrace);
        return values;
    }

    void types(DomainModel& d) {
        next();
        expect(Tok::lbrace);
        while (!at(Tok::rbrace)) {
            const Token& name = expect(Tok::ident, "type name");
            declare_type(name.text, name.pos);
            expect(Tok::colon);
            if (at_ident("object")) {
                next();
                d.object_types.push_back({name.text, name.pos});
            } else if (at(Tok::lbrace)) {
                d.enums.push_back({name.text, value_list(), false, name.pos});
            } else {
                fail_expected({"'object'", "'{'"});
            }
            expect(Tok::semicolon);
        }
        close_block();
    }

    LiteralValue literal() {
        if (at_ident("true") || at_ident("false")) return next().text == "true";
        if (at(Tok::enum_value) || at(Tok::ident)) return EnumLiteral{next().text};
        bool negative = accept(Tok::minus);
        if (at(Tok::number)) {
            double v = next().number;
            return negative ? -v : v;
        }
        fail_expected({"'true'", "'false'", "number", "'@value'"});
    }

    void pvariables(DomainModel& d) {
        next();
        expect(Tok::lbrace);
        while (!at(Tok::rbrace)) {
            FluentDecl f;
            const Token& name = expect(Tok::ident, "fluent name");
            f.name = name.text;
            f.pos = name.pos;
            declare_fluent(f.name, f.pos);
            if (accept(Tok::lparen)) {
                do {
                    f.params.push_back(expect(Tok::ident, "parameter type").text);
                } while (accept(Tok::comma));
                expect(Tok::rparen);
            }
            expect(Tok::colon);
            expect(Tok::lbrace);
            const Token& kind = peek();
            if (kind.kind == Tok::ident && kind.text == "state-fluent") {
                f.kind = FluentKind::state;
            } else if (kind.kind == Tok::ident && kind.text == "action-fluent") {
                f.kind = FluentKind::action;
            } else if (kind.kind == Tok::ident && kind.text == "non-fluent") {
                f.kind = FluentKind::non_fluent;
            } else {
                fail_expected({"'state-fluent'", "'action-fluent'", "'non-fluent'"});
            }
            next();
            expect(Tok::comma);
            const Token& type = expect(Tok::ident, "value type");
            if (type.text == "bool") {
                f.type = {ValueKind::boolean, ""};
            } else if (type.text == "real") {
                f.type = {ValueKind::real, ""};
            } else {
                f.type = {ValueKind::enumeration, type.text};
            }
            expect(Tok::comma);
            keyword("default");
            expect(Tok::assign);
            f.default_value = literal();
            expect(Tok::rbrace);
            expect(Tok::semicolon);
            d.fluents.push_back(std::move(f));
        }
        close_block();
    }

    // `cstate <label> { E_r : {textual, visual}; ... }` declares one enum type and one
    // preference state fluent per entry, both named after the entry.
    void state_block(DomainModel& d) {
        next();
        accept(Tok::ident); // block label, informational only
        expect(Tok::lbrace);
        while (!at(Tok::rbrace)) {
            const Token& name = expect(Tok::ident, "state fluent name");
            declare_type(name.text, name.pos);
            declare_fluent(name.text, name.pos);
            expect(Tok::colon);
            EnumDecl e{name.text, value_list(), true, name.pos};
            FluentDecl f;
            f.name = name.text;
            f.kind = FluentKind::state;
            f.type = {ValueKind::enumeration, name.text};
            f.default_value = EnumLiteral{e.values.front()};
            f.preference = true;
            f.pos = name.pos;
            if (accept(Tok::assign)) {
                if (!(at(Tok::enum_value) || at(Tok::ident))) fail_expected({"'@value'", "identifier"});
                f.default_value = EnumLiteral{next().text};
            }
            expect(Tok::semicolon);
            d.enums.push_back(std::move(e));
            d.fluents.push_back(std::move(f));
        }
        close_block();
    }

    void cpfs(DomainModel& d) {
        next();
        expect(Tok::lbrace);
        while (!at(Tok::rbrace)) {
            Cpf c;
            const Token& name = expect(Tok::ident, "state fluent name");
            c.target = name.text;
            c.pos = name.pos;
            expect(Tok::prime);
            if (accept(Tok::lparen)) {
                do {
                    c.params.push_back(expect(Tok::variable, "parameter").text);
                } while (accept(Tok::comma));
                expect(Tok::rparen);
            }
            expect(Tok::assign);
            c.body = expression();
            expect(Tok::semicolon);
            d.cpfs.push_back(std::move(c));
        }
        close_block();
    }

    // --- instance sections ----------------------------------------------

    void objects(InstanceModel& m) {
        next();
        expect(Tok::lbrace);
        while (!at(Tok::rbrace)) {
            ObjectsDecl o;
            const Token& type = expect(Tok::ident, "object type");
            o.type = type.text;
            o.pos = type.pos;
            expect(Tok::colon);
            expect(Tok::lbrace);
            do {
                if (at(Tok::object) || at(Tok::ident)) {
                    o.objects.push_back(next().text);
                } else {
                    fail_expected({"'$object'", "identifier"});
                }
            } while (accept(Tok::comma));
            expect(Tok::rbrace);
            expect(Tok::semicolon);
            m.objects.push_back(std::move(o));
        }
        close_block();
    }

    std::vector<Assignment> assignments() {
        std::vector<Assignment> out;
        expect(Tok::lbrace);
        while (!at(Tok::rbrace)) {
            Assignment a;
            const Token& name = expect(Tok::ident, "fluent name");
            a.fluent = name.text;
            a.pos = name.pos;
            if (accept(Tok::lparen)) {
                do {
                    if (at(Tok::enum_value) || at(Tok::object) || at(Tok::ident)) {
                        a.args.push_back(next().text);
                    } else {
                        fail_expected({"'@value'", "'$object'", "identifier"});
                    }
                } while (accept(Tok::comma));
                expect(Tok::rparen);
            }
            a.value = accept(Tok::assign) ? literal() : LiteralValue{true};
            expect(Tok::semicolon);
            out.push_back(std::move(a));
        }
        close_block();
        return out;
    }

    // --- expressions ----------------------------------------------------
    //
    // lowest to highest: if-then-else, =>, |, ^, comparison, + -, * /, unary.

    static ExprPtr at_pos(Expr::Node n, SourcePos pos) {
        return std::make_shared<const Expr>(Expr{std::move(n), pos});
    }

    ExprPtr expression() {
        if (at_ident("if")) return if_expr();
        return implication();
    }

    ExprPtr if_expr() {
        SourcePos pos = next().pos;
        expect(Tok::lparen);
        ExprPtr c = expression();
        expect(Tok::rparen);
        keyword("then");
        ExprPtr t = expression();
        keyword("else");
        ExprPtr e = expression();
        return at_pos(IfExpr{c, t, e}, pos);
    }

    ExprPtr implication() {
        ExprPtr lhs = disjunction();
        if (at(Tok::implies)) {
            SourcePos pos = next().pos;
            ExprPtr rhs = at_ident("if") ? if_expr() : implication();
            return at_pos(BinaryExpr{BinaryOp::implies, lhs, rhs}, pos);
        }
        return lhs;
    }

    ExprPtr disjunction() {
        ExprPtr lhs = conjunction();
        while (at(Tok::logical_or)) {
            SourcePos pos = next().pos;
            lhs = at_pos(BinaryExpr{BinaryOp::logical_or, lhs, conjunction()}, pos);
        }
        return lhs;
    }

    ExprPtr conjunction() {
        ExprPtr lhs = comparison();
        while (at(Tok::logical_and)) {
            SourcePos pos = next().pos;
            lhs = at_pos(BinaryExpr{BinaryOp::logical_and, lhs, comparison()}, pos);
        }
        return lhs;
    }

    ExprPtr comparison() {
        ExprPtr lhs = additive();
        BinaryOp op;
        switch (peek().kind) {
        case Tok::eq: op = BinaryOp::eq; break;
        case Tok::neq: op = BinaryOp::neq; break;
        case Tok::lt: op = BinaryOp::lt; break;
        case Tok::le: op = BinaryOp::le; break;
        case Tok::gt: op = BinaryOp::gt; break;
        case Tok::ge: op = BinaryOp::ge; break;
        default: return lhs;
        }
        SourcePos pos = next().pos;
        return at_pos(BinaryExpr{op, lhs, additive()}, pos);
    }

    ExprPtr additive() {
        ExprPtr lhs = multiplicative();
        while (at(Tok::plus) || at(Tok::minus)) {
            BinaryOp op = at(Tok::plus) ? BinaryOp::add : BinaryOp::sub;
            SourcePos pos = next().pos;
            lhs = at_pos(BinaryExpr{op, lhs, multiplicative()}, pos);
        }
        return lhs;
    }

    ExprPtr multiplicative() {
        ExprPtr lhs = unary();
        while (at(Tok::star) || at(Tok::slash)) {
            BinaryOp op = at(Tok::star) ? BinaryOp::mul : BinaryOp::div;
            SourcePos pos = next().pos;
            lhs = at_pos(BinaryExpr{op, lhs, unary()}, pos);
        }
        return lhs;
    }

    ExprPtr unary() {
        if (at(Tok::logical_not)) {
            SourcePos pos = next().pos;
            return at_pos(UnaryExpr{UnaryOp::logical_not, unary()}, pos);
        }
        if (at(Tok::minus)) {
            SourcePos pos = next().pos;
            // `-` directly before a number is part of the literal.
            if (at(Tok::number)) return at_pos(LiteralExpr{-next().number}, pos);
            return at_pos(UnaryExpr{UnaryOp::negate, unary()}, pos);
        }
        return primary();
    }

    ExprPtr fluent_argument() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::variable: next(); return at_pos(VariableExpr{t.text}, t.pos);
        case Tok::enum_value: next(); return at_pos(LiteralExpr{EnumLiteral{t.text}}, t.pos);
        case Tok::object: next(); return at_pos(ObjectExpr{t.text}, t.pos);
        default: fail_expected({"'?variable'", "'@value'", "'$object'"});
        }
    }

    ExprPtr primary() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::number: next(); return at_pos(LiteralExpr{t.number}, t.pos);
        case Tok::variable: next(); return at_pos(VariableExpr{t.text}, t.pos);
        case Tok::enum_value: next(); return at_pos(LiteralExpr{EnumLiteral{t.text}}, t.pos);
        case Tok::object: next(); return at_pos(ObjectExpr{t.text}, t.pos);
        case Tok::lparen: {
            next();
            ExprPtr e = expression();
            expect(Tok::rparen);
            return e;
        }
        case Tok::ident: break;
        default:
            fail_expected({"number", "identifier", "'?variable'", "'@value'", "'$object'", "'('", "'if'", "'~'",
                           "'-'"});
        }
        const std::string& word = t.text;
        if (word == "true" || word == "false") {
            next();
            return at_pos(LiteralExpr{word == "true"}, t.pos);
        }
        if (word == "if") return if_expr();
        if (is_aggregate_keyword(word) && peek(1).kind == Tok::lbrace) return aggregate();
        if (word == "Bernoulli" && peek(1).kind == Tok::lparen) {
            next();
            next();
            ExprPtr p = expression();
            expect(Tok::rparen);
            return at_pos(BernoulliExpr{p}, t.pos);
        }
        if (word == "KronDelta" && peek(1).kind == Tok::lparen) {
            next();
            next();
            ExprPtr v = expression();
            expect(Tok::rparen);
            return at_pos(KronDeltaExpr{v}, t.pos);
        }
        if (word == "Discrete" && peek(1).kind == Tok::lparen) return discrete();

        next();
        FluentExpr f{word, {}};
        if (accept(Tok::lparen)) {
            do {
                f.args.push_back(fluent_argument());
            } while (accept(Tok::comma));
            expect(Tok::rparen);
        }
        return at_pos(std::move(f), t.pos);
    }

    ExprPtr aggregate() {
        const Token& kw = next();
        AggregateOp op = kw.text == "sum_"      ? AggregateOp::sum
                         : kw.text == "prod_"   ? AggregateOp::product
                         : kw.text == "exists_" ? AggregateOp::exists
                                                : AggregateOp::forall;
        expect(Tok::lbrace);
        std::vector<TypedVariable> vars;
        do {
            std::string name = expect(Tok::variable, "bound variable").text;
            expect(Tok::colon);
            std::string type = expect(Tok::ident, "parameter type").text;
            vars.push_back({std::move(name), std::move(type)});
        } while (accept(Tok::comma));
        expect(Tok::rbrace);
        expect(Tok::lbracket);
        ExprPtr body = expression();
        expect(Tok::rbracket);
        return at_pos(AggregateExpr{op, std::move(vars), body}, kw.pos);
    }

    ExprPtr discrete() {
        SourcePos pos = next().pos;
        next();
        DiscreteExpr d;
        d.enum_type = expect(Tok::ident, "enum type").text;
        while (accept(Tok::comma)) {
            DiscreteBranch b;
            if (at(Tok::enum_value) || at(Tok::ident)) {
                b.value = next().text;
            } else {
                fail_expected({"'@value'"});
            }
            expect(Tok::colon);
            b.probability = expression();
            d.branches.push_back(std::move(b));
        }
        expect(Tok::rparen);
        return at_pos(std::move(d), pos);
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
    std::set<std::string> type_names_;
    std::set<std::string> fluent_names_;
};

} // namespace

DomainModel parse_domain(std::string_view text) { return Parser(text).domain(); }

InstanceModel parse_instance(std::string_view text) { return Parser(text).instance(); }

ExprPtr parse_expression(std::string_view text) { return Parser(text).standalone_expression(); }

} // namespace xplan::lang
