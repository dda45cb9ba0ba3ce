#include "xplan/lang/printer.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace xplan::lang {

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    std::string s(buf, ptr);
    if (s == "-0") s = "0";
    return s;
}

namespace {

enum Prec {
    kIf = 0,
    kImplies = 1,
    kOr = 2,
    kAnd = 3,
    kCompare = 4,
    kAdd = 5,
    kMul = 6,
    kUnary = 7,
    kPrimary = 8,
};

int precedence(BinaryOp op) {
    switch (op) {
    case BinaryOp::implies: return kImplies;
    case BinaryOp::logical_or: return kOr;
    case BinaryOp::logical_and: return kAnd;
    case BinaryOp::eq:
    case BinaryOp::neq:
    case BinaryOp::lt:
    case BinaryOp::le:
    case BinaryOp::gt:
    case BinaryOp::ge: return kCompare;
    case BinaryOp::add:
    case BinaryOp::sub: return kAdd;
    case BinaryOp::mul:
    case BinaryOp::div: return kMul;
    }
    return kPrimary;
}

const char* spelling(BinaryOp op) {
    switch (op) {
    case BinaryOp::add: return " + ";
    case BinaryOp::sub: return " - ";
    case BinaryOp::mul: return " * ";
    case BinaryOp::div: return " / ";
    case BinaryOp::eq: return " == ";
    case BinaryOp::neq: return " ~= ";
    case BinaryOp::lt: return " < ";
    case BinaryOp::le: return " <= ";
    case BinaryOp::gt: return " > ";
    case BinaryOp::ge: return " >= ";
    case BinaryOp::logical_and: return " ^ ";
    case BinaryOp::logical_or: return " | ";
    case BinaryOp::implies: return " => ";
    }
    return " ? ";
}

std::string literal_text(const LiteralValue& v) {
    if (const bool* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
    if (const double* d = std::get_if<double>(&v)) return format_number(*d);
    return "@" + std::get<EnumLiteral>(v).value;
}

class ExprPrinter {
public:
    std::string str() const { return out_.str(); }

    void print(const Expr& e, int min_prec) {
        int p = own_precedence(e);
        bool wrap = p < min_prec;
        if (wrap) out_ << '(';
        std::visit([&](const auto& n) { emit(n); }, e.node);
        if (wrap) out_ << ')';
    }

private:
    static int own_precedence(const Expr& e) {
        if (const auto* b = std::get_if<BinaryExpr>(&e.node)) return precedence(b->op);
        if (std::holds_alternative<IfExpr>(e.node)) return kIf;
        if (std::holds_alternative<UnaryExpr>(e.node)) return kUnary;
        if (const auto* l = std::get_if<LiteralExpr>(&e.node)) {
            const double* d = std::get_if<double>(&l->value);
            if (d && std::signbit(*d) && *d != 0.0) return kUnary;
        }
        return kPrimary;
    }

    void emit(const LiteralExpr& x) { out_ << literal_text(x.value); }
    void emit(const VariableExpr& x) { out_ << '?' << x.name; }
    void emit(const ObjectExpr& x) { out_ << '$' << x.name; }

    void emit(const FluentExpr& x) {
        out_ << x.name;
        if (x.args.empty()) return;
        out_ << '(';
        for (std::size_t i = 0; i < x.args.size(); ++i) {
            if (i) out_ << ", ";
            print(*x.args[i], kPrimary);
        }
        out_ << ')';
    }

    void emit(const UnaryExpr& x) {
        if (x.op == UnaryOp::logical_not) {
            out_ << '~';
            print(*x.operand, kUnary);
            return;
        }
        out_ << '-';
        // Keep `-(2)` distinct from the literal -2.
        bool number_operand = false;
        if (const auto* l = std::get_if<LiteralExpr>(&x.operand->node)) {
            number_operand = std::holds_alternative<double>(l->value);
        }
        print(*x.operand, number_operand ? kPrimary + 1 : kUnary);
    }

    void emit(const BinaryExpr& x) {
        int p = precedence(x.op);
        int left = p;
        int right = p + 1;
        if (x.op == BinaryOp::implies) {
            left = p + 1;
            right = p;
        } else if (p == kCompare) {
            left = p + 1;
        }
        print(*x.lhs, left);
        out_ << spelling(x.op);
        print(*x.rhs, right);
    }

    void emit(const IfExpr& x) {
        out_ << "if (";
        print(*x.condition, kIf);
        out_ << ") then ";
        print(*x.then_branch, kIf);
        out_ << " else ";
        print(*x.else_branch, kIf);
    }

    void emit(const AggregateExpr& x) {
        switch (x.op) {
        case AggregateOp::sum: out_ << "sum_{"; break;
        case AggregateOp::product: out_ << "prod_{"; break;
        case AggregateOp::exists: out_ << "exists_{"; break;
        case AggregateOp::forall: out_ << "forall_{"; break;
        }
        for (std::size_t i = 0; i < x.vars.size(); ++i) {
            if (i) out_ << ", ";
            out_ << '?' << x.vars[i].name << " : " << x.vars[i].type;
        }
        out_ << "} [";
        print(*x.body, kIf);
        out_ << ']';
    }

    void emit(const BernoulliExpr& x) {
        out_ << "Bernoulli(";
        print(*x.probability, kIf);
        out_ << ')';
    }

    void emit(const DiscreteExpr& x) {
        out_ << "Discrete(" << x.enum_type;
        for (const auto& b : x.branches) {
            out_ << ", @" << b.value << " : ";
            print(*b.probability, kIf);
        }
        out_ << ')';
    }

    void emit(const KronDeltaExpr& x) {
        out_ << "KronDelta(";
        print(*x.value, kIf);
        out_ << ')';
    }

    std::ostringstream out_;
};

std::string expr_text(const Expr& e) {
    ExprPrinter p;
    p.print(e, kIf);
    return p.str();
}

std::string value_type_text(const ValueType& t) {
    switch (t.kind) {
    case ValueKind::boolean: return "bool";
    case ValueKind::real: return "real";
    case ValueKind::enumeration: return t.enum_name;
    }
    return "?";
}

std::string joined(const std::vector<std::string>& xs, const std::string& prefix = "") {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += prefix + xs[i];
    }
    return out;
}

void print_assignments(std::ostringstream& out, const char* header, const std::vector<Assignment>& as) {
    out << "    " << header << " {\n";
    for (const auto& a : as) {
        out << "        " << a.fluent;
        if (!a.args.empty()) out << '(' << joined(a.args) << ')';
        out << " = " << literal_text(a.value) << ";\n";
    }
    out << "    };\n";
}

} // namespace

std::string pretty_print(const Expr& e) { return expr_text(e); }

std::string pretty_print(const DomainModel& d) {
    std::ostringstream out;
    out << "domain " << d.name << " {\n";
    if (!d.requirements.empty()) {
        out << "    requirements = { " << joined(d.requirements) << " };\n";
    }

    bool any_types = !d.object_types.empty();
    for (const auto& e : d.enums) any_types |= !e.from_state_block;
    if (any_types) {
        out << "\n    types {\n";
        for (const auto& o : d.object_types) out << "        " << o.name << " : object;\n";
        for (const auto& e : d.enums) {
            if (!e.from_state_block) out << "        " << e.name << " : {" << joined(e.values, "@") << "};\n";
        }
        out << "    };\n";
    }

    // Fluents keep declaration order: runs of preference fluents become cstate
    // blocks, everything else pvariables blocks.
    std::size_t i = 0;
    while (i < d.fluents.size()) {
        bool pref = d.fluents[i].preference;
        out << '\n' << (pref ? "    cstate Fluent {\n" : "    pvariables {\n");
        for (; i < d.fluents.size() && d.fluents[i].preference == pref; ++i) {
            const FluentDecl& f = d.fluents[i];
            out << "        " << f.name;
            if (pref) {
                const EnumDecl* e = find_enum(d, f.type.enum_name);
                out << " : {" << (e ? joined(e->values) : std::string()) << '}';
                const auto* dv = std::get_if<EnumLiteral>(&f.default_value);
                if (e && dv && dv->value != e->values.front()) out << " = " << dv->value;
                out << ";\n";
                continue;
            }
            if (!f.params.empty()) out << '(' << joined(f.params) << ')';
            out << " : { " << to_string(f.kind) << ", " << value_type_text(f.type)
                << ", default = " << literal_text(f.default_value) << " };\n";
        }
        out << "    };\n";
    }

    if (!d.cpfs.empty()) {
        out << "\n    cpfs {\n";
        for (const auto& c : d.cpfs) {
            out << "        " << c.target << '\'';
            if (!c.params.empty()) out << '(' << joined(c.params, "?") << ')';
            out << " = " << expr_text(*c.body) << ";\n";
        }
        out << "    };\n";
    }

    out << "\n    reward = " << (d.reward ? expr_text(*d.reward) : std::string("0")) << ";\n";

    if (!d.preconditions.empty()) {
        out << "\n    action-preconditions {\n";
        for (const auto& p : d.preconditions) out << "        " << expr_text(*p) << ";\n";
        out << "    };\n";
    }
    out << "}\n";
    return out.str();
}

std::string print_nonfluents_block(const std::vector<Assignment>& assignments) {
    std::ostringstream out;
    print_assignments(out, "non-fluents", assignments);
    return out.str();
}

std::string pretty_print(const InstanceModel& m) {
    std::ostringstream out;
    out << "instance " << m.name << " {\n";
    out << "    domain = " << m.domain_name << ";\n";
    if (!m.objects.empty()) {
        out << "\n    objects {\n";
        for (const auto& o : m.objects) out << "        " << o.type << " : {" << joined(o.objects, "$") << "};\n";
        out << "    };\n";
    }
    if (!m.non_fluents.empty()) {
        out << '\n';
        print_assignments(out, "non-fluents", m.non_fluents);
    }
    if (!m.init_state.empty()) {
        out << '\n';
        print_assignments(out, "init-state", m.init_state);
    }
    out << "\n    horizon = " << m.horizon << ";\n";
    out << "    discount = " << format_number(m.discount) << ";\n";
    out << "}\n";
    return out.str();
}

} // namespace xplan::lang
