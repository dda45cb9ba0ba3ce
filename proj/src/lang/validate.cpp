#include "xplan/lang/validate.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "xplan/lang/printer.hpp"

namespace xplan::lang {

const FluentDecl* CheckedModel::fluent(const std::string& name) const {
    auto it = fluent_index_.find(name);
    return it == fluent_index_.end() ? nullptr : &domain_.fluents[it->second];
}

const EnumDecl* CheckedModel::enum_type(const std::string& name) const {
    auto it = enum_index_.find(name);
    return it == enum_index_.end() ? nullptr : &domain_.enums[it->second];
}

bool CheckedModel::is_object_type(const std::string& name) const {
    return members_.count(name) && !enum_index_.count(name);
}

const std::vector<std::string>& CheckedModel::members(const std::string& type) const {
    static const std::vector<std::string> kEmpty;
    auto it = members_.find(type);
    return it == members_.end() ? kEmpty : it->second;
}

std::optional<int> CheckedModel::member_index(const std::string& type, const std::string& value) const {
    const auto& ms = members(type);
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (ms[i] == value) return static_cast<int>(i);
    }
    return std::nullopt;
}

std::optional<std::string> CheckedModel::enum_of_value(const std::string& value) const {
    auto it = value_type_.find(value);
    if (it == value_type_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::string> CheckedModel::type_of_object(const std::string& name) const {
    auto it = object_type_.find(name);
    if (it == object_type_.end()) return std::nullopt;
    return it->second;
}

namespace {

struct Type {
    enum class Kind { boolean, number, enumeration, object, invalid };
    Kind kind = Kind::invalid;
    std::string name; // enum / object type name

    static Type boolean() { return {Kind::boolean, ""}; }
    static Type number() { return {Kind::number, ""}; }
    static Type invalid() { return {Kind::invalid, ""}; }

    bool numeric() const { return kind == Kind::boolean || kind == Kind::number; }
    bool valid() const { return kind != Kind::invalid; }
    bool operator==(const Type&) const = default;
};

std::string describe(const Type& t) {
    switch (t.kind) {
    case Type::Kind::boolean: return "bool";
    case Type::Kind::number: return "real";
    case Type::Kind::enumeration: return "enum " + t.name;
    case Type::Kind::object: return "object " + t.name;
    case Type::Kind::invalid: return "<invalid>";
    }
    return "?";
}

std::string short_text(const Expr& e) {
    std::string s = pretty_print(e);
    if (s.size() > 60) s = s.substr(0, 57) + "...";
    return s;
}

using Env = std::map<std::string, std::string>; // variable -> type name

class Validator {
public:
    Validator(const DomainModel& d, const InstanceModel& m) : d_(d), m_(m) {}

    std::vector<Diagnostic> run() {
        symbols();
        instance_header();
        fluent_decls();
        assignments();
        cpfs();
        reward();
        preconditions();
        return std::move(diags_);
    }

    std::map<std::string, std::size_t> fluent_index;
    std::map<std::string, std::size_t> enum_index;
    std::map<std::string, std::vector<std::string>> members;
    std::map<std::string, std::string> value_type;
    std::map<std::string, std::string> object_type;

private:
    void error(const char* c, SourcePos pos, std::string msg) {
        diags_.push_back({c, pos, std::move(msg)});
    }

    // --- declarations ---------------------------------------------------

    void symbols() {
        std::set<std::string> type_names;
        for (std::size_t i = 0; i < d_.enums.size(); ++i) {
            const EnumDecl& e = d_.enums[i];
            if (!type_names.insert(e.name).second) {
                error(code::duplicate, e.pos, "type '" + e.name + "' declared twice");
                continue;
            }
            enum_index[e.name] = i;
            if (e.values.size() < 2) {
                error(code::enum_decl, e.pos, "enum '" + e.name + "' needs at least two values");
            }
            std::set<std::string> seen;
            for (const auto& v : e.values) {
                if (!seen.insert(v).second) {
                    error(code::duplicate, e.pos, "value '" + v + "' repeated in enum '" + e.name + "'");
                    continue;
                }
                auto [it, fresh] = value_type.emplace(v, e.name);
                if (!fresh) {
                    error(code::duplicate, e.pos,
                          "enum value '" + v + "' of '" + e.name + "' is already declared by '" + it->second + "'");
                }
            }
            members[e.name] = e.values;
        }
        for (const auto& o : d_.object_types) {
            if (!type_names.insert(o.name).second) {
                error(code::duplicate, o.pos, "type '" + o.name + "' declared twice");
                continue;
            }
            members[o.name]; // filled from the instance
        }
        for (std::size_t i = 0; i < d_.fluents.size(); ++i) {
            const FluentDecl& f = d_.fluents[i];
            if (f.name == "noop") {
                error(code::duplicate, f.pos, "'noop' is reserved for the implicit no-op action");
                continue;
            }
            if (!fluent_index.emplace(f.name, i).second) {
                error(code::duplicate, f.pos, "fluent '" + f.name + "' declared twice");
            }
        }
    }

    void instance_header() {
        if (m_.domain_name != d_.name) {
            error(code::domain, {}, "instance '" + m_.name + "' is for domain '" + m_.domain_name +
                                        "', not '" + d_.name + "'");
        }
        if (m_.horizon < 0) error(code::instance, {}, "horizon must be non-negative");
        if (!(m_.discount > 0.0 && m_.discount <= 1.0)) {
            error(code::instance, {}, "discount " + format_number(m_.discount) + " is outside (0,1]");
        }
        std::set<std::string> seen_types;
        for (const auto& o : m_.objects) {
            bool is_object_type = members.count(o.type) && !enum_index.count(o.type);
            if (!is_object_type) {
                error(code::reference, o.pos, "'" + o.type + "' is not an object type of domain '" + d_.name + "'");
                continue;
            }
            if (!seen_types.insert(o.type).second) {
                error(code::duplicate, o.pos, "objects of type '" + o.type + "' listed twice");
                continue;
            }
            for (const auto& name : o.objects) {
                if (object_type.count(name) || value_type.count(name)) {
                    error(code::duplicate, o.pos, "object '" + name + "' clashes with an earlier name");
                    continue;
                }
                object_type[name] = o.type;
                members[o.type].push_back(name);
            }
        }
    }

    bool type_exists(const std::string& t) const { return members.count(t) > 0; }

    bool literal_fits(const LiteralValue& v, const ValueType& t) const {
        switch (t.kind) {
        case ValueKind::boolean: return std::holds_alternative<bool>(v);
        case ValueKind::real: return std::holds_alternative<double>(v);
        case ValueKind::enumeration: {
            const auto* e = std::get_if<EnumLiteral>(&v);
            if (!e) return false;
            auto it = value_type.find(e->value);
            return it != value_type.end() && it->second == t.enum_name;
        }
        }
        return false;
    }

    void fluent_decls() {
        for (const auto& f : d_.fluents) {
            const std::string what = "fluent '" + f.name + "'";
            if (f.kind == FluentKind::action && f.type.kind != ValueKind::boolean) {
                error(code::type, f.pos, what + ": action fluents must be bool");
            }
            if (f.type.kind == ValueKind::real && f.kind != FluentKind::non_fluent) {
                error(code::type, f.pos, what + ": real values are only allowed for non-fluents");
            }
            if (f.type.kind == ValueKind::enumeration && !enum_index.count(f.type.enum_name)) {
                error(code::reference, f.pos, what + ": unknown enum type '" + f.type.enum_name + "'");
                continue;
            }
            for (const auto& p : f.params) {
                if (!type_exists(p)) error(code::reference, f.pos, what + ": unknown parameter type '" + p + "'");
            }
            if (!literal_fits(f.default_value, f.type)) {
                error(code::type, f.pos, what + ": default value does not match its type");
            }
            if (f.preference && (f.kind != FluentKind::state || !f.params.empty() ||
                                 f.type.kind != ValueKind::enumeration)) {
                error(code::type, f.pos, what + ": preference fluents are parameterless enum state fluents");
            }
        }
    }

    // --- instance assignments --------------------------------------------

    void assignments() {
        check_block(m_.non_fluents, FluentKind::non_fluent, "non-fluents");
        check_block(m_.init_state, FluentKind::state, "init-state");
    }

    void check_block(const std::vector<Assignment>& as, FluentKind kind, const char* block) {
        std::set<std::pair<std::string, std::vector<std::string>>> seen;
        for (const auto& a : as) {
            auto it = fluent_index.find(a.fluent);
            if (it == fluent_index.end()) {
                error(code::reference, a.pos, std::string(block) + ": undeclared fluent '" + a.fluent + "'");
                continue;
            }
            const FluentDecl& f = d_.fluents[it->second];
            if (f.kind != kind) {
                error(code::assignment, a.pos, std::string(block) + ": '" + a.fluent + "' is a " +
                                                   std::string(to_string(f.kind)) + "; it cannot be assigned here");
                continue;
            }
            if (a.args.size() != f.params.size()) {
                error(code::arity, a.pos, "'" + a.fluent + "' takes " + std::to_string(f.params.size()) +
                                              " argument(s), got " + std::to_string(a.args.size()));
                continue;
            }
            bool args_ok = true;
            for (std::size_t i = 0; i < a.args.size(); ++i) {
                const auto& ms = members[f.params[i]];
                if (std::find(ms.begin(), ms.end(), a.args[i]) == ms.end()) {
                    error(code::type, a.pos, "'" + a.fluent + "': argument '" + a.args[i] +
                                                 "' is not a member of '" + f.params[i] + "'");
                    args_ok = false;
                }
            }
            if (!args_ok) continue;
            if (!literal_fits(a.value, f.type)) {
                error(code::type, a.pos, "'" + a.fluent + "': assigned value does not match its type");
                continue;
            }
            if (!seen.insert({a.fluent, a.args}).second) {
                error(code::duplicate, a.pos, std::string(block) + ": '" + a.fluent + "' assigned twice");
                continue;
            }
            if (kind == FluentKind::non_fluent) nonfluent_values_[{a.fluent, a.args}] = a.value;
        }
    }

    // --- expressions -----------------------------------------------------

    // Value of an expression that does not depend on state, action or variables.
    std::optional<double> constant(const Expr& e) const {
        if (const auto* l = std::get_if<LiteralExpr>(&e.node)) {
            if (const bool* b = std::get_if<bool>(&l->value)) return *b ? 1.0 : 0.0;
            if (const double* d = std::get_if<double>(&l->value)) return *d;
            return std::nullopt;
        }
        if (const auto* f = std::get_if<FluentExpr>(&e.node)) {
            auto it = fluent_index.find(f->name);
            if (it == fluent_index.end()) return std::nullopt;
            const FluentDecl& decl = d_.fluents[it->second];
            if (decl.kind != FluentKind::non_fluent || decl.type.kind == ValueKind::enumeration) return std::nullopt;
            std::vector<std::string> args;
            for (const auto& a : f->args) {
                if (const auto* l = std::get_if<LiteralExpr>(&a->node)) {
                    const auto* ev = std::get_if<EnumLiteral>(&l->value);
                    if (!ev) return std::nullopt;
                    args.push_back(ev->value);
                } else if (const auto* o = std::get_if<ObjectExpr>(&a->node)) {
                    args.push_back(o->name);
                } else {
                    return std::nullopt;
                }
            }
            auto v = nonfluent_values_.find({f->name, args});
            const LiteralValue& lit = v == nonfluent_values_.end() ? decl.default_value : v->second;
            if (const bool* b = std::get_if<bool>(&lit)) return *b ? 1.0 : 0.0;
            if (const double* d = std::get_if<double>(&lit)) return *d;
            return std::nullopt;
        }
        if (const auto* u = std::get_if<UnaryExpr>(&e.node)) {
            auto x = constant(*u->operand);
            if (!x) return std::nullopt;
            return u->op == UnaryOp::negate ? -*x : (*x == 0.0 ? 1.0 : 0.0);
        }
        if (const auto* b = std::get_if<BinaryExpr>(&e.node)) {
            auto x = constant(*b->lhs);
            auto y = constant(*b->rhs);
            if (!x || !y) return std::nullopt;
            switch (b->op) {
            case BinaryOp::add: return *x + *y;
            case BinaryOp::sub: return *x - *y;
            case BinaryOp::mul: return *x * *y;
            case BinaryOp::div:
                if (*y == 0.0) return std::nullopt;
                return *x / *y;
            case BinaryOp::eq: return *x == *y ? 1.0 : 0.0;
            case BinaryOp::neq: return *x != *y ? 1.0 : 0.0;
            case BinaryOp::lt: return *x < *y ? 1.0 : 0.0;
            case BinaryOp::le: return *x <= *y ? 1.0 : 0.0;
            case BinaryOp::gt: return *x > *y ? 1.0 : 0.0;
            case BinaryOp::ge: return *x >= *y ? 1.0 : 0.0;
            case BinaryOp::logical_and: return (*x != 0.0 && *y != 0.0) ? 1.0 : 0.0;
            case BinaryOp::logical_or: return (*x != 0.0 || *y != 0.0) ? 1.0 : 0.0;
            case BinaryOp::implies: return (*x == 0.0 || *y != 0.0) ? 1.0 : 0.0;
            }
        }
        if (const auto* i = std::get_if<IfExpr>(&e.node)) {
            auto c = constant(*i->condition);
            if (!c) return std::nullopt;
            return constant(*c != 0.0 ? *i->then_branch : *i->else_branch);
        }
        return std::nullopt;
    }

    Type of_type_name(const std::string& t) const {
        if (enum_index.count(t)) return {Type::Kind::enumeration, t};
        return {Type::Kind::object, t};
    }

    Type value_of(const FluentDecl& f) const {
        switch (f.type.kind) {
        case ValueKind::boolean: return Type::boolean();
        case ValueKind::real: return Type::number();
        case ValueKind::enumeration: return {Type::Kind::enumeration, f.type.enum_name};
        }
        return Type::invalid();
    }

    // Deterministic expression; any stochastic node here is misplaced.
    Type check(const Expr& e, const Env& env, const std::string& where) {
        return std::visit([&](const auto& n) { return visit(n, e, env, where); }, e.node);
    }

    Type visit(const LiteralExpr& x, const Expr& e, const Env&, const std::string& where) {
        if (std::holds_alternative<bool>(x.value)) return Type::boolean();
        if (std::holds_alternative<double>(x.value)) return Type::number();
        const std::string& v = std::get<EnumLiteral>(x.value).value;
        auto it = value_type.find(v);
        if (it == value_type.end()) {
            error(code::reference, e.pos, where + ": unknown enum value '@" + v + "'");
            return Type::invalid();
        }
        return {Type::Kind::enumeration, it->second};
    }

    Type visit(const VariableExpr& x, const Expr& e, const Env& env, const std::string& where) {
        auto it = env.find(x.name);
        if (it == env.end()) {
            error(code::reference, e.pos, where + ": unbound variable '?" + x.name + "'");
            return Type::invalid();
        }
        return of_type_name(it->second);
    }

    Type visit(const ObjectExpr& x, const Expr& e, const Env&, const std::string& where) {
        auto it = object_type.find(x.name);
        if (it == object_type.end()) {
            error(code::reference, e.pos, where + ": unknown object '$" + x.name + "'");
            return Type::invalid();
        }
        return {Type::Kind::object, it->second};
    }

    Type visit(const FluentExpr& x, const Expr& e, const Env& env, const std::string& where) {
        auto it = fluent_index.find(x.name);
        if (it == fluent_index.end()) {
            error(code::reference, e.pos, where + ": undeclared fluent '" + x.name + "'");
            return Type::invalid();
        }
        const FluentDecl& f = d_.fluents[it->second];
        if (x.args.size() != f.params.size()) {
            error(code::arity, e.pos, where + ": '" + x.name + "' takes " + std::to_string(f.params.size()) +
                                          " argument(s), got " + std::to_string(x.args.size()));
            return value_of(f);
        }
        for (std::size_t i = 0; i < x.args.size(); ++i) {
            Type t = check(*x.args[i], env, where);
            if (!t.valid()) continue;
            bool ok = (t.kind == Type::Kind::enumeration || t.kind == Type::Kind::object) && t.name == f.params[i];
            if (!ok) {
                error(code::type, x.args[i]->pos, where + ": argument " + std::to_string(i + 1) + " of '" + x.name +
                                                      "' must be " + f.params[i] + ", found " + describe(t));
            }
        }
        return value_of(f);
    }

    Type visit(const UnaryExpr& x, const Expr& e, const Env& env, const std::string& where) {
        Type t = check(*x.operand, env, where);
        if (!t.valid()) return t;
        if (x.op == UnaryOp::logical_not) {
            if (t.kind != Type::Kind::boolean) error(code::type, e.pos, where + ": '~' needs bool, found " + describe(t));
            return Type::boolean();
        }
        if (!t.numeric()) error(code::type, e.pos, where + ": unary '-' needs a number, found " + describe(t));
        return Type::number();
    }

    Type visit(const BinaryExpr& x, const Expr& e, const Env& env, const std::string& where) {
        Type a = check(*x.lhs, env, where);
        Type b = check(*x.rhs, env, where);
        if (!a.valid() || !b.valid()) return Type::invalid();
        auto mismatch = [&](const char* need) {
            error(code::type, e.pos, where + ": operands " + describe(a) + " and " + describe(b) + " of '" +
                                         short_text(e) + "' " + need);
        };
        switch (x.op) {
        case BinaryOp::add:
        case BinaryOp::sub:
        case BinaryOp::mul:
        case BinaryOp::div:
            if (!a.numeric() || !b.numeric()) mismatch("must be numeric");
            return Type::number();
        case BinaryOp::eq:
        case BinaryOp::neq:
            if (!(a.numeric() && b.numeric()) && !(a == b)) mismatch("are not comparable");
            return Type::boolean();
        case BinaryOp::lt:
        case BinaryOp::le:
        case BinaryOp::gt:
        case BinaryOp::ge:
            if (!a.numeric() || !b.numeric()) mismatch("must be numeric");
            return Type::boolean();
        case BinaryOp::logical_and:
        case BinaryOp::logical_or:
        case BinaryOp::implies:
            if (a.kind != Type::Kind::boolean || b.kind != Type::Kind::boolean) mismatch("must be bool");
            return Type::boolean();
        }
        return Type::invalid();
    }

    Type join_branches(const Type& a, const Type& b, const Expr& e, const std::string& where) {
        if (!a.valid() || !b.valid()) return Type::invalid();
        if (a == b) return a;
        if (a.numeric() && b.numeric()) return Type::number();
        error(code::type, e.pos, where + ": if-branches have different types " + describe(a) + " and " + describe(b));
        return Type::invalid();
    }

    Type visit(const IfExpr& x, const Expr& e, const Env& env, const std::string& where) {
        condition(*x.condition, env, where);
        Type a = check(*x.then_branch, env, where);
        Type b = check(*x.else_branch, env, where);
        return join_branches(a, b, e, where);
    }

    void condition(const Expr& c, const Env& env, const std::string& where) {
        Type t = check(c, env, where);
        if (t.valid() && t.kind != Type::Kind::boolean) {
            error(code::type, c.pos, where + ": condition must be bool, found " + describe(t));
        }
    }

    Type visit(const AggregateExpr& x, const Expr& e, const Env& env, const std::string& where) {
        Env inner = env;
        for (const auto& v : x.vars) {
            if (!type_exists(v.type)) {
                error(code::reference, e.pos, where + ": unknown type '" + v.type + "' for '?" + v.name + "'");
                return Type::invalid();
            }
            inner[v.name] = v.type;
        }
        Type t = check(*x.body, inner, where);
        if (!t.valid()) return t;
        if (x.op == AggregateOp::sum || x.op == AggregateOp::product) {
            if (!t.numeric()) error(code::type, e.pos, where + ": aggregated body must be numeric");
            return Type::number();
        }
        if (t.kind != Type::Kind::boolean) error(code::type, e.pos, where + ": quantified body must be bool");
        return Type::boolean();
    }

    Type visit(const BernoulliExpr&, const Expr& e, const Env&, const std::string& where) {
        return misplaced(e, where);
    }
    Type visit(const DiscreteExpr&, const Expr& e, const Env&, const std::string& where) {
        return misplaced(e, where);
    }
    Type visit(const KronDeltaExpr&, const Expr& e, const Env&, const std::string& where) {
        return misplaced(e, where);
    }

    Type misplaced(const Expr& e, const std::string& where) {
        error(code::stochastic, e.pos, where + ": stochastic expression '" + short_text(e) +
                                           "' is only allowed at the top of a CPF or in its if-branches");
        return Type::invalid();
    }

    // CPF body: stochastic nodes at the top or under if-branches, recursively.
    Type distribution(const Expr& e, const Env& env, const std::string& where) {
        if (const auto* i = std::get_if<IfExpr>(&e.node)) {
            condition(*i->condition, env, where);
            Type a = distribution(*i->then_branch, env, where);
            Type b = distribution(*i->else_branch, env, where);
            return join_branches(a, b, e, where);
        }
        if (const auto* k = std::get_if<KronDeltaExpr>(&e.node)) return check(*k->value, env, where);
        if (const auto* b = std::get_if<BernoulliExpr>(&e.node)) {
            Type p = check(*b->probability, env, where);
            if (p.valid() && !p.numeric()) error(code::type, e.pos, where + ": Bernoulli parameter must be numeric");
            if (auto v = constant(*b->probability); v && !(*v >= 0.0 && *v <= 1.0)) {
                error(code::probability, e.pos, where + ": Bernoulli parameter " + format_number(*v) +
                                                    " is outside [0,1]");
            }
            return Type::boolean();
        }
        if (const auto* dsc = std::get_if<DiscreteExpr>(&e.node)) return discrete(*dsc, e, env, where);
        return check(e, env, where);
    }

    Type discrete(const DiscreteExpr& x, const Expr& e, const Env& env, const std::string& where) {
        auto eit = enum_index.find(x.enum_type);
        if (eit == enum_index.end()) {
            error(code::reference, e.pos, where + ": Discrete over unknown enum '" + x.enum_type + "'");
            return Type::invalid();
        }
        const EnumDecl& decl = d_.enums[eit->second];
        bool structure_ok = x.branches.size() == decl.values.size();
        std::set<std::string> covered;
        for (const auto& b : x.branches) {
            auto vt = value_type.find(b.value);
            if (vt == value_type.end() || vt->second != x.enum_type) {
                error(code::type, e.pos, where + ": '@" + b.value + "' is not a value of '" + x.enum_type + "'");
                structure_ok = false;
            } else if (!covered.insert(b.value).second) {
                error(code::type, e.pos, where + ": Discrete lists '@" + b.value + "' twice");
                structure_ok = false;
            }
            Type p = check(*b.probability, env, where);
            if (p.valid() && !p.numeric()) error(code::type, b.probability->pos, where + ": branch probability must be numeric");
        }
        if (x.branches.size() != decl.values.size()) {
            error(code::type, e.pos, where + ": Discrete over '" + x.enum_type + "' has " +
                                         std::to_string(x.branches.size()) + " branches, expected " +
                                         std::to_string(decl.values.size()));
        }
        if (structure_ok) {
            double sum = 0.0;
            bool all_constant = true;
            for (const auto& b : x.branches) {
                auto v = constant(*b.probability);
                if (!v) {
                    all_constant = false;
                    break;
                }
                if (*v < 0.0) {
                    error(code::normalization, b.probability->pos, where + ": branch '@" + b.value +
                                                                      "' has negative probability " + format_number(*v));
                }
                sum += *v;
            }
            if (all_constant && std::abs(sum - 1.0) > kNormalizationTolerance) {
                error(code::normalization, e.pos, where + ": Discrete branch probabilities sum to " +
                                                      format_number(sum) + " (expected 1.0)");
            }
        }
        return {Type::Kind::enumeration, x.enum_type};
    }

    // --- sections ----------------------------------------------------------

    void cpfs() {
        std::set<std::string> defined;
        for (const auto& c : d_.cpfs) {
            const std::string where = "CPF '" + c.target + "'";
            auto it = fluent_index.find(c.target);
            if (it == fluent_index.end()) {
                error(code::cpf, c.pos, where + ": target is not a declared fluent");
                continue;
            }
            const FluentDecl& f = d_.fluents[it->second];
            if (f.kind != FluentKind::state) {
                error(code::cpf, c.pos, where + ": target is a " + std::string(to_string(f.kind)) +
                                            ", only state fluents have CPFs");
                continue;
            }
            if (!defined.insert(c.target).second) {
                error(code::cpf, c.pos, where + ": duplicate CPF");
                continue;
            }
            if (c.params.size() != f.params.size()) {
                error(code::arity, c.pos, where + ": head binds " + std::to_string(c.params.size()) +
                                              " variable(s), fluent has " + std::to_string(f.params.size()));
                continue;
            }
            Env env;
            for (std::size_t i = 0; i < c.params.size(); ++i) env[c.params[i]] = f.params[i];
            Type t = distribution(*c.body, env, where);
            if (!t.valid()) continue;
            Type want = value_of(f);
            bool ok = t == want || (want.kind == Type::Kind::boolean && t.kind == Type::Kind::boolean);
            if (!ok) {
                error(code::type, c.pos, where + ": body yields " + describe(t) + " but '" + c.target + "' is " +
                                             describe(want));
            }
        }
        for (const auto& f : d_.fluents) {
            if (f.kind == FluentKind::state && !defined.count(f.name)) {
                error(code::cpf, f.pos, "missing CPF for state fluent '" + f.name + "'");
            }
        }
    }

    void reward() {
        if (!d_.reward) {
            error(code::type, {}, "domain has no reward");
            return;
        }
        if (is_stochastic(*d_.reward)) {
            error(code::stochastic, d_.reward->pos, "reward must be deterministic");
            return;
        }
        Type t = check(*d_.reward, {}, "reward");
        if (t.valid() && !t.numeric()) error(code::type, d_.reward->pos, "reward must be numeric, found " + describe(t));
    }

    void preconditions() {
        for (const auto& p : d_.preconditions) {
            if (is_stochastic(*p)) {
                error(code::stochastic, p->pos, "action precondition must be deterministic");
                continue;
            }
            condition(*p, {}, "action precondition");
        }
    }

    const DomainModel& d_;
    const InstanceModel& m_;
    std::vector<Diagnostic> diags_;
    std::map<std::pair<std::string, std::vector<std::string>>, LiteralValue> nonfluent_values_;
};

} // namespace

CheckedModel validate(const DomainModel& domain, const InstanceModel& instance) {
    CheckedModel out;
    Validator v(domain, instance);
    std::vector<Diagnostic> diags = v.run();
    if (!diags.empty()) throw ValidationError(std::move(diags));
    out.domain_ = domain;
    out.instance_ = instance;
    out.fluent_index_ = std::move(v.fluent_index);
    out.enum_index_ = std::move(v.enum_index);
    out.members_ = std::move(v.members);
    out.value_type_ = std::move(v.value_type);
    out.object_type_ = std::move(v.object_type);
    return out;
}

} // namespace xplan::lang
