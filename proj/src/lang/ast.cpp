#include "xplan/lang/ast.hpp"

#include <algorithm>

namespace xplan::lang {

namespace {

bool same_args(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!structurally_equal(a[i], b[i])) return false;
    }
    return true;
}

struct EqualVisitor {
    const Expr::Node& other;

    bool operator()(const LiteralExpr& x) const {
        return std::get<LiteralExpr>(other).value == x.value;
    }
    bool operator()(const VariableExpr& x) const {
        return std::get<VariableExpr>(other).name == x.name;
    }
    bool operator()(const ObjectExpr& x) const {
        return std::get<ObjectExpr>(other).name == x.name;
    }
    bool operator()(const FluentExpr& x) const {
        const auto& y = std::get<FluentExpr>(other);
        return x.name == y.name && same_args(x.args, y.args);
    }
    bool operator()(const UnaryExpr& x) const {
        const auto& y = std::get<UnaryExpr>(other);
        return x.op == y.op && structurally_equal(x.operand, y.operand);
    }
    bool operator()(const BinaryExpr& x) const {
        const auto& y = std::get<BinaryExpr>(other);
        return x.op == y.op && structurally_equal(x.lhs, y.lhs) && structurally_equal(x.rhs, y.rhs);
    }
    bool operator()(const IfExpr& x) const {
        const auto& y = std::get<IfExpr>(other);
        return structurally_equal(x.condition, y.condition) &&
               structurally_equal(x.then_branch, y.then_branch) &&
               structurally_equal(x.else_branch, y.else_branch);
    }
    bool operator()(const AggregateExpr& x) const {
        const auto& y = std::get<AggregateExpr>(other);
        return x.op == y.op && x.vars == y.vars && structurally_equal(x.body, y.body);
    }
    bool operator()(const BernoulliExpr& x) const {
        return structurally_equal(x.probability, std::get<BernoulliExpr>(other).probability);
    }
    bool operator()(const DiscreteExpr& x) const {
        const auto& y = std::get<DiscreteExpr>(other);
        if (x.enum_type != y.enum_type || x.branches.size() != y.branches.size()) return false;
        for (std::size_t i = 0; i < x.branches.size(); ++i) {
            if (x.branches[i].value != y.branches[i].value ||
                !structurally_equal(x.branches[i].probability, y.branches[i].probability)) {
                return false;
            }
        }
        return true;
    }
    bool operator()(const KronDeltaExpr& x) const {
        return structurally_equal(x.value, std::get<KronDeltaExpr>(other).value);
    }
};

template <class T, class Key>
bool same_set(std::vector<T> a, std::vector<T> b, Key key) {
    if (a.size() != b.size()) return false;
    auto by_key = [&](const T& x, const T& y) { return key(x) < key(y); };
    std::sort(a.begin(), a.end(), by_key);
    std::sort(b.begin(), b.end(), by_key);
    return std::equal(a.begin(), a.end(), b.begin());
}

ExprPtr node(Expr::Node n) {
    return std::make_shared<const Expr>(Expr{std::move(n), {}});
}

} // namespace

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(EqualVisitor{b.node}, a.node);
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return !a && !b;
    return structurally_equal(*a, *b);
}

bool is_stochastic(const Expr& e) {
    struct Visitor {
        bool operator()(const LiteralExpr&) const { return false; }
        bool operator()(const VariableExpr&) const { return false; }
        bool operator()(const ObjectExpr&) const { return false; }
        bool operator()(const FluentExpr& x) const {
            return std::any_of(x.args.begin(), x.args.end(), [](const ExprPtr& a) { return is_stochastic(*a); });
        }
        bool operator()(const UnaryExpr& x) const { return is_stochastic(*x.operand); }
        bool operator()(const BinaryExpr& x) const { return is_stochastic(*x.lhs) || is_stochastic(*x.rhs); }
        bool operator()(const IfExpr& x) const {
            return is_stochastic(*x.condition) || is_stochastic(*x.then_branch) || is_stochastic(*x.else_branch);
        }
        bool operator()(const AggregateExpr& x) const { return is_stochastic(*x.body); }
        bool operator()(const BernoulliExpr&) const { return true; }
        bool operator()(const DiscreteExpr&) const { return true; }
        bool operator()(const KronDeltaExpr&) const { return true; }
    };
    return std::visit(Visitor{}, e.node);
}

bool operator==(const EnumDecl& a, const EnumDecl& b) {
    return a.name == b.name && a.values == b.values && a.from_state_block == b.from_state_block;
}

bool operator==(const FluentDecl& a, const FluentDecl& b) {
    return a.name == b.name && a.kind == b.kind && a.type == b.type && a.params == b.params &&
           a.default_value == b.default_value && a.preference == b.preference;
}

bool operator==(const Cpf& a, const Cpf& b) {
    return a.target == b.target && a.params == b.params && structurally_equal(a.body, b.body);
}

bool operator==(const DomainModel& a, const DomainModel& b) {
    if (a.name != b.name || a.requirements != b.requirements) return false;
    if (!same_set(a.enums, b.enums, [](const EnumDecl& e) { return e.name; })) return false;
    if (!same_set(a.object_types, b.object_types, [](const ObjectTypeDecl& o) { return o.name; })) {
        return false;
    }
    if (a.fluents != b.fluents || a.cpfs != b.cpfs) return false;
    if (!structurally_equal(a.reward, b.reward)) return false;
    return same_args(a.preconditions, b.preconditions);
}

bool operator==(const Assignment& a, const Assignment& b) {
    return a.fluent == b.fluent && a.args == b.args && a.value == b.value;
}

bool operator==(const ObjectsDecl& a, const ObjectsDecl& b) {
    return a.type == b.type && a.objects == b.objects;
}

bool operator==(const InstanceModel& a, const InstanceModel& b) {
    return a.name == b.name && a.domain_name == b.domain_name && a.objects == b.objects &&
           a.non_fluents == b.non_fluents && a.init_state == b.init_state &&
           a.horizon == b.horizon && a.discount == b.discount;
}

bool operator==(const ObjectTypeDecl& a, const ObjectTypeDecl& b) { return a.name == b.name; }

const FluentDecl* find_fluent(const DomainModel& d, const std::string& name) {
    auto it = std::find_if(d.fluents.begin(), d.fluents.end(), [&](const FluentDecl& f) { return f.name == name; });
    return it == d.fluents.end() ? nullptr : &*it;
}

const EnumDecl* find_enum(const DomainModel& d, const std::string& name) {
    auto it = std::find_if(d.enums.begin(), d.enums.end(), [&](const EnumDecl& e) { return e.name == name; });
    return it == d.enums.end() ? nullptr : &*it;
}

std::string_view to_string(FluentKind k) {
    switch (k) {
    case FluentKind::state: return "state-fluent";
    case FluentKind::action: return "action-fluent";
    case FluentKind::non_fluent: return "non-fluent";
    }
    return "?";
}

namespace make {

ExprPtr boolean(bool v) { return node(LiteralExpr{v}); }
ExprPtr number(double v) { return node(LiteralExpr{v}); }
ExprPtr enum_value(std::string v) { return node(LiteralExpr{EnumLiteral{std::move(v)}}); }
ExprPtr var(std::string name) { return node(VariableExpr{std::move(name)}); }
ExprPtr object(std::string name) { return node(ObjectExpr{std::move(name)}); }
ExprPtr fluent(std::string name, std::vector<ExprPtr> args) {
    return node(FluentExpr{std::move(name), std::move(args)});
}
ExprPtr unary(UnaryOp op, ExprPtr operand) { return node(UnaryExpr{op, std::move(operand)}); }
ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
    return node(BinaryExpr{op, std::move(lhs), std::move(rhs)});
}
ExprPtr if_then_else(ExprPtr c, ExprPtr t, ExprPtr e) {
    return node(IfExpr{std::move(c), std::move(t), std::move(e)});
}
ExprPtr aggregate(AggregateOp op, std::vector<TypedVariable> vars, ExprPtr body) {
    return node(AggregateExpr{op, std::move(vars), std::move(body)});
}
ExprPtr bernoulli(ExprPtr p) { return node(BernoulliExpr{std::move(p)}); }
ExprPtr discrete(std::string enum_type, std::vector<DiscreteBranch> branches) {
    return node(DiscreteExpr{std::move(enum_type), std::move(branches)});
}
ExprPtr kron_delta(ExprPtr v) { return node(KronDeltaExpr{std::move(v)}); }

} // namespace make

} // namespace xplan::lang
