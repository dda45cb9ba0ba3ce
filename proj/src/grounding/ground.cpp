#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "program.hpp"
#include "xplan/errors.hpp"
#include "xplan/grounding/model.hpp"
#include "xplan/lang/printer.hpp"

namespace xplan::grounding {

using detail::Node;
using detail::Op;
using detail::Program;

std::string_view to_string(FluentRole r) {
    switch (r) {
    case FluentRole::robot_state: return "robot-state";
    case FluentRole::preference_state: return "preference-state";
    case FluentRole::action: return "action";
    case FluentRole::non_fluent: return "non-fluent";
    }
    return "?";
}

namespace {

std::string call_label(const std::string& name, const std::vector<std::string>& args) {
    if (args.empty()) return name;
    std::string out = name + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ", ";
        out += args[i];
    }
    return out + ")";
}

} // namespace

std::string GroundFluent::label() const { return call_label(name, args); }
std::string GroundAction::label() const { return call_label(name, args); }

namespace {

/// Cartesian product of parameter member lists, last parameter fastest.
class Bindings {
public:
    explicit Bindings(std::vector<int> sizes) : sizes_(std::move(sizes)), current_(sizes_.size(), 0) {
        done_ = std::any_of(sizes_.begin(), sizes_.end(), [](int n) { return n == 0; });
    }
    bool done() const { return done_; }
    const std::vector<int>& current() const { return current_; }
    void next() {
        for (std::size_t i = sizes_.size(); i-- > 0;) {
            if (++current_[i] < sizes_[i]) return;
            current_[i] = 0;
        }
        done_ = true;
    }

private:
    std::vector<int> sizes_;
    std::vector<int> current_;
    bool done_ = false;
};

/// Ground table of one fluent declaration: the id of binding (i0, i1, ...) is
/// base + row-major offset.
struct Table {
    int base = 0;
    std::vector<int> sizes;

    int offset(const std::vector<int>& idx) const {
        int off = 0;
        for (std::size_t i = 0; i < sizes.size(); ++i) off = off * sizes[i] + idx[i];
        return base + off;
    }
};

double literal_number(const lang::CheckedModel& m, const lang::FluentDecl& f, const lang::LiteralValue& v) {
    if (const bool* b = std::get_if<bool>(&v)) return *b ? 1.0 : 0.0;
    if (const double* d = std::get_if<double>(&v)) return *d;
    const auto& name = std::get<lang::EnumLiteral>(v).value;
    return m.member_index(f.type.enum_name, name).value_or(0);
}

std::vector<std::string> value_names(const lang::CheckedModel& m, const lang::FluentDecl& f) {
    switch (f.type.kind) {
    case lang::ValueKind::boolean: return {"false", "true"};
    case lang::ValueKind::enumeration: return m.members(f.type.enum_name);
    case lang::ValueKind::real: return {};
    }
    return {};
}

using Env = std::map<std::string, int>;

class Compiler {
public:
    Compiler(const lang::CheckedModel& m, Program& prog, const std::map<std::string, Table>& state,
             const std::map<std::string, Table>& actions, const std::map<std::string, Table>& nonf,
             const std::vector<double>& nonf_values)
        : m_(m), prog_(prog), state_(state), actions_(actions), nonf_(nonf), nonf_values_(nonf_values) {}

    int compile(const lang::Expr& e, const Env& env) {
        return std::visit([&](const auto& n) { return emit(n, e, env); }, e.node);
    }

private:
    int constant(double v) {
        Node n;
        n.op = Op::constant;
        n.value = v;
        return prog_.add(n);
    }

    int unary(Op op, int a) {
        if (prog_.is_constant(a)) {
            double v = prog_.node(a).value;
            return constant(op == Op::neg ? -v : (v == 0.0 ? 1.0 : 0.0));
        }
        Node n;
        n.op = op;
        n.a = a;
        return prog_.add(n);
    }

    static double fold(Op op, double x, double y) {
        switch (op) {
        case Op::add: return x + y;
        case Op::sub: return x - y;
        case Op::mul: return x * y;
        case Op::div: return x / y;
        case Op::eq: return x == y;
        case Op::neq: return x != y;
        case Op::lt: return x < y;
        case Op::le: return x <= y;
        case Op::gt: return x > y;
        case Op::ge: return x >= y;
        case Op::land: return x != 0.0 && y != 0.0;
        case Op::lor: return x != 0.0 || y != 0.0;
        case Op::implies: return x == 0.0 || y != 0.0;
        default: return 0.0;
        }
    }

    int binary(Op op, int a, int b, int text = -1) {
        bool ca = prog_.is_constant(a);
        bool cb = prog_.is_constant(b);
        double va = ca ? prog_.node(a).value : 0.0;
        double vb = cb ? prog_.node(b).value : 0.0;
        if (ca && cb && !(op == Op::div && vb == 0.0)) return constant(fold(op, va, vb));
        // Identities that keep expanded aggregates small. Operands here are
        // always 0/1 for the logical cases, so returning the other side is exact.
        switch (op) {
        case Op::add:
            if (ca && va == 0.0) return b;
            if (cb && vb == 0.0) return a;
            break;
        case Op::mul:
            if (ca && va == 1.0) return b;
            if (cb && vb == 1.0) return a;
            break;
        case Op::land:
            if ((ca && va == 0.0) || (cb && vb == 0.0)) return constant(0.0);
            if (ca) return truthy(b);
            if (cb) return truthy(a);
            break;
        case Op::lor:
            if ((ca && va != 0.0) || (cb && vb != 0.0)) return constant(1.0);
            if (ca) return truthy(b);
            if (cb) return truthy(a);
            break;
        case Op::implies:
            if ((ca && va == 0.0) || (cb && vb != 0.0)) return constant(1.0);
            if (ca) return truthy(b);
            break;
        default: break;
        }
        Node n;
        n.op = op;
        n.a = a;
        n.b = b;
        n.text = text;
        return prog_.add(n);
    }

    /// `x` coerced to 0/1 (already so for comparisons and logical nodes).
    int truthy(int x) {
        switch (prog_.node(x).op) {
        case Op::action_is:
        case Op::lnot:
        case Op::eq: case Op::neq: case Op::lt: case Op::le: case Op::gt: case Op::ge:
        case Op::land: case Op::lor: case Op::implies:
            return x;
        default: break;
        }
        Node n;
        n.op = Op::neq;
        n.a = x;
        n.b = constant(0.0);
        return prog_.add(n);
    }

    int emit(const lang::LiteralExpr& x, const lang::Expr&, const Env&) {
        if (const bool* b = std::get_if<bool>(&x.value)) return constant(*b ? 1.0 : 0.0);
        if (const double* d = std::get_if<double>(&x.value)) return constant(*d);
        const auto& v = std::get<lang::EnumLiteral>(x.value).value;
        auto type = m_.enum_of_value(v);
        return constant(type ? m_.member_index(*type, v).value_or(0) : 0);
    }

    int emit(const lang::VariableExpr& x, const lang::Expr&, const Env& env) {
        auto it = env.find(x.name);
        if (it == env.end()) throw InputError("unbound variable ?" + x.name);
        return constant(it->second);
    }

    int emit(const lang::ObjectExpr& x, const lang::Expr&, const Env&) {
        auto type = m_.type_of_object(x.name);
        return constant(type ? m_.member_index(*type, x.name).value_or(0) : 0);
    }

    int arg_index(const lang::Expr& arg, const std::string& type, const Env& env) {
        if (const auto* v = std::get_if<lang::VariableExpr>(&arg.node)) {
            auto it = env.find(v->name);
            if (it == env.end()) throw InputError("unbound variable ?" + v->name);
            return it->second;
        }
        std::string name;
        if (const auto* o = std::get_if<lang::ObjectExpr>(&arg.node)) name = o->name;
        if (const auto* l = std::get_if<lang::LiteralExpr>(&arg.node)) {
            if (const auto* ev = std::get_if<lang::EnumLiteral>(&l->value)) name = ev->value;
        }
        auto idx = m_.member_index(type, name);
        if (!idx) throw InputError("'" + name + "' is not a member of " + type);
        return *idx;
    }

    int emit(const lang::FluentExpr& x, const lang::Expr&, const Env& env) {
        const lang::FluentDecl* decl = m_.fluent(x.name);
        if (!decl) throw InputError("unknown fluent '" + x.name + "'");
        std::vector<int> idx;
        for (std::size_t i = 0; i < x.args.size(); ++i) idx.push_back(arg_index(*x.args[i], decl->params[i], env));
        Node n;
        switch (decl->kind) {
        case lang::FluentKind::state:
            n.op = Op::state;
            n.index = state_.at(x.name).offset(idx);
            return prog_.add(n);
        case lang::FluentKind::action:
            n.op = Op::action_is;
            n.index = actions_.at(x.name).offset(idx);
            return prog_.add(n);
        case lang::FluentKind::non_fluent:
            return constant(nonf_values_[static_cast<std::size_t>(nonf_.at(x.name).offset(idx))]);
        }
        return constant(0.0);
    }

    int emit(const lang::UnaryExpr& x, const lang::Expr&, const Env& env) {
        int a = compile(*x.operand, env);
        return unary(x.op == lang::UnaryOp::negate ? Op::neg : Op::lnot, a);
    }

    static Op op_of(lang::BinaryOp op) {
        switch (op) {
        case lang::BinaryOp::add: return Op::add;
        case lang::BinaryOp::sub: return Op::sub;
        case lang::BinaryOp::mul: return Op::mul;
        case lang::BinaryOp::div: return Op::div;
        case lang::BinaryOp::eq: return Op::eq;
        case lang::BinaryOp::neq: return Op::neq;
        case lang::BinaryOp::lt: return Op::lt;
        case lang::BinaryOp::le: return Op::le;
        case lang::BinaryOp::gt: return Op::gt;
        case lang::BinaryOp::ge: return Op::ge;
        case lang::BinaryOp::logical_and: return Op::land;
        case lang::BinaryOp::logical_or: return Op::lor;
        case lang::BinaryOp::implies: return Op::implies;
        }
        return Op::add;
    }

    int emit(const lang::BinaryExpr& x, const lang::Expr& whole, const Env& env) {
        int a = compile(*x.lhs, env);
        int b = compile(*x.rhs, env);
        int text = x.op == lang::BinaryOp::div ? prog_.add_text(lang::pretty_print(whole)) : -1;
        return binary(op_of(x.op), a, b, text);
    }

    int emit(const lang::IfExpr& x, const lang::Expr&, const Env& env) {
        int c = compile(*x.condition, env);
        if (prog_.is_constant(c)) return compile(prog_.node(c).value != 0.0 ? *x.then_branch : *x.else_branch, env);
        Node n;
        n.op = Op::ite;
        n.a = c;
        n.b = compile(*x.then_branch, env);
        n.c = compile(*x.else_branch, env);
        return prog_.add(n);
    }

    int emit(const lang::AggregateExpr& x, const lang::Expr&, const Env& env) {
        Op op = Op::add;
        double unit = 0.0;
        switch (x.op) {
        case lang::AggregateOp::sum: op = Op::add; unit = 0.0; break;
        case lang::AggregateOp::product: op = Op::mul; unit = 1.0; break;
        case lang::AggregateOp::exists: op = Op::lor; unit = 0.0; break;
        case lang::AggregateOp::forall: op = Op::land; unit = 1.0; break;
        }
        std::vector<int> sizes;
        for (const auto& v : x.vars) sizes.push_back(static_cast<int>(m_.members(v.type).size()));
        int acc = constant(unit);
        Env inner = env;
        for (Bindings b(sizes); !b.done(); b.next()) {
            for (std::size_t i = 0; i < x.vars.size(); ++i) inner[x.vars[i].name] = b.current()[i];
            acc = binary(op, acc, compile(*x.body, inner));
        }
        return acc;
    }

    int emit(const lang::BernoulliExpr& x, const lang::Expr&, const Env& env) {
        Node n;
        n.op = Op::bernoulli;
        n.a = compile(*x.probability, env);
        return prog_.add(n);
    }

    int emit(const lang::DiscreteExpr& x, const lang::Expr&, const Env& env) {
        const auto& values = m_.members(x.enum_type);
        std::vector<int> kids(values.size(), -1);
        for (const auto& br : x.branches) {
            auto idx = m_.member_index(x.enum_type, br.value);
            if (idx) kids[static_cast<std::size_t>(*idx)] = compile(*br.probability, env);
        }
        for (int& k : kids) {
            if (k < 0) k = constant(0.0);
        }
        Node n;
        n.op = Op::discrete;
        n.first_kid = prog_.add_kids(kids);
        n.kid_count = static_cast<int>(kids.size());
        return prog_.add(n);
    }

    int emit(const lang::KronDeltaExpr& x, const lang::Expr&, const Env& env) {
        Node n;
        n.op = Op::kron;
        n.a = compile(*x.value, env);
        return prog_.add(n);
    }

    const lang::CheckedModel& m_;
    Program& prog_;
    const std::map<std::string, Table>& state_;
    const std::map<std::string, Table>& actions_;
    const std::map<std::string, Table>& nonf_;
    const std::vector<double>& nonf_values_;
};

std::vector<int> param_sizes(const lang::CheckedModel& m, const lang::FluentDecl& f) {
    std::vector<int> sizes;
    for (const auto& p : f.params) sizes.push_back(static_cast<int>(m.members(p).size()));
    return sizes;
}

std::vector<std::string> arg_names(const lang::CheckedModel& m, const lang::FluentDecl& f, const std::vector<int>& idx) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < idx.size(); ++i) out.push_back(m.members(f.params[i])[static_cast<std::size_t>(idx[i])]);
    return out;
}

bool assignment_matches(const lang::Assignment& a, const std::string& name, const std::vector<std::string>& args) {
    return a.fluent == name && a.args == args;
}

std::optional<ExplanationAttributes> explanation_of(const std::vector<std::string>& args) {
    if (args.size() != 4) return std::nullopt;
    std::optional<Representation> r;
    std::optional<Detail> d;
    std::optional<Duration> u;
    std::optional<Scope> s;
    for (const auto& a : args) {
        if (auto x = parse_representation(a)) r = x;
        else if (auto y = parse_detail(a)) d = y;
        else if (auto z = parse_duration(a)) u = z;
        else if (auto w = parse_scope(a)) s = w;
    }
    if (!r || !d || !u || !s) return std::nullopt;
    return ExplanationAttributes{*r, *d, *u, *s};
}

} // namespace

GroundedModel ground(const lang::CheckedModel& m, const GroundOptions& options) {
    const lang::DomainModel& d = m.domain();
    GroundedModel g;
    g.domain_name_ = d.name;
    g.instance_name_ = m.instance().name;
    g.horizon_ = m.instance().horizon;
    g.discount_ = m.instance().discount;

    // Action count first, so a blown cap fails before anything is materialized.
    double action_count = 1.0;
    for (const auto& f : d.fluents) {
        if (f.kind != lang::FluentKind::action) continue;
        double n = 1.0;
        for (int s : param_sizes(m, f)) n *= s;
        action_count += n;
    }
    if (action_count > static_cast<double>(options.max_actions)) {
        throw CapExceeded("ground action", static_cast<std::uint64_t>(std::min(action_count, 1.8e19)), options.max_actions);
    }

    std::map<std::string, Table> state_tables, action_tables, nonf_tables;
    int robot_ids = 0, pref_ids = 0;
    GroundAction noop;
    noop.index = kNoop;
    noop.name = "noop";
    g.actions_.push_back(noop);

    for (const auto& f : d.fluents) {
        Table t;
        t.sizes = param_sizes(m, f);
        switch (f.kind) {
        case lang::FluentKind::state: {
            t.base = static_cast<int>(g.state_fluents_.size());
            for (Bindings b(t.sizes); !b.done(); b.next()) {
                GroundFluent gf;
                gf.name = f.name;
                gf.args = arg_names(m, f, b.current());
                gf.role = f.preference ? FluentRole::preference_state : FluentRole::robot_state;
                gf.id = f.preference ? pref_ids++ : robot_ids++;
                gf.slot = static_cast<int>(g.state_fluents_.size());
                gf.value_names = value_names(m, f);
                if (gf.value_names.empty()) {
                    throw InputError("state fluent '" + f.name + "' has a real type and cannot be enumerated");
                }
                int v = static_cast<int>(literal_number(m, f, f.default_value));
                for (const auto& a : m.instance().init_state) {
                    if (assignment_matches(a, f.name, gf.args)) v = static_cast<int>(literal_number(m, f, a.value));
                }
                g.initial_state_.values.push_back(v);
                g.state_fluents_.push_back(std::move(gf));
            }
            state_tables[f.name] = t;
            break;
        }
        case lang::FluentKind::action: {
            t.base = static_cast<int>(g.actions_.size());
            for (Bindings b(t.sizes); !b.done(); b.next()) {
                GroundAction ga;
                ga.index = static_cast<ActionId>(g.actions_.size());
                ga.name = f.name;
                ga.args = arg_names(m, f, b.current());
                ga.arg_values = b.current();
                if (ga.is_explain()) ga.explanation = explanation_of(ga.args);
                g.actions_.push_back(std::move(ga));
            }
            action_tables[f.name] = t;
            break;
        }
        case lang::FluentKind::non_fluent: {
            t.base = static_cast<int>(g.non_fluents_.size());
            int id = t.base;
            for (Bindings b(t.sizes); !b.done(); b.next()) {
                GroundFluent gf;
                gf.name = f.name;
                gf.args = arg_names(m, f, b.current());
                gf.role = FluentRole::non_fluent;
                gf.id = id++;
                gf.value_names = value_names(m, f);
                double v = literal_number(m, f, f.default_value);
                for (const auto& a : m.instance().non_fluents) {
                    if (assignment_matches(a, f.name, gf.args)) v = literal_number(m, f, a.value);
                }
                g.non_fluent_values_.push_back(v);
                g.non_fluents_.push_back(std::move(gf));
            }
            nonf_tables[f.name] = t;
            break;
        }
        }
    }

    // Action ids are dense over the action role too, in the same order as actions_.
    // Preference links: an argument whose type is the value set of a
    // parameterless preference fluent selects one of that fluent's values.
    std::map<std::string, int> pref_slot_by_type;
    for (const auto& gf : g.state_fluents_) {
        if (gf.role != FluentRole::preference_state || !gf.args.empty()) continue;
        const lang::FluentDecl* f = m.fluent(gf.name);
        if (f && f->type.kind == lang::ValueKind::enumeration) pref_slot_by_type.emplace(f->type.enum_name, gf.slot);
    }
    for (auto& ga : g.actions_) {
        if (ga.is_noop()) continue;
        const lang::FluentDecl* f = m.fluent(ga.name);
        for (std::size_t i = 0; i < f->params.size(); ++i) {
            auto it = pref_slot_by_type.find(f->params[i]);
            if (it == pref_slot_by_type.end()) continue;
            ga.preference_links.push_back(
                {it->second, ga.arg_values[i], g.state_fluents_[static_cast<std::size_t>(it->second)].name});
        }
    }

    // Mixed radix, slot 0 most significant.
    std::size_t n = g.state_fluents_.size();
    g.strides_.assign(n, 1);
    bool fits = true;
    unsigned __int128 count = 1;
    for (std::size_t i = n; i-- > 0;) {
        g.strides_[i] = static_cast<std::uint64_t>(count);
        count *= static_cast<unsigned>(g.state_fluents_[i].range());
        if (count > (static_cast<unsigned __int128>(1) << 63)) {
            fits = false;
            break;
        }
    }
    if (fits) g.state_count_ = static_cast<std::uint64_t>(count);

    auto prog = std::make_shared<Program>();
    Compiler c(m, *prog, state_tables, action_tables, nonf_tables, g.non_fluent_values_);

    g.cpf_roots_.assign(n, -1);
    for (const auto& cpf : d.cpfs) {
        const lang::FluentDecl* f = m.fluent(cpf.target);
        const Table& t = state_tables.at(cpf.target);
        for (Bindings b(t.sizes); !b.done(); b.next()) {
            Env env;
            for (std::size_t i = 0; i < cpf.params.size(); ++i) env[cpf.params[i]] = b.current()[i];
            g.cpf_roots_[static_cast<std::size_t>(t.offset(b.current()))] = c.compile(*cpf.body, env);
        }
        (void)f;
    }
    g.reward_root_ = d.reward ? c.compile(*d.reward, {}) : prog->add(Node{});
    for (const auto& p : d.preconditions) {
        int root = c.compile(*p, {});
        if (prog->is_constant(root) && prog->node(root).value != 0.0) continue;
        g.precondition_roots_.push_back(root);
    }
    g.program_ = std::move(prog);
    return g;
}

std::uint64_t GroundedModel::state_index(const GroundState& s) const {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < strides_.size(); ++i) idx += static_cast<std::uint64_t>(s.values[i]) * strides_[i];
    return idx;
}

GroundState GroundedModel::state_at(std::uint64_t index) const {
    GroundState s;
    s.values.resize(strides_.size());
    for (std::size_t i = 0; i < strides_.size(); ++i) {
        s.values[i] = static_cast<int>(index / strides_[i]);
        index %= strides_[i];
    }
    return s;
}

bool GroundedModel::is_valid(const GroundState& s) const {
    if (s.values.size() != state_fluents_.size()) return false;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        if (s.values[i] < 0 || s.values[i] >= state_fluents_[i].range()) return false;
    }
    return true;
}

bool GroundedModel::applicable(const GroundState& s, ActionId a) const {
    if (a == kNoop) return true;
    for (int root : precondition_roots_) {
        if (program_->eval(root, s.values, a) == 0.0) return false;
    }
    return true;
}

std::vector<ActionId> GroundedModel::applicable_actions(const GroundState& s) const {
    std::vector<ActionId> out;
    for (const auto& a : actions_) {
        if (applicable(s, a.index)) out.push_back(a.index);
    }
    return out;
}

void GroundedModel::fluent_distribution(int slot, const GroundState& s, ActionId a, std::vector<double>& out) const {
    const GroundFluent& f = state_fluents_.at(static_cast<std::size_t>(slot));
    try {
        program_->distribution(cpf_roots_[static_cast<std::size_t>(slot)], s.values, a, f.range(), out);
    } catch (const EvalError& e) {
        throw EvalError("CPF " + f.label() + ": " + e.what());
    }
}

std::optional<int> GroundedModel::deterministic_value(int slot, const GroundState& s, ActionId a) const {
    const GroundFluent& f = state_fluents_.at(static_cast<std::size_t>(slot));
    int v = 0;
    try {
        if (program_->certain_value(cpf_roots_[static_cast<std::size_t>(slot)], s.values, a, f.range(), v)) return v;
    } catch (const EvalError& e) {
        throw EvalError("CPF " + f.label() + ": " + e.what());
    }
    return std::nullopt;
}

double GroundedModel::reward(const GroundState& s, ActionId a) const {
    try {
        return program_->eval(reward_root_, s.values, a);
    } catch (const EvalError& e) {
        throw EvalError(std::string("reward: ") + e.what());
    }
}

GroundedModel GroundedModel::with_horizon(int horizon) const {
    GroundedModel copy = *this;
    copy.horizon_ = horizon;
    return copy;
}

std::string GroundedModel::describe(const GroundState& s) const {
    std::ostringstream out;
    for (std::size_t i = 0; i < state_fluents_.size(); ++i) {
        if (i) out << ", ";
        const auto& f = state_fluents_[i];
        out << f.label() << '=' << f.value_names[static_cast<std::size_t>(s.values[i])];
    }
    return out.str();
}

std::optional<int> GroundedModel::slot_of(const std::string& fluent) const {
    for (const auto& f : state_fluents_) {
        if (f.name == fluent && f.args.empty()) return f.slot;
    }
    return std::nullopt;
}

std::vector<Successor> transition_distribution(const GroundedModel& model, const GroundState& s, ActionId a) {
    const std::size_t n = model.state_fluents().size();
    std::vector<std::vector<double>> dists(n);
    for (std::size_t i = 0; i < n; ++i) model.fluent_distribution(static_cast<int>(i), s, a, dists[i]);

    // Support of each fluent in ascending value order; odometer over them with
    // the last slot fastest yields ascending state indices.
    std::vector<std::vector<int>> support(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t v = 0; v < dists[i].size(); ++v) {
            if (dists[i][v] != 0.0) support[i].push_back(static_cast<int>(v));
        }
    }
    std::vector<Successor> out;
    std::vector<std::size_t> pos(n, 0);
    GroundState next;
    next.values.resize(n);
    while (true) {
        double p = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            next.values[i] = support[i][pos[i]];
            p *= dists[i][static_cast<std::size_t>(next.values[i])];
        }
        if (p != 0.0) out.push_back({next, p});
        std::size_t i = n;
        while (i-- > 0) {
            if (++pos[i] < support[i].size()) break;
            pos[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1)) break;
    }
    return out;
}

Sample sample_next(const GroundedModel& model, const GroundState& s, ActionId a, Rng& rng) {
    Sample out;
    out.reward = model.reward(s, a);
    const std::size_t n = model.state_fluents().size();
    out.next.values.resize(n);
    std::vector<double> dist;
    for (std::size_t i = 0; i < n; ++i) {
        int slot = static_cast<int>(i);
        if (auto v = model.deterministic_value(slot, s, a)) {
            out.next.values[i] = *v;
            continue;
        }
        model.fluent_distribution(slot, s, a, dist);
        double u = uniform01(rng);
        double cum = 0.0;
        int chosen = -1;
        for (std::size_t v = 0; v < dist.size(); ++v) {
            if (dist[v] == 0.0) continue;
            chosen = static_cast<int>(v);
            cum += dist[v];
            if (u < cum) break;
        }
        out.next.values[i] = chosen;
    }
    return out;
}

double reward_of(const GroundedModel& model, const GroundState& s, ActionId a) { return model.reward(s, a); }

} // namespace xplan::grounding
