#include "random_model.hpp"

#include <array>

#include "xplan/lang/parser.hpp"
#include "xplan/lang/printer.hpp"
#include "xplan/lang/validate.hpp"
#include "xplan/rng.hpp"

namespace xplan::testing {

namespace mk = lang::make;

namespace {

const std::array<std::string, 3> kLevels{"lo", "mid", "hi"};

struct Gen {
    Rng rng;
    std::vector<std::pair<std::string, bool>> fluents; // name, is_bool

    explicit Gen(std::uint64_t seed) : rng(seed) {}

    std::size_t pick(std::size_t n) { return uniform_index(rng, n); }
    bool coin() { return pick(2) == 0; }

    double probability() {
        static const std::array<double, 7> ps{0.0, 0.1, 0.25, 0.5, 0.7, 0.9, 1.0};
        return ps[pick(ps.size())];
    }

    lang::ExprPtr atom() {
        switch (pick(4)) {
        case 0: return mk::fluent("act0");
        case 1: return mk::fluent("push", {mk::enum_value(kLevels[pick(3)])});
        default: {
            const auto& [name, is_bool] = fluents[pick(fluents.size())];
            if (is_bool) return mk::fluent(name);
            return mk::eq(mk::fluent(name), mk::enum_value(kLevels[pick(3)]));
        }
        }
    }

    lang::ExprPtr condition() {
        auto a = atom();
        switch (pick(4)) {
        case 0: return mk::land(a, atom());
        case 1: return mk::lor(a, mk::lnot(atom()));
        default: return a;
        }
    }

    lang::ExprPtr bool_leaf() {
        switch (pick(3)) {
        case 0: return mk::bernoulli(mk::number(probability()));
        case 1: return mk::bernoulli(mk::fluent("bias"));
        default: return mk::kron_delta(condition());
        }
    }

    lang::ExprPtr level_leaf() {
        static const std::array<std::array<double, 3>, 5> tables{{
            {0.2, 0.3, 0.5}, {1.0, 0.0, 0.0}, {0.25, 0.25, 0.5}, {0.1, 0.6, 0.3}, {0.0, 0.5, 0.5},
        }};
        if (pick(4) == 0) return mk::kron_delta(mk::enum_value(kLevels[pick(3)]));
        const auto& t = tables[pick(tables.size())];
        std::vector<lang::DiscreteBranch> branches;
        for (std::size_t k = 0; k < 3; ++k) branches.push_back({kLevels[k], mk::number(t[k])});
        return mk::discrete("level", std::move(branches));
    }

    lang::ExprPtr cpf_body(bool is_bool) {
        auto leaf = [&] { return is_bool ? bool_leaf() : level_leaf(); };
        if (coin()) return leaf();
        return mk::if_then_else(condition(), leaf(), leaf());
    }

    lang::ExprPtr reward() {
        lang::ExprPtr total = mk::number(static_cast<double>(pick(3)) - 1.0);
        std::size_t terms = 1 + pick(3);
        for (std::size_t i = 0; i < terms; ++i) {
            double w = static_cast<double>(pick(9)) * 0.5 - 2.0;
            total = mk::add(total, mk::mul(mk::number(w), atom()));
        }
        return total;
    }
};

} // namespace

RandomModel random_model(std::uint64_t seed) {
    Gen g(seed);
    RandomModel m;
    lang::DomainModel& d = m.domain;
    d.name = "random_" + std::to_string(seed);
    d.enums.push_back({"level", {kLevels.begin(), kLevels.end()}, false, {}});

    std::size_t n = 2 + g.pick(3);
    for (std::size_t i = 0; i < n; ++i) {
        bool is_bool = g.pick(3) != 0;
        std::string name = "f" + std::to_string(i);
        g.fluents.emplace_back(name, is_bool);
        lang::FluentDecl f;
        f.name = name;
        f.kind = lang::FluentKind::state;
        if (is_bool) {
            f.type = {lang::ValueKind::boolean, ""};
            f.default_value = false;
        } else {
            f.type = {lang::ValueKind::enumeration, "level"};
            f.default_value = lang::EnumLiteral{"lo"};
        }
        d.fluents.push_back(f);
    }
    lang::FluentDecl act0;
    act0.name = "act0";
    act0.kind = lang::FluentKind::action;
    d.fluents.push_back(act0);
    lang::FluentDecl push;
    push.name = "push";
    push.kind = lang::FluentKind::action;
    push.params = {"level"};
    d.fluents.push_back(push);
    lang::FluentDecl bias;
    bias.name = "bias";
    bias.kind = lang::FluentKind::non_fluent;
    bias.type = {lang::ValueKind::real, ""};
    bias.default_value = 0.5;
    d.fluents.push_back(bias);

    for (const auto& [name, is_bool] : g.fluents) {
        lang::Cpf c;
        c.target = name;
        c.body = g.cpf_body(is_bool);
        d.cpfs.push_back(c);
    }
    d.reward = g.reward();
    if (g.coin()) d.preconditions.push_back(mk::implies(mk::fluent("act0"), g.condition()));

    lang::InstanceModel& inst = m.instance;
    inst.name = d.name + "_inst";
    inst.domain_name = d.name;
    inst.horizon = 2 + static_cast<int>(g.pick(3));
    inst.discount = g.coin() ? 1.0 : 0.9;
    inst.non_fluents.push_back({"bias", {}, g.probability(), {}});
    for (const auto& [name, is_bool] : g.fluents) {
        if (!g.coin()) continue;
        inst.init_state.push_back(
            {name, {}, is_bool ? lang::LiteralValue{true} : lang::LiteralValue{lang::EnumLiteral{kLevels[g.pick(3)]}}, {}});
    }

    m.domain_text = lang::pretty_print(d);
    m.instance_text = lang::pretty_print(inst);
    return m;
}

grounding::GroundedModel ground_random(std::uint64_t seed) {
    RandomModel m = random_model(seed);
    return grounding::ground(lang::validate(lang::parse_domain(m.domain_text), lang::parse_instance(m.instance_text)));
}

} // namespace xplan::testing
