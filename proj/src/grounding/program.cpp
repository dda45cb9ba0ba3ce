#include "program.hpp"

#include <algorithm>
#include <cmath>

#include "xplan/errors.hpp"
#include "xplan/lang/printer.hpp"
#include "xplan/lang/validate.hpp"

namespace xplan::grounding::detail {

int Program::add(Node n) {
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size() - 1);
}

int Program::add_text(std::string s) {
    texts_.push_back(std::move(s));
    return static_cast<int>(texts_.size() - 1);
}

int Program::add_kids(const std::vector<int>& kids) {
    int first = static_cast<int>(kids_.size());
    kids_.insert(kids_.end(), kids.begin(), kids.end());
    return first;
}

double Program::eval(int root, std::span<const int> state, int action) const {
    const Node& n = node(root);
    switch (n.op) {
    case Op::constant: return n.value;
    case Op::state: return state[static_cast<std::size_t>(n.index)];
    case Op::action_is: return action == n.index ? 1.0 : 0.0;
    case Op::neg: return -eval(n.a, state, action);
    case Op::lnot: return eval(n.a, state, action) == 0.0 ? 1.0 : 0.0;
    case Op::add: return eval(n.a, state, action) + eval(n.b, state, action);
    case Op::sub: return eval(n.a, state, action) - eval(n.b, state, action);
    case Op::mul: return eval(n.a, state, action) * eval(n.b, state, action);
    case Op::div: {
        double num = eval(n.a, state, action);
        double den = eval(n.b, state, action);
        if (den == 0.0) {
            throw EvalError("division by zero in '" + (n.text >= 0 ? texts_[static_cast<std::size_t>(n.text)] : std::string("?")) + "'");
        }
        return num / den;
    }
    case Op::eq: return eval(n.a, state, action) == eval(n.b, state, action) ? 1.0 : 0.0;
    case Op::neq: return eval(n.a, state, action) != eval(n.b, state, action) ? 1.0 : 0.0;
    case Op::lt: return eval(n.a, state, action) < eval(n.b, state, action) ? 1.0 : 0.0;
    case Op::le: return eval(n.a, state, action) <= eval(n.b, state, action) ? 1.0 : 0.0;
    case Op::gt: return eval(n.a, state, action) > eval(n.b, state, action) ? 1.0 : 0.0;
    case Op::ge: return eval(n.a, state, action) >= eval(n.b, state, action) ? 1.0 : 0.0;
    case Op::land: return (eval(n.a, state, action) != 0.0 && eval(n.b, state, action) != 0.0) ? 1.0 : 0.0;
    case Op::lor: return (eval(n.a, state, action) != 0.0 || eval(n.b, state, action) != 0.0) ? 1.0 : 0.0;
    case Op::implies: return (eval(n.a, state, action) == 0.0 || eval(n.b, state, action) != 0.0) ? 1.0 : 0.0;
    case Op::ite: return eval(eval(n.a, state, action) != 0.0 ? n.b : n.c, state, action);
    case Op::bernoulli:
    case Op::discrete:
    case Op::kron: throw EvalError("stochastic expression evaluated as a value");
    }
    return 0.0;
}

int Program::leaf(int root, std::span<const int> state, int action) const {
    int i = root;
    while (node(i).op == Op::ite) {
        const Node& n = node(i);
        i = eval(n.a, state, action) != 0.0 ? n.b : n.c;
    }
    return i;
}

int Program::to_value(double v, int range) const {
    if (range == 2) return v != 0.0 ? 1 : 0;
    double r = std::round(v);
    if (r != v || r < 0 || r >= range) {
        throw EvalError("value " + lang::format_number(v) + " is outside the fluent's " + std::to_string(range) +
                        " values");
    }
    return static_cast<int>(r);
}

void Program::distribution(int root, std::span<const int> state, int action, int range,
                           std::vector<double>& out) const {
    out.assign(static_cast<std::size_t>(range), 0.0);
    const Node& n = node(leaf(root, state, action));
    switch (n.op) {
    case Op::bernoulli: {
        double p = eval(n.a, state, action);
        if (!(p >= -lang::kNormalizationTolerance && p <= 1.0 + lang::kNormalizationTolerance)) {
            throw EvalError("Bernoulli parameter " + lang::format_number(p) + " is outside [0,1]");
        }
        p = std::clamp(p, 0.0, 1.0);
        out[0] = 1.0 - p;
        out[1] = p;
        return;
    }
    case Op::discrete: {
        double sum = 0.0;
        for (int k = 0; k < n.kid_count; ++k) {
            double p = eval(kids_[static_cast<std::size_t>(n.first_kid + k)], state, action);
            if (p < -lang::kNormalizationTolerance) {
                throw EvalError("Discrete branch probability " + lang::format_number(p) + " is negative");
            }
            out[static_cast<std::size_t>(k)] = std::max(p, 0.0);
            sum += p;
        }
        if (std::abs(sum - 1.0) > lang::kNormalizationTolerance) {
            throw EvalError("Discrete branch probabilities sum to " + lang::format_number(sum));
        }
        return;
    }
    case Op::kron:
        out[static_cast<std::size_t>(to_value(eval(n.a, state, action), range))] = 1.0;
        return;
    default:
        out[static_cast<std::size_t>(to_value(eval(&n - nodes_.data(), state, action), range))] = 1.0;
        return;
    }
}

bool Program::certain_value(int root, std::span<const int> state, int action, int range, int& value) const {
    const Node& n = node(leaf(root, state, action));
    if (n.op == Op::bernoulli || n.op == Op::discrete) return false;
    int at = n.op == Op::kron ? n.a : static_cast<int>(&n - nodes_.data());
    value = to_value(eval(at, state, action), range);
    return true;
}

} // namespace xplan::grounding::detail
