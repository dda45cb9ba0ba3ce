#pragma once

// Ground expressions compiled to a flat node pool. Fluent references are
// resolved to state slots, action indices or folded non-fluent constants;
// aggregates are expanded; constant subtrees are folded.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace xplan::grounding::detail {

enum class Op : std::uint8_t {
    constant,
    state,     // index = slot
    action_is, // index = ground action
    neg, lnot,
    add, sub, mul, div,
    eq, neq, lt, le, gt, ge,
    land, lor, implies,
    ite,       // a ? b : c
    bernoulli, // a = probability
    discrete,  // kids = probability per enum value
    kron,      // a = value
};

struct Node {
    Op op = Op::constant;
    double value = 0.0;
    int index = -1;
    int a = -1;
    int b = -1;
    int c = -1;
    int first_kid = 0;
    int kid_count = 0;
    int text = -1; // source text for diagnostics (division nodes)
};

class Program {
public:
    int add(Node n);
    int add_text(std::string s);
    int add_kids(const std::vector<int>& kids);

    const Node& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
    bool is_constant(int i) const { return node(i).op == Op::constant; }

    /// Deterministic value; throws EvalError on division by zero.
    double eval(int root, std::span<const int> state, int action) const;

    /// Distribution over `range` values of a CPF body rooted at `root`.
    void distribution(int root, std::span<const int> state, int action, int range, std::vector<double>& out) const;

    /// Same as distribution(), but only reports the single certain value if there is one.
    bool certain_value(int root, std::span<const int> state, int action, int range, int& value) const;

private:
    int leaf(int root, std::span<const int> state, int action) const;
    int to_value(double v, int range) const;

    std::vector<Node> nodes_;
    std::vector<int> kids_;
    std::vector<std::string> texts_;
};

} // namespace xplan::grounding::detail
