#pragma once

// Abstract syntax of the .xrddl planning dialect.
//
// Expression trees are immutable and shared (ExprPtr), so models are cheap to
// copy. Source positions are carried for diagnostics and never take part in
// structural equality.

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace xplan::lang {

struct SourcePos {
    int line = 0;
    int column = 0;
};

struct EnumLiteral {
    std::string value;
    bool operator==(const EnumLiteral&) const = default;
};

/// bool, real number, or enum value (`@textual`).
using LiteralValue = std::variant<bool, double, EnumLiteral>;

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct LiteralExpr {
    LiteralValue value;
};

/// `?name`, bound by a CPF head or an aggregate.
struct VariableExpr {
    std::string name;
};

/// `$name`, an object declared by the instance.
struct ObjectExpr {
    std::string name;
};

struct FluentExpr {
    std::string name;
    std::vector<ExprPtr> args;
};

enum class UnaryOp { negate, logical_not };

struct UnaryExpr {
    UnaryOp op;
    ExprPtr operand;
};

enum class BinaryOp {
    add, sub, mul, div,
    eq, neq, lt, le, gt, ge,
    logical_and, logical_or, implies,
};

struct BinaryExpr {
    BinaryOp op;
    ExprPtr lhs;
    ExprPtr rhs;
};

struct IfExpr {
    ExprPtr condition;
    ExprPtr then_branch;
    ExprPtr else_branch;
};

enum class AggregateOp { sum, product, exists, forall };

struct TypedVariable {
    std::string name;
    std::string type;
    bool operator==(const TypedVariable&) const = default;
};

/// `sum_{?x : T, ?y : U} [body]`; expanded over the finite parameter domains
/// when grounding.
struct AggregateExpr {
    AggregateOp op;
    std::vector<TypedVariable> vars;
    ExprPtr body;
};

struct BernoulliExpr {
    ExprPtr probability;
};

struct DiscreteBranch {
    std::string value;
    ExprPtr probability;
};

struct DiscreteExpr {
    std::string enum_type;
    std::vector<DiscreteBranch> branches;
};

struct KronDeltaExpr {
    ExprPtr value;
};

struct Expr {
    using Node = std::variant<LiteralExpr, VariableExpr, ObjectExpr, FluentExpr, UnaryExpr,
                              BinaryExpr, IfExpr, AggregateExpr, BernoulliExpr, DiscreteExpr,
                              KronDeltaExpr>;
    Node node;
    SourcePos pos;
};

bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

/// True if the tree contains a Bernoulli, Discrete or KronDelta node.
bool is_stochastic(const Expr& e);

struct EnumDecl {
    std::string name;
    std::vector<std::string> values;
    /// Declared inline by a `cstate` block entry (`E_r : {textual, visual};`).
    bool from_state_block = false;
    SourcePos pos;
};

struct ObjectTypeDecl {
    std::string name;
    SourcePos pos;
};

enum class FluentKind { state, action, non_fluent };
enum class ValueKind { boolean, real, enumeration };

struct ValueType {
    ValueKind kind = ValueKind::boolean;
    std::string enum_name; // set iff kind == enumeration
    bool operator==(const ValueType&) const = default;
};

struct FluentDecl {
    std::string name;
    FluentKind kind = FluentKind::state;
    ValueType type;
    std::vector<std::string> params; // parameter type names
    LiteralValue default_value = false;
    /// Declared in a `cstate` block; such fluents are the preference state.
    bool preference = false;
    SourcePos pos;
};

struct Cpf {
    std::string target;
    std::vector<std::string> params; // variable names bound by the head, without '?'
    ExprPtr body;
    SourcePos pos;
};

struct DomainModel {
    std::string name;
    std::vector<std::string> requirements;
    std::vector<EnumDecl> enums;
    std::vector<ObjectTypeDecl> object_types;
    std::vector<FluentDecl> fluents;
    std::vector<Cpf> cpfs;
    ExprPtr reward;
    std::vector<ExprPtr> preconditions;
};

struct Assignment {
    std::string fluent;
    std::vector<std::string> args; // enum value or object names, sigils stripped
    LiteralValue value = false;
    SourcePos pos;
};

struct ObjectsDecl {
    std::string type;
    std::vector<std::string> objects;
    SourcePos pos;
};

struct InstanceModel {
    std::string name;
    std::string domain_name;
    std::vector<ObjectsDecl> objects;
    std::vector<Assignment> non_fluents;
    std::vector<Assignment> init_state;
    int horizon = 1;
    double discount = 1.0;
};

// Structural equality, ignoring source positions. Enum and object type
// declarations compare as sets keyed by name; everything else is ordered.
bool operator==(const EnumDecl& a, const EnumDecl& b);
bool operator==(const ObjectTypeDecl& a, const ObjectTypeDecl& b);
bool operator==(const FluentDecl& a, const FluentDecl& b);
bool operator==(const Cpf& a, const Cpf& b);
bool operator==(const DomainModel& a, const DomainModel& b);
bool operator==(const Assignment& a, const Assignment& b);
bool operator==(const ObjectsDecl& a, const ObjectsDecl& b);
bool operator==(const InstanceModel& a, const InstanceModel& b);

const FluentDecl* find_fluent(const DomainModel& d, const std::string& name);
const EnumDecl* find_enum(const DomainModel& d, const std::string& name);

std::string_view to_string(FluentKind k);

/// Builders for constructing trees in code (generators, tests).
namespace make {

ExprPtr boolean(bool v);
ExprPtr number(double v);
ExprPtr enum_value(std::string v);
ExprPtr var(std::string name);
ExprPtr object(std::string name);
ExprPtr fluent(std::string name, std::vector<ExprPtr> args = {});
ExprPtr unary(UnaryOp op, ExprPtr operand);
ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);
ExprPtr if_then_else(ExprPtr c, ExprPtr t, ExprPtr e);
ExprPtr aggregate(AggregateOp op, std::vector<TypedVariable> vars, ExprPtr body);
ExprPtr bernoulli(ExprPtr p);
ExprPtr discrete(std::string enum_type, std::vector<DiscreteBranch> branches);
ExprPtr kron_delta(ExprPtr v);

inline ExprPtr add(ExprPtr a, ExprPtr b) { return binary(BinaryOp::add, std::move(a), std::move(b)); }
inline ExprPtr sub(ExprPtr a, ExprPtr b) { return binary(BinaryOp::sub, std::move(a), std::move(b)); }
inline ExprPtr mul(ExprPtr a, ExprPtr b) { return binary(BinaryOp::mul, std::move(a), std::move(b)); }
inline ExprPtr eq(ExprPtr a, ExprPtr b) { return binary(BinaryOp::eq, std::move(a), std::move(b)); }
inline ExprPtr neq(ExprPtr a, ExprPtr b) { return binary(BinaryOp::neq, std::move(a), std::move(b)); }
inline ExprPtr land(ExprPtr a, ExprPtr b) { return binary(BinaryOp::logical_and, std::move(a), std::move(b)); }
inline ExprPtr lor(ExprPtr a, ExprPtr b) { return binary(BinaryOp::logical_or, std::move(a), std::move(b)); }
inline ExprPtr implies(ExprPtr a, ExprPtr b) { return binary(BinaryOp::implies, std::move(a), std::move(b)); }
inline ExprPtr lnot(ExprPtr a) { return unary(UnaryOp::logical_not, std::move(a)); }

} // namespace make

} // namespace xplan::lang
