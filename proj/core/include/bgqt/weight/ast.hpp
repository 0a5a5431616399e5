#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace bgqt::weight {

// Reserved function names of the weight language. Any other identifier
// is a free parameter bound at evaluation time.
enum class Fn {
    exp,
    cos2, // cos^2, kept primitive so non-negativity is syntactic
    step, // Heaviside, 1 for x >= 0
    sqrt,
    abs,
    pos,          // pos(i): position series of particle i (1-based)
    sep2,         // sep2(i,j): (x_i(t) - x_j(t))^2 series
    lag,          // lag(series, delta): series shifted to t + delta
    supt,         // max over the recorded window
    inft,         // min over the recorded window
    avgt,         // avgt(series, t0, t1): trapezoidal time average
    maxt,         // maxt(series, t0, t1): max over the window
    flashminpair, // flashminpair(i, j, T, X): GRW pair weight
};

bool lookup_fn(const std::string& name, Fn& out);
const char* fn_name(Fn fn);
int fn_arity(Fn fn);

enum class BinaryOp { add, sub, mul, div };
enum class ValueType { unresolved, scalar, series };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable expression node. `offset` points into the source text the
// node was parsed from (npos for synthesized nodes); `type` is filled by
// the typechecker.
struct Expr {
    enum class NodeKind { number, parameter, unary_minus, binary, call };

    NodeKind node = NodeKind::number;
    double number = 0.0;
    std::string parameter;
    BinaryOp op = BinaryOp::add;
    Fn fn = Fn::exp;
    std::vector<ExprPtr> children;
    std::size_t offset = std::string::npos;
    ValueType type = ValueType::unresolved;
};

ExprPtr make_number(double value, std::size_t offset = std::string::npos);
ExprPtr make_parameter(std::string name, std::size_t offset = std::string::npos);
ExprPtr make_unary_minus(ExprPtr child, std::size_t offset = std::string::npos);
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs,
                    std::size_t offset = std::string::npos);
ExprPtr make_call(Fn fn, std::vector<ExprPtr> args, std::size_t offset = std::string::npos);

// Structural equality; offsets and type annotations are ignored.
bool equal(const Expr& a, const Expr& b);
inline bool equal(const ExprPtr& a, const ExprPtr& b) { return equal(*a, *b); }

// Canonical source text; parse(print(e)) is structurally equal to e.
std::string print(const Expr& expr);
inline std::string print(const ExprPtr& e) { return print(*e); }

// Free parameter names in first-appearance order.
std::vector<std::string> free_parameters(const Expr& expr);

// Replaces parameters found in `values` with number literals.
ExprPtr substitute(const ExprPtr& expr, const std::map<std::string, double>& values);

// Human-readable tree dump (one node per line), used by the CLI.
std::string dump_tree(const Expr& expr);

} // namespace bgqt::weight
