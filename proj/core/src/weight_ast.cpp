#include "bgqt/weight/ast.hpp"

#include <array>
#include <charconv>
#include <cstring>
#include <sstream>

namespace bgqt::weight {

namespace {

struct FnInfo {
    Fn fn;
    const char* name;
    int arity;
};

constexpr std::array<FnInfo, 13> kFns{{
    {Fn::exp, "exp", 1},
    {Fn::cos2, "cos2", 1},
    {Fn::step, "step", 1},
    {Fn::sqrt, "sqrt", 1},
    {Fn::abs, "abs", 1},
    {Fn::pos, "pos", 1},
    {Fn::sep2, "sep2", 2},
    {Fn::lag, "lag", 2},
    {Fn::supt, "supt", 1},
    {Fn::inft, "inft", 1},
    {Fn::avgt, "avgt", 3},
    {Fn::maxt, "maxt", 3},
    {Fn::flashminpair, "flashminpair", 4},
}};

int precedence(BinaryOp op) {
    return (op == BinaryOp::mul || op == BinaryOp::div) ? 2 : 1;
}

void print_rec(const Expr& e, std::string& out, int parent_prec, bool rhs_of_same);

void print_child(const ExprPtr& c, std::string& out, int parent_prec, bool rhs) {
    print_rec(*c, out, parent_prec, rhs);
}

// shortest round-tripping decimal form
void print_number(double v, std::string& out) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

void print_rec(const Expr& e, std::string& out, int parent_prec, bool rhs_of_same) {
    switch (e.node) {
    case Expr::NodeKind::number:
        print_number(e.number, out);
        break;
    case Expr::NodeKind::parameter:
        out += e.parameter;
        break;
    case Expr::NodeKind::unary_minus: {
        const bool paren = parent_prec > 0; // "-x" binds weaker than * and /
        if (paren) out += '(';
        out += '-';
        const Expr& c = *e.children[0];
        if (c.node == Expr::NodeKind::binary || c.node == Expr::NodeKind::unary_minus) {
            out += '(';
            print_rec(c, out, 0, false);
            out += ')';
        } else {
            print_rec(c, out, 3, false);
        }
        if (paren) out += ')';
        break;
    }
    case Expr::NodeKind::binary: {
        const int prec = precedence(e.op);
        const bool paren = prec < parent_prec || (prec == parent_prec && rhs_of_same);
        if (paren) out += '(';
        print_child(e.children[0], out, prec, false);
        switch (e.op) {
        case BinaryOp::add: out += " + "; break;
        case BinaryOp::sub: out += " - "; break;
        case BinaryOp::mul: out += "*"; break;
        case BinaryOp::div: out += "/"; break;
        }
        print_child(e.children[1], out, prec, true);
        if (paren) out += ')';
        break;
    }
    case Expr::NodeKind::call: {
        out += fn_name(e.fn);
        out += '(';
        for (std::size_t i = 0; i < e.children.size(); ++i) {
            if (i) out += ", ";
            print_rec(*e.children[i], out, 0, false);
        }
        out += ')';
        break;
    }
    }
}

} // namespace

bool lookup_fn(const std::string& name, Fn& out) {
    for (const auto& f : kFns)
        if (name == f.name) {
            out = f.fn;
            return true;
        }
    return false;
}

const char* fn_name(Fn fn) {
    for (const auto& f : kFns)
        if (f.fn == fn) return f.name;
    return "?";
}

int fn_arity(Fn fn) {
    for (const auto& f : kFns)
        if (f.fn == fn) return f.arity;
    return -1;
}

ExprPtr make_number(double value, std::size_t offset) {
    auto e = std::make_shared<Expr>();
    e->node = Expr::NodeKind::number;
    e->number = value;
    e->offset = offset;
    return e;
}

ExprPtr make_parameter(std::string name, std::size_t offset) {
    auto e = std::make_shared<Expr>();
    e->node = Expr::NodeKind::parameter;
    e->parameter = std::move(name);
    e->offset = offset;
    return e;
}

ExprPtr make_unary_minus(ExprPtr child, std::size_t offset) {
    auto e = std::make_shared<Expr>();
    e->node = Expr::NodeKind::unary_minus;
    e->children = {std::move(child)};
    e->offset = offset;
    return e;
}

ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, std::size_t offset) {
    auto e = std::make_shared<Expr>();
    e->node = Expr::NodeKind::binary;
    e->op = op;
    e->children = {std::move(lhs), std::move(rhs)};
    e->offset = offset;
    return e;
}

ExprPtr make_call(Fn fn, std::vector<ExprPtr> args, std::size_t offset) {
    auto e = std::make_shared<Expr>();
    e->node = Expr::NodeKind::call;
    e->fn = fn;
    e->children = std::move(args);
    e->offset = offset;
    return e;
}

bool equal(const Expr& a, const Expr& b) {
    if (a.node != b.node) return false;
    switch (a.node) {
    case Expr::NodeKind::number:
        return a.number == b.number;
    case Expr::NodeKind::parameter:
        return a.parameter == b.parameter;
    case Expr::NodeKind::unary_minus:
        break;
    case Expr::NodeKind::binary:
        if (a.op != b.op) return false;
        break;
    case Expr::NodeKind::call:
        if (a.fn != b.fn) return false;
        break;
    }
    if (a.children.size() != b.children.size()) return false;
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (!equal(*a.children[i], *b.children[i])) return false;
    return true;
}

std::string print(const Expr& expr) {
    std::string out;
    print_rec(expr, out, 0, false);
    return out;
}

namespace {
void collect_params(const Expr& e, std::vector<std::string>& out) {
    if (e.node == Expr::NodeKind::parameter) {
        for (const auto& seen : out)
            if (seen == e.parameter) return;
        out.push_back(e.parameter);
        return;
    }
    for (const auto& c : e.children) collect_params(*c, out);
}
} // namespace

std::vector<std::string> free_parameters(const Expr& expr) {
    std::vector<std::string> out;
    collect_params(expr, out);
    return out;
}

ExprPtr substitute(const ExprPtr& expr, const std::map<std::string, double>& values) {
    switch (expr->node) {
    case Expr::NodeKind::parameter: {
        auto it = values.find(expr->parameter);
        if (it == values.end()) return expr;
        return make_number(it->second, expr->offset);
    }
    case Expr::NodeKind::number:
        return expr;
    default: {
        bool changed = false;
        std::vector<ExprPtr> children;
        children.reserve(expr->children.size());
        for (const auto& c : expr->children) {
            auto s = substitute(c, values);
            changed = changed || s != c;
            children.push_back(std::move(s));
        }
        if (!changed) return expr;
        auto e = std::make_shared<Expr>(*expr);
        e->children = std::move(children);
        return e;
    }
    }
}

namespace {
void dump_rec(const Expr& e, std::ostringstream& out, int depth) {
    for (int i = 0; i < depth; ++i) out << "  ";
    switch (e.node) {
    case Expr::NodeKind::number: out << "number " << print(e); break;
    case Expr::NodeKind::parameter: out << "parameter " << e.parameter; break;
    case Expr::NodeKind::unary_minus: out << "neg"; break;
    case Expr::NodeKind::binary:
        out << "op ";
        switch (e.op) {
        case BinaryOp::add: out << '+'; break;
        case BinaryOp::sub: out << '-'; break;
        case BinaryOp::mul: out << '*'; break;
        case BinaryOp::div: out << '/'; break;
        }
        break;
    case Expr::NodeKind::call: out << "call " << fn_name(e.fn); break;
    }
    if (e.type == ValueType::scalar) out << " : scalar";
    if (e.type == ValueType::series) out << " : series";
    out << '\n';
    for (const auto& c : e.children) dump_rec(*c, out, depth + 1);
}
} // namespace

std::string dump_tree(const Expr& expr) {
    std::ostringstream out;
    dump_rec(expr, out, 0);
    return out.str();
}

} // namespace bgqt::weight
