#include "bgqt/weight/typecheck.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "bgqt/errors.hpp"

namespace bgqt::weight {

namespace {

using Kind = BeableConfiguration::Kind;

void require_particle_literal(const Expr& call, std::size_t arg) {
    const Expr& a = *call.children[arg];
    const bool ok = a.node == Expr::NodeKind::number && a.number >= 1.0 &&
                    a.number == std::floor(a.number);
    if (!ok)
        throw WeightError(ErrorClass::argument,
                          std::string(fn_name(call.fn)) +
                              ": particle index must be a positive integer literal",
                          a.offset);
}

ExprPtr annotate(const ExprPtr& expr, Kind kind) {
    auto out = std::make_shared<Expr>(*expr);
    for (auto& c : out->children) c = annotate(c, kind);

    auto child_type = [&](std::size_t i) { return out->children[i]->type; };
    auto require_scalar = [&](std::size_t i, const char* what) {
        if (child_type(i) != ValueType::scalar)
            throw WeightError(ErrorClass::argument,
                              std::string(fn_name(out->fn)) + ": " + what + " must be a scalar",
                              out->children[i]->offset);
    };

    switch (out->node) {
    case Expr::NodeKind::number:
    case Expr::NodeKind::parameter:
        out->type = ValueType::scalar;
        break;
    case Expr::NodeKind::unary_minus:
        out->type = child_type(0);
        break;
    case Expr::NodeKind::binary:
        out->type = (child_type(0) == ValueType::series || child_type(1) == ValueType::series)
                        ? ValueType::series
                        : ValueType::scalar;
        break;
    case Expr::NodeKind::call:
        switch (out->fn) {
        case Fn::exp:
        case Fn::cos2:
        case Fn::step:
        case Fn::sqrt:
        case Fn::abs:
            out->type = child_type(0); // lifts pointwise over series
            break;
        case Fn::pos:
            if (kind == Kind::grw)
                throw WeightError(ErrorClass::kind_mismatch,
                                  "pos: trajectory primitive not available for grw configurations",
                                  out->offset);
            require_particle_literal(*out, 0);
            if (kind == Kind::cosmo && out->children[0]->number != 1.0)
                throw WeightError(ErrorClass::kind_mismatch,
                                  "pos: cosmo configurations carry a single delta series, use pos(1)",
                                  out->offset);
            out->type = ValueType::series;
            break;
        case Fn::sep2:
            if (kind != Kind::bohm)
                throw WeightError(ErrorClass::kind_mismatch,
                                  std::string("sep2: trajectory primitive not available for ") +
                                      to_string(kind) + " configurations",
                                  out->offset);
            require_particle_literal(*out, 0);
            require_particle_literal(*out, 1);
            out->type = ValueType::series;
            break;
        case Fn::lag:
            if (child_type(0) != ValueType::series)
                throw WeightError(ErrorClass::argument, "lag: first argument must be a series",
                                  out->children[0]->offset);
            require_scalar(1, "shift");
            out->type = ValueType::series;
            break;
        case Fn::supt:
        case Fn::inft:
            if (child_type(0) != ValueType::series)
                throw WeightError(ErrorClass::argument,
                                  std::string(fn_name(out->fn)) + ": argument must be a series",
                                  out->children[0]->offset);
            out->type = ValueType::scalar;
            break;
        case Fn::avgt:
        case Fn::maxt:
            if (child_type(0) != ValueType::series)
                throw WeightError(ErrorClass::argument,
                                  std::string(fn_name(out->fn)) +
                                      ": first argument must be a series",
                                  out->children[0]->offset);
            require_scalar(1, "window start");
            require_scalar(2, "window end");
            out->type = ValueType::scalar;
            break;
        case Fn::flashminpair:
            if (kind != Kind::grw)
                throw WeightError(ErrorClass::kind_mismatch,
                                  std::string("flashminpair: flash primitive not available for ") +
                                      to_string(kind) + " configurations",
                                  out->offset);
            require_particle_literal(*out, 0);
            require_particle_literal(*out, 1);
            require_scalar(2, "time scale");
            require_scalar(3, "space scale");
            out->type = ValueType::scalar;
            break;
        }
        break;
    }
    return out;
}

} // namespace

ExprPtr typecheck(const ExprPtr& expr, BeableConfiguration::Kind kind) {
    ExprPtr checked = annotate(expr, kind);
    if (checked->type != ValueType::scalar)
        throw WeightError(ErrorClass::series_at_root,
                          "weight expression must reduce to a scalar; the root is a series "
                          "(apply supt/inft/avgt/maxt)",
                          checked->offset);
    return checked;
}

} // namespace bgqt::weight
