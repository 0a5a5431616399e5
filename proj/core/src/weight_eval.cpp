#include "bgqt/weight/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "bgqt/errors.hpp"
#include "bgqt/weight/typecheck.hpp"

namespace bgqt::weight {

namespace {

// Scalar or a sampled series over a window [lo, hi] of the record grid.
struct Value {
    bool is_series = false;
    double scalar = 0.0;
    std::size_t lo = 0;
    std::vector<double> samples; // hi = lo + samples.size() - 1
};

struct Evaluator {
    const Bindings& bindings;
    const BeableConfiguration& config;
    std::map<std::string, double>& diagnostics;

    std::size_t record_count() const {
        if (config.kind() == BeableConfiguration::Kind::bohm)
            return config.trajectory().samples();
        if (config.kind() == BeableConfiguration::Kind::cosmo)
            return config.sequence().length();
        return 0;
    }

    double record_time(std::size_t k) const {
        if (config.kind() == BeableConfiguration::Kind::bohm)
            return config.trajectory().times[k];
        return static_cast<double>(k); // cosmo: unit-spaced volume steps
    }

    double record_spacing() const {
        const std::size_t n = record_count();
        if (n >= 2) return record_time(1) - record_time(0);
        return 1.0;
    }

    std::string key(const Expr& e) const {
        return std::string(fn_name(e.fn)) + "@" +
               (e.offset == std::string::npos ? "?" : std::to_string(e.offset));
    }

    Value eval(const Expr& e) {
        switch (e.node) {
        case Expr::NodeKind::number:
            return scalar_value(e.number);
        case Expr::NodeKind::parameter: {
            auto it = bindings.find(e.parameter);
            if (it == bindings.end())
                throw WeightError(ErrorClass::unbound_parameter,
                                  "unbound parameter '" + e.parameter + "'", e.offset);
            return scalar_value(it->second);
        }
        case Expr::NodeKind::unary_minus: {
            Value v = eval(*e.children[0]);
            if (v.is_series)
                for (auto& s : v.samples) s = -s;
            else
                v.scalar = -v.scalar;
            return v;
        }
        case Expr::NodeKind::binary:
            return eval_binary(e);
        case Expr::NodeKind::call:
            return eval_call(e);
        }
        throw WeightError(ErrorClass::domain, "corrupt expression node", e.offset);
    }

    static Value scalar_value(double v) {
        Value out;
        out.scalar = v;
        return out;
    }

    Value eval_binary(const Expr& e) {
        Value a = eval(*e.children[0]);
        Value b = eval(*e.children[1]);
        auto apply = [&](double x, double y) {
            switch (e.op) {
            case BinaryOp::add: return x + y;
            case BinaryOp::sub: return x - y;
            case BinaryOp::mul: return x * y;
            case BinaryOp::div:
                if (y == 0.0)
                    throw WeightError(ErrorClass::division_by_zero, "division by zero",
                                      e.offset);
                return x / y;
            }
            return 0.0;
        };
        if (!a.is_series && !b.is_series) return scalar_value(apply(a.scalar, b.scalar));

        if (a.is_series && b.is_series) {
            const std::size_t lo = std::max(a.lo, b.lo);
            const std::size_t a_hi = a.lo + a.samples.size();
            const std::size_t b_hi = b.lo + b.samples.size();
            const std::size_t hi = std::min(a_hi, b_hi); // one past the end
            if (lo >= hi)
                throw WeightError(ErrorClass::empty_window,
                                  "series windows do not overlap", e.offset);
            Value out;
            out.is_series = true;
            out.lo = lo;
            out.samples.resize(hi - lo);
            for (std::size_t k = lo; k < hi; ++k)
                out.samples[k - lo] = apply(a.samples[k - a.lo], b.samples[k - b.lo]);
            return out;
        }

        Value& s = a.is_series ? a : b;
        const double c = a.is_series ? b.scalar : a.scalar;
        const bool series_left = a.is_series;
        for (auto& x : s.samples) x = series_left ? apply(x, c) : apply(c, x);
        return std::move(s);
    }

    Value eval_call(const Expr& e) {
        switch (e.fn) {
        case Fn::exp:
        case Fn::cos2:
        case Fn::step:
        case Fn::sqrt:
        case Fn::abs: {
            Value v = eval(*e.children[0]);
            auto f = [&](double x) {
                switch (e.fn) {
                case Fn::exp: return std::exp(x);
                case Fn::cos2: {
                    const double c = std::cos(x);
                    return c * c;
                }
                case Fn::step: return x >= 0.0 ? 1.0 : 0.0;
                case Fn::sqrt:
                    if (x < 0.0)
                        throw WeightError(ErrorClass::domain,
                                          "sqrt of negative value " + std::to_string(x),
                                          e.offset);
                    return std::sqrt(x);
                case Fn::abs: return std::abs(x);
                default: return x;
                }
            };
            if (v.is_series)
                for (auto& x : v.samples) x = f(x);
            else
                v.scalar = f(v.scalar);
            return v;
        }
        case Fn::pos:
            return series_pos(e);
        case Fn::sep2:
            return series_sep2(e);
        case Fn::lag:
            return series_lag(e);
        case Fn::supt:
        case Fn::inft:
            return reduce_extremum(e, e.fn == Fn::supt);
        case Fn::avgt:
            return reduce_window(e, /*average=*/true);
        case Fn::maxt:
            return reduce_window(e, /*average=*/false);
        case Fn::flashminpair:
            return flash_min_pair(e);
        }
        throw WeightError(ErrorClass::domain, "corrupt call node", e.offset);
    }

    int particle_arg(const Expr& e, std::size_t i, int count) const {
        const int p = static_cast<int>(e.children[i]->number);
        if (p < 1 || p > count)
            throw WeightError(ErrorClass::argument,
                              std::string(fn_name(e.fn)) + ": particle " + std::to_string(p) +
                                  " out of range (configuration has " + std::to_string(count) +
                                  ")",
                              e.children[i]->offset);
        return p - 1;
    }

    Value series_pos(const Expr& e) {
        Value out;
        out.is_series = true;
        if (config.kind() == BeableConfiguration::Kind::cosmo) {
            particle_arg(e, 0, 1);
            out.samples = config.sequence().deltas;
            return out;
        }
        const Trajectory& traj = config.trajectory();
        const int p = particle_arg(e, 0, traj.particle_count);
        out.samples.resize(traj.samples());
        for (std::size_t k = 0; k < traj.samples(); ++k) out.samples[k] = traj.position(k, p);
        return out;
    }

    Value series_sep2(const Expr& e) {
        const Trajectory& traj = config.trajectory();
        const int a = particle_arg(e, 0, traj.particle_count);
        const int b = particle_arg(e, 1, traj.particle_count);
        Value out;
        out.is_series = true;
        out.samples.resize(traj.samples());
        for (std::size_t k = 0; k < traj.samples(); ++k) {
            const double d = traj.position(k, a) - traj.position(k, b);
            out.samples[k] = d * d;
        }
        return out;
    }

    double scalar_arg(const Expr& e, std::size_t i) {
        Value v = eval(*e.children[i]);
        return v.scalar;
    }

    Value series_lag(const Expr& e) {
        Value s = eval(*e.children[0]);
        const double delta = scalar_arg(e, 1);
        const double spacing = record_spacing();
        // shift by the nearest whole number of record strides
        const long shift = std::lround(delta / spacing);
        const long lo = static_cast<long>(s.lo);
        const long hi = lo + static_cast<long>(s.samples.size()); // one past
        // lagged(k) = s(k + shift), valid where k + shift lands in [lo, hi)
        long new_lo = lo - shift;
        long new_hi = hi - shift;
        const long n = static_cast<long>(record_count());
        const long clip_lo = std::max(new_lo, 0l);
        const long clip_hi = std::min(new_hi, n);
        if (clip_lo >= clip_hi)
            throw WeightError(ErrorClass::empty_window,
                              "lag shift leaves no overlapping samples", e.offset);
        if (clip_hi - clip_lo < hi - lo) diagnostics[key(e) + ".truncated"] = 1.0;
        Value out;
        out.is_series = true;
        out.lo = static_cast<std::size_t>(clip_lo);
        out.samples.resize(static_cast<std::size_t>(clip_hi - clip_lo));
        for (long k = clip_lo; k < clip_hi; ++k)
            out.samples[static_cast<std::size_t>(k - clip_lo)] =
                s.samples[static_cast<std::size_t>(k + shift - lo)];
        return out;
    }

    Value reduce_extremum(const Expr& e, bool maximum) {
        Value s = eval(*e.children[0]);
        if (s.samples.empty())
            throw WeightError(ErrorClass::empty_window, "series has no samples", e.offset);
        double acc = s.samples[0];
        for (double x : s.samples) acc = maximum ? std::max(acc, x) : std::min(acc, x);
        diagnostics[key(e)] = acc;
        return scalar_value(acc);
    }

    Value reduce_window(const Expr& e, bool average) {
        Value s = eval(*e.children[0]);
        const double t0 = scalar_arg(e, 1);
        const double t1 = scalar_arg(e, 2);
        const double tol = 1e-9 * (1.0 + std::max(std::abs(t0), std::abs(t1)));
        std::size_t first = std::string::npos, last = 0;
        for (std::size_t i = 0; i < s.samples.size(); ++i) {
            const double t = record_time(s.lo + i);
            if (t >= t0 - tol && t <= t1 + tol) {
                if (first == std::string::npos) first = i;
                last = i;
            }
        }
        if (first == std::string::npos)
            throw WeightError(ErrorClass::empty_window,
                              std::string(fn_name(e.fn)) + ": no recorded samples in [" +
                                  std::to_string(t0) + ", " + std::to_string(t1) + "]",
                              e.offset);
        const double window_lo = record_time(s.lo + first);
        const double window_hi = record_time(s.lo + last);
        if (window_lo - tol > t0 || window_hi + tol < t1)
            diagnostics[key(e) + ".truncated"] = 1.0;

        double result;
        if (!average) {
            result = s.samples[first];
            for (std::size_t i = first; i <= last; ++i) result = std::max(result, s.samples[i]);
        } else if (first == last) {
            result = s.samples[first];
        } else {
            // uniform trapezoid divided by the covered span
            const double h = record_spacing();
            double integral = 0.5 * (s.samples[first] + s.samples[last]);
            for (std::size_t i = first + 1; i < last; ++i) integral += s.samples[i];
            integral *= h;
            result = integral / (window_hi - window_lo);
        }
        diagnostics[key(e)] = result;
        return scalar_value(result);
    }

    Value flash_min_pair(const Expr& e) {
        const FlashHistory& hist = config.flash_history();
        const int a = particle_arg(e, 0, hist.particle_count);
        const int b = particle_arg(e, 1, hist.particle_count);
        const double T = scalar_arg(e, 2);
        const double X = scalar_arg(e, 3);
        if (T == 0.0 || X == 0.0)
            throw WeightError(ErrorClass::division_by_zero,
                              "flashminpair scales T and X must be non-zero", e.offset);
        double best = std::numeric_limits<double>::infinity();
        bool has_a = false, has_b = false;
        for (const auto& fa : hist.flashes) {
            if (fa.particle != a) continue;
            has_a = true;
            for (const auto& fb : hist.flashes) {
                if (fb.particle != b) continue;
                has_b = true;
                const double dt = fa.t - fb.t;
                const double dx = fa.x - fb.x;
                best = std::min(best, std::exp(-dt * dt / (T * T)) *
                                          std::exp(-dx * dx / (X * X)));
            }
        }
        const double value = (has_a && has_b) ? best : 0.0;
        diagnostics[key(e)] = value;
        return scalar_value(value);
    }
};

double run_eval(const ExprPtr& expr, const Bindings& bindings,
                const BeableConfiguration& config, std::map<std::string, double>& diag) {
    ExprPtr checked = expr;
    if (checked->type == ValueType::unresolved) checked = typecheck(expr, config.kind());
    Evaluator ev{bindings, config, diag};
    const Value v = ev.eval(*checked);
    if (!std::isfinite(v.scalar))
        throw WeightError(ErrorClass::domain,
                          "expression evaluated to a non-finite value", checked->offset);
    return v.scalar;
}

} // namespace

WeightValue evaluate(const ExprPtr& expr, const Bindings& bindings,
                     const BeableConfiguration& config) {
    WeightValue out;
    out.value = run_eval(expr, bindings, config, out.diagnostics);
    if (out.value < 0.0)
        throw WeightError(ErrorClass::negative_value,
                          "weight must be non-negative; '" + print(expr) + "' evaluated to " +
                              std::to_string(out.value),
                          expr->offset);
    return out;
}

double evaluate_signed(const ExprPtr& expr, const Bindings& bindings,
                       const BeableConfiguration& config) {
    std::map<std::string, double> diag;
    return run_eval(expr, bindings, config, diag);
}

} // namespace bgqt::weight
