#include "bgqt/weight/parse.hpp"

#include <cctype>
#include <charconv>

#include "bgqt/errors.hpp"

namespace bgqt::weight {

namespace {

struct Parser {
    const std::string& src;
    std::size_t pos = 0;

    explicit Parser(const std::string& s) : src(s) {}

    [[noreturn]] void fail(ErrorClass klass, const std::string& msg, std::size_t at) {
        int line = 1, col = 1;
        for (std::size_t i = 0; i < at && i < src.size(); ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw WeightError(klass,
                          msg + " at offset " + std::to_string(at) + " (line " +
                              std::to_string(line) + ", column " + std::to_string(col) + ")",
                          at, line, col);
    }

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }

    bool at_end() {
        skip_ws();
        return pos >= src.size();
    }

    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }

    bool consume(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        for (;;) {
            const char c = peek();
            if (c != '+' && c != '-') return lhs;
            const std::size_t at = pos;
            ++pos;
            ExprPtr rhs = parse_term();
            lhs = make_binary(c == '+' ? BinaryOp::add : BinaryOp::sub, std::move(lhs),
                              std::move(rhs), at);
        }
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_unary();
        for (;;) {
            const char c = peek();
            if (c != '*' && c != '/') return lhs;
            const std::size_t at = pos;
            ++pos;
            ExprPtr rhs = parse_unary();
            lhs = make_binary(c == '*' ? BinaryOp::mul : BinaryOp::div, std::move(lhs),
                              std::move(rhs), at);
        }
    }

    ExprPtr parse_unary() {
        if (peek() == '-') {
            const std::size_t at = pos;
            ++pos;
            return make_unary_minus(parse_atom(), at);
        }
        return parse_atom();
    }

    ExprPtr parse_atom() {
        const char c = peek();
        const std::size_t at = pos;
        if (c == '(') {
            ++pos;
            ExprPtr inner = parse_expr();
            if (!consume(')')) fail(ErrorClass::syntax, "expected ')'", pos);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name = parse_ident();
            if (peek() == '(') {
                ++pos;
                std::vector<ExprPtr> args;
                if (peek() != ')') {
                    args.push_back(parse_expr());
                    while (consume(',')) args.push_back(parse_expr());
                }
                if (!consume(')')) fail(ErrorClass::syntax, "expected ')' or ','", pos);
                Fn fn;
                if (!lookup_fn(name, fn))
                    fail(ErrorClass::unknown_function, "unknown function '" + name + "'", at);
                if (static_cast<int>(args.size()) != fn_arity(fn))
                    fail(ErrorClass::arity,
                         "function '" + name + "' expects " + std::to_string(fn_arity(fn)) +
                             " argument(s), got " + std::to_string(args.size()),
                         at);
                return make_call(fn, std::move(args), at);
            }
            return make_parameter(std::move(name), at);
        }
        if (pos >= src.size()) fail(ErrorClass::syntax, "unexpected end of input", pos);
        fail(ErrorClass::syntax, std::string("unexpected character '") + c + "'", pos);
    }

    std::string parse_ident() {
        skip_ws();
        const std::size_t start = pos;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
            ++pos;
        return src.substr(start, pos - start);
    }

    ExprPtr parse_number() {
        skip_ws();
        const std::size_t start = pos;
        while (pos < src.size() && (std::isdigit(static_cast<unsigned char>(src[pos])) ||
                                    src[pos] == '.'))
            ++pos;
        if (pos < src.size() && (src[pos] == 'e' || src[pos] == 'E')) {
            std::size_t mark = pos + 1;
            if (mark < src.size() && (src[mark] == '+' || src[mark] == '-')) ++mark;
            if (mark < src.size() && std::isdigit(static_cast<unsigned char>(src[mark]))) {
                pos = mark;
                while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
                    ++pos;
            }
        }
        double value = 0.0;
        const auto res = std::from_chars(src.data() + start, src.data() + pos, value);
        if (res.ec != std::errc() || res.ptr != src.data() + pos)
            fail(ErrorClass::syntax, "malformed number '" + src.substr(start, pos - start) + "'",
                 start);
        return make_number(value, start);
    }
};

} // namespace

ExprPtr parse(const std::string& source) {
    Parser p(source);
    if (p.at_end()) p.fail(ErrorClass::syntax, "empty expression", 0);
    ExprPtr expr = p.parse_expr();
    if (!p.at_end())
        p.fail(ErrorClass::syntax, "trailing input", p.pos);
    return expr;
}

} // namespace bgqt::weight
