#include "manigraph/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace manigraph {

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;
    double n;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void bad(const std::string& what) {
        throw std::invalid_argument("scale expression '" + s + "': " + what + " at position " +
                                    std::to_string(pos));
    }

    double expr() {
        double v = term();
        for (;;) {
            if (eat('+'))
                v += term();
            else if (eat('-'))
                v -= term();
            else
                return v;
        }
    }

    double term() {
        double v = factor();
        for (;;) {
            if (eat('*'))
                v *= factor();
            else if (eat('/')) {
                const double d = factor();
                if (d == 0.0) bad("division by zero");
                v /= d;
            } else
                return v;
        }
    }

    double factor() {
        const double base = primary();
        if (eat('^')) return std::pow(base, factor());  // right-associative
        return base;
    }

    double primary() {
        skip_ws();
        if (pos >= s.size()) bad("unexpected end");
        const char c = s[pos];
        if (c == '(') {
            ++pos;
            const double v = expr();
            if (!eat(')')) bad("expected ')'");
            return v;
        }
        if (c == '-') {
            ++pos;
            return -primary();
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            char* end = nullptr;
            const double v = std::strtod(s.c_str() + pos, &end);
            pos = static_cast<std::size_t>(end - s.c_str());
            return v;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
            const std::string name = s.substr(start, pos - start);
            if (name == "n") return n;
            if (name == "sqrt" || name == "log" || name == "exp") {
                if (!eat('(')) bad("expected '(' after " + name);
                const double v = expr();
                if (!eat(')')) bad("expected ')'");
                if (name == "sqrt") return std::sqrt(v);
                if (name == "log") return std::log(v);
                return std::exp(v);
            }
            bad("unknown identifier '" + name + "'");
        }
        bad("unexpected character");
    }
};

}  // namespace

double eval_scale_expr(const std::string& expr, double n) {
    Parser p{expr, 0, n};
    const double v = p.expr();
    p.skip_ws();
    if (p.pos != expr.size()) p.bad("trailing input");
    return v;
}

}  // namespace manigraph
