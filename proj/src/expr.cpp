#include "crf/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace crf {

namespace {

struct Parser {
    const std::string& s;
    const std::map<std::string, double>& vars;
    size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw std::invalid_argument("expression '" + s + "': " + msg + " at position " +
                                    std::to_string(pos));
    }

    double expr() {
        double v = term();
        for (;;) {
            if (eat('+')) v += term();
            else if (eat('-')) v -= term();
            else return v;
        }
    }

    double term() {
        double v = unary();
        for (;;) {
            if (eat('*')) v *= unary();
            else if (eat('/')) {
                double d = unary();
                v /= d;
            } else return v;
        }
    }

    double unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }

    double power() {
        double base = atom();
        if (eat('^')) return std::pow(base, unary());
        return base;
    }

    double atom() {
        skip();
        if (pos >= s.size()) fail("unexpected end");
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            char* end = nullptr;
            double v = std::strtod(s.c_str() + pos, &end);
            if (end == s.c_str() + pos) fail("bad number");
            pos = static_cast<size_t>(end - s.c_str());
            return v;
        }
        if (c == '(') {
            ++pos;
            double v = expr();
            if (!eat(')')) fail("missing ')'");
            return v;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
            std::string name = s.substr(start, pos - start);
            if (eat('(')) {
                double arg = expr();
                if (!eat(')')) fail("missing ')'");
                if (name == "sqrt") return std::sqrt(arg);
                if (name == "abs") return std::fabs(arg);
                if (name == "exp") return std::exp(arg);
                if (name == "log") return std::log(arg);
                fail("unknown function '" + name + "'");
            }
            auto it = vars.find(name);
            if (it == vars.end()) fail("unknown variable '" + name + "'");
            return it->second;
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

}  // namespace

double eval_expr(const std::string& text, const std::map<std::string, double>& vars) {
    Parser p{text, vars};
    double v = p.expr();
    p.skip();
    if (p.pos != text.size()) p.fail("trailing input");
    return v;
}

}  // namespace crf
