#include "spdp/format.hpp"

#include "spdp/errors.hpp"

#include <cctype>
#include <sstream>

namespace spdp {
namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    long long integer() {
        skip_ws();
        std::size_t start = i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        std::size_t digits = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == digits) throw ParseError("expected integer at position " + std::to_string(start));
        try {
            return std::stoll(s.substr(start, i - start));
        } catch (const std::exception&) {
            throw ParseError("integer out of range at position " + std::to_string(start));
        }
    }
};

struct RawTerm {
    Rational coeff;
    std::vector<std::pair<int, int>> factors; // (1-based var, exponent)
};

RawTerm parse_term(Cursor& cur) {
    RawTerm t;
    t.coeff = 1;
    bool saw_factor = false, saw_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
        t.coeff = Rational(cur.integer());
        saw_coeff = true;
        if (!cur.accept('*')) return t; // bare constant
    }
    for (;;) {
        if (cur.peek() != 'x')
            throw ParseError("expected variable at position " + std::to_string(cur.i));
        ++cur.i;
        long long var = cur.integer();
        if (var < 1) throw ParseError("variable indices start at 1");
        int exp = 1;
        if (cur.accept('^')) {
            long long e = cur.integer();
            if (e < 0) throw ParseError("negative exponents are not supported");
            if (e > 0xffff) throw ParseError("exponent too large");
            exp = static_cast<int>(e);
        }
        t.factors.emplace_back(static_cast<int>(var), exp);
        saw_factor = true;
        if (!cur.accept('*')) break;
    }
    (void)saw_coeff;
    (void)saw_factor;
    return t;
}

} // namespace

Polynomial parse_polynomial(const std::string& text, std::optional<int> n_vars,
                            std::optional<RingMode> mode) {
    Cursor cur{text};
    if (cur.done()) throw ParseError("empty polynomial text");

    std::vector<RawTerm> terms;
    bool negate = cur.accept('-');
    for (;;) {
        RawTerm t = parse_term(cur);
        if (negate) t.coeff = -t.coeff;
        terms.push_back(std::move(t));
        if (cur.done()) break;
        if (cur.accept('+')) negate = false;
        else if (cur.accept('-')) negate = true;
        else throw ParseError("unexpected character at position " + std::to_string(cur.i));
    }

    int max_var = 0, max_exp = 0;
    for (const auto& t : terms)
        for (auto [v, e] : t.factors) {
            max_var = std::max(max_var, v);
            max_exp = std::max(max_exp, e);
        }

    int n = n_vars.value_or(max_var);
    if (max_var > n) throw ParseError("variable index exceeds declared variable count");
    RingMode m = mode.value_or(max_exp >= 2 ? RingMode::standard : RingMode::multilinear);
    if (m == RingMode::multilinear && max_exp >= 2)
        throw ParseError("exponents >= 2 require standard-ring mode");
    if (m == RingMode::multilinear && n > kMaxMultilinearVars)
        throw ParseError("multilinear mode supports at most 64 variables");

    Polynomial p(n, m);
    for (const auto& t : terms) {
        Monomial mono = Monomial::one(m, n);
        for (auto [v, e] : t.factors)
            for (int i = 0; i < e; ++i) mono = mono.times(Monomial::variable(m, n, v - 1));
        p.add_term(mono, t.coeff);
    }
    return p;
}

std::string print_monomial(const Monomial& m) {
    if (m.is_one()) return "1";
    std::ostringstream os;
    bool first = true;
    for (int v : m.support()) {
        if (!first) os << "*";
        os << "x" << (v + 1);
        if (m.exponent(v) > 1) os << "^" << m.exponent(v);
        first = false;
    }
    return os.str();
}

std::string print_polynomial(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        Rational a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        if (m.is_one()) {
            os << a;
        } else {
            if (a != 1) os << a << "*";
            os << print_monomial(m);
        }
        first = false;
    }
    return os.str();
}

} // namespace spdp
