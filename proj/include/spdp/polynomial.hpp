#pragma once

#include "spdp/bigint.hpp"
#include "spdp/gfp.hpp"
#include "spdp/monomial.hpp"

#include <map>
#include <span>
#include <stdexcept>
#include <vector>

namespace spdp {

/// Sparse polynomial over an exact field. Terms are kept in canonical
/// monomial order with no stored zero coefficients; values are immutable in
/// spirit: every operation returns a fresh polynomial.
template <typename F>
class BasicPolynomial {
public:
    using Terms = std::map<Monomial, F>;

    BasicPolynomial() : n_vars_(0), mode_(RingMode::multilinear) {}

    BasicPolynomial(int n_vars, RingMode mode) : n_vars_(n_vars), mode_(mode) {
        if (n_vars < 0) throw std::invalid_argument("negative variable count");
        if (mode == RingMode::multilinear && n_vars > kMaxMultilinearVars)
            throw std::invalid_argument("multilinear mode supports at most 64 variables");
    }

    static BasicPolynomial zero(int n_vars, RingMode mode) { return BasicPolynomial(n_vars, mode); }

    static BasicPolynomial constant(int n_vars, RingMode mode, const F& c) {
        BasicPolynomial p(n_vars, mode);
        p.add_term(Monomial::one(mode, n_vars), c);
        return p;
    }

    static BasicPolynomial variable(int n_vars, RingMode mode, int var) {
        BasicPolynomial p(n_vars, mode);
        p.add_term(Monomial::variable(mode, n_vars, var), F(1));
        return p;
    }

    int n_vars() const { return n_vars_; }
    RingMode mode() const { return mode_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    int degree() const {
        return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
    }

    F coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? F(0) : it->second;
    }

    /// Accumulate c into the coefficient of m, dropping the term if it
    /// cancels to zero.
    void add_term(const Monomial& m, const F& c) {
        if (c == F(0)) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == F(0)) terms_.erase(it);
        }
    }

    BasicPolynomial& operator+=(const BasicPolynomial& o) {
        check_compatible(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    BasicPolynomial& operator-=(const BasicPolynomial& o) {
        check_compatible(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend BasicPolynomial operator+(BasicPolynomial a, const BasicPolynomial& b) { return a += b; }
    friend BasicPolynomial operator-(BasicPolynomial a, const BasicPolynomial& b) { return a -= b; }

    BasicPolynomial scaled(const F& c) const {
        BasicPolynomial out(n_vars_, mode_);
        if (c == F(0)) return out;
        for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
        return out;
    }

    friend bool operator==(const BasicPolynomial& a, const BasicPolynomial& b) {
        return a.n_vars_ == b.n_vars_ && a.mode_ == b.mode_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const BasicPolynomial& a, const BasicPolynomial& b) { return !(a == b); }

    /// Formal partial derivative with respect to one variable.
    BasicPolynomial derive_var(int var) const {
        if (var < 0 || var >= n_vars_) throw std::invalid_argument("invalid variable index");
        BasicPolynomial out(n_vars_, mode_);
        for (const auto& [m, c] : terms_) {
            if (mode_ == RingMode::multilinear) {
                if (!m.contains_var(var)) continue;
                out.add_term(Monomial::from_support(m.support_bits() & ~(std::uint64_t(1) << var)), c);
            } else {
                int e = m.exponent(var);
                if (e == 0) continue;
                auto exps = m.exponents();
                exps[static_cast<std::size_t>(var)] = static_cast<std::uint16_t>(e - 1);
                out.add_term(Monomial::from_exponents(std::move(exps)), c * F(e));
            }
        }
        return out;
    }

    /// Iterated derivative over a set of variable indices. Repeating a
    /// variable in multilinear mode annihilates the polynomial, matching the
    /// set-derivative semantics.
    BasicPolynomial derive(std::span<const int> vars) const {
        BasicPolynomial out = *this;
        for (int v : vars) out = out.derive_var(v);
        return out;
    }
    BasicPolynomial derive(const std::vector<int>& vars) const {
        return derive(std::span<const int>(vars));
    }

    /// Multi-index derivative d^alpha, standard-ring mode. The multi-index is
    /// carried as a standard monomial.
    BasicPolynomial derive_multi(const Monomial& alpha) const {
        if (mode_ != RingMode::standard || alpha.mode() != RingMode::standard)
            throw std::invalid_argument("multi-index derivatives require standard-ring mode");
        BasicPolynomial out = *this;
        for (int v = 0; v < n_vars_; ++v)
            for (int i = 0; i < alpha.exponent(v); ++i) out = out.derive_var(v);
        return out;
    }

    /// Shift by a monomial. Multilinear mode reduces modulo the Boolean
    /// ideal, merging colliding terms.
    BasicPolynomial times_monomial(const Monomial& m) const {
        if (m.mode() != mode_)
            throw std::invalid_argument("incompatible ring mode in monomial shift");
        BasicPolynomial out(n_vars_, mode_);
        for (const auto& [t, c] : terms_) out.add_term(t.times(m), c);
        return out;
    }

    F evaluate(std::span<const F> point) const {
        if (static_cast<int>(point.size()) != n_vars_)
            throw std::invalid_argument("evaluation point length mismatch");
        F total(0);
        for (const auto& [m, c] : terms_) {
            F v = c;
            for (int var : m.support()) {
                int e = m.exponent(var);
                for (int i = 0; i < e; ++i) v *= point[static_cast<std::size_t>(var)];
            }
            total += v;
        }
        return total;
    }
    F evaluate(const std::vector<F>& point) const { return evaluate(std::span<const F>(point)); }

    /// Apply a variable permutation: variable v of the result is variable
    /// perm[v] of the input, i.e. (p . perm)(x) = p(x_perm).
    BasicPolynomial permuted(const std::vector<int>& perm) const {
        if (static_cast<int>(perm.size()) != n_vars_)
            throw std::invalid_argument("permutation length mismatch");
        BasicPolynomial out(n_vars_, mode_);
        for (const auto& [m, c] : terms_) {
            Monomial img = Monomial::one(mode_, n_vars_);
            for (int v : m.support()) {
                for (int i = 0; i < m.exponent(v); ++i)
                    img = img.times(Monomial::variable(mode_, n_vars_, perm[static_cast<std::size_t>(v)]));
            }
            out.add_term(img, c);
        }
        return out;
    }

private:
    void check_compatible(const BasicPolynomial& o) const {
        if (n_vars_ != o.n_vars_ || mode_ != o.mode_)
            throw std::invalid_argument("incompatible polynomials");
    }

    int n_vars_;
    RingMode mode_;
    Terms terms_;
};

using Polynomial = BasicPolynomial<Rational>;
using GfPolynomial = BasicPolynomial<Gfp>;

/// Reduce modulo the Boolean ideal (x_i^2 - x_i): every positive exponent
/// becomes 1 and collapsing monomials merge. The result agrees with the
/// input on {0,1}^n.
template <typename F>
BasicPolynomial<F> reduce_boolean(const BasicPolynomial<F>& p) {
    if (p.n_vars() > kMaxMultilinearVars)
        throw std::invalid_argument("multilinear mode supports at most 64 variables");
    BasicPolynomial<F> out(p.n_vars(), RingMode::multilinear);
    for (const auto& [m, c] : p.terms()) {
        std::uint64_t bits = 0;
        for (int v : m.support()) bits |= std::uint64_t(1) << v;
        out.add_term(Monomial::from_support(bits), c);
    }
    return out;
}

/// Reinterpret a multilinear monomial/polynomial in the given mode (used to
/// move squarefree data between modes without changing meaning).
inline Monomial convert_monomial(const Monomial& m, RingMode target, int n_vars) {
    if (m.mode() == target) return m;
    Monomial out = Monomial::one(target, n_vars);
    for (int v : m.support())
        for (int i = 0; i < m.exponent(v); ++i) out = out.times(Monomial::variable(target, n_vars, v));
    return out;
}

inline GfPolynomial to_gfp(const Polynomial& p) {
    GfPolynomial out(p.n_vars(), p.mode());
    for (const auto& [m, c] : p.terms()) out.add_term(m, Gfp::from_rational(c));
    return out;
}

} // namespace spdp
