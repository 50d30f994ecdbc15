#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace spdp {

enum class RingMode : std::uint8_t {
    multilinear, // squarefree monomials over <= 64 variables, x*x = x
    standard,    // exponent vectors, plain polynomial ring
};

constexpr int kMaxMultilinearVars = 64;

/// A monomial in either ring mode. Multilinear monomials are variable-index
/// bitsets; standard monomials carry an exponent vector of fixed length
/// (the ambient variable count). Variable indices are 0-based internally.
class Monomial {
public:
    Monomial() : mode_(RingMode::multilinear), degree_(0), bits_(0) {}

    static Monomial one(RingMode mode, int n_vars) {
        Monomial m;
        m.mode_ = mode;
        if (mode == RingMode::standard) m.exps_.assign(static_cast<std::size_t>(n_vars), 0);
        return m;
    }

    static Monomial variable(RingMode mode, int n_vars, int var) {
        check_var(n_vars, var);
        Monomial m = one(mode, n_vars);
        if (mode == RingMode::multilinear) {
            m.bits_ = std::uint64_t(1) << var;
        } else {
            m.exps_[static_cast<std::size_t>(var)] = 1;
        }
        m.degree_ = 1;
        return m;
    }

    static Monomial from_support(std::uint64_t bits) {
        Monomial m;
        m.mode_ = RingMode::multilinear;
        m.bits_ = bits;
        m.degree_ = std::popcount(bits);
        return m;
    }

    static Monomial from_exponents(std::vector<std::uint16_t> exps) {
        Monomial m;
        m.mode_ = RingMode::standard;
        m.degree_ = std::accumulate(exps.begin(), exps.end(), 0u);
        m.exps_ = std::move(exps);
        return m;
    }

    RingMode mode() const { return mode_; }
    int degree() const { return static_cast<int>(degree_); }
    std::uint64_t support_bits() const { return bits_; }
    const std::vector<std::uint16_t>& exponents() const { return exps_; }

    bool is_one() const { return degree_ == 0; }

    int exponent(int var) const {
        if (mode_ == RingMode::multilinear)
            return (bits_ >> var) & 1 ? 1 : 0;
        return var < static_cast<int>(exps_.size()) ? exps_[static_cast<std::size_t>(var)] : 0;
    }

    bool contains_var(int var) const { return exponent(var) > 0; }

    /// Product of monomials. In multilinear mode this is the Boolean-ideal
    /// product (union of supports, x*x = x).
    Monomial times(const Monomial& o) const {
        check_compatible(o);
        Monomial m;
        m.mode_ = mode_;
        if (mode_ == RingMode::multilinear) {
            m.bits_ = bits_ | o.bits_;
            m.degree_ = std::popcount(m.bits_);
        } else {
            m.exps_ = exps_;
            for (std::size_t i = 0; i < m.exps_.size(); ++i) {
                unsigned s = static_cast<unsigned>(m.exps_[i]) + o.exps_[i];
                if (s > 0xffffu) throw std::overflow_error("monomial exponent overflow");
                m.exps_[i] = static_cast<std::uint16_t>(s);
            }
            m.degree_ = degree_ + o.degree_;
        }
        return m;
    }

    /// Variables with positive exponent, ascending.
    std::vector<int> support() const {
        std::vector<int> out;
        if (mode_ == RingMode::multilinear) {
            std::uint64_t b = bits_;
            while (b != 0) {
                int v = std::countr_zero(b);
                out.push_back(v);
                b &= b - 1;
            }
        } else {
            for (std::size_t i = 0; i < exps_.size(); ++i)
                if (exps_[i] > 0) out.push_back(static_cast<int>(i));
        }
        return out;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        if (a.mode_ != b.mode_) return false;
        return a.mode_ == RingMode::multilinear ? a.bits_ == b.bits_ : a.exps_ == b.exps_;
    }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

    /// Canonical (graded-lexicographic) order: degree first, then the sorted
    /// variable sequence compared lexicographically, so that x1x2 < x1x3 <
    /// x1x4 < x2x3. Standard mode compares exponent vectors with larger
    /// exponents on earlier variables ranking first among equal degrees.
    friend bool operator<(const Monomial& a, const Monomial& b) {
        if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
        if (a.mode_ == RingMode::multilinear) {
            std::uint64_t diff = a.bits_ ^ b.bits_;
            if (diff == 0) return false;
            std::uint64_t low = diff & (~diff + 1);
            return (a.bits_ & low) != 0; // owner of the lowest differing variable sorts first
        }
        for (std::size_t i = 0; i < a.exps_.size() && i < b.exps_.size(); ++i) {
            if (a.exps_[i] != b.exps_[i]) return a.exps_[i] > b.exps_[i];
        }
        return false;
    }

    std::size_t hash() const {
        if (mode_ == RingMode::multilinear) return std::hash<std::uint64_t>{}(bits_);
        std::size_t h = 0x9e3779b97f4a7c15ULL;
        for (auto e : exps_) h = h * 1099511628211ULL + e;
        return h;
    }

private:
    static void check_var(int n_vars, int var) {
        if (var < 0 || var >= n_vars)
            throw std::invalid_argument("variable index out of range");
    }
    void check_compatible(const Monomial& o) const {
        if (mode_ != o.mode_)
            throw std::invalid_argument("incompatible ring modes in monomial product");
        if (mode_ == RingMode::standard && exps_.size() != o.exps_.size())
            throw std::invalid_argument("incompatible variable counts in monomial product");
    }

    RingMode mode_;
    std::uint32_t degree_;
    std::uint64_t bits_ = 0;           // multilinear support
    std::vector<std::uint16_t> exps_;  // standard exponents
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

} // namespace spdp
