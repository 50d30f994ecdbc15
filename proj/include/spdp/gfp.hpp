#pragma once

#include "spdp/bigint.hpp"

#include <cstdint>
#include <iosfwd>
#include <ostream>
#include <stdexcept>

namespace spdp {

/// Largest prime below 2^62; fits comfortably in 64-bit arithmetic with
/// 128-bit intermediates for products.
inline constexpr std::uint64_t kDefaultPrime = 4611686018427387847ULL; // 2^62 - 57

/// Element of GF(p) for a process-wide prime modulus. The modulus defaults to
/// a fixed 62-bit prime and may be reconfigured once at startup, before any
/// arithmetic runs.
class Gfp {
public:
    Gfp() : v_(0) {}
    explicit Gfp(std::uint64_t v) : v_(v % modulus_) {}
    Gfp(int v) { // NOLINT: implicit from small literals mirrors Rational(int)
        long long x = v % static_cast<long long>(modulus_);
        if (x < 0) x += static_cast<long long>(modulus_);
        v_ = static_cast<std::uint64_t>(x);
    }

    static std::uint64_t modulus() { return modulus_; }

    /// Reconfigure the field. Callers are responsible for doing this before
    /// any Gfp values exist; values created under a different modulus are
    /// meaningless afterwards.
    static void set_modulus(std::uint64_t p) {
        if (p < 2) throw std::invalid_argument("GF(p) modulus must be >= 2");
        modulus_ = p;
    }

    std::uint64_t value() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    friend bool operator==(Gfp a, Gfp b) { return a.v_ == b.v_; }
    friend bool operator!=(Gfp a, Gfp b) { return a.v_ != b.v_; }

    Gfp operator-() const { return from_raw(v_ == 0 ? 0 : modulus_ - v_); }

    Gfp& operator+=(Gfp o) {
        v_ += o.v_;
        if (v_ >= modulus_) v_ -= modulus_;
        return *this;
    }
    Gfp& operator-=(Gfp o) {
        v_ = (v_ >= o.v_) ? v_ - o.v_ : v_ + modulus_ - o.v_;
        return *this;
    }
    Gfp& operator*=(Gfp o) {
        v_ = mulmod(v_, o.v_);
        return *this;
    }
    Gfp& operator/=(Gfp o) { return *this *= o.inverse(); }

    friend Gfp operator+(Gfp a, Gfp b) { return a += b; }
    friend Gfp operator-(Gfp a, Gfp b) { return a -= b; }
    friend Gfp operator*(Gfp a, Gfp b) { return a *= b; }
    friend Gfp operator/(Gfp a, Gfp b) { return a /= b; }

    Gfp inverse() const {
        if (v_ == 0) throw std::domain_error("GF(p) inverse of zero");
        return pow(modulus_ - 2); // Fermat; modulus is prime
    }

    Gfp pow(std::uint64_t e) const {
        std::uint64_t base = v_, r = 1;
        while (e > 0) {
            if (e & 1) r = mulmod(r, base);
            base = mulmod(base, base);
            e >>= 1;
        }
        return from_raw(r);
    }

    /// Reduce an exact rational mod p: num * den^{-1}. The denominator is
    /// coprime to p for every rational this toolkit produces (p is a 62-bit
    /// prime; denominators stay far smaller in practice), but we still check.
    static Gfp from_rational(const Rational& r) {
        Gfp num = from_integer(numerator(r));
        Gfp den = from_integer(denominator(r));
        if (den.is_zero()) throw std::domain_error("rational denominator divisible by p");
        return num / den;
    }

    static Gfp from_integer(const Integer& n) {
        Integer m = n % Integer(modulus_);
        if (m < 0) m += Integer(modulus_);
        return from_raw(static_cast<std::uint64_t>(m));
    }

    friend std::ostream& operator<<(std::ostream& os, Gfp g) { return os << g.v_; }

private:
    static Gfp from_raw(std::uint64_t v) {
        Gfp g;
        g.v_ = v;
        return g;
    }

    static std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % modulus_);
    }

    static inline std::uint64_t modulus_ = kDefaultPrime;

    std::uint64_t v_;
};

} // namespace spdp
