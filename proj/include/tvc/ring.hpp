#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace tvc {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

enum class RingKind { Integers, IntegersMod, PrimeField, Rationals };

// Trial division; moduli in this library are tiny.
inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

struct ExtendedGcd {
    Int g, s, t;  // g = gcd(a,b) = s*a + t*b, g >= 0
};

inline ExtendedGcd extended_gcd(const Int& a, const Int& b) {
    if (a == 0 && b == 0) return {0, 0, 0};
    Int old_r = a, r = b;
    Int old_s = 1, s = 0;
    Int old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp;
        tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_s - q * s; old_s = s; s = tmp;
        tmp = old_t - q * t; old_t = t; t = tmp;
    }
    if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
    return {old_r, old_s, old_t};
}

/// Coefficient domain descriptor: Z, Z/n, GF(p) or Q.
/// GF(p) shares the residue arithmetic of Z/p but is flagged as a field.
class Ring {
public:
    static Ring integers() { return Ring(RingKind::Integers, 0); }

    static Ring integers_mod(Int n) {
        if (n < 2) throw std::invalid_argument("integers_mod: modulus must be >= 2");
        return Ring(RingKind::IntegersMod, std::move(n));
    }

    static Ring prime_field(Int p) {
        if (!is_prime(p)) throw std::invalid_argument("prime_field: modulus must be prime");
        return Ring(RingKind::PrimeField, std::move(p));
    }

    static Ring rationals() { return Ring(RingKind::Rationals, 0); }

    RingKind kind() const { return kind_; }
    const Int& modulus() const { return modulus_; }

    bool is_field() const { return kind_ == RingKind::PrimeField || kind_ == RingKind::Rationals; }
    bool is_modular() const { return kind_ == RingKind::IntegersMod || kind_ == RingKind::PrimeField; }

    std::string name() const {
        switch (kind_) {
            case RingKind::Integers: return "Z";
            case RingKind::IntegersMod: return "Z/" + modulus_.str();
            case RingKind::PrimeField: return "GF(" + modulus_.str() + ")";
            case RingKind::Rationals: return "Q";
        }
        return "?";
    }

    friend bool operator==(const Ring&, const Ring&) = default;

private:
    Ring(RingKind k, Int m) : kind_(k), modulus_(std::move(m)) {}

    RingKind kind_;
    Int modulus_;
};

inline void require_same_ring(const Ring& a, const Ring& b) {
    if (!(a == b))
        throw std::invalid_argument("ring descriptor mismatch: " + a.name() + " vs " + b.name());
}

/// A ring element in canonical form: plain integer for Z, residue in [0,n)
/// for Z/n and GF(p), reduced fraction with positive denominator for Q.
/// Equality is structural.
class RingElem {
public:
    RingElem(Ring ring, Int v) : ring_(std::move(ring)), value_(std::move(v)) { canonicalize(); }
    RingElem(Ring ring, Rat v) : ring_(std::move(ring)), value_(std::move(v)) { canonicalize(); }
    template <std::integral T>
    RingElem(Ring ring, T v) : RingElem(std::move(ring), Int(v)) {}

    static RingElem zero(const Ring& r) { return RingElem(r, Int(0)); }
    static RingElem one(const Ring& r) { return RingElem(r, Int(1)); }

    const Ring& ring() const { return ring_; }
    const Rat& value() const { return value_; }

    // Integer value; only meaningful outside Q (denominator is always 1 there).
    Int int_value() const {
        if (denominator(value_) != 1)
            throw std::domain_error("int_value: element is a proper fraction");
        return numerator(value_);
    }

    bool is_zero() const { return value_ == 0; }
    bool is_one() const { return value_ == 1; }

    bool is_unit() const {
        switch (ring_.kind()) {
            case RingKind::Integers: return value_ == 1 || value_ == -1;
            case RingKind::IntegersMod:
            case RingKind::PrimeField:
                return gcd(numerator(value_), ring_.modulus()) == 1;
            case RingKind::Rationals: return value_ != 0;
        }
        return false;
    }

    std::optional<RingElem> try_inverse() const {
        switch (ring_.kind()) {
            case RingKind::Integers:
                if (value_ == 1 || value_ == -1) return *this;
                return std::nullopt;
            case RingKind::IntegersMod:
            case RingKind::PrimeField: {
                auto [g, s, t] = extended_gcd(numerator(value_), ring_.modulus());
                if (g != 1) return std::nullopt;
                return RingElem(ring_, s);
            }
            case RingKind::Rationals:
                if (value_ == 0) return std::nullopt;
                return RingElem(ring_, Rat(1) / value_);
        }
        return std::nullopt;
    }

    friend RingElem operator+(const RingElem& a, const RingElem& b) {
        require_same_ring(a.ring_, b.ring_);
        return RingElem(a.ring_, a.value_ + b.value_);
    }

    friend RingElem operator-(const RingElem& a, const RingElem& b) {
        require_same_ring(a.ring_, b.ring_);
        return RingElem(a.ring_, a.value_ - b.value_);
    }

    friend RingElem operator*(const RingElem& a, const RingElem& b) {
        require_same_ring(a.ring_, b.ring_);
        return RingElem(a.ring_, a.value_ * b.value_);
    }

    RingElem operator-() const { return RingElem(ring_, -value_); }

    friend bool operator==(const RingElem&, const RingElem&) = default;

    std::string str() const {
        if (denominator(value_) == 1) return numerator(value_).str();
        return numerator(value_).str() + "/" + denominator(value_).str();
    }

private:
    void canonicalize() {
        switch (ring_.kind()) {
            case RingKind::Integers:
                if (denominator(value_) != 1)
                    throw std::domain_error("non-integral value in Z");
                break;
            case RingKind::IntegersMod:
            case RingKind::PrimeField: {
                if (denominator(value_) != 1)
                    throw std::domain_error("non-integral value in modular ring");
                Int v = numerator(value_) % ring_.modulus();
                if (v < 0) v += ring_.modulus();
                value_ = v;
                break;
            }
            case RingKind::Rationals:
                break;  // cpp_rational keeps fractions reduced, denominator > 0
        }
    }

    Ring ring_;
    Rat value_;
};

}  // namespace tvc
