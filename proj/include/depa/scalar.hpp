#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <gmpxx.h>

namespace depa {

/// Error with a stable machine-readable kind plus a human message.
struct Error : std::runtime_error {
    std::string kind;
    Error(std::string k, const std::string& msg)
        : std::runtime_error(k + ": " + msg), kind(std::move(k)) {}
};

/// Exact field element: rational (p == 0) or residue mod a prime p.
/// Mixed-field arithmetic is a logic error and throws.
class Scalar {
public:
    Scalar() : p_(0), q_(0), r_(0) {}

    static Scalar rational(const mpq_class& q) {
        Scalar s;
        s.q_ = q;
        s.q_.canonicalize();
        return s;
    }
    static Scalar rational(long num, long den = 1) {
        return rational(mpq_class(num, den));
    }
    static Scalar mod(long long v, long long p) {
        if (p <= 1) throw Error("BadField", "modulus must be a prime > 1");
        Scalar s;
        s.p_ = p;
        s.r_ = v % p;
        if (s.r_ < 0) s.r_ += p;
        return s;
    }
    /// Zero / one in the field identified by p (0 = rationals).
    static Scalar zero(long long p) { return p ? mod(0, p) : rational(0); }
    static Scalar one(long long p) { return p ? mod(1, p) : rational(1); }
    static Scalar of(long long v, long long p) {
        return p ? mod(v, p) : rational(mpq_class(static_cast<long>(v)));
    }

    long long field() const { return p_; }
    bool is_zero() const { return p_ ? r_ == 0 : q_ == 0; }
    bool is_one() const { return p_ ? r_ == 1 : q_ == 1; }

    const mpq_class& rat() const { return q_; }
    long long residue() const { return r_; }

    Scalar operator+(const Scalar& o) const {
        check(o);
        return p_ ? mod(r_ + o.r_, p_) : rational(q_ + o.q_);
    }
    Scalar operator-(const Scalar& o) const {
        check(o);
        return p_ ? mod(r_ - o.r_, p_) : rational(q_ - o.q_);
    }
    Scalar operator-() const { return p_ ? mod(-r_, p_) : rational(-q_); }
    Scalar operator*(const Scalar& o) const {
        check(o);
        if (p_) return mod(mul_mod(r_, o.r_, p_), p_);
        return rational(q_ * o.q_);
    }
    Scalar inv() const {
        if (is_zero()) throw Error("DivisionByZero", "inverse of zero");
        if (p_ == 0) return rational(1 / q_);
        return mod(inv_mod(r_, p_), p_);
    }
    Scalar operator/(const Scalar& o) const { return *this * o.inv(); }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    bool operator==(const Scalar& o) const {
        check(o);
        return p_ ? r_ == o.r_ : q_ == o.q_;
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    std::string str() const {
        if (p_) return std::to_string(r_);
        return q_.get_str();
    }

private:
    long long p_;
    mpq_class q_;
    long long r_;

    void check(const Scalar& o) const {
        if (p_ != o.p_) throw Error("FieldMismatch", "mixed-field arithmetic");
    }
    static long long mul_mod(long long a, long long b, long long p) {
        return static_cast<long long>(
            static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b) % p);
    }
    static long long inv_mod(long long a, long long p) {
        long long t = 0, nt = 1, r = p, nr = a;
        while (nr != 0) {
            long long q = r / nr;
            long long tmp = t - q * nt;
            t = nt; nt = tmp;
            tmp = r - q * nr;
            r = nr; nr = tmp;
        }
        if (r != 1) throw Error("BadField", "modulus not prime or element not invertible");
        return t < 0 ? t + p : t;
    }
};

/// Parses "p/q" or integer literals into a Scalar in the given field.
Scalar parse_scalar(const std::string& text, long long field);

}  // namespace depa
