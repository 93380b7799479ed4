#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qchain {

// Thrown when an input document or argument violates a precondition.
struct invalid_input : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when an internal invariant breaks; indicates a bug, never bad input.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

// Exact rational number, always in lowest terms with positive denominator.
// Every constructor canonicalizes, so the invariant holds for any reachable
// value; arithmetic is exact.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long n, long d) {
        if (d == 0)
            throw invalid_input("rational with zero denominator");
        v_ = mpq_class(n, d);
        v_.canonicalize();
    }
    explicit Rational(const mpz_class& n) : v_(n) {}
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    // Accepts "p" or "p/q" in base 10, optionally negative.
    static Rational parse(std::string_view s) {
        if (s.empty())
            throw invalid_input("empty rational literal");
        for (size_t i = 0; i < s.size(); ++i) {
            char c = s[i];
            bool ok = (c >= '0' && c <= '9') || c == '/' || (c == '-' && (i == 0 || s[i - 1] == '/'));
            if (!ok)
                throw invalid_input("bad rational literal: " + std::string(s));
        }
        mpq_class v;
        if (v.set_str(std::string(s), 10) != 0)
            throw invalid_input("bad rational literal: " + std::string(s));
        if (v.get_den() == 0)
            throw invalid_input("rational with zero denominator: " + std::string(s));
        return Rational(std::move(v));
    }

    // "p/q", or just "p" when q == 1.
    std::string str() const {
        if (v_.get_den() == 1)
            return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }
    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    // Bits of |numerator| plus bits of denominator; the pivot-selection score.
    size_t bit_size() const {
        return mpz_sizeinbase(v_.get_num().get_mpz_t(), 2) + mpz_sizeinbase(v_.get_den().get_mpz_t(), 2);
    }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero())
            throw invalid_input("rational division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational inverse() const {
        if (is_zero())
            throw invalid_input("inverse of zero");
        return Rational(mpq_class(1) / v_);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace qchain
