#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

#include "repalg/errors.hpp"

namespace repalg {

// Exact scalar over Q. Invariants: lowest terms, denominator > 0, zero is
// uniquely 0/1. Canonicalization happens on construction; GMP keeps
// arithmetic results canonical.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long value) : q_(value) {}
    Rational(long num, long den) : q_(num, den) {
        if (den == 0) throw domain_error("rational with zero denominator");
        q_.canonicalize();
    }

    // Accepts "p", "-p", "p/q" with optional sign on p.
    static Rational parse(const std::string& text);

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }
    int sign() const { return sgn(q_); }

    Rational operator-() const { return Rational(-q_); }
    Rational operator+(const Rational& o) const { return Rational(q_ + o.q_); }
    Rational operator-(const Rational& o) const { return Rational(q_ - o.q_); }
    Rational operator*(const Rational& o) const { return Rational(q_ * o.q_); }
    Rational operator/(const Rational& o) const {
        if (o.is_zero()) throw domain_error("division by zero");
        return Rational(q_ / o.q_);
    }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    bool operator==(const Rational& o) const { return q_ == o.q_; }
    bool operator!=(const Rational& o) const { return q_ != o.q_; }
    bool operator<(const Rational& o) const { return q_ < o.q_; }
    bool operator<=(const Rational& o) const { return q_ <= o.q_; }
    bool operator>(const Rational& o) const { return q_ > o.q_; }
    bool operator>=(const Rational& o) const { return q_ >= o.q_; }

    Rational abs() const { return sign() < 0 ? -*this : *this; }

    std::string numerator_string() const { return q_.get_num().get_str(); }
    std::string denominator_string() const { return q_.get_den().get_str(); }
    bool is_integer() const { return q_.get_den() == 1; }

    // "p" when the denominator is 1, "p/q" otherwise.
    std::string str() const;

private:
    explicit Rational(mpq_class q) : q_(std::move(q)) {}
    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace repalg
