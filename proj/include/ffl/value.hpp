#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "ffl/errors.hpp"

namespace ffl {

using Int = mpz_class;
using Rat = mpq_class;

/// q^e for integer e (negative allowed), exact.
Rat rat_qpow(uint32_t q, long e);

/// Evaluation point: either s = 1/2 (the centre) or a rational s with
/// q^{-s} rational.  The identity suites use {1/2, 1, 2}; other rationals
/// are accepted whenever q^{-s} stays rational.
struct SPoint {
    bool half = false;
    Rat s = 0;  // meaningful when !half

    static SPoint half_point() { return {true, Rat(1, 2)}; }
    static SPoint integer(long v) { return {false, Rat(v)}; }
    static SPoint parse(const std::string& text);

    bool is_one() const { return !half && s == 1; }
    std::string label() const;
    double to_double() const { return half ? 0.5 : s.get_d(); }
};

/// Element of the quadratic ring Q(q^{-1/2}), stored as x + y*q^{-1/2} with
/// exact rational components.  Every s = 1/2 quantity in the project lives
/// here; plain rationals embed with y = 0.  Mixing values built over
/// different q is an error.
class HalfValue {
  public:
    HalfValue() : q_(0) {}
    HalfValue(Rat x, Rat y, uint32_t q) : x_(std::move(x)), y_(std::move(y)), q_(q) {}

    static HalfValue rational(Rat x, uint32_t q) { return HalfValue(std::move(x), 0, q); }
    static HalfValue zero(uint32_t q) { return rational(0, q); }
    static HalfValue one(uint32_t q) { return rational(1, q); }
    /// q^{-n/2} for integer n (negative gives q^{|n|/2}).
    static HalfValue half_power(uint32_t q, long n);
    /// q^{-s} for an SPoint (rational s must give a rational power).
    static HalfValue q_to_minus_s(uint32_t q, const SPoint& s);

    const Rat& x() const { return x_; }
    const Rat& y() const { return y_; }
    uint32_t q() const { return q_; }
    bool is_zero() const { return x_ == 0 && y_ == 0; }
    bool is_rational() const { return y_ == 0; }

    HalfValue operator-() const { return HalfValue(-x_, -y_, q_); }
    HalfValue& operator+=(const HalfValue& o);
    HalfValue& operator-=(const HalfValue& o);
    HalfValue& operator*=(const HalfValue& o);
    HalfValue& operator/=(const HalfValue& o);

    friend HalfValue operator+(HalfValue a, const HalfValue& b) { return a += b; }
    friend HalfValue operator-(HalfValue a, const HalfValue& b) { return a -= b; }
    friend HalfValue operator*(HalfValue a, const HalfValue& b) { return a *= b; }
    friend HalfValue operator/(HalfValue a, const HalfValue& b) { return a /= b; }
    friend bool operator==(const HalfValue& a, const HalfValue& b) {
        return a.x_ == b.x_ && a.y_ == b.y_;
    }

    /// Exact sign of the real number x + y*q^{-1/2}.
    int sign() const;
    HalfValue inverse() const;

    double to_double() const;
    /// Canonical text form: "x" when y = 0, else "x+y*q^-1/2" with an
    /// explicit sign between the parts.
    std::string str() const;

  private:
    void check(const HalfValue& o) const {
        if (q_ != o.q_ && !(is_zero() && q_ == 0) && !(o.is_zero() && o.q_ == 0))
            throw usage_error("mixing HalfValue bases");
    }
    Rat x_, y_;
    uint32_t q_;
};

std::string rat_str(const Rat& r);

}  // namespace ffl
