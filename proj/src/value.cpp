#include "ffl/value.hpp"

#include <cmath>

namespace ffl {

Rat rat_qpow(uint32_t q, long e) {
    Int num = 1;
    mpz_ui_pow_ui(num.get_mpz_t(), q, (unsigned long)(e < 0 ? -e : e));
    if (e >= 0) return Rat(num);
    Rat r(1, num);
    r.canonicalize();
    return r;
}

SPoint SPoint::parse(const std::string& text) {
    if (text == "half" || text == "1/2") return half_point();
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return {false, Rat(std::stol(text))};
        long num = std::stol(text.substr(0, slash));
        long den = std::stol(text.substr(slash + 1));
        if (den == 0) throw usage_error("s has zero denominator");
        Rat s(num, den);
        s.canonicalize();
        if (s == Rat(1, 2)) return half_point();
        return {false, s};
    } catch (const std::logic_error&) {
        throw usage_error("cannot parse s: " + text);
    }
}

std::string SPoint::label() const {
    if (half) return "half";
    return rat_str(s);
}

namespace {
uint32_t exact_sqrt(uint32_t q) {
    uint32_t r = (uint32_t)std::sqrt((double)q);
    while (r * r > q) --r;
    while ((r + 1) * (r + 1) <= q) ++r;
    return r * r == q ? r : 0;
}
}  // namespace

HalfValue HalfValue::half_power(uint32_t q, long n) {
    // When q is a perfect square, q^{-1/2} is rational and must live in the
    // x component so that zero tests and signs stay exact.
    if (uint32_t r = exact_sqrt(q)) return rational(rat_qpow(r, -n), q);
    // q^{-n/2}: even exponents are rational, odd ones carry one factor of
    // q^{-1/2}; for n < 0 use q^{1/2} = q * q^{-1/2}.
    if (n % 2 == 0) return rational(rat_qpow(q, -(n / 2)), q);
    long m = (n - 1) / 2;  // exact: n-1 is even
    // q^{-n/2} = q^{-m} * q^{-1/2} with n = 2m+1
    return HalfValue(0, rat_qpow(q, -m), q);
}

HalfValue HalfValue::q_to_minus_s(uint32_t q, const SPoint& s) {
    if (s.half) return half_power(q, 1);
    Rat e = -s.s;  // want q^e rational
    if (e.get_den() == 1) return rational(rat_qpow(q, e.get_num().get_si()), q);
    // q = p^k: q^e = p^{k*e}; rational exactly when k*e is an integer,
    // and in Q(q^{-1/2}) when 2*k*e is.  Callers needing that generality
    // resolve p,k themselves; here we accept half-integers of q.
    Rat twice = 2 * e;
    if (twice.get_den() == 1) return half_power(q, (long)(-twice.get_num().get_si()));
    throw usage_error("q^-s is not exact for s = " + rat_str(s.s));
}

HalfValue& HalfValue::operator+=(const HalfValue& o) {
    check(o);
    if (q_ == 0) q_ = o.q_;
    x_ += o.x_;
    y_ += o.y_;
    return *this;
}

HalfValue& HalfValue::operator-=(const HalfValue& o) {
    check(o);
    if (q_ == 0) q_ = o.q_;
    x_ -= o.x_;
    y_ -= o.y_;
    return *this;
}

HalfValue& HalfValue::operator*=(const HalfValue& o) {
    check(o);
    uint32_t q = q_ ? q_ : o.q_;
    // (x1 + y1 r)(x2 + y2 r) with r^2 = 1/q
    Rat nx = x_ * o.x_ + y_ * o.y_ / q;
    Rat ny = x_ * o.y_ + y_ * o.x_;
    x_ = std::move(nx);
    y_ = std::move(ny);
    q_ = q;
    return *this;
}

HalfValue HalfValue::inverse() const {
    if (is_zero()) throw domain_error("HalfValue division by zero");
    // conjugate over Q: (x - y r) / (x^2 - y^2/q)
    Rat norm = x_ * x_ - y_ * y_ / q_;
    if (norm == 0) throw integrity_error("HalfValue with zero norm");  // impossible: q not a square
    return HalfValue(x_ / norm, -y_ / norm, q_);
}

HalfValue& HalfValue::operator/=(const HalfValue& o) { return *this *= o.inverse(); }

int HalfValue::sign() const {
    int sx = sgn(x_), sy = sgn(y_);
    if (sy == 0) return sx;
    if (sx == 0) return sy;
    if (sx == sy) return sx;
    // opposite signs: compare |x| with |y| q^{-1/2} via squares
    Rat xs = x_ * x_, ys = y_ * y_ / q_;
    if (xs == ys) return 0;
    return (xs > ys) ? sx : sy;
}

double HalfValue::to_double() const {
    double r = q_ ? 1.0 / std::sqrt((double)q_) : 0.0;
    return x_.get_d() + y_.get_d() * r;
}

std::string HalfValue::str() const {
    if (y_ == 0) return rat_str(x_);
    std::string out = rat_str(x_);
    if (sgn(y_) >= 0)
        out += "+" + rat_str(y_);
    else
        out += "-" + rat_str(-y_);
    out += "*q^-1/2";
    return out;
}

std::string rat_str(const Rat& r) {
    return r.get_str();
}

}  // namespace ffl
