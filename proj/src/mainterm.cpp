#include "ffl/mainterm.hpp"

#include <cmath>

namespace ffl {
namespace mainterm {

namespace {
Rat s_of(const SPoint& s) { return s.half ? Rat(1, 2) : s.s; }

HalfValue hv(uint32_t q, long v) { return HalfValue::rational(Rat(v), q); }
}  // namespace

HalfValue qpow(uint32_t q, const Rat& e) {
    Rat twice = 2 * e;
    if (twice.get_den() != 1)
        throw usage_error("exponent " + rat_str(e) + " is not a half-integer");
    return HalfValue::half_power(q, (long)-twice.get_num().get_si());
}

HalfValue zetaA(uint32_t q, const Rat& s) {
    if (s == 1) throw domain_error("zeta_A has a pole at s = 1");
    return (HalfValue::one(q) - qpow(q, 1 - s)).inverse();
}

HalfValue eta(uint32_t q, const Rat& s) { return zetaA(q, 2 - s) / zetaA(q, 1 + s); }

HalfValue nu(uint32_t q, const Rat& s) {
    return (HalfValue::one(q) + qpow(q, -s)) / (HalfValue::one(q) + qpow(q, s - 1));
}

HalfValue Ag(uint32_t q, int g, const SPoint& s) {
    if (s.half) return hv(q, g / 2 + 1);
    Rat sv = s_of(s);
    return zetaA(q, 2 * sv) * (HalfValue::one(q) - qpow(q, Rat(g / 2 + 1) * (1 - 2 * sv)));
}

HalfValue Bg(uint32_t q, int g, const SPoint& s) {
    if (s.half) return hv(q, (g - 1) / 2 + 1);
    Rat sv = s_of(s);
    int m = g - (g - 1) / 2;
    return zetaA(q, 2 * sv) * (qpow(q, Rat(m) * (1 - 2 * sv)) - qpow(q, Rat(g + 1) * (1 - 2 * sv)));
}

HalfValue Ch(uint32_t q, int h, const SPoint& s) {
    Rat sv = s_of(s);
    Rat e = -Rat(h + 1) * sv - 1;
    HalfValue pw = qpow(q, Rat(h / 2 + 1));
    return zetaA(q, 2) * qpow(q, e) * (pw - HalfValue::one(q));
}

HalfValue Bconst(uint32_t q, int g) {
    int sign_term = (g + 1) % 2 == 0 ? 1 : 0;  // (1+(-1)^{g+1})/2
    HalfValue t = zetaA(q, 2) * hv(q, 2) - hv(q, sign_term);
    return qpow(q, Rat((g - 1) / 2 + 1)) * t - hv(q, g) - hv(q, 2) * zetaA(q, 2);
}

HalfValue Ag_sum(uint32_t q, int g, const SPoint& s) {
    Rat sv = s_of(s);
    HalfValue total = HalfValue::zero(q);
    for (int l = 0; l <= g / 2; ++l) total += qpow(q, Rat(l) * (1 - 2 * sv));
    return total;
}

HalfValue Bg_sum(uint32_t q, int g, const SPoint& s) {
    Rat sv = s_of(s);
    HalfValue total = HalfValue::zero(q);
    for (int l = 0; l <= (g - 1) / 2; ++l) total += qpow(q, Rat(l) * (2 * sv - 1));
    return qpow(q, Rat(g) * (1 - 2 * sv)) * total;
}

HalfValue Ch_sum(uint32_t q, int h, const SPoint& s) {
    Rat sv = s_of(s);
    HalfValue total = HalfValue::zero(q);
    for (int l = 0; l <= h / 2; ++l) total += qpow(q, Rat(l));
    return qpow(q, -Rat(h + 1) * sv) * total;
}

HalfValue Bconst_sum(uint32_t q, int g) {
    HalfValue total = HalfValue::zero(q);
    for (int l = 0; l <= (g - 1) / 2; ++l) total += hv(q, g - 2 * l) * qpow(q, Rat(l));
    return zetaA(q, 2).inverse() * hv(q, (long)q) * total;
}

HalfValue first_moment_collapse(uint32_t q, int g, const SPoint& s) {
    if (s.half) return hv(q, g + 1);
    Rat sv = s_of(s);
    return zetaA(q, 2 * sv) * (HalfValue::one(q) - qpow(q, Rat(1 + g) * (1 - 2 * sv)));
}

HalfValue Atilde(uint32_t q, int g, const SPoint& s) {
    if (s.half) return hv(q, g / 2 + 1);
    Rat sv = s_of(s);
    if (sv < 1)
        return zetaA(q, 2 * sv) * (HalfValue::one(q) - qpow(q, Rat(g / 2 + 1) * (1 - 2 * sv)));
    return zetaA(q, 2 * sv);
}

HalfValue Btilde(uint32_t q, int g, const SPoint& s) {
    if (s.half) return hv(q, (g - 1) / 2 + 1);
    Rat sv = s_of(s);
    int m = g - (g - 1) / 2;
    return zetaA(q, 2 * sv) * qpow(q, Rat(m) * (1 - 2 * sv));
}

HalfValue Btilde_const(uint32_t q, int g) {
    int sign_term = (g + 1) % 2 == 0 ? 1 : 0;
    HalfValue t = zetaA(q, 2) * hv(q, 2) - hv(q, sign_term);
    return qpow(q, Rat((g - 1) / 2 + 1)) * t;
}

HalfValue I(uint32_t q, int g, const SPoint& s) {
    if (s.half) return hv(q, g + 1);
    Rat sv = s_of(s);
    if (sv < Rat(1, 2)) throw usage_error("main term needs s >= 1/2");
    if (sv < 1) return zetaA(q, 2 * sv) * (HalfValue::one(q) - qpow(q, Rat(1 + g) * (1 - 2 * sv)));
    return zetaA(q, 2 * sv);
}

HalfValue Jp(uint32_t q, int g, const Rat& s) {
    return HalfValue::one(q) - qpow(q, Rat(g / 2 + 1) * (1 - 2 * s)) +
           eta(q, s) * (qpow(q, Rat(g - (g - 1) / 2) * (1 - 2 * s)) - qpow(q, Rat(g + 1) * (1 - 2 * s)));
}

HalfValue Jpp(uint32_t q, int g, const Rat& s) {
    return HalfValue::one(q) - qpow(q, Rat(g / 2 + 1) * (1 - 2 * s)) +
           eta(q, s) * qpow(q, Rat(g - (g - 1) / 2) * (1 - 2 * s));
}

HalfValue Jstar(uint32_t q, int g, const Rat& s) {
    return qpow(q, Rat(g / 2) - Rat(g + 1) * s) + eta(q, s) * qpow(q, Rat((g - 1) / 2) - Rat(g) * s);
}

HalfValue J(uint32_t q, int g, const SPoint& s) {
    if (s.half) return hv(q, g + 1) + zetaA(q, Rat(1, 2));
    Rat sv = s_of(s);
    if (sv < Rat(1, 2)) throw usage_error("main term needs s >= 1/2");
    if (sv == 1) return zetaA(q, 2);  // the dedicated s = 1 statement
    if (sv < 1) return zetaA(q, 2 * sv) * Jp(q, g, sv) - zetaA(q, 2) * Jstar(q, g, sv);
    if (sv < Rat(3, 2)) return zetaA(q, 2 * sv) * Jpp(q, g, sv) - zetaA(q, 2) * Jstar(q, g, sv);
    return zetaA(q, 2 * sv);
}

HalfValue Kp(uint32_t q, int g, const Rat& s) {
    return HalfValue::one(q) - qpow(q, Rat(g / 2 + 1) * (1 - 2 * s)) +
           nu(q, s) * (qpow(q, Rat(g - (g - 1) / 2) * (1 - 2 * s)) - qpow(q, Rat(g + 1) * (1 - 2 * s)));
}

HalfValue Kpp(uint32_t q, int g, const Rat& s) {
    return HalfValue::one(q) - qpow(q, Rat(g / 2 + 1) * (1 - 2 * s)) +
           nu(q, s) * qpow(q, Rat(g - (g - 1) / 2) * (1 - 2 * s));
}

HalfValue Kstar(uint32_t q, int g, const Rat& s) {
    int sg = g % 2 ? -1 : 1;
    return hv(q, sg) * qpow(q, Rat(g / 2) - Rat(g + 1) * s) +
           hv(q, -sg) * nu(q, s) * qpow(q, Rat((g - 1) / 2) - Rat(g) * s);
}

HalfValue K(uint32_t q, int g, const SPoint& s) {
    if (s.half) return hv(q, g + 1) + zetaA(q, 0) / zetaA(q, Rat(1, 2));
    Rat sv = s_of(s);
    if (sv < Rat(1, 2)) throw usage_error("main term needs s >= 1/2");
    if (sv < 1) return zetaA(q, 2 * sv) * Kp(q, g, sv) + zetaA(q, 2) * Kstar(q, g, sv);
    if (sv < Rat(3, 2)) return zetaA(q, 2 * sv) * Kpp(q, g, sv) + zetaA(q, 2) * Kstar(q, g, sv);
    return zetaA(q, 2 * sv);
}

HalfValue Itilde(uint32_t q, int g, const SPoint& s) {
    if (s.half) return hv(q, g + 1);
    Rat sv = s_of(s);
    if (sv < Rat(1, 2)) throw usage_error("main term needs s >= 1/2");
    return zetaA(q, 2 * sv);
}

HalfValue Jtilde(uint32_t q, int g, const SPoint& s) {
    if (s.half) return hv(q, g + 1) + zetaA(q, Rat(1, 2));
    Rat sv = s_of(s);
    if (sv < Rat(1, 2)) throw usage_error("main term needs s >= 1/2");
    if (sv == 1) return zetaA(q, 2);
    if (sv < 1) return zetaA(q, 2 * sv) * Jp(q, g, sv) - zetaA(q, 2) * Jstar(q, g, sv);
    return zetaA(q, 2 * sv);
}

HalfValue Ktilde(uint32_t q, int g, const SPoint& s) {
    if (s.half) return hv(q, g + 1) + zetaA(q, 0) / zetaA(q, Rat(1, 2));
    Rat sv = s_of(s);
    if (sv < Rat(1, 2)) throw usage_error("main term needs s >= 1/2");
    // printed with a minus sign on the K* part, unlike the odd case
    if (sv < 1) return zetaA(q, 2 * sv) * Kp(q, g, sv) - zetaA(q, 2) * Kstar(q, g, sv);
    return zetaA(q, 2 * sv);
}

// --- floating-point variants for report-only evaluation off the exact grid ---

namespace {
double zetaA_d(uint32_t q, double s) { return 1.0 / (1.0 - std::pow((double)q, 1.0 - s)); }
double eta_d(uint32_t q, double s) { return zetaA_d(q, 2 - s) / zetaA_d(q, 1 + s); }
double nu_d(uint32_t q, double s) {
    return (1 + std::pow((double)q, -s)) / (1 + std::pow((double)q, s - 1));
}
double qp(uint32_t q, double e) { return std::pow((double)q, e); }
}  // namespace

double I_approx(uint32_t q, int g, double s) {
    if (s == 0.5) return g + 1;
    if (s < 1) return zetaA_d(q, 2 * s) * (1 - qp(q, (1 + g) * (1 - 2 * s)));
    return zetaA_d(q, 2 * s);
}

double J_approx(uint32_t q, int g, double s) {
    if (s == 0.5) return g + 1 + zetaA_d(q, 0.5);
    double jp_or_jpp, jstar;
    jstar = qp(q, g / 2 - (g + 1.0) * s) + eta_d(q, s) * qp(q, (g - 1) / 2 - (double)g * s);
    if (s < 1)
        jp_or_jpp = 1 - qp(q, (g / 2 + 1) * (1 - 2 * s)) +
                    eta_d(q, s) * (qp(q, (g - (g - 1) / 2) * (1 - 2 * s)) - qp(q, (g + 1) * (1 - 2 * s)));
    else if (s < 1.5)
        jp_or_jpp =
            1 - qp(q, (g / 2 + 1) * (1 - 2 * s)) + eta_d(q, s) * qp(q, (g - (g - 1) / 2) * (1 - 2 * s));
    else
        return zetaA_d(q, 2 * s);
    return zetaA_d(q, 2 * s) * jp_or_jpp - zetaA_d(q, 2) * jstar;
}

double K_approx(uint32_t q, int g, double s) {
    if (s == 0.5) return g + 1 + zetaA_d(q, 0) / zetaA_d(q, 0.5);
    if (s >= 1.5) return zetaA_d(q, 2 * s);
    int sg = g % 2 ? -1 : 1;
    double kstar = sg * qp(q, g / 2 - (g + 1.0) * s) - sg * nu_d(q, s) * qp(q, (g - 1) / 2 - (double)g * s);
    double kp;
    if (s < 1)
        kp = 1 - qp(q, (g / 2 + 1) * (1 - 2 * s)) +
             nu_d(q, s) * (qp(q, (g - (g - 1) / 2) * (1 - 2 * s)) - qp(q, (g + 1) * (1 - 2 * s)));
    else
        kp = 1 - qp(q, (g / 2 + 1) * (1 - 2 * s)) + nu_d(q, s) * qp(q, (g - (g - 1) / 2) * (1 - 2 * s));
    return zetaA_d(q, 2 * s) * kp + zetaA_d(q, 2) * kstar;
}

double Itilde_approx(uint32_t q, int g, double s) {
    return s == 0.5 ? g + 1 : zetaA_d(q, 2 * s);
}

double Jtilde_approx(uint32_t q, int g, double s) {
    if (s == 0.5) return g + 1 + zetaA_d(q, 0.5);
    if (s >= 1) return zetaA_d(q, 2 * s);
    return J_approx(q, g, s);
}

double Ktilde_approx(uint32_t q, int g, double s) {
    if (s == 0.5) return g + 1 + zetaA_d(q, 0) / zetaA_d(q, 0.5);
    if (s >= 1) return zetaA_d(q, 2 * s);
    int sg = g % 2 ? -1 : 1;
    double kstar = sg * qp(q, g / 2 - (g + 1.0) * s) - sg * nu_d(q, s) * qp(q, (g - 1) / 2 - (double)g * s);
    double kp = 1 - qp(q, (g / 2 + 1) * (1 - 2 * s)) +
                nu_d(q, s) * (qp(q, (g - (g - 1) / 2) * (1 - 2 * s)) - qp(q, (g + 1) * (1 - 2 * s)));
    return zetaA_d(q, 2 * s) * kp - zetaA_d(q, 2) * kstar;
}

}  // namespace mainterm
}  // namespace ffl
