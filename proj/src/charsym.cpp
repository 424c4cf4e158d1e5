#include "ffl/charsym.hpp"

#include <algorithm>

namespace ffl {

const char* field_type_name(FieldType t) {
    switch (t) {
        case FieldType::RamifiedImaginary: return "ramified-imaginary";
        case FieldType::Real: return "real";
        case FieldType::InertImaginary: return "inert-imaginary";
    }
    return "?";
}

OddCharSpec OddCharSpec::make(Poly D) {
    const FieldSpec* F = D.F;
    if (F->p() == 2) throw usage_error("odd-characteristic character over an even field");
    if (D.is_zero() || D.deg() < 1) throw usage_error("D must be non-constant");
    uint32_t s = D.sgn();
    if (s != 1 && s != F->generator())
        throw usage_error("sgn(D) must be 1 or the fixed generator");
    if (!is_squarefree(D)) throw usage_error("D must be square-free");
    OddCharSpec spec;
    int d = D.deg();
    spec.type = (d % 2 == 1) ? FieldType::RamifiedImaginary
                : (s == 1)   ? FieldType::Real
                             : FieldType::InertImaginary;
    spec.genus = (d + 1) / 2 - 1;
    spec.l_degree = d - 1;
    spec.D = std::move(D);
    return spec;
}

EvenCharSpec EvenCharSpec::make(Poly P, Poly A, Poly Fpart) {
    const FieldSpec* F = P.F;
    if (F->p() != 2) throw usage_error("even-characteristic character over an odd field");
    if (A.F != F || Fpart.F != F) throw usage_error("mixed field specs");
    if (P.is_zero() || P.deg() < 1 || !P.is_monic() || !is_irreducible(P))
        throw usage_error("P must be a monic prime");
    if (A.is_zero() || A.deg() >= P.deg()) throw usage_error("need 0 != A with deg A < deg P");

    EvenCharSpec spec;
    int r = P.deg();
    if (Fpart.is_zero()) {
        spec.type = FieldType::Real;
        spec.genus = r - 1;
    } else if (Fpart.deg() == 0) {
        if (Fpart.c[0] != F->xi()) throw usage_error("constant part of F must be xi");
        spec.type = FieldType::InertImaginary;
        spec.genus = r - 1;
    } else {
        int d = Fpart.deg();
        if (d % 2 == 0) throw usage_error("polynomial part must have odd degree");
        for (int i = 2; i < d; i += 2)
            if (Fpart.c[i] != 0) throw usage_error("polynomial part may only have odd-degree terms");
        if (Fpart.c[0] != 0 && Fpart.c[0] != F->xi())
            throw usage_error("constant term of F must be 0 or xi");
        int s = (d + 1) / 2;
        spec.type = FieldType::RamifiedImaginary;
        spec.genus = r + s - 1;
    }
    spec.l_degree = 2 * spec.genus + (spec.type == FieldType::RamifiedImaginary ? 0 : 1);
    spec.P = std::move(P);
    spec.A = std::move(A);
    spec.Fpart = std::move(Fpart);
    return spec;
}

const FieldSpec* char_field(const CharSpec& c) {
    if (const auto* o = std::get_if<OddCharSpec>(&c)) return o->D.F;
    return std::get<EvenCharSpec>(c).P.F;
}

FieldType char_type(const CharSpec& c) {
    return std::visit([](const auto& s) { return s.type; }, c);
}
int char_genus(const CharSpec& c) {
    return std::visit([](const auto& s) { return s.genus; }, c);
}
int char_l_degree(const CharSpec& c) {
    return std::visit([](const auto& s) { return s.l_degree; }, c);
}

Classification classify(const CharSpec& c) {
    return {char_type(c), char_genus(c), char_l_degree(c)};
}

std::string char_describe(const CharSpec& c) {
    if (const auto* o = std::get_if<OddCharSpec>(&c)) return "D=" + poly_str(o->D);
    const auto& e = std::get<EvenCharSpec>(c);
    return "P=" + poly_str(e.P) + ";A=" + poly_str(e.A) + ";F=" + poly_str(e.Fpart);
}

// --- odd-characteristic symbols ----------------------------------------------

int residue_symbol_prime(const Poly& D, const Poly& P) {
    const FieldSpec* F = D.F;
    if (F->p() == 2) throw usage_error("Kronecker symbol needs odd characteristic");
    if (P.is_zero() || !P.is_monic() || P.deg() < 1)
        throw usage_error("P must be monic non-constant");
    Poly r = pmod(D, P);
    if (r.is_zero()) return 0;
    uint64_t norm = monic_count(F->q(), P.deg());  // |P| = q^deg P
    Poly e = powmod(r, (norm - 1) / 2, P);
    if (e.is_one()) return 1;
    if (e.deg() == 0 && e.c[0] == F->neg(1)) return -1;
    throw integrity_error("Euler criterion did not land in {1,-1}");
}

int kronecker(const Poly& D, const Poly& f) {
    const FieldSpec* F = D.F;
    if (F->p() == 2) throw usage_error("Kronecker symbol needs odd characteristic");
    if (f.is_zero() || !f.is_monic()) throw usage_error("kronecker needs a monic second argument");
    int out = 1;
    for (const auto& [P, e] : factor(f).factors) {
        int s = residue_symbol_prime(D, P);
        if (s == 0) return 0;
        if (e % 2 && s == -1) out = -out;
    }
    return out;
}

int kronecker_fast(const Poly& D, const Poly& f) {
    const FieldSpec* F = D.F;
    if (F->p() == 2) throw usage_error("Kronecker symbol needs odd characteristic");
    if (f.is_zero() || !f.is_monic()) throw usage_error("kronecker needs a monic second argument");
    bool half_odd = ((F->q() - 1) / 2) % 2 == 1;  // parity of (q-1)/2 drives the flip sign
    int sign = 1;
    Poly a = D, m = f;
    while (true) {
        if (m.deg() == 0) return sign;  // m == 1
        a = pmod(a, m);
        if (a.is_zero()) return 0;
        auto [c, a1] = make_monic(a);
        // (c/m) = chi(c)^{deg m} for the quadratic character chi of GF(q)^x
        if (c != 1 && F->quadratic_character(c) == -1 && m.deg() % 2 == 1) sign = -sign;
        if (a1.deg() == 0) return sign;
        // (a1/m)(m/a1) = (-1)^{((q-1)/2) deg a1 deg m}
        if (half_odd && a1.deg() % 2 == 1 && m.deg() % 2 == 1) sign = -sign;
        a = std::move(m);
        m = std::move(a1);
    }
}

// --- even-characteristic symbols -----------------------------------------------

namespace {

// inverse of a mod m (gcd(a, m) = 1) by extended Euclid
Poly poly_modinv(const Poly& a, const Poly& m) {
    Poly r0 = m, r1 = pmod(a, m);
    Poly t0 = poly_zero(a.F), t1 = poly_one(a.F);
    while (!r1.is_zero()) {
        auto [q, r2] = divmod(r0, r1);
        Poly t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.deg() != 0) throw domain_error("element not invertible mod m");
    return pmod(scale(t0, a.F->inv(r0.c[0])), m);
}

// cancel common factors and make the denominator monic
RatFunc reduce(RatFunc u) {
    if (u.den.is_zero()) throw domain_error("rational function with zero denominator");
    if (u.num.is_zero()) return {poly_zero(u.den.F), poly_one(u.den.F)};
    Poly g = gcd(u.num, u.den);
    if (g.deg() > 0) {
        u.num = divmod(u.num, g).first;
        u.den = divmod(u.den, g).first;
    }
    auto [c, den] = make_monic(u.den);
    if (c != 1) u.num = scale(u.num, u.den.F->inv(c));
    u.den = den;
    return u;
}

}  // namespace

int hasse_symbol(const RatFunc& u_in, const Poly& P) {
    const FieldSpec* F = P.F;
    if (F->p() != 2) throw usage_error("Hasse symbol needs characteristic 2");
    if (P.is_zero() || !P.is_monic() || P.deg() < 1) throw usage_error("P must be a monic prime");
    RatFunc u = reduce(u_in);
    Poly den = pmod(u.den, P);
    if (den.is_zero()) throw domain_error("u is not P-integral");
    Poly r = u.num.is_zero() ? poly_zero(F) : mulmod(pmod(u.num, P), poly_modinv(den, P), P);
    // absolute trace of r from the residue field A/P = GF(q^deg P) down to F_2
    uint32_t m = F->k() * (uint32_t)P.deg();
    Poly acc = r, t = r;
    for (uint32_t i = 1; i < m; ++i) {
        t = mulmod(t, t, P);
        acc = acc + t;
    }
    if (acc.is_zero()) return 0;
    if (acc.deg() == 0 && acc.c[0] == 1) return 1;
    throw integrity_error("absolute trace left F_2");
}

int quad_symbol(const RatFunc& u_in, const Poly& N) {
    const FieldSpec* F = N.F;
    if (F->p() != 2) throw usage_error("quadratic symbol needs characteristic 2");
    if (N.is_zero()) throw domain_error("quadratic symbol with N = 0");
    RatFunc u = reduce(u_in);
    int parity = 0;
    for (const auto& [P, e] : factor(N).factors) {
        if (pmod(u.den, P).is_zero()) return 0;  // N shares a factor with the denominator
        if (e % 2) parity ^= hasse_symbol(u, P);
    }
    return parity ? -1 : 1;
}

RatFunc ratfunc_of(const EvenCharSpec& u) { return {u.A + u.Fpart * u.P, u.P}; }

int chi_even(const EvenCharSpec& u, const Poly& f) {
    if (f.is_zero() || !f.is_monic()) throw usage_error("chi_u needs a monic argument");
    return quad_symbol(ratfunc_of(u), f);
}

// --- unified evaluation ---------------------------------------------------------

int chi_prime(const CharSpec& c, const Poly& P) {
    if (const auto* o = std::get_if<OddCharSpec>(&c)) return kronecker_fast(o->D, P);
    const auto& e = std::get<EvenCharSpec>(c);
    if (P == e.P) return 0;
    return hasse_symbol(ratfunc_of(e), P) ? -1 : 1;
}

int chi_value(const CharSpec& c, const Poly& f) {
    if (f.is_zero() || !f.is_monic()) throw usage_error("chi needs a monic argument");
    int out = 1;
    for (const auto& [P, e] : factor(f).factors) {
        int s = chi_prime(c, P);
        if (s == 0) return 0;
        if (e % 2 && s == -1) out = -out;
    }
    return out;
}

CoeffSums coeff_sums(const CharSpec& c, const DegreeSieve& sieve, int n_max, bool with_B) {
    if (n_max > sieve.max_deg()) throw usage_error("sieve too shallow for requested degree");
    const FieldSpec* F = sieve.field();
    if (F != char_field(c)) throw usage_error("character and sieve field mismatch");

    // one prime-symbol closure, with the even-characteristic numerator built once
    const OddCharSpec* odd = std::get_if<OddCharSpec>(&c);
    RatFunc u;
    const Poly* den = nullptr;
    if (!odd) {
        const auto& e = std::get<EvenCharSpec>(c);
        u = ratfunc_of(e);
        den = &std::get<EvenCharSpec>(c).P;
    }
    auto prime_symbol = [&](const Poly& P) -> int {
        if (odd) return kronecker_fast(odd->D, P);
        if (P == *den) return 0;
        return hasse_symbol(u, P) ? -1 : 1;
    };

    CoeffSums out;
    out.A.assign(n_max + 1, 0);
    if (with_B) out.B.assign(n_max + 1, 0);
    out.A[0] = 1;
    if (with_B) out.B[0] = 1;

    std::vector<std::vector<int8_t>> values(n_max + 1);
    values[0] = {1};
    for (int n = 1; n <= n_max; ++n) {
        uint64_t count = monic_count(F->q(), n);
        values[n].resize(count);
        long long sumA = 0, sumB = 0;
        const auto* d1 = with_B ? sieve.divisor_counts(n).data() : nullptr;
        for (uint64_t j = 0; j < count; ++j) {
            int8_t v;
            if (sieve.is_prime(n, j)) {
                v = (int8_t)prime_symbol(sieve.poly_at(n, j));
            } else {
                const auto& L = sieve.link(n, j);
                v = (int8_t)(values[L.spf_deg][L.spf_idx] * values[n - L.spf_deg][L.quot_idx]);
            }
            values[n][j] = v;
            sumA += v;
            if (d1) sumB += (long long)v * d1[j];
        }
        out.A[n] = sumA;
        if (with_B) out.B[n] = sumB;
    }
    return out;
}

// --- families ---------------------------------------------------------------------

FamilyKind parse_family(const std::string& name) {
    if (name == "P-odd") return FamilyKind::POdd;
    if (name == "P-even") return FamilyKind::PEven;
    if (name == "gammaP") return FamilyKind::GammaPEven;
    if (name == "H") return FamilyKind::EvenH;
    if (name == "F") return FamilyKind::EvenF;
    if (name == "Fprime") return FamilyKind::EvenFPrime;
    throw usage_error("unknown family: " + name + " (expect P-odd, P-even, gammaP, H, F, Fprime)");
}

std::string family_name(FamilyKind k) {
    switch (k) {
        case FamilyKind::POdd: return "P-odd";
        case FamilyKind::PEven: return "P-even";
        case FamilyKind::GammaPEven: return "gammaP";
        case FamilyKind::EvenH: return "H";
        case FamilyKind::EvenF: return "F";
        case FamilyKind::EvenFPrime: return "Fprime";
    }
    return "?";
}

bool family_is_even_char(FamilyKind k) {
    return k == FamilyKind::EvenH || k == FamilyKind::EvenF || k == FamilyKind::EvenFPrime;
}

std::vector<Poly> enumerate_G(const FieldSpec* F, int s) {
    if (F->p() != 2) throw usage_error("G_s needs characteristic 2");
    if (s < 1) throw usage_error("G_s needs s >= 1");
    std::vector<Poly> out;
    uint32_t q = F->q();
    uint64_t mid_count = monic_count(q, s - 1);  // choices for a_1..a_{s-1}
    std::vector<uint32_t> coeffs(2 * s, 0);      // degrees 0 .. 2s-1
    for (uint32_t top = 1; top < q; ++top) {
        for (uint64_t mid = 0; mid < mid_count; ++mid) {
            uint64_t t = mid;
            for (int i = 1; i < s; ++i) {
                coeffs[2 * i - 1] = (uint32_t)(t % q);
                t /= q;
            }
            coeffs[2 * s - 1] = top;
            for (uint32_t alpha = 0; alpha < 2; ++alpha) {
                coeffs[0] = alpha ? F->xi() : 0;
                out.push_back(make_poly(F, coeffs));
            }
        }
    }
    return out;
}

std::vector<CharSpec> enumerate_family(const FieldSpec* F, FamilyKind kind, int g) {
    if (g < 1) throw usage_error("family genus must be >= 1");
    std::vector<CharSpec> out;
    switch (kind) {
        case FamilyKind::POdd:
            for (const Poly& P : primes_of_degree(F, 2 * g + 1)) out.push_back(OddCharSpec::make(P));
            break;
        case FamilyKind::PEven:
            for (const Poly& P : primes_of_degree(F, 2 * g + 2)) out.push_back(OddCharSpec::make(P));
            break;
        case FamilyKind::GammaPEven:
            for (const Poly& P : primes_of_degree(F, 2 * g + 2))
                out.push_back(OddCharSpec::make(scale(P, F->generator())));
            break;
        case FamilyKind::EvenF:
        case FamilyKind::EvenFPrime: {
            Poly fpart = kind == FamilyKind::EvenFPrime ? poly_const(F, F->xi()) : poly_zero(F);
            for (const Poly& P : primes_of_degree(F, g + 1)) {
                uint64_t count = monic_count(F->q(), g + 1);
                for (uint64_t a = 1; a < count; ++a)
                    out.push_back(EvenCharSpec::make(P, poly_from_dense_index(F, g + 1, a), fpart));
            }
            break;
        }
        case FamilyKind::EvenH:
            for (int r = 1; r <= g; ++r) {
                int s = g + 1 - r;
                auto gs = enumerate_G(F, s);
                for (const Poly& P : primes_of_degree(F, r)) {
                    uint64_t count = monic_count(F->q(), r);
                    for (uint64_t a = 1; a < count; ++a)
                        for (const Poly& fp : gs)
                            out.push_back(EvenCharSpec::make(P, poly_from_dense_index(F, r, a), fp));
                }
            }
            break;
    }
    return out;
}

uint64_t family_size(const FieldSpec* F, FamilyKind kind, int g) {
    uint32_t q = F->q();
    auto pi = [&](int n) { return prime_count(q, n).get_ui(); };
    switch (kind) {
        case FamilyKind::POdd: return pi(2 * g + 1);
        case FamilyKind::PEven:
        case FamilyKind::GammaPEven: return pi(2 * g + 2);
        case FamilyKind::EvenF:
        case FamilyKind::EvenFPrime: return pi(g + 1) * (monic_count(q, g + 1) - 1);
        case FamilyKind::EvenH: {
            uint64_t total = 0;
            for (int r = 1; r <= g; ++r)
                total += pi(r) * (monic_count(q, r) - 1) *
                         (2 * (uint64_t)(q - 1) * monic_count(q, g - r));
            return total;
        }
    }
    return 0;
}

// --- vanishing-lemma sums ------------------------------------------------------

long long gamma_sum(const Poly& f, const Poly& P) {
    const FieldSpec* F = f.F;
    long long total = 0;
    uint64_t count = monic_count(F->q(), P.deg());
    for (uint64_t a = 0; a < count; ++a)
        total += quad_symbol({poly_from_dense_index(F, P.deg(), a), P}, f);
    return total;
}

long long t_sum(const Poly& f, const Poly& P) {
    RatFunc zero{poly_zero(f.F), poly_one(f.F)};
    return gamma_sum(f, P) - quad_symbol(zero, f);
}

long long gamma_sum_s(const Poly& f, const Poly& P, int s) {
    const FieldSpec* F = f.F;
    long long total = 0;
    auto gs = enumerate_G(F, s);
    uint64_t count = monic_count(F->q(), P.deg());
    for (uint64_t a = 0; a < count; ++a) {
        Poly A = poly_from_dense_index(F, P.deg(), a);
        for (const Poly& fp : gs) total += quad_symbol({A + fp * P, P}, f);
    }
    return total;
}

}  // namespace ffl
