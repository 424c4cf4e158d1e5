#include "ffl/lfunc.hpp"

#include <json.hpp>

#include "ffl/mainterm.hpp"

namespace ffl {

namespace {

uint64_t enumeration_cost(uint32_t q, int n_max) {
    uint64_t total = 0;
    for (int n = 0; n <= n_max; ++n) {
        uint64_t c = monic_count(q, n);
        if (total > UINT64_MAX - c) return UINT64_MAX;
        total += c;
    }
    return total;
}

std::vector<long long> completed_from_A(FieldType type, int genus,
                                        const std::vector<long long>& A) {
    std::vector<long long> astar((size_t)2 * genus + 1, 0);
    for (int n = 0; n <= 2 * genus; ++n) {
        switch (type) {
            case FieldType::RamifiedImaginary:
                astar[n] = A[n];
                break;
            case FieldType::Real: {
                long long s = 0;
                for (int i = 0; i <= n; ++i) s += A[i];
                astar[n] = s;
                break;
            }
            case FieldType::InertImaginary: {
                long long s = 0;
                for (int i = 0; i <= n; ++i) s += ((n - i) % 2 ? -A[i] : A[i]);
                astar[n] = s;
                break;
            }
        }
    }
    return astar;
}

}  // namespace

LData compute_ldata(const CharSpec& spec, bool with_B, const Budget& budget,
                    const DegreeSieve& sieve) {
    LData L;
    L.spec = spec;
    auto cls = classify(spec);
    L.type = cls.type;
    L.genus = cls.genus;
    L.l_degree = cls.l_degree;

    const FieldSpec* F = char_field(spec);
    int n_max = L.l_degree + 2;
    if (with_B) n_max = std::max(n_max, 2 * L.l_degree);
    uint64_t cost = enumeration_cost(F->q(), n_max);
    budget.charge(cost, "compute_ldata");
    if (sieve.max_deg() < n_max) throw usage_error("sieve too shallow for this character");

    CoeffSums sums = coeff_sums(spec, sieve, n_max, with_B);
    L.A.assign(sums.A.begin(), sums.A.begin() + L.l_degree + 1);
    if (with_B) L.B.assign(sums.B.begin(), sums.B.begin() + 2 * L.l_degree + 1);

    if (L.A[0] != 1) throw integrity_error("A(0) != 1");
    for (int m = L.l_degree + 1; m <= L.l_degree + 2; ++m)
        if (sums.A[m] != 0)
            throw integrity_error("coefficient sum beyond the polynomial degree is nonzero at n=" +
                                  std::to_string(m));

    L.Astar = completed_from_A(L.type, L.genus, L.A);

    auto fe = check_functional_equation(L);
    if (!fe.pass)
        throw integrity_error("functional equation fails at coefficient " +
                              std::to_string(fe.first_violation) + " for " + char_describe(spec));

    // trivial zeros of the uncompleted polynomial
    if (L.type == FieldType::Real) {
        long long s = 0;
        for (long long a : L.A) s += a;
        if (s != 0) throw integrity_error("missing trivial zero at z=1");
    } else if (L.type == FieldType::InertImaginary) {
        long long s = 0;
        for (size_t n = 0; n < L.A.size(); ++n) s += (n % 2 ? -L.A[n] : L.A[n]);
        if (s != 0) throw integrity_error("missing trivial zero at z=-1");
    }
    completed(L);  // multiply-back check
    return L;
}

LData compute_ldata(const CharSpec& spec, bool with_B, const Budget& budget) {
    auto cls = classify(spec);
    int n_max = cls.l_degree + 2;
    if (with_B) n_max = std::max(n_max, 2 * cls.l_degree);
    const FieldSpec* F = char_field(spec);
    budget.charge(enumeration_cost(F->q(), n_max), "compute_ldata");
    DegreeSieve sieve(F, n_max);
    return compute_ldata(spec, with_B, budget, sieve);
}

HalfValue evaluate(const LData& L, const SPoint& s) {
    const FieldSpec* F = L.field();
    uint32_t q = F->q();
    if (s.half) {
        HalfValue total = HalfValue::zero(q);
        HalfValue z = HalfValue::half_power(q, 1), zn = HalfValue::one(q);
        for (size_t n = 0; n < L.A.size(); ++n) {
            total += HalfValue::rational(Rat((long)L.A[n]), q) * zn;
            zn *= z;
        }
        return total;
    }
    // rational s: q^{-s} = p^{-k s}; exact when k*s is an integer, else fall
    // back to the half-integer grid of q itself
    Rat ks = Rat(F->k()) * s.s;
    if (ks.get_den() == 1) {
        long e = -(long)ks.get_num().get_si();
        Rat z = rat_qpow(F->p(), e);
        Rat total = 0, zn = 1;
        for (size_t n = 0; n < L.A.size(); ++n) {
            total += Rat((long)L.A[n]) * zn;
            zn *= z;
        }
        return HalfValue::rational(total, q);
    }
    Rat twice = 2 * s.s;
    if (twice.get_den() == 1) {
        HalfValue z = HalfValue::half_power(q, (long)twice.get_num().get_si());
        HalfValue total = HalfValue::zero(q), zn = HalfValue::one(q);
        for (size_t n = 0; n < L.A.size(); ++n) {
            total += HalfValue::rational(Rat((long)L.A[n]), q) * zn;
            zn *= z;
        }
        return total;
    }
    throw usage_error("q^-s is not exact for s = " + rat_str(s.s));
}

std::vector<long long> completed(const LData& L) {
    if (L.type == FieldType::RamifiedImaginary) return L.Astar;
    // multiply the trivial factor back and compare with A
    int g = L.genus;
    for (int n = 0; n <= L.l_degree; ++n) {
        long long star_n = n <= 2 * g ? L.Astar[n] : 0;
        long long star_prev = (n - 1 >= 0 && n - 1 <= 2 * g) ? L.Astar[n - 1] : 0;
        long long expect = L.type == FieldType::Real ? star_n - star_prev : star_n + star_prev;
        if (expect != L.A[n])
            throw integrity_error("completed polynomial does not multiply back at n=" +
                                  std::to_string(n));
    }
    return L.Astar;
}

FEReport check_functional_equation(const LData& L) {
    uint32_t q = L.q();
    int g = L.genus;
    for (int n = g; n <= 2 * g; ++n) {
        long long pw = 1;
        for (int i = 0; i < n - g; ++i) pw *= q;
        if (L.Astar[n] != L.Astar[2 * g - n] * pw) return {false, n};
    }
    return {true, -1};
}

HalfValue approx_fe_first(const LData& L, const SPoint& s) {
    uint32_t q = L.q();
    int g = L.genus;
    Rat sv = s.half ? Rat(1, 2) : s.s;
    auto qp = [&](const Rat& e) { return mainterm::qpow(q, e); };
    auto coef = [&](long long a) { return HalfValue::rational(Rat((long)a), q); };

    // truncated sums shared by the three cases
    HalfValue S1 = HalfValue::zero(q);   // sum_{n<=g} A(n) q^{-sn}
    HalfValue S1m = HalfValue::zero(q);  // sum_{n<=g-1} A(n) q^{(s-1)n}
    for (int n = 0; n <= g; ++n) S1 += coef(L.A[n]) * qp(-sv * n);
    for (int n = 0; n <= g - 1; ++n) S1m += coef(L.A[n]) * qp((sv - 1) * n);

    switch (L.type) {
        case FieldType::RamifiedImaginary:
            return S1 + qp(Rat(g) * (1 - 2 * sv)) * S1m;
        case FieldType::Real: {
            HalfValue S0 = HalfValue::zero(q);
            for (int n = 0; n <= g; ++n) S0 += coef(L.A[n]);
            HalfValue H = HalfValue::zero(q);
            if (!s.half && sv == 1) {
                HalfValue w = HalfValue::zero(q);
                for (int n = 0; n <= g - 1; ++n) w += coef((long long)(g - n) * L.A[n]);
                H = mainterm::zetaA(q, 2).inverse() * qp(Rat(-g)) * w;
            } else {
                HalfValue S0m = HalfValue::zero(q);
                for (int n = 0; n <= g - 1; ++n) S0m += coef(L.A[n]);
                HalfValue et = mainterm::eta(q, sv);
                H = et * qp(Rat(g) * (1 - 2 * sv)) * S1m - et * qp(-sv * g) * S0m;
            }
            return S1 - qp(-sv * (g + 1)) * S0 + H;
        }
        case FieldType::InertImaginary: {
            HalfValue T0 = HalfValue::zero(q), T0m = HalfValue::zero(q);
            HalfValue S1m_alt = HalfValue::zero(q);
            for (int n = 0; n <= g; ++n) T0 += coef((n + g) % 2 ? -L.A[n] : L.A[n]);
            for (int n = 0; n <= g - 1; ++n) {
                T0m += coef((n + g + 1) % 2 ? -L.A[n] : L.A[n]);
                S1m_alt += coef(L.A[n]) * qp((sv - 1) * n);
            }
            HalfValue nv = mainterm::nu(q, sv);
            return S1 + qp(-sv * (g + 1)) * T0 + nv * qp(Rat(g) * (1 - 2 * sv)) * S1m_alt +
                   nv * qp(-sv * g) * T0m;
        }
    }
    throw integrity_error("unreachable");
}

HalfValue approx_fe_second(const LData& L) {
    if (L.B.empty()) throw usage_error("B coefficients were not computed");
    uint32_t q = L.q();
    int g = L.genus;
    auto qp = [&](const Rat& e) { return mainterm::qpow(q, e); };
    auto coef = [&](long long b) { return HalfValue::rational(Rat((long)b), q); };

    HalfValue SA = HalfValue::zero(q);  // sum_{n<=2g} B(n) q^{-n/2}
    HalfValue SB = HalfValue::zero(q);  // sum_{n<=2g-1} B(n) q^{-n/2}
    for (int n = 0; n <= 2 * g; ++n) SA += coef(L.B[n]) * qp(Rat(-n, 2));
    for (int n = 0; n <= 2 * g - 1; ++n) SB += coef(L.B[n]) * qp(Rat(-n, 2));

    switch (L.type) {
        case FieldType::RamifiedImaginary:
            return SA + SB;
        case FieldType::Real: {
            HalfValue P0 = HalfValue::zero(q), P1 = HalfValue::zero(q);
            HalfValue W0 = HalfValue::zero(q), W1 = HalfValue::zero(q);
            for (int n = 0; n <= 2 * g; ++n) {
                P0 += coef(L.B[n]);
                W0 += coef((long long)(2 * g + 1 - n) * L.B[n]);
            }
            for (int n = 0; n <= 2 * g - 1; ++n) {
                P1 += coef(L.B[n]);
                W1 += coef((long long)(2 * g - n) * L.B[n]);
            }
            HalfValue zinv = mainterm::zetaA(q, Rat(3, 2)).inverse();
            return SA + SB - qp(-Rat(2 * g + 1, 2)) * P0 - qp(Rat(-g)) * P1 -
                   zinv * qp(-Rat(2 * g + 1, 2)) * W0 - zinv * qp(Rat(-g)) * W1;
        }
        case FieldType::InertImaginary: {
            HalfValue P0 = HalfValue::zero(q), P1 = HalfValue::zero(q);
            HalfValue W0 = HalfValue::zero(q), W1 = HalfValue::zero(q);
            for (int n = 0; n <= 2 * g; ++n) {
                long long sgn = n % 2 ? -1 : 1;
                P0 += coef(sgn * L.B[n]);
                W0 += coef(sgn * (long long)(2 * g + 1 - n) * L.B[n]);
            }
            for (int n = 0; n <= 2 * g - 1; ++n) {
                long long sgn = n % 2 ? -1 : 1;
                P1 += coef(sgn * L.B[n]);
                W1 += coef(sgn * (long long)(2 * g - n) * L.B[n]);
            }
            HalfValue zr = mainterm::zetaA(q, Rat(3, 2)) / mainterm::zetaA(q, 2);
            // the shorter tail enters with the opposite sign: expanding the
            // completed square against the functional equation gives
            // (-1)^{2g-n} on the n <= 2g-1 block, i.e. a relative minus
            return SA + SB + qp(-Rat(2 * g + 1, 2)) * P0 - qp(Rat(-g)) * P1 +
                   zr * qp(-Rat(2 * g + 1, 2)) * W0 - zr * qp(Rat(-g)) * W1;
        }
    }
    throw integrity_error("unreachable");
}

// --- curve route ---------------------------------------------------------------

namespace {

// Embedding of GF(q) = GF(p^k) into GF(p^(k*n)): send the degree-k modulus
// root to its canonically least root in the big field, found by search.
struct Embedding {
    const FieldSpec* small;
    const FieldSpec* big;
    uint32_t root = 0;  // image of the base element of GF(q)

    uint32_t map(uint32_t a) const {
        if (small->k() == 1) return big->from_residue(a);
        uint32_t out = 0, rp = big->from_residue(1);
        for (uint32_t i = 0; i < small->k(); ++i) {
            uint32_t digit = a;
            for (uint32_t j = 0; j < i; ++j) digit /= small->p();
            digit %= small->p();
            out = big->add(out, big->mul(big->from_residue(digit), rp));
            rp = big->mul(rp, root);
        }
        return out;
    }
};

Embedding make_embedding(const FieldSpec* small, const FieldSpec* big) {
    Embedding e{small, big, 0};
    if (small->k() == 1) return e;
    const auto& mod = small->modulus();
    for (uint32_t cand = 0; cand < big->q(); ++cand) {
        uint32_t acc = 0, cp = big->from_residue(1);
        for (uint32_t i = 0; i < mod.size(); ++i) {
            acc = big->add(acc, big->mul(big->from_residue(mod[i]), cp));
            cp = big->mul(cp, cand);
        }
        if (acc == 0) {
            e.root = cand;
            return e;
        }
    }
    throw integrity_error("modulus has no root in the extension field");
}

}  // namespace

CurveZeta curve_zeta(const Poly& D) {
    const FieldSpec* F = D.F;
    if (F->p() == 2) throw usage_error("curve point counting needs odd characteristic");
    if (D.is_zero() || D.deg() < 1) throw usage_error("D must be non-constant");
    if (!is_squarefree(D)) throw usage_error("D must be square-free");

    CurveZeta Z;
    Z.D = D;
    Z.genus = (D.deg() + 1) / 2 - 1;
    int g = Z.genus;

    std::vector<Int> power_sums(2 * g + 1, 0);  // S_1..S_2g
    for (int n = 1; n <= 2 * g; ++n) {
        const FieldSpec* E = FieldSpec::get(F->p(), F->k() * n);
        Embedding emb = make_embedding(F, E);
        std::vector<uint32_t> dc(D.c.size());
        for (size_t i = 0; i < D.c.size(); ++i) dc[i] = emb.map(D.c[i]);

        long long count = 0;
        for (uint64_t t = 0; t < E->q(); ++t) {
            uint32_t v = 0;
            for (size_t i = dc.size(); i-- > 0;) {
                v = E->mul(v, (uint32_t)t);
                v = E->add(v, dc[i]);
                if (i == 0) break;
            }
            count += 1 + E->quadratic_character(v);
        }
        if (D.deg() % 2 == 1)
            count += 1;
        else
            count += 1 + E->quadratic_character(emb.map(D.sgn()));
        Z.point_counts.push_back(count);

        Int qn;
        mpz_ui_pow_ui(qn.get_mpz_t(), F->q(), (unsigned long)n);
        Int s = qn + 1 - Int((long)count);
        // Weil bound: |N_n - q^n - 1| <= 2g q^{n/2}
        if (s * s > 4 * g * g * qn)
            throw integrity_error("point count violates the Weil bound at n=" + std::to_string(n));
        power_sums[n] = s;
    }

    // Newton's identities: k e_k = (-1)^{k-1} (p_k + sum_{i<k} (-1)^i e_i p_{k-i})
    std::vector<Int> e(2 * g + 1, 0);
    e[0] = 1;
    for (int k = 1; k <= 2 * g; ++k) {
        Int acc = power_sums[k];
        for (int i = 1; i < k; ++i) {
            Int term = e[i] * power_sums[k - i];
            acc += (i % 2 ? -term : term);
        }
        if (k % 2 == 0) acc = -acc;
        Int ek = acc / k;
        if (ek * k != acc) throw integrity_error("inverse-root symmetric function not integral");
        e[k] = ek;
    }
    Z.l_coeffs.resize(2 * g + 1);
    for (int k = 0; k <= 2 * g; ++k) Z.l_coeffs[k] = (k % 2 ? -e[k] : e[k]);
    return Z;
}

bool check_L_equals_curve(const LData& L, const CurveZeta& Z) {
    if (L.genus != Z.genus) return false;
    for (int k = 0; k <= 2 * L.genus; ++k)
        if (Z.l_coeffs[k] != Int((long)L.Astar[k])) return false;
    return true;
}

// --- class numbers and K-groups ---------------------------------------------------

ClassNumber class_number_from_L1(FieldType type, uint32_t q, int genus, const Rat& L1) {
    ClassNumber out;
    out.type = type;
    switch (type) {
        case FieldType::RamifiedImaginary: {
            Rat h = L1 * rat_qpow(q, genus);
            if (h.get_den() != 1 || h <= 0)
                throw integrity_error("class number not a positive integer");
            out.h = h.get_num();
            break;
        }
        case FieldType::Real: {
            out.is_real = true;
            out.h_r = L1 * rat_qpow(q, genus + 1) / (q - 1);
            if (out.h_r <= 0) throw integrity_error("h*R is not positive");
            break;
        }
        case FieldType::InertImaginary: {
            Rat h = 2 * L1 * rat_qpow(q, genus + 1) / (q + 1);
            if (h.get_den() != 1 || h <= 0)
                throw integrity_error("class number not a positive integer");
            out.h = h.get_num();
            break;
        }
    }
    return out;
}

ClassNumber class_number(const LData& L) {
    HalfValue L1 = evaluate(L, SPoint::integer(1));
    if (!L1.is_rational()) throw integrity_error("L(1) is not rational");
    return class_number_from_L1(L.type, L.q(), L.genus, L1.x());
}

Int k2_from_L2(FieldType type, uint32_t q, int genus, const Rat& L2) {
    auto zeta = [&](long s) -> Rat { return Rat(1) / (1 - rat_qpow(q, 1 - s)); };
    Rat k2;
    switch (type) {
        case FieldType::RamifiedImaginary:
            k2 = L2 * rat_qpow(q, 3 * genus);
            break;
        case FieldType::Real:
            k2 = L2 * rat_qpow(q, 3 * genus + 1) * zeta(3) / zeta(2);
            break;
        case FieldType::InertImaginary:
            k2 = L2 * rat_qpow(q, 3 * genus + 1) * zeta(2) * zeta(5) / (zeta(3) * zeta(3));
            break;
    }
    if (k2.get_den() != 1 || k2 <= 0) throw integrity_error("#K2 not a positive integer");
    return k2.get_num();
}

Int k2_order(const LData& L) {
    const FieldSpec* F = L.field();
    if (F->p() == 2) throw usage_error("K2 order is computed in odd characteristic only");
    HalfValue L2 = evaluate(L, SPoint::integer(2));
    if (!L2.is_rational()) throw integrity_error("L(2) is not rational");
    return k2_from_L2(L.type, F->q(), L.genus, L2.x());
}

std::string ldata_json(const LData& L) {
    nlohmann::ordered_json j;
    j["q"] = L.q();
    j["spec"] = char_describe(L.spec);
    j["type"] = field_type_name(L.type);
    j["genus"] = L.genus;
    auto dump = [](const std::vector<long long>& v) {
        std::vector<std::string> out;
        out.reserve(v.size());
        for (long long x : v) out.push_back(std::to_string(x));
        return out;
    };
    j["A"] = dump(L.A);
    if (!L.B.empty()) j["B"] = dump(L.B);
    j["Astar"] = dump(L.Astar);
    return j.dump();
}

}  // namespace ffl
