#include "ffl/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

namespace ffl {

namespace {

using Clock = std::chrono::steady_clock;

struct Ctx {
    const VerifyOptions& opts;
    std::string fail;  // first failure description; empty = pass
    uint64_t checked = 0;

    void expect(bool ok, const std::string& what) {
        ++checked;
        if (!ok && fail.empty()) fail = what;
    }
};

// Every square-free D of the given degree over GF(q), both allowed signs.
std::vector<CharSpec> odd_population(const FieldSpec* F, int deg) {
    std::vector<CharSpec> out;
    for_each_monic(F, deg, [&](const Poly& f) {
        if (!is_squarefree(f)) return;
        out.push_back(OddCharSpec::make(f));
        out.push_back(OddCharSpec::make(scale(f, F->generator())));
    });
    return out;
}

// The exact-identity gate population: odd q=3 discriminants of degree 2..5
// and the even q=2 families of genus <= 3.
std::vector<CharSpec> gate_population(bool quick) {
    std::vector<CharSpec> out;
    const FieldSpec* F3 = FieldSpec::get(3, 1);
    const FieldSpec* F2 = FieldSpec::get(2, 1);
    int odd_max = quick ? 4 : 5;
    int even_max = quick ? 2 : 3;
    for (int deg = 2; deg <= odd_max; ++deg)
        for (auto& c : odd_population(F3, deg)) out.push_back(std::move(c));
    for (FamilyKind kind : {FamilyKind::EvenF, FamilyKind::EvenFPrime, FamilyKind::EvenH})
        for (int g = 1; g <= even_max; ++g)
            for (auto& c : enumerate_family(F2, kind, g)) out.push_back(std::move(c));
    return out;
}

const std::vector<SPoint>& eval_points() {
    static const std::vector<SPoint> pts = {SPoint::half_point(), SPoint::integer(1),
                                            SPoint::integer(2)};
    return pts;
}

void suite_fe(Ctx& c) {
    for (const auto& spec : gate_population(c.opts.quick)) {
        try {
            LData L = compute_ldata(spec);  // construction asserts the invariants
            c.expect(check_functional_equation(L).pass, "FE symmetry: " + char_describe(spec));
        } catch (const std::exception& e) {
            c.expect(false, char_describe(spec) + ": " + e.what());
        }
    }
}

void suite_afe(Ctx& c) {
    for (const auto& spec : gate_population(c.opts.quick)) {
        LData L = compute_ldata(spec);
        for (const auto& s : eval_points())
            c.expect(approx_fe_first(L, s) == evaluate(L, s),
                     "truncated identity at s=" + s.label() + ": " + char_describe(spec));
    }
}

void suite_afes(Ctx& c) {
    for (const auto& spec : gate_population(c.opts.quick)) {
        LData L = compute_ldata(spec, true);
        HalfValue direct = evaluate(L, SPoint::half_point());
        c.expect(approx_fe_second(L) == direct * direct,
                 "squared identity: " + char_describe(spec));
    }
}

void suite_curve(Ctx& c) {
    const FieldSpec* F3 = FieldSpec::get(3, 1);
    auto check_one = [&](const CharSpec& spec) {
        const Poly& D = std::get<OddCharSpec>(spec).D;
        c.expect(check_L_equals_curve(compute_ldata(spec), curve_zeta(D)),
                 "curve mismatch: " + char_describe(spec));
    };
    for (const auto& spec : odd_population(F3, 3)) check_one(spec);  // exhaustive
    if (c.opts.quick) return;
    for (int deg : {4, 5}) {
        auto pop = odd_population(F3, deg);
        size_t step = std::max<size_t>(1, pop.size() / 54);
        size_t sampled = 0;
        for (size_t i = 0; i < pop.size(); i += step) {
            check_one(pop[i]);
            ++sampled;
        }
        c.expect(sampled >= 50, "curve sample too small at degree " + std::to_string(deg));
    }
}

void suite_gamma(Ctx& c) {
    const FieldSpec* F2 = FieldSpec::get(2, 1);
    int pmax = c.opts.quick ? 2 : 3;
    for (int dp = 1; dp <= pmax; ++dp)
        for (const Poly& prime : primes_of_degree(F2, dp)) {
            for (int df = 1; df <= std::min(4, 2 * dp - 1); ++df)
                for_each_monic(F2, df, [&](const Poly& f) {
                    if (is_perfect_square(f) || pmod(f, prime).is_zero()) return;
                    c.expect(gamma_sum(f, prime) == 0,
                             "Gamma != 0 at f=" + poly_str(f) + " P=" + poly_str(prime));
                    c.expect(t_sum(f, prime) == -1,
                             "T != -1 at f=" + poly_str(f) + " P=" + poly_str(prime));
                });
            for (int s = 1; s <= 2; ++s)
                for (int df = 1; df <= std::min(4, 2 * dp + 2 * s - 2); ++df)
                    for_each_monic(F2, df, [&](const Poly& f) {
                        if (is_perfect_square(f) || pmod(f, prime).is_zero()) return;
                        c.expect(gamma_sum_s(f, prime, s) == 0,
                                 "Gamma_s != 0 at f=" + poly_str(f) + " P=" + poly_str(prime) +
                                     " s=" + std::to_string(s));
                    });
        }
}

// coefficients of prod_r ((1+z^r)^a / (1-z^r)^b)^..., truncated; used as the
// second, enumeration-free route to the divisor sums
struct Series {
    std::vector<Int> c;  // c[0..N]
    explicit Series(int N) : c((size_t)N + 1, 0) {}
};

Series series_mul(const Series& a, const Series& b) {
    int N = (int)a.c.size() - 1;
    Series out(N);
    for (int i = 0; i <= N; ++i) {
        if (a.c[i] == 0) continue;
        for (int j = 0; i + j <= N; ++j)
            if (b.c[j] != 0) out.c[i + j] += a.c[i] * b.c[j];
    }
    return out;
}

Series series_pow(Series base, Int e, int N) {
    Series out(N);
    out.c[0] = 1;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) out = series_mul(out, base);
        e >>= 1;
        if (e > 0) base = series_mul(base, base);
    }
    return out;
}

// 1/g for a series with g(0) = 1
Series series_inv(const Series& g, int N) {
    Series out(N);
    out.c[0] = 1;
    for (int n = 1; n <= N; ++n) {
        Int acc = 0;
        for (int i = 1; i <= n; ++i) acc += g.c[i] * out.c[n - i];
        out.c[n] = -acc;
    }
    return out;
}

void suite_divisor(Ctx& c) {
    int nmax = c.opts.quick ? 6 : 10;
    for (uint32_t q : {2u, 3u, 5u}) {
        const FieldSpec* F = FieldSpec::get(q, 1);

        // route 1: per-polynomial factorization sieve (capped for q = 5)
        int sieve_max = q == 5 ? std::min(nmax, 7) : nmax;
        DegreeSieve sieve(F, sieve_max);
        for (int n = 0; n <= sieve_max; ++n) {
            Int sum_d = 0, sum_d2 = 0;
            const auto& d1 = sieve.divisor_counts(n);
            const auto& d2 = sieve.divisor_counts_square(n);
            for (size_t j = 0; j < d1.size(); ++j) {
                sum_d += d1[j];
                sum_d2 += d2[j];
            }
            Int expect = Int(n + 1) * rat_qpow(q, n).get_num();
            c.expect(sum_d == expect,
                     "sum d(f) != (n+1)q^n at q=" + std::to_string(q) + " n=" + std::to_string(n));
            c.expect(sum_d2 == rho(q, n),
                     "sum d(f^2) != rho at q=" + std::to_string(q) + " n=" + std::to_string(n));
        }

        // route 2: Euler products over exact prime counts, truncated at z^nmax
        Series num(nmax), den(nmax), dsq_num(nmax);
        num.c[0] = 1;
        den.c[0] = 1;
        dsq_num.c[0] = 1;
        for (int r = 1; r <= nmax; ++r) {
            Int pr = prime_count(q, r);
            Series one_minus(nmax), one_plus(nmax);
            one_minus.c[0] = 1;
            one_plus.c[0] = 1;
            if (r <= nmax) {
                one_minus.c[r] = -1;
                one_plus.c[r] = 1;
            }
            den = series_mul(den, series_pow(one_minus, 2 * pr, nmax));
            dsq_num = series_mul(dsq_num, series_pow(one_plus, pr, nmax));
        }
        Series dinv = series_inv(den, nmax);           // prod (1-z^r)^{-2 pi(r)}
        Series dsq = series_mul(dsq_num, dinv);        // prod (1+z^r)(1-z^r)^{-2}
        for (int n = 0; n <= nmax; ++n) {
            Int expect = Int(n + 1) * rat_qpow(q, n).get_num();
            c.expect(dinv.c[n] == expect, "Euler-product d(f) sum mismatch at q=" +
                                              std::to_string(q) + " n=" + std::to_string(n));
            c.expect(dsq.c[n] == rho(q, n), "Euler-product d(f^2) sum mismatch at q=" +
                                                std::to_string(q) + " n=" + std::to_string(n));
        }
    }

    // coprime-restricted sums: identical for every prime of the degree and
    // equal to the three-case formula
    for (uint32_t q : {2u, 3u}) {
        const FieldSpec* F = FieldSpec::get(q, 1);
        DegreeSieve sieve(F, nmax);
        for (int r = 1; r <= 4; ++r) {
            auto primes = primes_of_degree(F, r);
            size_t tested = 0;
            for (const Poly& prime : primes) {
                if (tested++ >= 2) break;
                for (int n = 0; n <= nmax; ++n) {
                    Int brute = 0;
                    const auto& d2 = sieve.divisor_counts_square(n);
                    uint64_t count = monic_count(q, n);
                    for (uint64_t j = 0; j < count; ++j)
                        if (!pmod(monic_by_index(F, n, j), prime).is_zero()) brute += d2[j];
                    c.expect(brute == rho_star(q, n, r),
                             "rho* mismatch at q=" + std::to_string(q) + " n=" + std::to_string(n) +
                                 " r=" + std::to_string(r) + " P=" + poly_str(prime));
                }
            }
        }
    }
}

void suite_pnt(Ctx& c) {
    int nmax = c.opts.quick ? 6 : 8;
    for (uint32_t q : {2u, 3u}) {
        const FieldSpec* F = FieldSpec::get(q, 1);
        DegreeSieve sieve(F, nmax);
        for (int n = 1; n <= nmax; ++n) {
            Int formula = prime_count(q, n);
            Int direct((unsigned long)primes_of_degree(F, n).size());
            Int sieved((unsigned long)sieve.prime_indices(n).size());
            c.expect(formula == direct, "prime count vs direct enumeration at q=" +
                                            std::to_string(q) + " n=" + std::to_string(n));
            c.expect(formula == sieved, "prime count vs sieve at q=" + std::to_string(q) +
                                            " n=" + std::to_string(n));
        }
    }
}

void suite_integrality(Ctx& c) {
    for (const auto& spec : gate_population(c.opts.quick)) {
        try {
            LData L = compute_ldata(spec);
            auto cn = class_number(L);  // throws if not integral/positive
            if (cn.is_real)
                c.expect(cn.h_r > 0, "h*R <= 0: " + char_describe(spec));
            else
                c.expect(cn.h > 0, "h <= 0: " + char_describe(spec));
            if (char_field(spec)->p() != 2)
                c.expect(k2_order(L) >= 1, "#K2 < 1: " + char_describe(spec));
        } catch (const std::exception& e) {
            c.expect(false, char_describe(spec) + ": " + e.what());
        }
    }
}

void suite_mainterm(Ctx& c) {
    using namespace mainterm;
    int gmax = c.opts.quick ? 16 : 64;
    for (uint32_t q : {2u, 3u, 4u, 5u, 9u}) {
        auto hvq = [&](const Rat& r) { return HalfValue::rational(r, q); };
        for (int g = 1; g <= gmax; ++g) {
            for (const auto& s : eval_points()) {
                c.expect(Ag(q, g, s) == Ag_sum(q, g, s), "A_g vs finite sum");
                c.expect(Bg(q, g, s) == Bg_sum(q, g, s), "B_g vs finite sum");
                c.expect(Ch(q, g, s) == Ch_sum(q, g, s), "C_h vs finite sum");
                c.expect(Ch(q, g - 1, s) == Ch_sum(q, g - 1, s), "C_{g-1} vs finite sum");
                c.expect(Ag(q, g, s) + Bg(q, g, s) == first_moment_collapse(q, g, s),
                         "A_g + B_g collapse");
            }
            c.expect(Bconst(q, g) == Bconst_sum(q, g), "B(g) vs finite sum");
            c.expect(Btilde_const(q, g) == Bconst(q, g) + hvq(g) + hvq(2) * zetaA(q, 2),
                     "tilde B(g) tail relation");
            int sign_term = (g + 1) % 2 == 0 ? 1 : 0;
            HalfValue j1 = Ag(q, g, SPoint::integer(1)) -
                           zetaA(q, 2) * qpow(q, Rat(g / 2 - (g + 1))) +
                           qpow(q, Rat((g - 1) / 2 - g)) *
                               (hvq(2) * zetaA(q, 2) - hvq(sign_term));
            c.expect(j1 == zetaA(q, 2), "J(1) collapse");
            c.expect(K(q, g, SPoint::integer(1)) == zetaA(q, 2), "K(1) collapse");
            c.expect(g / 2 + (g - 1) / 2 + 2 == g + 1, "floor split identity");
        }
    }
}

void suite_squares(Ctx& c) {
    const FieldSpec* F3 = FieldSpec::get(3, 1);
    const FieldSpec* F2 = FieldSpec::get(2, 1);
    int godd = c.opts.quick ? 2 : 3;
    int geven = c.opts.quick ? 2 : 4;
    for (FamilyKind kind : {FamilyKind::POdd, FamilyKind::PEven, FamilyKind::GammaPEven})
        for (int g = 1; g <= godd; ++g)
            for (const auto& s : eval_points())
                c.expect(square_contribution_oracle(F3, kind, g, s).equal,
                         "square contribution: " + family_name(kind) + " g=" + std::to_string(g) +
                             " s=" + s.label());
    for (FamilyKind kind : {FamilyKind::EvenH, FamilyKind::EvenF, FamilyKind::EvenFPrime})
        for (int g = 1; g <= geven; ++g)
            for (const auto& s : eval_points())
                c.expect(square_contribution_oracle(F2, kind, g, s).equal,
                         "square contribution: " + family_name(kind) + " g=" + std::to_string(g) +
                             " s=" + s.label());
}

void suite_weil(Ctx& c, std::string& extra) {
    const FieldSpec* F3 = FieldSpec::get(3, 1);
    int nmax = c.opts.quick ? 4 : 6;
    double max_ratio = 0;
    for (int n = 1; n <= nmax; ++n) {
        auto primes = primes_of_degree(F3, n);
        for (int df = 1; df <= 4; ++df)
            for_each_monic(F3, df, [&](const Poly& f) {
                if (is_perfect_square(f)) return;
                long long total = 0;
                for (const Poly& prime : primes) total += kronecker_fast(f, prime);
                // |sum| <= 4 deg(f) q^{n/2} / n, compared through squares
                Int lhs = Int((long)total) * n;
                Int rhs = Int(16) * df * df * rat_qpow(3, n).get_num();
                c.expect(lhs * lhs <= rhs, "cancellation bound: f=" + poly_str(f) +
                                               " n=" + std::to_string(n));
                double ratio = std::abs((double)total) * n / (df * std::pow(3.0, n / 2.0));
                max_ratio = std::max(max_ratio, ratio);
            });
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max observed ratio %.4f", max_ratio);
    extra = buf;
}

void suite_residual(Ctx& c, std::string& extra) {
    const FieldSpec* F3 = FieldSpec::get(3, 1);
    int gmax = c.opts.quick ? 2 : 4;
    double max_const = 0;
    RunOpts opts;
    opts.workers = c.opts.workers;
    for (int g = 1; g <= gmax; ++g) {
        MomentRow row = first_moment(F3, FamilyKind::POdd, g, SPoint::integer(1), opts);
        Rat r = row.residual.x();
        Rat bound = Rat(25) * rat_qpow(3, 2 * g + 1) * (2 * g + 1) * (2 * g + 1);
        c.expect(r * r <= bound,
                 "first-moment residual exceeds 5 q^{(2g+1)/2} (2g+1) at g=" + std::to_string(g));
        double observed = std::abs(r.get_d()) / (std::pow(3.0, g + 0.5) * (2 * g + 1));
        max_const = std::max(max_const, observed);
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max observed constant %.4f", max_const);
    extra = buf;
}

void suite_nonvanishing(Ctx& c) {
    const FieldSpec* F3 = FieldSpec::get(3, 1);
    const FieldSpec* F2 = FieldSpec::get(2, 1);
    RunOpts opts;
    opts.workers = c.opts.workers;
    int godd = c.opts.quick ? 1 : 2;
    int geven = c.opts.quick ? 2 : 3;
    for (FamilyKind kind : {FamilyKind::POdd, FamilyKind::PEven, FamilyKind::GammaPEven})
        for (int g = 1; g <= godd; ++g) {
            auto nv = nonvanishing_count(F3, kind, g, opts);
            c.expect(nv.cauchy_schwarz_ok, "Cauchy-Schwarz floor: " + family_name(kind) +
                                               " g=" + std::to_string(g));
        }
    for (FamilyKind kind : {FamilyKind::EvenH, FamilyKind::EvenF, FamilyKind::EvenFPrime})
        for (int g = 1; g <= geven; ++g) {
            auto nv = nonvanishing_count(F2, kind, g, opts);
            c.expect(nv.cauchy_schwarz_ok, "Cauchy-Schwarz floor: " + family_name(kind) +
                                               " g=" + std::to_string(g));
        }
}

void suite_determinism(Ctx& c) {
    const FieldSpec* F3 = FieldSpec::get(3, 1);
    const FieldSpec* F2 = FieldSpec::get(2, 1);
    auto table = [&](int workers) {
        RunOpts opts;
        opts.workers = workers;
        std::vector<MomentRow> rows;
        for (int g = 1; g <= 2; ++g) {
            rows.push_back(first_moment(F3, FamilyKind::POdd, g, SPoint::half_point(), opts));
            rows.push_back(first_moment(F2, FamilyKind::EvenH, g, SPoint::half_point(), opts));
        }
        rows.push_back(second_moment(F3, FamilyKind::PEven, 1, opts));
        rows.push_back(second_moment(F2, FamilyKind::EvenF, 2, opts));
        rows.push_back(aggregate_class_numbers(F3, FamilyKind::POdd, 2, opts));
        return rows_csv(rows) + rows_json(rows);
    };
    std::string one = table(1), four = table(4);
    c.expect(one == four, "tables differ between workers 1 and 4");
}

struct SuiteDef {
    const char* name;
    std::function<void(Ctx&, std::string&)> run;
};

const std::vector<SuiteDef>& suite_defs() {
    static const std::vector<SuiteDef> defs = {
        {"fe", [](Ctx& c, std::string&) { suite_fe(c); }},
        {"afe", [](Ctx& c, std::string&) { suite_afe(c); }},
        {"afes", [](Ctx& c, std::string&) { suite_afes(c); }},
        {"curve", [](Ctx& c, std::string&) { suite_curve(c); }},
        {"gamma", [](Ctx& c, std::string&) { suite_gamma(c); }},
        {"divisor", [](Ctx& c, std::string&) { suite_divisor(c); }},
        {"pnt", [](Ctx& c, std::string&) { suite_pnt(c); }},
        {"integrality", [](Ctx& c, std::string&) { suite_integrality(c); }},
        {"mainterm", [](Ctx& c, std::string&) { suite_mainterm(c); }},
        {"squares", [](Ctx& c, std::string&) { suite_squares(c); }},
        {"weil", [](Ctx& c, std::string& e) { suite_weil(c, e); }},
        {"residual", [](Ctx& c, std::string& e) { suite_residual(c, e); }},
        {"nonvanishing", [](Ctx& c, std::string&) { suite_nonvanishing(c); }},
        {"determinism", [](Ctx& c, std::string&) { suite_determinism(c); }},
    };
    return defs;
}

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (const auto& d : suite_defs()) out.push_back(d.name);
    return out;
}

std::vector<SuiteResult> run_suites(const std::vector<std::string>& which,
                                    const VerifyOptions& opts) {
    std::vector<std::string> names = which;
    if (names.empty() || (names.size() == 1 && names[0] == "all")) names = suite_names();
    std::vector<SuiteResult> out;
    for (const auto& name : names) {
        const SuiteDef* def = nullptr;
        for (const auto& d : suite_defs())
            if (name == d.name) def = &d;
        if (!def) throw usage_error("unknown suite: " + name);
        Ctx ctx{opts, "", 0};
        std::string extra;
        auto t0 = Clock::now();
        try {
            def->run(ctx, extra);
        } catch (const std::exception& e) {
            ctx.expect(false, std::string("exception: ") + e.what());
        }
        SuiteResult r;
        r.name = name;
        r.pass = ctx.fail.empty();
        r.detail = ctx.fail.empty()
                       ? std::to_string(ctx.checked) + " checks" + (extra.empty() ? "" : "; " + extra)
                       : ctx.fail;
        r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace ffl
