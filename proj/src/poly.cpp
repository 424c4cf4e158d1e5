#include "ffl/poly.hpp"

#include <algorithm>
#include <cassert>

namespace ffl {

namespace {
void trim(std::vector<uint32_t>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}
}  // namespace

Poly poly_zero(const FieldSpec* F) { return {F, {}}; }
Poly poly_one(const FieldSpec* F) { return {F, {1}}; }
Poly poly_T(const FieldSpec* F) { return {F, {0, 1}}; }
Poly poly_const(const FieldSpec* F, uint32_t elt) {
    Poly f{F, {elt}};
    trim(f.c);
    return f;
}

Poly make_poly(const FieldSpec* F, std::vector<uint32_t> coeffs) {
    for (uint32_t v : coeffs)
        if (v >= F->q()) throw usage_error("coefficient index out of range");
    Poly f{F, std::move(coeffs)};
    trim(f.c);
    return f;
}

Int poly_norm(const Poly& f) {
    if (f.is_zero()) return 0;
    Int n;
    mpz_ui_pow_ui(n.get_mpz_t(), f.F->q(), (unsigned long)f.deg());
    return n;
}

static void check_same(const Poly& a, const Poly& b) {
    if (a.F != b.F) throw usage_error("polynomials over different fields");
}

Poly operator+(const Poly& a, const Poly& b) {
    check_same(a, b);
    Poly r{a.F, {}};
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) {
        uint32_t x = i < a.c.size() ? a.c[i] : 0;
        uint32_t y = i < b.c.size() ? b.c[i] : 0;
        r.c[i] = a.F->add(x, y);
    }
    trim(r.c);
    return r;
}

Poly operator-(const Poly& a) {
    Poly r = a;
    for (auto& v : r.c) v = a.F->neg(v);
    return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    check_same(a, b);
    if (a.is_zero() || b.is_zero()) return poly_zero(a.F);
    Poly r{a.F, std::vector<uint32_t>(a.c.size() + b.c.size() - 1, 0)};
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (!a.c[i]) continue;
        for (size_t j = 0; j < b.c.size(); ++j) {
            if (!b.c[j]) continue;
            r.c[i + j] = a.F->add(r.c[i + j], a.F->mul(a.c[i], b.c[j]));
        }
    }
    trim(r.c);
    return r;
}

Poly scale(const Poly& a, uint32_t elt) {
    Poly r = a;
    for (auto& v : r.c) v = a.F->mul(v, elt);
    trim(r.c);
    return r;
}

std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g) {
    check_same(f, g);
    if (g.is_zero()) throw domain_error("polynomial division by zero");
    const FieldSpec* F = f.F;
    if (f.c.size() < g.c.size()) return {poly_zero(F), f};
    uint32_t lead_inv = F->inv(g.c.back());
    std::vector<uint32_t> rem = f.c;
    std::vector<uint32_t> quot(f.c.size() - g.c.size() + 1, 0);
    for (size_t i = f.c.size(); i-- >= g.c.size();) {
        uint32_t coef = F->mul(rem[i], lead_inv);
        if (coef) {
            quot[i - g.c.size() + 1] = coef;
            size_t shift = i - (g.c.size() - 1);
            for (size_t j = 0; j < g.c.size(); ++j)
                rem[shift + j] = F->sub(rem[shift + j], F->mul(coef, g.c[j]));
        }
        if (i == g.c.size() - 1) break;  // avoid size_t underflow
    }
    Poly q{F, std::move(quot)}, r{F, std::move(rem)};
    trim(q.c);
    trim(r.c);
    return {q, r};
}

Poly pmod(const Poly& f, const Poly& g) { return divmod(f, g).second; }

bool divides(const Poly& d, const Poly& f) { return pmod(f, d).is_zero(); }

Poly gcd(Poly a, Poly b) {
    check_same(a, b);
    if (a.is_zero() && b.is_zero()) throw domain_error("gcd(0, 0)");
    while (!b.is_zero()) {
        Poly r = pmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a).second;
}

Poly derivative(const Poly& f) {
    if (f.is_zero() || f.c.size() == 1) return poly_zero(f.F);
    Poly r{f.F, std::vector<uint32_t>(f.c.size() - 1, 0)};
    for (size_t i = 1; i < f.c.size(); ++i) {
        uint32_t k = f.F->from_residue((uint32_t)(i % f.F->p()));
        r.c[i - 1] = f.F->mul(f.c[i], k);
    }
    trim(r.c);
    return r;
}

uint32_t eval(const Poly& f, uint32_t point) {
    uint32_t acc = 0;
    for (size_t i = f.c.size(); i-- > 0;) {
        acc = f.F->mul(acc, point);
        acc = f.F->add(acc, f.c[i]);
        if (i == 0) break;
    }
    return acc;
}

std::pair<uint32_t, Poly> make_monic(const Poly& f) {
    if (f.is_zero()) return {1, f};
    uint32_t s = f.sgn();
    if (s == 1) return {1, f};
    return {s, scale(f, f.F->inv(s))};
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return pmod(a * b, m); }

Poly powmod(const Poly& base, uint64_t e, const Poly& m) {
    Poly r = pmod(poly_one(base.F), m);
    Poly b = pmod(base, m);
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

Poly frobenius_power(const Poly& m, uint32_t j) {
    Poly h = pmod(poly_T(m.F), m);
    for (uint32_t i = 0; i < j; ++i) h = powmod(h, m.F->q(), m);
    return h;
}

bool is_irreducible(const Poly& f) {
    if (f.is_zero() || f.deg() < 1 || !f.is_monic())
        throw usage_error("irreducibility test needs a monic non-constant polynomial");
    int n = f.deg();
    if (n == 1) return true;
    Poly x = pmod(poly_T(f.F), f);
    if (!(frobenius_power(f, (uint32_t)n) == x)) return false;
    int m = n;
    for (int l = 2; l <= m; ++l)
        if (m % l == 0) {
            Poly h = frobenius_power(f, (uint32_t)(n / l)) - x;
            if (h.is_zero() || gcd(h, f).deg() > 0) return false;
            while (m % l == 0) m /= l;
        }
    return true;
}

Factorization factor(const Poly& f) {
    if (f.is_zero()) throw domain_error("factorization of zero");
    Factorization out;
    out.F = f.F;
    auto [unit, m] = make_monic(f);
    out.unit = unit;
    for (int d = 1; !m.is_one() && 2 * d <= m.deg(); ++d) {
        Poly x = pmod(poly_T(m.F), m);
        Poly h = frobenius_power(m, (uint32_t)d) - x;
        Poly g = h.is_zero() ? m : gcd(h, m);
        if (g.deg() == 0) continue;
        // g is a product of distinct primes of degree d; peel them off by
        // scanning monic degree-d polynomials in canonical order.
        for (uint64_t idx = 0; g.deg() > 0; ++idx) {
            Poly cand = monic_by_index(m.F, d, idx);
            if (!divides(cand, g)) continue;
            g = divmod(g, cand).first;
            uint32_t e = 0;
            while (divides(cand, m)) {
                m = divmod(m, cand).first;
                ++e;
            }
            out.factors.emplace_back(cand, e);
        }
    }
    if (!m.is_one()) out.factors.emplace_back(m, 1);
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

Poly recompose(const Factorization& fac) {
    Poly r = poly_const(fac.F, fac.unit);
    for (const auto& [p, e] : fac.factors)
        for (uint32_t i = 0; i < e; ++i) r = r * p;
    return r;
}

uint64_t divisor_count(const Poly& f) {
    if (f.is_zero()) throw domain_error("divisor count of zero");
    uint64_t d = 1;
    for (const auto& [p, e] : factor(f).factors) d *= (uint64_t)e + 1;
    return d;
}

uint64_t divisor_count_square(const Poly& f) {
    if (f.is_zero()) throw domain_error("divisor count of zero");
    uint64_t d = 1;
    for (const auto& [p, e] : factor(f).factors) d *= 2ull * e + 1;
    return d;
}

bool is_squarefree(const Poly& f) {
    for (const auto& [p, e] : factor(f).factors)
        if (e > 1) return false;
    return true;
}

bool is_perfect_square(const Poly& f) {
    if (f.is_zero()) return true;
    auto fac = factor(f);
    for (const auto& [p, e] : fac.factors)
        if (e % 2) return false;
    const FieldSpec* F = f.F;
    if (F->p() == 2) return true;  // Frobenius is onto
    return F->is_square(fac.unit);
}

Poly poly_sqrt(const Poly& f) {
    if (f.is_zero()) return f;
    auto fac = factor(f);
    const FieldSpec* F = f.F;
    uint32_t unit_root = 0;
    for (uint32_t s = 0; s < F->q(); ++s)
        if (F->mul(s, s) == fac.unit) {
            unit_root = s;
            break;
        }
    if (F->mul(unit_root, unit_root) != fac.unit)
        throw domain_error("polynomial is not a perfect square");
    Poly r = poly_const(F, unit_root);
    for (const auto& [p, e] : fac.factors) {
        if (e % 2) throw domain_error("polynomial is not a perfect square");
        for (uint32_t i = 0; i < e / 2; ++i) r = r * p;
    }
    return r;
}

uint64_t monic_count(uint32_t q, int n) {
    if (n < 0) throw usage_error("negative degree");
    uint64_t c = 1;
    for (int i = 0; i < n; ++i) {
        if (c > UINT64_MAX / q) throw usage_error("monic count overflows");
        c *= q;
    }
    return c;
}

Poly monic_by_index(const FieldSpec* F, int n, uint64_t idx) {
    Poly f{F, std::vector<uint32_t>((size_t)n + 1, 0)};
    for (int i = 0; i < n; ++i) {
        f.c[i] = (uint32_t)(idx % F->q());
        idx /= F->q();
    }
    if (idx) throw usage_error("monic index out of range");
    f.c[n] = 1;
    return f;
}

Poly poly_from_dense_index(const FieldSpec* F, int width, uint64_t idx) {
    Poly f{F, std::vector<uint32_t>((size_t)width, 0)};
    for (int i = 0; i < width; ++i) {
        f.c[i] = (uint32_t)(idx % F->q());
        idx /= F->q();
    }
    if (idx) throw usage_error("dense index out of range");
    while (!f.c.empty() && f.c.back() == 0) f.c.pop_back();
    return f;
}

uint64_t monic_index(const Poly& f) {
    if (!f.is_monic()) throw usage_error("monic index of a non-monic polynomial");
    uint64_t idx = 0;
    for (size_t i = f.c.size() - 1; i-- > 0;) {
        idx = idx * f.F->q() + f.c[i];
        if (i == 0) break;
    }
    return idx;
}

void for_each_monic(const FieldSpec* F, int n, const std::function<void(const Poly&)>& fn) {
    Poly f{F, std::vector<uint32_t>((size_t)n + 1, 0)};
    f.c[n] = 1;
    uint64_t total = monic_count(F->q(), n);
    for (uint64_t i = 0;; ++i) {
        fn(f);
        if (i + 1 == total) break;
        for (int j = 0; j < n; ++j) {  // odometer, least digit first
            if (++f.c[j] < F->q()) break;
            f.c[j] = 0;
        }
    }
}

Int prime_count(uint32_t q, int n) {
    if (n < 1) throw usage_error("prime count needs n >= 1");
    // (1/n) sum_{d|n} mu(d) q^{n/d}
    Int total = 0;
    for (int d = 1; d <= n; ++d) {
        if (n % d) continue;
        int dd = d, mu = 1;
        for (int l = 2; l * l <= dd; ++l)
            if (dd % l == 0) {
                dd /= l;
                if (dd % l == 0) {
                    mu = 0;
                    break;
                }
                mu = -mu;
            }
        if (dd > 1 && mu != 0) mu = -mu;
        if (!mu) continue;
        Int term;
        mpz_ui_pow_ui(term.get_mpz_t(), q, (unsigned long)(n / d));
        total += mu * term;
    }
    Int count = total / n;
    if (count * n != total) throw integrity_error("prime count not integral");
    return count;
}

Rat prime_count_main_term(uint32_t q, int n) {
    Rat r(rat_qpow(q, n));
    r /= n;
    return r;
}

std::vector<Poly> primes_of_degree(const FieldSpec* F, int n) {
    std::vector<Poly> out;
    for_each_monic(F, n, [&](const Poly& f) {
        if (is_irreducible(f)) out.push_back(f);
    });
    return out;
}

Int rho(uint32_t q, int n) {
    if (n < 0) throw usage_error("rho needs n >= 0");
    Rat qinv(1, q);
    Rat val = 1 + Rat(3 + qinv) * n / 2 + Rat(1 - qinv) * n * n / 2;
    val *= rat_qpow(q, n);
    if (val.get_den() != 1) throw integrity_error("rho closed form not integral");
    return val.get_num();
}

Int rho_star(uint32_t q, int n, int r) {
    if (r < 1) throw usage_error("rho_star needs r >= 1");
    Int total = rho(q, n);
    if (n - r >= 0) total -= 3 * rho(q, n - r);
    for (int l = 2; n - l * r >= 0; ++l) total += (l % 2 ? -4 : 4) * rho(q, n - l * r);
    return total;
}

std::string poly_str(const Poly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (size_t i = 0; i < f.c.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(f.c[i]);
    }
    return out;
}

Poly parse_poly(const FieldSpec* F, const std::string& text) {
    std::vector<uint32_t> coeffs;
    size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        std::string tok = text.substr(pos, comma - pos);
        try {
            coeffs.push_back((uint32_t)std::stoul(tok));
        } catch (const std::logic_error&) {
            throw usage_error("cannot parse polynomial coefficient: '" + tok + "'");
        }
        pos = comma + 1;
    }
    return make_poly(F, std::move(coeffs));
}

std::string poly_pretty(const Poly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (size_t i = f.c.size(); i-- > 0;) {
        if (!f.c[i]) {
            if (i == 0) break;
            continue;
        }
        if (!out.empty()) out += "+";
        if (i == 0 || f.c[i] != 1) out += std::to_string(f.c[i]);
        if (i >= 1) {
            if (f.c[i] != 1) out += "*";
            out += "T";
            if (i > 1) out += "^" + std::to_string(i);
        }
        if (i == 0) break;
    }
    return out.empty() ? "0" : out;
}

// --- DegreeSieve ------------------------------------------------------------

DegreeSieve::DegreeSieve(const FieldSpec* F, int max_deg) : F_(F), max_deg_(max_deg) {
    if (max_deg < 0) throw usage_error("sieve degree must be >= 0");
    uint64_t total = 0;
    for (int n = 0; n <= max_deg; ++n) total += monic_count(F->q(), n);
    if (total > (1ull << 25))
        throw budget_error("degree sieve too large", total, 1ull << 25);

    uint32_t q = F->q();
    links_.resize(max_deg + 1);
    primes_.resize(max_deg + 1);
    d1_.resize(max_deg + 1);
    d2_.resize(max_deg + 1);

    std::vector<uint64_t> qpow(max_deg + 2, 1);
    for (int i = 1; i <= max_deg + 1; ++i) qpow[i] = qpow[i - 1] * q;

    links_[0] = {Link{0, 0, 0}};
    for (int n = 1; n <= max_deg; ++n) {
        links_[n].assign(qpow[n], Link{255, 0, 0});
        std::vector<uint32_t> prod(n + 1);
        std::vector<uint32_t> dp, dm;
        for (int d = 1; 2 * d <= n; ++d) {
            dm.assign(n - d + 1, 0);
            dm[n - d] = 1;
            for (uint32_t jp : primes_[d]) {
                dp.assign(d + 1, 0);
                uint64_t t = jp;
                for (int i = 0; i < d; ++i) {
                    dp[i] = (uint32_t)(t % q);
                    t /= q;
                }
                dp[d] = 1;
                uint64_t count = qpow[n - d];
                for (int i = 0; i < n - d; ++i) dm[i] = 0;
                for (uint64_t jm = 0;; ++jm) {
                    std::fill(prod.begin(), prod.end(), 0);
                    for (int i = 0; i <= d; ++i) {
                        if (!dp[i]) continue;
                        for (int j = 0; j <= n - d; ++j)
                            if (dm[j]) prod[i + j] = F->add(prod[i + j], F->mul(dp[i], dm[j]));
                    }
                    uint64_t pidx = 0;
                    for (int i = n - 1; i >= 0; --i) pidx = pidx * q + prod[i];
                    Link& L = links_[n][pidx];
                    if (L.spf_deg == 255) L = Link{(uint8_t)d, jp, (uint32_t)jm};
                    if (jm + 1 == count) break;
                    for (int i = 0; i < n - d; ++i) {
                        if (++dm[i] < q) break;
                        dm[i] = 0;
                    }
                }
            }
        }
        for (uint64_t j = 0; j < qpow[n]; ++j)
            if (links_[n][j].spf_deg == 255) {
                links_[n][j] = Link{0, 0, 0};
                primes_[n].push_back((uint32_t)j);
            }
    }
    for (int n = 0; n <= max_deg; ++n) build_divisor_tables(n);
}

Poly DegreeSieve::poly_at(int n, uint64_t idx) const { return monic_by_index(F_, n, idx); }

void DegreeSieve::build_divisor_tables(int n) const {
    uint64_t count = monic_count(F_->q(), n);
    auto& d1 = d1_[n];
    auto& d2 = d2_[n];
    d1.resize(count);
    d2.resize(count);
    if (n == 0) {
        d1[0] = 1;
        d2[0] = 1;
        return;
    }
    for (uint64_t j = 0; j < count; ++j) {
        if (is_prime(n, j)) {
            d1[j] = 2;
            d2[j] = 3;
            continue;
        }
        const Link& L = links_[n][j];
        int pd = L.spf_deg;
        uint32_t pj = L.spf_idx;
        uint32_t e = 1;
        int gd = n - pd;
        uint64_t gj = L.quot_idx;
        // strip every copy of the smallest prime factor; its cofactor only
        // carries primes that come later in (degree, index) order
        while (gd >= pd) {
            if (gd == pd && gj == pj) {
                ++e;
                gd = 0;
                gj = 0;
                break;
            }
            if (is_prime(gd, gj)) break;
            const Link& GL = links_[gd][gj];
            if (GL.spf_deg == pd && GL.spf_idx == pj) {
                ++e;
                gd -= pd;
                gj = GL.quot_idx;
            } else {
                break;
            }
        }
        d1[j] = (e + 1) * d1_[gd][gj];
        d2[j] = (2 * e + 1) * d2_[gd][gj];
    }
}

const std::vector<uint32_t>& DegreeSieve::divisor_counts(int n) const { return d1_[n]; }
const std::vector<uint32_t>& DegreeSieve::divisor_counts_square(int n) const { return d2_[n]; }

}  // namespace ffl
