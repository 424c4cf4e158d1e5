#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ffl/gf.hpp"
#include "ffl/value.hpp"

namespace ffl {

/// Dense polynomial over GF(q), coefficients as canonical element indices,
/// low degree first, no trailing zeros.  The zero polynomial is the empty
/// vector.  norm(f) = q^deg(f), sgn(f) = leading coefficient.
struct Poly {
    const FieldSpec* F = nullptr;
    std::vector<uint32_t> c;

    bool is_zero() const { return c.empty(); }
    int deg() const {
        if (c.empty()) throw domain_error("degree of the zero polynomial");
        return (int)c.size() - 1;
    }
    uint32_t sgn() const {
        if (c.empty()) throw domain_error("sign of the zero polynomial");
        return c.back();
    }
    bool is_monic() const { return !c.empty() && c.back() == FieldElement(1, F).idx; }
    bool is_one() const { return c.size() == 1 && c[0] == 1; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.F == b.F && a.c == b.c; }
    friend bool operator<(const Poly& a, const Poly& b) {
        if (a.c.size() != b.c.size()) return a.c.size() < b.c.size();
        return std::lexicographical_compare(a.c.rbegin(), a.c.rend(), b.c.rbegin(), b.c.rend());
    }
};

Poly poly_zero(const FieldSpec* F);
Poly poly_one(const FieldSpec* F);
Poly poly_T(const FieldSpec* F);
Poly poly_const(const FieldSpec* F, uint32_t elt);
/// Builds from low-first coefficient indices, trimming trailing zeros.
Poly make_poly(const FieldSpec* F, std::vector<uint32_t> coeffs);

Int poly_norm(const Poly& f);  // q^deg(f); 0 for the zero polynomial

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator-(const Poly& a);
Poly scale(const Poly& a, uint32_t elt);

/// Euclidean division: f = q*g + r with r = 0 or deg r < deg g.
std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g);
Poly pmod(const Poly& f, const Poly& g);
bool divides(const Poly& d, const Poly& f);
/// Monic gcd; gcd(f, 0) = monic(f).
Poly gcd(Poly a, Poly b);
Poly derivative(const Poly& f);
uint32_t eval(const Poly& f, uint32_t point);

/// Splits f = unit * monic(f).
std::pair<uint32_t, Poly> make_monic(const Poly& f);

Poly mulmod(const Poly& a, const Poly& b, const Poly& m);
Poly powmod(const Poly& base, uint64_t e, const Poly& m);
/// X^(q^j) mod m via repeated q-th powering.
Poly frobenius_power(const Poly& m, uint32_t j);

/// Rabin's criterion: f divides X^(q^n)-X and gcd(X^(q^(n/l))-X, f) = 1 for
/// every prime l | n.  f must be monic of degree >= 1.
bool is_irreducible(const Poly& f);

struct Factorization {
    const FieldSpec* F = nullptr;
    uint32_t unit = 1;
    std::vector<std::pair<Poly, uint32_t>> factors;  // monic primes, ascending, exponents >= 1
};

/// Unique factorization; deterministic (distinct-degree splitting with
/// exhaustive search inside a degree).
Factorization factor(const Poly& f);
Poly recompose(const Factorization& fac);

uint64_t divisor_count(const Poly& f);         // d(f), counts monic divisors
uint64_t divisor_count_square(const Poly& f);  // d(f^2)
bool is_squarefree(const Poly& f);
bool is_perfect_square(const Poly& f);
/// Monic square root of a perfect square (factor exponents halved).
Poly poly_sqrt(const Poly& f);

// --- enumeration ---------------------------------------------------------

/// Number of monic polynomials of degree n (q^n); throws on uint64 overflow.
uint64_t monic_count(uint32_t q, int n);
/// The monic polynomial of degree n at position idx in canonical order
/// (coefficient tuple read as a base-q integer, constant term least
/// significant).
Poly monic_by_index(const FieldSpec* F, int n, uint64_t idx);
/// General polynomial of degree < width, coefficients the base-q digits of
/// idx; idx = 0 gives the zero polynomial.
Poly poly_from_dense_index(const FieldSpec* F, int width, uint64_t idx);
uint64_t monic_index(const Poly& f);
/// Visits all monic polynomials of degree n in canonical order.  The Poly
/// reference stays owned by the loop; copy it to keep it.
void for_each_monic(const FieldSpec* F, int n, const std::function<void(const Poly&)>& fn);

/// Exact count of monic irreducibles of degree n: (1/n) sum_{d|n} mu(d) q^{n/d}.
Int prime_count(uint32_t q, int n);
/// The Prime Polynomial Theorem main term q^n / n, for reports.
Rat prime_count_main_term(uint32_t q, int n);
/// All monic irreducibles of degree n in canonical order.
std::vector<Poly> primes_of_degree(const FieldSpec* F, int n);

// --- divisor-function sums ------------------------------------------------

/// rho_n = sum over monic f of degree n of d(f^2), exact closed form
/// { 1 + (3+1/q) n/2 + (1-1/q) n^2/2 } q^n.
Int rho(uint32_t q, int n);
/// Same sum restricted to f coprime to a fixed prime of degree r; depends
/// only on r: rho_n - 3 rho_{n-r} + 4 sum_{l>=2} (-1)^l rho_{n-lr}.
Int rho_star(uint32_t q, int n, int r);

// --- text form -------------------------------------------------------------

/// "c0,c1,...,cn" low-first over canonical element indices; "0" for zero.
std::string poly_str(const Poly& f);
Poly parse_poly(const FieldSpec* F, const std::string& text);
/// Human-oriented rendering like "T^3+2*T+1" for logs.
std::string poly_pretty(const Poly& f);

// --- factorization sieve ----------------------------------------------------

/// Smallest-prime-factor decomposition of every monic polynomial of degree
/// <= max_deg, built degree by degree.  Gives O(1) multiplicative extension
/// of character values and divisor counts over a whole degree block, which
/// is what the moment scans iterate over.  Immutable after construction and
/// shared across worker threads.
class DegreeSieve {
  public:
    DegreeSieve(const FieldSpec* F, int max_deg);

    const FieldSpec* field() const { return F_; }
    int max_deg() const { return max_deg_; }

    bool is_prime(int n, uint64_t idx) const { return n >= 1 && links_[n][idx].spf_deg == 0; }
    /// Canonical indices of the primes of degree n.
    const std::vector<uint32_t>& prime_indices(int n) const { return primes_[n]; }
    Poly poly_at(int n, uint64_t idx) const;

    struct Link {
        uint8_t spf_deg;  // 0 marks a prime (or the constant 1 at degree 0)
        uint32_t spf_idx;
        uint32_t quot_idx;
    };
    const Link& link(int n, uint64_t idx) const { return links_[n][idx]; }

    /// d(f) for every monic f of degree n (indexable by canonical index).
    const std::vector<uint32_t>& divisor_counts(int n) const;
    /// d(f^2), same layout.
    const std::vector<uint32_t>& divisor_counts_square(int n) const;

  private:
    const FieldSpec* F_;
    int max_deg_;
    std::vector<std::vector<Link>> links_;
    std::vector<std::vector<uint32_t>> primes_;
    mutable std::vector<std::vector<uint32_t>> d1_, d2_;  // built on first use
    void build_divisor_tables(int n) const;
};

}  // namespace ffl
