#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ffl/poly.hpp"

namespace ffl {

/// Behaviour of the infinite prime (1/T) in the quadratic extension.
enum class FieldType { RamifiedImaginary, Real, InertImaginary };

const char* field_type_name(FieldType t);

/// Odd characteristic: the character chi_D(f) = (D/f) for a square-free
/// non-constant D with sgn(D) in {1, gamma}.
struct OddCharSpec {
    Poly D;
    FieldType type;
    int genus;
    int l_degree;  // deg D - 1 = 2g + (1 for real/inert)

    static OddCharSpec make(Poly D);
};

/// Even characteristic: u = A/P + F in normalized form.  F = 0 gives a real
/// extension, F = xi an inert imaginary one, and F = alpha + sum a_i T^(2i-1)
/// (alpha in {0, xi}, top coefficient nonzero) a ramified imaginary one.
struct EvenCharSpec {
    Poly P;      // monic prime denominator
    Poly A;      // numerator, nonzero, deg A < deg P
    Poly Fpart;  // polynomial part: 0, xi, or an odd-part polynomial
    FieldType type;
    int genus;
    int l_degree;

    static EvenCharSpec make(Poly P, Poly A, Poly Fpart);
};

using CharSpec = std::variant<OddCharSpec, EvenCharSpec>;

const FieldSpec* char_field(const CharSpec& c);
FieldType char_type(const CharSpec& c);
int char_genus(const CharSpec& c);
int char_l_degree(const CharSpec& c);
std::string char_describe(const CharSpec& c);

struct Classification {
    FieldType type;
    int genus;
    int l_degree;
};
Classification classify(const CharSpec& c);

// --- odd-characteristic symbols ---------------------------------------------

/// (D/P) for monic prime P by the Euler criterion: D^((|P|-1)/2) mod P.
int residue_symbol_prime(const Poly& D, const Poly& P);
/// Kronecker symbol (D/f), extended multiplicatively over factor(f).
int kronecker(const Poly& D, const Poly& f);
/// Same value as kronecker on every input, computed by quadratic reciprocity
/// flips with sign extraction at each step.  The sign convention is pinned by
/// the exhaustive agreement test against the Euler route, not taken from the
/// literature.
int kronecker_fast(const Poly& D, const Poly& f);

// --- even-characteristic symbols ---------------------------------------------

/// Rational function u = num/den over GF(q).
struct RatFunc {
    Poly num, den;
};

/// Hasse symbol [u, P) in F_2: 0 iff X^2+X = u is solvable mod P.  Computed
/// as the absolute trace to F_2 of (u mod P) in the residue field A/P, via
/// log2|P| Frobenius squarings mod P.  u must be P-integral.
int hasse_symbol(const RatFunc& u, const Poly& P);
/// Quadratic symbol {u/N} = (-1)^[u,N), [u,N) = sum e_i [u,P_i); zero when
/// N shares a factor with the denominator of u.
int quad_symbol(const RatFunc& u, const Poly& N);
/// chi_u(f) = {u/f} for monic f.
int chi_even(const EvenCharSpec& u, const Poly& f);
RatFunc ratfunc_of(const EvenCharSpec& u);

// --- unified character evaluation -------------------------------------------

/// chi(P) for monic prime P (either characteristic).
int chi_prime(const CharSpec& c, const Poly& P);
/// chi(f) for monic f, multiplicative over factor(f).
int chi_value(const CharSpec& c, const Poly& f);

/// Coefficient sums A(n) = sum chi(f) and optionally B(n) = sum d(f) chi(f)
/// over monic f of degree n, for n <= n_max, evaluated through the sieve's
/// smallest-prime-factor links (one prime-symbol evaluation per prime, one
/// multiplication per composite).
struct CoeffSums {
    std::vector<long long> A;
    std::vector<long long> B;  // empty unless requested
};
CoeffSums coeff_sums(const CharSpec& c, const DegreeSieve& sieve, int n_max, bool with_B);

// --- families -----------------------------------------------------------------

enum class FamilyKind {
    POdd,        // odd q: D = P, deg P = 2g+1 (ramified imaginary)
    PEven,       // odd q: D = P, deg P = 2g+2 (real)
    GammaPEven,  // odd q: D = gamma*P, deg P = 2g+2 (inert imaginary)
    EvenH,       // even q: u = A/P + F, F in G_s (ramified imaginary, genus g)
    EvenF,       // even q: u = A/P, deg P = g+1 (real)
    EvenFPrime,  // even q: u = A/P + xi (inert imaginary)
};

FamilyKind parse_family(const std::string& name);
std::string family_name(FamilyKind k);
bool family_is_even_char(FamilyKind k);

/// Deterministic, duplicate-free stream of the family with genus g.
std::vector<CharSpec> enumerate_family(const FieldSpec* F, FamilyKind kind, int g);
/// Exact predicted size (structural count, no enumeration).
uint64_t family_size(const FieldSpec* F, FamilyKind kind, int g);

/// The set G_s of odd polynomial parts alpha + sum_{i<=s} a_i T^(2i-1),
/// alpha in {0, xi}, a_s != 0, in canonical order.
std::vector<Poly> enumerate_G(const FieldSpec* F, int s);

// --- character sums for the vanishing lemmas ---------------------------------

/// Gamma_{f,P} = sum over deg A < deg P (A = 0 included) of {(A/P)/f}.
long long gamma_sum(const Poly& f, const Poly& P);
/// T_{f,P}: same sum restricted to A != 0.
long long t_sum(const Poly& f, const Poly& P);
/// Gamma_{f,P,s} = sum over A and F in G_s of {(A/P + F)/f}.
long long gamma_sum_s(const Poly& f, const Poly& P, int s);

}  // namespace ffl
