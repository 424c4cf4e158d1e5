#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ffl/charsym.hpp"
#include "ffl/value.hpp"

namespace ffl {

/// Exact L-polynomial data for one quadratic character.
///
/// A(n) = sum over monic f of degree n of chi(f); the L-series is
/// sum A(n) z^n with z = q^{-s}, a polynomial of degree l_degree.
/// B(n) = sum d(f) chi(f) drives the squared-L identities.
/// Astar are the coefficients of the completed L-polynomial (degree 2g),
/// derived from A by the field-type dependent partial sums.
struct LData {
    CharSpec spec;
    FieldType type;
    int genus = 0;
    int l_degree = 0;
    std::vector<long long> A;      // indices 0..l_degree
    std::vector<long long> B;      // indices 0..2*l_degree; empty unless requested
    std::vector<long long> Astar;  // indices 0..2*genus

    const FieldSpec* field() const { return char_field(spec); }
    uint32_t q() const { return field()->q(); }
};

/// Computes A (and optionally B) by exact enumeration, derives Astar, and
/// asserts the construction invariants: A(0) = 1, vanishing of the two
/// coefficient sums beyond the polynomial degree, functional-equation
/// symmetry, and the trivial zero for real/inert types.
LData compute_ldata(const CharSpec& spec, bool with_B = false, const Budget& budget = Budget{});
/// Same, reusing a caller-owned sieve (must cover l_degree+2, and
/// 2*l_degree when with_B).
LData compute_ldata(const CharSpec& spec, bool with_B, const Budget& budget,
                    const DegreeSieve& sieve);

/// Exact value of L at s: rational s needs q^{-s} in Q (or a half-integer);
/// s = 1/2 lands in Q(q^{-1/2}).
HalfValue evaluate(const LData& L, const SPoint& s);

/// Coefficients of the completed polynomial L*, verified by multiplying the
/// trivial factor back: (1-z) L* = L for real, (1+z) L* = L for inert.
std::vector<long long> completed(const LData& L);

struct FEReport {
    bool pass = true;
    int first_violation = -1;  // coefficient index, when !pass
};
/// Coefficient form of the functional equation:
/// Astar(n) = Astar(2g-n) q^{n-g} for all n.
FEReport check_functional_equation(const LData& L);

/// Right-hand side of the exact truncated re-expression of L(s, chi) (three
/// field-type cases); equals evaluate(L, s) identically.
HalfValue approx_fe_first(const LData& L, const SPoint& s);
/// Same for L(1/2, chi)^2 in terms of the B coefficients.
HalfValue approx_fe_second(const LData& L);

/// Independent point-counting route (odd q): counts points of y^2 = D(T)
/// over GF(q^n) for n <= 2g on the smooth model and reconstructs the
/// numerator of the zeta function by Newton's identities.
struct CurveZeta {
    Poly D;
    int genus = 0;
    std::vector<long long> point_counts;  // N_n, n = 1..2g
    std::vector<Int> l_coeffs;            // 0..2g
};
CurveZeta curve_zeta(const Poly& D);
/// Coefficientwise equality of the curve L-polynomial with completed(L).
bool check_L_equals_curve(const LData& L, const CurveZeta& Z);

/// Ideal class number data derived from the exact L(1).
/// Ramified: h = q^g L(1); inert: h = 2 q^{g+1} L(1) / (q+1); both checked
/// integral and positive.  Real extensions yield the product h*R instead:
/// q^{g+1} L(1) / (q-1), checked positive.
struct ClassNumber {
    FieldType type;
    bool is_real = false;
    Int h;     // valid unless is_real
    Rat h_r;   // valid when is_real
};
ClassNumber class_number(const LData& L);
/// Same computation from a separately obtained exact L(1); both
/// characteristics share the shape h = q^g L(1) (ramified),
/// h R = q^{g+1} L(1)/(q-1) (real), h = 2 q^{g+1} L(1)/(q+1) (inert).
ClassNumber class_number_from_L1(FieldType type, uint32_t q, int genus, const Rat& L1);

/// Order of the second K-group of the maximal order, from the exact L(2).
/// Odd characteristic only; integrality and positivity asserted.
Int k2_order(const LData& L);
Int k2_from_L2(FieldType type, uint32_t q, int genus, const Rat& L2);

/// Deterministic JSON dump, integers as decimal strings.
std::string ldata_json(const LData& L);

}  // namespace ffl
