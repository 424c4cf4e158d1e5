#pragma once

#include <string>
#include <vector>

#include "ffl/lfunc.hpp"
#include "ffl/mainterm.hpp"

namespace ffl {

struct RunOpts {
    int workers = 1;
    Budget budget{};
    bool timings = false;  // when false the seconds column prints 0.000
};

/// One (family, genus, s) data point.  Empirical sums are exact; the ratio
/// is the only float.
struct MomentRow {
    std::string family;
    uint32_t q = 0;
    int g = 0;
    std::string s_label;
    int order = 1;
    uint64_t size = 0;
    HalfValue empirical;
    HalfValue main;
    HalfValue residual;
    double ratio = 0;
    double seconds = 0;
};

/// Exact L(s, chi) for one family member through the truncated functional
/// equation identity (needs only the coefficient sums up to the genus).
HalfValue member_L(const CharSpec& spec, const SPoint& s, const DegreeSieve& sieve);
/// Exact L(1/2, chi)^2 through the squared-L identity (B sums up to 2g).
HalfValue member_L_half_squared(const CharSpec& spec, const DegreeSieve& sieve);

MomentRow first_moment(const FieldSpec* F, FamilyKind kind, int g, const SPoint& s,
                       const RunOpts& opts = RunOpts{});
MomentRow second_moment(const FieldSpec* F, FamilyKind kind, int g,
                        const RunOpts& opts = RunOpts{});

/// The theorem's main term for the family (exact in Q(q^{-1/2})).
HalfValue main_term_first(const FieldSpec* F, FamilyKind kind, int g, const SPoint& s);
HalfValue main_term_second(const FieldSpec* F, FamilyKind kind, int g);

/// Empirical expectation: empirical sum divided by family size.
HalfValue ensemble_expectation(const MomentRow& row);
/// The ensemble corollary's asymptotic prediction for the expectation.
HalfValue ensemble_prediction(const FieldSpec* F, FamilyKind kind, int g, const SPoint& s,
                              int order);

struct Nonvanishing {
    uint64_t count = 0;  // members with L(1/2) != 0
    uint64_t size = 0;
    HalfValue first;     // sum of L(1/2)
    HalfValue second;    // sum of L(1/2)^2
    bool cauchy_schwarz_ok = false;  // count * second >= first^2, exactly
};
Nonvanishing nonvanishing_count(const FieldSpec* F, FamilyKind kind, int g,
                                const RunOpts& opts = RunOpts{});

/// Sum of class numbers h (ramified/inert families) or of h*R (real
/// families), with the corollary's main term.
MomentRow aggregate_class_numbers(const FieldSpec* F, FamilyKind kind, int g,
                                  const RunOpts& opts = RunOpts{});
/// Sum of #K2 orders (odd characteristic families only).
MomentRow aggregate_k2(const FieldSpec* F, FamilyKind kind, int g,
                       const RunOpts& opts = RunOpts{});

/// Both sides of the square-contribution identity: the enumerated sum
/// sum_{members} sum_{n<=g} q^{-sn} sum_{square f in A_n^+} chi(f) and its
/// exact algebraic collapse.  Equality is zero-tolerance.
struct SquareOracle {
    HalfValue brute;
    HalfValue closed;
    bool equal = false;
};
SquareOracle square_contribution_oracle(const FieldSpec* F, FamilyKind kind, int g,
                                        const SPoint& s);

/// CSV with the fixed column order
/// family,q,g,s,order,size,empirical,main,residual,ratio,seconds.
std::string rows_csv(const std::vector<MomentRow>& rows);
std::string rows_json(const std::vector<MomentRow>& rows);

}  // namespace ffl
