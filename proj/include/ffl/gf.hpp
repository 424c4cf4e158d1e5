#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ffl/errors.hpp"

namespace ffl {

/// Exact arithmetic in GF(p^k), p prime (p = 2 allowed), q = p^k <= 2^20.
///
/// Elements are handled through their canonical index: the coefficient tuple
/// (c_0,...,c_{k-1}) over GF(p), c_0 least significant, read as a base-p
/// integer.  Index 0 is the zero element; for k = 1 the index is the residue
/// itself.  This fixes one enumeration order for the whole program, which is
/// what makes generator/xi selection and every report reproducible.
///
/// Specs are interned: get() returns a pointer that stays valid for the
/// lifetime of the process, so Poly and character types can hold raw
/// pointers and remain freely copyable.  A constructed spec is immutable and
/// safe to share across threads.
class FieldSpec {
  public:
    /// Field with the default modulus: the enumeration-least monic
    /// irreducible of degree k over GF(p).
    static const FieldSpec* get(uint32_t p, uint32_t k);
    /// Field with an explicit monic irreducible modulus, given low-first as
    /// k+1 residues mod p.
    static const FieldSpec* get(uint32_t p, uint32_t k, const std::vector<uint32_t>& modulus);
    /// Parse "q" or "p^k" (e.g. "9" or "3^2"), optionally with a modulus.
    static const FieldSpec* parse(const std::string& text,
                                  const std::string& modulus_csv = "");

    uint32_t p() const { return p_; }
    uint32_t k() const { return k_; }
    uint32_t q() const { return q_; }
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    // Element arithmetic on canonical indices.
    uint32_t add(uint32_t a, uint32_t b) const;
    uint32_t sub(uint32_t a, uint32_t b) const;
    uint32_t neg(uint32_t a) const;
    uint32_t mul(uint32_t a, uint32_t b) const;
    uint32_t inv(uint32_t a) const;
    uint32_t pow(uint32_t a, uint64_t e) const;

    /// Embeds a GF(p) residue as the constant element.
    uint32_t from_residue(uint32_t r) const { return r % p_; }

    /// Least element of multiplicative order q-1 in canonical order.
    uint32_t generator() const { return generator_; }

    /// Euler criterion; a = 0 counts as a square.  Odd characteristic only.
    bool is_square(uint32_t a) const;
    /// Legendre-type value in {-1,0,+1} of a under the quadratic character
    /// of GF(q)^x.  Odd characteristic only.
    int quadratic_character(uint32_t a) const;

    /// Absolute trace to F_2: sum of a^(2^i), i < log2(q).  Returns 0 or 1.
    /// Characteristic 2 only; 0 iff X^2+X = a is solvable in GF(q).
    int trace_to_f2(uint32_t a) const;
    /// Least element outside the Artin-Schreier image x^2+x (trace 1).
    uint32_t xi() const;

    std::string describe() const;  // "p^k" form

  private:
    FieldSpec(uint32_t p, uint32_t k, std::vector<uint32_t> modulus);
    uint32_t mul_generic(uint32_t a, uint32_t b) const;

    uint32_t p_, k_, q_;
    std::vector<uint32_t> modulus_;   // k+1 residues, monic
    std::vector<uint32_t> pow_p_;     // p^i for digit packing
    std::vector<uint32_t> mul_table_; // q*q when q <= kTableLimit
    std::vector<uint32_t> add_table_;
    std::vector<uint32_t> inv_table_;
    uint32_t generator_ = 0;
    uint32_t xi_ = 0;  // char 2 only

    static constexpr uint32_t kTableLimit = 1024;
};

/// Value-type wrapper pairing an index with its field.  Mixing specs in one
/// operation is a usage error.
struct FieldElement {
    uint32_t idx = 0;
    const FieldSpec* F = nullptr;

    FieldElement() = default;
    FieldElement(uint32_t i, const FieldSpec* f) : idx(i), F(f) {}

    bool is_zero() const { return idx == 0; }

    friend FieldElement operator+(FieldElement a, FieldElement b) {
        check(a, b);
        return {a.F->add(a.idx, b.idx), a.F};
    }
    friend FieldElement operator-(FieldElement a, FieldElement b) {
        check(a, b);
        return {a.F->sub(a.idx, b.idx), a.F};
    }
    friend FieldElement operator*(FieldElement a, FieldElement b) {
        check(a, b);
        return {a.F->mul(a.idx, b.idx), a.F};
    }
    friend FieldElement operator-(FieldElement a) { return {a.F->neg(a.idx), a.F}; }
    friend bool operator==(FieldElement a, FieldElement b) {
        check(a, b);
        return a.idx == b.idx;
    }
    FieldElement invert() const { return {F->inv(idx), F}; }
    FieldElement pow(uint64_t e) const { return {F->pow(idx, e), F}; }

  private:
    static void check(FieldElement a, FieldElement b) {
        if (a.F != b.F) throw usage_error("field elements from different specs");
    }
};

inline FieldElement generator(const FieldSpec* F) { return {F->generator(), F}; }
inline int absolute_trace_to_F2(FieldElement a) { return a.F->trace_to_f2(a.idx); }
inline FieldElement xi(const FieldSpec* F) { return {F->xi(), F}; }

}  // namespace ffl
