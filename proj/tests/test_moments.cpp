#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ffl/moments.hpp"
#include "ffl/verify.hpp"

using namespace ffl;

namespace {
const FieldSpec* F2() { return FieldSpec::get(2, 1); }
const FieldSpec* F3() { return FieldSpec::get(3, 1); }
}  // namespace

TEST_CASE("first moment agrees with the full L-data route") {
    for (FamilyKind kind : {FamilyKind::POdd, FamilyKind::PEven, FamilyKind::GammaPEven}) {
        for (const SPoint& s :
             {SPoint::half_point(), SPoint::integer(1), SPoint::integer(2)}) {
            MomentRow row = first_moment(F3(), kind, 1, s);
            HalfValue direct = HalfValue::zero(3);
            for (const auto& spec : enumerate_family(F3(), kind, 1))
                direct += evaluate(compute_ldata(spec), s);
            CHECK(row.empirical == direct);
            CHECK(row.residual == row.empirical - row.main);
        }
    }
    for (FamilyKind kind : {FamilyKind::EvenH, FamilyKind::EvenF, FamilyKind::EvenFPrime}) {
        MomentRow row = first_moment(F2(), kind, 2, SPoint::half_point());
        HalfValue direct = HalfValue::zero(2);
        for (const auto& spec : enumerate_family(F2(), kind, 2))
            direct += evaluate(compute_ldata(spec), SPoint::half_point());
        CHECK(row.empirical == direct);
    }
}

TEST_CASE("second moment agrees with the full L-data route") {
    for (FamilyKind kind : {FamilyKind::PEven, FamilyKind::GammaPEven}) {
        MomentRow row = second_moment(F3(), kind, 1);
        HalfValue direct = HalfValue::zero(3);
        for (const auto& spec : enumerate_family(F3(), kind, 1)) {
            HalfValue v = evaluate(compute_ldata(spec), SPoint::half_point());
            direct += v * v;
        }
        CHECK(row.empirical == direct);
    }
    MomentRow row = second_moment(F2(), FamilyKind::EvenH, 2);
    HalfValue direct = HalfValue::zero(2);
    for (const auto& spec : enumerate_family(F2(), FamilyKind::EvenH, 2)) {
        HalfValue v = evaluate(compute_ldata(spec), SPoint::half_point());
        direct += v * v;
    }
    CHECK(row.empirical == direct);
}

TEST_CASE("main terms match the printed formulas") {
    // family of odd-degree primes at s = 1: zeta_A(2) q^{2g+1}/(2g+1)
    MomentRow row = first_moment(F3(), FamilyKind::POdd, 1, SPoint::integer(1));
    CHECK(row.main == HalfValue::rational(Rat(3, 2) * 27 / 3, 3));
    // second-moment main for the even-degree prime family
    MomentRow sm = second_moment(F3(), FamilyKind::PEven, 1);
    CHECK(sm.main == HalfValue::rational(Rat(2, 3) * 81 * 16 / 24, 3));
    // even characteristic, family H: (2/(3 zeta_A(2))) g^2 q^{2g+1}
    MomentRow esm = second_moment(F2(), FamilyKind::EvenH, 2);
    CHECK(esm.main == HalfValue::rational(Rat(1, 2) * Rat(2, 3) * 4 * 32, 2));
}

TEST_CASE("ensemble expectations and predictions") {
    MomentRow row = first_moment(F2(), FamilyKind::EvenH, 2, SPoint::half_point());
    CHECK(ensemble_expectation(row) ==
          row.empirical / HalfValue::rational(Rat((unsigned long)row.size), 2));
    CHECK(ensemble_prediction(F2(), FamilyKind::EvenH, 2, SPoint::half_point(), 1) ==
          HalfValue::rational(3, 2));
    CHECK(ensemble_prediction(F2(), FamilyKind::EvenF, 2, SPoint::half_point(), 2) ==
          HalfValue::rational(Rat(27) / (3 * 2), 2));
}

TEST_CASE("nonvanishing counts and the Cauchy-Schwarz floor") {
    for (FamilyKind kind : {FamilyKind::PEven, FamilyKind::POdd}) {
        Nonvanishing nv = nonvanishing_count(F3(), kind, 1);
        CHECK(nv.cauchy_schwarz_ok);
        uint64_t zeros = 0;
        for (const auto& spec : enumerate_family(F3(), kind, 1))
            if (evaluate(compute_ldata(spec), SPoint::half_point()).is_zero()) ++zeros;
        CHECK(nv.count == nv.size - zeros);
    }
    Nonvanishing nv = nonvanishing_count(F2(), FamilyKind::EvenF, 1);
    CHECK(nv.cauchy_schwarz_ok);
    CHECK(nv.size == 3);
}

TEST_CASE("class-number aggregates match the per-member route") {
    MomentRow row = aggregate_class_numbers(F3(), FamilyKind::POdd, 1);
    Rat direct = 0;
    for (const auto& spec : enumerate_family(F3(), FamilyKind::POdd, 1)) {
        auto cn = class_number(compute_ldata(spec));
        direct += Rat(cn.h);
    }
    CHECK(row.empirical == HalfValue::rational(direct, 3));
    CHECK(row.size == 8);

    // real family accumulates h*R
    MomentRow hr = aggregate_class_numbers(F3(), FamilyKind::PEven, 1);
    Rat direct_hr = 0;
    for (const auto& spec : enumerate_family(F3(), FamilyKind::PEven, 1))
        direct_hr += class_number(compute_ldata(spec)).h_r;
    CHECK(hr.empirical == HalfValue::rational(direct_hr, 3));

    MomentRow eh = aggregate_class_numbers(F2(), FamilyKind::EvenH, 2);
    Rat direct_h = 0;
    for (const auto& spec : enumerate_family(F2(), FamilyKind::EvenH, 2))
        direct_h += Rat(class_number(compute_ldata(spec)).h);
    CHECK(eh.empirical == HalfValue::rational(direct_h, 2));
}

TEST_CASE("K2 aggregates") {
    MomentRow row = aggregate_k2(F3(), FamilyKind::POdd, 1);
    Rat direct = 0;
    for (const auto& spec : enumerate_family(F3(), FamilyKind::POdd, 1))
        direct += Rat(k2_order(compute_ldata(spec)));
    CHECK(row.empirical == HalfValue::rational(direct, 3));
    CHECK_THROWS_AS(aggregate_k2(F2(), FamilyKind::EvenH, 1), usage_error);
}

TEST_CASE("square-contribution oracle") {
    for (FamilyKind kind : {FamilyKind::POdd, FamilyKind::PEven, FamilyKind::GammaPEven})
        for (int g = 1; g <= 2; ++g)
            for (const SPoint& s :
                 {SPoint::half_point(), SPoint::integer(1), SPoint::integer(2)}) {
                auto oracle = square_contribution_oracle(F3(), kind, g, s);
                CHECK(oracle.equal);
            }
    for (FamilyKind kind : {FamilyKind::EvenH, FamilyKind::EvenF, FamilyKind::EvenFPrime})
        for (int g = 1; g <= 3; ++g)
            for (const SPoint& s :
                 {SPoint::half_point(), SPoint::integer(1), SPoint::integer(2)}) {
                auto oracle = square_contribution_oracle(F2(), kind, g, s);
                CHECK(oracle.equal);
            }
}

TEST_CASE("residual stays inside the calibrated error scale") {
    // family of odd-degree primes at s=1: |residual| <= 5 q^{(2g+1)/2} (2g+1)
    for (int g = 1; g <= 2; ++g) {
        MomentRow row = first_moment(F3(), FamilyKind::POdd, g, SPoint::integer(1));
        REQUIRE(row.residual.is_rational());
        Rat r = row.residual.x();
        CHECK(r * r <= Rat(25) * rat_qpow(3, 2 * g + 1) * (2 * g + 1) * (2 * g + 1));
    }
}

TEST_CASE("worker count does not change a single byte") {
    for (int workers : {1, 2, 4}) {
        RunOpts opts;
        opts.workers = workers;
        std::vector<MomentRow> rows;
        rows.push_back(first_moment(F3(), FamilyKind::POdd, 2, SPoint::half_point(), opts));
        rows.push_back(second_moment(F2(), FamilyKind::EvenH, 2, opts));
        rows.push_back(aggregate_class_numbers(F3(), FamilyKind::PEven, 1, opts));
        static std::string reference;
        std::string csv = rows_csv(rows);
        if (workers == 1)
            reference = csv;
        else
            CHECK(csv == reference);
    }
}

TEST_CASE("budget refusal carries a cost estimate") {
    RunOpts opts;
    opts.budget.max_term_evals = 100;
    try {
        first_moment(F3(), FamilyKind::POdd, 2, SPoint::half_point(), opts);
        FAIL("expected budget_error");
    } catch (const budget_error& e) {
        CHECK(e.estimated_cost > e.budget_cap);
    }
}

TEST_CASE("csv and json rendering") {
    MomentRow row = first_moment(F3(), FamilyKind::POdd, 1, SPoint::half_point());
    std::string csv = rows_csv({row});
    CHECK(csv.find("family,q,g,s,order,size,empirical,main,residual,ratio,seconds") == 0);
    CHECK(csv.find("P-odd,3,1,half,1,8,") != std::string::npos);
    std::string js = rows_json({row});
    CHECK(js.find("\"family\": \"P-odd\"") != std::string::npos);
}
