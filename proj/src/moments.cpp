#include "ffl/moments.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <thread>

namespace ffl {

namespace {

using mainterm::zetaA;

uint64_t degree_block_cost(uint32_t q, int n_max) {
    uint64_t total = 0;
    for (int n = 0; n <= n_max; ++n) total += monic_count(q, n);
    return total;
}

HalfValue hv(uint32_t q, const Rat& r) { return HalfValue::rational(r, q); }

/// Deterministic parallel reduction: worker w owns member indices congruent
/// to w mod workers; exact partial sums are merged in worker order.  The
/// result is bit-identical for every worker count.
template <typename Accum, typename PerMember>
Accum scan_members(const std::vector<CharSpec>& members, int workers, Accum init,
                   PerMember per_member) {
    if (workers < 1) workers = 1;
    std::vector<Accum> partial((size_t)workers, init);
    auto run = [&](int w) {
        for (size_t i = (size_t)w; i < members.size(); i += (size_t)workers)
            per_member(partial[(size_t)w], members[i]);
    };
    if (workers == 1) {
        run(0);
        return partial[0];
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
    Accum total = init;
    for (const auto& p : partial) total.merge(p);
    return total;
}

struct SumAccum {
    HalfValue sum;
    void merge(const SumAccum& o) { sum += o.sum; }
};

struct NvAccum {
    HalfValue sum1, sum2;
    uint64_t nonzero = 0;
    void merge(const NvAccum& o) {
        sum1 += o.sum1;
        sum2 += o.sum2;
        nonzero += o.nonzero;
    }
};

double elapsed_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

MomentRow make_row(const FieldSpec* F, FamilyKind kind, int g, const std::string& s_label,
                   int order, uint64_t size, HalfValue empirical, HalfValue main,
                   double seconds) {
    MomentRow row;
    row.family = family_name(kind);
    row.q = F->q();
    row.g = g;
    row.s_label = s_label;
    row.order = order;
    row.size = size;
    row.empirical = empirical;
    row.main = main;
    row.residual = empirical - main;
    row.ratio = main.to_double() != 0 ? empirical.to_double() / main.to_double() : 0.0;
    row.seconds = seconds;
    return row;
}

Rat exact_L1(const CharSpec& spec, const DegreeSieve& sieve) {
    HalfValue v = member_L(spec, SPoint::integer(1), sieve);
    if (!v.is_rational()) throw integrity_error("L(1) is not rational");
    return v.x();
}

}  // namespace

HalfValue member_L(const CharSpec& spec, const SPoint& s, const DegreeSieve& sieve) {
    auto cls = classify(spec);
    CoeffSums sums = coeff_sums(spec, sieve, cls.genus, false);
    LData shim;
    shim.spec = spec;
    shim.type = cls.type;
    shim.genus = cls.genus;
    shim.l_degree = cls.l_degree;
    shim.A = std::move(sums.A);
    return approx_fe_first(shim, s);
}

HalfValue member_L_half_squared(const CharSpec& spec, const DegreeSieve& sieve) {
    auto cls = classify(spec);
    CoeffSums sums = coeff_sums(spec, sieve, 2 * cls.genus, true);
    LData shim;
    shim.spec = spec;
    shim.type = cls.type;
    shim.genus = cls.genus;
    shim.l_degree = cls.l_degree;
    shim.A = std::move(sums.A);
    shim.B = std::move(sums.B);
    return approx_fe_second(shim);
}

HalfValue main_term_first(const FieldSpec* F, FamilyKind kind, int g, const SPoint& s) {
    uint32_t q = F->q();
    switch (kind) {
        case FamilyKind::POdd:
            return mainterm::I(q, g, s) * hv(q, rat_qpow(q, 2 * g + 1) / (2 * g + 1));
        case FamilyKind::PEven:
            return mainterm::J(q, g, s) * hv(q, rat_qpow(q, 2 * g + 2) / (2 * g + 2));
        case FamilyKind::GammaPEven:
            return mainterm::K(q, g, s) * hv(q, rat_qpow(q, 2 * g + 2) / (2 * g + 2));
        case FamilyKind::EvenH:
            return mainterm::Itilde(q, g, s) * hv(q, 2 * rat_qpow(q, 2 * g + 1) / g);
        case FamilyKind::EvenF:
            return mainterm::Jtilde(q, g, s) * hv(q, rat_qpow(q, 2 * g + 2) / (g + 1));
        case FamilyKind::EvenFPrime:
            return mainterm::Ktilde(q, g, s) * hv(q, rat_qpow(q, 2 * g + 2) / (g + 1));
    }
    throw integrity_error("unreachable");
}

HalfValue main_term_second(const FieldSpec* F, FamilyKind kind, int g) {
    uint32_t q = F->q();
    HalfValue z2inv = zetaA(q, 2).inverse();
    switch (kind) {
        case FamilyKind::POdd:  // odd-degree prime family (known first: AK)
            return z2inv * hv(q, rat_qpow(q, 2 * g + 1) * (2 * g + 1) * (2 * g + 1) / 24);
        case FamilyKind::PEven:
        case FamilyKind::GammaPEven:
            return z2inv * hv(q, rat_qpow(q, 2 * g + 2) * (2 * g + 2) * (2 * g + 2) / 24);
        case FamilyKind::EvenH:
            return z2inv * hv(q, Rat(2) * g * g * rat_qpow(q, 2 * g + 1) / 3);
        case FamilyKind::EvenF:
        case FamilyKind::EvenFPrime:
            return z2inv * hv(q, rat_qpow(q, 2 * g + 2) * (g + 1) * (g + 1) / 3);
    }
    throw integrity_error("unreachable");
}

MomentRow first_moment(const FieldSpec* F, FamilyKind kind, int g, const SPoint& s,
                       const RunOpts& opts) {
    auto t0 = std::chrono::steady_clock::now();
    auto members = enumerate_family(F, kind, g);
    uint64_t expected = family_size(F, kind, g);
    if (members.size() != expected) throw integrity_error("family size mismatch");
    opts.budget.charge(members.size() * degree_block_cost(F->q(), g), "first_moment");

    DegreeSieve sieve(F, g);
    auto acc = scan_members(
        members, opts.workers, SumAccum{HalfValue::zero(F->q())},
        [&](SumAccum& a, const CharSpec& c) { a.sum += member_L(c, s, sieve); });
    HalfValue main = main_term_first(F, kind, g, s);
    return make_row(F, kind, g, s.label(), 1, members.size(), acc.sum, main,
                    opts.timings ? elapsed_since(t0) : 0.0);
}

MomentRow second_moment(const FieldSpec* F, FamilyKind kind, int g, const RunOpts& opts) {
    auto t0 = std::chrono::steady_clock::now();
    auto members = enumerate_family(F, kind, g);
    uint64_t expected = family_size(F, kind, g);
    if (members.size() != expected) throw integrity_error("family size mismatch");
    opts.budget.charge(members.size() * degree_block_cost(F->q(), 2 * g), "second_moment");

    DegreeSieve sieve(F, 2 * g);
    auto acc = scan_members(
        members, opts.workers, SumAccum{HalfValue::zero(F->q())},
        [&](SumAccum& a, const CharSpec& c) { a.sum += member_L_half_squared(c, sieve); });
    HalfValue main = main_term_second(F, kind, g);
    return make_row(F, kind, g, "half", 2, members.size(), acc.sum, main,
                    opts.timings ? elapsed_since(t0) : 0.0);
}

HalfValue ensemble_expectation(const MomentRow& row) {
    return row.empirical / HalfValue::rational(Rat((unsigned long)row.size), row.q);
}

HalfValue ensemble_prediction(const FieldSpec* F, FamilyKind kind, int g, const SPoint& s,
                              int order) {
    uint32_t q = F->q();
    if (order == 1) {
        switch (kind) {
            case FamilyKind::POdd: return mainterm::I(q, g, s);
            case FamilyKind::PEven: return mainterm::J(q, g, s);
            case FamilyKind::GammaPEven: return mainterm::K(q, g, s);
            case FamilyKind::EvenH: return mainterm::Itilde(q, g, s);
            case FamilyKind::EvenF: return mainterm::Jtilde(q, g, s);
            case FamilyKind::EvenFPrime: return mainterm::Ktilde(q, g, s);
        }
    }
    if (!s.half) throw usage_error("second-moment predictions are stated at s = 1/2");
    HalfValue z2inv = zetaA(q, 2).inverse();
    auto cube = [&](long n) { return hv(q, Rat(n) * n * n); };
    switch (kind) {
        case FamilyKind::POdd: return z2inv * cube(2 * g + 1) / hv(q, 24);
        case FamilyKind::PEven:
        case FamilyKind::GammaPEven: return z2inv * cube(2 * g + 2) / hv(q, 24);
        case FamilyKind::EvenH: return z2inv * cube(g) / hv(q, 3);
        case FamilyKind::EvenF:
        case FamilyKind::EvenFPrime: return z2inv * cube(g + 1) / hv(q, 3);
    }
    throw integrity_error("unreachable");
}

Nonvanishing nonvanishing_count(const FieldSpec* F, FamilyKind kind, int g,
                                const RunOpts& opts) {
    auto members = enumerate_family(F, kind, g);
    opts.budget.charge(members.size() * degree_block_cost(F->q(), g), "nonvanishing_count");
    DegreeSieve sieve(F, g);
    SPoint half = SPoint::half_point();
    auto acc = scan_members(members, opts.workers,
                            NvAccum{HalfValue::zero(F->q()), HalfValue::zero(F->q()), 0},
                            [&](NvAccum& a, const CharSpec& c) {
                                HalfValue v = member_L(c, half, sieve);
                                a.sum1 += v;
                                a.sum2 += v * v;
                                if (!v.is_zero()) ++a.nonzero;
                            });
    Nonvanishing out;
    out.count = acc.nonzero;
    out.size = members.size();
    out.first = acc.sum1;
    out.second = acc.sum2;
    HalfValue lhs = HalfValue::rational(Rat((unsigned long)out.count), F->q()) * acc.sum2;
    HalfValue diff = lhs - acc.sum1 * acc.sum1;
    out.cauchy_schwarz_ok = diff.sign() >= 0;
    return out;
}

MomentRow aggregate_class_numbers(const FieldSpec* F, FamilyKind kind, int g,
                                  const RunOpts& opts) {
    auto t0 = std::chrono::steady_clock::now();
    auto members = enumerate_family(F, kind, g);
    opts.budget.charge(members.size() * degree_block_cost(F->q(), g), "aggregate_class_numbers");
    DegreeSieve sieve(F, g);
    uint32_t q = F->q();

    auto acc = scan_members(members, opts.workers, SumAccum{HalfValue::zero(q)},
                            [&](SumAccum& a, const CharSpec& c) {
                                auto cls = classify(c);
                                auto cn = class_number_from_L1(cls.type, q, cls.genus,
                                                               exact_L1(c, sieve));
                                a.sum += hv(q, cn.is_real ? cn.h_r : Rat(cn.h));
                            });

    HalfValue main;
    switch (kind) {
        case FamilyKind::POdd:
            main = zetaA(q, 2) * hv(q, rat_qpow(q, 3 * g + 1) / (2 * g + 1));
            break;
        case FamilyKind::PEven:
            main = zetaA(q, 2) * zetaA(q, 2) * hv(q, rat_qpow(q, 3 * g + 2) / (2 * g + 2));
            break;
        case FamilyKind::GammaPEven:
            main = zetaA(q, 3) * hv(q, 2 * rat_qpow(q, 3 * g + 2) / (2 * g + 2));
            break;
        case FamilyKind::EvenH:
            main = zetaA(q, 2) * hv(q, 2 * rat_qpow(q, 3 * g + 1) / g);
            break;
        case FamilyKind::EvenF:
            main = zetaA(q, 2) * zetaA(q, 2) * hv(q, rat_qpow(q, 3 * g + 2) / (g + 1));
            break;
        case FamilyKind::EvenFPrime:
            main = zetaA(q, 3) * hv(q, 2 * rat_qpow(q, 3 * g + 2) / (g + 1));
            break;
    }
    return make_row(F, kind, g, "1", 1, members.size(), acc.sum, main,
                    opts.timings ? elapsed_since(t0) : 0.0);
}

MomentRow aggregate_k2(const FieldSpec* F, FamilyKind kind, int g, const RunOpts& opts) {
    if (family_is_even_char(kind))
        throw usage_error("K2 aggregates are defined for odd-characteristic families");
    auto t0 = std::chrono::steady_clock::now();
    auto members = enumerate_family(F, kind, g);
    opts.budget.charge(members.size() * degree_block_cost(F->q(), g), "aggregate_k2");
    DegreeSieve sieve(F, g);
    uint32_t q = F->q();
    auto zeta = [&](long s) -> Rat { return Rat(1) / (1 - rat_qpow(q, 1 - s)); };

    auto acc = scan_members(members, opts.workers, SumAccum{HalfValue::zero(q)},
                            [&](SumAccum& a, const CharSpec& c) {
                                HalfValue L2v = member_L(c, SPoint::integer(2), sieve);
                                if (!L2v.is_rational()) throw integrity_error("L(2) not rational");
                                auto cls = classify(c);
                                a.sum += hv(q, Rat(k2_from_L2(cls.type, q, cls.genus, L2v.x())));
                            });

    HalfValue main;
    switch (kind) {
        case FamilyKind::POdd:
            main = hv(q, zeta(4) * rat_qpow(q, 5 * g + 1) / (2 * g + 1));
            break;
        case FamilyKind::PEven:
            main = hv(q, zeta(3) * zeta(4) / zeta(2) * rat_qpow(q, 5 * g + 3) / (2 * g + 2));
            break;
        case FamilyKind::GammaPEven:
            main = hv(q, zeta(2) * zeta(4) * zeta(5) / (zeta(3) * zeta(3)) * rat_qpow(q, 5 * g + 3) /
                           (2 * g + 2));
            break;
        default:
            throw usage_error("K2 aggregates are defined for odd-characteristic families");
    }
    return make_row(F, kind, g, "2", 1, members.size(), acc.sum, main,
                    opts.timings ? elapsed_since(t0) : 0.0);
}

SquareOracle square_contribution_oracle(const FieldSpec* F, FamilyKind kind, int g,
                                        const SPoint& s) {
    uint32_t q = F->q();
    auto members = enumerate_family(F, kind, g);
    Rat sv = s.half ? Rat(1, 2) : s.s;

    // enumerated side: sum over members, squares f = L^2 with deg f <= g
    HalfValue brute = HalfValue::zero(q);
    for (const auto& c : members) {
        HalfValue inner = HalfValue::zero(q);
        for (int l = 0; 2 * l <= g; ++l) {
            long long cnt = 0;
            for_each_monic(F, l, [&](const Poly& L) {
                int v = chi_value(c, L);
                cnt += (long long)v * v;  // chi(L^2) = chi(L)^2
            });
            inner += hv(q, Rat((long)cnt)) * mainterm::qpow(q, -2 * sv * l);
        }
        brute += inner;
    }

    // collapsed side: A_g(s) * size, with the coprimality correction for H
    HalfValue closed = mainterm::Ag(q, g, s) *
                       hv(q, Rat((unsigned long)family_size(F, kind, g)));
    if (kind == FamilyKind::EvenH) {
        auto pi = [&](int n) { return prime_count(q, n).get_ui(); };
        for (int r = 1; 2 * r <= g; ++r) {
            uint64_t hr =
                pi(r) * (monic_count(q, r) - 1) * (2 * (uint64_t)(q - 1) * monic_count(q, g - r));
            HalfValue tail = HalfValue::zero(q);
            for (int l = r; 2 * l <= g; ++l) tail += mainterm::qpow(q, Rat(l) * (1 - 2 * sv));
            closed -= hv(q, Rat((unsigned long)hr) * rat_qpow(q, -r)) * tail;
        }
    }
    SquareOracle out;
    out.brute = brute;
    out.closed = closed;
    out.equal = brute == closed;
    return out;
}

std::string rows_csv(const std::vector<MomentRow>& rows) {
    std::string out = "family,q,g,s,order,size,empirical,main,residual,ratio,seconds\n";
    char buf[64];
    for (const auto& r : rows) {
        out += r.family + "," + std::to_string(r.q) + "," + std::to_string(r.g) + "," + r.s_label +
               "," + std::to_string(r.order) + "," + std::to_string(r.size) + "," +
               r.empirical.str() + "," + r.main.str() + "," + r.residual.str() + ",";
        std::snprintf(buf, sizeof buf, "%.6f", r.ratio);
        out += buf;
        std::snprintf(buf, sizeof buf, ",%.3f", r.seconds);
        out += buf;
        out += "\n";
    }
    return out;
}

std::string rows_json(const std::vector<MomentRow>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json j;
        j["family"] = r.family;
        j["q"] = r.q;
        j["g"] = r.g;
        j["s"] = r.s_label;
        j["order"] = r.order;
        j["size"] = r.size;
        j["empirical"] = r.empirical.str();
        j["main"] = r.main.str();
        j["residual"] = r.residual.str();
        j["ratio"] = r.ratio;
        j["seconds"] = r.seconds;
        arr.push_back(j);
    }
    return arr.dump(2);
}

}  // namespace ffl
