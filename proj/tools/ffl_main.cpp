// Command-line front end: field/family configuration, verification suites,
// moment tables, class-number and K2 listings.
//
// Exit codes: 0 success, 1 mathematical-identity failure, 2 usage error,
// 3 budget refusal.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "ffl/lfunc.hpp"
#include "ffl/moments.hpp"
#include "ffl/verify.hpp"

using namespace ffl;

namespace {

struct CommonOpts {
    std::string q_text = "3";
    std::string modulus;
    std::string format = "csv";
    std::string out_path;
    int workers = 1;
    uint64_t budget = Budget{}.max_term_evals;
    bool timings = false;
};

void add_field_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--q", o.q_text, "field size as q or p^k (e.g. 3, 3^2, 9)");
    cmd->add_option("--modulus", o.modulus,
                    "extension modulus, comma-separated GF(p) coefficients, low degree first");
}

void add_run_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--workers", o.workers, "worker threads (results are bit-identical)");
    cmd->add_option("--budget", o.budget, "max term evaluations before refusal");
    cmd->add_option("--format", o.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o.out_path, "write output to a file instead of stdout");
    cmd->add_flag("--timings", o.timings, "fill the seconds column with wall time");
}

RunOpts make_run_opts(const CommonOpts& o) {
    RunOpts r;
    r.workers = o.workers;
    r.budget.max_term_evals = o.budget;
    r.timings = o.timings;
    if (const char* env = std::getenv("FFL_WORKERS")) r.workers = std::atoi(env);
    if (const char* env = std::getenv("FFL_BUDGET")) r.budget.max_term_evals = std::strtoull(env, nullptr, 10);
    return r;
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw usage_error("cannot open output file: " + o.out_path);
    f << text;
}

std::vector<int> parse_g_range(const std::string& text) {
    auto dots = text.find("..");
    try {
        if (dots == std::string::npos) return {std::stoi(text)};
        int lo = std::stoi(text.substr(0, dots));
        int hi = std::stoi(text.substr(dots + 2));
        if (lo < 1 || hi < lo) throw usage_error("bad genus range: " + text);
        std::vector<int> out;
        for (int g = lo; g <= hi; ++g) out.push_back(g);
        return out;
    } catch (const std::logic_error&) {
        throw usage_error("cannot parse genus range: " + text);
    }
}

int cmd_primes(const CommonOpts& o, int n, bool list) {
    const FieldSpec* F = FieldSpec::parse(o.q_text, o.modulus);
    Int count = prime_count(F->q(), n);
    if (o.format == "json") {
        nlohmann::ordered_json j;
        j["q"] = F->q();
        j["n"] = n;
        j["count"] = count.get_str();
        j["main_term"] = rat_str(prime_count_main_term(F->q(), n));
        if (list) {
            auto arr = nlohmann::ordered_json::array();
            for (const Poly& P : primes_of_degree(F, n)) arr.push_back(poly_str(P));
            j["primes"] = arr;
        }
        emit(o, j.dump(2) + "\n");
    } else {
        std::string out = "q,n,count,main_term\n" + std::to_string(F->q()) + "," +
                          std::to_string(n) + "," + count.get_str() + "," +
                          rat_str(prime_count_main_term(F->q(), n)) + "\n";
        if (list)
            for (const Poly& P : primes_of_degree(F, n)) out += poly_str(P) + "\n";
        emit(o, out);
    }
    return 0;
}

int cmd_lpoly(const CommonOpts& o, const std::string& d_text, const std::string& p_text,
              const std::string& a_text, const std::string& f_text, bool with_b, bool verify) {
    const FieldSpec* F = FieldSpec::parse(o.q_text, o.modulus);
    CharSpec spec = [&]() -> CharSpec {
        if (!d_text.empty()) {
            if (F->p() == 2) throw usage_error("--D needs odd characteristic; use --P/--A/--F");
            return OddCharSpec::make(parse_poly(F, d_text));
        }
        if (p_text.empty()) throw usage_error("give either --D or --P with --A and --F");
        return EvenCharSpec::make(parse_poly(F, p_text), parse_poly(F, a_text),
                                  parse_poly(F, f_text));
    }();
    Budget budget;
    budget.max_term_evals = o.budget;
    LData L = compute_ldata(spec, with_b || verify, budget);
    bool ok = true;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    if (verify) {
        auto record = [&](const std::string& name, bool pass) {
            ok = ok && pass;
            nlohmann::ordered_json j;
            j["check"] = name;
            j["pass"] = pass;
            checks.push_back(j);
        };
        record("functional-equation", check_functional_equation(L).pass);
        for (const SPoint& s : {SPoint::half_point(), SPoint::integer(1), SPoint::integer(2)})
            record("truncated-identity s=" + s.label(),
                   approx_fe_first(L, s) == evaluate(L, s));
        HalfValue half = evaluate(L, SPoint::half_point());
        record("squared-identity", approx_fe_second(L) == half * half);
        if (F->p() != 2)
            record("curve-point-counts",
                   check_L_equals_curve(L, curve_zeta(std::get<OddCharSpec>(spec).D)));
    }
    auto j = nlohmann::ordered_json::parse(ldata_json(L));
    if (verify) j["checks"] = checks;
    emit(o, j.dump(2) + "\n");
    return ok ? 0 : 1;
}

int cmd_moments(const CommonOpts& o, const std::string& family, const std::string& g_text,
                const std::string& s_text, int order, bool approx_main) {
    const FieldSpec* F = FieldSpec::parse(o.q_text, o.modulus);
    FamilyKind kind = parse_family(family);
    auto gs = parse_g_range(g_text);
    RunOpts opts = make_run_opts(o);

    if (approx_main) {
        // float main terms for s off the exact grid; no empirical column
        double s = s_text == "half" ? 0.5 : std::stod(s_text);
        std::string out = "family,q,g,s,main_approx_float\n";
        for (int g : gs) {
            double v = 0;
            switch (kind) {
                case FamilyKind::POdd:
                    v = mainterm::I_approx(F->q(), g, s) * std::pow((double)F->q(), 2 * g + 1) /
                        (2 * g + 1);
                    break;
                case FamilyKind::PEven:
                    v = mainterm::J_approx(F->q(), g, s) * std::pow((double)F->q(), 2 * g + 2) /
                        (2 * g + 2);
                    break;
                case FamilyKind::GammaPEven:
                    v = mainterm::K_approx(F->q(), g, s) * std::pow((double)F->q(), 2 * g + 2) /
                        (2 * g + 2);
                    break;
                case FamilyKind::EvenH:
                    v = 2 * mainterm::Itilde_approx(F->q(), g, s) *
                        std::pow((double)F->q(), 2 * g + 1) / g;
                    break;
                case FamilyKind::EvenF:
                    v = mainterm::Jtilde_approx(F->q(), g, s) *
                        std::pow((double)F->q(), 2 * g + 2) / (g + 1);
                    break;
                case FamilyKind::EvenFPrime:
                    v = mainterm::Ktilde_approx(F->q(), g, s) *
                        std::pow((double)F->q(), 2 * g + 2) / (g + 1);
                    break;
            }
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.10g", v);
            out += family + "," + std::to_string(F->q()) + "," + std::to_string(g) + "," + s_text +
                   "," + buf + "\n";
        }
        emit(o, out);
        return 0;
    }

    std::vector<MomentRow> rows;
    for (int g : gs) {
        if (order == 1)
            rows.push_back(first_moment(F, kind, g, SPoint::parse(s_text), opts));
        else
            rows.push_back(second_moment(F, kind, g, opts));
    }
    emit(o, o.format == "json" ? rows_json(rows) + "\n" : rows_csv(rows));
    return 0;
}

int cmd_classnumbers(const CommonOpts& o, const std::string& family, int g, bool k2) {
    const FieldSpec* F = FieldSpec::parse(o.q_text, o.modulus);
    FamilyKind kind = parse_family(family);
    RunOpts opts = make_run_opts(o);

    auto members = enumerate_family(F, kind, g);
    uint64_t block = 0;
    for (int n = 0; n <= g; ++n) block += monic_count(F->q(), n);
    opts.budget.charge(members.size() * block, "listing");
    DegreeSieve sieve(F, g);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    std::string csv = k2 ? "spec,type,genus,k2\n" : "spec,type,genus,value\n";
    for (const auto& spec : members) {
        auto cls = classify(spec);
        std::string value;
        if (k2) {
            HalfValue L2 = member_L(spec, SPoint::integer(2), sieve);
            value = k2_from_L2(cls.type, F->q(), cls.genus, L2.x()).get_str();
        } else {
            HalfValue L1 = member_L(spec, SPoint::integer(1), sieve);
            auto cn = class_number_from_L1(cls.type, F->q(), cls.genus, L1.x());
            value = cn.is_real ? rat_str(cn.h_r) : cn.h.get_str();
        }
        if (o.format == "json") {
            nlohmann::ordered_json j;
            j["spec"] = char_describe(spec);
            j["type"] = field_type_name(cls.type);
            j["genus"] = cls.genus;
            j[k2 ? "k2" : "value"] = value;
            arr.push_back(j);
        } else {
            csv += char_describe(spec) + "," + field_type_name(cls.type) + "," +
                   std::to_string(cls.genus) + "," + value + "\n";
        }
    }
    MomentRow total = k2 ? aggregate_k2(F, kind, g, opts)
                         : aggregate_class_numbers(F, kind, g, opts);
    if (o.format == "json") {
        nlohmann::ordered_json j;
        j["members"] = arr;
        j["aggregate"] = nlohmann::ordered_json::parse(rows_json({total}))[0];
        emit(o, j.dump(2) + "\n");
    } else {
        emit(o, csv + rows_csv({total}));
    }
    return 0;
}

int cmd_verify(const CommonOpts& o, const std::vector<std::string>& suites, bool quick) {
    VerifyOptions vo;
    vo.quick = quick;
    vo.workers = make_run_opts(o).workers;
    auto results = run_suites(suites, vo);
    bool all = true;
    if (o.format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : results) {
            nlohmann::ordered_json j;
            j["suite"] = r.name;
            j["pass"] = r.pass;
            j["detail"] = r.detail;
            j["seconds"] = r.seconds;
            arr.push_back(j);
            all = all && r.pass;
        }
        emit(o, arr.dump(2) + "\n");
    } else {
        std::string out;
        char buf[512];
        for (const auto& r : results) {
            std::snprintf(buf, sizeof buf, "%-14s %s  (%.2fs)  %s\n", r.name.c_str(),
                          r.pass ? "PASS" : "FAIL", r.seconds, r.detail.c_str());
            out += buf;
            all = all && r.pass;
        }
        emit(o, out);
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact quadratic Dirichlet L-functions over F_q(T)"};
    app.require_subcommand(1);

    CommonOpts o;

    auto* primes = app.add_subcommand("primes", "count or list monic irreducibles of a degree");
    int primes_n = 1;
    bool primes_list = false;
    add_field_flags(primes, o);
    primes->add_option("--n", primes_n, "degree")->required();
    primes->add_flag("--list", primes_list, "print the polynomials");
    primes->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
    primes->add_option("--out", o.out_path);

    auto* lpoly = app.add_subcommand("lpoly", "exact L-polynomial data for one character");
    std::string d_text, p_text, a_text, f_text = "0";
    bool with_b = false, lverify = false;
    add_field_flags(lpoly, o);
    lpoly->add_option("--D", d_text, "odd q: square-free discriminant polynomial");
    lpoly->add_option("--P", p_text, "even q: prime denominator");
    lpoly->add_option("--A", a_text, "even q: numerator");
    lpoly->add_option("--F", f_text, "even q: polynomial part (0, xi, or odd part)");
    lpoly->add_flag("--with-B", with_b, "also compute the divisor-weighted coefficients");
    lpoly->add_flag("--verify", lverify, "run the exact identity checks for this character");
    lpoly->add_option("--budget", o.budget);
    lpoly->add_option("--out", o.out_path);

    auto* moments = app.add_subcommand("moments", "family moment tables");
    std::string family = "P-odd", g_text = "1", s_text = "half";
    int order = 1;
    bool approx_main = false;
    add_field_flags(moments, o);
    moments->add_option("--family", family, "P-odd, P-even, gammaP, H, F, Fprime")->required();
    moments->add_option("--g", g_text, "genus or range like 1..4")->required();
    moments->add_option("--s", s_text, "half, 1, 2, or a/b with q^-s exact");
    moments->add_option("--order", order, "1 or 2")->check(CLI::IsMember({1, 2}));
    moments->add_flag("--approx-main-term", approx_main,
                      "float main terms only, for s off the exact grid");
    add_run_flags(moments, o);

    auto* cls = app.add_subcommand("classnumbers", "class numbers (h, or h*R for real types)");
    std::string cls_family = "P-odd";
    int cls_g = 1;
    add_field_flags(cls, o);
    cls->add_option("--family", cls_family)->required();
    cls->add_option("--g", cls_g)->required();
    add_run_flags(cls, o);

    auto* k2 = app.add_subcommand("k2", "orders of the second K-group (odd q)");
    std::string k2_family = "P-odd";
    int k2_g = 1;
    add_field_flags(k2, o);
    k2->add_option("--family", k2_family)->required();
    k2->add_option("--g", k2_g)->required();
    add_run_flags(k2, o);

    auto* verify = app.add_subcommand("verify", "exact-identity suites");
    std::vector<std::string> suites;
    bool quick = false;
    verify->add_option("--suite", suites, "suite names (default: all)");
    verify->add_flag("--quick", quick, "reduced populations");
    verify->add_option("--workers", o.workers);
    verify->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json", "text"}));
    verify->add_option("--out", o.out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (primes->parsed()) return cmd_primes(o, primes_n, primes_list);
        if (lpoly->parsed()) return cmd_lpoly(o, d_text, p_text, a_text, f_text, with_b, lverify);
        if (moments->parsed()) return cmd_moments(o, family, g_text, s_text, order, approx_main);
        if (cls->parsed()) return cmd_classnumbers(o, cls_family, cls_g, false);
        if (k2->parsed()) return cmd_classnumbers(o, k2_family, k2_g, true);
        if (verify->parsed()) return cmd_verify(o, suites, quick);
    } catch (const budget_error& e) {
        std::fprintf(stderr, "budget refusal: %s\n", e.what());
        return 3;
    } catch (const integrity_error& e) {
        std::fprintf(stderr, "identity failure: %s\n", e.what());
        return 1;
    } catch (const usage_error& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
