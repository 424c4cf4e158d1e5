#include "ffl/gf.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace ffl {
namespace {

bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; (uint64_t)d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Dense polynomials over GF(p) used only for modulus handling, low-first.
using PPoly = std::vector<uint32_t>;

void ptrim(PPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

PPoly pmod(PPoly a, const PPoly& m, uint32_t p) {
    // m monic
    while (a.size() >= m.size() && !a.empty()) {
        uint32_t c = a.back();
        size_t shift = a.size() - m.size();
        for (size_t i = 0; i < m.size(); ++i) {
            uint64_t t = (uint64_t)c * m[i] % p;
            a[shift + i] = (uint32_t)((a[shift + i] + p - t) % p);
        }
        ptrim(a);
    }
    return a;
}

PPoly pmul(const PPoly& a, const PPoly& b, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    PPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (uint32_t)((c[i + j] + (uint64_t)a[i] * b[j]) % p);
    return c;
}

bool pdivides(const PPoly& d, const PPoly& f, uint32_t p) {
    return pmod(f, d, p).empty();
}

// Trial division; the modulus degrees in play are tiny.
bool pirreducible(const PPoly& f, uint32_t p) {
    size_t deg = f.size() - 1;
    if (deg < 1) return false;
    for (size_t d = 1; 2 * d <= deg; ++d) {
        uint64_t count = 1;
        for (size_t i = 0; i < d; ++i) count *= p;
        for (uint64_t idx = 0; idx < count; ++idx) {
            PPoly cand(d + 1, 0);
            uint64_t t = idx;
            for (size_t i = 0; i < d; ++i) {
                cand[i] = (uint32_t)(t % p);
                t /= p;
            }
            cand[d] = 1;
            if (pdivides(cand, f, p)) return false;
        }
    }
    return true;
}

PPoly default_modulus(uint32_t p, uint32_t k) {
    uint64_t count = 1;
    for (uint32_t i = 0; i < k; ++i) count *= p;
    for (uint64_t idx = 0; idx < count; ++idx) {
        PPoly cand(k + 1, 0);
        uint64_t t = idx;
        for (uint32_t i = 0; i < k; ++i) {
            cand[i] = (uint32_t)(t % p);
            t /= p;
        }
        cand[k] = 1;
        if (pirreducible(cand, p)) return cand;
    }
    throw integrity_error("no irreducible modulus found");  // unreachable
}

std::vector<uint32_t> prime_factors_u64(uint64_t n) {
    std::vector<uint32_t> out;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back((uint32_t)d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) out.push_back((uint32_t)n);
    return out;
}

}  // namespace

FieldSpec::FieldSpec(uint32_t p, uint32_t k, std::vector<uint32_t> modulus)
    : p_(p), k_(k), modulus_(std::move(modulus)) {
    if (!is_prime_u32(p)) throw usage_error("field characteristic must be prime");
    if (p >= (1u << 16)) throw usage_error("characteristic out of supported range (p < 2^16)");
    if (k < 1) throw usage_error("extension degree must be >= 1");
    uint64_t q = 1;
    for (uint32_t i = 0; i < k; ++i) {
        q *= p;
        if (q > (1u << 20)) throw usage_error("field size out of supported range (q <= 2^20)");
    }
    q_ = (uint32_t)q;

    for (auto& c : modulus_) c %= p;
    if (modulus_.size() != k + 1 || modulus_.back() != 1)
        throw usage_error("modulus must be monic of degree k");
    if (k > 1 && !pirreducible(modulus_, p))
        throw usage_error("modulus is reducible over GF(p)");

    pow_p_.resize(k_ + 1);
    pow_p_[0] = 1;
    for (uint32_t i = 1; i <= k_; ++i) pow_p_[i] = pow_p_[i - 1] * p_;

    if (q_ <= kTableLimit && k_ > 1) {
        mul_table_.resize((size_t)q_ * q_);
        add_table_.resize((size_t)q_ * q_);
        for (uint32_t a = 0; a < q_; ++a)
            for (uint32_t b = 0; b <= a; ++b) {
                uint32_t s = 0;
                for (uint32_t i = 0; i < k_; ++i) {
                    uint32_t da = a / pow_p_[i] % p_, db = b / pow_p_[i] % p_;
                    s += (da + db) % p_ * pow_p_[i];
                }
                add_table_[(size_t)a * q_ + b] = add_table_[(size_t)b * q_ + a] = s;
                uint32_t m = mul_generic(a, b);
                mul_table_[(size_t)a * q_ + b] = mul_table_[(size_t)b * q_ + a] = m;
            }
    }
    if (q_ <= kTableLimit) {
        inv_table_.assign(q_, 0);
        for (uint32_t a = 1; a < q_; ++a) inv_table_[a] = pow(a, q_ - 2);
    }

    // Least generator of GF(q)^x: order q-1 iff a^((q-1)/l) != 1 for each prime l.
    auto ell = prime_factors_u64(q_ - 1);
    for (uint32_t a = 1; a < q_; ++a) {
        bool ok = true;
        for (uint32_t l : ell)
            if (pow(a, (q_ - 1) / l) == 1) {
                ok = false;
                break;
            }
        if (ok) {
            generator_ = a;
            break;
        }
    }
    if (generator_ == 0 && q_ > 2) throw integrity_error("no generator found");
    if (q_ == 2) generator_ = 1;

    if (p_ == 2) {
        for (uint32_t a = 0; a < q_; ++a)
            if (trace_to_f2(a) == 1) {
                xi_ = a;
                break;
            }
    }
}

uint32_t FieldSpec::mul_generic(uint32_t a, uint32_t b) const {
    if (k_ == 1) return (uint32_t)((uint64_t)a * b % p_);
    // schoolbook product of digit vectors, reduced by the monic modulus
    std::vector<uint32_t> prod(2 * k_ - 1, 0);
    for (uint32_t i = 0; i < k_; ++i) {
        uint32_t da = a / pow_p_[i] % p_;
        if (!da) continue;
        for (uint32_t j = 0; j < k_; ++j) {
            uint32_t db = b / pow_p_[j] % p_;
            prod[i + j] = (uint32_t)((prod[i + j] + (uint64_t)da * db) % p_);
        }
    }
    for (int d = (int)prod.size() - 1; d >= (int)k_; --d) {
        uint32_t c = prod[d];
        if (!c) continue;
        prod[d] = 0;
        for (uint32_t i = 0; i < k_; ++i) {
            uint64_t t = (uint64_t)c * modulus_[i] % p_;
            prod[d - k_ + i] = (uint32_t)((prod[d - k_ + i] + p_ - t) % p_);
        }
    }
    uint32_t out = 0;
    for (uint32_t i = 0; i < k_; ++i) out += prod[i] * pow_p_[i];
    return out;
}

uint32_t FieldSpec::add(uint32_t a, uint32_t b) const {
    if (k_ == 1) {
        uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    if (!add_table_.empty()) return add_table_[(size_t)a * q_ + b];
    uint32_t s = 0;
    for (uint32_t i = 0; i < k_; ++i)
        s += (a / pow_p_[i] % p_ + b / pow_p_[i] % p_) % p_ * pow_p_[i];
    return s;
}

uint32_t FieldSpec::neg(uint32_t a) const {
    if (k_ == 1) return a ? p_ - a : 0;
    uint32_t s = 0;
    for (uint32_t i = 0; i < k_; ++i) {
        uint32_t d = a / pow_p_[i] % p_;
        s += (d ? p_ - d : 0) * pow_p_[i];
    }
    return s;
}

uint32_t FieldSpec::sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

uint32_t FieldSpec::mul(uint32_t a, uint32_t b) const {
    if (k_ == 1) return (uint32_t)((uint64_t)a * b % p_);
    if (!mul_table_.empty()) return mul_table_[(size_t)a * q_ + b];
    return mul_generic(a, b);
}

uint32_t FieldSpec::pow(uint32_t a, uint64_t e) const {
    uint32_t r = from_residue(1);
    uint32_t base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

uint32_t FieldSpec::inv(uint32_t a) const {
    if (a == 0) throw domain_error("division by zero in GF(q)");
    if (!inv_table_.empty()) return inv_table_[a];
    return pow(a, q_ - 2);
}

bool FieldSpec::is_square(uint32_t a) const { return quadratic_character(a) >= 0; }

int FieldSpec::quadratic_character(uint32_t a) const {
    if (p_ == 2) throw usage_error("quadratic character needs odd characteristic");
    if (a == 0) return 0;
    return pow(a, (q_ - 1) / 2) == 1 ? 1 : -1;
}

int FieldSpec::trace_to_f2(uint32_t a) const {
    if (p_ != 2) throw usage_error("absolute trace to F_2 needs characteristic 2");
    uint32_t acc = a, t = a;
    for (uint32_t i = 1; i < k_; ++i) {
        t = mul(t, t);
        acc = add(acc, t);
    }
    if (acc > 1) throw integrity_error("trace left the prime field");
    return (int)acc;
}

uint32_t FieldSpec::xi() const {
    if (p_ != 2) throw usage_error("xi is defined only in characteristic 2");
    return xi_;
}

std::string FieldSpec::describe() const {
    return k_ == 1 ? std::to_string(p_) : std::to_string(p_) + "^" + std::to_string(k_);
}

const FieldSpec* FieldSpec::get(uint32_t p, uint32_t k) {
    if (!is_prime_u32(p)) throw usage_error("field characteristic must be prime");
    if (k < 1) throw usage_error("extension degree must be >= 1");
    std::vector<uint32_t> mod;
    if (k == 1)
        mod = {0, 1};  // placeholder T; unused for prime fields
    else {
        auto m = default_modulus(p, k);
        mod.assign(m.begin(), m.end());
    }
    return get(p, k, mod);
}

const FieldSpec* FieldSpec::get(uint32_t p, uint32_t k, const std::vector<uint32_t>& modulus) {
    static std::mutex mu;
    static std::map<std::tuple<uint32_t, uint32_t, std::vector<uint32_t>>,
                    std::unique_ptr<FieldSpec>>
        registry;
    std::vector<uint32_t> key_mod = modulus;
    for (auto& c : key_mod) c %= p;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(p, k, key_mod);
    auto it = registry.find(key);
    if (it == registry.end()) {
        auto spec = std::unique_ptr<FieldSpec>(new FieldSpec(p, k, key_mod));
        it = registry.emplace(key, std::move(spec)).first;
    }
    return it->second.get();
}

const FieldSpec* FieldSpec::parse(const std::string& text, const std::string& modulus_csv) {
    uint32_t p = 0, k = 1;
    auto caret = text.find('^');
    try {
        if (caret != std::string::npos) {
            p = (uint32_t)std::stoul(text.substr(0, caret));
            k = (uint32_t)std::stoul(text.substr(caret + 1));
        } else {
            uint64_t n = std::stoull(text);
            if (n < 2) throw usage_error("field size must be >= 2");
            // decompose a plain integer as p^k
            uint64_t base = n;
            for (uint32_t d = 2; (uint64_t)d * d <= base; ++d)
                if (base % d == 0) {
                    p = d;
                    k = 0;
                    while (base % d == 0) {
                        base /= d;
                        ++k;
                    }
                    if (base != 1) throw usage_error("field size is not a prime power: " + text);
                    break;
                }
            if (p == 0) {
                p = (uint32_t)n;
                k = 1;
            }
        }
    } catch (const std::logic_error&) {
        throw usage_error("cannot parse field description: " + text);
    }
    if (modulus_csv.empty()) return get(p, k);
    std::vector<uint32_t> mod;
    size_t pos = 0;
    while (pos <= modulus_csv.size()) {
        auto comma = modulus_csv.find(',', pos);
        if (comma == std::string::npos) comma = modulus_csv.size();
        try {
            mod.push_back((uint32_t)std::stoul(modulus_csv.substr(pos, comma - pos)));
        } catch (const std::logic_error&) {
            throw usage_error("cannot parse modulus coefficient list: " + modulus_csv);
        }
        pos = comma + 1;
    }
    return get(p, k, mod);
}

}  // namespace ffl
