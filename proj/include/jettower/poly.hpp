#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace jt {

using Int = mpz_class;
using Rat = mpq_class;
using VarId = std::uint32_t;

// Variable ids are fixed by name so that ordering never depends on the
// order in which variables were first seen.
//   h            -> 0
//   c<k>         -> k            (1 <= k <= 63)
//   u<l>         -> 64 + l       (1 <= l <= 63)
//   d            -> 200
//   f<i>_<k>     -> 256 + 16*i + k   (jet variable f_i^{(k)})
//   a<j>         -> 1024 + j     (reparametrization coefficients)
//   v<i>_<j>     -> 1280 + 16*i + j
//   t            -> 2000
VarId var_id(std::string_view name);
std::string var_name(VarId id);

inline VarId var_h() { return 0; }
inline VarId var_c(int k) { return static_cast<VarId>(k); }
inline VarId var_u(int l) { return static_cast<VarId>(64 + l); }
inline VarId var_d() { return 200; }
inline VarId var_f(int i, int k) { return static_cast<VarId>(256 + 16 * i + k); }
inline VarId var_a(int j) { return static_cast<VarId>(1024 + j); }
inline VarId var_v(int i, int j) { return static_cast<VarId>(1280 + 16 * i + j); }
inline VarId var_t() { return 2000; }

inline bool is_c(VarId v) { return v >= 1 && v <= 63; }
inline bool is_u(VarId v) { return v >= 65 && v <= 127; }
inline int c_index(VarId v) { return static_cast<int>(v); }
inline int u_level(VarId v) { return static_cast<int>(v) - 64; }

class Monomial {
public:
    using Entry = std::pair<VarId, std::uint32_t>;

    Monomial() = default;
    explicit Monomial(std::vector<Entry> entries);
    static Monomial var(VarId v, std::uint32_t e = 1);

    const std::vector<Entry>& entries() const { return e_; }
    bool is_one() const { return e_.empty(); }
    std::uint32_t exponent(VarId v) const;
    std::uint64_t total_degree() const;

    Monomial operator*(const Monomial& o) const;
    bool divides(const Monomial& o) const;
    // requires divides(o, *this) semantics: returns *this / o
    Monomial quotient(const Monomial& o) const;
    Monomial without(VarId v) const;
    Monomial with_exponent(VarId v, std::uint32_t e) const;

    bool operator==(const Monomial& o) const { return e_ == o.e_; }
    bool operator!=(const Monomial& o) const { return e_ != o.e_; }

    std::string to_string() const;

private:
    std::vector<Entry> e_;
};

// Graded reverse lexicographic order: true when a precedes b in canonical
// (descending) order.
bool grevlex_greater(const Monomial& a, const Monomial& b);

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept;
};

class Grading {
public:
    Grading() = default;
    // h -> 1, c_k -> k, u_l -> 1, f_i^{(k)} -> k, everything else -> 1
    static Grading standard();
    void set(VarId v, int w) { over_[v] = w; }
    int weight(VarId v) const;
    long degree(const Monomial& m) const;

private:
    std::map<VarId, int> over_;
    bool standard_ = false;
};

template <class C>
class SparsePolynomial {
public:
    using Term = std::pair<Monomial, C>;
    using Map = std::unordered_map<Monomial, C, MonomialHash>;

    SparsePolynomial() = default;
    SparsePolynomial(long c) {  // NOLINT implicit constant
        if (c != 0) terms_.push_back({Monomial(), C(c)});
    }
    static SparsePolynomial constant(const C& c) {
        SparsePolynomial p;
        if (c != 0) p.terms_.push_back({Monomial(), c});
        return p;
    }
    static SparsePolynomial var(VarId v, std::uint32_t e = 1) {
        return term(Monomial::var(v, e), C(1));
    }
    static SparsePolynomial term(const Monomial& m, const C& c) {
        SparsePolynomial p;
        if (c != 0) p.terms_.push_back({m, c});
        return p;
    }
    static SparsePolynomial from_map(Map&& m) {
        SparsePolynomial p;
        p.terms_.reserve(m.size());
        for (auto& kv : m)
            if (kv.second != 0) p.terms_.emplace_back(kv.first, std::move(kv.second));
        p.sort_terms();
        return p;
    }

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    C coeff_of(const Monomial& m) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                                   [](const Term& t, const Monomial& k) { return grevlex_greater(t.first, k); });
        if (it != terms_.end() && it->first == m) return it->second;
        return C(0);
    }

    SparsePolynomial operator+(const SparsePolynomial& o) const { return combine(o, 1); }
    SparsePolynomial operator-(const SparsePolynomial& o) const { return combine(o, -1); }
    SparsePolynomial operator-() const {
        SparsePolynomial r = *this;
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }
    SparsePolynomial& operator+=(const SparsePolynomial& o) { return *this = *this + o; }
    SparsePolynomial& operator-=(const SparsePolynomial& o) { return *this = *this - o; }

    SparsePolynomial scaled(const C& c) const {
        if (c == 0) return {};
        SparsePolynomial r = *this;
        for (auto& t : r.terms_) t.second *= c;
        return r;
    }

    // Product keeping only the monomials accepted by `keep`.
    template <class Keep>
    SparsePolynomial mul_filtered(const SparsePolynomial& o, Keep&& keep) const {
        Map acc;
        acc.reserve(terms_.size() * o.terms_.size() / 2 + 1);
        for (const auto& a : terms_)
            for (const auto& b : o.terms_) {
                Monomial m = a.first * b.first;
                if (!keep(m)) continue;
                auto it = acc.find(m);
                if (it == acc.end())
                    acc.emplace(std::move(m), a.second * b.second);
                else
                    it->second += a.second * b.second;
            }
        return from_map(std::move(acc));
    }
    SparsePolynomial operator*(const SparsePolynomial& o) const {
        if (terms_.size() == 1 && terms_[0].first.is_one()) return o.scaled(terms_[0].second);
        if (o.terms_.size() == 1 && o.terms_[0].first.is_one()) return scaled(o.terms_[0].second);
        return mul_filtered(o, [](const Monomial&) { return true; });
    }
    SparsePolynomial& operator*=(const SparsePolynomial& o) { return *this = *this * o; }

    bool operator==(const SparsePolynomial& o) const { return terms_ == o.terms_; }
    bool operator!=(const SparsePolynomial& o) const { return !(*this == o); }

    template <class Keep>
    SparsePolynomial filtered(Keep&& keep) const {
        SparsePolynomial r;
        for (const auto& t : terms_)
            if (keep(t.first)) r.terms_.push_back(t);
        return r;
    }

    // Weighted degree of every term; -1 for the zero polynomial.
    bool is_homogeneous(const Grading& g, long* deg = nullptr) const {
        if (terms_.empty()) {
            if (deg) *deg = -1;
            return true;
        }
        long d0 = g.degree(terms_[0].first);
        for (const auto& t : terms_)
            if (g.degree(t.first) != d0) return false;
        if (deg) *deg = d0;
        return true;
    }

    // Substitute polynomials for variables (ring homomorphism).
    SparsePolynomial substitute(const std::map<VarId, SparsePolynomial>& sub) const {
        std::map<std::pair<VarId, std::uint32_t>, SparsePolynomial> powers;
        auto power = [&](VarId v, std::uint32_t e) -> const SparsePolynomial& {
            auto key = std::make_pair(v, e);
            auto it = powers.find(key);
            if (it != powers.end()) return it->second;
            return powers.emplace(key, pow(sub.at(v), e)).first->second;
        };
        Map acc;
        for (const auto& t : terms_) {
            SparsePolynomial part = constant(t.second);
            Monomial rest;
            std::vector<Monomial::Entry> keep;
            for (const auto& [v, e] : t.first.entries()) {
                if (sub.count(v))
                    part = part * power(v, e);
                else
                    keep.push_back({v, e});
            }
            Monomial km(std::move(keep));
            for (const auto& pt : part.terms_) {
                Monomial m = pt.first * km;
                auto it = acc.find(m);
                if (it == acc.end())
                    acc.emplace(std::move(m), pt.second);
                else
                    it->second += pt.second;
            }
        }
        return from_map(std::move(acc));
    }

    std::string to_string() const;

    friend SparsePolynomial pow(const SparsePolynomial& p, unsigned e) {
        SparsePolynomial result(1), base = p;
        while (e) {
            if (e & 1u) result = result * base;
            e >>= 1u;
            if (e) base = base * base;
        }
        return result;
    }

private:
    void sort_terms() {
        std::sort(terms_.begin(), terms_.end(),
                  [](const Term& a, const Term& b) { return grevlex_greater(a.first, b.first); });
    }
    SparsePolynomial combine(const SparsePolynomial& o, int sign) const {
        SparsePolynomial r;
        r.terms_.reserve(terms_.size() + o.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < terms_.size() || j < o.terms_.size()) {
            if (j == o.terms_.size() || (i < terms_.size() && grevlex_greater(terms_[i].first, o.terms_[j].first))) {
                r.terms_.push_back(terms_[i++]);
            } else if (i == terms_.size() || grevlex_greater(o.terms_[j].first, terms_[i].first)) {
                r.terms_.push_back(o.terms_[j++]);
                if (sign < 0) r.terms_.back().second = -r.terms_.back().second;
            } else {
                C c = sign > 0 ? C(terms_[i].second + o.terms_[j].second) : C(terms_[i].second - o.terms_[j].second);
                if (c != 0) r.terms_.push_back({terms_[i].first, std::move(c)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    std::vector<Term> terms_;
};

using Poly = SparsePolynomial<Int>;
using QPoly = SparsePolynomial<Rat>;

std::string coeff_string(const Int& c);
std::string coeff_string(const Rat& c);

template <class C>
std::string SparsePolynomial<C>::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        bool neg = c < 0;
        C mag = neg ? C(-c) : c;
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        first = false;
        if (m.is_one()) {
            out += coeff_string(mag);
        } else {
            if (mag != 1) out += coeff_string(mag) + "*";
            out += m.to_string();
        }
    }
    return out;
}

// Parses the text format written by to_string; factors may also be
// separated by whitespace ("h^2 u1^3").
Poly parse_poly(std::string_view text);
QPoly parse_qpoly(std::string_view text);
Monomial parse_monomial(std::string_view text);

QPoly to_rational(const Poly& p);

}  // namespace jt
