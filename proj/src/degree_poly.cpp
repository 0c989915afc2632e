#include "jettower/degree_poly.hpp"

namespace jt {

namespace {

int sign_of(const Int& x) { return sgn(x); }

// Signed pseudo-remainder sequence (primitive parts keep the sizes small;
// only signs matter for Sturm counting).
std::vector<DegreePolynomial> sturm_chain(const DegreePolynomial& p) {
    std::vector<DegreePolynomial> chain;
    chain.push_back(p);
    std::vector<Int> dc;
    for (int i = 1; i <= p.degree(); ++i) dc.push_back(p.coeff(i) * i);
    chain.emplace_back(dc);
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        const auto& a = chain[chain.size() - 2];
        const auto& b = chain.back();
        // r = lc(b)^k * a mod b with k chosen so the multiplier is positive
        std::vector<Int> r = a.coeffs();
        int db = b.degree();
        Int lb = b.lead();
        Int lbabs = abs(lb);
        for (int k = static_cast<int>(r.size()) - 1; k >= db; --k) {
            if (r[k] == 0) continue;
            Int f = r[k];
            for (auto& x : r) x *= lbabs;
            // subtract (f*sign(lb)) * d^{k-db} * b
            Int mult = f * sgn(lb);
            for (int i = 0; i <= db; ++i) r[k - db + i] -= mult * b.coeff(i);
        }
        r.resize(db);
        DegreePolynomial rem(r);
        if (rem.is_zero()) break;
        Int g = 0;
        for (const auto& x : rem.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        std::vector<Int> neg = rem.coeffs();
        for (auto& x : neg) x = -x / g;
        chain.emplace_back(neg);
    }
    return chain;
}

int sign_changes_at(const std::vector<DegreePolynomial>& chain, const Int& x) {
    int changes = 0, last = 0;
    for (const auto& q : chain) {
        int s = sign_of(q.eval(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

DegreePolynomial squarefree_part(const DegreePolynomial& p) {
    // gcd(p, p') via primitive Euclid; p / gcd via exact division.
    std::vector<Int> dc;
    for (int i = 1; i <= p.degree(); ++i) dc.push_back(p.coeff(i) * i);
    DegreePolynomial a = p, b(dc);
    auto primitive = [](const DegreePolynomial& q) {
        Int g = 0;
        for (const auto& x : q.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        std::vector<Int> v = q.coeffs();
        for (auto& x : v) x /= g;
        if (!v.empty() && v.back() < 0)
            for (auto& x : v) x = -x;
        return DegreePolynomial(v);
    };
    while (!b.is_zero()) {
        std::vector<Int> r = a.coeffs();
        int db = b.degree();
        Int lb = b.lead();
        for (int k = static_cast<int>(r.size()) - 1; k >= db; --k) {
            if (r[k] == 0) continue;
            Int f = r[k];
            for (auto& x : r) x *= lb;
            for (int i = 0; i <= db; ++i) r[k - db + i] -= f * b.coeff(i);
        }
        r.resize(db);
        a = b;
        DegreePolynomial rem(r);
        b = rem.is_zero() ? rem : primitive(rem);
    }
    if (a.degree() <= 0) return p;
    // exact division p / a over Q, then clear
    std::vector<Rat> num(p.coeffs().begin(), p.coeffs().end());
    int da = a.degree();
    std::vector<Rat> q(p.degree() - da + 1);
    for (int k = p.degree(); k >= da; --k) {
        Rat f = num[k] / Rat(a.lead());
        q[k - da] = f;
        for (int i = 0; i <= da; ++i) num[k - da + i] -= f * Rat(a.coeff(i));
    }
    DegreePolynomial out = clear_denominators(QDegreePolynomial(q));
    if (sgn(out.lead()) != sgn(p.lead())) out = out.scaled(Int(-1));
    return out;
}

}  // namespace

DegreePolynomial degree_poly_from(const Poly& p) {
    std::vector<Int> c;
    for (const auto& [m, v] : p.terms()) {
        if (!(m.is_one() || (m.entries().size() == 1 && m.entries()[0].first == var_d())))
            throw std::invalid_argument("not a polynomial in d: " + p.to_string());
        std::size_t k = m.is_one() ? 0 : m.entries()[0].second;
        if (c.size() <= k) c.resize(k + 1);
        c[k] += v;
    }
    return DegreePolynomial(c);
}

QDegreePolynomial qdegree_poly_from(const QPoly& p) {
    std::vector<Rat> c;
    for (const auto& [m, v] : p.terms()) {
        if (!(m.is_one() || (m.entries().size() == 1 && m.entries()[0].first == var_d())))
            throw std::invalid_argument("not a polynomial in d: " + p.to_string());
        std::size_t k = m.is_one() ? 0 : m.entries()[0].second;
        if (c.size() <= k) c.resize(k + 1);
        c[k] += v;
    }
    return QDegreePolynomial(c);
}

QDegreePolynomial to_rational(const DegreePolynomial& p) {
    return QDegreePolynomial(std::vector<Rat>(p.coeffs().begin(), p.coeffs().end()));
}

DegreePolynomial clear_denominators(const QDegreePolynomial& p) {
    Int l = 1;
    for (const auto& x : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Int> c;
    for (const auto& x : p.coeffs()) c.push_back(Int(x * Rat(l)));
    Int g = 0;
    for (const auto& x : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g != 0)
        for (auto& x : c) x /= g;
    return DegreePolynomial(c);
}

Int largest_root_bound(const DegreePolynomial& p) {
    if (p.is_zero() || p.lead() <= 0) throw std::invalid_argument("largest_root_bound: leading coefficient must be positive");
    Int s = 0;
    for (int k = 0; k < p.degree(); ++k) s += abs(p.coeff(k));
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), s.get_mpz_t(), p.lead().get_mpz_t());
    return 1 + q;
}

int count_roots(const DegreePolynomial& p, const Int& a, const Int& b) {
    auto chain = sturm_chain(squarefree_part(p));
    return sign_changes_at(chain, a) - sign_changes_at(chain, b);
}

Int positivity_threshold(const DegreePolynomial& p, const Int& lower) {
    Int bound = largest_root_bound(p);
    if (bound <= lower) return lower;
    DegreePolynomial sf = squarefree_part(p);
    auto chain = sturm_chain(sf);
    auto roots_in = [&](const Int& a, const Int& b) { return sign_changes_at(chain, a) - sign_changes_at(chain, b); };
    // Collect every integer m such that some root lies in (m, m+1], for
    // m in [lower - 1, bound); the last integer with p <= 0 is among the
    // m and m+1 of those cells.
    Int best = lower - 1;  // largest integer >= lower-1 known to have p <= 0 (sentinel)
    bool found = false;
    std::vector<std::pair<Int, Int>> stack{{lower - 1, bound}};
    std::vector<Int> cells;
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        if (roots_in(a, b) == 0) continue;
        if (b - a == 1) {
            cells.push_back(a);
            continue;
        }
        Int mid = (a + b) / 2;
        stack.push_back({a, mid});
        stack.push_back({mid, b});
    }
    for (const auto& a : cells) {
        for (const Int& x : {a, Int(a + 1)}) {
            if (x < lower) continue;
            if (sgn(p.eval(x)) <= 0 && (!found || x > best)) {
                best = x;
                found = true;
            }
        }
    }
    // p may also be non-positive on a whole interval without a root inside a
    // cell boundary only if the interval starts below `lower`.
    if (!found) {
        if (sgn(p.eval(lower)) <= 0) {
            // no root in (lower-1, bound] but p(lower) <= 0 would contradict
            // p(bound) > 0
            throw std::logic_error("positivity_threshold: inconsistent root isolation");
        }
        return lower;
    }
    return best + 1;
}

}  // namespace jt
