#include "jettower/jets.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace jt {

namespace {

bool is_f(VarId v) { return v >= 256 && v < 1024; }
int f_index(VarId v) { return static_cast<int>(v - 256) / 16; }
int f_order(VarId v) { return static_cast<int>(v - 256) % 16; }

void jet_shape(const JetPolynomial& q, int* n, int* k) {
    *n = 0;
    *k = 0;
    for (const auto& [m, c] : q.terms())
        for (const auto& [v, e] : m.entries()) {
            if (!is_f(v)) throw std::invalid_argument("jet polynomial contains a non-jet variable " + var_name(v));
            *n = std::max(*n, f_index(v));
            *k = std::max(*k, f_order(v));
        }
}

Rat factorial(int k) {
    Int r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return Rat(r);
}

QPoly D(int i1, int i2, int a, int b) { return jet_det({i1, i2}, {a, b}); }
QPoly D3(int a, int b, int c) { return jet_det({1, 2, 3}, {a, b, c}); }

}  // namespace

JetPolynomial jet_var(int i, int k) {
    if (i < 1 || i > 15 || k < 1 || k > 15) throw std::invalid_argument("jet_var: index out of range");
    return QPoly::var(var_f(i, k));
}

JetPolynomial jet_det(const std::vector<int>& idx, const std::vector<int>& ord) {
    if (idx.size() != ord.size() || idx.empty()) throw std::invalid_argument("jet_det: shape mismatch");
    const int s = static_cast<int>(idx.size());
    std::vector<int> perm(s);
    std::iota(perm.begin(), perm.end(), 0);
    QPoly total;
    do {
        int inv = 0;
        for (int i = 0; i < s; ++i)
            for (int j = i + 1; j < s; ++j)
                if (perm[i] > perm[j]) ++inv;
        QPoly prod(1);
        for (int c = 0; c < s; ++c) prod = prod * jet_var(idx[perm[c]], ord[c]);
        total += (inv % 2) ? -prod : prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

Reparametrization symbolic_reparametrization(int k) {
    Reparametrization phi;
    for (int j = 1; j <= k; ++j) phi.a.push_back(QPoly::var(var_a(j)));
    return phi;
}

Reparametrization scaling_reparametrization(const QPoly& lambda, int k) {
    Reparametrization phi;
    phi.a.assign(k, QPoly());
    if (k > 0) phi.a[0] = lambda;
    return phi;
}

std::map<VarId, QPoly> compose_jet(int n, int k, const Reparametrization& phi) {
    if (static_cast<int>(phi.a.size()) != k) throw std::invalid_argument("compose_jet: reparametrization order does not match");
    if (k < 1) throw std::invalid_argument("compose_jet: order must be positive");
    if (phi.a[0].is_zero()) throw std::invalid_argument("compose_jet: singular reparametrization (a1 = 0)");
    // x_r = phi^{(r)}(0) = r! a_r
    std::vector<QPoly> x(k + 1);
    for (int r = 1; r <= k; ++r) x[r] = phi.a[r - 1].scaled(factorial(r));
    // partial Bell polynomials B[l][j]
    std::vector<std::vector<QPoly>> B(k + 1, std::vector<QPoly>(k + 1));
    B[0][0] = QPoly(1);
    for (int l = 1; l <= k; ++l)
        for (int j = 1; j <= l; ++j) {
            QPoly acc;
            for (int i = 1; i <= l - j + 1; ++i) {
                Int bin;
                mpz_bin_uiui(bin.get_mpz_t(), l - 1, i - 1);
                acc += (x[i] * B[l - i][j - 1]).scaled(Rat(bin));
            }
            B[l][j] = acc;
        }
    std::map<VarId, QPoly> sub;
    for (int i = 1; i <= n; ++i)
        for (int l = 1; l <= k; ++l) {
            QPoly acc;
            for (int j = 1; j <= l; ++j) acc += jet_var(i, j) * B[l][j];
            sub[var_f(i, l)] = acc;
        }
    return sub;
}

long jet_weight(const JetPolynomial& q) {
    long deg = 0;
    if (!q.is_homogeneous(Grading::standard(), &deg)) throw std::invalid_argument("jet polynomial is not homogeneous");
    return deg;
}

bool is_invariant(const JetPolynomial& q, int k, int m) {
    jet_weight(q);
    int n = 0, kq = 0;
    jet_shape(q, &n, &kq);
    if (kq > k) throw std::invalid_argument("is_invariant: polynomial uses derivatives above order k");
    if (q.is_zero()) return true;
    QPoly lhs = q.substitute(compose_jet(n, k, symbolic_reparametrization(k)));
    QPoly rhs = q * QPoly::var(var_a(1), static_cast<std::uint32_t>(m));
    return lhs == rhs;
}

bool is_unipotent_invariant(const JetPolynomial& q, int n, int k, bool full) {
    int nq = 0, kq = 0;
    jet_shape(q, &nq, &kq);
    if (nq > n || kq > k) throw std::invalid_argument("is_unipotent_invariant: polynomial outside the jet range");
    if (full) {
        std::map<VarId, QPoly> sub;
        for (int i = 2; i <= n; ++i)
            for (int l = 1; l <= k; ++l) {
                QPoly acc = jet_var(i, l);
                for (int j = 1; j < i; ++j) acc += QPoly::var(var_v(i, j)) * jet_var(j, l);
                sub[var_f(i, l)] = acc;
            }
        return q.substitute(sub) == q;
    }
    for (int i = 2; i <= n; ++i)
        for (int j = 1; j < i; ++j) {
            std::map<VarId, QPoly> sub;
            for (int l = 1; l <= k; ++l) sub[var_f(i, l)] = jet_var(i, l) + QPoly::var(var_v(i, j)) * jet_var(j, l);
            if (q.substitute(sub) != q) return false;
        }
    return true;
}

bool scales_with_weight(const JetPolynomial& q, int m) {
    int n = 0, k = 0;
    jet_shape(q, &n, &k);
    std::map<VarId, QPoly> sub;
    for (int i = 1; i <= n; ++i)
        for (int l = 1; l <= k; ++l) sub[var_f(i, l)] = jet_var(i, l) * QPoly::var(var_t(), static_cast<std::uint32_t>(l));
    return q.substitute(sub) == q * QPoly::var(var_t(), static_cast<std::uint32_t>(m));
}

JetPolynomial divide_exact(const JetPolynomial& q, const Monomial& m) {
    QPoly::Map out;
    for (const auto& [t, c] : q.terms()) {
        if (!m.divides(t)) throw std::domain_error("divide_exact: nonzero remainder (" + t.to_string() + ")");
        out.emplace(t.quotient(m), c);
    }
    return QPoly::from_map(std::move(out));
}

std::vector<NamedInvariant> invariant_library(int n) {
    if (n < 2 || n > 4) throw std::invalid_argument("invariant_library: n must be 2, 3 or 4");
    std::vector<NamedInvariant> lib;
    const QPoly f1 = jet_var(1, 1), f1b = jet_var(1, 2);
    const QPoly L3 = D(1, 2, 1, 2);
    lib.push_back({"f1'", 1, true, f1});
    lib.push_back({"Lambda3", 3, true, L3});
    if (n == 2) return lib;
    const QPoly f1c = jet_var(1, 3);
    const QPoly L5 = D(1, 2, 1, 3) * f1 - (D(1, 2, 1, 2) * f1b).scaled(3);
    const QPoly D6 = D3(1, 2, 3);
    lib.push_back({"Lambda5", 5, true, L5});
    if (n == 3) {
        lib.push_back({"D6", 6, true, D6});
        return lib;
    }
    const QPoly f1f1 = f1 * f1;
    const QPoly L7 = D(1, 2, 1, 4) * f1f1 + (D(1, 2, 2, 3) * f1f1).scaled(4) - (D(1, 2, 1, 3) * f1 * f1b).scaled(10) +
                     (D(1, 2, 1, 2) * f1b * f1b).scaled(15);
    const QPoly D8 = D3(1, 2, 4) * f1 - (D3(1, 2, 3) * f1b).scaled(6);
    const QPoly N10 = D3(1, 3, 4) * f1f1 - (D3(1, 2, 4) * f1 * f1b).scaled(3) + (D3(1, 2, 3) * f1 * f1c).scaled(4) +
                      (D3(1, 2, 3) * f1b * f1b).scaled(3);
    const QPoly W10 = jet_det({1, 2, 3, 4}, {1, 2, 3, 4});
    lib.push_back({"Lambda7", 7, true, L7});
    lib.push_back({"D6", 6, true, D6});
    lib.push_back({"D8", 8, true, D8});
    lib.push_back({"N10", 10, true, N10});
    lib.push_back({"W10", 10, true, W10});

    const Monomial by1 = Monomial::var(var_f(1, 1));
    const Monomial by2 = Monomial::var(var_f(1, 1), 2);
    const QPoly M8 = divide_exact((L5 * L5).scaled(-5) + (L3 * L7).scaled(3), by2);
    const QPoly E10 = divide_exact((L5 * D6).scaled(-6) + (L3 * D8).scaled(3), by1);
    const QPoly L12 = divide_exact(-(L7 * D6) + (L3 * N10).scaled(5), by1);
    const QPoly Q14 = divide_exact(L7 * D8 - (L5 * N10).scaled(10), by1);
    const QPoly R15 = divide_exact(D8 * D8 - (D6 * N10).scaled(12), by1);
    const QPoly U17 = divide_exact((D8 * E10).scaled(4) + (L3 * R15).scaled(3), by1);
    const QPoly V19 = divide_exact((N10 * E10).scaled(8) + L5 * R15, by1);
    const QPoly X21 = divide_exact((D8 * Q14).scaled(4) - (L7 * R15).scaled(5), by1);
    lib.push_back({"M8", 8, false, M8});
    lib.push_back({"E10", 10, false, E10});
    lib.push_back({"L12", 12, false, L12});
    lib.push_back({"Q14", 14, false, Q14});
    lib.push_back({"R15", 15, false, R15});
    lib.push_back({"U17", 17, false, U17});
    lib.push_back({"V19", 19, false, V19});
    lib.push_back({"X21", 21, false, X21});
    return lib;
}

JetPolynomial lambda7_unit_variant() {
    const QPoly f1 = jet_var(1, 1), f1b = jet_var(1, 2);
    return D(1, 2, 1, 4) * f1 * f1 + D(1, 2, 2, 3) * f1 * f1 - (D(1, 2, 1, 3) * f1 * f1b).scaled(10) +
           (D(1, 2, 1, 2) * f1b * f1b).scaled(15);
}

JetPolynomial d8_weight9_variant() {
    return D3(1, 3, 4) * jet_var(1, 1) - (D3(1, 2, 4) * jet_var(1, 2)).scaled(3);
}

const NamedInvariant& find_invariant(const std::vector<NamedInvariant>& lib, const std::string& name) {
    for (const auto& e : lib)
        if (e.name == name) return e;
    throw std::out_of_range("no invariant named " + name);
}

std::vector<JetPolynomial> syzygy_residuals(const std::vector<NamedInvariant>& lib) {
    auto g = [&](const char* s) -> const QPoly& { return find_invariant(lib, s).poly; };
    const QPoly& f1 = g("f1'");
    return {
        (g("Lambda5") * g("Lambda5")).scaled(-5) + (g("Lambda3") * g("Lambda7")).scaled(3) - f1 * f1 * g("M8"),
        (g("Lambda5") * g("D6")).scaled(-2) + g("Lambda3") * g("D8") - (f1 * g("E10")).scaled(Rat(1, 3)),
        -(g("Lambda7") * g("D6")) + (g("Lambda3") * g("N10")).scaled(5) - f1 * g("L12"),
    };
}

bool verify_syzygies(int n) {
    if (n != 4) throw std::invalid_argument("verify_syzygies: the displayed relations live in dimension 4");
    for (const auto& r : syzygy_residuals(invariant_library(4)))
        if (!r.is_zero()) return false;
    return true;
}

std::vector<JetCheck> verify_jets(int n) {
    std::vector<JetCheck> out;
    std::vector<NamedInvariant> lib;
    try {
        lib = invariant_library(n);
        out.push_back({"library", "constructed with exact division", true});
    } catch (const std::domain_error&) {
        out.push_back({"library", "constructed with exact division", false});
        return out;
    }
    const int k = n;
    for (const auto& e : lib) {
        bool homog = e.poly.is_homogeneous(Grading::standard()) && !e.poly.is_zero();
        out.push_back({e.name, "weighted degree " + std::to_string(e.weight),
                       homog && jet_weight(e.poly) == e.weight});
        out.push_back({e.name, "scaling", homog && scales_with_weight(e.poly, e.weight)});
        out.push_back({e.name, "unipotent", is_unipotent_invariant(e.poly, n, k)});
        if (e.generator) out.push_back({e.name, "reparametrization", homog && is_invariant(e.poly, k, e.weight)});
    }
    if (n == 4) {
        auto res = syzygy_residuals(lib);
        for (std::size_t i = 0; i < res.size(); ++i)
            out.push_back({"relation " + std::to_string(i + 1), "vanishes", res[i].is_zero()});
    }
    return out;
}

SchurWeight schur_weight_of_monomial(long a, long b, long c, long d) {
    if (a < 0 || b < 0 || c < 0 || d < 0) throw std::invalid_argument("exponents must be non-negative");
    return {a + b + 2 * c + d, b + c + d, d};
}

}  // namespace jt
