#include "jettower/estimates.hpp"

#include <functional>
#include <thread>

namespace jt {

Int ipow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Ledger bound_ledger(int n) {
    if (n < 2) throw std::invalid_argument("bound_ledger: n must be at least 2");
    const unsigned long un = static_cast<unsigned long>(n);
    const Int N(n);
    Ledger l;
    l.n = n;
    l.lambda_bound = ipow(2, un);
    l.multinomial_top = ipow(N + 1, un * un);
    l.multinomial_top_c1 = ipow(N + 1, un * un + 1);
    l.stirling_top = 4 * ipow(N, 2 * un - 1);
    l.stirling_top_c1 = 2 * ipow(N, 2 * un - 1);
    l.weight_bound = ipow(N, 3 * un * un) * ipow(3, un * un * un);
    l.d_bound = ipow(N, 4 * un * un * un) * ipow(2, un * un * un * un);
    l.H = ipow(N, 2 * un - 1) * ipow(N + 1, un * un + 1) * l.weight_bound * l.d_bound;
    l.G_top = 1;
    l.E = 6 * l.H;
    l.E_prime = l.H;
    Rat d1 = Rat(1) + (Rat(N * l.E) + Rat(N + 1) / 2) / Rat(1, 2);
    mpz_cdiv_q(l.d1.get_mpz_t(), d1.get_num_mpz_t(), d1.get_den_mpz_t());
    l.d2 = 1 + N + 2 + 2 * (N * N + 2 * N) * l.H;
    return l;
}

std::vector<std::pair<std::string, std::string>> Ledger::fields() const {
    return {
        {"n", std::to_string(n)},
        {"lambda_bound", lambda_bound.get_str()},
        {"multinomial_top", multinomial_top.get_str()},
        {"multinomial_top_c1", multinomial_top_c1.get_str()},
        {"stirling_top", stirling_top.get_str()},
        {"stirling_top_c1", stirling_top_c1.get_str()},
        {"weight_bound", weight_bound.get_str()},
        {"d_bound", d_bound.get_str()},
        {"H", H.get_str()},
        {"G_top", G_top.get_str()},
        {"E", E.get_str()},
        {"E_prime", E_prime.get_str()},
        {"d1", d1.get_str()},
        {"d2", d2.get_str()},
    };
}

bool check_2n5(int n) {
    Ledger l = bound_ledger(n);
    unsigned long un = static_cast<unsigned long>(n);
    return l.d2 <= ipow(2, un * un * un * un * un);
}

Poly jacobi_trudy(TowerContext& ctx, int level, int J) {
    if (level < 0 || level > ctx.n() - 1) throw std::invalid_argument("jacobi_trudy: level out of range");
    if (J < 0 || J > ctx.dim(level)) return Poly();
    std::vector<Poly> C(J + 1);
    C[0] = Poly(1);
    for (int j = 1; j <= J; ++j) {
        Poly acc;
        for (int i = 1; i <= std::min(j, ctx.n()); ++i) {
            Poly t = ctx.mul(ctx.chern_level(i, level), C[j - i]);
            acc += (i % 2) ? t : -t;
        }
        C[j] = acc;
    }
    return C[J];
}

DegreePolynomial upper_reduce(TowerContext& upper, const Monomial& m) {
    if (upper.policy() != Policy::Upper) throw std::invalid_argument("upper_reduce: context must use the upper policy");
    DegreePolynomial r = upper.evaluate_top(Poly::term(m, Int(1)));
    for (const auto& c : r.coeffs())
        if (c < 0) throw std::logic_error("upper_reduce: negative coefficient");
    return r;
}

std::vector<Monomial> top_monomials(int n, bool c1) {
    int N = n * n - (c1 ? 1 : 0);
    std::vector<Monomial> out;
    std::vector<int> e(n + 1);
    std::function<void(int, int)> rec = [&](int idx, int left) {
        if (idx == n) {
            e[n] = left;
            std::vector<int> u(e.begin() + 1, e.end());
            out.push_back(tower_monomial(e[0], u, c1 ? 1 : 0));
            return;
        }
        for (int x = 0; x <= left; ++x) {
            e[idx] = x;
            rec(idx + 1, left - x);
        }
    };
    rec(0, N);
    return out;
}

std::vector<Int> d_k_table(int n, int workers) {
    if (n < 2 || n > 3) throw std::invalid_argument("d_k_exact: exhaustive mode supports n = 2, 3 only");
    TowerContext ctx(n);
    std::vector<Monomial> all = top_monomials(n, false);
    auto more = top_monomials(n, true);
    all.insert(all.end(), more.begin(), more.end());
    for (int level = 1; level <= n; ++level)
        for (int p = n; p <= n * n; ++p) ctx.power_normal_form(level, p);
    workers = std::max(1, workers);
    std::vector<std::vector<Int>> part(workers, std::vector<Int>(n + 2));
    auto run = [&](int w) {
        for (std::size_t i = w; i < all.size(); i += workers) {
            DegreePolynomial v = ctx.evaluate_top(Poly::term(all[i], Int(1)));
            for (int k = 0; k <= n + 1; ++k) {
                Int a = abs(v.coeff(k));
                if (a > part[w][k]) part[w][k] = a;
            }
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> th;
        for (int w = 0; w < workers; ++w) th.emplace_back(run, w);
        for (auto& t : th) t.join();
    }
    std::vector<Int> best(n + 2);
    for (const auto& p : part)
        for (int k = 0; k <= n + 1; ++k)
            if (p[k] > best[k]) best[k] = p[k];
    return best;
}

Int d_k_exact(int n, int k) {
    if (k < 0 || k > n + 1) throw std::invalid_argument("d_k_exact: k out of range");
    return d_k_table(n)[k];
}

}  // namespace jt
