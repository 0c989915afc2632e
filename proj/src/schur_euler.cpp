#include "jettower/schur_euler.hpp"

#include "jettower/tower.hpp"

#include <functional>
#include <mutex>
#include <numeric>

namespace jt {

namespace {

constexpr long kMaxWeight = 512;

// Q[c_1..c_n] truncated above weight n.
struct Truncated {
    int n;
    Grading g = Grading::standard();
    QPoly mul(const QPoly& a, const QPoly& b) const {
        return a.mul_filtered(b, [this](const Monomial& m) { return g.degree(m) <= n; });
    }
    QPoly c(int j) const { return j >= 1 && j <= n ? QPoly::var(var_c(j)) : QPoly(); }
};

Rat factorial(long k) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(k));
    return Rat(r);
}

// Power sums of the Chern roots, p_0..p_n.
std::vector<QPoly> root_power_sums(const Truncated& T) {
    std::vector<QPoly> p(T.n + 1);
    p[0] = QPoly(T.n);
    for (int r = 1; r <= T.n; ++r) {
        QPoly acc = T.c(r).scaled(Rat((r % 2) ? r : -r));
        for (int i = 1; i < r; ++i) {
            QPoly t = T.mul(T.c(i), p[r - i]);
            acc += (i % 2) ? t : -t;
        }
        p[r] = acc;
    }
    return p;
}

// Univariate rational power series helpers (truncated at degree n).
using Series = std::vector<Rat>;

Series series_inverse(const Series& a, int n) {
    Series b(n + 1);
    b[0] = 1 / a[0];
    for (int k = 1; k <= n; ++k) {
        Rat s = 0;
        for (int i = 1; i <= k && i < static_cast<int>(a.size()); ++i) s += a[i] * b[k - i];
        b[k] = -s / a[0];
    }
    return b;
}

Series series_log(const Series& f, int n) {
    // (log f)' = f'/f, f(0) = 1
    Series df(n + 1);
    for (int k = 1; k <= n + 1 && k < static_cast<int>(f.size()); ++k) df[k - 1] = f[k] * k;
    Series inv = series_inverse(f, n);
    Series out(n + 1);
    for (int k = 0; k < n; ++k) {
        Rat s = 0;
        for (int i = 0; i <= k; ++i) s += df[i] * inv[k - i];
        out[k + 1] = s / (k + 1);
    }
    return out;
}

QPoly todd_class(const Truncated& T, const std::vector<QPoly>& p) {
    int n = T.n;
    Series q(n + 2);  // (1 - e^{-x})/x
    for (int k = 0; k <= n + 1; ++k) q[k] = Rat((k % 2) ? -1 : 1) / factorial(k + 1);
    Series f = series_inverse(q, n + 1);
    Series g = series_log(f, n);
    QPoly z;
    for (int r = 1; r <= n; ++r) z += p[r].scaled(g[r]);
    QPoly result(1), term(1);
    for (int k = 1; k <= n; ++k) {
        term = T.mul(term, z).scaled(Rat(1, k));
        result += term;
    }
    return result;
}

QDegreePolynomial evaluate_top_weight(int n, const QPoly& cls) {
    std::vector<QDegreePolynomial> gamma{QDegreePolynomial({Rat(1)})};
    for (int j = 1; j <= n; ++j) gamma.push_back(to_rational(hypersurface_chern(n, j)));
    Grading g = Grading::standard();
    QDegreePolynomial total;
    for (const auto& [m, c] : cls.terms()) {
        if (g.degree(m) != n) continue;
        QDegreePolynomial v({c});
        for (const auto& [var, e] : m.entries()) {
            if (var == var_h()) continue;
            for (std::uint32_t i = 0; i < e; ++i) v = v * gamma[c_index(var)];
        }
        total += v * QDegreePolynomial({Rat(0), Rat(1)});
    }
    return total;
}

void check_weight(int n, const SchurWeight& lambda) {
    if (static_cast<int>(lambda.size()) != n) throw std::invalid_argument("weight length must equal n");
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        if (lambda[i] < 0) throw std::invalid_argument("weights must be non-negative");
        if (i && lambda[i] > lambda[i - 1]) throw std::invalid_argument("weight must be non-increasing");
    }
}

template <class T, class Mul>
T determinant(const std::vector<std::vector<T>>& a, Mul mul) {
    int n = static_cast<int>(a.size());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    T total{};
    do {
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inv;
        T prod = a[0][perm[0]];
        for (int i = 1; i < n; ++i) prod = mul(prod, a[i][perm[i]]);
        total = (inv % 2) ? T(total - prod) : T(total + prod);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

std::vector<std::vector<int>> exponent_vectors(int n, int deg) {
    std::vector<std::vector<int>> out;
    std::vector<int> e(n);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == n - 1) {
            e[i] = left;
            out.push_back(e);
            return;
        }
        for (int x = left; x >= 0; --x) {
            e[i] = x;
            rec(i + 1, left - x);
        }
    };
    rec(0, deg);
    return out;
}

Rat eval_monomial(const std::vector<int>& alpha, const SchurWeight& lambda) {
    Rat v = 1;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        Int p;
        mpz_pow_ui(p.get_mpz_t(), Int(lambda[i]).get_mpz_t(), static_cast<unsigned long>(alpha[i]));
        v *= Rat(p);
    }
    return v;
}

QDegreePolynomial eval_form(const LeadingForm& form, const SchurWeight& lambda) {
    QDegreePolynomial s;
    for (const auto& [alpha, c] : form) s += c.scaled(eval_monomial(alpha, lambda));
    return s;
}

LeadingForm form_from(int n, const QPoly& lambda_part, const QDegreePolynomial& dpart) {
    LeadingForm f;
    for (const auto& [m, c] : lambda_part.terms()) {
        std::vector<int> alpha(n);
        for (const auto& [v, e] : m.entries()) alpha[static_cast<int>(v - var_a(1))] = static_cast<int>(e);
        f[alpha] += dpart.scaled(c);
    }
    return f;
}

QPoly lam(int i) { return QPoly::var(var_a(i)); }

}  // namespace

std::vector<LatticePoint> decompose_gr(int n, long m) {
    if (m < 0) throw std::invalid_argument("decompose_gr: m must be non-negative");
    std::vector<LatticePoint> out;
    if (n == 2) {
        for (long b = 0; 3 * b <= m; ++b) {
            long a = m - 3 * b;
            out.push_back({{a, b}, {a + b, b}});
        }
        return out;
    }
    if (n == 3) {
        for (long b = 0; 3 * b <= m; ++b)
            for (long c = 0; 3 * b + 5 * c <= m; ++c)
                for (long d = 0; 3 * b + 5 * c + 6 * d <= m; ++d) {
                    long a = m - 3 * b - 5 * c - 6 * d;
                    out.push_back({{a, b, c, d}, {a + b + 2 * c + d, b + c + d, d}});
                }
        return out;
    }
    if (n == 4)
        throw std::invalid_argument(
            "decompose_gr: n = 4 is out of scope (the decomposition needs 41 index sets that are not available here)");
    throw std::invalid_argument("decompose_gr: n must be 2 or 3");
}

QDegreePolynomial chi_exact(int n, const SchurWeight& lambda) {
    if (n < 2 || n > 4) throw std::invalid_argument("chi_exact: n must be 2, 3 or 4");
    check_weight(n, lambda);
    long total = std::accumulate(lambda.begin(), lambda.end(), 0L);
    if (total > kMaxWeight) throw std::invalid_argument("chi_exact: weight too large");
    Truncated T{n};
    std::vector<QPoly> p = root_power_sums(T);
    int K = static_cast<int>(lambda[0]) + n;
    // power sums of y_i = exp(-x_i), then complete symmetric h_k(y)
    std::vector<QPoly> py(K + 1);
    for (int m = 1; m <= K; ++m) {
        QPoly acc;
        Rat pw = 1;
        for (int r = 0; r <= n; ++r) {
            acc += p[r].scaled(pw / factorial(r));
            pw *= -m;
        }
        py[m] = acc;
    }
    std::vector<QPoly> hk(K + 1);
    hk[0] = QPoly(1);
    for (int k = 1; k <= K; ++k) {
        QPoly acc;
        for (int i = 1; i <= k; ++i) acc += T.mul(py[i], hk[k - i]);
        hk[k] = acc.scaled(Rat(1, k));
    }
    std::vector<std::vector<QPoly>> M(n, std::vector<QPoly>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            long idx = lambda[i] - i + j;
            M[i][j] = (idx < 0 || idx > K) ? QPoly() : hk[idx];
        }
    QPoly schur = determinant(M, [&](const QPoly& a, const QPoly& b) { return T.mul(a, b); });
    QPoly integrand = T.mul(schur, todd_class(T, p));
    return evaluate_top_weight(n, integrand);
}

Rat chi_exact(int n, const SchurWeight& lambda, const Int& d) { return chi_exact(n, lambda).eval(Rat(d)); }

QDegreePolynomial chi_gamma4_leading(const SchurWeight& lambda) {
    check_weight(4, lambda);
    auto c = [](int j) { return QPoly::var(var_c(j)); };
    struct Block {
        QPoly chern;
        std::vector<int> rows;
    };
    std::vector<Block> blocks = {
        {c(1) * c(1) * c(1) * c(1) - (c(1) * c(1) * c(2)).scaled(3) + c(2) * c(2) + (c(1) * c(3)).scaled(2) - c(4), {0, 1, 2, 7}},
        {c(1) * c(1) * c(2) - c(2) * c(2) - c(1) * c(3) + c(4), {0, 1, 3, 6}},
        {-(c(1) * c(3)) + c(2) * c(2), {0, 1, 4, 5}},
        {c(1) * c(3) - c(4), {0, 2, 3, 5}},
        {c(4), {1, 2, 3, 4}},
    };
    QDegreePolynomial total;
    for (const auto& b : blocks) {
        Rat denom = 1;
        for (int r : b.rows) denom *= factorial(r);
        std::vector<std::vector<Int>> M(4, std::vector<Int>(4));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                Int v;
                mpz_pow_ui(v.get_mpz_t(), Int(lambda[j]).get_mpz_t(), static_cast<unsigned long>(b.rows[i]));
                M[i][j] = v;
            }
        Int det = determinant(M, [](const Int& x, const Int& y) { return Int(x * y); });
        total += evaluate_top_weight(4, b.chern).scaled(Rat(det) / denom);
    }
    return total;
}

Rat chi_gamma4_leading(const SchurWeight& lambda, const Int& d) { return chi_gamma4_leading(lambda).eval(Rat(d)); }

const LeadingForm& chi_leading_form(int n) {
    static std::mutex mu;
    static std::map<int, LeadingForm> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n != 2 && n != 3) throw std::invalid_argument("chi_gamma_leading: n must be 2 or 3");
    const int N = n * (n + 1) / 2;
    const long bound = n == 2 ? 4 : 6;
    auto alphas = exponent_vectors(n, N);

    // sample dominant weights
    std::vector<SchurWeight> pts;
    SchurWeight w(n);
    std::function<void(int, long)> rec = [&](int i, long hi) {
        if (i == n) {
            pts.push_back(w);
            return;
        }
        for (long x = hi; x >= 0; --x) {
            w[i] = x;
            rec(i + 1, x);
        }
    };
    rec(0, bound);

    const int dcols = n + 2;
    const std::size_t cols = alphas.size();
    std::vector<std::vector<Rat>> rows;
    for (const auto& lam_pt : pts) {
        // leading t-coefficient of chi(t*lambda): N-th forward difference / N!,
        // with the (N+1)-th difference required to vanish
        std::vector<QDegreePolynomial> vals;
        for (int t = 0; t <= N + 1; ++t) {
            SchurWeight s = lam_pt;
            for (auto& x : s) x *= t;
            vals.push_back(chi_exact(n, s));
        }
        for (int order = 0; order < N; ++order)
            for (int t = 0; t + 1 < static_cast<int>(vals.size()) - order; ++t) vals[t] = vals[t + 1] - vals[t];
        if (vals[1] != vals[0]) throw std::runtime_error("chi_gamma_leading: chi is not of the expected degree in lambda");
        QDegreePolynomial lead = vals[0].scaled(1 / factorial(N));
        std::vector<Rat> row(cols + dcols);
        for (std::size_t j = 0; j < cols; ++j) row[j] = eval_monomial(alphas[j], lam_pt);
        for (int k = 0; k < dcols; ++k) row[cols + k] = lead.coeff(k);
        rows.push_back(std::move(row));
    }
    // exact Gaussian elimination; leftover rows are held-out checks
    std::size_t r = 0;
    std::vector<std::size_t> pivcol;
    for (std::size_t col = 0; col < cols && r < rows.size(); ++col) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        Rat inv = 1 / rows[r][col];
        for (auto& x : rows[r]) x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][col] == 0) continue;
            Rat f = rows[i][col];
            for (std::size_t j = col; j < rows[i].size(); ++j) rows[i][j] -= f * rows[r][j];
        }
        pivcol.push_back(col);
        ++r;
    }
    if (pivcol.size() != cols) throw std::runtime_error("chi_gamma_leading: sample points do not determine the form");
    for (std::size_t i = r; i < rows.size(); ++i)
        for (int k = 0; k < dcols; ++k)
            if (rows[i][cols + k] != 0) throw std::runtime_error("chi_gamma_leading: fit residual is nonzero");
    LeadingForm form;
    for (std::size_t i = 0; i < cols; ++i) {
        std::vector<Rat> dc(dcols);
        for (int k = 0; k < dcols; ++k) dc[k] = rows[i][cols + k];
        QDegreePolynomial q(dc);
        if (!q.is_zero()) form[alphas[pivcol[i]]] = q;
    }
    return cache.emplace(n, std::move(form)).first->second;
}

QDegreePolynomial chi_gamma_leading(int n, const SchurWeight& lambda) {
    check_weight(n, lambda);
    return eval_form(chi_leading_form(n), lambda);
}

Rat chi_gamma_leading(int n, const SchurWeight& lambda, const Int& d) {
    return chi_gamma_leading(n, lambda).eval(Rat(d));
}

Rat slice_volume(int n) {
    LeadingForm one;
    one[std::vector<int>(n, 0)] = QDegreePolynomial({Rat(1)});
    return integrate_over_slice(n, one).coeff(0);
}

QDegreePolynomial integrate_over_slice(int n, const LeadingForm& form) {
    std::vector<QPoly> lambda;
    std::vector<long> w;
    QPoly t1 = QPoly::var(var_a(1)), t2 = QPoly::var(var_a(2)), t3 = QPoly::var(var_a(3));
    if (n == 2) {
        lambda = {QPoly(1) - t1.scaled(2), t1};
        w = {3};
    } else if (n == 3) {
        lambda = {QPoly(1) - t1.scaled(2) - t2.scaled(3) - t3.scaled(5), t1 + t2 + t3, t3};
        w = {3, 5, 6};
    } else {
        throw std::invalid_argument("integrate_over_slice: n must be 2 or 3");
    }
    const int k = static_cast<int>(w.size());
    QDegreePolynomial total;
    for (const auto& [alpha, coef] : form) {
        QPoly prod(1);
        for (int i = 0; i < n; ++i) prod = prod * pow(lambda[i], static_cast<unsigned>(alpha[i]));
        Rat integral = 0;
        for (const auto& [m, c] : prod.terms()) {
            // int_{sum w_i t_i <= 1} t^beta dt = prod w_i^{-(beta_i+1)} beta! / (|beta|+k)!
            Rat v = c;
            long sum = 0;
            for (int i = 0; i < k; ++i) {
                long b = m.exponent(var_a(i + 1));
                sum += b;
                v *= factorial(b);
                Int wp;
                mpz_pow_ui(wp.get_mpz_t(), Int(w[i]).get_mpz_t(), static_cast<unsigned long>(b + 1));
                v /= Rat(wp);
            }
            v /= factorial(sum + k);
            integral += v;
        }
        total += coef.scaled(integral);
    }
    return total;
}

QDegreePolynomial chi_E_leading(int n) { return integrate_over_slice(n, chi_leading_form(n)); }

LeadingForm h2_bound_form(int n) {
    if (n == 3) {
        QPoly s = lam(1) + lam(2) + lam(3);
        QPoly v = (lam(1) - lam(2)) * (lam(1) - lam(3)) * (lam(2) - lam(3));
        QPoly part = (pow(s, 3) * v).scaled(Rat(3, 2));
        return form_from(3, part, QDegreePolynomial({Rat(0), Rat(13), Rat(1)}));
    }
    if (n == 4) {
        QPoly s = lam(1) + lam(2) + lam(3) + lam(4);
        QPoly v(1), pairs, squares;
        for (int i = 1; i <= 4; ++i) {
            squares += lam(i) * lam(i);
            for (int j = i + 1; j <= 4; ++j) {
                v = v * (lam(i) - lam(j));
                pairs += lam(i) * lam(j);
            }
        }
        QPoly base = (v * s * s).scaled(Rat(1, 80));
        LeadingForm f;
        // d * base * [ (5d^2 + 132d + 1308) pairs + (648 + 72d) squares ]
        for (auto& [alpha, c] : form_from(4, base * pairs, QDegreePolynomial({Rat(0), Rat(1308), Rat(132), Rat(5)})))
            f[alpha] += c;
        for (auto& [alpha, c] : form_from(4, base * squares, QDegreePolynomial({Rat(0), Rat(648), Rat(72)}))) f[alpha] += c;
        LeadingForm clean;
        for (auto& [alpha, c] : f)
            if (!c.is_zero()) clean[alpha] = c;
        return clean;
    }
    throw std::invalid_argument("h2_bound: n must be 3 or 4");
}

QDegreePolynomial h2_bound(int n, const SchurWeight& lambda) {
    check_weight(n, lambda);
    return eval_form(h2_bound_form(n), lambda);
}

Rat h2_bound(int n, const SchurWeight& lambda, const Int& d) { return h2_bound(n, lambda).eval(Rat(d)); }

QDegreePolynomial h0_minorant(int n) {
    if (n == 2) return chi_E_leading(2);
    if (n == 3) return chi_E_leading(3) - integrate_over_slice(3, h2_bound_form(3));
    if (n == 4)
        throw std::invalid_argument("h0_threshold: n = 4 is out of scope (needs index sets that are not available here)");
    throw std::invalid_argument("h0_threshold: n must be 2 or 3");
}

Int h0_threshold(int n) {
    DegreePolynomial p = clear_denominators(h0_minorant(n));
    if (p.is_zero() || p.lead() <= 0) throw std::runtime_error("h0_threshold: minorant has no positive leading term");
    return positivity_threshold(p, Int(1));
}

}  // namespace jt
