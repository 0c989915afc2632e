#include "jettower/morse.hpp"

#include <thread>
#include <unordered_map>

namespace jt {

bool nef_cone_check(const Weight& a) {
    if (a.empty()) throw std::invalid_argument("nef_cone_check: empty weight");
    for (const auto& x : a)
        if (x <= 0) throw std::invalid_argument("nef_cone_check: weights must be positive");
    std::size_t n = a.size();
    if (n == 1) return a[0] >= 1;
    for (std::size_t i = 0; i + 2 < n; ++i)
        if (a[i] < 3 * a[i + 1]) return false;
    return a[n - 2] >= 2 * a[n - 1] && 2 * a[n - 1] >= 1;
}

Weight canonical_weight(int n) {
    if (n < 2) throw std::invalid_argument("canonical_weight: n must be at least 2");
    Weight a(n);
    a[n - 1] = 1;
    a[n - 2] = 2;
    for (int i = n - 3; i >= 0; --i) a[i] = 3 * a[i + 1];
    return a;
}

Weight cube_weight(int n) {
    if (n < 2) throw std::invalid_argument("cube_weight: n must be at least 2");
    Weight a(n);
    Int n2 = n * n;
    for (int i = 1; i < n; ++i) {
        Int p;
        mpz_ui_pow_ui(p.get_mpz_t(), 3, static_cast<unsigned long>(n - i + 1));
        a[i - 1] = (p - 1) / 2 * n2;
    }
    a[n - 1] = 1 + n2;
    return a;
}

Poly morse_linear_form(const Weight& a) {
    Int total = 0;
    Poly L;
    for (std::size_t i = 0; i < a.size(); ++i) {
        total += a[i];
        L += Poly::term(Monomial::var(var_u(static_cast<int>(i) + 1)), a[i]);
    }
    return L + Poly::term(Monomial::var(var_h()), 2 * total);
}

namespace {

struct Key {
    int e;
    std::vector<int> segre;  // sorted, positive indices
    bool operator==(const Key& o) const { return e == o.e && segre == o.segre; }
};

struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
        std::size_t h = static_cast<std::size_t>(k.e) * 1000003u;
        for (int s : k.segre) h = (h ^ static_cast<std::size_t>(s)) * 1099511628211ull;
        return h;
    }
};

using State = std::unordered_map<Key, Int, KeyHash>;

// kappa(m, r) = [s^m] (1-s)^{-1} (1+s)^{-r}
class Kappa {
public:
    Kappa(int mmax, int rmax) : mmax_(mmax), tab_((mmax + 1) * (rmax + 1)) {
        for (int r = 0; r <= rmax; ++r) {
            Int acc = 0;
            for (int m = 0; m <= mmax; ++m) {
                Int t = binomial(r + m - 1, m);
                if (r == 0) t = (m == 0) ? 1 : 0;
                acc += (m % 2) ? Int(-t) : t;
                tab_[r * (mmax + 1) + m] = acc;
            }
        }
    }
    const Int& operator()(int m, int r) const { return tab_[r * (mmax_ + 1) + m]; }

private:
    int mmax_;
    std::vector<Int> tab_;
};

struct Step {
    int n;
    const Kappa& kappa;
    Int a;                    // weight of the fiber variable
    std::vector<Int> apow;    // a^k
    std::vector<std::vector<Int>> binom;  // C(e, k)

    void apply(const Key& key, const Int& coef, State& out) const {
        std::vector<int> chosen;
        chosen.reserve(key.segre.size() + 1);
        rec(key, coef, 0, 0, Int(1), chosen, out);
    }

    void rec(const Key& key, const Int& coef, std::size_t idx, int q, const Int& prod, std::vector<int>& chosen,
             State& out) const {
        if (idx == key.segre.size()) {
            for (int k = 0; k <= key.e; ++k) {
                int p = q + k;
                if (p < n - 1) continue;
                Key nk;
                nk.e = key.e - k;
                nk.segre = chosen;
                int jn = p - n + 1;
                if (jn > 0) nk.segre.push_back(jn);
                std::sort(nk.segre.begin(), nk.segre.end());
                Int v = coef * prod * binom[key.e][k] * apow[k];
                auto it = out.find(nk);
                if (it == out.end())
                    out.emplace(std::move(nk), std::move(v));
                else
                    it->second += v;
            }
            return;
        }
        int J = key.segre[idx];
        for (int jp = 0; jp <= J; ++jp) {
            const Int& kv = kappa(J - jp, n + jp);
            if (kv == 0) continue;
            if (jp > 0) chosen.push_back(jp);
            rec(key, coef, idx + 1, q + (J - jp), prod * kv, chosen, out);
            if (jp > 0) chosen.pop_back();
        }
    }
};

State step_down(const State& in, const Step& step, int workers) {
    std::vector<const State::value_type*> items;
    items.reserve(in.size());
    for (const auto& kv : in) items.push_back(&kv);
    workers = std::max(1, std::min<int>(workers, static_cast<int>(items.size())));
    std::vector<State> parts(workers);
    auto run = [&](int w) {
        for (std::size_t i = w; i < items.size(); i += workers) step.apply(items[i]->first, items[i]->second, parts[w]);
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> th;
        for (int w = 0; w < workers; ++w) th.emplace_back(run, w);
        for (auto& t : th) t.join();
    }
    State out = std::move(parts[0]);
    for (int w = 1; w < workers; ++w)
        for (auto& kv : parts[w]) {
            auto it = out.find(kv.first);
            if (it == out.end())
                out.emplace(kv.first, std::move(kv.second));
            else
                it->second += kv.second;
        }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second == 0)
            it = out.erase(it);
        else
            ++it;
    }
    return out;
}

}  // namespace

DegreePolynomial integrate_linear_power(int n, const Weight& a, const Int& b, int e, BaseFactor extra, int workers) {
    if (static_cast<int>(a.size()) != n) throw std::invalid_argument("weight length must equal n");
    int extra_deg = extra == BaseFactor::One ? 0 : 1;
    if (e + extra_deg != n * n) throw std::invalid_argument("integrate_linear_power: degree mismatch");
    int N = n * n;
    Kappa kappa(N + 1, n + N + 1);
    std::vector<std::vector<Int>> binom(N + 1, std::vector<Int>(N + 1));
    for (int x = 0; x <= N; ++x)
        for (int y = 0; y <= x; ++y) binom[x][y] = binomial(x, y);

    State st;
    st.emplace(Key{e, {}}, Int(1));
    for (int level = n; level >= 1; --level) {
        Step step{n, kappa, a[level - 1], {}, binom};
        step.apow.resize(N + 1);
        step.apow[0] = 1;
        for (int k = 1; k <= N; ++k) step.apow[k] = step.apow[k - 1] * step.a;
        st = step_down(st, step, workers);
    }
    // Base: (b h)^e prod S_J(T_X) * extra, with S(T_X) = (1 + d h)(1 + h)^{-(n+2)}.
    auto neg_binom = [&](int J) -> Int {  // C(-(n+2), J)
        if (J < 0) return 0;
        Int v = binomial(n + 1 + J, J);
        return (J % 2) ? Int(-v) : v;
    };
    DegreePolynomial total;
    std::vector<Int> bpow(n + 1);
    bpow[0] = 1;
    for (int k = 1; k <= n; ++k) bpow[k] = bpow[k - 1] * b;
    for (const auto& [key, coef] : st) {
        int w = key.e + extra_deg;
        for (int J : key.segre) w += J;
        if (w != n) throw std::logic_error("integrate_linear_power: weight drift");
        DegreePolynomial v({coef * bpow[key.e]});
        for (int J : key.segre) v = v * DegreePolynomial({neg_binom(J), neg_binom(J - 1)});
        if (extra == BaseFactor::C1) v = v * DegreePolynomial({Int(n + 2), Int(-1)});
        total += v;
    }
    return total * DegreePolynomial({Int(0), Int(1)});
}

MorseResult morse_polynomials(int n, const Weight& a, int workers) {
    if (n < 2 || static_cast<int>(a.size()) != n) throw std::invalid_argument("morse_polynomials: need n >= 2 and |a| = n");
    for (const auto& x : a)
        if (x <= 0) throw std::invalid_argument("morse_polynomials: weights must be positive");
    Int abs_a = 0;
    for (const auto& x : a) abs_a += x;
    Int b = 2 * abs_a;
    int N = n * n;
    DegreePolynomial top = integrate_linear_power(n, a, b, N, BaseFactor::One, workers);
    DegreePolynomial with_h = integrate_linear_power(n, a, b, N - 1, BaseFactor::H, workers);
    DegreePolynomial with_c1 = integrate_linear_power(n, a, b, N - 1, BaseFactor::C1, workers);
    MorseResult r;
    r.P = top - with_h.scaled(Int(N) * b);
    r.Pprime = with_c1.scaled(Int(N) * abs_a);
    return r;
}

MorseResult morse_polynomials_expanded(TowerContext& ctx, const Weight& a, int workers) {
    int n = ctx.n();
    if (static_cast<int>(a.size()) != n) throw std::invalid_argument("weight length must equal n");
    if (ctx.policy() != Policy::Exact) throw std::invalid_argument("morse_polynomials_expanded: exact context required");
    int N = n * n;
    Int abs_a = 0;
    for (const auto& x : a) abs_a += x;
    Poly L = morse_linear_form(a);
    Poly LN1 = pow(L, N - 1);
    Poly pi = LN1 * L - (LN1 * Poly::var(var_h())).scaled(Int(N) * 2 * abs_a);
    Poly pip = (LN1 * Poly::var(var_c(1))).scaled(Int(N) * abs_a);

    // Warm the memo single-threaded so that shards only read it.
    for (int level = 1; level <= n; ++level)
        for (int p = n; p <= N; ++p) ctx.power_normal_form(level, p);

    auto reduce = [&](const Poly& cls) {
        const auto& terms = cls.terms();
        int w = std::max(1, workers);
        std::vector<DegreePolynomial> part(w);
        auto run = [&](int k) {
            for (std::size_t i = k; i < terms.size(); i += w)
                part[k] += ctx.evaluate_top(Poly::term(terms[i].first, terms[i].second));
        };
        if (w == 1) {
            run(0);
        } else {
            std::vector<std::thread> th;
            for (int k = 0; k < w; ++k) th.emplace_back(run, k);
            for (auto& t : th) t.join();
        }
        DegreePolynomial s;
        for (const auto& x : part) s += x;
        return s;
    };
    return {reduce(pi), reduce(pip)};
}

DegreePolynomial cleared_form(int n, const MorseResult& r) {
    DegreePolynomial lin({Int(-(n + 2)), Int(1)});
    return lin * r.P + r.Pprime.scaled(Int(n * n + 2 * n));
}

Int degree_threshold(int n, const MorseResult& r) {
    DegreePolynomial q = cleared_form(n, r);
    if (q.is_zero() || q.lead() <= 0) throw std::runtime_error("degree_threshold: leading coefficient of the cleared form is not positive");
    return positivity_threshold(q, Int(n + 3));
}

Int degree_threshold(int n, const Weight& a, int workers) { return degree_threshold(n, morse_polynomials(n, a, workers)); }

}  // namespace jt
