#include "jettower/estimates.hpp"
#include "jettower/tower.hpp"

#include "enumerate.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

using namespace jt;
using testutil::compositions;

namespace {

std::vector<Monomial> all_top_monomials(int n) {
    auto a = top_monomials(n, false);
    auto b = top_monomials(n, true);
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

Poly mono(const Monomial& m) { return Poly::term(m, Int(1)); }

}  // namespace

TEST_SUITE("tower") {
    TEST_CASE("lambda coefficients") {
        for (int n = 2; n <= 6; ++n)
            for (int j = 1; j <= n; ++j) CHECK(lambda_coeff(n, j, j) == 1);
        CHECK(lambda_coeff(5, 1, 0) == 4);
        CHECK(lambda_coeff(4, 2, 0) == 2);
        CHECK(lambda_coeff(2, 2, 1) == 0);
        CHECK(lambda_coeff(2, 2, 0) == -1);
        CHECK_THROWS_AS(lambda_coeff(3, 4, 0), std::out_of_range);
        CHECK_THROWS_AS(lambda_coeff(3, 2, 3), std::out_of_range);
        CHECK_THROWS_AS(lambda_coeff(3, 0, 0), std::out_of_range);
    }

    TEST_CASE("chern classes on levels") {
        TowerContext ctx(3);
        CHECK(ctx.chern_level(2, 0) == Poly::var(var_c(2)));
        CHECK(ctx.chern_level(0, 2) == Poly(1));
        CHECK(ctx.chern_level(4, 1).is_zero());
        CHECK(ctx.chern_level(1, 3) == parse_poly("c1 + 2*u1 + 2*u2 + 2*u3"));
        TowerContext two(2);
        CHECK(two.chern_level(2, 1) == parse_poly("c2 - u1^2"));
    }

    TEST_CASE("chern classes agree with the direct product formula") {
        for (int n = 2; n <= 4; ++n) {
            TowerContext ctx(n);
            oracle::BruteTower bt(n);
            for (int level = 0; level <= n; ++level) {
                auto c = bt.chern(level);
                for (int j = 0; j <= n; ++j) CHECK(ctx.chern_level(j, level) == c[j]);
            }
        }
    }

    TEST_CASE("pushforward rules") {
        for (int n = 2; n <= 3; ++n) {
            TowerContext ctx(n);
            // a class of the given degree on the level below that survives degree-kill
            auto omega = [&](int level, int deg) {
                int a = level == 1 ? deg : std::min(deg, n - 1);
                Poly w = Poly::var(var_h(), static_cast<std::uint32_t>(a));
                if (level > 1) w = w * Poly::var(var_u(level - 1), static_cast<std::uint32_t>(deg - a));
                return w;
            };
            for (int level = 1; level <= n; ++level) {
                Poly u = Poly::var(var_u(level));
                Poly top = omega(level, ctx.dim(level) - n + 1);
                CHECK(ctx.pushforward(top * pow(u, n - 1), level) == top);
                CHECK(ctx.pushforward_any(top * pow(u, n - 2), level).is_zero());
                Poly low = omega(level, ctx.dim(level) - n);
                Poly expected = -ctx.mul(low, ctx.chern_level(1, level - 1));
                CHECK_FALSE(expected.is_zero());
                CHECK(ctx.pushforward(low * pow(u, n), level) == expected);
            }
            CHECK_THROWS_AS(ctx.pushforward(Poly::var(var_u(1)), 1), std::invalid_argument);
        }
    }

    TEST_CASE("base evaluation") {
        for (int n = 2; n <= 6; ++n) {
            TowerContext ctx(n);
            CHECK(ctx.evaluate_base(Poly::var(var_h(), n)) == DegreePolynomial({Int(0), Int(1)}));
            Poly c1h = Poly::var(var_c(1)) * Poly::var(var_h(), n - 1);
            CHECK(ctx.evaluate_base(c1h) == DegreePolynomial({Int(0), Int(n + 2), Int(-1)}));
            CHECK_THROWS_AS(ctx.evaluate_base(Poly::var(var_h(), n + 1)), std::invalid_argument);
        }
        TowerContext two(2);
        // d (4-d)^2
        CHECK(two.evaluate_base(parse_poly("c1^2")) == DegreePolynomial({Int(0), Int(16), Int(-8), Int(1)}));
    }

    TEST_CASE("hypersurface chern classes against the series expansion") {
        for (int n = 2; n <= 6; ++n)
            for (long d = 1; d <= 9; ++d) {
                auto ref = oracle::hypersurface_chern_at(n, Int(d));
                for (int j = 1; j <= n; ++j) CHECK(hypersurface_chern(n, j).eval(Int(d)) == ref[j]);
            }
    }

    TEST_CASE("top coefficient of the central monomials") {
        for (int n = 2; n <= 3; ++n) {
            TowerContext ctx(n);
            std::vector<int> all_n(n, n);
            CHECK(ctx.evaluate_top(mono(tower_monomial(0, all_n))).coeff(n + 1) == 1);
            std::vector<int> last(n, n);
            last[n - 1] = n - 1;
            CHECK(ctx.evaluate_top(mono(tower_monomial(0, last, 1))).coeff(n + 1) == -1);
        }
    }

    TEST_CASE("reduction agrees with the brute-force oracle on every monomial") {
        for (int n = 2; n <= 3; ++n) {
            TowerContext ctx(n);
            oracle::BruteTower bt(n);
            int mismatches = 0;
            for (const auto& m : all_top_monomials(n))
                if (ctx.evaluate_top(mono(m)) != bt.integrate(mono(m))) ++mismatches;
            CHECK(mismatches == 0);
        }
    }

    TEST_CASE("constant coefficient vanishes") {
        for (int n = 2; n <= 3; ++n) {
            TowerContext ctx(n);
            int bad = 0;
            for (const auto& m : all_top_monomials(n))
                if (ctx.evaluate_top(mono(m)).coeff(0) != 0) ++bad;
            CHECK(bad == 0);
        }
    }

    TEST_CASE("positive powers of h kill the top coefficient") {
        for (int n = 2; n <= 3; ++n) {
            TowerContext ctx(n);
            int bad = 0, seen = 0;
            for (const auto& m : all_top_monomials(n)) {
                if (m.exponent(var_h()) == 0) continue;
                ++seen;
                if (ctx.evaluate_top(mono(m)).coeff(n + 1) != 0) ++bad;
            }
            CHECK(seen > 0);
            CHECK(bad == 0);
        }
    }

    TEST_CASE("u-monomials above the central one have no top coefficient") {
        for (int n = 2; n <= 3; ++n) {
            TowerContext ctx(n);
            std::vector<int> central(n, n);
            int bad = 0, seen = 0;
            for (const auto& e : compositions(n * n, n)) {
                if (!testutil::revlex_less(central, e)) continue;
                ++seen;
                if (ctx.evaluate_top(mono(tower_monomial(0, e))).coeff(n + 1) != 0) ++bad;
            }
            CHECK(seen > 0);
            CHECK(bad == 0);
        }
    }

    TEST_CASE("four vanishing families") {
        for (int n = 2; n <= 3; ++n) {
            TowerContext ctx(n);
            int bad = 0, seen = 0;
            auto check = [&](const Monomial& m, int level) {
                ++seen;
                if (ctx.integrate(mono(m), level).coeff(n + 1) != 0) ++bad;
            };
            for (int k = 1; k <= n - 1; ++k) {
                for (const auto& e : compositions(n + k * (n - 1), k)) check(tower_monomial(0, e), k);
                for (const auto& e : compositions(k * n, k))
                    if (e[k - 1] <= n - 1) check(tower_monomial(0, e, n - k), k);
            }
            for (int l = 1; l <= n; ++l)
                for (const auto& e : compositions(l * n, l)) {
                    if (e[l - 1] > n - 1) continue;
                    std::vector<int> full = e;
                    full.resize(n, n);
                    check(tower_monomial(0, full), n);
                    if (l <= n - 1) {
                        std::vector<int> part = e;
                        part.resize(n - 1, n);
                        check(tower_monomial(0, part, 1), n - 1);
                    }
                }
            CHECK(seen > 0);
            CHECK(bad == 0);
        }
    }

    TEST_CASE("single fiber step equals the signed Jacobi-Trudy class") {
        for (int n = 2; n <= 3; ++n) {
            TowerContext ctx(n);
            int bad = 0, seen = 0;
            for (int level = 1; level <= n; ++level)
                for (int i = n - 1; i <= ctx.dim(level); ++i) {
                    int rest = ctx.dim(level) - i;
                    // Omega = h^l u_1^.. u_{level-1}^..
                    for (const auto& e : compositions(rest, level)) {
                        if (e[0] > n) continue;
                        std::vector<int> u(e.begin() + 1, e.end());
                        Monomial omega = tower_monomial(e[0], u);
                        Poly lhs = mono(omega) * Poly::var(var_u(level), static_cast<std::uint32_t>(i));
                        int J = i - n + 1;
                        Poly rhs = ctx.mul(mono(omega), jacobi_trudy(ctx, level - 1, J));
                        if (J % 2) rhs = -rhs;
                        ++seen;
                        if (ctx.integrate(lhs, level) != ctx.integrate(rhs, level - 1)) ++bad;
                    }
                }
            CHECK(seen > 0);
            CHECK(bad == 0);
        }
    }

    TEST_CASE("linearity on random classes") {
        std::mt19937 rng(11);
        for (int n = 2; n <= 3; ++n) {
            TowerContext ctx(n);
            auto monos = all_top_monomials(n);
            std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
            std::uniform_int_distribution<int> coef(-50, 50);
            for (int trial = 0; trial < 20; ++trial) {
                Poly A, B;
                for (int t = 0; t < 5; ++t) A += Poly::term(monos[pick(rng)], Int(coef(rng)));
                for (int t = 0; t < 5; ++t) B += Poly::term(monos[pick(rng)], Int(coef(rng)));
                Int alpha = coef(rng), beta = coef(rng);
                DegreePolynomial lhs = ctx.evaluate_top(A.scaled(alpha) + B.scaled(beta));
                DegreePolynomial rhs = ctx.evaluate_top(A).scaled(alpha) + ctx.evaluate_top(B).scaled(beta);
                CHECK(lhs == rhs);
            }
        }
    }

    TEST_CASE("memo entries stay below degree n") {
        TowerContext ctx(3);
        for (int p = 0; p <= 9; ++p) {
            const auto& nf = ctx.power_normal_form(2, p);
            REQUIRE(nf.size() == 3);
            for (const auto& coef : nf) CHECK(TowerContext::level_of(coef) <= 1);
        }
    }

    TEST_CASE("degree mismatch is rejected") {
        TowerContext ctx(2);
        CHECK_THROWS_AS(ctx.evaluate_top(mono(parse_monomial("u1^2 u2"))), std::invalid_argument);
        CHECK_THROWS_AS(ctx.evaluate_top(parse_poly("u1^2*u2^2 + u1")), std::invalid_argument);
    }

    TEST_CASE("cache round trip") {
        std::string path = "tower_cache_test.memo";
        DegreePolynomial fresh;
        std::size_t entries = 0;
        {
            TowerContext ctx(3);
            fresh = ctx.evaluate_top(mono(parse_monomial("u1^3 u2^3 u3^3")));
            entries = ctx.memo_size();
            ctx.save_cache(path);
        }
        TowerContext loaded(3);
        std::string why;
        REQUIRE(loaded.load_cache(path, &why));
        CHECK(loaded.memo_size() == entries);
        CHECK(loaded.evaluate_top(mono(parse_monomial("u1^3 u2^3 u3^3"))) == fresh);
        CHECK(loaded.memo_size() == entries);

        TowerContext other_n(2);
        CHECK_FALSE(other_n.load_cache(path, &why));
        CHECK(why == "dimension mismatch");
        TowerContext other_policy(3, Policy::Upper);
        CHECK_FALSE(other_policy.load_cache(path, &why));
        CHECK(why == "policy mismatch");

        // corrupt: drop the end marker
        {
            std::ifstream in(path);
            std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
            all.resize(all.rfind("end"));
            std::ofstream out(path);
            out << all;
        }
        TowerContext corrupted(3);
        CHECK_FALSE(corrupted.load_cache(path, &why));
        CHECK(corrupted.memo_size() == 0);
        {
            std::ofstream out(path);
            out << "jettower-memo 99 n=3 policy=exact entries=0\nend\n";
        }
        CHECK_FALSE(corrupted.load_cache(path, &why));
        CHECK(why == "version mismatch");
        std::remove(path.c_str());
        CHECK_FALSE(corrupted.load_cache(path, &why));
    }
}
