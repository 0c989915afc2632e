#include "jettower/jets.hpp"

#include <doctest.h>

#include <set>

using namespace jt;

namespace {

QPoly a(int j) { return QPoly::var(var_a(j)); }

}  // namespace

TEST_SUITE("jet_invariants") {
    TEST_CASE("composition with simple reparametrizations") {
        QPoly lam = QPoly::var(var_t());
        auto sc = compose_jet(2, 4, scaling_reparametrization(lam, 4));
        for (int i = 1; i <= 2; ++i)
            for (int l = 1; l <= 4; ++l)
                CHECK(sc.at(var_f(i, l)) == jet_var(i, l) * QPoly::var(var_t(), static_cast<std::uint32_t>(l)));

        auto id = compose_jet(3, 3, Reparametrization{{QPoly(1), QPoly(), QPoly()}});
        for (int i = 1; i <= 3; ++i)
            for (int l = 1; l <= 3; ++l) CHECK(id.at(var_f(i, l)) == jet_var(i, l));

        auto q = compose_jet(1, 3, Reparametrization{{QPoly(1), a(2), QPoly()}});
        CHECK(q.at(var_f(1, 2)) == jet_var(1, 2) + (a(2) * jet_var(1, 1)).scaled(2));
        // third derivative: f''' + 6 a2 f'' + 0 f'
        CHECK(q.at(var_f(1, 3)) == jet_var(1, 3) + (a(2) * jet_var(1, 2)).scaled(6));

        auto g = compose_jet(1, 3, symbolic_reparametrization(3));
        // (f o phi)''' = a1^3 f''' + 6 a1 a2 f'' + 6 a3 f'
        CHECK(g.at(var_f(1, 3)) ==
              a(1) * a(1) * a(1) * jet_var(1, 3) + (a(1) * a(2) * jet_var(1, 2)).scaled(6) + (a(3) * jet_var(1, 1)).scaled(6));

        CHECK_THROWS_AS(compose_jet(1, 2, Reparametrization{{QPoly(), a(2)}}), std::invalid_argument);
        CHECK_THROWS_AS(compose_jet(1, 3, Reparametrization{{QPoly(1)}}), std::invalid_argument);
    }

    TEST_CASE("invariance examples") {
        QPoly L3 = jet_var(1, 1) * jet_var(2, 2) - jet_var(2, 1) * jet_var(1, 2);
        CHECK(is_invariant(L3, 2, 3));
        CHECK_FALSE(is_invariant(jet_var(1, 2), 2, 2));
        CHECK(is_invariant(jet_var(1, 1) * jet_var(2, 1) * jet_var(3, 1), 3, 3));
        CHECK(is_invariant(jet_var(2, 1).scaled(Rat(7)), 1, 1));
        CHECK_FALSE(is_invariant(L3, 2, 4));
        CHECK_THROWS_AS(is_invariant(jet_var(1, 1) + jet_var(1, 2), 2, 1), std::invalid_argument);
        CHECK_THROWS_AS(is_invariant(jet_var(1, 3), 2, 3), std::invalid_argument);
    }

    TEST_CASE("weights and scaling") {
        CHECK(jet_weight(jet_var(2, 3)) == 3);
        CHECK(jet_weight(jet_det({1, 2, 3, 4}, {1, 2, 3, 4})) == 10);
        CHECK_THROWS_AS(jet_weight(jet_var(1, 1) + jet_var(1, 2)), std::invalid_argument);
        CHECK(scales_with_weight(jet_var(1, 2) * jet_var(2, 3), 5));
        CHECK_FALSE(scales_with_weight(jet_var(1, 2) * jet_var(2, 3), 6));
    }

    TEST_CASE("exact division by a monomial") {
        QPoly f1 = jet_var(1, 1);
        QPoly q = f1 * f1 * jet_var(2, 2) - (f1 * jet_var(1, 2)).scaled(3);
        Monomial m = Monomial::var(var_f(1, 1));
        CHECK(divide_exact(q, m) == f1 * jet_var(2, 2) - jet_var(1, 2).scaled(3));
        CHECK_THROWS_AS(divide_exact(q, Monomial::var(var_f(1, 1), 2)), std::domain_error);
    }

    TEST_CASE("library sizes and names") {
        CHECK(invariant_library(2).size() == 2);
        auto three = invariant_library(3);
        REQUIRE(three.size() == 4);
        CHECK(find_invariant(three, "D6").poly == jet_det({1, 2, 3}, {1, 2, 3}));
        CHECK(jet_weight(find_invariant(three, "D6").poly) == 6);
        auto four = invariant_library(4);
        CHECK(four.size() == 16);
        std::set<std::string> names;
        int generators = 0;
        for (const auto& e : four) {
            names.insert(e.name);
            if (e.generator) ++generators;
            CHECK(jet_weight(e.poly) == e.weight);
            CHECK_FALSE(e.poly.is_zero());
        }
        CHECK(names.size() == 16);
        CHECK(generators == 8);
        CHECK(find_invariant(four, "W10").poly == jet_det({1, 2, 3, 4}, {1, 2, 3, 4}));
        CHECK(find_invariant(four, "W10").weight == 10);
        CHECK(find_invariant(four, "M8").weight == 8);
        CHECK_THROWS_AS(find_invariant(four, "Z99"), std::out_of_range);
        CHECK_THROWS_AS(invariant_library(5), std::invalid_argument);
    }

    TEST_CASE("generators are reparametrization invariant") {
        auto four = invariant_library(4);
        for (const auto& e : four) {
            if (!e.generator) continue;
            CAPTURE(e.name);
            CHECK(is_invariant(e.poly, 4, e.weight));
        }
    }

    TEST_CASE("every element scales and is unipotent invariant") {
        for (int n = 2; n <= 4; ++n)
            for (const auto& e : invariant_library(n)) {
                CAPTURE(e.name);
                CHECK(scales_with_weight(e.poly, e.weight));
                CHECK(is_unipotent_invariant(e.poly, n, 4));
            }
        auto four = invariant_library(4);
        for (const char* name : {"Lambda3", "Lambda5", "D6", "M8"})
            CHECK(is_unipotent_invariant(find_invariant(four, name).poly, 4, 4, true));
        CHECK_FALSE(is_unipotent_invariant(jet_var(2, 1), 2, 1));
    }

    TEST_CASE("syzygies") {
        auto res = syzygy_residuals(invariant_library(4));
        REQUIRE(res.size() == 3);
        for (const auto& r : res) CHECK(r.is_zero());
        CHECK(verify_syzygies(4));
    }

    TEST_CASE("near misses of Lambda7 and D8") {
        auto four = invariant_library(4);
        QPoly l7 = lambda7_unit_variant();
        CHECK(jet_weight(l7) == 7);
        CHECK_FALSE(is_invariant(l7, 4, 7));
        CHECK(l7 != find_invariant(four, "Lambda7").poly);
        CHECK(jet_weight(d8_weight9_variant()) == 9);
    }

    TEST_CASE("verification table") {
        for (int n = 2; n <= 4; ++n) {
            auto rows = verify_jets(n);
            CHECK_FALSE(rows.empty());
            for (const auto& r : rows) {
                CAPTURE(r.subject);
                CAPTURE(r.check);
                CHECK(r.passed);
            }
        }
    }

    TEST_CASE("Schur weights of monomials") {
        CHECK(schur_weight_of_monomial(1, 0, 0, 0) == SchurWeight{1, 0, 0});
        CHECK(schur_weight_of_monomial(0, 0, 0, 1) == SchurWeight{1, 1, 1});
        CHECK(schur_weight_of_monomial(0, 1, 1, 0) == SchurWeight{3, 2, 0});
        CHECK_THROWS_AS(schur_weight_of_monomial(-1, 0, 0, 0), std::invalid_argument);
    }
}
