#include "jettower/degree_poly.hpp"

#include <doctest.h>

#include <random>

using namespace jt;

namespace {

DegreePolynomial dp(std::initializer_list<long> c) {
    std::vector<Int> v;
    for (long x : c) v.push_back(Int(x));
    return DegreePolynomial(v);
}

// Reference: scan every integer from `lower` to a safe bound.
Int scan_threshold(const DegreePolynomial& p, const Int& lower) {
    Int bound = largest_root_bound(p);
    Int best = lower;
    for (Int d = lower; d <= bound; ++d)
        if (p.eval(d) <= 0) best = d + 1;
    return best;
}

}  // namespace

TEST_SUITE("degree_poly") {
    TEST_CASE("largest root bound") {
        CHECK(largest_root_bound(dp({-3, -2, 1})) == 6);
        CHECK(largest_root_bound(dp({1, 1})) == 2);
        CHECK(largest_root_bound(dp({0, 0, 0, 1})) == 1);
        CHECK_THROWS_AS(largest_root_bound(dp({1, -1})), std::invalid_argument);
        CHECK_THROWS_AS(largest_root_bound(DegreePolynomial()), std::invalid_argument);
    }

    TEST_CASE("root counting") {
        // (d-3)(d+1)
        DegreePolynomial p = dp({-3, -2, 1});
        CHECK(count_roots(p, Int(-10), Int(10)) == 2);
        CHECK(count_roots(p, Int(0), Int(10)) == 1);
        CHECK(count_roots(p, Int(3), Int(10)) == 0);
        CHECK(count_roots(p, Int(2), Int(3)) == 1);
        // (d-2)^2 (d-5): double root counted once
        CHECK(count_roots(dp({-20, 24, -9, 1}), Int(0), Int(10)) == 2);
    }

    TEST_CASE("positivity threshold matches a scan") {
        CHECK(positivity_threshold(dp({-3, -2, 1}), Int(0)) == 4);
        CHECK(positivity_threshold(dp({-20, 24, -9, 1}), Int(0)) == 6);
        // positive between roots, must not stop early: (d-2)(d-3)(d-7)(d-8) style sign changes
        DegreePolynomial q = dp({2, -1}) * dp({3, -1}) * dp({-7, 1}) * dp({-8, 1});
        CHECK(positivity_threshold(q, Int(0)) == 9);
        std::mt19937 rng(3);
        std::uniform_int_distribution<int> r(-12, 12);
        for (int trial = 0; trial < 200; ++trial) {
            DegreePolynomial p = dp({1});
            int deg = 1 + trial % 3;
            for (int i = 0; i < deg; ++i) p = p * dp({r(rng), 1});
            p = p + dp({r(rng)});
            if (p.is_zero() || p.lead() <= 0) continue;
            CHECK(positivity_threshold(p, Int(-50)) == scan_threshold(p, Int(-50)));
        }
    }

    TEST_CASE("conversions") {
        QDegreePolynomial q({Rat(0), Rat(77, 324), Rat(-17, 162), Rat(1, 162)});
        CHECK(clear_denominators(q) == dp({0, 77, -34, 2}));
        CHECK(degree_poly_from(parse_poly("3*d^2 - d")) == dp({0, -1, 3}));
        CHECK_THROWS_AS(degree_poly_from(parse_poly("h")), std::invalid_argument);
        CHECK(dp({0, -1, 3}).to_string() == "3*d^2 - d");
        CHECK(dp({0, -1, 3}).eval(Int(4)) == 44);
    }
}
