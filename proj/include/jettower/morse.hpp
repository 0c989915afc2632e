#pragma once

#include "jettower/degree_poly.hpp"
#include "jettower/tower.hpp"

#include <vector>

namespace jt {

using Weight = std::vector<Int>;

struct MorseResult {
    DegreePolynomial P;
    DegreePolynomial Pprime;
};

bool nef_cone_check(const Weight& a);
Weight canonical_weight(int n);
// Each a_i at the upper end of its cube interval:
// a_i = (3^{n-i+1}-1)/2 * n^2 for i < n, and a_n = 1 + n^2.
Weight cube_weight(int n);

// a_1 u_1 + ... + a_n u_n + 2|a| h
Poly morse_linear_form(const Weight& a);

// Integral over X_n of (L^e) * x, where L = a.u + b h and x is 1, h or c_1
// (selected by `extra`), with e + deg x = n^2. Computed by pushing powers of
// L down the tower through Segre classes.
enum class BaseFactor { One, H, C1 };
DegreePolynomial integrate_linear_power(int n, const Weight& a, const Int& b, int e, BaseFactor extra, int workers = 1);

// P and P' by the Segre pushdown.
MorseResult morse_polynomials(int n, const Weight& a, int workers = 1);

// P and P' by expanding the powers into monomials and reducing each with
// the tower relations; shards are reduced on `workers` threads.
MorseResult morse_polynomials_expanded(TowerContext& ctx, const Weight& a, int workers = 1);

// Minimal d0 >= n+3 with (d-n-2) P(d) + (n^2+2n) P'(d) > 0 for all d >= d0.
DegreePolynomial cleared_form(int n, const MorseResult& r);
Int degree_threshold(int n, const MorseResult& r);
Int degree_threshold(int n, const Weight& a, int workers = 1);

}  // namespace jt
