#pragma once

#include "jettower/degree_poly.hpp"
#include "jettower/tower.hpp"

#include <string>
#include <utility>
#include <vector>

namespace jt {

struct Ledger {
    int n = 0;
    Int lambda_bound;          // 2^n
    Int multinomial_top;       // (n+1)^{n^2}
    Int multinomial_top_c1;    // (n+1)^{n^2+1}
    Int stirling_top;          // 4 n^{2n-1}
    Int stirling_top_c1;       // 2 n^{2n-1}
    Int weight_bound;          // n^{3n^2} 3^{n^3}
    Int d_bound;               // n^{4n^3} 2^{n^4}
    Int H;
    Int G_top;                 // 1
    Int E;                     // 6 H
    Int E_prime;               // H
    Int d1;                    // ceil(1 + (6nH + (n+1)/2) / (1/2))
    Int d2;                    // 1 + n + 2 + 2(n^2+2n) H

    // Ordered key=value view.
    std::vector<std::pair<std::string, std::string>> fields() const;
};

Int ipow(const Int& base, unsigned long e);

Ledger bound_ledger(int n);
bool check_2n5(int n);

// C_J on level l by the recurrence C_J = c_1 C_{J-1} - c_2 C_{J-2} + ...
Poly jacobi_trudy(TowerContext& ctx, int level, int J);

// Upper reduction of a monomial; ctx must use Policy::Upper.
DegreePolynomial upper_reduce(TowerContext& upper, const Monomial& m);

// All degree-n^2 monomials h^l u^i (c1 = false) or c_1 h^l u^j (c1 = true).
std::vector<Monomial> top_monomials(int n, bool c1);

// max |coeff_{d^k}| over both monomial families, for k = 0..n+1.
std::vector<Int> d_k_table(int n, int workers = 1);
Int d_k_exact(int n, int k);

}  // namespace jt
