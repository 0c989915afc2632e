#pragma once

#include "jettower/degree_poly.hpp"
#include "jettower/poly.hpp"

#include <map>
#include <vector>

namespace jt {

using SchurWeight = std::vector<long>;

struct LatticePoint {
    std::vector<long> coords;  // (a,b) or (a,b,c,d)
    SchurWeight weight;
};

// Lattice points of the graded Schur decomposition of E_{n,m} for n = 2, 3.
std::vector<LatticePoint> decompose_gr(int n, long m);

// Euler characteristic of Gamma^lambda of the cotangent bundle of a smooth
// degree-d hypersurface in P^{n+1}, as a rational polynomial in d.
QDegreePolynomial chi_exact(int n, const SchurWeight& lambda);
Rat chi_exact(int n, const SchurWeight& lambda, const Int& d);

// The five-block leading expression in dimension 4.
QDegreePolynomial chi_gamma4_leading(const SchurWeight& lambda);
Rat chi_gamma4_leading(const SchurWeight& lambda, const Int& d);

// Homogeneous leading form of chi in lambda (degree n(n+1)/2), n = 2, 3:
// exponent vector -> coefficient in Q[d].
using LeadingForm = std::map<std::vector<int>, QDegreePolynomial>;
const LeadingForm& chi_leading_form(int n);
QDegreePolynomial chi_gamma_leading(int n, const SchurWeight& lambda);
Rat chi_gamma_leading(int n, const SchurWeight& lambda, const Int& d);

// Integral of a homogeneous form over the normalized weight slice
// ({a+3b=1} for n=2, {a+3b+5c+6d=1} for n=3), parametrized by the free
// coordinates (b) or (b,c,d).
QDegreePolynomial integrate_over_slice(int n, const LeadingForm& form);
Rat slice_volume(int n);

// Leading m-power coefficient of chi(E_{n,m}).
QDegreePolynomial chi_E_leading(int n);

QDegreePolynomial h2_bound(int n, const SchurWeight& lambda);
Rat h2_bound(int n, const SchurWeight& lambda, const Int& d);
// h2_bound as a homogeneous form in lambda (n = 3).
LeadingForm h2_bound_form(int n);

// Leading coefficient (in m) of the h^0 minorant.
QDegreePolynomial h0_minorant(int n);
Int h0_threshold(int n);

// Reference values for n = 4 kept as documentation only.
inline constexpr long kH0ThresholdReferenceN4 = 259;
inline constexpr long kMorseTwistReferenceN4 = 3203;

}  // namespace jt
