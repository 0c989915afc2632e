#pragma once

#include "jettower/poly.hpp"
#include "jettower/schur_euler.hpp"

#include <map>
#include <string>
#include <vector>

namespace jt {

using JetPolynomial = QPoly;

// f_i^{(k)}
JetPolynomial jet_var(int i, int k);

// Determinant of the matrix (f_{idx[r]}^{(ord[c])}).
JetPolynomial jet_det(const std::vector<int>& idx, const std::vector<int>& ord);

// phi(t) = a_1 t + ... + a_k t^k; a[0] is a_1.
struct Reparametrization {
    std::vector<QPoly> a;
};

// a_j are the free symbols a1..ak.
Reparametrization symbolic_reparametrization(int k);
Reparametrization scaling_reparametrization(const QPoly& lambda, int k);

// Substitution f_i^{(l)} -> (f_i o phi)^{(l)}(0) for 1 <= i <= n, 1 <= l <= k.
std::map<VarId, QPoly> compose_jet(int n, int k, const Reparametrization& phi);

// Q((f o phi)', ..., (f o phi)^{(k)}) == a_1^m Q with symbolic a_1..a_k.
bool is_invariant(const JetPolynomial& q, int k, int m);

// Invariance under f_i -> f_i + sum_{j<i} v_i^j f_j. With full = false the
// elementary substitutions f_i -> f_i + v f_j are checked one at a time.
bool is_unipotent_invariant(const JetPolynomial& q, int n, int k, bool full = false);

// Q(lambda f', lambda^2 f'', ...) == lambda^m Q with symbolic lambda.
bool scales_with_weight(const JetPolynomial& q, int m);

// Weighted degree of a homogeneous jet polynomial; throws otherwise.
long jet_weight(const JetPolynomial& q);

// Exact division by a monomial; throws std::domain_error on a remainder.
JetPolynomial divide_exact(const JetPolynomial& q, const Monomial& m);

struct NamedInvariant {
    std::string name;
    int weight = 0;
    bool generator = true;  // false for the eight quotients
    JetPolynomial poly;
};

std::vector<NamedInvariant> invariant_library(int n);

// Near misses of two library entries: this Lambda7
// has coefficient 1 on Delta^{'','''} (the invariant needs 4), and this D8
// is built from Delta^{',''',''''}, which has weight 9.
JetPolynomial lambda7_unit_variant();
JetPolynomial d8_weight9_variant();

const NamedInvariant& find_invariant(const std::vector<NamedInvariant>& lib, const std::string& name);

// Residuals of the three displayed relations (n = 4).
std::vector<JetPolynomial> syzygy_residuals(const std::vector<NamedInvariant>& lib);
bool verify_syzygies(int n);

struct JetCheck {
    std::string subject;
    std::string check;
    bool passed = false;
};

// Full verification table used by `jets verify`.
std::vector<JetCheck> verify_jets(int n);

SchurWeight schur_weight_of_monomial(long a, long b, long c, long d);

}  // namespace jt
