#pragma once

#include "jettower/degree_poly.hpp"
#include "jettower/poly.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace jt {

// Exact reduction, or the majorizing variant in which every relation
// sign becomes +, every lambda becomes 2^n and the base substitution uses
// absolute values.
enum class Policy { Exact, Upper };

// lambda_{j,j-k} = C(n-k, j-k) - C(n-k, j-k-1)
Int lambda_coeff(int n, int j, int k);

Int binomial(long n, long k);

// Base Chern class c_j of a degree-d hypersurface in P^{n+1}, as the
// polynomial gamma_j(d) with c_j = gamma_j(d) h^j.
DegreePolynomial hypersurface_chern(int n, int j, Policy policy = Policy::Exact);

// Monomial of the form h^l * prod c_k^{e_k} * prod u_i^{p_i}.
Monomial tower_monomial(int l, const std::vector<int>& u_exponents, int c1_power = 0);

class TowerContext {
public:
    explicit TowerContext(int n, Policy policy = Policy::Exact);
    TowerContext(const TowerContext&) = delete;
    TowerContext& operator=(const TowerContext&) = delete;

    int n() const { return n_; }
    Policy policy() const { return policy_; }
    int dim(int level) const { return n_ + level * (n_ - 1); }

    // Policy-aware lambda.
    Int lambda(int j, int k) const;

    // c_j^{[l]} fully expanded in u_1..u_l and the base classes.
    const Poly& chern_level(int j, int level);

    // Normal form of u_l^p: coefficients of u_l^0 .. u_l^{n-1}, each a class
    // on level l-1.
    const std::vector<Poly>& power_normal_form(int level, int p);

    // Level of the highest u present (0 for base classes).
    static int level_of(const Poly& cls);

    // Pushforward from `level` to `level-1`; cls must be homogeneous of
    // degree dim(level).
    Poly pushforward(const Poly& cls, int level);
    // Same without the top-degree precondition.
    Poly pushforward_any(const Poly& cls, int level);

    DegreePolynomial evaluate_base(const Poly& cls) const;
    // Full pushdown of a degree dim(level) class on X_level.
    DegreePolynomial integrate(const Poly& cls, int level);
    DegreePolynomial evaluate_top(const Poly& cls) { return integrate(cls, n_); }

    // Product with eager degree-kill.
    Poly mul(const Poly& a, const Poly& b) const;
    // True when the monomial vanishes for degree reasons on the tower.
    bool killed(const Monomial& m) const;

    // Memo persistence. load_cache returns false (and leaves the memo
    // untouched) for a missing, corrupted or mismatched file.
    bool load_cache(const std::string& path, std::string* why = nullptr);
    void save_cache(const std::string& path) const;
    std::size_t memo_size() const;

private:
    int n_;
    Policy policy_;
    std::vector<DegreePolynomial> gamma_;
    mutable std::recursive_mutex mu_;
    std::map<std::pair<int, int>, Poly> chern_;
    std::map<std::pair<int, int>, std::vector<Poly>> memo_;
};

}  // namespace jt
