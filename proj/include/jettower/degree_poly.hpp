#pragma once

#include "jettower/poly.hpp"

#include <vector>

namespace jt {

// Dense univariate polynomial in d; coefficient i multiplies d^i.
template <class C>
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<C> c) : c_(std::move(c)) { trim(); }
    static UPoly monomial(const C& c, int k) {
        std::vector<C> v(k + 1);
        v[k] = c;
        return UPoly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    C coeff(int k) const { return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : C(0); }
    const std::vector<C>& coeffs() const { return c_; }
    const C& lead() const { return c_.back(); }

    template <class X>
    X eval(const X& x) const {
        X r(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + X(*it);
        return r;
    }

    UPoly operator+(const UPoly& o) const {
        std::vector<C> r(std::max(c_.size(), o.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
        return UPoly(std::move(r));
    }
    UPoly operator-(const UPoly& o) const { return *this + o.scaled(C(-1)); }
    UPoly operator*(const UPoly& o) const {
        if (is_zero() || o.is_zero()) return {};
        std::vector<C> r(c_.size() + o.c_.size() - 1);
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        return UPoly(std::move(r));
    }
    UPoly scaled(const C& k) const {
        std::vector<C> r = c_;
        for (auto& x : r) x *= k;
        return UPoly(std::move(r));
    }
    UPoly& operator+=(const UPoly& o) { return *this = *this + o; }
    bool operator==(const UPoly& o) const { return c_ == o.c_; }
    bool operator!=(const UPoly& o) const { return c_ != o.c_; }

    SparsePolynomial<C> to_poly() const {
        typename SparsePolynomial<C>::Map m;
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) m.emplace(Monomial::var(var_d(), static_cast<std::uint32_t>(i)), c_[i]);
        return SparsePolynomial<C>::from_map(std::move(m));
    }
    std::string to_string() const { return to_poly().to_string(); }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<C> c_;
};

using DegreePolynomial = UPoly<Int>;
using QDegreePolynomial = UPoly<Rat>;

// Reads a polynomial in the single variable d.
DegreePolynomial degree_poly_from(const Poly& p);
QDegreePolynomial qdegree_poly_from(const QPoly& p);
QDegreePolynomial to_rational(const DegreePolynomial& p);

// 1 + ceil(sum_{k<deg} |c_k| / lead); p(d) > 0 for every real d >= B.
Int largest_root_bound(const DegreePolynomial& p);

// Number of distinct real roots of p in the half-open interval (a, b].
int count_roots(const DegreePolynomial& p, const Int& a, const Int& b);

// Smallest integer d0 >= lower with p(d) > 0 for every integer d >= d0.
// Root isolation by Sturm sequences below largest_root_bound, then the
// integers adjacent to each root are evaluated exactly.
Int positivity_threshold(const DegreePolynomial& p, const Int& lower);

// Clears denominators: returns the primitive integer multiple with
// positive leading coefficient direction preserved.
DegreePolynomial clear_denominators(const QDegreePolynomial& p);

}  // namespace jt
