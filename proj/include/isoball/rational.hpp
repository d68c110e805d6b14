#pragma once

#include <vector>

#include "isoball/common.hpp"
#include "isoball/series.hpp"

namespace isoball {

// Dense univariate polynomial over C, coefficients in ascending degree.
class Polynomial {
public:
    Polynomial() : c_{cplx{}} {}
    explicit Polynomial(std::vector<cplx> coeffs);
    static Polynomial monomial(cplx coeff, int degree);
    static Polynomial from_roots(cplx lead, const std::vector<cplx>& roots);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<cplx>& coeffs() const { return c_; }
    cplx coeff(int k) const {
        return k <= degree() ? c_[static_cast<size_t>(k)] : cplx{};
    }
    cplx lead() const { return c_.back(); }
    bool is_zero() const;

    cplx eval(cplx z) const;
    Polynomial derivative() const;

    // Drop trailing coefficients below tol * max|c_k|.
    Polynomial trimmed(double tol = 1e-12) const;

    // Synthetic division by (z - root); the remainder is discarded.
    Polynomial deflated(cplx root) const;

    // All complex roots via the companion-matrix eigenvalues.
    std::vector<cplx> roots() const;

private:
    std::vector<cplx> c_;
};

Polynomial operator+(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator*(cplx s, const Polynomial& a);

// Quotient of two polynomials; denominator kept monic and the pair kept free
// of common roots.
class RationalMap {
public:
    RationalMap(Polynomial num, Polynomial den);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    int degree() const;

    cplx eval(cplx z) const;
    std::vector<cplx> poles() const { return den_.roots(); }
    std::vector<cplx> zeros() const { return num_.roots(); }

    // Solutions of num(z) - w * den(z) = 0, the fiber of the map over w.
    std::vector<cplx> preimages(cplx w) const;

    // Critical values: images of the zeros of num' den - num den'.
    std::vector<cplx> critical_values(double dedup_tol = 1e-9) const;

private:
    Polynomial num_, den_;
};

// num(f) / den(f) as a truncated series; den(f) needs a nonzero value at the
// expansion center.
Series apply(const RationalMap& r, const Series& f);

}  // namespace isoball
