#pragma once

#include <vector>

#include "isoball/common.hpp"

namespace isoball {

inline constexpr int kDefaultOrder = 64;

struct EvalResult {
    cplx value;
    double tail_bound = 0.0;
    bool reliable = true;
};

// Truncated Taylor germ: sum of c_k (w - center)^k for k = 0..N.
// Immutable after construction; combining two series keeps min(N1, N2),
// never padding silently.
class Series {
public:
    Series(cplx center, std::vector<cplx> coeffs);

    static Series constant(cplx value, int order, cplx center = {});
    static Series identity(int order, cplx center = {});  // f(w) = w

    cplx center() const { return center_; }
    int order() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<cplx>& coeffs() const { return c_; }
    cplx coeff(int k) const { return c_.at(static_cast<size_t>(k)); }

    // Empirical convergence radius from trailing-coefficient ratios,
    // smoothed over the last 8 coefficients; +inf for polynomial tails.
    double radius_estimate() const;

    // Horner evaluation with a truncation-tail bound.  Points outside the
    // empirical radius are flagged unreliable, never silently returned.
    EvalResult evaluate(cplx w) const;

private:
    cplx center_;
    std::vector<cplx> c_;
};

Series operator+(const Series& a, const Series& b);
Series operator-(const Series& a, const Series& b);
Series operator-(const Series& a);
Series operator*(const Series& a, const Series& b);
Series operator*(cplx s, const Series& a);
Series operator+(const Series& a, cplx s);
Series operator-(const Series& a, cplx s);

Series truncated(const Series& a, int order);
Series padded(const Series& a, int order);
Series derivative(const Series& a);

// 1/a; requires a nonzero constant term.
Series reciprocal(const Series& a);

// Taylor coefficients of outer(inner(w)) to order min(N_outer, N_inner).
// inner must take the value outer.center() at its own center.
Series compose(const Series& outer, const Series& inner);

// Compositional inverse g with f(g(w)) = w; requires c0 = 0, c1 != 0.
Series reversion(const Series& f);

// exp(exponent * log f) with the principal log; requires c0 != 0.
Series fractional_power(const Series& f, double exponent);

// Same function re-expanded at a new center inside the convergence disk.
Series recenter(const Series& f, cplx new_center);

// Max coefficient deviation over the first `count` coefficients (or all
// shared ones when count < 0).
double coeff_distance(const Series& a, const Series& b, int count = -1);

}  // namespace isoball
