#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "isoball/common.hpp"
#include "isoball/rational.hpp"
#include "isoball/series.hpp"

namespace isoball {

// Element of U(n+1); construction enforces unitarity to 1e-12.
class UnitaryMatrix {
public:
    explicit UnitaryMatrix(Eigen::MatrixXcd m);

    int n() const { return static_cast<int>(m_.rows()) - 1; }
    const Eigen::MatrixXcd& matrix() const { return m_; }
    cplx entry(int i, int j) const { return m_(i, j); }

    // Block (u_ij) for 2 <= i,j <= n+1 in 1-based terms.
    Eigen::MatrixXcd lower_block() const;

    double unitarity_residual() const;

private:
    Eigen::MatrixXcd m_;
};

// R(z) = alpha0 z prod_j (z - 1/conj(alpha_j)) / (z - alpha_j)
struct BlaschkeForm {
    cplx alpha0;
    std::vector<cplx> roots;

    RationalMap to_rational() const;
    // Sorted |alpha_j| together with |alpha0|, the congruence filter data.
    std::vector<double> invariant_moduli() const;
};

struct RationalData {
    RationalMap r;
    std::vector<RationalMap> components;  // R_j with f_{2,j} = R_j(f_1)
};

// Germ solving  U (f1, f2)^t = (w, f1 f2)^t  with f(0) = 0, plus the rational
// data when the lower block is invertible.
struct SolvedIsometry {
    UnitaryMatrix u;
    Series f1;
    std::vector<Series> f2;
    std::optional<RationalData> rational;
    double intertwine_residual = 0.0;
    double polarized_residual = 0.0;

    int n() const { return static_cast<int>(f2.size()); }
    bool f1_zero() const;
};

// Conjugates by diag(1, Q) so the lower block becomes upper triangular; the
// congruence class of the solved map is unchanged.
UnitaryMatrix normalize_unitary(const UnitaryMatrix& u);

bool f1_vanishes(const UnitaryMatrix& u);

// Unique degree-by-degree solution of the intertwining equation.
SolvedIsometry solve_isometry(const UnitaryMatrix& u, int order = kDefaultOrder);

// Closed form of R and the R_j from the matrix entries, cross-checked against
// a freshly solved germ before returning.
RationalData rational_R(const UnitaryMatrix& u);

// Factorization into the symmetric Blaschke-type form; rejects maps violating
// R(1/conj z) = 1/conj(R(z)).
BlaschkeForm blaschke_factorize(const RationalMap& r);

// Removes the factor (conj(zeta) z - 1)/(z - zeta) whose root has the largest
// modulus (ties: smallest argument), reducing the degree by one.
std::pair<RationalMap, cplx> peel_factor(const RationalMap& r);

// Inverse of peel_factor: multiplies the factor with parameter zeta back in.
RationalMap extend_factor(const RationalMap& r, cplx zeta);

// The explicit U(3) family; defined for |zeta| < 1/3.
UnitaryMatrix u_zeta(cplx zeta);

// Least-squares recovery of the unitary from a germ known to satisfy the
// intertwining equation.
UnitaryMatrix unitary_from_germ(const Series& f1, const std::vector<Series>& f2);

// Evaluation of the solved map.  Uses the series inside its trust radius and
// analytic continuation along the radius (root tracking on R) outside it.
std::vector<cplx> eval_solved(const SolvedIsometry& s, cplx w);
cplx eval_f1(const SolvedIsometry& s, cplx w);
std::vector<cplx> eval_ball_part(const SolvedIsometry& s, cplx w);

// f1 along a polyline starting at 0, continued branch-consistently.
std::vector<cplx> f1_along_path(const SolvedIsometry& s, const std::vector<cplx>& nodes);

// Exact germ of the branch of the solved map through (center, z0) with
// R(z0) = center: f1 from series reversion of the shifted R, f2 through the
// R_j.  z0 is Newton-polished first.
std::vector<Series> solved_branch_germ(const SolvedIsometry& s, cplx center, cplx z0,
                                       int order);

}  // namespace isoball
