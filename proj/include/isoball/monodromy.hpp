#pragma once

#include <functional>
#include <vector>

#include "isoball/maps.hpp"

namespace isoball {

// One point of the branched covering over its center: a tuple of component
// series sharing center and truncation order.
struct Germ {
    std::vector<Series> components;

    cplx center() const { return components.at(0).center(); }
    int order() const { return components.at(0).order(); }
};

Germ initial_germ(const IsometryMap& f, cplx center = {}, int order = kDefaultOrder);

// Max deviation over the first `count` coefficients of every component.
double germ_distance(const Germ& a, const Germ& b, int count = 16);

// Residual of the defining relations of the map at the germ's center, or -1
// for kinds without a built-in pointwise relation.
double germ_relation_residual(const IsometryMap& f, const Germ& g);

// Analytic continuation by repeated recentering along a polyline; each step
// is at most half the distance to the branch set and half the empirical
// convergence radius.
Germ continue_germ(const IsometryMap& f, const Germ& g, const std::vector<cplx>& path);

// Closed polyline from `base` once around `around` and back.
std::vector<cplx> loop_around(cplx base, cplx around, double radius, int segments = 16);

// Orbit of the germ over `base_hint` under loops around every listed branch
// point plus one loop of radius 4 for the point at infinity.  The base point
// and loop geometry are nudged clear of branch and pole points; enumeration
// stops once the orbit exceeds `cap`.
std::vector<Germ> monodromy_orbit(const IsometryMap& f, const std::vector<cplx>& branch_set,
                                  cplx base_hint, long cap, int germ_order = kDefaultOrder);
int monodromy_orbit_size(const IsometryMap& f, const std::vector<cplx>& branch_set,
                         cplx base_hint, long cap, int germ_order = kDefaultOrder);

struct MinimalPolynomial {
    bool found = false;
    int w_degree = 0;
    int z_degree = 0;
    // coeffs[a][b] multiplies w^a z^b; unit Frobenius norm, leading
    // significant coefficient positive real.
    std::vector<std::vector<cplx>> coeffs;
    double fit_residual = 0.0;

    cplx eval(cplx w, cplx z) const;
};

// Lowest-bidegree polynomial relation P(w, component(w)) = 0 from samples on
// a circle, extracted from the numerical nullspace of the monomial matrix and
// validated on an independent circle.  `must_vanish` lists extra (w, z)
// pairs every candidate has to annihilate; feeding the other monodromy
// branches here is what separates a true relation from a mere polynomial
// approximant of one branch.
MinimalPolynomial minimal_polynomial_fit(
    const std::function<cplx(cplx)>& component, int max_bidegree, cplx circle_center = {},
    double circle_radius = 0.5,
    const std::vector<std::pair<cplx, cplx>>& must_vanish = {});

double coeff_matrix_distance(const MinimalPolynomial& a, const MinimalPolynomial& b);

// Relation fit for one component of a map, with the monodromy orbit supplying
// foreign-branch values so polynomial approximants of a single branch cannot
// masquerade as relations.
MinimalPolynomial component_relation_fit(const IsometryMap& f, int component,
                                         int max_bidegree = 6,
                                         int germ_order = kDefaultOrder);

struct SheetingReport {
    int p = 0;
    double k = 1.0;
    int n = 0;
    std::vector<int> s;
    bool sum_reciprocal = false;
    bool divisibility = false;
    bool range = false;
    bool orbit_overflow = false;
    // The covering degree is read off the numerical monodromy orbit, which
    // matches the normalization only for an irreducible extension curve.
    bool assumes_irreducible = true;

    bool identities_pass() const {
        return sum_reciprocal && divisibility && range && !orbit_overflow;
    }
};

// Global sheeting number from the monodromy orbit of the base germ plus
// per-component sheeting numbers from minimal-polynomial fits.
SheetingReport sheeting_report(const IsometryMap& f, double k, int max_bidegree = 6,
                               int germ_order = kDefaultOrder);

}  // namespace isoball
