#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "isoball/maps.hpp"
#include "isoball/monodromy.hpp"

namespace isoball {

struct ResidualReport {
    std::string check;
    double tolerance = 0.0;
    double max_residual = 0.0;
    double mean_residual = 0.0;
    int sample_count = 0;
    int rejected_samples = 0;
    cplx worst_point{};
    bool pass = false;
};

// Deterministic low-discrepancy points of the disk |w| <= rmax (square-root
// radii, golden-angle sweep).
std::vector<cplx> disk_samples(int count, double rmax);

std::vector<std::pair<cplx, cplx>> polarized_pairs(int count, double rmax = 0.6);

// | prod_i (1 - |F_i|^2)^{mu_i} - (1 - |w|^2)^k | over the sample set; the map
// is renormalized to fix the origin first.
ResidualReport check_functional_equation(const IsometryMap& f, const ProductSpace& space,
                                         int samples = 500, double tol = 1e-10,
                                         double rmax = 0.9,
                                         std::vector<std::pair<cplx, double>>* trace = nullptr);

// Complexified form with principal powers on pairs (Z, W); bracket factors
// falling outside the right half-plane are rejected samples.
ResidualReport check_polarized(const IsometryMap& f, const ProductSpace& space,
                               const std::vector<std::pair<cplx, cplx>>& pairs,
                               double tol = 1e-10);

// Pullback metric against k times the disk metric by finite differences
// (Richardson-extrapolated central stencil, step h).
ResidualReport check_metric_pullback(const IsometryMap& f, const ProductSpace& space,
                                     const std::vector<cplx>& points, double tol = 1e-5,
                                     double h = 1e-4);
ResidualReport check_metric_pullback(const std::function<std::vector<cplx>(cplx)>& f,
                                     const ProductSpace& space, double k,
                                     const std::vector<cplx>& points, double tol = 1e-5,
                                     double h = 1e-4);

struct PropernessReport {
    std::vector<double> radii;
    std::vector<double> minima;
    std::vector<double> skipped_radii;
    bool strictly_increasing = false;
    double final_gap = 1.0;  // 1 - last minimum
    bool proper = false;
};

// Minimum of ||component(w)|| over circles |w| = r_t; an evaluation flagged
// unreliable drops that radius from the report.
PropernessReport check_properness(
    const std::function<std::optional<std::vector<cplx>>(cplx)>& component,
    const std::vector<double>& radii, int angles = 512);

// Boundary-minimum scan of the ball part of a solved map, evaluated by root
// tracking so radii arbitrarily close to 1 stay accurate.
PropernessReport check_properness(const SolvedIsometry& s, const std::vector<double>& radii,
                                  int angles = 512);

enum class Verdict { Congruent, Incongruent, Inconclusive };

struct CongruenceVerdict {
    Verdict verdict = Verdict::Inconclusive;
    std::vector<double> invariants_left;
    std::vector<double> invariants_right;
    bool has_witness = false;
    DiskAutomorphism witness_source;
    double witness_residual = 0.0;
};

// Blaschke invariants of R as the necessary filter; matching invariants go to
// a witness search over source disk automorphisms (coarse grid plus local
// refinement) compared through unitary-invariant pairings.
CongruenceVerdict congruence_test(const SolvedIsometry& f, const SolvedIsometry& g);

struct RigidityReport {
    std::vector<int> component_z_degree;  // 0 when undetermined
    std::vector<bool> component_constant;
    bool all_rational = false;
    bool hypotheses_met = false;  // isometry, all components nonconstant and rational
    bool constants_sum_to_one = false;
    bool factors_totally_geodesic = false;
    bool counterexample = false;
    bool verdict_available = true;
};

// Classifies components through minimal-polynomial fits and, for rational
// isometries, enforces the sum rule and factorwise totally-geodesic form.
RigidityReport rational_rigidity_check(const IsometryMap& f, const ProductSpace& space,
                                       int max_bidegree = 6);

struct BlockMap {
    std::function<std::vector<cplx>(const std::vector<cplx>&)> eval;
    std::vector<int> source_dims;
    std::vector<int> target_dims;
    std::vector<double> lambda;  // source constants
    std::vector<double> mu;      // target constants
};

struct BlockDependenceReport {
    std::vector<std::vector<int>> depends_on;  // per target block
    bool factored = false;
    bool constants_match = false;
    double max_cross_derivative = 0.0;
};

// Finite-difference detection of which source block each target component
// map depends on.
BlockDependenceReport block_dependence_check(const BlockMap& f, double threshold = 1e-8);

}  // namespace isoball
