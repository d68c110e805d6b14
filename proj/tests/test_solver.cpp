#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "isoball/solver.hpp"

using namespace isoball;

namespace {

std::mt19937 rng(61803398);

Eigen::MatrixXcd random_unitary_matrix(int dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd a(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) a(i, j) = cplx{gauss(rng), gauss(rng)};
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < dim; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
    return q;
}

UnitaryMatrix random_unitary_with_invertible_block(int n, double min_det = 0.05) {
    while (true) {
        UnitaryMatrix u{random_unitary_matrix(n + 1)};
        if (std::abs(u.lower_block().determinant()) > min_det) return u;
    }
}

std::vector<cplx> sample_annulus(int count, double lo, double hi) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<cplx> out;
    for (int i = 0; i < count; ++i) {
        double r = lo + (hi - lo) * unit(rng);
        out.push_back(r * std::exp(cplx{0.0, 2.0 * kPi * unit(rng)}));
    }
    return out;
}

}  // namespace

TEST_CASE("u_zeta: exact entries and unitarity") {
    UnitaryMatrix u0 = u_zeta(cplx{});
    Eigen::MatrixXcd expect(3, 3);
    expect << cplx{}, cplx{-1.0}, cplx{}, cplx{}, cplx{}, cplx{1.0}, cplx{1.0}, cplx{}, cplx{};
    CHECK((u0.matrix() - expect).cwiseAbs().maxCoeff() == 0.0);

    UnitaryMatrix u = u_zeta(cplx{0.2});
    const double s = std::sqrt(0.96);
    CHECK(std::abs(u.entry(0, 0) + 0.04) < 1e-15);
    CHECK(std::abs(u.entry(0, 1) + s) < 1e-15);
    CHECK(std::abs(u.entry(0, 2) - 0.2 * s) < 1e-15);

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        cplx zeta = (unit(rng) / 3.0) * std::exp(cplx{0.0, 2.0 * kPi * unit(rng)});
        CHECK(u_zeta(zeta).unitarity_residual() <= 1e-14);
    }
    CHECK_THROWS_AS(u_zeta(cplx{0.4}), NumericRejection);
}

TEST_CASE("f1_vanishes matches the lower-block determinant") {
    CHECK(f1_vanishes(u_zeta(cplx{})));
    CHECK_FALSE(f1_vanishes(u_zeta(cplx{0.2})));
    CHECK_FALSE(f1_vanishes(random_unitary_with_invertible_block(2)));
}

TEST_CASE("degenerate family member solves to a totally geodesic ball map") {
    SolvedIsometry s = solve_isometry(u_zeta(cplx{}), 24);
    CHECK(s.f1_zero());
    CHECK_FALSE(s.rational.has_value());
    // components are (-w, 0)
    CHECK(std::abs(s.f2[0].coeff(1) + 1.0) < 1e-15);
    for (int d = 0; d <= 24; ++d) {
        if (d != 1) CHECK(std::abs(s.f2[0].coeff(d)) < 1e-15);
        CHECK(std::abs(s.f2[1].coeff(d)) < 1e-15);
    }
}

TEST_CASE("solver residuals and degree bound for the family at 0.2") {
    SolvedIsometry s = solve_isometry(u_zeta(cplx{0.2}), 64);
    CHECK(s.intertwine_residual <= 1e-10);
    CHECK(s.polarized_residual <= 1e-10);
    REQUIRE(s.rational.has_value());
    CHECK(s.rational->r.degree() == 3);
    CHECK(s.rational->r.degree() <= s.n() + 1);

    // functional equation pointwise
    for (cplx w : sample_annulus(200, 0.0, 0.7)) {
        std::vector<cplx> v = eval_solved(s, w);
        double lhs = (1.0 - abs2(v[0])) * (1.0 - abs2(v[1]) - abs2(v[2]));
        CHECK(std::abs(lhs - (1.0 - abs2(w))) <= 1e-8);
    }
}

TEST_CASE("solve is canonical: doubling the order extends the germ") {
    UnitaryMatrix u = random_unitary_with_invertible_block(2);
    SolvedIsometry a = solve_isometry(u, 24);
    SolvedIsometry b = solve_isometry(u, 48);
    CHECK(coeff_distance(a.f1, truncated(b.f1, 24)) < 1e-11);
    for (int j = 0; j < 2; ++j) {
        CHECK(coeff_distance(a.f2[static_cast<size_t>(j)],
                             truncated(b.f2[static_cast<size_t>(j)], 24)) < 1e-11);
    }
}

TEST_CASE("rational data: R inverts f1 and components match in series") {
    for (int n : {1, 2, 3}) {
        UnitaryMatrix u = random_unitary_with_invertible_block(n);
        SolvedIsometry s = solve_isometry(u, 48);
        REQUIRE(s.rational.has_value());
        CHECK(s.rational->r.degree() <= n + 1);
        CHECK(coeff_distance(apply(s.rational->r, s.f1), Series::identity(48)) <= 1e-9);
        for (int j = 0; j < n; ++j) {
            CHECK(coeff_distance(apply(s.rational->components[static_cast<size_t>(j)], s.f1),
                                 s.f2[static_cast<size_t>(j)]) <= 1e-9);
        }
        CHECK(std::abs(s.rational->r.eval(cplx{})) < 1e-14);  // R(0) = 0
    }
}

TEST_CASE("two-by-two unitary gives a degree-2 Blaschke-type map") {
    Eigen::MatrixXcd m(2, 2);
    const double c = std::cos(0.7), s = std::sin(0.7);
    m << cplx{c}, cplx{-s}, cplx{s}, cplx{c};
    SolvedIsometry sol = solve_isometry(UnitaryMatrix{m}, 48);
    REQUIRE(sol.rational.has_value());
    CHECK(sol.rational->r.degree() == 2);
    CHECK(coeff_distance(apply(sol.rational->r, sol.f1), Series::identity(48)) <= 1e-10);
}

TEST_CASE("blaschke factorization anchors") {
    // R(z) = z
    BlaschkeForm id = blaschke_factorize(
        RationalMap(Polynomial({cplx{}, cplx{1.0}}), Polynomial({cplx{1.0}})));
    CHECK(id.roots.empty());
    CHECK(std::abs(id.alpha0 - 1.0) < 1e-12);

    // R(z) = z (conj(z0) z - 1) / (z - z0), z0 = 0.5
    const cplx z0{0.5};
    RationalMap r(Polynomial({cplx{}, cplx{-1.0}, std::conj(z0)}),
                  Polynomial({-z0, cplx{1.0}}));
    BlaschkeForm f = blaschke_factorize(r);
    REQUIRE(f.roots.size() == 1);
    CHECK(std::abs(f.roots[0] - z0) < 1e-12);
    CHECK(std::abs(std::abs(f.alpha0) - 0.5) < 1e-12);  // |alpha0| = prod |alpha_j|
}

TEST_CASE("blaschke symmetry and reconstruction on random unitaries") {
    for (int trial = 0; trial < 50; ++trial) {
        int n = 1 + trial % 3;
        UnitaryMatrix u = random_unitary_with_invertible_block(n);
        RationalData data = rational_R(u);
        const RationalMap& r = data.r;

        std::vector<cplx> avoid = r.poles();
        for (cplx a : r.poles()) avoid.push_back(1.0 / std::conj(a));
        int used = 0;
        for (cplx z : sample_annulus(400, 0.3, 0.95)) {
            bool ok = true;
            for (cplx bad : avoid) {
                if (std::abs(z - bad) < 0.05) { ok = false; break; }
            }
            if (!ok) continue;
            cplx lhs = r.eval(1.0 / std::conj(z));
            cplx rhs = 1.0 / std::conj(r.eval(z));
            CHECK(std::abs(lhs * std::conj(r.eval(z)) - 1.0) <= 1e-9 * std::max(1.0, std::abs(lhs)));
            CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
            if (++used == 100) break;
        }
        REQUIRE(used == 100);

        BlaschkeForm form = blaschke_factorize(r);
        RationalMap rebuilt = form.to_rational();
        used = 0;
        for (cplx z : sample_annulus(400, 0.3, 0.95)) {
            bool ok = true;
            for (cplx bad : avoid) {
                if (std::abs(z - bad) < 0.05) { ok = false; break; }
            }
            if (!ok) continue;
            CHECK(std::abs(rebuilt.eval(z) - r.eval(z)) <=
                  1e-10 * std::max(1.0, std::abs(r.eval(z))));
            if (++used == 100) break;
        }
    }
}

TEST_CASE("blaschke factorization rejects asymmetric maps") {
    RationalMap bad(Polynomial({cplx{}, cplx{1.0}, cplx{0.3}}),
                    Polynomial({cplx{-0.5}, cplx{1.0}}));
    CHECK_THROWS_AS(blaschke_factorize(bad), NumericRejection);
}

TEST_CASE("peel and extend are inverse up to ordering") {
    const cplx z0{0.5};
    RationalMap base(Polynomial({cplx{}, cplx{-1.0}, std::conj(z0)}),
                     Polynomial({-z0, cplx{1.0}}));
    auto [reduced, zeta] = peel_factor(base);
    CHECK(std::abs(zeta - z0) < 1e-12);
    CHECK(reduced.degree() == 1);

    RationalMap back = extend_factor(reduced, zeta);
    for (cplx z : sample_annulus(40, 0.3, 0.9)) {
        if (std::abs(z - z0) < 0.05) continue;
        CHECK(std::abs(back.eval(z) - base.eval(z)) < 1e-11 * std::max(1.0, std::abs(base.eval(z))));
    }

    CHECK_THROWS_AS(peel_factor(reduced), NumericRejection);
}

TEST_CASE("peel reduces the family map from degree 3 to a symmetric degree 2") {
    RationalData data = rational_R(u_zeta(cplx{0.2}));
    auto [reduced, zeta] = peel_factor(data.r);
    CHECK(std::abs(std::abs(zeta) - 0.2) < 1e-9);
    CHECK(reduced.degree() == 2);
    BlaschkeForm again = blaschke_factorize(reduced);  // symmetry still holds
    CHECK(again.roots.size() == 1);

    RationalMap rebuilt = extend_factor(reduced, zeta);
    for (cplx z : sample_annulus(60, 0.3, 0.9)) {
        if (std::abs(z - 0.2) < 0.08 || std::abs(z - 5.0) < 0.3) continue;
        CHECK(std::abs(rebuilt.eval(z) - data.r.eval(z)) <
              1e-10 * std::max(1.0, std::abs(data.r.eval(z))));
    }
}

TEST_CASE("normalize_unitary triangularizes without changing the class") {
    // already triangular block: entries keep their moduli
    UnitaryMatrix u = u_zeta(cplx{0.2});
    UnitaryMatrix t = normalize_unitary(u);
    Eigen::MatrixXcd block = t.lower_block();
    CHECK(std::abs(block(1, 0)) < 1e-12);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            CHECK(std::abs(std::abs(t.entry(i, j)) - std::abs(u.entry(i, j))) < 1e-10);
        }
    }

    // permutation-type unitary: block [[0,1],[1,0]] becomes triangular
    Eigen::MatrixXcd perm = Eigen::MatrixXcd::Zero(3, 3);
    perm(0, 0) = 1.0;
    perm(1, 2) = 1.0;
    perm(2, 1) = 1.0;
    UnitaryMatrix tp = normalize_unitary(UnitaryMatrix{perm});
    CHECK(std::abs(tp.lower_block()(1, 0)) < 1e-12);
    CHECK(tp.unitarity_residual() <= 1e-12);

    // generic: solved invariants agree before and after
    UnitaryMatrix g = random_unitary_with_invertible_block(2);
    UnitaryMatrix gn = normalize_unitary(g);
    CHECK(std::abs(gn.lower_block()(1, 0)) < 1e-11);
    std::vector<double> inv_a = blaschke_factorize(rational_R(g).r).invariant_moduli();
    std::vector<double> inv_b = blaschke_factorize(rational_R(gn).r).invariant_moduli();
    REQUIRE(inv_a.size() == inv_b.size());
    for (size_t i = 0; i < inv_a.size(); ++i) CHECK(std::abs(inv_a[i] - inv_b[i]) < 1e-9);
}

TEST_CASE("unitary recovery from a germ") {
    UnitaryMatrix u = random_unitary_with_invertible_block(2);
    SolvedIsometry s = solve_isometry(u, 48);
    UnitaryMatrix back = unitary_from_germ(s.f1, s.f2);
    CHECK((back.matrix() - u.matrix()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("boundary evaluation tracks the branch") {
    SolvedIsometry s = solve_isometry(u_zeta(cplx{0.2}), 64);
    // agreement of series and algebraic evaluation inside the trust region
    for (cplx w : sample_annulus(50, 0.1, 0.5)) {
        cplx series_val = s.f1.evaluate(w).value;
        std::vector<cplx> nodes{w};
        cplx tracked = f1_along_path(s, nodes)[0];
        CHECK(std::abs(series_val - tracked) < 1e-10);
    }
    // near the boundary the tracked value still satisfies R(f1(w)) = w
    for (double r : {0.95, 0.999}) {
        cplx w = r * std::exp(cplx{0.0, 1.1});
        cplx z = f1_along_path(s, {w})[0];
        CHECK(std::abs(s.rational->r.eval(z) - w) < 1e-10);
    }
}

TEST_CASE("solved branch germ matches the base germ") {
    SolvedIsometry s = solve_isometry(u_zeta(cplx{0.2}), 48);
    cplx center{0.3, -0.2};
    std::vector<Series> germ = solved_branch_germ(s, center, s.f1.evaluate(center).value, 48);
    for (int trial = 0; trial < 10; ++trial) {
        cplx w = center + 0.1 * std::exp(cplx{0.0, 0.63 * trial});
        CHECK(std::abs(germ[0].evaluate(w).value - s.f1.evaluate(w).value) < 1e-11);
        CHECK(std::abs(germ[1].evaluate(w).value - s.f2[0].evaluate(w).value) < 1e-11);
    }
}
