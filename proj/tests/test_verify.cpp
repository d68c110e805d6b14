#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "isoball/verify.hpp"

using namespace isoball;

namespace {

std::mt19937 rng(31415926);

IsometryMap family_map(cplx zeta, int order = 64) {
    return from_solved(solve_isometry(u_zeta(zeta), order));
}

}  // namespace

TEST_CASE("functional equation: diagonal embeddings are exact") {
    for (int p : {2, 3, 5}) {
        IsometryMap f = diagonal_map(p);
        ResidualReport rep = check_functional_equation(f, f.target(), 500, 1e-13);
        CHECK(rep.pass);
        CHECK(rep.sample_count == 500);
    }
}

TEST_CASE("functional equation: 4th root embedding") {
    IsometryMap f = pth_root_map(4);
    ResidualReport rep = check_functional_equation(f, f.target(), 500, 1e-10);
    CHECK(rep.pass);
}

TEST_CASE("functional equation: wrong constants fail") {
    IsometryMap f = catalog_construct("bidisk-3", {0.5});
    ProductSpace bad(f.target().factors, {0.45, 0.45});  // sums to 0.9
    ResidualReport rep = check_functional_equation(f, bad, 300, 1e-10);
    CHECK_FALSE(rep.pass);
    CHECK(rep.max_residual > 1e-3);
}

TEST_CASE("polarized check: diagonal pairs match the plain check") {
    IsometryMap f = pth_root_map(2);
    std::vector<std::pair<cplx, cplx>> diag;
    for (cplx w : disk_samples(40, 0.55)) diag.emplace_back(w, w);
    ResidualReport pol = check_polarized(f, f.target(), diag, 1e-10);
    ResidualReport plain = check_functional_equation(f, f.target(), 40, 1e-10, 0.55);
    CHECK(pol.pass);
    CHECK(plain.pass);
    CHECK(std::abs(pol.max_residual - plain.max_residual) < 1e-12);
}

TEST_CASE("polarized check: W = 0 gives both sides one, F2 pairs pass") {
    IsometryMap f = pth_root_map(2);
    std::vector<std::pair<cplx, cplx>> zero_pairs;
    for (cplx w : disk_samples(10, 0.5)) zero_pairs.emplace_back(w, cplx{});
    ResidualReport rep = check_polarized(f, f.target(), zero_pairs, 1e-12);
    CHECK(rep.pass);

    ResidualReport pairs = check_polarized(f, f.target(), polarized_pairs(50), 1e-10);
    CHECK(pairs.pass);
    CHECK(pairs.sample_count + pairs.rejected_samples == 50);
}

TEST_CASE("metric pullback: identity, cube root, and the solved family") {
    IsometryMap id = diagonal_map(1);
    ResidualReport rep_id =
        check_metric_pullback(id, id.target(), disk_samples(40, 0.8), 1e-8);
    CHECK(rep_id.pass);

    IsometryMap f3 = pth_root_map(3);
    ResidualReport rep3 =
        check_metric_pullback(f3, f3.target(), disk_samples(50, 0.8), 1e-5);
    CHECK(rep3.pass);

    IsometryMap fz = family_map(cplx{0.2});
    ResidualReport repz =
        check_metric_pullback(fz, fz.target(), disk_samples(50, 0.6), 1e-5);
    CHECK(repz.pass);
}

TEST_CASE("metric pullback rejects samples near the boundary") {
    IsometryMap id = diagonal_map(1);
    std::vector<cplx> pts{cplx{0.99999}, cplx{0.5}};
    ResidualReport rep = check_metric_pullback(id, id.target(), pts, 1e-8);
    CHECK(rep.rejected_samples == 1);
    CHECK(rep.sample_count == 1);
}

TEST_CASE("properness: identity disk map has minima equal to the radii") {
    auto ident = [](cplx w) -> std::optional<std::vector<cplx>> {
        return std::vector<cplx>{w};
    };
    PropernessReport rep = check_properness(ident, {0.5, 0.9, 0.999}, 64);
    REQUIRE(rep.minima.size() == 3);
    for (size_t i = 0; i < 3; ++i) CHECK(rep.minima[i] == doctest::Approx(rep.radii[i]));
    CHECK(rep.proper);
}

TEST_CASE("properness: constant map is not proper") {
    auto constant = [](cplx) -> std::optional<std::vector<cplx>> {
        return std::vector<cplx>{cplx{0.3}, cplx{0.1}};
    };
    PropernessReport rep = check_properness(constant, {0.5, 0.9, 0.99}, 32);
    CHECK_FALSE(rep.proper);
}

TEST_CASE("properness: unreliable radii are skipped and noted") {
    auto gated = [](cplx w) -> std::optional<std::vector<cplx>> {
        if (std::abs(w) > 0.95) return std::nullopt;
        return std::vector<cplx>{w};
    };
    PropernessReport rep = check_properness(gated, {0.5, 0.9, 0.99}, 32);
    CHECK(rep.minima.size() == 2);
    REQUIRE(rep.skipped_radii.size() == 1);
    CHECK(rep.skipped_radii[0] == doctest::Approx(0.99));
}

TEST_CASE("congruence: a map is congruent to itself with the identity witness") {
    SolvedIsometry f = solve_isometry(u_zeta(cplx{0.2}), 48);
    CongruenceVerdict v = congruence_test(f, f);
    CHECK(v.verdict == Verdict::Congruent);
    CHECK(v.has_witness);
    CHECK(std::abs(v.witness_source.a) < 1e-6);
    CHECK(v.witness_residual <= 1e-10);
}

TEST_CASE("congruence: family criterion on one pair each way") {
    SolvedIsometry a = solve_isometry(u_zeta(cplx{0.25}), 64);
    SolvedIsometry b =
        solve_isometry(u_zeta(0.25 * std::exp(cplx{0.0, 2.1})), 64);
    SolvedIsometry c = solve_isometry(u_zeta(cplx{0.1}), 64);

    CongruenceVerdict same = congruence_test(a, b);
    CHECK(same.verdict == Verdict::Congruent);
    CongruenceVerdict diff = congruence_test(a, c);
    CHECK(diff.verdict == Verdict::Incongruent);
}

TEST_CASE("congruence verdict is symmetric on a twenty-pair suite") {
    std::vector<SolvedIsometry> members;
    const double moduli[3] = {0.1, 0.2, 0.25};
    const double phases[2] = {0.0, 2.1};
    for (double m : moduli) {
        for (double ph : phases) {
            members.push_back(solve_isometry(u_zeta(m * std::exp(cplx{0.0, ph})), 48));
        }
    }
    int checked = 0;
    for (size_t i = 0; i < members.size() && checked < 20; ++i) {
        for (size_t j = i + 1; j < members.size() && checked < 20; ++j) {
            CongruenceVerdict fwd = congruence_test(members[i], members[j]);
            CongruenceVerdict rev = congruence_test(members[j], members[i]);
            CHECK(fwd.verdict == rev.verdict);
            ++checked;
        }
    }
    CHECK(checked >= 15);  // all unordered pairs of the six members
}

TEST_CASE("congruence rejects degenerate first components") {
    SolvedIsometry degenerate = solve_isometry(u_zeta(cplx{}), 24);
    SolvedIsometry f = solve_isometry(u_zeta(cplx{0.2}), 24);
    CHECK_THROWS_AS(congruence_test(degenerate, f), NumericRejection);
}

TEST_CASE("congruence invariants are stable under rotation reparametrization") {
    SolvedIsometry f = solve_isometry(u_zeta(cplx{0.2}), 48);
    std::vector<double> base = blaschke_factorize(f.rational->r).invariant_moduli();

    std::uniform_real_distribution<double> unit(0.0, 2.0 * kPi);
    for (int trial = 0; trial < 5; ++trial) {
        const double rot = unit(rng);
        const double t0 = unit(rng), t1 = unit(rng), t2 = unit(rng);
        // g = diag-phase . (f o rotation): rebuild the germ and recover its
        // unitary, then compare the rational invariants.
        auto rotate = [&](const Series& s, double phase) {
            std::vector<cplx> c = s.coeffs();
            for (size_t k = 0; k < c.size(); ++k) {
                c[k] *= std::exp(cplx{0.0, phase + rot * static_cast<double>(k)});
            }
            return Series(s.center(), std::move(c));
        };
        Series g1 = rotate(f.f1, t0);
        std::vector<Series> g2{rotate(f.f2[0], t1), rotate(f.f2[1], t2)};
        UnitaryMatrix recovered = unitary_from_germ(g1, g2);
        std::vector<double> moduli =
            blaschke_factorize(rational_R(recovered).r).invariant_moduli();
        REQUIRE(moduli.size() == base.size());
        for (size_t i = 0; i < base.size(); ++i) {
            CHECK(std::abs(moduli[i] - base[i]) < 1e-8);
        }
    }
}

TEST_CASE("rational rigidity: diagonal-type isometries are totally geodesic") {
    IsometryMap f = catalog_construct("bidisk-3", {0.5});
    RigidityReport rep = rational_rigidity_check(f, f.target());
    CHECK(rep.all_rational);
    CHECK(rep.hypotheses_met);
    CHECK(rep.constants_sum_to_one);
    CHECK(rep.factors_totally_geodesic);
    CHECK_FALSE(rep.counterexample);
}

TEST_CASE("rational rigidity: irrational maps do not trigger the conclusion") {
    IsometryMap f2 = pth_root_map(2);
    RigidityReport rep = rational_rigidity_check(f2, f2.target());
    CHECK_FALSE(rep.all_rational);
    CHECK_FALSE(rep.hypotheses_met);
    CHECK_FALSE(rep.counterexample);
    CHECK(rep.component_z_degree[0] == 2);

    IsometryMap fz = family_map(cplx{0.2});
    RigidityReport repz = rational_rigidity_check(fz, fz.target());
    CHECK_FALSE(repz.all_rational);
    for (int j = 1; j < 3; ++j) CHECK(repz.component_z_degree[static_cast<size_t>(j)] >= 2);
    CHECK_FALSE(repz.counterexample);
}

TEST_CASE("rational rigidity: constant components leave the constants free") {
    IsometryMap f = catalog_construct("bidisk-1", {5.0});  // (z, 0), second constant 5
    RigidityReport rep = rational_rigidity_check(f, f.target());
    CHECK(rep.component_constant[1]);
    CHECK_FALSE(rep.hypotheses_met);
    CHECK_FALSE(rep.counterexample);
}

TEST_CASE("block dependence: factored and mixed maps") {
    BlockMap factored;
    factored.source_dims = {2, 2};
    factored.target_dims = {2, 2};
    factored.lambda = {1.0, 1.0};
    factored.mu = {1.0, 1.0};
    factored.eval = [](const std::vector<cplx>& z) { return z; };
    BlockDependenceReport rep = block_dependence_check(factored);
    CHECK(rep.factored);
    CHECK(rep.constants_match);
    REQUIRE(rep.depends_on.size() == 2);
    CHECK(rep.depends_on[0] == std::vector<int>{0});
    CHECK(rep.depends_on[1] == std::vector<int>{1});

    BlockMap mixed = factored;
    mixed.eval = [](const std::vector<cplx>& z) {
        std::vector<cplx> out = z;
        out[0] = 0.5 * (z[0] + z[2]);
        return out;
    };
    BlockDependenceReport rep2 = block_dependence_check(mixed);
    CHECK_FALSE(rep2.factored);
    CHECK(rep2.max_cross_derivative > 1e-3);

    BlockMap swapped = factored;
    swapped.eval = [](const std::vector<cplx>& z) {
        return std::vector<cplx>{z[2], z[3], z[0], z[1]};
    };
    BlockDependenceReport rep3 = block_dependence_check(swapped);
    CHECK(rep3.factored);
    CHECK(rep3.depends_on[0] == std::vector<int>{1});
    CHECK(rep3.depends_on[1] == std::vector<int>{0});
}

TEST_CASE("every built map passes the functional equation at its constants") {
    std::vector<IsometryMap> maps{pth_root_map(2), pth_root_map(5), diagonal_map(3),
                                  sharp_compose(pth_root_map(2), pth_root_map(2), 2),
                                  catalog_construct("p4-diag2-square", {}),
                                  family_map(cplx{0.1, 0.15})};
    for (const IsometryMap& f : maps) {
        ResidualReport rep = check_functional_equation(f, f.target(), 300, 1e-8, 0.7);
        CHECK(rep.pass);
    }
}
