// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <random>

#include "isoball/cli.hpp"
#include "isoball/verify.hpp"

using namespace isoball;

namespace {

int failures = 0;

void report(int index, const char* name, bool pass, const std::string& detail) {
    std::printf("[%s] %2d. %s  (%s)\n", pass ? "PASS" : "FAIL", index, name, detail.c_str());
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::mt19937 rng(90125);

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

void criterion_1() {
    bool pass = true;
    std::string detail;
    double worst_root = 0.0, worst_diag = 0.0, slowest = 0.0;
    for (int p = 2; p <= 6; ++p) {
        auto t0 = std::chrono::steady_clock::now();
        IsometryMap f = pth_root_map(p);
        ResidualReport rep = check_functional_equation(f, f.target(), 500, 1e-10);
        slowest = std::max(slowest, seconds_since(t0));
        worst_root = std::max(worst_root, rep.max_residual);
        pass = pass && rep.pass;

        t0 = std::chrono::steady_clock::now();
        IsometryMap d = diagonal_map(p);
        ResidualReport drep = check_functional_equation(d, d.target(), 500, 1e-13);
        slowest = std::max(slowest, seconds_since(t0));
        worst_diag = std::max(worst_diag, drep.max_residual);
        pass = pass && drep.pass;
    }
    pass = pass && slowest < 1.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "roots max %.2e <= 1e-10, diagonals max %.2e <= 1e-13, slowest %.2fs < 1s",
                  worst_root, worst_diag, slowest);
    report(1, "canonical isometries certified", pass, buf);
}

void criterion_2() {
    SolvedIsometry s = solve_isometry(u_zeta(cplx{0.2}), 64);
    double worst_point = 0.0;
    for (cplx w : disk_samples(200, 0.7)) {
        std::vector<cplx> v = eval_solved(s, w);
        double lhs = (1.0 - abs2(v[0])) * (1.0 - abs2(v[1]) - abs2(v[2]));
        worst_point = std::max(worst_point, std::abs(lhs - (1.0 - abs2(w))));
    }
    double series_resid =
        coeff_distance(apply(s.rational->r, s.f1), Series::identity(64));
    bool pass = worst_point <= 1e-8 && series_resid <= 1e-9 && s.rational->r.degree() <= 3;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "pointwise %.2e <= 1e-8, series %.2e <= 1e-9, deg R = %d <= 3",
                  worst_point, series_resid, s.rational->r.degree());
    report(2, "solver consistency for the U(3) family", pass, buf);
}

void criterion_3() {
    bool degenerate = f1_vanishes(u_zeta(cplx{}));
    SolvedIsometry s = solve_isometry(u_zeta(cplx{}), 32);
    auto ball_part = [&](cplx w) {
        std::vector<cplx> out;
        for (const Series& g : s.f2) out.push_back(g.evaluate(w).value);
        return out;
    };
    ResidualReport rep = check_metric_pullback(
        ball_part, ProductSpace::single_ball(2), 1.0, disk_samples(50, 0.8), 1e-8);
    bool pass = degenerate && s.f1_zero() && rep.pass;
    char buf[160];
    std::snprintf(buf, sizeof buf, "f1 vanishes = %d, pullback residual %.2e <= 1e-8",
                  degenerate ? 1 : 0, rep.max_residual);
    report(3, "degeneracy gate is totally geodesic", pass, buf);
}

void criterion_4() {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst_sym = 0.0, worst_rec = 0.0;
    bool pass = true;
    int tested = 0;
    while (tested < 50) {
        int n = 1 + tested % 3;
        UnitaryMatrix u{random_unitary_matrix(n + 1)};
        if (std::abs(u.lower_block().determinant()) <= 0.05) continue;
        ++tested;
        RationalData data = rational_R(u);
        const RationalMap& r = data.r;
        std::vector<cplx> avoid = r.poles();
        for (cplx a : r.poles()) avoid.push_back(1.0 / std::conj(a));
        BlaschkeForm form = blaschke_factorize(r);
        RationalMap rebuilt = form.to_rational();
        int used = 0;
        while (used < 100) {
            double rad = 0.3 + 0.65 * unit(rng);
            cplx z = rad * std::exp(cplx{0.0, 2.0 * kPi * unit(rng)});
            bool ok = true;
            for (cplx bad : avoid) {
                if (std::abs(z - bad) < 0.05) { ok = false; break; }
            }
            if (!ok) continue;
            ++used;
            worst_sym = std::max(worst_sym,
                                 std::abs(r.eval(1.0 / std::conj(z)) * std::conj(r.eval(z)) - 1.0));
            worst_rec = std::max(worst_rec, std::abs(rebuilt.eval(z) - r.eval(z)) /
                                                std::max(1.0, std::abs(r.eval(z))));
        }
    }
    pass = worst_sym <= 1e-9 && worst_rec <= 1e-10;
    char buf[160];
    std::snprintf(buf, sizeof buf, "symmetry %.2e <= 1e-9, reconstruction %.2e <= 1e-10",
                  worst_sym, worst_rec);
    report(4, "Blaschke symmetry on 50 random unitaries", pass, buf);
}

void criterion_5() {
    bool pass = true;
    double slowest = 0.0;
    std::string detail;
    for (int p : {2, 3, 4, 5}) {
        auto t0 = std::chrono::steady_clock::now();
        SheetingReport rep = sheeting_report(pth_root_map(p), 1.0);
        slowest = std::max(slowest, seconds_since(t0));
        bool ok = rep.n == p && rep.identities_pass();
        for (int s : rep.s) ok = ok && s == p;
        pass = pass && ok;

        t0 = std::chrono::steady_clock::now();
        SheetingReport diag = sheeting_report(diagonal_map(p), static_cast<double>(p));
        slowest = std::max(slowest, seconds_since(t0));
        pass = pass && diag.n == 1 && diag.identities_pass();
    }
    auto t0 = std::chrono::steady_clock::now();
    SheetingReport sharp =
        sheeting_report(sharp_compose(pth_root_map(2), pth_root_map(2), 2), 1.0);
    slowest = std::max(slowest, seconds_since(t0));
    pass = pass && sharp.n == 4 && sharp.s == std::vector<int>{2, 4, 4} &&
           sharp.identities_pass() && slowest < 30.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "roots n=p and s_j=p for p<=5, composed map n=4 s=(2,4,4), slowest %.2fs < 30s",
                  slowest);
    report(5, "sheeting numbers and their identities", pass, buf);
}

void criterion_6() {
    const double moduli[3] = {0.1, 0.2, 0.25};
    auto member = [&](double m, double phase) {
        return solve_isometry(u_zeta(m * std::exp(cplx{0.0, phase})), 64);
    };
    struct Pair { double m1, p1, m2, p2; };
    std::vector<Pair> suite;
    const double phases[4] = {0.0, kPi / 3.0, 2.1, 4.4};
    // ten congruent pairs: same modulus, different phases
    for (double m : moduli) {
        suite.push_back({m, phases[0], m, phases[1]});
        suite.push_back({m, phases[1], m, phases[2]});
        suite.push_back({m, phases[2], m, phases[3]});
    }
    suite.push_back({0.2, 0.7, 0.2, 3.9});
    // ten incongruent pairs: different moduli
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            suite.push_back({moduli[i], phases[i], moduli[j], phases[j]});
            suite.push_back({moduli[j], phases[i + 1], moduli[i], phases[j]});
        }
    }
    suite.push_back({0.1, 0.0, 0.25, 2.1});
    suite.push_back({0.25, 4.4, 0.1, 0.0});
    suite.push_back({0.2, 2.1, 0.25, 0.0});
    suite.push_back({0.25, kPi / 3.0, 0.2, 4.4});
    bool pass = suite.size() == 20;
    int wrong = 0, inconclusive = 0;
    for (const Pair& pr : suite) {
        SolvedIsometry a = member(pr.m1, pr.p1);
        SolvedIsometry b = member(pr.m2, pr.p2);
        CongruenceVerdict v = congruence_test(a, b);
        Verdict expect = std::abs(pr.m1 - pr.m2) < 1e-12 ? Verdict::Congruent
                                                         : Verdict::Incongruent;
        if (v.verdict == Verdict::Inconclusive) ++inconclusive;
        if (v.verdict != expect) ++wrong;
    }
    pass = pass && wrong == 0 && inconclusive == 0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "20 pairs, %d wrong verdicts, %d inconclusive", wrong,
                  inconclusive);
    report(6, "congruence family criterion |zeta| = |zeta'|", pass, buf);
}

void criterion_7() {
    SolvedIsometry s = solve_isometry(u_zeta(cplx{0.2}), 64);
    PropernessReport rep = check_properness(s, {0.9, 0.99, 0.999});
    IsometryMap map = from_solved(s);
    MinimalPolynomial fit1 = component_relation_fit(map, 1);
    MinimalPolynomial fit2 = component_relation_fit(map, 2);
    bool pass = rep.proper && rep.final_gap <= 0.01 && fit1.found && fit2.found &&
                fit1.z_degree >= 2 && fit2.z_degree >= 2;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "minima increasing = %d, 1 - m(0.999) = %.4f <= 0.01, z-degrees %d,%d >= 2",
                  rep.strictly_increasing ? 1 : 0, rep.final_gap, fit1.z_degree,
                  fit2.z_degree);
    report(7, "proper ball-pair certificate with irrational components", pass, buf);
}

void criterion_8() {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_int_distribution<int> dim(1, 4);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        int p = dim(rng), q = dim(rng);
        if (p > q) std::swap(p, q);
        Eigen::MatrixXcd z(p, q);
        for (int i = 0; i < p; ++i) {
            for (int j = 0; j < q; ++j) z(i, j) = cplx{gauss(rng), gauss(rng)};
        }
        z *= 0.9 / std::max(1.0, z.norm());
        auto [lhs, rhs] = det_minor_expansion(z);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    bool pass = worst <= 1e-12;
    char buf[160];
    std::snprintf(buf, sizeof buf, "200 matrices, max deviation %.2e <= 1e-12", worst);
    report(8, "kernel determinant minor expansion", pass, buf);
}

void criterion_9() {
    struct Form { const char* id; std::vector<double> params; int perturb_index; };
    std::vector<Form> forms{{"bidisk-1", {2.0}, 0},
                            {"bidisk-2", {0.7}, 1},
                            {"bidisk-3", {0.4}, 0},
                            {"bidisk-4", {}, 0}};
    bool pass = true;
    for (const Form& form : forms) {
        IsometryMap f = catalog_construct(form.id, form.params);
        ResidualReport good = check_functional_equation(f, f.target(), 300, 1e-10);
        std::vector<double> bad_constants = f.target().constants;
        bad_constants[static_cast<size_t>(form.perturb_index)] += 0.05;
        ProductSpace bad(f.target().factors, bad_constants);
        ResidualReport flipped = check_functional_equation(f, bad, 300, 1e-10);
        pass = pass && good.pass && !flipped.pass;
    }
    report(9, "bidisk catalog with conformal constants", pass,
           pass ? "all four forms pass; each 0.05 perturbation fails"
                : "a form or perturbation behaved unexpectedly");
}

void criterion_10() {
    bool pass = true;
    int counterexamples = 0;
    // rational isometries: factorwise totally geodesic with constants summing
    // to one
    std::vector<IsometryMap> rational_suite{
        catalog_construct("bidisk-3", {0.3}), catalog_construct("bidisk-3", {0.5}),
        catalog_construct("bidisk-3", {0.7}),
        slice_map({true, true, true}, {0.2, 0.3, 0.5})};
    for (const IsometryMap& f : rational_suite) {
        RigidityReport rep = rational_rigidity_check(f, f.target());
        pass = pass && rep.hypotheses_met && rep.constants_sum_to_one &&
               rep.factors_totally_geodesic && !rep.counterexample;
        if (rep.counterexample) ++counterexamples;
    }
    // irrational and partly-constant maps must never produce a contradiction
    std::vector<IsometryMap> other_suite{
        pth_root_map(2), pth_root_map(3),
        sharp_compose(pth_root_map(2), pth_root_map(2), 2),
        catalog_construct("bidisk-1", {5.0}),
        from_solved(solve_isometry(u_zeta(cplx{0.2}), 64))};
    for (const IsometryMap& f : other_suite) {
        RigidityReport rep = rational_rigidity_check(f, f.target());
        pass = pass && !rep.counterexample;
        if (rep.counterexample) ++counterexamples;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d contradiction candidates across 9 maps",
                  counterexamples);
    report(10, "rational rigidity harness", pass, buf);
}

}  // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("acceptance total: %.1fs, %d failure(s)\n", seconds_since(t0), failures);
    return failures == 0 ? 0 : 1;
}
