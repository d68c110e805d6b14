#include "isoball/monodromy.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace isoball {

Germ initial_germ(const IsometryMap& f, cplx center, int order) {
    return Germ{map_germ(f, center, order)};
}

double germ_distance(const Germ& a, const Germ& b, int count) {
    if (a.components.size() != b.components.size()) {
        throw std::invalid_argument("germ_distance: component count mismatch");
    }
    // Scale-aware: branches passing near a pole have huge high-order
    // coefficients, which would drown an absolute comparison.
    double worst = 0.0;
    for (size_t j = 0; j < a.components.size(); ++j) {
        const Series& x = a.components[j];
        const Series& y = b.components[j];
        int n = std::min(x.order(), y.order());
        if (count >= 0) n = std::min(n, count - 1);
        for (int k = 0; k <= n; ++k) {
            const double scale = 1.0 + std::max(std::abs(x.coeff(k)), std::abs(y.coeff(k)));
            worst = std::max(worst, std::abs(x.coeff(k) - y.coeff(k)) / scale);
        }
    }
    return worst;
}

double germ_relation_residual(const IsometryMap& f, const Germ& g) {
    const IsometryMap* m = &f;
    while (m->kind() == MapKind::Catalog) m = &m->wrapped();
    const cplx c = g.center();
    switch (m->kind()) {
        case MapKind::PthRoot: {
            const int p = m->p();
            const cplx tau = cayley(CayleyDirection::DiskToHalfplane, c);
            const cplx tau2 = tau * tau;
            double worst = 0.0;
            for (const Series& comp : g.components) {
                cplx h = cayley(CayleyDirection::DiskToHalfplane, comp.coeff(0));
                cplx hp{1.0};
                for (int i = 0; i < 2 * p; ++i) hp *= h;
                worst = std::max(worst, std::abs(hp - tau2) / (1.0 + std::abs(tau2)));
            }
            return worst;
        }
        case MapKind::Diagonal: {
            double worst = 0.0;
            for (const Series& comp : g.components) {
                worst = std::max(worst, std::abs(comp.coeff(0) - c));
            }
            return worst;
        }
        case MapKind::UnitarySolved: {
            const SolvedIsometry& s = m->solved();
            const int dim = s.n() + 1;
            Eigen::VectorXcd v(dim), rhs(dim);
            for (int i = 0; i < dim; ++i) v(i) = g.components[static_cast<size_t>(i)].coeff(0);
            rhs(0) = c;
            for (int j = 1; j < dim; ++j) rhs(j) = v(0) * v(j);
            return (s.u.matrix() * v - rhs).cwiseAbs().maxCoeff();
        }
        default:
            return -1.0;
    }
}

Germ continue_germ(const IsometryMap& f, const Germ& g, const std::vector<cplx>& path) {
    const std::vector<cplx> branch_set = branch_points(f);
    Germ cur = g;
    cplx center = cur.center();
    const int order = cur.order();

    auto branch_gap = [&](cplx at) {
        double d = std::numeric_limits<double>::infinity();
        for (cplx bp : branch_set) d = std::min(d, std::abs(at - bp));
        return d;
    };
    auto germ_radius = [&]() {
        double rho = std::numeric_limits<double>::infinity();
        for (const Series& comp : cur.components) rho = std::min(rho, comp.radius_estimate());
        return rho;
    };

    // Predictor-corrector: each step evaluates the current germ a little way
    // ahead (well inside its radius) and rebuilds the germ exactly at the new
    // center from the defining relations; the prediction only picks the
    // branch, so no truncation error accumulates along the path.
    for (cplx target : path) {
        while (std::abs(target - center) > 0.0) {
            const double allowed = 0.35 * std::min(branch_gap(center), germ_radius());
            if (!(allowed > 1e-7)) {
                throw NumericRejection("continue_germ",
                                       "step gating impossible near segment ending at (" +
                                           std::to_string(target.real()) + "," +
                                           std::to_string(target.imag()) + ")");
            }
            const double len = std::abs(target - center);
            const cplx next =
                (len <= allowed) ? target : center + allowed * (target - center) / len;
            std::vector<std::optional<cplx>> predicted;
            predicted.reserve(cur.components.size());
            for (const Series& comp : cur.components) {
                predicted.push_back(comp.evaluate(next).value);
            }
            cur.components = branch_germ(f, next, predicted, order);
            center = next;
        }
    }

    double relation = germ_relation_residual(f, cur);
    if (relation >= 0.0 && relation > 1e-8) {
        throw NumericRejection("continue_germ", "defining-relation residual " +
                                                    std::to_string(relation) +
                                                    " after continuation");
    }
    return cur;
}

std::vector<cplx> loop_around(cplx base, cplx around, double radius, int segments) {
    std::vector<cplx> path;
    const cplx dir = (std::abs(around - base) > 0.0)
                         ? (around - base) / std::abs(around - base)
                         : cplx{1.0};
    const cplx start = around - radius * dir;
    path.push_back(start);
    const double phase0 = std::arg(-dir);
    for (int i = 1; i <= segments; ++i) {
        const double ang = phase0 + 2.0 * kPi * i / segments;
        path.push_back(around + radius * std::exp(cplx{0.0, ang}));
    }
    path.push_back(base);
    return path;
}

cplx MinimalPolynomial::eval(cplx w, cplx z) const {
    cplx acc{};
    for (int b = z_degree; b >= 0; --b) {
        cplx row{};
        for (int a = w_degree; a >= 0; --a) {
            row = row * w + coeffs[static_cast<size_t>(a)][static_cast<size_t>(b)];
        }
        acc = acc * z + row;
    }
    return acc;
}

namespace {

MinimalPolynomial assemble(int dw, int dz, const Eigen::VectorXcd& v, double resid) {
    MinimalPolynomial p;
    p.found = true;
    p.w_degree = dw;
    p.z_degree = dz;
    p.fit_residual = resid;
    p.coeffs.assign(static_cast<size_t>(dw) + 1,
                    std::vector<cplx>(static_cast<size_t>(dz) + 1, cplx{}));
    int idx = 0;
    for (int a = 0; a <= dw; ++a) {
        for (int b = 0; b <= dz; ++b) {
            p.coeffs[static_cast<size_t>(a)][static_cast<size_t>(b)] = v(idx++);
        }
    }
    // Canonical scaling: unit norm, leading significant coefficient positive
    // real, so fits of different germs of one curve are comparable.
    double norm = 0.0;
    for (const auto& row : p.coeffs) {
        for (cplx cval : row) norm += abs2(cval);
    }
    norm = std::sqrt(norm);
    cplx phase{1.0};
    for (const auto& row : p.coeffs) {
        for (cplx cval : row) {
            if (std::abs(cval) > 1e-8 * norm) {
                phase = std::abs(cval) / cval;
                goto scale;
            }
        }
    }
scale:
    for (auto& row : p.coeffs) {
        for (cplx& cval : row) cval *= phase / norm;
    }
    return p;
}

}  // namespace

MinimalPolynomial minimal_polynomial_fit(const std::function<cplx(cplx)>& component,
                                         int max_bidegree, cplx circle_center,
                                         double circle_radius,
                                         const std::vector<std::pair<cplx, cplx>>& must_vanish) {
    if (max_bidegree < 1) {
        throw std::invalid_argument("minimal_polynomial_fit: max_bidegree must be >= 1");
    }
    const int max_unknowns = (max_bidegree + 1) * (max_bidegree + 1);
    const int sample_count = 2 * max_unknowns + 16;
    std::vector<cplx> ws(static_cast<size_t>(sample_count));
    std::vector<cplx> zs(static_cast<size_t>(sample_count));
    for (int i = 0; i < sample_count; ++i) {
        ws[static_cast<size_t>(i)] =
            circle_center + circle_radius * std::exp(cplx{0.0, 2.0 * kPi * i / sample_count});
        zs[static_cast<size_t>(i)] = component(ws[static_cast<size_t>(i)]);
    }
    // Rows for a sub-problem are strided through the full circle so every fit
    // sees equispaced angles.
    auto sample_index = [&](int i, int rows) {
        return static_cast<size_t>((static_cast<long>(i) * sample_count) / rows);
    };
    const int check_count = 24;
    std::vector<cplx> wc(static_cast<size_t>(check_count));
    std::vector<cplx> zc(static_cast<size_t>(check_count));
    for (int i = 0; i < check_count; ++i) {
        wc[static_cast<size_t>(i)] =
            circle_center +
            0.7 * circle_radius *
                std::exp(cplx{0.0, 2.0 * kPi * (i + 0.37) / check_count});
        zc[static_cast<size_t>(i)] = component(wc[static_cast<size_t>(i)]);
    }

    for (int dz = 1; dz <= max_bidegree; ++dz) {
        for (int dw = 1; dw <= max_bidegree; ++dw) {
            const int unknowns = (dw + 1) * (dz + 1);
            const int rows = 2 * unknowns + 8;
            Eigen::MatrixXcd m(rows, unknowns);
            for (int i = 0; i < rows; ++i) {
                const cplx w = ws[sample_index(i, rows)];
                const cplx z = zs[sample_index(i, rows)];
                int idx = 0;
                cplx wp{1.0};
                for (int a = 0; a <= dw; ++a) {
                    cplx zp{1.0};
                    for (int b = 0; b <= dz; ++b) {
                        m(i, idx++) = wp * zp;
                        zp *= z;
                    }
                    wp *= w;
                }
            }
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinV);
            const double sigma_min = svd.singularValues()(unknowns - 1);
            const double sigma_max = svd.singularValues()(0);
            if (sigma_min > 1e-10 * std::max(1.0, sigma_max)) continue;

            MinimalPolynomial cand =
                assemble(dw, dz, svd.matrixV().col(unknowns - 1), sigma_min);
            double off_circle = 0.0;
            for (int i = 0; i < check_count; ++i) {
                off_circle = std::max(off_circle,
                                      std::abs(cand.eval(wc[static_cast<size_t>(i)],
                                                         zc[static_cast<size_t>(i)])));
            }
            if (off_circle > 1e-7) continue;
            // A nullvector contaminated at 1e-7 still evaluates to ~1e-2 on
            // a foreign branch, so the separation here is several orders.
            double foreign = 0.0;
            for (const auto& [w, z] : must_vanish) {
                const double scale =
                    std::pow(std::max(1.0, std::abs(z)), dz) *
                    std::pow(std::max(1.0, std::abs(w)), dw);
                foreign = std::max(foreign, std::abs(cand.eval(w, z)) / scale);
            }
            if (foreign <= 1e-4) return cand;
        }
    }
    return {};
}

double coeff_matrix_distance(const MinimalPolynomial& a, const MinimalPolynomial& b) {
    if (!a.found || !b.found || a.w_degree != b.w_degree || a.z_degree != b.z_degree) {
        return std::numeric_limits<double>::infinity();
    }
    double worst = 0.0;
    for (size_t i = 0; i < a.coeffs.size(); ++i) {
        for (size_t j = 0; j < a.coeffs[i].size(); ++j) {
            worst = std::max(worst, std::abs(a.coeffs[i][j] - b.coeffs[i][j]));
        }
    }
    return worst;
}

namespace {

double segment_point_distance(cplx a, cplx b, cplx q) {
    const cplx d = b - a;
    const double dd = abs2(d);
    if (dd == 0.0) return std::abs(q - a);
    const double t = std::clamp(
        ((q - a).real() * d.real() + (q - a).imag() * d.imag()) / dd, 0.0, 1.0);
    return std::abs(q - (a + t * d));
}

}  // namespace

std::vector<Germ> monodromy_orbit(const IsometryMap& f, const std::vector<cplx>& branch_set,
                                  cplx base_hint, long cap, int germ_order) {
    std::vector<cplx> trouble = branch_set;
    for (cplx q : pole_points(f)) trouble.push_back(q);

    auto point_clearance = [&](cplx pt) {
        double d = std::numeric_limits<double>::infinity();
        for (cplx q : trouble) d = std::min(d, std::abs(pt - q));
        return d;
    };
    auto segment_clearance = [&](cplx a, cplx b, cplx skip) {
        double d = std::numeric_limits<double>::infinity();
        for (cplx q : trouble) {
            if (std::abs(q - skip) < 1e-12) continue;
            d = std::min(d, segment_point_distance(a, b, q));
        }
        return d;
    };

    // Base point: keep the hint if it is clear of branch and pole points,
    // otherwise nudge it on growing rings around the hint.
    cplx base = base_hint;
    if (point_clearance(base) < 0.2) {
        double best = point_clearance(base);
        for (int ring = 1; ring <= 4 && best < 0.2; ++ring) {
            for (int m = 0; m < 12; ++m) {
                cplx cand = base_hint + 0.09 * ring *
                                            std::exp(cplx{0.0, 2.0 * kPi * m / 12.0});
                if (std::abs(cand) > 0.7) continue;
                const double c = point_clearance(cand);
                if (c > best) {
                    best = c;
                    base = cand;
                }
            }
        }
    }

    double pairwise = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < branch_set.size(); ++i) {
        for (size_t j = i + 1; j < branch_set.size(); ++j) {
            pairwise = std::min(pairwise, std::abs(branch_set[i] - branch_set[j]));
        }
    }
    if (branch_set.size() == 1) {
        pairwise = std::min(1.0, std::abs(branch_set[0] - base));
    }

    std::vector<std::vector<cplx>> loops;
    for (cplx bp : branch_set) {
        const double r0 = std::min(0.5 * pairwise, 0.9 * std::abs(bp - base));
        double radius = r0;
        double best_score = -1.0;
        for (double scale : {1.0, 0.7, 0.5, 0.35}) {
            const double r = r0 * scale;
            double score = r;
            for (cplx q : trouble) {
                if (std::abs(q - bp) < 1e-12) continue;
                score = std::min(score, std::abs(std::abs(bp - q) - r));
            }
            if (score > best_score + 1e-12) {
                best_score = score;
                radius = r;
            }
        }
        double best_angle = 0.0, best_gap = -1.0;
        for (int cand = 0; cand < 16; ++cand) {
            const double ang = 2.0 * kPi * cand / 16.0;
            const cplx start = bp + radius * std::exp(cplx{0.0, ang});
            if (segment_point_distance(base, start, bp) < 0.95 * radius) continue;
            const double gap = segment_clearance(base, start, bp);
            if (gap > best_gap) {
                best_gap = gap;
                best_angle = ang;
            }
        }
        std::vector<cplx> loop;
        loop.push_back(bp + radius * std::exp(cplx{0.0, best_angle}));
        for (int i = 1; i <= 16; ++i) {
            loop.push_back(bp + radius *
                                    std::exp(cplx{0.0, best_angle + 2.0 * kPi * i / 16.0}));
        }
        loop.push_back(base);
        loops.push_back(loop);
        std::vector<cplx> rev(loop.rbegin(), loop.rend());
        rev.push_back(base);
        loops.push_back(std::move(rev));
    }
    {
        // One loop of radius 4 catches the monodromy at the point at
        // infinity; the approach ray is chosen clear of the trouble set.
        double best_angle = 0.0, best_gap = -1.0;
        for (int cand = 0; cand < 24; ++cand) {
            const double ang = 2.0 * kPi * cand / 24.0;
            const double gap =
                segment_clearance(base, 4.0 * std::exp(cplx{0.0, ang}), cplx{1e9});
            if (gap > best_gap) {
                best_gap = gap;
                best_angle = ang;
            }
        }
        std::vector<cplx> big{4.0 * std::exp(cplx{0.0, best_angle})};
        for (int i = 1; i <= 24; ++i) {
            big.push_back(4.0 * std::exp(cplx{0.0, best_angle + 2.0 * kPi * i / 24.0}));
        }
        big.push_back(base);
        loops.push_back(std::move(big));
    }

    Germ seed = initial_germ(f, base, germ_order);
    std::vector<Germ> orbit{seed};
    for (size_t head = 0; head < orbit.size(); ++head) {
        if (static_cast<long>(orbit.size()) > cap) break;
        const Germ at = orbit[head];
        for (const std::vector<cplx>& loop : loops) {
            Germ moved = continue_germ(f, at, loop);
            bool known = false;
            for (const Germ& seen : orbit) {
                if (germ_distance(seen, moved) <= 1e-7) {
                    known = true;
                    break;
                }
            }
            if (!known) orbit.push_back(moved);
        }
    }
    return orbit;
}

int monodromy_orbit_size(const IsometryMap& f, const std::vector<cplx>& branch_set,
                         cplx base_hint, long cap, int germ_order) {
    return static_cast<int>(monodromy_orbit(f, branch_set, base_hint, cap, germ_order).size());
}

namespace {

// Per-component (probe, sheet value) pairs from an orbit of germs.
std::vector<std::vector<std::pair<cplx, cplx>>> collect_branch_values(
    const std::vector<Germ>& orbit, int components) {
    std::vector<std::vector<std::pair<cplx, cplx>>> out(static_cast<size_t>(components));
    double rho = std::numeric_limits<double>::infinity();
    for (const Germ& g : orbit) {
        for (const Series& comp : g.components) rho = std::min(rho, comp.radius_estimate());
    }
    const cplx base = orbit.front().center();
    for (int m = 0; m < 3; ++m) {
        const cplx probe = base + 0.05 * std::min(1.0, rho) *
                                      std::exp(cplx{0.0, 2.0 * kPi * (m + 0.2) / 3.0});
        for (const Germ& g : orbit) {
            for (int j = 0; j < components; ++j) {
                out[static_cast<size_t>(j)].emplace_back(
                    probe, g.components[static_cast<size_t>(j)].evaluate(probe).value);
            }
        }
    }
    return out;
}

}  // namespace

MinimalPolynomial component_relation_fit(const IsometryMap& f, int component,
                                         int max_bidegree, int germ_order) {
    std::vector<cplx> finite;
    for (cplx bp : branch_points(f)) {
        if (std::abs(bp) <= 4.0) finite.push_back(bp);
    }
    std::vector<std::pair<cplx, cplx>> must_vanish;
    if (!finite.empty()) {
        std::vector<Germ> orbit = monodromy_orbit(f, finite, cplx{0.31, 0.17}, 64, germ_order);
        must_vanish =
            collect_branch_values(orbit, f.target().total_dim())[static_cast<size_t>(component)];
    }
    auto comp = [&f, component](cplx w) {
        return f.eval(w)[static_cast<size_t>(component)];
    };
    return minimal_polynomial_fit(comp, max_bidegree, cplx{}, 0.5, must_vanish);
}

SheetingReport sheeting_report(const IsometryMap& f, double k, int max_bidegree,
                               int germ_order) {
    for (const Factor& fac : f.target().factors) {
        if (fac.kind != FactorKind::Disk) {
            throw std::invalid_argument("sheeting_report: target must be a polydisk");
        }
    }
    SheetingReport rep;
    rep.p = f.target().total_dim();
    rep.k = k;

    std::vector<cplx> finite;
    for (cplx bp : branch_points(f)) {
        if (std::abs(bp) <= 4.0) finite.push_back(bp);
    }

    const long cap = 1L << (rep.p - 1);
    std::vector<Germ> orbit;
    if (finite.empty()) {
        orbit.push_back(initial_germ(f, cplx{0.31, 0.17}, germ_order));
        rep.n = 1;
    } else {
        orbit = monodromy_orbit(f, finite, cplx{0.31, 0.17}, cap + 1, germ_order);
        rep.n = static_cast<int>(orbit.size());
        if (rep.n > cap) {
            rep.orbit_overflow = true;
            return rep;
        }
    }

    // Sheet values over a few probe points near the base separate a true
    // component relation from a polynomial approximant of one branch.
    std::vector<std::vector<std::pair<cplx, cplx>>> branch_values =
        collect_branch_values(orbit, rep.p);

    for (int j = 0; j < rep.p; ++j) {
        auto comp = [&](cplx w) { return f.eval(w)[static_cast<size_t>(j)]; };
        MinimalPolynomial fit = minimal_polynomial_fit(comp, max_bidegree, cplx{}, 0.5,
                                                       branch_values[static_cast<size_t>(j)]);
        if (!fit.found) {
            throw NumericRejection("sheeting_report",
                                   "component " + std::to_string(j + 1) +
                                       " minimal polynomial undetermined up to bidegree " +
                                       std::to_string(max_bidegree));
        }
        rep.s.push_back(fit.z_degree);
    }

    rep.divisibility = true;
    double recip = 0.0;
    for (int sj : rep.s) {
        if (sj < 1 || rep.n % sj != 0) rep.divisibility = false;
        recip += 1.0 / sj;
    }
    rep.sum_reciprocal = std::abs(recip - k) <= 1e-9;
    rep.range = (static_cast<double>(rep.p) / k <= rep.n + 1e-9) &&
                (rep.n <= cap);
    return rep;
}

}  // namespace isoball
