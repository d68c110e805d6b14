#include "isoball/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace isoball {

namespace {

// Deterministic sample points on an annulus, skipping disallowed spots.
std::vector<cplx> annulus_samples(int count, double r_lo, double r_hi,
                                  const std::vector<cplx>& avoid, double margin) {
    std::vector<cplx> out;
    const double golden = 0.6180339887498949;
    for (int i = 0; out.size() < static_cast<size_t>(count) && i < 20 * count; ++i) {
        double t = (i + 0.5) / count;
        double r = r_lo + (r_hi - r_lo) * (t - std::floor(t));
        double ang = 2.0 * kPi * std::fmod(golden * i, 1.0);
        cplx z = r * std::exp(cplx{0.0, ang});
        bool ok = true;
        for (cplx bad : avoid) {
            if (std::abs(z - bad) < margin) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(z);
    }
    return out;
}

double polarized_coeff_residual(const std::vector<Eigen::VectorXcd>& c) {
    const int n_ord = static_cast<int>(c.size()) - 1;
    const int dim = static_cast<int>(c[0].size());
    Eigen::MatrixXcd disk(n_ord + 1, n_ord + 1), ball(n_ord + 1, n_ord + 1);
    for (int a = 0; a <= n_ord; ++a) {
        for (int b = 0; b <= n_ord; ++b) {
            disk(a, b) = c[static_cast<size_t>(a)](0) * std::conj(c[static_cast<size_t>(b)](0));
            cplx acc{};
            for (int j = 1; j < dim; ++j) {
                acc += c[static_cast<size_t>(a)](j) * std::conj(c[static_cast<size_t>(b)](j));
            }
            ball(a, b) = acc;
        }
    }
    double worst = 0.0;
    for (int a = 0; a <= n_ord; ++a) {
        for (int b = 0; b <= n_ord; ++b) {
            cplx conv{};
            for (int a1 = 0; a1 <= a; ++a1) {
                for (int b1 = 0; b1 <= b; ++b1) {
                    conv += disk(a1, b1) * ball(a - a1, b - b1);
                }
            }
            cplx want = (a == 1 && b == 1) ? cplx{1.0} : cplx{};
            worst = std::max(worst, std::abs(disk(a, b) + ball(a, b) - conv - want));
        }
    }
    return worst;
}

// det of a small matrix of polynomials by Laplace expansion.
Polynomial poly_det(const std::vector<std::vector<Polynomial>>& m,
                    std::vector<int> rows, std::vector<int> cols) {
    const size_t k = rows.size();
    if (k == 1) return m[static_cast<size_t>(rows[0])][static_cast<size_t>(cols[0])];
    Polynomial acc;
    for (size_t j = 0; j < k; ++j) {
        std::vector<int> sub_rows(rows.begin() + 1, rows.end());
        std::vector<int> sub_cols;
        for (size_t t = 0; t < k; ++t) {
            if (t != j) sub_cols.push_back(cols[t]);
        }
        Polynomial term =
            m[static_cast<size_t>(rows[0])][static_cast<size_t>(cols[j])] *
            poly_det(m, sub_rows, sub_cols);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

}  // namespace

UnitaryMatrix::UnitaryMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() < 2) {
        throw std::invalid_argument("UnitaryMatrix: need a square matrix of size >= 2");
    }
    if (unitarity_residual() > 1e-12) {
        throw NumericRejection("unitary_matrix", "unitarity residual exceeds 1e-12");
    }
}

Eigen::MatrixXcd UnitaryMatrix::lower_block() const {
    return m_.bottomRightCorner(n(), n());
}

double UnitaryMatrix::unitarity_residual() const {
    Eigen::MatrixXcd g = m_ * m_.adjoint() - Eigen::MatrixXcd::Identity(m_.rows(), m_.cols());
    return g.cwiseAbs().maxCoeff();
}

RationalMap BlaschkeForm::to_rational() const {
    std::vector<cplx> num_roots{cplx{}};
    for (cplx a : roots) num_roots.push_back(1.0 / std::conj(a));
    return RationalMap(Polynomial::from_roots(alpha0, num_roots),
                       Polynomial::from_roots(1.0, roots));
}

std::vector<double> BlaschkeForm::invariant_moduli() const {
    std::vector<double> mods;
    mods.reserve(roots.size() + 1);
    for (cplx a : roots) mods.push_back(std::abs(a));
    std::sort(mods.begin(), mods.end());
    mods.push_back(std::abs(alpha0));
    return mods;
}

bool SolvedIsometry::f1_zero() const {
    for (cplx v : f1.coeffs()) {
        if (std::abs(v) > 1e-12) return false;
    }
    return true;
}

UnitaryMatrix normalize_unitary(const UnitaryMatrix& u) {
    const int n = u.n();
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(u.lower_block());
    Eigen::MatrixXcd q = schur.matrixU();
    Eigen::MatrixXcd conj_block = Eigen::MatrixXcd::Identity(n + 1, n + 1);
    conj_block.bottomRightCorner(n, n) = q;
    return UnitaryMatrix(conj_block.adjoint() * u.matrix() * conj_block);
}

bool f1_vanishes(const UnitaryMatrix& u) {
    return std::abs(u.lower_block().determinant()) <= 1e-10;
}

SolvedIsometry solve_isometry(const UnitaryMatrix& u, int order) {
    if (order < 2) throw std::invalid_argument("solve_isometry: order must be >= 2");
    const int dim = u.n() + 1;
    const Eigen::MatrixXcd adj = u.matrix().adjoint();

    std::vector<Eigen::VectorXcd> c(static_cast<size_t>(order) + 1,
                                    Eigen::VectorXcd::Zero(dim));
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(dim);
    double intertwine = 0.0;
    for (int d = 1; d <= order; ++d) {
        rhs.setZero();
        if (d == 1) {
            rhs(0) = 1.0;
        } else {
            for (int j = 1; j < dim; ++j) {
                cplx acc{};
                for (int a = 1; a <= d - 1; ++a) {
                    acc += c[static_cast<size_t>(a)](0) * c[static_cast<size_t>(d - a)](j);
                }
                rhs(j) = acc;
            }
        }
        c[static_cast<size_t>(d)] = adj * rhs;
        double resid = (u.matrix() * c[static_cast<size_t>(d)] - rhs).cwiseAbs().maxCoeff();
        if (resid > 1e-10) {
            throw NumericRejection("solve_isometry", "degenerate linear step at order " +
                                                         std::to_string(d));
        }
        intertwine = std::max(intertwine, resid);
    }

    std::vector<cplx> f1_coeffs(static_cast<size_t>(order) + 1);
    for (int d = 0; d <= order; ++d) f1_coeffs[static_cast<size_t>(d)] = c[static_cast<size_t>(d)](0);
    std::vector<Series> f2;
    for (int j = 1; j < dim; ++j) {
        std::vector<cplx> coeffs(static_cast<size_t>(order) + 1);
        for (int d = 0; d <= order; ++d) coeffs[static_cast<size_t>(d)] = c[static_cast<size_t>(d)](j);
        f2.emplace_back(cplx{}, std::move(coeffs));
    }

    SolvedIsometry out{u, Series(cplx{}, std::move(f1_coeffs)), std::move(f2),
                       std::nullopt, intertwine, 0.0};
    out.polarized_residual = polarized_coeff_residual(c);
    if (out.polarized_residual > 1e-10) {
        throw NumericRejection("solve_isometry",
                               "polarized functional equation residual " +
                                   std::to_string(out.polarized_residual));
    }

    if (!f1_vanishes(u)) out.rational = rational_R(u);
    return out;
}

RationalData rational_R(const UnitaryMatrix& u) {
    const int n = u.n();
    Eigen::MatrixXcd block = u.lower_block();
    if (std::abs(block.determinant()) <= 1e-10) {
        throw NumericRejection("rational_R", "f1 identically zero (singular lower block)");
    }

    // Entries of A - z I as degree-one polynomials.
    std::vector<std::vector<Polynomial>> m(static_cast<size_t>(n),
                                           std::vector<Polynomial>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            std::vector<cplx> coeffs{block(i, j)};
            if (i == j) coeffs.push_back(cplx{-1.0});
            m[static_cast<size_t>(i)][static_cast<size_t>(j)] = Polynomial(coeffs);
        }
    }
    std::vector<int> all(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<size_t>(i)] = i;
    Polynomial den = poly_det(m, all, all);

    auto minor_det = [&](int drop_row, int drop_col) {
        if (n == 1) return Polynomial({cplx{1.0}});
        std::vector<int> rows, cols;
        for (int i = 0; i < n; ++i) {
            if (i != drop_row) rows.push_back(i);
        }
        for (int j = 0; j < n; ++j) {
            if (j != drop_col) cols.push_back(j);
        }
        return poly_det(m, rows, cols);
    };

    const Polynomial z_mono = Polynomial::monomial(1.0, 1);

    // a . adj(A - zI) . b with a the first-row tail and b the first-column tail.
    Polynomial a_adj_b;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            cplx factor = u.entry(0, i + 1) * u.entry(j + 1, 0);
            if (factor == cplx{}) continue;
            Polynomial cof = minor_det(j, i);
            if ((i + j) % 2 == 1) cof = cplx{-1.0} * cof;
            a_adj_b = a_adj_b + factor * cof;
        }
    }

    Polynomial num = u.entry(0, 0) * (z_mono * den) - z_mono * a_adj_b;
    RationalData data{RationalMap(num, den), {}};

    for (int j = 0; j < n; ++j) {
        // (adj(A - zI) b)_j and the component map -z (A - zI)^{-1} b.
        Polynomial adj_b;
        for (int i = 0; i < n; ++i) {
            cplx factor = u.entry(i + 1, 0);
            if (factor == cplx{}) continue;
            Polynomial cof = minor_det(i, j);
            if ((i + j) % 2 == 1) cof = cplx{-1.0} * cof;
            adj_b = adj_b + factor * cof;
        }
        data.components.emplace_back(cplx{-1.0} * (z_mono * adj_b), den);
    }

    // Confirm the closed form against the series germ before handing it out.
    {
        const int check_order = 32;
        SolvedIsometry probe = [&] {
            // Local re-solve without rational data to avoid recursion.
            const int dim = n + 1;
            const Eigen::MatrixXcd adj = u.matrix().adjoint();
            std::vector<Eigen::VectorXcd> c(check_order + 1, Eigen::VectorXcd::Zero(dim));
            for (int d = 1; d <= check_order; ++d) {
                Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(dim);
                if (d == 1) {
                    rhs(0) = 1.0;
                } else {
                    for (int jj = 1; jj < dim; ++jj) {
                        cplx acc{};
                        for (int a = 1; a <= d - 1; ++a) {
                            acc += c[static_cast<size_t>(a)](0) *
                                   c[static_cast<size_t>(d - a)](jj);
                        }
                        rhs(jj) = acc;
                    }
                }
                c[static_cast<size_t>(d)] = adj * rhs;
            }
            std::vector<cplx> f1c(check_order + 1);
            std::vector<Series> f2s;
            for (int d = 0; d <= check_order; ++d) f1c[static_cast<size_t>(d)] = c[static_cast<size_t>(d)](0);
            for (int jj = 1; jj < dim; ++jj) {
                std::vector<cplx> cc(check_order + 1);
                for (int d = 0; d <= check_order; ++d) cc[static_cast<size_t>(d)] = c[static_cast<size_t>(d)](jj);
                f2s.emplace_back(cplx{}, std::move(cc));
            }
            return SolvedIsometry{u, Series(cplx{}, std::move(f1c)), std::move(f2s),
                                  std::nullopt, 0.0, 0.0};
        }();

        double oracle = coeff_distance(apply(data.r, probe.f1),
                                       Series::identity(check_order));
        if (oracle > 1e-9) {
            throw NumericRejection("rational_R", "series oracle residual " +
                                                     std::to_string(oracle) +
                                                     " for R(f1(w)) = w");
        }
        for (int j = 0; j < n; ++j) {
            double comp = coeff_distance(apply(data.components[static_cast<size_t>(j)],
                                               probe.f1),
                                         probe.f2[static_cast<size_t>(j)]);
            if (comp > 1e-9) {
                throw NumericRejection("rational_R",
                                       "series oracle residual for component " +
                                           std::to_string(j + 1));
            }
        }
    }

    if (data.r.degree() > n + 1) {
        throw NumericRejection("rational_R", "degree bound deg(R) <= n+1 violated");
    }
    return data;
}

BlaschkeForm blaschke_factorize(const RationalMap& r) {
    std::vector<cplx> poles = r.poles();
    // Multiple roots split by sqrt(eps) under the companion solver; the
    // cluster mean recovers them to machine precision.
    for (size_t i = 0; i < poles.size(); ++i) {
        std::vector<size_t> cluster{i};
        for (size_t j = i + 1; j < poles.size(); ++j) {
            if (std::abs(poles[j] - poles[i]) < 1e-6) cluster.push_back(j);
        }
        if (cluster.size() > 1) {
            cplx mean{};
            for (size_t idx : cluster) mean += poles[idx];
            mean /= static_cast<double>(cluster.size());
            for (size_t idx : cluster) poles[idx] = mean;
        }
    }
    for (cplx a : poles) {
        if (std::abs(a) > 1.0 + 1e-8 || std::abs(a) < 1e-10) {
            throw NumericRejection("blaschke_factorize",
                                   "pole outside closed disk or at the origin");
        }
    }

    std::vector<cplx> avoid = poles;
    for (cplx a : poles) avoid.push_back(1.0 / std::conj(a));
    std::vector<cplx> sym_pts = annulus_samples(100, 0.35, 0.95, avoid, 0.05);
    for (cplx z : sym_pts) {
        cplx lhs = r.eval(1.0 / std::conj(z));
        cplx rhs = 1.0 / std::conj(r.eval(z));
        if (std::abs(lhs - rhs) > 1e-10 * std::max(1.0, std::abs(rhs))) {
            throw NumericRejection("blaschke_factorize",
                                   "not an isometry-induced rational map (symmetry "
                                   "violated)");
        }
    }

    BlaschkeForm form{cplx{1.0}, poles};
    cplx probe = annulus_samples(1, 0.61, 0.61, avoid, 0.05).at(0);
    cplx shape = probe;
    for (cplx a : poles) shape *= (probe - 1.0 / std::conj(a)) / (probe - a);
    form.alpha0 = r.eval(probe) / shape;
    if (std::abs(form.alpha0) > 1.0 + 1e-8 || std::abs(form.alpha0) < 1e-10) {
        throw NumericRejection("blaschke_factorize", "alpha0 outside closed disk");
    }

    RationalMap rebuilt = form.to_rational();
    for (cplx z : sym_pts) {
        if (std::abs(rebuilt.eval(z) - r.eval(z)) > 1e-10 * std::max(1.0, std::abs(r.eval(z)))) {
            throw NumericRejection("blaschke_factorize", "reconstruction mismatch");
        }
    }
    return form;
}

std::pair<RationalMap, cplx> peel_factor(const RationalMap& r) {
    if (r.degree() < 2) {
        throw NumericRejection("peel_factor", "already linear (totally geodesic direction)");
    }
    BlaschkeForm form = blaschke_factorize(r);
    size_t pick = 0;
    for (size_t j = 1; j < form.roots.size(); ++j) {
        double da = std::abs(form.roots[j]), db = std::abs(form.roots[pick]);
        if (da > db + 1e-12) {
            pick = j;
        } else if (std::abs(da - db) <= 1e-12) {
            double arg_a = std::arg(form.roots[j]), arg_b = std::arg(form.roots[pick]);
            if (arg_a < 0) arg_a += 2.0 * kPi;
            if (arg_b < 0) arg_b += 2.0 * kPi;
            if (arg_a < arg_b) pick = j;
        }
    }
    const cplx zeta = form.roots[pick];
    BlaschkeForm reduced{form.alpha0 / std::conj(zeta), {}};
    for (size_t j = 0; j < form.roots.size(); ++j) {
        if (j != pick) reduced.roots.push_back(form.roots[j]);
    }
    return {reduced.to_rational(), zeta};
}

RationalMap extend_factor(const RationalMap& r, cplx zeta) {
    if (std::abs(zeta) < 1e-10 || std::abs(zeta) > 1.0 + 1e-12) {
        throw NumericRejection("extend_factor", "zeta must lie in the closed disk minus 0");
    }
    Polynomial factor_num({cplx{-1.0}, std::conj(zeta)});
    Polynomial factor_den({-zeta, cplx{1.0}});
    return RationalMap(r.num() * factor_num, r.den() * factor_den);
}

UnitaryMatrix u_zeta(cplx zeta) {
    if (std::abs(zeta) >= 1.0 / 3.0) {
        throw NumericRejection("u_zeta", "|zeta| must be < 1/3");
    }
    const double s = std::sqrt(1.0 - abs2(zeta));
    const cplx zb = std::conj(zeta);
    Eigen::MatrixXcd m(3, 3);
    m << -zb * zb, cplx{-s}, zb * s,
         -s * zb, zeta, cplx{1.0 - abs2(zeta)},
         cplx{s}, cplx{}, zeta;
    return UnitaryMatrix(m);
}

UnitaryMatrix unitary_from_germ(const Series& f1, const std::vector<Series>& f2) {
    const int dim = static_cast<int>(f2.size()) + 1;
    const int order = f1.order();
    Eigen::MatrixXcd lhs(dim, order), rhs(dim, order);
    auto coeff = [&](int comp, int d) {
        return comp == 0 ? f1.coeff(d) : f2[static_cast<size_t>(comp - 1)].coeff(d);
    };
    for (int d = 1; d <= order; ++d) {
        for (int i = 0; i < dim; ++i) lhs(i, d - 1) = coeff(i, d);
        rhs(0, d - 1) = (d == 1) ? cplx{1.0} : cplx{};
        for (int j = 1; j < dim; ++j) {
            cplx acc{};
            for (int a = 1; a <= d - 1; ++a) acc += coeff(0, a) * coeff(j, d - a);
            rhs(j, d - 1) = acc;
        }
    }
    // U lhs = rhs in the least-squares sense.
    Eigen::MatrixXcd ut = lhs.transpose().colPivHouseholderQr().solve(rhs.transpose());
    Eigen::MatrixXcd u = ut.transpose();
    if ((u * lhs - rhs).cwiseAbs().maxCoeff() > 1e-8) {
        throw NumericRejection("unitary_from_germ",
                               "germ does not satisfy the intertwining equation");
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return UnitaryMatrix(svd.matrixU() * svd.matrixV().adjoint());
}

namespace {

double series_trust_radius(const SolvedIsometry& s) {
    double rho = s.f1.radius_estimate();
    for (const Series& g : s.f2) rho = std::min(rho, g.radius_estimate());
    return 0.8 * rho;
}

cplx track_f1(const SolvedIsometry& s, const std::vector<cplx>& nodes,
              std::vector<cplx>* record) {
    if (!s.rational) {
        throw NumericRejection("f1_continuation", "map has f1 identically zero");
    }
    const RationalMap& r = s.rational->r;
    cplx w{}, z{};
    // Adaptive stepping: a step is accepted only when the tracked root stays
    // well separated from the rest of the fiber, which is exactly the branch
    // identity criterion; global critical values on other sheets do not gate.
    double allowed = 0.2;
    for (cplx target : nodes) {
        while (std::abs(target - w) > 0.0) {
            if (allowed < 1e-9) {
                throw NumericRejection("f1_continuation",
                                       "path passes through a branch point of R");
            }
            const double len = std::abs(target - w);
            const cplx next =
                (len <= allowed) ? target : w + allowed * (target - w) / len;
            cplx best{};
            double nearest = std::numeric_limits<double>::infinity();
            double second = std::numeric_limits<double>::infinity();
            for (cplx cand : r.preimages(next)) {
                const double dd = std::abs(cand - z);
                if (dd < nearest) {
                    second = nearest;
                    nearest = dd;
                    best = cand;
                } else {
                    second = std::min(second, dd);
                }
            }
            if (second < 3.0 * nearest && nearest > 1e-13) {
                allowed *= 0.5;
                continue;
            }
            z = best;
            w = next;
            allowed = std::min(0.2, allowed * 1.5);
        }
        if (record) record->push_back(z);
    }
    return z;
}

}  // namespace

std::vector<cplx> f1_along_path(const SolvedIsometry& s, const std::vector<cplx>& nodes) {
    std::vector<cplx> out;
    out.reserve(nodes.size());
    track_f1(s, nodes, &out);
    return out;
}

std::vector<Series> solved_branch_germ(const SolvedIsometry& s, cplx center, cplx z0,
                                       int order) {
    if (!s.rational) {
        throw NumericRejection("solved_branch_germ", "map has f1 identically zero");
    }
    const RationalMap& r = s.rational->r;
    const Polynomial num_shift_base = r.num() - center * r.den();

    // Newton polish of R(z0) = center.
    const Polynomial d_num = num_shift_base.derivative();
    for (int it = 0; it < 60; ++it) {
        const cplx fval = num_shift_base.eval(z0);
        const cplx dval = d_num.eval(z0);
        if (std::abs(dval) < 1e-14) {
            throw NumericRejection("solved_branch_germ", "center too close to a branch point");
        }
        const cplx delta = fval / dval;
        z0 -= delta;
        if (std::abs(delta) < 1e-15 * std::max(1.0, std::abs(z0))) break;
    }

    // T(u) = R(z0 + u) - center as a series in u, then revert.
    auto shifted_coeffs = [&](const Polynomial& p) {
        std::vector<cplx> c = p.coeffs();
        const int deg = p.degree();
        for (int j = 0; j <= deg - 1; ++j) {
            for (int k = deg - 1; k >= j; --k) {
                c[static_cast<size_t>(k)] += z0 * c[static_cast<size_t>(k + 1)];
            }
        }
        c.resize(static_cast<size_t>(order) + 1, cplx{});
        return c;
    };
    std::vector<cplx> p_coeffs = shifted_coeffs(num_shift_base);
    p_coeffs[0] = cplx{};  // exact zero after the polish
    Series t = Series(cplx{}, std::move(p_coeffs)) *
               reciprocal(Series(cplx{}, shifted_coeffs(r.den())));

    // Near a branch point the local inverse has a tiny radius and its high
    // Taylor coefficients overflow the useful double range; cap the order so
    // coefficient magnitudes stay sane.  Low coefficients are unaffected.
    int effective_order = order;
    if (order > 20) {
        Series probe = reversion(truncated(t, 20));
        const double rho = 0.85 * probe.radius_estimate();
        if (rho < 1.0) {
            const int cap =
                static_cast<int>(std::floor(std::log(1e8) / std::log(1.0 / rho)));
            effective_order = std::clamp(cap, 16, order);
        }
    }
    Series g = reversion(truncated(t, effective_order));

    std::vector<cplx> f1_coeffs = g.coeffs();
    f1_coeffs[0] = z0;
    Series f1(center, std::move(f1_coeffs));

    std::vector<Series> out{f1};
    for (const RationalMap& comp : s.rational->components) out.push_back(apply(comp, f1));
    return out;
}

cplx eval_f1(const SolvedIsometry& s, cplx w) {
    if (s.f1_zero()) return cplx{};
    if (std::abs(w) <= series_trust_radius(s)) {
        EvalResult r = s.f1.evaluate(w);
        if (r.reliable) return r.value;
    }
    return track_f1(s, {w}, nullptr);
}

std::vector<cplx> eval_ball_part(const SolvedIsometry& s, cplx w) {
    if (std::abs(w) <= series_trust_radius(s)) {
        bool ok = true;
        std::vector<cplx> vals;
        for (const Series& g : s.f2) {
            EvalResult r = g.evaluate(w);
            if (!r.reliable) {
                ok = false;
                break;
            }
            vals.push_back(r.value);
        }
        if (ok) return vals;
    }
    if (s.f1_zero()) {
        throw NumericRejection("eval_ball_part",
                               "point outside the series trust radius for a degenerate map");
    }
    cplx z = track_f1(s, {w}, nullptr);
    std::vector<cplx> vals;
    for (const RationalMap& comp : s.rational->components) vals.push_back(comp.eval(z));
    return vals;
}

std::vector<cplx> eval_solved(const SolvedIsometry& s, cplx w) {
    std::vector<cplx> out{eval_f1(s, w)};
    for (cplx v : eval_ball_part(s, w)) out.push_back(v);
    return out;
}

}  // namespace isoball
