#include "isoball/domains.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace isoball {

ProductSpace::ProductSpace(std::vector<Factor> f, std::vector<double> c)
    : factors(std::move(f)), constants(std::move(c)) {
    if (factors.size() != constants.size()) {
        throw std::invalid_argument("ProductSpace: one constant per factor required");
    }
    for (double lam : constants) {
        if (!(lam > 0.0)) {
            throw std::invalid_argument("ProductSpace: constants must be positive");
        }
    }
    for (const Factor& fac : factors) {
        if (fac.dim < 1 || (fac.kind == FactorKind::Disk && fac.dim != 1)) {
            throw std::invalid_argument("ProductSpace: bad factor dimension");
        }
    }
}

int ProductSpace::total_dim() const {
    int d = 0;
    for (const Factor& f : factors) d += f.dim;
    return d;
}

int ProductSpace::offset(int i) const {
    int d = 0;
    for (int j = 0; j < i; ++j) d += factors[static_cast<size_t>(j)].dim;
    return d;
}

ProductSpace ProductSpace::polydisk(int p) {
    return ProductSpace(std::vector<Factor>(static_cast<size_t>(p), disk_factor()),
                        std::vector<double>(static_cast<size_t>(p), 1.0));
}

ProductSpace ProductSpace::single_ball(int dim, double constant) {
    return ProductSpace({ball_factor(dim)}, {constant});
}

KernelSpec KernelSpec::ball(int n) { return {DomainKind::Ball, n, 0, 1.0, -(n + 1)}; }

KernelSpec KernelSpec::polydisk(int p) { return {DomainKind::Polydisk, p, 0, 1.0, -2}; }

KernelSpec KernelSpec::type_i(int p, int q) {
    if (p > q) throw std::invalid_argument("KernelSpec::type_i: requires p <= q");
    return {DomainKind::TypeI, p, q, 1.0, -(p + q)};
}

KernelSpec KernelSpec::type_iv(int n) { return {DomainKind::TypeIV, n, 0, 1.0, -n}; }

int KernelSpec::ambient_dim() const {
    switch (kind) {
        case DomainKind::TypeI: return n * q;
        default: return n;
    }
}

cplx DiskAutomorphism::apply(cplx z) const {
    return std::exp(cplx{0.0, theta}) * (z - a) / (1.0 - std::conj(a) * z);
}

DiskAutomorphism DiskAutomorphism::inverse() const {
    return {-a * std::exp(cplx{0.0, theta}), -theta};
}

BallAutomorphism BallAutomorphism::identity(int dim) {
    BallAutomorphism f;
    f.base = Eigen::VectorXcd::Zero(dim);
    f.unitary = Eigen::MatrixXcd::Identity(dim, dim);
    return f;
}

std::vector<cplx> BallAutomorphism::apply(std::span<const cplx> z) const {
    const int n = static_cast<int>(base.size());
    if (static_cast<int>(z.size()) != n) {
        throw std::invalid_argument("BallAutomorphism: dimension mismatch");
    }
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v(i) = z[static_cast<size_t>(i)];

    Eigen::VectorXcd moved(n);
    const double a2 = base.squaredNorm();
    if (a2 == 0.0) {
        moved = v;
    } else {
        const cplx inner = v.dot(base);  // sum conj(v_i) a_i
        const cplx za = std::conj(inner);  // sum z_i conj(a_i)
        const double s = std::sqrt(1.0 - a2);
        Eigen::VectorXcd proj = (za / a2) * base;
        moved = (base - proj - s * (v - proj)) / (1.0 - za);
    }
    Eigen::VectorXcd out = unitary * moved;
    return std::vector<cplx>(out.data(), out.data() + n);
}

BallAutomorphism BallAutomorphism::inverse() const {
    BallAutomorphism f;
    f.base = unitary * base;
    f.unitary = unitary.adjoint();
    return f;
}

double kernel_bracket(const KernelSpec& spec, std::span<const cplx> z) {
    if (static_cast<int>(z.size()) != spec.ambient_dim()) {
        throw std::invalid_argument("kernel_bracket: coordinate count mismatch");
    }
    switch (spec.kind) {
        case DomainKind::Ball: {
            double s = 0.0;
            for (cplx v : z) s += abs2(v);
            return 1.0 - s;
        }
        case DomainKind::Polydisk: {
            double prod = 1.0;
            for (cplx v : z) prod *= 1.0 - abs2(v);
            for (cplx v : z) {
                if (abs2(v) >= 1.0) return std::min(prod, 0.0);
            }
            return prod;
        }
        case DomainKind::TypeI: {
            Eigen::MatrixXcd m(spec.n, spec.q);
            for (int i = 0; i < spec.n; ++i) {
                for (int j = 0; j < spec.q; ++j) {
                    m(i, j) = z[static_cast<size_t>(i * spec.q + j)];
                }
            }
            Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(spec.n, spec.n) -
                                 m * m.adjoint();
            return g.determinant().real();
        }
        case DomainKind::TypeIV: {
            double zz_bar = 0.0;
            cplx zz{};
            for (cplx v : z) {
                zz_bar += abs2(v);
                zz += v * v;
            }
            if (zz_bar >= 2.0) return 0.0;
            return 1.0 - zz_bar + 0.25 * abs2(zz);
        }
    }
    return 0.0;
}

double kahler_potential(const KernelSpec& spec, std::span<const cplx> z) {
    const double bracket = kernel_bracket(spec, z);
    if (!(bracket > 0.0)) {
        throw NumericRejection("kahler_potential", "point outside domain (bracket <= 0)");
    }
    return -std::log(bracket);
}

namespace {

void combinations(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(static_cast<size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++idx[static_cast<size_t>(i)];
        for (int j = i + 1; j < k; ++j) {
            idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
        }
    }
}

}  // namespace

std::pair<double, double> det_minor_expansion(const Eigen::MatrixXcd& z) {
    const int p = static_cast<int>(z.rows());
    const int q = static_cast<int>(z.cols());
    if (p > q) throw std::invalid_argument("det_minor_expansion: requires p <= q");

    Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(p, p) - z * z.adjoint();
    const double lhs = g.determinant().real();

    double rhs = 1.0;
    for (int k = 1; k <= p; ++k) {
        double total = 0.0;
        combinations(p, k, [&](const std::vector<int>& rows) {
            combinations(q, k, [&](const std::vector<int>& cols) {
                Eigen::MatrixXcd sub(k, k);
                for (int i = 0; i < k; ++i) {
                    for (int j = 0; j < k; ++j) {
                        sub(i, j) = z(rows[static_cast<size_t>(i)],
                                      cols[static_cast<size_t>(j)]);
                    }
                }
                total += abs2(sub.determinant());
            });
        });
        rhs += (k % 2 == 0 ? 1.0 : -1.0) * total;
    }
    return {lhs, rhs};
}

cplx apply_automorphism(const DiskAutomorphism& f, cplx z) {
    if (std::abs(z) >= 1.0) {
        throw NumericRejection("apply_automorphism", "point not inside the disk");
    }
    return f.apply(z);
}

std::vector<cplx> apply_automorphism(const BallAutomorphism& f, std::span<const cplx> z) {
    double s = 0.0;
    for (cplx v : z) s += abs2(v);
    if (s >= 1.0) {
        throw NumericRejection("apply_automorphism", "point not inside the ball");
    }
    return f.apply(z);
}

}  // namespace isoball
