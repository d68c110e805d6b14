#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "isoball/common.hpp"

namespace isoball {

enum class FactorKind { Disk, Ball };

struct Factor {
    FactorKind kind = FactorKind::Disk;
    int dim = 1;
};

inline Factor disk_factor() { return {FactorKind::Disk, 1}; }
inline Factor ball_factor(int dim) { return {FactorKind::Ball, dim}; }

// Ordered product of disk/ball factors with one positive metric constant per
// factor.
struct ProductSpace {
    std::vector<Factor> factors;
    std::vector<double> constants;

    ProductSpace() = default;
    ProductSpace(std::vector<Factor> f, std::vector<double> c);

    int total_dim() const;
    // Start offset of factor i in a flattened coordinate vector.
    int offset(int i) const;

    static ProductSpace polydisk(int p);
    static ProductSpace single_ball(int dim, double constant = 1.0);
};

enum class DomainKind { Ball, Polydisk, TypeI, TypeIV };

// Bergman kernel shape c_D * (1 - |Z|^2 + Q_D)^m for the classical kinds the
// lab works with.  c_D is carried but plays no role in any metric identity.
struct KernelSpec {
    DomainKind kind = DomainKind::Ball;
    int n = 1;  // Ball(n), Polydisk(n), TypeIV(n); rows p for TypeI
    int q = 0;  // TypeI columns
    double c_d = 1.0;
    int exponent = 0;

    static KernelSpec ball(int n);
    static KernelSpec polydisk(int p);
    static KernelSpec type_i(int p, int q);
    static KernelSpec type_iv(int n);

    int ambient_dim() const;
};

// z -> e^{i theta} (z - a) / (1 - conj(a) z)
struct DiskAutomorphism {
    cplx a{};
    double theta = 0.0;

    cplx apply(cplx z) const;
    DiskAutomorphism inverse() const;
};

// Standard involution at the base point followed by a unitary.
struct BallAutomorphism {
    Eigen::VectorXcd base;     // point of the ball sent to 0
    Eigen::MatrixXcd unitary;  // applied after the involution

    static BallAutomorphism identity(int dim);

    std::vector<cplx> apply(std::span<const cplx> z) const;
    BallAutomorphism inverse() const;
};

// The kernel bracket 1 - |Z|^2 + Q_D(Z, conj Z); positive exactly on the
// domain.
double kernel_bracket(const KernelSpec& spec, std::span<const cplx> z);

// -log of the bracket; rejects points outside the domain.
double kahler_potential(const KernelSpec& spec, std::span<const cplx> z);

// Both sides of the minor-expansion identity for det(I_p - Z conj(Z)^t):
// direct determinant on the left, alternating sum of squared k x k minors on
// the right.
std::pair<double, double> det_minor_expansion(const Eigen::MatrixXcd& z);

cplx apply_automorphism(const DiskAutomorphism& f, cplx z);
std::vector<cplx> apply_automorphism(const BallAutomorphism& f, std::span<const cplx> z);

}  // namespace isoball
