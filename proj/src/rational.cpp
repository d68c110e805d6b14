#include "isoball/rational.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace isoball {

Polynomial::Polynomial(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(cplx{});
    while (c_.size() > 1 && c_.back() == cplx{}) c_.pop_back();
}

Polynomial Polynomial::monomial(cplx coeff, int degree) {
    std::vector<cplx> c(static_cast<size_t>(degree) + 1, cplx{});
    c.back() = coeff;
    return Polynomial(std::move(c));
}

Polynomial Polynomial::from_roots(cplx lead, const std::vector<cplx>& roots) {
    Polynomial p({lead});
    for (cplx r : roots) p = p * Polynomial({-r, cplx{1.0}});
    return p;
}

bool Polynomial::is_zero() const {
    for (cplx v : c_) {
        if (v != cplx{}) return false;
    }
    return true;
}

cplx Polynomial::eval(cplx z) const {
    cplx acc{};
    for (int k = degree(); k >= 0; --k) acc = acc * z + c_[static_cast<size_t>(k)];
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (degree() == 0) return Polynomial();
    std::vector<cplx> d(static_cast<size_t>(degree()));
    for (int k = 1; k <= degree(); ++k) {
        d[static_cast<size_t>(k - 1)] = static_cast<double>(k) * c_[static_cast<size_t>(k)];
    }
    return Polynomial(std::move(d));
}

Polynomial Polynomial::trimmed(double tol) const {
    double scale = 0.0;
    for (cplx v : c_) scale = std::max(scale, std::abs(v));
    std::vector<cplx> c = c_;
    while (c.size() > 1 && std::abs(c.back()) <= tol * scale) c.pop_back();
    return Polynomial(std::move(c));
}

Polynomial Polynomial::deflated(cplx root) const {
    const int n = degree();
    if (n < 1) return Polynomial();
    std::vector<cplx> q(static_cast<size_t>(n));
    cplx carry = c_[static_cast<size_t>(n)];
    for (int k = n - 1; k >= 0; --k) {
        q[static_cast<size_t>(k)] = carry;
        carry = c_[static_cast<size_t>(k)] + root * carry;
    }
    return Polynomial(std::move(q));
}

std::vector<cplx> Polynomial::roots() const {
    Polynomial p = trimmed();
    const int n = p.degree();
    if (n < 1) return {};
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -p.coeff(i) / p.lead();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
    std::vector<cplx> out(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = es.eigenvalues()(i);
    std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<cplx> c(static_cast<size_t>(std::max(a.degree(), b.degree())) + 1, cplx{});
    for (int k = 0; k < static_cast<int>(c.size()); ++k) {
        c[static_cast<size_t>(k)] = a.coeff(k) + b.coeff(k);
    }
    return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return a + (cplx{-1.0} * b);
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<cplx> c(static_cast<size_t>(a.degree() + b.degree()) + 1, cplx{});
    for (int i = 0; i <= a.degree(); ++i) {
        for (int j = 0; j <= b.degree(); ++j) {
            c[static_cast<size_t>(i + j)] += a.coeff(i) * b.coeff(j);
        }
    }
    return Polynomial(std::move(c));
}

Polynomial operator*(cplx s, const Polynomial& a) {
    std::vector<cplx> c = a.coeffs();
    for (auto& v : c) v *= s;
    return Polynomial(std::move(c));
}

RationalMap::RationalMap(Polynomial num, Polynomial den)
    : num_(num.trimmed()), den_(den.trimmed()) {
    if (den_.is_zero()) throw std::invalid_argument("RationalMap: zero denominator");
    if (!num_.is_zero()) {
        // Cancel removable factors by matching roots; each side is deflated
        // by its own root so repeated roots (whose companion eigenvalues
        // split by sqrt(eps)) cancel cleanly.
        bool cancelled = true;
        while (cancelled && den_.degree() >= 1 && num_.degree() >= 1) {
            cancelled = false;
            const std::vector<cplx> num_roots = num_.roots();
            for (cplx pole : den_.roots()) {
                for (cplx zero : num_roots) {
                    if (std::abs(pole - zero) < 1e-6 * std::max(1.0, std::abs(pole))) {
                        // Polish on the numerator, where the matched root is
                        // typically simple; the raw estimates of repeated
                        // denominator roots carry sqrt(eps) splitting.
                        cplx root = zero;
                        const Polynomial dnum = num_.derivative();
                        for (int it = 0; it < 8; ++it) {
                            const cplx dv = dnum.eval(root);
                            if (std::abs(dv) < 1e-14) break;
                            const cplx step = num_.eval(root) / dv;
                            root -= step;
                            if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(root))) break;
                        }
                        if (std::abs(root - zero) > 1e-5 * std::max(1.0, std::abs(zero))) {
                            root = zero;  // refinement ran away; keep the estimate
                        }
                        num_ = num_.deflated(root);
                        den_ = den_.deflated(root);
                        cancelled = true;
                        break;
                    }
                }
                if (cancelled) break;
            }
        }
    }
    const cplx lead = den_.lead();
    num_ = (cplx{1.0} / lead) * num_;
    den_ = (cplx{1.0} / lead) * den_;
}

int RationalMap::degree() const { return std::max(num_.degree(), den_.degree()); }

cplx RationalMap::eval(cplx z) const { return num_.eval(z) / den_.eval(z); }

std::vector<cplx> RationalMap::preimages(cplx w) const {
    return (num_ - w * den_).roots();
}

std::vector<cplx> RationalMap::critical_values(double dedup_tol) const {
    Polynomial numerator_of_derivative =
        num_.derivative() * den_ - num_ * den_.derivative();
    std::vector<cplx> values;
    for (cplx z : numerator_of_derivative.roots()) {
        if (std::abs(den_.eval(z)) < 1e-12) continue;  // pole, not a finite value
        cplx v = eval(z);
        bool seen = false;
        for (cplx u : values) {
            if (std::abs(u - v) <= dedup_tol) {
                seen = true;
                break;
            }
        }
        if (!seen) values.push_back(v);
    }
    std::sort(values.begin(), values.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return values;
}

Series apply(const RationalMap& r, const Series& f) {
    const int n = f.order();
    auto horner = [&](const Polynomial& p) {
        Series acc = Series::constant(p.coeff(p.degree()), n, f.center());
        for (int k = p.degree() - 1; k >= 0; --k) acc = acc * f + p.coeff(k);
        return acc;
    };
    return horner(r.num()) * reciprocal(horner(r.den()));
}

}  // namespace isoball
