#include "isoball/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace isoball {

namespace {

std::string fmt_cplx(cplx z) {
    std::ostringstream os;
    os << "(" << z.real() << "," << z.imag() << ")";
    return os.str();
}

void require_same_center(const char* op, const Series& a, const Series& b) {
    if (a.center() != b.center()) {
        throw NumericRejection(op, "center mismatch " + fmt_cplx(a.center()) +
                                       " vs " + fmt_cplx(b.center()));
    }
}

}  // namespace

Series::Series(cplx center, std::vector<cplx> coeffs)
    : center_(center), c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("Series: empty coefficient list");
}

Series Series::constant(cplx value, int order, cplx center) {
    std::vector<cplx> c(static_cast<size_t>(order) + 1, cplx{});
    c[0] = value;
    return Series(center, std::move(c));
}

Series Series::identity(int order, cplx center) {
    if (order < 1) throw std::invalid_argument("Series::identity: order must be >= 1");
    std::vector<cplx> c(static_cast<size_t>(order) + 1, cplx{});
    c[0] = center;
    c[1] = 1.0;
    return Series(center, std::move(c));
}

double Series::radius_estimate() const {
    const int n = order();
    if (n < 1) return std::numeric_limits<double>::infinity();
    const double tiny = 1e-300;

    // Geometric mean of |c_{k-1}/c_k| over the trailing window.
    int lo = std::max(1, n - 7);
    double logsum = 0.0;
    int used = 0;
    for (int k = lo; k <= n; ++k) {
        double num = std::abs(c_[static_cast<size_t>(k - 1)]);
        double den = std::abs(c_[static_cast<size_t>(k)]);
        if (num > tiny && den > tiny) {
            logsum += std::log(num / den);
            ++used;
        }
    }
    const double ratio_estimate =
        used >= 2 ? std::exp(logsum / used) : std::numeric_limits<double>::infinity();

    // Root-scaled magnitudes of trailing nonzero coefficients; the minimum of
    // both estimators keeps irregular tails from inflating the radius.
    double root_estimate = std::numeric_limits<double>::infinity();
    int seen = 0;
    for (int k = n; k >= 1 && seen < 8; --k) {
        double mag = std::abs(c_[static_cast<size_t>(k)]);
        if (mag > tiny) {
            root_estimate = std::min(root_estimate, std::pow(mag, -1.0 / k));
            ++seen;
        }
    }
    if (seen == 0) return std::numeric_limits<double>::infinity();  // polynomial tail
    return std::min(ratio_estimate, root_estimate);
}

EvalResult Series::evaluate(cplx w) const {
    const cplx x = w - center_;
    cplx acc{};
    for (int k = order(); k >= 0; --k) acc = acc * x + c_[static_cast<size_t>(k)];

    EvalResult out;
    out.value = acc;
    const double rho = radius_estimate();
    const double r = std::abs(x);
    if (std::isinf(rho)) {
        out.tail_bound = 0.0;
        out.reliable = true;
        return out;
    }
    const double q = r / rho;
    out.reliable = q < 1.0;
    if (q < 1.0) {
        out.tail_bound = std::abs(c_.back()) * std::pow(r, order()) * q / (1.0 - q);
    } else {
        out.tail_bound = std::numeric_limits<double>::infinity();
    }
    return out;
}

Series operator+(const Series& a, const Series& b) {
    require_same_center("series_add", a, b);
    int n = std::min(a.order(), b.order());
    std::vector<cplx> c(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) c[static_cast<size_t>(k)] = a.coeff(k) + b.coeff(k);
    return Series(a.center(), std::move(c));
}

Series operator-(const Series& a, const Series& b) {
    require_same_center("series_sub", a, b);
    int n = std::min(a.order(), b.order());
    std::vector<cplx> c(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) c[static_cast<size_t>(k)] = a.coeff(k) - b.coeff(k);
    return Series(a.center(), std::move(c));
}

Series operator-(const Series& a) { return cplx{-1.0} * a; }

Series operator*(const Series& a, const Series& b) {
    require_same_center("series_multiply", a, b);
    int n = std::min(a.order(), b.order());
    std::vector<cplx> c(static_cast<size_t>(n) + 1, cplx{});
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n - i; ++j) {
            c[static_cast<size_t>(i + j)] += a.coeff(i) * b.coeff(j);
        }
    }
    return Series(a.center(), std::move(c));
}

Series operator*(cplx s, const Series& a) {
    std::vector<cplx> c = a.coeffs();
    for (auto& x : c) x *= s;
    return Series(a.center(), std::move(c));
}

Series operator+(const Series& a, cplx s) {
    std::vector<cplx> c = a.coeffs();
    c[0] += s;
    return Series(a.center(), std::move(c));
}

Series operator-(const Series& a, cplx s) { return a + (-s); }

Series truncated(const Series& a, int order) {
    if (order >= a.order()) return a;
    std::vector<cplx> c(a.coeffs().begin(), a.coeffs().begin() + order + 1);
    return Series(a.center(), std::move(c));
}

Series padded(const Series& a, int order) {
    if (order <= a.order()) return truncated(a, order);
    std::vector<cplx> c = a.coeffs();
    c.resize(static_cast<size_t>(order) + 1, cplx{});
    return Series(a.center(), std::move(c));
}

Series derivative(const Series& a) {
    if (a.order() == 0) return Series::constant({}, 0, a.center());
    std::vector<cplx> c(static_cast<size_t>(a.order()));
    for (int k = 1; k <= a.order(); ++k) {
        c[static_cast<size_t>(k - 1)] = static_cast<double>(k) * a.coeff(k);
    }
    return Series(a.center(), std::move(c));
}

Series reciprocal(const Series& a) {
    if (std::abs(a.coeff(0)) == 0.0) {
        throw NumericRejection("series_reciprocal", "constant term vanishes");
    }
    const int n = a.order();
    std::vector<cplx> c(static_cast<size_t>(n) + 1, cplx{});
    c[0] = 1.0 / a.coeff(0);
    for (int k = 1; k <= n; ++k) {
        cplx acc{};
        for (int j = 1; j <= k; ++j) acc += a.coeff(j) * c[static_cast<size_t>(k - j)];
        c[static_cast<size_t>(k)] = -acc / a.coeff(0);
    }
    return Series(a.center(), std::move(c));
}

Series compose(const Series& outer, const Series& inner) {
    const double scale = std::max(1.0, std::abs(outer.center()));
    if (std::abs(inner.coeff(0) - outer.center()) > 1e-12 * scale) {
        throw NumericRejection("series_compose",
                               "inner value at its center " + fmt_cplx(inner.coeff(0)) +
                                   " does not match outer center " + fmt_cplx(outer.center()) +
                                   "; recenter first");
    }
    const int n = std::min(outer.order(), inner.order());

    // Shifted inner with exactly zero constant term keeps powers triangular.
    std::vector<cplx> shifted = truncated(inner, n).coeffs();
    shifted[0] = cplx{};
    Series x(inner.center(), std::move(shifted));

    Series acc = Series::constant(outer.coeff(n), n, inner.center());
    for (int k = n - 1; k >= 0; --k) acc = acc * x + outer.coeff(k);
    return acc;
}

Series reversion(const Series& f) {
    if (f.order() < 1) throw NumericRejection("series_reversion", "order must be >= 1");
    if (std::abs(f.coeff(0)) > 1e-14) {
        throw NumericRejection("series_reversion", "constant term must vanish");
    }
    if (std::abs(f.coeff(1)) == 0.0) {
        throw NumericRejection("series_reversion", "not invertible at center");
    }
    const int n = f.order();

    // Newton iteration on series, doubling the trusted order each step.
    std::vector<cplx> g0{cplx{}, 1.0 / f.coeff(1)};
    Series g(f.center(), std::move(g0));
    int m = 1;
    while (m < n) {
        m = std::min(2 * m, n);
        Series gm = padded(g, m);
        Series err = compose(truncated(f, m), gm) - Series::identity(m, f.center());
        Series slope = padded(derivative(gm), m);
        g = gm - err * slope;
    }

    // The attainable residual scales with the size of the inverse's and the
    // input's coefficients (ill-conditioned when the inverse radius is tiny).
    double g_scale = 1.0, f_scale = 1.0;
    for (cplx v : g.coeffs()) g_scale = std::max(g_scale, std::abs(v));
    for (cplx v : f.coeffs()) f_scale = std::max(f_scale, std::abs(v));
    double resid = coeff_distance(compose(f, g), Series::identity(n, f.center()));
    if (!(resid <= 1e-10 * g_scale * f_scale)) {
        throw NumericRejection("series_reversion",
                               "composition residual " + std::to_string(resid) +
                                   " exceeds tolerance");
    }
    return g;
}

Series fractional_power(const Series& f, double exponent) {
    if (std::abs(f.coeff(0)) == 0.0) {
        throw NumericRejection("series_fractional_power",
                               "constant term vanishes (branch point); use analytic "
                               "continuation instead");
    }
    const int n = f.order();
    std::vector<cplx> g(static_cast<size_t>(n) + 1, cplx{});
    g[0] = std::exp(exponent * std::log(f.coeff(0)));  // principal branch
    // g' f = exponent f' g, solved coefficient by coefficient.
    for (int i = 1; i <= n; ++i) {
        cplx acc{};
        for (int k = 1; k <= i; ++k) {
            acc += static_cast<double>(k) * f.coeff(k) * g[static_cast<size_t>(i - k)] *
                   exponent;
        }
        for (int k = 1; k <= i - 1; ++k) {
            acc -= static_cast<double>(k) * g[static_cast<size_t>(k)] * f.coeff(i - k);
        }
        g[static_cast<size_t>(i)] = acc / (static_cast<double>(i) * f.coeff(0));
    }
    return Series(f.center(), std::move(g));
}

Series recenter(const Series& f, cplx new_center) {
    const cplx delta = new_center - f.center();
    std::vector<cplx> c = f.coeffs();
    const int n = f.order();
    // In-place Taylor shift (repeated synthetic division).
    for (int j = 0; j <= n - 1; ++j) {
        for (int k = n - 1; k >= j; --k) {
            c[static_cast<size_t>(k)] += delta * c[static_cast<size_t>(k + 1)];
        }
    }
    return Series(new_center, std::move(c));
}

double coeff_distance(const Series& a, const Series& b, int count) {
    int n = std::min(a.order(), b.order());
    if (count >= 0) n = std::min(n, count - 1);
    double worst = 0.0;
    for (int k = 0; k <= n; ++k) {
        worst = std::max(worst, std::abs(a.coeff(k) - b.coeff(k)));
    }
    return worst;
}

}  // namespace isoball
