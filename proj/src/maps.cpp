#include "isoball/maps.hpp"

#include <algorithm>
#include <cmath>

namespace isoball {

namespace {

cplx pow_int(cplx z, int p) {
    cplx acc{1.0};
    for (int i = 0; i < p; ++i) acc *= z;
    return acc;
}

cplx root_of_unity_half(int p, int a) {
    // gamma^a with gamma = exp(i pi / p)
    return std::exp(cplx{0.0, kPi * a / p});
}

Series mobius_series(const DiskAutomorphism& m, const Series& s) {
    const cplx phase = std::exp(cplx{0.0, m.theta});
    return mobius_of_series(phase, -phase * m.a, -std::conj(m.a), cplx{1.0}, s);
}

std::vector<Series> ball_series(const BallAutomorphism& m, const std::vector<Series>& s) {
    const int n = static_cast<int>(s.size());
    std::vector<Series> moved;
    const double a2 = m.base.squaredNorm();
    if (a2 == 0.0) {
        moved = s;
    } else {
        Series za = Series::constant({}, s[0].order(), s[0].center());
        for (int i = 0; i < n; ++i) za = za + std::conj(m.base(i)) * s[static_cast<size_t>(i)];
        Series denom_inv = reciprocal(cplx{-1.0} * za + cplx{1.0});
        const double sa = std::sqrt(1.0 - a2);
        for (int i = 0; i < n; ++i) {
            Series proj = (m.base(i) / a2) * za;
            Series tangent = s[static_cast<size_t>(i)] - proj;
            Series numer = cplx{-1.0} * (proj + cplx{sa} * tangent) + m.base(i);
            moved.push_back(numer * denom_inv);
        }
    }
    std::vector<Series> out;
    for (int i = 0; i < n; ++i) {
        Series acc = Series::constant({}, s[0].order(), s[0].center());
        for (int j = 0; j < n; ++j) acc = acc + m.unitary(i, j) * moved[static_cast<size_t>(j)];
        out.push_back(acc);
    }
    return out;
}

std::vector<cplx> dedup_sorted(std::vector<cplx> pts, double tol = 1e-9) {
    std::vector<cplx> out;
    for (cplx z : pts) {
        bool seen = false;
        for (cplx u : out) {
            if (std::abs(u - z) <= tol) {
                seen = true;
                break;
            }
        }
        if (!seen) out.push_back(z);
    }
    std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

}  // namespace

cplx cayley(CayleyDirection dir, cplx z) {
    if (dir == CayleyDirection::DiskToHalfplane) {
        if (z == cplx{1.0}) {
            throw NumericRejection("cayley", "the boundary point 1 is excluded");
        }
        return cplx{0.0, 1.0} * (1.0 + z) / (1.0 - z);
    }
    if (z == cplx{0.0, -1.0}) {
        throw NumericRejection("cayley", "the point -i is excluded");
    }
    return (z - cplx{0.0, 1.0}) / (z + cplx{0.0, 1.0});
}

std::vector<cplx> eval_pth_root(int p, cplx w) {
    if (p < 2) throw std::invalid_argument("eval_pth_root: p must be >= 2");
    if (std::abs(w) >= 1.0) {
        throw NumericRejection("eval_pth_root", "point not inside the disk");
    }
    const cplx tau = cayley(CayleyDirection::DiskToHalfplane, w);
    const cplx root = std::pow(tau, 1.0 / p);  // arg(tau) in (0, pi)
    std::vector<cplx> out;
    out.reserve(static_cast<size_t>(p));
    for (int a = 0; a < p; ++a) {
        out.push_back(cayley(CayleyDirection::HalfplaneToDisk, root_of_unity_half(p, a) * root));
    }
    return out;
}

std::vector<cplx> eval_diagonal(int p, cplx w) {
    if (p < 1) throw std::invalid_argument("eval_diagonal: p must be >= 1");
    return std::vector<cplx>(static_cast<size_t>(p), w);
}

std::vector<cplx> IsometryMap::eval(cplx w) const {
    switch (kind_) {
        case MapKind::PthRoot:
            return eval_pth_root(p_, w);
        case MapKind::Diagonal:
            return eval_diagonal(p_, w);
        case MapKind::Slice: {
            std::vector<cplx> out;
            for (bool on : mask_) out.push_back(on ? w : cplx{});
            return out;
        }
        case MapKind::UnitarySolved:
            return eval_solved(*solved_, w);
        case MapKind::Sharp: {
            std::vector<cplx> vf = a_->eval(w);
            const int offset = a_->target().offset(slot_ - 1);
            std::vector<cplx> vg = b_->eval(vf[static_cast<size_t>(offset)]);
            std::vector<cplx> out(vf.begin(), vf.begin() + offset);
            out.insert(out.end(), vg.begin(), vg.end());
            out.insert(out.end(), vf.begin() + offset + 1, vf.end());
            return out;
        }
        case MapKind::DirectSum: {
            std::vector<cplx> out = a_->eval(w);
            std::vector<cplx> right = b_->eval(w);
            out.insert(out.end(), right.begin(), right.end());
            return out;
        }
        case MapKind::Catalog:
            return a_->eval(w);
        case MapKind::Reparam: {
            std::vector<cplx> v = a_->eval(pre_.apply(w));
            std::vector<cplx> out;
            out.reserve(v.size());
            for (size_t i = 0; i < target_.factors.size(); ++i) {
                const int off = target_.offset(static_cast<int>(i));
                const Factor& fac = target_.factors[i];
                if (std::holds_alternative<DiskAutomorphism>(post_[i])) {
                    out.push_back(std::get<DiskAutomorphism>(post_[i]).apply(v[static_cast<size_t>(off)]));
                } else {
                    std::span<const cplx> sl(v.data() + off, static_cast<size_t>(fac.dim));
                    for (cplx x : std::get<BallAutomorphism>(post_[i]).apply(sl)) out.push_back(x);
                }
            }
            return out;
        }
    }
    return {};
}

IsometryMap pth_root_map(int p) {
    if (p < 2) throw std::invalid_argument("pth_root_map: p must be >= 2");
    IsometryMap m;
    m.kind_ = MapKind::PthRoot;
    m.p_ = p;
    m.target_ = ProductSpace::polydisk(p);
    m.k_ = 1.0;
    return m;
}

IsometryMap diagonal_map(int p) {
    if (p < 1) throw std::invalid_argument("diagonal_map: p must be >= 1");
    IsometryMap m;
    m.kind_ = MapKind::Diagonal;
    m.p_ = p;
    m.target_ = ProductSpace::polydisk(p);
    m.k_ = static_cast<double>(p);
    return m;
}

IsometryMap slice_map(const std::vector<bool>& mask, const std::vector<double>& constants) {
    if (mask.empty() || mask.size() != constants.size()) {
        throw std::invalid_argument("slice_map: mask/constants size mismatch");
    }
    IsometryMap m;
    m.kind_ = MapKind::Slice;
    m.mask_ = mask;
    m.target_ = ProductSpace(std::vector<Factor>(mask.size(), disk_factor()), constants);
    double k = 0.0;
    for (size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) k += constants[i];
    }
    m.k_ = k > 0.0 ? k : 1.0;
    return m;
}

IsometryMap from_solved(SolvedIsometry s) {
    IsometryMap m;
    m.kind_ = MapKind::UnitarySolved;
    const int n = s.n();
    m.solved_ = std::make_shared<SolvedIsometry>(std::move(s));
    m.target_ = ProductSpace({disk_factor(), ball_factor(n)}, {1.0, 1.0});
    m.k_ = 1.0;
    return m;
}

IsometryMap sharp_compose(const IsometryMap& f, const IsometryMap& g, int slot) {
    const ProductSpace& tf = f.target();
    if (slot < 1 || slot > static_cast<int>(tf.factors.size())) {
        throw std::invalid_argument("sharp_compose: slot out of range");
    }
    if (tf.factors[static_cast<size_t>(slot - 1)].kind != FactorKind::Disk) {
        throw NumericRejection("sharp_compose", "slot factor is not a disk");
    }
    IsometryMap m;
    m.kind_ = MapKind::Sharp;
    m.a_ = std::make_shared<IsometryMap>(f);
    m.b_ = std::make_shared<IsometryMap>(g);
    m.slot_ = slot;

    const double slot_weight = tf.constants[static_cast<size_t>(slot - 1)];
    std::vector<Factor> factors;
    std::vector<double> constants;
    for (int i = 0; i < static_cast<int>(tf.factors.size()); ++i) {
        if (i == slot - 1) {
            for (size_t j = 0; j < g.target().factors.size(); ++j) {
                factors.push_back(g.target().factors[j]);
                constants.push_back(g.target().constants[j] * slot_weight /
                                    g.source_constant());
            }
        } else {
            factors.push_back(tf.factors[static_cast<size_t>(i)]);
            constants.push_back(tf.constants[static_cast<size_t>(i)]);
        }
    }
    m.target_ = ProductSpace(std::move(factors), std::move(constants));
    m.k_ = f.source_constant();
    return m;
}

IsometryMap direct_sum(const IsometryMap& f, const IsometryMap& g) {
    IsometryMap m;
    m.kind_ = MapKind::DirectSum;
    m.a_ = std::make_shared<IsometryMap>(f);
    m.b_ = std::make_shared<IsometryMap>(g);
    std::vector<Factor> factors = f.target().factors;
    std::vector<double> constants = f.target().constants;
    factors.insert(factors.end(), g.target().factors.begin(), g.target().factors.end());
    constants.insert(constants.end(), g.target().constants.begin(),
                     g.target().constants.end());
    m.target_ = ProductSpace(std::move(factors), std::move(constants));
    m.k_ = f.source_constant() + g.source_constant();
    return m;
}

IsometryMap reparametrize(const IsometryMap& f, const DiskAutomorphism& pre,
                          std::vector<FactorAutomorphism> post) {
    if (post.size() != f.target().factors.size()) {
        throw std::invalid_argument("reparametrize: one automorphism per target factor");
    }
    IsometryMap m;
    m.kind_ = MapKind::Reparam;
    m.a_ = std::make_shared<IsometryMap>(f);
    m.pre_ = pre;
    m.post_ = std::move(post);
    m.target_ = f.target();
    m.k_ = f.source_constant();
    return m;
}

std::vector<std::string> catalog_forms() {
    return {"bidisk-1", "bidisk-2", "bidisk-3", "bidisk-4",
            "pth-root", "diagonal",
            "p3-root", "p3-square-chain", "p3-id-square",
            "p4-root", "p4-square-chain3", "p4-square-then-cube",
            "p4-cube-then-square", "p4-double-square", "p4-two-squares",
            "p4-id-square-chain", "p4-id-cube", "p4-diag2-square"};
}

IsometryMap catalog_construct(const std::string& form, const std::vector<double>& params) {
    auto need = [&](size_t count) {
        if (params.size() != count) {
            throw std::invalid_argument("catalog_construct: form '" + form + "' expects " +
                                        std::to_string(count) + " parameter(s)");
        }
    };
    auto wrap = [&](IsometryMap inner) {
        IsometryMap m;
        m.kind_ = MapKind::Catalog;
        m.a_ = std::make_shared<IsometryMap>(std::move(inner));
        m.form_ = form;
        m.params_ = params;
        m.target_ = m.a_->target();
        m.k_ = m.a_->source_constant();
        return m;
    };

    const IsometryMap square = pth_root_map(2);
    if (form == "bidisk-1") {
        double lam2 = params.empty() ? 1.0 : params[0];
        if (params.size() > 1) need(1);
        return wrap(slice_map({true, false}, {1.0, lam2}));
    }
    if (form == "bidisk-2") {
        double lam1 = params.empty() ? 1.0 : params[0];
        if (params.size() > 1) need(1);
        return wrap(slice_map({false, true}, {lam1, 1.0}));
    }
    if (form == "bidisk-3") {
        need(1);
        if (!(params[0] > 0.0 && params[0] < 1.0)) {
            throw std::invalid_argument("catalog_construct: bidisk-3 needs 0 < lambda1 < 1");
        }
        return wrap(slice_map({true, true}, {params[0], 1.0 - params[0]}));
    }
    if (form == "bidisk-4") {
        need(0);
        return wrap(square);
    }
    if (form == "pth-root") {
        need(1);
        return wrap(pth_root_map(static_cast<int>(params[0])));
    }
    if (form == "diagonal") {
        need(1);
        return wrap(diagonal_map(static_cast<int>(params[0])));
    }
    if (form == "p3-root") {
        need(0);
        return wrap(pth_root_map(3));
    }
    if (form == "p3-square-chain") {
        need(0);
        return wrap(sharp_compose(square, square, 2));
    }
    if (form == "p3-id-square") {
        need(0);
        return wrap(direct_sum(diagonal_map(1), square));
    }
    if (form == "p4-root") {
        need(0);
        return wrap(pth_root_map(4));
    }
    if (form == "p4-square-chain3") {
        need(0);
        return wrap(sharp_compose(sharp_compose(square, square, 2), square, 3));
    }
    if (form == "p4-square-then-cube") {
        need(0);
        return wrap(sharp_compose(square, pth_root_map(3), 2));
    }
    if (form == "p4-cube-then-square") {
        need(0);
        return wrap(sharp_compose(pth_root_map(3), square, 2));
    }
    if (form == "p4-double-square") {
        need(0);
        return wrap(sharp_compose(sharp_compose(square, square, 2), square, 1));
    }
    if (form == "p4-two-squares") {
        need(0);
        return wrap(direct_sum(square, square));
    }
    if (form == "p4-id-square-chain") {
        need(0);
        return wrap(direct_sum(diagonal_map(1), sharp_compose(square, square, 2)));
    }
    if (form == "p4-id-cube") {
        need(0);
        return wrap(direct_sum(diagonal_map(1), pth_root_map(3)));
    }
    if (form == "p4-diag2-square") {
        need(0);
        return wrap(direct_sum(diagonal_map(2), square));
    }
    throw std::invalid_argument("catalog_construct: unknown form '" + form + "'");
}

IsometryMap normalize_map(const IsometryMap& f) {
    std::vector<Series> germ = map_germ(f, cplx{}, 8);
    std::vector<FactorAutomorphism> post;
    const ProductSpace& t = f.target();
    for (size_t i = 0; i < t.factors.size(); ++i) {
        const int off = t.offset(static_cast<int>(i));
        if (t.factors[i].kind == FactorKind::Disk) {
            DiskAutomorphism move{germ[static_cast<size_t>(off)].coeff(0), 0.0};
            Series shifted = mobius_series(move, germ[static_cast<size_t>(off)]);
            for (int k = 1; k <= shifted.order(); ++k) {
                if (std::abs(shifted.coeff(k)) > 1e-12) {
                    move.theta = -std::arg(shifted.coeff(k));
                    break;
                }
            }
            post.emplace_back(move);
        } else {
            BallAutomorphism move = BallAutomorphism::identity(t.factors[i].dim);
            for (int d = 0; d < t.factors[i].dim; ++d) {
                move.base(d) = germ[static_cast<size_t>(off + d)].coeff(0);
            }
            post.emplace_back(move);
        }
    }
    return reparametrize(f, DiskAutomorphism{}, std::move(post));
}

std::vector<Series> map_germ(const IsometryMap& f, cplx center, int order) {
    switch (f.kind()) {
        case MapKind::PthRoot: {
            if (std::abs(center) >= 1.0) {
                throw NumericRejection("map_germ", "germ center must lie inside the disk");
            }
            Series id = Series::identity(order, center);
            Series tau = mobius_of_series(cplx{0.0, 1.0}, cplx{0.0, 1.0}, cplx{-1.0},
                                           cplx{1.0}, id);
            Series root = fractional_power(tau, 1.0 / f.p());
            std::vector<Series> out;
            for (int a = 0; a < f.p(); ++a) {
                Series h = root_of_unity_half(f.p(), a) * root;
                out.push_back(mobius_of_series(cplx{1.0}, cplx{0.0, -1.0}, cplx{1.0},
                                                cplx{0.0, 1.0}, h));
            }
            return out;
        }
        case MapKind::Diagonal:
            return std::vector<Series>(static_cast<size_t>(f.p()),
                                       Series::identity(order, center));
        case MapKind::Slice: {
            std::vector<Series> out;
            for (bool on : f.slice_mask()) {
                out.push_back(on ? Series::identity(order, center)
                                 : Series::constant({}, order, center));
            }
            return out;
        }
        case MapKind::UnitarySolved: {
            const SolvedIsometry& s = f.solved();
            if (center == cplx{}) {
                std::vector<Series> out;
                const int n_ord = std::min(order, s.f1.order());
                out.push_back(truncated(s.f1, n_ord));
                for (const Series& g : s.f2) out.push_back(truncated(g, n_ord));
                return out;
            }
            if (s.f1_zero()) {
                // Degenerate germs are linear, so recentering is exact.
                std::vector<Series> out;
                const int n_ord = std::min(order, s.f1.order());
                out.push_back(recenter(truncated(s.f1, n_ord), center));
                for (const Series& g : s.f2) {
                    out.push_back(recenter(truncated(g, n_ord), center));
                }
                return out;
            }
            return solved_branch_germ(s, center, eval_f1(s, center), order);
        }
        case MapKind::Sharp: {
            std::vector<Series> base = map_germ(f.base(), center, order);
            const int offset = f.base().target().offset(f.slot() - 1);
            std::vector<Series> inner =
                map_germ(f.insert(), base[static_cast<size_t>(offset)].coeff(0), order);
            return sharp_splice_germ(f, base, inner);
        }
        case MapKind::DirectSum: {
            std::vector<Series> out = map_germ(f.base(), center, order);
            std::vector<Series> right = map_germ(f.insert(), center, order);
            out.insert(out.end(), right.begin(), right.end());
            return out;
        }
        case MapKind::Catalog:
            return map_germ(f.wrapped(), center, order);
        case MapKind::Reparam: {
            std::vector<Series> inner =
                map_germ(f.wrapped(), f.pre().apply(center), order);
            return reparam_wrap_germ(f, inner, center, order);
        }
    }
    throw std::invalid_argument("map_germ: unsupported kind");
}

Series mobius_of_series(cplx a, cplx b, cplx c, cplx d, const Series& s) {
    return (a * s + b) * reciprocal(c * s + d);
}

std::vector<Series> sharp_splice_germ(const IsometryMap& sharp_map,
                                      const std::vector<Series>& base_germ,
                                      const std::vector<Series>& insert_germ) {
    const int offset = sharp_map.base().target().offset(sharp_map.slot() - 1);
    const Series& slot_series = base_germ[static_cast<size_t>(offset)];
    std::vector<Series> out(base_germ.begin(), base_germ.begin() + offset);
    for (const Series& comp : insert_germ) out.push_back(compose(comp, slot_series));
    out.insert(out.end(), base_germ.begin() + offset + 1, base_germ.end());
    return out;
}

std::vector<Series> reparam_wrap_germ(const IsometryMap& reparam_map,
                                      const std::vector<Series>& inner_germ, cplx center,
                                      int order) {
    Series id = Series::identity(order, center);
    Series pre_series = mobius_series(reparam_map.pre(), id);
    std::vector<Series> moved;
    for (const Series& comp : inner_germ) moved.push_back(compose(comp, pre_series));
    std::vector<Series> out;
    const ProductSpace& t = reparam_map.target();
    for (size_t i = 0; i < t.factors.size(); ++i) {
        const int off = t.offset(static_cast<int>(i));
        if (std::holds_alternative<DiskAutomorphism>(reparam_map.post()[i])) {
            out.push_back(mobius_series(std::get<DiskAutomorphism>(reparam_map.post()[i]),
                                        moved[static_cast<size_t>(off)]));
        } else {
            std::vector<Series> slice(moved.begin() + off,
                                      moved.begin() + off + t.factors[i].dim);
            for (Series& g :
                 ball_series(std::get<BallAutomorphism>(reparam_map.post()[i]), slice)) {
                out.push_back(std::move(g));
            }
        }
    }
    return out;
}

std::vector<Series> branch_germ(const IsometryMap& f, cplx center,
                                const std::vector<std::optional<cplx>>& values, int order) {
    switch (f.kind()) {
        case MapKind::PthRoot: {
            const int p = f.p();
            int known = -1;
            for (int a = 0; a < p; ++a) {
                if (values[static_cast<size_t>(a)]) {
                    known = a;
                    break;
                }
            }
            if (known < 0) {
                throw NumericRejection("branch_germ", "no component value to pin the branch");
            }
            const cplx tau_c = cayley(CayleyDirection::DiskToHalfplane, center);
            cplx s = cayley(CayleyDirection::DiskToHalfplane,
                            *values[static_cast<size_t>(known)]) /
                     root_of_unity_half(p, known);
            // Polish onto s^p = tau(center); the predicted value only selects
            // the branch.
            s *= std::pow(tau_c / pow_int(s, p), 1.0 / p);
            Series id = Series::identity(order, center);
            Series tau = mobius_of_series(cplx{0.0, 1.0}, cplx{0.0, 1.0}, cplx{-1.0},
                                          cplx{1.0}, id);
            Series root = s * fractional_power((1.0 / tau_c) * tau, 1.0 / p);
            std::vector<Series> out;
            for (int a = 0; a < p; ++a) {
                Series h = root_of_unity_half(p, a) * root;
                out.push_back(mobius_of_series(cplx{1.0}, cplx{0.0, -1.0}, cplx{1.0},
                                               cplx{0.0, 1.0}, h));
            }
            return out;
        }
        case MapKind::Diagonal:
        case MapKind::Slice:
            return map_germ(f, center, order);
        case MapKind::UnitarySolved: {
            const SolvedIsometry& s = f.solved();
            if (s.f1_zero()) return map_germ(f, center, order);
            if (!values[0]) {
                throw NumericRejection("branch_germ",
                                       "need the disk-component value to pin the branch");
            }
            return solved_branch_germ(s, center, *values[0], order);
        }
        case MapKind::Sharp: {
            const int offset = f.base().target().offset(f.slot() - 1);
            const int q = f.insert().target().total_dim();
            const int base_dim = f.base().target().total_dim();
            std::vector<std::optional<cplx>> base_vals(static_cast<size_t>(base_dim));
            for (int i = 0; i < offset; ++i) base_vals[static_cast<size_t>(i)] = values[static_cast<size_t>(i)];
            for (int i = offset + 1; i < base_dim; ++i) {
                base_vals[static_cast<size_t>(i)] = values[static_cast<size_t>(i + q - 1)];
            }
            std::vector<Series> base = branch_germ(f.base(), center, base_vals, order);
            const cplx z0 = base[static_cast<size_t>(offset)].coeff(0);
            std::vector<std::optional<cplx>> insert_vals(values.begin() + offset,
                                                         values.begin() + offset + q);
            std::vector<Series> inner = branch_germ(f.insert(), z0, insert_vals, order);
            return sharp_splice_germ(f, base, inner);
        }
        case MapKind::DirectSum: {
            const int left = f.base().target().total_dim();
            std::vector<std::optional<cplx>> lv(values.begin(), values.begin() + left);
            std::vector<std::optional<cplx>> rv(values.begin() + left, values.end());
            std::vector<Series> out = branch_germ(f.base(), center, lv, order);
            std::vector<Series> right = branch_germ(f.insert(), center, rv, order);
            out.insert(out.end(), right.begin(), right.end());
            return out;
        }
        case MapKind::Catalog:
            return branch_germ(f.wrapped(), center, values, order);
        case MapKind::Reparam: {
            const ProductSpace& t = f.target();
            std::vector<std::optional<cplx>> inner_vals(values.size());
            for (size_t i = 0; i < t.factors.size(); ++i) {
                const int off = t.offset(static_cast<int>(i));
                if (std::holds_alternative<DiskAutomorphism>(f.post()[i])) {
                    if (values[static_cast<size_t>(off)]) {
                        inner_vals[static_cast<size_t>(off)] =
                            std::get<DiskAutomorphism>(f.post()[i])
                                .inverse()
                                .apply(*values[static_cast<size_t>(off)]);
                    }
                } else {
                    std::vector<cplx> slice;
                    bool complete = true;
                    for (int d = 0; d < t.factors[i].dim; ++d) {
                        if (!values[static_cast<size_t>(off + d)]) {
                            complete = false;
                            break;
                        }
                        slice.push_back(*values[static_cast<size_t>(off + d)]);
                    }
                    if (complete) {
                        std::vector<cplx> undone =
                            std::get<BallAutomorphism>(f.post()[i]).inverse().apply(slice);
                        for (int d = 0; d < t.factors[i].dim; ++d) {
                            inner_vals[static_cast<size_t>(off + d)] = undone[static_cast<size_t>(d)];
                        }
                    }
                }
            }
            std::vector<Series> inner =
                branch_germ(f.wrapped(), f.pre().apply(center), inner_vals, order);
            return reparam_wrap_germ(f, inner, center, order);
        }
    }
    throw std::invalid_argument("branch_germ: unsupported kind");
}

std::vector<cplx> component_preimages(const IsometryMap& f, int component, cplx b) {
    switch (f.kind()) {
        case MapKind::PthRoot: {
            if (std::abs(b - cplx{1.0}) < 1e-12) return {cplx{1.0}};
            cplx tau_b = cayley(CayleyDirection::DiskToHalfplane, b);
            cplx tau = pow_int(tau_b / root_of_unity_half(f.p(), component), f.p());
            if (std::abs(tau + cplx{0.0, 1.0}) < 1e-12) return {};
            return {cayley(CayleyDirection::HalfplaneToDisk, tau)};
        }
        case MapKind::Diagonal:
            return {b};
        case MapKind::Slice:
            return f.slice_mask()[static_cast<size_t>(component)] ? std::vector<cplx>{b}
                                                                  : std::vector<cplx>{};
        case MapKind::UnitarySolved: {
            const SolvedIsometry& s = f.solved();
            if (!s.rational) {
                throw NumericRejection("component_preimages",
                                       "degenerate map has no rational data");
            }
            const RationalMap& r = s.rational->r;
            if (component == 0) {
                if (std::abs(r.den().eval(b)) < 1e-12) return {};
                return {r.eval(b)};
            }
            const RationalMap& comp = s.rational->components[static_cast<size_t>(component - 1)];
            std::vector<cplx> out;
            for (cplx z : (comp.num() - b * comp.den()).roots()) {
                if (std::abs(r.den().eval(z)) < 1e-12) continue;
                out.push_back(r.eval(z));
            }
            return dedup_sorted(out);
        }
        case MapKind::Sharp: {
            const int offset = f.base().target().offset(f.slot() - 1);
            const int q = f.insert().target().total_dim();
            if (component < offset) return component_preimages(f.base(), component, b);
            if (component < offset + q) {
                std::vector<cplx> out;
                for (cplx z : component_preimages(f.insert(), component - offset, b)) {
                    for (cplx w : component_preimages(f.base(), offset, z)) out.push_back(w);
                }
                return dedup_sorted(out);
            }
            return component_preimages(f.base(), component - q + 1, b);
        }
        case MapKind::DirectSum: {
            const int left = f.base().target().total_dim();
            if (component < left) return component_preimages(f.base(), component, b);
            return component_preimages(f.insert(), component - left, b);
        }
        case MapKind::Catalog:
            return component_preimages(f.wrapped(), component, b);
        case MapKind::Reparam: {
            int factor = 0;
            const ProductSpace& t = f.target();
            while (t.offset(factor) + t.factors[static_cast<size_t>(factor)].dim <= component) {
                ++factor;
            }
            if (!std::holds_alternative<DiskAutomorphism>(f.post()[static_cast<size_t>(factor)])) {
                throw NumericRejection("component_preimages",
                                       "ball-factor reparametrization mixes components");
            }
            cplx unwrapped =
                std::get<DiskAutomorphism>(f.post()[static_cast<size_t>(factor)]).inverse().apply(b);
            DiskAutomorphism undo = f.pre().inverse();
            std::vector<cplx> out;
            for (cplx w : component_preimages(f.wrapped(), component, unwrapped)) {
                if (std::abs(1.0 - std::conj(undo.a) * w) < 1e-12) continue;
                out.push_back(undo.apply(w));
            }
            return dedup_sorted(out);
        }
    }
    throw std::invalid_argument("component_preimages: unsupported kind");
}

std::vector<cplx> branch_points(const IsometryMap& f) {
    switch (f.kind()) {
        case MapKind::PthRoot:
            return {cplx{-1.0}, cplx{1.0}};
        case MapKind::Diagonal:
        case MapKind::Slice:
            return {};
        case MapKind::UnitarySolved: {
            const SolvedIsometry& s = f.solved();
            if (!s.rational) return {};
            return s.rational->r.critical_values();
        }
        case MapKind::Sharp: {
            std::vector<cplx> pts = branch_points(f.base());
            const int offset = f.base().target().offset(f.slot() - 1);
            for (cplx b : branch_points(f.insert())) {
                for (cplx w : component_preimages(f.base(), offset, b)) pts.push_back(w);
            }
            return dedup_sorted(pts);
        }
        case MapKind::DirectSum: {
            std::vector<cplx> pts = branch_points(f.base());
            for (cplx b : branch_points(f.insert())) pts.push_back(b);
            return dedup_sorted(pts);
        }
        case MapKind::Catalog:
            return branch_points(f.wrapped());
        case MapKind::Reparam: {
            DiskAutomorphism undo = f.pre().inverse();
            std::vector<cplx> pts;
            for (cplx b : branch_points(f.wrapped())) {
                if (std::abs(1.0 - std::conj(undo.a) * b) < 1e-12) continue;
                pts.push_back(undo.apply(b));
            }
            return dedup_sorted(pts);
        }
    }
    throw std::invalid_argument("branch_points: unsupported kind");
}

std::vector<cplx> pole_points(const IsometryMap& f) {
    switch (f.kind()) {
        case MapKind::PthRoot:
            // gamma^a tau^{1/p} = -i forces tau = (-i gamma^{-a})^p, which
            // lands over 0 for odd p and over +-i for even p.
            return f.p() % 2 == 1 ? std::vector<cplx>{cplx{}}
                                  : std::vector<cplx>{cplx{0.0, -1.0}, cplx{0.0, 1.0}};
        case MapKind::Diagonal:
        case MapKind::Slice:
        case MapKind::UnitarySolved:
            // Solved maps have deg(num) > deg(den), so no sheet reaches
            // infinity over a finite point.
            return {};
        case MapKind::Sharp: {
            std::vector<cplx> pts = pole_points(f.base());
            const int offset = f.base().target().offset(f.slot() - 1);
            for (cplx q : pole_points(f.insert())) {
                for (cplx w : component_preimages(f.base(), offset, q)) pts.push_back(w);
            }
            return dedup_sorted(pts);
        }
        case MapKind::DirectSum: {
            std::vector<cplx> pts = pole_points(f.base());
            for (cplx q : pole_points(f.insert())) pts.push_back(q);
            return dedup_sorted(pts);
        }
        case MapKind::Catalog:
            return pole_points(f.wrapped());
        case MapKind::Reparam: {
            DiskAutomorphism undo = f.pre().inverse();
            std::vector<cplx> inner = pole_points(f.wrapped());
            const ProductSpace& t = f.target();
            for (size_t i = 0; i < t.factors.size(); ++i) {
                if (!std::holds_alternative<DiskAutomorphism>(f.post()[i])) continue;
                const DiskAutomorphism& psi = std::get<DiskAutomorphism>(f.post()[i]);
                if (std::abs(psi.a) < 1e-14) continue;
                const cplx psi_pole = 1.0 / std::conj(psi.a);
                for (cplx w :
                     component_preimages(f.wrapped(), t.offset(static_cast<int>(i)), psi_pole)) {
                    inner.push_back(w);
                }
            }
            std::vector<cplx> pts;
            for (cplx q : inner) {
                if (std::abs(1.0 - std::conj(undo.a) * q) < 1e-12) continue;
                pts.push_back(undo.apply(q));
            }
            return dedup_sorted(pts);
        }
    }
    throw std::invalid_argument("pole_points: unsupported kind");
}

}  // namespace isoball
