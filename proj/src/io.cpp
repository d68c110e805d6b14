#include "isoball/io.hpp"

namespace isoball {

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const json& j) {
    if (j.is_number()) return cplx{j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) {
        throw std::invalid_argument("expected [re, im] for a complex number");
    }
    return cplx{j[0].get<double>(), j[1].get<double>()};
}

json to_json(const Series& s) {
    json coeffs = json::array();
    for (cplx c : s.coeffs()) coeffs.push_back(to_json(c));
    return json{{"center", to_json(s.center())}, {"coeffs", coeffs}};
}

Series series_from_json(const json& j) {
    std::vector<cplx> coeffs;
    for (const json& c : j.at("coeffs")) coeffs.push_back(cplx_from_json(c));
    return Series(cplx_from_json(j.at("center")), std::move(coeffs));
}

json to_json(const ProductSpace& space) {
    json factors = json::array();
    for (const Factor& f : space.factors) {
        if (f.kind == FactorKind::Disk) {
            factors.push_back(json{{"disk", 1}});
        } else {
            factors.push_back(json{{"ball", f.dim}});
        }
    }
    return json{{"factors", factors}, {"constants", space.constants}};
}

ProductSpace product_space_from_json(const json& j) {
    std::vector<Factor> factors;
    for (const json& f : j.at("factors")) {
        if (f.contains("disk")) {
            factors.push_back(disk_factor());
        } else if (f.contains("ball")) {
            factors.push_back(ball_factor(f.at("ball").get<int>()));
        } else {
            throw std::invalid_argument("factor must be {\"disk\":1} or {\"ball\":n}");
        }
    }
    return ProductSpace(std::move(factors), j.at("constants").get<std::vector<double>>());
}

json to_json(const KernelSpec& spec) {
    const char* kind = nullptr;
    switch (spec.kind) {
        case DomainKind::Ball: kind = "ball"; break;
        case DomainKind::Polydisk: kind = "polydisk"; break;
        case DomainKind::TypeI: kind = "type1"; break;
        case DomainKind::TypeIV: kind = "type4"; break;
    }
    return json{{"kind", kind}, {"n", spec.n}, {"q", spec.q},
                {"c_d", spec.c_d}, {"exponent", spec.exponent}};
}

KernelSpec kernel_spec_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "ball") return KernelSpec::ball(j.at("n").get<int>());
    if (kind == "polydisk") return KernelSpec::polydisk(j.at("n").get<int>());
    if (kind == "type1") return KernelSpec::type_i(j.at("n").get<int>(), j.at("q").get<int>());
    if (kind == "type4") return KernelSpec::type_iv(j.at("n").get<int>());
    throw std::invalid_argument("unknown kernel kind '" + kind + "'");
}

json to_json(const UnitaryMatrix& u) {
    json rows = json::array();
    const int dim = u.n() + 1;
    for (int i = 0; i < dim; ++i) {
        json row = json::array();
        for (int j2 = 0; j2 < dim; ++j2) row.push_back(to_json(u.entry(i, j2)));
        rows.push_back(row);
    }
    return rows;
}

UnitaryMatrix unitary_from_json(const json& j) {
    if (!j.is_array() || j.empty()) {
        throw std::invalid_argument("unitary must be a row-major array of rows");
    }
    const int dim = static_cast<int>(j.size());
    Eigen::MatrixXcd m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        if (static_cast<int>(j[static_cast<size_t>(i)].size()) != dim) {
            throw std::invalid_argument("unitary rows must all have the same length");
        }
        for (int k = 0; k < dim; ++k) {
            m(i, k) = cplx_from_json(j[static_cast<size_t>(i)][static_cast<size_t>(k)]);
        }
    }
    return UnitaryMatrix(m);
}

IsometryMap map_from_json(const json& j, int order) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "pth_root") return pth_root_map(j.at("p").get<int>());
    if (kind == "diagonal") return diagonal_map(j.at("p").get<int>());
    if (kind == "sharp") {
        return sharp_compose(map_from_json(j.at("outer"), order),
                             map_from_json(j.at("inner"), order), j.at("slot").get<int>());
    }
    if (kind == "direct_sum") {
        return direct_sum(map_from_json(j.at("left"), order),
                          map_from_json(j.at("right"), order));
    }
    if (kind == "catalog") {
        std::vector<double> params;
        if (j.contains("params")) params = j.at("params").get<std::vector<double>>();
        return catalog_construct(j.at("form").get<std::string>(), params);
    }
    if (kind == "solved") {
        if (j.contains("zeta")) {
            return from_solved(solve_isometry(u_zeta(cplx_from_json(j.at("zeta"))), order));
        }
        return from_solved(solve_isometry(unitary_from_json(j.at("unitary")), order));
    }
    throw std::invalid_argument("unknown map kind '" + kind + "'");
}

json to_json(const SolvedIsometry& s) {
    json f2 = json::array();
    for (const Series& g : s.f2) f2.push_back(to_json(g));
    json out{{"unitary", to_json(s.u)},
             {"f1", to_json(s.f1)},
             {"f2", f2},
             {"intertwine_residual", s.intertwine_residual},
             {"polarized_residual", s.polarized_residual},
             {"f1_zero", s.f1_zero()}};
    if (s.rational) {
        auto poly = [](const Polynomial& p) {
            json c = json::array();
            for (cplx v : p.coeffs()) c.push_back(to_json(v));
            return c;
        };
        json comps = json::array();
        for (const RationalMap& rj : s.rational->components) {
            comps.push_back(json{{"num", poly(rj.num())}, {"den", poly(rj.den())}});
        }
        out["r"] = json{{"num", poly(s.rational->r.num())},
                        {"den", poly(s.rational->r.den())},
                        {"degree", s.rational->r.degree()}};
        out["r_components"] = comps;
    }
    return out;
}

json to_json(const ResidualReport& r) {
    return json{{"check", r.check},
                {"tolerance", r.tolerance},
                {"max_residual", r.max_residual},
                {"mean_residual", r.mean_residual},
                {"sample_count", r.sample_count},
                {"rejected_samples", r.rejected_samples},
                {"worst_point", to_json(r.worst_point)},
                {"pass", r.pass}};
}

json to_json(const PropernessReport& r) {
    return json{{"check", "properness"},
                {"radii", r.radii},
                {"minima", r.minima},
                {"skipped_radii", r.skipped_radii},
                {"strictly_increasing", r.strictly_increasing},
                {"final_gap", r.final_gap},
                {"proper", r.proper}};
}

json to_json(const CongruenceVerdict& v) {
    const char* verdict = v.verdict == Verdict::Congruent
                              ? "congruent"
                              : (v.verdict == Verdict::Incongruent ? "incongruent"
                                                                   : "inconclusive");
    json out{{"check", "congruence"},
             {"verdict", verdict},
             {"invariants_left", v.invariants_left},
             {"invariants_right", v.invariants_right}};
    if (v.has_witness) {
        out["witness"] = json{{"source_a", to_json(v.witness_source.a)},
                              {"source_theta", v.witness_source.theta},
                              {"residual", v.witness_residual}};
    } else {
        out["witness_residual"] = v.witness_residual;
    }
    return out;
}

json to_json(const RigidityReport& r) {
    return json{{"check", "rational_rigidity"},
                {"component_z_degree", r.component_z_degree},
                {"component_constant", r.component_constant},
                {"all_rational", r.all_rational},
                {"hypotheses_met", r.hypotheses_met},
                {"constants_sum_to_one", r.constants_sum_to_one},
                {"factors_totally_geodesic", r.factors_totally_geodesic},
                {"counterexample", r.counterexample},
                {"verdict_available", r.verdict_available}};
}

json to_json(const SheetingReport& r) {
    return json{{"p", r.p},
                {"k", r.k},
                {"n", r.n},
                {"s", r.s},
                {"identities",
                 json{{"sum_reciprocal", r.sum_reciprocal},
                      {"divisibility", r.divisibility},
                      {"range", r.range}}},
                {"orbit_overflow", r.orbit_overflow},
                {"assumes_irreducible_extension_curve", r.assumes_irreducible}};
}

}  // namespace isoball
