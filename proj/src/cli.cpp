#include "isoball/cli.hpp"

#include <cmath>
#include <fstream>

namespace isoball {

namespace {

// Deterministic generator independent of the standard library's
// distributions, so reports are identical across runs.
struct SplitMix {
    uint64_t state;
    explicit SplitMix(uint64_t seed) : state(seed) {}
    double uniform() {  // in [0, 1)
        state += 0x9e3779b97f4a7c15ull;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z = z ^ (z >> 31);
        return static_cast<double>(z >> 11) / 9007199254740992.0;
    }
    cplx disk_point(double rmax) {
        const double r = rmax * std::sqrt(uniform());
        const double a = 2.0 * kPi * uniform();
        return r * std::exp(cplx{0.0, a});
    }
};

double opt_num(const json& j, const char* key, double fallback) {
    return j.contains(key) ? j.at(key).get<double>() : fallback;
}

int opt_int(const json& j, const char* key, int fallback) {
    return j.contains(key) ? j.at(key).get<int>() : fallback;
}

ProductSpace space_for(const IsometryMap& map, const json& input) {
    ProductSpace space = map.target();
    if (input.contains("constants")) {
        std::vector<double> constants = input.at("constants").get<std::vector<double>>();
        space = ProductSpace(space.factors, constants);
    }
    return space;
}

void check_k_override(const IsometryMap& map, const json& input) {
    if (!input.contains("k")) return;
    const double k = input.at("k").get<double>();
    if (std::abs(k - map.source_constant()) > 1e-12) {
        throw std::invalid_argument("requested k=" + std::to_string(k) +
                                    " does not match the map's source constant " +
                                    std::to_string(map.source_constant()));
    }
}

json run_construct(const json& input, json& config) {
    const int order = opt_int(input, "order", kDefaultOrder);
    config["order"] = order;
    IsometryMap map = map_from_json(input.at("map"), order);
    const cplx at = input.contains("at") ? cplx_from_json(input.at("at")) : cplx{};
    json value = json::array();
    for (cplx v : map.eval(at)) value.push_back(to_json(v));
    return json{{"map", input.at("map")},
                {"target", to_json(map.target())},
                {"source_constant", map.source_constant()},
                {"at", to_json(at)},
                {"value", value},
                {"pass", true}};
}

json run_solve(const json& input, json& config) {
    const int order = opt_int(input, "order", kDefaultOrder);
    config["order"] = order;
    UnitaryMatrix u = input.contains("zeta") ? u_zeta(cplx_from_json(input.at("zeta")))
                                             : unitary_from_json(input.at("unitary"));
    SolvedIsometry s = solve_isometry(u, order);
    json out = to_json(s);
    if (s.rational) {
        out["min_target_ball_dim"] = std::max(0, s.rational->r.degree() - 1);
    }
    out["pass"] = true;
    return out;
}

json run_verify(const json& input, json& config) {
    const int order = opt_int(input, "order", kDefaultOrder);
    const int samples = opt_int(input, "samples", 500);
    const double tol = opt_num(input, "tol", 1e-10);
    const double rmax = opt_num(input, "rmax", 0.9);
    config["order"] = order;
    config["samples"] = samples;
    config["tol"] = tol;
    config["rmax"] = rmax;

    IsometryMap map = map_from_json(input.at("map"), order);
    check_k_override(map, input);
    ProductSpace space = space_for(map, input);

    std::vector<std::pair<cplx, double>> trace;
    std::vector<std::pair<cplx, double>>* trace_ptr =
        input.contains("emit_samples") ? &trace : nullptr;
    ResidualReport rep = check_functional_equation(map, space, samples, tol, rmax, trace_ptr);
    if (trace_ptr) {
        std::ofstream csv(input.at("emit_samples").get<std::string>());
        csv << "w_re,w_im,residual\n";
        for (const auto& [w, resid] : trace) {
            csv << w.real() << "," << w.imag() << "," << resid << "\n";
        }
        config["emit_samples"] = input.at("emit_samples");
    }
    json out = to_json(rep);
    out["space"] = to_json(space);
    out["k"] = map.source_constant();
    return out;
}

json run_polarize(const json& input, json& config) {
    const int order = opt_int(input, "order", kDefaultOrder);
    const int pair_count = opt_int(input, "pairs", 50);
    const double tol = opt_num(input, "tol", 1e-10);
    config["order"] = order;
    config["pairs"] = pair_count;
    config["tol"] = tol;

    IsometryMap map = map_from_json(input.at("map"), order);
    ProductSpace space = space_for(map, input);
    ResidualReport rep = check_polarized(map, space, polarized_pairs(pair_count), tol);
    return to_json(rep);
}

json run_metric(const json& input, json& config) {
    const int order = opt_int(input, "order", kDefaultOrder);
    const int points = opt_int(input, "points", 50);
    const double tol = opt_num(input, "tol", 1e-5);
    const double rmax = opt_num(input, "rmax", 0.8);
    const double h = opt_num(input, "h", 1e-4);
    config["order"] = order;
    config["points"] = points;
    config["tol"] = tol;
    config["rmax"] = rmax;
    config["h"] = h;
    config["richardson"] = true;

    IsometryMap map = map_from_json(input.at("map"), order);
    ProductSpace space = space_for(map, input);
    ResidualReport rep = check_metric_pullback(map, space, disk_samples(points, rmax), tol, h);
    return to_json(rep);
}

json run_proper(const json& input, json& config) {
    const int order = opt_int(input, "order", kDefaultOrder);
    const int angles = opt_int(input, "angles", 512);
    const double max_gap = opt_num(input, "max_gap", 0.01);
    std::vector<double> radii{0.9, 0.99, 0.999};
    if (input.contains("radii")) radii = input.at("radii").get<std::vector<double>>();
    config["order"] = order;
    config["angles"] = angles;
    config["max_gap"] = max_gap;
    config["radii"] = radii;

    UnitaryMatrix u = input.contains("zeta") ? u_zeta(cplx_from_json(input.at("zeta")))
                                             : unitary_from_json(input.at("unitary"));
    SolvedIsometry s = solve_isometry(u, order);
    PropernessReport rep = check_properness(s, radii, angles);
    json out = to_json(rep);
    out["pass"] = rep.proper && rep.final_gap <= max_gap;
    return out;
}

json run_sheeting(const json& input, json& config) {
    const int order = opt_int(input, "order", kDefaultOrder);
    const int max_bidegree = opt_int(input, "max_bidegree", 6);
    config["order"] = order;
    config["max_bidegree"] = max_bidegree;

    IsometryMap map = map_from_json(input.at("map"), order);
    const double k = opt_num(input, "k", map.source_constant());
    config["k"] = k;
    SheetingReport rep = sheeting_report(map, k, max_bidegree, order);
    json out = to_json(rep);
    out["pass"] = rep.identities_pass();
    return out;
}

json run_congruence(const json& input, json& config) {
    const int order = opt_int(input, "order", kDefaultOrder);
    config["order"] = order;
    auto solve_side = [&](const json& side) {
        UnitaryMatrix u = side.contains("zeta") ? u_zeta(cplx_from_json(side.at("zeta")))
                                                : unitary_from_json(side.at("unitary"));
        return solve_isometry(u, order);
    };
    SolvedIsometry left = solve_side(input.at("left"));
    SolvedIsometry right = solve_side(input.at("right"));
    CongruenceVerdict v = congruence_test(left, right);
    json out = to_json(v);
    out["pass"] = v.verdict != Verdict::Inconclusive;
    return out;
}

json run_kernel_check(const json& input, json& config) {
    const int count = opt_int(input, "count", 200);
    const int max_p = opt_int(input, "max_p", 4);
    const int max_q = opt_int(input, "max_q", 4);
    const double tol = opt_num(input, "tol", 1e-12);
    const uint64_t seed = static_cast<uint64_t>(opt_num(input, "seed", 20240901.0));
    config["count"] = count;
    config["max_p"] = max_p;
    config["max_q"] = max_q;
    config["tol"] = tol;
    config["seed"] = seed;

    SplitMix rng(seed);
    double worst = 0.0;
    for (int t = 0; t < count; ++t) {
        const int p = 1 + static_cast<int>(rng.uniform() * max_p);
        const int q = p + static_cast<int>(rng.uniform() * (max_q - p + 1));
        Eigen::MatrixXcd z(p, q);
        for (int i = 0; i < p; ++i) {
            for (int j = 0; j < q; ++j) z(i, j) = rng.disk_point(1.0);
        }
        z *= 0.9 / std::max(1.0, z.norm());  // keep ||Z|| < 1
        auto [lhs, rhs] = det_minor_expansion(z);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return json{{"check", "kernel_minor_expansion"},
                {"max_deviation", worst},
                {"tolerance", tol},
                {"pass", worst <= tol}};
}

json run_rigidity(const json& input, json& config) {
    const int order = opt_int(input, "order", kDefaultOrder);
    const int max_bidegree = opt_int(input, "max_bidegree", 6);
    config["order"] = order;
    config["max_bidegree"] = max_bidegree;

    IsometryMap map = map_from_json(input.at("map"), order);
    ProductSpace space = space_for(map, input);
    RigidityReport rep = rational_rigidity_check(map, space, max_bidegree);
    json out = to_json(rep);
    out["pass"] = !rep.counterexample;
    return out;
}

}  // namespace

CommandResult run_request(const CommandRequest& req) {
    json envelope{{"schema", kSchemaTag}, {"command", req.command}};
    json config = json::object();
    try {
        json result;
        if (req.command == "construct") {
            result = run_construct(req.input, config);
        } else if (req.command == "solve") {
            result = run_solve(req.input, config);
        } else if (req.command == "verify") {
            result = run_verify(req.input, config);
        } else if (req.command == "polarize") {
            result = run_polarize(req.input, config);
        } else if (req.command == "metric") {
            result = run_metric(req.input, config);
        } else if (req.command == "proper") {
            result = run_proper(req.input, config);
        } else if (req.command == "sheeting") {
            result = run_sheeting(req.input, config);
        } else if (req.command == "congruence") {
            result = run_congruence(req.input, config);
        } else if (req.command == "kernel-check") {
            result = run_kernel_check(req.input, config);
        } else if (req.command == "rigidity") {
            result = run_rigidity(req.input, config);
        } else {
            envelope["error"] = json{{"code", 2},
                                     {"message", "unknown command '" + req.command + "'"}};
            return {2, envelope};
        }
        envelope["config"] = config;
        envelope["result"] = result;
        const bool pass = !result.contains("pass") || result.at("pass").get<bool>();
        envelope["pass"] = pass;
        return {pass ? 0 : 1, envelope};
    } catch (const NumericRejection& e) {
        envelope["error"] = json{{"code", 3}, {"message", e.what()}, {"op", e.op()}};
        return {3, envelope};
    } catch (const json::exception& e) {
        envelope["error"] = json{{"code", 2}, {"message", e.what()}};
        return {2, envelope};
    } catch (const std::invalid_argument& e) {
        envelope["error"] = json{{"code", 2}, {"message", e.what()}};
        return {2, envelope};
    } catch (const std::exception& e) {
        envelope["error"] = json{{"code", 3}, {"message", e.what()}};
        return {3, envelope};
    }
}

}  // namespace isoball
