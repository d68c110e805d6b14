#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "isoball/cli.hpp"

namespace {

using isoball::json;

// Reads --input (file or '-' for stdin) into the payload, then lets explicit
// flags override.
json load_input(const std::string& path) {
    if (path.empty()) return json::object();
    if (path == "-") return json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file '" + path + "'");
    return json::parse(in);
}

struct CommonFlags {
    std::string input_path;
    std::string output_path;
    int order = 0;
    double tol = 0.0;
    int samples = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--input", input_path, "JSON input file ('-' for stdin)");
        cmd->add_option("--output", output_path, "also write the report to this file");
        cmd->add_option("--order", order, "series truncation order");
        cmd->add_option("--tol", tol, "tolerance override");
        cmd->add_option("--samples", samples, "sample count");
    }

    void fold(json& input) const {
        if (order > 0) input["order"] = order;
        if (tol > 0.0) input["tol"] = tol;
        if (samples > 0) input["samples"] = samples;
    }
};

int emit(const isoball::CommandResult& result, const std::string& output_path) {
    const std::string text = result.report.dump(2);
    std::cout << text << "\n";
    if (!output_path.empty()) {
        std::ofstream out(output_path);
        out << text << "\n";
    }
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"isoball: construct, solve, and certify holomorphic disk isometries"};
    app.require_subcommand(1);

    struct Sub {
        CLI::App* cmd;
        CommonFlags common;
        std::string map_json;
        std::string constants_json;
        std::string zeta;
        std::string zeta2;
        std::string form;
        double k = -1.0;
        std::string emit_samples;
        std::string radii_json;
        std::string at;
    };

    std::map<std::string, Sub> subs;
    auto add = [&](const std::string& name, const std::string& desc) -> Sub& {
        Sub& s = subs[name];
        s.cmd = app.add_subcommand(name, desc);
        s.common.attach(s.cmd);
        return s;
    };

    {
        Sub& s = add("construct", "build a map from a descriptor and evaluate it");
        s.cmd->add_option("--map", s.map_json, "map descriptor JSON");
        s.cmd->add_option("--at", s.at, "evaluation point re,im");
    }
    {
        Sub& s = add("solve", "solve the unitary functional equation");
        s.cmd->add_option("--zeta", s.zeta, "parameter of the built-in U(3) family (re[,im])");
    }
    {
        Sub& s = add("verify", "functional-equation residual check");
        s.cmd->add_option("--map", s.map_json, "map descriptor JSON");
        s.cmd->add_option("--constants", s.constants_json, "target constants JSON array");
        s.cmd->add_option("--k", s.k, "expected source constant");
        s.cmd->add_option("--emit-samples", s.emit_samples, "write (w, residual) CSV here");
    }
    {
        Sub& s = add("polarize", "polarized functional-equation check");
        s.cmd->add_option("--map", s.map_json, "map descriptor JSON");
        s.cmd->add_option("--pairs", s.common.samples, "number of (Z, W) pairs");
    }
    {
        Sub& s = add("metric", "finite-difference metric pullback check");
        s.cmd->add_option("--map", s.map_json, "map descriptor JSON");
        s.cmd->add_option("--points", s.common.samples, "number of points");
    }
    {
        Sub& s = add("proper", "boundary-minimum properness certificate");
        s.cmd->add_option("--zeta", s.zeta, "parameter of the built-in U(3) family");
        s.cmd->add_option("--radii", s.radii_json, "JSON array of radii");
    }
    {
        Sub& s = add("sheeting", "monodromy orbit and sheeting numbers");
        s.cmd->add_option("--map", s.map_json, "map descriptor JSON");
        s.cmd->add_option("--k", s.k, "normalizing constant");
    }
    {
        Sub& s = add("congruence", "congruence test for two solved maps");
        s.cmd->add_option("--zeta1", s.zeta, "left family parameter");
        s.cmd->add_option("--zeta2", s.zeta2, "right family parameter");
    }
    {
        Sub& s = add("kernel-check", "determinant minor-expansion identity sweep");
        s.cmd->add_option("--count", s.common.samples, "number of random matrices");
    }
    {
        Sub& s = add("rigidity", "rational-rigidity classification");
        s.cmd->add_option("--map", s.map_json, "map descriptor JSON");
        s.cmd->add_option("--constants", s.constants_json, "target constants JSON array");
    }

    CLI11_PARSE(app, argc, argv);

    auto parse_cplx_flag = [](const std::string& text) {
        json arr = json::array();
        const size_t comma = text.find(',');
        if (comma == std::string::npos) {
            arr.push_back(std::stod(text));
            arr.push_back(0.0);
        } else {
            arr.push_back(std::stod(text.substr(0, comma)));
            arr.push_back(std::stod(text.substr(comma + 1)));
        }
        return arr;
    };

    for (auto& [name, s] : subs) {
        if (!s.cmd->parsed()) continue;
        isoball::CommandRequest req;
        req.command = name;
        try {
            req.input = load_input(s.common.input_path);
            s.common.fold(req.input);
            if (!s.map_json.empty()) req.input["map"] = json::parse(s.map_json);
            if (!s.constants_json.empty()) {
                req.input["constants"] = json::parse(s.constants_json);
            }
            if (!s.radii_json.empty()) req.input["radii"] = json::parse(s.radii_json);
            if (s.k >= 0.0) req.input["k"] = s.k;
            if (!s.emit_samples.empty()) req.input["emit_samples"] = s.emit_samples;
            if (!s.at.empty()) req.input["at"] = parse_cplx_flag(s.at);
            if (!s.zeta.empty()) {
                if (name == "congruence") {
                    req.input["left"] = json{{"zeta", parse_cplx_flag(s.zeta)}};
                } else {
                    req.input["zeta"] = parse_cplx_flag(s.zeta);
                }
            }
            if (!s.zeta2.empty()) req.input["right"] = json{{"zeta", parse_cplx_flag(s.zeta2)}};
            if (name == "polarize" && s.common.samples > 0) {
                req.input["pairs"] = s.common.samples;
            }
            if (name == "metric" && s.common.samples > 0) {
                req.input["points"] = s.common.samples;
            }
            if (name == "kernel-check" && s.common.samples > 0) {
                req.input["count"] = s.common.samples;
            }
        } catch (const std::exception& e) {
            json err{{"schema", isoball::kSchemaTag},
                     {"command", name},
                     {"error", json{{"code", 2}, {"message", e.what()}}}};
            std::cout << err.dump(2) << "\n";
            return 2;
        }
        return emit(isoball::run_request(req), s.common.output_path);
    }
    return 2;
}
