#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "isoball/cli.hpp"

using namespace isoball;

TEST_CASE("solve request produces the full bundle") {
    CommandRequest req{"solve", json{{"zeta", json::array({0.2, 0.0})}, {"order", 32}}};
    CommandResult r = run_request(req);
    CHECK(r.exit_code == 0);
    CHECK(r.report.at("schema") == "isoball/1");
    CHECK(r.report.at("config").at("order") == 32);
    const json& res = r.report.at("result");
    CHECK(res.at("r").at("degree") == 3);
    CHECK(res.at("f1").at("coeffs").size() == 33);
    CHECK(res.at("intertwine_residual").get<double>() <= 1e-10);
    CHECK(res.contains("r_components"));
}

TEST_CASE("verify command passes for the diagonal and embeds the config") {
    CommandRequest req{"verify",
                       json{{"map", json{{"kind", "diagonal"}, {"p", 2}}}, {"k", 2.0}}};
    CommandResult r = run_request(req);
    CHECK(r.exit_code == 0);
    CHECK(r.report.at("pass") == true);
    CHECK(r.report.at("config").at("samples") == 500);
    CHECK(r.report.at("config").at("tol") == 1e-10);
    CHECK(r.report.at("result").at("sample_count") == 500);
}

TEST_CASE("verify flags a constants mismatch as a failed check") {
    CommandRequest req{
        "verify",
        json{{"map", json{{"kind", "catalog"}, {"form", "bidisk-3"}, {"params", {0.5}}}},
             {"constants", {0.45, 0.45}}}};
    CommandResult r = run_request(req);
    CHECK(r.exit_code == 1);
    CHECK(r.report.at("pass") == false);
}

TEST_CASE("sheeting command reports the identities") {
    CommandRequest req{"sheeting",
                       json{{"map", json{{"kind", "pth_root"}, {"p", 3}}}, {"k", 1.0}}};
    CommandResult r = run_request(req);
    CHECK(r.exit_code == 0);
    CHECK(r.report.at("result").at("n") == 3);
    CHECK(r.report.at("result").at("s") == json::array({3, 3, 3}));
    CHECK(r.report.at("result").at("identities").at("sum_reciprocal") == true);
}

TEST_CASE("exit codes: validation, numeric rejection, unknown command") {
    CHECK(run_request({"fly", json::object()}).exit_code == 2);
    CHECK(run_request({"verify", json{{"map", json{{"kind", "no-such"}}}}}).exit_code == 2);
    CommandResult rejected =
        run_request({"solve", json{{"zeta", json::array({0.5, 0.0})}}});
    CHECK(rejected.exit_code == 3);
    CHECK(rejected.report.at("error").at("op") == "u_zeta");
    // k override inconsistent with the map
    CommandResult wrong_k = run_request(
        {"verify", json{{"map", json{{"kind", "diagonal"}, {"p", 2}}}, {"k", 1.0}}});
    CHECK(wrong_k.exit_code == 2);
}

TEST_CASE("reports are byte-identical across runs") {
    CommandRequest req{"congruence",
                       json{{"left", json{{"zeta", json::array({0.2, 0.0})}}},
                            {"right", json{{"zeta", json::array({0.1, 0.0})}}},
                            {"order", 32}}};
    std::string a = run_request(req).report.dump();
    std::string b = run_request(req).report.dump();
    CHECK(a == b);

    CommandRequest kc{"kernel-check", json{{"count", 50}}};
    CHECK(run_request(kc).report.dump() == run_request(kc).report.dump());
}

TEST_CASE("emit-samples writes the residual CSV") {
    const char* path = "emit_samples_test.csv";
    CommandRequest req{"verify", json{{"map", json{{"kind", "pth_root"}, {"p", 2}}},
                                      {"samples", 20},
                                      {"emit_samples", path}}};
    CommandResult r = run_request(req);
    CHECK(r.exit_code == 0);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "w_re,w_im,residual");
    int lines = 0;
    for (std::string line; std::getline(in, line);) ++lines;
    CHECK(lines == 20);
    in.close();
    std::remove(path);
}

TEST_CASE("proper command certifies the family example") {
    CommandRequest req{"proper", json{{"zeta", json::array({0.2, 0.0})},
                                      {"radii", {0.9, 0.99, 0.999}},
                                      {"angles", 128}}};
    CommandResult r = run_request(req);
    CHECK(r.exit_code == 0);
    CHECK(r.report.at("result").at("strictly_increasing") == true);
    CHECK(r.report.at("result").at("final_gap").get<double>() <= 0.01);
}

TEST_CASE("kernel-check and rigidity commands") {
    CommandResult kc = run_request({"kernel-check", json{{"count", 100}}});
    CHECK(kc.exit_code == 0);
    CHECK(kc.report.at("result").at("max_deviation").get<double>() <= 1e-12);

    CommandResult rg = run_request(
        {"rigidity",
         json{{"map", json{{"kind", "catalog"}, {"form", "bidisk-3"}, {"params", {0.5}}}}}});
    CHECK(rg.exit_code == 0);
    CHECK(rg.report.at("result").at("factors_totally_geodesic") == true);
}

TEST_CASE("construct echoes the descriptor and evaluates") {
    CommandRequest req{"construct", json{{"map", json{{"kind", "sharp"},
                                                      {"outer", json{{"kind", "pth_root"}, {"p", 2}}},
                                                      {"inner", json{{"kind", "pth_root"}, {"p", 2}}},
                                                      {"slot", 2}}},
                                         {"at", json::array({0.3, 0.1})}}};
    CommandResult r = run_request(req);
    CHECK(r.exit_code == 0);
    CHECK(r.report.at("result").at("target").at("factors").size() == 3);
    CHECK(r.report.at("result").at("value").size() == 3);
    CHECK(r.report.at("result").at("source_constant") == 1.0);
}

TEST_CASE("polarize and metric commands") {
    CommandResult pol = run_request(
        {"polarize", json{{"map", json{{"kind", "pth_root"}, {"p", 2}}}, {"pairs", 50}}});
    CHECK(pol.exit_code == 0);
    CommandResult met = run_request(
        {"metric", json{{"map", json{{"kind", "diagonal"}, {"p", 1}}}, {"points", 20},
                        {"tol", 1e-8}}});
    CHECK(met.exit_code == 0);
}

TEST_CASE("json round trips for the wire formats") {
    Series s(cplx{0.1, -0.2}, {cplx{1.0, 2.0}, cplx{-0.5, 0.0}});
    Series s2 = series_from_json(to_json(s));
    CHECK(s2.center() == s.center());
    CHECK(coeff_distance(s, s2) == 0.0);

    ProductSpace space({disk_factor(), ball_factor(2)}, {1.0, 0.5});
    ProductSpace space2 = product_space_from_json(to_json(space));
    CHECK(space2.total_dim() == 3);
    CHECK(space2.constants == space.constants);

    KernelSpec spec = KernelSpec::type_i(2, 3);
    KernelSpec spec2 = kernel_spec_from_json(to_json(spec));
    CHECK(spec2.kind == DomainKind::TypeI);
    CHECK(spec2.exponent == -5);

    UnitaryMatrix u = u_zeta(cplx{0.1, 0.05});
    UnitaryMatrix u2 = unitary_from_json(to_json(u));
    CHECK((u.matrix() - u2.matrix()).cwiseAbs().maxCoeff() == 0.0);
}
