#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "expzero/catalog.hpp"

using namespace expzero;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(EXPZERO_BIN) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string data(const std::string& name) {
    return std::string(EXPZERO_DATA_DIR) + "/" + name;
}

std::string write_temp(const std::string& name, const std::string& content) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    return path.string();
}

}  // namespace

TEST_CASE("classify exit codes and verdicts for the canned inputs") {
    struct Row {
        const char* file;
        const char* expected_case;
    };
    for (const Row& row : {Row{"point.json", "\"case\":\"a\""},
                           Row{"full_projection.json", "\"case\":\"b\""},
                           Row{"hyperbola.json", "\"case\":\"c\""},
                           Row{"degree_nine.json", "\"case\":\"c\""},
                           Row{"no_solution.json", "\"case\":\"d1\""},
                           Row{"subgroup.json", "\"case\":\"d2\""},
                           Row{"single_point.json", "\"case\":\"d31\""},
                           Row{"product.json", "\"case\":\"d32\""}}) {
        auto r = run_cli("classify --input " + data(row.file));
        INFO(row.file);
        CHECK(r.code == 0);
        auto compact = Json::parse(r.out).dump();
        CHECK(compact.find(row.expected_case) != std::string::npos);
    }

    auto nz = Json::parse(run_cli("classify --input " + data("no_solution.json")).out);
    CHECK(nz.at("verdict") == "empty");
    CHECK(nz.at("heuristic_flags").empty());

    auto d31 = Json::parse(run_cli("classify --input " + data("single_point.json")).out);
    auto pts = d31.at("witness").at("points");
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].at("residual").get<double>() < 1e-12);
}

TEST_CASE("classify rejects malformed input with exit 2") {
    auto bad = write_temp("expzero_bad.json", "{\"kind\": \"curve_pair\", \"generators\": [");
    CHECK(run_cli("classify --input " + bad).code == 2);
    CHECK(run_cli("classify --input /nonexistent/x.json").code == 2);
}

TEST_CASE("classify reports unsupported shapes with exit 3") {
    Poly f = catalog::svar("Xh1") * (catalog::svar("X1") - catalog::sconst(2));
    Json j{{"kind", "curve_pair"},
           {"generators",
            Json::array({poly_to_json(catalog::line_x1_plus_x2()), poly_to_json(f)})}};
    auto path = write_temp("expzero_unsupported.json", j.dump());
    auto r = run_cli("classify --input " + path);
    CHECK(r.code == 3);
    CHECK(Json::parse(r.out).at("case") == "unsupported");
}

TEST_CASE("classify flags numeric decisions with exit 4") {
    Poly f = catalog::svar("Xh1") * catalog::svar("Xh2") -
             catalog::sconst(ExactScalar::symbol("THETA"));
    Json j{{"kind", "curve_pair"},
           {"generators",
            Json::array({poly_to_json(catalog::line_x1_plus_x2()), poly_to_json(f)})},
           {"valuation", Json{{"THETA", Json::array({2.718281828459045, 0.0})}}}};
    auto path = write_temp("expzero_heuristic.json", j.dump());
    auto r = run_cli("classify --input " + path);
    CHECK(r.code == 4);
    auto parsed = Json::parse(r.out);
    CHECK(parsed.at("case") == "d2");
    CHECK_FALSE(parsed.at("heuristic_flags").empty());
}

TEST_CASE("solve isolates the unit-circle pair and honors exit codes") {
    auto r = run_cli("solve --input " + data("exp_reciprocal.json") +
                     " --region 'annulus 0 0 0.9 1.1'");
    CHECK(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j.at("region_count") == 2);
    CHECK(j.at("isolated") == 2);

    // a region with no zeros: ran fine, found nothing
    CHECK(run_cli("solve --input " + data("exp_minus_z.json") + " --region 'disc 0 0 1'")
              .code == 1);
    // a region touching the excluded point
    CHECK(run_cli("solve --input " + data("exp_reciprocal.json") + " --region 'disc 0 0 1'")
              .code == 2);
    // malformed region
    CHECK(run_cli("solve --input " + data("exp_reciprocal.json") + " --region 'disc 0 0'")
              .code == 2);
}

TEST_CASE("solve on the reduced product curve") {
    auto r = run_cli("solve --input " + data("reduced_product.json") +
                     " --region 'disc 0 0 20' --max-zeros 4");
    CHECK(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j.at("region_count") == 14);
    CHECK(j.at("isolated").get<int>() >= 1);
    for (const auto& cert : j.at("certificates"))
        for (const auto& root : cert.at("roots"))
            CHECK(root.at("residual").get<double>() < 1e-9);
}

TEST_CASE("solve extracts certificates from the zero-rich quadratic surface") {
    auto r = run_cli("solve --input " + data("exp_square.json") +
                     " --region 'disc 0 0 30' --max-zeros 4");
    CHECK(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j.at("isolated").get<int>() >= 1);
    CHECK(j.at("truncated") == true);
    for (const auto& cert : j.at("certificates"))
        for (const auto& root : cert.at("roots"))
            CHECK(root.at("residual").get<double>() < 1e-9);
}

TEST_CASE("winding and laurent subcommands") {
    auto w = run_cli("winding --input " + data("exp_reciprocal.json") +
                     " --region 'disc 0 0 2'");
    CHECK(w.code == 0);
    CHECK(Json::parse(w.out).at("winding") == 1);

    auto l = run_cli("laurent --input " + data("exp_minus_z.json") +
                     " --region 'disc 0 0 0.5' --laurent-k 3");
    CHECK(l.code == 0);
    auto j = Json::parse(l.out);
    CHECK(j.at("m") == 0);
    CHECK(std::abs(j.at("coeffs").at("2").at(0).get<double>() - 0.5) < 1e-8);
    CHECK(std::abs(j.at("coeffs").at("1").at(0).get<double>()) < 1e-8);
}

TEST_CASE("identical configuration yields byte-identical output") {
    std::string cmd = "classify --input " + data("product.json");
    CHECK(run_cli(cmd).out == run_cli(cmd).out);

    std::string solve_cmd = "solve --input " + data("exp_reciprocal.json") +
                            " --region 'annulus 0 0 7 8' --seed 0xBEEF";
    auto a = run_cli(solve_cmd);
    auto b = run_cli(solve_cmd);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("elliptic-verify passes on the default and file lattices") {
    auto r = run_cli("elliptic-verify");
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out).at("all_pass") == true);
    auto f = run_cli("elliptic-verify --input " + data("lattice.json"));
    CHECK(f.code == 0);
}

TEST_CASE("verify-paper filter and forced failure") {
    auto one = run_cli("verify-paper --only winding");
    CHECK(one.code == 0);
    auto j = Json::parse(one.out);
    CHECK(j.at("criteria").size() == 1);
    CHECK(j.at("all_pass") == true);

    CHECK(run_cli("verify-paper --only no_such_criterion").code == 2);
    auto absurd = run_cli("verify-paper --tol 1e-30");
    CHECK(absurd.code == 1);
    CHECK(Json::parse(absurd.out).at("all_pass") == false);
}

TEST_CASE("svg emission writes a plot") {
    auto svg = std::filesystem::temp_directory_path() / "expzero_plot.svg";
    std::filesystem::remove(svg);
    auto r = run_cli("solve --input " + data("exp_reciprocal.json") +
                     " --region 'annulus 0 0 0.9 1.1' --emit-svg " + svg.string());
    CHECK(r.code == 0);
    REQUIRE(std::filesystem::exists(svg));
    std::ifstream in(svg);
    std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(body.find("<svg") != std::string::npos);
    CHECK(body.find("#c0392b") != std::string::npos);  // zero markers present
}
