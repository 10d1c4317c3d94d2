#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "drg/report.hpp"

using namespace drg;

TEST_SUITE_BEGIN("reports");

TEST_CASE("uniform witness round-trips through JSON and re-validates") {
    Graph g = folded_hypercube(5);
    auto verdict = supports_uniform(g, 0);
    REQUIRE(verdict.outcome == UniformOutcome::uniform);
    auto ctx = build_context(g, 0, TMode::bipartite_quotient);
    Json rep = uniform_report(ctx, verdict);
    std::string serialized = render(rep, ReportFormat::json);

    Json parsed = Json::parse(serialized);
    UniformSolution sol = uniform_solution_from_json(parsed["solution"]);
    CHECK(verify_uniform_solution(ctx, sol));

    // a perturbed witness must fail re-validation
    UniformSolution broken = sol;
    broken.f[0] += 1;
    CHECK_FALSE(verify_uniform_solution(ctx, broken));
}

TEST_CASE("reports carry the schema version") {
    ClassicalParams cp(4, Int(2), Rat(2), Rat(60));
    CHECK(params_report(cp)["schema"] == kReportSchema);
    CHECK(feasibility_report(family1_eliminate(Int(3), 6))["schema"] == kReportSchema);
    Graph g = petersen();
    CHECK(graph_report(g, is_distance_regular(g))["schema"] == kReportSchema);
}

TEST_CASE("exact values are strings with marked approximations") {
    Json j = json_exact(Rat(58604000) / Rat(1290));
    CHECK(j["exact"] == "5860400/129");
    CHECK(j["approx"].is_number());
}

TEST_CASE("text rendering carries the documented lines") {
    ClassicalParams cp(4, Int(2), Rat(2), Rat(60));
    std::string text = render(params_report(cp), ReportFormat::text);
    CHECK(text.find("eta: [-3, 57, -1, 27]") != std::string::npos);
    CHECK(text.find("{900, 812, 648, 368; 1, 9, 49, 225}") != std::string::npos);

    Graph g = folded_hypercube(5);
    auto verdict = supports_uniform(g, 0);
    auto ctx = build_context(g, 0, TMode::bipartite_quotient);
    std::string utext = render(uniform_report(ctx, verdict), ReportFormat::text);
    CHECK(utext.find("uniform: yes") != std::string::npos);
}

TEST_CASE("csv rendering flattens to key,value rows") {
    ClassicalParams cp(4, Int(2), Rat(2), Rat(60));
    std::string csv = render(params_report(cp), ReportFormat::csv);
    CHECK(csv.rfind("key,value\n", 0) == 0);
    CHECK(csv.find("eta.values[0],-3") != std::string::npos);
}

TEST_CASE("sweep report carries both readings") {
    auto res = conjecture_sweep(3, 12);
    Json j = sweep_report(res);
    CHECK(j.contains("counterexamples_both_integral"));
    CHECK(j.contains("cells_with_any_integer"));
    CHECK(j["cells"] == 4);
}

TEST_CASE("char_poly rejects non-square input") {
    CHECK_THROWS_AS(char_poly(Mat::zero(2, 3)), std::invalid_argument);
}

TEST_SUITE_END();
