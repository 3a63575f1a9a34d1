#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "paracone/report_cli.hpp"

using namespace paracone;
namespace fs = std::filesystem;

namespace {

const std::string kCli = PARACONE_CLI_PATH;
const std::string kData = PARACONE_TEST_DATA;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_config(const RunConfig& c) {
    std::ostringstream out, err;
    const int code = run(c, out, err);
    return {code, out.str(), err.str()};
}

RunConfig command(const std::string& name) {
    RunConfig c;
    c.command = name;
    c.grid = "coarse";
    return c;
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("paracone_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Runs the installed binary; returns its exit status and captured stdout.
Result shell(const std::string& args) {
    const fs::path out = scratch("stdout.txt");
    const fs::path err = scratch("stderr.txt");
    const std::string cmd = "'" + kCli + "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, slurp(out), slurp(err)};
}

}  // namespace

TEST_CASE("check-paraconvex exit codes", "[cli]") {
    RunConfig c = command("check-paraconvex");
    c.mapping = "neg_square";
    auto r = run_config(c);
    CHECK(r.code == kExitPass);
    const json j = json::parse(r.out);
    CHECK(j["passed"] == true);
    CHECK(j["params"]["C"] == 1.0);
    CHECK(j["config"]["seed"] == 7);

    c.mapping = "abs_kink";
    c.C = 100.0;
    c.alpha = "pow:2";
    r = run_config(c);
    CHECK(r.code == kExitFail);
    CHECK(json::parse(r.out)["witness"].is_object());
}

TEST_CASE("check-convex", "[cli]") {
    RunConfig c = command("check-convex");
    c.mapping = "linear";
    CHECK(run_config(c).code == kExitPass);
    c.mapping = "neg_square";
    CHECK(run_config(c).code == kExitFail);
}

TEST_CASE("usage and input errors exit with 2", "[cli]") {
    RunConfig c = command("check-paraconvex");
    c.mapping = "no_such_mapping";
    auto r = run_config(c);
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("no_such_mapping") != std::string::npos);

    c.mapping = "neg_square";
    c.cone = "/nonexistent/cone.json";
    r = run_config(c);
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("/nonexistent/cone.json") != std::string::npos);

    RunConfig bad = command("frobnicate");
    CHECK(run_config(bad).code == kExitUsage);

    RunConfig noc = command("check-paraconvex");
    noc.mapping = "abs_kink";
    CHECK(run_config(noc).code == kExitUsage);

    RunConfig badk = command("check-paraconvex");
    badk.mapping = "neg_square";
    badk.k0 = "-1";
    CHECK(run_config(badk).code == kExitUsage);

    RunConfig grid = command("check-paraconvex");
    grid.mapping = "neg_square";
    grid.grid = "medium";
    CHECK(run_config(grid).code == kExitUsage);
}

TEST_CASE("estimate-C", "[cli]") {
    RunConfig c = command("estimate-C");
    c.mapping = "linear";
    auto r = run_config(c);
    CHECK(r.code == kExitPass);
    CHECK(json::parse(r.out)["C_hat"] == 0.0);

    c.mapping = "neg_square_pair";
    c.k0 = "0,1";
    r = run_config(c);
    CHECK(r.code == kExitFail);
    CHECK(json::parse(r.out)["finite"] == false);
}

TEST_CASE("dderiv writes the estimate and trace", "[cli]") {
    RunConfig c = command("dderiv");
    c.mapping = "neg_square";
    c.x0 = "0";
    c.h = "1";
    c.C = 1.0;
    c.alpha = "pow:2";
    const fs::path out = scratch("est.json");
    const fs::path trace = scratch("trace.csv");
    c.out = out.string();
    c.trace = trace.string();
    const auto r = run_config(c);
    CHECK(r.code == kExitPass);
    CHECK(r.out.empty());
    const json j = json::parse(slurp(out));
    CHECK(j["converged"] == true);
    CHECK(std::abs(j["value"][0].get<double>()) <= 1e-6);
    CHECK(j["subchecks"]["monotone"]["passed"] == true);
    CHECK(j["subchecks"]["lower_bound"]["passed"] == true);
    const std::string csv = slurp(trace);
    CHECK(csv.rfind("t,raw_1,corrected_1,monotone_slack\n", 0) == 0);

    c.steps = 3;
    c.out.reset();
    c.trace.reset();
    c.x0 = "0.5";
    CHECK(run_config(c).code == kExitFail);
}

TEST_CASE("cone-info", "[cli]") {
    RunConfig c = command("cone-info");
    c.cone = kData + "/wedge_cone.json";
    c.samples = 2000;
    auto r = run_config(c);
    CHECK(r.code == kExitPass);
    json j = json::parse(r.out);
    CHECK(j["pointed"] == true);
    CHECK(j["generators"].size() == 2);
    CHECK(j["normality_estimate"]["value"].get<double>() <= 1.0 + 1e-12);
    CHECK(j["well_based_witness"].is_array());

    c.cone = kData + "/half_plane_cone.json";
    r = run_config(c);
    CHECK(r.code == kExitPass);
    j = json::parse(r.out);
    CHECK(j["pointed"] == false);
    CHECK(j["generators"].is_null());

    RunConfig none = command("cone-info");
    CHECK(run_config(none).code == kExitUsage);
}

TEST_CASE("mapping and cone files", "[cli]") {
    RunConfig c = command("check-paraconvex");
    c.mapping = kData + "/pair_map.json";
    CHECK(run_config(c).code == kExitPass);
    c.C = 0.3;
    CHECK(run_config(c).code == kExitFail);

    RunConfig w = command("check-paraconvex");
    w.mapping = "wedge_mix";
    w.cone = kData + "/wedge_cone.json";
    CHECK(run_config(w).code == kExitPass);
    w.cone = kData + "/ice_cream_cone.json";
    w.k0 = "0,1";
    // Under v >= |u| the defect along (-1, 1) is 1.5 l (1 - l) d^2, so C = 2 suffices too.
    CHECK(run_config(w).code == kExitPass);
    w.C = 1.0;
    CHECK(run_config(w).code == kExitFail);
}

TEST_CASE("config files and flag overrides", "[cli]") {
    const RunConfig file = config_from_json(read_json_file(kData + "/dderiv_config.json"));
    CHECK(file.command == "dderiv");
    CHECK(file.x0 == "0.5");
    CHECK(file.h == "1");
    CHECK(file.k0 == "1");
    auto r = run_config(file);
    CHECK(r.code == kExitPass);
    CHECK(json::parse(r.out)["value"][0].get<double>() == Catch::Approx(-1.0).margin(1e-5));

    RunConfig flags;
    flags.x0 = "0";
    const RunConfig merged = file.overridden_by(flags);
    CHECK(merged.command == "dderiv");
    CHECK(merged.x0 == "0");
    CHECK(merged.C == 1.0);
    CHECK(std::abs(json::parse(run_config(merged).out)["value"][0].get<double>()) <= 1e-5);

    CHECK_THROWS_AS(config_from_json(json::parse(R"({"C": "one"})")), InputError);
    CHECK_THROWS_AS(config_from_json(json::parse(R"([1])")), InputError);
}

TEST_CASE("corpus-run prints a table and writes JSON on request", "[cli]") {
    RunConfig c = command("corpus-run");
    c.all = true;
    const fs::path out = scratch("corpus.json");
    c.out = out.string();
    const auto r = run_config(c);
    CHECK(r.code == kExitPass);
    CHECK(r.out.find("mapping") == 0);
    CHECK(r.out.find("abs_kink") != std::string::npos);
    CHECK(r.out.find("pass (rejected)") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
    const json j = json::parse(slurp(out));
    CHECK(j["entries"].size() == corpus_names().size());
    CHECK(j["entries"]["neg_square"]["paraconvex"]["passed"] == true);
    CHECK(j["entries"]["abs_kink"]["negative_control"].size() == 3);

    RunConfig one = command("corpus-run");
    one.mapping = "linear";
    const auto single = run_config(one);
    CHECK(single.code == kExitPass);
    CHECK(single.out.find("neg_square") == std::string::npos);
}

TEST_CASE("binary: exit codes, determinism, and seeds", "[cli][binary]") {
    auto a = shell("check-paraconvex --mapping abs_kink --C 100 --alpha pow:2 --grid coarse");
    CHECK(a.code == 1);
    auto b = shell("check-paraconvex --mapping abs_kink --C 100 --alpha pow:2 --grid coarse");
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());

    CHECK(shell("dderiv --mapping neg_square --x0 0 --h 1 --C 1 --alpha pow:2").code == 0);
    CHECK(shell("check-paraconvex --mapping nope").code == 2);
    CHECK(shell("check-paraconvex --bogus-flag").code == 2);
    CHECK(shell("").code == 2);
    CHECK(shell("--help").code == 0);
    CHECK(shell("dderiv --help").code == 0);

    const auto cfg = shell("--config '" + kData + "/dderiv_config.json' dderiv --x0 0");
    CHECK(cfg.code == 0);
    CHECK(std::abs(json::parse(cfg.out)["value"][0].get<double>()) <= 1e-5);

    const auto s1 = shell("check-paraconvex --mapping hilbert_shift --grid coarse --seed 3");
    const auto env = std::string("PARACONE_SEED=3 ");
    const fs::path out = scratch("env.txt");
    const int status = std::system((env + "'" + kCli + "' check-paraconvex --mapping hilbert_shift --grid coarse >'" + out.string() + "'").c_str());
    CHECK(WEXITSTATUS(status) == 0);
    CHECK(slurp(out) == s1.out);
    CHECK(json::parse(s1.out)["config"]["seed"] == 3);
}
