#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string binary_path() {
    const char* env = std::getenv("FRACP_BIN");
    REQUIRE_MESSAGE(env != nullptr, "FRACP_BIN must point at the fracp binary");
    return env;
}

struct RunOutput {
    int exit_code = -1;
    std::string stdout_text;
};

RunOutput run(const std::string& args) {
    const std::string cmd = binary_path() + " " + args + " 2>/tmp/fracp_stderr.txt";
    std::FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunOutput out;
    char buf[4096];
    while (std::fgets(buf, sizeof buf, pipe)) out.stdout_text += buf;
    const int status = pclose(pipe);
    out.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json load_json(const std::string& path) {
    return nlohmann::json::parse(slurp(path));
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("eig run emits the fixed schema and exits zero") {
    const RunOutput out =
        run("eig --s 0.5 --p 2 --n 64 --h const:1 --out /tmp/fracp_eig");
    CHECK(out.exit_code == 0);
    const auto j = load_json("/tmp/fracp_eig.json");
    for (const char* key : {"lambda", "residual", "iterations", "converged", "values"})
        CHECK(j.contains(key));
    CHECK(j["values"].size() == 64);
    CHECK(j["converged"] == true);

    const std::string csv = slurp("/tmp/fracp_eig.csv");
    CHECK(csv.rfind("x,u\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 65);  // header + 64 rows
    CHECK(csv.find("\r") == std::string::npos);
}

TEST_CASE("window violations name the violated window and exit 1") {
    const RunOutput out = run("eig --s 1.2 --p 2 --n 64 --out /tmp/fracp_bad");
    CHECK(out.exit_code == 1);
    const std::string err = slurp("/tmp/fracp_stderr.txt");
    CHECK(err.find("s must lie in (0,1)") != std::string::npos);

    CHECK(run("eig --n 2 --out /tmp/fracp_bad").exit_code == 1);
    CHECK(run("eig --bogus 1 --out /tmp/fracp_bad").exit_code == 1);
    CHECK(run("frobnicate --s 0.5").exit_code == 1);
}

TEST_CASE("check-weight reproduces the Bq witness") {
    const RunOutput out = run(
        "check-weight --class Bq --beta 0.9 --q 2 --p 2 --s 0.5 --N 1 --out /tmp/fracp_cw");
    CHECK(out.exit_code == 0);
    const auto j = load_json("/tmp/fracp_cw.json");
    CHECK(j["class"] == "Bq");
    CHECK(j["a"].get<double>() == doctest::Approx(1.0));
    CHECK(j["r"].get<double>() == doctest::Approx(2.25).epsilon(1e-6));

    const RunOutput refused = run(
        "check-weight --class Bq --beta 1.2 --q 2 --p 2 --s 0.5 --N 1 --out /tmp/fracp_cw2");
    CHECK(refused.exit_code == 2);
    const auto j2 = load_json("/tmp/fracp_cw2.json");
    CHECK(j2["admissible"] == false);
    CHECK(j2["beta_star"].get<double>() == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("hardy emits the ratio CSV with its header") {
    const RunOutput out = run("hardy --s 0.6 --p 2 --n 64 --count 10 --out /tmp/fracp_hardy");
    CHECK(out.exit_code == 0);
    const std::string csv = slurp("/tmp/fracp_hardy.csv");
    CHECK(csv.rfind("index,ratio\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 11);
}

TEST_CASE("solve dispatches on the regime") {
    const RunOutput mp =
        run("solve --s 0.5 --p 2 --q 4 --n 48 --K const:1 --out /tmp/fracp_mp");
    CHECK(mp.exit_code == 0);
    const auto j = load_json("/tmp/fracp_mp.json");
    CHECK(j["method"] == "mountain-pass");
    CHECK(j["phi"].get<double>() > 0.0);

    const RunOutput mini =
        run("solve --s 0.5 --p 2 --q 1.5 --n 48 --K const:1 --out /tmp/fracp_min");
    CHECK(mini.exit_code == 0);
    const auto j2 = load_json("/tmp/fracp_min.json");
    CHECK(j2["method"] == "minimize");
    CHECK(j2["phi"].get<double>() < 0.0);
}

TEST_CASE("multi emits a phi-sorted array and per-solution CSVs") {
    const RunOutput out =
        run("multi --s 0.5 --p 2 --q 4 --n 48 --count 2 --out /tmp/fracp_multi");
    CHECK(out.exit_code == 0);
    const auto j = load_json("/tmp/fracp_multi.json");
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 2);
    CHECK(j[0]["phi"].get<double>() > 0.0);
    CHECK(j[0]["phi"].get<double>() < j[1]["phi"].get<double>());
    CHECK(slurp("/tmp/fracp_multi_0.csv").rfind("x,u\n", 0) == 0);
    CHECK(slurp("/tmp/fracp_multi_1.csv").rfind("x,u\n", 0) == 0);
}

TEST_CASE("config file plus flag overrides, flags win") {
    {
        std::ofstream cfg("/tmp/fracp_cfg.txt");
        cfg << "# comment\n"
            << "s=0.9\n"
            << "p=2\n"
            << "n=48\n"
            << "h=const:1\n";
    }
    const RunOutput out =
        run("eig --config /tmp/fracp_cfg.txt --s 0.5 --out /tmp/fracp_cfgrun");
    CHECK(out.exit_code == 0);
    const auto j = load_json("/tmp/fracp_cfgrun.json");
    CHECK(j["params"]["s"].get<double>() == doctest::Approx(0.5));

    {
        std::ofstream cfg("/tmp/fracp_cfg_bad.txt");
        cfg << "nonsense=1\n";
    }
    CHECK(run("eig --config /tmp/fracp_cfg_bad.txt --out /tmp/x").exit_code == 1);
}

TEST_CASE("moser and scaling runs") {
    const RunOutput mo = run("moser --s 0.5 --p 2 --n 48 --r 4 --out /tmp/fracp_moser");
    CHECK(mo.exit_code == 0);
    const auto j = load_json("/tmp/fracp_moser.json");
    CHECK(j["certified"] == true);
    CHECK(j.contains("levels"));

    const RunOutput sc = run("scaling --s 0.5 --p 3 --n 32 --t 8 --out /tmp/fracp_scaling");
    CHECK(sc.exit_code == 0);
    const auto j2 = load_json("/tmp/fracp_scaling.json");
    CHECK(j2["max_deviation"].get<double>() <= 1e-6);
}

TEST_CASE("byte-identical artifacts across repeated runs") {
    const std::string args = "eig --s 0.5 --p 2.5 --n 48 --h power:0.3 --seed 7";
    CHECK(run(args + " --out /tmp/fracp_det1").exit_code == 0);
    CHECK(run(args + " --out /tmp/fracp_det2").exit_code == 0);
    CHECK(slurp("/tmp/fracp_det1.json") == slurp("/tmp/fracp_det2.json"));
    CHECK(slurp("/tmp/fracp_det1.csv") == slurp("/tmp/fracp_det2.csv"));
    CHECK(!slurp("/tmp/fracp_det1.json").empty());
}

TEST_CASE("FRACP_SEED overrides the configured seed") {
    // random-seeded runs through the env var must agree when the env agrees
    const std::string args =
        "eig --s 0.5 --p 2 --n 32 --h const:1 --seed 1 --out /tmp/fracp_env";
    const std::string cmd1 = "FRACP_SEED=42 " + binary_path() + " " + args + " >/dev/null 2>&1";
    CHECK(std::system(cmd1.c_str()) == 0);
    const std::string first = slurp("/tmp/fracp_env.json");
    CHECK(std::system(cmd1.c_str()) == 0);
    CHECK(slurp("/tmp/fracp_env.json") == first);
}

}  // TEST_SUITE
