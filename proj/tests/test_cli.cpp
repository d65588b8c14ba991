#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "dpoly/cli.hpp"
#include "dpoly/io.hpp"

using namespace dpoly;

namespace {

int run(std::initializer_list<std::string> args) {
    return cli_main(std::vector<std::string>(args));
}

std::string slurp(const std::string& path) { return read_text_file(path); }

void write_config(const std::string& path, const std::string& json) {
    std::ofstream f(path);
    f << json;
}

}  // namespace

TEST_CASE("help exits cleanly") {
    CHECK(run({"--help"}) == 0);
}

TEST_CASE("configuration mistakes map to exit code 2") {
    CHECK(run({"--frobnicate", "constants"}) == 2);
    CHECK(run({"constants", "--b", "1"}) == 2);       // b below range
    CHECK(run({"--b", "2", "--s", "3", "maps"}) == 2);  // critical command, s != b

    const std::string cfg = "/tmp/dpoly_test_badkey.json";
    write_config(cfg, "{\"bogus\": 1}");
    CHECK(run({"--config", cfg, "constants"}) == 2);
    write_config(cfg, "{\"b\": [2]}");
    CHECK(run({"--config", cfg, "constants"}) == 2);
    std::remove(cfg.c_str());
}

TEST_CASE("flags override config file values") {
    const std::string cfg = "/tmp/dpoly_test_b3.json";
    const std::string out = "/tmp/dpoly_test_constants.csv";
    write_config(cfg, "{\"b\": 3}");

    CHECK(run({"--config", cfg, "--out", out, "constants"}) == 0);
    CHECK(slurp(out).find("kappa,1\n") != std::string::npos);  // b = 3: kappa = 1

    CHECK(run({"--config", cfg, "--b", "2", "--out", out, "constants"}) == 0);
    CHECK(slurp(out).find("kappa,1.4142135623730951\n") != std::string::npos);

    std::remove(cfg.c_str());
    std::remove(out.c_str());
}

TEST_CASE("map table carries the documented columns") {
    const std::string out = "/tmp/dpoly_test_maps.csv";
    CHECK(run({"--r-min", "-2", "--r-max", "-1", "--r-step", "1", "--n-max-exp", "12",
               "--out", out, "maps"}) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("r,r2,error_estimate,shift_residual,derivative") != std::string::npos);
    CHECK(text.rfind("# dpoly", 0) == 0);  // comment line first
    std::remove(out.c_str());
}

TEST_CASE("degenerate temperature reports all-zero moments and passes") {
    // r far below the critical window drives the tuned variance negative,
    // so the temperature clamps to zero and W is identically 1.
    const std::string cfg = "/tmp/dpoly_test_mcdeg.json";
    const std::string out = "/tmp/dpoly_test_mcdeg.csv";
    write_config(cfg,
                 "{\"r\": -80, \"generations\": 64, \"pool_size\": 2000, \"seed\": 5}");
    CHECK(run({"--config", cfg, "--out", out, "mc"}) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("rho2,0,0,0,0,1") != std::string::npos);
    CHECK(text.find("rho3,0,0,0,0,1") != std::string::npos);
    std::remove(cfg.c_str());
    std::remove(out.c_str());
}

TEST_CASE("population run is byte-identical across runs and workers") {
    const std::string cfg1 = "/tmp/dpoly_test_mc1.json";
    const std::string cfg4 = "/tmp/dpoly_test_mc4.json";
    const std::string out_a = "/tmp/dpoly_test_mc_a.csv";
    const std::string out_b = "/tmp/dpoly_test_mc_b.csv";
    const std::string out_c = "/tmp/dpoly_test_mc_c.csv";
    write_config(cfg1, "{\"generations\": 12, \"pool_size\": 20000, \"seed\": 3}");
    write_config(cfg4,
                 "{\"generations\": 12, \"pool_size\": 20000, \"seed\": 3, \"workers\": 4}");
    CHECK(run({"--config", cfg1, "--out", out_a, "mc"}) == 0);
    CHECK(run({"--config", cfg1, "--out", out_b, "mc"}) == 0);
    CHECK(run({"--config", cfg4, "--out", out_c, "mc"}) == 0);
    CHECK(slurp(out_a) == slurp(out_b));
    CHECK(slurp(out_a) == slurp(out_c));
    std::remove(cfg1.c_str());
    std::remove(cfg4.c_str());
    std::remove(out_a.c_str());
    std::remove(out_b.c_str());
    std::remove(out_c.c_str());
}

TEST_CASE("property suite passes clean and fails under fault injection") {
    const std::string out = "/tmp/dpoly_test_verify.json";
    CHECK(run({"--out", out, "verify"}) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("\"pass\": true") != std::string::npos);
    CHECK(text.find("enumeration_anchor") != std::string::npos);

    CHECK(run({"--out", out, "verify", "--inject-structure-fault"}) == 5);
    std::remove(out.c_str());
}
