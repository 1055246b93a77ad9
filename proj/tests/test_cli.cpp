#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct CliRun {
    int exit_code;
    std::string stdout_text;
};

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("risktax_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CliRun run_cli(const std::string& arg_line, const fs::path& dir) {
    const fs::path out_file = dir / "stdout.txt";
    const std::string cmd = std::string(RISKTAX_CLI_PATH) + " " + arg_line + " > " +
                            out_file.string() + " 2> " + (dir / "stderr.txt").string();
    const int raw = std::system(cmd.c_str());
    const int code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return {code, slurp(out_file)};
}

}  // namespace

TEST_CASE("missing model key exits with the config code") {
    const auto dir = scratch_dir("missing_model");
    write(dir / "cfg.json",
          R"({"rate":{"domain_start":0,"spec":{"constant":0.1}},"regime":"latent","x":0,"horizon":5})");
    const auto r = run_cli("simulate --config " + (dir / "cfg.json").string(), dir);
    CHECK(r.exit_code == 2);
}

TEST_CASE("unknown config keys are rejected") {
    const auto dir = scratch_dir("unknown_key");
    write(dir / "cfg.json",
          R"({"model":{"cramer_lundberg":{"premium_rate":2,"claim_intensity":1,"claim_mean":1}},
              "rate":{"domain_start":0,"spec":{"constant":0.1}},
              "regime":"latent","x":0,"horizon":5,"bogus":1})");
    const auto r = run_cli("simulate --config " + (dir / "cfg.json").string(), dir);
    CHECK(r.exit_code == 2);
}

TEST_CASE("inadmissible rate refusal exits with code 3") {
    const auto dir = scratch_dir("refusal");
    write(dir / "cfg.json",
          R"({"rate":{"domain_start":0,"spec":{"piecewise":{"thresholds":[5],"values":[0.5,0.2]}},
              "admissibility":"none"},"x":0,"direction":"natural_to_latent"})");
    const auto r = run_cli("convert --config " + (dir / "cfg.json").string(), dir);
    CHECK(r.exit_code == 3);
}

TEST_CASE("zero-rate simulation leaves the taxed column equal to the path") {
    const auto dir = scratch_dir("zero_rate");
    write(dir / "cfg.json",
          R"({"model":{"cramer_lundberg":{"premium_rate":2,"claim_intensity":1,"claim_mean":1}},
              "rate":{"domain_start":3,"spec":{"constant":0.0}},
              "regime":"latent","x":3,"horizon":10,"seed":5,"out":")" +
              (dir / "out").string() + R"("})");
    const auto r = run_cli("simulate --config " + (dir / "cfg.json").string(), dir);
    REQUIRE(r.exit_code == 0);
    const std::string taxed = slurp(dir / "out" / "taxed.csv");
    std::istringstream lines(taxed);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "t,X,Xbar,taxed,taxed_bar,cumulative_tax");
    while (std::getline(lines, line)) {
        std::istringstream cells(line);
        std::string t, x_cell, xbar, taxed_cell;
        std::getline(cells, t, ',');
        std::getline(cells, x_cell, ',');
        std::getline(cells, xbar, ',');
        std::getline(cells, taxed_cell, ',');
        CHECK(x_cell == taxed_cell);
    }
}

TEST_CASE("convert reproduces the worked thresholds") {
    const auto dir = scratch_dir("convert");
    write(dir / "cfg.json",
          R"({"rate":{"domain_start":7,"spec":{"piecewise":{"thresholds":[20],"values":[0.4,0.9]}},
              "admissibility":"monotone"},"x":7,"direction":"latent_to_natural"})");
    const auto r = run_cli("convert --config " + (dir / "cfg.json").string(), dir);
    REQUIRE(r.exit_code == 0);
    CHECK(r.stdout_text.find("14.8") != std::string::npos);
    CHECK(r.stdout_text.find("\"gamma_bar_infinity\": \"infinity\"") != std::string::npos);

    write(dir / "cfg2.json",
          R"({"rate":{"domain_start":10,"spec":{"piecewise":{"thresholds":[20],"values":[0.4,0.9]}},
              "admissibility":"monotone"},"x":10,"direction":"latent_to_natural"})");
    const auto r2 = run_cli("convert --config " + (dir / "cfg2.json").string(), dir);
    REQUIRE(r2.exit_code == 0);
    CHECK(r2.stdout_text.find("16") != std::string::npos);
}

TEST_CASE("exit command reports the classical ratio for zero rate") {
    const auto dir = scratch_dir("exit");
    write(dir / "cfg.json",
          R"({"model":{"cramer_lundberg":{"premium_rate":2,"claim_intensity":1,"claim_mean":1}},
              "rate":{"domain_start":5,"spec":{"constant":0.0}},"x":5,"a":15,"q":0})");
    const auto r = run_cli("exit --config " + (dir / "cfg.json").string(), dir);
    REQUIRE(r.exit_code == 0);
    // W(5)/W(15) = (1 - 0.5 e^{-2.5}) / (1 - 0.5 e^{-7.5}) for this model
    CHECK(r.stdout_text.find("\"value\": 0.9592") != std::string::npos);
}

TEST_CASE("identity command emits the ratio diagnostic") {
    const auto dir = scratch_dir("identity");
    write(dir / "cfg.json",
          R"({"model":{"cramer_lundberg":{"premium_rate":2,"claim_intensity":1,"claim_mean":1}},
              "rate":{"domain_start":5,"spec":{"constant":0.5}},"x":5})");
    const auto r = run_cli("identity --config " + (dir / "cfg.json").string(), dir);
    REQUIRE(r.exit_code == 0);
    const auto pos = r.stdout_text.find("\"ratio_check\": ");
    REQUIRE(pos != std::string::npos);
    const double ratio = std::strtod(r.stdout_text.c_str() + pos + 15, nullptr);
    CHECK(ratio == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("figure presets emit files with the expected markers") {
    for (int variant : {1, 2}) {
        const auto dir = scratch_dir("figure" + std::to_string(variant));
        const auto r = run_cli("figure --variant " + std::to_string(variant) + " --out " +
                                   (dir / "fig").string(),
                               dir);
        REQUIRE(r.exit_code == 0);
        const std::string stem = "figureA_variant" + std::to_string(variant);
        CHECK(fs::exists(dir / "fig" / (stem + "_path.csv")));
        CHECK(fs::exists(dir / "fig" / (stem + "_taxed.csv")));
        CHECK(fs::exists(dir / "fig" / (stem + "_figure.svg")));
        const std::string markers = slurp(dir / "fig" / (stem + "_markers.json"));
        CHECK(markers.find("\"passage_times_equal\": true") != std::string::npos);
        CHECK(markers.find(variant == 1 ? "14.8" : "16") != std::string::npos);
        CHECK(markers.find("\"b\": 20.0") != std::string::npos);
    }
}

TEST_CASE("command output is deterministic for a fixed config") {
    const auto dir = scratch_dir("determinism");
    write(dir / "cfg.json",
          R"({"model":{"cramer_lundberg":{"premium_rate":2,"claim_intensity":1,"claim_mean":1}},
              "rate":{"domain_start":2,"spec":{"piecewise":{"thresholds":[8],"values":[0.2,0.6]}},
              "admissibility":"monotone"},
              "regime":"natural","x":2,"horizon":25,"seed":77,"out":")" +
              (dir / "a").string() + R"("})");
    const auto r1 = run_cli("simulate --config " + (dir / "cfg.json").string(), dir);
    REQUIRE(r1.exit_code == 0);
    const std::string first = slurp(dir / "a" / "taxed.csv");
    const auto r2 = run_cli("simulate --config " + (dir / "cfg.json").string(), dir);
    REQUIRE(r2.exit_code == 0);
    CHECK(first == slurp(dir / "a" / "taxed.csv"));
    CHECK(first.substr(0, 40) == "t,X,Xbar,taxed,taxed_bar,cumulative_tax\n");
}
