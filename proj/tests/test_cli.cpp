#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "prolime/cli.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using namespace prolime::cli;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("prolime_cli_" + std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream(path, std::ios::binary) << text;
}

std::size_t line_count(const std::string& text) {
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

} // namespace

TEST_CASE("config file parsing") {
    std::istringstream in("# comment\n\nseed = 7\n Kernel_Width=0.5 \nsizes = 100, 200\n");
    auto entries = parse_config(in);
    CHECK(entries.size() == 3);
    CHECK(entries.at("seed") == "7");
    CHECK(entries.at("kernel-width") == "0.5");

    RunConfig config;
    apply_config(config, entries);
    CHECK(config.seed == 7);
    CHECK(config.kernel_width == 0.5);
    CHECK(config.sizes == std::vector<std::size_t>{100, 200});
    CHECK(!config.model_seed.has_value());

    std::istringstream bad("seed 7\n");
    CHECK_THROWS_AS(parse_config(bad), ConfigError);
    CHECK_THROWS_AS(apply_config(config, {{"bogus", "1"}}), ConfigError);
    CHECK_THROWS_AS(apply_config(config, {{"n", "0"}}), ConfigError);
    CHECK_THROWS_AS(apply_config(config, {{"rho", "1"}}), ConfigError);
    CHECK_THROWS_AS(apply_config(config, {{"ridge", "-1"}}), ConfigError);
    CHECK_THROWS_AS(apply_config(config, {{"sampler", "uniform"}}), ConfigError);
    CHECK_THROWS_AS(apply_config(config, {{"sizes", "1000,"}}), ConfigError);
    CHECK_THROWS_AS(apply_config(config, {{"standardize", "maybe"}}), ConfigError);
}

TEST_CASE("generate writes a header plus n rows") {
    TempDir dir;
    auto r = invoke({"generate", "--n", "10000", "--seed", "3", "--out", dir.file("d.csv")});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("label-1 fraction:") != std::string::npos);
    auto csv = slurp(dir.file("d.csv"));
    CHECK(line_count(csv) == 10001);
    CHECK(csv.rfind("credit,risk,label\n", 0) == 0);

    auto stdout_run = invoke({"generate", "--n", "10000", "--seed", "3"});
    CHECK(stdout_run.out == csv);
}

TEST_CASE("usage errors exit with 2") {
    auto r = invoke({"generate", "--n", "0"});
    CHECK(r.code == 2);
    CHECK(r.err.find("'n'") != std::string::npos);

    CHECK(invoke({"explain", "--credit", "0", "--risk", "0", "--sampler", "uniform"}).code == 2);
    CHECK(invoke({"explain", "--credit", "0"}).code == 2);
    CHECK(invoke({"explain", "--credit", "abc", "--risk", "0"}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"generate", "--unknown", "1"}).code == 2);
    CHECK(invoke({"generate", "--config", "/nonexistent/prolime.cfg"}).code == 2);
    CHECK(invoke({"plot", "--kind", "pie"}).code == 2);
    CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("malformed dataset for plotting reports the line") {
    TempDir dir;
    spit(dir.file("bad.csv"), "credit,risk,label\n0.1,0.2,1\n0.3,oops,0\n");
    auto r = invoke({"plot", "--kind", "data", "--input", dir.file("bad.csv"), "--out", dir.file("p.svg")});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 3") != std::string::npos);
    CHECK(!fs::exists(dir.file("p.svg")));

    spit(dir.file("good.csv"), "credit,risk,label\n0.1,0.2,1\n0.3,-2,0\n");
    r = invoke({"plot", "--kind", "data", "--input", dir.file("good.csv"), "--out", dir.file("p.svg")});
    CHECK(r.code == 0);
    CHECK(slurp(dir.file("p.svg")).find("</svg>") != std::string::npos);
}

TEST_CASE("explain prints the expected sign pattern") {
    for (std::string sampler : {"standard", "process-aware"}) {
        auto r = invoke({"explain", "--credit", "0.41", "--risk", "-0.51", "--sampler", sampler});
        REQUIRE(r.code == 0);
        auto doc = nlohmann::json::parse(r.out);
        CHECK(doc["predicted"][0] == 0.0);
        CHECK(doc["predicted"][1] == 1.0);
        CHECK(doc["coefficients"]["Credit"].get<double>() < 0.0);
        CHECK(doc["coefficients"]["Risk"].get<double>() > 0.0);
        CHECK(doc["ranked"].size() == 2);
        CHECK(invoke({"explain", "--credit", "0.41", "--risk", "-0.51", "--sampler", sampler}).out == r.out);
    }
}

TEST_CASE("constant model explanation is flat") {
    auto r = invoke({"explain", "--credit", "0.3", "--risk", "0.2", "--constant-model"});
    REQUIRE(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(std::abs(doc["coefficients"]["Credit"].get<double>()) < 1e-9);
    CHECK(std::abs(doc["coefficients"]["Risk"].get<double>()) < 1e-9);
    CHECK(doc["intercept"].get<double>() == doctest::Approx(0.5));
}

TEST_CASE("flags override the config file which overrides the environment") {
    TempDir dir;
    spit(dir.file("run.cfg"), "seed = 5\nn = 50\n");
    auto from_file = invoke({"generate", "--config", dir.file("run.cfg")});
    auto explicit_five = invoke({"generate", "--n", "50", "--seed", "5"});
    CHECK(from_file.out == explicit_five.out);

    auto overridden = invoke({"generate", "--config", dir.file("run.cfg"), "--seed", "6"});
    CHECK(overridden.out == invoke({"generate", "--n", "50", "--seed", "6"}).out);
    CHECK(overridden.out != from_file.out);

    ::setenv("PROLIME_SEED", "6", 1);
    auto env_seeded = invoke({"generate", "--n", "50"});
    auto env_vs_file = invoke({"generate", "--config", dir.file("run.cfg")});
    ::setenv("PROLIME_SEED", "junk", 1);
    auto env_bad = invoke({"generate", "--n", "50"});
    ::unsetenv("PROLIME_SEED");
    CHECK(env_seeded.out == overridden.out);
    CHECK(env_vs_file.out == from_file.out);
    CHECK(env_bad.code == 2);
}

TEST_CASE("evaluate with few trials") {
    TempDir dir;
    auto start = std::chrono::steady_clock::now();
    auto r = invoke({"evaluate", "--trials", "5", "--out", dir.file("table.csv")});
    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    REQUIRE(r.code == 0);
    CHECK(elapsed < 10.0);
    CHECK(r.out.find("process-aware") != std::string::npos);
    auto csv = slurp(dir.file("table.csv"));
    CHECK(csv.find("# trials=5\n") != std::string::npos);
    CHECK(fs::exists(dir.file("table.json")));
    auto doc = nlohmann::json::parse(slurp(dir.file("table.json")));
    CHECK(doc["trials"].size() == 5);

    auto again = invoke({"evaluate", "--trials", "5", "--threads", "2", "--out", dir.file("again.csv"),
                         "--json-out", dir.file("again.json")});
    REQUIRE(again.code == 0);
    CHECK(slurp(dir.file("again.csv")) == csv);
    CHECK(r.out == again.out);
}
