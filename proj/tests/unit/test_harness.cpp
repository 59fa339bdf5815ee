#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hrgvc/errors.hpp"
#include "hrgvc/harness.hpp"

using namespace hrgvc;
using namespace hrgvc::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / "hrgvc-tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) out.push_back(f);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

ExperimentSpec small_spec() {
    ExperimentSpec s;
    s.ns = {300};
    s.c = 0.0;
    s.seeds = {1, 2, 3};
    s.algorithms = {Algorithm::Standard, Algorithm::AdaptedDegree, Algorithm::AdaptedRadius};
    s.threads = 1;
    return s;
}

} // namespace

TEST_CASE("algorithm list parsing") {
    CHECK(parse_algorithms("standard,exact") == std::vector<Algorithm>{Algorithm::Standard, Algorithm::Exact});
    CHECK_THROWS_AS(parse_algorithms("standard,fastest"), ContractError);
    CHECK(to_string(Algorithm::AdaptedRadius) == "adapted-radius");
}

TEST_CASE("relative error follows the omission rule") {
    ExactResult opt;
    opt.upper_bound = opt.lower_bound = 10;
    CHECK_FALSE(relative_error(10, 10, opt));
    CHECK(*relative_error(10, 12, opt) == 0.0);
    CHECK(*relative_error(11, 12, opt) == doctest::Approx(0.5));
    opt.status = ExactStatus::LowerBoundOnly;
    CHECK_FALSE(relative_error(11, 12, opt));
}

TEST_CASE("config hash") {
    auto a = small_spec();
    auto b = small_spec();
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a).size() == 16);
    b.seeds = {9};
    CHECK(config_hash(a) == config_hash(b));
    b.c = 0.5;
    CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("radius ordering on files needs a sidecar") {
    ExperimentSpec s;
    s.inputs = {"graph.edges"};
    s.algorithms = {Algorithm::AdaptedRadius};
    CHECK_THROWS_AS(validate(s), ContractError);
    s.algorithms = {Algorithm::Standard};
    CHECK_NOTHROW(validate(s));
}

TEST_CASE("solve output is stable and ordered") {
    auto spec = small_spec();
    std::ostringstream csv, log;
    const auto summary = cmd_solve(spec, csv, log);
    CHECK(summary.exit_code == 0);
    const auto rows = lines(csv.str());
    REQUIRE(rows.size() == 10);
    CHECK(rows[0] == kCsvHeader);
    CHECK(rows[0] == "graph,n,m,algorithm,seed,cover_size,opt_status,lower_bound,ratio,ratio_is_bound,relative_error,"
                     "greedy_count,exact_cover_count,time_ms");
    std::vector<std::pair<std::string, std::string>> keys;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto f = split(rows[i]);
        REQUIRE(f.size() == 14);
        CHECK(f[0].find('@' + config_hash(spec)) != std::string::npos);
        keys.emplace_back(f[3], f[4]);
    }
    CHECK(keys.front() == std::pair<std::string, std::string>{"standard", "1"});
    CHECK(keys[1] == std::pair<std::string, std::string>{"standard", "2"});
    CHECK(keys[3] == std::pair<std::string, std::string>{"adapted-degree", "1"});

    // cover sizes do not depend on the thread count
    spec.threads = 3;
    std::ostringstream csv3;
    cmd_solve(spec, csv3, log);
    const auto rows3 = lines(csv3.str());
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(split(rows[i])[5] == split(rows3[i])[5]);
}

TEST_CASE("evaluate never reports a ratio below one") {
    auto spec = small_spec();
    spec.algorithms = {Algorithm::Standard, Algorithm::AdaptedDegree, Algorithm::Exact};
    std::ostringstream csv, log;
    CHECK(cmd_evaluate(spec, csv, log).exit_code == 0);
    const auto rows = lines(csv.str());
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto f = split(rows[i]);
        CHECK(f[6] == "optimal");
        CHECK(std::stod(f[8]) >= 1.0);
        if (f[3] == "exact") CHECK(f[8] == "1.000000");
    }
}

TEST_CASE("generate is deterministic and records metadata") {
    auto spec = small_spec();
    spec.command = Command::Generate;
    spec.ns = {100};
    spec.seeds = {1};
    std::ostringstream log;
    spec.output = scratch("det-a").string();
    cmd_generate(spec, log);
    spec.output = scratch("det-b").string();
    cmd_generate(spec, log);
    CHECK(slurp(scratch("det-a.edges")) == slurp(scratch("det-b.edges")));
    CHECK(slurp(scratch("det-a.coords")) == slurp(scratch("det-b.coords")));
    const auto coords = slurp(scratch("det-a.coords"));
    CHECK(coords.find("# rng: std::mt19937_64") != std::string::npos);
    CHECK(coords.find("# seed: 1") != std::string::npos);

    spec.mode = SamplingMode::PoissonN;
    spec.seeds = {4, 5};
    spec.output = scratch("pois").string();
    cmd_generate(spec, log);
    const auto paths = generated_paths(spec.output, 100, 5, false, true);
    std::ifstream in(paths.coords);
    const auto file = read_coordinates(in);
    REQUIRE(file.find("realized_n"));
    CHECK(std::stoul(*file.find("realized_n")) == file.points.size());
    CHECK(*file.find("mode") == "poisson");
}

TEST_CASE("solve reads generated files back") {
    auto gen = small_spec();
    gen.command = Command::Generate;
    gen.seeds = {7};
    gen.output = scratch("roundtrip").string();
    std::ostringstream log;
    cmd_generate(gen, log);

    ExperimentSpec solve;
    solve.inputs = {gen.output + ".edges"};
    solve.coords = {gen.output + ".coords"};
    solve.algorithms = {Algorithm::AdaptedRadius};
    std::ostringstream csv;
    CHECK(cmd_solve(solve, csv, log).exit_code == 0);

    auto direct = small_spec();
    direct.seeds = {7};
    direct.algorithms = {Algorithm::AdaptedRadius};
    std::ostringstream csv2;
    cmd_solve(direct, csv2, log);
    CHECK(split(lines(csv.str())[1])[5] == split(lines(csv2.str())[1])[5]);
    CHECK(split(lines(csv.str())[1])[4] == "7");
}

TEST_CASE("failing jobs set a nonzero exit code") {
    ExperimentSpec spec;
    spec.inputs = {scratch("does-not-exist.edges").string()};
    std::ostringstream csv, log;
    const auto s = cmd_solve(spec, csv, log);
    CHECK(s.exit_code != 0);
    CHECK(split(lines(csv.str())[1])[6] == "error");
    CHECK(log.str().find("does-not-exist") != std::string::npos);
}

TEST_CASE("diagnose reports rows and clean errors") {
    auto spec = small_spec();
    spec.command = Command::Diagnose;
    spec.ns = {10000};
    spec.c = 2.0;
    spec.seeds = {1};
    spec.taus = {1.0, 0.2};
    std::ostringstream csv, report, log;
    const auto s = cmd_diagnose(spec, csv, report, log);
    CHECK(s.exit_code != 0);
    const auto rows = lines(csv.str());
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].back() == ',');
    CHECK(log.str().find("minimum admissible n") != std::string::npos);
    CHECK(report.str().find("inner disk") != std::string::npos);
}
