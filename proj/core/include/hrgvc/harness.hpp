#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hrgvc/diagnostics.hpp"
#include "hrgvc/generator.hpp"
#include "hrgvc/graph.hpp"
#include "hrgvc/vertex_cover.hpp"

namespace hrgvc::harness {

enum class Command { Generate, Solve, Evaluate, Diagnose, Calibrate };
enum class Algorithm { Standard, AdaptedDegree, AdaptedRadius, Exact };

std::string_view to_string(Algorithm a) noexcept;
/// Parses a comma list of standard, adapted-degree, adapted-radius, exact.
std::vector<Algorithm> parse_algorithms(const std::string& list);

struct ExperimentSpec {
    Command command = Command::Solve;

    // generated inputs
    std::vector<std::uint64_t> ns{1000};
    double alpha = 0.75;
    std::optional<double> c;
    std::optional<double> avg_degree;
    int calibration_seeds = 5;
    SamplingMode mode = SamplingMode::FixedN;
    EdgeBuilder edge_builder = EdgeBuilder::Accelerated;
    std::vector<std::uint64_t> seeds{1};

    // file inputs; coords pairs with inputs by position
    std::vector<std::string> inputs;
    std::vector<std::string> coords;

    std::vector<Algorithm> algorithms{Algorithm::Standard, Algorithm::AdaptedDegree};
    std::vector<double> taus{10.0};
    std::optional<std::size_t> component_limit;
    std::chrono::milliseconds time_limit{60'000};

    std::string output; // empty: stdout
    unsigned threads = 0; // 0: hardware concurrency
};

/// Throws ContractError for inconsistent specs, before any work starts.
void validate(const ExperimentSpec& spec);

/// 16 hex digits of FNV-1a over the canonical configuration (seed excluded).
std::string config_hash(const ExperimentSpec& spec);

/// C from --c, or calibrated from --avg-degree for the given n.
double resolve_c(const ExperimentSpec& spec, std::uint64_t n);

/// Component cap for the degree-ordered adapted greedy: --component-limit if
/// given, else tau * ceil(ln ln n).
std::size_t harness_component_limit(const ExperimentSpec& spec, std::size_t n);

inline constexpr const char* kCsvHeader =
    "graph,n,m,algorithm,seed,cover_size,opt_status,lower_bound,ratio,ratio_is_bound,relative_error,"
    "greedy_count,exact_cover_count,time_ms";

struct ResultRow {
    std::string graph;
    std::size_t n = 0;
    std::size_t m = 0;
    Algorithm algorithm = Algorithm::Standard;
    std::uint64_t seed = 0;
    std::size_t cover_size = 0;
    std::string opt_status; // optimal, bound, none, error
    std::optional<std::size_t> lower_bound;
    std::optional<Ratio> ratio;
    std::optional<double> relative_error;
    std::size_t greedy_count = 0;
    std::size_t exact_cover_count = 0;
    double time_ms = 0.0;
    std::string error;
};

std::string format_row(const ResultRow& row);

/// (adapted - opt) / (standard - opt); empty when standard is optimal or the
/// optimum is not exact.
std::optional<double> relative_error(std::size_t adapted, std::size_t standard, const ExactResult& opt);

/// One loaded or generated graph plus its provenance.
struct GraphJob {
    std::string name;
    std::uint64_t seed = 0;
    Graph graph;
    std::optional<ModelParams> params; // known for generated graphs or from sidecar metadata
    std::string model = "fixed";
};

/// Runs the selected algorithms on one graph. With `with_exact` the exact
/// solver provides opt_status, bounds, ratios and relative errors.
std::vector<ResultRow> run_algorithms(const GraphJob& job, const ExperimentSpec& spec, bool with_exact);

struct RunSummary {
    int exit_code = 0;
    std::size_t rows = 0;
    std::size_t errors = 0;
};

RunSummary cmd_generate(const ExperimentSpec& spec, std::ostream& log);
RunSummary cmd_solve(const ExperimentSpec& spec, std::ostream& csv, std::ostream& log);
RunSummary cmd_evaluate(const ExperimentSpec& spec, std::ostream& csv, std::ostream& log);
RunSummary cmd_diagnose(const ExperimentSpec& spec, std::ostream& csv, std::ostream& report, std::ostream& log);
RunSummary cmd_calibrate(const ExperimentSpec& spec, std::ostream& csv, std::ostream& log);

/// Dispatches on spec.command; opens spec.output when set.
int run(const ExperimentSpec& spec, std::ostream& out, std::ostream& log);

/// Files written by cmd_generate for one seed.
struct GeneratedPaths {
    std::string edges;
    std::string coords;
};
/// Seed and n suffixes are added only when the run covers several of them.
GeneratedPaths generated_paths(const std::string& base, std::uint64_t n, std::uint64_t seed, bool several_n,
                               bool several_seeds);

} // namespace hrgvc::harness
