#include "hrgvc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "hrgvc/errors.hpp"

namespace hrgvc::harness {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

double to_ms(std::chrono::nanoseconds ns) { return std::chrono::duration<double, std::milli>(ns).count(); }

std::string fmt(double x, int digits = 6) {
    std::ostringstream os;
    os << std::setprecision(digits) << x;
    return os.str();
}

std::string shortest(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    (void)ec;
    return std::string(buf, ptr);
}

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string stem_of(const std::string& path) { return std::filesystem::path(path).stem().string(); }

template <typename T>
std::string join(const std::vector<T>& values, const std::function<std::string(const T&)>& f) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += f(values[i]);
    }
    return out;
}

// Runs body(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, count)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) body(i);
        });
    }
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

std::optional<double> parse_double(const std::optional<std::string>& text) {
    if (!text) return std::nullopt;
    double x = 0.0;
    auto [ptr, ec] = std::from_chars(text->data(), text->data() + text->size(), x);
    if (ec != std::errc{}) return std::nullopt;
    return x;
}

// A graph to materialize inside a worker. graph_index orders output rows.
struct JobDesc {
    std::size_t graph_index = 0;
    std::uint64_t seed = 0;
    std::function<GraphJob()> make;
};

std::vector<JobDesc> plan_jobs(const ExperimentSpec& spec, const std::string& hash) {
    std::vector<JobDesc> jobs;
    if (!spec.inputs.empty()) {
        for (std::size_t i = 0; i < spec.inputs.size(); ++i) {
            const std::string path = spec.inputs[i];
            const std::optional<std::string> coords =
                i < spec.coords.size() ? std::optional<std::string>(spec.coords[i]) : std::nullopt;
            jobs.push_back({i, 0, [path, coords, hash] {
                                GraphJob job;
                                job.name = stem_of(path) + "@" + hash;
                                auto in = open_in(path);
                                job.graph = read_edge_list(in).graph;
                                if (coords) {
                                    auto cin = open_in(*coords);
                                    auto file = read_coordinates(cin);
                                    job.graph = with_coordinates(job.graph, std::move(file.points));
                                    const auto n = parse_double(file.find("n"));
                                    const auto alpha = parse_double(file.find("alpha"));
                                    const auto c = parse_double(file.find("C"));
                                    if (n && alpha && c) {
                                        job.params.emplace(static_cast<std::uint64_t>(*n), *alpha, *c);
                                    }
                                    if (auto mode = file.find("mode")) job.model = *mode;
                                    if (auto seed = parse_double(file.find("seed"))) {
                                        job.seed = static_cast<std::uint64_t>(*seed);
                                    }
                                }
                                return job;
                            }});
        }
        return jobs;
    }
    for (std::size_t ni = 0; ni < spec.ns.size(); ++ni) {
        const ModelParams params(spec.ns[ni], spec.alpha, resolve_c(spec, spec.ns[ni]));
        for (auto seed : spec.seeds) {
            jobs.push_back({ni, seed, [params, seed, &spec, hash] {
                                GraphJob job;
                                job.name = "hrg-n" + std::to_string(params.n()) + "@" + hash;
                                job.seed = seed;
                                job.params = params;
                                job.model = std::string(to_string(spec.mode));
                                job.graph = generate({params, seed, spec.mode, spec.edge_builder});
                                return job;
                            }});
        }
    }
    return jobs;
}

} // namespace

std::string_view to_string(Algorithm a) noexcept {
    switch (a) {
    case Algorithm::Standard: return "standard";
    case Algorithm::AdaptedDegree: return "adapted-degree";
    case Algorithm::AdaptedRadius: return "adapted-radius";
    case Algorithm::Exact: return "exact";
    }
    return "unknown";
}

std::vector<Algorithm> parse_algorithms(const std::string& list) {
    std::vector<Algorithm> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "standard") out.push_back(Algorithm::Standard);
        else if (item == "adapted-degree") out.push_back(Algorithm::AdaptedDegree);
        else if (item == "adapted-radius") out.push_back(Algorithm::AdaptedRadius);
        else if (item == "exact") out.push_back(Algorithm::Exact);
        else throw ContractError("unknown algorithm '" + item + "'");
    }
    if (out.empty()) throw ContractError("no algorithms selected");
    return out;
}

void validate(const ExperimentSpec& spec) {
    const bool radius = std::find(spec.algorithms.begin(), spec.algorithms.end(), Algorithm::AdaptedRadius)
                        != spec.algorithms.end();
    const bool solving = spec.command == Command::Solve || spec.command == Command::Evaluate;
    if (solving && radius && !spec.inputs.empty() && spec.coords.size() < spec.inputs.size()) {
        throw ContractError("adapted-radius needs vertex radii: pass one --coords sidecar per --input");
    }
    if (spec.command == Command::Diagnose && !spec.inputs.empty() && spec.coords.size() < spec.inputs.size()) {
        throw ContractError("diagnose needs a --coords sidecar for every --input");
    }
    if (spec.coords.size() > spec.inputs.size()) throw ContractError("more --coords than --input files");
    if (spec.taus.empty()) throw ContractError("no tau given");
    for (double t : spec.taus) {
        if (!(t > 0.0)) throw ContractError("tau must be positive");
    }
    if (spec.component_limit && *spec.component_limit == 0) throw ContractError("component limit must be >= 1");
    const bool generated = spec.inputs.empty() && spec.command != Command::Calibrate;
    if (spec.command == Command::Calibrate && !spec.avg_degree) {
        throw ContractError("calibrate needs --avg-degree");
    }
    if (generated || spec.command == Command::Calibrate) {
        if (spec.ns.empty()) throw ContractError("no --n given");
        if (spec.seeds.empty()) throw ContractError("no --seed given");
        if (!(spec.alpha > 0.5 && spec.alpha < 1.0)) throw ContractError("alpha must lie in (1/2, 1)");
        if (spec.command != Command::Calibrate && !spec.c && !spec.avg_degree) {
            throw ContractError("generated graphs need --c or --avg-degree");
        }
    }
    if (spec.command == Command::Generate && spec.output.empty()) {
        throw ContractError("generate needs --output (base path for .edges/.coords)");
    }
}

std::string config_hash(const ExperimentSpec& spec) {
    std::ostringstream os;
    os << "cmd=" << static_cast<int>(spec.command);
    os << ";n=" << join<std::uint64_t>(spec.ns, [](const auto& x) { return std::to_string(x); });
    os << ";alpha=" << shortest(spec.alpha);
    if (spec.c) os << ";c=" << shortest(*spec.c);
    if (spec.avg_degree) os << ";deg=" << shortest(*spec.avg_degree) << ";cal=" << spec.calibration_seeds;
    os << ";mode=" << to_string(spec.mode) << ";builder=" << to_string(spec.edge_builder);
    os << ";in=" << join<std::string>(spec.inputs, [](const auto& x) { return x; });
    os << ";coords=" << join<std::string>(spec.coords, [](const auto& x) { return x; });
    os << ";alg=" << join<Algorithm>(spec.algorithms, [](const auto& a) { return std::string(to_string(a)); });
    os << ";tau=" << join<double>(spec.taus, [](const auto& t) { return shortest(t); });
    if (spec.component_limit) os << ";limit=" << *spec.component_limit;
    os << ";time=" << spec.time_limit.count();
    os << ";rng=" << kRandomEngineName;
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << fnv1a(os.str());
    return hex.str();
}

double resolve_c(const ExperimentSpec& spec, std::uint64_t n) {
    if (spec.c) return *spec.c;
    if (!spec.avg_degree) throw ContractError("need --c or --avg-degree");
    return calibrate_c(*spec.avg_degree, n, spec.alpha, spec.calibration_seeds);
}

std::size_t harness_component_limit(const ExperimentSpec& spec, std::size_t n) {
    if (spec.component_limit) return *spec.component_limit;
    return protocol_component_limit(n, spec.taus.front());
}

std::optional<double> relative_error(std::size_t adapted, std::size_t standard, const ExactResult& opt) {
    if (opt.status != ExactStatus::Optimal) return std::nullopt;
    const auto best = opt.upper_bound;
    if (standard <= best) return std::nullopt;
    return static_cast<double>(adapted - std::min(adapted, best)) / static_cast<double>(standard - best);
}

std::string format_row(const ResultRow& r) {
    std::ostringstream os;
    os << r.graph << ',' << r.n << ',' << r.m << ',' << to_string(r.algorithm) << ',' << r.seed << ',';
    if (r.error.empty()) os << r.cover_size;
    os << ',' << r.opt_status << ',';
    if (r.lower_bound) os << *r.lower_bound;
    os << ',';
    if (r.ratio) os << std::fixed << std::setprecision(6) << r.ratio->value << std::defaultfloat;
    os << ',';
    if (r.ratio) os << (r.ratio->is_bound ? 1 : 0);
    os << ',';
    if (r.relative_error) os << std::fixed << std::setprecision(6) << *r.relative_error << std::defaultfloat;
    os << ',';
    if (r.error.empty()) os << r.greedy_count << ',' << r.exact_cover_count;
    else os << ',';
    os << ',' << std::fixed << std::setprecision(3) << r.time_ms;
    return os.str();
}

std::vector<ResultRow> run_algorithms(const GraphJob& job, const ExperimentSpec& spec, bool with_exact) {
    const Graph& g = job.graph;
    const std::size_t limit = harness_component_limit(spec, g.vertex_count());
    const bool wants_exact = with_exact
                             || std::find(spec.algorithms.begin(), spec.algorithms.end(), Algorithm::Exact)
                                    != spec.algorithms.end();

    std::optional<ExactResult> opt;
    std::string exact_error;
    if (wants_exact) {
        try {
            opt = exact_cover(g, spec.time_limit);
            if (!is_vertex_cover(g, opt->cover)) throw std::logic_error("exact solver returned an invalid cover");
        } catch (const std::exception& e) {
            exact_error = e.what();
            opt.reset();
        }
    }
    std::optional<CoverResult> standard;
    const auto standard_cover = [&]() -> const CoverResult& {
        if (!standard) standard = standard_greedy(g);
        return *standard;
    };

    std::vector<ResultRow> rows;
    for (Algorithm a : spec.algorithms) {
        ResultRow row;
        row.graph = job.name;
        row.n = g.vertex_count();
        row.m = g.edge_count();
        row.algorithm = a;
        row.seed = job.seed;
        row.opt_status = "none";
        try {
            CoverResult result;
            switch (a) {
            case Algorithm::Standard: result = standard_cover(); break;
            case Algorithm::AdaptedDegree: result = adapted_greedy_degree(g, limit); break;
            case Algorithm::AdaptedRadius: result = adapted_greedy_radius_with_limit(g, limit); break;
            case Algorithm::Exact:
                if (!opt) throw std::runtime_error("exact solver failed: " + exact_error);
                result.cover = opt->cover;
                result.exact_region_cover_count = opt->cover.size();
                result.elapsed = opt->elapsed;
                break;
            }
            if (!is_vertex_cover(g, result.cover)) throw std::logic_error("invalid vertex cover");
            row.cover_size = result.cover.size();
            row.greedy_count = result.greedy_count;
            row.exact_cover_count = result.exact_region_cover_count;
            row.time_ms = to_ms(result.elapsed);
            if (opt) {
                row.opt_status = opt->status == ExactStatus::Optimal ? "optimal" : "bound";
                row.lower_bound = opt->lower_bound;
                row.ratio = approximation_ratio(row.cover_size, *opt);
                if (a == Algorithm::AdaptedDegree || a == Algorithm::AdaptedRadius) {
                    row.relative_error = relative_error(row.cover_size, standard_cover().cover.size(), *opt);
                }
            }
        } catch (const std::exception& e) {
            row.opt_status = "error";
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

RunSummary run_cover_jobs(const ExperimentSpec& spec, std::ostream& csv, std::ostream& log, bool with_exact) {
    validate(spec);
    const std::string hash = config_hash(spec);
    const auto jobs = plan_jobs(spec, hash);
    std::vector<std::vector<ResultRow>> results(jobs.size());
    std::mutex log_mutex;
    parallel_for(jobs.size(), spec.threads, [&](std::size_t i) {
        try {
            const GraphJob job = jobs[i].make();
            results[i] = run_algorithms(job, spec, with_exact);
        } catch (const std::exception& e) {
            ResultRow row;
            row.graph = spec.inputs.empty() ? "hrg@" + hash : stem_of(spec.inputs[jobs[i].graph_index]) + "@" + hash;
            row.seed = jobs[i].seed;
            row.opt_status = "error";
            row.error = e.what();
            for (Algorithm a : spec.algorithms) {
                row.algorithm = a;
                results[i].push_back(row);
            }
        }
    });

    struct Keyed {
        std::size_t graph;
        std::size_t algorithm;
        std::uint64_t seed;
        const ResultRow* row;
    };
    std::vector<Keyed> order;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        for (std::size_t k = 0; k < results[i].size(); ++k) {
            order.push_back({jobs[i].graph_index, k, jobs[i].seed, &results[i][k]});
        }
    }
    std::stable_sort(order.begin(), order.end(), [](const Keyed& a, const Keyed& b) {
        return std::tie(a.graph, a.algorithm, a.seed) < std::tie(b.graph, b.algorithm, b.seed);
    });

    RunSummary summary;
    csv << kCsvHeader << '\n';
    for (const auto& k : order) {
        csv << format_row(*k.row) << '\n';
        ++summary.rows;
        if (!k.row->error.empty()) {
            ++summary.errors;
            std::lock_guard lock(log_mutex);
            log << "error: " << k.row->graph << " seed " << k.row->seed << " " << to_string(k.row->algorithm) << ": "
                << k.row->error << '\n';
        }
    }
    summary.exit_code = summary.errors ? 1 : 0;
    return summary;
}

} // namespace

RunSummary cmd_solve(const ExperimentSpec& spec, std::ostream& csv, std::ostream& log) {
    return run_cover_jobs(spec, csv, log, false);
}

RunSummary cmd_evaluate(const ExperimentSpec& spec, std::ostream& csv, std::ostream& log) {
    return run_cover_jobs(spec, csv, log, true);
}

GeneratedPaths generated_paths(const std::string& base, std::uint64_t n, std::uint64_t seed, bool several_n,
                               bool several_seeds) {
    std::string stem = base;
    if (several_n) stem += "-n" + std::to_string(n);
    if (several_seeds) stem += "-s" + std::to_string(seed);
    return {stem + ".edges", stem + ".coords"};
}

RunSummary cmd_generate(const ExperimentSpec& spec, std::ostream& log) {
    validate(spec);
    const std::string hash = config_hash(spec);
    RunSummary summary;
    for (auto n : spec.ns) {
        const ModelParams params(n, spec.alpha, resolve_c(spec, n));
        for (auto seed : spec.seeds) {
            const auto t0 = Clock::now();
            const Graph g = generate({params, seed, spec.mode, spec.edge_builder});
            const auto paths = generated_paths(spec.output, n, seed, spec.ns.size() > 1, spec.seeds.size() > 1);
            const double avg = g.vertex_count() ? 2.0 * static_cast<double>(g.edge_count())
                                                      / static_cast<double>(g.vertex_count())
                                                : 0.0;
            const std::vector<std::pair<std::string, std::string>> meta{
                {"generator", "hrgvc hyperbolic random graph"},
                {"rng", std::string(kRandomEngineName)},
                {"seed", std::to_string(seed)},
                {"n", std::to_string(n)},
                {"alpha", shortest(params.alpha())},
                {"C", shortest(params.c())},
                {"R", shortest(params.radius())},
                {"beta", shortest(params.beta())},
                {"mode", std::string(to_string(spec.mode))},
                {"edge_builder", std::string(to_string(spec.edge_builder))},
                {"realized_n", std::to_string(g.vertex_count())},
                {"m", std::to_string(g.edge_count())},
                {"average_degree", shortest(avg)},
                {"config_hash", hash},
            };
            {
                auto out = open_out(paths.edges);
                write_edge_list(out, g);
            }
            {
                auto out = open_out(paths.coords);
                write_coordinates(out, g.coordinates(), meta);
            }
            log << "wrote " << paths.edges << " and " << paths.coords << " (n=" << g.vertex_count()
                << ", m=" << g.edge_count() << ", avg degree " << fmt(avg, 4) << ", " << fmt(ms_since(t0), 4)
                << " ms)\n";
            ++summary.rows;
        }
    }
    return summary;
}

RunSummary cmd_diagnose(const ExperimentSpec& spec, std::ostream& csv, std::ostream& report, std::ostream& log) {
    validate(spec);
    const std::string hash = config_hash(spec);
    const auto jobs = plan_jobs(spec, hash);

    struct Entry {
        std::string graph;
        std::uint64_t seed = 0;
        std::string model;
        double tau = 0.0;
        std::optional<BoundsReport> report;
        std::string error;
    };
    std::vector<std::vector<Entry>> results(jobs.size());
    parallel_for(jobs.size(), spec.threads, [&](std::size_t i) {
        std::optional<GraphJob> job;
        std::string load_error;
        try {
            job = jobs[i].make();
        } catch (const std::exception& e) {
            load_error = e.what();
        }
        for (double tau : spec.taus) {
            Entry e;
            e.tau = tau;
            e.seed = jobs[i].seed;
            if (!job) {
                e.graph = "?@" + hash;
                e.error = load_error;
                results[i].push_back(std::move(e));
                continue;
            }
            e.graph = job->name;
            e.seed = job->seed;
            e.model = job->model;
            try {
                if (!job->params) throw std::runtime_error("model parameters (n, alpha, C) unknown for this graph");
                e.report = bounds_report(job->graph, *job->params, tau, job->model);
            } catch (const std::exception& ex) {
                e.error = ex.what();
            }
            results[i].push_back(std::move(e));
        }
    });

    RunSummary summary;
    std::vector<std::string> names;
    {
        BoundsReport empty;
        for (const auto& [name, value] : empty.fields()) names.push_back(name);
    }
    csv << "graph,seed,model";
    for (const auto& name : names) csv << ',' << name;
    csv << ",error\n";
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        for (const auto& e : results[i]) {
            ++summary.rows;
            csv << e.graph << ',' << e.seed << ',' << e.model;
            if (e.report) {
                for (const auto& [name, value] : e.report->fields()) csv << ',' << std::setprecision(10) << value;
                csv << ",\n";
            } else {
                for (std::size_t k = 0; k < names.size(); ++k) csv << ',';
                std::string msg = e.error;
                std::replace(msg.begin(), msg.end(), ',', ';');
                csv << ',' << msg << '\n';
                ++summary.errors;
                log << "error: " << e.graph << " seed " << e.seed << " tau " << e.tau << ": " << e.error << '\n';
                continue;
            }
            const auto& r = *e.report;
            report << "== " << e.graph << "  seed " << e.seed << "  model " << r.model << "  tau " << e.tau << '\n'
                   << "   n=" << r.n_realized << " (model n=" << r.n_model << ")  m=" << r.m << '\n'
                   << "   gamma=" << fmt(r.constants.gamma) << "  rho=" << fmt(r.constants.rho)
                   << "  w=" << fmt(r.constants.w) << "  sectors=" << r.constants.n_sectors
                   << "  component limit=" << r.constants.component_limit << '\n'
                   << "   inner disk        " << r.counts.inner_disk << "  predictor " << fmt(r.inner_predictor)
                   << "  ratio " << fmt(r.inner_ratio) << '\n'
                   << "   wide runs         " << r.counts.wide_run_vertices << "  predictor "
                   << fmt(r.wide_predictor) << "  ratio " << fmt(r.wide_ratio) << '\n'
                   << "   large narrow runs " << r.counts.large_narrow_vertices << "  predictor "
                   << fmt(r.large_narrow_predictor) << "  ratio " << fmt(r.large_narrow_ratio) << '\n'
                   << "   excess gamma^-alpha " << fmt(r.excess_ratio) << '\n'
                   << "   nonempty sectors  " << fmt(r.nonempty_sector_fraction) << "  bounds ["
                   << fmt(r.occupancy_bounds.lower) << ", " << fmt(r.occupancy_bounds.upper) << "]\n"
                   << "   widening sectors  " << r.widening_sectors << "  expected "
                   << fmt(r.expected_widening_sectors) << '\n'
                   << "   outer edges wider than a sector: " << r.outer_span_violations << '\n';
        }
    }
    summary.exit_code = summary.errors ? 1 : 0;
    return summary;
}

RunSummary cmd_calibrate(const ExperimentSpec& spec, std::ostream& csv, std::ostream& log) {
    validate(spec);
    RunSummary summary;
    csv << "n,alpha,target_avg_degree,c,calibration_avg_degree,verify_avg_degree\n";
    for (auto n : spec.ns) {
        try {
            const double c = calibrate_c(*spec.avg_degree, n, spec.alpha, spec.calibration_seeds);
            const ModelParams params(n, spec.alpha, c);
            const double fit = mean_average_degree(params, spec.calibration_seeds, 1);
            // fresh seeds, disjoint from the calibration ones
            double verify = 0.0;
            for (auto seed : spec.seeds) {
                verify += mean_average_degree(params, 1, seed + 1'000'000);
            }
            verify /= static_cast<double>(spec.seeds.size());
            csv << n << ',' << shortest(spec.alpha) << ',' << shortest(*spec.avg_degree) << ',' << shortest(c) << ','
                << fmt(fit) << ',' << fmt(verify) << '\n';
            ++summary.rows;
        } catch (const std::exception& e) {
            ++summary.errors;
            log << "error: n=" << n << ": " << e.what() << '\n';
        }
    }
    summary.exit_code = summary.errors ? 1 : 0;
    return summary;
}

int run(const ExperimentSpec& spec, std::ostream& out, std::ostream& log) {
    std::ofstream file;
    std::ofstream report_file;
    std::ostream* target = &out;
    if (!spec.output.empty() && spec.command != Command::Generate) {
        file = open_out(spec.output);
        target = &file;
    }
    RunSummary summary;
    switch (spec.command) {
    case Command::Generate: summary = cmd_generate(spec, log); break;
    case Command::Solve: summary = cmd_solve(spec, *target, log); break;
    case Command::Evaluate: summary = cmd_evaluate(spec, *target, log); break;
    case Command::Calibrate: summary = cmd_calibrate(spec, *target, log); break;
    case Command::Diagnose: {
        std::ostream* report = &log;
        if (!spec.output.empty()) {
            report_file = open_out(spec.output + ".report.txt");
            report = &report_file;
        }
        summary = cmd_diagnose(spec, *target, *report, log);
        break;
    }
    }
    return summary.exit_code;
}

} // namespace hrgvc::harness
