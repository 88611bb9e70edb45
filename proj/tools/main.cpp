#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "geogirth/generator.hpp"
#include "geogirth/graph.hpp"
#include "geogirth/instance_io.hpp"

namespace {

using namespace geogirth;
using namespace geogirth::cli;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitMismatch = 2;

struct AlgoOptions {
    std::string instance;
    bool verify = false;
    std::size_t oracle_cap = kDefaultOracleCap;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string bench;
    int repeats = 5;
    int runs = 1;
};

// Writes to --out when given, else to stdout.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot write " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

int emit_bench(Command c, const std::vector<std::size_t>& sizes, int repeats, int runs, std::uint64_t seed,
               const std::string& out) {
    Sink sink(out);
    std::ostream& os = sink.stream();
    os << "n,repeat,seconds,answer\n";
    const auto rows = run_bench(c, sizes, repeats, seed, [&](const BenchRow& r) {
        os << r.n << ',' << r.repeat << ',' << format_real(r.seconds) << ',' << r.answer << '\n';
        os.flush();
    }, runs);
    const auto med = bench_medians(rows, sizes);
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        std::cerr << command_name(c) << " n=" << sizes[i] << " median=" << med[i] << "s";
        if (i > 0 && med[i - 1] > 0.0) std::cerr << " ratio=" << med[i] / med[i - 1];
        std::cerr << '\n';
    }
    return kExitOk;
}

int run_command(Command c, const AlgoOptions& o) {
    const std::uint64_t seed = resolve_seed(o.seed);
    if (!o.bench.empty()) return emit_bench(c, parse_sizes(o.bench), o.repeats, o.runs, seed, o.out);
    if (o.instance.empty()) throw CLI::ValidationError("an instance file is required unless --bench is given");

    const SiteSet sites = read_instance(std::filesystem::path(o.instance));
    const auto t0 = std::chrono::steady_clock::now();
    const Answer answer = run_algorithm(c, sites, seed);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    Sink sink(o.out);
    std::ostream& os = sink.stream();
    os << "command: " << command_name(c) << '\n';
    os << "instance: " << o.instance << '\n';
    os << "n: " << sites.size() << '\n';
    os << "seed: " << seed << '\n';
    os << "answer: " << answer.describe(c) << '\n';
    os << "seconds: " << format_real(seconds) << '\n';

    int code = kExitOk;
    if (o.verify) {
        if (sites.size() <= o.oracle_cap) {
            const bool agree = answers_agree(c, sites, answer, run_oracle(c, sites));
            os << "oracle: " << (agree ? "agree" : "mismatch") << '\n';
            if (!agree) code = kExitMismatch;
        } else {
            std::cerr << "note: n = " << sites.size() << " exceeds the oracle cap " << o.oracle_cap
                      << "; verification skipped\n";
        }
    }
    return code;
}

int run_verify(const std::vector<std::string>& files, std::size_t cap, std::optional<std::uint64_t> seed_flag) {
    const std::uint64_t seed = resolve_seed(seed_flag);
    int code = kExitOk;
    for (const std::string& f : files) {
        const SiteSet sites = read_instance(std::filesystem::path(f));
        for (Command c : kAllCommands) {
            std::cout << f << ' ' << command_name(c) << ' ';
            if (sites.size() > cap) {
                std::cout << "skipped\n";
                continue;
            }
            const Answer fast = run_algorithm(c, sites, seed);
            const bool agree = answers_agree(c, sites, fast, run_oracle(c, sites));
            std::cout << (agree ? "agree" : "MISMATCH") << ' ' << fast.describe(c) << '\n';
            if (!agree) code = kExitMismatch;
        }
    }
    return code;
}

const char* describe_command(Command c) {
    switch (c) {
        case Command::Triangle: return "Find a triangle in the disk intersection graph";
        case Command::ShortestTriangle: return "Shortest-perimeter triangle in the disk intersection graph";
        case Command::Girth: return "Girth (fewest edges on a cycle) of the disk intersection graph";
        case Command::WeightedGirth: return "Shortest Euclidean cycle in the disk intersection graph";
        case Command::TxTriangle: return "Find a directed triangle in the transmission graph";
        case Command::TxShortestTriangle: return "Shortest-perimeter directed triangle in the transmission graph";
    }
    return "";
}

void add_algorithm(CLI::App& app, Command c, AlgoOptions& o, std::optional<Command>& chosen) {
    CLI::App* sub = app.add_subcommand(std::string(command_name(c)), describe_command(c));
    sub->add_option("instance", o.instance, "Instance file (first line n, then x y r per line)");
    sub->add_flag("--verify", o.verify, "Compare with the brute-force oracle");
    sub->add_option("--oracle-cap", o.oracle_cap, "Largest n for which the oracle runs")->capture_default_str();
    sub->add_option("--seed", o.seed, "Random seed for the optimization framework (env GEOGIRTH_SEED)");
    sub->add_option("--out", o.out, "Write the report (or CSV) here instead of stdout");
    sub->add_option("--bench", o.bench, "Benchmark series instead of one run, e.g. sizes=4096..65536");
    sub->add_option("--repeats", o.repeats, "Repeats per benchmark size")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--runs", o.runs, "Timed runs per instance, fastest kept")->capture_default_str()->check(CLI::PositiveNumber);
    sub->callback([&chosen, c] { chosen = c; });
}

int real_main(int argc, char** argv) {
    CLI::App app{"Triangles and short cycles in disk and transmission graphs"};
    app.require_subcommand(1);

    GeneratorSpec gen;
    std::string centers = "uniform", radii = "uniform", gen_out;
    std::optional<std::uint64_t> gen_seed;
    CLI::App* g = app.add_subcommand("generate", "Write a random instance");
    g->add_option("-n,--n", gen.n, "Number of sites")->required()->check(CLI::PositiveNumber);
    g->add_option("--centers", centers, "uniform | clustered")->capture_default_str();
    g->add_option("--radii", radii, "uniform | powerlaw")->capture_default_str();
    g->add_option("--r-min", gen.r_min, "Smallest radius")->capture_default_str();
    g->add_option("--r-max", gen.r_max, "Largest radius")->capture_default_str();
    g->add_option("--gamma", gen.gamma, "Power-law exponent")->capture_default_str();
    g->add_option("--clusters", gen.clusters, "Cluster count")->capture_default_str();
    g->add_option("--spread", gen.cluster_spread, "Cluster standard deviation, relative to the side")
        ->capture_default_str();
    g->add_option("--side", gen.side, "Side of the square holding the centers")->capture_default_str();
    g->add_option("--seed", gen_seed, "Random seed (env GEOGIRTH_SEED)");
    g->add_option("--out", gen_out, "Output file instead of stdout");

    AlgoOptions algo;
    std::optional<Command> chosen;
    for (Command c : kAllCommands) add_algorithm(app, c, algo, chosen);

    std::string bench_cmd, bench_sizes = "4096..131072", bench_out;
    int bench_repeats = 5, bench_runs = 1;
    std::optional<std::uint64_t> bench_seed;
    CLI::App* b = app.add_subcommand("bench", "Scaling series on uniform instances, CSV n,repeat,seconds,answer");
    b->add_option("command", bench_cmd, "Algorithm command to time")->required();
    b->add_option("--sizes", bench_sizes, "A..B doubling series or a comma list")->capture_default_str();
    b->add_option("--repeats", bench_repeats, "Repeats per size")->capture_default_str()->check(CLI::PositiveNumber);
    b->add_option("--runs", bench_runs, "Timed runs per instance, fastest kept")->capture_default_str()->check(CLI::PositiveNumber);
    b->add_option("--seed", bench_seed, "Base seed for the instances (env GEOGIRTH_SEED)");
    b->add_option("--out", bench_out, "CSV file instead of stdout");

    std::vector<std::string> verify_files;
    std::size_t verify_cap = kDefaultOracleCap;
    std::optional<std::uint64_t> verify_seed;
    CLI::App* v = app.add_subcommand("verify", "Check every algorithm against its oracle on instance files");
    v->add_option("files", verify_files, "Instance files")->required();
    v->add_option("--oracle-cap", verify_cap, "Largest n to verify")->capture_default_str();
    v->add_option("--seed", verify_seed, "Random seed (env GEOGIRTH_SEED)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitError;
    }

    try {
        if (g->parsed()) {
            gen.centers = parse_center_law(centers);
            gen.radii = parse_radius_law(radii);
            gen.seed = resolve_seed(gen_seed);
            const SiteSet sites = generate(gen);
            Sink sink(gen_out);
            write_instance(sink.stream(), sites);
            return kExitOk;
        }
        if (b->parsed()) {
            const auto c = parse_command(bench_cmd);
            if (!c) throw std::invalid_argument("unknown command '" + bench_cmd + "'");
            return emit_bench(*c, parse_sizes(bench_sizes), bench_repeats, bench_runs, resolve_seed(bench_seed), bench_out);
        }
        if (v->parsed()) return run_verify(verify_files, verify_cap, verify_seed);
        if (chosen) return run_command(*chosen, algo);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

}  // namespace

int main(int argc, char** argv) { return real_main(argc, argv); }
