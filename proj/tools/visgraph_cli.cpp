// visgraph: visibility-graph descriptors for feature sequences.
//
//   visgraph describe --input f.csv --kinds N,H --distances 1,2 --ds --normalize --output d.csv
//   visgraph classify --input f.csv --scheme H1+DS --protocol random:train=30,repeats=10,seed=42 --report out/
//   visgraph synth    --family fractal|periodic|uniform ... --output s.csv
//   visgraph profile  --input f.csv --row 0 --node 10 --rmax 3 --output p.csv
//   visgraph verify

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "visgraph/visgraph.hpp"
#include "visgraph/verify.hpp"

namespace {

using namespace visgraph;

PoolingMode parse_mode(const std::string& s) {
    const auto mode = pooling_mode_from_string(s);
    if (!mode) fail(ErrorKind::invalid_argument, "mode must be 'walks' or 'shell', got '" + s + "'");
    return *mode;
}

LambdaMode parse_lambda(const std::string& s) {
    if (s == "auto") return LambdaMode::automatic();
    const auto v = visgraph::detail::parse_double(s);
    if (!v) fail(ErrorKind::invalid_argument, "lambda must be 'auto' or a number, got '" + s + "'");
    return LambdaMode::fixed(*v);
}

struct DescribeArgs {
    std::string input, output, kinds, distances = "1", mode = "walks";
    bool ds = false, normalize = false;
    unsigned jobs = 1;
};

int run_describe(const DescribeArgs& a) {
    const std::vector<GraphKind> kinds = a.kinds.empty() ? std::vector<GraphKind>{} : parse_kinds(a.kinds);
    const Scheme scheme = Scheme::grid(kinds, kinds.empty() ? std::vector<int>{} : parse_distances(a.distances), a.ds);
    const FeatureTable table = load_features(a.input);
    const DescriptorMatrix d = describe_table(table, scheme, parse_mode(a.mode), a.normalize, a.jobs);
    write_features(a.output, FeatureTable{d.labels, d.values, a.output});
    std::cerr << "described " << table.rows() << " samples as " << d.scheme << " (" << d.values.cols()
              << " values each)\n";
    return 0;
}

struct ClassifyArgs {
    std::string input, scheme = "H1+DS", protocol, lambda = "auto", report, mode = "walks";
    bool no_normalize = false, l2 = false;
    unsigned jobs = 1;
};

int run_classify(const ClassifyArgs& a) {
    RunConfig cfg;
    cfg.scheme = parse_scheme(a.scheme);
    cfg.mode = parse_mode(a.mode);
    cfg.normalize = !a.no_normalize;
    cfg.l2 = a.l2;
    cfg.protocol = parse_protocol(a.protocol);
    cfg.lambda = parse_lambda(a.lambda);
    cfg.jobs = a.jobs;

    const FeatureTable table = load_features(a.input);
    const PipelineResult result = run_pipeline(table, cfg);
    if (!a.report.empty()) emit_report(result.report, a.report, cfg.protocol.seed, config_json(cfg));

    std::cout << "scheme " << cfg.scheme.label() << ", " << result.report.per_split_accuracy.size() << " splits\n"
              << "mean_accuracy " << format_double(result.report.mean_accuracy) << "\n"
              << "std_accuracy " << format_double(result.report.std_accuracy) << "\n";
    return 0;
}

struct SynthArgs {
    std::string family, output, meta, placement = "deterministic-mid", pattern;
    int depth = 0;
    std::size_t period = 0, repeats = 1, n = 0, count = 1;
    int label = 0;
    std::uint64_t seed = 0;
};

int run_synth(const SynthArgs& a) {
    if (a.count == 0) fail(ErrorKind::invalid_argument, "--count must be >= 1");
    if (a.label < 0) fail(ErrorKind::invalid_argument, "--label must be non-negative");
    std::vector<Series> rows;

    if (a.family == "fractal") {
        synth::FractalSeriesSpec spec;
        spec.depth = a.depth;
        spec.seed = a.seed;
        if (a.placement == "deterministic-mid")
            spec.placement = synth::FractalPlacement::deterministic_mid;
        else if (a.placement == "seeded-random")
            spec.placement = synth::FractalPlacement::seeded_random;
        else
            fail(ErrorKind::invalid_argument, "--placement must be deterministic-mid or seeded-random");
        const auto fs = synth::synth_fractal(spec);
        rows.assign(a.count, fs.series);
        if (!a.meta.empty()) {
            std::string meta = "index,x,y,value\n";
            for (std::size_t i = 0; i < fs.x.size(); ++i)
                meta += std::to_string(i) + "," + format_double(fs.x[i]) + "," + format_double(fs.y[i]) + "," +
                        format_double(fs.series[i]) + "\n";
            meta += "# anchor=" + std::to_string(fs.anchor) + " height_scale=" + format_double(fs.height_scale) +
                    " placement=" + std::string(synth::to_string(spec.placement)) + "\n";
            visgraph::detail::write_file(a.meta, meta);
        }
    } else if (a.family == "periodic") {
        if (a.period == 0) fail(ErrorKind::invalid_argument, "--period must be >= 1");
        for (std::size_t r = 0; r < a.count; ++r) {
            std::vector<double> pattern;
            if (!a.pattern.empty()) {
                for (auto cell : visgraph::detail::split(a.pattern, ',')) {
                    const auto v = visgraph::detail::parse_double(cell);
                    if (!v) fail(ErrorKind::invalid_argument, "--template value '" + std::string(cell) + "' is not a number");
                    pattern.push_back(*v);
                }
            } else {
                Rng rng(a.seed + r);
                for (std::size_t k = 0; k < a.period; ++k) pattern.push_back(rng.uniform_open());
            }
            rows.push_back(synth::synth_periodic(a.period, a.repeats, pattern));
        }
    } else if (a.family == "uniform") {
        for (std::size_t r = 0; r < a.count; ++r) rows.push_back(synth::synth_random_uniform(a.n, a.seed + r));
    } else {
        fail(ErrorKind::invalid_argument, "--family must be fractal, periodic or uniform");
    }

    const auto width = rows.front().size();
    Matrix values(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t k = 0; k < width; ++k)
            values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = rows[r][k];
    write_features(a.output, FeatureTable{std::vector<int>(rows.size(), a.label), values, a.output});
    return 0;
}

struct ProfileArgs {
    std::string input, output, mode = "walks", kind = "N";
    std::size_t row = 0, node = 0;
    int rmax = 1;
};

int run_profile(const ProfileArgs& a) {
    const FeatureTable table = load_features(a.input);
    if (a.row >= table.rows())
        fail(ErrorKind::invalid_argument, "--row " + std::to_string(a.row) + " out of range (" +
                                              std::to_string(table.rows()) + " rows)");
    const auto kinds = parse_kinds(a.kind);
    if (kinds.size() != 1) fail(ErrorKind::invalid_argument, "--kind takes exactly one of N, H, W");
    const VisibilityGraph g = build_graph(Series(table.row(a.row)), kinds.front());
    emit_profile(distance_profile(g, a.node, a.rmax, parse_mode(a.mode)), a.output);
    return 0;
}

int run_verify() {
    bool ok = true;
    for (const auto& r : verify::run_all()) {
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << " -- " << r.detail << " ("
                  << r.seconds << " s)\n";
        ok = ok && r.passed;
    }
    return ok ? 0 : exit_code(ErrorKind::invariant);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Visibility-graph descriptors for 1-D feature sequences"};
    app.require_subcommand(1);

    DescribeArgs describe;
    auto* cmd_describe = app.add_subcommand("describe", "Pool feature rows into visibility-graph descriptors");
    cmd_describe->add_option("--input", describe.input, "Feature CSV (label,f0,...)")->required();
    cmd_describe->add_option("--output", describe.output, "Descriptor CSV to write")->required();
    cmd_describe->add_option("--kinds", describe.kinds, "Graph kinds, e.g. N,H,W");
    cmd_describe->add_option("--distances", describe.distances, "Pooling distances, e.g. 1,2")->capture_default_str();
    cmd_describe->add_flag("--ds", describe.ds, "Append the degree sequence");
    cmd_describe->add_option("--mode", describe.mode, "walks or shell")->capture_default_str();
    cmd_describe->add_flag("--normalize", describe.normalize, "Min-max normalize each block to [0,1]");
    cmd_describe->add_option("--jobs", describe.jobs, "Worker threads")->capture_default_str();

    ClassifyArgs classify;
    auto* cmd_classify = app.add_subcommand("classify", "Evaluate an LDA classifier on descriptors of a feature CSV");
    cmd_classify->add_option("--input", classify.input, "Feature CSV (label,f0,...)")->required();
    cmd_classify->add_option("--scheme", classify.scheme, "Descriptor scheme, e.g. H1+DS, ND1+ND2, N1+H1+W1")
        ->capture_default_str();
    cmd_classify->add_option("--protocol", classify.protocol,
                             "random:train=T,repeats=R,seed=S | folds:<json or file> | preset:fmd|uiuc|umd|1200tex")
        ->required();
    cmd_classify->add_option("--lambda", classify.lambda, "Shrinkage: auto (1e-3) or a number")->capture_default_str();
    cmd_classify->add_option("--report", classify.report, "Directory for metrics.json and confusion.csv");
    cmd_classify->add_option("--mode", classify.mode, "walks or shell")->capture_default_str();
    cmd_classify->add_flag("--no-normalize", classify.no_normalize, "Skip per-block [0,1] normalization");
    cmd_classify->add_flag("--l2", classify.l2, "Scale each descriptor to unit L2 norm before LDA");
    cmd_classify->add_option("--jobs", classify.jobs, "Worker threads")->capture_default_str();

    SynthArgs synth;
    auto* cmd_synth = app.add_subcommand("synth", "Generate synthetic series as a feature CSV");
    cmd_synth->add_option("--family", synth.family, "fractal, periodic or uniform")->required();
    cmd_synth->add_option("--output", synth.output, "CSV to write")->required();
    cmd_synth->add_option("--depth", synth.depth, "Fractal construction steps");
    cmd_synth->add_option("--placement", synth.placement, "deterministic-mid or seeded-random")->capture_default_str();
    cmd_synth->add_option("--meta", synth.meta, "Fractal: write original x,y coordinates here");
    cmd_synth->add_option("--period", synth.period, "Periodic: template length");
    cmd_synth->add_option("--repeats", synth.repeats, "Periodic: number of tiles")->capture_default_str();
    cmd_synth->add_option("--template", synth.pattern, "Periodic: comma-separated template (random if omitted)");
    cmd_synth->add_option("--n", synth.n, "Uniform: series length");
    cmd_synth->add_option("--count", synth.count, "Rows to generate (row r uses seed + r)")->capture_default_str();
    cmd_synth->add_option("--label", synth.label, "Label written on every row")->capture_default_str();
    cmd_synth->add_option("--seed", synth.seed, "Random seed")->capture_default_str();

    ProfileArgs profile;
    auto* cmd_profile = app.add_subcommand("profile", "Degree at distances 1..rmax of one node");
    cmd_profile->add_option("--input", profile.input, "Feature CSV")->required();
    cmd_profile->add_option("--row", profile.row, "Sample row")->required();
    cmd_profile->add_option("--node", profile.node, "Node (feature index)")->required();
    cmd_profile->add_option("--rmax", profile.rmax, "Largest distance")->required();
    cmd_profile->add_option("--kind", profile.kind, "Graph kind N, H or W")->capture_default_str();
    cmd_profile->add_option("--mode", profile.mode, "walks or shell")->capture_default_str();
    cmd_profile->add_option("--output", profile.output, "Two-column CSV r,d")->required();

    auto* cmd_verify = app.add_subcommand("verify", "Check the exact degree laws of the fractal series");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_code(ErrorKind::invalid_argument);
    }

    try {
        if (*cmd_describe) return run_describe(describe);
        if (*cmd_classify) return run_classify(classify);
        if (*cmd_synth) return run_synth(synth);
        if (*cmd_profile) return run_profile(profile);
        if (*cmd_verify) return run_verify();
    } catch (const Error& e) {
        std::cerr << "visgraph: " << to_string(e.kind()) << ": " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "visgraph: internal error: " << e.what() << "\n";
        return exit_code(ErrorKind::invariant);
    }
    return exit_code(ErrorKind::invalid_argument);
}
