#ifndef VISGRAPH_PIPELINE_HPP
#define VISGRAPH_PIPELINE_HPP

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"

#include "visgraph/classify.hpp"
#include "visgraph/descriptors.hpp"
#include "visgraph/error.hpp"
#include "visgraph/visibility_graph.hpp"

namespace visgraph {

// --- number formatting / parsing --------------------------------------------

// Shortest form that still round-trips: printed with 17 significant digits.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::optional<double> parse_double(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

template <class Int>
std::optional<Int> parse_int(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return std::nullopt;
    Int v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::io, "cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) fail(ErrorKind::io, "failed reading '" + path.string() + "'");
    return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::io, "cannot open '" + path.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) fail(ErrorKind::io, "failed writing '" + path.string() + "'");
}

}  // namespace detail

// --- feature tables ---------------------------------------------------------

// CSV with header `label,f0,...,f{n-1}`; one sample per row.
struct FeatureTable {
    std::vector<int> labels;
    Matrix features;  // rows x width
    std::string source;

    std::size_t rows() const noexcept { return labels.size(); }
    std::size_t width() const noexcept { return static_cast<std::size_t>(features.cols()); }

    std::vector<double> row(std::size_t i) const {
        std::vector<double> out(width());
        for (std::size_t k = 0; k < out.size(); ++k)
            out[k] = features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
        return out;
    }
};

inline FeatureTable parse_features(std::string_view text, std::string source = "<memory>",
                                   std::optional<std::size_t> expected_width = std::nullopt) {
    auto at_line = [&](std::size_t line, const std::string& msg) {
        return source + ":" + std::to_string(line) + ": " + msg;
    };
    if (!text.empty() && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

    std::vector<std::pair<std::size_t, std::string_view>> lines;
    {
        std::size_t line_no = 0;
        for (auto raw : detail::split(text, '\n')) {
            ++line_no;
            if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
            if (detail::trim(raw).empty()) continue;
            lines.emplace_back(line_no, raw);
        }
    }
    if (lines.empty()) fail(ErrorKind::invalid_input, source + ": empty feature file");

    const auto [header_line, header] = lines.front();
    const auto names = detail::split(header, ',');
    if (detail::trim(names[0]) != "label")
        fail(ErrorKind::parse, at_line(header_line, "missing header: first column must be 'label'"));
    if (names.size() < 2) fail(ErrorKind::parse, at_line(header_line, "header declares no feature columns"));
    for (std::size_t k = 1; k < names.size(); ++k)
        if (detail::trim(names[k]) != "f" + std::to_string(k - 1))
            fail(ErrorKind::parse, at_line(header_line, "header column " + std::to_string(k) + " must be 'f" +
                                                            std::to_string(k - 1) + "'"));
    const std::size_t width = names.size() - 1;
    if (expected_width && *expected_width != width)
        fail(ErrorKind::invalid_input, source + ": feature width " + std::to_string(width) + " does not match expected " +
                                           std::to_string(*expected_width));
    if (lines.size() == 1) fail(ErrorKind::invalid_input, source + ": no samples after the header");

    FeatureTable table;
    table.source = source;
    table.features.resize(static_cast<Eigen::Index>(lines.size() - 1), static_cast<Eigen::Index>(width));
    table.labels.reserve(lines.size() - 1);
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto [line_no, content] = lines[r];
        const auto cells = detail::split(content, ',');
        if (cells.size() != width + 1)
            fail(ErrorKind::parse, at_line(line_no, "expected " + std::to_string(width + 1) + " columns, found " +
                                                        std::to_string(cells.size())));
        const auto label = detail::parse_int<int>(cells[0]);
        if (!label || *label < 0)
            fail(ErrorKind::parse, at_line(line_no, "label '" + std::string(cells[0]) + "' is not a non-negative integer"));
        table.labels.push_back(*label);
        for (std::size_t k = 0; k < width; ++k) {
            const auto v = detail::parse_double(cells[k + 1]);
            if (!v)
                fail(ErrorKind::parse, at_line(line_no, "column f" + std::to_string(k) + ": '" +
                                                            std::string(cells[k + 1]) + "' is not a finite number"));
            table.features(static_cast<Eigen::Index>(r - 1), static_cast<Eigen::Index>(k)) = *v;
        }
    }
    return table;
}

inline FeatureTable load_features(const std::filesystem::path& path,
                                  std::optional<std::size_t> expected_width = std::nullopt) {
    return parse_features(detail::read_file(path), path.string(), expected_width);
}

inline std::string format_features(const std::vector<int>& labels, const Matrix& features) {
    std::string out = "label";
    for (Eigen::Index k = 0; k < features.cols(); ++k) out += ",f" + std::to_string(k);
    out += '\n';
    for (Eigen::Index r = 0; r < features.rows(); ++r) {
        out += std::to_string(labels[static_cast<std::size_t>(r)]);
        for (Eigen::Index k = 0; k < features.cols(); ++k) {
            out += ',';
            out += format_double(features(r, k));
        }
        out += '\n';
    }
    return out;
}

inline void write_features(const std::filesystem::path& path, const FeatureTable& table) {
    detail::write_file(path, format_features(table.labels, table.features));
}

// --- descriptor schemes -----------------------------------------------------

struct BlockSpec {
    enum class Type { distance, degree_sequence, raw };

    Type type = Type::distance;
    GraphKind kind = GraphKind::natural;
    int distance = 1;

    std::string label() const {
        switch (type) {
        case Type::distance: return distance_label(kind, distance);
        case Type::degree_sequence: return "DS";
        case Type::raw: return "RAW";
        }
        return "?";
    }

    // N before H before W, ascending distance, DS after every distance
    // block, RAW last.
    auto order_key() const { return std::tuple(static_cast<int>(type), static_cast<int>(kind), distance); }
    friend bool operator==(const BlockSpec& a, const BlockSpec& b) { return a.order_key() == b.order_key(); }
    friend bool operator<(const BlockSpec& a, const BlockSpec& b) { return a.order_key() < b.order_key(); }
};

constexpr int max_pooling_distance = 3;

// Canonically ordered, duplicate-free list of descriptor blocks.
class Scheme {
public:
    Scheme() = default;

    explicit Scheme(std::vector<BlockSpec> blocks) : blocks_(std::move(blocks)) {
        if (blocks_.empty()) fail(ErrorKind::invalid_argument, "descriptor scheme selects no blocks");
        std::sort(blocks_.begin(), blocks_.end());
        for (std::size_t k = 1; k < blocks_.size(); ++k)
            if (blocks_[k] == blocks_[k - 1])
                fail(ErrorKind::invalid_argument, "block " + blocks_[k].label() + " selected twice");
        for (const auto& b : blocks_)
            if (b.type == BlockSpec::Type::distance && (b.distance < 1 || b.distance > max_pooling_distance))
                fail(ErrorKind::invalid_argument, "pooling distance must be in 1.." + std::to_string(max_pooling_distance));
    }

    // Cross product kinds x distances, plus DS when requested.
    static Scheme grid(const std::vector<GraphKind>& kinds, const std::vector<int>& distances, bool include_ds) {
        if (!kinds.empty() && distances.empty())
            fail(ErrorKind::invalid_argument, "graph kinds selected without any distance");
        std::vector<BlockSpec> blocks;
        for (auto k : kinds)
            for (int d : distances) blocks.push_back({BlockSpec::Type::distance, k, d});
        if (include_ds) blocks.push_back({BlockSpec::Type::degree_sequence, GraphKind::natural, 0});
        return Scheme(std::move(blocks));
    }

    const std::vector<BlockSpec>& blocks() const noexcept { return blocks_; }

    std::string label() const {
        std::string s;
        for (const auto& b : blocks_) {
            if (!s.empty()) s += '+';
            s += b.label();
        }
        return s;
    }

    // Graph kind the degree-sequence block is taken from: the first kind used
    // by a distance block, or NVG when there is none.
    GraphKind ds_kind() const {
        for (const auto& b : blocks_)
            if (b.type == BlockSpec::Type::distance) return b.kind;
        return GraphKind::natural;
    }

    bool needs(GraphKind kind) const {
        for (const auto& b : blocks_)
            if (b.type == BlockSpec::Type::distance && b.kind == kind) return true;
        return has(BlockSpec::Type::degree_sequence) && ds_kind() == kind;
    }

    bool has(BlockSpec::Type type) const {
        return std::any_of(blocks_.begin(), blocks_.end(), [&](const BlockSpec& b) { return b.type == type; });
    }

    friend bool operator==(const Scheme&, const Scheme&) = default;

private:
    std::vector<BlockSpec> blocks_;
};

// Parses '+'-joined block names: ND1 / N1 style distance blocks, DS, RAW.
inline Scheme parse_scheme(std::string_view text) {
    std::vector<BlockSpec> blocks;
    for (auto token : detail::split(text, '+')) {
        std::string t(detail::trim(token));
        std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
        if (t == "DS") {
            blocks.push_back({BlockSpec::Type::degree_sequence, GraphKind::natural, 0});
            continue;
        }
        if (t == "RAW") {
            blocks.push_back({BlockSpec::Type::raw, GraphKind::natural, 0});
            continue;
        }
        const auto kind = t.empty() ? std::nullopt : kind_from_code(t[0]);
        std::string_view rest = t.size() > 1 ? std::string_view(t).substr(1) : std::string_view{};
        if (!rest.empty() && rest.front() == 'D') rest.remove_prefix(1);
        const auto r = detail::parse_int<int>(rest);
        if (!kind || !r || rest.empty() || !std::isdigit(static_cast<unsigned char>(rest.front())))
            fail(ErrorKind::invalid_argument, "unknown descriptor block '" + std::string(token) +
                                                  "' (expected e.g. ND1, H2, WD3, DS or RAW)");
        blocks.push_back({BlockSpec::Type::distance, *kind, *r});
    }
    return Scheme(std::move(blocks));
}

inline std::vector<GraphKind> parse_kinds(std::string_view text) {
    std::vector<GraphKind> out;
    for (auto token : detail::split(text, ',')) {
        const auto t = detail::trim(token);
        const auto kind = t.size() == 1 ? kind_from_code(t[0]) : std::nullopt;
        if (!kind) fail(ErrorKind::invalid_argument, "unknown graph kind '" + std::string(t) + "' (expected N, H or W)");
        out.push_back(*kind);
    }
    return out;
}

inline std::vector<int> parse_distances(std::string_view text) {
    std::vector<int> out;
    for (auto token : detail::split(text, ',')) {
        const auto r = detail::parse_int<int>(token);
        if (!r || *r < 1 || *r > max_pooling_distance)
            fail(ErrorKind::invalid_argument, "distance '" + std::string(detail::trim(token)) + "' must be in 1.." +
                                                  std::to_string(max_pooling_distance));
        out.push_back(*r);
    }
    return out;
}

// Descriptor of one feature sequence under `scheme`.
inline DescriptorVector describe_series(const Series& series, const Scheme& scheme,
                                        PoolingMode mode = PoolingMode::walks, bool normalized = false) {
    std::map<GraphKind, VisibilityGraph> graphs;
    for (auto kind : {GraphKind::natural, GraphKind::horizontal, GraphKind::weighted})
        if (scheme.needs(kind)) graphs.emplace(kind, build_graph(series, kind));

    std::vector<DescriptorVector> parts;
    for (const auto& b : scheme.blocks()) {
        switch (b.type) {
        case BlockSpec::Type::distance:
            parts.push_back(pool_distance(graphs.at(b.kind), b.distance, mode));
            break;
        case BlockSpec::Type::degree_sequence:
            parts.push_back(pool_degree_sequence(graphs.at(scheme.ds_kind())));
            break;
        case BlockSpec::Type::raw:
            parts.push_back(make_descriptor("RAW", std::vector<double>(series.values().begin(), series.values().end())));
            break;
        }
    }
    DescriptorVector v = combine(parts);
    return normalized ? normalize(std::move(v)) : v;
}

struct DescriptorMatrix {
    Matrix values;  // one descriptor per row
    std::vector<int> labels;
    std::vector<DescriptorBlock> blocks;
    std::string scheme;
    bool normalized = false;
};

// Describes every row of `table`, fanning samples out over `jobs` threads.
// Rows are gathered in input order.
inline DescriptorMatrix describe_table(const FeatureTable& table, const Scheme& scheme,
                                       PoolingMode mode = PoolingMode::walks, bool normalized = false,
                                       unsigned jobs = 1) {
    const std::size_t m = table.rows();
    if (m == 0) fail(ErrorKind::invalid_input, "feature table has no samples");
    std::vector<DescriptorVector> rows(m);

    auto work = [&](std::size_t i) {
        try {
            rows[i] = describe_series(Series(table.row(i)), scheme, mode, normalized);
        } catch (const Error& e) {
            throw Error(e.kind(), "sample " + std::to_string(i) + ": " + e.what());
        }
    };

    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(m)));
    if (jobs == 1) {
        for (std::size_t i = 0; i < m; ++i) work(i);
    } else {
        std::vector<std::exception_ptr> errors(m);
        std::vector<std::thread> workers;
        for (unsigned w = 0; w < jobs; ++w)
            workers.emplace_back([&, w] {
                for (std::size_t i = w; i < m; i += jobs) {
                    try {
                        work(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        for (auto& t : workers) t.join();
        for (auto& e : errors)  // first failing sample in input order
            if (e) std::rethrow_exception(e);
    }

    DescriptorMatrix out;
    out.labels = table.labels;
    out.blocks = rows.front().blocks;
    out.scheme = rows.front().scheme();
    out.normalized = normalized;
    out.values.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < rows[i].size(); ++k)
            out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i].values[k];
    return out;
}

// --- split protocol parsing -------------------------------------------------

inline std::vector<Split> folds_from_json(const nlohmann::json& j) {
    const nlohmann::json& list = j.is_object() && j.contains("folds") ? j.at("folds") : j;
    if (!list.is_array()) fail(ErrorKind::invalid_argument, "folds JSON must be an array or {\"folds\": [...]}");
    std::vector<Split> folds;
    for (const auto& f : list) {
        if (!f.is_object() || !f.contains("train") || !f.contains("test"))
            fail(ErrorKind::invalid_argument, "each fold needs 'train' and 'test' index arrays");
        Split s;
        try {
            s.train = f.at("train").get<std::vector<std::size_t>>();
            s.test = f.at("test").get<std::vector<std::size_t>>();
        } catch (const nlohmann::json::exception& e) {
            fail(ErrorKind::invalid_argument, std::string("bad fold indices: ") + e.what());
        }
        folds.push_back(std::move(s));
    }
    return folds;
}

inline nlohmann::json folds_to_json(const std::vector<Split>& folds) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& f : folds) list.push_back({{"train", f.train}, {"test", f.test}});
    return {{"folds", list}};
}

// One fold per distinct group id: train on that group, test on the rest
// (e.g. the four sample groups of a material database).
inline std::vector<Split> train_on_one_group(std::span<const int> groups) {
    std::vector<int> ids(groups.begin(), groups.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.size() < 2) fail(ErrorKind::invalid_argument, "need at least two groups to build folds");
    std::vector<Split> folds;
    for (int g : ids) {
        Split s;
        for (std::size_t i = 0; i < groups.size(); ++i) (groups[i] == g ? s.train : s.test).push_back(i);
        folds.push_back(std::move(s));
    }
    return folds;
}

// Named random-stratified protocols of the standard texture benchmarks.
inline std::optional<SplitProtocol> protocol_preset(std::string_view name, std::uint64_t seed) {
    if (name == "fmd") return SplitProtocol::random(50, 14, seed);
    if (name == "uiuc" || name == "umd") return SplitProtocol::random(20, 10, seed);
    if (name == "1200tex") return SplitProtocol::random(30, 10, seed);
    return std::nullopt;
}

// Accepted forms:
//   random:train=30,repeats=10,seed=42
//   folds:<inline JSON or path to a JSON file>
//   preset:fmd[,seed=42]   (fmd, uiuc, umd, 1200tex)
inline SplitProtocol parse_protocol(std::string_view text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string_view::npos)
        fail(ErrorKind::invalid_argument, "protocol must look like random:..., folds:... or preset:...");
    const std::string_view kind = text.substr(0, colon);
    const std::string_view body = text.substr(colon + 1);

    if (kind == "folds") {
        const std::string_view trimmed = detail::trim(body);
        std::string json_text;
        if (!trimmed.empty() && (trimmed.front() == '[' || trimmed.front() == '{'))
            json_text = std::string(trimmed);
        else
            json_text = detail::read_file(std::string(trimmed));
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(json_text);
        } catch (const nlohmann::json::exception& e) {
            fail(ErrorKind::parse, std::string("folds JSON: ") + e.what());
        }
        return SplitProtocol::fixed(folds_from_json(j));
    }

    std::map<std::string, std::string, std::less<>> kv;
    std::string preset_name;
    for (auto item : detail::split(body, ',')) {
        item = detail::trim(item);
        if (item.empty()) continue;
        const std::size_t eq = item.find('=');
        if (eq == std::string_view::npos) {
            if (kind == "preset" && preset_name.empty()) {
                preset_name = std::string(item);
                continue;
            }
            fail(ErrorKind::invalid_argument, "protocol option '" + std::string(item) + "' must be key=value");
        }
        kv[std::string(detail::trim(item.substr(0, eq)))] = std::string(detail::trim(item.substr(eq + 1)));
    }
    auto number = [&](const std::string& key, std::optional<std::uint64_t> fallback) -> std::uint64_t {
        auto it = kv.find(key);
        if (it == kv.end()) {
            if (!fallback) fail(ErrorKind::invalid_argument, "protocol needs '" + key + "='");
            return *fallback;
        }
        const auto v = detail::parse_int<std::uint64_t>(it->second);
        if (!v) fail(ErrorKind::invalid_argument, "protocol option " + key + "='" + it->second + "' is not an integer");
        kv.erase(it);
        return *v;
    };

    SplitProtocol proto;
    if (kind == "random") {
        const auto train = number("train", std::nullopt);
        const auto repeats = number("repeats", 1);
        const auto seed = number("seed", 0);
        proto = SplitProtocol::random(train, repeats, seed);
    } else if (kind == "preset") {
        const auto seed = number("seed", 0);
        const auto p = protocol_preset(preset_name, seed);
        if (!p) fail(ErrorKind::invalid_argument, "unknown protocol preset '" + preset_name + "' (fmd, uiuc, umd, 1200tex)");
        proto = *p;
    } else {
        fail(ErrorKind::invalid_argument, "unknown protocol kind '" + std::string(kind) + "'");
    }
    if (!kv.empty()) fail(ErrorKind::invalid_argument, "unknown protocol option '" + kv.begin()->first + "'");
    proto.validate();
    return proto;
}

inline std::string describe_protocol(const SplitProtocol& p) {
    if (p.kind == SplitProtocol::Kind::fixed_folds) return "folds:" + std::to_string(p.folds.size());
    return "random:train=" + std::to_string(*p.train_per_class) + ",repeats=" + std::to_string(p.repeats) +
           ",seed=" + std::to_string(p.seed);
}

// --- end-to-end run -----------------------------------------------------------

struct RunConfig {
    Scheme scheme;
    PoolingMode mode = PoolingMode::walks;
    bool normalize = true;
    bool l2 = false;  // unit L2 norm per descriptor after normalization
    SplitProtocol protocol;
    LambdaMode lambda = LambdaMode::automatic();
    unsigned jobs = 1;
};

struct PipelineResult {
    DescriptorMatrix descriptors;
    EvalReport report;
};

inline PipelineResult run_pipeline(const FeatureTable& table, const RunConfig& cfg) {
    PipelineResult out;
    out.descriptors = describe_table(table, cfg.scheme, cfg.mode, cfg.normalize, cfg.jobs);
    Matrix x = out.descriptors.values;
    if (cfg.l2) {
        for (Eigen::Index r = 0; r < x.rows(); ++r) {
            const double norm = x.row(r).norm();
            if (norm > 0.0) x.row(r) /= norm;
        }
    }
    const LabeledDataset ds(std::move(x), table.labels);
    out.report = evaluate(ds, cfg.protocol, EvalOptions{cfg.lambda, cfg.jobs});
    return out;
}

inline nlohmann::ordered_json config_json(const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["scheme"] = cfg.scheme.label();
    j["mode"] = std::string(to_string(cfg.mode));
    j["normalize"] = cfg.normalize;
    j["l2"] = cfg.l2;
    j["protocol"] = describe_protocol(cfg.protocol);
    j["lambda"] = cfg.lambda.is_auto() ? nlohmann::ordered_json("auto") : nlohmann::ordered_json(cfg.lambda.value());
    return j;
}

// --- report emission ----------------------------------------------------------

inline std::string format_metrics(const EvalReport& report, std::uint64_t seed,
                                  const nlohmann::ordered_json& config = nlohmann::ordered_json::object()) {
    nlohmann::ordered_json j;
    j["mean_accuracy"] = report.mean_accuracy;
    j["std_accuracy"] = report.std_accuracy;
    j["per_split_accuracy"] = report.per_split_accuracy;
    j["num_splits"] = report.per_split_accuracy.size();
    j["num_classes"] = report.num_classes();
    j["seed"] = seed;
    j["config"] = config;
    return j.dump(2) + "\n";
}

inline std::string format_confusion(const EvalReport& report) {
    std::string out = "true";
    for (std::size_t c = 0; c < report.num_classes(); ++c) out += "," + std::to_string(c);
    out += '\n';
    for (std::size_t a = 0; a < report.num_classes(); ++a) {
        out += std::to_string(a);
        for (auto v : report.confusion[a]) out += "," + std::to_string(v);
        out += '\n';
    }
    return out;
}

// Writes <dir>/metrics.json and <dir>/confusion.csv, replacing existing files.
inline void emit_report(const EvalReport& report, const std::filesystem::path& dir, std::uint64_t seed,
                        const nlohmann::ordered_json& config = nlohmann::ordered_json::object()) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) fail(ErrorKind::io, "cannot create report directory '" + dir.string() + "': " + ec.message());
    detail::write_file(dir / "metrics.json", format_metrics(report, seed, config));
    detail::write_file(dir / "confusion.csv", format_confusion(report));
}

inline std::string format_profile(const DistanceDegreeProfile& profile) {
    std::string out = "r,d\n";
    for (const auto& [r, d] : profile.pairs) out += std::to_string(r) + "," + format_double(d) + "\n";
    return out;
}

inline void emit_profile(const DistanceDegreeProfile& profile, const std::filesystem::path& path) {
    if (profile.pairs.empty()) fail(ErrorKind::invalid_argument, "refusing to emit an empty profile");
    detail::write_file(path, format_profile(profile));
}

}  // namespace visgraph

#endif  // VISGRAPH_PIPELINE_HPP
