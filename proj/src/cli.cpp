#include "txnet/cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <openssl/evp.h>

#include <CLI11.hpp>

#include "txnet/distfit.hpp"
#include "txnet/error.hpp"
#include "txnet/graph.hpp"
#include "txnet/ingest.hpp"
#include "txnet/json_io.hpp"
#include "txnet/ledger.hpp"
#include "txnet/linkcomm.hpp"
#include "txnet/metrics.hpp"
#include "txnet/synth.hpp"

#ifndef TXNET_VERSION
#define TXNET_VERSION "0.0.0"
#endif

namespace txnet::cli {

namespace fs = std::filesystem;
using json_io::Json;

std::int64_t parse_duration_ms(std::string_view text) {
    const auto bad = [&] { return Error(Errc::invalid_argument, "invalid duration '" + std::string(text) + "'"); };
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr == text.data() || value < 0) throw bad();
    const std::string_view suffix(ptr, static_cast<std::size_t>(text.data() + text.size() - ptr));
    std::int64_t scale = 0;
    if (suffix == "ms") scale = 1;
    else if (suffix.empty() || suffix == "s") scale = 1000;
    else if (suffix == "m") scale = 60'000;
    else if (suffix == "h") scale = 3'600'000;
    else throw bad();
    if (value > INT64_MAX / scale) throw bad();
    return value * scale;
}

std::string sha256_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot open " + path.string());
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    if (in.bad()) throw Error(Errc::io_error, "read failed: " + path.string());
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return hex.str();
}

namespace {

// Writes through a sibling temp file that is renamed over the target only
// after the writer finished and the stream flushed cleanly.
void write_atomic(const fs::path& target, const std::function<void(std::ostream&)>& writer) {
    const fs::path temp = target.string() + ".tmp-" + std::to_string(::getpid());
    try {
        {
            std::ofstream out(temp, std::ios::binary | std::ios::trunc);
            if (!out) throw Error(Errc::io_error, "cannot write " + target.string());
            writer(out);
            out.flush();
            if (!out) throw Error(Errc::io_error, "write failed: " + target.string());
        }
        std::error_code ec;
        fs::rename(temp, target, ec);
        if (ec) throw Error(Errc::io_error, "cannot rename onto " + target.string() + ": " + ec.message());
    } catch (...) {
        std::error_code ignored;
        fs::remove(temp, ignored);
        throw;
    }
}

void write_json(const fs::path& target, const Json& doc) {
    write_atomic(target, [&](std::ostream& out) { out << doc.dump(2) << '\n'; });
}

struct Options {
    std::string endpoint;
    std::string duration;
    std::string t0 = "0";
    std::vector<std::string> in;
    std::string out;
    std::string csv;
    std::string xmin = "auto";
    std::string family = "power_law";
    std::uint64_t replicates = 100;
    std::uint64_t seed = 1;
    std::string bin = "60";
    std::string mode = "total";
    bool directed = false;
    bool undirected = false;
    bool giant = false;
    std::vector<std::string> labels;
    std::string communities;
    std::string kind;
    std::uint64_t n = 0;
    std::uint64_t m = 2;
    double p = 0.0;
    double alpha = 2.5;
    std::string ccdf;
    std::string series;
};

struct Context {
    const Options& opt;
    std::string command;
    std::ostream& err;
    Json manifest_flags = Json::object();
    Json inputs = Json::object();
    Json seeds = Json::object();
    Json outputs = Json::array();
    Json result = Json::object();

    fs::path input(const std::string& path) {
        if (!fs::is_regular_file(path)) throw Error(Errc::io_error, "no such input file: " + path);
        inputs[path] = sha256_file(path);
        return path;
    }

    void output(const std::string& path) { outputs.push_back(path); }
};

metrics::DistanceMode distance_mode(const Options& o) {
    return o.undirected ? metrics::DistanceMode::undirected : metrics::DistanceMode::directed;
}

metrics::DegreeMode degree_mode(const std::string& s) {
    if (s == "in") return metrics::DegreeMode::in;
    if (s == "out") return metrics::DegreeMode::out;
    if (s == "total") return metrics::DegreeMode::total;
    throw Error(Errc::invalid_argument, "degree mode must be in, out or total");
}

std::int64_t latest_timestamp(const graph::TxGraph& g) {
    std::int64_t t = 0;
    for (const auto& a : g.arcs()) t = std::max(t, a.timestamp_ms);
    return t;
}

ledger::EdgeList edges_of(const graph::TxGraph& g) {
    std::vector<ingest::Edge> edges;
    edges.reserve(g.arc_count());
    for (const auto& a : g.arcs()) edges.push_back({g.address(a.source), g.address(a.target), a.amount, a.timestamp_ms});
    return ledger::make_edge_list(std::move(edges));
}

graph::TxGraph load_graph(Context& ctx, const std::string& path) {
    auto g = graph::build_graph(ledger::load_edges(ctx.input(path)));
    return ctx.opt.giant ? graph::giant_component(g) : g;
}

std::string single_input(const Options& o) {
    if (o.in.size() != 1) throw Error(Errc::invalid_argument, "exactly one --in expected");
    return o.in.front();
}

void cmd_capture(Context& ctx) {
    const auto& o = ctx.opt;
    ingest::CaptureOptions copt;
    copt.endpoint = o.endpoint;
    copt.duration = std::chrono::milliseconds(parse_duration_ms(o.duration));
    std::vector<ingest::Edge> edges;
    ingest::CaptureSummary summary;
    write_atomic(o.out, [&](std::ostream& log) {
        copt.log = &log;
        summary = ingest::capture(copt, [&](const ingest::Edge& e) { edges.push_back(e); });
    });
    ctx.output(o.out);
    if (!o.csv.empty()) {
        write_atomic(o.csv, [&](std::ostream& out) { ledger::write_csv(ledger::make_edge_list(std::move(edges)), out); });
        ctx.output(o.csv);
    }
    if (summary.truncated) ctx.err << "warning: feed closed before the capture duration elapsed\n";
    ctx.result = json_io::to_json(summary);
}

void cmd_replay(Context& ctx) {
    const auto& o = ctx.opt;
    std::vector<ingest::Edge> edges;
    const auto summary = ingest::replay(ctx.input(single_input(o)), [&](const ingest::Edge& e) { edges.push_back(e); });
    if (!o.out.empty()) {
        write_atomic(o.out, [&](std::ostream& out) { ledger::write_csv(ledger::make_edge_list(std::move(edges)), out); });
        ctx.output(o.out);
    }
    ctx.result = json_io::to_json(summary);
}

void cmd_snapshot(Context& ctx) {
    const auto& o = ctx.opt;
    const auto all = ledger::load_edges(ctx.input(single_input(o)));
    const auto offset = parse_duration_ms(o.t0);
    const auto snap = ledger::window(all, all.t0 + offset, parse_duration_ms(o.duration));
    write_atomic(o.out, [&](std::ostream& out) { ledger::write_csv(snap, out); });
    ctx.output(o.out);
    ctx.result = {{"t0", snap.t0}, {"duration_ms", snap.duration_ms}, {"edges", snap.edges.size()}};
}

std::string label_of(const std::string& path) { return fs::path(path).stem().string(); }

void cmd_metrics(Context& ctx) {
    const auto& o = ctx.opt;
    const auto path = single_input(o);
    const auto g = load_graph(ctx, path);
    const auto report = metrics::snapshot_report(g, distance_mode(o));
    const auto label = o.labels.empty() ? label_of(path) : o.labels.front();
    const auto doc = json_io::to_json(report, label, latest_timestamp(g));
    write_json(o.out, doc);
    ctx.output(o.out);
    ctx.result = {{"nodes", report.nodes}, {"edges", report.edges}};
}

void cmd_giant(Context& ctx) {
    const auto& o = ctx.opt;
    const auto g = graph::giant_component(graph::build_graph(ledger::load_edges(ctx.input(single_input(o)))));
    write_atomic(o.out, [&](std::ostream& out) { ledger::write_csv(edges_of(g), out); });
    ctx.output(o.out);
    ctx.result = {{"nodes", g.node_count()}, {"edges", g.arc_count()}};
}

std::optional<std::uint64_t> parse_xmin(const std::string& s) {
    if (s == "auto") return std::nullopt;
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || v == 0)
        throw Error(Errc::invalid_argument, "--xmin must be a positive integer or 'auto'");
    return v;
}

void cmd_fit(Context& ctx) {
    const auto& o = ctx.opt;
    const auto g = load_graph(ctx, single_input(o));
    const auto family = distfit::parse_family(o.family);
    const auto data = distfit::positive(metrics::degree_sequence(g, degree_mode(o.mode)));
    const auto model = distfit::fit(data, family, parse_xmin(o.xmin));
    ctx.seeds["seed"] = o.seed;

    Json gof = nullptr;
    if (o.replicates > 0) gof = json_io::to_json(distfit::gof_bootstrap(data, model, o.replicates, o.seed));

    Json alternatives = Json::array();
    for (auto f : {distfit::Family::power_law, distfit::Family::log_normal, distfit::Family::exponential,
                   distfit::Family::poisson}) {
        if (f == family) continue;
        try {
            alternatives.push_back(json_io::to_json(distfit::fit(data, f, model.xmin)));
        } catch (const Error& e) {
            alternatives.push_back({{"family", distfit::family_name(f)}, {"error", errc_name(e.code())}});
        }
    }

    Json doc;
    doc["degree_mode"] = o.mode;
    doc["observations"] = data.size();
    doc["fit"] = json_io::to_json(model);
    doc["gof"] = std::move(gof);
    doc["alternatives"] = std::move(alternatives);
    write_json(o.out, doc);
    ctx.output(o.out);

    if (!o.ccdf.empty()) {
        const auto series = distfit::ccdf_series(data);
        write_atomic(o.ccdf, [&](std::ostream& out) {
            out << "x,ccdf\n" << std::setprecision(17);
            for (const auto& [x, y] : series) out << x << ',' << y << '\n';
        });
        ctx.output(o.ccdf);
    }
    ctx.result = {{"family", distfit::family_name(family)}, {"xmin", model.xmin}, {"ks_stat", model.ks_stat}};
}

void cmd_growth(Context& ctx) {
    const auto& o = ctx.opt;
    const auto edges = ledger::load_edges(ctx.input(single_input(o)));
    const auto bin_ms = parse_duration_ms(o.bin);
    if (bin_ms % 1000 != 0 || bin_ms == 0) throw Error(Errc::invalid_argument, "--bin must be a whole number of seconds");
    const auto series = distfit::growth_series(edges, bin_ms / 1000);

    std::vector<std::pair<double, double>> nodes;
    std::vector<std::pair<double, double>> arcs;
    Json points = Json::array();
    for (const auto& p : series) {
        nodes.emplace_back(static_cast<double>(p.t_seconds), static_cast<double>(p.cumulative_nodes));
        arcs.emplace_back(static_cast<double>(p.t_seconds), static_cast<double>(p.cumulative_edges));
        points.push_back({p.t_seconds, p.cumulative_nodes, p.cumulative_edges});
    }
    const auto node_fit = distfit::fit_log_growth(nodes);
    const auto edge_fit = distfit::fit_log_growth(arcs);

    Json doc;
    doc["bin_seconds"] = bin_ms / 1000;
    doc["columns"] = {"t_seconds", "cumulative_nodes", "cumulative_edges"};
    doc["series"] = std::move(points);
    doc["nodes_fit"] = json_io::to_json(node_fit);
    doc["edges_fit"] = json_io::to_json(edge_fit);
    write_json(o.out, doc);
    ctx.output(o.out);

    if (!o.series.empty()) {
        write_atomic(o.series, [&](std::ostream& out) {
            out << "t_seconds,cumulative_nodes,cumulative_edges\n";
            for (const auto& p : series) out << p.t_seconds << ',' << p.cumulative_nodes << ',' << p.cumulative_edges << '\n';
        });
        ctx.output(o.series);
    }
    ctx.result = {{"points", series.size()},
                  {"nodes_r_squared", node_fit.r_squared},
                  {"edges_r_squared", edge_fit.r_squared}};
}

void cmd_communities(Context& ctx) {
    const auto& o = ctx.opt;
    const auto g = load_graph(ctx, single_input(o));
    const auto partition = linkcomm::detect_link_communities(g);
    const auto profiles = linkcomm::community_profiles(g, partition);
    write_json(o.out, json_io::to_json(g, partition, profiles));
    ctx.output(o.out);
    ctx.result = {{"communities", partition.communities.size()}, {"partition_density", partition.partition_density}};
}

void cmd_synth(Context& ctx) {
    const auto& o = ctx.opt;
    ctx.seeds["seed"] = o.seed;
    if (o.kind == "capture") {
        synth::CaptureSpec spec;
        spec.seed = o.seed;
        if (!o.duration.empty()) spec.duration_ms = parse_duration_ms(o.duration);
        if (o.n > 0) spec.transactions = o.n;
        std::size_t records = 0;
        write_atomic(o.out, [&](std::ostream& out) { records = synth::write_capture_log(spec, out); });
        ctx.output(o.out);
        ctx.result = {{"records", records}};
        return;
    }

    synth::GenSpec spec;
    spec.n = o.n;
    spec.seed = o.seed;
    if (o.kind == "pa") spec.params = synth::PreferentialAttachment{o.m};
    else if (o.kind == "uniform") spec.params = synth::UniformRandom{o.p};
    else if (o.kind == "powerlaw") spec.params = synth::PowerLawSample{o.alpha, o.xmin == "auto" ? 1 : *parse_xmin(o.xmin)};
    else throw Error(Errc::invalid_argument, "--kind must be pa, uniform, powerlaw or capture");
    synth::validate(spec);

    if (o.kind == "powerlaw") {
        const auto& pl = std::get<synth::PowerLawSample>(spec.params);
        const auto values = synth::sample_power_law(pl.alpha, pl.xmin, spec.n, spec.seed);
        write_atomic(o.out, [&](std::ostream& out) {
            out << "value\n";
            for (auto v : values) out << v << '\n';
        });
        ctx.output(o.out);
        ctx.result = {{"samples", values.size()}};
        return;
    }

    const auto g = o.kind == "pa" ? synth::generate_pa(spec.n, o.m, spec.seed) : synth::generate_uniform(spec.n, o.p, spec.seed);
    write_atomic(o.out, [&](std::ostream& out) { ledger::write_csv(synth::to_edge_list(g), out); });
    ctx.output(o.out);
    ctx.result = {{"nodes", g.node_count()}, {"edges", g.arc_count()}};
}

void cmd_export_graphml(Context& ctx) {
    const auto& o = ctx.opt;
    const auto g = load_graph(ctx, single_input(o));
    write_atomic(o.out, [&](std::ostream& out) { graph::export_graphml(g, out); });
    ctx.output(o.out);
    ctx.result = {{"nodes", g.node_count()}, {"edges", g.arc_count()}};
}

void cmd_report(Context& ctx) {
    const auto& o = ctx.opt;
    if (o.in.empty()) throw Error(Errc::invalid_argument, "report needs at least one --in");
    if (!o.labels.empty() && o.labels.size() != o.in.size())
        throw Error(Errc::invalid_argument, "give one --label per --in or none");

    Json columns = Json::array();
    for (std::size_t i = 0; i < o.in.size(); ++i) {
        const auto g = graph::build_graph(ledger::load_edges(ctx.input(o.in[i])));
        const auto label = o.labels.empty() ? label_of(o.in[i]) : o.labels[i];
        const auto stamp = latest_timestamp(g);
        Json column;
        column["label"] = label;
        column["full"] = json_io::to_json(metrics::snapshot_report(g, distance_mode(o)), label, stamp);
        if (g.empty()) {
            column["giant"] = nullptr;
        } else {
            const auto giant = graph::giant_component(g);
            column["giant"] = json_io::to_json(metrics::snapshot_report(giant, distance_mode(o)), label + "/giant", stamp);
        }
        columns.push_back(std::move(column));
    }

    Json doc;
    doc["distance_mode"] = o.undirected ? "undirected" : "directed";
    doc["columns"] = std::move(columns);
    if (!o.communities.empty()) {
        std::ifstream in(ctx.input(o.communities));
        const auto partition = Json::parse(in, nullptr, false);
        if (partition.is_discarded()) throw Error(Errc::invalid_partition, "communities file is not JSON");
        doc["communities"] = json_io::summarize_partition(partition);
    }
    write_json(o.out, doc);
    ctx.output(o.out);
    ctx.result = {{"columns", o.in.size()}};
}

Json flag_values(const CLI::App& sub) {
    Json flags = Json::object();
    for (const auto* opt : sub.get_options()) {
        if (opt->count() == 0 || opt->get_name() == "--help") continue;
        const auto& results = opt->results();
        if (opt->get_expected_max() > 1 || results.size() > 1) flags[opt->get_name()] = results;
        else if (opt->get_type_size() == 0) flags[opt->get_name()] = true;
        else flags[opt->get_name()] = results.empty() ? std::string() : results.back();
    }
    return flags;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    if (const char* env = std::getenv("TXNET_ENDPOINT"); env && *env) o.endpoint = env;
    else o.endpoint = std::string(ingest::default_endpoint);

    CLI::App app{"Bitcoin transaction network toolkit", "txnet"};
    app.set_version_flag("--version", TXNET_VERSION);
    app.require_subcommand(1, 1);

    std::map<std::string, std::function<void(Context&)>> handlers;
    auto command = [&](const char* name, const char* help, std::function<void(Context&)> fn) {
        handlers.emplace(name, std::move(fn));
        return app.add_subcommand(name, help);
    };
    auto add_in = [&](CLI::App* s) { s->add_option("--in", o.in, "input edge CSV or capture log")->required()->expected(1); };
    auto add_out = [&](CLI::App* s) { s->add_option("--out", o.out, "output file")->required(); };
    auto add_giant = [&](CLI::App* s) { s->add_flag("--giant", o.giant, "restrict to the giant component"); };
    auto add_distance = [&](CLI::App* s) {
        auto* d = s->add_flag("--directed", o.directed, "directed shortest paths (default)");
        s->add_flag("--undirected", o.undirected, "undirected shortest paths")->excludes(d);
    };

    auto* capture = command("capture", "record the live unconfirmed-transaction feed", cmd_capture);
    capture->add_option("--endpoint", o.endpoint, "WebSocket URL (default from TXNET_ENDPOINT)");
    capture->add_option("--duration", o.duration, "capture length, e.g. 6h")->required();
    capture->add_option("--out", o.out, "capture log")->required();
    capture->add_option("--csv", o.csv, "also write the extracted edges");

    auto* replay = command("replay", "rebuild edges from a capture log", cmd_replay);
    add_in(replay);
    replay->add_option("--out", o.out, "edge CSV");

    auto* snapshot = command("snapshot", "cut a time window from edges or a capture log", cmd_snapshot);
    add_in(snapshot);
    snapshot->add_option("--t0", o.t0, "window start, offset from the first edge");
    snapshot->add_option("--duration", o.duration, "window length")->required();
    add_out(snapshot);

    auto* metrics_cmd = command("metrics", "compute the snapshot metrics report", cmd_metrics);
    add_in(metrics_cmd);
    add_out(metrics_cmd);
    add_giant(metrics_cmd);
    add_distance(metrics_cmd);
    metrics_cmd->add_option("--label", o.labels, "snapshot label (default: input file stem)")->expected(1);

    auto* giant = command("giant", "extract the giant weakly connected component", cmd_giant);
    add_in(giant);
    add_out(giant);

    auto* fit_cmd = command("fit", "fit a degree distribution", cmd_fit);
    add_in(fit_cmd);
    add_out(fit_cmd);
    add_giant(fit_cmd);
    fit_cmd->add_option("--family", o.family, "power_law, log_normal, exponential or poisson");
    fit_cmd->add_option("--xmin", o.xmin, "tail cutoff or 'auto'");
    fit_cmd->add_option("--mode", o.mode, "degree mode: in, out or total");
    fit_cmd->add_option("--replicates", o.replicates, "bootstrap replicates (0 skips)");
    fit_cmd->add_option("--seed", o.seed, "bootstrap seed");
    fit_cmd->add_option("--ccdf", o.ccdf, "also write the empirical CCDF as CSV");

    auto* growth = command("growth", "cumulative node and edge growth with logarithmic fits", cmd_growth);
    add_in(growth);
    add_out(growth);
    growth->add_option("--bin", o.bin, "bin width");
    growth->add_option("--series", o.series, "also write the series as CSV");

    auto* comm = command("communities", "detect link communities", cmd_communities);
    add_in(comm);
    add_out(comm);
    add_giant(comm);

    auto* synth_cmd = command("synth", "generate synthetic graphs, samples or capture logs", cmd_synth);
    synth_cmd->add_option("--kind", o.kind, "pa, uniform, powerlaw or capture")->required();
    synth_cmd->add_option("--n", o.n, "nodes, samples or transactions");
    synth_cmd->add_option("--m", o.m, "edges per new node (pa)");
    synth_cmd->add_option("--p", o.p, "arc probability (uniform)");
    synth_cmd->add_option("--alpha", o.alpha, "exponent (powerlaw)");
    synth_cmd->add_option("--xmin", o.xmin, "lower bound (powerlaw)");
    synth_cmd->add_option("--duration", o.duration, "log span (capture)");
    synth_cmd->add_option("--seed", o.seed, "generator seed");
    add_out(synth_cmd);

    auto* graphml = command("export-graphml", "write the graph as GraphML", cmd_export_graphml);
    add_in(graphml);
    add_out(graphml);
    add_giant(graphml);

    auto* report = command("report", "side-by-side metrics for several snapshots", cmd_report);
    report->add_option("--in", o.in, "snapshot edge CSVs or logs")->required();
    report->add_option("--label", o.labels, "column labels, one per --in");
    report->add_option("--communities", o.communities, "partition JSON from the communities command");
    add_out(report);
    add_distance(report);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n";
        const auto subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.front()->help());
        return exit_usage;
    }

    const auto* sub = app.get_subcommands().front();
    Context ctx{o, sub->get_name(), err, flag_values(*sub)};
    try {
        handlers.at(ctx.command)(ctx);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        if (is_io_error(e.code())) return exit_io;
        if (e.code() == Errc::invalid_argument || e.code() == Errc::invalid_spec) return exit_usage;
        return exit_data;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_data;
    }

    Json manifest;
    manifest["command"] = ctx.command;
    manifest["flags"] = std::move(ctx.manifest_flags);
    manifest["inputs"] = std::move(ctx.inputs);
    manifest["version"] = TXNET_VERSION;
    manifest["seeds"] = std::move(ctx.seeds);

    Json summary;
    summary["command"] = ctx.command;
    summary["status"] = "ok";
    summary["outputs"] = std::move(ctx.outputs);
    summary["result"] = std::move(ctx.result);
    summary["manifest"] = std::move(manifest);
    out << summary.dump() << '\n';
    return exit_ok;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"txnet"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace txnet::cli
