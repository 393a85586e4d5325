#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "tfgkit/bench.hpp"
#include "tfgkit/conc.hpp"
#include "tfgkit/corpus.hpp"
#include "tfgkit/net_io.hpp"
#include "tfgkit/oracle.hpp"
#include "tfgkit/reach.hpp"
#include "tfgkit/reductions.hpp"
#include "tfgkit/tfg.hpp"

namespace tfgkit {

// Exit codes of the command line tool.
enum ExitCode : int { kOk = 0, kUnreachable = 1, kInputError = 2, kUnknown = 3 };

struct RunConfig {
    std::string format = "auto";
    std::string equations;  // external reducer output; needs `reduced`
    std::string reduced;
    double timeout_s = 0;  // 0: none
    std::size_t max_states = 1'000'000;
    Tokens max_token = 1'000;
    std::uint64_t seed = 1;
    std::string output;
    bool partial = false;
    bool oracle = false;
    bool all_nodes = false;
    bool no_timings = false;
    bool dot = false;

    ExploreLimits limits() const {
        ExploreLimits l{max_states, max_token, std::nullopt};
        if (timeout_s > 0) l.timeout = std::chrono::milliseconds(static_cast<long long>(timeout_s * 1000));
        return l;
    }

    NetFormat net_format() const {
        if (format == "net") return NetFormat::Net;
        if (format == "pnml") return NetFormat::Pnml;
        return NetFormat::Auto;
    }
};

namespace detail {

inline std::string fixed3(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write '" + path + "'");
    f << text;
}

struct Pipeline {
    ParsedNet n1;
    ReductionResult red;
    std::optional<TokenFlowGraph> g;
};

inline Pipeline load_pipeline(const RunConfig& cfg, const std::string& net_path) {
    Pipeline p{load_net(net_path, cfg.net_format()), {}, std::nullopt};
    if (!cfg.equations.empty()) {
        if (cfg.reduced.empty()) throw Error("--equations needs --reduced");
        auto n2 = load_net(cfg.reduced, cfg.net_format());
        p.red.equations = parse_equations(read_file(cfg.equations));
        p.red.reduced_net = std::move(n2.net);
        p.red.reduced_marking = std::move(n2.initial);
        const auto a = p.n1.net.place_count(), b = p.red.reduced_net.place_count();
        p.red.ratio = a == 0 || b >= a ? 0.0 : static_cast<double>(a - b) / static_cast<double>(a);
    } else {
        p.red = reduce(p.n1.net, p.n1.initial);
    }
    p.g.emplace(build_tfg(p.n1.net, p.red));
    return p;
}

inline std::string matrix_stats(const ConcurrencyMatrix& c) {
    return "filling-ratio " + fixed3(filling_ratio(c)) + " zeros " + std::to_string(c.count(Cell::Zero)) + " ones " +
           std::to_string(c.count(Cell::One)) + " unknown " + std::to_string(c.count(Cell::Unknown)) + "\n";
}

// Matrix to --output (stats on stdout) or to stdout (stats on stderr).
inline void emit_matrix(const RunConfig& cfg, const ConcurrencyMatrix& c, std::ostream& out, std::ostream& err) {
    const auto text = write_matrix(to_document(c));
    if (!cfg.output.empty()) {
        write_text(cfg.output, text);
        out << matrix_stats(c);
    } else {
        out << text;
        err << matrix_stats(c);
    }
}

inline int cmd_reduce(const RunConfig& cfg, const std::string& net_path, std::ostream& out) {
    const auto p = load_pipeline(cfg, net_path);
    out << "ratio " << fixed3(p.red.ratio) << "\n" << write_equations(p.red.equations);
    if (!cfg.output.empty()) {
        write_text(cfg.output + ".net", write_net(p.red.reduced_net, p.red.reduced_marking));
        write_text(cfg.output + ".eq", write_equations(p.red.equations));
    }
    return kOk;
}

inline int verdict_code(Answer a) {
    switch (a) {
        case Answer::Reachable: return kOk;
        case Answer::Unreachable: return kUnreachable;
        case Answer::Unknown: return kUnknown;
    }
    return kUnknown;
}

inline int cmd_reach(const RunConfig& cfg, const std::string& net_path, const std::string& query_path,
                     std::ostream& out) {
    const auto p = load_pipeline(cfg, net_path);
    const auto target = parse_marking_query(read_file(query_path), p.n1.net);
    const auto v = decide(*p.g, p.red.reduced_net, p.red.reduced_marking, target, cfg.limits());
    if (v.projected) log("reach: explored ", v.explored, " markings of the reduced net");
    out << to_string(v.answer) << ' ' << to_string(v.reason) << '\n';
    return verdict_code(v.answer);
}

inline ConcurrencyMatrix oracle_matrix(const PetriNet& net, const Marking& m0, const ExploreLimits& limits) {
    const auto ss = explore(net, m0, limits);
    log("oracle: ", ss.size(), " markings");
    return oracle_concurrency(ss);
}

inline int cmd_conc(const RunConfig& cfg, const std::string& net_path, const std::string& rel2_path,
                    std::ostream& out, std::ostream& err) {
    if (cfg.oracle) {
        const auto n1 = load_net(net_path, cfg.net_format());
        emit_matrix(cfg, oracle_matrix(n1.net, n1.initial, cfg.limits()), out, err);
        return kOk;
    }
    const auto p = load_pipeline(cfg, net_path);
    const auto rel2 = rel2_path.empty()
                          ? oracle_matrix(p.red.reduced_net, p.red.reduced_marking, cfg.limits())
                          : to_matrix(parse_matrix(read_file(rel2_path)));
    const bool partial = cfg.partial || !rel2.is_complete();
    auto c = partial ? partial_matrix(*p.g, rel2) : matrix(*p.g, rel2);
    if (!cfg.all_nodes) c = c.restrict_to(p.n1.net.places());
    emit_matrix(cfg, c, out, err);
    return kOk;
}

inline int cmd_tfg_check(const RunConfig& cfg, const std::string& net_path, const std::string& eq_path,
                         const std::string& reduced_path, std::ostream& out) {
    const auto n1 = load_net(net_path, cfg.net_format());
    const auto n2 = load_net(reduced_path, cfg.net_format());
    const auto eqs = parse_equations(read_file(eq_path));
    const auto report = check_well_formed(eqs, n1.net.places(), n2.net.places());
    for (const auto& c : report.checks) {
        out << c.id << ' ' << (c.ok ? "ok" : "FAIL") << ' ' << c.description;
        for (const auto& w : c.witness) out << (&w == &c.witness.front() ? ": " : " ") << w;
        out << '\n';
    }
    if (report.ok() && cfg.dot) out << to_dot(build_tfg(eqs, n1.net.places(), n2.net.places()));
    return report.ok() ? kOk : kInputError;
}

inline int cmd_oracle(const RunConfig& cfg, const std::string& net_path, const std::string& query_path,
                      std::ostream& out, std::ostream& err) {
    const auto n1 = load_net(net_path, cfg.net_format());
    if (query_path.empty()) {
        emit_matrix(cfg, oracle_matrix(n1.net, n1.initial, cfg.limits()), out, err);
        return kOk;
    }
    const auto target = parse_marking_query(read_file(query_path), n1.net);
    const auto r = search(n1.net, n1.initial, target, cfg.limits());
    if (r.found) {
        out << "REACHABLE oracle\n";
        return kOk;
    }
    if (r.truncation != Truncation::None) {
        out << "UNKNOWN " << to_string(r.truncation) << '\n';
        return kUnknown;
    }
    out << "UNREACHABLE oracle\n";
    return kUnreachable;
}

inline std::string histogram(const std::vector<BenchRow>& rows) {
    std::vector<std::size_t> buckets(10, 0);
    for (const auto& r : rows) buckets[std::min<std::size_t>(9, static_cast<std::size_t>(r.ratio * 10))]++;
    std::string s = "# reduction ratio histogram\n";
    for (std::size_t b = 0; b < 10; ++b) {
        char label[48];
        std::snprintf(label, sizeof label, "# %.1f-%.1f %3zu", b / 10.0, (b + 1) / 10.0, buckets[b]);
        s += label;
        if (buckets[b]) s += " " + std::string(buckets[b], '#');
        s += "\n";
    }
    return s;
}

inline int cmd_bench(const RunConfig& cfg, const std::string& dir, std::ostream& out) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw Error("not a directory: '" + dir + "'");
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        const auto ext = e.path().extension();
        if (e.is_regular_file() && (ext == ".net" || ext == ".pnml")) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

    out << "name\tP1\tP2\tratio\treach\tconc\ttimings\n";
    std::vector<BenchRow> rows;
    bool all_ok = true;
    for (const auto& f : files) {
        const auto row = bench_instance(f.stem().string(), load_net(f.string(), cfg.net_format()), cfg.limits(), cfg.seed);
        all_ok = all_ok && row.reach.rfind("FAIL", 0) != 0 && row.conc.rfind("FAIL", 0) != 0;
        std::string timings = "-";
        if (!cfg.no_timings) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "reduce=%.2fms accel=%.2fms oracle=%.2fms", row.reduce_ms, row.accel_ms,
                          row.oracle_ms);
            timings = buf;
        }
        out << row.name << '\t' << row.p1 << '\t' << row.p2 << '\t' << fixed3(row.ratio) << '\t' << row.reach << '\t'
            << row.conc << '\t' << timings << '\n';
        rows.push_back(row);
    }
    if (!rows.empty()) out << histogram(rows);
    return all_ok ? kOk : kUnreachable;
}

inline int cmd_gen_corpus(const RunConfig& cfg, const std::string& dir, std::size_t count, std::ostream& out) {
    std::filesystem::create_directories(dir);
    auto all = corpus::generate(count, cfg.seed);
    for (auto& i : corpus::fixed_instances()) all.push_back(std::move(i));
    for (const auto& i : all)
        write_text((std::filesystem::path(dir) / (i.name + ".net")).string(), write_net(i.net.net, i.net.initial));
    out << all.size() << " nets written to " << dir << '\n';
    return kOk;
}

}  // namespace detail

// Entry point of the `tfgkit` tool, with injectable streams.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Token flow graph toolkit for reduced safe Petri nets", "tfgkit"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string net, second, third;
    std::size_t count = 34;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "input net format")->check(CLI::IsMember({"auto", "net", "pnml"}));
        sub->add_option("--max-states", cfg.max_states, "state cap for explicit exploration")
            ->check(CLI::PositiveNumber);
        sub->add_option("--max-token", cfg.max_token, "per-place token cap")->check(CLI::PositiveNumber);
        sub->add_option("--timeout", cfg.timeout_s, "exploration budget in seconds")->check(CLI::PositiveNumber);
    };
    auto reducer = [&](CLI::App* sub) {
        sub->add_option("--equations", cfg.equations, "use these equations instead of the internal reducer");
        sub->add_option("--reduced", cfg.reduced, "reduced net matching --equations");
    };

    auto* reduce_cmd = app.add_subcommand("reduce", "reduce a net and print the ratio and equations");
    reduce_cmd->add_option("net", net)->required();
    reduce_cmd->add_option("--output", cfg.output, "write <output>.net and <output>.eq");
    common(reduce_cmd);

    auto* reach_cmd = app.add_subcommand("reach", "decide reachability of a marking");
    reach_cmd->add_option("net", net)->required();
    reach_cmd->add_option("query", second, "file with name=value tokens")->required();
    common(reach_cmd);
    reducer(reach_cmd);

    auto* conc_cmd = app.add_subcommand("conc", "concurrency matrix of the places");
    conc_cmd->add_option("net", net)->required();
    conc_cmd->add_option("rel2", second, "concurrency matrix of the reduced net");
    conc_cmd->add_flag("--partial", cfg.partial, "allow unknown cells");
    conc_cmd->add_flag("--oracle", cfg.oracle, "brute force on the input net");
    conc_cmd->add_flag("--all-nodes", cfg.all_nodes, "keep rows of every graph node");
    conc_cmd->add_option("--output", cfg.output, "matrix file");
    common(conc_cmd);
    reducer(conc_cmd);

    auto* check_cmd = app.add_subcommand("tfg-check", "run the well-formedness checks T1-T6");
    check_cmd->add_option("net", net)->required();
    check_cmd->add_option("equations", second)->required();
    check_cmd->add_option("reduced", third)->required();
    check_cmd->add_flag("--dot", cfg.dot, "print the graph in DOT");
    common(check_cmd);

    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force answers on the input net");
    oracle_cmd->add_option("net", net)->required();
    oracle_cmd->add_option("--query", second, "reachability query instead of the matrix");
    oracle_cmd->add_option("--output", cfg.output, "matrix file");
    common(oracle_cmd);

    auto* bench_cmd = app.add_subcommand("bench", "cross-check every net of a directory");
    bench_cmd->add_option("dir", net)->required();
    bench_cmd->add_option("--seed", cfg.seed, "seed for query targets");
    bench_cmd->add_flag("--no-timings", cfg.no_timings, "omit timings for byte-stable output");
    common(bench_cmd);

    auto* gen_cmd = app.add_subcommand("gen-corpus", "write the generated benchmark nets");
    gen_cmd->add_option("dir", net)->required();
    gen_cmd->add_option("--count", count, "number of random nets");
    gen_cmd->add_option("--seed", cfg.seed, "generator seed");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (reduce_cmd->parsed()) return detail::cmd_reduce(cfg, net, out);
        if (reach_cmd->parsed()) return detail::cmd_reach(cfg, net, second, out);
        if (conc_cmd->parsed()) return detail::cmd_conc(cfg, net, second, out, err);
        if (check_cmd->parsed()) return detail::cmd_tfg_check(cfg, net, second, third, out);
        if (oracle_cmd->parsed()) return detail::cmd_oracle(cfg, net, second, out, err);
        if (bench_cmd->parsed()) return detail::cmd_bench(cfg, net, out);
        if (gen_cmd->parsed()) return detail::cmd_gen_corpus(cfg, net, count, out);
    } catch (const IncompleteStateSpace& e) {
        err << "tfgkit: " << e.what() << '\n';
        return kUnknown;
    } catch (const std::exception& e) {
        err << "tfgkit: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    return run_cli(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace tfgkit
