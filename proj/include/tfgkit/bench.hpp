#pragma once

#include <chrono>
#include <string>
#include <utility>
#include <vector>

#include "tfgkit/conc.hpp"
#include "tfgkit/net_io.hpp"
#include "tfgkit/oracle.hpp"
#include "tfgkit/reach.hpp"
#include "tfgkit/reductions.hpp"

namespace tfgkit {

struct ReachTarget {
    Marking marking;
    bool from_walk = false;  // reachable by construction
};

// `per_kind` random-walk markings followed by `per_kind` mutations of further
// walks (one place toggled between 0 and 1).
inline std::vector<ReachTarget> reach_targets(const PetriNet& net, const Marking& m0, std::uint64_t seed,
                                              std::size_t per_kind = 5) {
    Rng rng(seed);
    std::vector<ReachTarget> out;
    for (std::size_t i = 0; i < per_kind; ++i)
        out.push_back({random_walk(net, m0, rng.below(25), rng.next()), true});
    for (std::size_t i = 0; i < per_kind && net.place_count() > 0; ++i) {
        Marking m = random_walk(net, m0, rng.below(25), rng.next());
        const auto& p = net.places()[rng.below(net.place_count())];
        m.set(p, m.get(p) > 0 ? 0 : 1);
        out.push_back({m, false});
    }
    return out;
}

struct BenchRow {
    std::string name;
    std::size_t p1 = 0, p2 = 0;
    double ratio = 0.0;
    std::string reach = "ok";
    std::string conc = "ok";
    double reduce_ms = 0, accel_ms = 0, oracle_ms = 0;
};

namespace detail {

class Stopwatch {
public:
    double lap_ms() {
        const auto now = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(now - last_).count();
        last_ = now;
        return ms;
    }

private:
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

}  // namespace detail

// Reduces one instance and cross-checks the accelerated reachability and
// concurrency answers against brute force on the original net.
inline BenchRow bench_instance(const std::string& name, const ParsedNet& in, const ExploreLimits& limits,
                               std::uint64_t seed) {
    BenchRow row;
    row.name = name;
    detail::Stopwatch clock;
    const auto red = reduce(in.net, in.initial);
    const auto g = build_tfg(in.net, red);
    row.reduce_ms = clock.lap_ms();
    row.p1 = in.net.place_count();
    row.p2 = red.reduced_net.place_count();
    row.ratio = red.ratio;

    const auto ss1 = explore(in.net, in.initial, limits);
    const auto ss2 = explore(red.reduced_net, red.reduced_marking, limits);
    row.oracle_ms = clock.lap_ms();
    if (!ss1.is_complete() || !ss2.is_complete()) {
        row.reach = row.conc = "skipped(truncated)";
        return row;
    }

    std::size_t reach_bad = 0;
    double accel = 0, oracle = 0;
    for (const auto& t : reach_targets(in.net, in.initial, seed)) {
        const auto v = decide(g, red.reduced_net, red.reduced_marking, t.marking, limits);
        accel += clock.lap_ms();
        const bool truth = ss1.contains(t.marking);
        oracle += clock.lap_ms();
        if (v.answer == Answer::Unknown) continue;
        if ((v.answer == Answer::Reachable) != truth || (t.from_walk && v.answer != Answer::Reachable)) ++reach_bad;
    }
    if (reach_bad) row.reach = "FAIL(" + std::to_string(reach_bad) + ")";

    if (!ss1.is_safe()) {
        row.conc = "n/a(unsafe)";
    } else {
        const auto c = matrix(g, oracle_concurrency(ss2)).restrict_to(in.net.places());
        accel += clock.lap_ms();
        const auto truth = oracle_concurrency(ss1);
        oracle += clock.lap_ms();
        std::size_t bad = 0;
        for (std::size_t i = 0; i < c.cells().size(); ++i) bad += c.cells()[i] != truth.cells()[i];
        if (bad) row.conc = "FAIL(" + std::to_string(bad) + ")";
    }
    row.accel_ms = accel;
    row.oracle_ms += oracle;
    return row;
}

}  // namespace tfgkit
