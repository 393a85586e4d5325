#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "tfgkit/net_io.hpp"
#include "tfgkit/petri.hpp"
#include "tfgkit/util.hpp"

namespace tfgkit::corpus {

struct Instance {
    std::string name;
    ParsedNet net;
};

namespace detail {

// Index-based net under construction; names are assigned by build().
struct Builder {
    struct Trans {
        std::vector<std::size_t> pre, post;
    };
    std::vector<Tokens> m0;
    std::vector<Trans> trans;

    std::size_t place(Tokens marked = 0) {
        m0.push_back(marked);
        return m0.size() - 1;
    }
    std::size_t transition(std::vector<std::size_t> pre, std::vector<std::size_t> post) {
        trans.push_back({std::move(pre), std::move(post)});
        return trans.size() - 1;
    }

    ParsedNet build() const {
        ParsedNet out;
        auto pname = [](std::size_t i) { return "p" + std::to_string(i); };
        for (std::size_t i = 0; i < m0.size(); ++i) {
            out.net.add_place(pname(i));
            out.initial.set(pname(i), m0[i]);
        }
        for (std::size_t i = 0; i < trans.size(); ++i) {
            std::vector<std::pair<std::string, Tokens>> pre, post;
            for (auto p : trans[i].pre) pre.emplace_back(pname(p), 1);
            for (auto p : trans[i].post) post.emplace_back(pname(p), 1);
            out.net.add_transition("t" + std::to_string(i), pre, post);
        }
        return out;
    }
};

// Random structured process: atoms, sequences, choices and parallel blocks
// (a parallel branch may be empty, which yields duplicate places).
class ProcessGen {
public:
    ProcessGen(Builder& b, Rng& rng) : b_(b), rng_(rng) {}

    std::size_t block(std::size_t in, int depth) {
        const auto roll = depth >= 3 ? 0 : rng_.below(100);
        if (roll < 35) {
            const auto out = b_.place();
            atoms.push_back(b_.transition({in}, {out}));
            return out;
        }
        if (roll < 65) return block(block(in, depth + 1), depth + 1);
        if (roll < 80) {
            const auto o1 = block(in, depth + 1), o2 = block(in, depth + 1), j = b_.place();
            b_.transition({o1}, {j});
            b_.transition({o2}, {j});
            return j;
        }
        const auto width = 2 + rng_.below(2);
        std::vector<std::size_t> starts, ends;
        for (std::size_t i = 0; i < width; ++i) starts.push_back(b_.place());
        b_.transition({in}, starts);
        for (auto s : starts) ends.push_back(rng_.chance(25) ? s : block(s, depth + 1));
        const auto out = b_.place();
        b_.transition(ends, {out});
        return out;
    }

    std::vector<std::size_t> atoms;

private:
    Builder& b_;
    Rng& rng_;
};

}  // namespace detail

// One random safe-by-construction candidate; callers filter by state count.
inline ParsedNet random_candidate(Rng& rng) {
    detail::Builder b;
    std::vector<std::vector<std::size_t>> atoms;
    const auto processes = 1 + rng.below(3);
    for (std::size_t i = 0; i < processes; ++i) {
        detail::ProcessGen gen(b, rng);
        const auto start = b.place(1);
        const auto end = gen.block(start, 0);
        if (rng.chance(60)) b.transition({end}, {start});
        atoms.push_back(gen.atoms);
    }
    // sync two atoms of different processes into one transition
    if (processes > 1 && rng.chance(50) && !atoms[0].empty() && !atoms[1].empty()) {
        const auto keep = atoms[0][rng.below(atoms[0].size())];
        const auto drop = atoms[1][rng.below(atoms[1].size())];
        auto& k = b.trans[keep];
        const auto& d = b.trans[drop];
        k.pre.insert(k.pre.end(), d.pre.begin(), d.pre.end());
        k.post.insert(k.post.end(), d.post.begin(), d.post.end());
        b.trans.erase(b.trans.begin() + static_cast<std::ptrdiff_t>(drop));
    }
    // duplicate a place with all its arcs
    if (rng.chance(50)) {
        const auto p = rng.below(b.m0.size());
        const auto q = b.place(b.m0[p]);
        for (auto& t : b.trans) {
            if (std::find(t.pre.begin(), t.pre.end(), p) != t.pre.end()) t.pre.push_back(q);
            if (std::find(t.post.begin(), t.post.end(), p) != t.post.end()) t.post.push_back(q);
        }
    }
    if (rng.chance(40)) b.place(static_cast<Tokens>(rng.below(2)));  // isolated
    if (rng.chance(40)) {
        const auto target = rng.below(b.m0.size());
        const auto dead = b.place(0);
        b.transition({dead}, {target});
    }
    return b.build();
}

// `count` random safe nets with at most `max_states` reachable markings,
// named gen-000, gen-001, ...
inline std::vector<Instance> generate(std::size_t count, std::uint64_t seed, std::size_t max_states = 10'000) {
    Rng rng(seed);
    std::vector<Instance> out;
    while (out.size() < count) {
        auto net = random_candidate(rng);
        const auto ss = explore(net.net, net.initial, {max_states, 1, std::nullopt});
        if (!ss.is_complete()) continue;
        char name[16];
        std::snprintf(name, sizeof name, "gen-%03zu", out.size());
        out.push_back({name, std::move(net)});
    }
    return out;
}

inline ParsedNet t1() { return parse_net("pl a 1\npl b 0\ntr t a -> b\n"); }

inline ParsedNet d1() { return parse_net("pl p 1\npl q 0\npl r 0\ntr t p -> q r\n"); }

inline ParsedNet a1() { return parse_net("pl x 1\npl y 0\npl z 0\ntr t1 x -> y\ntr t2 y -> z\n"); }

// Two cycles that meet in t3, a duplicate pair p4/p5, an always-marked p6
// and a dead p0.
inline ParsedNet m1_motif() {
    return parse_net(
        "pl p0 0\npl p1 1\npl p2 0\npl p3 1\npl p4 0\npl p5 0\npl p6 1\n"
        "tr t1 p1 -> p2\n"
        "tr t2 p3 -> p4 p5\n"
        "tr t3 p2 p4 p5 -> p1 p3\n"
        "tr t8 p0 -> p6\n");
}

// start forks k diamonds d_i -> (q_i, r_i) -> s_i. 1 + 3^k markings; the
// reducer collapses it to two places.
inline ParsedNet diamonds(std::size_t k) {
    std::string text = "pl start 1\n";
    std::string fork = "tr t0 start ->";
    for (std::size_t i = 1; i <= k; ++i) {
        const auto n = std::to_string(i);
        text += "pl d" + n + " 0\npl q" + n + " 0\npl r" + n + " 0\npl s" + n + " 0\n";
        fork += " d" + n;
    }
    text += fork + "\n";
    for (std::size_t i = 1; i <= k; ++i) {
        const auto n = std::to_string(i);
        text += "tr fork" + n + " d" + n + " -> q" + n + " r" + n + "\n";
        text += "tr join" + n + " q" + n + " r" + n + " -> s" + n + "\n";
    }
    return parse_net(text);
}

// Fixed instances bundled next to the generated ones.
inline std::vector<Instance> fixed_instances() {
    return {{"a1", a1()}, {"d1", d1()}, {"diamonds-3", diamonds(3)}, {"m1-motif", m1_motif()}, {"t1", t1()}};
}

}  // namespace tfgkit::corpus
