#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tfgkit/petri.hpp"
#include "tfgkit/reductions.hpp"
#include "tfgkit/tfg.hpp"

namespace tfgkit {

enum class Answer { Reachable, Unreachable, Unknown };
enum class Reason { ProjectionFailed, BackendHit, BackendExhausted, BackendTruncated };

inline const char* to_string(Answer a) {
    switch (a) {
        case Answer::Reachable: return "REACHABLE";
        case Answer::Unreachable: return "UNREACHABLE";
        case Answer::Unknown: return "UNKNOWN";
    }
    return "?";
}

inline const char* to_string(Reason r) {
    switch (r) {
        case Reason::ProjectionFailed: return "projection-failed";
        case Reason::BackendHit: return "backend-hit";
        case Reason::BackendExhausted: return "backend-exhausted";
        case Reason::BackendTruncated: return "backend-truncated";
    }
    return "?";
}

struct ReachVerdict {
    Answer answer = Answer::Unknown;
    Reason reason = Reason::BackendTruncated;
    std::optional<Marking> projected;  // absent iff the projection failed
    Truncation truncation = Truncation::None;
    std::size_t explored = 0;
};

namespace detail {

inline void bottom_up(const TokenFlowGraph& g, Configuration& c, NodeId v, std::vector<char>& visited) {
    if (visited[v]) return;
    visited[v] = 1;
    for (NodeId w : g.children(v)) bottom_up(g, c, w, visited);
    const auto& kids = g.agg_children(v);
    if (kids.empty()) return;
    Tokens sum = 0;
    for (NodeId x : kids) {
        if (!c.defined(x)) return;
        sum += *c.get(x);
    }
    c.set(v, sum);
}

}  // namespace detail

// Fills every node below and including v whose value is the sum of its
// agglomeration children. Children are settled first.
inline Configuration bottom_up(const TokenFlowGraph& g, Configuration c, NodeId v) {
    std::vector<char> visited(g.size(), 0);
    detail::bottom_up(g, c, v, visited);
    return c;
}

// The unique total configuration candidate for a marking of N1: places from
// m1p, constants from their values, everything else bottom-up. Returns
// nullopt when it is not well-defined, which means m1p is unreachable.
inline std::optional<Configuration> project_configuration(const TokenFlowGraph& g, const Marking& m1p) {
    for (const auto& [p, n] : m1p.entries()) {
        const auto v = g.find(p);
        if (!v || std::find(g.p1().begin(), g.p1().end(), *v) == g.p1().end()) throw UnknownPlace(p);
    }
    Configuration c = configuration_from(g, m1p, g.p1());
    std::vector<char> visited(g.size(), 0);
    for (NodeId v = 0; v < g.size(); ++v) detail::bottom_up(g, c, v, visited);
    if (!c.is_total() || !is_well_defined(g, c)) return std::nullopt;
    return c;
}

inline std::optional<Marking> project(const TokenFlowGraph& g, const Marking& m1p) {
    auto c = project_configuration(g, m1p);
    if (!c) return std::nullopt;
    return restrict_to(g, *c, g.p2());
}

// Projects m1p, then searches the reduced net for the projection.
inline ReachVerdict decide(const TokenFlowGraph& g, const PetriNet& n2, const Marking& m2, const Marking& m1p,
                           const ExploreLimits& limits = {}) {
    ReachVerdict v;
    v.projected = project(g, m1p);
    if (!v.projected) {
        v.answer = Answer::Unreachable;
        v.reason = Reason::ProjectionFailed;
        return v;
    }
    log("reach: projected ", v.projected->to_string());
    const auto r = search(n2, m2, *v.projected, limits);
    v.explored = r.explored;
    v.truncation = r.truncation;
    if (r.found) {
        v.answer = Answer::Reachable;
        v.reason = Reason::BackendHit;
    } else if (r.truncation == Truncation::None) {
        v.answer = Answer::Unreachable;
        v.reason = Reason::BackendExhausted;
    } else {
        v.answer = Answer::Unknown;
        v.reason = Reason::BackendTruncated;
    }
    return v;
}

inline TokenFlowGraph build_tfg(const PetriNet& n1, const ReductionResult& red) {
    return build_tfg(red.equations, n1.places(), red.reduced_net.places());
}

inline ReachVerdict decide(const PetriNet& n1, const Marking& m1p, const ReductionResult& red,
                           const ExploreLimits& limits = {}) {
    return decide(build_tfg(n1, red), red.reduced_net, red.reduced_marking, m1p, limits);
}

// Inv(m2') for every marking of the reduced state space: the N1 markings
// obtained by restricting each total well-defined extension of m2'.
inline std::vector<std::pair<Marking, std::set<Marking>>> partition(const TokenFlowGraph& g, const StateSpace& ss2,
                                                                    Tokens bound) {
    if (!ss2.is_complete()) throw IncompleteStateSpace();
    std::vector<std::pair<Marking, std::set<Marking>>> out;
    for (std::size_t i = 0; i < ss2.size(); ++i) {
        const Marking m2 = ss2.marking(i);
        std::set<Marking> inv;
        for (const auto& c : enumerate_extensions(g, configuration_from(g, m2, g.p2()), bound))
            inv.insert(restrict_to(g, c, g.p1()));
        out.emplace_back(m2, std::move(inv));
    }
    return out;
}

}  // namespace tfgkit
