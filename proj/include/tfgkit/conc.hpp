#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "tfgkit/error.hpp"
#include "tfgkit/matrix.hpp"
#include "tfgkit/tfg.hpp"

namespace tfgkit {

// Instrumentation for the cubic write bound.
struct ConcStats {
    std::size_t writes = 0;
    std::size_t propagations = 0;
};

namespace detail {

// Relation between two roots. Non-constant roots read rel2 (over N2's
// places); a K(0) node is dead, a K(n>0) node is marked in every reachable
// marking.
inline Cell root_cell(const TokenFlowGraph& g, const ConcurrencyMatrix& rel2, NodeId v, NodeId w) {
    const auto kv = g.constant_value(v), kw = g.constant_value(w);
    if ((kv && *kv == 0) || (kw && *kw == 0)) return Cell::Zero;
    if (kv && kw) return Cell::One;
    if (kv) return rel2.at(g.name(w), g.name(w));
    if (kw) return rel2.at(g.name(v), g.name(v));
    return rel2.at(g.name(v), g.name(w));
}

class Writer {
public:
    // With `overwrite_zero`, Zero is the initial value rather than a fact.
    Writer(ConcurrencyMatrix& c, ConcStats* stats, bool overwrite_zero = false)
        : c_(c), stats_(stats), overwrite_zero_(overwrite_zero) {}

    // Returns whether the cell changed; a known cell never flips.
    bool put(NodeId i, NodeId j, Cell v) {
        if (stats_) ++stats_->writes;
        const Cell cur = c_.at(i, j);
        if (cur == v) return false;
        const bool blank = cur == Cell::Unknown || (overwrite_zero_ && cur == Cell::Zero);
        if (!blank) throw InconsistentInput(c_.order()[i], c_.order()[j]);
        c_.set(i, j, v);
        return true;
    }

    void square(const std::vector<NodeId>& a, const std::vector<NodeId>& b, Cell v) {
        for (NodeId x : a)
            for (NodeId y : b) put(x, y, v);
    }

private:
    ConcurrencyMatrix& c_;
    ConcStats* stats_;
    bool overwrite_zero_;
};

inline void propagate(const TokenFlowGraph& g, Writer& out, NodeId v, std::vector<char>& done, ConcStats* stats) {
    if (done[v]) return;
    done[v] = 1;
    if (stats) ++stats->propagations;
    for (NodeId w : g.successors(v)) out.put(v, w, Cell::One);
    for (NodeId w : g.children(v)) propagate(g, out, w, done, stats);
    for (NodeId w : g.red_children(v)) {
        std::vector<NodeId> rest;
        for (NodeId x : g.successors(v))
            if (!g.reaches(w, x)) rest.push_back(x);
        out.square(rest, g.successors(w), Cell::One);
    }
}

// 1-facts implied by the known root relation.
inline void propagate_ones(const TokenFlowGraph& g, const ConcurrencyMatrix& rel2, Writer& out, ConcStats* stats) {
    std::vector<char> done(g.size(), 0);
    const auto& roots = g.roots();
    for (NodeId v : roots)
        if (root_cell(g, rel2, v, v) == Cell::One) propagate(g, out, v, done, stats);
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (root_cell(g, rel2, roots[i], roots[j]) == Cell::One)
                out.square(g.successors(roots[i]), g.successors(roots[j]), Cell::One);
}

inline void require_roots(const TokenFlowGraph& g, const ConcurrencyMatrix& rel2) {
    for (NodeId v : g.roots())
        if (!g.is_constant(v)) rel2.index(g.name(v));
}

}  // namespace detail

// Nondeadness of v: every pair in succs(v) x succs(v) reachable through v's
// arcs is marked concurrent. Never writes 0.
inline void propagate(const TokenFlowGraph& g, ConcurrencyMatrix& c, NodeId v, ConcStats* stats = nullptr) {
    std::vector<char> done(g.size(), 0);
    detail::Writer out(c, stats, true);
    detail::propagate(g, out, v, done, stats);
}

// Concurrency over all nodes of g (in g's node order) from the complete
// relation rel2 between the places of the reduced net.
inline ConcurrencyMatrix matrix(const TokenFlowGraph& g, const ConcurrencyMatrix& rel2, ConcStats* stats = nullptr) {
    detail::require_roots(g, rel2);
    for (NodeId v : g.roots())
        for (NodeId w : g.roots())
            if (detail::root_cell(g, rel2, v, w) == Cell::Unknown) throw IncompleteInput();
    ConcurrencyMatrix c(g.names(), Cell::Zero);
    detail::Writer out(c, stats, true);
    detail::propagate_ones(g, rel2, out, stats);
    return c;
}

// Same as matrix() but rel2 may hold unknown cells; the result keeps unknown
// wherever neither the 1-propagation nor the 0-axioms decide. Throws
// InconsistentInput when rel2 forces a cell both ways.
inline ConcurrencyMatrix partial_matrix(const TokenFlowGraph& g, const ConcurrencyMatrix& rel2,
                                        ConcStats* stats = nullptr) {
    detail::require_roots(g, rel2);
    ConcurrencyMatrix c(g.names(), Cell::Unknown);
    detail::Writer out(c, stats);
    const auto& roots = g.roots();
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
            if (auto v = detail::root_cell(g, rel2, roots[i], roots[j]); v != Cell::Unknown)
                out.put(roots[i], roots[j], v);
    detail::propagate_ones(g, rel2, out, stats);

    // Equations as (v, X): v = sum X, for both arc kinds.
    std::vector<std::pair<NodeId, std::vector<NodeId>>> groups;
    for (NodeId v = 0; v < g.size(); ++v) {
        if (!g.agg_children(v).empty()) groups.emplace_back(v, g.agg_children(v));
        if (!g.red_parents(v).empty()) groups.emplace_back(v, g.red_parents(v));
    }
    auto dead = [&](NodeId v) { return c.at(v, v) == Cell::Zero; };
    const std::size_t n = g.size();

    for (bool changed = true; changed;) {
        changed = false;
        // (1) a dead node is concurrent with nothing
        for (NodeId v = 0; v < n; ++v)
            if (dead(v))
                for (NodeId w = 0; w < n; ++w) changed |= out.put(v, w, Cell::Zero);
        for (const auto& [v, xs] : groups) {
            // (2) all parts dead => sum dead; (3) sum dead => parts dead
            if (std::all_of(xs.begin(), xs.end(), dead)) changed |= out.put(v, v, Cell::Zero);
            if (dead(v))
                for (NodeId x : xs) changed |= out.put(x, x, Cell::Zero);
            // (4) the parts of a sum bounded by 1 are never marked together
            for (std::size_t i = 0; i < xs.size(); ++i)
                for (std::size_t j = i + 1; j < xs.size(); ++j) changed |= out.put(xs[i], xs[j], Cell::Zero);
            for (NodeId w = 0; w < n; ++w) {
                // (5) every part 0 against w => sum 0 against w
                if (std::all_of(xs.begin(), xs.end(), [&](NodeId x) { return c.at(x, w) == Cell::Zero; }))
                    changed |= out.put(v, w, Cell::Zero);
                // (6) sum 0 against w => every part 0 against w
                if (c.at(v, w) == Cell::Zero)
                    for (NodeId x : xs) changed |= out.put(x, w, Cell::Zero);
            }
        }
    }
    return c;
}

// 2k / (n^2 + n) for k known cells of the triangle; 1 for the empty matrix.
inline double filling_ratio(const ConcurrencyMatrix& c) {
    const double n = static_cast<double>(c.size());
    if (c.size() == 0) return 1.0;
    const double known = static_cast<double>(c.cells().size() - c.count(Cell::Unknown));
    return 2.0 * known / (n * n + n);
}

}  // namespace tfgkit
