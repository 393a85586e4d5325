#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tfgkit/equation.hpp"
#include "tfgkit/error.hpp"
#include "tfgkit/petri.hpp"

namespace tfgkit {

using NodeId = std::size_t;
using NodeArc = std::pair<NodeId, NodeId>;

// Unchecked graph as produced from an equation list. Kept separate from
// TokenFlowGraph so that the well-formedness checks can run on graphs that
// fail them.
struct RawTfg {
    std::vector<std::string> nodes;
    std::vector<std::optional<Tokens>> constant;  // per node; set for constant nodes
    std::set<NodeArc> r_arcs;                     // x ->. v   (v = ... + x + ...)
    std::set<NodeArc> a_arcs;                     // v o-> x   (v = ... + x + ...)
};

// Nodes: P1 in order, then the places of P2 not in P1, then the remaining
// equation variables by first appearance, then one fresh constant node k<i>
// per constant equation.
inline RawTfg raw_tfg(const std::vector<TaggedEquation>& equations, const std::vector<std::string>& p1,
                      const std::vector<std::string>& p2) {
    RawTfg g;
    std::unordered_map<std::string, NodeId> index;
    auto add = [&](const std::string& name, std::optional<Tokens> k = std::nullopt) {
        auto [it, fresh] = index.emplace(name, g.nodes.size());
        if (fresh) {
            g.nodes.push_back(name);
            g.constant.push_back(k);
        }
        return it->second;
    };
    for (const auto& p : p1) add(p);
    for (const auto& p : p2) add(p);
    for (const auto& eq : equations) {
        eq.validate();
        for (const auto& v : eq.variables()) add(v);
    }
    std::size_t counter = 0;
    for (const auto& eq : equations) {
        const NodeId v = index.at(eq.removed);
        if (eq.is_constant()) {
            const auto kname = detail::fresh_name("k", counter, [&](const std::string& n) { return index.count(n) != 0; });
            const NodeId k = add(kname, eq.constant);
            if (eq.tag == EquationTag::Redundancy)
                g.r_arcs.insert({k, v});
            else
                g.a_arcs.insert({v, k});
            continue;
        }
        for (const auto& t : eq.terms) {
            const NodeId x = index.at(t);
            if (eq.tag == EquationTag::Redundancy)
                g.r_arcs.insert({x, v});
            else
                g.a_arcs.insert({v, x});
        }
    }
    return g;
}

struct WellFormednessCheck {
    std::string id;           // "T1" .. "T6"
    std::string description;
    bool ok = true;
    std::vector<std::string> witness;
};

struct WellFormednessReport {
    std::vector<WellFormednessCheck> checks;

    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.ok; });
    }
    const WellFormednessCheck* first_failure() const {
        for (const auto& c : checks)
            if (!c.ok) return &c;
        return nullptr;
    }
};

namespace detail {

inline std::vector<std::string> sorted_names(const std::set<std::string>& s) { return {s.begin(), s.end()}; }

inline std::vector<std::string> symmetric_difference(const std::set<std::string>& a, const std::set<std::string>& b) {
    std::vector<std::string> out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Canonical text of one equation / arc group: tag, lhs and sorted rhs, with
// constants rendered by value.
inline std::string group_key(char tag, const std::string& lhs, std::vector<std::string> rhs) {
    std::sort(rhs.begin(), rhs.end());
    std::string s(1, tag);
    s += ": " + lhs + " =";
    for (const auto& r : rhs) s += " " + r;
    return s;
}

}  // namespace detail

inline WellFormednessReport check_well_formed(const RawTfg& g, const std::vector<TaggedEquation>& equations,
                                              const std::vector<std::string>& p1,
                                              const std::vector<std::string>& p2) {
    WellFormednessReport report;
    const std::size_t n = g.nodes.size();
    auto is_const = [&](NodeId v) { return g.constant[v].has_value(); };
    auto label = [&](NodeId v) { return is_const(v) ? "#" + std::to_string(*g.constant[v]) : g.nodes[v]; };

    std::vector<std::vector<NodeId>> in_r(n), in_a(n), out_a(n);
    for (const auto& [x, v] : g.r_arcs) in_r[v].push_back(x);
    for (const auto& [v, x] : g.a_arcs) {
        in_a[x].push_back(v);
        out_a[v].push_back(x);
    }

    // T1: non-constant nodes = P1 u P2 u fv(E)
    {
        WellFormednessCheck c{"T1", "every node is a place or an equation variable", true, {}};
        std::set<std::string> nodes, names(p1.begin(), p1.end());
        names.insert(p2.begin(), p2.end());
        for (const auto& eq : equations)
            for (const auto& v : eq.variables()) names.insert(v);
        for (NodeId v = 0; v < n; ++v)
            if (!is_const(v)) nodes.insert(g.nodes[v]);
        c.witness = detail::symmetric_difference(nodes, names);
        c.ok = c.witness.empty();
        report.checks.push_back(std::move(c));
    }
    // T2: constants are roots
    {
        WellFormednessCheck c{"T2", "constant nodes have no incoming arc", true, {}};
        for (NodeId v = 0; v < n; ++v)
            if (is_const(v) && (!in_r[v].empty() || !in_a[v].empty())) c.witness.push_back(g.nodes[v]);
        c.ok = c.witness.empty();
        report.checks.push_back(std::move(c));
    }
    // T3: a node with an incoming agglomeration arc has no other incoming arc,
    // and no pair is both a redundancy and an agglomeration arc.
    {
        WellFormednessCheck c{"T3", "no node is removed twice", true, {}};
        for (NodeId v = 0; v < n; ++v)
            if (!in_a[v].empty() && in_a[v].size() + in_r[v].size() > 1) c.witness.push_back(g.nodes[v]);
        for (const auto& arc : g.r_arcs)
            if (g.a_arcs.count(arc)) c.witness.push_back(g.nodes[arc.first] + "->" + g.nodes[arc.second]);
        c.ok = c.witness.empty();
        report.checks.push_back(std::move(c));
    }
    // T4: arc groups and equations match one to one
    {
        WellFormednessCheck c{"T4", "arc groups match the equations one to one", true, {}};
        std::vector<std::string> from_eqs, from_arcs;
        for (const auto& eq : equations) {
            std::vector<std::string> rhs = eq.terms;
            if (eq.is_constant()) rhs = {"#" + std::to_string(*eq.constant)};
            from_eqs.push_back(detail::group_key(tag_char(eq.tag), eq.removed, rhs));
        }
        for (NodeId v = 0; v < n; ++v) {
            if (!out_a[v].empty()) {
                std::vector<std::string> rhs;
                for (NodeId x : out_a[v]) rhs.push_back(label(x));
                from_arcs.push_back(detail::group_key('A', label(v), rhs));
            }
            if (!in_r[v].empty()) {
                std::vector<std::string> rhs;
                for (NodeId x : in_r[v]) rhs.push_back(label(x));
                from_arcs.push_back(detail::group_key('R', label(v), rhs));
            }
        }
        std::sort(from_eqs.begin(), from_eqs.end());
        std::sort(from_arcs.begin(), from_arcs.end());
        std::set_symmetric_difference(from_eqs.begin(), from_eqs.end(), from_arcs.begin(), from_arcs.end(),
                                      std::back_inserter(c.witness));
        c.ok = c.witness.empty();
        report.checks.push_back(std::move(c));
    }
    // T5: acyclic (Kahn); witness = nodes left with pending predecessors
    {
        WellFormednessCheck c{"T5", "graph is acyclic", true, {}};
        std::vector<std::size_t> indeg(n, 0);
        std::vector<std::vector<NodeId>> out(n);
        for (const auto& [x, v] : g.r_arcs) out[x].push_back(v);
        for (const auto& [v, x] : g.a_arcs) out[v].push_back(x);
        for (NodeId v = 0; v < n; ++v)
            for (NodeId w : out[v]) ++indeg[w];
        std::vector<NodeId> stack;
        for (NodeId v = 0; v < n; ++v)
            if (indeg[v] == 0) stack.push_back(v);
        while (!stack.empty()) {
            NodeId v = stack.back();
            stack.pop_back();
            for (NodeId w : out[v])
                if (--indeg[w] == 0) stack.push_back(w);
        }
        for (NodeId v = 0; v < n; ++v)
            if (indeg[v] > 0) c.witness.push_back(g.nodes[v]);
        c.ok = c.witness.empty();
        report.checks.push_back(std::move(c));
    }
    // T6: roots \ K = P2 and o-leaves \ K = P1
    {
        WellFormednessCheck c{"T6", "roots are the reduced places, leaves the original ones", true, {}};
        std::set<std::string> roots, leaves;
        for (NodeId v = 0; v < n; ++v) {
            if (is_const(v)) continue;
            if (in_r[v].empty() && in_a[v].empty()) roots.insert(g.nodes[v]);
            if (out_a[v].empty()) leaves.insert(g.nodes[v]);
        }
        for (const auto& w : detail::symmetric_difference(roots, {p2.begin(), p2.end()}))
            c.witness.push_back("root:" + w);
        for (const auto& w : detail::symmetric_difference(leaves, {p1.begin(), p1.end()}))
            c.witness.push_back("leaf:" + w);
        c.ok = c.witness.empty();
        report.checks.push_back(std::move(c));
    }
    return report;
}

inline WellFormednessReport check_well_formed(const std::vector<TaggedEquation>& equations,
                                              const std::vector<std::string>& p1,
                                              const std::vector<std::string>& p2) {
    return check_well_formed(raw_tfg(equations, p1, p2), equations, p1, p2);
}

class TokenFlowGraph;
TokenFlowGraph build_tfg(const std::vector<TaggedEquation>& equations, const std::vector<std::string>& p1,
                         const std::vector<std::string>& p2);

// Well-formed token flow graph. Immutable once built; all queries are const.
class TokenFlowGraph {
public:
    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(NodeId v) const { return names_[v]; }

    std::optional<NodeId> find(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    NodeId node(const std::string& name) const {
        auto v = find(name);
        if (!v) throw UnknownNode(name);
        return *v;
    }

    bool is_constant(NodeId v) const { return constant_[v].has_value(); }
    std::optional<Tokens> constant_value(NodeId v) const { return constant_[v]; }

    const std::set<NodeArc>& r_arcs() const { return r_arcs_; }
    const std::set<NodeArc>& a_arcs() const { return a_arcs_; }

    const std::vector<NodeId>& agg_children(NodeId v) const { return agg_children_[v]; }  // v o-> X
    const std::vector<NodeId>& red_parents(NodeId v) const { return red_parents_[v]; }    // X ->. v
    const std::vector<NodeId>& red_children(NodeId v) const { return red_children_[v]; }  // v ->. w
    const std::vector<NodeId>& children(NodeId v) const { return children_[v]; }
    std::optional<NodeId> agg_parent(NodeId v) const { return agg_parent_[v]; }

    bool is_root(NodeId v) const { return red_parents_[v].empty() && !agg_parent_[v]; }
    bool is_agg_leaf(NodeId v) const { return agg_children_[v].empty(); }

    // succs(v): nodes reachable from v, v included, sorted.
    const std::vector<NodeId>& successors(NodeId v) const { return succs_[v]; }
    bool reaches(NodeId v, NodeId w) const { return reach_[v][w]; }

    const std::vector<NodeId>& roots() const { return roots_; }
    const std::vector<NodeId>& p1() const { return p1_; }
    const std::vector<NodeId>& p2() const { return p2_; }
    const std::vector<NodeId>& constants() const { return constants_; }
    // Parents before children.
    const std::vector<NodeId>& topological_order() const { return topo_; }
    const std::vector<TaggedEquation>& equations() const { return equations_; }

    std::vector<std::string> names_of(const std::vector<NodeId>& ids) const {
        std::vector<std::string> out;
        for (NodeId v : ids) out.push_back(names_[v]);
        return out;
    }

    // Structure up to the naming of constant nodes.
    std::vector<std::string> canonical() const {
        auto label = [&](NodeId v) { return is_constant(v) ? "#" + std::to_string(*constant_[v]) : names_[v]; };
        std::vector<std::string> out;
        for (NodeId v = 0; v < size(); ++v)
            if (!is_constant(v)) out.push_back("node " + names_[v]);
        for (const auto& [x, v] : r_arcs_) out.push_back("R " + label(x) + " " + label(v));
        for (const auto& [v, x] : a_arcs_) out.push_back("A " + label(v) + " " + label(x));
        for (NodeId v : p1_) out.push_back("P1 " + names_[v]);
        for (NodeId v : p2_) out.push_back("P2 " + names_[v]);
        std::sort(out.begin(), out.end());
        return out;
    }

    bool operator==(const TokenFlowGraph& o) const { return canonical() == o.canonical(); }

private:
    friend TokenFlowGraph build_tfg(const std::vector<TaggedEquation>&, const std::vector<std::string>&,
                                    const std::vector<std::string>&);

    TokenFlowGraph(RawTfg raw, std::vector<TaggedEquation> equations, const std::vector<std::string>& p1,
                   const std::vector<std::string>& p2)
        : names_(std::move(raw.nodes)),
          constant_(std::move(raw.constant)),
          r_arcs_(std::move(raw.r_arcs)),
          a_arcs_(std::move(raw.a_arcs)),
          equations_(std::move(equations)) {
        const std::size_t n = names_.size();
        for (NodeId v = 0; v < n; ++v) index_.emplace(names_[v], v);
        agg_children_.resize(n);
        red_parents_.resize(n);
        red_children_.resize(n);
        children_.resize(n);
        agg_parent_.resize(n);
        for (const auto& [x, v] : r_arcs_) {
            red_parents_[v].push_back(x);
            red_children_[x].push_back(v);
            children_[x].push_back(v);
        }
        for (const auto& [v, x] : a_arcs_) {
            agg_children_[v].push_back(x);
            agg_parent_[x] = v;
            children_[v].push_back(x);
        }
        for (auto& c : children_) {
            std::sort(c.begin(), c.end());
            c.erase(std::unique(c.begin(), c.end()), c.end());
        }
        for (NodeId v = 0; v < n; ++v) {
            if (is_root(v)) roots_.push_back(v);
            if (is_constant(v)) constants_.push_back(v);
        }
        for (const auto& p : p1) p1_.push_back(index_.at(p));
        for (const auto& p : p2) p2_.push_back(index_.at(p));

        // depth-first post-order, reversed, gives parents before children
        std::vector<char> seen(n, 0);
        std::vector<NodeId> post;
        std::function<void(NodeId)> dfs = [&](NodeId v) {
            seen[v] = 1;
            for (NodeId w : children_[v])
                if (!seen[w]) dfs(w);
            post.push_back(v);
        };
        for (NodeId v = 0; v < n; ++v)
            if (!seen[v]) dfs(v);
        topo_.assign(post.rbegin(), post.rend());

        reach_.assign(n, std::vector<bool>(n, false));
        for (NodeId v : post) {  // children first
            reach_[v][v] = true;
            for (NodeId w : children_[v])
                for (NodeId u = 0; u < n; ++u)
                    if (reach_[w][u]) reach_[v][u] = true;
        }
        succs_.resize(n);
        for (NodeId v = 0; v < n; ++v)
            for (NodeId u = 0; u < n; ++u)
                if (reach_[v][u]) succs_[v].push_back(u);
    }

    std::vector<std::string> names_;
    std::unordered_map<std::string, NodeId> index_;
    std::vector<std::optional<Tokens>> constant_;
    std::set<NodeArc> r_arcs_, a_arcs_;
    std::vector<TaggedEquation> equations_;
    std::vector<std::vector<NodeId>> agg_children_, red_parents_, red_children_, children_;
    std::vector<std::optional<NodeId>> agg_parent_;
    std::vector<NodeId> roots_, p1_, p2_, constants_, topo_;
    std::vector<std::vector<bool>> reach_;
    std::vector<std::vector<NodeId>> succs_;
};

// Builds the graph of `equations` and runs T1..T6; throws NotWellFormed naming
// the first failed check.
inline TokenFlowGraph build_tfg(const std::vector<TaggedEquation>& equations, const std::vector<std::string>& p1,
                                const std::vector<std::string>& p2) {
    RawTfg raw = raw_tfg(equations, p1, p2);
    const auto report = check_well_formed(raw, equations, p1, p2);
    if (const auto* bad = report.first_failure()) throw NotWellFormed(bad->id, bad->witness);
    return TokenFlowGraph(std::move(raw), equations, p1, p2);
}

inline std::set<std::string> successors(const TokenFlowGraph& g, const std::string& v) {
    std::set<std::string> out;
    for (NodeId w : g.successors(g.node(v))) out.insert(g.name(w));
    return out;
}

// ---------------------------------------------------------------------------
// Configurations
// ---------------------------------------------------------------------------

// Partial valuation of the nodes of one graph; nullopt stands for undefined.
class Configuration {
public:
    Configuration() = default;
    explicit Configuration(std::size_t nodes) : values_(nodes) {}

    std::size_t size() const { return values_.size(); }
    std::optional<Tokens> get(NodeId v) const { return values_[v]; }
    bool defined(NodeId v) const { return values_[v].has_value(); }
    void set(NodeId v, Tokens n) { values_[v] = n; }
    void clear(NodeId v) { values_[v].reset(); }

    bool is_total() const {
        return std::all_of(values_.begin(), values_.end(), [](const auto& x) { return x.has_value(); });
    }

    const std::vector<std::optional<Tokens>>& values() const { return values_; }

    bool operator==(const Configuration&) const = default;
    bool operator<(const Configuration& o) const { return values_ < o.values_; }

private:
    std::vector<std::optional<Tokens>> values_;
};

inline std::string to_string(const TokenFlowGraph& g, const Configuration& c) {
    std::ostringstream os;
    os << '{';
    for (NodeId v = 0; v < g.size(); ++v) {
        os << (v ? ", " : "") << g.name(v) << ':';
        if (auto x = c.get(v))
            os << *x;
        else
            os << "_";
    }
    os << '}';
    return os.str();
}

// Configuration defined exactly on `scope`, read from `m` (absent = 0), plus
// every constant node.
inline Configuration configuration_from(const TokenFlowGraph& g, const Marking& m, const std::vector<NodeId>& scope) {
    Configuration c(g.size());
    for (NodeId v : scope) c.set(v, m.get(g.name(v)));
    for (NodeId k : g.constants()) c.set(k, *g.constant_value(k));
    return c;
}

// c|scope as a marking; every node of `scope` must be defined.
inline Marking restrict_to(const TokenFlowGraph& g, const Configuration& c, const std::vector<NodeId>& scope) {
    Marking m;
    for (NodeId v : scope) {
        if (!c.defined(v)) throw PreconditionError("node '" + g.name(v) + "' is undefined");
        m.set(g.name(v), *c.get(v));
    }
    return m;
}

// CBot: definedness agrees along every arc. CEq: a defined node equals the sum
// of its agglomeration children and of its redundancy parents.
inline bool is_well_defined(const TokenFlowGraph& g, const Configuration& c) {
    if (c.size() != g.size()) return false;
    for (NodeId k : g.constants())
        if (c.defined(k) && *c.get(k) != *g.constant_value(k)) return false;
    auto cbot = [&](NodeId a, NodeId b) { return c.defined(a) == c.defined(b); };
    for (const auto& [x, v] : g.r_arcs())
        if (!cbot(x, v)) return false;
    for (const auto& [v, x] : g.a_arcs())
        if (!cbot(v, x)) return false;
    auto sum = [&](const std::vector<NodeId>& xs) {
        std::uint64_t s = 0;
        for (NodeId x : xs) s += *c.get(x);
        return s;
    };
    for (NodeId v = 0; v < g.size(); ++v) {
        if (!c.defined(v)) continue;
        if (!g.agg_children(v).empty() && sum(g.agg_children(v)) != *c.get(v)) return false;
        if (!g.red_parents(v).empty() && sum(g.red_parents(v)) != *c.get(v)) return false;
    }
    return true;
}

// All total, well-defined configurations that agree with `partial`, whose
// non-constant values stay <= bound. `partial` must define every
// non-constant root; undefined constants take their value. Values on other
// nodes act as constraints. Output order: agglomeration splits enumerated
// lexicographically (first child smallest first), nodes in topological order.
inline std::vector<Configuration> enumerate_extensions(const TokenFlowGraph& g, const Configuration& partial,
                                                       Tokens bound) {
    if (partial.size() != g.size()) throw PreconditionError("configuration does not match the graph");
    const std::uint64_t safeguard = static_cast<std::uint64_t>(bound) * std::max<std::size_t>(g.size(), 1);
    for (NodeId r : g.roots()) {
        if (g.is_constant(r)) continue;
        if (!partial.defined(r)) throw PreconditionError("root '" + g.name(r) + "' is undefined");
        if (*partial.get(r) > safeguard) throw Diverges(g.name(r));
    }

    std::vector<Configuration> out;
    Configuration cur(g.size());
    const auto& topo = g.topological_order();

    std::function<void(std::size_t)> visit;
    std::function<void(std::size_t, const std::vector<NodeId>&, std::size_t, Tokens)> split;

    visit = [&](std::size_t i) {
        if (i == topo.size()) {
            out.push_back(cur);
            return;
        }
        const NodeId v = topo[i];
        std::uint64_t value = 0;
        if (g.is_constant(v)) {
            value = *g.constant_value(v);
        } else if (g.is_root(v)) {
            value = *partial.get(v);
        } else if (!g.red_parents(v).empty()) {
            for (NodeId x : g.red_parents(v)) value += *cur.get(x);
        } else {
            value = *cur.get(v);  // assigned by the parent's split
        }
        if (partial.defined(v) && *partial.get(v) != value) return;
        if (!g.is_constant(v) && value > bound) return;
        cur.set(v, static_cast<Tokens>(value));
        if (g.agg_children(v).empty())
            visit(i + 1);
        else
            split(i, g.agg_children(v), 0, static_cast<Tokens>(value));
    };

    split = [&](std::size_t i, const std::vector<NodeId>& kids, std::size_t j, Tokens remaining) {
        if (j + 1 == kids.size()) {
            cur.set(kids[j], remaining);
            visit(i + 1);
            return;
        }
        for (Tokens x = 0; x <= remaining; ++x) {
            cur.set(kids[j], x);
            split(i, kids, j + 1, remaining - x);
        }
    };

    visit(0);
    return out;
}

// Constructive forward token propagation: given c well-defined with c(p)
// defined and p ->* q, returns c' well-defined with c'(q) >= c'(p) = c(p) and
// c' = c outside succs(p). Tokens are routed along one path from p to q.
inline Configuration propagate_forward(const TokenFlowGraph& g, const Configuration& c, NodeId p, NodeId q) {
    if (!c.defined(p)) throw PreconditionError("start node is undefined");
    if (!g.reaches(p, q)) throw PreconditionError("no path from '" + g.name(p) + "' to '" + g.name(q) + "'");

    // breadth-first path p ~> q
    std::vector<std::optional<NodeId>> prev(g.size());
    std::vector<char> seen(g.size(), 0);
    std::vector<NodeId> queue{p};
    seen[p] = 1;
    for (std::size_t h = 0; h < queue.size(); ++h)
        for (NodeId w : g.children(queue[h]))
            if (!seen[w]) {
                seen[w] = 1;
                prev[w] = queue[h];
                queue.push_back(w);
            }
    std::vector<std::optional<NodeId>> next(g.size());
    for (NodeId w = q; w != p; w = *prev[w]) next[*prev[w]] = w;

    Configuration out = c;
    for (NodeId w : g.topological_order()) {
        if (w == p || !g.reaches(p, w)) continue;
        if (!g.red_parents(w).empty()) {
            Tokens s = 0;
            for (NodeId y : g.red_parents(w)) s += *out.get(y);
            out.set(w, s);
            continue;
        }
        const NodeId x = *g.agg_parent(w);
        const auto& kids = g.agg_children(x);
        const bool routed = next[x] && std::find(kids.begin(), kids.end(), *next[x]) != kids.end();
        if (routed)
            out.set(w, *next[x] == w ? *out.get(x) : 0);
        else if (out.get(x) == c.get(x))
            out.set(w, *c.get(w));
        else
            out.set(w, kids.front() == w ? *out.get(x) : 0);
    }
    return out;
}

// Graphviz rendering: redundancy arcs end in a filled dot, agglomeration arcs
// in an open dot.
inline std::string to_dot(const TokenFlowGraph& g) {
    std::ostringstream os;
    os << "digraph tfg {\n";
    for (NodeId v = 0; v < g.size(); ++v) {
        os << "  \"" << g.name(v) << '"';
        if (g.is_constant(v)) os << " [shape=box,label=\"" << g.name(v) << "=" << *g.constant_value(v) << "\"]";
        os << ";\n";
    }
    for (const auto& [x, v] : g.r_arcs())
        os << "  \"" << g.name(x) << "\" -> \"" << g.name(v) << "\" [arrowhead=dot];\n";
    for (const auto& [v, x] : g.a_arcs())
        os << "  \"" << g.name(v) << "\" -> \"" << g.name(x) << "\" [arrowhead=odot];\n";
    os << "}\n";
    return os.str();
}

}  // namespace tfgkit
