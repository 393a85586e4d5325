#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "tfgkit/net_io.hpp"
#include "tfgkit/tfg.hpp"

using namespace tfgkit;

namespace {

const std::vector<std::string> kP1{"p0", "p1", "p2", "p3", "p4", "p5", "p6"};
const std::vector<std::string> kP2{"p0", "a2", "p6"};

std::vector<TaggedEquation> motif_equations() {
    return parse_equations("# R |- p5 = p4\n# A |- a1 = p2 + p1\n# A |- a2 = p4 + p3\n# R |- a1 = a2\n");
}

TokenFlowGraph motif() { return build_tfg(motif_equations(), kP1, kP2); }

std::set<NodeArc> arcs(const TokenFlowGraph& g, std::vector<std::pair<std::string, std::string>> named) {
    std::set<NodeArc> out;
    for (const auto& [a, b] : named) out.insert({g.node(a), g.node(b)});
    return out;
}

Configuration config(const TokenFlowGraph& g, std::map<std::string, Tokens> values) {
    Configuration c(g.size());
    for (const auto& [n, v] : values) c.set(g.node(n), v);
    return c;
}

std::string failed_check(const std::vector<TaggedEquation>& eqs, const std::vector<std::string>& p1,
                         const std::vector<std::string>& p2) {
    try {
        build_tfg(eqs, p1, p2);
    } catch (const NotWellFormed& e) {
        return e.check;
    }
    return "none";
}

}  // namespace

TEST_CASE("graph of the motif equations", "[tfg]") {
    const auto g = motif();
    CHECK(g.r_arcs() == arcs(g, {{"p4", "p5"}, {"a2", "a1"}}));
    CHECK(g.a_arcs() == arcs(g, {{"a1", "p1"}, {"a1", "p2"}, {"a2", "p3"}, {"a2", "p4"}}));
    CHECK(g.size() == 9);
    CHECK(g.constants().empty());

    std::set<std::string> roots, leaves;
    for (NodeId v = 0; v < g.size(); ++v) {
        if (g.is_root(v)) roots.insert(g.name(v));
        if (g.is_agg_leaf(v)) leaves.insert(g.name(v));
    }
    CHECK(roots == std::set<std::string>{"p0", "a2", "p6"});
    CHECK(leaves == std::set<std::string>(kP1.begin(), kP1.end()));
    CHECK(check_well_formed(motif_equations(), kP1, kP2).ok());
}

TEST_CASE("successor sets", "[tfg]") {
    const auto g = motif();
    CHECK(successors(g, "a2") == std::set<std::string>{"a2", "a1", "p1", "p2", "p3", "p4", "p5"});
    CHECK(successors(g, "p0") == std::set<std::string>{"p0"});
    CHECK(successors(g, "p5") == std::set<std::string>{"p5"});
    CHECK_THROWS_AS(successors(g, "nope"), UnknownNode);

    const auto fw = oracle::closure(g);
    for (NodeId v = 0; v < g.size(); ++v)
        for (NodeId w = 0; w < g.size(); ++w) CHECK(g.reaches(v, w) == fw[v][w]);
}

TEST_CASE("topological order puts parents first", "[tfg]") {
    const auto g = motif();
    std::vector<std::size_t> pos(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) pos[g.topological_order()[i]] = i;
    for (const auto& [a, b] : g.r_arcs()) CHECK(pos[a] < pos[b]);
    for (const auto& [a, b] : g.a_arcs()) CHECK(pos[a] < pos[b]);
}

TEST_CASE("well-defined configurations", "[tfg]") {
    const auto g = motif();
    auto c = config(g, {{"p0", 0}, {"p6", 1}, {"p1", 1}, {"p2", 0}, {"p3", 0}, {"p4", 1}, {"p5", 1}, {"a1", 1}, {"a2", 1}});
    CHECK(is_well_defined(g, c));
    CHECK(is_well_defined(g, Configuration(g.size())));
    c.set(g.node("a1"), 2);
    CHECK_FALSE(is_well_defined(g, c));

    // definedness must agree along arcs
    auto partial = config(g, {{"p4", 1}});
    CHECK_FALSE(is_well_defined(g, partial));
    auto island = config(g, {{"p0", 3}});
    CHECK(is_well_defined(g, island));
}

TEST_CASE("extensions of the motif roots", "[tfg]") {
    const auto g = motif();
    const auto roots = config(g, {{"p0", 0}, {"p6", 1}, {"a2", 1}});
    const auto exts = enumerate_extensions(g, roots, 1);
    CHECK(exts.size() == 4);
    std::set<Configuration> unique(exts.begin(), exts.end());
    CHECK(unique.size() == exts.size());
    for (const auto& c : exts) {
        CHECK(c.is_total());
        CHECK(is_well_defined(g, c));
    }

    // same set as brute force over the equations
    const auto vars = oracle::variables(motif_equations(), kP1, kP2);
    const auto brute = oracle::brute_solutions(motif_equations(), vars, {{"p0", 0}, {"p6", 1}, {"a2", 1}}, 1);
    std::set<oracle::Assignment> mine;
    for (const auto& c : exts) {
        oracle::Assignment a;
        for (const auto& v : vars) a[v] = *c.get(g.node(v));
        mine.insert(a);
    }
    CHECK(mine == brute);

    // splits in lexicographic order: the first child of a2 takes nothing first
    CHECK(*exts.front().get(g.agg_children(g.node("a2")).front()) == 0);
}

TEST_CASE("extensions of zero and constant roots", "[tfg]") {
    const auto g = motif();
    const auto exts = enumerate_extensions(g, config(g, {{"p0", 0}, {"p6", 0}, {"a2", 0}}), 1);
    REQUIRE(exts.size() == 1);
    for (NodeId v = 0; v < g.size(); ++v) CHECK(*exts[0].get(v) == 0);

    const auto eqs = parse_equations("# R |- a = 1\n# A |- a = x + y\n");
    const auto k = build_tfg(eqs, {"x", "y"}, {});
    const auto splits = enumerate_extensions(k, Configuration(k.size()), 1);
    REQUIRE(splits.size() == 2);
    CHECK(*splits[0].get(k.node("x")) == 0);
    CHECK(*splits[0].get(k.node("y")) == 1);
    CHECK(*splits[1].get(k.node("x")) == 1);
    CHECK(*splits[1].get(k.node("y")) == 0);
}

TEST_CASE("extension preconditions and bounds", "[tfg]") {
    const auto g = motif();
    CHECK_THROWS_AS(enumerate_extensions(g, config(g, {{"p0", 0}, {"a2", 1}}), 1), PreconditionError);
    CHECK(enumerate_extensions(g, config(g, {{"p0", 0}, {"p6", 0}, {"a2", 2}}), 1).empty());
    CHECK(enumerate_extensions(g, config(g, {{"p0", 0}, {"p6", 0}, {"a2", 2}}), 2).size() == 9);
    CHECK_THROWS_AS(enumerate_extensions(g, config(g, {{"p0", 0}, {"p6", 0}, {"a2", 100}}), 1), Diverges);
    // non-root values act as constraints
    const auto pinned = enumerate_extensions(g, config(g, {{"p0", 0}, {"p6", 1}, {"a2", 1}, {"p4", 1}}), 1);
    CHECK(pinned.size() == 2);
}

TEST_CASE("forward token propagation", "[tfg]") {
    const auto g = motif();
    const auto c = config(g, {{"p0", 0}, {"p6", 1}, {"p1", 0}, {"p2", 1}, {"p3", 1}, {"p4", 0}, {"p5", 0}, {"a1", 1}, {"a2", 1}});
    REQUIRE(is_well_defined(g, c));
    for (const auto& target : {"p5", "p4", "p1", "p2", "p3", "a1"}) {
        const auto out = propagate_forward(g, c, g.node("a2"), g.node(target));
        CHECK(is_well_defined(g, out));
        CHECK(*out.get(g.node(target)) >= 1);
        CHECK(out.get(g.node("a2")) == c.get(g.node("a2")));
        CHECK(out.get(g.node("p0")) == c.get(g.node("p0")));
        CHECK(out.get(g.node("p6")) == c.get(g.node("p6")));
    }
    CHECK_THROWS_AS(propagate_forward(g, c, g.node("p5"), g.node("p4")), PreconditionError);
    CHECK_THROWS_AS(propagate_forward(g, Configuration(g.size()), g.node("a2"), g.node("p4")), PreconditionError);
}

TEST_CASE("constant nodes get fresh names", "[tfg]") {
    const auto eqs = parse_equations("# R |- c = 1\n# R |- d = 0\n");
    const auto g = build_tfg(eqs, {"k1", "c", "d"}, {"k1"});
    CHECK(g.constants().size() == 2);
    CHECK(g.name(g.constants()[0]) == "k2");
    CHECK(g.name(g.constants()[1]) == "k3");
    CHECK(*g.constant_value(g.node("k2")) == 1);
    CHECK(g.r_arcs() == arcs(g, {{"k2", "c"}, {"k3", "d"}}));
}

TEST_CASE("well-formedness violations", "[tfg]") {
    using E = TaggedEquation;
    // a node nothing refers to
    auto raw = raw_tfg({}, {"a"}, {"a"});
    raw.nodes.push_back("ghost");
    raw.constant.push_back(std::nullopt);
    auto report = check_well_formed(raw, {}, {"a"}, {"a"});
    CHECK(report.first_failure()->id == "T1");
    CHECK(report.first_failure()->witness == std::vector<std::string>{"ghost"});

    // an arc into a constant
    const std::vector<TaggedEquation> konst{E::fixed("c", 1)};
    raw = raw_tfg(konst, {"c"}, {});
    raw.r_arcs.insert({0, 1});
    report = check_well_formed(raw, konst, {"c"}, {});
    CHECK(report.first_failure()->id == "T2");

    CHECK(failed_check({E::redundancy("q", {"p"}), E::agglomeration("a", {"q", "r"})}, {"p", "q", "r"}, {"p", "a"}) ==
          "T3");
    CHECK(failed_check({E::agglomeration("a", {"q", "r"}), E::agglomeration("b", {"q", "s"})}, {"q", "r", "s"},
                       {"a", "b"}) == "T3");
    CHECK(failed_check({E::redundancy("q", {"p"}), E::redundancy("q", {"p"})}, {"p", "q"}, {"p"}) == "T4");
    CHECK(failed_check({E::redundancy("q", {"p"}), E::redundancy("q", {"r"})}, {"p", "q", "r"}, {"p", "r"}) == "T4");
    CHECK(failed_check({E::redundancy("a", {"b"}), E::redundancy("b", {"a"})}, {"a", "b"}, {}) == "T5");
    CHECK(failed_check({E::redundancy("q", {"p"})}, {"p", "q"}, {"q"}) == "T6");
    CHECK(failed_check({E::agglomeration("a", {"p", "q"})}, {"p"}, {"a"}) == "T6");
    CHECK(failed_check({E::redundancy("q", {"p"})}, {"p", "q"}, {"p"}) == "none");
}

TEST_CASE("well-formedness report lists every check", "[tfg]") {
    const auto report = check_well_formed(motif_equations(), kP1, kP2);
    REQUIRE(report.checks.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) CHECK(report.checks[i].id == "T" + std::to_string(i + 1));
    CHECK(report.first_failure() == nullptr);
}

TEST_CASE("graph equality ignores equation order and constant names", "[tfg]") {
    auto eqs = motif_equations();
    eqs.push_back(TaggedEquation::fixed("c", 1));
    auto p1 = kP1;
    p1.push_back("c");
    const auto g = build_tfg(eqs, p1, kP2);
    std::sort(eqs.begin(), eqs.end(), [](const auto& a, const auto& b) { return a.removed > b.removed; });
    CHECK(build_tfg(eqs, p1, kP2) == g);
    auto zero = motif_equations();
    zero.push_back(TaggedEquation::fixed("c", 0));
    CHECK_FALSE(build_tfg(zero, p1, kP2) == g);
}

TEST_CASE("DOT export", "[tfg]") {
    const auto dot = to_dot(build_tfg(parse_equations("# R |- q = p\n# R |- c = 1\n"), {"p", "q", "c"}, {"p"}));
    CHECK(dot.find("\"p\" -> \"q\" [arrowhead=dot]") != std::string::npos);
    CHECK(dot.find("shape=box") != std::string::npos);
    const auto agg = to_dot(build_tfg(parse_equations("# A |- a = x + y\n"), {"x", "y"}, {"a"}));
    CHECK(agg.find("\"a\" -> \"x\" [arrowhead=odot]") != std::string::npos);
}
