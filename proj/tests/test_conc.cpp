#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "tfgkit/conc.hpp"
#include "tfgkit/corpus.hpp"
#include "tfgkit/net_io.hpp"
#include "tfgkit/oracle.hpp"
#include "tfgkit/reach.hpp"

using namespace tfgkit;

namespace {

const std::vector<std::string> kP1{"p0", "p1", "p2", "p3", "p4", "p5", "p6"};

TokenFlowGraph motif() {
    return build_tfg(parse_equations("# R |- p5 = p4\n# A |- a1 = p2 + p1\n# A |- a2 = p4 + p3\n# R |- a1 = a2\n"), kP1,
                     {"p0", "a2", "p6"});
}

// p0 dead, a2 and p6 always marked together
ConcurrencyMatrix motif_rel2() {
    ConcurrencyMatrix r({"p0", "a2", "p6"}, Cell::Zero);
    r.set("a2", "a2", Cell::One);
    r.set("p6", "p6", Cell::One);
    r.set("a2", "p6", Cell::One);
    return r;
}

struct Reduced {
    ParsedNet n1;
    ReductionResult red;
    TokenFlowGraph g;
    StateSpace ss1, ss2;
};

Reduced reduced(const ParsedNet& n) {
    auto red = reduce(n.net, n.initial);
    auto g = build_tfg(n.net, red);
    auto ss1 = explore(n.net, n.initial);
    auto ss2 = explore(red.reduced_net, red.reduced_marking);
    return {n, std::move(red), std::move(g), std::move(ss1), std::move(ss2)};
}

}  // namespace

TEST_CASE("motif matrix from the reduced relation", "[conc]") {
    const auto g = motif();
    const auto c = matrix(g, motif_rel2()).restrict_to(kP1);
    for (const char* a : {"p1", "p4", "p5", "p6"})
        for (const char* b : {"p1", "p4", "p5", "p6"}) CHECK(c.at(a, b) == Cell::One);
    CHECK(c.at("p1", "p2") == Cell::Zero);
    CHECK(c.at("p3", "p4") == Cell::Zero);
    CHECK(c.at("p0", "p0") == Cell::Zero);

    // the bundled motif net has exactly this relation
    const auto m1 = corpus::m1_motif();
    CHECK(c == oracle_concurrency(explore(m1.net, m1.initial)));
}

TEST_CASE("dead roots give the zero matrix", "[conc]") {
    const auto g = motif();
    const auto c = matrix(g, ConcurrencyMatrix({"p0", "a2", "p6"}, Cell::Zero));
    CHECK(c.count(Cell::One) == 0);
    CHECK(c.is_complete());
}

TEST_CASE("duplicate example matrix", "[conc]") {
    const auto r = reduced(corpus::d1());
    const auto rel2 = oracle_concurrency(r.ss2);
    CHECK(rel2.at("p", "q") == Cell::Zero);
    const auto c = matrix(r.g, rel2).restrict_to(r.n1.net.places());
    CHECK(c.at("q", "r") == Cell::One);
    CHECK(c.at("p", "r") == Cell::Zero);
    CHECK(c == oracle_concurrency(r.ss1));
}

TEST_CASE("matrix needs a complete relation", "[conc]") {
    auto rel2 = motif_rel2();
    rel2.set("p0", "a2", Cell::Unknown);
    CHECK_THROWS_AS(matrix(motif(), rel2), IncompleteInput);
    CHECK_THROWS_AS(matrix(motif(), ConcurrencyMatrix({"p0", "p6"})), UnknownNode);
}

TEST_CASE("propagate from one node", "[conc]") {
    const auto g = motif();
    ConcurrencyMatrix c(g.names(), Cell::Zero);
    propagate(g, c, g.node("p5"));
    CHECK(c.count(Cell::One) == 1);
    CHECK(c.at("p5", "p5") == Cell::One);

    ConcurrencyMatrix once(g.names(), Cell::Zero);
    propagate(g, once, g.node("a2"));
    auto twice = once;
    propagate(g, twice, g.node("a2"));
    CHECK(once == twice);
    // redundancy loop at a2 ->. a1
    CHECK(once.at("p3", "p1") == Cell::One);
    CHECK(once.at("p4", "p2") == Cell::One);
    CHECK(once.at("p1", "p2") == Cell::Zero);
}

TEST_CASE("node-level matrix matches solved equations", "[conc]") {
    for (const auto& inst : corpus::fixed_instances()) {
        const auto r = reduced(inst.net);
        const auto c = matrix(r.g, oracle_concurrency(r.ss2));
        CHECK(c == oracle::node_concurrency(r.g, r.ss1));
    }
}

TEST_CASE("partial matrix with a dead root", "[conc]") {
    const auto r = reduced(corpus::d1());
    ConcurrencyMatrix rel2({"p", "q"}, Cell::Unknown);
    rel2.set("q", "q", Cell::Zero);
    const auto c = partial_matrix(r.g, rel2).restrict_to({"p", "q", "r"});
    for (const char* x : {"p", "q", "r"}) {
        CHECK(c.at("q", x) == Cell::Zero);
        CHECK(c.at("r", x) == Cell::Zero);
    }
    CHECK(c.at("p", "p") == Cell::Unknown);
}

TEST_CASE("partial matrix with nothing known", "[conc]") {
    const auto r = reduced(corpus::d1());
    const auto c = partial_matrix(r.g, ConcurrencyMatrix({"p", "q"}, Cell::Unknown));
    CHECK(c.count(Cell::Unknown) == c.cells().size());
    CHECK(filling_ratio(c) == 0.0);

    const auto g = build_tfg(parse_equations("# R |- c = 0\n"), {"c", "x"}, {"x"});
    const auto k = partial_matrix(g, ConcurrencyMatrix({"x"}, Cell::Unknown));
    CHECK(k.at("c", "c") == Cell::Zero);
    CHECK(k.at("c", "x") == Cell::Zero);
    CHECK(k.at("x", "x") == Cell::Unknown);
}

TEST_CASE("partial matrix separates siblings", "[conc]") {
    const auto g = motif();
    const auto c = partial_matrix(g, ConcurrencyMatrix({"p0", "a2", "p6"}, Cell::Unknown));
    CHECK(c.at("p1", "p2") == Cell::Zero);
    CHECK(c.at("p3", "p4") == Cell::Zero);
    CHECK(c.at("p3", "p5") == Cell::Zero);
    CHECK(c.at("p1", "p4") == Cell::Unknown);
}

TEST_CASE("partial matrix with a complete relation", "[conc]") {
    const auto g = motif();
    const auto full = matrix(g, motif_rel2());
    const auto part = partial_matrix(g, motif_rel2());
    CHECK(part == full);
}

TEST_CASE("contradictory relation is rejected", "[conc]") {
    const auto r = reduced(corpus::d1());
    ConcurrencyMatrix rel2({"p", "q"}, Cell::Unknown);
    rel2.set("q", "q", Cell::Zero);
    rel2.set("p", "q", Cell::One);
    CHECK_THROWS_AS(partial_matrix(r.g, rel2), InconsistentInput);
}

TEST_CASE("filling ratio", "[conc]") {
    CHECK(filling_ratio(ConcurrencyMatrix({"a", "b", "c"}, Cell::Zero)) == 1.0);
    CHECK(filling_ratio(ConcurrencyMatrix({"a", "b", "c"}, Cell::Unknown)) == 0.0);
    ConcurrencyMatrix half({"a", "b", "c"}, Cell::Unknown);
    half.set("a", "a", Cell::One);
    half.set("b", "a", Cell::Zero);
    half.set("c", "c", Cell::One);
    CHECK(filling_ratio(half) == 0.5);
    CHECK(filling_ratio(ConcurrencyMatrix{}) == 1.0);
}

TEST_CASE("write counter on the diamond family", "[conc]") {
    for (std::size_t k = 1; k <= 6; ++k) {
        const auto r = reduced(corpus::diamonds(k));
        ConcStats stats;
        matrix(r.g, oracle_concurrency(r.ss2), &stats);
        const auto n = r.g.size();
        CHECK(stats.writes <= n * n * n);
        CHECK(stats.propagations <= n);
    }
}
