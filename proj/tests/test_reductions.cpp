#include <catch_amalgamated.hpp>

#include "tfgkit/corpus.hpp"
#include "tfgkit/net_io.hpp"
#include "tfgkit/reductions.hpp"
#include "tfgkit/validation.hpp"

using namespace tfgkit;

TEST_CASE("duplicate places", "[reductions]") {
    const auto d1 = corpus::d1();
    const auto r = reduce(d1.net, d1.initial);
    CHECK(r.reduced_net.places() == std::vector<std::string>{"p", "q"});
    CHECK(r.equations == std::vector<TaggedEquation>{TaggedEquation::redundancy("r", {"q"})});
    CHECK(r.reduced_marking == Marking{{"p", 1}});
    CHECK(r.ratio == Catch::Approx(1.0 / 3.0));
    CHECK(validate_equivalence(d1.net, d1.initial, r).valid());
}

TEST_CASE("chain agglomeration", "[reductions]") {
    const auto a1 = corpus::a1();
    const auto r = reduce(a1.net, a1.initial);
    CHECK(r.equations == std::vector<TaggedEquation>{TaggedEquation::agglomeration("a1", {"y", "z"})});
    CHECK(r.reduced_net.places() == std::vector<std::string>{"x", "a1"});
    REQUIRE(r.reduced_net.transition_count() == 1);
    CHECK(r.reduced_net.pre(0, r.reduced_net.place("x")) == 1);
    CHECK(r.reduced_net.post(0, r.reduced_net.place("a1")) == 1);
    CHECK(r.ratio == Catch::Approx(1.0 / 3.0));
    const auto report = validate_equivalence(a1.net, a1.initial, r);
    CHECK(report.valid());
    CHECK(report.n1_states == 3);
    CHECK(report.n2_states == 2);
}

TEST_CASE("constant places", "[reductions]") {
    const auto n = parse_net("pl c 1\npl x 1\npl y 0\ntr t x -> y\ntr u y -> x\n");
    const auto r = reduce(n.net, n.initial);
    REQUIRE_FALSE(r.equations.empty());
    CHECK(r.equations.front() == TaggedEquation::fixed("c", 1));
    CHECK_FALSE(r.reduced_net.find_place("c"));
    CHECK(validate_equivalence(n.net, n.initial, r).valid());
}

TEST_CASE("irreducible net", "[reductions]") {
    const auto t1 = corpus::t1();
    const auto r = reduce(t1.net, t1.initial);
    CHECK(r.equations.empty());
    CHECK(r.ratio == 0.0);
    CHECK(r.reduced_net == t1.net);
}

TEST_CASE("fresh names skip existing ones", "[reductions]") {
    const auto n = parse_net("pl a1 1\npl y 0\npl z 0\ntr t1 a1 -> y\ntr t2 y -> z\n");
    const auto r = reduce(n.net, n.initial);
    REQUIRE(r.equations.size() == 1);
    CHECK(r.equations[0].removed == "a2");
}

TEST_CASE("duplicates need equal initial markings", "[reductions]") {
    const auto n = parse_net("pl p 1\npl q 1\npl r 0\ntr t p -> q r\ntr u q r -> p\n");
    const auto r = reduce(n.net, n.initial);
    for (const auto& e : r.equations) CHECK_FALSE((e.removed == "r" && e.terms == std::vector<std::string>{"q"}));
}

TEST_CASE("diamond family reduces to two places", "[reductions]") {
    for (std::size_t k = 1; k <= 4; ++k) {
        const auto n = corpus::diamonds(k);
        const auto r = reduce(n.net, n.initial);
        CHECK(r.reduced_net.place_count() == 2);
        CHECK(r.ratio == Catch::Approx((4.0 * k - 1) / (4.0 * k + 1)));
        CHECK(validate_equivalence(n.net, n.initial, r).valid());
    }
}

TEST_CASE("validation catches a wrong equation", "[reductions]") {
    const auto d1 = corpus::d1();
    auto r = reduce(d1.net, d1.initial);
    r.equations = {TaggedEquation::redundancy("r", {"p"})};
    const auto report = validate_equivalence(d1.net, d1.initial, r);
    CHECK_FALSE(report.valid());
    const auto a3 = std::find_if(report.issues.begin(), report.issues.end(), [](auto& i) { return i.condition == "A3"; });
    REQUIRE(a3 != report.issues.end());
    CHECK(a3->detail == "{p:1, q:0, r:1}");
}

TEST_CASE("validation catches a wrong initial marking", "[reductions]") {
    const auto d1 = corpus::d1();
    auto r = reduce(d1.net, d1.initial);
    r.reduced_marking = Marking{{"q", 1}};
    const auto report = validate_equivalence(d1.net, d1.initial, r);
    CHECK_FALSE(report.valid());
    CHECK(std::any_of(report.issues.begin(), report.issues.end(), [](auto& i) { return i.condition == "A2"; }));
}

TEST_CASE("validation refuses truncated spaces", "[reductions]") {
    PetriNet u;
    u.add_place("x");
    u.add_transition("t", std::vector<std::pair<std::string, Tokens>>{}, {{"x", 1}});
    const auto r = reduce(u, {});
    CHECK_THROWS_AS(validate_equivalence(u, {}, r, {50, 10, std::nullopt}), IncompleteStateSpace);
}

TEST_CASE("equations survive the text format", "[reductions]") {
    for (const auto& inst : corpus::generate(12, 99)) {
        const auto r = reduce(inst.net.net, inst.net.initial);
        CHECK(parse_equations(write_equations(r.equations)) == r.equations);
        for (const auto& e : r.equations) {
            if (e.tag == EquationTag::Redundancy) CHECK_FALSE(r.reduced_net.find_place(e.removed));
            for (const auto& t : e.terms)
                if (e.tag == EquationTag::Agglomeration) CHECK_FALSE(r.reduced_net.find_place(t));
        }
    }
}

TEST_CASE("chains need a sole consumer", "[reductions]") {
    const auto n = parse_net("pl x 1\npl p 0\npl q 0\npl r 0\ntr t0 x -> p\ntr t p -> q\ntr u p -> r\n");
    const auto red = reduce(n.net, n.initial);
    for (const auto& e : red.equations) CHECK(e.removed != "p");
    CHECK(red.reduced_net.find_place("p").has_value());
}
