#pragma once

#include <string>
#include <vector>

#include "tfgkit/reach.hpp"

namespace tfgkit {

struct ValidationIssue {
    std::string condition;  // "A1", "A2" or "A3"
    std::string detail;     // first counterexample
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    std::size_t n1_states = 0;
    std::size_t n2_states = 0;

    bool valid() const { return issues.empty(); }
};

// Exhaustive check that the equations link the reachable markings of both
// nets: A1 every reachable marking of either side extends to a total
// well-defined configuration, A2 the initial markings share one, A3 the
// configurations built from either side are reachable on the other side too.
// Throws IncompleteStateSpace when either space does not fit in `limits`.
inline ValidationReport validate_equivalence(const PetriNet& n1, const Marking& m1, const ReductionResult& red,
                                             const ExploreLimits& limits = {}) {
    const auto g = build_tfg(n1, red);
    const auto ss1 = explore(n1, m1, limits);
    const auto ss2 = explore(red.reduced_net, red.reduced_marking, limits);
    if (!ss1.is_complete() || !ss2.is_complete()) throw IncompleteStateSpace();

    ValidationReport report;
    report.n1_states = ss1.size();
    report.n2_states = ss2.size();
    auto flag = [&](const std::string& cond, const std::string& detail) {
        for (const auto& i : report.issues)
            if (i.condition == cond) return;
        report.issues.push_back({cond, detail});
    };

    for (std::size_t i = 0; i < ss1.size(); ++i) {
        const Marking m = ss1.marking(i);
        const auto c = project_configuration(g, m);
        if (!c) {
            flag("A1", "N1 marking " + m.to_string() + " has no well-defined extension");
            continue;
        }
        if (!ss2.contains(restrict_to(g, *c, g.p2()))) flag("A3", to_string(g, *c));
    }
    for (std::size_t i = 0; i < ss2.size(); ++i) {
        const Marking m = ss2.marking(i);
        const auto exts = enumerate_extensions(g, configuration_from(g, m, g.p2()), limits.max_token);
        if (exts.empty()) flag("A1", "N2 marking " + m.to_string() + " has no well-defined extension");
        for (const auto& c : exts)
            if (!ss1.contains(restrict_to(g, c, g.p1()))) flag("A3", to_string(g, c));
    }
    const auto c0 = project_configuration(g, m1);
    if (!c0 || restrict_to(g, *c0, g.p2()) != red.reduced_marking)
        flag("A2", "initial marking " + m1.to_string() + " does not map to " + red.reduced_marking.to_string());
    return report;
}

}  // namespace tfgkit
