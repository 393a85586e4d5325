#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tfgkit/equation.hpp"
#include "tfgkit/petri.hpp"
#include "tfgkit/util.hpp"

namespace tfgkit {

struct ReductionResult {
    PetriNet reduced_net;
    Marking reduced_marking;
    std::vector<TaggedEquation> equations;
    double ratio = 0.0;  // (|P1| - |P2|) / |P1|
};

namespace detail {

// Name-keyed scratch copy of a net; rewriting by name keeps the rules short.
struct WorkNet {
    struct Trans {
        std::string name;
        std::map<std::string, Tokens> pre, post;
    };
    std::vector<std::string> places;
    std::map<std::string, Tokens> m0;
    std::vector<Trans> trans;
    std::set<std::string> used;  // every name ever seen, for fresh-name clashes

    static WorkNet from(const PetriNet& net, const Marking& m0) {
        WorkNet w;
        w.places = net.places();
        for (const auto& p : w.places) {
            w.m0[p] = m0.get(p);
            w.used.insert(p);
        }
        for (const auto& t : net.transitions()) {
            Trans x{t.name, {}, {}};
            for (const auto& a : t.pre) x.pre[net.places()[a.place]] = a.weight;
            for (const auto& a : t.post) x.post[net.places()[a.place]] = a.weight;
            w.used.insert(t.name);
            w.trans.push_back(std::move(x));
        }
        return w;
    }

    static Tokens at(const std::map<std::string, Tokens>& m, const std::string& p) {
        auto it = m.find(p);
        return it == m.end() ? 0 : it->second;
    }

    bool untouched(const std::string& p) const {
        return std::none_of(trans.begin(), trans.end(), [&](const Trans& t) { return at(t.pre, p) || at(t.post, p); });
    }

    bool same_columns(const std::string& p, const std::string& q) const {
        return std::all_of(trans.begin(), trans.end(), [&](const Trans& t) {
            return at(t.pre, p) == at(t.pre, q) && at(t.post, p) == at(t.post, q);
        });
    }

    void remove_place(const std::string& p) {
        places.erase(std::find(places.begin(), places.end(), p));
        m0.erase(p);
        for (auto& t : trans) {
            t.pre.erase(p);
            t.post.erase(p);
        }
    }

    std::string fresh(std::size_t& counter) {
        auto name = fresh_name("a", counter, [&](const std::string& n) { return used.count(n) != 0; });
        used.insert(name);
        return name;
    }

    PetriNet to_net(Marking& marking) const {
        PetriNet net;
        for (const auto& p : places) {
            net.add_place(p);
            marking.set(p, m0.at(p));
        }
        for (const auto& t : trans) {
            std::vector<std::pair<std::string, Tokens>> pre(t.pre.begin(), t.pre.end()), post(t.post.begin(), t.post.end());
            net.add_transition(t.name, pre, post);
        }
        return net;
    }
};

inline bool try_constant(WorkNet& w, std::vector<TaggedEquation>& eqs) {
    for (const auto& p : w.places) {
        if (!w.untouched(p)) continue;
        eqs.push_back(TaggedEquation::fixed(p, w.m0.at(p)));
        log("reduce: constant ", p, " = ", w.m0.at(p));
        w.remove_place(std::string(p));
        return true;
    }
    return false;
}

inline bool try_duplicate(WorkNet& w, std::vector<TaggedEquation>& eqs) {
    for (std::size_t i = 0; i < w.places.size(); ++i)
        for (std::size_t j = i + 1; j < w.places.size(); ++j) {
            const auto p = w.places[i], q = w.places[j];
            if (w.m0.at(p) != w.m0.at(q) || !w.same_columns(p, q)) continue;
            eqs.push_back(TaggedEquation::redundancy(q, {p}));
            log("reduce: duplicate ", q, " = ", p);
            w.remove_place(q);
            return true;
        }
    return false;
}

// q fed only by t: p -> q, where t has no other effect and is p's only
// consumer; both p and q start empty.
inline bool try_chain(WorkNet& w, std::vector<TaggedEquation>& eqs, std::size_t& counter) {
    for (const auto& q : w.places) {
        if (w.m0.at(q) != 0) continue;
        std::vector<std::size_t> producers;
        for (std::size_t t = 0; t < w.trans.size(); ++t)
            if (WorkNet::at(w.trans[t].post, q)) producers.push_back(t);
        if (producers.size() != 1) continue;
        const auto& t = w.trans[producers[0]];
        if (t.pre.size() != 1 || t.post.size() != 1 || t.post.begin()->second != 1 || t.pre.begin()->second != 1)
            continue;
        const std::string p = t.pre.begin()->first;
        if (p == q || w.m0.at(p) != 0) continue;
        const bool sole_consumer = std::all_of(w.trans.begin(), w.trans.end(), [&](const WorkNet::Trans& u) {
            return &u == &t || WorkNet::at(u.pre, p) == 0;
        });
        if (!sole_consumer) continue;

        const std::string qname = q;
        const std::string a = w.fresh(counter);
        eqs.push_back(TaggedEquation::agglomeration(a, {p, qname}));
        log("reduce: chain ", a, " = ", p, " + ", qname);
        w.trans.erase(w.trans.begin() + static_cast<std::ptrdiff_t>(producers[0]));
        for (auto& u : w.trans)
            for (auto* side : {&u.pre, &u.post}) {
                const Tokens n = WorkNet::at(*side, p) + WorkNet::at(*side, qname);
                side->erase(p);
                side->erase(qname);
                if (n) (*side)[a] = n;
            }
        *std::find(w.places.begin(), w.places.end(), p) = a;
        w.places.erase(std::find(w.places.begin(), w.places.end(), qname));
        w.m0.erase(p);
        w.m0.erase(qname);
        w.m0[a] = 0;
        return true;
    }
    return false;
}

}  // namespace detail

// Applies the constant, duplicate and chain rules one rewrite at a time, in
// that priority, until none applies. Output is deterministic.
inline ReductionResult reduce(const PetriNet& net, const Marking& m0) {
    auto w = detail::WorkNet::from(net, m0);
    ReductionResult r;
    std::size_t counter = 0;
    while (detail::try_constant(w, r.equations) || detail::try_duplicate(w, r.equations) ||
           detail::try_chain(w, r.equations, counter)) {
    }
    r.reduced_net = w.to_net(r.reduced_marking);
    const auto n1 = net.place_count(), n2 = r.reduced_net.place_count();
    r.ratio = n1 == 0 ? 0.0 : static_cast<double>(n1 - n2) / static_cast<double>(n1);
    return r;
}

}  // namespace tfgkit
