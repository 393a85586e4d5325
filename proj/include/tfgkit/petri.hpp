#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tfgkit/error.hpp"
#include "tfgkit/util.hpp"

namespace tfgkit {

using Tokens = std::uint32_t;
using PlaceId = std::size_t;
using TransitionId = std::size_t;

// Sparse marking: place name -> tokens. Zero entries are never stored, so two
// markings are equal iff they agree on every place (absent means zero).
class Marking {
public:
    Marking() = default;
    Marking(std::initializer_list<std::pair<const std::string, Tokens>> init) {
        for (const auto& [p, n] : init) set(p, n);
    }

    Tokens get(const std::string& place) const {
        auto it = tokens_.find(place);
        return it == tokens_.end() ? 0 : it->second;
    }

    void set(const std::string& place, Tokens n) {
        if (n == 0)
            tokens_.erase(place);
        else
            tokens_[place] = n;
    }

    const std::map<std::string, Tokens>& entries() const { return tokens_; }
    bool empty() const { return tokens_.empty(); }

    bool is_safe() const {
        return std::all_of(tokens_.begin(), tokens_.end(), [](const auto& e) { return e.second <= 1; });
    }

    std::string to_string() const {
        std::ostringstream os;
        os << '{';
        bool first = true;
        for (const auto& [p, n] : tokens_) {
            os << (first ? "" : ", ") << p << ':' << n;
            first = false;
        }
        os << '}';
        return os.str();
    }

    auto operator<=>(const Marking&) const = default;
    bool operator==(const Marking&) const = default;

private:
    std::map<std::string, Tokens> tokens_;
};

using DenseMarking = std::vector<Tokens>;

struct DenseMarkingHash {
    std::size_t operator()(const DenseMarking& m) const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (Tokens v : m) {
            h ^= v;
            h *= 0x100000001b3ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

struct Arc {
    PlaceId place;
    Tokens weight;
    bool operator==(const Arc&) const = default;
};

struct Transition {
    std::string name;
    std::vector<Arc> pre;   // sorted by place, weights > 0
    std::vector<Arc> post;  // sorted by place, weights > 0
    bool operator==(const Transition&) const = default;
};

// Place/transition net. Places and transitions keep their declaration order.
class PetriNet {
public:
    PlaceId add_place(const std::string& name) {
        check_name(name);
        const PlaceId id = places_.size();
        places_.push_back(name);
        place_index_.emplace(name, id);
        return id;
    }

    // Repeated places in `pre`/`post` accumulate their weights.
    TransitionId add_transition(const std::string& name,
                                const std::vector<std::pair<std::string, Tokens>>& pre,
                                const std::vector<std::pair<std::string, Tokens>>& post) {
        std::vector<Arc> pre_arcs, post_arcs;
        for (const auto& [p, w] : pre) pre_arcs.push_back({place(p), w});
        for (const auto& [p, w] : post) post_arcs.push_back({place(p), w});
        return add_transition(name, std::move(pre_arcs), std::move(post_arcs));
    }

    TransitionId add_transition(const std::string& name, std::vector<Arc> pre, std::vector<Arc> post) {
        check_name(name);
        for (const auto& a : pre)
            if (a.place >= places_.size()) throw UnknownPlace("#" + std::to_string(a.place));
        for (const auto& a : post)
            if (a.place >= places_.size()) throw UnknownPlace("#" + std::to_string(a.place));
        const TransitionId id = transitions_.size();
        transitions_.push_back({name, normalize(std::move(pre)), normalize(std::move(post))});
        transition_index_.emplace(name, id);
        return id;
    }

    const std::vector<std::string>& places() const { return places_; }
    const std::vector<Transition>& transitions() const { return transitions_; }
    std::size_t place_count() const { return places_.size(); }
    std::size_t transition_count() const { return transitions_.size(); }

    std::optional<PlaceId> find_place(const std::string& name) const {
        auto it = place_index_.find(name);
        if (it == place_index_.end()) return std::nullopt;
        return it->second;
    }

    PlaceId place(const std::string& name) const {
        auto id = find_place(name);
        if (!id) throw UnknownPlace(name);
        return *id;
    }

    std::optional<TransitionId> find_transition(const std::string& name) const {
        auto it = transition_index_.find(name);
        if (it == transition_index_.end()) return std::nullopt;
        return it->second;
    }

    Tokens pre(TransitionId t, PlaceId p) const { return weight_of(transitions_.at(t).pre, p); }
    Tokens post(TransitionId t, PlaceId p) const { return weight_of(transitions_.at(t).post, p); }

    DenseMarking dense(const Marking& m) const {
        DenseMarking d(places_.size(), 0);
        for (const auto& [p, n] : m.entries()) d[place(p)] = n;
        return d;
    }

    bool operator==(const PetriNet& o) const {
        return places_ == o.places_ && transitions_ == o.transitions_;
    }

    Marking sparse(const DenseMarking& d) const {
        Marking m;
        for (PlaceId p = 0; p < d.size(); ++p) m.set(places_[p], d[p]);
        return m;
    }

private:
    void check_name(const std::string& name) const {
        if (!detail::valid_name(name)) throw SyntaxError(0, "invalid name '" + name + "'");
        if (place_index_.count(name) || transition_index_.count(name)) throw DuplicateName(name);
    }

    static std::vector<Arc> normalize(std::vector<Arc> arcs) {
        std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return a.place < b.place; });
        std::vector<Arc> out;
        for (const auto& a : arcs) {
            if (a.weight == 0) continue;
            if (!out.empty() && out.back().place == a.place)
                out.back().weight += a.weight;
            else
                out.push_back(a);
        }
        return out;
    }

    static Tokens weight_of(const std::vector<Arc>& arcs, PlaceId p) {
        for (const auto& a : arcs)
            if (a.place == p) return a.weight;
        return 0;
    }

    std::vector<std::string> places_;
    std::vector<Transition> transitions_;
    std::unordered_map<std::string, PlaceId> place_index_;
    std::unordered_map<std::string, TransitionId> transition_index_;
};

inline bool is_enabled(const PetriNet& net, const DenseMarking& m, TransitionId t) {
    for (const auto& a : net.transitions()[t].pre)
        if (m[a.place] < a.weight) return false;
    return true;
}

inline std::vector<TransitionId> enabled(const PetriNet& net, const DenseMarking& m) {
    std::vector<TransitionId> out;
    for (TransitionId t = 0; t < net.transition_count(); ++t)
        if (is_enabled(net, m, t)) out.push_back(t);
    return out;
}

inline std::set<std::string> enabled(const PetriNet& net, const Marking& m) {
    std::set<std::string> out;
    const auto d = net.dense(m);
    for (TransitionId t : enabled(net, d)) out.insert(net.transitions()[t].name);
    return out;
}

inline DenseMarking fire(const PetriNet& net, const DenseMarking& m, TransitionId t) {
    if (!is_enabled(net, m, t)) throw NotEnabled(net.transitions()[t].name);
    DenseMarking out = m;
    for (const auto& a : net.transitions()[t].pre) out[a.place] -= a.weight;
    for (const auto& a : net.transitions()[t].post) out[a.place] += a.weight;
    return out;
}

inline Marking fire(const PetriNet& net, const Marking& m, const std::string& transition) {
    auto t = net.find_transition(transition);
    if (!t) throw NotEnabled(transition);
    return net.sparse(fire(net, net.dense(m), *t));
}

struct ExploreLimits {
    std::size_t max_states = 1'000'000;
    Tokens max_token = 1'000;
    // Checked cooperatively every few hundred states.
    std::optional<std::chrono::milliseconds> timeout;
};

enum class Truncation { None, MaxStates, MaxToken, Timeout };

inline const char* to_string(Truncation t) {
    switch (t) {
        case Truncation::None: return "none";
        case Truncation::MaxStates: return "max-states";
        case Truncation::MaxToken: return "max-token";
        case Truncation::Timeout: return "timeout";
    }
    return "?";
}

// Explicit set of markings found by breadth-first exploration. Markings are
// stored densely in discovery order; index 0 is the initial marking.
class StateSpace {
public:
    StateSpace(std::vector<std::string> places, DenseMarking initial) : places_(std::move(places)) {
        insert(std::move(initial));
    }

    bool is_complete() const { return truncation_ == Truncation::None; }
    Truncation truncation() const { return truncation_; }
    std::size_t size() const { return states_.size(); }
    const std::vector<std::string>& places() const { return places_; }

    const DenseMarking& dense(std::size_t i) const { return states_[i]; }
    const std::vector<DenseMarking>& dense_markings() const { return states_; }

    Marking marking(std::size_t i) const {
        Marking m;
        for (std::size_t p = 0; p < places_.size(); ++p) m.set(places_[p], states_[i][p]);
        return m;
    }

    Marking initial() const { return marking(0); }

    std::set<Marking> markings() const {
        std::set<Marking> out;
        for (std::size_t i = 0; i < states_.size(); ++i) out.insert(marking(i));
        return out;
    }

    bool contains(const DenseMarking& m) const { return index_.count(m) != 0; }

    // Places outside the space's place set make the marking absent.
    bool contains(const Marking& m) const {
        DenseMarking d(places_.size(), 0);
        for (const auto& [p, n] : m.entries()) {
            auto it = std::find(places_.begin(), places_.end(), p);
            if (it == places_.end()) return false;
            d[static_cast<std::size_t>(it - places_.begin())] = n;
        }
        return contains(d);
    }

    Tokens max_tokens() const {
        Tokens best = 0;
        for (const auto& s : states_)
            for (Tokens v : s) best = std::max(best, v);
        return best;
    }

    bool is_safe() const { return max_tokens() <= 1; }

    // Exploration internals.
    bool insert(DenseMarking m) {
        auto [it, fresh] = index_.emplace(m, states_.size());
        if (fresh) states_.push_back(std::move(m));
        return fresh;
    }
    void set_truncation(Truncation t) {
        if (truncation_ == Truncation::None) truncation_ = t;
    }

private:
    std::vector<std::string> places_;
    std::vector<DenseMarking> states_;
    std::unordered_map<DenseMarking, std::size_t, DenseMarkingHash> index_;
    Truncation truncation_ = Truncation::None;
};

namespace detail {

// Breadth-first closure; stops early when `stop(marking)` returns true.
// Returns whether it stopped early.
template <typename Stop>
bool bfs(const PetriNet& net, StateSpace& ss, const ExploreLimits& limits, Stop&& stop) {
    using Clock = std::chrono::steady_clock;
    const auto start = Clock::now();
    if (stop(ss.dense(0))) return true;
    for (std::size_t head = 0; head < ss.size(); ++head) {
        if (limits.timeout && (head & 0xff) == 0 && Clock::now() - start > *limits.timeout) {
            ss.set_truncation(Truncation::Timeout);
            return false;
        }
        for (TransitionId t = 0; t < net.transition_count(); ++t) {
            if (!is_enabled(net, ss.dense(head), t)) continue;
            DenseMarking next = fire(net, ss.dense(head), t);
            if (std::any_of(next.begin(), next.end(), [&](Tokens v) { return v > limits.max_token; })) {
                ss.set_truncation(Truncation::MaxToken);
                continue;
            }
            if (ss.contains(next)) continue;
            if (ss.size() >= limits.max_states) {
                ss.set_truncation(Truncation::MaxStates);
                return false;
            }
            ss.insert(next);
            if (stop(ss.dense(ss.size() - 1))) return true;
        }
    }
    return false;
}

}  // namespace detail

inline StateSpace explore(const PetriNet& net, const Marking& m0, const ExploreLimits& limits = {}) {
    if (limits.max_states < 1) throw PreconditionError("max_states must be >= 1");
    StateSpace ss(net.places(), net.dense(m0));
    detail::bfs(net, ss, limits, [](const DenseMarking&) { return false; });
    return ss;
}

struct SearchResult {
    bool found = false;
    Truncation truncation = Truncation::None;  // meaningful when !found
    std::size_t explored = 0;
};

// On-the-fly breadth-first search for one target marking.
inline SearchResult search(const PetriNet& net, const Marking& m0, const Marking& target,
                           const ExploreLimits& limits = {}) {
    const DenseMarking goal = net.dense(target);
    StateSpace ss(net.places(), net.dense(m0));
    const bool hit = detail::bfs(net, ss, limits, [&](const DenseMarking& m) { return m == goal; });
    return {hit, hit ? Truncation::None : ss.truncation(), ss.size()};
}

inline bool oracle_reachable(const StateSpace& ss, const Marking& m) {
    if (!ss.is_complete()) throw IncompleteStateSpace();
    return ss.contains(m);
}

// Fires up to `steps` uniformly chosen enabled transitions; stops at deadlock.
inline Marking random_walk(const PetriNet& net, const Marking& m0, std::size_t steps, std::uint64_t seed) {
    Rng rng(seed);
    DenseMarking m = net.dense(m0);
    for (std::size_t i = 0; i < steps; ++i) {
        const auto en = enabled(net, m);
        if (en.empty()) break;
        m = fire(net, m, en[rng.below(en.size())]);
    }
    return net.sparse(m);
}

}  // namespace tfgkit
