#pragma once

#include "tfgkit/matrix.hpp"
#include "tfgkit/petri.hpp"

namespace tfgkit {

// Ground-truth concurrency relation: scan every stored marking. Refuses a
// truncated space, whose missing markings would make 0-cells unsound.
inline ConcurrencyMatrix oracle_concurrency(const StateSpace& ss) {
    if (!ss.is_complete()) throw IncompleteStateSpace();
    ConcurrencyMatrix c(ss.places(), Cell::Zero);
    std::vector<std::size_t> marked;
    for (const auto& m : ss.dense_markings()) {
        marked.clear();
        for (std::size_t p = 0; p < m.size(); ++p)
            if (m[p] > 0) marked.push_back(p);
        for (std::size_t a = 0; a < marked.size(); ++a)
            for (std::size_t b = 0; b <= a; ++b) c.set(marked[a], marked[b], Cell::One);
    }
    return c;
}

}  // namespace tfgkit
