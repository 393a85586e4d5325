#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "tfgkit/error.hpp"
#include "tfgkit/petri.hpp"

namespace tfgkit {

enum class EquationTag { Redundancy, Agglomeration };

inline char tag_char(EquationTag t) { return t == EquationTag::Redundancy ? 'R' : 'A'; }

// One reduction equation `removed = t1 + ... + tn` or `removed = k`.
struct TaggedEquation {
    EquationTag tag = EquationTag::Redundancy;
    std::string removed;
    std::vector<std::string> terms;  // empty iff the right-hand side is a constant
    std::optional<Tokens> constant;

    static TaggedEquation redundancy(std::string removed, std::vector<std::string> terms) {
        return {EquationTag::Redundancy, std::move(removed), std::move(terms), std::nullopt};
    }
    static TaggedEquation agglomeration(std::string removed, std::vector<std::string> terms) {
        return {EquationTag::Agglomeration, std::move(removed), std::move(terms), std::nullopt};
    }
    static TaggedEquation fixed(std::string removed, Tokens value, EquationTag tag = EquationTag::Redundancy) {
        return {tag, std::move(removed), {}, value};
    }

    bool is_constant() const { return constant.has_value(); }

    // Every name on either side.
    std::vector<std::string> variables() const {
        std::vector<std::string> out{removed};
        out.insert(out.end(), terms.begin(), terms.end());
        return out;
    }

    // Throws SyntaxError when the right-hand side is empty, has duplicates,
    // or mentions the removed variable.
    void validate() const {
        if (is_constant()) {
            if (!terms.empty()) throw SyntaxError(0, "constant equation with variable terms");
            return;
        }
        if (terms.empty()) throw SyntaxError(0, "equation for '" + removed + "' has no terms");
        auto sorted = terms;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw SyntaxError(0, "duplicate term in equation for '" + removed + "'");
        if (std::binary_search(sorted.begin(), sorted.end(), removed))
            throw SyntaxError(0, "'" + removed + "' occurs on both sides");
    }

    bool operator==(const TaggedEquation&) const = default;
};

}  // namespace tfgkit
