#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tfgkit {

// Base of every error raised by the library. Verdicts (ProjectionFailed,
// Truncated, ...) are data and never thrown.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input text does not follow its grammar. `line` is 1-based, 0 when unknown.
struct SyntaxError : Error {
    SyntaxError(std::size_t line, const std::string& reason)
        : Error(line == 0 ? reason : "line " + std::to_string(line) + ": " + reason), line(line) {}
    std::size_t line;
};

struct DuplicateName : Error {
    explicit DuplicateName(const std::string& name)
        : Error("duplicate name '" + name + "'"), name(name) {}
    std::string name;
};

struct UnknownPlace : Error {
    explicit UnknownPlace(const std::string& name)
        : Error("unknown place '" + name + "'"), name(name) {}
    std::string name;
};

struct UnknownNode : Error {
    explicit UnknownNode(const std::string& name)
        : Error("unknown node '" + name + "'"), name(name) {}
    std::string name;
};

struct Unsupported : Error {
    explicit Unsupported(const std::string& feature)
        : Error("unsupported feature: " + feature), feature(feature) {}
    std::string feature;
};

struct DuplicateAssignment : Error {
    explicit DuplicateAssignment(const std::string& name)
        : Error("place '" + name + "' assigned twice"), name(name) {}
    std::string name;
};

struct RaggedRow : Error {
    RaggedRow(std::size_t row, std::size_t expected, std::size_t got)
        : Error("matrix row " + std::to_string(row) + " has " + std::to_string(got) +
                " cells, expected " + std::to_string(expected)),
          row(row) {}
    std::size_t row;
};

struct NotEnabled : Error {
    explicit NotEnabled(const std::string& transition)
        : Error("transition '" + transition + "' is not enabled"), transition(transition) {}
    std::string transition;
};

// An oracle was asked to answer from a state space that was cut short.
struct IncompleteStateSpace : Error {
    IncompleteStateSpace() : Error("state space is truncated") {}
};

// The complete concurrency algorithm was handed a relation with unknown cells.
struct IncompleteInput : Error {
    IncompleteInput() : Error("concurrency relation has unknown cells") {}
};

struct InconsistentInput : Error {
    InconsistentInput(const std::string& row, const std::string& col)
        : Error("conflicting values derived for cell (" + row + ", " + col + ")"), row(row), col(col) {}
    std::string row, col;
};

struct Diverges : Error {
    explicit Diverges(const std::string& node)
        : Error("value of node '" + node + "' exceeds the enumeration safeguard"), node(node) {}
    std::string node;
};

struct PreconditionError : Error {
    using Error::Error;
};

// One of the well-formedness constraints T1..T6 failed.
struct NotWellFormed : Error {
    NotWellFormed(std::string check, std::vector<std::string> witness)
        : Error(describe(check, witness)), check(std::move(check)), witness(std::move(witness)) {}

    std::string check;
    std::vector<std::string> witness;

private:
    static std::string describe(const std::string& check, const std::vector<std::string>& witness) {
        std::string s = "TFG is not well formed (" + check + ")";
        if (!witness.empty()) {
            s += ":";
            for (const auto& w : witness) s += " " + w;
        }
        return s;
    }
};

}  // namespace tfgkit
