#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tfgkit/error.hpp"

namespace tfgkit {

enum class Cell : std::uint8_t { Zero, One, Unknown };

inline char to_char(Cell c) {
    switch (c) {
        case Cell::Zero: return '0';
        case Cell::One: return '1';
        case Cell::Unknown: return '.';
    }
    return '?';
}

// Symmetric matrix over an ordered list of names, stored as its lower
// triangle (diagonal included). cell(v, v) = 1 means v is nondead.
class ConcurrencyMatrix {
public:
    ConcurrencyMatrix() = default;

    explicit ConcurrencyMatrix(std::vector<std::string> order, Cell fill = Cell::Zero)
        : order_(std::move(order)), cells_(order_.size() * (order_.size() + 1) / 2, fill) {
        for (std::size_t i = 0; i < order_.size(); ++i) {
            if (!index_.emplace(order_[i], i).second) throw DuplicateName(order_[i]);
        }
    }

    std::size_t size() const { return order_.size(); }
    const std::vector<std::string>& order() const { return order_; }

    std::optional<std::size_t> find(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t index(const std::string& name) const {
        auto i = find(name);
        if (!i) throw UnknownNode(name);
        return *i;
    }

    Cell at(std::size_t i, std::size_t j) const { return cells_[slot(i, j)]; }
    Cell at(const std::string& a, const std::string& b) const { return at(index(a), index(b)); }

    void set(std::size_t i, std::size_t j, Cell c) { cells_[slot(i, j)] = c; }
    void set(const std::string& a, const std::string& b, Cell c) { set(index(a), index(b), c); }

    // Triangular storage, row-major: row i holds columns 0..i.
    const std::vector<Cell>& cells() const { return cells_; }

    std::size_t count(Cell c) const {
        std::size_t n = 0;
        for (Cell x : cells_) n += (x == c);
        return n;
    }

    bool is_complete() const { return count(Cell::Unknown) == 0; }

    // Sub-matrix over `names`, in that order.
    ConcurrencyMatrix restrict_to(const std::vector<std::string>& names) const {
        ConcurrencyMatrix out(names, Cell::Unknown);
        std::vector<std::size_t> idx;
        idx.reserve(names.size());
        for (const auto& n : names) idx.push_back(index(n));
        for (std::size_t i = 0; i < names.size(); ++i)
            for (std::size_t j = 0; j <= i; ++j) out.set(i, j, at(idx[i], idx[j]));
        return out;
    }

    bool operator==(const ConcurrencyMatrix& o) const { return order_ == o.order_ && cells_ == o.cells_; }

private:
    static std::size_t slot(std::size_t i, std::size_t j) {
        if (j > i) std::swap(i, j);
        return i * (i + 1) / 2 + j;
    }

    std::vector<std::string> order_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<Cell> cells_;
};

}  // namespace tfgkit
