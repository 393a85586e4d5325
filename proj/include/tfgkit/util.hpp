#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <string_view>
#include <vector>

namespace tfgkit {

// SplitMix64. Used instead of <random> engines+distributions so that seeded
// output is identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform-ish value in [0, n). n must be > 0.
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

    bool chance(unsigned percent) { return below(100) < percent; }

private:
    std::uint64_t state_;
};

namespace detail {

// prefix1, prefix2, ... skipping names for which `taken` holds.
inline std::string fresh_name(const std::string& prefix, std::size_t& counter,
                              const std::function<bool(const std::string&)>& taken) {
    std::string name;
    do {
        name = prefix + std::to_string(++counter);
    } while (taken(name));
    return name;
}

inline std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r' || s[i] == '\n')) ++i;
        std::size_t j = i;
        while (j < s.size() && !(s[j] == ' ' || s[j] == '\t' || s[j] == '\r' || s[j] == '\n')) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

inline std::vector<std::string_view> split_lines(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i <= s.size()) {
        auto j = s.find('\n', i);
        if (j == std::string_view::npos) j = s.size();
        out.push_back(s.substr(i, j - i));
        i = j + 1;
    }
    if (!out.empty() && out.back().empty()) out.pop_back();
    return out;
}

inline bool is_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

// Parses a natural number; false on overflow or bad characters.
inline bool parse_nat(std::string_view s, std::uint64_t& out) {
    if (!is_digits(s)) return false;
    std::uint64_t v = 0;
    for (char c : s) {
        const std::uint64_t d = static_cast<std::uint64_t>(c - '0');
        if (v > (UINT64_MAX - d) / 10) return false;
        v = v * 10 + d;
    }
    out = v;
    return true;
}

// Identifiers used for places, transitions and TFG nodes.
inline bool valid_name(std::string_view s) {
    if (s.empty() || is_digits(s)) return false;
    for (char c : s) {
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '=' || c == '#' || c == '*' ||
            c == '+')
            return false;
    }
    return true;
}

}  // namespace detail

// Diagnostics go to stderr when TFGKIT_LOG is set to anything but "0".
inline bool log_enabled() {
    static const bool on = [] {
        const char* v = std::getenv("TFGKIT_LOG");
        return v != nullptr && std::string_view(v) != "0" && std::string_view(v) != "";
    }();
    return on;
}

template <typename... Args>
void log(const Args&... args) {
    if (!log_enabled()) return;
    std::cerr << "[tfgkit] ";
    (std::cerr << ... << args);
    std::cerr << '\n';
}

}  // namespace tfgkit
