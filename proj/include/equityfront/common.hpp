#ifndef EQUITYFRONT_COMMON_HPP
#define EQUITYFRONT_COMMON_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace equityfront {

// Input that violates a model invariant (bad parameters, malformed files).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed or incompatible serialized data.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A request beyond the configured enumeration limits (exit code 2 in the CLI).
class SizeLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kDedupTol = 1e-9;

// Round to the 1e-9 grid used for canonical solution keys and length dedup.
inline double round_key(double v) {
    return std::round(v * 1e9) / 1e9;
}

inline std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h = 1469598103934665603ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

inline std::uint64_t fnv1a(const std::vector<double>& v, std::uint64_t h = 1469598103934665603ull) {
    return v.empty() ? h : fnv1a(v.data(), v.size() * sizeof(double), h);
}

// Deterministic uniform draw in [0,1) from a 64-bit generator state.
inline double to_unit_interval(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

} // namespace equityfront

#endif
