#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>

namespace hdr {

using Base = std::uint64_t;

/// Edge and path weight: an integer base weight plus an additive tiebreak.
///
/// Comparison is lexicographic on (base, tiebreak), so equal-base paths are
/// ordered by the sum of their per-edge tiebreaks. Tiebreaks are drawn from
/// kTiebreakBits bits, which keeps path sums of up to 2^24 edges exact.
struct PerturbedWeight {
    Base base = 0;
    std::uint64_t tiebreak = 0;

    constexpr PerturbedWeight() = default;
    constexpr PerturbedWeight(Base b, std::uint64_t t) : base(b), tiebreak(t) {}

    static constexpr PerturbedWeight zero() { return {0, 0}; }
    static constexpr PerturbedWeight infinity() {
        return {std::numeric_limits<Base>::max(), std::numeric_limits<std::uint64_t>::max()};
    }
    /// Largest weight with the given base, used as an inclusive radius.
    static constexpr PerturbedWeight radius(Base b) {
        return {b, std::numeric_limits<std::uint64_t>::max()};
    }

    constexpr bool is_infinite() const { return base == std::numeric_limits<Base>::max(); }

    constexpr PerturbedWeight& operator+=(const PerturbedWeight& o) {
        base += o.base;
        tiebreak += o.tiebreak;
        return *this;
    }
    friend constexpr PerturbedWeight operator+(PerturbedWeight a, const PerturbedWeight& b) {
        return a += b;
    }
    friend constexpr auto operator<=>(const PerturbedWeight&, const PerturbedWeight&) = default;
    friend constexpr bool operator==(const PerturbedWeight&, const PerturbedWeight&) = default;

    friend std::ostream& operator<<(std::ostream& os, const PerturbedWeight& w) {
        return os << '(' << w.base << ',' << w.tiebreak << ')';
    }
};

inline constexpr int kTiebreakBits = 40;
inline constexpr std::uint64_t kTiebreakMask = (std::uint64_t{1} << kTiebreakBits) - 1;
/// Upper bound on a single scaled base weight; keeps path sums far from overflow.
inline constexpr Base kMaxBaseWeight = Base{1} << 40;

/// The hierarchy radius base. Every level i works with radius 8^i.
inline constexpr Base kRadiusBase = 8;

/// 8^i, saturating at the maximum Base value.
constexpr Base pow8(int i) {
    if (i < 0) return 0;
    Base r = 1;
    for (int k = 0; k < i; ++k) {
        if (r > std::numeric_limits<Base>::max() / kRadiusBase) return std::numeric_limits<Base>::max();
        r *= kRadiusBase;
    }
    return r;
}

/// Saturating multiply, used for radii like 3 * 8^i.
constexpr Base sat_mul(Base a, Base k) {
    if (a != 0 && k > std::numeric_limits<Base>::max() / a) return std::numeric_limits<Base>::max();
    return a * k;
}

/// The level whose interval (8^{i-1}, 8^i] contains a base weight >= 1.
constexpr int edge_level(Base w) {
    int i = 0;
    while (w > pow8(i)) ++i;
    return i;
}

}  // namespace hdr
