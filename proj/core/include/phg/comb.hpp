#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace phg {

// C(n, r), but any value exceeding cap is reported as cap + 1. Never overflows.
inline std::uint64_t binom_capped(int n, int r, std::uint64_t cap) {
    if (r < 0 || n < 0 || r > n) return 0;
    r = std::min(r, n - r);
    unsigned __int128 acc = 1;
    for (int i = 1; i <= r; ++i) {
        acc = acc * static_cast<unsigned>(n - r + i) / static_cast<unsigned>(i);
        if (acc > cap) return cap + 1;
    }
    return static_cast<std::uint64_t>(acc);
}

// C(n, r) computed exactly in unsigned 64-bit range; throws std::overflow_error
// if the value does not fit.
inline std::uint64_t binom(int n, int r) {
    constexpr std::uint64_t cap = ~std::uint64_t{0} - 1;
    std::uint64_t v = binom_capped(n, r, cap);
    if (v == cap + 1) throw std::overflow_error("binom: value exceeds 64 bits");
    return v;
}

// Colexicographic rank of a strictly ascending r-tuple: sum of C(v[i], i+1).
inline std::uint64_t colex_rank(std::span<const std::int32_t> tuple) {
    std::uint64_t rank = 0;
    for (std::size_t i = 0; i < tuple.size(); ++i)
        rank += binom(tuple[i], static_cast<int>(i) + 1);
    return rank;
}

// In-place successor in colexicographic order over ascending r-subsets of
// [0, n). Returns false when the last subset was already reached.
inline bool next_colex(std::span<std::int32_t> tuple, int n) {
    int r = static_cast<int>(tuple.size());
    for (int i = 0; i < r; ++i) {
        std::int32_t limit = (i + 1 < r) ? tuple[i + 1] : n;
        if (tuple[i] + 1 < limit) {
            ++tuple[i];
            for (int j = 0; j < i; ++j) tuple[j] = j;
            return true;
        }
    }
    return false;
}

// Calls fn(span) for every ascending r-subset of [0, n) in lexicographic
// order. fn may return void, or bool where false stops the enumeration.
template <typename Fn>
void for_each_subset(int n, int r, Fn&& fn) {
    if (r < 0 || r > n) return;
    std::vector<std::int32_t> c(r);
    for (int i = 0; i < r; ++i) c[i] = i;
    for (;;) {
        using R = decltype(fn(std::span<const std::int32_t>(c)));
        if constexpr (std::is_same_v<R, bool>) {
            if (!fn(std::span<const std::int32_t>(c))) return;
        } else {
            fn(std::span<const std::int32_t>(c));
        }
        int i = r - 1;
        while (i >= 0 && c[i] == n - r + i) --i;
        if (i < 0) return;
        ++c[i];
        for (int j = i + 1; j < r; ++j) c[j] = c[j - 1] + 1;
    }
}

}  // namespace phg
