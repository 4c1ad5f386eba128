#pragma once

#include <cstdint>
#include <vector>

namespace fqam {

using BitVec = std::vector<std::uint8_t>;

inline unsigned gray_encode(unsigned n) { return n ^ (n >> 1); }

inline unsigned gray_decode(unsigned g) {
    unsigned n = 0;
    for (; g; g >>= 1) n ^= g;
    return n;
}

inline bool is_power_of_two(unsigned n) { return n > 0 && (n & (n - 1)) == 0; }

inline int int_log2(unsigned n) {
    int b = 0;
    while ((1u << b) < n) ++b;
    return b;
}

// Packs bits[0..count) MSB-first into an unsigned index.
inline unsigned pack_bits_msb(const std::uint8_t* bits, int count) {
    unsigned v = 0;
    for (int i = 0; i < count; ++i) v = (v << 1) | (bits[i] & 1u);
    return v;
}

inline void unpack_bits_msb(unsigned v, std::uint8_t* bits, int count) {
    for (int i = 0; i < count; ++i) bits[i] = (v >> (count - 1 - i)) & 1u;
}

} // namespace fqam
