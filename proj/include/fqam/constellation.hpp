#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fqam/bits.hpp"
#include "fqam/fft.hpp"

namespace fqam {

// Q-ary QAM constellation with unit average energy. Points are ordered along
// a path through the constellation such that consecutive indices are nearest
// neighbours; together with reflected-binary Gray coding of the index this
// yields a Gray bit labeling.
struct QamConstellation {
    int order = 0;
    CplxVec points;

    static QamConstellation make(int q) {
        QamConstellation c;
        c.order = q;
        switch (q) {
            case 2:
                c.points = {Cplx(1.0, 0.0), Cplx(-1.0, 0.0)};
                break;
            case 4: {
                const double s = 1.0 / std::sqrt(2.0);
                // angular order, so index 3 wraps back next to index 0
                c.points = {Cplx(s, s), Cplx(-s, s), Cplx(-s, -s), Cplx(s, -s)};
                break;
            }
            case 16: {
                const double a = 1.0 / std::sqrt(10.0);
                const double lv[4] = {-3.0 * a, -1.0 * a, 1.0 * a, 3.0 * a};
                // boustrophedon path through the 4x4 grid
                c.points.resize(16);
                for (int r = 0; r < 4; ++r)
                    for (int cpath = 0; cpath < 4; ++cpath) {
                        const int col = (r % 2 == 0) ? cpath : 3 - cpath;
                        c.points[static_cast<std::size_t>(r * 4 + cpath)] = Cplx(lv[col], lv[r]);
                    }
                break;
            }
            default:
                throw std::invalid_argument("QamConstellation: supported orders are 2, 4, 16");
        }
        return c;
    }
};

struct FqamSpec {
    int mf = 0;
    QamConstellation qam;

    int freq_bits() const { return int_log2(static_cast<unsigned>(mf)); }
    int qam_bits() const { return int_log2(static_cast<unsigned>(qam.order)); }
    int bits_per_symbol() const { return freq_bits() + qam_bits(); }

    static FqamSpec make(int mf, int q) {
        if (!is_power_of_two(static_cast<unsigned>(mf)))
            throw std::invalid_argument("FqamSpec: M_F must be a power of two");
        FqamSpec s;
        s.mf = mf;
        s.qam = QamConstellation::make(q);
        return s;
    }
};

struct FqamSymbol {
    int freq_index = 0;
    int qam_index = 0;
};

// First log2(M_F) bits select the frequency index, last log2(Q) bits the QAM
// index; both groups are Gray decoded (reflected binary).
inline FqamSymbol map_bits(const BitVec& bits, const FqamSpec& spec) {
    if (static_cast<int>(bits.size()) != spec.bits_per_symbol())
        throw std::invalid_argument("map_bits: bit count does not match spec");
    FqamSymbol sym;
    sym.freq_index = static_cast<int>(gray_decode(pack_bits_msb(bits.data(), spec.freq_bits())));
    sym.qam_index = static_cast<int>(
        gray_decode(pack_bits_msb(bits.data() + spec.freq_bits(), spec.qam_bits())));
    return sym;
}

inline BitVec demap_hard(const FqamSymbol& sym, const FqamSpec& spec) {
    BitVec bits(static_cast<std::size_t>(spec.bits_per_symbol()));
    unpack_bits_msb(gray_encode(static_cast<unsigned>(sym.freq_index)), bits.data(),
                    spec.freq_bits());
    unpack_bits_msb(gray_encode(static_cast<unsigned>(sym.qam_index)),
                    bits.data() + spec.freq_bits(), spec.qam_bits());
    return bits;
}

// The single active component carries sqrt(M_F) times the unit-energy QAM
// point, so block power matches QAM occupying all M_F components.
inline double active_scale(const FqamSpec& spec) { return std::sqrt(static_cast<double>(spec.mf)); }

inline void symbol_to_grid(const FqamSymbol& sym, const FqamSpec& spec, Cplx* out) {
    if (sym.freq_index < 0 || sym.freq_index >= spec.mf || sym.qam_index < 0 ||
        sym.qam_index >= spec.qam.order)
        throw std::invalid_argument("symbol_to_grid: index out of range");
    for (int l = 0; l < spec.mf; ++l) out[l] = Cplx(0.0, 0.0);
    out[sym.freq_index] = active_scale(spec) * spec.qam.points[static_cast<std::size_t>(sym.qam_index)];
}

inline CplxVec symbol_to_grid(const FqamSymbol& sym, const FqamSpec& spec) {
    CplxVec g(static_cast<std::size_t>(spec.mf));
    symbol_to_grid(sym, spec, g.data());
    return g;
}

} // namespace fqam
