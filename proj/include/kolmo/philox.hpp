// philox.hpp - Philox4x64-10 counter-based generator (Random123 family).
//
// block(counter, key) is a pure function, so any stream position can be
// addressed directly; streams for different keys are independent. Output
// matches Random123's philox4x64_10 and numpy.random.Philox.
#pragma once

#include <array>
#include <cstdint>

namespace kolmo {

struct Philox4x64 {
    using Counter = std::array<std::uint64_t, 4>;
    using Key = std::array<std::uint64_t, 2>;

    static constexpr int kRounds = 10;

    static Counter block(Counter ctr, Key key) {
        for (int r = 0; r < kRounds; ++r) {
            if (r > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            ctr = round(ctr, key);
        }
        return ctr;
    }

private:
    static constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
    static constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
    static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
    static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

    static void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
        const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
        hi = static_cast<std::uint64_t>(p >> 64);
        lo = static_cast<std::uint64_t>(p);
    }

    static Counter round(const Counter& c, const Key& k) {
        std::uint64_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, c[0], hi0, lo0);
        mulhilo(kMul1, c[2], hi1, lo1);
        return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
};

/// Top 53 bits as a double in [0, 1).
inline double to_unit(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

/// Sequential view of the stream keyed by (seed, stream id): the n-th call
/// to next() returns block({n, 0, 0, 0}, {seed, stream}).
class PhiloxStream {
public:
    PhiloxStream(std::uint64_t seed, std::uint64_t stream) : key_{seed, stream} {}

    Philox4x64::Counter next() { return Philox4x64::block({position_++, 0, 0, 0}, key_); }
    std::uint64_t position() const { return position_; }

private:
    Philox4x64::Key key_;
    std::uint64_t position_ = 0;
};

}  // namespace kolmo
