#pragma once

// Counter-based random numbers for reproducible parallel Monte Carlo.
//
// Every estimator in pulab draws from a Philox4x32-10 stream keyed by the
// user seed, with the 128-bit counter split into a 64-bit stream id and a
// 64-bit block index.  Work is cut into fixed-size chunks and each chunk
// owns one stream, so results depend on (inputs, seed) only and never on
// how many worker threads execute the chunks.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <thread>
#include <vector>

namespace pulab {

/// Philox4x32 with 10 rounds (Salmon et al., "Parallel random numbers: as
/// easy as 1, 2, 3").  Satisfies UniformRandomBitGenerator with 64-bit output.
class Philox
{
  public:
    using result_type = std::uint64_t;
    using Block = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    Philox(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_{static_cast<std::uint32_t>(seed),
               static_cast<std::uint32_t>(seed >> 32)},
          stream_(stream)
    {
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept
    {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept
    {
        if (used_ == 2) {
            buffer_ = bijection(counter_block(index_++), key_);
            used_ = 0;
        }
        auto const lo = buffer_[2 * used_];
        auto const hi = buffer_[2 * used_ + 1];
        ++used_;
        return (static_cast<std::uint64_t>(hi) << 32) | lo;
    }

    /// The raw keyed bijection; exposed for known-answer tests.
    static Block bijection(Block ctr, Key key) noexcept
    {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            auto const p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
            auto const p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
                   static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
                   static_cast<std::uint32_t>(p0)};
        }
        return ctr;
    }

  private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    Block counter_block(std::uint64_t index) const noexcept
    {
        return {static_cast<std::uint32_t>(index),
                static_cast<std::uint32_t>(index >> 32),
                static_cast<std::uint32_t>(stream_),
                static_cast<std::uint32_t>(stream_ >> 32)};
    }

    Key key_;
    std::uint64_t stream_;
    std::uint64_t index_ = 0;
    Block buffer_{};
    int used_ = 2;
};

/// Stream ids are namespaced by purpose so that, e.g., the box estimator and
/// the ordered-cone estimator never share samples under the same seed.
enum class StreamTag : std::uint16_t {
    BoxVolume = 1,
    OrderedCone = 2,
    SliceProfile = 3,
    Rejection = 4,
    HitAndRun = 5,
    RadialSampler = 6,
    Symmetry = 7,
    Bootstrap = 8,
    Sequence = 9,
    Generic = 10,
};

constexpr std::uint64_t stream_id(StreamTag tag, std::uint64_t index) noexcept
{
    return (static_cast<std::uint64_t>(tag) << 48) | (index & ((1ull << 48) - 1));
}

/// SplitMix64 finaliser, used to derive child seeds from (seed, index).
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) noexcept
{
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Uniform on [0, 1) with 53 random bits.
template <class Rng>
double uniform01(Rng& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform on the open interval (0, 1); safe as a log() argument.
template <class Rng>
double uniform_open01(Rng& rng)
{
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

template <class Rng>
double uniform(Rng& rng, double lo, double hi)
{
    return lo + (hi - lo) * uniform01(rng);
}

/// Uniform integer in [0, n) by multiply-shift (bias below 2^-64 * n).
template <class Rng>
std::size_t uniform_index(Rng& rng, std::size_t n)
{
    auto const wide = static_cast<unsigned __int128>(rng()) * n;
    return static_cast<std::size_t>(wide >> 64);
}

template <class Rng>
double standard_normal(Rng& rng)
{
    // Box-Muller; the second variate is discarded to keep streams stateless.
    double const u = uniform_open01(rng);
    double const v = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
}

/// Gamma(shape, rate) for integer shape, as a sum of exponentials.
template <class Rng>
double gamma_integer_shape(Rng& rng, unsigned shape, double rate)
{
    double sum = 0.0;
    for (unsigned k = 0; k < shape; ++k) {
        sum -= std::log(uniform_open01(rng));
    }
    return sum / rate;
}

template <class Rng>
void shuffle(Rng& rng, std::span<std::size_t> items)
{
    for (std::size_t i = items.size(); i > 1; --i) {
        std::swap(items[i - 1], items[uniform_index(rng, i)]);
    }
}

/// Samples per independent stream in chunked estimators.
inline constexpr std::uint64_t kChunkSize = 1u << 16;

namespace detail {
inline std::atomic<std::size_t> worker_limit{0};
}

/// Caps the number of worker threads; 0 restores the hardware default.
/// Results never depend on this setting.
inline void set_worker_limit(std::size_t limit) noexcept { detail::worker_limit = limit; }

inline std::size_t worker_count(std::size_t jobs)
{
    std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    if (std::size_t const cap = detail::worker_limit; cap > 0) hw = cap;
    return std::min(hw, jobs);
}

/// Runs body(i) for i in [0, jobs) on a pool of threads.  Each job must write
/// only to its own output slot; callers reduce in index order afterwards.
template <class Fn>
void parallel_for(std::size_t jobs, Fn&& body)
{
    std::size_t const workers = worker_count(jobs);
    if (workers <= 1) {
        for (std::size_t i = 0; i < jobs; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < jobs; i = next++) {
                body(i);
            }
        });
    }
}

}  // namespace pulab
