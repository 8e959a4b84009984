#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>

namespace pf {

/// One SplitMix64 step: advances `state` by the golden-ratio increment and
/// returns the finalized output.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Derives an independent child seed: SplitMix64 applied to
/// `master ^ splitmix64(stream)`. Used for per-tree, per-class and per-stage seeds.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) noexcept;

/// 64-bit FNV-1a over the bytes of `tag`; turns stage names into stream ids.
std::uint64_t stream_id(std::string_view tag) noexcept;

/// xoshiro256** 1.0 (Blackman & Vigna), state expanded from the seed with SplitMix64.
///
/// All randomness in the toolkit goes through this generator so that splits,
/// tree bootstraps and network initialization are reproducible across
/// platforms and standard libraries. Bounded integers use Lemire's
/// multiply-shift with rejection; doubles use the top 53 bits.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept;

    std::uint64_t next() noexcept;

    /// Uniform in [0, 1).
    double uniform() noexcept;

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). `n` must be positive.
    std::uint64_t below(std::uint64_t n) noexcept;

    /// Standard normal via Box-Muller (no cached second value).
    double normal() noexcept;

    template <typename T>
    void shuffle(std::span<T> items) noexcept {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::uint64_t s_[4];
};

}  // namespace pf
