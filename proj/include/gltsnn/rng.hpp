#ifndef GLTSNN_RNG_HPP
#define GLTSNN_RNG_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include <Eigen/Core>

namespace gltsnn {

/// SplitMix64 output mix applied to an already-advanced state.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Deterministic SplitMix64 generator. Every stochastic component of the
/// library draws from one of these; nothing reads time or OS entropy.
///
/// A SeededRng is single-owner state. Workers that run concurrently each
/// construct their own from a seed obtained with derive_seed().
class SeededRng {
 public:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  explicit SeededRng(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next_u64() noexcept {
    state_ += kGolden;
    return splitmix64_mix(state_);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double next_unit_f64() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound). Plain modulo reduction; the bias is
  /// below 2^-40 for every bound used in this library.
  std::uint64_t next_below(std::uint64_t bound) noexcept {
    return next_u64() % bound;
  }

  /// Polar Box-Muller. Each accepted (u, v) pair yields two variates; the
  /// second one is returned by the following call.
  double standard_normal() noexcept {
    if (has_cached_normal_) {
      has_cached_normal_ = false;
      return cached_normal_;
    }
    double u = 0.0, v = 0.0, s = 0.0;
    do {
      u = 2.0 * next_unit_f64() - 1.0;
      v = 2.0 * next_unit_f64() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    cached_normal_ = v * factor;
    has_cached_normal_ = true;
    return u * factor;
  }

  std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// Fisher-Yates shuffle from the high end: for i = n-1 down to 1, swap
/// positions i and next_u64() mod (i+1).
inline std::vector<Eigen::Index> permutation(Eigen::Index n, SeededRng& rng) {
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(n < 0 ? 0 : n));
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<Eigen::Index>(i);
  for (std::size_t i = perm.size(); i-- > 1;) {
    const auto j = static_cast<std::size_t>(rng.next_below(i + 1));
    std::swap(perm[i], perm[j]);
  }
  return perm;
}

/// Seed for a sub-stream identified by `parts`:
///   h = mix(base + G); for each p: h = mix(h ^ (p + G))
/// with G the SplitMix64 increment and mix the SplitMix64 output function.
inline std::uint64_t derive_seed(std::uint64_t base,
                                 std::initializer_list<std::uint64_t> parts) noexcept {
  std::uint64_t h = splitmix64_mix(base + SeededRng::kGolden);
  for (const auto p : parts) h = splitmix64_mix(h ^ (p + SeededRng::kGolden));
  return h;
}

}  // namespace gltsnn

#endif  // GLTSNN_RNG_HPP
