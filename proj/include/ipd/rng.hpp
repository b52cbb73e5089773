#ifndef IPD_RNG_HPP_
#define IPD_RNG_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace ipd {

// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for a sub-stream identified by a path of indices below `master`,
// e.g. DeriveSeed(master, {noise_index, pair_index, repetition}).
constexpr std::uint64_t DeriveSeed(std::uint64_t master,
                                   std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = Mix64(master);
  for (std::uint64_t k : path) s = Mix64(s ^ Mix64(k + 0x632be59bd9b4e019ULL));
  return s;
}

// Match-level random stream. mt19937_64 output is fully specified by the
// standard, and Uniform() avoids std distributions, so draws are portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool Bernoulli(double p) { return Uniform() < p; }

  std::uint64_t Next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ipd

#endif  // IPD_RNG_HPP_
