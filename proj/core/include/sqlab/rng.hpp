#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "sqlab/rat.hpp"

namespace sqlab {

/// Deterministic random stream. All randomized behavior in the library and
/// the CLI flows through one master seed; independent subtasks derive their
/// own stream with substream(master, "tag"), which hashes the tag into the
/// seed (splitmix64 finalizer), so adding a subtask never shifts another
/// subtask's stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  static Rng substream(std::uint64_t master, std::string_view tag) {
    std::uint64_t h = 14695981039346656037ull;
    for (char c : tag) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
    return Rng(mix(master ^ h));
  }

  std::mt19937_64& gen() { return gen_; }

  long long uniform(long long lo, long long hi) {  // inclusive
    return std::uniform_int_distribution<long long>(lo, hi)(gen_);
  }

  double uniform01() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen_); }

  /// Random rational with numerator in [-num_mag, num_mag] and denominator
  /// in [1, den_mag].
  Rat rat(long long num_mag, long long den_mag) {
    return Rat(uniform(-num_mag, num_mag), uniform(1, den_mag));
  }

  Rat positive_rat(long long num_mag, long long den_mag) {
    return Rat(uniform(1, num_mag), uniform(1, den_mag));
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace sqlab
