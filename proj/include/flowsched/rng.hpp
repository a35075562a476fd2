#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace flowsched {

// Deterministic RNG used for every stochastic draw in the simulator.
// All derived draws (uniform, bernoulli, poisson) are implemented here rather
// than with std distributions, so a (seed, draw sequence) pair produces the
// same stream independent of the standard library version.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 1) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform index in {0, .., n-1}. Modulo bias is negligible for n << 2^64.
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }

  // Uniform integer in {lo, .., hi} inclusive.
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  bool bernoulli(double p) { return uniform01() < p; }

  // Knuth product-of-uniforms sampler; exact for the moderate means used here.
  std::uint64_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double prod = 1.0;
    do {
      ++k;
      prod *= uniform01();
    } while (prod > limit);
    return k - 1;
  }

  // Geometric on {1, 2, ...} with success probability p (mean 1/p).
  std::uint64_t geometric1(double p) {
    std::uint64_t k = 1;
    while (!bernoulli(p)) ++k;
    return k;
  }

  std::string serialize() const {
    std::ostringstream os;
    os << gen_;
    return os.str();
  }

  void deserialize(const std::string& s) {
    std::istringstream is(s);
    is >> gen_;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace flowsched
