#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace cognet {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// mt19937_64 plus explicit sampling transforms. The std <random>
// distributions are implementation-defined, so nothing here uses them;
// identical (seed, tag, index) always yields identical draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Decorrelated stream for one (experiment, work-item) pair.
  static Rng substream(std::uint64_t seed, std::string_view tag,
                       std::uint64_t index) {
    std::uint64_t s = splitmix64(seed);
    s = splitmix64(s ^ fnv1a64(tag));
    s = splitmix64(s ^ index);
    return Rng(s);
  }

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller with a cached spare.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(angle);
    has_spare_ = true;
    return r * std::cos(angle);
  }

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Inverse-CDF sampler for a pmf on {0..n-1}.
class DiscreteSampler {
 public:
  explicit DiscreteSampler(const std::vector<double>& pmf) : cdf_(pmf.size()) {
    if (pmf.empty()) throw std::invalid_argument("DiscreteSampler: empty pmf");
    double run = 0.0;
    for (size_t i = 0; i < pmf.size(); ++i) {
      if (!(pmf[i] >= 0.0))
        throw std::invalid_argument("DiscreteSampler: negative mass");
      run += pmf[i];
      cdf_[i] = run;
    }
    if (!(run > 0.0))
      throw std::invalid_argument("DiscreteSampler: zero total mass");
    total_ = run;
  }

  int operator()(Rng& rng) const {
    const double u = rng.uniform() * total_;
    int lo = 0, hi = static_cast<int>(cdf_.size()) - 1;
    while (lo < hi) {
      const int mid = (lo + hi) / 2;
      if (cdf_[mid] > u) hi = mid; else lo = mid + 1;
    }
    return lo;
  }

 private:
  std::vector<double> cdf_;
  double total_ = 0.0;
};

}  // namespace cognet
