#pragma once

// Seeded, splittable random machinery for the simulation oracle. Stream j of
// a given seed is fully determined by (seed, j), so paths can be evaluated in
// any order (or concurrently) with bit-identical results.

#include <cmath>
#include <cstdint>

namespace rangevol {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Xoshiro256pp {
 public:
  Xoshiro256pp(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 0x632be59bd9b4e019ULL));
    for (auto& w : state_) w = splitmix64(x);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t state_[4];
};

// 128-layer ziggurat for standard normals. One uniform draw covers both the
// layer index (low bits) and the abscissa (high 53 bits) on the ~98.8% fast
// path; rejections fall back to the wedge/tail branches.
class ZigguratNormal {
 public:
  ZigguratNormal() {
    double f = std::exp(-0.5 * kR * kR);
    x_[0] = kV / f;
    x_[1] = kR;
    x_[kLayers] = 0.0;
    for (int i = 2; i < kLayers; ++i) {
      x_[i] = std::sqrt(-2.0 * std::log(kV / x_[i - 1] + f));
      f = std::exp(-0.5 * x_[i] * x_[i]);
    }
    for (int i = 0; i < kLayers; ++i) ratio_[i] = x_[i + 1] / x_[i];
  }

  template <class Rng>
  double operator()(Rng& rng) const {
    for (;;) {
      const std::uint64_t bits = rng.next();
      const int i = static_cast<int>(bits & (kLayers - 1));
      const double u = static_cast<double>(bits >> 11) * 0x1.0p-52 - 1.0;
      if (std::fabs(u) < ratio_[i]) return u * x_[i];
      if (i == 0) return tail(rng, u < 0.0);
      const double x = u * x_[i];
      const double f0 = std::exp(-0.5 * (x_[i] * x_[i] - x * x));
      const double f1 = std::exp(-0.5 * (x_[i + 1] * x_[i + 1] - x * x));
      if (f1 + rng.uniform() * (f0 - f1) < 1.0) return x;
    }
  }

 private:
  static constexpr int kLayers = 128;
  static constexpr double kR = 3.442619855899;
  static constexpr double kV = 9.91256303526217e-3;

  template <class Rng>
  double tail(Rng& rng, bool negative) const {
    double x, y;
    do {
      const double u1 = (static_cast<double>(rng.next() >> 11) + 1.0) * 0x1.0p-53;
      const double u2 = (static_cast<double>(rng.next() >> 11) + 1.0) * 0x1.0p-53;
      x = -std::log(u1) / kR;
      y = -std::log(u2);
    } while (y + y < x * x);
    return negative ? -(kR + x) : (kR + x);
  }

  double x_[kLayers + 1];
  double ratio_[kLayers];
};

inline const ZigguratNormal& ziggurat() {
  static const ZigguratNormal z;
  return z;
}

}  // namespace rangevol
