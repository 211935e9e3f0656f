#include "hypercone/rng.hpp"

namespace hypercone {

uint64_t SplitMix64::next() {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

SplitMix64 sample_stream(uint64_t seed, uint64_t index) {
  SplitMix64 mix{seed ^ 0x6a09e667f3bcc909ULL};
  uint64_t a = mix.next();
  SplitMix64 s{a ^ (index * 0x9e3779b97f4a7c15ULL + 0xd1b54a32d192ed03ULL)};
  s.next();
  return s;
}

Rational random_ratio(SplitMix64& rng) {
  const long span = 2 * 65536 + 1;
  long num = static_cast<long>(rng.next() % span) - 65536;
  long den = static_cast<long>(rng.next() % 65536) + 1;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::vector<Rational> random_direction(SplitMix64& rng, int n) {
  std::vector<Rational> v;
  v.reserve(n);
  for (int i = 0; i < n; ++i) v.push_back(random_ratio(rng));
  return v;
}

}  // namespace hypercone
