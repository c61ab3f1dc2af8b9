#include "kwp/random.hpp"

namespace kwp {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Xoshiro256::Xoshiro256(std::uint64_t seed) noexcept {
  std::uint64_t sm = seed;
  for (auto& word : s_) word = splitmix64(sm);
}

Xoshiro256 Xoshiro256::stream(std::uint64_t seed, std::uint64_t i, std::uint64_t j) noexcept {
  std::uint64_t h = seed;
  std::uint64_t mixed = splitmix64(h);
  h = mixed ^ i;
  mixed = splitmix64(h);
  h = mixed ^ j;
  return Xoshiro256(splitmix64(h));
}

Xoshiro256::result_type Xoshiro256::operator()() noexcept {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256::uniform_open() noexcept {
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace kwp
