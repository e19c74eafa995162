#include "eoe/rng.hpp"

namespace eoe {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) noexcept {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t a = seed;
  std::uint64_t b = stream ^ 0x6a09e667f3bcc909ull;
  std::uint64_t key = splitmix64(a) ^ (splitmix64(b) * 0xd1342543de82ef95ull);
  for (auto& word : state_) word = splitmix64(key);
}

}  // namespace eoe
