#include "pinch/random.hpp"

namespace pinch {

namespace {
constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomStream RandomStream::for_trial(std::uint64_t master_seed, std::uint64_t point,
                                     std::uint64_t trial) {
  // Each level is folded through the mixer so neighbouring indices land on
  // unrelated keys.
  std::uint64_t key = mix64(master_seed + kGamma);
  key = mix64(key ^ (point * 0xd1b54a32d192ed03ULL + 0x632be59bd9b4e019ULL));
  key = mix64(key ^ (trial * 0x8cb92ba72f3d8dd7ULL + 0x3c6ef372fe94f82bULL));
  return RandomStream(key);
}

RandomStream::result_type RandomStream::operator()() {
  state_ += kGamma;
  return mix64(state_);
}

}  // namespace pinch
