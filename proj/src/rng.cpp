#include "vtask/rng.hpp"

#include "vtask/error.hpp"

namespace vtask {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t RngStream::below(std::uint64_t bound) {
  if (bound == 0) {
    throw Error(ErrorKind::internal, "RngStream::below called with bound 0");
  }
  // Rejection sampling: discard the low partial bucket so every residue is
  // equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = next();
    if (x >= threshold) return x % bound;
  }
}

int RngStream::between(int lo, int hi) {
  if (hi < lo) {
    throw Error(ErrorKind::internal, "RngStream::between with empty range");
  }
  const auto span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo + 1);
  return lo + static_cast<int>(below(span));
}

double RngStream::unit() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

RngStream derive_rng(std::uint64_t master_seed, std::string_view template_id,
                     std::uint64_t index) {
  std::uint64_t h = splitmix64(master_seed);
  h = splitmix64(h ^ fnv1a(template_id));
  h = splitmix64(h ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
  return RngStream(h);
}

}  // namespace vtask
