#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace vtask {

/// Deterministic random stream. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; all derived draws (bounded integers,
/// Bernoulli trials) are computed here rather than through <random>
/// distributions, which are implementation-defined.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound). bound must be nonzero.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform in [lo, hi], inclusive.
  int between(int lo, int hi);

  /// Uniform in [0, 1) with 53 bits of resolution.
  double unit();

  bool bernoulli(double p) { return unit() < p; }

  template <typename Seq>
  const auto& pick(const Seq& seq) {
    return seq[static_cast<std::size_t>(below(seq.size()))];
  }

 private:
  std::mt19937_64 engine_;
};

/// Stream for one generated pair. Identical arguments always give an
/// identical stream, independent of thread count or generation order.
RngStream derive_rng(std::uint64_t master_seed, std::string_view template_id,
                     std::uint64_t index);

}  // namespace vtask
