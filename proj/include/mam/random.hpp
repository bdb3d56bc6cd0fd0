#pragma once

#include <array>
#include <cstdint>

namespace mam {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// A stream is identified by (seed, stream_id, substream). Every draw is a pure
/// function of those three values and the draw index, so a sample computed on
/// any thread in any order reproduces bit-identically.
class Philox {
 public:
  Philox(std::uint64_t seed, std::uint64_t stream_id, std::uint32_t substream = 0);

  /// Uniform double in (0, 1), 53-bit resolution.
  double uniform();
  /// Standard normal via Box-Muller; both variates of a pair are used.
  double gaussian();

  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                            std::array<std::uint32_t, 2> key);

 private:
  std::uint32_t next_u32();

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> ctr_;
  std::array<std::uint32_t, 4> buf_{};
  int buf_pos_ = 4;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace mam
