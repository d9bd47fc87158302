#include "rwpot/random.hpp"

#include "rwpot/errors.hpp"

namespace rwpot {

double keyed_uniform(std::uint64_t seed, const Site& site, int d) {
  std::uint64_t h = mix64(seed ^ 0xd1b54a32d192ed03ULL);
  for (int i = 0; i < d; ++i) {
    h = mix64(h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(site[i])) ^
              (static_cast<std::uint64_t>(i + 1) << 40));
  }
  h = mix64(h);
  // 53 random bits, shifted by half an ulp so that 0 and 1 are excluded.
  return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

StepSource::StepSource(std::uint64_t seed, int d) : engine_(seed), d_(d) {
  if (d < 1 || d > kMaxDim) throw DomainError("StepSource: dimension out of range");
  const int choices = 2 * d;
  bits_per_draw_ = (choices & (choices - 1)) == 0 ? (choices == 2 ? 1 : 2) : 0;
}

int StepSource::next_direction() {
  if (bits_per_draw_ > 0) {
    if (bits_left_ < bits_per_draw_) {
      buffer_ = engine_();
      bits_left_ = 64;
    }
    const int mask = (1 << bits_per_draw_) - 1;
    const int dir = static_cast<int>(buffer_ & static_cast<std::uint64_t>(mask));
    buffer_ >>= bits_per_draw_;
    bits_left_ -= bits_per_draw_;
    return dir;
  }
  // 2d = 6: rejection on 3-bit chunks.
  for (;;) {
    if (bits_left_ < 3) {
      buffer_ = engine_();
      bits_left_ = 64;
    }
    const int v = static_cast<int>(buffer_ & 7U);
    buffer_ >>= 3;
    bits_left_ -= 3;
    if (v < 2 * d_) return v;
  }
}

}  // namespace rwpot
