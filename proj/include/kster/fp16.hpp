#pragma once

#include <bit>
#include <cstdint>

namespace kster {

// IEEE 754 binary16 conversion. Encoding rounds to nearest-even, overflows to
// infinity, and collapses every NaN to the canonical quiet pattern 0x7e00.
// Decoding is exact (every binary16 value is representable in binary32).

inline constexpr std::uint16_t kFp16CanonicalNan = 0x7e00;

constexpr std::uint16_t fp16_encode(float x) noexcept {
  const std::uint32_t bits = std::bit_cast<std::uint32_t>(x);
  const auto sign = static_cast<std::uint16_t>((bits >> 16) & 0x8000u);
  const std::uint32_t exp = (bits >> 23) & 0xffu;
  const std::uint32_t man = bits & 0x7fffffu;

  if (exp == 0xffu) {
    if (man != 0) return kFp16CanonicalNan;
    return static_cast<std::uint16_t>(sign | 0x7c00u);
  }

  const int e = static_cast<int>(exp) - 127 + 15;
  if (e >= 31) return static_cast<std::uint16_t>(sign | 0x7c00u);

  if (e >= 1) {
    // Normal target: keep 10 significand bits, round the dropped 13.
    // A mantissa carry propagates into the exponent field and can round the
    // largest finite half up to infinity, which is the intended behaviour.
    std::uint32_t half = (static_cast<std::uint32_t>(e) << 10) | (man >> 13);
    const std::uint32_t rest = man & 0x1fffu;
    if (rest > 0x1000u || (rest == 0x1000u && (half & 1u))) ++half;
    return static_cast<std::uint16_t>(sign | half);
  }

  if (e < -10) return sign;  // underflows past half the smallest subnormal

  // Subnormal target: shift the full 24-bit significand into place.
  const std::uint32_t sig = man | 0x800000u;
  const int shift = 14 - e;  // in [14, 24]
  std::uint32_t half = sig >> shift;
  const std::uint32_t rest = sig & ((1u << shift) - 1u);
  const std::uint32_t halfway = 1u << (shift - 1);
  if (rest > halfway || (rest == halfway && (half & 1u))) ++half;
  return static_cast<std::uint16_t>(sign | half);
}

constexpr float fp16_decode(std::uint16_t h) noexcept {
  const std::uint32_t sign = static_cast<std::uint32_t>(h & 0x8000u) << 16;
  const std::uint32_t exp = (h >> 10) & 0x1fu;
  const std::uint32_t man = h & 0x3ffu;

  if (exp == 0x1fu) {  // infinity or NaN, payload widened
    return std::bit_cast<float>(sign | 0x7f800000u | (man << 13));
  }
  if (exp == 0) {
    if (man == 0) return std::bit_cast<float>(sign);
    // Subnormal: renormalize around the highest set mantissa bit.
    const int p = 31 - std::countl_zero(man);
    const std::uint32_t exp32 = static_cast<std::uint32_t>(103 + p);
    const std::uint32_t man32 = (man ^ (1u << p)) << (23 - p);
    return std::bit_cast<float>(sign | (exp32 << 23) | man32);
  }
  return std::bit_cast<float>(sign | ((exp - 15 + 127) << 23) | (man << 13));
}

// Quantize through binary16 and back; the identity for values already on the
// binary16 grid.
constexpr float fp16_snap(float x) noexcept { return fp16_decode(fp16_encode(x)); }

}  // namespace kster
