#pragma once

#include <cstdint>
#include <limits>
#include <optional>

// Checked 64-bit arithmetic shared by constant folding and the VM so both
// agree on every edge case. Division truncates toward zero; the remainder
// takes the sign of the dividend.

namespace emoc::arith {

inline std::optional<std::int64_t> add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) return std::nullopt;
  return r;
}

inline std::optional<std::int64_t> sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) return std::nullopt;
  return r;
}

inline std::optional<std::int64_t> mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) return std::nullopt;
  return r;
}

inline std::optional<std::int64_t> neg(std::int64_t a) {
  if (a == std::numeric_limits<std::int64_t>::min()) return std::nullopt;
  return -a;
}

// Callers check b != 0 first; these only reject the overflowing MIN / -1.
inline std::optional<std::int64_t> div(std::int64_t a, std::int64_t b) {
  if (a == std::numeric_limits<std::int64_t>::min() && b == -1) return std::nullopt;
  return a / b;
}

inline std::optional<std::int64_t> mod(std::int64_t a, std::int64_t b) {
  if (a == std::numeric_limits<std::int64_t>::min() && b == -1) return std::nullopt;
  return a % b;
}

}  // namespace emoc::arith
