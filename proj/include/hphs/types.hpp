#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace hphs {

using Weight = std::int64_t;
using Int128 = __int128;

inline int sign_of(Int128 v) { return (v > 0) - (v < 0); }

/// A DP value: an exact integer or the distinguished Infinite state.
///
/// Infinite compares greater than every finite value and absorbs offsets.
class Cost {
 public:
  constexpr Cost() = default;

  static constexpr Cost infinite() { return Cost(0, false); }
  static constexpr Cost of(Weight v) { return Cost(v, true); }

  constexpr bool is_finite() const { return finite_; }
  constexpr bool is_infinite() const { return !finite_; }

  /// Precondition: is_finite().
  constexpr Weight value() const { return value_; }

  constexpr Cost plus(Weight offset) const {
    return finite_ ? Cost(value_ + offset, true) : *this;
  }

  friend constexpr bool operator==(const Cost& a, const Cost& b) {
    return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(const Cost& a, const Cost& b) {
    if (a.finite_ != b.finite_) {
      return a.finite_ ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (!a.finite_) return std::strong_ordering::equal;
    return a.value_ <=> b.value_;
  }

  std::string to_string() const { return finite_ ? std::to_string(value_) : "inf"; }

 private:
  constexpr Cost(Weight v, bool f) : value_(v), finite_(f) {}

  Weight value_ = 0;
  bool finite_ = false;
};

/// Input violates a declared precondition (bounds, ids, sizes).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An internal consistency check failed. Indicates a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr std::int64_t kCoordBound = std::int64_t{1} << 30;
inline constexpr std::int64_t kOffsetBound = std::int64_t{1} << 62;
inline constexpr std::int64_t kWeightBound = std::int64_t{1} << 31;

}  // namespace hphs
