#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sacks {

/// An ordinal below omega^2, written omega*a + b.
struct Ordinal2 {
  std::uint64_t a = 0;
  std::uint64_t b = 0;

  bool is_limit() const noexcept { return b == 0 && a > 0; }
  bool is_zero() const noexcept { return a == 0 && b == 0; }
  Ordinal2 plus(std::uint64_t n) const noexcept { return {a, b + n}; }

  /// "0", "7", "w", "w+3", "w*2", "w*2+5".
  std::string str() const;
  /// Inverse of str(); throws Error(Input) on anything else.
  static Ordinal2 parse(std::string_view text);

  auto operator<=>(const Ordinal2&) const = default;
};

inline constexpr Ordinal2 omega_times(std::uint64_t a) { return {a, 0}; }

/// Opaque, totally ordered product index: an ordinal below omega^2 or a pair
/// of them. Printed as "w+1" or "(w*2,3)".
class Index {
 public:
  Index() = default;
  explicit Index(Ordinal2 single) : parts_{single} {}
  Index(Ordinal2 first, Ordinal2 second) : parts_{first, second} {}

  static Index parse(std::string_view text);
  std::string str() const;

  const std::vector<Ordinal2>& parts() const noexcept { return parts_; }

  auto operator<=>(const Index&) const = default;

 private:
  std::vector<Ordinal2> parts_{Ordinal2{}};
};

}  // namespace sacks
