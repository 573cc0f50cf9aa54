#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace sacks {

/// A finite binary sequence, i.e. a node of the full binary tree.
///
/// Bits are stored as the characters '0' and '1' so the textual form used by
/// every file format is also the in-memory form. Ordering is lexicographic,
/// which puts a node before all of its extensions.
class BitString {
 public:
  BitString() = default;
  BitString(std::initializer_list<int> bits);

  /// Throws Error(Input) on any character other than '0' or '1'.
  static BitString parse(std::string_view text);

  /// The n-bit string holding `value` most significant bit first.
  static BitString from_value(std::uint64_t value, std::size_t length);

  /// All strings of length n in lexicographic order.
  static std::vector<BitString> all_of_length(std::size_t n);

  /// All strings of length at most n, shortest first.
  static std::vector<BitString> all_up_to(std::size_t n);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }

  bool operator[](std::size_t i) const noexcept { return bits_[i] == '1'; }
  bool at(std::size_t i) const;

  void push_back(bool bit) { bits_.push_back(bit ? '1' : '0'); }
  BitString with(bool bit) const;
  BitString operator+(const BitString& tail) const;

  BitString prefix(std::size_t n) const;
  BitString drop(std::size_t n) const;

  /// True iff this is an initial segment of `other` (not necessarily proper).
  bool is_prefix_of(const BitString& other) const noexcept;
  bool comparable(const BitString& other) const noexcept;

  /// Bits read as a binary number, most significant first.
  std::uint64_t value() const noexcept;

  const std::string& str() const noexcept { return bits_; }

  auto operator<=>(const BitString&) const = default;
  bool operator==(const BitString&) const = default;

 private:
  explicit BitString(std::string bits) : bits_(std::move(bits)) {}

  std::string bits_;
};

/// Prints the '0'/'1' form; the empty string prints as <>.
std::ostream& operator<<(std::ostream& os, const BitString& s);

}  // namespace sacks

template <>
struct std::hash<sacks::BitString> {
  std::size_t operator()(const sacks::BitString& s) const noexcept {
    return std::hash<std::string>{}(s.str());
  }
};
