#include "sacks/bitstring.hpp"

#include <ostream>

#include "sacks/error.hpp"

namespace sacks {

BitString::BitString(std::initializer_list<int> bits) {
  bits_.reserve(bits.size());
  for (int b : bits) {
    if (b != 0 && b != 1) fail(ErrorKind::Input, "bit values must be 0 or 1");
    bits_.push_back(b ? '1' : '0');
  }
}

BitString BitString::parse(std::string_view text) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '0' && text[i] != '1') {
      fail(ErrorKind::Input, "bit string '" + std::string(text) + "' has a non-binary character at " +
                                 std::to_string(i));
    }
  }
  return BitString(std::string(text));
}

BitString BitString::from_value(std::uint64_t value, std::size_t length) {
  std::string bits(length, '0');
  for (std::size_t i = 0; i < length; ++i) {
    if ((value >> (length - 1 - i)) & 1U) bits[i] = '1';
  }
  return BitString(std::move(bits));
}

std::vector<BitString> BitString::all_of_length(std::size_t n) {
  std::vector<BitString> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) out.push_back(from_value(v, n));
  return out;
}

std::vector<BitString> BitString::all_up_to(std::size_t n) {
  std::vector<BitString> out;
  for (std::size_t k = 0; k <= n; ++k) {
    auto level = all_of_length(k);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

bool BitString::at(std::size_t i) const {
  if (i >= bits_.size()) {
    fail(ErrorKind::Domain, "bit index " + std::to_string(i) + " outside string of length " +
                                std::to_string(bits_.size()));
  }
  return (*this)[i];
}

BitString BitString::with(bool bit) const {
  BitString out = *this;
  out.push_back(bit);
  return out;
}

BitString BitString::operator+(const BitString& tail) const { return BitString(bits_ + tail.bits_); }

BitString BitString::prefix(std::size_t n) const {
  return BitString(bits_.substr(0, std::min(n, bits_.size())));
}

BitString BitString::drop(std::size_t n) const {
  return n >= bits_.size() ? BitString() : BitString(bits_.substr(n));
}

bool BitString::is_prefix_of(const BitString& other) const noexcept {
  return bits_.size() <= other.bits_.size() && other.bits_.compare(0, bits_.size(), bits_) == 0;
}

bool BitString::comparable(const BitString& other) const noexcept {
  return is_prefix_of(other) || other.is_prefix_of(*this);
}

std::uint64_t BitString::value() const noexcept {
  std::uint64_t v = 0;
  for (char c : bits_) v = (v << 1) | static_cast<std::uint64_t>(c == '1');
  return v;
}

std::ostream& operator<<(std::ostream& os, const BitString& s) {
  return os << (s.empty() ? std::string("<>") : s.str());
}

}  // namespace sacks
