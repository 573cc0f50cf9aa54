#include "sacks/ordinal.hpp"

#include <charconv>

#include "sacks/error.hpp"

namespace sacks {

namespace {

std::uint64_t parse_natural(std::string_view text, std::string_view whole) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    fail(ErrorKind::Input, "malformed ordinal '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

std::string Ordinal2::str() const {
  if (a == 0) return std::to_string(b);
  std::string out = a == 1 ? "w" : "w*" + std::to_string(a);
  if (b > 0) out += "+" + std::to_string(b);
  return out;
}

Ordinal2 Ordinal2::parse(std::string_view text) {
  if (text.empty() || text.front() != 'w') return {0, parse_natural(text, text)};
  Ordinal2 out{1, 0};
  std::string_view rest = text.substr(1);
  if (!rest.empty() && rest.front() == '*') {
    const auto plus = rest.find('+');
    out.a = parse_natural(rest.substr(1, plus == std::string_view::npos ? rest.npos : plus - 1), text);
    rest = plus == std::string_view::npos ? std::string_view() : rest.substr(plus);
  }
  if (!rest.empty()) {
    if (rest.front() != '+') fail(ErrorKind::Input, "malformed ordinal '" + std::string(text) + "'");
    out.b = parse_natural(rest.substr(1), text);
  }
  if (out.a == 0) fail(ErrorKind::Input, "malformed ordinal '" + std::string(text) + "'");
  return out;
}

Index Index::parse(std::string_view text) {
  if (!text.empty() && text.front() == '(') {
    const auto comma = text.find(',');
    if (comma == std::string_view::npos || text.back() != ')') {
      fail(ErrorKind::Input, "malformed index '" + std::string(text) + "'");
    }
    return Index(Ordinal2::parse(text.substr(1, comma - 1)),
                 Ordinal2::parse(text.substr(comma + 1, text.size() - comma - 2)));
  }
  return Index(Ordinal2::parse(text));
}

std::string Index::str() const {
  if (parts_.size() == 1) return parts_[0].str();
  return "(" + parts_[0].str() + "," + parts_[1].str() + ")";
}

}  // namespace sacks
