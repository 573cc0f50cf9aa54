#include "sacks/seq_codec.hpp"

#include <cmath>
#include <string>

#include "sacks/error.hpp"

namespace sacks {

BitString join_pair(const BitString& x, const BitString& y) {
  if (y.size() != x.size() && y.size() + 1 != x.size()) {
    fail(ErrorKind::Precondition, "join of lengths " + std::to_string(x.size()) + " and " +
                                      std::to_string(y.size()) +
                                      ": right part must be as long as the left or one shorter");
  }
  BitString out;
  for (std::size_t k = 0; k < x.size(); ++k) {
    out.push_back(x[k]);
    if (k < y.size()) out.push_back(y[k]);
  }
  return out;
}

PairParts split_pair(const BitString& z) {
  PairParts parts;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (i % 2 == 0) {
      parts.left.push_back(z[i]);
    } else {
      parts.right.push_back(z[i]);
    }
  }
  return parts;
}

std::uint64_t pair_index(std::uint64_t m, std::uint64_t n) {
  const std::uint64_t s = m + n;
  return s * (s + 1) / 2 + m;
}

std::pair<std::uint64_t, std::uint64_t> unpair_index(std::uint64_t p) {
  // largest w with w(w+1)/2 <= p; the float estimate is corrected both ways
  auto w = static_cast<std::uint64_t>((std::sqrt(8.0 * static_cast<double>(p) + 1.0) - 1.0) / 2.0);
  while (w * (w + 1) / 2 > p) --w;
  while ((w + 1) * (w + 2) / 2 <= p) ++w;
  const std::uint64_t m = p - w * (w + 1) / 2;
  return {m, w - m};
}

BitString column(const BitString& sigma, std::uint64_t n) {
  BitString out;
  for (std::uint64_t m = 0;; ++m) {
    const std::uint64_t pos = pair_index(n, m);
    if (pos >= sigma.size()) break;
    out.push_back(sigma[pos]);
  }
  return out;
}

std::uint64_t width(std::uint64_t k) {
  std::uint64_t n = 0;
  while (pair_index(n, 0) < k) ++n;
  return n;
}

BitString join_family(std::span<const BitString> xs, std::uint64_t length) {
  BitString out;
  for (std::uint64_t pos = 0; pos < length; ++pos) {
    const auto [n, m] = unpair_index(pos);
    if (n >= xs.size() || m >= xs[n].size()) {
      fail(ErrorKind::IncompleteFamily, "position " + std::to_string(pos) + " needs bit " +
                                            std::to_string(m) + " of sequence " + std::to_string(n) +
                                            ", which is not supplied");
    }
    out.push_back(xs[n][m]);
  }
  return out;
}

std::vector<BitString> columns(const BitString& sigma) {
  std::vector<BitString> out;
  const std::uint64_t w = width(sigma.size());
  out.reserve(w);
  for (std::uint64_t n = 0; n < w; ++n) out.push_back(column(sigma, n));
  return out;
}

}  // namespace sacks
