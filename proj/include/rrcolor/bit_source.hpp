#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "rrcolor/rational.hpp"

namespace rrcolor {

// Seeded source of uniform random bits with exact accounting: bits_consumed()
// advances by exactly the number of raw bits handed out. All randomness on the
// sampling path flows through one of these, so per-step bit costs can be
// attributed by checkpointing the counter.
//
// Backing generator is xoshiro256** seeded through splitmix64.
class BitSource {
 public:
  explicit BitSource(std::uint64_t seed) : seed_(seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) word = splitmix64(s);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t bits_consumed() const { return bits_; }

  // Low `width` bits, uniformly distributed. width <= 64.
  std::uint64_t next_bits(unsigned width) {
    if (width == 0) return 0;
    if (width > 64) throw std::invalid_argument("next_bits: width > 64");
    std::uint64_t out = 0;
    unsigned got = 0;
    while (got < width) {
      if (buffered_ == 0) {
        buffer_ = next_word();
        buffered_ = 64;
      }
      const unsigned take = std::min(width - got, buffered_);
      const std::uint64_t mask = take == 64 ? ~0ull : ((1ull << take) - 1);
      out |= (buffer_ & mask) << got;
      buffer_ = take == 64 ? 0 : buffer_ >> take;
      buffered_ -= take;
      got += take;
    }
    bits_ += width;
    return out;
  }

  // Exactly uniform on [0, m) by rejection on ceil(log2 m)-bit words.
  // m = 1 consumes zero bits; expected cost is under 2*ceil(log2 m) bits.
  std::uint64_t uniform_int(std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("uniform_int: m == 0");
    if (m == 1) return 0;
    const unsigned width = std::bit_width(m - 1);
    for (;;) {
      const std::uint64_t r = next_bits(width);
      if (r < m) return r;
    }
  }

  // True with probability exactly num/den.
  bool bernoulli_rational(std::int64_t num, std::int64_t den) {
    if (den <= 0 || num < 0 || num > den) {
      throw std::invalid_argument("bernoulli_rational: need 0 <= num <= den, den > 0");
    }
    return uniform_int(static_cast<std::uint64_t>(den)) < static_cast<std::uint64_t>(num);
  }

  bool bernoulli(const Rational& p) { return bernoulli_rational(p.num(), p.den()); }

  // Visits `items` in uniformly random order (incremental Fisher-Yates),
  // stopping at the first element satisfying `pred`. Returns the prefix
  // visited before the match, and the match if any.
  template <typename T, typename Pred>
  std::pair<std::vector<T>, std::optional<T>> shuffled_prefix_search(std::span<const T> items,
                                                                     Pred&& pred) {
    std::vector<T> order(items.begin(), items.end());
    const std::size_t n = order.size();
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(uniform_int(n - i));
      std::swap(order[i], order[j]);
      if (pred(order[i])) {
        T found = order[i];
        order.resize(i);
        return {std::move(order), std::move(found)};
      }
    }
    return {std::move(order), std::nullopt};
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t next_word() {
    const std::uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
  }

  std::uint64_t state_[4] = {};
  std::uint64_t buffer_ = 0;
  unsigned buffered_ = 0;
  std::uint64_t bits_ = 0;
  std::uint64_t seed_ = 0;
};

}  // namespace rrcolor
