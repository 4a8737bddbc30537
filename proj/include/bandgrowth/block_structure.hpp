#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bandgrowth {

/// Positive rational num/den in lowest terms.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Ratio make(std::int64_t num, std::int64_t den);
  /// "1/3", "2", or a terminating decimal such as "0.25".
  static Ratio parse(std::string_view text);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;
  bool operator==(const Ratio&) const = default;
};

/// floor(k^t) computed exactly.
std::uint64_t floor_power(std::uint64_t k, Ratio t);

/// Diagonal block layout: sizes n_k = floor(k^t) with t = r/(1-r) (or the next
/// power of two when padded), block k occupying positions start(k)..end(k).
/// Blocks are precomputed until the requested positions are covered.
class BlockStructure {
 public:
  /// Throws OutOfRange unless 0 < r < 1, ResourceLimit past 10^8 positions.
  BlockStructure(Ratio r, bool padded, std::size_t cover_positions, std::size_t min_blocks = 1);

  Ratio r() const noexcept { return r_; }
  Ratio t() const noexcept { return t_; }
  bool padded() const noexcept { return padded_; }

  std::size_t blocks() const noexcept { return sizes_.size(); }
  /// Last position covered by the precomputed blocks.
  std::size_t covered() const noexcept { return starts_.back() + sizes_.back() - 1; }

  std::size_t size(std::size_t k) const { return sizes_.at(k - 1); }
  std::size_t start(std::size_t k) const { return starts_.at(k - 1); }
  std::size_t end(std::size_t k) const { return start(k) + size(k) - 1; }
  /// Block containing a position; WindowExhausted past covered().
  std::size_t block_of(std::size_t pos) const;
  /// Throws WindowExhausted unless block k (or position pos) is precomputed.
  void require_block(std::size_t k) const;
  void require_position(std::size_t pos) const;

  /// Unpadded size floor(k^t) for any k.
  std::uint64_t exact_size(std::uint64_t k) const { return floor_power(k, t_); }

  // Size classes of a padded structure: class a holds the blocks of size 2^a.
  std::size_t size_class(std::size_t k) const;
  std::uint64_t class_first(std::size_t a) const;
  std::uint64_t class_count(std::size_t a) const;

 private:
  // Largest k with floor(k^t) <= x (saturating).
  std::uint64_t last_with_size_at_most(std::uint64_t x) const;

  Ratio r_;
  Ratio t_;
  bool padded_;
  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> starts_;
};

std::uint64_t next_power_of_two(std::uint64_t v);

}  // namespace bandgrowth
