#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gbd/graph.hpp"

namespace gbd {

enum class ExtendPolicy {
  RepeatLast,  // n_{K+t} = n_K * m^t with m the last multiplier
  Strict,      // levels beyond the prefix are a LevelError
};

std::string to_string(ExtendPolicy policy);
ExtendPolicy parse_extend_policy(std::string_view text);

/// n_1 | n_2 | ... given as a finite prefix, with n_0 = 1 implied.
///
/// Consecutive duplicates are collapsed on construction; after that the prefix
/// is strictly increasing. With RepeatLast the sequence continues by repeating
/// the last multiplier n_K / n_{K-1} (for a one-term prefix that multiplier is
/// n_1 itself).
class DivisibilitySequence {
 public:
  explicit DivisibilitySequence(std::vector<std::uint64_t> prefix,
                                ExtendPolicy policy = ExtendPolicy::RepeatLast);

  std::span<const std::uint64_t> prefix() const { return prefix_; }
  std::size_t supplied_levels() const { return prefix_.size(); }
  ExtendPolicy policy() const { return policy_; }

  /// n_i for i >= 0. Throws LevelError when i exceeds the prefix in strict
  /// mode, when the sequence cannot be extended, or on 64-bit overflow.
  std::uint64_t level(std::size_t i) const;
  /// m_i = n_{i+1} / n_i.
  std::uint64_t multiplier(std::size_t i) const { return level(i + 1) / level(i); }
  /// The multiplier repeated beyond the prefix (1 if extension is impossible).
  std::uint64_t extension_multiplier() const;
  bool can_extend() const;

  /// Smallest i with n_i > length.
  std::size_t level_covering(std::size_t length) const;

  DivisibilitySequence with_policy(ExtendPolicy policy) const;

  bool operator==(const DivisibilitySequence&) const = default;

 private:
  std::vector<std::uint64_t> prefix_;
  ExtendPolicy policy_;
};

/// w = w_1 w_2 ... w_k with w_i in X_i: |w_i| a multiple of n_{i-1} and < n_i.
/// w_1 is the range-side block (traversed last).
struct BlockDecomposition {
  std::vector<Path> blocks;

  std::vector<std::size_t> lengths() const;
};

/// Unique decomposition. For |w| = 0 a single trivial block is returned;
/// otherwise trailing trivial blocks are trimmed so the last block is non-trivial.
BlockDecomposition block_decompose(const DirectedMultigraph& g, const Path& w, const DivisibilitySequence& seq);

/// w_1 w_2 ... w_k (the inverse of block_decompose).
Path concat_blocks(const DirectedMultigraph& g, std::span<const Path> blocks);

/// Block lengths only: the mixed-radix digits of `length`.
std::vector<std::uint64_t> block_lengths(std::uint64_t length, const DivisibilitySequence& seq);

}  // namespace gbd
