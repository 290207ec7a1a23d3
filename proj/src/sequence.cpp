#include "gbd/sequence.hpp"

#include <algorithm>
#include <limits>

#include "gbd/errors.hpp"

namespace gbd {

std::string to_string(ExtendPolicy policy) {
  return policy == ExtendPolicy::RepeatLast ? "repeat-last" : "strict";
}

ExtendPolicy parse_extend_policy(std::string_view text) {
  if (text == "repeat-last") return ExtendPolicy::RepeatLast;
  if (text == "strict") return ExtendPolicy::Strict;
  throw InputError("unknown extension policy '" + std::string(text) + "' (expected repeat-last or strict)");
}

DivisibilitySequence::DivisibilitySequence(std::vector<std::uint64_t> prefix, ExtendPolicy policy)
    : policy_(policy) {
  if (prefix.empty()) throw InputError("divisibility sequence prefix is empty");
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (prefix[i] == 0) throw InputError("divisibility sequence entries must be positive");
    if (i > 0) {
      if (prefix[i] < prefix[i - 1])
        throw InputError("divisibility sequence must be non-decreasing: " + std::to_string(prefix[i - 1]) +
                         " > " + std::to_string(prefix[i]));
      if (prefix[i] % prefix[i - 1] != 0)
        throw InputError("divisibility violated: " + std::to_string(prefix[i - 1]) + " does not divide " +
                         std::to_string(prefix[i]));
    }
  }
  prefix.erase(std::unique(prefix.begin(), prefix.end()), prefix.end());
  prefix_ = std::move(prefix);
}

std::uint64_t DivisibilitySequence::extension_multiplier() const {
  const std::uint64_t prev = prefix_.size() >= 2 ? prefix_[prefix_.size() - 2] : 1;
  return prefix_.back() / prev;
}

bool DivisibilitySequence::can_extend() const {
  return policy_ == ExtendPolicy::RepeatLast && extension_multiplier() > 1;
}

std::uint64_t DivisibilitySequence::level(std::size_t i) const {
  if (i == 0) return 1;
  if (i <= prefix_.size()) return prefix_[i - 1];
  if (policy_ == ExtendPolicy::Strict)
    throw LevelError("level " + std::to_string(i) + " requested but only " + std::to_string(prefix_.size()) +
                     " levels were supplied (strict mode)");
  const std::uint64_t m = extension_multiplier();
  if (m <= 1) throw LevelError("sequence (1) cannot be extended by repeating its multiplier");
  std::uint64_t value = prefix_.back();
  for (std::size_t k = prefix_.size(); k < i; ++k) {
    if (value > std::numeric_limits<std::uint64_t>::max() / m)
      throw LevelError("level " + std::to_string(i) + " overflows 64-bit arithmetic");
    value *= m;
  }
  return value;
}

std::size_t DivisibilitySequence::level_covering(std::size_t length) const {
  std::size_t i = 0;
  while (level(i) <= length) ++i;
  return i;
}

DivisibilitySequence DivisibilitySequence::with_policy(ExtendPolicy policy) const {
  DivisibilitySequence copy = *this;
  copy.policy_ = policy;
  return copy;
}

std::vector<std::size_t> BlockDecomposition::lengths() const {
  std::vector<std::size_t> out;
  out.reserve(blocks.size());
  for (const auto& b : blocks) out.push_back(b.length());
  return out;
}

std::vector<std::uint64_t> block_lengths(std::uint64_t length, const DivisibilitySequence& seq) {
  if (length == 0) return {0};
  std::vector<std::uint64_t> digits;
  std::uint64_t rest = length;
  for (std::size_t i = 1; rest != 0; ++i) {
    const std::uint64_t n = seq.level(i);
    const std::uint64_t digit = rest % n;
    digits.push_back(digit);
    rest -= digit;
  }
  return digits;
}

BlockDecomposition block_decompose(const DirectedMultigraph& g, const Path& w, const DivisibilitySequence& seq) {
  BlockDecomposition out;
  if (w.is_trivial()) {
    out.blocks.push_back(w);
    return out;
  }
  const auto digits = block_lengths(w.length(), seq);
  // w_1 is the last stretch of the walk, w_k the first.
  std::size_t end = w.length();
  for (auto len : digits) {
    out.blocks.push_back(w.slice(g, end - len, len));
    end -= len;
  }
  return out;
}

Path concat_blocks(const DirectedMultigraph& g, std::span<const Path> blocks) {
  if (blocks.empty()) throw InputError("no blocks to concatenate");
  Path acc = blocks.back();
  for (std::size_t i = blocks.size() - 1; i-- > 0;) acc = concat(g, blocks[i], acc);
  return acc;
}

}  // namespace gbd
