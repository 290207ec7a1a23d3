#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gbd/sequence.hpp"

namespace gbd {

enum class Provenance { Exact, PrefixLimited };

std::string to_string(Provenance p);

/// Formal product of primes with exponents in {0, 1, ..., inf}. Zero
/// exponents are never stored.
struct SupernaturalNumber {
  static constexpr std::uint64_t kInfinity = UINT64_MAX;

  std::map<std::uint64_t, std::uint64_t> exponents;
  Provenance provenance = Provenance::Exact;

  std::uint64_t exponent(std::uint64_t p) const;
  void set(std::uint64_t p, std::uint64_t e);
  /// "2^inf * 3", or "1" when empty.
  std::string to_string() const;
  /// Sorted "p:e" entries with "inf" for infinite exponents.
  std::vector<std::string> serialize() const;

  bool same_value(const SupernaturalNumber& other) const { return exponents == other.exponents; }
};

/// Prime factorization by trial division.
std::map<std::uint64_t, std::uint64_t> factorize(std::uint64_t n);

/// Validates an explicit map (keys must be prime) and passes it through.
SupernaturalNumber supernatural_of(const std::map<std::uint64_t, std::uint64_t>& explicit_map);

/// sup_k v_p(n_k). With repeat-last the primes of the repeated multiplier get
/// exponent inf and the result is exact; in strict mode it is the prefix value,
/// flagged prefix-limited.
SupernaturalNumber supernatural_of(const DivisibilitySequence& seq);

struct BDInvariant {
  std::uint64_t j = 1;
  std::uint64_t l = 1;                    // max_k gcd(j, n_k), or the prefix value
  bool l_exact = true;
  std::vector<std::uint64_t> gcd_trace;   // gcd(j, n_k) at each supplied level
  SupernaturalNumber delta;               // of {j n_k / l}; a lower bound when prefix-limited
};

BDInvariant bd_invariant(std::uint64_t j, const DivisibilitySequence& seq);

enum class VerdictKind { Yes, No, Undetermined };

struct Verdict {
  VerdictKind kind = VerdictKind::Undetermined;
  std::string verdict;  // "isomorphic" / "not isomorphic" / "simple" / "not simple" / "undetermined"
  std::string witness;
};

Verdict bd_isomorphic(const BDInvariant& a, const BDInvariant& b);
Verdict bd_isomorphic(std::uint64_t j1, const DivisibilitySequence& s1, std::uint64_t j2,
                      const DivisibilitySequence& s2);

/// Simple iff gcd(j, n_k) = 1 for every k.
Verdict bd_simple(std::uint64_t j, const DivisibilitySequence& seq);

}  // namespace gbd
