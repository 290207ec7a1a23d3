#include "gbd/classify.hpp"

#include <numeric>
#include <set>

#include "gbd/errors.hpp"

namespace gbd {

std::string to_string(Provenance p) { return p == Provenance::Exact ? "exact" : "prefix-limited"; }

std::uint64_t SupernaturalNumber::exponent(std::uint64_t p) const {
  auto it = exponents.find(p);
  return it == exponents.end() ? 0 : it->second;
}

void SupernaturalNumber::set(std::uint64_t p, std::uint64_t e) {
  if (e == 0) exponents.erase(p);
  else exponents[p] = e;
}

namespace {

std::string exponent_text(std::uint64_t e) { return e == SupernaturalNumber::kInfinity ? "inf" : std::to_string(e); }

std::uint64_t valuation(std::uint64_t n, std::uint64_t p) {
  std::uint64_t v = 0;
  while (n % p == 0) n /= p, ++v;
  return v;
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d <= p / d; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

std::string SupernaturalNumber::to_string() const {
  if (exponents.empty()) return "1";
  std::string out;
  for (const auto& [p, e] : exponents) {
    if (!out.empty()) out += " * ";
    out += std::to_string(p);
    if (e != 1) out += "^" + exponent_text(e);
  }
  return out;
}

std::vector<std::string> SupernaturalNumber::serialize() const {
  std::vector<std::string> out;
  for (const auto& [p, e] : exponents) out.push_back(std::to_string(p) + ":" + exponent_text(e));
  return out;
}

std::map<std::uint64_t, std::uint64_t> factorize(std::uint64_t n) {
  if (n == 0) throw InputError("cannot factor 0");
  std::map<std::uint64_t, std::uint64_t> out;
  for (std::uint64_t d = 2; d <= n / d; ++d)
    while (n % d == 0) ++out[d], n /= d;
  if (n > 1) ++out[n];
  return out;
}

SupernaturalNumber supernatural_of(const std::map<std::uint64_t, std::uint64_t>& explicit_map) {
  SupernaturalNumber s;
  for (const auto& [p, e] : explicit_map) {
    if (!is_prime(p)) throw InputError(std::to_string(p) + " is not a prime");
    s.set(p, e);
  }
  return s;
}

SupernaturalNumber supernatural_of(const DivisibilitySequence& seq) {
  SupernaturalNumber s;
  // Divisibility makes the last supplied term carry the sup over the prefix.
  for (const auto& [p, e] : factorize(seq.prefix().back())) s.set(p, e);
  if (seq.policy() == ExtendPolicy::Strict) {
    s.provenance = Provenance::PrefixLimited;
    return s;
  }
  if (!seq.can_extend()) throw LevelError("sequence (1) cannot be extended by repeating its multiplier");
  for (const auto& [p, e] : factorize(seq.extension_multiplier())) s.set(p, SupernaturalNumber::kInfinity);
  return s;
}

BDInvariant bd_invariant(std::uint64_t j, const DivisibilitySequence& seq) {
  if (j == 0) throw InputError("cycle length j must be at least 1");
  BDInvariant inv;
  inv.j = j;
  for (auto n : seq.prefix()) inv.gcd_trace.push_back(std::gcd(j, n));
  inv.l = inv.gcd_trace.back();

  const auto nk = seq.prefix().back();
  if (seq.policy() == ExtendPolicy::RepeatLast) {
    if (!seq.can_extend()) throw LevelError("sequence (1) cannot be extended by repeating its multiplier");
    // gcd(j, n_K m^t) only grows and divides j, so 64 steps always reach the limit.
    const auto m = seq.extension_multiplier();
    unsigned __int128 x = nk % j;
    for (int t = 0; t < 64; ++t) {
      x = (x * m) % j;
      inv.l = std::max<std::uint64_t>(inv.l, std::gcd<std::uint64_t>(j, static_cast<std::uint64_t>(x)));
    }
    inv.l_exact = true;
  } else {
    inv.l_exact = inv.l == j;
  }

  const auto seq_part = supernatural_of(seq);
  std::set<std::uint64_t> primes;
  for (const auto& [p, e] : factorize(j)) primes.insert(p);
  for (const auto& [p, e] : seq_part.exponents) primes.insert(p);
  for (auto p : primes) {
    const auto sup = seq_part.exponent(p);
    if (sup == SupernaturalNumber::kInfinity) {
      inv.delta.set(p, sup);
    } else if (inv.l_exact && seq.policy() == ExtendPolicy::RepeatLast) {
      inv.delta.set(p, valuation(j, p) - valuation(inv.l, p) + sup);
    } else {
      // Lower bound: v_p(lcm(j, n_K)).
      inv.delta.set(p, std::max(valuation(j, p), sup));
    }
  }
  inv.delta.provenance = seq_part.provenance;
  return inv;
}

namespace {

struct Interval {
  std::uint64_t lo, hi;
  bool disjoint(const Interval& o) const { return hi < o.lo || o.hi < lo; }
};

Interval l_interval(const BDInvariant& a) { return a.l_exact ? Interval{a.l, a.l} : Interval{a.l, a.j}; }

Interval delta_interval(const BDInvariant& a, std::uint64_t p) {
  const auto e = a.delta.exponent(p);
  if (a.delta.provenance == Provenance::Exact) return {e, e};
  return {e, SupernaturalNumber::kInfinity};
}

}  // namespace

Verdict bd_isomorphic(const BDInvariant& a, const BDInvariant& b) {
  Verdict v;
  const auto la = l_interval(a), lb = l_interval(b);
  if (la.disjoint(lb)) {
    v.kind = VerdictKind::No;
    v.verdict = "not isomorphic";
    v.witness = "l differs: " + std::to_string(a.l) + (a.l_exact ? "" : "+") + " vs " + std::to_string(b.l) +
                (b.l_exact ? "" : "+");
    return v;
  }
  std::set<std::uint64_t> primes;
  for (const auto& [p, e] : a.delta.exponents) primes.insert(p);
  for (const auto& [p, e] : b.delta.exponents) primes.insert(p);
  for (auto p : primes) {
    if (delta_interval(a, p).disjoint(delta_interval(b, p))) {
      v.kind = VerdictKind::No;
      v.verdict = "not isomorphic";
      v.witness = "supernatural exponent at " + std::to_string(p) + " differs: " +
                  exponent_text(a.delta.exponent(p)) + " vs " + exponent_text(b.delta.exponent(p));
      return v;
    }
  }
  const bool exact = a.l_exact && b.l_exact && a.delta.provenance == Provenance::Exact &&
                     b.delta.provenance == Provenance::Exact;
  if (exact) {
    v.kind = VerdictKind::Yes;
    v.verdict = "isomorphic";
    v.witness = "l = " + std::to_string(a.l) + ", delta = " + a.delta.to_string();
  } else {
    v.kind = VerdictKind::Undetermined;
    v.verdict = "undetermined";
    v.witness = "prefix-limited invariants agree on the supplied levels";
  }
  return v;
}

Verdict bd_isomorphic(std::uint64_t j1, const DivisibilitySequence& s1, std::uint64_t j2,
                      const DivisibilitySequence& s2) {
  return bd_isomorphic(bd_invariant(j1, s1), bd_invariant(j2, s2));
}

Verdict bd_simple(std::uint64_t j, const DivisibilitySequence& seq) {
  const auto inv = bd_invariant(j, seq);
  Verdict v;
  for (std::size_t k = 0; k < inv.gcd_trace.size(); ++k) {
    if (inv.gcd_trace[k] == 1) continue;
    v.kind = VerdictKind::No;
    v.verdict = "not simple";
    v.witness = "gcd(" + std::to_string(j) + ", n_" + std::to_string(k + 1) + ") = " + std::to_string(inv.gcd_trace[k]);
    return v;
  }
  if (inv.l > 1) {
    v.kind = VerdictKind::No;
    v.verdict = "not simple";
    v.witness = "gcd(" + std::to_string(j) + ", n_k) reaches " + std::to_string(inv.l) + " beyond the prefix";
  } else if (inv.l_exact) {
    v.kind = VerdictKind::Yes;
    v.verdict = "simple";
    v.witness = "gcd(" + std::to_string(j) + ", n_k) = 1 for every k";
  } else {
    v.kind = VerdictKind::Undetermined;
    v.verdict = "undetermined";
    v.witness = "gcd(" + std::to_string(j) + ", n_k) = 1 on the supplied levels only";
  }
  return v;
}

}  // namespace gbd
