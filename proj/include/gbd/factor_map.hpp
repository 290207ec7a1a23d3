#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gbd/derived.hpp"
#include "gbd/graph.hpp"

namespace gbd {

/// A pair (m0, m1) of vertex and edge maps from `source` (F) to `target` (E).
struct FactorMap {
  std::shared_ptr<const DirectedMultigraph> source;
  std::shared_ptr<const DirectedMultigraph> target;
  std::vector<VertexId> vertex_map;  // F^0 -> E^0
  std::vector<EdgeId> edge_map;      // F^1 -> E^1

  static FactorMap identity(std::shared_ptr<const DirectedMultigraph> g);
};

enum class FactorAxiom {
  Endpoints,      // (i)  r(m1 e) = m0 r(e), s(m1 e) = m0 s(e)
  UniqueLifting,  // (ii) exactly one lift of e' at each v with s(e') = m0(v)
  Regularity,     // (iii) r_F^{-1}(v) non-empty whenever r_E^{-1}(m0 v) is
};

std::string to_string(FactorAxiom axiom);

struct FactorViolation {
  FactorAxiom axiom;
  std::string detail;
};

struct FactorVerdict {
  std::vector<FactorViolation> violations;

  std::size_t count(FactorAxiom axiom) const;
  /// Axioms (i) and (ii) hold.
  bool is_factor_map() const { return count(FactorAxiom::Endpoints) == 0 && count(FactorAxiom::UniqueLifting) == 0; }
  bool is_regular() const { return is_factor_map() && count(FactorAxiom::Regularity) == 0; }
};

/// Reports every violation of (i), (ii) and, separately, (iii).
/// Throws StructuralError if the maps are not total or point outside the target.
FactorVerdict verify_factor_map(const FactorMap& m);

/// A canonical map together with the derived graphs it connects.
struct CanonicalFactor {
  std::shared_ptr<const DerivedGraph> source;  // E(nk) or E[nk]
  std::shared_ptr<const DerivedGraph> target;  // E(n) or E[n]
  FactorMap map;
};

/// m : E(nk) -> E(n), m0(w) = w(n), m1(e, w) = (e, w(n)).
CanonicalFactor canonical_m(std::shared_ptr<const DirectedMultigraph> g, std::size_t n, std::size_t k,
                            const Limits& limits = {});
/// The same map between already built E(N) and E(n) with n | N.
FactorMap canonical_m(const DerivedGraph& fine, const DerivedGraph& coarse);

/// q : E[nk] -> E[n]; agrees with m on the E(nk) part and fixes copies.
CanonicalFactor canonical_q(std::shared_ptr<const DirectedMultigraph> g, std::size_t n, std::size_t k,
                            const Limits& limits = {});
FactorMap canonical_q(const DerivedGraph& fine, const DerivedGraph& coarse);

/// Formal generator assignments of mu_m : O(E) -> O(F):
///   P_v -> sum of P_u over u in m0^{-1}(v),  S_e -> sum of S_f over f in m1^{-1}(e).
struct GeneratorMap {
  std::shared_ptr<const DirectedMultigraph> source;  // F
  std::shared_ptr<const DirectedMultigraph> target;  // E
  std::vector<std::vector<VertexId>> vertex_preimages;  // indexed by E^0
  std::vector<std::vector<EdgeId>> edge_preimages;      // indexed by E^1
  bool injective = false;                               // m0 surjective
};

/// Requires a regular factor map; throws InputError otherwise.
GeneratorMap induced_generator_map(const FactorMap& m);

/// second o first. Throws InputError unless first.target equals second.source.
FactorMap compose(const FactorMap& second, const FactorMap& first);

}  // namespace gbd
