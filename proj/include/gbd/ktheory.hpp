#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gbd/graph.hpp"
#include "gbd/integer_matrix.hpp"
#include "gbd/sequence.hpp"

namespace gbd {

/// Z^rank + Z/d_1 + ... with d_1 | d_2 | ... and every d_i > 1.
struct FinitelyGeneratedAbelianGroup {
  std::size_t rank = 0;
  std::vector<mpz_class> torsion;

  bool operator==(const FinitelyGeneratedAbelianGroup&) const = default;
  std::string to_string() const;
};

/// The basis of level-k functions: E^{<n_k} in shortlex order.
std::vector<Path> level_basis(const DirectedMultigraph& g, const DivisibilitySequence& seq, std::size_t k,
                              const Limits& limits = {});

/// Delta_k = I - A^T with A[w'', w'] the number of E(n_k)-edges (e, w') ending at w''.
IntegerMatrix delta_matrix(const DirectedMultigraph& g, const DivisibilitySequence& seq, std::size_t k,
                           const Limits& limits = {});

/// sum_e f o sigma_e for a level-k function f given in level_basis coordinates.
std::vector<mpz_class> z_action(const std::vector<mpz_class>& f, const DirectedMultigraph& g,
                                const DivisibilitySequence& seq, std::size_t k, const Limits& limits = {});

/// d_E(n_to) x d_E(n_from): column w is the sum of chi_{w'} over w' with w'(n_from) = w.
IntegerMatrix inclusion_matrix(const DirectedMultigraph& g, const DivisibilitySequence& seq, std::size_t from,
                               std::size_t to, const Limits& limits = {});
inline IntegerMatrix inclusion_matrix(const DirectedMultigraph& g, const DivisibilitySequence& seq, std::size_t k,
                                      const Limits& limits = {}) {
  return inclusion_matrix(g, seq, k, k + 1, limits);
}

/// Cokernel and kernel of one Delta_k, in a fixed presentation.
struct LevelPresentation {
  std::size_t k = 0;
  std::uint64_t n = 0;
  std::size_t dimension = 0;
  IntegerMatrix delta;
  SmithDecomposition snf;        // U is normalised: free rows in Hermite form
  IntegerMatrix u_inverse;
  std::vector<std::size_t> coker_positions;  // rows of U giving K0 coordinates (torsion first, then free)
  std::vector<mpz_class> coker_moduli;       // 0 for a free coordinate
  IntegerMatrix kernel_basis;                // columns span ker Delta_k, Hermite normalised
  FinitelyGeneratedAbelianGroup k0, k1;
};

LevelPresentation level_presentation(const DirectedMultigraph& g, const DivisibilitySequence& seq, std::size_t k,
                                     const Limits& limits = {});

struct ConnectingMap {
  std::size_t from = 0, to = 0;
  IntegerMatrix k0;  // K0(level to) coordinates of the images of K0(level from) generators
  IntegerMatrix k1;  // kernel_basis(to) * k1 = inclusion * kernel_basis(from)
};

struct Stabilization {
  bool constant = false;  // presentation and connecting matrix repeat from the second level on
  std::string limit;      // e.g. "Z[1/2]", "Z", "0", "Z^3"; empty if no closed form is named
};

struct DirectSystemReport {
  std::vector<LevelPresentation> levels;
  std::vector<ConnectingMap> maps;  // between consecutive requested levels
  Stabilization k0, k1;
};

/// Throws VerificationFailure if inclusion and Delta fail to commute or an SNF check fails.
DirectSystemReport k_groups(const DirectedMultigraph& g, const DivisibilitySequence& seq,
                            const std::vector<std::size_t>& levels, const Limits& limits = {});

}  // namespace gbd
