#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gbd/derived.hpp"
#include "gbd/exact.hpp"
#include "gbd/graph.hpp"

namespace gbd {

/// Span of xi_w for all paths |w| <= depth, basis in shortlex order.
class FockSpace {
 public:
  FockSpace(std::shared_ptr<const DirectedMultigraph> g, std::size_t depth, const Limits& limits = {});

  const DirectedMultigraph& graph() const { return *graph_; }
  std::shared_ptr<const DirectedMultigraph> graph_ptr() const { return graph_; }
  std::size_t depth() const { return depth_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Path>& basis() const { return basis_; }
  const Path& path(std::size_t i) const { return basis_[i]; }
  std::optional<std::size_t> index_of(const Path& p) const;
  std::size_t require_index(const Path& p) const;

  /// Mask of basis vectors with |w| <= max_length.
  std::vector<bool> layers_up_to(std::size_t max_length) const;
  std::string label(std::size_t i) const { return render(*graph_, basis_[i]); }

 private:
  std::shared_ptr<const DirectedMultigraph> graph_;
  std::size_t depth_;
  std::vector<Path> basis_;
  std::unordered_map<Path, std::size_t, PathHash> index_;
};

/// L_e: xi_w -> xi_{ew}; zero when s(e) != r(w) or |w| = depth.
SparseMatrix left_shift(const FockSpace& space, EdgeId e);
/// P_x = L_x: projection onto paths with range x.
SparseMatrix vertex_projection(const FockSpace& space, VertexId x);
/// R_x: projection onto paths with source x.
SparseMatrix source_projection(const FockSpace& space, VertexId x);
/// xi_x xi_x^*.
SparseMatrix vertex_vector_projection(const FockSpace& space, VertexId x);

struct FockGenerators {
  std::vector<SparseMatrix> L;   // by EdgeId
  std::vector<SparseMatrix> P;   // by VertexId
  std::vector<SparseMatrix> R;   // by VertexId
  std::vector<SparseMatrix> xi;  // xi_x xi_x^* by VertexId
};

FockGenerators build_generators(const FockSpace& space);

struct RelationCheck {
  std::string relation;
  bool holds = false;
  std::size_t residual_nonzeros = 0;
  std::optional<std::string> counterexample;  // a basis vector where the residual is non-zero

  static RelationCheck from_residual(std::string relation, const FockSpace& space, const SparseMatrix& residual);
};

struct RelationReport {
  std::vector<RelationCheck> checks;
  bool all_hold() const;
  void add(RelationCheck c) { checks.push_back(std::move(c)); }
  void append(const RelationReport& other);
};

/// Sum of P_x is I, and xi_x xi_x^* = P_x (I - sum_e L_e L_e^*) for each x.
RelationReport verify_generator_identities(const FockSpace& space, const FockGenerators& gens);

/// Relations (1)-(4) for the family {S_e, P_x}. With `compressed`, S_e^* S_e = P_{s(e)}
/// is compared on paths of length <= depth - 1. Relation (4) is an exact
/// positive-semidefiniteness test of P_x - sum_{r(e)=x} S_e S_e^*.
RelationReport verify_tck(const FockSpace& space, const std::vector<SparseMatrix>& S,
                          const std::vector<SparseMatrix>& P, bool compressed);

/// For {L_e, P_x}: the defect P_x - sum_{r(e)=x} L_e L_e^* equals xi_x xi_x^*.
RelationReport verify_tck_defect(const FockSpace& space, const FockGenerators& gens);

/// Weight of a non-trivial path. Must be defined for every path of length
/// 1..depth+1 that the shifts reach.
using WeightFunction = std::function<mpq_class(const Path&)>;

/// lambda on paths of length 1..n, extended to every non-trivial path u by
/// lambda(u) = table[range-side segment of u of length ((|u| - 1) mod n) + 1].
struct PeriodicWeights {
  std::shared_ptr<const DirectedMultigraph> graph;
  std::size_t n = 1;
  std::unordered_map<Path, mpq_class, PathHash> table;

  mpq_class operator()(const Path& u) const;
  /// Throws InputError if a path of length 1..n is missing.
  void validate() const;
};

/// T_e xi_w = lambda(ew) xi_{ew}.
std::vector<SparseMatrix> weighted_shift(const FockSpace& space, const WeightFunction& weight);

struct PolarFactor {
  SparseMatrix L, W;
  bool w_positive = false;  // all diagonal entries of W strictly positive
  bool reconstructs = false;  // T_e == L_e W_e exactly
};

/// W_e = diag(lambda(ew)) on the paths w that T_e can move.
PolarFactor polar_factor(const FockSpace& space, EdgeId e, const WeightFunction& weight);

struct ModulusConjugation {
  SparseMatrix U;  // diagonal, entries +-1
  std::vector<SparseMatrix> conjugated;  // U T_e U^*
  bool weights_nonnegative = false;
  bool unitary = false;
};

ModulusConjugation modulus_conjugation(const FockSpace& space, const WeightFunction& weight);

struct PeriodicGenerators {
  std::shared_ptr<const DerivedGraph> en;  // E(n)
  std::vector<SparseMatrix> T;             // by E(n) EdgeId
  std::vector<SparseMatrix> Q;             // by E(n) VertexId
};

/// T_{(e,w)} xi_{w'} = xi_{ew'} when w'(n) = w; Q_w projects onto {w' : w'(n) = w}.
PeriodicGenerators periodic_generators(const FockSpace& space, std::size_t n, const Limits& limits = {});

/// T^*T = Q_w (compressed), and sum over r(e,w) = w0 of TT^* equals Q_{w0}
/// for 0 < |w0| < n and Q_{w0} - xi_{w0} xi_{w0}^* for |w0| = 0 (exact).
RelationReport verify_periodic_generators(const FockSpace& space, const PeriodicGenerators& gens);

/// rank Q_w at each depth in `depths`.
std::vector<std::size_t> q_rank_growth(std::shared_ptr<const DirectedMultigraph> g, std::size_t n, const Path& w,
                                       const std::vector<std::size_t>& depths, const Limits& limits = {});

struct NonInjectivityWitness {
  std::string vertex;              // w0, 0 < |w0| < n
  std::size_t toeplitz_defect_rank = 0;  // in the Fock model of E(n) itself
  bool periodic_defect_zero = false;     // Q_{w0} - sum TT^* on l^2(E^*)
};

/// For each 0 < |w0| < n: p_{w0} - sum t t^* is a non-zero element of T(E(n))
/// (rank of its Fock image) yet vanishes under the periodic representation.
std::vector<NonInjectivityWitness> noninjectivity_witness(const FockSpace& space, std::size_t n,
                                                          const Limits& limits = {});

struct ShiftDecomposition {
  EdgeId edge = 0;
  std::vector<std::pair<EdgeId, mpq_class>> terms;  // (E(n) edge (e,w), lambda(ew))
  bool exact = false;
};

/// T_e = sum_{w in E^{<n}, s(e) = r(w)} lambda(ew) T_{(e,w)} for every e.
std::vector<ShiftDecomposition> decompose_T_e(const FockSpace& space, const PeriodicWeights& weights,
                                              const PeriodicGenerators& gens);

/// U_z xi_w = z^{|w|} xi_w; checks U_z L_e U_z^* = z L_e and, if given,
/// U_z T_{(e,w)} U_z^* = z T_{(e,w)}. z must be one of 1, -1, i, -i.
RelationReport gauge_check(const FockSpace& space, const GaussianRational& z,
                           const PeriodicGenerators* periodic = nullptr);

struct TheoremAnReport {
  std::shared_ptr<const DerivedGraph> length_graph;  // E(=n)
  std::vector<std::string> blocks;                  // E^{<n} in shortlex order
  std::vector<std::size_t> multiplicity;            // per base vertex: blocks w with s(w) = x
  bool bijective = false;
  std::size_t zero_cases = 0, projection_cases = 0, shift_cases = 0;
  std::size_t mismatches = 0;
  std::optional<std::string> counterexample;
};

/// The basis bijection xi_{wv} -> (block w, xi of the E(=n) path v), with
/// w = u(n). Checks the three-case block table for every T_{(e,v)} on basis
/// vectors of length <= depth - 1.
TheoremAnReport theorem_an_unitary(const FockSpace& space, std::size_t n, const Limits& limits = {});

/// i_{nk,n}(T_{(e,w)}) = sum of T_{(e,w')} over the canonical factor map preimages.
RelationReport verify_factor_consistency(const FockSpace& space, std::size_t n, std::size_t k,
                                         const Limits& limits = {});

}  // namespace gbd
