#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orthoscalar/linalg.hpp"
#include "orthoscalar/quiver.hpp"

namespace orthoscalar {

/// A representation of a tree quiver in finite-dimensional Hilbert spaces:
/// one complex matrix of shape dims(head) x dims(tail) per arrow.
class Representation {
 public:
  /// Throws Error("ShapeMismatch") if any matrix has the wrong shape or a
  /// non-finite entry.
  Representation(Quiver quiver, DimVector dims, std::vector<ComplexMatrix> maps);

  /// All arrows zero.
  static Representation zero(Quiver quiver, DimVector dims);

  const Quiver& quiver() const { return quiver_; }
  const DimVector& dims() const { return dims_; }
  std::int64_t dim(Index v) const { return dims_(v); }
  const std::vector<ComplexMatrix>& maps() const { return maps_; }
  const ComplexMatrix& map(Index arrow) const { return maps_[static_cast<std::size_t>(arrow)]; }

  /// Copy with replaced matrices (shapes are rechecked).
  Representation with_maps(std::vector<ComplexMatrix> maps) const;

 private:
  Quiver quiver_;
  DimVector dims_;
  std::vector<ComplexMatrix> maps_;
};

/// Left-hand side of the orthoscalar equation at vertex a:
/// sum over outgoing S*S plus sum over incoming SS*.
ComplexMatrix vertex_operator(const Representation& rep, Index a);

/// D_a = vertex_operator(a) - chi(a) 1.
ComplexMatrix defect_matrix(const Representation& rep, const Character& chi, Index a);

struct CharacterEstimate {
  std::vector<std::optional<double>> values;  // undefined where dims = 0
  Eigen::VectorXd residuals;                  // ||M_a - value 1||_F
};

/// Trace estimate chi(a) = tr(M_a)/d_a and its scalarity residual.
CharacterEstimate infer_character(const Representation& rep);

struct OrthoscalarReport {
  Eigen::VectorXd defects;  // ||D_a||_F per vertex, 0 where dims = 0
  double max_defect = 0.0;
  CharacterEstimate inferred;
  double tolerance = 0.0;
  bool pass = false;
};

/// Throws Error("InvalidCharacter") on a length mismatch, Error("InvalidTolerance") for tol <= 0.
OrthoscalarReport check_orthoscalar(const Representation& rep, const Character& chi, double tol);

enum class TraceObstruction { None, Balance, NegativeTrace };

/// Solution of the traced orthoscalar equations
/// sum_{arrows at a} ||S(alpha)||_F^2 = chi(a) d_a.
struct TraceSystem {
  bool feasible = false;
  Eigen::VectorXd traces;  // per arrow, valid when feasible
  TraceObstruction obstruction = TraceObstruction::None;
  double even_total = 0.0;  // sum over even vertices of chi(a) d_a
  double odd_total = 0.0;
  std::optional<Index> arrow;  // offending arrow for NegativeTrace
  std::string detail;
};

/// Leaf peeling (smallest current leaf id first). Balance is tested with
/// relative tolerance 1e-12, negative traces above -1e-12 are clamped to 0.
TraceSystem edge_trace_system(const Quiver& q, const DimVector& d, const Character& chi);

/// Block-diagonal sum. Throws Error("QuiverMismatch").
Representation direct_sum(const Representation& a, const Representation& b);

/// Real dimension of the Hermitian self-intertwiners {X_a = X_a^*} with
/// X_head S = S X_tail on every arrow.
Index commutant_dimension(const Representation& rep, double rank_tol = 1e-8);
RankDecision commutant_rank(const Representation& rep, double rank_tol = 1e-8);

bool is_indecomposable(const Representation& rep, double rank_tol = 1e-8);

/// Every arrow matrix has Frobenius norm > tol.
bool is_faithful(const Representation& rep, double tol = 1e-12);

struct EquivalenceResult {
  bool equivalent = false;
  std::vector<ComplexMatrix> unitaries;  // per vertex, when equivalent
  double residual = 0.0;                 // max_alpha ||U_h A - B U_t||_F of best attempt
  Index intertwiner_dimension = 0;
};

/// Searches the *-intertwiner space (X_h A = B X_t and X_t A^* = B^* X_h) for an
/// element whose polar unitary part maps A onto B within tol.
/// Throws Error("DimsMismatch").
EquivalenceResult unitary_equivalent(const Representation& a, const Representation& b, double tol,
                                     double rank_tol = 1e-8);

/// Gauge action S(alpha) -> U_head S(alpha) U_tail^*.
Representation conjugate(const Representation& rep, const std::vector<ComplexMatrix>& unitaries);

/// Reverses one arrow and replaces its matrix by the adjoint.
Representation reverse_arrow(const Representation& rep, Index arrow);

/// Complex Gaussian matrices, deterministic per seed. When chi is given and
/// the trace system is feasible, each arrow is rescaled to Frobenius norm sqrt(t_alpha).
Representation random_representation(const Quiver& q, const DimVector& d, std::uint64_t seed,
                                      double scale = 1.0, const Character* chi = nullptr);

}  // namespace orthoscalar
