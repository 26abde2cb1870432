#pragma once

#include "orthoscalar/representation.hpp"

namespace orthoscalar {

/// Differential of S -> (D_a)_a at `rep`, realified. Columns: for each arrow,
/// real then imaginary unit directions of every entry (column-major). Rows:
/// per vertex, the Hermitian coordinates of dD_a (diagonal, then Re/Im of the
/// strict upper triangle).
Eigen::MatrixXd constraint_jacobian(const Representation& rep);

/// Rank of the infinitesimal gauge action X -> (X_h S - S X_t), X_a anti-Hermitian.
RankDecision orbit_rank(const Representation& rep, double rank_tol = 1e-8);
Index orbit_dimension(const Representation& rep, double rank_tol = 1e-8);

struct ModuliReport {
  Index ambient_dimension = 0;     // sum over arrows of 2 d_tail d_head
  Index constraint_rank = 0;
  Index kernel_dimension = 0;
  Index orbit_dimension = 0;
  Index stabilizer_dimension = 0;  // sum d_a^2 - orbit
  Index moduli_fixed_chi = 0;      // kernel - orbit
  Index character_dimension = 0;   // q - rank of the balance constraint
  Index total_parameters = 0;
  double constraint_gap = 0.0;
  double orbit_gap = 0.0;
  bool reliable = false;           // both gaps >= 1e3
};

/// Local parameter count at an orthoscalar indecomposable point.
/// Errors: NotASolution (defect above 1e-6), Decomposable.
ModuliReport parameter_count(const Representation& rep, const Character& chi, double rank_tol = 1e-8);

}  // namespace orthoscalar
