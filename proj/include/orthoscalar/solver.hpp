#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "orthoscalar/representation.hpp"

namespace orthoscalar {

/// F(S) = sum_a ||D_a||_F^2 over vertices with positive dimension.
double objective(const Representation& rep, const Character& chi);

/// Gradient of the objective with respect to the real inner product
/// Re tr(X^* Y): G(alpha) = 4 (D_head S(alpha) + S(alpha) D_tail).
std::vector<ComplexMatrix> gradient(const Representation& rep, const Character& chi);

struct SolveOptions {
  std::uint64_t seed = 0;
  int restarts = 20;
  int max_iter = 20000;
  double tol = 1e-8;  // target max defect
  double armijo = 1e-4;
  double backtrack = 0.5;
  double initial_step = 1e-2;
  bool record_trace = false;
};

enum class SolveStatus { Solved, Infeasible, NotConverged };
std::string_view to_string(SolveStatus s);

struct SolveResult {
  SolveStatus status = SolveStatus::NotConverged;
  std::optional<Representation> representation;  // solution, or best iterate if not converged
  double objective = 0.0;
  double max_defect = 0.0;
  int iterations = 0;  // in the reported restart
  int restart = -1;
  TraceSystem traces;
  std::vector<double> objective_trace;  // reported restart, when requested
};

/// Multi-start gradient descent with Armijo backtracking. Infeasible trace
/// systems short-circuit. Deterministic for fixed options.
SolveResult solve(const Quiver& q, const DimVector& d, const Character& chi, const SolveOptions& options = {});

/// Largest deviation between gradient() and central finite differences of
/// objective() with step h, relative to the largest gradient component.
double gradient_check(const Representation& rep, const Character& chi, double h = 1e-5);

}  // namespace orthoscalar
