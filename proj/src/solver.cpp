#include "orthoscalar/solver.hpp"

#include <cassert>
#include <cmath>
#include <limits>

#include "orthoscalar/error.hpp"

namespace orthoscalar {

namespace {

using Maps = std::vector<ComplexMatrix>;

// Defect matrices for every vertex of a candidate point.
std::vector<ComplexMatrix> defects(const Quiver& q, const DimVector& d, const Maps& maps, const Character& chi) {
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(q.num_vertices()));
  for (Index a = 0; a < q.num_vertices(); ++a) {
    ComplexMatrix m = ComplexMatrix::Zero(d(a), d(a));
    for (Index e : q.outgoing(a)) m.noalias() += maps[static_cast<std::size_t>(e)].adjoint() * maps[static_cast<std::size_t>(e)];
    for (Index e : q.incoming(a)) m.noalias() += maps[static_cast<std::size_t>(e)] * maps[static_cast<std::size_t>(e)].adjoint();
    m.diagonal().array() -= chi(a);
    out.push_back(std::move(m));
  }
  return out;
}

double objective_of(const std::vector<ComplexMatrix>& ds) {
  double f = 0.0;
  for (const ComplexMatrix& m : ds) f += m.squaredNorm();
  return f;
}

double max_defect_of(const std::vector<ComplexMatrix>& ds) {
  double worst = 0.0;
  for (const ComplexMatrix& m : ds) worst = std::max(worst, m.norm());
  return worst;
}

Maps gradient_of(const Quiver& q, const Maps& maps, const std::vector<ComplexMatrix>& ds) {
  Maps g;
  g.reserve(maps.size());
  for (Index e = 0; e < q.num_arrows(); ++e) {
    const Arrow& a = q.arrow(e);
    const ComplexMatrix& s = maps[static_cast<std::size_t>(e)];
    g.push_back(4.0 * (ds[static_cast<std::size_t>(a.head)] * s + s * ds[static_cast<std::size_t>(a.tail)]));
  }
  return g;
}

double squared_norm(const Maps& m) {
  double s = 0.0;
  for (const ComplexMatrix& x : m) s += x.squaredNorm();
  return s;
}

struct Descent {
  Maps maps;
  double objective;
  double max_defect;
  int iterations;
  bool converged;
  std::vector<double> trace;
};

Descent descend(const Quiver& q, const DimVector& d, const Character& chi, Maps maps, const SolveOptions& opt) {
  Descent run{std::move(maps), 0.0, 0.0, 0, false, {}};
  auto ds = defects(q, d, run.maps, chi);
  run.objective = objective_of(ds);
  run.max_defect = max_defect_of(ds);
  if (opt.record_trace) run.trace.push_back(run.objective);
  double step = opt.initial_step;

  for (; run.iterations < opt.max_iter; ++run.iterations) {
    if (run.max_defect <= opt.tol) {
      run.converged = true;
      return run;
    }
    const Maps g = gradient_of(q, run.maps, ds);
    const double g2 = squared_norm(g);
    if (g2 == 0.0) break;  // critical point that is not a solution

    Maps trial(run.maps.size());
    std::vector<ComplexMatrix> trial_ds;
    double trial_f = 0.0;
    bool accepted = false;
    while (step > std::numeric_limits<double>::min()) {
      for (std::size_t i = 0; i < trial.size(); ++i) trial[i] = run.maps[i] - step * g[i];
      trial_ds = defects(q, d, trial, chi);
      trial_f = objective_of(trial_ds);
      if (trial_f <= run.objective - opt.armijo * step * g2) {
        accepted = true;
        break;
      }
      step *= opt.backtrack;
    }
    if (!accepted) break;
    assert(trial_f <= run.objective);
    run.maps = std::move(trial);
    ds = std::move(trial_ds);
    run.objective = trial_f;
    run.max_defect = max_defect_of(ds);
    if (opt.record_trace) run.trace.push_back(run.objective);
    step /= opt.backtrack;
  }
  run.converged = run.max_defect <= opt.tol;
  return run;
}

}  // namespace

double objective(const Representation& rep, const Character& chi) {
  return objective_of(defects(rep.quiver(), rep.dims(), rep.maps(), chi));
}

std::vector<ComplexMatrix> gradient(const Representation& rep, const Character& chi) {
  return gradient_of(rep.quiver(), rep.maps(), defects(rep.quiver(), rep.dims(), rep.maps(), chi));
}

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Solved: return "Solved";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::NotConverged: return "NotConverged";
  }
  return "NotConverged";
}

SolveResult solve(const Quiver& q, const DimVector& d, const Character& chi, const SolveOptions& options) {
  validate_dims(q, d, true);
  validate_character(q, chi);
  if (options.restarts < 1 || options.max_iter < 0 || !(options.tol > 0) || !(options.initial_step > 0) ||
      !(options.backtrack > 0 && options.backtrack < 1) || !(options.armijo > 0 && options.armijo < 1))
    throw Error("InvalidOptions", "solver options out of range");

  SolveResult result;
  result.traces = edge_trace_system(q, d, chi);
  if (!result.traces.feasible) {
    result.status = SolveStatus::Infeasible;
    return result;
  }

  std::optional<Descent> best;
  int best_restart = -1;
  for (int r = 0; r < options.restarts; ++r) {
    // Distinct, reproducible stream per restart.
    const std::uint64_t seed = options.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(r);
    Representation init = random_representation(q, d, seed, 1.0, &chi);
    Descent run = descend(q, d, chi, init.maps(), options);
    const bool better = !best || run.max_defect < best->max_defect;
    if (run.converged || better) {
      best = std::move(run);
      best_restart = r;
    }
    if (best->converged) break;
  }

  result.status = best->converged ? SolveStatus::Solved : SolveStatus::NotConverged;
  result.representation = Representation(q, d, std::move(best->maps));
  result.objective = best->objective;
  result.max_defect = best->max_defect;
  result.iterations = best->iterations;
  result.restart = best_restart;
  result.objective_trace = std::move(best->trace);
  return result;
}

double gradient_check(const Representation& rep, const Character& chi, double h) {
  const std::vector<ComplexMatrix> g = gradient(rep, chi);
  double scale = 0.0, worst = 0.0;
  for (Index e = 0; e < rep.quiver().num_arrows(); ++e) {
    for (Index k = 0; k < rep.map(e).size(); ++k) {
      for (const Complex unit : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
        std::vector<ComplexMatrix> plus = rep.maps(), minus = rep.maps();
        plus[static_cast<std::size_t>(e)].reshaped()(k) += h * unit;
        minus[static_cast<std::size_t>(e)].reshaped()(k) -= h * unit;
        const double fd = (objective(rep.with_maps(plus), chi) - objective(rep.with_maps(minus), chi)) / (2 * h);
        const Complex gk = g[static_cast<std::size_t>(e)].reshaped()(k);
        const double analytic = unit.real() != 0.0 ? gk.real() : gk.imag();
        worst = std::max(worst, std::abs(fd - analytic));
        scale = std::max(scale, std::abs(analytic));
      }
    }
  }
  return scale > 0 ? worst / scale : worst;
}

}  // namespace orthoscalar
