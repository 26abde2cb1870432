#include "orthoscalar/representation.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "orthoscalar/error.hpp"

namespace orthoscalar {

namespace {

void check_shapes(const Quiver& q, const DimVector& d, const std::vector<ComplexMatrix>& maps) {
  validate_dims(q, d);
  if (static_cast<Index>(maps.size()) != q.num_arrows())
    throw Error("ShapeMismatch", "expected " + std::to_string(q.num_arrows()) + " arrow matrices, got " +
                                     std::to_string(maps.size()));
  for (Index i = 0; i < q.num_arrows(); ++i) {
    const Arrow& a = q.arrow(i);
    const ComplexMatrix& m = maps[static_cast<std::size_t>(i)];
    if (m.rows() != d(a.head) || m.cols() != d(a.tail)) {
      std::ostringstream os;
      os << "arrow '" << a.id << "' has shape " << m.rows() << "x" << m.cols() << ", expected "
         << d(a.head) << "x" << d(a.tail);
      throw Error("ShapeMismatch", os.str());
    }
    if (!m.allFinite()) throw Error("ShapeMismatch", "arrow '" + a.id + "' has a non-finite entry");
  }
}

// vec(M X N) = (N^T kron M) vec(X)
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

std::vector<Index> vertex_offsets(const DimVector& d, bool squared) {
  std::vector<Index> off(static_cast<std::size_t>(d.size()) + 1, 0);
  for (Index v = 0; v < d.size(); ++v)
    off[static_cast<std::size_t>(v) + 1] = off[static_cast<std::size_t>(v)] + (squared ? d(v) * d(v) : d(v));
  return off;
}

}  // namespace

Representation::Representation(Quiver quiver, DimVector dims, std::vector<ComplexMatrix> maps)
    : quiver_(std::move(quiver)), dims_(std::move(dims)), maps_(std::move(maps)) {
  check_shapes(quiver_, dims_, maps_);
}

Representation Representation::zero(Quiver quiver, DimVector dims) {
  std::vector<ComplexMatrix> maps;
  for (const Arrow& a : quiver.arrows()) maps.push_back(ComplexMatrix::Zero(dims(a.head), dims(a.tail)));
  return Representation(std::move(quiver), std::move(dims), std::move(maps));
}

Representation Representation::with_maps(std::vector<ComplexMatrix> maps) const {
  return Representation(quiver_, dims_, std::move(maps));
}

ComplexMatrix vertex_operator(const Representation& rep, Index a) {
  const Index d = rep.dim(a);
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (Index e : rep.quiver().outgoing(a)) m.noalias() += rep.map(e).adjoint() * rep.map(e);
  for (Index e : rep.quiver().incoming(a)) m.noalias() += rep.map(e) * rep.map(e).adjoint();
  return m;
}

ComplexMatrix defect_matrix(const Representation& rep, const Character& chi, Index a) {
  ComplexMatrix m = vertex_operator(rep, a);
  m.diagonal().array() -= chi(a);
  return m;
}

CharacterEstimate infer_character(const Representation& rep) {
  const Index n = rep.quiver().num_vertices();
  CharacterEstimate est;
  est.values.resize(static_cast<std::size_t>(n));
  est.residuals = Eigen::VectorXd::Zero(n);
  for (Index a = 0; a < n; ++a) {
    if (rep.dim(a) == 0) continue;
    ComplexMatrix m = vertex_operator(rep, a);
    const double value = m.trace().real() / static_cast<double>(rep.dim(a));
    est.values[static_cast<std::size_t>(a)] = value;
    m.diagonal().array() -= value;
    est.residuals(a) = m.norm();
  }
  return est;
}

OrthoscalarReport check_orthoscalar(const Representation& rep, const Character& chi, double tol) {
  const Quiver& q = rep.quiver();
  if (chi.size() != q.num_vertices())
    throw Error("InvalidCharacter", "character length does not match the quiver");
  if (!(tol > 0)) throw Error("InvalidTolerance", "tolerance must be positive");
  OrthoscalarReport r;
  r.tolerance = tol;
  r.defects = Eigen::VectorXd::Zero(q.num_vertices());
  for (Index a = 0; a < q.num_vertices(); ++a)
    if (rep.dim(a) > 0) r.defects(a) = defect_matrix(rep, chi, a).norm();
  r.max_defect = r.defects.size() > 0 ? r.defects.maxCoeff() : 0.0;
  r.inferred = infer_character(rep);
  r.pass = r.max_defect <= tol;
  return r;
}

TraceSystem edge_trace_system(const Quiver& q, const DimVector& d, const Character& chi) {
  validate_dims(q, d);
  if (chi.size() != q.num_vertices())
    throw Error("InvalidCharacter", "character length does not match the quiver");
  TraceSystem sys;
  const Bipartition b = bipartition(q);
  for (Index v = 0; v < q.num_vertices(); ++v) {
    const double mass = chi(v) * static_cast<double>(d(v));
    (b.of(v) == Parity::Even ? sys.even_total : sys.odd_total) += mass;
  }
  const double total = sys.even_total + sys.odd_total;
  if (std::abs(sys.even_total - sys.odd_total) > 1e-12 * total) {
    std::ostringstream os;
    os.precision(17);
    os << "balance: " << sys.even_total << " != " << sys.odd_total;
    sys.obstruction = TraceObstruction::Balance;
    sys.detail = os.str();
    return sys;
  }

  const Index n = q.num_vertices();
  Eigen::VectorXd rhs(n);
  for (Index v = 0; v < n; ++v) rhs(v) = chi(v) * static_cast<double>(d(v));
  std::vector<Index> degree(static_cast<std::size_t>(n));
  std::vector<bool> removed(static_cast<std::size_t>(n), false);
  std::set<std::pair<std::string, Index>> leaves;
  for (Index v = 0; v < n; ++v) {
    degree[static_cast<std::size_t>(v)] = q.degree(v);
    if (degree[static_cast<std::size_t>(v)] == 1) leaves.emplace(q.vertex(v), v);
  }
  sys.traces = Eigen::VectorXd::Zero(q.num_arrows());
  const double clamp = 1e-12 * std::max(1.0, total);
  for (Index step = 0; step + 1 < n; ++step) {
    const Index v = leaves.begin()->second;
    leaves.erase(leaves.begin());
    removed[static_cast<std::size_t>(v)] = true;
    Index edge = -1, other = -1;
    for (Index e : q.incident(v)) {
      const Arrow& a = q.arrow(e);
      const Index w = a.tail == v ? a.head : a.tail;
      if (!removed[static_cast<std::size_t>(w)]) {
        edge = e;
        other = w;
      }
    }
    double t = rhs(v);
    if (t < -clamp) {
      std::ostringstream os;
      os.precision(17);
      os << "negative t at arrow '" << q.arrow(edge).id << "': " << t;
      sys.obstruction = TraceObstruction::NegativeTrace;
      sys.arrow = edge;
      sys.detail = os.str();
      sys.traces.resize(0);
      return sys;
    }
    t = std::max(t, 0.0);
    sys.traces(edge) = t;
    rhs(other) -= t;
    if (--degree[static_cast<std::size_t>(other)] == 1) leaves.emplace(q.vertex(other), other);
  }
  sys.feasible = true;
  return sys;
}

Representation direct_sum(const Representation& a, const Representation& b) {
  if (!(a.quiver() == b.quiver())) throw Error("QuiverMismatch", "direct sum needs identical quivers");
  const Quiver& q = a.quiver();
  DimVector d = a.dims() + b.dims();
  std::vector<ComplexMatrix> maps;
  for (Index e = 0; e < q.num_arrows(); ++e) {
    const Arrow& arr = q.arrow(e);
    ComplexMatrix m = ComplexMatrix::Zero(d(arr.head), d(arr.tail));
    m.topLeftCorner(a.dim(arr.head), a.dim(arr.tail)) = a.map(e);
    m.bottomRightCorner(b.dim(arr.head), b.dim(arr.tail)) = b.map(e);
    maps.push_back(std::move(m));
  }
  return Representation(q, std::move(d), std::move(maps));
}

RankDecision commutant_rank(const Representation& rep, double rank_tol) {
  const Quiver& q = rep.quiver();
  const auto col_off = vertex_offsets(rep.dims(), true);
  Index rows = 0;
  for (const Arrow& a : q.arrows()) rows += 2 * rep.dim(a.head) * rep.dim(a.tail);
  Eigen::MatrixXd system = Eigen::MatrixXd::Zero(rows, col_off.back());

  Index row = 0;
  for (Index e = 0; e < q.num_arrows(); ++e) {
    const Arrow& a = q.arrow(e);
    const ComplexMatrix& s = rep.map(e);
    const Index block = 2 * s.size();
    if (block == 0) continue;
    const auto head_basis = hermitian_basis(rep.dim(a.head));
    for (std::size_t k = 0; k < head_basis.size(); ++k)
      system.col(col_off[static_cast<std::size_t>(a.head)] + static_cast<Index>(k)).segment(row, block) =
          realify(head_basis[k] * s);
    const auto tail_basis = hermitian_basis(rep.dim(a.tail));
    for (std::size_t k = 0; k < tail_basis.size(); ++k)
      system.col(col_off[static_cast<std::size_t>(a.tail)] + static_cast<Index>(k)).segment(row, block) =
          -realify(s * tail_basis[k]);
    row += block;
  }
  return numerical_rank(system, rank_tol);
}

Index commutant_dimension(const Representation& rep, double rank_tol) {
  return commutant_rank(rep, rank_tol).nullity();
}

bool is_indecomposable(const Representation& rep, double rank_tol) {
  return commutant_dimension(rep, rank_tol) == 1;
}

bool is_faithful(const Representation& rep, double tol) {
  return std::all_of(rep.maps().begin(), rep.maps().end(),
                     [tol](const ComplexMatrix& m) { return m.size() > 0 && m.norm() > tol; });
}

EquivalenceResult unitary_equivalent(const Representation& a, const Representation& b, double tol,
                                     double rank_tol) {
  if (!(a.quiver() == b.quiver()) || a.dims() != b.dims())
    throw Error("DimsMismatch", "unitary equivalence needs the same quiver and dimension vector");
  const Quiver& q = a.quiver();
  const DimVector& d = a.dims();
  const auto off = vertex_offsets(d, true);
  const Index unknowns = off.back();

  EquivalenceResult result;
  result.residual = std::numeric_limits<double>::infinity();
  if (unknowns == 0) {
    result.equivalent = true;
    result.residual = 0.0;
    result.unitaries.assign(static_cast<std::size_t>(q.num_vertices()), ComplexMatrix(0, 0));
    return result;
  }

  Index rows = 0;
  for (const Arrow& arr : q.arrows()) rows += 2 * d(arr.head) * d(arr.tail);
  ComplexMatrix system = ComplexMatrix::Zero(rows, unknowns);
  Index row = 0;
  for (Index e = 0; e < q.num_arrows(); ++e) {
    const Arrow& arr = q.arrow(e);
    const Index dh = d(arr.head), dt = d(arr.tail);
    if (dh * dt == 0) continue;
    const ComplexMatrix& sa = a.map(e);
    const ComplexMatrix& sb = b.map(e);
    const ComplexMatrix ih = ComplexMatrix::Identity(dh, dh);
    const ComplexMatrix it = ComplexMatrix::Identity(dt, dt);
    const Index ch = off[static_cast<std::size_t>(arr.head)];
    const Index ct = off[static_cast<std::size_t>(arr.tail)];
    // X_h A - B X_t = 0
    system.block(row, ch, dh * dt, dh * dh) += kron(sa.transpose(), ih);
    system.block(row, ct, dh * dt, dt * dt) -= kron(it, sb);
    row += dh * dt;
    // X_t A^* - B^* X_h = 0
    system.block(row, ct, dh * dt, dt * dt) += kron(sa.conjugate(), it);
    system.block(row, ch, dh * dt, dh * dh) -= kron(ih, sb.adjoint());
    row += dh * dt;
  }

  ComplexMatrix basis;
  if (rows == 0) {
    basis = ComplexMatrix::Identity(unknowns, unknowns);
  } else {
    Eigen::JacobiSVD<ComplexMatrix> svd(system, Eigen::ComputeFullV);
    const Eigen::VectorXd& s = svd.singularValues();
    Index rank = 0;
    for (Index i = 0; i < s.size(); ++i)
      if (s(i) >= rank_tol * s(0)) ++rank;
    // Keep at least the best approximate intertwiner; the residual test decides.
    basis = svd.matrixV().rightCols(std::max<Index>(unknowns - rank, 1));
  }
  result.intertwiner_dimension = basis.cols();

  std::vector<Eigen::VectorXcd> candidates;
  std::mt19937_64 rng(0x5eed);
  for (int k = 0; k < 4; ++k) candidates.push_back(basis * random_gaussian(basis.cols(), 1, 1.0, rng));
  for (Index k = 0; k < basis.cols(); ++k) candidates.push_back(basis.col(k));

  for (const Eigen::VectorXcd& x : candidates) {
    std::vector<ComplexMatrix> us;
    for (Index v = 0; v < q.num_vertices(); ++v) {
      ComplexMatrix xv = x.segment(off[static_cast<std::size_t>(v)], d(v) * d(v)).reshaped(d(v), d(v));
      us.push_back(polar_unitary(xv));
    }
    double residual = 0.0;
    for (Index e = 0; e < q.num_arrows(); ++e) {
      const Arrow& arr = q.arrow(e);
      const ComplexMatrix diff = us[static_cast<std::size_t>(arr.head)] * a.map(e) -
                                 b.map(e) * us[static_cast<std::size_t>(arr.tail)];
      residual = std::max(residual, diff.norm());
    }
    if (residual < result.residual) {
      result.residual = residual;
      result.unitaries = std::move(us);
    }
    if (result.residual <= tol) break;
  }
  result.equivalent = result.residual <= tol;
  if (!result.equivalent) result.unitaries.clear();
  return result;
}

Representation conjugate(const Representation& rep, const std::vector<ComplexMatrix>& unitaries) {
  const Quiver& q = rep.quiver();
  std::vector<ComplexMatrix> maps;
  for (Index e = 0; e < q.num_arrows(); ++e) {
    const Arrow& a = q.arrow(e);
    maps.push_back(unitaries[static_cast<std::size_t>(a.head)] * rep.map(e) *
                   unitaries[static_cast<std::size_t>(a.tail)].adjoint());
  }
  return rep.with_maps(std::move(maps));
}

Representation reverse_arrow(const Representation& rep, Index arrow) {
  std::vector<ComplexMatrix> maps = rep.maps();
  maps[static_cast<std::size_t>(arrow)] = rep.map(arrow).adjoint();
  return Representation(rep.quiver().with_arrow_reversed(arrow), rep.dims(), std::move(maps));
}

Representation random_representation(const Quiver& q, const DimVector& d, std::uint64_t seed, double scale,
                                      const Character* chi) {
  if (!(scale > 0)) throw Error("InvalidScale", "scale must be positive");
  validate_dims(q, d);
  std::optional<TraceSystem> sys;
  if (chi) {
    sys = edge_trace_system(q, d, *chi);
    if (!sys->feasible) sys.reset();
  }
  std::mt19937_64 rng(seed);
  std::vector<ComplexMatrix> maps;
  for (Index e = 0; e < q.num_arrows(); ++e) {
    const Arrow& a = q.arrow(e);
    ComplexMatrix m = random_gaussian(d(a.head), d(a.tail), scale, rng);
    if (sys) {
      const double target = std::sqrt(sys->traces(e));
      const double norm = m.norm();
      m = norm > 0 ? ComplexMatrix(m * (target / norm)) : ComplexMatrix(m);
    }
    maps.push_back(std::move(m));
  }
  return Representation(q, d, std::move(maps));
}

}  // namespace orthoscalar
