#include "orthoscalar/coxeter.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <sstream>

#include "orthoscalar/error.hpp"

namespace orthoscalar {

namespace {

OrientedRepresentation orient_by(const Representation& rep, const std::vector<bool>& flip) {
  QuiverSpec spec = rep.quiver().spec();
  std::vector<ComplexMatrix> maps = rep.maps();
  for (std::size_t e = 0; e < flip.size(); ++e) {
    if (!flip[e]) continue;
    std::swap(spec.arrows[e].tail, spec.arrows[e].head);
    maps[e] = rep.maps()[e].adjoint();
  }
  return {Representation(validate_quiver(spec), rep.dims(), std::move(maps)), flip};
}

std::string vertex_detail(const Quiver& q, Index v, const std::string& what) {
  return what + " at vertex '" + q.vertex(v) + "'";
}

}  // namespace

OrientedRepresentation orient_into(const Representation& rep, Parity heads) {
  const Bipartition b = bipartition(rep.quiver());
  std::vector<bool> flip;
  for (const Arrow& a : rep.quiver().arrows()) flip.push_back(b.of(a.head) != heads);
  return orient_by(rep, flip);
}

OrientedRepresentation normalize_orientation(const Representation& rep) {
  return orient_into(rep, Parity::Even);
}

Representation orient_like(const Representation& rep, const Quiver& target) {
  const Quiver& q = rep.quiver();
  if (q.vertices() != target.vertices() || q.num_arrows() != target.num_arrows())
    throw Error("QuiverMismatch", "cannot re-orient onto a different quiver");
  std::vector<bool> flip;
  for (Index e = 0; e < q.num_arrows(); ++e) {
    const Arrow& a = q.arrow(e);
    const Arrow& t = target.arrow(e);
    if (a.id != t.id) throw Error("QuiverMismatch", "arrow ids differ");
    if (a.tail == t.tail && a.head == t.head)
      flip.push_back(false);
    else if (a.tail == t.head && a.head == t.tail)
      flip.push_back(true);
    else
      throw Error("QuiverMismatch", "arrow '" + a.id + "' joins different vertices");
  }
  return orient_by(rep, flip).representation;
}

FunctorResult coxeter_functor(const Representation& rep, const Character& chi, Parity parity, double scale,
                              double input_tol) {
  const OrthoscalarReport report = check_orthoscalar(rep, chi, input_tol);
  if (!report.pass) {
    std::ostringstream os;
    os << "input max defect " << report.max_defect << " exceeds " << input_tol;
    throw Error("NotOrthoscalar", os.str());
  }

  const Representation oriented = orient_into(rep, parity).representation;
  const Quiver& q = oriented.quiver();
  const Bipartition b = bipartition(q);
  const DimVector new_dims = coxeter_dim(q, rep.dims(), parity);
  Character new_chi = scale * coxeter_char(q, chi, parity);

  for (Index g : b.members(parity)) {
    if (new_dims(g) < 0)
      throw Error("NegativeReflectedDim", vertex_detail(q, g, "reflected dimension " + std::to_string(new_dims(g))));
    if (rep.dim(g) > 0 && !(chi(g) > 0))
      throw Error("ZeroCharacterAtReflectedVertex", vertex_detail(q, g, "character is zero"));
  }
  // chi' is exact arithmetic on chi, so only rounding is forgiven here
  const double chi_scale = std::max(1.0, chi.cwiseAbs().maxCoeff());
  for (Index h : b.members(opposite(parity))) {
    if (new_dims(h) > 0 && new_chi(h) < -1e-9 * chi_scale) {
      std::ostringstream os;
      os << "output character " << new_chi(h);
      throw Error("NegativeOutputCharacter", vertex_detail(q, h, os.str()));
    }
  }

  QuiverSpec spec = q.spec();
  std::vector<ComplexMatrix> maps(static_cast<std::size_t>(q.num_arrows()));
  for (Index g : b.members(parity)) {
    const std::vector<Index>& in = q.incoming(g);
    Index width = 0;
    for (Index e : in) width += rep.dim(q.arrow(e).tail);
    ComplexMatrix row(rep.dim(g), width);
    for (Index e = 0, col = 0; e < static_cast<Index>(in.size()); ++e) {
      const ComplexMatrix& s = oriented.map(in[static_cast<std::size_t>(e)]);
      row.middleCols(col, s.cols()) = s;
      col += s.cols();
    }
    ComplexMatrix kernel;
    if (rep.dim(g) == 0) {
      kernel = ComplexMatrix::Identity(width, width);
    } else {
      Eigen::JacobiSVD<ComplexMatrix> svd(row, Eigen::ComputeFullV);
      kernel = svd.matrixV().rightCols(new_dims(g));
    }
    const double c = std::sqrt(std::max(0.0, scale * chi(g)));
    for (Index e = 0, offset = 0; e < static_cast<Index>(in.size()); ++e) {
      const Index arrow = in[static_cast<std::size_t>(e)];
      const Index rows = rep.dim(q.arrow(arrow).tail);
      maps[static_cast<std::size_t>(arrow)] = c * kernel.middleRows(offset, rows);
      offset += rows;
      std::swap(spec.arrows[static_cast<std::size_t>(arrow)].tail, spec.arrows[static_cast<std::size_t>(arrow)].head);
    }
  }
  return {Representation(validate_quiver(spec), new_dims, std::move(maps)), std::move(new_chi)};
}

Construction construct_via_functors(const Quiver& q, const DimVector& d, const Character& chi, int depth_limit) {
  validate_dims(q, d, true);
  validate_character(q, chi);
  const RootType type = root_type(q, d);
  if (type.tag != RootTag::Real)
    throw Error("NotRoot", "dimension vector is not a real root (q(d) = " + std::to_string(type.form_value) + ")");
  const TraceSystem sys = edge_trace_system(q, d, chi);
  if (sys.obstruction == TraceObstruction::Balance) throw Error("Infeasible", sys.detail);

  const Index n = q.num_vertices();
  const Bipartition parts = bipartition(q);
  const double chi_scale = std::max(1.0, chi.maxCoeff());
  std::optional<Error> first_obstruction;

  for (int length = 0; length <= depth_limit; ++length) {
    for (Parity first : {Parity::Even, Parity::Odd}) {
      if (length == 0 && first == Parity::Odd) continue;
      std::vector<Parity> chain;
      for (int k = 0; k < length; ++k) chain.push_back(k % 2 == 0 ? first : opposite(first));

      for (Index v = 0; v < n; ++v) {
        std::vector<DimVector> dims{DimVector::Unit(n, v)};
        bool admissible = true;
        for (Parity p : chain) {
          dims.push_back(coxeter_dim(q, dims.back(), p));
          if ((dims.back().array() < 0).any()) {
            admissible = false;
            break;
          }
        }
        if (!admissible || dims.back() != d) continue;

        // Pull the target character back through the involutive transformations.
        std::vector<Character> chis(chain.size() + 1);
        chis.back() = chi;
        for (std::size_t k = chain.size(); k-- > 0;) chis[k] = coxeter_char(q, chis[k + 1], chain[k]);

        std::optional<Error> obstruction;
        if (std::abs(chis[0](v)) > 1e-9 * chi_scale) {
          std::ostringstream os;
          os << "step 0, vertex '" << q.vertex(v) << "': pulled-back character " << chis[0](v) << " is not zero";
          obstruction.emplace("CharacterObstruction", os.str());
        }
        for (std::size_t k = 0; k < chis.size() && !obstruction; ++k) {
          for (Index w = 0; w < n; ++w) {
            if (dims[k](w) > 0 && chis[k](w) < -1e-9 * chi_scale) {
              std::ostringstream os;
              os << "step " << k << ", vertex '" << q.vertex(w) << "': character " << chis[k](w) << " is negative";
              obstruction.emplace("CharacterObstruction", os.str());
              break;
            }
            const bool reflected = k < chain.size() && parts.of(w) == chain[k];
            if (reflected && dims[k](w) > 0 && !(chis[k](w) > 1e-9 * chi_scale)) {
              std::ostringstream os;
              os << "step " << k << ", vertex '" << q.vertex(w) << "': character vanishes at a reflected vertex";
              obstruction.emplace("CharacterObstruction", os.str());
              break;
            }
          }
        }
        if (obstruction) {
          if (!first_obstruction) first_obstruction = obstruction;
          continue;
        }

        Character start = chis[0];
        start(v) = 0.0;
        Representation current = Representation::zero(q, dims[0]);
        Character current_chi = start;
        for (Parity p : chain) {
          FunctorResult step = coxeter_functor(current, current_chi, p);
          current = std::move(step.representation);
          current_chi = std::move(step.character);
        }
        Representation out = orient_like(current, q);
        const OrthoscalarReport check = check_orthoscalar(out, chi, 1e-8);
        if (!check.pass) {
          std::ostringstream os;
          os << "constructed representation has defect " << check.max_defect;
          throw Error("NumericalFailure", os.str());
        }
        return {std::move(out), v, chain};
      }
    }
  }
  if (first_obstruction) throw *first_obstruction;
  throw Error("NoChainFound", "no alternating reflection chain of length <= " + std::to_string(depth_limit) +
                                  " reaches the dimension vector");
}

}  // namespace orthoscalar
