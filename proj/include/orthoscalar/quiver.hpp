#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace orthoscalar {

using Index = Eigen::Index;

/// Nonnegative integer per vertex, in vertex declaration order.
using DimVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// Real weight per vertex, in vertex declaration order. A proper character is
/// nonnegative and not identically zero; intermediate values produced by the
/// Coxeter transformation may be negative.
using Character = Eigen::VectorXd;

/// Arrow as written in an input file: endpoints referenced by vertex id.
struct ArrowSpec {
  std::string id;
  std::string tail;
  std::string head;
};

/// Unvalidated quiver description.
struct QuiverSpec {
  std::vector<std::string> vertices;
  std::vector<ArrowSpec> arrows;
};

/// Validated arrow: endpoints are vertex indices.
struct Arrow {
  std::string id;
  Index tail;
  Index head;
};

/// A finite quiver whose underlying graph is a tree. Immutable once built.
class Quiver {
 public:
  Index num_vertices() const { return static_cast<Index>(vertices_.size()); }
  Index num_arrows() const { return static_cast<Index>(arrows_.size()); }

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::string& vertex(Index v) const { return vertices_[static_cast<std::size_t>(v)]; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(Index a) const { return arrows_[static_cast<std::size_t>(a)]; }

  /// Throws Error("UnknownVertex") when absent.
  Index vertex_index(std::string_view id) const;
  std::optional<Index> find_vertex(std::string_view id) const;
  /// Throws Error("UnknownArrow") when absent.
  Index arrow_index(std::string_view id) const;

  /// Arrows with tail a.
  const std::vector<Index>& outgoing(Index a) const { return outgoing_[static_cast<std::size_t>(a)]; }
  /// Arrows with head a.
  const std::vector<Index>& incoming(Index a) const { return incoming_[static_cast<std::size_t>(a)]; }
  /// Arrows touching a, in arrow order.
  std::vector<Index> incident(Index a) const;
  std::vector<Index> neighbors(Index a) const;
  Index degree(Index a) const;

  /// Same quiver with one arrow's orientation swapped (id kept).
  Quiver with_arrow_reversed(Index a) const;

  QuiverSpec spec() const;

  friend bool operator==(const Quiver& x, const Quiver& y);

 private:
  friend Quiver validate_quiver(const QuiverSpec& spec);

  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::unordered_map<std::string, Index> vertex_lookup_;
  std::unordered_map<std::string, Index> arrow_lookup_;
  std::vector<std::vector<Index>> outgoing_;
  std::vector<std::vector<Index>> incoming_;
};

/// Checks the tree, loop and uniqueness invariants and builds the index
/// structures. Errors: NotATree, SelfLoop, DuplicateId, UnknownVertex.
Quiver validate_quiver(const QuiverSpec& spec);

enum class Parity { Even, Odd };

Parity opposite(Parity p);
std::string_view to_string(Parity p);
/// Accepts "even" / "odd"; throws Error("InvalidParity") otherwise.
Parity parse_parity(std::string_view s);

/// Two-coloring of the tree. The lexicographically smallest vertex id is even.
struct Bipartition {
  std::vector<Parity> parity;  // per vertex
  std::vector<Index> even;
  std::vector<Index> odd;

  Parity of(Index v) const { return parity[static_cast<std::size_t>(v)]; }
  const std::vector<Index>& members(Parity p) const { return p == Parity::Even ? even : odd; }
};

Bipartition bipartition(const Quiver& q);

/// Symmetrized Tits form matrix: 2 on the diagonal, -1 for adjacent vertices.
Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> symmetrized_form(const Quiver& q);

/// q(d) = sum_v d_v^2 - sum_arrows d_tail d_head, exact.
std::int64_t tits_form(const Quiver& q, const DimVector& d);

enum class GraphTag { Dynkin, ExtendedDynkin, Wild };
std::string_view to_string(GraphTag t);

struct GraphClass {
  GraphTag tag;
  std::optional<std::string> name;       // "A3", "D4~", "E8~", ...
  std::vector<std::int64_t> minors;      // leading principal minors, exact
};

/// Dynkin iff every leading principal minor is positive; extended Dynkin iff
/// the first n-1 are positive and the determinant vanishes (on a connected
/// graph this is exactly "semidefinite with one-dimensional radical").
GraphClass classify(const Quiver& q);

/// Dynkin-type name from the tree shape alone, if it has one.
std::optional<std::string> shape_name(const Quiver& q);

/// Validation helpers for per-vertex data. Throw InvalidCharacter / InvalidDims.
void validate_character(const Quiver& q, const Character& chi);
void validate_dims(const Quiver& q, const DimVector& d, bool require_nonzero = false);

}  // namespace orthoscalar
