#pragma once

#include <cstdint>
#include <vector>

#include "orthoscalar/quiver.hpp"

namespace orthoscalar {

enum class RootTag { Real, Imaginary, NotRoot };
std::string_view to_string(RootTag t);

struct RootType {
  RootTag tag;
  std::int64_t form_value;
};

/// Simple reflection at `vertex`: d_v -> sum of neighbours - d_v.
DimVector reflect_dim(const Quiver& q, const DimVector& d, Index vertex);

/// True when the vertices with nonzero entries induce a connected subgraph.
bool has_connected_support(const Quiver& q, const DimVector& d);

/// Real: q(d)=1, Imaginary: q(d)<=0, both with connected support.
/// Throws Error("ZeroVector") for d = 0.
RootType root_type(const Quiver& q, const DimVector& d);

/// All positive roots of a Dynkin quiver, sorted lexicographically.
/// Throws Error("NotDynkin").
std::vector<DimVector> positive_roots(const Quiver& q);

/// Primitive positive generator of the radical of the Tits form.
/// Throws Error("NotExtendedDynkin").
DimVector minimal_imaginary_root(const Quiver& q);

/// Simultaneous reflection at every vertex of the given parity.
DimVector coxeter_dim(const Quiver& q, const DimVector& d, Parity parity);

/// Character transformation matching the Coxeter functor (scale t = 1):
/// reflected-parity values are kept, the others become
/// sum of neighbours - own value. An involution for fixed parity.
Character coxeter_char(const Quiver& q, const Character& chi, Parity parity);

/// Real roots with 0 <= d_v <= bound, in lexicographic order.
std::vector<DimVector> real_roots_up_to(const Quiver& q, std::int64_t bound);

}  // namespace orthoscalar
