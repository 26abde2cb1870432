#include "orthoscalar/quiver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>

#include "orthoscalar/error.hpp"
#include "orthoscalar/exact.hpp"

namespace orthoscalar {

Index Quiver::vertex_index(std::string_view id) const {
  if (auto v = find_vertex(id)) return *v;
  throw Error("UnknownVertex", "unknown vertex '" + std::string(id) + "'");
}

std::optional<Index> Quiver::find_vertex(std::string_view id) const {
  auto it = vertex_lookup_.find(std::string(id));
  if (it == vertex_lookup_.end()) return std::nullopt;
  return it->second;
}

Index Quiver::arrow_index(std::string_view id) const {
  auto it = arrow_lookup_.find(std::string(id));
  if (it == arrow_lookup_.end())
    throw Error("UnknownArrow", "unknown arrow '" + std::string(id) + "'");
  return it->second;
}

std::vector<Index> Quiver::incident(Index a) const {
  std::vector<Index> out = outgoing(a);
  out.insert(out.end(), incoming(a).begin(), incoming(a).end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Index> Quiver::neighbors(Index a) const {
  std::vector<Index> out;
  for (Index e : incident(a)) {
    const Arrow& arr = arrow(e);
    out.push_back(arr.tail == a ? arr.head : arr.tail);
  }
  return out;
}

Index Quiver::degree(Index a) const {
  return static_cast<Index>(outgoing(a).size() + incoming(a).size());
}

Quiver Quiver::with_arrow_reversed(Index a) const {
  QuiverSpec s = spec();
  std::swap(s.arrows[static_cast<std::size_t>(a)].tail, s.arrows[static_cast<std::size_t>(a)].head);
  return validate_quiver(s);
}

QuiverSpec Quiver::spec() const {
  QuiverSpec s;
  s.vertices = vertices_;
  for (const Arrow& a : arrows_) s.arrows.push_back({a.id, vertex(a.tail), vertex(a.head)});
  return s;
}

bool operator==(const Quiver& x, const Quiver& y) {
  if (x.vertices_ != y.vertices_ || x.arrows_.size() != y.arrows_.size()) return false;
  for (std::size_t i = 0; i < x.arrows_.size(); ++i) {
    const Arrow& a = x.arrows_[i];
    const Arrow& b = y.arrows_[i];
    if (a.id != b.id || a.tail != b.tail || a.head != b.head) return false;
  }
  return true;
}

Quiver validate_quiver(const QuiverSpec& spec) {
  Quiver q;
  if (spec.vertices.empty()) throw Error("NotATree", "quiver has no vertices");
  for (const std::string& v : spec.vertices) {
    if (!q.vertex_lookup_.emplace(v, static_cast<Index>(q.vertices_.size())).second)
      throw Error("DuplicateId", "duplicate vertex id '" + v + "'");
    q.vertices_.push_back(v);
  }
  q.outgoing_.assign(spec.vertices.size(), {});
  q.incoming_.assign(spec.vertices.size(), {});

  std::set<std::pair<Index, Index>> edges;
  for (const ArrowSpec& a : spec.arrows) {
    if (!q.arrow_lookup_.emplace(a.id, static_cast<Index>(q.arrows_.size())).second)
      throw Error("DuplicateId", "duplicate arrow id '" + a.id + "'");
    auto tail = q.find_vertex(a.tail);
    auto head = q.find_vertex(a.head);
    if (!tail) throw Error("UnknownVertex", "arrow '" + a.id + "' has unknown tail '" + a.tail + "'");
    if (!head) throw Error("UnknownVertex", "arrow '" + a.id + "' has unknown head '" + a.head + "'");
    if (*tail == *head) throw Error("SelfLoop", "arrow '" + a.id + "' is a loop at '" + a.tail + "'");
    if (!edges.emplace(std::min(*tail, *head), std::max(*tail, *head)).second)
      throw Error("NotATree", "arrow '" + a.id + "' is parallel to another arrow between '" +
                                  a.tail + "' and '" + a.head + "'");
    const Index idx = static_cast<Index>(q.arrows_.size());
    q.arrows_.push_back({a.id, *tail, *head});
    q.outgoing_[static_cast<std::size_t>(*tail)].push_back(idx);
    q.incoming_[static_cast<std::size_t>(*head)].push_back(idx);
  }

  // Union-find detects the first arrow closing a cycle.
  std::vector<Index> parent(spec.vertices.size());
  std::iota(parent.begin(), parent.end(), Index{0});
  auto find = [&](Index x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const Arrow& a : q.arrows_) {
    Index ra = find(a.tail), rb = find(a.head);
    if (ra == rb) throw Error("NotATree", "arrow '" + a.id + "' closes a cycle");
    parent[static_cast<std::size_t>(ra)] = rb;
  }
  for (Index v = 0; v < q.num_vertices(); ++v) {
    if (find(v) != find(0))
      throw Error("NotATree", "vertex '" + q.vertex(v) + "' is disconnected from '" + q.vertex(0) + "'");
  }
  return q;
}

Parity opposite(Parity p) { return p == Parity::Even ? Parity::Odd : Parity::Even; }

std::string_view to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

Parity parse_parity(std::string_view s) {
  if (s == "even") return Parity::Even;
  if (s == "odd") return Parity::Odd;
  throw Error("InvalidParity", "parity must be 'even' or 'odd', got '" + std::string(s) + "'");
}

Bipartition bipartition(const Quiver& q) {
  const auto& names = q.vertices();
  const Index root = std::min_element(names.begin(), names.end()) - names.begin();
  Bipartition b;
  b.parity.assign(names.size(), Parity::Even);
  std::vector<bool> seen(names.size(), false);
  std::deque<Index> queue{root};
  seen[static_cast<std::size_t>(root)] = true;
  while (!queue.empty()) {
    Index v = queue.front();
    queue.pop_front();
    for (Index w : q.neighbors(v)) {
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = true;
      b.parity[static_cast<std::size_t>(w)] = opposite(b.of(v));
      queue.push_back(w);
    }
  }
  for (Index v = 0; v < q.num_vertices(); ++v)
    (b.of(v) == Parity::Even ? b.even : b.odd).push_back(v);
  return b;
}

IntMatrix symmetrized_form(const Quiver& q) {
  const Index n = q.num_vertices();
  IntMatrix m = 2 * IntMatrix::Identity(n, n);
  for (const Arrow& a : q.arrows()) {
    m(a.tail, a.head) = -1;
    m(a.head, a.tail) = -1;
  }
  return m;
}

std::int64_t tits_form(const Quiver& q, const DimVector& d) {
  if (d.size() != q.num_vertices())
    throw Error("InvalidDims", "dimension vector has wrong length");
  std::int64_t value = d.squaredNorm();
  for (const Arrow& a : q.arrows()) value -= d(a.tail) * d(a.head);
  return value;
}

std::string_view to_string(GraphTag t) {
  switch (t) {
    case GraphTag::Dynkin: return "Dynkin";
    case GraphTag::ExtendedDynkin: return "ExtendedDynkin";
    case GraphTag::Wild: return "Wild";
  }
  return "Wild";
}

namespace {

// Number of vertices on the branch starting at `start`, walking away from `from`.
// Returns nullopt if the branch forks.
std::optional<Index> arm_length(const Quiver& q, Index from, Index start) {
  Index len = 1;
  Index prev = from, cur = start;
  while (true) {
    const auto nb = q.neighbors(cur);
    if (nb.size() == 1) return len;
    if (nb.size() > 2) return std::nullopt;
    Index next = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = next;
    ++len;
  }
}

}  // namespace

std::optional<std::string> shape_name(const Quiver& q) {
  const Index n = q.num_vertices();
  std::vector<Index> branch;  // vertices of degree >= 3
  for (Index v = 0; v < n; ++v)
    if (q.degree(v) >= 3) branch.push_back(v);

  if (branch.empty()) return "A" + std::to_string(n);

  if (branch.size() == 1) {
    const Index c = branch[0];
    std::vector<Index> arms;
    for (Index w : q.neighbors(c)) arms.push_back(*arm_length(q, c, w));
    std::sort(arms.begin(), arms.end());
    if (arms == std::vector<Index>{1, 1, 1, 1}) return "D4~";
    if (arms.size() != 3) return std::nullopt;
    if (arms[0] == 1 && arms[1] == 1) return "D" + std::to_string(n);
    if (arms == std::vector<Index>{1, 2, 2}) return "E6";
    if (arms == std::vector<Index>{1, 2, 3}) return "E7";
    if (arms == std::vector<Index>{1, 2, 4}) return "E8";
    if (arms == std::vector<Index>{2, 2, 2}) return "E6~";
    if (arms == std::vector<Index>{1, 3, 3}) return "E7~";
    if (arms == std::vector<Index>{1, 2, 5}) return "E8~";
    return std::nullopt;
  }

  if (branch.size() == 2) {
    for (Index c : branch) {
      if (q.degree(c) != 3) return std::nullopt;
      Index leaves = 0;
      for (Index w : q.neighbors(c))
        if (q.degree(w) == 1) ++leaves;
      if (leaves != 2) return std::nullopt;
    }
    return "D" + std::to_string(n - 1) + "~";
  }
  return std::nullopt;
}

GraphClass classify(const Quiver& q) {
  GraphClass result;
  result.minors = leading_principal_minors(symmetrized_form(q));
  const std::size_t n = result.minors.size();
  const bool proper_positive =
      std::all_of(result.minors.begin(), result.minors.end() - 1, [](std::int64_t m) { return m > 0; });
  if (proper_positive && result.minors.back() > 0)
    result.tag = GraphTag::Dynkin;
  else if (proper_positive && result.minors.back() == 0 && n > 1)
    result.tag = GraphTag::ExtendedDynkin;
  else
    result.tag = GraphTag::Wild;
  if (result.tag != GraphTag::Wild) result.name = shape_name(q);
  return result;
}

void validate_character(const Quiver& q, const Character& chi) {
  if (chi.size() != q.num_vertices())
    throw Error("InvalidCharacter", "character has " + std::to_string(chi.size()) +
                                        " entries, quiver has " + std::to_string(q.num_vertices()) +
                                        " vertices");
  bool positive = false;
  for (Index v = 0; v < chi.size(); ++v) {
    if (!std::isfinite(chi(v)) || chi(v) < 0)
      throw Error("InvalidCharacter", "character value at '" + q.vertex(v) + "' is not a finite nonnegative number");
    positive = positive || chi(v) > 0;
  }
  if (!positive) throw Error("InvalidCharacter", "character is identically zero");
}

void validate_dims(const Quiver& q, const DimVector& d, bool require_nonzero) {
  if (d.size() != q.num_vertices())
    throw Error("InvalidDims", "dimension vector has " + std::to_string(d.size()) +
                                   " entries, quiver has " + std::to_string(q.num_vertices()) +
                                   " vertices");
  for (Index v = 0; v < d.size(); ++v)
    if (d(v) < 0) throw Error("InvalidDims", "negative dimension at '" + q.vertex(v) + "'");
  if (require_nonzero && d.isZero()) throw Error("InvalidDims", "dimension vector is zero");
}

}  // namespace orthoscalar
