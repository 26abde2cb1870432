#include "doctest.h"
#include "orthoscalar/error.hpp"
#include "test_support.hpp"

using namespace testing;

namespace {

Representation scalar_a2(Complex s) { return Representation(path(2), dims({1, 1}), {ComplexMatrix::Constant(1, 1, s)}); }

}  // namespace

TEST_CASE("objective examples") {
  CHECK(objective(scalar_a2(1.0), chi({1, 1})) == 0.0);
  CHECK(objective(scalar_a2(1.0), chi({1, 2})) == doctest::Approx(1.0));
  // zero maps: sum over vertices of chi^2 d
  const Character c = chi({2, 1, 0.5, 3, 1});
  const DimVector d = dims({2, 1, 1, 1, 1});
  double expected = 0;
  for (Index v = 0; v < 5; ++v) expected += c(v) * c(v) * static_cast<double>(d(v));
  CHECK(objective(Representation::zero(star(4), d), c) == doctest::Approx(expected));
  CHECK(objective(frame_rep(), chi({2, 1, 1, 1, 1})) < 1e-28);
}

TEST_CASE("gradient examples") {
  for (double s : {0.0, 0.5, 1.0, -2.0}) {
    const auto g = gradient(scalar_a2(s), chi({0, 0}));
    CHECK(g[0](0, 0).real() == doctest::Approx(8 * s * s * s));
    CHECK(g[0](0, 0).imag() == 0.0);
  }
  for (const auto& g : gradient(frame_rep(), chi({2, 1, 1, 1, 1}))) CHECK(g.norm() < 1e-14);
}

TEST_CASE("gradient matches finite differences") {
  std::mt19937_64 rng(2024);
  const std::vector<std::pair<Quiver, DimVector>> cases{
      {path(3), dims({2, 3, 1})}, {star(4), dims({2, 1, 1, 1, 1})}, {tshape(1, 2, 2), dims({3, 1, 2, 1, 2, 1})}};
  for (int k = 0; k < 100; ++k) {
    const auto& [q, d] = cases[static_cast<std::size_t>(k) % cases.size()];
    const Representation r = random_representation(q, d, static_cast<std::uint64_t>(k));
    Character c(q.num_vertices());
    std::uniform_real_distribution<double> uni(0.0, 3.0);
    for (Index v = 0; v < c.size(); ++v) c(v) = uni(rng);
    const double err = gradient_relative_error(gradient(r, c), finite_difference_gradient(r, c));
    CHECK(err < 1e-6);
    CHECK(gradient_check(r, c) < 1e-6);
  }
}

TEST_CASE("solve examples") {
  SUBCASE("frame dimension vector") {
    const SolveResult r = solve(star(4), dims({2, 1, 1, 1, 1}), chi({2, 1, 1, 1, 1}));
    REQUIRE(r.status == SolveStatus::Solved);
    CHECK(r.max_defect <= 1e-8);
    CHECK(check_orthoscalar(*r.representation, chi({2, 1, 1, 1, 1}), 1e-8).pass);
  }
  SUBCASE("unbalanced character is infeasible") {
    const SolveResult r = solve(path(2), dims({1, 1}), chi({1, 2}));
    CHECK(r.status == SolveStatus::Infeasible);
    CHECK(!r.representation.has_value());
    CHECK(r.traces.obstruction == TraceObstruction::Balance);
  }
  SUBCASE("thin star is unique up to unitary equivalence") {
    const Character c = chi({4, 1, 1, 1, 1});
    const SolveResult r = solve(star(4), dims({1, 1, 1, 1, 1}), c);
    REQUIRE(r.status == SolveStatus::Solved);
    CHECK(unitary_equivalent(*r.representation, scalar_star_rep(c), 1e-7).equivalent);
  }
  SUBCASE("bad options") {
    SolveOptions o;
    o.restarts = 0;
    CHECK_THROWS_AS(solve(path(2), dims({1, 1}), chi({1, 1}), o), Error);
  }
}

TEST_CASE("objective trace is monotone and runs are deterministic") {
  SolveOptions o;
  o.seed = 11;
  o.record_trace = true;
  const Character c = chi({2, 1, 1, 1, 1});
  const SolveResult a = solve(star(4), dims({2, 1, 1, 1, 1}), c, o);
  REQUIRE(a.objective_trace.size() >= 2);
  for (std::size_t i = 1; i < a.objective_trace.size(); ++i) CHECK(a.objective_trace[i] <= a.objective_trace[i - 1]);
  CHECK(a.objective_trace.back() == a.objective);

  const SolveResult b = solve(star(4), dims({2, 1, 1, 1, 1}), c, o);
  CHECK(a.status == b.status);
  CHECK(a.iterations == b.iterations);
  CHECK(a.restart == b.restart);
  for (Index e = 0; e < 4; ++e) CHECK(a.representation->map(e) == b.representation->map(e));
}

TEST_CASE("solutions satisfy the trace system") {
  std::mt19937_64 rng(77);
  const Quiver q = star(4);
  const DimVector d = dims({2, 1, 1, 1, 1});
  for (int k = 0; k < 5; ++k) {
    const Character c = random_balanced_character(q, d, 0, rng);
    SolveOptions o;
    o.seed = static_cast<std::uint64_t>(k);
    const SolveResult r = solve(q, d, c, o);
    if (r.status != SolveStatus::Solved) continue;
    for (Index e = 0; e < 4; ++e)
      CHECK(std::abs(r.representation->map(e).squaredNorm() - r.traces.traces(e)) < 1e-6);
  }
}
