#include "plmorse/homology.hpp"
#include "plmorse/subdivision.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace plmorse;
using namespace plmorse::testing;

namespace {

RatVector vec(std::initializer_list<Rational> xs) {
  RatVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (const Rational& x : xs) v(k++) = x;
  return v;
}

RatMatrix rmat(std::initializer_list<std::initializer_list<Rational>> rows) {
  RatMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (const Rational& v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

Chain chain(const CellComplex& x, std::initializer_list<const char*> ids) {
  Chain c;
  for (const char* id : ids) c.push_back(x.index_of(id));
  std::sort(c.begin(), c.end());
  return c;
}

Chain vertices_of(const Subdivision& s, const FacetFlow& ff) { return s.simplices(ff.dim)[ff.simplex]; }

Chain facet_of(const Subdivision& s, const FacetFlow& ff) {
  Chain c = vertices_of(s, ff);
  c.erase(c.begin() + static_cast<std::ptrdiff_t>(ff.omitted));
  return c;
}

}  // namespace

TEST_CASE("barycentric subdivision counts chains of the face poset") {
  const CellComplex interval = builtin("interval");
  const Subdivision s = barycentric_subdivide(interval, interval_collapsed(interval));
  CHECK(s.vertex_count() == 3);
  CHECK(s.simplex_count(1) == 2);
  CHECK(s.find(chain(interval, {"a", "e"})));
  CHECK_FALSE(s.find(chain(interval, {"a", "b"})));
  CHECK(s.key(chain(interval, {"a", "e"})) == "a<e");

  const CellComplex t = solid_triangle();
  const Subdivision st = barycentric_subdivide(t, MorseFunction::trivial(t));
  CHECK(st.vertex_count() == 7);
  CHECK(st.simplex_count(1) == 12);
  CHECK(st.simplex_count(2) == 6);
  CHECK(st.maximal_simplices().size() == 6);
  CHECK(st.neighbours(t.index_of("t012")).size() == 6);
  CHECK(thrown([&] { barycentric_subdivide(t, MorseFunction(std::vector<Rational>(3))); }) == Errc::MissingValue);
}

TEST_CASE("vertex values are the cell values") {
  for (const std::string& name : battery_names()) {
    const CellComplex x = builtin(name);
    const MorseFunction f = random_generic_morse(x, 2);
    const Subdivision s = barycentric_subdivide(x, f);
    for (CellIndex c = 0; c < x.size(); ++c) CHECK(s.f(c) == f[c]);
    const Subdivision g = s.with_function(f.negated());
    CHECK(g.simplex_count(x.dim()) == s.simplex_count(x.dim()));
    for (CellIndex c = 0; c < x.size(); ++c) CHECK(g.f(c) == -f[c]);
  }
}

TEST_CASE("X1 is itself a chain complex") {
  for (const char* name : {"interval", "sphere_2", "torus_7", "rp2_6"}) {
    CAPTURE(name);
    const CellComplex x = builtin(name);
    const Subdivision s = barycentric_subdivide(x, MorseFunction::trivial(x));
    const CellComplex x1 = subdivision_complex(s);
    for (int k = 0; k <= x.dim(); ++k) CHECK(x1.count_of_dim(k) == s.simplex_count(k));
    CHECK(x1.euler_characteristic() == x.euler_characteristic());
    CHECK(homology(IntegerChainComplex::cellular(x1)).betti_numbers() ==
          homology(IntegerChainComplex::cellular(x)).betti_numbers());
  }
}

TEST_CASE("ribs") {
  const CellComplex interval = builtin("interval");
  const Subdivision s = barycentric_subdivide(interval, MorseFunction::trivial(interval));
  const SimplexSet r0 = rib(s, 0);
  CHECK(r0.count(0) == 2);
  CHECK(r0.total() == 2);
  CHECK_FALSE(r0.contains(chain(interval, {"e"})));

  const CellComplex t = solid_triangle();
  const Subdivision st = barycentric_subdivide(t, MorseFunction::trivial(t));
  const SimplexSet r1 = rib(st, 1);
  CHECK(r1.count(0) == 6);
  CHECK(r1.count(1) == 6);
  CHECK(r1.count(2) == 0);
  const SimplexSet r2 = rib(st, 2);
  CHECK(r2.count(0) == 7);
  CHECK(r2.count(1) == 12);
  CHECK(r2.count(2) == 6);
  CHECK(thrown([&] { rib(st, 3); }) == Errc::BadDegree);
  CHECK(thrown([&] { rib(st, -1); }) == Errc::BadDegree);

  const SimplexSet induced = induced_simplices(st, t.closure(std::vector<CellIndex>{t.index_of("e01")}));
  CHECK(induced.count(0) == 3);
  CHECK(induced.count(1) == 2);
}

TEST_CASE("simplex gradients") {
  MetricSimplex edge{{0, 1}, rmat({{1}}), vec({1})};
  CHECK(simplex_gradient(edge) == vec({-1}));
  MetricSimplex tri{{0, 1, 2}, rmat({{1, Rational(1, 2)}, {Rational(1, 2), 1}}), vec({1, 1})};
  CHECK(simplex_gradient(tri) == vec({Rational(-2, 3), Rational(-2, 3)}));
  CHECK(barycentric_rates(vec({Rational(-2, 3), Rational(-2, 3)})) ==
        vec({Rational(4, 3), Rational(-2, 3), Rational(-2, 3)}));
  MetricSimplex flat{{0, 1, 2}, tri.gram, vec({0, 0})};
  CHECK(simplex_gradient(flat) == vec({0, 0}));
  MetricSimplex singular{{0, 1, 2}, rmat({{1, 1}, {1, 1}}), vec({1, 0})};
  CHECK(thrown([&] { simplex_gradient(singular); }) == Errc::SingularGram);
  CHECK(positive_definite(tri.gram));
  CHECK_FALSE(positive_definite(singular.gram));
}

TEST_CASE("property: the gradient solves gram * d = -f_diffs") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> small(-9, 9);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = 1 + trial % 4;
    // A^T A + I is positive definite.
    RatMatrix a(k, k);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) a(r, c) = Rational(small(rng), 1 + std::abs(small(rng)));
    MetricSimplex ms;
    ms.gram = a.transpose() * a + RatMatrix::Identity(k, k);
    ms.f_diffs.resize(k);
    for (int r = 0; r < k; ++r) ms.f_diffs(r) = small(rng);
    REQUIRE(positive_definite(ms.gram));
    const RatVector d = simplex_gradient(ms);
    CHECK(RatVector(ms.gram * d) == RatVector(-ms.f_diffs));
  }
}

TEST_CASE("flow classification on the interval") {
  const CellComplex x = builtin("interval");
  const Subdivision s = barycentric_subdivide(x, interval_collapsed(x));
  const FlowClassification flows = classify_flows(s, PiecewiseMetric::equilateral());
  CHECK(flows.facets.size() == 4);
  const Chain ae = chain(x, {"a", "e"});
  for (const FacetFlow& ff : flows.facets) {
    if (vertices_of(s, ff) != ae) continue;
    if (facet_of(s, ff) == chain(x, {"e"})) CHECK(ff.flow == Flow::out_flow);
    if (facet_of(s, ff) == chain(x, {"a"})) CHECK(ff.flow == Flow::in_flow);
  }
  CHECK(flows.count(Flow::in_flow) == 2);
  CHECK(flows.count(Flow::out_flow) == 2);
}

TEST_CASE("degenerate directions are reported") {
  const CellComplex t = solid_triangle();
  // e01 sits at the mean of v0, v1 and t012 in the chain v0 < e01 < t012.
  const Subdivision s = barycentric_subdivide(t, MorseFunction::trivial(t));
  CHECK(thrown([&] { classify_flows(s, PiecewiseMetric::equilateral()); }) == Errc::DegenerateDirection);
}

TEST_CASE("property: in-flow facets hold the lowest vertex, out-flow facets the highest") {
  for (const std::string& name : battery_names()) {
    CAPTURE(name);
    const CellComplex x = builtin(name);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const MorseFunction f = random_generic_morse(x, seed);
      const Subdivision s = barycentric_subdivide(x, f);
      const FlowGeometry geometry = FlowGeometry::build(s, PiecewiseMetric::equilateral());
      const FlowClassification flows = classify_flows(s, geometry);
      const FlowClassification reversed = classify_flows(s.with_function(f.negated()), geometry);
      REQUIRE(flows.facets.size() == reversed.facets.size());
      for (std::size_t k = 0; k < flows.facets.size(); ++k) {
        const FacetFlow& ff = flows.facets[k];
        const Chain simplex = vertices_of(s, ff), facet = facet_of(s, ff);
        const auto by_f = [&](CellIndex a, CellIndex b) { return s.f(a) < s.f(b); };
        const CellIndex lo = *std::min_element(simplex.begin(), simplex.end(), by_f);
        const CellIndex hi = *std::max_element(simplex.begin(), simplex.end(), by_f);
        const bool has_lo = std::find(facet.begin(), facet.end(), lo) != facet.end();
        const bool has_hi = std::find(facet.begin(), facet.end(), hi) != facet.end();
        if (ff.flow == Flow::in_flow) CHECK(has_lo);
        if (ff.flow == Flow::out_flow) CHECK(has_hi);
        CHECK(reversed.facets[k].flow != ff.flow);
      }
    }
  }
}

TEST_CASE("gradient vector set on a fan of three triangles") {
  const CellComplex x = simplicial_from_vertex_lists({{0, 1, 2}, {0, 1, 3}, {0, 1, 4}});
  const MorseFunction f = random_generic_morse(x, 1);
  const Subdivision s = barycentric_subdivide(x, f);
  const PointX1 p{chain(x, {"v0", "e01"}), {Rational(1, 3), Rational(2, 3)}};
  const auto set = gradient_vector_set(s, PiecewiseMetric::equilateral(), p);
  CHECK(set.size() == 4);
  CHECK(directions_distinct(set));

  const auto dual = gradient_vector_set(s.with_function(f.negated()), PiecewiseMetric::equilateral(), p);
  REQUIRE(dual.size() == set.size());
  for (std::size_t k = 0; k < set.size(); ++k) {
    CHECK(dual[k].simplex == set[k].simplex);
    CHECK(dual[k].direction == RatVector(-set[k].direction));
  }

  const auto at_vertex = gradient_vector_set(s, PiecewiseMetric::equilateral(), {chain(x, {"e01"}), {1}});
  // Edges and triangles of X1 through the vertex e01.
  std::size_t expected = 0;
  for (int k = 1; k <= 2; ++k)
    for (const Chain& c : s.simplices(k)) expected += std::binary_search(c.begin(), c.end(), x.index_of("e01"));
  CHECK(at_vertex.size() == expected);

  const auto invalid = [&](PointX1 q) { return thrown([&] { gradient_vector_set(s, PiecewiseMetric::equilateral(), q); }); };
  CHECK(invalid({chain(x, {"v0", "v1"}), {Rational(1, 2), Rational(1, 2)}}) == Errc::InvalidPoint);
  CHECK(invalid({chain(x, {"v0", "e01"}), {Rational(1, 2), Rational(1, 3)}}) == Errc::InvalidPoint);
  CHECK(invalid({chain(x, {"v0", "e01"}), {1, 0}}) == Errc::InvalidPoint);
  CHECK(invalid({chain(x, {"v0", "e01"}), {1}}) == Errc::InvalidPoint);
}

TEST_CASE("metrics from Gram matrices") {
  const CellComplex x = builtin("interval");
  const Subdivision s = barycentric_subdivide(x, interval_collapsed(x));
  const PiecewiseMetric m = PiecewiseMetric::from_grams(s, {{"a<e", rmat({{4}})}});
  CHECK(m.squared_length("a", "e") == 4);
  CHECK(m.squared_length("e", "a") == 4);
  CHECK(m.squared_length("b", "e") == 1);
  CHECK(m.gram(x, chain(x, {"a", "e"})) == rmat({{4}}));
  CHECK(thrown([&] { PiecewiseMetric::from_grams(s, {{"a<b", rmat({{1}})}}); }) == Errc::UnknownCell);
  CHECK(thrown([&] { PiecewiseMetric::from_grams(s, {{"a<e", rmat({{0}})}}); }) == Errc::SingularGram);
  CHECK(thrown([&] { PiecewiseMetric::from_grams(s, {{"a<e", rmat({{1, 0}, {0, 1}})}}); }) ==
        Errc::IncompatibleMetric);

  const CellComplex t = solid_triangle();
  const Subdivision st = barycentric_subdivide(t, MorseFunction::trivial(t));
  const RatMatrix half = rmat({{1, Rational(1, 2)}, {Rational(1, 2), 1}});
  CHECK(thrown([&] {
          PiecewiseMetric::from_grams(st, {{"v0<e01<t012", rmat({{1, 0}, {1, 1}})}});
        }) == Errc::IncompatibleMetric);
  CHECK(thrown([&] {
          PiecewiseMetric::from_grams(st, {{"v0<e01<t012", half}, {"v1<e01<t012", rmat({{1, 0}, {0, 2}})}});
        }) == Errc::IncompatibleMetric);
  CHECK_FALSE(thrown([&] { PiecewiseMetric::from_grams(st, {{"v0<e01<t012", half}, {"v1<e01<t012", half}}); }));
}

TEST_CASE("equilateral metrics are sharp, stretched ones are not") {
  for (const std::string& name : battery_names()) {
    const CellComplex x = builtin(name);
    const Subdivision s = barycentric_subdivide(x, MorseFunction::trivial(x));
    const SharpnessReport r = audit_sharpness(maximal_metric_simplices(s, PiecewiseMetric::equilateral()), 200, 3);
    CHECK(r.failures == 0);
    CHECK(r.sections == (x.dim() >= 2 ? 200u : 0u));
  }
  const MetricSimplex stretched{{0, 1, 2}, rmat({{1, 0}, {0, 100}}), vec({1, 1})};
  const SharpnessReport bad = audit_sharpness({stretched}, 50, 1);
  CHECK(bad.failures > 0);
  REQUIRE_FALSE(bad.witnesses.empty());
  CHECK(bad.witnesses[0].corner == 'a');
  const MetricSimplex vertex{{0}, RatMatrix(0, 0), RatVector(0)};
  CHECK(audit_sharpness({vertex}, 10, 1).failures == 0);
}
