#include "plmorse/discrete_gradient.hpp"
#include "plmorse/homology.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace plmorse;
using namespace plmorse::testing;

namespace {

IntMatrix mat(std::initializer_list<std::initializer_list<int>> rows) {
  IntMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (int v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

std::vector<BigInt> big(std::initializer_list<int> xs) { return {xs.begin(), xs.end()}; }

HomologySummary cellular(const std::string& name) { return homology(IntegerChainComplex::cellular(builtin(name))); }

}  // namespace

TEST_CASE("Smith normal form of small matrices") {
  const auto s = smith_normal_form<BigInt>(mat({{2, 0}, {0, 3}}));
  CHECK(s.rank == 2);
  CHECK(s.factors == big({1, 6}));
  CHECK(smith_normal_form<BigInt>(IntMatrix::Zero(3, 3)).rank == 0);
  CHECK(smith_normal_form<BigInt>(IntMatrix::Zero(3, 3)).factors.empty());
  CHECK(smith_normal_form<BigInt>(mat({{1}})).factors == big({1}));
  CHECK(smith_normal_form<BigInt>(mat({{4, 6}, {6, 9}})).factors == big({1}));
  CHECK(smith_normal_form<BigInt>(mat({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}})).factors == big({2, 6, 12}));
}

TEST_CASE("property: Smith form is invariant under unimodular changes of basis") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 5), cols = 1 + static_cast<int>(rng() % 5);
    const IntMatrix m = random_int_matrix(rng, rows, cols, 6);
    const IntMatrix p = random_unimodular(rng, rows, 12), q = random_unimodular(rng, cols, 12);
    const auto a = smith_normal_form<BigInt>(m);
    const auto b = smith_normal_form<BigInt>(IntMatrix(p * m * q));
    CHECK(a.rank == b.rank);
    CHECK(a.factors == b.factors);
    for (std::size_t k = 1; k < a.factors.size(); ++k) CHECK(a.factors[k] % a.factors[k - 1] == 0);
  }
}

TEST_CASE("cellular homology of the battery") {
  CHECK(cellular("point").betti_numbers() == std::vector<std::int64_t>{1});
  CHECK(cellular("interval").betti_numbers() == std::vector<std::int64_t>{1, 0});
  CHECK(cellular("circle_3").betti_numbers() == std::vector<std::int64_t>{1, 1});
  CHECK(cellular("sphere_2").betti_numbers() == std::vector<std::int64_t>{1, 0, 1});
  CHECK(cellular("sphere_3").betti_numbers() == std::vector<std::int64_t>{1, 0, 0, 1});
  CHECK(cellular("sphere_4").betti_numbers() == std::vector<std::int64_t>{1, 0, 0, 0, 1});
  CHECK(cellular("torus_7").betti_numbers() == std::vector<std::int64_t>{1, 2, 1});

  const HomologySummary rp2 = cellular("rp2_6");
  CHECK(rp2.betti_numbers() == std::vector<std::int64_t>{1, 0, 0});
  CHECK(rp2.group(1).torsion == big({2}));
  CHECK(rp2.to_string() == "ℤ, ℤ/2, 0");

  const HomologySummary klein = cellular("klein_bottle");
  CHECK(klein.betti_numbers() == std::vector<std::int64_t>{1, 1, 0});
  CHECK(klein.group(1).torsion == big({2}));
  CHECK(klein.to_string() == "ℤ, ℤ⊕ℤ/2, 0");
  CHECK(cellular("sphere_2").group(7) == HomologyGroup{7, 0, {}});
}

TEST_CASE("property: homology Euler characteristic equals the cell count one") {
  for (const std::string& name : battery_names()) {
    CAPTURE(name);
    CHECK(cellular(name).euler_characteristic() == builtin(name).euler_characteristic());
  }
}

TEST_CASE("comparing homology of complexes") {
  const CellComplex s2 = builtin("sphere_2");
  const MorseComplexData triv = morse_differential(s2, MorseFunction::trivial(s2));
  CHECK(complexes_isomorphic_in_homology(IntegerChainComplex::cellular(s2), triv.chain_complex(s2)).isomorphic);

  const CellComplex interval = builtin("interval");
  const MorseComplexData collapsed = morse_differential(interval, interval_collapsed(interval));
  CHECK(complexes_isomorphic_in_homology(IntegerChainComplex::cellular(builtin("point")),
                                         collapsed.chain_complex(interval))
            .isomorphic);

  const HomologyComparison c = compare_homology(cellular("circle_3"), cellular("point"));
  CHECK_FALSE(c.isomorphic);
  CHECK(c.mismatched_degrees == std::vector<int>{1});
}

TEST_CASE("chain complex validation") {
  IntegerChainComplex c;
  c.basis = {{"a"}, {"e"}, {"t"}};
  c.differentials = {IntMatrix(0, 1), mat({{1}}), mat({{1}})};
  CHECK(thrown([&] { validate_chain_complex(c); }) == Errc::NotAComplex);
  c.differentials[2] = mat({{0}});
  CHECK_FALSE(thrown([&] { validate_chain_complex(c); }));
  c.differentials[2] = mat({{1, 0}});
  CHECK(thrown([&] { validate_chain_complex(c); }) == Errc::NotAComplex);
}
