#include "plmorse/io.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace plmorse;
using namespace plmorse::testing;
using io::Json;

namespace {

const std::string fixtures = FIXTURE_DIR;

Json parse(const char* text) { return Json::parse(text); }

}  // namespace

TEST_CASE("rationals") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-7") == -7);
  CHECK(format_rational(Rational(-4, 6)) == "-2/3");
  CHECK(format_rational(Rational(5)) == "5");
  CHECK(thrown([] { parse_rational("1/0"); }) == Errc::ParseError);
  CHECK(thrown([] { parse_rational("x"); }) == Errc::ParseError);
  CHECK(thrown([] { parse_rational(""); }) == Errc::ParseError);
}

TEST_CASE("complexes from JSON") {
  const CellComplex x = io::complex_from_json(io::read_json_file(fixtures + "/interval.json"));
  CHECK(x.size() == 3);
  CHECK(x.incidence(x.index_of("e"), x.index_of("a")) == -1);
  CHECK(io::complex_from_json(io::complex_to_json(x)).to_raw().size() == 3);
  CHECK(io::complex_to_json(io::complex_from_json(io::complex_to_json(x))) == io::complex_to_json(x));

  const CellComplex t = io::complex_from_json(io::read_json_file(fixtures + "/triangle.json"));
  CHECK(t.size() == 7);

  CHECK(thrown([] { io::read_json_file(fixtures + "/no_such_file.json"); }) == Errc::ParseError);
  CHECK(thrown([] { io::read_json_file(fixtures + "/malformed.json"); }) == Errc::ParseError);
  CHECK(thrown([] { io::complex_from_json(io::read_json_file(fixtures + "/duplicate_facet.json")); }) ==
        Errc::DuplicateFacet);
  CHECK(thrown([] { io::complex_from_json(parse(R"({"cells":[], "simplices":[]})")); }) == Errc::ParseError);
  CHECK(thrown([] { io::complex_from_json(parse(R"({})")); }) == Errc::ParseError);
  CHECK(thrown([] { io::complex_from_json(parse(R"({"simplices":[[0,"x"]]})")); }) == Errc::ParseError);
  CHECK(thrown([] { io::complex_from_json(parse(R"({"cells":[{"id":"a"}]})")); }) == Errc::ParseError);
  CHECK(thrown([] { io::complex_from_json(parse(R"({"cells":[{"id":"a","dim":0,"facets":[["b"]]}]})")); }) ==
        Errc::ParseError);
  CHECK(thrown([] { io::complex_from_json(parse(R"({"cells":[]})")); }) == Errc::EmptyInput);
}

TEST_CASE("functions from JSON") {
  const CellComplex x = builtin("interval");
  const MorseFunction f = io::morse_from_json(x, io::read_json_file(fixtures + "/interval_collapsed.json"));
  CHECK(f == interval_collapsed(x));
  CHECK(io::morse_to_json(x, f) == parse(R"({"values":{"a":"0","b":"1","e":"1/2"}})"));
  CHECK(io::morse_from_json(x, io::morse_to_json(x, f)) == f);
  CHECK(thrown([&] { io::morse_from_json(x, parse(R"({"values":{"a":0,"b":1}})")); }) == Errc::MissingValue);
  CHECK(thrown([&] { io::morse_from_json(x, parse(R"({"values":{"a":0,"b":1,"e":0.5}})")); }) == Errc::ParseError);
  CHECK(thrown([&] { io::morse_from_json(x, parse(R"([1,2,3])")); }) == Errc::ParseError);
}

TEST_CASE("metrics from JSON") {
  const CellComplex x = builtin("interval");
  const Subdivision s = barycentric_subdivide(x, interval_collapsed(x));
  const PiecewiseMetric m = io::metric_from_json(s, io::read_json_file(fixtures + "/interval_metric.json"));
  CHECK(m.squared_length("a", "e") == 4);
  CHECK(io::metric_from_json(s, parse(R"({"default":"equilateral"})")).is_equilateral());
  CHECK(thrown([&] { io::metric_from_json(s, io::read_json_file(fixtures + "/singular_metric.json")); }) ==
        Errc::SingularGram);
  CHECK(thrown([&] { io::metric_from_json(s, parse(R"({"default":"round"})")); }) == Errc::ParseError);
  CHECK(thrown([&] { io::metric_from_json(s, parse(R"({"grams":{"a<e":[[1,2]]}})")); }) == Errc::ParseError);
  CHECK(thrown([&] { io::metric_from_json(s, parse(R"({"grams":{"a<b":[[1]]}})")); }) == Errc::UnknownCell);
}

TEST_CASE("report documents") {
  const CellComplex rp2 = builtin("rp2_6");
  const Json h = io::homology_to_json(homology(IntegerChainComplex::cellular(rp2)));
  CHECK(h == parse(R"({"H":[{"degree":0,"betti":1,"torsion":[]},
                            {"degree":1,"betti":0,"torsion":[2]},
                            {"degree":2,"betti":0,"torsion":[]}]})"));

  const CellComplex c = builtin("circle_3");
  const MorseFunction f = circle_collapsed(c);
  const Json crit = io::critical_to_json(c, critical_cells(c, f));
  CHECK(crit["critical"][0]["cells"] == parse(R"(["v0"])"));
  CHECK(crit["critical"][1]["cells"] == parse(R"(["e02"])"));
  CHECK(crit["pairs"].size() == 2);

  const Json d = io::differential_to_json(c, morse_differential(c, f));
  CHECK(d["differentials"][0]["degree"] == 1);
  CHECK(d["differentials"][0]["entries"] == parse(R"([[0]])"));

  const FlowContext ctx = make_flow(c, f);
  const Json ts = io::trajectories_to_json(c, pl_trajectories(ctx, c.index_of("e02"), c.index_of("v0")));
  CHECK(ts["trajectories"].size() == 2);
  CHECK(ts["trajectories"][0]["sign"].get<int>() + ts["trajectories"][1]["sign"].get<int>() == 0);

  const Json sub = io::subdivision_to_json(ctx.subdivision);
  CHECK(sub["vertices"].size() == 6);
  CHECK(sub["simplices"][0]["count"] == 6);

  const Json sw = io::swept_to_json(ctx.subdivision, unstable_complex(ctx, c.index_of("e02")));
  CHECK(sw["origin"] == "e02");
  CHECK(sw["cells"].size() == 6);

  const Json flows = io::flows_to_json(ctx.subdivision, classify_flows(ctx.subdivision, ctx.metric));
  CHECK(flows["in_flow"] == 6);
  CHECK(flows["out_flow"] == 6);
}

TEST_CASE("DOT output") {
  const CellComplex x = builtin("interval");
  const MorseFunction f = interval_collapsed(x);
  const std::string g = io::gradient_dot(x, gradient_field(x, f));
  CHECK(g.find("\"b\" -> \"e\"") != std::string::npos);
  const Subdivision s = barycentric_subdivide(x, f);
  const std::string fl = io::flows_dot(s, classify_flows(s, PiecewiseMetric::equilateral()));
  CHECK(fl.rfind("digraph", 0) == 0);
  CHECK(fl.back() == '\n');
}
