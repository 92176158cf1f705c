// plmorse: command-line front end for the discrete and piecewise linear
// Morse theory library.
//
// Exit status: 0 when every check passes, 1 when a mathematical check fails
// (the output names a witness), 2 for usage and input errors.

#include "plmorse/discrete_gradient.hpp"
#include "plmorse/error.hpp"
#include "plmorse/homology.hpp"
#include "plmorse/io.hpp"
#include "plmorse/morse_function.hpp"
#include "plmorse/pl_flow.hpp"
#include "plmorse/subdivision.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace {

using namespace plmorse;
using io::Json;

struct RunConfig {
  std::string command;
  std::string complex_path;
  std::string builtin_name;
  std::string morse_path;
  bool random_morse = false;
  bool tame = false;
  std::string metric_path;
  std::uint64_t seed = 0;
  std::size_t samples = 1000;
  std::string format = "table";
  std::string out_path;
  std::string from;
  std::string to;
  std::string vertex;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const char* mark(bool ok) { return ok ? "✓" : "✗"; }

struct Inputs {
  CellComplex complex;
  std::string name;
  MorseFunction f;
  std::string source;
  std::vector<TameifyStep> steps;
};

Inputs load(const RunConfig& cfg, bool force_tame = false) {
  Inputs in;
  if (!cfg.builtin_name.empty()) {
    in.complex = builtin(cfg.builtin_name);
    in.name = cfg.builtin_name;
  } else if (!cfg.complex_path.empty()) {
    in.complex = io::complex_from_json(io::read_json_file(cfg.complex_path));
    in.name = cfg.complex_path;
  } else {
    throw UsageError("one of --complex and --builtin is required");
  }
  if (!cfg.morse_path.empty()) {
    in.f = io::morse_from_json(in.complex, io::read_json_file(cfg.morse_path));
    in.source = cfg.morse_path;
  } else if (cfg.random_morse) {
    in.f = random_generic_morse(in.complex, cfg.seed);
    in.source = "random (seed " + std::to_string(cfg.seed) + ")";
  } else {
    in.f = MorseFunction::trivial(in.complex);
    in.source = "F(cell) = dim(cell)";
  }
  if (cfg.tame || force_tame) {
    in.f = tameify(in.complex, in.f, &in.steps);
    in.source += ", tameified in " + std::to_string(in.steps.size()) + (in.steps.size() == 1 ? " step" : " steps");
  }
  return in;
}

PiecewiseMetric load_metric(const RunConfig& cfg, const Subdivision& s) {
  if (cfg.metric_path.empty()) return PiecewiseMetric::equilateral();
  return io::metric_from_json(s, io::read_json_file(cfg.metric_path));
}

CellIndex lookup(const CellComplex& complex, const std::string& id, const char* flag) {
  if (id.empty()) throw UsageError(std::string(flag) + " is required");
  return complex.index_of(id);
}

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (cfg.format == a) return;
  throw UsageError("format '" + cfg.format + "' is not available for " + cfg.command);
}

std::string header(const Inputs& in) {
  return "complex: " + in.name + " (" + std::to_string(in.complex.size()) + " cells, dim " +
         std::to_string(in.complex.dim()) + ")\nfunction: " + in.source + "\n";
}

std::string ids(const CellComplex& complex, const std::vector<CellIndex>& cells) {
  std::string s;
  for (std::size_t k = 0; k < cells.size(); ++k) s += (k ? " " : "") + complex.id(cells[k]);
  return s.empty() ? "-" : s;
}

std::string betti_tuple(const HomologySummary& h) {
  std::string s = "(";
  const auto b = h.betti_numbers();
  for (std::size_t k = 0; k < b.size(); ++k) s += (k ? "," : "") + std::to_string(b[k]);
  return s + ")";
}

std::string matrix_table(const CellComplex& complex, const MorseComplexData& data, const std::string& symbol) {
  std::ostringstream out;
  for (std::size_t i = 1; i < data.differentials.size(); ++i) {
    const IntMatrix& m = data.differentials[i];
    out << symbol << "_" << i << " (" << m.rows() << "x" << m.cols() << ")\n";
    if (m.size() == 0) continue;
    out << "        ";
    for (CellIndex c : data.critical[i]) out << " " << complex.id(c);
    out << "\n";
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      out << "  " << complex.id(data.critical[i - 1][r]) << ":";
      for (Eigen::Index c = 0; c < m.cols(); ++c) out << " " << m(r, c).str();
      out << "\n";
    }
  }
  return out.str();
}

// Each command writes its report and returns the exit status.
using Command = std::function<int(const RunConfig&, std::ostream&)>;

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  require_format(cfg, {"table", "json"});
  const Inputs in = load(cfg);
  const MorseValidation morse = validate_morse(in.complex, in.f);
  const PairValidation generic = validate_generic(in.complex, in.f);
  const PairValidation tame = validate_tame(in.complex, in.f);
  const bool ok = morse.ok && generic.ok && tame.ok;
  const CellComplex& x = in.complex;

  if (cfg.format == "json") {
    Json viol = Json::array();
    for (const MorseViolation& v : morse.violations)
      viol.push_back({{"cell", x.id(v.cell)}, {"low_cofacets", ids(x, v.low_cofacets)}, {"high_facets", ids(x, v.high_facets)}});
    auto pairs = [&](const PairValidation& p) {
      Json a = Json::array();
      for (const auto& [lo, hi] : p.pairs) a.push_back(Json::array({x.id(lo), x.id(hi)}));
      return a;
    };
    out << Json{{"boundary_squared_zero", true},
                {"morse", morse.ok},
                {"generic", generic.ok},
                {"tame", tame.ok},
                {"morse_violations", viol},
                {"generic_violations", pairs(generic)},
                {"tame_violations", pairs(tame)}}
               .dump(2)
        << "\n";
    return ok ? 0 : 1;
  }
  out << header(in);
  out << "boundary ✓ morse " << mark(morse.ok) << " generic " << mark(generic.ok) << " tame " << mark(tame.ok) << "\n";
  for (const MorseViolation& v : morse.violations) {
    out << "  morse: " << x.id(v.cell);
    if (!v.low_cofacets.empty()) out << " has cofacets with lower or equal value: " << ids(x, v.low_cofacets);
    if (!v.high_facets.empty()) out << " has facets with higher or equal value: " << ids(x, v.high_facets);
    out << "\n";
  }
  for (const auto& [lo, hi] : generic.pairs)
    out << "  generic: " << x.id(lo) << " < " << x.id(hi) << " both have value " << format_rational(in.f[lo]) << "\n";
  for (const auto& [lo, hi] : tame.pairs)
    out << "  tame: " << x.id(lo) << " < " << x.id(hi) << " with " << format_rational(in.f[hi]) << " < "
        << format_rational(in.f[lo]) << "\n";
  return ok ? 0 : 1;
}

int cmd_tameify(const RunConfig& cfg, std::ostream& out) {
  require_format(cfg, {"table", "json"});
  const Inputs in = load(cfg, true);
  const CellComplex& x = in.complex;
  if (cfg.format == "json") {
    out << io::tameify_to_json(x, in.f, in.steps).dump(2) << "\n";
    return 0;
  }
  out << header(in);
  for (const TameifyStep& s : in.steps)
    out << "  " << x.id(s.coface) << ": " << format_rational(s.old_value) << " -> " << format_rational(s.new_value)
        << "  (pair " << x.id(s.face) << " < " << x.id(s.coface) << ", ceiling " << x.id(s.ceiling)
        << ", violations " << s.violations_before << " -> " << s.violations_after << ")\n";
  out << "values:\n";
  for (CellIndex c = 0; c < x.size(); ++c) out << "  " << x.id(c) << " = " << format_rational(in.f[c]) << "\n";
  return 0;
}

int cmd_critical(const RunConfig& cfg, std::ostream& out) {
  require_format(cfg, {"table", "json"});
  const Inputs in = load(cfg);
  const CriticalReport report = critical_cells(in.complex, in.f);
  if (cfg.format == "json") {
    out << io::critical_to_json(in.complex, report).dump(2) << "\n";
    return 0;
  }
  out << header(in);
  for (std::size_t d = 0; d < report.critical.size(); ++d)
    out << "critical dim " << d << ": " << ids(in.complex, report.critical[d]) << "\n";
  for (const auto& [a, b] : report.pairs) out << "pair: " << in.complex.id(a) << " < " << in.complex.id(b) << "\n";
  return 0;
}

int cmd_gradient_field(const RunConfig& cfg, std::ostream& out) {
  require_format(cfg, {"table", "json", "dot"});
  const Inputs in = load(cfg);
  const GradientField v = gradient_field(in.complex, in.f);
  const CellComplex& x = in.complex;
  if (cfg.format == "dot") {
    out << io::gradient_dot(x, v);
    return 0;
  }
  if (cfg.format == "json") {
    Json arrows = Json::array();
    for (CellIndex c = 0; c < x.size(); ++c)
      if (v[c]) arrows.push_back({{"from", x.id(c)}, {"to", x.id(v[c]->target)}, {"sign", v[c]->sign}});
    out << Json{{"arrows", arrows}}.dump(2) << "\n";
    return 0;
  }
  out << header(in);
  for (CellIndex c = 0; c < x.size(); ++c)
    if (v[c]) out << "V(" << x.id(c) << ") = " << (v[c]->sign > 0 ? "+" : "-") << x.id(v[c]->target) << "\n";
  if (v.arrow_count() == 0) out << "V = 0\n";
  return 0;
}

int cmd_morse_complex(const RunConfig& cfg, std::ostream& out) {
  require_format(cfg, {"table", "json"});
  const Inputs in = load(cfg);
  const MorseComplexData data = morse_differential(in.complex, in.f);
  const HomologySummary h = homology(data.chain_complex(in.complex));
  if (cfg.format == "json") {
    Json doc = io::differential_to_json(in.complex, data);
    doc["homology"] = io::homology_to_json(h)["H"];
    out << doc.dump(2) << "\n";
    return 0;
  }
  out << header(in) << matrix_table(in.complex, data, "∂̃") << "∂̃²=0 ✓\nH(ℳ): " << h.to_string() << "\n";
  return 0;
}

int cmd_homology(const RunConfig& cfg, std::ostream& out) {
  require_format(cfg, {"table", "json"});
  const Inputs in = load(cfg);
  const HomologySummary h = homology(IntegerChainComplex::cellular(in.complex));
  if (cfg.format == "json") {
    out << io::homology_to_json(h).dump(2) << "\n";
    return 0;
  }
  out << "complex: " << in.name << " (" << in.complex.size() << " cells, dim " << in.complex.dim() << ")\n";
  out << "H: " << h.to_string() << "\nbetti " << betti_tuple(h) << ", euler characteristic "
      << h.euler_characteristic() << "\n";
  return 0;
}

int cmd_subdivide(const RunConfig& cfg, std::ostream& out) {
  require_format(cfg, {"table", "json"});
  const Inputs in = load(cfg);
  const Subdivision s = barycentric_subdivide(in.complex, in.f);
  if (cfg.format == "json") {
    out << io::subdivision_to_json(s).dump(2) << "\n";
    return 0;
  }
  out << header(in);
  for (int k = 0; k <= s.dim(); ++k) out << k << "-simplices: " << s.simplex_count(k) << "\n";
  for (CellIndex v = 0; v < s.vertex_count(); ++v)
    out << "  vertex " << s.base().id(v) << " (dim " << s.vertex_dim(v) << ") f = " << format_rational(s.f(v)) << "\n";
  return 0;
}

int cmd_audit_metric(const RunConfig& cfg, std::ostream& out) {
  require_format(cfg, {"table", "json"});
  const Inputs in = load(cfg);
  const Subdivision s = barycentric_subdivide(in.complex, in.f);
  const std::vector<MetricSimplex> simplices = maximal_metric_simplices(s, load_metric(cfg, s));
  const SharpnessReport r = audit_sharpness(simplices, cfg.samples, cfg.seed);
  if (cfg.format == "json") {
    Json w = Json::array();
    for (const SharpnessWitness& x : r.witnesses)
      w.push_back({{"simplex", s.key(simplices[x.simplex].vertices)}, {"apex", x.apex}, {"corner", std::string(1, x.corner)}});
    out << Json{{"sections", r.sections}, {"failures", r.failures}, {"witnesses", w}}.dump(2) << "\n";
    return r.failures == 0 ? 0 : 1;
  }
  out << r.failures << " failures / " << r.sections << " sections\n";
  for (const SharpnessWitness& x : r.witnesses)
    out << "  angle at " << x.corner << " is not acute in " << s.key(simplices[x.simplex].vertices) << " (apex "
        << s.base().id(simplices[x.simplex].vertices[x.apex]) << ")\n";
  return r.failures == 0 ? 0 : 1;
}

int cmd_flows(const RunConfig& cfg, std::ostream& out) {
  require_format(cfg, {"table", "json", "dot"});
  const Inputs in = load(cfg);
  const Subdivision s = barycentric_subdivide(in.complex, in.f);
  const FlowClassification flows = classify_flows(s, load_metric(cfg, s));
  if (cfg.format == "dot") {
    out << io::flows_dot(s, flows);
    return 0;
  }
  if (cfg.format == "json") {
    out << io::flows_to_json(s, flows).dump(2) << "\n";
    return 0;
  }
  out << header(in) << "out_flow facets: " << flows.count(Flow::out_flow)
      << "\nin_flow facets: " << flows.count(Flow::in_flow) << "\n";
  for (const FacetFlow& ff : flows.facets) {
    const Chain& ch = s.simplices(ff.dim)[ff.simplex];
    out << "  " << s.key(ch) << " opposite " << s.base().id(ch[ff.omitted]) << ": "
        << (ff.flow == Flow::out_flow ? "out_flow" : "in_flow") << "\n";
  }
  return 0;
}

int cmd_trajectories(const RunConfig& cfg, std::ostream& out) {
  require_format(cfg, {"table", "json", "dot"});
  const Inputs in = load(cfg);
  const Subdivision s = barycentric_subdivide(in.complex, in.f);
  const FlowContext ctx{s, load_metric(cfg, s), false};
  const CellIndex p = lookup(in.complex, cfg.from, "--from");
  const CellIndex q = lookup(in.complex, cfg.to, "--to");
  const std::vector<PLTrajectory> ts = pl_trajectories(ctx, p, q);
  if (cfg.format == "dot") {
    out << io::trajectories_dot(s, ts);
    return 0;
  }
  if (cfg.format == "json") {
    out << io::trajectories_to_json(in.complex, ts).dump(2) << "\n";
    return 0;
  }
  out << header(in) << ts.size() << " trajectories from " << cfg.from << " to " << cfg.to << "\n";
  std::int64_t total = 0;
  for (const PLTrajectory& t : ts) {
    out << "  " << (t.sign > 0 ? "+1" : "-1") << ": " << ids(in.complex, t.vertices) << "\n";
    total += t.sign;
  }
  out << "signed count: " << total << "\n";
  return 0;
}

int cmd_pl_complex(const RunConfig& cfg, std::ostream& out) {
  require_format(cfg, {"table", "json"});
  const Inputs in = load(cfg);
  const Subdivision s = barycentric_subdivide(in.complex, in.f);
  const FlowContext ctx{s, load_metric(cfg, s), false};
  const PLMorseComplexData pl = pl_differential(ctx);
  const HomologySummary h = homology(pl.chain_complex(in.complex));
  if (cfg.format == "json") {
    Json doc = io::differential_to_json(in.complex, pl);
    doc["homology"] = io::homology_to_json(h)["H"];
    out << doc.dump(2) << "\n";
    return 0;
  }
  out << header(in) << matrix_table(in.complex, pl, "d_PL") << "d_PL²=0 ✓ d_PL=∂̃ ✓\nH(ℳ_PL): " << h.to_string()
      << "\n";
  return 0;
}

int swept(const RunConfig& cfg, std::ostream& out, bool stable) {
  require_format(cfg, {"table", "json"});
  const Inputs in = load(cfg);
  const Subdivision s = barycentric_subdivide(in.complex, in.f);
  const FlowContext ctx{s, load_metric(cfg, s), false};
  const CellIndex p = lookup(in.complex, cfg.vertex, "--vertex");
  const SweptComplex sw = stable ? stable_complex(ctx, p) : unstable_complex(ctx, p);
  const bool agrees = stable || sweep_reachability(ctx, p) == sw.cells;
  if (cfg.format == "json") {
    Json doc = io::swept_to_json(s, sw);
    doc["method"] = "proof-closure recursion";
    if (!stable) doc["vertex_sweep_agrees"] = agrees;
    out << doc.dump(2) << "\n";
    return 0;
  }
  out << header(in) << (stable ? "stable" : "unstable") << " complex of " << cfg.vertex << ": "
      << ids(in.complex, sw.cells) << "\n";
  out << "subdivision simplices:";
  for (const auto& level : sw.simplices.by_dim) out << " " << level.size();
  out << "\n";
  out << "method: proof-closure recursion\n";
  if (!stable) out << "vertex sweep agrees: " << (agrees ? "yes" : "no") << "\n";
  return 0;
}

int cmd_pipeline(const RunConfig& cfg, std::ostream& out) {
  require_format(cfg, {"table", "json"});
  const Inputs in = load(cfg, true);
  const CellComplex& x = in.complex;
  const CriticalReport report = critical_cells(x, in.f);
  const HomologySummary cellular = homology(IntegerChainComplex::cellular(x));

  bool square_zero = true;
  MorseComplexData discrete;
  try {
    discrete = morse_differential(x, in.f);
  } catch (const Error& e) {
    if (e.code() != Errc::DifferentialNotSquareZero) throw;
    out << e.what() << "\n";
    square_zero = false;
  }
  bool pl_matches = false;
  std::optional<MorseComplexData> pl;
  std::string pl_failure;
  if (square_zero) {
    try {
      pl = pl_differential(make_flow(x, in.f), false);
      compare_differentials(x, *pl, discrete);
      pl_matches = true;
    } catch (const Error& e) {
      if (e.code() != Errc::MatrixMismatch && e.code() != Errc::DifferentialNotSquareZero) throw;
      pl_failure = e.what();
    }
  }
  const std::optional<HomologySummary> hm =
      square_zero ? std::optional(homology(discrete.chain_complex(x))) : std::nullopt;
  const std::optional<HomologySummary> hpl =
      pl ? std::optional(homology(pl->chain_complex(x))) : std::nullopt;
  const bool h_ok = hm && hpl && compare_homology(*hm, cellular).isomorphic && compare_homology(*hpl, cellular).isomorphic;
  const bool ok = square_zero && pl_matches && h_ok;

  if (cfg.format == "json") {
    Json doc = {{"complex", in.name}, {"function", io::morse_to_json(x, in.f)["values"]}};
    doc["critical"] = io::critical_to_json(x, report)["critical"];
    if (square_zero) doc["discrete_differential"] = io::differential_to_json(x, discrete)["differentials"];
    if (pl) doc["pl_differential"] = io::differential_to_json(x, *pl)["differentials"];
    doc["homology"] = {{"cellular", io::homology_to_json(cellular)["H"]}};
    if (hm) doc["homology"]["morse"] = io::homology_to_json(*hm)["H"];
    if (hpl) doc["homology"]["pl"] = io::homology_to_json(*hpl)["H"];
    doc["verdict"] = {{"square_zero", square_zero}, {"pl_equals_discrete", pl_matches}, {"homology_matches", h_ok}};
    out << doc.dump(2) << "\n";
    return ok ? 0 : 1;
  }
  out << header(in);
  out << "critical cells:";
  for (std::size_t d = 0; d < report.critical.size(); ++d)
    out << " dim" << d << "=" << report.critical[d].size();
  out << "\n";
  for (std::size_t d = 0; d < report.critical.size(); ++d)
    if (!report.critical[d].empty()) out << "  dim " << d << ": " << ids(x, report.critical[d]) << "\n";
  if (square_zero) out << matrix_table(x, discrete, "∂̃");
  if (pl) out << matrix_table(x, *pl, "d_PL");
  if (!pl_failure.empty()) out << pl_failure << "\n";
  out << "H(cellular): " << cellular.to_string() << "\n";
  if (hm) out << "H(ℳ): " << hm->to_string() << "\n";
  if (hpl) out << "H(ℳ_PL): " << hpl->to_string() << "\n";
  out << "verdict: ∂̃²=0 " << mark(square_zero) << ", d_PL=∂̃ " << mark(pl_matches) << ", H matches cellular "
      << mark(h_ok) << " " << betti_tuple(cellular) << "\n";
  return ok ? 0 : 1;
}

int exit_code(Errc code) {
  switch (code) {
    case Errc::ParseError:
    case Errc::UnknownName:
    case Errc::UnknownCell:
    case Errc::MissingValue:
    case Errc::EmptyInput:
    case Errc::InvalidPoint:
    case Errc::BadDegree:
    case Errc::NotCritical:
      return 2;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete and piecewise linear Morse theory on cell complexes"};
  app.require_subcommand(1);
  RunConfig cfg;

  const std::map<std::string, std::pair<std::string, Command>> commands = {
      {"validate", {"check the Morse, generic and tame conditions", cmd_validate}},
      {"tameify", {"make a generic Morse function tame", cmd_tameify}},
      {"critical", {"list critical cells and exceptional pairs", cmd_critical}},
      {"gradient-field", {"print the discrete gradient vector field", cmd_gradient_field}},
      {"morse-complex", {"discrete Morse differential and its homology", cmd_morse_complex}},
      {"homology", {"cellular homology", cmd_homology}},
      {"subdivide", {"barycentric subdivision with vertex values", cmd_subdivide}},
      {"audit-metric", {"sample 2-plane sections for acute angles", cmd_audit_metric}},
      {"flows", {"in/out-flow classification of facets", cmd_flows}},
      {"trajectories", {"PL gradient trajectories between critical vertices", cmd_trajectories}},
      {"pl-complex", {"PL Morse differential and its homology", cmd_pl_complex}},
      {"unstable", {"unstable complex of a critical vertex", [](const RunConfig& c, std::ostream& o) { return swept(c, o, false); }}},
      {"stable", {"stable complex of a critical vertex", [](const RunConfig& c, std::ostream& o) { return swept(c, o, true); }}},
      {"pipeline", {"tameify, both differentials, homology and verdicts", cmd_pipeline}},
  };

  for (const auto& [name, entry] : commands) {
    CLI::App* sub = app.add_subcommand(name, entry.first);
    auto* complex = sub->add_option("--complex", cfg.complex_path, "complex JSON file");
    auto* builtin_opt = sub->add_option("--builtin", cfg.builtin_name, "builtin complex name");
    complex->excludes(builtin_opt);
    auto* morse = sub->add_option("--morse", cfg.morse_path, "Morse function JSON file");
    auto* random = sub->add_flag("--random-morse", cfg.random_morse, "random generic Morse function from --seed");
    morse->excludes(random);
    sub->add_flag("--tame", cfg.tame, "tameify the function before use");
    sub->add_option("--metric", cfg.metric_path, "metric JSON file (default equilateral)");
    sub->add_option("--seed", cfg.seed, "random seed")->default_val(0);
    sub->add_option("--samples", cfg.samples, "sections sampled by audit-metric")->default_val(1000);
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"table", "json", "dot"}));
    sub->add_option("--out", cfg.out_path, "write output to this file");
    sub->add_option("--from", cfg.from, "source critical cell");
    sub->add_option("--to", cfg.to, "target critical cell");
    sub->add_option("--vertex", cfg.vertex, "critical cell for stable/unstable");
    sub->callback([&cfg, name] { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::ostringstream out;
  int status = 0;
  try {
    status = commands.at(cfg.command).second(cfg, out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cout << out.str();
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  }

  if (cfg.out_path.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream file(cfg.out_path);
    if (!file) {
      std::cerr << "error: cannot write '" << cfg.out_path << "'\n";
      return 2;
    }
    file << out.str();
  }
  return status;
}
