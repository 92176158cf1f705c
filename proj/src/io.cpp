#include "plmorse/io.hpp"

#include "plmorse/error.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace plmorse::io {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(Errc::ParseError, what); }

Rational rational_field(const Json& v, const std::string& where) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  malformed(where + " must be a rational string \"p/q\" or an integer");
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot read '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    malformed("'" + path.string() + "': " + e.what());
  }
}

CellComplex complex_from_json(const Json& doc) {
  if (!doc.is_object()) malformed("complex document must be a JSON object");
  const bool has_cells = doc.contains("cells");
  const bool has_simplices = doc.contains("simplices");
  if (has_cells == has_simplices) malformed("complex document needs exactly one of \"cells\" and \"simplices\"");

  if (has_simplices) {
    const Json& list = doc["simplices"];
    if (!list.is_array()) malformed("\"simplices\" must be an array");
    std::vector<std::vector<long>> simplices;
    for (const Json& s : list) {
      if (!s.is_array() || s.empty()) malformed("each simplex must be a nonempty array of integers");
      std::vector<long> vertices;
      for (const Json& v : s) {
        if (!v.is_number_integer()) malformed("simplex vertices must be integers");
        vertices.push_back(v.get<long>());
      }
      simplices.push_back(std::move(vertices));
    }
    return simplicial_from_vertex_lists(simplices);
  }

  const Json& list = doc["cells"];
  if (!list.is_array()) malformed("\"cells\" must be an array");
  std::vector<RawCell> raw;
  for (const Json& c : list) {
    if (!c.is_object() || !c.contains("id") || !c.contains("dim")) malformed("each cell needs \"id\" and \"dim\"");
    if (!c["id"].is_string()) malformed("cell ids must be strings");
    if (!c["dim"].is_number_integer()) malformed("cell dimensions must be integers");
    RawCell r;
    r.id = c["id"].get<std::string>();
    r.dim = c["dim"].get<int>();
    if (c.contains("label")) {
      if (!c["label"].is_string()) malformed("cell labels must be strings");
      r.label = c["label"].get<std::string>();
    }
    if (c.contains("facets")) {
      if (!c["facets"].is_array()) malformed("\"facets\" of '" + r.id + "' must be an array");
      for (const Json& f : c["facets"]) {
        if (!f.is_array() || f.size() != 2 || !f[0].is_string() || !f[1].is_number_integer())
          malformed("facets of '" + r.id + "' must be [id, sign] pairs");
        r.facets.emplace_back(f[0].get<std::string>(), f[1].get<int>());
      }
    }
    raw.push_back(std::move(r));
  }
  return CellComplex::build(std::move(raw));
}

Json complex_to_json(const CellComplex& complex) {
  Json cells = Json::array();
  for (const RawCell& r : complex.to_raw()) {
    Json facets = Json::array();
    for (const auto& [id, sign] : r.facets) facets.push_back(Json::array({id, sign}));
    Json c = {{"id", r.id}, {"dim", r.dim}, {"facets", facets}};
    if (!r.label.empty()) c["label"] = r.label;
    cells.push_back(std::move(c));
  }
  return Json{{"cells", cells}};
}

MorseFunction morse_from_json(const CellComplex& complex, const Json& doc) {
  if (!doc.is_object() || !doc.contains("values") || !doc["values"].is_object())
    malformed("Morse function document needs a \"values\" object");
  std::map<std::string, Rational> values;
  for (const auto& [id, v] : doc["values"].items()) values[id] = rational_field(v, "value of '" + id + "'");
  return MorseFunction::from_map(complex, values);
}

Json morse_to_json(const CellComplex& complex, const MorseFunction& f) {
  Json values = Json::object();
  for (CellIndex c = 0; c < complex.size(); ++c) values[complex.id(c)] = format_rational(f[c]);
  return Json{{"values", values}};
}

PiecewiseMetric metric_from_json(const Subdivision& s, const Json& doc) {
  if (!doc.is_object()) malformed("metric document must be a JSON object");
  if (doc.contains("default")) {
    if (doc["default"] != "equilateral") malformed("the only default metric is \"equilateral\"");
    if (!doc.contains("grams")) return PiecewiseMetric::equilateral();
  }
  if (!doc.contains("grams") || !doc["grams"].is_object()) malformed("metric document needs \"default\" or \"grams\"");
  std::vector<std::pair<std::string, RatMatrix>> grams;
  for (const auto& [key, rows] : doc["grams"].items()) {
    if (!rows.is_array()) malformed("Gram matrix for '" + key + "' must be an array of rows");
    const Eigen::Index k = static_cast<Eigen::Index>(rows.size());
    RatMatrix g(k, k);
    for (Eigen::Index r = 0; r < k; ++r) {
      if (!rows[r].is_array() || static_cast<Eigen::Index>(rows[r].size()) != k)
        malformed("Gram matrix for '" + key + "' must be square");
      for (Eigen::Index c = 0; c < k; ++c) g(r, c) = rational_field(rows[r][c], "Gram entry of '" + key + "'");
    }
    grams.emplace_back(key, std::move(g));
  }
  return PiecewiseMetric::from_grams(s, grams);
}

Json homology_to_json(const HomologySummary& h) {
  Json groups = Json::array();
  for (const HomologyGroup& g : h.groups) {
    Json torsion = Json::array();
    for (const BigInt& t : g.torsion) torsion.push_back(t.convert_to<long long>());
    groups.push_back({{"degree", g.degree}, {"betti", g.betti}, {"torsion", torsion}});
  }
  return Json{{"H", groups}};
}

Json critical_to_json(const CellComplex& complex, const CriticalReport& report) {
  Json critical = Json::array();
  for (std::size_t d = 0; d < report.critical.size(); ++d) {
    Json ids = Json::array();
    for (CellIndex c : report.critical[d]) ids.push_back(complex.id(c));
    critical.push_back({{"dim", d}, {"cells", ids}});
  }
  Json pairs = Json::array();
  for (const auto& [a, b] : report.pairs) pairs.push_back(Json::array({complex.id(a), complex.id(b)}));
  return Json{{"critical", critical}, {"pairs", pairs}};
}

Json differential_to_json(const CellComplex& complex, const MorseComplexData& data) {
  Json degrees = Json::array();
  for (std::size_t i = 1; i < data.differentials.size(); ++i) {
    Json rows = Json::array(), cols = Json::array(), entries = Json::array();
    for (CellIndex c : data.critical[i - 1]) rows.push_back(complex.id(c));
    for (CellIndex c : data.critical[i]) cols.push_back(complex.id(c));
    const IntMatrix& m = data.differentials[i];
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      Json row = Json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c).convert_to<long long>());
      entries.push_back(std::move(row));
    }
    degrees.push_back({{"degree", i}, {"rows", rows}, {"cols", cols}, {"entries", entries}});
  }
  return Json{{"differentials", degrees}};
}

Json subdivision_to_json(const Subdivision& s) {
  Json vertices = Json::array();
  for (CellIndex v = 0; v < s.vertex_count(); ++v)
    vertices.push_back({{"id", s.base().id(v)}, {"dim", s.vertex_dim(v)}, {"f", format_rational(s.f(v))}});
  Json simplices = Json::array();
  for (int k = 1; k <= s.dim(); ++k) {
    Json list = Json::array();
    for (const Chain& ch : s.simplices(k)) list.push_back(s.key(ch));
    simplices.push_back({{"dim", k}, {"count", s.simplex_count(k)}, {"simplices", list}});
  }
  return Json{{"vertices", vertices}, {"simplices", simplices}};
}

Json flows_to_json(const Subdivision& s, const FlowClassification& flows) {
  Json list = Json::array();
  for (const FacetFlow& ff : flows.facets) {
    const Chain& ch = s.simplices(ff.dim)[ff.simplex];
    Chain facet = ch;
    facet.erase(facet.begin() + static_cast<std::ptrdiff_t>(ff.omitted));
    list.push_back({{"simplex", s.key(ch)},
                    {"facet", s.key(facet)},
                    {"flow", ff.flow == Flow::out_flow ? "out_flow" : "in_flow"}});
  }
  return Json{{"in_flow", flows.count(Flow::in_flow)}, {"out_flow", flows.count(Flow::out_flow)}, {"facets", list}};
}

Json trajectories_to_json(const CellComplex& complex, const std::vector<PLTrajectory>& trajectories) {
  Json list = Json::array();
  for (const PLTrajectory& t : trajectories) {
    Json ids = Json::array();
    for (CellIndex v : t.vertices) ids.push_back(complex.id(v));
    list.push_back({{"vertices", ids}, {"sign", t.sign}});
  }
  return Json{{"trajectories", list}};
}

Json swept_to_json(const Subdivision& s, const SweptComplex& swept) {
  Json cells = Json::array();
  for (CellIndex c : swept.cells) cells.push_back(s.base().id(c));
  Json counts = Json::array();
  for (const auto& level : swept.simplices.by_dim) counts.push_back(level.size());
  return Json{{"origin", s.base().id(swept.origin)}, {"cells", cells}, {"subdivision_simplices", counts}};
}

Json tameify_to_json(const CellComplex& complex, const MorseFunction& result, const std::vector<TameifyStep>& steps) {
  Json list = Json::array();
  for (const TameifyStep& st : steps)
    list.push_back({{"face", complex.id(st.face)},
                    {"coface", complex.id(st.coface)},
                    {"ceiling", complex.id(st.ceiling)},
                    {"old", format_rational(st.old_value)},
                    {"new", format_rational(st.new_value)},
                    {"violations_before", st.violations_before},
                    {"violations_after", st.violations_after}});
  Json out = morse_to_json(complex, result);
  out["steps"] = list;
  return out;
}

std::string gradient_dot(const CellComplex& complex, const GradientField& v) {
  std::ostringstream out;
  out << "digraph gradient {\n";
  for (CellIndex c = 0; c < complex.size(); ++c) out << "  " << quoted(complex.id(c)) << ";\n";
  for (CellIndex c = 0; c < complex.size(); ++c)
    if (v[c])
      out << "  " << quoted(complex.id(c)) << " -> " << quoted(complex.id(v[c]->target)) << " [label=\""
          << (v[c]->sign > 0 ? "+" : "-") << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string flows_dot(const Subdivision& s, const FlowClassification& flows) {
  std::ostringstream out;
  out << "digraph flows {\n";
  for (const FacetFlow& ff : flows.facets) {
    if (ff.flow != Flow::out_flow) continue;
    const Chain& ch = s.simplices(ff.dim)[ff.simplex];
    Chain facet = ch;
    facet.erase(facet.begin() + static_cast<std::ptrdiff_t>(ff.omitted));
    out << "  " << quoted(s.key(facet)) << " -> " << quoted(s.key(ch)) << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string trajectories_dot(const Subdivision& s, const std::vector<PLTrajectory>& trajectories) {
  std::ostringstream out;
  out << "graph trajectories {\n";
  for (CellIndex v = 0; v < s.vertex_count(); ++v)
    out << "  " << quoted(s.base().id(v)) << " [label=" << quoted(s.base().id(v) + " " + format_rational(s.f(v)))
        << "];\n";
  std::set<std::pair<CellIndex, CellIndex>> used;
  for (const PLTrajectory& t : trajectories)
    for (std::size_t l = 1; l < t.vertices.size(); ++l)
      used.insert(std::minmax(t.vertices[l - 1], t.vertices[l]));
  for (const Chain& e : s.simplices(1)) {
    out << "  " << quoted(s.base().id(e[0])) << " -- " << quoted(s.base().id(e[1]));
    if (used.count({e[0], e[1]})) out << " [color=red, penwidth=2]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace plmorse::io
