#include "plmorse/cell_complex.hpp"

#include "plmorse/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace plmorse {

CellComplex CellComplex::build(std::vector<RawCell> raw) {
  if (raw.empty()) throw Error(Errc::EmptyInput, "a complex needs at least one cell");
  std::sort(raw.begin(), raw.end(), [](const RawCell& a, const RawCell& b) {
    return a.dim != b.dim ? a.dim < b.dim : a.id < b.id;
  });

  CellComplex cx;
  const std::size_t n = raw.size();
  for (CellIndex c = 0; c < n; ++c) {
    if (raw[c].dim < 0) throw Error(Errc::DimensionMismatch, "cell '" + raw[c].id + "' has negative dimension");
    if (!cx.index_.emplace(raw[c].id, c).second)
      throw Error(Errc::DuplicateCell, "cell id '" + raw[c].id + "' appears twice");
  }

  const int top = raw.back().dim;
  cx.dim_offset_.assign(top + 2, 0);
  for (const RawCell& r : raw) ++cx.dim_offset_[r.dim + 1];
  std::partial_sum(cx.dim_offset_.begin(), cx.dim_offset_.end(), cx.dim_offset_.begin());

  cx.cells_.resize(n);
  for (CellIndex c = 0; c < n; ++c) {
    Cell& cell = cx.cells_[c];
    cell.id = std::move(raw[c].id);
    cell.dim = raw[c].dim;
    cell.label = std::move(raw[c].label);
    std::set<CellIndex> seen;
    for (const auto& [fid, sign] : raw[c].facets) {
      auto it = cx.index_.find(fid);
      if (it == cx.index_.end())
        throw Error(Errc::DanglingFacet, "cell '" + cell.id + "' names unknown facet '" + fid + "'");
      const CellIndex f = it->second;
      if (raw[f].dim != cell.dim - 1)
        throw Error(Errc::DimensionMismatch, "facet '" + fid + "' of '" + cell.id + "' has dimension " +
                                                 std::to_string(raw[f].dim) + ", expected " +
                                                 std::to_string(cell.dim - 1));
      if (sign != 1 && sign != -1)
        throw Error(Errc::ParseError, "incidence sign of '" + fid + "' in '" + cell.id + "' must be +1 or -1");
      if (!seen.insert(f).second)
        throw Error(Errc::DuplicateFacet, "facet '" + fid + "' repeats in '" + cell.id + "'");
      cell.facets.push_back({f, sign});
    }
    std::sort(cell.facets.begin(), cell.facets.end(),
              [](const Incidence& a, const Incidence& b) { return a.cell < b.cell; });
  }

  cx.cofacets_.assign(n, {});
  for (CellIndex c = 0; c < n; ++c)
    for (const Incidence& f : cx.cells_[c].facets) cx.cofacets_[f.cell].push_back({c, f.sign});

  // Cells are in dimension order, so every facet is closed before its cofaces.
  cx.face_order_.assign(n * n, 0);
  cx.faces_.assign(n, {});
  cx.cofaces_.assign(n, {});
  for (CellIndex c = 0; c < n; ++c) {
    cx.face_order_[c * n + c] = 1;
    for (const Incidence& f : cx.cells_[c].facets) {
      cx.face_order_[f.cell * n + c] = 1;
      for (CellIndex g : cx.faces_[f.cell]) cx.face_order_[g * n + c] = 1;
    }
    for (CellIndex a = 0; a < c; ++a)
      if (cx.face_order_[a * n + c]) cx.faces_[c].push_back(a);
  }
  for (CellIndex c = 0; c < n; ++c)
    for (CellIndex a : cx.faces_[c]) cx.cofaces_[a].push_back(c);

  for (CellIndex c = 0; c < n; ++c) {
    if (cx.cells_[c].dim < 2) continue;
    std::map<CellIndex, int> dd;
    for (const Incidence& f : cx.cells_[c].facets)
      for (const Incidence& g : cx.cells_[f.cell].facets) dd[g.cell] += f.sign * g.sign;
    for (const auto& [g, value] : dd)
      if (value != 0)
        throw Error(Errc::NonSquareZeroBoundary, "boundary of boundary of '" + cx.cells_[c].id +
                                                     "' has coefficient " + std::to_string(value) +
                                                     " on '" + cx.cells_[g].id + "'");
  }
  return cx;
}

std::optional<CellIndex> CellComplex::find(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

CellIndex CellComplex::index_of(std::string_view id) const {
  auto found = find(id);
  if (!found) throw Error(Errc::UnknownCell, "no cell with id '" + std::string(id) + "'");
  return *found;
}

int CellComplex::incidence(CellIndex beta, CellIndex alpha) const {
  const auto& fs = cells_[beta].facets;
  auto it = std::lower_bound(fs.begin(), fs.end(), alpha,
                             [](const Incidence& inc, CellIndex a) { return inc.cell < a; });
  return (it != fs.end() && it->cell == alpha) ? it->sign : 0;
}

std::vector<CellIndex> CellComplex::closure(std::span<const CellIndex> seeds) const {
  std::vector<std::uint8_t> in(size(), 0);
  for (CellIndex s : seeds) {
    in[s] = 1;
    for (CellIndex f : faces_[s]) in[f] = 1;
  }
  std::vector<CellIndex> out;
  for (CellIndex c = 0; c < size(); ++c)
    if (in[c]) out.push_back(c);
  return out;
}

std::int64_t CellComplex::euler_characteristic() const {
  std::int64_t chi = 0;
  for (int d = 0; d <= dim(); ++d)
    chi += (d % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(count_of_dim(d));
  return chi;
}

CellComplex CellComplex::opposite() const {
  std::vector<RawCell> raw;
  raw.reserve(size());
  const int n = dim();
  for (CellIndex c = 0; c < size(); ++c) {
    RawCell r{cells_[c].id, n - cells_[c].dim, {}, cells_[c].label};
    for (const Incidence& up : cofacets_[c]) r.facets.emplace_back(cells_[up.cell].id, up.sign);
    raw.push_back(std::move(r));
  }
  return build(std::move(raw));
}

std::vector<RawCell> CellComplex::to_raw() const {
  std::vector<RawCell> raw;
  for (const Cell& c : cells_) {
    RawCell r{c.id, c.dim, {}, c.label};
    for (const Incidence& f : c.facets) r.facets.emplace_back(cells_[f.cell].id, f.sign);
    raw.push_back(std::move(r));
  }
  return raw;
}

bool ChainVector::is_zero() const {
  return std::all_of(coefficients.begin(), coefficients.end(), [](const auto& kv) { return kv.second == 0; });
}

ChainVector elementary_chain(const CellComplex& complex, CellIndex c, std::int64_t coefficient) {
  ChainVector chain{complex.dim_of(c), {}};
  if (coefficient != 0) chain.coefficients[c] = coefficient;
  return chain;
}

ChainVector boundary(const ChainVector& chain, const CellComplex& complex) {
  ChainVector out{chain.degree - 1, {}};
  for (const auto& [c, coef] : chain.coefficients) {
    if (complex.dim_of(c) != chain.degree)
      throw Error(Errc::DimensionMismatch, "cell '" + complex.id(c) + "' is not of degree " +
                                               std::to_string(chain.degree));
    for (const Incidence& f : complex.facets(c)) out.coefficients[f.cell] += coef * f.sign;
  }
  std::erase_if(out.coefficients, [](const auto& kv) { return kv.second == 0; });
  return out;
}

std::int64_t inner_product(const ChainVector& a, const ChainVector& b) {
  if (a.degree != b.degree) return 0;
  std::int64_t sum = 0;
  for (const auto& [c, coef] : a.coefficients) {
    auto it = b.coefficients.find(c);
    if (it != b.coefficients.end()) sum += coef * it->second;
  }
  return sum;
}

IncidenceMatrix incidence_matrix(const CellComplex& complex, int degree) {
  IncidenceMatrix m;
  m.degree = degree;
  for (CellIndex c : complex.cells_of_dim(degree - 1)) m.rows.push_back(c);
  for (CellIndex c : complex.cells_of_dim(degree)) m.cols.push_back(c);
  m.entries = IntMatrix::Zero(static_cast<Eigen::Index>(m.rows.size()), static_cast<Eigen::Index>(m.cols.size()));
  for (std::size_t j = 0; j < m.cols.size(); ++j)
    for (const Incidence& f : complex.facets(m.cols[j]))
      m.entries(static_cast<Eigen::Index>(complex.rank_in_dim(f.cell)), static_cast<Eigen::Index>(j)) = f.sign;
  return m;
}

std::string simplex_id(const std::vector<long>& sorted_vertices, bool wide_labels) {
  const std::size_t d = sorted_vertices.size() - 1;
  std::string id;
  switch (d) {
    case 0: id = "v"; break;
    case 1: id = "e"; break;
    case 2: id = "t"; break;
    default: id = "s" + std::to_string(d) + "_"; break;
  }
  for (std::size_t l = 0; l < sorted_vertices.size(); ++l) {
    if (wide_labels && l > 0) id += '_';
    id += std::to_string(sorted_vertices[l]);
  }
  return id;
}

CellComplex simplicial_from_vertex_lists(const std::vector<std::vector<long>>& simplices) {
  if (simplices.empty()) throw Error(Errc::EmptyInput, "no simplices given");
  bool wide = false;
  std::set<std::vector<long>> all;
  for (std::vector<long> s : simplices) {
    if (s.empty()) throw Error(Errc::EmptyInput, "empty vertex list");
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw Error(Errc::ParseError, "vertex list repeats a vertex");
    for (long v : s) wide = wide || v < 0 || v > 9;
    const std::size_t k = s.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
      std::vector<long> face;
      for (std::size_t l = 0; l < k; ++l)
        if (mask & (std::uint64_t{1} << l)) face.push_back(s[l]);
      all.insert(std::move(face));
    }
  }

  std::vector<RawCell> raw;
  for (const auto& s : all) {
    RawCell r;
    r.id = simplex_id(s, wide);
    r.dim = static_cast<int>(s.size()) - 1;
    r.label = "[";
    for (std::size_t l = 0; l < s.size(); ++l) r.label += (l ? "," : "") + std::to_string(s[l]);
    r.label += "]";
    if (s.size() > 1) {
      for (std::size_t l = 0; l < s.size(); ++l) {
        std::vector<long> face = s;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(l));
        r.facets.emplace_back(simplex_id(face, wide), l % 2 == 0 ? 1 : -1);
      }
    }
    raw.push_back(std::move(r));
  }
  return CellComplex::build(std::move(raw));
}

namespace {

std::vector<std::vector<long>> boundary_of_simplex(int d) {
  // All (d+1)-subsets of {0, ..., d+1}.
  std::vector<std::vector<long>> out;
  const int verts = d + 2;
  for (int skip = verts - 1; skip >= 0; --skip) {
    std::vector<long> s;
    for (int v = 0; v < verts; ++v)
      if (v != skip) s.push_back(v);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

CellComplex builtin(std::string_view name) {
  if (name == "point") return simplicial_from_vertex_lists({{0}});
  if (name == "interval")
    return CellComplex::build({{"a", 0, {}, "a"}, {"b", 0, {}, "b"}, {"e", 1, {{"b", 1}, {"a", -1}}, "e"}});
  if (name == "circle_3") return simplicial_from_vertex_lists({{0, 1}, {1, 2}, {0, 2}});
  if (name.starts_with("sphere_") && name.size() == 8 && name[7] >= '0' && name[7] <= '4')
    return simplicial_from_vertex_lists(boundary_of_simplex(name[7] - '0'));
  if (name == "torus_7") {
    std::vector<std::vector<long>> t;
    for (long i = 0; i < 7; ++i) {
      t.push_back({i, (i + 1) % 7, (i + 3) % 7});
      t.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return simplicial_from_vertex_lists(t);
  }
  if (name == "rp2_6")
    return simplicial_from_vertex_lists({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1},
                                         {1, 2, 4}, {2, 3, 5}, {3, 4, 1}, {4, 5, 2}, {5, 1, 3}});
  if (name == "klein_bottle") {
    // 3x3 grid on the square; horizontal sides glued straight, vertical
    // sides glued with a flip.
    auto vid = [](long i, long j) {
      i %= 4;
      j %= 4;
      if (j == 3) j = 0;
      if (i == 3) {
        i = 0;
        j = (3 - j) % 3;
      }
      return 3 * i + j;
    };
    std::vector<std::vector<long>> t;
    for (long i = 0; i < 3; ++i)
      for (long j = 0; j < 3; ++j) {
        t.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
        t.push_back({vid(i, j), vid(i, j + 1), vid(i + 1, j + 1)});
      }
    return simplicial_from_vertex_lists(t);
  }
  throw Error(Errc::UnknownName, "no builtin complex named '" + std::string(name) + "'");
}

std::vector<std::string> battery_names() {
  return {"point", "interval", "circle_3", "sphere_2", "sphere_3", "sphere_4", "torus_7", "klein_bottle", "rp2_6"};
}

}  // namespace plmorse
