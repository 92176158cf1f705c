#include "plmorse/subdivision.hpp"

#include "plmorse/error.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace plmorse {

Subdivision barycentric_subdivide(const CellComplex& complex, const MorseFunction& f) {
  return barycentric_subdivide(std::make_shared<const CellComplex>(complex), f);
}

Subdivision barycentric_subdivide(std::shared_ptr<const CellComplex> complex, const MorseFunction& f) {
  if (f.size() != complex->size()) throw Error(Errc::MissingValue, "function is not defined on every cell");
  auto structure = std::make_shared<Subdivision::Structure>();
  const int n = complex->dim();
  structure->by_dim.assign(std::max(n + 1, 0), {});

  // Chains with top element c, built from the chains of its faces.
  std::vector<std::vector<Chain>> ending(complex->size());
  for (CellIndex c = 0; c < complex->size(); ++c) {
    ending[c].push_back({c});
    for (CellIndex a : complex->faces(c))
      for (const Chain& ch : ending[a]) {
        Chain longer = ch;
        longer.push_back(c);
        ending[c].push_back(std::move(longer));
      }
    for (const Chain& ch : ending[c]) structure->by_dim[ch.size() - 1].push_back(ch);
  }
  structure->index.resize(structure->by_dim.size());
  for (std::size_t k = 0; k < structure->by_dim.size(); ++k) {
    std::sort(structure->by_dim[k].begin(), structure->by_dim[k].end());
    for (std::size_t j = 0; j < structure->by_dim[k].size(); ++j) structure->index[k][structure->by_dim[k][j]] = j;
  }

  Subdivision s;
  s.base_ = std::move(complex);
  s.structure_ = std::move(structure);
  s.f_ = f;
  return s;
}

Subdivision Subdivision::with_function(MorseFunction f) const {
  if (f.size() != base_->size()) throw Error(Errc::MissingValue, "function is not defined on every cell");
  Subdivision s = *this;
  s.f_ = std::move(f);
  return s;
}

std::span<const Chain> Subdivision::simplices(int k) const {
  if (k < 0 || k >= static_cast<int>(structure_->by_dim.size())) return {};
  return structure_->by_dim[k];
}

std::optional<std::size_t> Subdivision::find(const Chain& chain) const {
  const int k = static_cast<int>(chain.size()) - 1;
  if (k < 0 || k >= static_cast<int>(structure_->index.size())) return std::nullopt;
  auto it = structure_->index[k].find(chain);
  if (it == structure_->index[k].end()) return std::nullopt;
  return it->second;
}

std::vector<Chain> Subdivision::maximal_simplices() const {
  std::vector<Chain> out;
  for (int k = 0; k <= dim(); ++k) {
    std::set<Chain> covered;
    for (const Chain& up : simplices(k + 1))
      for (std::size_t drop = 0; drop < up.size(); ++drop) {
        Chain face = up;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
        covered.insert(std::move(face));
      }
    for (const Chain& ch : simplices(k))
      if (!covered.count(ch)) out.push_back(ch);
  }
  return out;
}

std::vector<CellIndex> Subdivision::neighbours(CellIndex v) const {
  std::vector<CellIndex> out(base_->faces(v).begin(), base_->faces(v).end());
  out.insert(out.end(), base_->cofaces(v).begin(), base_->cofaces(v).end());
  std::sort(out.begin(), out.end());
  return out;
}

std::string Subdivision::key(const Chain& chain) const {
  std::string k;
  for (std::size_t l = 0; l < chain.size(); ++l) k += (l ? "<" : "") + base_->id(chain[l]);
  return k;
}

std::size_t SimplexSet::total() const {
  std::size_t n = 0;
  for (const auto& v : by_dim) n += v.size();
  return n;
}

bool SimplexSet::contains(const Chain& chain) const {
  const std::size_t k = chain.size() - 1;
  if (chain.empty() || k >= by_dim.size()) return false;
  return std::binary_search(by_dim[k].begin(), by_dim[k].end(), chain);
}

CellComplex subdivision_complex(const Subdivision& s) {
  std::vector<std::vector<long>> lists;
  for (const Chain& c : s.maximal_simplices()) lists.emplace_back(c.begin(), c.end());
  return simplicial_from_vertex_lists(lists);
}

SimplexSet rib(const Subdivision& s, int i) {
  if (i < 0 || i > s.dim())
    throw Error(Errc::BadDegree, "rib degree " + std::to_string(i) + " outside 0.." + std::to_string(s.dim()));
  SimplexSet out;
  for (int k = 0; k <= i; ++k) {
    out.by_dim.emplace_back();
    for (const Chain& ch : s.simplices(k))
      if (s.vertex_dim(ch.back()) <= i) out.by_dim.back().push_back(ch);
  }
  return out;
}

SimplexSet induced_simplices(const Subdivision& s, const std::vector<CellIndex>& cells) {
  SimplexSet out;
  for (int k = 0; k <= s.dim(); ++k) {
    std::vector<Chain> keep;
    for (const Chain& ch : s.simplices(k))
      if (std::all_of(ch.begin(), ch.end(), [&](CellIndex c) { return std::binary_search(cells.begin(), cells.end(), c); }))
        keep.push_back(ch);
    if (keep.empty()) break;
    out.by_dim.push_back(std::move(keep));
  }
  return out;
}

namespace {

std::pair<std::string, std::string> edge_key(const std::string& a, const std::string& b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

std::vector<std::string> split_key(const std::string& key) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t stop = key.find('<', start);
    parts.push_back(key.substr(start, stop - start));
    if (stop == std::string::npos) break;
    start = stop + 1;
  }
  return parts;
}

}  // namespace

PiecewiseMetric PiecewiseMetric::from_grams(const Subdivision& s,
                                            const std::vector<std::pair<std::string, RatMatrix>>& grams) {
  PiecewiseMetric metric;
  for (const auto& [key, g] : grams) {
    Chain vertices;
    for (const std::string& id : split_key(key)) vertices.push_back(s.base().index_of(id));
    Chain sorted = vertices;
    std::sort(sorted.begin(), sorted.end());
    if (!s.find(sorted)) throw Error(Errc::UnknownCell, "'" + key + "' is not a simplex of the subdivision");
    const Eigen::Index k = static_cast<Eigen::Index>(vertices.size()) - 1;
    if (g.rows() != k || g.cols() != k)
      throw Error(Errc::IncompatibleMetric, "Gram matrix for '" + key + "' must be " + std::to_string(k) + "x" +
                                                std::to_string(k));
    if (g != g.transpose()) throw Error(Errc::IncompatibleMetric, "Gram matrix for '" + key + "' is not symmetric");
    if (!positive_definite(g)) throw Error(Errc::SingularGram, "Gram matrix for '" + key + "' is not positive definite");

    auto set = [&](CellIndex a, CellIndex b, const Rational& value) {
      const auto edge = edge_key(s.base().id(a), s.base().id(b));
      auto [it, fresh] = metric.lengths_.emplace(edge, value);
      if (!fresh && it->second != value)
        throw Error(Errc::IncompatibleMetric, "edge " + edge.first + "-" + edge.second + " has squared length " +
                                                  format_rational(it->second) + " and " + format_rational(value));
    };
    for (Eigen::Index l = 1; l <= k; ++l) {
      set(vertices[0], vertices[l], g(l - 1, l - 1));
      for (Eigen::Index m = l + 1; m <= k; ++m)
        set(vertices[l], vertices[m], g(l - 1, l - 1) + g(m - 1, m - 1) - 2 * g(l - 1, m - 1));
    }
  }
  return metric;
}

Rational PiecewiseMetric::squared_length(const std::string& a, const std::string& b) const {
  if (a == b) return Rational(0);
  auto it = lengths_.find(edge_key(a, b));
  return it == lengths_.end() ? Rational(1) : it->second;
}

RatMatrix PiecewiseMetric::gram(const CellComplex& complex, const Chain& vertices) const {
  const Eigen::Index k = static_cast<Eigen::Index>(vertices.size()) - 1;
  RatMatrix g(k, k);
  const std::string& origin = complex.id(vertices[0]);
  for (Eigen::Index l = 1; l <= k; ++l)
    for (Eigen::Index m = l; m <= k; ++m) {
      const Rational v = (squared_length(origin, complex.id(vertices[l])) +
                          squared_length(origin, complex.id(vertices[m])) -
                          squared_length(complex.id(vertices[l]), complex.id(vertices[m]))) /
                         2;
      g(l - 1, m - 1) = v;
      g(m - 1, l - 1) = v;
    }
  return g;
}

MetricSimplex metric_simplex(const Subdivision& s, const PiecewiseMetric& metric, const Chain& vertices) {
  MetricSimplex ms{vertices, metric.gram(s.base(), vertices), RatVector(static_cast<Eigen::Index>(vertices.size()) - 1)};
  for (std::size_t l = 1; l < vertices.size(); ++l)
    ms.f_diffs(static_cast<Eigen::Index>(l) - 1) = s.f(vertices[l]) - s.f(vertices[0]);
  return ms;
}

std::vector<MetricSimplex> maximal_metric_simplices(const Subdivision& s, const PiecewiseMetric& metric) {
  std::vector<MetricSimplex> out;
  for (const Chain& ch : s.maximal_simplices()) out.push_back(metric_simplex(s, metric, ch));
  return out;
}

bool positive_definite(const RatMatrix& gram) {
  if (gram.rows() == 0) return true;
  Eigen::LDLT<RatMatrix> ldlt(gram);
  if (ldlt.info() != Eigen::Success) return false;
  for (Eigen::Index l = 0; l < gram.rows(); ++l)
    if (!(ldlt.vectorD()(l) > 0)) return false;
  return true;
}

RatVector simplex_gradient(const MetricSimplex& ms) {
  if (ms.gram.rows() == 0) return RatVector(0);
  Eigen::LDLT<RatMatrix> ldlt(ms.gram);
  if (ldlt.info() != Eigen::Success || !positive_definite(ms.gram))
    throw Error(Errc::SingularGram, "Gram matrix is not positive definite");
  return -ldlt.solve(ms.f_diffs);
}

RatVector barycentric_rates(const RatVector& direction) {
  RatVector rates(direction.size() + 1);
  rates(0) = -direction.sum();
  rates.tail(direction.size()) = direction;
  return rates;
}

FlowGeometry FlowGeometry::build(const Subdivision& s, const PiecewiseMetric& metric) {
  FlowGeometry geometry;
  geometry.inverse_.resize(std::max(s.dim() + 1, 1));
  for (int k = 1; k <= s.dim(); ++k)
    for (const Chain& ch : s.simplices(k)) {
      const RatMatrix g = metric.gram(s.base(), ch);
      if (!positive_definite(g)) throw Error(Errc::SingularGram, "Gram matrix of '" + s.key(ch) + "' is not positive definite");
      geometry.inverse_[k].push_back(g.ldlt().solve(RatMatrix::Identity(k, k)));
    }
  return geometry;
}

std::size_t FlowClassification::count(Flow kind) const {
  return static_cast<std::size_t>(
      std::count_if(facets.begin(), facets.end(), [&](const FacetFlow& f) { return f.flow == kind; }));
}

FlowClassification classify_flows(const Subdivision& s, const PiecewiseMetric& metric) {
  return classify_flows(s, FlowGeometry::build(s, metric));
}

FlowClassification classify_flows(const Subdivision& s, const FlowGeometry& geometry) {
  FlowClassification out;
  for (int k = 1; k <= s.dim(); ++k) {
    const auto simplices = s.simplices(k);
    for (std::size_t j = 0; j < simplices.size(); ++j) {
      const Chain& ch = simplices[j];
      RatVector diffs(k);
      for (int l = 1; l <= k; ++l) diffs(l - 1) = s.f(ch[l]) - s.f(ch[0]);
      const RatVector rates = barycentric_rates(-(geometry.inverse_gram(k, j) * diffs));
      for (int m = 0; m <= k; ++m) {
        if (rates(m) == 0)
          throw Error(Errc::DegenerateDirection, "descent in '" + s.key(ch) + "' is parallel to the facet opposite '" +
                                                     s.base().id(ch[m]) + "'");
        out.facets.push_back({k, j, static_cast<std::size_t>(m), rates(m) > 0 ? Flow::out_flow : Flow::in_flow});
      }
    }
  }
  return out;
}

std::vector<TangentDirection> gradient_vector_set(const Subdivision& s, const PiecewiseMetric& metric,
                                                  const PointX1& x) {
  if (x.carrier.empty() || !s.find(x.carrier)) throw Error(Errc::InvalidPoint, "carrier is not a simplex");
  if (x.coordinates.size() != x.carrier.size())
    throw Error(Errc::InvalidPoint, "expected " + std::to_string(x.carrier.size()) + " barycentric coordinates");
  Rational total(0);
  for (const Rational& c : x.coordinates) {
    if (!(c > 0)) throw Error(Errc::InvalidPoint, "barycentric coordinates of a carrier must be positive");
    total += c;
  }
  if (total != 1) throw Error(Errc::InvalidPoint, "barycentric coordinates must sum to 1");

  std::vector<TangentDirection> out;
  const int lowest = std::max(static_cast<int>(x.carrier.size()) - 1, 1);
  for (int k = lowest; k <= s.dim(); ++k)
    for (const Chain& ch : s.simplices(k)) {
      if (!std::includes(ch.begin(), ch.end(), x.carrier.begin(), x.carrier.end())) continue;
      TangentDirection t{ch, simplex_gradient(metric_simplex(s, metric, ch)), {}};
      const RatVector rates = barycentric_rates(t.direction);
      for (std::size_t l = 0; l < ch.size(); ++l)
        if (rates(static_cast<Eigen::Index>(l)) != 0) t.rates[ch[l]] = rates(static_cast<Eigen::Index>(l));
      if (t.rates.empty()) throw Error(Errc::DegenerateDirection, "zero gradient on '" + s.key(ch) + "'");
      out.push_back(std::move(t));
    }
  return out;
}

bool directions_distinct(const std::vector<TangentDirection>& set) {
  for (std::size_t a = 0; a < set.size(); ++a)
    for (std::size_t b = a + 1; b < set.size(); ++b)
      if (set[a].rates == set[b].rates) return false;
  return true;
}

namespace {

Rational dot(const RatMatrix& g, const std::vector<Rational>& u, const std::vector<Rational>& w) {
  Rational sum(0);
  for (Eigen::Index l = 1; l <= g.rows(); ++l)
    for (Eigen::Index m = 1; m <= g.rows(); ++m) sum += u[l] * g(l - 1, m - 1) * w[m];
  return sum;
}

std::vector<Rational> minus(const std::vector<Rational>& u, const std::vector<Rational>& w) {
  std::vector<Rational> out(u.size());
  for (std::size_t l = 0; l < u.size(); ++l) out[l] = u[l] - w[l];
  return out;
}

}  // namespace

SharpnessReport audit_sharpness(const std::vector<MetricSimplex>& simplices, std::size_t samples,
                                std::uint64_t seed) {
  SharpnessReport report;
  std::vector<std::size_t> eligible;
  for (std::size_t j = 0; j < simplices.size(); ++j)
    if (simplices[j].gram.rows() >= 2) eligible.push_back(j);
  if (eligible.empty()) return report;

  std::mt19937_64 rng(seed);
  auto uniform = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  for (std::size_t sample = 0; sample < samples; ++sample) {
    const std::size_t j = eligible[uniform(eligible.size())];
    const RatMatrix& g = simplices[j].gram;
    const std::size_t k = static_cast<std::size_t>(g.rows());
    const std::size_t apex = uniform(k + 1);

    std::vector<std::size_t> others;
    for (std::size_t l = 0; l <= k; ++l)
      if (l != apex) others.push_back(l);
    std::shuffle(others.begin(), others.end(), rng);
    const std::size_t nb = 1 + uniform(k - 1);
    const std::size_t nc = 1 + uniform(k - nb);

    auto random_point = [&](std::size_t first, std::size_t count) {
      std::vector<Rational> p(k + 1, Rational(0));
      std::vector<long> weights(count);
      long total = 0;
      for (long& w : weights) total += (w = 1 + static_cast<long>(rng() % 1000));
      for (std::size_t l = 0; l < count; ++l) p[others[first + l]] = Rational(weights[l], total);
      return p;
    };
    std::vector<Rational> a(k + 1, Rational(0));
    a[apex] = 1;
    const std::vector<Rational> b = random_point(0, nb);
    const std::vector<Rational> c = random_point(nb, nc);

    ++report.sections;
    char corner = 0;
    if (!(dot(g, minus(b, a), minus(c, a)) > 0)) corner = 'a';
    else if (!(dot(g, minus(a, b), minus(c, b)) > 0)) corner = 'b';
    else if (!(dot(g, minus(a, c), minus(b, c)) > 0)) corner = 'c';
    if (corner) {
      ++report.failures;
      if (report.witnesses.size() < 8) report.witnesses.push_back({j, apex, b, c, corner});
    }
  }
  return report;
}

}  // namespace plmorse
