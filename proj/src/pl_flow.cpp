#include "plmorse/pl_flow.hpp"

#include "plmorse/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace plmorse {

FlowContext make_flow(const CellComplex& complex, const MorseFunction& f, PiecewiseMetric metric) {
  return FlowContext{barycentric_subdivide(complex, f), std::move(metric), false};
}

FlowContext reversed_flow(const FlowContext& ctx) {
  auto opposite = std::make_shared<const CellComplex>(ctx.complex().opposite());
  MorseFunction g = transfer(ctx.complex(), ctx.function(), *opposite).negated();
  return FlowContext{barycentric_subdivide(std::move(opposite), g), ctx.metric, !ctx.reversed};
}

std::vector<std::vector<CellIndex>> critical_vertices(const FlowContext& ctx) {
  return critical_cells(ctx.complex(), ctx.function()).critical;
}

namespace {

void require_tame(const FlowContext& ctx) {
  const MorseFlags flags = morse_flags(ctx.complex(), ctx.function());
  if (!flags.tame)
    throw Error(Errc::NotTame, std::string("the PL flow needs a tame generic Morse function (morse ") +
                                   (flags.morse ? "yes" : "no") + ", generic " + (flags.generic ? "yes" : "no") +
                                   ", tame no)");
}

void require_critical(const FlowContext& ctx, const CriticalReport& report, CellIndex v) {
  if (!report.is_critical(v)) throw Error(Errc::NotCritical, "'" + ctx.complex().id(v) + "' is not a critical vertex");
}

// Neighbours of v in X1 of the given vertex dimension with smaller f.
std::vector<CellIndex> lower_neighbours(const FlowContext& ctx, CellIndex v, int dim) {
  std::vector<CellIndex> out;
  for (CellIndex w : ctx.subdivision.neighbours(v))
    if (ctx.subdivision.vertex_dim(w) == dim && ctx.subdivision.f(w) < ctx.subdivision.f(v)) out.push_back(w);
  return out;
}

}  // namespace

int pl_sign(const FlowContext& ctx, const PLTrajectory& trajectory) {
  const CellComplex& x = ctx.complex();
  const auto& v = trajectory.vertices;
  int s = x.incidence(v[0], v[1]);
  for (std::size_t l = 2; l + 1 < v.size(); l += 2) s *= -x.incidence(v[l], v[l - 1]) * x.incidence(v[l], v[l + 1]);
  return s;
}

std::vector<PLTrajectory> pl_trajectories(const FlowContext& ctx, CellIndex p, CellIndex q) {
  require_tame(ctx);
  const CriticalReport report = critical_cells(ctx.complex(), ctx.function());
  require_critical(ctx, report, p);
  require_critical(ctx, report, q);
  const int i = ctx.complex().dim_of(q);
  if (ctx.complex().dim_of(p) != i + 1)
    throw Error(Errc::BadDegree, "trajectories run from an (i+1)-dimensional to an i-dimensional vertex");

  std::vector<PLTrajectory> out;
  std::vector<CellIndex> path{p};
  std::function<void()> from_upper, from_lower;
  from_upper = [&] {
    for (CellIndex y : lower_neighbours(ctx, path.back(), i)) {
      path.push_back(y);
      from_lower();
      path.pop_back();
    }
  };
  from_lower = [&] {
    const std::vector<CellIndex> next = lower_neighbours(ctx, path.back(), i + 1);
    if (next.empty()) {
      if (path.back() == q) out.push_back({path, 0});
      return;
    }
    for (CellIndex r : next) {
      path.push_back(r);
      from_upper();
      path.pop_back();
    }
  };
  from_upper();
  for (PLTrajectory& t : out) t.sign = pl_sign(ctx, t);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

int sign_of_int(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

// Coefficient of the flag simplex [c_k, ..., c_0] in the subdivision of the
// oriented cell c_k.
int flag_coefficient(const CellComplex& x, const Chain& increasing) {
  int s = 1;
  for (std::size_t l = 1; l < increasing.size(); ++l) s *= x.incidence(increasing[l], increasing[l - 1]);
  return s;
}

// Full flags of cell s: chains c_0 < ... < c_{dim s} = s.
std::vector<Chain> flags_of(const FlowContext& ctx, CellIndex s) {
  const int d = ctx.complex().dim_of(s);
  std::vector<Chain> out;
  for (const Chain& ch : ctx.subdivision.simplices(d))
    if (ch.back() == s) out.push_back(ch);
  return out;
}

// Vertex order apex, c_i, ..., c_0 for a flag of the facet.
Chain apex_first(CellIndex apex, const Chain& flag) {
  Chain order{apex};
  order.insert(order.end(), flag.rbegin(), flag.rend());
  return order;
}

// Orientation factor from the upper cell to its facet: the interior product
// of the apex simplex's orientation with the outward normal of the facet
// opposite the apex, compared with the facet simplex's own orientation.
int contraction_factor(const FlowContext& ctx, CellIndex upper, CellIndex facet) {
  const CellComplex& x = ctx.complex();
  std::optional<int> result;
  for (const Chain& flag : flags_of(ctx, facet)) {
    const RatMatrix g = ctx.metric.gram(x, apex_first(upper, flag));
    const Eigen::Index k = g.rows();
    const RatVector n = g.ldlt().solve(RatVector::Ones(k));
    const RatVector gn = g * n;
    // Contraction coefficient on E_l = e_1 ^ ... (omit l) ... ^ e_k is
    // (-1)^{l-1} g(n, e_l); the facet orientation (e_2-e_1) ^ ... ^ (e_k-e_1)
    // has coefficient (-1)^{l-1} there.
    std::optional<Rational> ratio;
    for (Eigen::Index l = 0; l < k; ++l) {
      const Rational r = gn(l);
      if (ratio && *ratio != r) throw std::logic_error("contraction is not tangent to the facet");
      ratio = r;
    }
    const int coef_upper = x.incidence(upper, facet) * flag_coefficient(x, flag);
    const int coef_facet = flag_coefficient(x, flag);
    const int factor = coef_upper * coef_facet * sign_of_int(*ratio);
    if (result && *result != factor) throw std::logic_error("flags disagree on the induced facet orientation");
    result = factor;
  }
  if (!result) throw std::logic_error("cell '" + x.id(facet) + "' has no full flag");
  return *result;
}

// Orientation factor from a facet to an upper cell: o_upper = -n ^ o_facet.
int wedge_factor(const FlowContext& ctx, CellIndex facet, CellIndex upper) {
  const CellComplex& x = ctx.complex();
  std::optional<int> result;
  for (const Chain& flag : flags_of(ctx, facet)) {
    const RatMatrix g = ctx.metric.gram(x, apex_first(upper, flag));
    const Eigen::Index k = g.rows();
    RatMatrix m = RatMatrix::Zero(k, k);
    m.col(0) = g.ldlt().solve(RatVector::Ones(k));
    for (Eigen::Index j = 1; j < k; ++j) {
      m(j, j) = 1;
      m(0, j) = -1;
    }
    const int c = sign_of_int(m.determinant());
    if (c == 0) throw std::logic_error("outward normal is tangent to the facet");
    const int coef_facet = flag_coefficient(x, flag);
    const int coef_upper = x.incidence(upper, facet) * coef_facet;
    const int factor = -coef_facet * coef_upper * c;
    if (result && *result != factor) throw std::logic_error("flags disagree on the induced orientation");
    result = factor;
  }
  if (!result) throw std::logic_error("cell '" + x.id(facet) + "' has no full flag");
  return *result;
}

}  // namespace

int pl_sign_geometric(const FlowContext& ctx, const PLTrajectory& trajectory) {
  const auto& v = trajectory.vertices;
  int orientation = 1;
  for (std::size_t t = 1; t < v.size(); ++t)
    orientation *= (t % 2 == 1) ? contraction_factor(ctx, v[t - 1], v[t]) : wedge_factor(ctx, v[t - 1], v[t]);
  return orientation;
}

GradientPath discrete_path(const FlowContext& ctx, const PLTrajectory& trajectory) {
  GradientPath path;
  const auto& v = trajectory.vertices;
  path.dim = ctx.complex().dim_of(v[1]);
  path.cells.push_back(v[1]);
  for (std::size_t l = 2; l + 1 < v.size(); l += 2) {
    path.betas.push_back(v[l]);
    path.cells.push_back(v[l + 1]);
  }
  path.sign = path_sign(ctx.complex(), path);
  return path;
}

PLTrajectory trajectory_from_path(const FlowContext& ctx, CellIndex beta0, const GradientPath& path) {
  const GradientPath core = path.core();
  PLTrajectory t;
  t.vertices.push_back(beta0);
  t.vertices.push_back(core.cells[0]);
  for (std::size_t l = 0; l < core.betas.size(); ++l) {
    t.vertices.push_back(*core.betas[l]);
    t.vertices.push_back(core.cells[l + 1]);
  }
  t.sign = ctx.complex().incidence(beta0, core.cells[0]) * path_sign(ctx.complex(), core);
  return t;
}

void compare_differentials(const CellComplex& complex, const MorseComplexData& pl, const MorseComplexData& discrete) {
  if (pl.critical != discrete.critical) throw Error(Errc::MatrixMismatch, "bases of critical cells differ");
  for (std::size_t i = 0; i < pl.differentials.size(); ++i) {
    const IntMatrix& a = pl.differentials[i];
    const IntMatrix& b = discrete.differentials[i];
    if (a.rows() != b.rows() || a.cols() != b.cols())
      throw Error(Errc::MatrixMismatch, "shapes differ in degree " + std::to_string(i));
    for (Eigen::Index r = 0; r < a.rows(); ++r)
      for (Eigen::Index c = 0; c < a.cols(); ++c)
        if (a(r, c) != b(r, c))
          throw Error(Errc::MatrixMismatch, "entry (" + complex.id(pl.critical[i - 1][r]) + ", " +
                                                complex.id(pl.critical[i][c]) + "): PL " + a(r, c).str() +
                                                ", discrete " + b(r, c).str());
  }
}

PLMorseComplexData pl_differential(const FlowContext& ctx, bool verify) {
  require_tame(ctx);
  const CellComplex& x = ctx.complex();
  const CriticalReport report = critical_cells(x, ctx.function());
  PLMorseComplexData data;
  data.critical = report.critical;

  // Signed trajectory counts from an i-vertex down to the critical i-vertices.
  std::vector<std::optional<std::map<CellIndex, std::int64_t>>> memo(x.size());
  std::function<const std::map<CellIndex, std::int64_t>&(CellIndex)> flow =
      [&](CellIndex y) -> const std::map<CellIndex, std::int64_t>& {
    if (memo[y]) return *memo[y];
    const int i = x.dim_of(y);
    std::map<CellIndex, std::int64_t> sum;
    const std::vector<CellIndex> next = lower_neighbours(ctx, y, i + 1);
    if (next.empty() && report.is_critical(y)) sum[y] = 1;
    for (CellIndex r : next)
      for (CellIndex z : lower_neighbours(ctx, r, i)) {
        const int step = -x.incidence(r, y) * x.incidence(r, z);
        for (const auto& [target, count] : flow(z)) sum[target] += step * count;
      }
    memo[y] = std::move(sum);
    return *memo[y];
  };

  for (int i = 0; i <= x.dim(); ++i) {
    const Eigen::Index rows = i == 0 ? 0 : static_cast<Eigen::Index>(report.critical[i - 1].size());
    IntMatrix d = IntMatrix::Zero(rows, static_cast<Eigen::Index>(report.critical[i].size()));
    if (i > 0) {
      std::map<CellIndex, Eigen::Index> row_of;
      for (Eigen::Index r = 0; r < rows; ++r) row_of[report.critical[i - 1][r]] = r;
      for (Eigen::Index col = 0; col < d.cols(); ++col) {
        const CellIndex p = report.critical[i][col];
        for (CellIndex y : lower_neighbours(ctx, p, i - 1))
          for (const auto& [target, count] : flow(y)) d(row_of.at(target), col) += x.incidence(p, y) * count;
      }
    }
    data.differentials.push_back(std::move(d));
  }
  check_square_zero(x, data);
  if (verify) compare_differentials(x, data, morse_differential(x, ctx.function()));
  return data;
}

SweptComplex unstable_complex(const FlowContext& ctx, CellIndex p) {
  require_tame(ctx);
  const CellComplex& x = ctx.complex();
  const MorseFunction& f = ctx.function();
  const CriticalReport report = critical_cells(x, f);
  require_critical(ctx, report, p);

  enum class State : std::uint8_t { fresh, active, done };
  std::vector<State> state(x.size(), State::fresh);
  std::vector<std::vector<std::uint8_t>> memo(x.size());

  auto merge = [&](std::vector<std::uint8_t>& into, const std::vector<std::uint8_t>& from) {
    for (std::size_t c = 0; c < into.size(); ++c) into[c] |= from[c];
  };
  auto add_closure = [&](std::vector<std::uint8_t>& into, CellIndex c) {
    into[c] = 1;
    for (CellIndex a : x.faces(c)) into[a] = 1;
  };

  std::function<const std::vector<std::uint8_t>&(CellIndex)> traj = [&](CellIndex b) -> const std::vector<std::uint8_t>& {
    if (state[b] == State::done) return memo[b];
    if (state[b] == State::active) throw std::logic_error("sweep recursion revisits '" + x.id(b) + "'");
    state[b] = State::active;
    // Each call must go down in dimension, or stay in dimension with lower F.
    auto descend = [&](CellIndex next) -> const std::vector<std::uint8_t>& {
      const bool lower = x.dim_of(next) < x.dim_of(b) || (x.dim_of(next) == x.dim_of(b) && f[next] < f[b]);
      if (!lower) throw std::logic_error("sweep recursion does not descend at '" + x.id(b) + "'");
      return traj(next);
    };

    std::vector<std::uint8_t> swept(x.size(), 0);
    const std::optional<CellIndex> partner = report.partner[b];
    if (!partner) {
      add_closure(swept, b);
      for (const Incidence& a : x.facets(b)) merge(swept, descend(a.cell));
    } else if (x.dim_of(*partner) < x.dim_of(b)) {
      swept = descend(*partner);
    } else {
      const CellIndex d = *partner;
      add_closure(swept, b);
      add_closure(swept, d);
      for (const Incidence& e : x.facets(d))
        if (e.cell != b) merge(swept, descend(e.cell));
    }
    memo[b] = std::move(swept);
    state[b] = State::done;
    return memo[b];
  };

  SweptComplex out;
  out.origin = p;
  const std::vector<std::uint8_t>& swept = traj(p);
  for (CellIndex c = 0; c < x.size(); ++c)
    if (swept[c]) out.cells.push_back(c);
  out.simplices = induced_simplices(ctx.subdivision, out.cells);
  return out;
}

SweptComplex stable_complex(const FlowContext& ctx, CellIndex p) {
  const FlowContext reversed = reversed_flow(ctx);
  const SweptComplex there = unstable_complex(reversed, reversed.complex().index_of(ctx.complex().id(p)));
  SweptComplex out;
  out.origin = p;
  for (CellIndex c : there.cells) out.cells.push_back(ctx.complex().index_of(reversed.complex().id(c)));
  std::sort(out.cells.begin(), out.cells.end());
  out.simplices = induced_simplices(ctx.subdivision, out.cells);
  return out;
}

std::vector<CellIndex> sweep_reachability(const FlowContext& ctx, CellIndex p) {
  std::vector<std::uint8_t> reached(ctx.complex().size(), 0);
  std::vector<CellIndex> stack{p};
  reached[p] = 1;
  while (!stack.empty()) {
    const CellIndex v = stack.back();
    stack.pop_back();
    for (CellIndex w : ctx.subdivision.neighbours(v))
      if (!reached[w] && ctx.subdivision.f(w) < ctx.subdivision.f(v)) {
        reached[w] = 1;
        stack.push_back(w);
      }
  }
  std::vector<CellIndex> out;
  for (CellIndex c = 0; c < reached.size(); ++c)
    if (reached[c]) out.push_back(c);
  return out;
}

DescentCensus descent_census(const FlowContext& ctx, CellIndex p, CellIndex q) {
  DescentCensus census;
  census.trajectories = pl_trajectories(ctx, p, q).size();
  const Subdivision& s = ctx.subdivision;
  const int i = s.vertex_dim(q);

  // Vertices with f in [f(q), f(p)], visited from high to low values.
  std::vector<CellIndex> order;
  for (CellIndex v = 0; v < s.vertex_count(); ++v)
    if (s.f(v) <= s.f(p) && s.f(v) >= s.f(q)) order.push_back(v);
  std::sort(order.begin(), order.end(), [&](CellIndex a, CellIndex b) { return s.f(a) > s.f(b); });

  std::vector<std::uint64_t> from_p(s.vertex_count(), 0), to_q(s.vertex_count(), 0);
  from_p[p] = 1;
  for (CellIndex v : order)
    if (from_p[v])
      for (CellIndex w : s.neighbours(v))
        if (s.f(w) < s.f(v)) from_p[w] += from_p[v];
  to_q[q] = 1;
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    for (CellIndex w : s.neighbours(*it))
      if (s.f(w) < s.f(*it)) to_q[*it] += to_q[w];
  census.monotone_paths = from_p[q];

  for (CellIndex v : order) {
    if (!from_p[v]) continue;
    for (CellIndex w : s.neighbours(v)) {
      if (!(s.f(w) < s.f(v)) || !to_q[w]) continue;
      ++census.edges;
      const int dv = s.vertex_dim(v), dw = s.vertex_dim(w);
      if (std::min(dv, dw) != i || std::max(dv, dw) != i + 1) ++census.stray_edges;
    }
  }
  return census;
}

bool is_face_closed(const CellComplex& complex, const std::vector<CellIndex>& cells) {
  for (CellIndex c : cells)
    for (const Incidence& a : complex.facets(c))
      if (!std::binary_search(cells.begin(), cells.end(), a.cell)) return false;
  return true;
}

}  // namespace plmorse
