#include "plmorse/morse_function.hpp"

#include "plmorse/error.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <tuple>

namespace plmorse {

MorseFunction MorseFunction::from_map(const CellComplex& complex, const std::map<std::string, Rational>& values) {
  for (const auto& [id, v] : values) (void)complex.index_of(id);
  std::vector<Rational> out(complex.size());
  for (CellIndex c = 0; c < complex.size(); ++c) {
    auto it = values.find(complex.id(c));
    if (it == values.end()) throw Error(Errc::MissingValue, "no value for cell '" + complex.id(c) + "'");
    out[c] = it->second;
  }
  return MorseFunction(std::move(out));
}

MorseFunction MorseFunction::trivial(const CellComplex& complex) {
  std::vector<Rational> out;
  for (const Cell& c : complex.cells()) out.emplace_back(c.dim);
  return MorseFunction(std::move(out));
}

MorseFunction MorseFunction::with_value(CellIndex c, Rational v) const {
  MorseFunction g = *this;
  g.values_[c] = std::move(v);
  return g;
}

MorseFunction MorseFunction::negated() const {
  std::vector<Rational> out;
  for (const Rational& v : values_) out.push_back(-v);
  return MorseFunction(std::move(out));
}

std::map<std::string, Rational> MorseFunction::to_map(const CellComplex& complex) const {
  std::map<std::string, Rational> out;
  for (CellIndex c = 0; c < complex.size(); ++c) out[complex.id(c)] = values_[c];
  return out;
}

MorseFunction transfer(const CellComplex& from, const MorseFunction& f, const CellComplex& to) {
  return MorseFunction::from_map(to, f.to_map(from));
}

MorseValidation validate_morse(const CellComplex& complex, const MorseFunction& f) {
  if (f.size() != complex.size()) throw Error(Errc::MissingValue, "function is not defined on every cell");
  MorseValidation out;
  for (CellIndex a = 0; a < complex.size(); ++a) {
    MorseViolation v{a, {}, {}};
    for (const Incidence& up : complex.cofacets(a))
      if (f[up.cell] <= f[a]) v.low_cofacets.push_back(up.cell);
    for (const Incidence& down : complex.facets(a))
      if (f[down.cell] >= f[a]) v.high_facets.push_back(down.cell);
    if (v.low_cofacets.size() <= 1) v.low_cofacets.clear();
    if (v.high_facets.size() <= 1) v.high_facets.clear();
    if (!v.low_cofacets.empty() || !v.high_facets.empty()) {
      out.ok = false;
      out.violations.push_back(std::move(v));
    }
  }
  return out;
}

PairValidation validate_generic(const CellComplex& complex, const MorseFunction& f) {
  PairValidation out;
  for (CellIndex b = 0; b < complex.size(); ++b)
    for (CellIndex a : complex.faces(b))
      if (f[a] == f[b]) out.pairs.emplace_back(a, b);
  out.ok = out.pairs.empty();
  return out;
}

PairValidation validate_tame(const CellComplex& complex, const MorseFunction& f) {
  PairValidation out;
  for (CellIndex b = 0; b < complex.size(); ++b)
    for (CellIndex a : complex.faces(b))
      if (complex.dim_of(b) >= complex.dim_of(a) + 2 && !(f[b] > f[a])) out.pairs.emplace_back(a, b);
  out.ok = out.pairs.empty();
  return out;
}

MorseFlags morse_flags(const CellComplex& complex, const MorseFunction& f) {
  MorseFlags flags;
  flags.morse = validate_morse(complex, f).ok;
  flags.generic = validate_generic(complex, f).ok;
  flags.tame = flags.morse && flags.generic && validate_tame(complex, f).ok;
  return flags;
}

std::size_t CriticalReport::critical_count() const {
  std::size_t n = 0;
  for (const auto& v : critical) n += v.size();
  return n;
}

CriticalReport critical_cells(const CellComplex& complex, const MorseFunction& f) {
  const MorseValidation check = validate_morse(complex, f);
  if (!check.ok)
    throw Error(Errc::NotMorse, "counting condition fails at '" + complex.id(check.violations.front().cell) + "'");
  CriticalReport report;
  report.critical.assign(std::max(complex.dim() + 1, 0), {});
  report.partner.assign(complex.size(), std::nullopt);
  for (CellIndex a = 0; a < complex.size(); ++a) {
    std::optional<CellIndex> up, down;
    for (const Incidence& c : complex.cofacets(a))
      if (f[c.cell] <= f[a]) up = c.cell;
    for (const Incidence& c : complex.facets(a))
      if (f[c.cell] >= f[a]) down = c.cell;
    if (up && down)
      throw Error(Errc::NotMorse, "cell '" + complex.id(a) + "' has both an exceptional face and coface");
    report.partner[a] = up ? up : down;
    if (up) report.pairs.emplace_back(a, *up);
    if (!up && !down) report.critical[complex.dim_of(a)].push_back(a);
  }
  return report;
}

namespace {

// Maximal violating pair: largest coface dimension, then smallest ids.
std::pair<CellIndex, CellIndex> maximal_violation(const CellComplex& complex, const PairValidation& tame) {
  auto key = [&](const std::pair<CellIndex, CellIndex>& p) {
    return std::make_tuple(-complex.dim_of(p.second), complex.id(p.second), complex.id(p.first));
  };
  return *std::min_element(tame.pairs.begin(), tame.pairs.end(),
                           [&](const auto& x, const auto& y) { return key(x) < key(y); });
}

}  // namespace

MorseFunction tameify(const CellComplex& complex, const MorseFunction& f, std::vector<TameifyStep>* trace) {
  if (!validate_morse(complex, f).ok) throw Error(Errc::NotMorse, "tameify needs a discrete Morse function");
  if (const auto generic = validate_generic(complex, f); !generic.ok)
    throw Error(Errc::NotGeneric, "equal values on '" + complex.id(generic.pairs.front().first) + "' < '" +
                                      complex.id(generic.pairs.front().second) + "'");

  MorseFunction g = f;
  PairValidation tame = validate_tame(complex, g);
  while (!tame.ok) {
    const auto [alpha, beta] = maximal_violation(complex, tame);

    // Ascend alpha < gamma < delta < ... < epsilon < beta with F increasing,
    // taking the largest admissible value at each step.
    CellIndex current = alpha;
    for (int d = complex.dim_of(alpha) + 1; d < complex.dim_of(beta); ++d) {
      std::optional<CellIndex> best;
      for (const Incidence& up : complex.cofacets(current)) {
        const CellIndex c = up.cell;
        if (!complex.is_face(c, beta) || !(g[c] > g[current])) continue;
        if (!best || g[c] > g[*best] || (g[c] == g[*best] && complex.id(c) < complex.id(*best))) best = c;
      }
      if (!best)
        throw Error(Errc::NotMorse, "no ascending face chain from '" + complex.id(alpha) + "' to '" +
                                        complex.id(beta) + "' (complex is not regular?)");
      current = *best;
    }
    const CellIndex epsilon = current;
    const Rational low = g[alpha];
    const Rational high = g[epsilon];

    std::vector<Rational> taken;
    for (CellIndex c : complex.faces(beta)) taken.push_back(g[c]);
    for (CellIndex c : complex.cofaces(beta)) taken.push_back(g[c]);
    Rational fraction(1, 2);
    Rational value = low + (high - low) * fraction;
    while (std::find(taken.begin(), taken.end(), value) != taken.end()) {
      fraction /= 2;
      value = low + (high - low) * fraction;
    }

    TameifyStep step{alpha, beta, epsilon, g[beta], value, tame.pairs.size(), 0};
    g = g.with_value(beta, value);
    tame = validate_tame(complex, g);
    step.violations_after = tame.pairs.size();
    if (step.violations_after >= step.violations_before)
      throw std::logic_error("tameify step did not reduce the violation count");
    if (trace) trace->push_back(std::move(step));
  }
  return g;
}

MorseFunction random_generic_morse(const CellComplex& complex, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t n = complex.size();
  std::vector<std::optional<CellIndex>> up(n), down(n);

  auto out_neighbours = [&](CellIndex x, auto&& visit) {
    for (const Incidence& f : complex.facets(x))
      if (up[f.cell] != x) visit(f.cell);
    if (up[x]) visit(*up[x]);
  };

  std::vector<std::pair<CellIndex, CellIndex>> candidates;
  for (CellIndex b = 0; b < n; ++b)
    for (const Incidence& f : complex.facets(b)) candidates.emplace_back(f.cell, b);
  std::shuffle(candidates.begin(), candidates.end(), rng);

  std::vector<std::uint8_t> seen(n);
  std::vector<CellIndex> stack;
  for (const auto& [alpha, beta] : candidates) {
    if (up[alpha] || down[alpha] || up[beta] || down[beta]) continue;
    if (rng() % 4 == 0) continue;
    // Matching reverses beta -> alpha; reject if alpha is otherwise reachable.
    std::fill(seen.begin(), seen.end(), 0);
    stack.assign(1, beta);
    seen[beta] = 1;
    bool cycle = false;
    while (!stack.empty() && !cycle) {
      const CellIndex x = stack.back();
      stack.pop_back();
      out_neighbours(x, [&](CellIndex y) {
        if (x == beta && y == alpha) return;
        if (y == alpha) cycle = true;
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
      });
    }
    if (cycle) continue;
    up[alpha] = beta;
    down[beta] = alpha;
  }

  // Random linear extension: a cell is placed once everything it must exceed
  // has been placed.
  std::vector<std::size_t> pending(n, 0);
  for (CellIndex x = 0; x < n; ++x) out_neighbours(x, [&](CellIndex) { ++pending[x]; });
  std::vector<CellIndex> ready;
  for (CellIndex x = 0; x < n; ++x)
    if (pending[x] == 0) ready.push_back(x);

  constexpr std::uint64_t kJitter = 1000003;
  std::vector<Rational> values(n);
  for (std::size_t position = 0; position < n; ++position) {
    if (ready.empty()) throw std::logic_error("matching is not acyclic");
    const std::size_t pick = rng() % ready.size();
    const CellIndex x = ready[pick];
    ready[pick] = ready.back();
    ready.pop_back();
    values[x] = Rational(static_cast<long>(position)) +
                Rational(static_cast<long>(1 + rng() % (kJitter - 1)), static_cast<long>(kJitter));
    auto release = [&](CellIndex w) {
      if (--pending[w] == 0) ready.push_back(w);
    };
    for (const Incidence& z : complex.cofacets(x))
      if (up[x] != z.cell) release(z.cell);
    if (down[x]) release(*down[x]);
  }
  return MorseFunction(std::move(values));
}

}  // namespace plmorse
