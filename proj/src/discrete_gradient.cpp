#include "plmorse/discrete_gradient.hpp"

#include "plmorse/error.hpp"

#include <functional>
#include <map>

namespace plmorse {

std::size_t GradientField::arrow_count() const {
  std::size_t n = 0;
  for (const auto& a : arrows_) n += a.has_value();
  return n;
}

GradientField gradient_field(const CellComplex& complex, const MorseFunction& f) {
  const CriticalReport report = critical_cells(complex, f);
  std::vector<std::optional<GradientArrow>> arrows(complex.size());
  for (const auto& [alpha, beta] : report.pairs) arrows[alpha] = GradientArrow{beta, -complex.incidence(beta, alpha)};
  return GradientField(std::move(arrows));
}

GradientPath GradientPath::core() const {
  GradientPath out = *this;
  while (!out.betas.empty() && !out.betas.back()) {
    out.betas.pop_back();
    out.cells.pop_back();
  }
  return out;
}

std::size_t default_path_length(const CellComplex& complex, int dim) { return complex.count_of_dim(dim) + 1; }

int path_sign(const CellComplex& complex, const GradientPath& path) {
  int s = 1;
  for (std::size_t l = 0; l < path.betas.size(); ++l) {
    if (!path.betas[l]) continue;
    const CellIndex beta = *path.betas[l];
    s = -s * complex.incidence(beta, path.cells[l]) * complex.incidence(beta, path.cells[l + 1]);
  }
  return s;
}

std::vector<GradientPath> enumerate_paths(const CellComplex& complex, const MorseFunction& f, CellIndex from,
                                          CellIndex to, std::optional<std::size_t> max_len) {
  std::vector<GradientPath> out;
  const int dim = complex.dim_of(from);
  if (complex.dim_of(to) != dim) return out;
  const std::size_t length = max_len.value_or(default_path_length(complex, dim));
  const GradientField v = gradient_field(complex, f);

  GradientPath current;
  current.dim = dim;
  current.cells.push_back(from);
  std::function<void()> extend = [&] {
    const CellIndex alpha = current.cells.back();
    if (current.betas.size() == length) {
      if (alpha == to) {
        out.push_back(current);
        out.back().sign = path_sign(complex, current);
      }
      return;
    }
    if (!v[alpha]) {
      if (alpha != to) return;
      GradientPath done = current;
      done.cells.resize(length + 1, alpha);
      done.betas.resize(length, std::nullopt);
      done.sign = path_sign(complex, done);
      out.push_back(std::move(done));
      return;
    }
    const CellIndex beta = v[alpha]->target;
    for (const Incidence& next : complex.facets(beta)) {
      if (next.cell == alpha) continue;
      current.cells.push_back(next.cell);
      current.betas.push_back(beta);
      extend();
      current.cells.pop_back();
      current.betas.pop_back();
    }
  };
  extend();
  return out;
}

namespace {

MorseComplexData empty_data(const CellComplex& complex, const CriticalReport& report) {
  MorseComplexData data;
  data.critical = report.critical;
  for (int i = 0; i <= complex.dim(); ++i) {
    const Eigen::Index rows = i == 0 ? 0 : static_cast<Eigen::Index>(report.critical[i - 1].size());
    data.differentials.push_back(IntMatrix::Zero(rows, static_cast<Eigen::Index>(report.critical[i].size())));
  }
  return data;
}

std::map<CellIndex, Eigen::Index> positions(const std::vector<CellIndex>& cells) {
  std::map<CellIndex, Eigen::Index> pos;
  for (std::size_t k = 0; k < cells.size(); ++k) pos[cells[k]] = static_cast<Eigen::Index>(k);
  return pos;
}

}  // namespace

void check_square_zero(const CellComplex& complex, const MorseComplexData& data) {
  for (std::size_t i = 1; i + 1 < data.differentials.size(); ++i) {
    const IntMatrix dd = data.differentials[i] * data.differentials[i + 1];
    for (Eigen::Index r = 0; r < dd.rows(); ++r)
      for (Eigen::Index c = 0; c < dd.cols(); ++c)
        if (dd(r, c) != 0)
          throw Error(Errc::DifferentialNotSquareZero,
                      "entry (" + complex.id(data.critical[i - 1][r]) + ", " + complex.id(data.critical[i + 1][c]) +
                          ") of the squared differential is " + dd(r, c).str());
  }
}

MorseComplexData morse_differential(const CellComplex& complex, const MorseFunction& f) {
  const CriticalReport report = critical_cells(complex, f);
  const GradientField v = gradient_field(complex, f);
  MorseComplexData data = empty_data(complex, report);

  // flow[a]: signed number of gradient paths from a to each critical cell.
  std::vector<std::optional<std::map<CellIndex, std::int64_t>>> memo(complex.size());
  std::function<const std::map<CellIndex, std::int64_t>&(CellIndex)> flow =
      [&](CellIndex a) -> const std::map<CellIndex, std::int64_t>& {
    if (memo[a]) return *memo[a];
    std::map<CellIndex, std::int64_t> sum;
    if (!v[a]) {
      if (report.is_critical(a)) sum[a] = 1;
    } else {
      const CellIndex beta = v[a]->target;
      for (const Incidence& next : complex.facets(beta)) {
        if (next.cell == a) continue;
        const int step = -complex.incidence(beta, a) * next.sign;
        for (const auto& [target, count] : flow(next.cell)) sum[target] += step * count;
      }
    }
    memo[a] = std::move(sum);
    return *memo[a];
  };

  for (int i = 1; i <= complex.dim(); ++i) {
    const auto rows = positions(report.critical[i - 1]);
    for (std::size_t col = 0; col < report.critical[i].size(); ++col) {
      const CellIndex beta = report.critical[i][col];
      for (const Incidence& facet : complex.facets(beta))
        for (const auto& [target, count] : flow(facet.cell))
          data.differentials[i](rows.at(target), static_cast<Eigen::Index>(col)) += facet.sign * count;
    }
  }
  check_square_zero(complex, data);
  return data;
}

MorseComplexData morse_differential_by_enumeration(const CellComplex& complex, const MorseFunction& f) {
  const CriticalReport report = critical_cells(complex, f);
  MorseComplexData data = empty_data(complex, report);
  for (int i = 1; i <= complex.dim(); ++i)
    for (std::size_t col = 0; col < report.critical[i].size(); ++col) {
      const CellIndex beta = report.critical[i][col];
      for (std::size_t row = 0; row < report.critical[i - 1].size(); ++row) {
        std::int64_t entry = 0;
        for (const Incidence& facet : complex.facets(beta))
          for (const GradientPath& path : enumerate_paths(complex, f, facet.cell, report.critical[i - 1][row]))
            entry += facet.sign * path.sign;
        data.differentials[i](static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = entry;
      }
    }
  return data;
}

IntegerChainComplex MorseComplexData::chain_complex(const CellComplex& complex) const {
  IntegerChainComplex out;
  for (const auto& cells : critical) {
    std::vector<std::string> names;
    for (CellIndex c : cells) names.push_back(complex.id(c));
    out.basis.push_back(std::move(names));
  }
  out.differentials = differentials;
  return out;
}

}  // namespace plmorse
