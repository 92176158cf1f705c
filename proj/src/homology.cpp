#include "plmorse/homology.hpp"

#include "plmorse/error.hpp"

#include <algorithm>

namespace plmorse {

IntegerChainComplex IntegerChainComplex::cellular(const CellComplex& complex) {
  IntegerChainComplex out;
  for (int d = 0; d <= complex.dim(); ++d) {
    std::vector<std::string> names;
    for (CellIndex c : complex.cells_of_dim(d)) names.push_back(complex.id(c));
    out.basis.push_back(std::move(names));
    out.differentials.push_back(incidence_matrix(complex, d).entries);
  }
  return out;
}

void validate_chain_complex(const IntegerChainComplex& complex) {
  if (complex.differentials.size() != complex.basis.size())
    throw Error(Errc::NotAComplex, "need one differential per degree");
  for (int i = 0; i <= complex.top_degree(); ++i) {
    const IntMatrix& d = complex.differentials[i];
    if (d.cols() != complex.rank(i) || d.rows() != complex.rank(i - 1))
      throw Error(Errc::NotAComplex, "differential " + std::to_string(i) + " has shape " +
                                         std::to_string(d.rows()) + "x" + std::to_string(d.cols()));
  }
  for (int i = 1; i < complex.top_degree(); ++i) {
    const IntMatrix dd = complex.differentials[i] * complex.differentials[i + 1];
    for (Eigen::Index r = 0; r < dd.rows(); ++r)
      for (Eigen::Index c = 0; c < dd.cols(); ++c)
        if (dd(r, c) != 0)
          throw Error(Errc::NotAComplex, "d_" + std::to_string(i) + " d_" + std::to_string(i + 1) +
                                             " is nonzero at (" + complex.basis[i - 1][r] + ", " +
                                             complex.basis[i + 1][c] + ")");
  }
}

HomologySummary homology(const IntegerChainComplex& complex) {
  validate_chain_complex(complex);
  const int top = complex.top_degree();
  std::vector<SmithForm<BigInt>> snf(top + 2);
  for (int i = 1; i <= top; ++i) snf[i] = smith_normal_form(complex.differentials[i]);

  HomologySummary out;
  for (int i = 0; i <= top; ++i) {
    HomologyGroup g;
    g.degree = i;
    const Eigen::Index rank_out = snf[i].rank;
    const Eigen::Index rank_in = i + 1 <= top ? snf[i + 1].rank : 0;
    g.betti = complex.rank(i) - rank_out - rank_in;
    if (i + 1 <= top)
      for (const BigInt& f : snf[i + 1].factors)
        if (f > 1) g.torsion.push_back(f);
    out.groups.push_back(std::move(g));
  }
  return out;
}

std::vector<std::int64_t> HomologySummary::betti_numbers() const {
  std::vector<std::int64_t> b;
  for (const auto& g : groups) b.push_back(g.betti);
  return b;
}

std::int64_t HomologySummary::euler_characteristic() const {
  std::int64_t chi = 0;
  for (const auto& g : groups) chi += (g.degree % 2 == 0 ? 1 : -1) * g.betti;
  return chi;
}

HomologyGroup HomologySummary::group(int degree) const {
  for (const auto& g : groups)
    if (g.degree == degree) return g;
  return HomologyGroup{degree, 0, {}};
}

namespace {

std::string group_string(const HomologyGroup& g) {
  std::vector<std::string> parts;
  if (g.betti == 1) parts.push_back("ℤ");
  if (g.betti > 1) parts.push_back("ℤ^" + std::to_string(g.betti));
  for (const BigInt& t : g.torsion) parts.push_back("ℤ/" + t.str());
  if (parts.empty()) return "0";
  std::string s = parts[0];
  for (std::size_t k = 1; k < parts.size(); ++k) s += "⊕" + parts[k];
  return s;
}

bool trivial(const HomologyGroup& g) { return g.betti == 0 && g.torsion.empty(); }

}  // namespace

std::string HomologySummary::to_string() const {
  std::string s;
  for (std::size_t k = 0; k < groups.size(); ++k) s += (k ? ", " : "") + group_string(groups[k]);
  return s;
}

HomologyComparison compare_homology(const HomologySummary& a, const HomologySummary& b) {
  HomologyComparison cmp;
  int top = -1;
  for (const auto& g : a.groups) top = std::max(top, g.degree);
  for (const auto& g : b.groups) top = std::max(top, g.degree);
  for (int d = 0; d <= top; ++d) {
    const HomologyGroup ga = a.group(d), gb = b.group(d);
    const bool same = (trivial(ga) && trivial(gb)) || (ga.betti == gb.betti && ga.torsion == gb.torsion);
    cmp.report.push_back("H_" + std::to_string(d) + ": " + group_string(ga) + (same ? " == " : " != ") +
                         group_string(gb));
    if (!same) {
      cmp.isomorphic = false;
      cmp.mismatched_degrees.push_back(d);
    }
  }
  return cmp;
}

HomologyComparison complexes_isomorphic_in_homology(const IntegerChainComplex& a, const IntegerChainComplex& b) {
  return compare_homology(homology(a), homology(b));
}

}  // namespace plmorse
