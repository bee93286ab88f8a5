#include "lrsc/table.hpp"

#include <algorithm>
#include <tuple>

namespace lrsc {

namespace {

struct Term {
  long when;
  int symbol;
  Elem coeff;
  int row, col;
};

std::string monomial(int s, long t) { return "m_" + std::to_string(s) + "(" + std::to_string(t) + ")"; }

}  // namespace

std::string render_parity(const Code& code, int parity, long t, bool symbolic) {
  const auto& f = code.field();
  std::vector<Term> terms;
  for (const Tap& tap : code.taps()) {
    if (tap.parity != parity || t - tap.lag < 0) continue;
    terms.push_back(Term{t - tap.lag, tap.symbol, tap.coeff, tap.gamma_row, tap.gamma_col});
  }
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
    return std::tie(x.when, x.symbol, x.col) < std::tie(y.when, y.symbol, y.col);
  });
  if (!symbolic) {
    // Merge repeated monomials so the numeric form is canonical.
    std::vector<Term> merged;
    for (const Term& term : terms) {
      if (!merged.empty() && merged.back().when == term.when && merged.back().symbol == term.symbol)
        merged.back().coeff = f.add(merged.back().coeff, term.coeff);
      else
        merged.push_back(term);
    }
    std::erase_if(merged, [](const Term& x) { return x.coeff == TowerField::zero(); });
    terms = std::move(merged);
  }
  if (terms.empty()) return "-";

  std::string out;
  for (const Term& term : terms) {
    if (!out.empty()) out += '+';
    if (symbolic) {
      const std::string idx = "{" + std::to_string(term.row) + "," + std::to_string(term.col) + "}";
      if (code.kind() == CodeKind::diagonal_mds)
        out += "g_" + idx;
      else if (term.col >= 2)
        out += "alpha_" + std::to_string(term.col) + " c_" + idx;
      else
        out += "c_" + idx;
    } else if (term.coeff != TowerField::one()) {
      out += term.coeff.v < f.characteristic() ? std::to_string(term.coeff.v) : f.format(term.coeff);
    }
    out += monomial(term.symbol, term.when);
  }
  return out;
}

std::string render_table(const Code& code, long first, long last, bool symbolic) {
  std::string out;
  for (long t = first; t <= last; ++t)
    for (int i = 0; i < code.parities(); ++i)
      out += "p_" + std::to_string(i) + "(" + std::to_string(t) + ") = " + render_parity(code, i, t, symbolic) + "\n";
  return out;
}

}  // namespace lrsc
