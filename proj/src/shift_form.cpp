#include "shift_form.hpp"

#include <climits>
#include <cmath>

namespace framelab::detail {

double ShiftForm::entry(Index row, Index col) const {
  double v = 0.0;
  long long off = row - col;
  if (off >= INT_MIN && off <= INT_MAX) {
    auto it = diags.find(static_cast<int>(off));
    if (it != diags.end()) v += it->second;
  }
  auto rit = correction.find(row);
  if (rit != correction.end()) {
    auto cit = rit->second.find(col);
    if (cit != rit->second.end()) v += cit->second;
  }
  return v;
}

std::map<Index, double> ShiftForm::row(Index r) const {
  std::map<Index, double> out;
  for (const auto& [d, c] : diags) {
    Index col = r - d;
    if (col >= 1) out[col] += c;
  }
  auto rit = correction.find(r);
  if (rit != correction.end())
    for (const auto& [col, v] : rit->second) out[col] += v;
  for (auto it = out.begin(); it != out.end();)
    it = it->second == 0.0 ? out.erase(it) : std::next(it);
  return out;
}

double ShiftForm::column_sup() const {
  // beyond every correction column and every diagonal "hole", all columns
  // carry exactly the diagonal coefficients
  Index explicit_cols = 1;
  for (const auto& [d, c] : diags)
    if (d < 0) explicit_cols = std::max<Index>(explicit_cols, -static_cast<Index>(d));
  for (const auto& [r, cols] : correction)
    for (const auto& [c, v] : cols) explicit_cols = std::max(explicit_cols, c);

  double tail = 0.0;
  for (const auto& [d, c] : diags) tail += std::abs(c);

  double sup = tail;
  for (Index k = 1; k <= explicit_cols; ++k) {
    // combine diagonal and correction entries hitting column k
    std::map<Index, double> col;
    for (const auto& [d, c] : diags) {
      Index r = k + d;
      if (r >= 1) col[r] += c;
    }
    for (const auto& [r, cols] : correction) {
      auto it = cols.find(k);
      if (it != cols.end()) col[r] += it->second;
    }
    double s = 0.0;
    for (const auto& [r, v] : col) s += std::abs(v);
    sup = std::max(sup, s);
  }
  return sup;
}

double ShiftForm::row_sup() const {
  Index explicit_rows = 1;
  for (const auto& [d, c] : diags)
    if (d > 0) explicit_rows = std::max<Index>(explicit_rows, static_cast<Index>(d));
  for (const auto& [r, cols] : correction) explicit_rows = std::max(explicit_rows, r);

  double tail = 0.0;
  for (const auto& [d, c] : diags) tail += std::abs(c);

  double sup = tail;
  for (Index r = 1; r <= explicit_rows; ++r) {
    auto cols = row(r);
    double s = 0.0;
    for (const auto& [c, v] : cols) s += std::abs(v);
    sup = std::max(sup, s);
  }
  return sup;
}

ShiftForm& ShiftForm::add(const ShiftForm& other, double scale) {
  for (const auto& [d, c] : other.diags) diags[d] += scale * c;
  for (const auto& [r, cols] : other.correction)
    for (const auto& [c, v] : cols) correction[r][c] += scale * v;
  return *this;
}

void ShiftForm::prune() {
  for (auto it = diags.begin(); it != diags.end();)
    it = it->second == 0.0 ? diags.erase(it) : std::next(it);
  for (auto rit = correction.begin(); rit != correction.end();) {
    auto& cols = rit->second;
    for (auto cit = cols.begin(); cit != cols.end();)
      cit = cit->second == 0.0 ? cols.erase(cit) : std::next(cit);
    rit = cols.empty() ? correction.erase(rit) : std::next(rit);
  }
}

ShiftForm ShiftForm::composed(const ShiftForm& a, const ShiftForm& b) {
  ShiftForm out;

  // T_a * T_b: D_d D_e = D_{d+e} minus unit corrections on the columns that
  // the inner shift annihilates but the merged diagonal would not
  for (const auto& [d, cd] : a.diags) {
    for (const auto& [e, ce] : b.diags) {
      double c = cd * ce;
      out.diags[d + e] += c;
      if (e <= -1 && d >= 1) {
        Index lo = std::max<Index>(1, 1 - static_cast<Index>(d) - static_cast<Index>(e));
        Index hi = -static_cast<Index>(e);
        for (Index k = lo; k <= hi; ++k) out.correction[k + d + e][k] -= c;
      }
    }
  }
  // T_a * K_b
  for (const auto& [i, cols] : b.correction)
    for (const auto& [j, v] : cols)
      for (const auto& [d, cd] : a.diags) {
        Index r = i + d;
        if (r >= 1) out.correction[r][j] += cd * v;
      }
  // K_a * T_b
  for (const auto& [i, cols] : a.correction)
    for (const auto& [j, v] : cols)
      for (const auto& [e, ce] : b.diags) {
        Index col = j - e;
        if (col >= 1) out.correction[i][col] += ce * v;
      }
  // K_a * K_b
  for (const auto& [i, acols] : a.correction)
    for (const auto& [j, av] : acols) {
      auto brow = b.correction.find(j);
      if (brow == b.correction.end()) continue;
      for (const auto& [k, bv] : brow->second) out.correction[i][k] += av * bv;
    }

  out.prune();
  return out;
}

std::optional<ShiftForm> shift_normal_form(const OperatorDesc& op) {
  if (op.domain().is_finite() || op.codomain().is_finite()) return std::nullopt;

  struct Visitor {
    const OperatorDesc& op;

    std::optional<ShiftForm> operator()(const OperatorDesc::Dense&) const { return std::nullopt; }
    std::optional<ShiftForm> operator()(const OperatorDesc::Shift& s) const {
      ShiftForm f;
      f.diags[s.power] = 1.0;
      return f;
    }
    std::optional<ShiftForm> operator()(const OperatorDesc::Identity&) const {
      ShiftForm f;
      f.diags[0] = 1.0;
      return f;
    }
    std::optional<ShiftForm> operator()(const OperatorDesc::FiniteRank& fr) const {
      ShiftForm f;
      for (const auto& [v, fn] : fr.pairs)
        for (const auto& [r, vv] : v.entries())
          for (const auto& [c, fc] : fn.coefficients()) f.correction[r][c] += vv * fc;
      f.prune();
      return f;
    }
    std::optional<ShiftForm> operator()(const OperatorDesc::Scaled& s) const {
      auto inner = shift_normal_form(*s.inner);
      if (!inner) return std::nullopt;
      ShiftForm f;
      f.add(*inner, s.factor);
      f.prune();
      return f;
    }
    std::optional<ShiftForm> operator()(const OperatorDesc::Sum& s) const {
      ShiftForm f;
      for (const auto& t : s.terms) {
        auto part = shift_normal_form(*t);
        if (!part) return std::nullopt;
        f.add(*part);
      }
      f.prune();
      return f;
    }
    std::optional<ShiftForm> operator()(const OperatorDesc::Compose& c) const {
      std::optional<ShiftForm> acc;
      for (auto it = c.terms.rbegin(); it != c.terms.rend(); ++it) {
        auto part = shift_normal_form(**it);
        if (!part) return std::nullopt;
        acc = acc ? ShiftForm::composed(*part, *acc) : *part;
      }
      return acc;
    }
  };
  return std::visit(Visitor{op}, op.body());
}

}  // namespace framelab::detail
