#pragma once

#include <map>
#include <optional>

#include "framelab/operators.hpp"

namespace framelab::detail {

/// Canonical form T + K of a Sequence -> Sequence descriptor, where
/// T = sum_d c_d D_d is a banded shift polynomial (D_d e_k = e_{k+d} when
/// k + d >= 1, else 0) and K is a finitely supported correction. Every
/// descriptor built from shifts, identity, finite-rank pairs, scalings,
/// sums and compositions of those reduces exactly to this form, which makes
/// the induced 1-norm and inf-norm (column and row sups) exactly computable.
struct ShiftForm {
  std::map<int, double> diags;                          // offset -> coefficient
  std::map<Index, std::map<Index, double>> correction;  // row -> col -> value

  double entry(Index row, Index col) const;
  /// Row as a finitely supported coefficient map (used to read coordinate
  /// functionals of analysis operators).
  std::map<Index, double> row(Index r) const;

  double column_sup() const;  // sup_k sum_r |a_{rk}|  == induced 1-norm
  double row_sup() const;     // sup_r sum_k |a_{rk}|  == induced inf-norm

  ShiftForm& add(const ShiftForm& other, double scale = 1.0);
  static ShiftForm composed(const ShiftForm& after, const ShiftForm& before);
  void prune();
};

/// Exact normal form, or nullopt when the descriptor routes through a
/// Finite space (only possible via exotic cross-space compositions).
std::optional<ShiftForm> shift_normal_form(const OperatorDesc& op);

}  // namespace framelab::detail
