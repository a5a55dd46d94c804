#include "framelab/sequence.hpp"

#include <cmath>
#include <stdexcept>

namespace framelab {

namespace {

void check_indices(const ModelSpace& space, const std::map<Index, double>& m, const char* what) {
  for (const auto& [i, v] : m) {
    if (i < 1) throw std::invalid_argument(std::string(what) + ": index must be >= 1");
    if (space.is_finite() && i > space.dim())
      throw std::invalid_argument(std::string(what) + ": index exceeds space dimension");
    (void)v;
  }
}

std::map<Index, double> pruned(std::map<Index, double> m) {
  for (auto it = m.begin(); it != m.end();) {
    if (it->second == 0.0)
      it = m.erase(it);
    else
      ++it;
  }
  return m;
}

}  // namespace

Exponent::Exponent(double p) : p_(p) {
  if (!std::isfinite(p) || p < 1.0)
    throw std::invalid_argument("Exponent: p must be finite and >= 1");
}

ModelSpace ModelSpace::finite(Index dim, Exponent p) {
  if (dim < 1) throw std::invalid_argument("ModelSpace: dim must be >= 1");
  return ModelSpace(SpaceKind::Finite, dim, p);
}

ModelSpace ModelSpace::sequence(Exponent p) { return ModelSpace(SpaceKind::Sequence, 0, p); }

Vec::Vec(ModelSpace space, std::map<Index, double> entries)
    : space_(std::move(space)), entries_(pruned(std::move(entries))) {
  check_indices(space_, entries_, "Vec");
}

Vec Vec::from_dense(ModelSpace space, const Eigen::VectorXd& v) {
  std::map<Index, double> e;
  for (Index i = 0; i < v.size(); ++i)
    if (v[i] != 0.0) e[i + 1] = v[i];
  return Vec(std::move(space), std::move(e));
}

double Vec::operator[](Index i) const {
  auto it = entries_.find(i);
  return it == entries_.end() ? 0.0 : it->second;
}

Index Vec::max_index() const { return entries_.empty() ? 0 : entries_.rbegin()->first; }

Eigen::VectorXd Vec::to_dense(Index rows) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(rows);
  for (const auto& [i, v] : entries_)
    if (i <= rows) out[i - 1] = v;
  return out;
}

Functional::Functional(ModelSpace space, std::map<Index, double> coefficients)
    : space_(std::move(space)), coeffs_(pruned(std::move(coefficients))) {
  check_indices(space_, coeffs_, "Functional");
}

Functional Functional::from_dense(ModelSpace space, const Eigen::VectorXd& c) {
  std::map<Index, double> m;
  for (Index i = 0; i < c.size(); ++i)
    if (c[i] != 0.0) m[i + 1] = c[i];
  return Functional(std::move(space), std::move(m));
}

double Functional::operator[](Index i) const {
  auto it = coeffs_.find(i);
  return it == coeffs_.end() ? 0.0 : it->second;
}

Index Functional::max_index() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

Eigen::VectorXd Functional::to_dense(Index cols) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(cols);
  for (const auto& [i, v] : coeffs_)
    if (i <= cols) out[i - 1] = v;
  return out;
}

double vector_p_norm(const Vec& v, const Exponent& p) {
  if (v.entries().empty()) return 0.0;
  // scale by the max entry so that pow() stays well conditioned
  double scale = 0.0;
  for (const auto& [i, x] : v.entries()) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (const auto& [i, x] : v.entries()) acc += std::pow(std::abs(x) / scale, p.value());
  return scale * std::pow(acc, 1.0 / p.value());
}

double vector_p_norm(const Vec& v) { return vector_p_norm(v, v.space().exponent()); }

double apply_functional(const Functional& f, const Vec& x) {
  if (f.space() != x.space())
    throw std::invalid_argument("apply_functional: functional and vector live on different spaces");
  // iterate over the smaller support
  const auto& a = f.coefficients();
  const auto& b = x.entries();
  double acc = 0.0;
  if (a.size() <= b.size()) {
    for (const auto& [i, c] : a) {
      auto it = b.find(i);
      if (it != b.end()) acc += c * it->second;
    }
  } else {
    for (const auto& [i, v] : b) {
      auto it = a.find(i);
      if (it != a.end()) acc += it->second * v;
    }
  }
  return acc;
}

std::pair<Vec, Functional> standard_basis(const ModelSpace& space, Index n) {
  if (n < 1) throw std::invalid_argument("standard_basis: n must be >= 1");
  if (space.is_finite() && n > space.dim())
    throw std::out_of_range("standard_basis: n exceeds space dimension");
  return {Vec(space, {{n, 1.0}}), Functional(space, {{n, 1.0}})};
}

}  // namespace framelab
