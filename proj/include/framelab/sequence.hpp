#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <map>
#include <utility>

namespace framelab {

using Index = std::int64_t;  // coordinate indices are 1-based throughout

/// Exponent p of an l^p space, restricted to [1, inf).
class Exponent {
 public:
  explicit Exponent(double p);

  double value() const { return p_; }
  /// Conjugate exponent q with 1/p + 1/q = 1; q = +inf (represented as 0
  /// sentinel via is_one()) never occurs because callers branch on p == 1.
  double conjugate() const { return p_ / (p_ - 1.0); }
  bool is_one() const { return p_ == 1.0; }

  friend bool operator==(const Exponent& a, const Exponent& b) { return a.p_ == b.p_; }
  friend bool operator!=(const Exponent& a, const Exponent& b) { return !(a == b); }

 private:
  double p_;
};

enum class SpaceKind { Finite, Sequence };

/// Concrete model space: either l^p_d (dense, dim d) or the space of
/// finitely supported semi-infinite sequences with the l^p norm.
class ModelSpace {
 public:
  static ModelSpace finite(Index dim, Exponent p);
  static ModelSpace sequence(Exponent p);

  SpaceKind kind() const { return kind_; }
  bool is_finite() const { return kind_ == SpaceKind::Finite; }
  Index dim() const { return dim_; }  // meaningful only for Finite spaces
  const Exponent& exponent() const { return p_; }

  friend bool operator==(const ModelSpace& a, const ModelSpace& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_ && (a.kind_ == SpaceKind::Sequence || a.dim_ == b.dim_);
  }
  friend bool operator!=(const ModelSpace& a, const ModelSpace& b) { return !(a == b); }

 private:
  ModelSpace(SpaceKind kind, Index dim, Exponent p) : kind_(kind), dim_(dim), p_(p) {}

  SpaceKind kind_;
  Index dim_;
  Exponent p_;
};

/// Finitely supported vector in a model space. Entries are stored sparsely
/// as index -> coefficient with exact zeros pruned.
class Vec {
 public:
  Vec(ModelSpace space, std::map<Index, double> entries);
  static Vec zero(ModelSpace space) { return Vec(std::move(space), {}); }
  static Vec from_dense(ModelSpace space, const Eigen::VectorXd& v);

  const ModelSpace& space() const { return space_; }
  const std::map<Index, double>& entries() const { return entries_; }
  double operator[](Index i) const;
  Index max_index() const;  // 0 when the vector is zero
  bool is_zero() const { return entries_.empty(); }

  /// Dense view of the first `rows` coordinates.
  Eigen::VectorXd to_dense(Index rows) const;

 private:
  ModelSpace space_;
  std::map<Index, double> entries_;
};

/// Finitely supported functional f(x) = sum_n coeff_n * x_n on a model space.
class Functional {
 public:
  Functional(ModelSpace space, std::map<Index, double> coefficients);
  static Functional zero(ModelSpace space) { return Functional(std::move(space), {}); }
  static Functional from_dense(ModelSpace space, const Eigen::VectorXd& c);

  const ModelSpace& space() const { return space_; }
  const std::map<Index, double>& coefficients() const { return coeffs_; }
  double operator[](Index i) const;
  Index max_index() const;
  bool is_zero() const { return coeffs_.empty(); }

  Eigen::VectorXd to_dense(Index cols) const;

 private:
  ModelSpace space_;
  std::map<Index, double> coeffs_;
};

double vector_p_norm(const Vec& v, const Exponent& p);
double vector_p_norm(const Vec& v);  // uses the space's exponent

double apply_functional(const Functional& f, const Vec& x);

/// Standard basis vector e_n together with its coordinate functional.
std::pair<Vec, Functional> standard_basis(const ModelSpace& space, Index n);

}  // namespace framelab
