#include "framelab/operators.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace framelab {

namespace {

std::shared_ptr<const OperatorDesc> boxed(OperatorDesc op) {
  return std::make_shared<const OperatorDesc>(std::move(op));
}

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

OperatorDesc OperatorDesc::dense(ModelSpace domain, ModelSpace codomain, Eigen::MatrixXd m) {
  require(domain.is_finite() && codomain.is_finite(), "dense: both spaces must be Finite");
  require(m.rows() == codomain.dim() && m.cols() == domain.dim(), "dense: matrix shape mismatch");
  return OperatorDesc(std::move(domain), std::move(codomain), Dense{std::move(m)});
}

OperatorDesc OperatorDesc::shift(const ModelSpace& space, int power) {
  require(!space.is_finite(), "shift: only defined between Sequence spaces");
  require(power != 0, "shift: power must be nonzero");
  return OperatorDesc(space, space, Shift{power});
}

OperatorDesc OperatorDesc::identity(const ModelSpace& space) {
  return OperatorDesc(space, space, Identity{});
}

OperatorDesc OperatorDesc::finite_rank(ModelSpace domain, ModelSpace codomain,
                                       std::vector<std::pair<Vec, Functional>> pairs) {
  for (const auto& [v, f] : pairs) {
    require(v.space() == codomain, "finite_rank: vector not in codomain");
    require(f.space() == domain, "finite_rank: functional not on domain");
  }
  return OperatorDesc(std::move(domain), std::move(codomain), FiniteRank{std::move(pairs)});
}

OperatorDesc OperatorDesc::scaled(double factor, OperatorDesc inner) {
  ModelSpace d = inner.domain(), c = inner.codomain();
  return OperatorDesc(std::move(d), std::move(c), Scaled{factor, boxed(std::move(inner))});
}

OperatorDesc OperatorDesc::sum(std::vector<OperatorDesc> terms) {
  require(!terms.empty(), "sum: needs at least one term");
  for (const auto& t : terms)
    require(t.domain() == terms.front().domain() && t.codomain() == terms.front().codomain(),
            "sum: all terms must share domain and codomain");
  ModelSpace d = terms.front().domain(), c = terms.front().codomain();
  Sum body;
  body.terms.reserve(terms.size());
  for (auto& t : terms) body.terms.push_back(boxed(std::move(t)));
  return OperatorDesc(std::move(d), std::move(c), std::move(body));
}

OperatorDesc OperatorDesc::compose(OperatorDesc after, OperatorDesc before) {
  require(before.codomain() == after.domain(), "compose: shape mismatch");
  ModelSpace d = before.domain(), c = after.codomain();
  Compose body;
  body.terms.push_back(boxed(std::move(after)));
  body.terms.push_back(boxed(std::move(before)));
  return OperatorDesc(std::move(d), std::move(c), std::move(body));
}

OperatorDesc OperatorDesc::compose_chain(std::vector<OperatorDesc> terms) {
  require(!terms.empty(), "compose_chain: needs at least one term");
  for (std::size_t i = 0; i + 1 < terms.size(); ++i)
    require(terms[i + 1].codomain() == terms[i].domain(), "compose_chain: shape mismatch");
  ModelSpace d = terms.back().domain(), c = terms.front().codomain();
  Compose body;
  body.terms.reserve(terms.size());
  for (auto& t : terms) body.terms.push_back(boxed(std::move(t)));
  return OperatorDesc(std::move(d), std::move(c), std::move(body));
}

OperatorDesc OperatorDesc::zero(ModelSpace domain, ModelSpace codomain) {
  return OperatorDesc(std::move(domain), std::move(codomain), FiniteRank{{}});
}

OperatorDesc compose(const OperatorDesc& after, const OperatorDesc& before) {
  return OperatorDesc::compose(after, before);
}

Vec apply(const OperatorDesc& op, const Vec& x) {
  if (x.space() != op.domain())
    throw std::invalid_argument("apply: vector not in the operator's domain");

  struct Visitor {
    const OperatorDesc& op;
    const Vec& x;

    Vec operator()(const OperatorDesc::Dense& d) const {
      Eigen::VectorXd v = d.matrix * x.to_dense(op.domain().dim());
      return Vec::from_dense(op.codomain(), v);
    }
    Vec operator()(const OperatorDesc::Shift& s) const {
      std::map<Index, double> out;
      for (const auto& [i, v] : x.entries()) {
        Index j = i + s.power;
        if (j >= 1) out[j] = v;
      }
      return Vec(op.codomain(), std::move(out));
    }
    Vec operator()(const OperatorDesc::Identity&) const { return x; }
    Vec operator()(const OperatorDesc::FiniteRank& fr) const {
      std::map<Index, double> out;
      for (const auto& [v, f] : fr.pairs) {
        double c = apply_functional(f, x);
        if (c == 0.0) continue;
        for (const auto& [i, w] : v.entries()) out[i] += c * w;
      }
      return Vec(op.codomain(), std::move(out));
    }
    Vec operator()(const OperatorDesc::Scaled& s) const {
      Vec y = apply(*s.inner, x);
      std::map<Index, double> out;
      for (const auto& [i, v] : y.entries()) out[i] = s.factor * v;
      return Vec(op.codomain(), std::move(out));
    }
    Vec operator()(const OperatorDesc::Sum& s) const {
      std::map<Index, double> out;
      for (const auto& t : s.terms) {
        Vec y = apply(*t, x);
        for (const auto& [i, v] : y.entries()) out[i] += v;
      }
      return Vec(op.codomain(), std::move(out));
    }
    Vec operator()(const OperatorDesc::Compose& c) const {
      Vec y = x;
      for (auto it = c.terms.rbegin(); it != c.terms.rend(); ++it) y = apply(**it, y);
      return y;
    }
  };
  return std::visit(Visitor{op, x}, op.body());
}

Eigen::MatrixXd materialize(const OperatorDesc& op, Index n) {
  if (n < 1) throw std::invalid_argument("materialize: n must be >= 1");
  if (op.domain().is_finite()) n = std::min(n, op.domain().dim());

  std::vector<Vec> cols;
  cols.reserve(static_cast<std::size_t>(n));
  Index max_row = 0;
  for (Index k = 1; k <= n; ++k) {
    auto [ek, zk] = standard_basis(op.domain(), k);
    Vec img = apply(op, ek);
    max_row = std::max(max_row, img.max_index());
    cols.push_back(std::move(img));
  }
  Index rows = op.codomain().is_finite() ? op.codomain().dim() : std::max<Index>(max_row, n);
  rows = std::max<Index>(rows, 1);

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, n);
  for (Index k = 0; k < n; ++k)
    for (const auto& [i, v] : cols[static_cast<std::size_t>(k)].entries())
      if (i <= rows) m(i - 1, k) = v;
  return m;
}

std::optional<OperatorDesc> invert_finite(const OperatorDesc& op, InvertInfo* info) {
  if (!op.domain().is_finite() || !op.codomain().is_finite())
    throw std::invalid_argument("invert_finite: operator must act between Finite spaces");
  if (op.domain().dim() != op.codomain().dim())
    throw std::invalid_argument("invert_finite: operator must be square");

  const Index d = op.domain().dim();
  Eigen::MatrixXd a = materialize(op, d);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  Eigen::MatrixXd inv = lu.inverse();

  InvertInfo local;
  InvertInfo& out = info ? *info : local;
  if (!inv.allFinite()) {
    out.reason = "singular matrix";
    return std::nullopt;
  }
  double norm_a = a.cwiseAbs().colwise().sum().maxCoeff();
  double norm_inv = inv.cwiseAbs().colwise().sum().maxCoeff();
  out.condition = norm_a * norm_inv;
  if (out.condition > 1e12) {
    out.reason = "condition estimate exceeds 1e12";
    return std::nullopt;
  }
  Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(d, d);
  out.residual = std::max((a * inv - eye).cwiseAbs().maxCoeff(), (inv * a - eye).cwiseAbs().maxCoeff());
  if (out.residual > 1e-10) {
    out.reason = "inverse residual exceeds 1e-10";
    return std::nullopt;
  }
  return OperatorDesc::dense(op.codomain(), op.domain(), std::move(inv));
}

namespace {

// Certified lower bound on min_x ||Mx - y||_p from the 2-norm least-squares
// residual plus the zero-row shortcut (rows of M that vanish identically
// pin the corresponding coordinate of the residual to y_i).
double range_gap_lower_bound(const Eigen::MatrixXd& m, const Eigen::VectorXd& y, double p) {
  double zero_row_gap = 0.0;
  for (Index r = 0; r < m.rows(); ++r)
    if (m.row(r).cwiseAbs().maxCoeff() == 0.0) zero_row_gap = std::max(zero_row_gap, std::abs(y[r]));

  Eigen::VectorXd ls = m.colPivHouseholderQr().solve(y);
  double r2 = (m * ls - y).norm();
  double factor = p <= 2.0 ? 1.0 : std::pow(static_cast<double>(m.rows()), 1.0 / p - 0.5);
  return std::max(zero_row_gap, factor * r2);
}

}  // namespace

NoninvertibilityWitness find_noninvertibility_witness(const OperatorDesc& op, Index horizon) {
  if (!op.endomorphism())
    throw std::invalid_argument("find_noninvertibility_witness: operator must be square-shaped");
  const double p = op.domain().exponent().value();

  std::vector<Index> horizons;
  if (op.domain().is_finite()) {
    horizons.push_back(op.domain().dim());
  } else {
    for (Index n = 1; n <= horizon; n = n < 4 ? n + 1 : n * 2) horizons.push_back(n);
  }

  // kernel search: any null vector of a compression is an exact kernel
  // vector of the operator itself (columns are exact images)
  for (Index n : horizons) {
    Eigen::MatrixXd m = materialize(op, n);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinV);
    double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
    double smin = svd.singularValues()[svd.singularValues().size() - 1];
    if (smin <= 1e-10 * std::max(1.0, smax)) {
      Eigen::VectorXd k = svd.matrixV().col(svd.matrixV().cols() - 1);
      Vec cand = Vec::from_dense(op.domain(), k);
      Vec img = apply(op, cand);
      if (vector_p_norm(img, op.domain().exponent()) <=
          1e-10 * vector_p_norm(cand, op.domain().exponent())) {
        NoninvertibilityWitness w;
        w.kind = NoninvertibilityWitness::Kind::KernelVec;
        w.vec = std::move(cand);
        return w;
      }
    }
  }

  // range-gap search over small basis targets
  const Index max_target = op.domain().is_finite() ? op.domain().dim() : 8;
  for (Index t = 1; t <= max_target; ++t) {
    double gap = std::numeric_limits<double>::infinity();
    for (Index n : horizons) {
      Eigen::MatrixXd m = materialize(op, n);
      Eigen::VectorXd y = Eigen::VectorXd::Zero(m.rows());
      if (t <= m.rows()) y[t - 1] = 1.0;
      gap = std::min(gap, range_gap_lower_bound(m, y, p));
      if (gap <= 0.5) break;
    }
    if (gap > 0.5) {
      NoninvertibilityWitness w;
      w.kind = NoninvertibilityWitness::Kind::RangeGap;
      w.vec = standard_basis(op.domain(), t).first;
      w.residual = gap;
      return w;
    }
  }
  return {};
}

}  // namespace framelab
