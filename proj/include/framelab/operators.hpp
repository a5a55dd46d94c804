#pragma once

#include <Eigen/Core>

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "framelab/sequence.hpp"

namespace framelab {

/// Symbolic description of a bounded, column-finite operator between model
/// spaces. Descriptors are immutable; composite bodies share their children.
class OperatorDesc {
 public:
  struct Dense {
    Eigen::MatrixXd matrix;
  };
  struct Shift {
    int power;  // > 0: right shift R^k, < 0: left shift L^|k|
  };
  struct Identity {};
  struct FiniteRank {
    std::vector<std::pair<Vec, Functional>> pairs;  // x -> sum f_i(x) v_i
  };
  struct Scaled {
    double factor;
    std::shared_ptr<const OperatorDesc> inner;
  };
  struct Sum {
    std::vector<std::shared_ptr<const OperatorDesc>> terms;
  };
  struct Compose {
    // terms[0] applied last: Compose{A, B} acts as A(B(x))
    std::vector<std::shared_ptr<const OperatorDesc>> terms;
  };
  using Body = std::variant<Dense, Shift, Identity, FiniteRank, Scaled, Sum, Compose>;

  static OperatorDesc dense(ModelSpace domain, ModelSpace codomain, Eigen::MatrixXd m);
  static OperatorDesc shift(const ModelSpace& space, int power);
  static OperatorDesc identity(const ModelSpace& space);
  static OperatorDesc finite_rank(ModelSpace domain, ModelSpace codomain,
                                  std::vector<std::pair<Vec, Functional>> pairs);
  static OperatorDesc scaled(double factor, OperatorDesc inner);
  static OperatorDesc sum(std::vector<OperatorDesc> terms);
  static OperatorDesc compose(OperatorDesc after, OperatorDesc before);
  static OperatorDesc compose_chain(std::vector<OperatorDesc> terms);
  static OperatorDesc zero(ModelSpace domain, ModelSpace codomain);

  const ModelSpace& domain() const { return domain_; }
  const ModelSpace& codomain() const { return codomain_; }
  const Body& body() const { return body_; }
  bool endomorphism() const { return domain_ == codomain_; }

 private:
  OperatorDesc(ModelSpace domain, ModelSpace codomain, Body body)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), body_(std::move(body)) {}

  ModelSpace domain_;
  ModelSpace codomain_;
  Body body_;
};

/// Exact image of x under the described operator.
Vec apply(const OperatorDesc& op, const Vec& x);

OperatorDesc compose(const OperatorDesc& after, const OperatorDesc& before);

/// Finite matrix of the operator restricted to inputs supported on 1..n.
/// Rows cover every reachable output coordinate: the codomain dimension for
/// Finite codomains, max(largest reached index, n) for Sequence codomains
/// (zero-row padding keeps square descriptors square).
Eigen::MatrixXd materialize(const OperatorDesc& op, Index n);

struct InvertInfo {
  double condition = 0.0;  // 1-norm condition estimate
  double residual = 0.0;   // max-entry residual of A*B - I and B*A - I
  std::string reason;      // set when the inversion was rejected
};

/// Inverse of a square operator between Finite spaces. Returns nullopt when
/// the matrix is singular, the 1-norm condition estimate exceeds 1e12, or the
/// inverse fails the residual gate (1e-10 max-entry). Throws on Sequence
/// inputs: invertibility is not decidable from compressions.
std::optional<OperatorDesc> invert_finite(const OperatorDesc& op, InvertInfo* info = nullptr);

struct NoninvertibilityWitness {
  enum class Kind { KernelVec, RangeGap, NoneFound };
  Kind kind = Kind::NoneFound;
  std::optional<Vec> vec;
  double residual = 0.0;  // certified range-gap size for RangeGap
};

/// Searches compressions up to `horizon` for a concrete obstruction to
/// invertibility: a finitely supported kernel vector, or a target basis
/// vector whose distance to the range stays above 0.5 at every horizon.
NoninvertibilityWitness find_noninvertibility_witness(const OperatorDesc& op, Index horizon = 64);

}  // namespace framelab
