#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "framelab/operators.hpp"

namespace framelab {

enum class Verdict { CertifiedYes, CertifiedNo, Undecided };

/// Certified bracket on an induced p-norm. `upper` empty means +inf (no
/// derivable bound). The verdict answers "is the norm strictly below 1?".
struct NormCertificate {
  double lower = 0.0;
  std::optional<double> upper;
  Verdict verdict_lt_one = Verdict::Undecided;
  std::string method_trace;

  double upper_or_inf() const {
    return upper ? *upper : std::numeric_limits<double>::infinity();
  }
};

struct NormOptions {
  std::vector<Index> horizons = {4, 8, 16, 32, 64};  // compression schedule
  double eps_cert = 1e-8;     // strictness margin for CertifiedYes
  double eps_machine = 1e-12; // rounding slack for CertifiedNo
  int restarts = 8;           // random restarts of the lower-bound iteration
  double tol = 1e-13;
  std::uint64_t seed = 0;
  int max_iter = 3000;
};

double vector_p_norm(const Eigen::VectorXd& v, double p);

/// Exact induced p-norm of a dense matrix; available for p in {1, 2}.
std::optional<double> pnorm_exact(const Eigen::MatrixXd& m, const Exponent& p);

/// Certified lower bound: best value of ||Mx||_p over ||x||_p = 1 found by
/// dual-norm ascent from basis, random, and (p = 2) singular-vector starts.
double pnorm_lower(const Eigen::MatrixXd& m, const Exponent& p, int restarts = 8,
                   double tol = 1e-13, std::uint64_t seed = 0, int max_iter = 3000);

/// Certified upper bound: min of the exact value (p in {1, 2}) and
/// Riesz-Thorin interpolation bounds through the 1-, 2- and inf-norms.
double pnorm_upper(const Eigen::MatrixXd& m, const Exponent& p);

/// Certified bracket on the induced p-norm of a descriptor. Finite domains
/// are materialized in full; Sequence domains combine compression lower
/// bounds with exact symbolic column/row sups where derivable.
NormCertificate operator_pnorm(const OperatorDesc& op, const Exponent& p,
                               const NormOptions& opts = {});

std::string to_string(Verdict v);

}  // namespace framelab
