#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "framelab/frames.hpp"

namespace framelab {

enum class DualityVerdict { ExactDual, ApproxDual, NotApproxDual, Undecided, Inconclusive };

/// Joint report on the duality of two frame systems F = ({f_n},{tau_n}) and
/// G = ({g_n},{omega_n}). cert_fg brackets ||I - theta_omega theta_f||,
/// cert_gf brackets ||I - theta_tau theta_g||.
struct DualityReport {
  double exact_residual = 0.0;
  NormCertificate cert_fg;
  NormCertificate cert_gf;
  DualityVerdict verdict = DualityVerdict::Undecided;
  std::string trace;
};

class NotInvertibleError : public std::runtime_error {
 public:
  NotInvertibleError(const std::string& msg, NoninvertibilityWitness witness)
      : std::runtime_error(msg), witness_(std::move(witness)) {}
  const NoninvertibilityWitness& witness() const { return witness_; }

 private:
  NoninvertibilityWitness witness_;
};

/// Rejection of a parametrized dual construction.
struct DualRejection {
  enum class Reason { ConditionOperatorSingular, NormConditionViolated };
  Reason reason;
  std::string detail;
  std::optional<NoninvertibilityWitness> witness;
};

/// The two defect operators (I - theta_omega theta_f, I - theta_tau theta_g).
std::pair<OperatorDesc, OperatorDesc> defect_operators(const FrameSystem& f, const FrameSystem& g);

/// Checks x = sum g_n(x) tau_n = sum f_n(x) omega_n on random unit probes
/// plus all basis vectors; on Finite spaces additionally compares the
/// materialized cross operators against the identity entrywise. Verdict is
/// ExactDual at residual <= 1e-9, otherwise classified by the certificates.
DualityReport is_exact_dual(const FrameSystem& f, const FrameSystem& g, int probes = 32,
                            std::uint64_t seed = 0, const NormOptions& opts = {});

/// The canonical systems derived from the inverse frame operator. `left`
/// modifies the functionals (f_n S^-1), `right` modifies the vectors
/// (S^-1 tau_n); each satisfies one reconstruction identity and both are
/// valid frame systems. `canonical` combines the two and is an exact dual.
struct CanonicalDuals {
  FrameSystem left;
  FrameSystem right;
  FrameSystem canonical;
};

CanonicalDuals canonical_duals(const FrameSystem& f);

/// Full dual parametrization: given bounded U : X -> l^p and V : l^p -> X,
/// builds g_n = f_n S^-1 + zeta_n U - f_n S^-1 theta_tau U and
/// omega_n = S^-1 tau_n + V e_n - V theta_f S^-1 tau_n. The construction is
/// accepted only when S^-1 + VU - V theta_f S^-1 theta_tau U is invertible
/// (that operator equals the frame operator of the output).
std::variant<FrameSystem, DualRejection> parametrize_dual(const FrameSystem& f,
                                                          const OperatorDesc& u,
                                                          const OperatorDesc& v);

/// Certificate-based approximate-duality check of Definition-style defects.
DualityReport certify_approx_dual(const FrameSystem& f, const FrameSystem& g,
                                  const NormOptions& opts = {});

/// (||x - theta_omega theta_f x||_p, ||x - theta_tau theta_g x||_p).
std::pair<double, double> reconstruction_error(const FrameSystem& f, const FrameSystem& g,
                                               const Vec& x);

/// Exact duals generated from an approximately dual pair:
/// first = ({g_n S_{g,tau}^-1}, {S_{f,omega}^-1 omega_n}) is a dual for F,
/// second = ({f_n S_{f,omega}^-1}, {S_{g,tau}^-1 tau_n}) is a dual for G.
std::pair<FrameSystem, FrameSystem> dual_from_approx(const FrameSystem& f, const FrameSystem& g);

/// Operator factorization of an approximate dual: U = theta_tau theta_g,
/// V = theta_omega theta_f, and the exact dual H = ({g_n U^-1}, {V^-1 omega_n}).
struct ApproxDualFactorization {
  OperatorDesc u;
  OperatorDesc v;
  FrameSystem exact_dual;
  NormCertificate defect_u;  // ||I - U||
  NormCertificate defect_v;  // ||I - V||
};

ApproxDualFactorization factorize_approx_dual(const FrameSystem& f, const FrameSystem& g);

/// Approximate-dual parametrization with contractive factors U, V : X -> X
/// (||I - U|| < 1, ||I - V|| < 1) and free A : X -> l^p, B : l^p -> X.
std::variant<FrameSystem, DualRejection> parametrize_approx_dual_asf(
    const FrameSystem& f, const OperatorDesc& u, const OperatorDesc& v, const OperatorDesc& a,
    const OperatorDesc& b, const NormOptions& opts = {});

/// Neumann-series refinement of an approximate dual at depth N.
struct NeumannIterate {
  int depth = 0;
  FrameSystem system;  // ({h_n^(N)}, {rho_n^(N)})
  double bound_fg = 0.0;  // upper(||I - S_{f,omega}||)^{N+1}
  double bound_gf = 0.0;  // upper(||I - S_{g,tau}||)^{N+1}
  NormCertificate defect_fg;  // certified ||I - theta_rho theta_f||
  NormCertificate defect_gf;  // certified ||I - theta_tau theta_h||
  double identity_residual_fg = 0.0;  // max-entry gap of the closed form
  double identity_residual_gf = 0.0;
};

NeumannIterate neumann_iterate(const FrameSystem& f, const FrameSystem& g, int depth,
                               const NormOptions& opts = {});

/// Perturbation bounds R (analysis) and Q (synthesis) of F against the
/// reference system H, with the Bessel bounds (c, d) of H's exact dual G.
struct PerturbationBounds {
  double analysis_perturbation = 0.0;   // R
  double synthesis_perturbation = 0.0;  // Q
  BesselBounds reference;               // (c, d) of G
};

/// If dR < 1 and cQ < 1 the pair (F, G) is certified approximately dual with
/// defect norms at most dR and cQ; otherwise the verdict is Inconclusive.
std::pair<PerturbationBounds, DualityReport> perturbation_approx_dual(const FrameSystem& h,
                                                                      const FrameSystem& g,
                                                                      const FrameSystem& f,
                                                                      const NormOptions& opts = {});

std::string to_string(DualityVerdict v);

}  // namespace framelab
