#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "framelab/norms.hpp"
#include "framelab/operators.hpp"
#include "framelab/sequence.hpp"

namespace framelab {

/// Bessel bounds: c bounds the analysis operator, d the synthesis operator.
struct BesselBounds {
  double analysis_bound = 0.0;   // c
  double synthesis_bound = 0.0;  // d
};

/// Frame bounds a <= b of a valid frame system (a certified bracket on the
/// frame operator: a ||x|| <= ||S x|| <= b ||x||).
struct FrameBounds {
  double lower = 0.0;  // a
  double upper = 0.0;  // b
};

/// A frame system: paired families ({f_n}, {tau_n}) of functionals and
/// vectors over a model space. Families are either stored densely (finite
/// count) or generated from a factorization f_n = zeta_n U, tau_n = V e_n.
class FrameSystem {
 public:
  struct FiniteFamilies {
    std::vector<Functional> functionals;
    std::vector<Vec> vectors;
  };
  struct Generated {
    OperatorDesc analysis;   // U : X -> l^p
    OperatorDesc synthesis;  // V : l^p -> X
  };

  static FrameSystem finite(ModelSpace space, Exponent p, std::vector<Functional> functionals,
                            std::vector<Vec> vectors);
  static FrameSystem generated(ModelSpace space, Exponent p, OperatorDesc analysis,
                               OperatorDesc synthesis);

  const ModelSpace& space() const { return space_; }
  const Exponent& exponent() const { return p_; }
  bool is_generated() const { return std::holds_alternative<Generated>(families_); }
  /// Number of stored pairs; 0 for generated systems (unbounded family).
  Index count() const;

  /// n-th functional / vector, 1-based; generated families are evaluated
  /// lazily at any index.
  Functional functional_at(Index n) const;
  Vec vector_at(Index n) const;

  const FiniteFamilies& finite_families() const { return std::get<FiniteFamilies>(families_); }
  const Generated& generated_operators() const { return std::get<Generated>(families_); }

  /// The l^p model the analysis operator maps into.
  ModelSpace coefficient_space() const;

 private:
  FrameSystem(ModelSpace space, Exponent p, std::variant<FiniteFamilies, Generated> fam)
      : space_(std::move(space)), p_(p), families_(std::move(fam)) {}

  ModelSpace space_;
  Exponent p_;
  std::variant<FiniteFamilies, Generated> families_;
};

/// theta_f : x -> {f_n(x)}_n.
OperatorDesc analysis_operator(const FrameSystem& fs);
/// theta_tau : {a_n} -> sum a_n tau_n.
OperatorDesc synthesis_operator(const FrameSystem& fs);
/// S = theta_tau theta_f.
OperatorDesc frame_operator(const FrameSystem& fs);

struct PAbsOutcome {
  std::optional<BesselBounds> bounds;  // empty: a norm had no derivable upper bound
  NormCertificate analysis_cert;
  NormCertificate synthesis_cert;
  bool ok() const { return bounds.has_value(); }
};

/// Bessel validation: certified upper bounds on both operators.
PAbsOutcome validate_p_abs(const FrameSystem& fs, const NormOptions& opts = {});

struct PAsfOutcome {
  enum class Status { Valid, NotInvertible, Undecided, Unbounded };
  Status status = Status::Undecided;
  std::optional<FrameBounds> bounds;
  std::optional<BesselBounds> bessel;
  std::optional<NoninvertibilityWitness> witness;
  bool ok() const { return status == Status::Valid; }
};

/// Frame validation. On Finite spaces the frame operator is inverted with a
/// condition gate; on Sequence spaces invertibility is never certified from
/// compressions -- the outcome is NotInvertible (with a witness) or Undecided.
PAsfOutcome validate_p_asf(const FrameSystem& fs, const NormOptions& opts = {});

/// Factorization (U, V) = (theta_f, theta_tau) of a Bessel system.
std::pair<OperatorDesc, OperatorDesc> factorize_abs(const FrameSystem& fs);

/// Converse: the system with f_n = zeta_n U and tau_n = V e_n.
FrameSystem build_from_factorization(const ModelSpace& space, const Exponent& p,
                                     const OperatorDesc& analysis, const OperatorDesc& synthesis);

/// Cross system ({f_n of a}, {tau_n of b}); counts/spaces must agree.
FrameSystem mixed_system(const FrameSystem& functionals_from, const FrameSystem& vectors_from);

}  // namespace framelab
