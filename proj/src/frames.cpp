#include "framelab/frames.hpp"

#include <Eigen/Dense>

#include <stdexcept>

#include "shift_form.hpp"

namespace framelab {

FrameSystem FrameSystem::finite(ModelSpace space, Exponent p, std::vector<Functional> functionals,
                                std::vector<Vec> vectors) {
  if (functionals.size() != vectors.size())
    throw std::invalid_argument("FrameSystem: families must have equal length");
  if (functionals.empty()) throw std::invalid_argument("FrameSystem: empty family");
  for (const auto& f : functionals)
    if (f.space() != space) throw std::invalid_argument("FrameSystem: functional on wrong space");
  for (const auto& v : vectors)
    if (v.space() != space) throw std::invalid_argument("FrameSystem: vector in wrong space");
  return FrameSystem(std::move(space), p,
                     FiniteFamilies{std::move(functionals), std::move(vectors)});
}

FrameSystem FrameSystem::generated(ModelSpace space, Exponent p, OperatorDesc analysis,
                                   OperatorDesc synthesis) {
  if (analysis.domain() != space)
    throw std::invalid_argument("FrameSystem: analysis operator domain mismatch");
  if (synthesis.codomain() != space)
    throw std::invalid_argument("FrameSystem: synthesis operator codomain mismatch");
  if (analysis.codomain() != synthesis.domain())
    throw std::invalid_argument("FrameSystem: coefficient spaces of U and V differ");
  return FrameSystem(std::move(space), p, Generated{std::move(analysis), std::move(synthesis)});
}

Index FrameSystem::count() const {
  if (is_generated()) return 0;
  return static_cast<Index>(finite_families().functionals.size());
}

Functional FrameSystem::functional_at(Index n) const {
  if (n < 1) throw std::out_of_range("FrameSystem::functional_at");
  if (!is_generated()) {
    const auto& fam = finite_families();
    if (n > static_cast<Index>(fam.functionals.size()))
      throw std::out_of_range("FrameSystem::functional_at");
    return fam.functionals[static_cast<std::size_t>(n - 1)];
  }
  // f_n = zeta_n U: row n of the analysis operator
  const OperatorDesc& u = generated_operators().analysis;
  if (auto form = detail::shift_normal_form(u)) return Functional(space_, form->row(n));
  Eigen::MatrixXd m = materialize(u, u.domain().is_finite() ? u.domain().dim() : n + 64);
  if (n > m.rows()) return Functional::zero(space_);
  return Functional::from_dense(space_, m.row(n - 1).transpose());
}

Vec FrameSystem::vector_at(Index n) const {
  if (n < 1) throw std::out_of_range("FrameSystem::vector_at");
  if (!is_generated()) {
    const auto& fam = finite_families();
    if (n > static_cast<Index>(fam.vectors.size()))
      throw std::out_of_range("FrameSystem::vector_at");
    return fam.vectors[static_cast<std::size_t>(n - 1)];
  }
  const OperatorDesc& v = generated_operators().synthesis;
  if (v.domain().is_finite() && n > v.domain().dim()) return Vec::zero(space_);
  return apply(v, standard_basis(v.domain(), n).first);
}

ModelSpace FrameSystem::coefficient_space() const {
  if (is_generated()) return generated_operators().analysis.codomain();
  return ModelSpace::finite(count(), p_);
}

OperatorDesc analysis_operator(const FrameSystem& fs) {
  if (fs.is_generated()) return fs.generated_operators().analysis;
  const auto& fam = fs.finite_families();
  const Index m = fs.count();
  const Index d = fs.space().dim();
  Eigen::MatrixXd rows(m, d);
  for (Index n = 0; n < m; ++n)
    rows.row(n) = fam.functionals[static_cast<std::size_t>(n)].to_dense(d).transpose();
  return OperatorDesc::dense(fs.space(), fs.coefficient_space(), std::move(rows));
}

OperatorDesc synthesis_operator(const FrameSystem& fs) {
  if (fs.is_generated()) return fs.generated_operators().synthesis;
  const auto& fam = fs.finite_families();
  const Index m = fs.count();
  const Index d = fs.space().dim();
  Eigen::MatrixXd cols(d, m);
  for (Index n = 0; n < m; ++n)
    cols.col(n) = fam.vectors[static_cast<std::size_t>(n)].to_dense(d);
  return OperatorDesc::dense(fs.coefficient_space(), fs.space(), std::move(cols));
}

OperatorDesc frame_operator(const FrameSystem& fs) {
  return compose(synthesis_operator(fs), analysis_operator(fs));
}

PAbsOutcome validate_p_abs(const FrameSystem& fs, const NormOptions& opts) {
  PAbsOutcome out;
  out.analysis_cert = operator_pnorm(analysis_operator(fs), fs.exponent(), opts);
  out.synthesis_cert = operator_pnorm(synthesis_operator(fs), fs.exponent(), opts);
  if (out.analysis_cert.upper && out.synthesis_cert.upper)
    out.bounds = BesselBounds{*out.analysis_cert.upper, *out.synthesis_cert.upper};
  return out;
}

PAsfOutcome validate_p_asf(const FrameSystem& fs, const NormOptions& opts) {
  PAsfOutcome out;
  PAbsOutcome abs = validate_p_abs(fs, opts);
  if (!abs.ok()) {
    out.status = PAsfOutcome::Status::Unbounded;
    return out;
  }
  out.bessel = abs.bounds;

  OperatorDesc s = frame_operator(fs);
  if (!fs.space().is_finite()) {
    // never certify invertibility from finite evidence
    auto witness = find_noninvertibility_witness(s, opts.horizons.empty() ? 64 : opts.horizons.back());
    if (witness.kind != NoninvertibilityWitness::Kind::NoneFound) {
      out.status = PAsfOutcome::Status::NotInvertible;
      out.witness = std::move(witness);
    } else {
      out.status = PAsfOutcome::Status::Undecided;
    }
    return out;
  }

  InvertInfo info;
  auto inv = invert_finite(s, &info);
  if (!inv) {
    out.status = PAsfOutcome::Status::NotInvertible;
    out.witness = find_noninvertibility_witness(s);
    return out;
  }
  NormCertificate cs = operator_pnorm(s, fs.exponent(), opts);
  NormCertificate ci = operator_pnorm(*inv, fs.exponent(), opts);
  out.status = PAsfOutcome::Status::Valid;
  out.bounds = FrameBounds{1.0 / ci.upper_or_inf(), cs.upper_or_inf()};
  return out;
}

std::pair<OperatorDesc, OperatorDesc> factorize_abs(const FrameSystem& fs) {
  return {analysis_operator(fs), synthesis_operator(fs)};
}

FrameSystem build_from_factorization(const ModelSpace& space, const Exponent& p,
                                     const OperatorDesc& analysis, const OperatorDesc& synthesis) {
  return FrameSystem::generated(space, p, analysis, synthesis);
}

FrameSystem mixed_system(const FrameSystem& functionals_from, const FrameSystem& vectors_from) {
  if (functionals_from.space() != vectors_from.space())
    throw std::invalid_argument("mixed_system: spaces differ");
  if (functionals_from.is_generated() != vectors_from.is_generated())
    throw std::invalid_argument("mixed_system: family kinds differ");
  if (functionals_from.is_generated()) {
    return FrameSystem::generated(functionals_from.space(), functionals_from.exponent(),
                                  functionals_from.generated_operators().analysis,
                                  vectors_from.generated_operators().synthesis);
  }
  if (functionals_from.count() != vectors_from.count())
    throw std::invalid_argument("mixed_system: family lengths differ");
  return FrameSystem::finite(functionals_from.space(), functionals_from.exponent(),
                             functionals_from.finite_families().functionals,
                             vectors_from.finite_families().vectors);
}

}  // namespace framelab
