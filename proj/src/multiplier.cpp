#include "framemult/multiplier.hpp"

#include "framemult/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace framemult {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Symbol head(const Symbol& m, Index n) {
  Symbol out = m;
  out.values = m.values.head(n);
  return out;
}

SequenceFamily head(const SequenceFamily& f, Index n) {
  SequenceFamily out = f;
  out.vectors = f.vectors.leftCols(n);
  return out;
}

}  // namespace

AnalyticHints AnalyticHints::swapped() const {
  AnalyticHints h;
  h.difference_B = difference_B;
  h.weighted_difference_B_synthesis = weighted_difference_B_analysis;
  h.weighted_difference_B_analysis = weighted_difference_B_synthesis;
  h.weighted_dual_difference_B_synthesis = weighted_dual_difference_B_analysis;
  h.weighted_dual_difference_B_analysis = weighted_dual_difference_B_synthesis;
  return h;
}

bool AnalyticHints::empty() const {
  return !difference_B && !weighted_difference_B_synthesis &&
         !weighted_difference_B_analysis && !weighted_dual_difference_B_synthesis &&
         !weighted_dual_difference_B_analysis;
}

MultiplierSpec make_spec(Symbol m, SequenceFamily phi, SequenceFamily psi,
                         AnalyticHints hints, std::string label) {
  if (phi.dim() != psi.dim()) {
    std::ostringstream os;
    os << "make_spec: synthesis family lives in C^" << phi.dim()
       << ", analysis family in C^" << psi.dim();
    throw Error(ErrorCode::dim_mismatch, os.str());
  }
  MultiplierSpec s;
  s.source_count_m = m.count();
  s.source_count_phi = phi.count();
  s.source_count_psi = psi.count();
  const Index n = std::min({m.count(), phi.count(), psi.count()});
  if (n == 0) throw Error(ErrorCode::count_mismatch, "make_spec: empty sequence");
  s.m = head(m, n);
  s.phi = head(phi, n);
  s.psi = head(psi, n);
  s.hints = hints;
  s.label = std::move(label);
  return s;
}

void validate(const MultiplierSpec& spec) {
  if (spec.phi.dim() != spec.psi.dim()) {
    throw Error(ErrorCode::dim_mismatch, "multiplier: phi and psi dims differ");
  }
  if (spec.m.count() != spec.phi.count() || spec.m.count() != spec.psi.count()) {
    std::ostringstream os;
    os << "multiplier: counts m=" << spec.m.count() << " phi=" << spec.phi.count()
       << " psi=" << spec.psi.count();
    throw Error(ErrorCode::count_mismatch, os.str());
  }
}

LinearOp build(const MultiplierSpec& spec) {
  validate(spec);
  LinearOp op = compose(synthesis(spec.phi),
                        compose(diagonal(spec.m.values, spec.m.label), analysis(spec.psi)));
  return LinearOp(op.rows(), op.cols(), [op](const Vector& x) { return op.apply(x); },
                  [op](const Vector& y) { return op.apply_adjoint(y); }, spec.label);
}

Matrix dense(const MultiplierSpec& spec) {
  validate(spec);
  return spec.phi.vectors * spec.m.values.asDiagonal() * spec.psi.vectors.adjoint();
}

MultiplierSpec adjoint_spec(const MultiplierSpec& spec) {
  MultiplierSpec s = spec;
  s.m = spec.m.conj();
  s.phi = spec.psi;
  s.psi = spec.phi;
  s.hints = spec.hints.swapped();
  std::swap(s.source_count_phi, s.source_count_psi);
  s.label = spec.label + "^*";
  return s;
}

MultiplierSpec swap_spec(const MultiplierSpec& spec) {
  MultiplierSpec s = spec;
  s.phi = spec.psi;
  s.psi = spec.phi;
  s.hints = AnalyticHints{};
  s.hints.difference_B = spec.hints.difference_B;
  std::swap(s.source_count_phi, s.source_count_psi);
  s.label = "swap(" + spec.label + ")";
  return s;
}

MultiplierSpec prune(const MultiplierSpec& spec) {
  PrunedTriple p = prune_zeros(spec.m, spec.phi, spec.psi);
  MultiplierSpec s = spec;
  s.m = std::move(p.m);
  s.phi = std::move(p.phi);
  s.psi = std::move(p.psi);
  return s;
}

double symbol_sup_abs(const Symbol& m) {
  if (m.tags.ell_infty == Tri::no) return kInf;
  double v = m.count() ? m.values.cwiseAbs().maxCoeff() : 0.0;
  if (m.analytic_sup_abs) v = std::max(v, *m.analytic_sup_abs);
  return v;
}

double symbol_inf_abs(const Symbol& m) {
  if (m.tags.nbb == Tri::no) return 0.0;
  double v = m.count() ? m.values.cwiseAbs().minCoeff() : 0.0;
  if (m.analytic_inf_abs) v = std::min(v, *m.analytic_inf_abs);
  return v;
}

double symbol_sup_dev_one(const Symbol& m) {
  if (m.tags.ell_infty == Tri::no) return kInf;
  double v = 0.0;
  for (Index n = 0; n < m.count(); ++n) v = std::max(v, std::abs(m.values[n] - 1.0));
  if (m.analytic_sup_dev_one) v = std::max(v, *m.analytic_sup_dev_one);
  return v;
}

SymbolSign symbol_sign(const Symbol& m, const Tolerances& tol) {
  bool pos = true;
  bool neg = true;
  for (Index n = 0; n < m.count(); ++n) {
    const Complex v = m.values[n];
    if (std::abs(v.imag()) > tol.tol_sign) return SymbolSign::mixed;
    if (!(v.real() > 0.0)) pos = false;
    if (!(v.real() < 0.0)) neg = false;
  }
  if (pos && m.tags.positive != Tri::no) return SymbolSign::positive;
  if (neg && m.tags.negative != Tri::no) return SymbolSign::negative;
  return SymbolSign::mixed;
}

FrameBounds guarded_bounds(const SequenceFamily& phi, const Tolerances& tol) {
  FrameBounds fb = frame_bounds(phi, SpectralMethod::dense_oracle, tol);
  const ClassTags t = phi.tags.normalized();
  if (phi.analytic_A) fb.A_lower = std::min(fb.A_lower, *phi.analytic_A);
  if (phi.analytic_B) fb.B_upper = std::max(fb.B_upper, *phi.analytic_B);
  if (t.frame == Tri::no) fb.A_lower = 0.0;
  if (t.bessel == Tri::no) fb.B_upper = kInf;
  return fb;
}

double norm_bound(const MultiplierSpec& spec, bool analytic) {
  validate(spec);
  if (!analytic) {
    const double sup = spec.m.count() ? spec.m.values.cwiseAbs().maxCoeff() : 0.0;
    return std::sqrt(bessel_upper(spec.phi) * bessel_upper(spec.psi)) * sup;
  }
  const double sup = symbol_sup_abs(spec.m);
  if (!std::isfinite(sup)) {
    throw Error(ErrorCode::unbounded_symbol,
                "norm_bound: symbol " + spec.m.label + " is not bounded");
  }
  const double bp = guarded_bounds(spec.phi).B_upper;
  const double bq = guarded_bounds(spec.psi).B_upper;
  if (!std::isfinite(bp) || !std::isfinite(bq)) {
    throw Error(ErrorCode::unbounded_symbol,
                "norm_bound: a family is not Bessel, the bound does not apply");
  }
  return std::sqrt(bp * bq) * sup;
}

}  // namespace framemult
