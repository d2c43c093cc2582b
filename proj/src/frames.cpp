#include "framemult/frames.hpp"

#include "framemult/error.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace framemult {

namespace {

// a => b
void imply(Tri a, Tri& b) {
  if (a == Tri::yes && b == Tri::unknown) b = Tri::yes;
}
// a == no => b == no
void deny(Tri a, Tri& b) {
  if (a == Tri::no && b == Tri::unknown) b = Tri::no;
}

bool violates(Tri a, Tri b) { return a == Tri::yes && b == Tri::no; }

TagProvenance combine(TagProvenance a, TagProvenance b) {
  if (a == TagProvenance::analytic && b == TagProvenance::analytic) {
    return TagProvenance::analytic;
  }
  if (a == TagProvenance::declared || b == TagProvenance::declared) {
    return TagProvenance::declared;
  }
  return TagProvenance::numeric_truncation;
}

}  // namespace

std::string_view to_string(TagProvenance p) {
  switch (p) {
    case TagProvenance::analytic: return "analytic";
    case TagProvenance::numeric_truncation: return "numeric_truncation";
    case TagProvenance::declared: return "declared";
  }
  return "declared";
}

ClassTags ClassTags::normalized() const {
  ClassTags t = *this;
  for (int pass = 0; pass < 3; ++pass) {
    imply(t.riesz, t.frame);
    imply(t.riesz, t.nbb);
    imply(t.frame, t.bessel);
    imply(t.bessel, t.nba);
    imply(t.sn, t.nbb);
    imply(t.sn, t.nba);
    deny(t.nba, t.bessel);
    deny(t.bessel, t.frame);
    deny(t.frame, t.riesz);
    deny(t.nbb, t.riesz);
    deny(t.nbb, t.sn);
    deny(t.nba, t.sn);
    if (t.sn == Tri::unknown) {
      const Tri both = tri_and(t.nbb, t.nba);
      if (both == Tri::yes) t.sn = Tri::yes;
    }
  }
  return t;
}

bool ClassTags::consistent() const {
  return !(violates(riesz, frame) || violates(riesz, bessel) || violates(riesz, nba) ||
           violates(riesz, nbb) || violates(riesz, sn) || violates(frame, bessel) ||
           violates(frame, nba) || violates(bessel, nba) || violates(sn, nbb) ||
           violates(sn, nba) ||
           (sn == Tri::no && nbb == Tri::yes && nba == Tri::yes));
}

SymbolTags SymbolTags::normalized() const {
  SymbolTags t = *this;
  imply(t.sn, t.nbb);
  imply(t.sn, t.ell_infty);
  deny(t.nbb, t.sn);
  deny(t.ell_infty, t.sn);
  if (t.sn == Tri::unknown && tri_and(t.nbb, t.ell_infty) == Tri::yes) t.sn = Tri::yes;
  if (t.positive == Tri::yes && t.negative == Tri::unknown) t.negative = Tri::no;
  if (t.negative == Tri::yes && t.positive == Tri::unknown) t.positive = Tri::no;
  return t;
}

SequenceFamily make_family(Matrix vectors, std::string label, ClassTags tags) {
  SequenceFamily f;
  f.vectors = std::move(vectors);
  f.label = std::move(label);
  f.tags = tags.normalized();
  return f;
}

Symbol Symbol::conj() const {
  Symbol s = *this;
  s.values = values.conjugate();
  s.label = "conj(" + label + ")";
  return s;
}

Symbol make_symbol(Vector values, std::string label, SymbolTags tags) {
  Symbol s;
  s.values = std::move(values);
  s.label = std::move(label);
  s.tags = tags.normalized();
  return s;
}

Symbol constant_symbol(Complex c, Index count) {
  SymbolTags tags;
  const bool nonzero = c != Complex(0.0, 0.0);
  tags.sn = tri_of(nonzero);
  tags.nbb = tri_of(nonzero);
  tags.ell_infty = Tri::yes;
  tags.positive = tri_of(c.imag() == 0.0 && c.real() > 0.0);
  tags.negative = tri_of(c.imag() == 0.0 && c.real() < 0.0);
  tags.provenance = TagProvenance::analytic;
  std::ostringstream os;
  os << "(" << c.real();
  if (c.imag() != 0.0) os << (c.imag() > 0 ? "+" : "") << c.imag() << "i";
  os << ")";
  Symbol s = make_symbol(Vector::Constant(count, c), os.str(), tags);
  s.analytic_inf_abs = std::abs(c);
  s.analytic_sup_abs = std::abs(c);
  s.analytic_sup_dev_one = std::abs(c - 1.0);
  return s;
}

LinearOp analysis(const SequenceFamily& phi) {
  auto v = std::make_shared<const Matrix>(phi.vectors);
  return LinearOp(
      v->cols(), v->rows(), [v](const Vector& f) -> Vector { return v->adjoint() * f; },
      [v](const Vector& c) -> Vector { return (*v) * c; }, "U_" + phi.label);
}

LinearOp synthesis(const SequenceFamily& phi) {
  return adjoint(analysis(phi));
}

LinearOp frame_operator(const SequenceFamily& phi) {
  return compose(synthesis(phi), analysis(phi));
}

Matrix frame_operator_matrix(const SequenceFamily& phi) {
  return phi.vectors * phi.vectors.adjoint();
}

FrameBounds frame_bounds(const SequenceFamily& phi, SpectralMethod method,
                         const Tolerances& tol) {
  FrameBounds fb;
  if (phi.dim() == 0) return fb;
  if (phi.count() == 0) return fb;
  if (method == SpectralMethod::power_iteration) {
    const SpectralEstimate e = spectral_estimates(frame_operator(phi), method, tol);
    fb.A_lower = e.min_sv_lower;
    fb.A_upper = e.min_sv_upper;
    fb.B_lower = e.op_norm_lower;
    fb.B_upper = e.op_norm_upper;
    return fb;
  }
  const SingularSpectrum s = singular_spectrum(phi.vectors);
  const double smax = s.values[0];
  fb.B_lower = std::pow(std::max(0.0, smax - s.slack), 2);
  fb.B_upper = std::pow(smax + s.slack, 2);
  if (phi.count() >= phi.dim()) {
    const double smin = s.values[phi.dim() - 1];
    fb.A_lower = std::pow(std::max(0.0, smin - s.slack), 2);
    fb.A_upper = std::pow(smin + s.slack, 2);
  }
  return fb;
}

double bessel_upper(const SequenceFamily& phi) {
  if (phi.dim() == 0 || phi.count() == 0) return 0.0;
  const SingularSpectrum s = singular_spectrum(phi.vectors);
  return std::pow(s.values[0] + s.slack, 2);
}

SequenceFamily canonical_dual(const SequenceFamily& phi, const Tolerances& tol) {
  const FrameBounds fb = frame_bounds(phi, SpectralMethod::dense_oracle, tol);
  if (fb.A_lower <= tol.tol_rank * std::max(1.0, fb.B_upper)) {
    std::ostringstream os;
    os << "canonical_dual: " << phi.label << " is not a frame at this truncation (A <= "
       << fb.A_lower << ")";
    throw Error(ErrorCode::not_a_frame, os.str());
  }
  // phi = U diag(s) V^H  =>  S^-1 phi = U diag(1/s) V^H
  Eigen::BDCSVD<Matrix> svd(phi.vectors, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector inv = svd.singularValues().cwiseInverse();
  Matrix dual = svd.matrixU() * inv.asDiagonal() * svd.matrixV().adjoint();

  ClassTags tags;
  tags.frame = Tri::yes;
  tags.riesz = phi.tags.riesz;
  tags.provenance = phi.tags.provenance;
  SequenceFamily out = make_family(std::move(dual), "dual(" + phi.label + ")", tags);
  if (phi.analytic_A && phi.analytic_B && *phi.analytic_A > 0.0) {
    out.analytic_A = 1.0 / *phi.analytic_B;
    out.analytic_B = 1.0 / *phi.analytic_A;
  }
  return out;
}

DualCheck is_dual_pair(const SequenceFamily& phi, const SequenceFamily& dual,
                       const Tolerances& tol) {
  if (phi.dim() != dual.dim() || phi.count() != dual.count()) {
    std::ostringstream os;
    os << "is_dual_pair: " << phi.dim() << "x" << phi.count() << " vs " << dual.dim()
       << "x" << dual.count();
    throw Error(ErrorCode::dim_mismatch, os.str());
  }
  DualCheck out;
  const Matrix r =
      phi.vectors * dual.vectors.adjoint() - Matrix::Identity(phi.dim(), phi.dim());
  out.residual = r.size() ? singular_spectrum(r).values[0] : 0.0;
  out.tolerance = tol.tol_dual(phi.dim());
  out.is_dual = out.residual <= out.tolerance;
  return out;
}

RieszMargin riesz_margin(const SequenceFamily& phi, const Tolerances& tol) {
  RieszMargin out;
  if (phi.dim() == 0 || phi.count() == 0) return out;
  const SingularSpectrum s = singular_spectrum(phi.vectors);
  out.min_sv = s.values[s.values.size() - 1];
  const double floor = std::max(tol.tol_rank * std::max(1.0, s.values[0]), s.slack);
  out.is_riesz_certified = phi.count() == phi.dim() && out.min_sv > floor;
  return out;
}

SequenceFamily weighted(const Symbol& m, const SequenceFamily& phi) {
  if (m.count() != phi.count()) {
    std::ostringstream os;
    os << "weighted: symbol has " << m.count() << " entries, family " << phi.label
       << " has " << phi.count();
    throw Error(ErrorCode::count_mismatch, os.str());
  }
  Matrix v = phi.vectors * m.values.asDiagonal();

  const SymbolTags& mt = m.tags;
  const ClassTags& pt = phi.tags;
  ClassTags t;
  if (mt.sn == Tri::yes) {
    t = pt;
  } else {
    if (mt.ell_infty == Tri::yes && pt.bessel == Tri::yes) t.bessel = Tri::yes;
    if (mt.ell_infty == Tri::yes && pt.nba == Tri::yes) t.nba = Tri::yes;
    if (mt.nbb == Tri::yes && pt.nbb == Tri::yes) t.nbb = Tri::yes;
  }
  if (classify_weighted_riesz(m, phi) == WeightedRieszCase::impossible) t.riesz = Tri::no;
  t.provenance = combine(mt.provenance, pt.provenance);

  SequenceFamily out = make_family(std::move(v), m.label + "*" + phi.label, t);
  const bool constant = m.count() > 0 && (m.values.array() == m.values[0]).all();
  if (constant && m.analytic_sup_abs && m.analytic_inf_abs &&
      *m.analytic_sup_abs == *m.analytic_inf_abs) {
    const double c2 = std::norm(m.values[0]);
    if (phi.analytic_A) out.analytic_A = c2 * *phi.analytic_A;
    if (phi.analytic_B) out.analytic_B = c2 * *phi.analytic_B;
  }
  return out;
}

SequenceFamily family_difference(const SequenceFamily& psi, const SequenceFamily& phi) {
  if (psi.dim() != phi.dim() || psi.count() != phi.count()) {
    throw Error(ErrorCode::dim_mismatch, "family_difference: shapes differ");
  }
  ClassTags t;
  if (psi.tags.bessel == Tri::yes && phi.tags.bessel == Tri::yes) t.bessel = Tri::yes;
  t.provenance = combine(psi.tags.provenance, phi.tags.provenance);
  return make_family(psi.vectors - phi.vectors, psi.label + "-" + phi.label, t);
}

std::string_view to_string(WeightedRieszCase c) {
  switch (c) {
    case WeightedRieszCase::case_riesz_sn: return "case_riesz_sn";
    case WeightedRieszCase::case_nonnbb_bessel: return "case_nonnbb_bessel";
    case WeightedRieszCase::case_nonnba_nonbessel: return "case_nonnba_nonbessel";
    case WeightedRieszCase::impossible: return "impossible";
    case WeightedRieszCase::unknown: return "unknown";
  }
  return "unknown";
}

WeightedRieszCase classify_weighted_riesz(const Symbol& m, const SequenceFamily& phi) {
  const ClassTags p = phi.tags.normalized();
  const SymbolTags s = m.tags.normalized();
  const Tri nonzero = tri_of((m.values.array() != Complex(0.0, 0.0)).all());

  const Tri first = tri_and(p.riesz, s.sn);
  const Tri second = tri_and(tri_and(tri_not(p.nbb), p.bessel),
                             tri_and(tri_not(p.frame), tri_and(s.nbb, tri_not(s.ell_infty))));
  const Tri third = tri_and(tri_and(tri_not(p.nba), tri_not(p.bessel)),
                            tri_and(tri_not(s.nbb), nonzero));

  // A Riesz basis is norm-semi-normalized, so |m_n| ||phi_n|| must stay
  // bounded away from 0 and infinity.
  const bool norms_escape = (s.ell_infty == Tri::yes && p.nbb == Tri::no) ||
                            (s.nbb == Tri::yes && p.nba == Tri::no) ||
                            (p.nba == Tri::yes && s.nbb == Tri::no);
  if (norms_escape) return WeightedRieszCase::impossible;

  if (first == Tri::yes) return WeightedRieszCase::case_riesz_sn;
  if (second == Tri::yes) return WeightedRieszCase::case_nonnbb_bessel;
  if (third == Tri::yes) return WeightedRieszCase::case_nonnba_nonbessel;
  if (first == Tri::no && second == Tri::no && third == Tri::no) {
    return WeightedRieszCase::impossible;
  }
  return WeightedRieszCase::unknown;
}

PrunedTriple prune_zeros(const Symbol& m, const SequenceFamily& phi,
                         const SequenceFamily& psi) {
  if (m.count() != phi.count() || m.count() != psi.count()) {
    throw Error(ErrorCode::count_mismatch, "prune_zeros: counts of m, phi, psi differ");
  }
  if (phi.dim() != psi.dim()) {
    throw Error(ErrorCode::dim_mismatch, "prune_zeros: phi and psi live in different dims");
  }
  std::vector<Index> kept;
  for (Index n = 0; n < m.count(); ++n) {
    const bool zero = m.values[n] == Complex(0.0, 0.0) || phi.vectors.col(n).isZero(0.0) ||
                      psi.vectors.col(n).isZero(0.0);
    if (!zero) kept.push_back(n);
  }
  if (kept.empty()) {
    throw Error(ErrorCode::empty_after_prune,
                "prune_zeros: every index carries a zero; the multiplier is the zero map");
  }
  const Index k = static_cast<Index>(kept.size());
  PrunedTriple out{m, phi, psi, kept};
  out.m.values.resize(k);
  out.phi.vectors.resize(phi.dim(), k);
  out.psi.vectors.resize(psi.dim(), k);
  for (Index j = 0; j < k; ++j) {
    out.m.values[j] = m.values[kept[j]];
    out.phi.vectors.col(j) = phi.vectors.col(kept[j]);
    out.psi.vectors.col(j) = psi.vectors.col(kept[j]);
  }
  return out;
}

}  // namespace framemult
