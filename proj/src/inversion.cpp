#include "framemult/inversion.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

namespace framemult {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Constants = std::map<std::string, double>;

// One side of one rule, evaluated but not yet constructed.
struct Candidate {
  Side side = Side::synthesis;
  bool fires = false;
  double margin = kInf;  // value / threshold of the deciding inequality
  ErrorCode code = ErrorCode::invalid_argument;
  std::string message;
  Constants constants;
  double sandwich_lower = 0.0;
  double sandwich_upper = 0.0;
  std::function<void(InvertCertificate&, const InvertOptions&)> construct;
};

Candidate refused(Side side, ErrorCode code, std::string message, Constants k,
                  double margin = kInf) {
  Candidate c;
  c.side = side;
  c.code = code;
  c.message = std::move(message);
  c.constants = std::move(k);
  c.margin = margin;
  c.constants["margin"] = margin;
  return c;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

double top_sv(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_spectrum(m).values[0];
}

double top_sv_upper(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  const SingularSpectrum s = singular_spectrum(m);
  return s.values[0] + s.slack;
}

// B_upper of the family whose vectors are the columns of v.
double bessel_of(const Matrix& v) {
  const double s = top_sv_upper(v);
  return s * s;
}

double hint_max(double v, const std::optional<double>& h) {
  return h ? std::max(v, *h) : v;
}

Matrix hpd_inverse(const Matrix& s) {
  Eigen::LLT<Matrix> llt(s);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::not_a_frame, "frame operator is not positive definite");
  }
  return llt.solve(Matrix::Identity(s.rows(), s.cols()));
}

Matrix square_inverse(const Matrix& g) {
  Eigen::PartialPivLU<Matrix> lu(g);
  return lu.inverse();
}

const SequenceFamily& frame_side(const MultiplierSpec& s, Side side) {
  return side == Side::synthesis ? s.phi : s.psi;
}

const SequenceFamily& other_side(const MultiplierSpec& s, Side side) {
  return side == Side::synthesis ? s.psi : s.phi;
}

// W with M = T_phi U_W (frame on synthesis) or M = T_W U_phi (on analysis).
SequenceFamily weighted_other(const MultiplierSpec& s, Side side) {
  return side == Side::synthesis ? weighted(s.m.conj(), s.psi) : weighted(s.m, s.phi);
}

const std::optional<double>& weighted_hint(const MultiplierSpec& s, Side side) {
  return side == Side::synthesis ? s.hints.weighted_difference_B_synthesis
                                 : s.hints.weighted_difference_B_analysis;
}

const std::optional<double>& dual_hint(const MultiplierSpec& s, Side side) {
  return side == Side::synthesis ? s.hints.weighted_dual_difference_B_synthesis
                                 : s.hints.weighted_dual_difference_B_analysis;
}

bool tagged_non_bessel(const SequenceFamily& f) {
  return f.tags.normalized().bessel == Tri::no;
}

bool frame_ok(const FrameBounds& fb, const Tolerances& tol) {
  return std::isfinite(fb.B_upper) && fb.A_lower > tol.tol_rank * std::max(1.0, fb.B_upper);
}

NeumannResult run_neumann(const Matrix& F, const Matrix& F_inv, const LinearOp& G,
                          double nu, double sandwich_lower, const InvertOptions& opt) {
  NeumannOptions no;
  no.tol = 0.1 * opt.tol.tol_inv * std::max(sandwich_lower, 1e-300);
  no.method = opt.method;
  return neumann_invert(from_dense(F, "F"), from_dense(F_inv, "F^-1"), G, nu, no, opt.tol);
}

void verify(InvertCertificate& c, const MultiplierSpec& spec, const InvertOptions& opt) {
  const Index d = spec.dim();
  if (opt.oracle && d <= opt.tol.oracle_dim_cap) {
    const Matrix M = dense(spec);
    const Matrix X = dense_of(*c.inverse, opt.tol);
    const Matrix I = Matrix::Identity(d, d);
    c.verified_residual = std::max(top_sv(M * X - I), top_sv(X * M - I));
    c.residual_method = "dense_oracle";
    const SingularSpectrum s = singular_spectrum(M);
    c.oracle_min_sv = s.values[s.values.size() - 1];
  } else {
    const LinearOp M = build(spec);
    std::mt19937_64 rng(0x7e57);
    std::normal_distribution<double> normal;
    double worst = 0.0;
    for (int probe = 0; probe < 4; ++probe) {
      Vector y(d);
      for (Index i = 0; i < d; ++i) y[i] = Complex(normal(rng), normal(rng));
      const double yn = y.norm();
      worst = std::max(worst, (M.apply(c.inverse->apply(y)) - y).norm() / yn);
      worst = std::max(worst, (c.inverse->apply(M.apply(y)) - y).norm() / yn);
    }
    c.verified_residual = worst;
    c.residual_method = "probe";
  }
  if (!(c.verified_residual <= opt.tol.tol_inv)) {
    throw RuleRefused(ErrorCode::no_convergence,
                      "constructed inverse failed verification, residual " +
                          fmt(c.verified_residual),
                      {{"residual", c.verified_residual}, {"tol_inv", opt.tol.tol_inv}});
  }
}

// Picks the firing side with the smallest margin, else throws the refusal
// with the smallest margin.
InvertCertificate resolve(Rule rule, std::vector<Candidate> cands, const MultiplierSpec& spec,
                          const InvertOptions& opt) {
  const Candidate* best_fire = nullptr;
  const Candidate* best_miss = nullptr;
  for (const Candidate& c : cands) {
    if (c.fires) {
      if (!best_fire || c.margin < best_fire->margin) best_fire = &c;
    } else if (!best_miss || c.margin < best_miss->margin) {
      best_miss = &c;
    }
  }
  if (!best_fire) {
    Constants k = best_miss->constants;
    k["side"] = best_miss->side == Side::synthesis ? 0.0 : 1.0;
    throw RuleRefused(best_miss->code, best_miss->message, k);
  }
  InvertCertificate cert;
  cert.rule = rule;
  cert.side = best_fire->side;
  cert.constants = best_fire->constants;
  cert.sandwich_lower = best_fire->sandwich_lower;
  cert.sandwich_upper = best_fire->sandwich_upper;
  if (opt.constants_only) return cert;
  best_fire->construct(cert, opt);
  verify(cert, spec, opt);
  return cert;
}

const std::vector<Side> kSides{Side::synthesis, Side::analysis};

// ---------------------------------------------------------------- gphi

Candidate equivalent_frames_side(const MultiplierSpec& spec, Side side,
                                 const InvertOptions& opt) {
  const Tolerances& tol = opt.tol;
  const SequenceFamily& phi = frame_side(spec, side);
  const SequenceFamily& psi = other_side(spec, side);
  Constants k;
  const FrameBounds fb = guarded_bounds(phi, tol);
  k["A_Phi"] = fb.A_lower;
  k["B_Phi"] = fb.B_upper;
  if (!frame_ok(fb, tol)) {
    return refused(side, ErrorCode::not_a_frame, phi.label + " is not a frame", k);
  }
  if (psi.tags.normalized().frame == Tri::no) {
    return refused(side, ErrorCode::not_equivalent,
                   psi.label + " is tagged non-frame, so it is not an equivalent frame", k);
  }
  const Matrix G =
      psi.vectors * phi.vectors.adjoint() * hpd_inverse(frame_operator_matrix(phi));
  const double res = top_sv(G * phi.vectors - psi.vectors);
  k["equivalence_residual"] = res;
  if (res > tol.tol_lin * std::max(1.0, top_sv(psi.vectors))) {
    return refused(side, ErrorCode::not_equivalent,
                   "no operator G with psi_n = G phi_n (residual " + fmt(res) + ")", k);
  }
  const SingularSpectrum gs = singular_spectrum(G);
  const double g_norm = gs.values[0] + gs.slack;
  const double g_min = std::max(0.0, gs.values[gs.values.size() - 1] - gs.slack);
  k["G_norm"] = g_norm;
  k["G_min_sv"] = g_min;
  if (g_min <= tol.tol_rank * std::max(1.0, g_norm)) {
    return refused(side, ErrorCode::not_equivalent, "G is not invertible", k);
  }
  const SymbolSign sign = symbol_sign(spec.m, tol);
  const double a = symbol_inf_abs(spec.m);
  const double b = symbol_sup_abs(spec.m);
  k["a"] = a;
  k["b"] = b;
  if (sign == SymbolSign::mixed || !(a > 0.0) || !std::isfinite(b)) {
    return refused(side, ErrorCode::symbol_not_signed,
                   "symbol is not positive or negative semi-normalized", k);
  }
  Candidate c;
  c.side = side;
  c.fires = true;
  c.margin = 0.0;
  c.constants = k;
  c.sandwich_lower = 1.0 / (b * fb.B_upper * g_norm);
  c.sandwich_upper = (1.0 / g_min) / (a * fb.A_lower);
  const double s = sign == SymbolSign::positive ? 1.0 : -1.0;
  c.construct = [&spec, side, G, s](InvertCertificate& cert, const InvertOptions&) {
    const SequenceFamily& phi = frame_side(spec, side);
    const RealVector w = spec.m.values.cwiseAbs();
    const Matrix S = phi.vectors * w.asDiagonal() * phi.vectors.adjoint();
    const Matrix s_inv = hpd_inverse(S);
    const Matrix g_inv = square_inverse(G);
    Matrix inv = side == Side::synthesis ? Matrix(s * g_inv.adjoint() * s_inv)
                                         : Matrix(s * s_inv * g_inv);
    cert.inverse = from_dense(std::move(inv), "equivalent-frames inverse");
  };
  return c;
}

// ---------------------------------------------------------------- p1 / cp1

Candidate symbol_near_one(const MultiplierSpec& spec, Side side, double lambda, double nu,
                          double threshold, Constants k) {
  k["lambda"] = lambda;
  k["nu"] = nu;
  k["threshold"] = threshold;
  if (!(nu < 1.0)) {
    return refused(side, ErrorCode::lambda_too_large,
                   "sup|m_n - 1| = " + fmt(lambda) + " is not below " + fmt(threshold), k,
                   nu);
  }
  Candidate c;
  c.side = side;
  c.fires = true;
  c.margin = nu;
  k["margin"] = nu;
  c.constants = k;
  c.sandwich_lower = 1.0 / (1.0 + nu);
  c.sandwich_upper = 1.0 / (1.0 - nu);
  const double lower = c.sandwich_lower;
  c.construct = [&spec, nu, lower](InvertCertificate& cert, const InvertOptions& o) {
    const Index d = spec.dim();
    const Matrix I = Matrix::Identity(d, d);
    const NeumannResult nr = run_neumann(I, I, build(spec), nu, lower, o);
    cert.inverse = nr.inverse;
    cert.terms_used = nr.terms_used;
    cert.constants["q"] = nr.contraction_q;
    cert.constants["a_priori_error"] = nr.a_priori_error;
  };
  return c;
}

Candidate dual_perturbed_symbol_eval(const MultiplierSpec& spec, const InvertOptions& opt) {
  const Tolerances& tol = opt.tol;
  const Side side = Side::synthesis;
  Constants k;
  if (spec.phi.tags.normalized().frame == Tri::no ||
      spec.psi.tags.normalized().frame == Tri::no) {
    return refused(side, ErrorCode::not_a_frame, "a family is tagged non-frame", k);
  }
  const DualCheck dc = is_dual_pair(spec.phi, spec.psi, tol);
  k["dual_residual"] = dc.residual;
  if (!dc.is_dual) {
    return refused(side, ErrorCode::not_dual,
                   "phi and psi are not a dual pair (residual " + fmt(dc.residual) + ")", k);
  }
  const double bp = guarded_bounds(spec.phi, tol).B_upper;
  const double bd = guarded_bounds(spec.psi, tol).B_upper;
  k["B_Phi"] = bp;
  k["B_Phid"] = bd;
  const double lambda = symbol_sup_dev_one(spec.m);
  const double root = std::sqrt(bp * bd);
  return symbol_near_one(spec, side, lambda, lambda * root, 1.0 / root, k);
}

Candidate canonical_dual_symbol_side(const MultiplierSpec& spec, Side side,
                                     const InvertOptions& opt) {
  const Tolerances& tol = opt.tol;
  const SequenceFamily& phi = frame_side(spec, side);
  const SequenceFamily& other = other_side(spec, side);
  Constants k;
  const FrameBounds fb = guarded_bounds(phi, tol);
  k["A_Phi"] = fb.A_lower;
  k["B_Phi"] = fb.B_upper;
  if (!frame_ok(fb, tol)) {
    return refused(side, ErrorCode::not_a_frame, phi.label + " is not a frame", k);
  }
  const SequenceFamily dual = canonical_dual(phi, tol);
  const double diff = top_sv(other.vectors - dual.vectors);
  k["dual_residual"] = diff;
  if (diff > tol.tol_dual(phi.dim()) * std::max(1.0, top_sv(dual.vectors))) {
    return refused(side, ErrorCode::not_dual,
                   other.label + " is not the canonical dual of " + phi.label, k);
  }
  const double lambda = symbol_sup_dev_one(spec.m);
  const double ratio = std::sqrt(fb.B_upper / fb.A_lower);
  return symbol_near_one(spec, side, lambda, lambda * ratio, 1.0 / ratio, k);
}

// ---------------------------------------------------------------- mpos

Candidate frame_perturbed_side(const MultiplierSpec& spec, Side side,
                               const InvertOptions& opt) {
  const Tolerances& tol = opt.tol;
  const SequenceFamily& phi = frame_side(spec, side);
  const SequenceFamily& psi = other_side(spec, side);
  Constants k;
  const FrameBounds fb = guarded_bounds(phi, tol);
  const double A = fb.A_lower;
  const double B = fb.B_upper;
  k["A_Phi"] = A;
  k["B_Phi"] = B;
  if (!frame_ok(fb, tol)) {
    return refused(side, ErrorCode::not_a_frame, phi.label + " is not a frame", k);
  }
  const SymbolSign sign = symbol_sign(spec.m, tol);
  const double a = symbol_inf_abs(spec.m);
  const double b = symbol_sup_abs(spec.m);
  k["a"] = a;
  k["b"] = b;
  if (sign == SymbolSign::mixed || !(a > 0.0) || !std::isfinite(b)) {
    return refused(side, ErrorCode::symbol_not_signed,
                   "symbol is not positive or negative semi-normalized", k);
  }
  const double b_diff = tagged_non_bessel(psi)
                            ? kInf
                            : hint_max(bessel_of(psi.vectors - phi.vectors), spec.hints.difference_B);
  const double threshold = A * A / B;
  k["B_Psi_minus_Phi"] = b_diff;
  k["threshold"] = threshold;
  const double pert_margin = b_diff / threshold;
  if (!(b_diff < threshold)) {
    return refused(side, ErrorCode::perturbation_too_large,
                   "B(psi - phi) = " + fmt(b_diff) + " is not below A^2/B = " + fmt(threshold),
                   k, pert_margin);
  }
  const double ratio = b / a;
  const double ratio_threshold = b_diff > 0.0 ? A / std::sqrt(b_diff * B) : kInf;
  k["ratio"] = ratio;
  k["ratio_threshold"] = ratio_threshold;
  const double ratio_margin = ratio / ratio_threshold;
  if (!(ratio < ratio_threshold)) {
    return refused(side, ErrorCode::symbol_ratio_too_large,
                   "b/a = " + fmt(ratio) + " is not below " + fmt(ratio_threshold), k,
                   ratio_margin);
  }
  const double nu = b * std::sqrt(B * b_diff);
  k["nu"] = nu;
  k["q"] = nu / (a * A);
  k["psi_A_lower"] = std::pow(std::sqrt(A) - std::sqrt(b_diff), 2);
  Candidate c;
  c.side = side;
  c.fires = true;
  c.margin = std::max(pert_margin, ratio_margin);
  k["margin"] = c.margin;
  c.constants = k;
  c.sandwich_lower = 1.0 / (b * B + nu);
  c.sandwich_upper = 1.0 / (a * A - nu);
  const double s = sign == SymbolSign::positive ? 1.0 : -1.0;
  const double lower = c.sandwich_lower;
  c.construct = [&spec, side, nu, s, lower](InvertCertificate& cert, const InvertOptions& o) {
    const SequenceFamily& phi = frame_side(spec, side);
    const RealVector w = spec.m.values.cwiseAbs();
    const Matrix F = phi.vectors * w.asDiagonal() * phi.vectors.adjoint();
    const LinearOp G = s > 0 ? build(spec) : scaled(-1.0, build(spec));
    const NeumannResult nr = run_neumann(F, hpd_inverse(F), G, nu, lower, o);
    cert.inverse = s > 0 ? nr.inverse : scaled(-1.0, nr.inverse);
    cert.terms_used = nr.terms_used;
    cert.constants["a_priori_error"] = nr.a_priori_error;
  };
  return c;
}

// ---------------------------------------------------------------- p4

Candidate weighted_perturbation_side(const MultiplierSpec& spec, Side side,
                                     const InvertOptions& opt) {
  const Tolerances& tol = opt.tol;
  const SequenceFamily& phi = frame_side(spec, side);
  Constants k;
  const FrameBounds fb = guarded_bounds(phi, tol);
  const double A = fb.A_lower;
  const double B = fb.B_upper;
  k["A_Phi"] = A;
  k["B_Phi"] = B;
  if (!frame_ok(fb, tol)) {
    return refused(side, ErrorCode::not_a_frame, phi.label + " is not a frame", k);
  }
  const SequenceFamily W = weighted_other(spec, side);
  const double mu = tagged_non_bessel(W)
                        ? kInf
                        : hint_max(bessel_of(W.vectors - phi.vectors), weighted_hint(spec, side));
  const double threshold = A * A / B;
  k["mu"] = mu;
  k["threshold"] = threshold;
  if (!(mu < threshold)) {
    return refused(side, ErrorCode::mu_too_large,
                   "mu = " + fmt(mu) + " is not below A^2/B = " + fmt(threshold), k,
                   mu / threshold);
  }
  const double nu = std::sqrt(mu * B);
  k["nu"] = nu;
  const FrameBounds other = frame_bounds(other_side(spec, side), SpectralMethod::dense_oracle, tol);
  k["psi_A_oracle"] = other.A_lower;
  k["psi_B_oracle"] = other.B_upper;
  Candidate c;
  c.side = side;
  c.fires = true;
  c.margin = mu / threshold;
  k["margin"] = c.margin;
  c.constants = k;
  c.sandwich_lower = 1.0 / (B + nu);
  c.sandwich_upper = 1.0 / (A - nu);
  const double lower = c.sandwich_lower;
  c.construct = [&spec, side, nu, lower](InvertCertificate& cert, const InvertOptions& o) {
    const Matrix F = frame_operator_matrix(frame_side(spec, side));
    const NeumannResult nr = run_neumann(F, hpd_inverse(F), build(spec), nu, lower, o);
    cert.inverse = nr.inverse;
    cert.terms_used = nr.terms_used;
    cert.constants["q"] = nr.contraction_q;
    cert.constants["a_priori_error"] = nr.a_priori_error;
  };
  return c;
}

// ---------------------------------------------------------------- p3

Candidate dual_perturbation_core(const MultiplierSpec& spec, Side side, double mu,
                                 const FrameBounds& fb, Constants k) {
  const double B = fb.B_upper;
  const double threshold = 1.0 / B;
  k["mu"] = mu;
  k["threshold"] = threshold;
  if (!(mu < threshold)) {
    return refused(side, ErrorCode::mu_too_large,
                   "mu = " + fmt(mu) + " is not below 1/B = " + fmt(threshold), k,
                   mu / threshold);
  }
  const double nu = std::sqrt(mu * B);
  k["nu"] = nu;
  Candidate c;
  c.side = side;
  c.fires = true;
  c.margin = mu / threshold;
  k["margin"] = c.margin;
  c.constants = k;
  c.sandwich_lower = 1.0 / (1.0 + nu);
  c.sandwich_upper = 1.0 / (1.0 - nu);
  const double lower = c.sandwich_lower;
  c.construct = [&spec, nu, lower](InvertCertificate& cert, const InvertOptions& o) {
    const Index d = spec.dim();
    const Matrix I = Matrix::Identity(d, d);
    const NeumannResult nr = run_neumann(I, I, build(spec), nu, lower, o);
    cert.inverse = nr.inverse;
    cert.terms_used = nr.terms_used;
    cert.constants["q"] = nr.contraction_q;
    cert.constants["a_priori_error"] = nr.a_priori_error;
  };
  return c;
}

Candidate dual_perturbation_side(const MultiplierSpec& spec, Side side,
                                 const InvertOptions& opt) {
  const Tolerances& tol = opt.tol;
  const SequenceFamily& phi = frame_side(spec, side);
  Constants k;
  const FrameBounds fb = guarded_bounds(phi, tol);
  k["A_Phi"] = fb.A_lower;
  k["B_Phi"] = fb.B_upper;
  if (!frame_ok(fb, tol)) {
    return refused(side, ErrorCode::not_a_frame, phi.label + " is not a frame", k);
  }
  const SequenceFamily W = weighted_other(spec, side);
  // Duals are S^-1 phi + V with V phi^H = 0; the minimiser of B(W - dual)
  // takes V = W (I - phi^H S^-1 phi).
  const Matrix tilde = hpd_inverse(frame_operator_matrix(phi)) * phi.vectors;
  const Matrix best = tilde + W.vectors - (W.vectors * phi.vectors.adjoint()) * tilde;
  const Index d = phi.dim();
  k["dual_residual"] = top_sv(phi.vectors * best.adjoint() - Matrix::Identity(d, d));
  const double mu =
      tagged_non_bessel(W) ? kInf : hint_max(bessel_of(W.vectors - best), dual_hint(spec, side));
  return dual_perturbation_core(spec, side, mu, fb, k);
}

// ---------------------------------------------------------------- riesz

struct RieszSides {
  SequenceFamily basis;
  SequenceFamily weighted;
};

RieszSides riesz_parts(const MultiplierSpec& spec, Side side) {
  return {frame_side(spec, side), weighted_other(spec, side)};
}

Candidate riesz_side(const MultiplierSpec& spec, Side side, const InvertOptions& opt) {
  const Tolerances& tol = opt.tol;
  const RieszSides parts = riesz_parts(spec, side);
  Constants k;
  const RieszMargin rm = riesz_margin(parts.basis, tol);
  k["basis_min_sv"] = rm.min_sv;
  if (!rm.is_riesz_certified || parts.basis.tags.normalized().riesz == Tri::no) {
    return refused(side, ErrorCode::not_riesz,
                   parts.basis.label + " is not a Riesz basis at this truncation", k);
  }
  const RieszMargin wm = riesz_margin(parts.weighted, tol);
  k["weighted_min_sv"] = wm.min_sv;
  const RieszCase rc =
      riesz_case_table(parts.basis.tags, other_side(spec, side).tags, spec.m.tags);
  const bool table_out = rc.verdict == RieszCaseVerdict::never_invertible ||
                         rc.verdict == RieszCaseVerdict::well_defined_never_invertible;
  const bool tagged_out = table_out || parts.weighted.tags.normalized().riesz == Tri::no;
  k["analytic"] = tagged_out ? 1.0 : 0.0;
  if (tagged_out || !wm.is_riesz_certified) {
    return refused(side, ErrorCode::not_riesz_weighted,
                   table_out ? "class case " + rc.id + " of a Riesz basis is never invertible"
                   : tagged_out ? "the weighted family " + parts.weighted.label +
                                    " cannot be a Riesz basis, so M is not invertible"
                              : "the weighted family " + parts.weighted.label +
                                    " is not a Riesz basis at this truncation, so M is "
                                    "not invertible",
                   k, 1.0);
  }
  const SingularSpectrum sb = singular_spectrum(parts.basis.vectors);
  const SingularSpectrum sw = singular_spectrum(parts.weighted.vectors);
  const double b_max = sb.values[0] + sb.slack;
  const double w_max = sw.values[0] + sw.slack;
  const double b_min = std::max(0.0, sb.values[sb.values.size() - 1] - sb.slack);
  const double w_min = std::max(0.0, sw.values[sw.values.size() - 1] - sw.slack);
  Candidate c;
  c.side = side;
  c.fires = true;
  c.margin = 0.0;
  k["margin"] = 0.0;
  c.constants = k;
  c.sandwich_lower = 1.0 / (b_max * w_max);
  c.sandwich_upper = b_min * w_min > 0.0 ? 1.0 / (b_min * w_min) : kInf;
  c.construct = [&spec, side](InvertCertificate& cert, const InvertOptions&) {
    const RieszSides p = riesz_parts(spec, side);
    const Matrix r_inv = square_inverse(p.basis.vectors);
    const Matrix w_inv = square_inverse(p.weighted.vectors);
    Matrix inv = side == Side::synthesis ? Matrix(w_inv.adjoint() * r_inv)
                                         : Matrix(r_inv.adjoint() * w_inv);
    cert.inverse = from_dense(std::move(inv), "riesz inverse");
  };
  return c;
}

}  // namespace

std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::gphi: return "gphi";
    case Rule::p1: return "p1";
    case Rule::cp1: return "cp1";
    case Rule::mpos: return "mpos";
    case Rule::p4: return "p4";
    case Rule::p3: return "p3";
    case Rule::riesz_closed_form: return "riesz_closed_form";
    case Rule::none_fired: return "none_fired";
  }
  return "none_fired";
}

Rule rule_from_string(std::string_view s) {
  if (s == "gphi") return Rule::gphi;
  if (s == "p1" || s == "p1-dual") return Rule::p1;
  if (s == "cp1") return Rule::cp1;
  if (s == "mpos") return Rule::mpos;
  if (s == "p4") return Rule::p4;
  if (s == "p3") return Rule::p3;
  if (s == "riesz" || s == "riesz_closed_form") return Rule::riesz_closed_form;
  if (s == "none_fired") return Rule::none_fired;
  throw Error(ErrorCode::invalid_argument, "unknown rule '" + std::string(s) + "'");
}

std::vector<Rule> parse_order(std::string_view csv) {
  std::vector<Rule> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t end = std::min(csv.find(',', start), csv.size());
    std::string_view item = csv.substr(start, end - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) out.push_back(rule_from_string(item));
    start = end + 1;
  }
  if (out.empty()) throw Error(ErrorCode::invalid_argument, "empty rule order");
  return out;
}

std::vector<Rule> default_order() {
  return {Rule::riesz_closed_form, Rule::gphi, Rule::p1, Rule::cp1,
          Rule::p3,                Rule::mpos, Rule::p4};
}

std::string_view to_string(Side s) {
  return s == Side::synthesis ? "synthesis" : "analysis";
}

InvertCertificate invert_equivalent_frames(const MultiplierSpec& spec,
                                           const InvertOptions& opt) {
  validate(spec);
  std::vector<Candidate> c;
  for (Side s : kSides) c.push_back(equivalent_frames_side(spec, s, opt));
  return resolve(Rule::gphi, std::move(c), spec, opt);
}

InvertCertificate invert_dual_perturbed_symbol(const MultiplierSpec& spec,
                                               const InvertOptions& opt) {
  validate(spec);
  return resolve(Rule::p1, {dual_perturbed_symbol_eval(spec, opt)}, spec, opt);
}

InvertCertificate invert_canonical_dual_symbol(const MultiplierSpec& spec,
                                               const InvertOptions& opt) {
  validate(spec);
  std::vector<Candidate> c;
  for (Side s : kSides) c.push_back(canonical_dual_symbol_side(spec, s, opt));
  return resolve(Rule::cp1, std::move(c), spec, opt);
}

InvertCertificate invert_frame_perturbed(const MultiplierSpec& spec, const InvertOptions& opt) {
  validate(spec);
  std::vector<Candidate> c;
  for (Side s : kSides) c.push_back(frame_perturbed_side(spec, s, opt));
  return resolve(Rule::mpos, std::move(c), spec, opt);
}

InvertCertificate invert_weighted_perturbation(const MultiplierSpec& spec,
                                               const InvertOptions& opt) {
  validate(spec);
  std::vector<Candidate> c;
  for (Side s : kSides) c.push_back(weighted_perturbation_side(spec, s, opt));
  return resolve(Rule::p4, std::move(c), spec, opt);
}

InvertCertificate invert_dual_perturbation(const MultiplierSpec& spec,
                                           const InvertOptions& opt) {
  validate(spec);
  std::vector<Candidate> c;
  for (Side s : kSides) c.push_back(dual_perturbation_side(spec, s, opt));
  return resolve(Rule::p3, std::move(c), spec, opt);
}

InvertCertificate invert_dual_perturbation(const MultiplierSpec& spec, Side side,
                                           const SequenceFamily& dual,
                                           const InvertOptions& opt) {
  validate(spec);
  const SequenceFamily& phi = frame_side(spec, side);
  Constants k;
  const FrameBounds fb = guarded_bounds(phi, opt.tol);
  k["A_Phi"] = fb.A_lower;
  k["B_Phi"] = fb.B_upper;
  if (!frame_ok(fb, opt.tol)) {
    return resolve(Rule::p3,
                   {refused(side, ErrorCode::not_a_frame, phi.label + " is not a frame", k)},
                   spec, opt);
  }
  const DualCheck dc = is_dual_pair(phi, dual, opt.tol);
  k["dual_residual"] = dc.residual;
  if (!dc.is_dual) {
    return resolve(Rule::p3,
                   {refused(side, ErrorCode::not_dual,
                            dual.label + " is not a dual of " + phi.label, k)},
                   spec, opt);
  }
  const SequenceFamily W = weighted_other(spec, side);
  const double mu = tagged_non_bessel(W) ? kInf : bessel_of(W.vectors - dual.vectors);
  return resolve(Rule::p3, {dual_perturbation_core(spec, side, mu, fb, k)}, spec, opt);
}

InvertCertificate invert_riesz(const MultiplierSpec& spec, const InvertOptions& opt) {
  validate(spec);
  std::vector<Candidate> c;
  for (Side s : kSides) c.push_back(riesz_side(spec, s, opt));
  // A proof of non-invertibility from either side wins over a numeric success.
  for (const Candidate& x : c) {
    if (!x.fires && x.code == ErrorCode::not_riesz_weighted) {
      return resolve(Rule::riesz_closed_form, {x}, spec, opt);
    }
  }
  return resolve(Rule::riesz_closed_form, std::move(c), spec, opt);
}

InvertCertificate apply_rule(Rule rule, const MultiplierSpec& spec, const InvertOptions& opt) {
  switch (rule) {
    case Rule::gphi: return invert_equivalent_frames(spec, opt);
    case Rule::p1: return invert_dual_perturbed_symbol(spec, opt);
    case Rule::cp1: return invert_canonical_dual_symbol(spec, opt);
    case Rule::mpos: return invert_frame_perturbed(spec, opt);
    case Rule::p4: return invert_weighted_perturbation(spec, opt);
    case Rule::p3: return invert_dual_perturbation(spec, opt);
    case Rule::riesz_closed_form: return invert_riesz(spec, opt);
    case Rule::none_fired: break;
  }
  throw Error(ErrorCode::invalid_argument, "none_fired is not a rule");
}

InvertCertificate invert_equivalent_frames(const SequenceFamily& phi, const Matrix& G,
                                           const Symbol& m, Side side,
                                           const InvertOptions& opt) {
  if (G.rows() != phi.dim() || G.cols() != phi.dim()) {
    throw Error(ErrorCode::dim_mismatch, "G must be a square map on the space of phi");
  }
  ClassTags t;
  t.provenance = phi.tags.provenance;
  SequenceFamily psi = make_family(G * phi.vectors, "G*" + phi.label, t);
  MultiplierSpec spec = side == Side::synthesis ? make_spec(m, phi, psi) : make_spec(m, psi, phi);
  return invert_equivalent_frames(spec, opt);
}

MultiplierSpec riesz_inverse_spec(const MultiplierSpec& spec, const Tolerances& tol) {
  validate(spec);
  InvertOptions opt;
  opt.tol = tol;
  opt.constants_only = true;
  const InvertCertificate c = invert_riesz(spec, opt);
  const Side side = *c.side;
  const RieszSides p = riesz_parts(spec, side);
  ClassTags riesz;
  riesz.riesz = Tri::yes;
  SequenceFamily dual_basis = make_family(square_inverse(p.basis.vectors).adjoint(),
                                          "dual(" + p.basis.label + ")", riesz);
  SequenceFamily dual_weighted = make_family(square_inverse(p.weighted.vectors).adjoint(),
                                             "dual(" + p.weighted.label + ")", riesz);
  Symbol ones = constant_symbol(1.0, spec.dim());
  if (side == Side::synthesis) return make_spec(ones, dual_weighted, dual_basis);
  return make_spec(ones, dual_basis, dual_weighted);
}

LowerFrameCheck necessary_lower_frame(const MultiplierSpec& spec, double inverse_norm,
                                      double slack, const Tolerances& tol) {
  validate(spec);
  LowerFrameCheck out;
  out.B_psi = bessel_upper(spec.psi);
  out.bound = 1.0 / (out.B_psi * inverse_norm * inverse_norm);
  out.A_lower =
      frame_bounds(weighted(spec.m, spec.phi), SpectralMethod::dense_oracle, tol).A_lower;
  out.holds = out.A_lower >= out.bound - slack;
  return out;
}

std::string_view to_string(RieszCaseVerdict v) {
  switch (v) {
    case RieszCaseVerdict::not_well_defined: return "not_well_defined";
    case RieszCaseVerdict::well_defined_never_invertible:
      return "well_defined_never_invertible";
    case RieszCaseVerdict::invertible_iff_weighted_riesz: return "invertible_iff_mpsi_riesz";
    case RieszCaseVerdict::all_combinations_possible: return "all_combinations_possible";
    case RieszCaseVerdict::never_invertible: return "never_invertible";
    case RieszCaseVerdict::unknown: return "unknown";
  }
  return "unknown";
}

RieszCase riesz_case_table(const ClassTags& phi_tags, const ClassTags& psi_tags,
                           const SymbolTags& m_tags) {
  using V = RieszCaseVerdict;
  const ClassTags phi = phi_tags.normalized();
  const ClassTags psi = psi_tags.normalized();
  const SymbolTags m = m_tags.normalized();
  if (phi.riesz != Tri::yes) return {"none", V::unknown};

  const auto is = [](Tri t) { return t == Tri::yes; };
  const auto isnt = [](Tri t) { return t == Tri::no; };

  if (is(m.sn)) {
    if (isnt(psi.bessel)) return {"a1", V::not_well_defined};
    if (is(psi.bessel)) return {"a2", V::invertible_iff_weighted_riesz};
    return {"a", V::unknown};
  }
  if (isnt(m.nbb) && is(m.ell_infty)) {
    if (is(psi.bessel)) return {"b4", V::well_defined_never_invertible};
    if (isnt(psi.bessel)) {
      if (is(psi.nba)) return {"b1", V::never_invertible};
      if (isnt(psi.nba) && isnt(psi.nbb)) return {"b2", V::never_invertible};
      if (isnt(psi.nba) && is(psi.nbb)) return {"b3", V::all_combinations_possible};
    }
    return {"b", V::unknown};
  }
  if (is(m.nbb) && isnt(m.ell_infty)) {
    if (isnt(psi.bessel) || is(psi.nbb)) return {"c1", V::not_well_defined};
    if (isnt(psi.nbb) && is(psi.frame)) return {"c3", V::never_invertible};
    if (isnt(psi.nbb) && is(psi.bessel) && isnt(psi.frame)) {
      return {"c2", V::all_combinations_possible};
    }
    return {"c", V::unknown};
  }
  if (isnt(m.nbb) && isnt(m.ell_infty)) {
    if (is(psi.nbb)) return {"d1", V::not_well_defined};
    if (isnt(psi.nbb) && is(psi.nba)) return {"d3", V::never_invertible};
    if (isnt(psi.nbb) && isnt(psi.nba) && isnt(psi.bessel)) {
      return {"d2", V::all_combinations_possible};
    }
    return {"d", V::unknown};
  }
  return {"none", V::unknown};
}

InvertCertificate certify(const MultiplierSpec& spec, const std::vector<Rule>& order,
                          const InvertOptions& opt) {
  validate(spec);
  bool analytic_singular = false;
  {
    InvertOptions probe = opt;
    probe.constants_only = true;
    try {
      apply_rule(Rule::riesz_closed_form, spec, probe);
    } catch (const RuleRefused& r) {
      const auto it = r.constants().find("analytic");
      analytic_singular = r.code() == ErrorCode::not_riesz_weighted &&
                          it != r.constants().end() && it->second == 1.0;
    } catch (const Error&) {
    }
  }
  InvertCertificate out;
  std::vector<Rule> fired;
  bool proved_singular = analytic_singular;
  for (Rule rule : order) {
    InvertOptions o = opt;
    o.constants_only = opt.constants_only || analytic_singular || !fired.empty();
    try {
      InvertCertificate c = apply_rule(rule, spec, o);
      if (fired.empty() && !analytic_singular) {
        c.nearest_misses = std::move(out.nearest_misses);
        out = std::move(c);
      }
      fired.push_back(rule);
    } catch (const RuleRefused& r) {
      out.nearest_misses.push_back({rule, r.code(), r.what(), r.constants()});
      if (r.code() == ErrorCode::not_riesz_weighted) proved_singular = true;
    } catch (const Error& e) {
      out.nearest_misses.push_back({rule, e.code(), e.what(), {}});
    }
  }
  if (analytic_singular) {
    out.truncation_fired = fired;
  } else if (!fired.empty()) {
    out.also_fired.assign(fired.begin() + 1, fired.end());
    return out;
  }
  out.certified_noninvertible = proved_singular;
  if (opt.oracle && spec.dim() <= opt.tol.oracle_dim_cap) {
    const SingularSpectrum s = singular_spectrum(dense(spec));
    out.oracle_min_sv = s.values[s.values.size() - 1];
  }
  return out;
}

}  // namespace framemult
