#pragma once

#include "framemult/linop.hpp"
#include "framemult/types.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace framemult {

enum class TagProvenance { analytic, numeric_truncation, declared };

std::string_view to_string(TagProvenance p);

// Class taxonomy of a (possibly infinite) sequence. `sn` is the
// norm-semi-normalized property (0 < inf ||phi_n|| <= sup ||phi_n|| < inf).
struct ClassTags {
  Tri bessel = Tri::unknown;
  Tri frame = Tri::unknown;
  Tri riesz = Tri::unknown;
  Tri nbb = Tri::unknown;
  Tri nba = Tri::unknown;
  Tri sn = Tri::unknown;
  TagProvenance provenance = TagProvenance::declared;

  // Propagates the implications riesz => frame => bessel => nba,
  // riesz => nbb, sn <=> nbb && nba and their contrapositives.
  ClassTags normalized() const;
  // True when no implication above is violated.
  bool consistent() const;
};

// Named generator a family or symbol was produced by, for serialization.
struct GeneratorRef {
  std::string name;
  std::map<std::string, double> params;
};

// Ordered family (phi_n) of complex d-vectors, stored column-wise. Immutable
// value type; infinite families are produced by catalogue generators at a
// given truncation.
struct SequenceFamily {
  Matrix vectors;  // d x N, column n is phi_n
  ClassTags tags;
  std::string label = "family";
  std::optional<GeneratorRef> origin;
  // Optimal bounds of the untruncated family, when known analytically.
  std::optional<double> analytic_A;
  std::optional<double> analytic_B;

  Index dim() const noexcept { return vectors.rows(); }
  Index count() const noexcept { return vectors.cols(); }
  RealVector norms() const { return vectors.colwise().norm().transpose(); }
};

SequenceFamily make_family(Matrix vectors, std::string label = "family",
                           ClassTags tags = {});

struct SymbolTags {
  Tri sn = Tri::unknown;
  Tri nbb = Tri::unknown;
  Tri ell_infty = Tri::unknown;
  Tri positive = Tri::unknown;
  Tri negative = Tri::unknown;
  TagProvenance provenance = TagProvenance::declared;

  // sn <=> nbb && ell_infty.
  SymbolTags normalized() const;
};

// Complex weight sequence m.
struct Symbol {
  Vector values;
  SymbolTags tags;
  std::string label = "m";
  std::optional<GeneratorRef> origin;
  // Envelope of the untruncated sequence, when known analytically.
  std::optional<double> analytic_inf_abs;
  std::optional<double> analytic_sup_abs;
  std::optional<double> analytic_sup_dev_one;  // sup |m_n - 1|

  Index count() const noexcept { return values.size(); }
  Symbol conj() const;
};

Symbol constant_symbol(Complex c, Index count);
Symbol make_symbol(Vector values, std::string label = "m", SymbolTags tags = {});

struct FrameBounds {
  double A_lower = 0.0;
  double A_upper = 0.0;
  double B_lower = 0.0;
  double B_upper = 0.0;

  bool certified_frame() const noexcept { return A_lower > 0.0; }
};

// U_phi f = (<f, phi_n>)_n : C^d -> C^N
LinearOp analysis(const SequenceFamily& phi);
// T_phi c = sum c_n phi_n : C^N -> C^d
LinearOp synthesis(const SequenceFamily& phi);
// S_phi = T_phi U_phi
LinearOp frame_operator(const SequenceFamily& phi);
Matrix frame_operator_matrix(const SequenceFamily& phi);

// A, B brackets from the extreme eigenvalues of the frame operator.
// A_lower > 0 certifies that the family spans C^d.
FrameBounds frame_bounds(const SequenceFamily& phi,
                         SpectralMethod method = SpectralMethod::dense_oracle,
                         const Tolerances& tol = Tolerances::from_env());

// Upper bracket on the Bessel bound (squared synthesis norm).
double bessel_upper(const SequenceFamily& phi);

// (S^-1 phi_n). Throws NotAFrame when the family does not span.
SequenceFamily canonical_dual(const SequenceFamily& phi,
                              const Tolerances& tol = Tolerances::from_env());

struct DualCheck {
  bool is_dual = false;
  double residual = 0.0;   // || T_phi U_dual - I ||
  double tolerance = 0.0;  // tol_dual(d)
};

DualCheck is_dual_pair(const SequenceFamily& phi, const SequenceFamily& dual,
                       const Tolerances& tol = Tolerances::from_env());

struct RieszMargin {
  bool is_riesz_certified = false;
  double min_sv = 0.0;
};

// At a truncation a Riesz basis is an invertible synthesis map: N == d and
// sigma_min(T_phi) above the rank tolerance. N > d is reported non-Riesz.
RieszMargin riesz_margin(const SequenceFamily& phi,
                         const Tolerances& tol = Tolerances::from_env());

// (m_n phi_n), tags propagated where the weighted-family rules decide them.
SequenceFamily weighted(const Symbol& m, const SequenceFamily& phi);

// (psi_n - phi_n)
SequenceFamily family_difference(const SequenceFamily& psi, const SequenceFamily& phi);

enum class WeightedRieszCase {
  case_riesz_sn,
  case_nonnbb_bessel,
  case_nonnba_nonbessel,
  impossible,
  unknown,
};

std::string_view to_string(WeightedRieszCase c);

// Which admissible configuration lets (m_n phi_n) be a Riesz basis, decided
// from analytic tags only.
WeightedRieszCase classify_weighted_riesz(const Symbol& m, const SequenceFamily& phi);

struct PrunedTriple {
  Symbol m;
  SequenceFamily phi;
  SequenceFamily psi;
  std::vector<Index> kept;  // new index -> original index
};

// Drops every index where m_n, phi_n or psi_n is exactly zero. Throws
// EmptyAfterPrune when nothing is left (the multiplier is the zero map).
PrunedTriple prune_zeros(const Symbol& m, const SequenceFamily& phi,
                         const SequenceFamily& psi);

}  // namespace framemult
