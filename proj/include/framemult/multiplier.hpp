#pragma once

#include "framemult/frames.hpp"
#include "framemult/linop.hpp"

#include <optional>
#include <string>

namespace framemult {

// Analytic constants of the untruncated spec that a truncation cannot see.
// "synthesis"/"analysis" name the side on which the frame sits when the
// constant is used (the other side carries the perturbation).
struct AnalyticHints {
  std::optional<double> difference_B;                    // B(psi - phi)
  std::optional<double> weighted_difference_B_synthesis;  // B(conj(m) psi - phi)
  std::optional<double> weighted_difference_B_analysis;   // B(m phi - psi)
  // inf over all duals Phi^d of B(W - Phi^d), W as above
  std::optional<double> weighted_dual_difference_B_synthesis;
  std::optional<double> weighted_dual_difference_B_analysis;

  AnalyticHints swapped() const;
  bool empty() const;
};

// M f = sum_n m_n <f, psi_n> phi_n, with phi on the synthesis side and psi on
// the analysis side.
struct MultiplierSpec {
  Symbol m;
  SequenceFamily phi;  // synthesis side
  SequenceFamily psi;  // analysis side
  AnalyticHints hints;
  std::string label = "M";
  // Lengths before alignment to the common count.
  Index source_count_m = 0;
  Index source_count_phi = 0;
  Index source_count_psi = 0;

  Index dim() const noexcept { return phi.dim(); }
  Index count() const noexcept { return m.count(); }
};

// Aligns m, phi, psi to their minimum count. Throws DimMismatch when phi and
// psi live in different spaces and CountMismatch when the minimum count is 0.
MultiplierSpec make_spec(Symbol m, SequenceFamily phi, SequenceFamily psi,
                         AnalyticHints hints = {}, std::string label = "M");

// Throws CountMismatch / DimMismatch when the spec is not aligned.
void validate(const MultiplierSpec& spec);

// synthesis(phi) o diag(m) o analysis(psi), never materialized.
LinearOp build(const MultiplierSpec& spec);

// phi * diag(m) * psi^H
Matrix dense(const MultiplierSpec& spec);

// (conj(m), psi, phi): build(adjoint_spec(s)) = adjoint(build(s)).
MultiplierSpec adjoint_spec(const MultiplierSpec& spec);

// (m, psi, phi)
MultiplierSpec swap_spec(const MultiplierSpec& spec);

// Drops the indices where m, phi or psi vanish (see prune_zeros).
MultiplierSpec prune(const MultiplierSpec& spec);

// sqrt(B_phi B_psi) sup |m_n|. With `analytic` the untruncated constants are
// used and UnboundedSymbol is thrown when m is tagged unbounded or a family
// is tagged non-Bessel.
double norm_bound(const MultiplierSpec& spec, bool analytic = false);

// Symbol envelopes combining the truncated scan with analytic data, always
// taking the unfavourable side.
double symbol_sup_abs(const Symbol& m);
double symbol_inf_abs(const Symbol& m);
double symbol_sup_dev_one(const Symbol& m);

enum class SymbolSign { positive, negative, mixed };

// Explicit scan: every |Im m_n| <= tol_sign and one strict sign of Re m_n.
// A tag stating the opposite demotes the result to mixed.
SymbolSign symbol_sign(const Symbol& m, const Tolerances& tol = Tolerances::from_env());

// Frame bounds of a family with analytic constants and tags folded in:
// A_lower = min(numeric, analytic), B_upper = max(numeric, analytic),
// A_lower = 0 for families tagged non-frame, B_upper = inf for non-Bessel.
FrameBounds guarded_bounds(const SequenceFamily& phi,
                           const Tolerances& tol = Tolerances::from_env());

}  // namespace framemult
