#pragma once

#include "framemult/error.hpp"
#include "framemult/multiplier.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace framemult {

// gphi: equivalent frames, psi = G phi, signed semi-normalized m.
// p1: m close to 1 on a dual pair.  cp1: same on the canonical dual pair.
// mpos: psi close to the frame phi, signed semi-normalized m.
// p4: m psi close to the frame phi.  p3: m psi close to some dual of phi.
// riesz_closed_form: one side is a Riesz basis.
enum class Rule { gphi, p1, cp1, mpos, p4, p3, riesz_closed_form, none_fired };

std::string_view to_string(Rule r);
// Accepts the enum names plus "riesz". Throws InvalidArgument.
Rule rule_from_string(std::string_view s);
// Comma separated rule list.
std::vector<Rule> parse_order(std::string_view csv);
// riesz, gphi, p1, cp1, p3, mpos, p4
std::vector<Rule> default_order();

// Side of the spec that carries the frame (or Riesz basis) a rule is built
// around; the other side carries the perturbation.
enum class Side { synthesis, analysis };

std::string_view to_string(Side s);

struct NearestMiss {
  Rule rule = Rule::none_fired;
  ErrorCode code = ErrorCode::invalid_argument;
  std::string message;
  std::map<std::string, double> constants;
};

struct InvertCertificate {
  Rule rule = Rule::none_fired;
  std::optional<Side> side;
  std::map<std::string, double> constants;
  double sandwich_lower = 0.0;
  double sandwich_upper = 0.0;
  std::optional<LinearOp> inverse;
  Index terms_used = 0;
  double verified_residual = 0.0;
  std::string residual_method = "none";
  std::vector<NearestMiss> nearest_misses;
  std::vector<Rule> also_fired;
  // Rules whose inequality holds at this truncation although the tags prove
  // the untruncated multiplier is not invertible.
  std::vector<Rule> truncation_fired;
  // sigma_min of the dense multiplier, advisory only.
  std::optional<double> oracle_min_sv;
  // Set when the Riesz characterization proves M is not invertible.
  bool certified_noninvertible = false;

  bool fired() const noexcept { return rule != Rule::none_fired; }
};

struct InvertOptions {
  Tolerances tol = Tolerances::from_env();
  // Dense oracle verification of the constructed inverse (else random probes).
  bool oracle = true;
  // Only evaluate the firing inequality, skip building and verifying the inverse.
  bool constants_only = false;
  SpectralMethod method = SpectralMethod::dense_oracle;
};

// Every rule below throws RuleRefused when its sufficient condition fails and
// otherwise returns a verified certificate. Rules that can sit on either side
// try both and keep the better margin.
InvertCertificate invert_equivalent_frames(const MultiplierSpec& spec,
                                           const InvertOptions& opt = {});
InvertCertificate invert_dual_perturbed_symbol(const MultiplierSpec& spec,
                                               const InvertOptions& opt = {});
InvertCertificate invert_canonical_dual_symbol(const MultiplierSpec& spec,
                                               const InvertOptions& opt = {});
InvertCertificate invert_frame_perturbed(const MultiplierSpec& spec,
                                         const InvertOptions& opt = {});
InvertCertificate invert_weighted_perturbation(const MultiplierSpec& spec,
                                               const InvertOptions& opt = {});
// Uses the dual of phi that minimises B(W - Phi^d).
InvertCertificate invert_dual_perturbation(const MultiplierSpec& spec,
                                           const InvertOptions& opt = {});
// Same condition against a caller supplied dual of the frame on `side`.
InvertCertificate invert_dual_perturbation(const MultiplierSpec& spec, Side side,
                                           const SequenceFamily& dual,
                                           const InvertOptions& opt = {});
InvertCertificate invert_riesz(const MultiplierSpec& spec, const InvertOptions& opt = {});

InvertCertificate apply_rule(Rule rule, const MultiplierSpec& spec,
                             const InvertOptions& opt = {});

// Builds the spec (m, phi, G phi) (side synthesis) or (m, G phi, phi) and
// applies invert_equivalent_frames.
InvertCertificate invert_equivalent_frames(const SequenceFamily& phi, const Matrix& G,
                                           const Symbol& m, Side side,
                                           const InvertOptions& opt = {});

// (1, dual(W), dual(R)) for R the Riesz side and W the weighted other side:
// the closed-form inverse as a multiplier. Throws NotRiesz / NotRieszWeighted.
MultiplierSpec riesz_inverse_spec(const MultiplierSpec& spec,
                                  const Tolerances& tol = Tolerances::from_env());

struct LowerFrameCheck {
  bool holds = false;
  double bound = 0.0;    // 1 / (B_psi ||M^-1||^2)
  double A_lower = 0.0;  // lower frame bound of (m_n phi_n)
  double B_psi = 0.0;
};

// Invertible M with Bessel psi forces (m_n phi_n) to satisfy the lower frame
// inequality with bound 1/(B_psi ||M^-1||^2).
LowerFrameCheck necessary_lower_frame(const MultiplierSpec& spec, double inverse_norm,
                                      double slack = 1e-8,
                                      const Tolerances& tol = Tolerances::from_env());

enum class RieszCaseVerdict {
  not_well_defined,
  well_defined_never_invertible,
  invertible_iff_weighted_riesz,
  all_combinations_possible,
  never_invertible,
  unknown,
};

std::string_view to_string(RieszCaseVerdict v);

struct RieszCase {
  std::string id;  // a1, a2, b1..b4, c1..c3, d1..d3 or "none"
  RieszCaseVerdict verdict = RieszCaseVerdict::unknown;
};

// Table lookup for a Riesz basis phi against the class of psi and m.
RieszCase riesz_case_table(const ClassTags& phi, const ClassTags& psi, const SymbolTags& m);

// Evaluates every rule in `order`; the first one that fires is returned with
// its inverse, later ones are only checked. Refusals become nearest misses.
// When the tags prove the untruncated multiplier singular nothing fires and
// rules that hold at the truncation are listed in truncation_fired.
InvertCertificate certify(const MultiplierSpec& spec,
                          const std::vector<Rule>& order = default_order(),
                          const InvertOptions& opt = {});

}  // namespace framemult
