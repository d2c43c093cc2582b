#pragma once

#include "framemult/multiplier.hpp"

#include <functional>
#include <string>
#include <vector>

namespace framemult {

// Spec at truncation dimension d.
using SpecFactory = std::function<MultiplierSpec(Index d)>;

enum class Verdict { necessary_conditions_hold, violated, inconclusive };

std::string_view to_string(Verdict v);

// A finite sweep can only refute unconditional convergence: "violated" means
// a necessary condition visibly fails, "hold" proves nothing about the limit.
struct DiagnosticsReport {
  std::vector<Index> sweep_dims;
  std::vector<double> mixed_norm_trace;  // max |m_n| |phi_n| |psi_n|
  std::vector<double> bessel_trace_A;    // B_upper of (|m_n| |phi_n| psi_n)
  std::vector<double> bessel_trace_B;    // B_upper of (|m_n| |psi_n| phi_n)
  Verdict verdict = Verdict::inconclusive;
  std::string cited_rule;
  std::string worst_trace;
  double growth = 1.0;
};

struct TraceVerdict {
  Verdict verdict = Verdict::inconclusive;
  double growth = 1.0;
};

// Violated when the trace is non-decreasing over at least three points ending
// at the largest dimension and grows by growth_factor over that run;
// inconclusive with fewer than three points or growth in [sqrt(gf), gf).
TraceVerdict trace_verdict(const std::vector<double>& trace, double growth_factor = 8.0);

DiagnosticsReport unconditional_necessary(const SpecFactory& factory,
                                          const std::vector<Index>& sweep,
                                          double growth_factor = 8.0);

// Verdict of (m, phi, psi) equals the verdict of (m, psi, phi).
bool swap_equivalence_check(const SpecFactory& factory, const std::vector<Index>& sweep,
                            double growth_factor = 8.0);

struct RieszSideReport {
  std::vector<Index> sweep_dims;
  std::vector<double> bessel_trace;  // B_upper of (m_n psi_n)
  std::vector<double> symbol_trace;  // max |m_n| |psi_n|
  Tri well_defined = Tri::unknown;
  bool symbol_linfty_forced = false;  // psi tagged NBB
  bool linfty_violated = false;
};

// phi (synthesis side of the spec) must be a Riesz basis at every sweep point:
// then M is well defined iff (m_n psi_n) is Bessel, and an NBB psi forces m
// into l-infinity. Throws NotRiesz.
RieszSideReport riesz_side_criterion(const SpecFactory& factory,
                                     const std::vector<Index>& sweep,
                                     double growth_factor = 8.0);

}  // namespace framemult
