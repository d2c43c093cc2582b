#include "framemult/convergence.hpp"

#include "framemult/error.hpp"

#include <algorithm>
#include <cmath>

namespace framemult {

namespace {

double bessel_of(const Matrix& v) {
  if (v.size() == 0) return 0.0;
  const SingularSpectrum s = singular_spectrum(v);
  const double top = s.values[0] + s.slack;
  return top * top;
}

void check_sweep(const std::vector<Index>& sweep) {
  if (sweep.empty()) throw Error(ErrorCode::invalid_argument, "empty sweep");
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    if (sweep[i] <= sweep[i - 1]) {
      throw Error(ErrorCode::invalid_argument, "sweep dims must be increasing");
    }
  }
}

int severity(Verdict v) {
  return v == Verdict::violated ? 2 : v == Verdict::inconclusive ? 1 : 0;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::necessary_conditions_hold: return "necessary_conditions_hold";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

TraceVerdict trace_verdict(const std::vector<double>& trace, double growth_factor) {
  TraceVerdict out;
  if (trace.size() < 3) return out;
  std::size_t start = trace.size() - 1;
  while (start > 0 && trace[start - 1] <= trace[start] * (1.0 + 1e-12)) --start;
  const std::size_t run = trace.size() - start;
  const double first = trace[start];
  const double last = trace.back();
  out.growth = first > 0.0 ? last / first : (last > 0.0 ? INFINITY : 1.0);
  if (run >= 3 && out.growth >= growth_factor) {
    out.verdict = Verdict::violated;
  } else if (out.growth >= std::sqrt(growth_factor)) {
    out.verdict = Verdict::inconclusive;
  } else {
    out.verdict = Verdict::necessary_conditions_hold;
  }
  return out;
}

DiagnosticsReport unconditional_necessary(const SpecFactory& factory,
                                          const std::vector<Index>& sweep,
                                          double growth_factor) {
  check_sweep(sweep);
  DiagnosticsReport r;
  r.sweep_dims = sweep;
  for (Index d : sweep) {
    const MultiplierSpec s = factory(d);
    validate(s);
    const RealVector am = s.m.values.cwiseAbs();
    const RealVector np = s.phi.norms();
    const RealVector nq = s.psi.norms();
    const RealVector mixed = am.cwiseProduct(np).cwiseProduct(nq);
    r.mixed_norm_trace.push_back(mixed.size() ? mixed.maxCoeff() : 0.0);
    r.bessel_trace_A.push_back(bessel_of(s.psi.vectors * am.cwiseProduct(np).asDiagonal()));
    r.bessel_trace_B.push_back(bessel_of(s.phi.vectors * am.cwiseProduct(nq).asDiagonal()));
  }
  const std::pair<const char*, const std::vector<double>*> traces[] = {
      {"mixed_norm", &r.mixed_norm_trace},
      {"bessel_A", &r.bessel_trace_A},
      {"bessel_B", &r.bessel_trace_B},
  };
  r.verdict = Verdict::necessary_conditions_hold;
  r.growth = 0.0;
  for (const auto& [name, trace] : traces) {
    const TraceVerdict tv = trace_verdict(*trace, growth_factor);
    const int rank = severity(tv.verdict);
    const bool worse = rank > severity(r.verdict) ||
                       (rank == severity(r.verdict) && tv.growth > r.growth);
    if (worse) {
      r.verdict = tv.verdict;
      r.growth = tv.growth;
      r.worst_trace = name;
    }
  }
  if (r.verdict == Verdict::violated) {
    r.cited_rule = r.worst_trace == "mixed_norm"
                       ? "unbounded |m_n| |phi_n| |psi_n| rules out unconditional convergence"
                       : "a rescaled family is not Bessel, so M cannot converge unconditionally";
  } else if (r.verdict == Verdict::inconclusive) {
    r.cited_rule = "trace growth between the noise floor and the violation threshold";
  } else {
    r.cited_rule = "bounded mixed norms and Bessel rescaled families (necessary only)";
  }
  return r;
}

bool swap_equivalence_check(const SpecFactory& factory, const std::vector<Index>& sweep,
                            double growth_factor) {
  const DiagnosticsReport a = unconditional_necessary(factory, sweep, growth_factor);
  const DiagnosticsReport b = unconditional_necessary(
      [&factory](Index d) { return swap_spec(factory(d)); }, sweep, growth_factor);
  return a.verdict == b.verdict;
}

RieszSideReport riesz_side_criterion(const SpecFactory& factory,
                                     const std::vector<Index>& sweep,
                                     double growth_factor) {
  check_sweep(sweep);
  RieszSideReport r;
  r.sweep_dims = sweep;
  for (Index d : sweep) {
    const MultiplierSpec s = factory(d);
    validate(s);
    if (s.phi.tags.normalized().riesz == Tri::no || !riesz_margin(s.phi).is_riesz_certified) {
      throw RuleRefused(ErrorCode::not_riesz,
                        s.phi.label + " is not a Riesz basis at d = " + std::to_string(d), {});
    }
    r.symbol_linfty_forced = s.psi.tags.normalized().nbb == Tri::yes;
    const SequenceFamily w = weighted(s.m, s.psi);
    r.bessel_trace.push_back(bessel_of(w.vectors));
    const RealVector n = w.norms();
    r.symbol_trace.push_back(n.size() ? n.maxCoeff() : 0.0);
  }
  const TraceVerdict tv = trace_verdict(r.bessel_trace, growth_factor);
  r.well_defined = tv.verdict == Verdict::violated                  ? Tri::no
                   : tv.verdict == Verdict::necessary_conditions_hold ? Tri::yes
                                                                      : Tri::unknown;
  r.linfty_violated = r.symbol_linfty_forced &&
                      trace_verdict(r.symbol_trace, growth_factor).verdict == Verdict::violated;
  return r;
}

}  // namespace framemult
