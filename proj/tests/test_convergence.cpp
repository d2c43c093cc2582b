#include "doctest.h"
#include "framemult/catalogue.hpp"
#include "framemult/convergence.hpp"

using namespace framemult;

namespace {

SpecFactory from_fixture(const std::string& id) {
  return [id](Index d) { return instantiate(id, {}, d).spec; };
}

const std::vector<Index> kSweep{8, 16, 32, 64};

}  // namespace

TEST_CASE("trace verdicts") {
  CHECK(trace_verdict({1, 2, 4, 16}).verdict == Verdict::violated);
  CHECK(trace_verdict({1, 2, 4, 16}).growth == doctest::Approx(16.0));
  CHECK(trace_verdict({1, 1, 1, 1}).verdict == Verdict::necessary_conditions_hold);
  CHECK(trace_verdict({1, 2, 3, 4}).verdict == Verdict::inconclusive);
  CHECK(trace_verdict({5, 1, 2, 3}).verdict == Verdict::inconclusive);
  CHECK(trace_verdict({5, 1, 1.5, 2}).verdict == Verdict::necessary_conditions_hold);
  CHECK(trace_verdict({1, 16}).verdict == Verdict::inconclusive);
  CHECK(trace_verdict({1, 2, 4, 16}, 32.0).verdict == Verdict::inconclusive);
  CHECK(trace_verdict({16, 2, 4, 64}).verdict == Verdict::violated);
  CHECK(trace_verdict({1, 2, 64, 4}).verdict == Verdict::necessary_conditions_hold);
}

TEST_CASE("recycled first vector violates the necessary conditions") {
  const DiagnosticsReport r = unconditional_necessary(from_fixture("recycled"), kSweep);
  CHECK(r.verdict == Verdict::violated);
  CHECK(r.sweep_dims == kSweep);
  CHECK(r.mixed_norm_trace.size() == kSweep.size());
  CHECK_FALSE(r.cited_rule.empty());
  CHECK(r.growth >= 8.0);
  CHECK(swap_equivalence_check(from_fixture("recycled"), kSweep));
}

TEST_CASE("bounded pairs hold") {
  for (const std::string id : {"exnew", "inv22", "identity"}) {
    CAPTURE(id);
    CHECK(unconditional_necessary(from_fixture(id), kSweep).verdict ==
          Verdict::necessary_conditions_hold);
    CHECK(swap_equivalence_check(from_fixture(id), kSweep));
  }
}

TEST_CASE("traces are monotone in the sweep for nested truncations") {
  const DiagnosticsReport r = unconditional_necessary(from_fixture("harmonic_dual"), kSweep);
  for (size_t i = 1; i < r.bessel_trace_A.size(); ++i)
    CHECK(r.bessel_trace_A[i] >= r.bessel_trace_A[i - 1] * (1 - 1e-12));
}

TEST_CASE("Riesz side criterion") {
  const RieszSideReport ok = riesz_side_criterion(from_fixture("inv22"), kSweep);
  CHECK(ok.well_defined == Tri::yes);
  CHECK_FALSE(ok.linfty_violated);

  const RieszSideReport bad = riesz_side_criterion(from_fixture("riesz-d1"), kSweep);
  CHECK(bad.well_defined == Tri::no);

  try {
    riesz_side_criterion(from_fixture("exnew"), kSweep);
    FAIL("expected NotRiesz");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_riesz);
  }
}
