#include "doctest.h"
#include "framemult/catalogue.hpp"
#include "framemult/convergence.hpp"
#include "oracles.hpp"

using namespace framemult;

namespace {

double rule_constant(Rule r, const MultiplierSpec& s, const std::string& key) {
  InvertOptions o;
  o.constants_only = true;
  try {
    return apply_rule(r, s, o).constants.at(key);
  } catch (const RuleRefused& e) {
    return e.constants().at(key);
  }
}

bool rule_fires(Rule r, const MultiplierSpec& s) {
  try {
    apply_rule(r, s);
    return true;
  } catch (const Error&) {
    return false;
  }
}

void check_fact(const FixtureInfo& info, const ExpectedFact& f) {
  const Index d = std::max<Index>(16, info.min_dim);
  const MultiplierSpec s = instantiate(info.id, {}, d).spec;
  CAPTURE(f.kind);
  CAPTURE(f.subject);
  if (f.kind == "fires") {
    CHECK(rule_fires(rule_from_string(f.subject), s));
  } else if (f.kind == "refuses") {
    CHECK_FALSE(rule_fires(rule_from_string(f.subject), s));
  } else if (f.kind == "value") {
    REQUIRE(f.value.has_value());
    const double v = *f.value;
    const auto approx = doctest::Approx(v).epsilon(1e-8).scale(1.0);
    if (f.subject == "A_phi") {
      CHECK(oracle::lower_frame_bound(s.phi.vectors) == approx);
    } else if (f.subject == "B_phi") {
      CHECK(oracle::bessel_bound(s.phi.vectors) == approx);
    } else if (f.subject == "B_psi_minus_phi") {
      CHECK(oracle::bessel_bound(s.psi.vectors - s.phi.vectors) == approx);
    } else if (f.subject == "mu_p4") {
      CHECK(rule_constant(Rule::p4, s, "mu") == approx);
    } else if (f.subject == "mu_p3") {
      CHECK(rule_constant(Rule::p3, s, "mu") == approx);
    } else if (f.subject == "min_sv") {
      CHECK(oracle::min_sv(dense(s)) == approx);
    } else if (f.subject == "min_sv_times_d") {
      CHECK(static_cast<double>(d) * oracle::min_sv(dense(s)) == approx);
    } else if (f.subject == "A_phi_limit") {
      CHECK(oracle::lower_frame_bound(s.phi.vectors) >= v * (1 - 1e-9));
    } else {
      FAIL("unchecked value " << f.subject);
    }
  } else if (f.kind == "verdict") {
    if (f.subject == "diagnostics") {
      const SpecFactory fac = [&](Index n) { return instantiate(info.id, {}, n).spec; };
      CHECK(to_string(unconditional_necessary(fac, {8, 16, 32, 64, 128}).verdict) == f.text);
    } else if (f.subject == "riesz_case") {
      CHECK(to_string(riesz_case_table(s.phi.tags, s.psi.tags, s.m.tags).verdict) == f.text);
    } else if (f.subject == "well_defined") {
      const SpecFactory fac = [&](Index n) { return instantiate(info.id, {}, n).spec; };
      CHECK(to_string(riesz_side_criterion(fac, {8, 16, 32, 64}).well_defined) == f.text);
    } else {
      FAIL("unchecked verdict " << f.subject);
    }
  } else if (f.kind == "identity") {
    const Index n = s.dim();
    CHECK((dense(s) - *f.value * Matrix::Identity(n, n)).norm() < 1e-12);
  } else if (f.kind == "noninvertible") {
    CHECK_FALSE(certify(s).fired());
  } else if (f.kind == "invertible") {
    CHECK(oracle::min_sv(dense(s)) > 1e-8);
  } else {
    FAIL("unknown fact kind " << f.kind);
  }
}

}  // namespace

TEST_CASE("every expected fact holds against the oracles") {
  for (const FixtureInfo& info : list_fixtures()) {
    CAPTURE(info.id);
    for (const ExpectedFact& f : expected_facts(info.id)) {
      CHECK((f.provenance == "PAPER" || f.provenance == "DERIVED" || f.provenance == "TRIVIAL"));
      check_fact(info, f);
    }
  }
}

TEST_CASE("aliases resolve to the same fixture") {
  CHECK(fixture_info("nonnbb").id == "nonnbb_frame");
  CHECK(fixture_info("recycled").id == "recycled");
  try {
    fixture_info("no-such");
    FAIL("expected UnknownFixture");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unknown_fixture);
  }
}

TEST_CASE("parameters are range checked") {
  const FixtureInfo& noninvex = fixture_info("noninvex");
  REQUIRE_FALSE(noninvex.params.empty());
  CHECK_FALSE(noninvex.params[0].admits(0.0));
  try {
    instantiate("noninvex", {{"k", 0.0}});
    FAIL("expected ParamOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::param_out_of_range);
  }
  try {
    instantiate("exdual", {{"k", 0.7}});
    FAIL("expected ParamOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::param_out_of_range);
  }
  CHECK_THROWS_AS(instantiate("exdual", {{"bogus", 1.0}}), Error);
}

TEST_CASE("parameterised values follow their formulas") {
  for (double k : {0.1, 0.25, 0.45}) {
    const MultiplierSpec s = instantiate("exdual", {{"k", k}}, 24).spec;
    CHECK(rule_constant(Rule::p4, s, "mu") == doctest::Approx(2 * k * k).epsilon(1e-9));
  }
  for (double k : {2.0, 3.0, -1.5}) {
    const MultiplierSpec s = instantiate("noninvex", {{"k", k}}, 16).spec;
    CHECK(rule_constant(Rule::p4, s, "mu") ==
          doctest::Approx(std::max(1.0, (k - 1) * (k - 1))).epsilon(1e-9));
  }
}

TEST_CASE("optimal dual constant on rescaled repeated first vector") {
  for (double c : {0.6, 1.0, 1.3, 2.0}) {
    CAPTURE(c);
    const SequenceFamily phi = generate_family("repeat_first", {}, 10);
    const MultiplierSpec s = make_spec(constant_symbol(1.0, phi.count()), phi,
                                       generate_family("repeat_first", {{"scale", c}}, 10));
    CHECK(rule_constant(Rule::p3, s, "mu") ==
          doctest::Approx(oracle::repeat_first_optimal_dual_mu(c)).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("generators respect dimension and count") {
  for (const std::string& g : family_generators()) {
    const SequenceFamily f = generate_family(g, {}, 6, 9);
    CHECK(f.dim() == 6);
    CHECK(f.count() == 9);
    CHECK(f.origin.has_value());
  }
  for (const std::string& g : symbol_generators()) CHECK(generate_symbol(g, {}, 7).count() == 7);
  CHECK_THROWS_AS(generate_family("nope", {}, 4), Error);
}

TEST_CASE("diagnostics-only fixtures are flagged") {
  CHECK(fixture_info("conditional").diagnostics_only);
  CHECK_FALSE(fixture_info("exnew").diagnostics_only);
}
