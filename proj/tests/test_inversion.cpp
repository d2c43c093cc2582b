#include "doctest.h"
#include "framemult/catalogue.hpp"
#include "framemult/inversion.hpp"
#include "oracles.hpp"

using namespace framemult;

namespace {

MultiplierSpec fixture(const std::string& id, Index d = 16,
                       const std::map<std::string, double>& p = {}) {
  return instantiate(id, p, d).spec;
}

ErrorCode refusal(Rule r, const MultiplierSpec& s) {
  try {
    apply_rule(r, s);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("rule fired");
  return ErrorCode::invalid_argument;
}

void check_inverse(const InvertCertificate& c, const MultiplierSpec& s) {
  REQUIRE(c.inverse.has_value());
  const Matrix M = dense(s);
  const Matrix X = dense_of(*c.inverse);
  const Matrix Xo = oracle::inverse(M);
  CHECK((X - Xo).norm() / Xo.norm() < 1e-8);
  const RealVector sv = oracle::singular_values(Xo);
  CHECK(sv.minCoeff() >= c.sandwich_lower * (1 - 1e-9));
  CHECK(sv.maxCoeff() <= c.sandwich_upper * (1 + 1e-9));
  CHECK(c.verified_residual <= 1e-10);
}

}  // namespace

TEST_CASE("rule names round trip") {
  for (Rule r : {Rule::gphi, Rule::p1, Rule::cp1, Rule::mpos, Rule::p4, Rule::p3,
                 Rule::riesz_closed_form})
    CHECK(rule_from_string(to_string(r)) == r);
  CHECK(rule_from_string("riesz") == Rule::riesz_closed_form);
  const std::vector<Rule> order = parse_order("p4,mpos,riesz");
  REQUIRE(order.size() == 3);
  CHECK(order[2] == Rule::riesz_closed_form);
  CHECK(default_order().front() == Rule::riesz_closed_form);
  CHECK_THROWS_AS(rule_from_string("p7"), Error);
}

TEST_CASE("equivalent frames with an explicit operator") {
  std::mt19937_64 rng(31);
  const Index d = 6;
  const SequenceFamily phi = make_family(oracle::random_matrix(rng, d, 10), "phi");
  const Matrix G = Matrix::Identity(d, d) + 0.2 * oracle::random_matrix(rng, d, d);
  const Symbol m = constant_symbol(-2.0, 10);
  const InvertCertificate c = invert_equivalent_frames(phi, G, m, Side::synthesis);
  CHECK(c.rule == Rule::gphi);
  check_inverse(c, make_spec(m, phi, make_family(G * phi.vectors)));
}

TEST_CASE("each rule certifies its catalogue example") {
  const std::vector<std::pair<std::string, Rule>> cases{
      {"exof", Rule::gphi}, {"exdual2", Rule::p1},  {"exnew", Rule::mpos},
      {"weighted_not_signed", Rule::p4},  {"dual_not_signed", Rule::p3}, {"inv22", Rule::riesz_closed_form},
      {"exdual", Rule::p4}};
  for (const auto& [id, rule] : cases) {
    CAPTURE(id);
    const MultiplierSpec s = fixture(id);
    const InvertCertificate c = apply_rule(rule, s);
    CHECK(c.rule == rule);
    check_inverse(c, s);
  }
}

TEST_CASE("refusals carry the failing condition") {
  CHECK(refusal(Rule::p1, fixture("harmonic")) == ErrorCode::lambda_too_large);
  CHECK(refusal(Rule::riesz_closed_form, fixture("harmonic_dual")) == ErrorCode::not_riesz_weighted);
  CHECK(refusal(Rule::mpos, fixture("weighted_not_signed")) != ErrorCode::invalid_argument);
  CHECK(refusal(Rule::p4, fixture("dual_not_signed")) == ErrorCode::mu_too_large);
  CHECK(refusal(Rule::gphi, fixture("recycled")) == ErrorCode::not_equivalent);
}

TEST_CASE("weighted perturbation constant on the rescaled dual example") {
  const double k = 0.3;
  InvertOptions o;
  o.constants_only = true;
  const InvertCertificate c =
      invert_weighted_perturbation(fixture("exdual", 32, {{"k", k}}), o);
  CHECK(c.constants.at("mu") == doctest::Approx(2.0 * k * k).epsilon(1e-9));
}

TEST_CASE("explicit dual overload uses the supplied dual") {
  const MultiplierSpec s = fixture("dual_not_signed", 12);
  const Matrix phi = s.phi.vectors;
  const Matrix W = s.m.values.conjugate().asDiagonal() * s.psi.vectors.transpose();
  const Matrix Wc = W.transpose();
  const Matrix sinv_phi = oracle::inverse(oracle::frame_operator(phi)) * phi;

  try {
    invert_dual_perturbation(s, Side::synthesis, make_family(sinv_phi));
    FAIL("canonical dual should be too far");
  } catch (const RuleRefused& e) {
    CHECK(e.code() == ErrorCode::mu_too_large);
    CHECK(e.constants().at("mu") ==
          doctest::Approx(oracle::bessel_bound(Wc - sinv_phi)).epsilon(1e-9));
  }

  const Matrix best = sinv_phi + Wc - Wc * phi.adjoint() * sinv_phi;
  const InvertCertificate c = invert_dual_perturbation(s, Side::synthesis, make_family(best));
  CHECK(c.rule == Rule::p3);
  check_inverse(c, s);
}

TEST_CASE("Riesz inverse is itself a multiplier") {
  const MultiplierSpec s = fixture("inv22", 10);
  const MultiplierSpec inv = riesz_inverse_spec(s);
  const Matrix prod = dense(inv) * dense(s);
  CHECK((prod - Matrix::Identity(10, 10)).norm() < 1e-9);
  try {
    riesz_inverse_spec(fixture("harmonic_dual", 10));
    FAIL("expected NotRieszWeighted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_riesz_weighted);
  }
}

TEST_CASE("certify reports first firing rule and nearest misses") {
  const InvertCertificate c = certify(fixture("exnew"));
  CHECK(c.rule == Rule::mpos);
  CHECK_FALSE(c.nearest_misses.empty());
  CHECK_FALSE(c.certified_noninvertible);

  const InvertCertificate n = certify(fixture("harmonic_dual"));
  CHECK(n.rule == Rule::none_fired);
  CHECK(n.certified_noninvertible);
  REQUIRE(n.oracle_min_sv.has_value());
  CHECK(*n.oracle_min_sv == doctest::Approx(1.0 / 16).epsilon(1e-9));
  CHECK(n.nearest_misses.size() == default_order().size());
}

TEST_CASE("truncation-only firings are not certificates") {
  const InvertCertificate c = certify(fixture("riesz-d3-wd", 16));
  CHECK(c.rule == Rule::none_fired);
  CHECK(c.certified_noninvertible);
  CHECK_FALSE(c.inverse.has_value());
}

TEST_CASE("order controls which rule is reported") {
  const MultiplierSpec s = fixture("exdual");
  const InvertCertificate a = certify(s, parse_order("p4,gphi"));
  CHECK(a.rule == Rule::p4);
  REQUIRE(a.also_fired.size() == 1);
  CHECK(a.also_fired[0] == Rule::gphi);
}

TEST_CASE("firing certificates imply the lower frame inequality") {
  for (const std::string id : {"exnew", "weighted_not_signed", "inv22", "exof"}) {
    CAPTURE(id);
    const MultiplierSpec s = fixture(id);
    const double inv_norm = oracle::op_norm(oracle::inverse(dense(s)));
    CHECK(necessary_lower_frame(s, inv_norm).holds);
  }
}

TEST_CASE("Riesz case table") {
  auto verdict = [](const std::string& id) {
    const MultiplierSpec s = fixture(id, 8);
    return riesz_case_table(s.phi.tags, s.psi.tags, s.m.tags);
  };
  CHECK(verdict("riesz-b1-wd").id == "b1");
  CHECK(verdict("riesz-b1-wd").verdict == RieszCaseVerdict::never_invertible);
  CHECK(verdict("riesz-c2-inv").verdict == RieszCaseVerdict::all_combinations_possible);
  CHECK(verdict("riesz-d1").verdict == RieszCaseVerdict::not_well_defined);
  CHECK(verdict("inv22").verdict == RieszCaseVerdict::invertible_iff_weighted_riesz);
  ClassTags none;
  CHECK(riesz_case_table(none, none, SymbolTags{}).id == "none");
}

TEST_CASE("certification above the oracle cap uses probes") {
  InvertOptions o;
  o.tol.oracle_dim_cap = 8;
  for (const std::string id : {"exnew", "weighted_not_signed", "exdual"}) {
    CAPTURE(id);
    const MultiplierSpec s = fixture(id, 24);
    const InvertCertificate c = certify(s, default_order(), o);
    CHECK(c.fired());
    CHECK(c.residual_method == "probe");
    REQUIRE(c.inverse.has_value());
    const Matrix X = dense_of(*c.inverse);
    CHECK((X - oracle::inverse(dense(s))).norm() / X.norm() < 1e-8);
  }
}
