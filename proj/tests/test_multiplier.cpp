#include "doctest.h"
#include "framemult/catalogue.hpp"
#include "framemult/multiplier.hpp"
#include "oracles.hpp"

using namespace framemult;

namespace {

MultiplierSpec random_spec(std::mt19937_64& rng, Index d, Index n) {
  return make_spec(make_symbol(oracle::random_vector(rng, n)),
                   make_family(oracle::random_matrix(rng, d, n), "phi"),
                   make_family(oracle::random_matrix(rng, d, n), "psi"));
}

}  // namespace

TEST_CASE("matrix-free multiplier equals the rank-one sum") {
  std::mt19937_64 rng(21);
  const MultiplierSpec s = random_spec(rng, 7, 11);
  const Matrix ref = oracle::multiplier(s.m.values, s.phi.vectors, s.psi.vectors);
  CHECK((dense(s) - ref).norm() < 1e-12 * ref.norm());
  CHECK((dense_of(build(s)) - ref).norm() < 1e-12 * ref.norm());
}

TEST_CASE("adjoint and swap specs") {
  std::mt19937_64 rng(22);
  const MultiplierSpec s = random_spec(rng, 5, 8);
  const Matrix m = dense(s);
  CHECK((dense(adjoint_spec(s)) - m.adjoint()).norm() < 1e-12 * m.norm());
  CHECK((dense_of(adjoint(build(s))) - dense(adjoint_spec(s))).norm() < 1e-12 * m.norm());
  const MultiplierSpec w = swap_spec(s);
  CHECK((w.phi.vectors - s.psi.vectors).norm() == 0.0);
  CHECK((w.m.values - s.m.values).norm() == 0.0);
}

TEST_CASE("make_spec aligns counts and checks dimensions") {
  std::mt19937_64 rng(23);
  const MultiplierSpec s =
      make_spec(make_symbol(oracle::random_vector(rng, 9)),
                make_family(oracle::random_matrix(rng, 4, 6)),
                make_family(oracle::random_matrix(rng, 4, 7)));
  CHECK(s.count() == 6);
  CHECK(s.psi.count() == 6);
  CHECK(s.source_count_m == 9);
  CHECK(s.source_count_psi == 7);
  try {
    make_spec(make_symbol(oracle::random_vector(rng, 3)),
              make_family(oracle::random_matrix(rng, 4, 3)),
              make_family(oracle::random_matrix(rng, 5, 3)));
    FAIL("expected DimMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::dim_mismatch);
  }
}

TEST_CASE("operator norm bound") {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 10; ++t) {
    const MultiplierSpec s = random_spec(rng, 6, 10);
    const double bound = std::sqrt(oracle::bessel_bound(s.phi.vectors) *
                                   oracle::bessel_bound(s.psi.vectors)) *
                         s.m.values.cwiseAbs().maxCoeff();
    CHECK(norm_bound(s) == doctest::Approx(bound).epsilon(1e-8));
    CHECK(oracle::op_norm(dense(s)) <= norm_bound(s) * (1 + 1e-12));
  }
}

TEST_CASE("analytic norm bound refuses unbounded inputs") {
  const MultiplierSpec grow = instantiate("noninvex", {}, 8).spec;
  const MultiplierSpec nonbessel = instantiate("recycled", {}, 8).spec;
  try {
    norm_bound(nonbessel, true);
    FAIL("expected UnboundedSymbol");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unbounded_symbol);
  }
  CHECK(norm_bound(grow) > 0.0);
}

TEST_CASE("symbol envelopes take the unfavourable side") {
  const Symbol h = generate_symbol("power", {{"p", -1.0}}, 10);
  CHECK(symbol_inf_abs(h) == 0.0);
  CHECK(symbol_sup_abs(h) == doctest::Approx(1.0));
  Vector v(3);
  v << 2.0, 3.0, 4.0;
  const Symbol plain = make_symbol(v);
  CHECK(symbol_inf_abs(plain) == doctest::Approx(2.0));
  CHECK(symbol_sup_abs(plain) == doctest::Approx(4.0));
  CHECK(symbol_sup_dev_one(plain) == doctest::Approx(3.0));
}

TEST_CASE("symbol sign scan") {
  Vector pos(3), neg(3), mix(3), cplx(2);
  pos << 1.0, 2.0, 0.5;
  neg << -1.0, -2.0, -0.5;
  mix << 1.0, -2.0, 0.5;
  cplx << 1.0, Complex(1.0, 0.1);
  CHECK(symbol_sign(make_symbol(pos)) == SymbolSign::positive);
  CHECK(symbol_sign(make_symbol(neg)) == SymbolSign::negative);
  CHECK(symbol_sign(make_symbol(mix)) == SymbolSign::mixed);
  CHECK(symbol_sign(make_symbol(cplx)) == SymbolSign::mixed);
  CHECK(symbol_sign(generate_symbol("flip_second", {}, 5)) == SymbolSign::mixed);
}

TEST_CASE("guarded bounds fold in tags and analytic constants") {
  const SequenceFamily rec = generate_family("recycled_e1", {}, 6);
  CHECK(std::isinf(guarded_bounds(rec).B_upper));
  const SequenceFamily rf = generate_family("repeat_first", {}, 6);
  const FrameBounds g = guarded_bounds(rf);
  CHECK(g.A_lower <= oracle::lower_frame_bound(rf.vectors) * (1 + 1e-12));
  CHECK(g.B_upper >= oracle::bessel_bound(rf.vectors) * (1 - 1e-12));
}

TEST_CASE("prune drops vanishing triples") {
  const MultiplierSpec z = instantiate("zero", {}, 4).spec;
  try {
    prune(z);
    FAIL("expected EmptyAfterPrune");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::empty_after_prune);
  }
  const MultiplierSpec id = instantiate("identity", {}, 4).spec;
  const MultiplierSpec p = prune(id);
  CHECK(p.count() < id.count());
  CHECK((dense(p) - dense(id)).norm() < 1e-14);
}
