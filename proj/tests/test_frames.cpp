#include "doctest.h"
#include "framemult/catalogue.hpp"
#include "framemult/frames.hpp"
#include "oracles.hpp"

using namespace framemult;

TEST_CASE("tag normalisation propagates implications") {
  ClassTags t;
  t.riesz = Tri::yes;
  const ClassTags n = t.normalized();
  CHECK(n.frame == Tri::yes);
  CHECK(n.bessel == Tri::yes);
  CHECK(n.nba == Tri::yes);
  CHECK(n.nbb == Tri::yes);
  CHECK(n.sn == Tri::yes);

  ClassTags u;
  u.bessel = Tri::no;
  const ClassTags un = u.normalized();
  CHECK(un.frame == Tri::no);
  CHECK(un.riesz == Tri::no);

  ClassTags bad;
  bad.riesz = Tri::yes;
  bad.bessel = Tri::no;
  CHECK_FALSE(bad.consistent());

  SymbolTags s;
  s.nbb = Tri::yes;
  s.ell_infty = Tri::yes;
  CHECK(s.normalized().sn == Tri::yes);
}

TEST_CASE("frame bounds match the frame operator spectrum") {
  std::mt19937_64 rng(11);
  const Matrix v = oracle::random_matrix(rng, 6, 15);
  const SequenceFamily f = make_family(v, "rand");
  const FrameBounds fb = frame_bounds(f);
  const double a = oracle::lower_frame_bound(v);
  const double b = oracle::bessel_bound(v);
  CHECK(fb.A_lower <= a);
  CHECK(fb.A_upper >= a);
  CHECK(fb.B_lower <= b);
  CHECK(fb.B_upper >= b);
  CHECK(fb.B_upper - fb.B_lower < 1e-10 * b);
  CHECK(fb.certified_frame());
  CHECK(bessel_upper(f) >= b);
  const Matrix s = frame_operator_matrix(f);
  CHECK((s - oracle::frame_operator(v)).norm() < 1e-12 * b);
  CHECK((dense_of(frame_operator(f)) - s).norm() < 1e-12 * b);
  CHECK((dense_of(synthesis(f)) - v).norm() == 0.0);
  CHECK((dense_of(analysis(f)) - v.adjoint()).norm() == 0.0);
}

TEST_CASE("a non-spanning family is not a frame") {
  Matrix v = Matrix::Zero(3, 4);
  v(0, 0) = 1;
  v(1, 1) = 1;
  v(1, 2) = 2;
  const SequenceFamily f = make_family(v);
  CHECK_FALSE(frame_bounds(f).certified_frame());
  try {
    canonical_dual(f);
    FAIL("expected NotAFrame");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_a_frame);
  }
}

TEST_CASE("canonical dual is S^-1 phi and forms a dual pair") {
  std::mt19937_64 rng(12);
  const Matrix v = oracle::random_matrix(rng, 5, 9);
  const SequenceFamily f = make_family(v);
  const SequenceFamily g = canonical_dual(f);
  const Matrix expected = oracle::inverse(oracle::frame_operator(v)) * v;
  CHECK((g.vectors - expected).norm() < 1e-10 * expected.norm());
  const DualCheck dc = is_dual_pair(f, g);
  CHECK(dc.is_dual);
  CHECK(dc.residual <= dc.tolerance);
  const DualCheck not_dual = is_dual_pair(f, f);
  CHECK_FALSE(not_dual.is_dual);
}

TEST_CASE("Riesz margin at a truncation") {
  std::mt19937_64 rng(13);
  const Matrix sq = oracle::random_matrix(rng, 6, 6);
  const RieszMargin r = riesz_margin(make_family(sq));
  CHECK(r.is_riesz_certified);
  CHECK(r.min_sv == doctest::Approx(oracle::min_sv(sq)).epsilon(1e-9));
  CHECK_FALSE(riesz_margin(make_family(oracle::random_matrix(rng, 6, 7))).is_riesz_certified);
  Matrix sing = sq;
  sing.col(3) = sing.col(2);
  CHECK_FALSE(riesz_margin(make_family(sing)).is_riesz_certified);
}

TEST_CASE("weighting and differences act columnwise") {
  std::mt19937_64 rng(14);
  const Matrix v = oracle::random_matrix(rng, 4, 5);
  const Matrix w = oracle::random_matrix(rng, 4, 5);
  const Vector m = oracle::random_vector(rng, 5);
  const SequenceFamily mw = weighted(make_symbol(m), make_family(v));
  for (Index n = 0; n < 5; ++n) CHECK((mw.vectors.col(n) - m[n] * v.col(n)).norm() < 1e-15);
  const SequenceFamily d = family_difference(make_family(w), make_family(v));
  CHECK((d.vectors - (w - v)).norm() == 0.0);
  CHECK((make_symbol(m).conj().values - m.conjugate()).norm() == 0.0);
}

TEST_CASE("weighted Riesz classification from tags") {
  const SequenceFamily onb = generate_family("onb", {}, 8);
  const Symbol c = constant_symbol(2.0, 8);
  SymbolTags st;
  st.sn = Tri::yes;
  Symbol sn = c;
  sn.tags = st;
  CHECK(classify_weighted_riesz(sn, onb) == WeightedRieszCase::case_riesz_sn);

  const Symbol harmonic = generate_symbol("power", {{"p", -1.0}}, 8);
  CHECK(classify_weighted_riesz(harmonic, onb) == WeightedRieszCase::impossible);
  CHECK(weighted(harmonic, onb).tags.normalized().riesz == Tri::no);
}

TEST_CASE("pruning removes zero triples") {
  Matrix v = Matrix::Identity(3, 4);
  Matrix w = Matrix::Identity(3, 4);
  Vector m(4);
  m << 1.0, 0.0, 2.0, 5.0;
  const PrunedTriple p = prune_zeros(make_symbol(m), make_family(v), make_family(w));
  REQUIRE(p.kept.size() == 2);
  CHECK(p.kept[0] == 0);
  CHECK(p.kept[1] == 2);
  CHECK(p.m.values[1] == Complex(2.0));

  const Vector z = Vector::Zero(4);
  try {
    prune_zeros(make_symbol(z), make_family(v), make_family(w));
    FAIL("expected EmptyAfterPrune");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::empty_after_prune);
  }
}
