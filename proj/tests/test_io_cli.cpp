#include "doctest.h"
#include "framemult/cli.hpp"
#include "framemult/io.hpp"
#include "oracles.hpp"

#include <cstdio>
#include <filesystem>

using namespace framemult;

namespace {

std::string pointer_of(const Json& doc) {
  try {
    spec_from_json(doc);
  } catch (const SchemaError& e) {
    return e.pointer();
  }
  return "<none>";
}

Json small_spec() {
  return parse_json_text(R"({
    "m": {"kind": "explicit", "values": [[1,0],[2,0]]},
    "phi": {"kind": "explicit", "dim": 2, "vectors": [[[1,0],[0,0]], [[0,0],[1,0]]]},
    "psi": {"kind": "explicit", "dim": 2, "vectors": [[[1,0],[0,0]], [[0,0],[1,0]]]}
  })");
}

}  // namespace

TEST_CASE("non-finite reals survive serialisation") {
  CHECK(real_to_json(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(std::isinf(real_from_json(Json("-inf"), "")));
  CHECK(std::isnan(real_from_json(Json("nan"), "")));
  CHECK(complex_from_json(to_json(Complex(1.5, -2)), "") == Complex(1.5, -2));
}

TEST_CASE("emitted fixtures reload bit-exactly") {
  for (const std::string id : {"exnew", "exdual", "riesz-b3-inv", "cex1"}) {
    CAPTURE(id);
    const FixtureInstance inst = instantiate(id, {}, 12);
    Json j = to_json(inst);
    j.erase("fixture");
    const MultiplierSpec back = spec_from_json(parse_json_text(j.dump()));
    CHECK(dense(back) == dense(inst.spec));
    CHECK(back.phi.tags.riesz == inst.spec.phi.tags.riesz);
    CHECK(back.hints.empty() == inst.spec.hints.empty());
  }
}

TEST_CASE("fixture references and dimension override") {
  const Json doc = parse_json_text(R"({"fixture": {"id": "exnew", "dim": 10}})");
  CHECK(spec_from_json(doc).dim() == 10);
  CHECK(spec_from_json(doc, 20).dim() == 20);
}

TEST_CASE("schema errors point at the offending value") {
  Json j = small_spec();
  j["phi"]["vectors"][1][0] = "x";
  CHECK(pointer_of(j) == "/phi/vectors/1/0");

  j = small_spec();
  j.erase("psi");
  CHECK(pointer_of(j) == "/psi");

  j = small_spec();
  j["m"]["kind"] = "weird";
  CHECK(pointer_of(j) == "/m/kind");

  j = small_spec();
  j["phi"]["vectors"][0].push_back(Json::array({0, 0}));
  CHECK(pointer_of(j).rfind("/phi/vectors/0", 0) == 0);

  CHECK_THROWS_AS(parse_json_text("{not json"), SchemaError);
}

TEST_CASE("generator families in documents") {
  const Json doc = parse_json_text(R"({
    "m": {"kind": "generator", "name": "constant", "params": {"re": 2}, "count": 5},
    "phi": {"kind": "generator", "name": "onb", "dim": 5},
    "psi": {"kind": "generator", "name": "onb", "dim": 5}
  })");
  const MultiplierSpec s = spec_from_json(doc);
  CHECK((dense(s) - 2.0 * Matrix::Identity(5, 5)).norm() == 0.0);
}

TEST_CASE("run exit codes") {
  JobConfig c;
  c.fixture = "exnew";
  c.command = Command::certify;
  RunResult r = run(c);
  CHECK(r.exit_code == 0);
  CHECK(r.report["rule"] == "mpos");

  c.fixture = "noninvex";
  c.params = {{"k", 3.0}};
  r = run(c);
  CHECK(r.exit_code == 2);
  CHECK(r.report["rule"] == "none_fired");

  c.fixture = "recycled";
  c.params.clear();
  c.command = Command::diagnose;
  r = run(c);
  CHECK(r.exit_code == 2);
  CHECK(r.report["verdict"] == "violated");

  c.fixture = "no-such";
  r = run(c);
  CHECK(r.exit_code == 1);
  CHECK(r.report.contains("error"));

  c.fixture = "exnew";
  c.tol.tol_inv = -1;
  CHECK(run(c).exit_code == 1);
}

TEST_CASE("schema errors through run carry pointers") {
  const auto path = std::filesystem::temp_directory_path() / "framemult_bad_spec.json";
  Json j = small_spec();
  j["m"]["values"][0] = "oops";
  write_json_file(path.string(), j);
  JobConfig c;
  c.in = path.string();
  const RunResult r = run(c);
  CHECK(r.exit_code == 1);
  CHECK(r.report["pointer"] == "/m/values/0");
  std::filesystem::remove(path);
}

TEST_CASE("config precedence") {
  JobConfig base;
  const Json doc = parse_json_text(R"({"command": "bounds", "tol": 1e-8, "dims": [4, 8],
                                       "order": "p4,p3", "oracle": false})");
  JobConfig merged = merge_config(base, doc);
  CHECK(merged.command == Command::bounds);
  CHECK(merged.tol.tol_inv == 1e-8);
  CHECK(merged.dims == std::vector<Index>{4, 8});
  CHECK(merged.order.size() == 2);
  CHECK_FALSE(merged.oracle);
  merged.tol.tol_inv = 1e-6;
  CHECK(merged.tol.tol_inv == 1e-6);
  try {
    merge_config(base, parse_json_text(R"({"dims": [4, "x"]})"));
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(e.pointer() == "/dims/1");
  }
}

TEST_CASE("apply on the identity multiplier leaves the vector unchanged") {
  const auto path = std::filesystem::temp_directory_path() / "framemult_apply.json";
  Json j = to_json(instantiate("identity", {}, 4));
  j.erase("fixture");
  j["vector"] = to_json(Vector(Vector::LinSpaced(4, 1.0, 4.0)));
  write_json_file(path.string(), j);
  JobConfig c;
  c.command = Command::apply;
  c.in = path.string();
  RunResult r = run(c);
  REQUIRE(r.exit_code == 0);
  const Vector out = vector_from_json(r.report["output"], "/output");
  const Vector in = vector_from_json(r.report["input"], "/input");
  CHECK((out - in).norm() < 1e-14);

  c.apply_inverse = true;
  r = run(c);
  REQUIRE(r.exit_code == 0);
  CHECK((vector_from_json(r.report["output"], "/output") - in).norm() < 1e-10);
  std::filesystem::remove(path);
}

TEST_CASE("invert emits the dense inverse") {
  JobConfig c;
  c.command = Command::invert;
  c.fixture = "exnew";
  c.dim = 6;
  const RunResult r = run(c);
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.report["inverse"].size() == 6);
  Matrix inv(6, 6);
  for (Index i = 0; i < 6; ++i)
    inv.row(i) = vector_from_json(r.report["inverse"][i], "").transpose();
  const Matrix M = dense(instantiate("exnew", {}, 6).spec);
  CHECK((inv * M - Matrix::Identity(6, 6)).norm() < 1e-9);
}

TEST_CASE("catalogue commands") {
  JobConfig c;
  c.command = Command::catalogue;
  RunResult r = run(c);
  CHECK(r.exit_code == 0);
  CHECK(r.report["fixtures"].size() == list_fixtures().size());
  c.catalogue_action = "emit";
  c.catalogue_target = "exdual";
  r = run(c);
  CHECK(r.exit_code == 0);
  CHECK(r.report.contains("expected"));
  CHECK(r.report["fixture"]["id"] == "exdual");
}
