#include "framemult/cli.hpp"

#include "framemult/error.hpp"

#include <random>

namespace framemult {

namespace {

constexpr int kSuccess = 0;
constexpr int kError = 1;
constexpr int kNegative = 2;

InvertOptions invert_options(const JobConfig& c) {
  InvertOptions o;
  o.tol = c.tol;
  o.oracle = c.oracle;
  return o;
}

Json load_input(const JobConfig& c) {
  if (c.in) return read_json_file(*c.in);
  if (c.fixture) {
    Json j;
    j["fixture"] = {{"id", *c.fixture}, {"params", Json::object()}};
    for (const auto& [k, v] : c.params) j["fixture"]["params"][k] = v;
    if (c.dim) j["fixture"]["dim"] = *c.dim;
    return j;
  }
  throw Error(ErrorCode::invalid_argument, "no input: pass --in FILE or --fixture ID");
}

bool is_fixture_doc(const Json& doc) {
  return doc.is_object() && doc.contains("fixture") && !doc.contains("m");
}

MultiplierSpec load_spec(const JobConfig& c, const Json& doc) {
  return spec_from_json(doc, c.dim);
}

Json bounds_report(const JobConfig& c, const MultiplierSpec& s) {
  Json r;
  r["dim"] = s.dim();
  r["count"] = s.count();
  r["phi"] = to_json(frame_bounds(s.phi, SpectralMethod::dense_oracle, c.tol));
  r["psi"] = to_json(frame_bounds(s.psi, SpectralMethod::dense_oracle, c.tol));
  r["phi_guarded"] = to_json(guarded_bounds(s.phi, c.tol));
  r["psi_guarded"] = to_json(guarded_bounds(s.psi, c.tol));
  r["norm_bound"] = real_to_json(norm_bound(s));
  try {
    r["norm_bound_analytic"] = real_to_json(norm_bound(s, true));
  } catch (const Error& e) {
    r["norm_bound_analytic"] = nullptr;
    r["norm_bound_analytic_error"] = to_string(e.code());
  }
  if (c.oracle && s.dim() <= c.tol.oracle_dim_cap) {
    const SingularSpectrum sp = singular_spectrum(dense(s));
    r["op_norm"] = real_to_json(sp.values[0]);
    r["min_sv"] = real_to_json(sp.values[sp.values.size() - 1]);
  }
  return r;
}

RunResult run_diagnose(const JobConfig& c, const Json& doc) {
  SpecFactory factory;
  std::vector<Index> sweep = c.dims;
  if (is_fixture_doc(doc)) {
    factory = [&c, &doc](Index d) { return spec_from_json(doc, d); };
  } else {
    const MultiplierSpec s = load_spec(c, doc);
    factory = [s](Index) { return s; };
    sweep = {s.dim()};
  }
  const DiagnosticsReport r = unconditional_necessary(factory, sweep);
  Json j = to_json(r);
  j["swap_equivalence"] = swap_equivalence_check(factory, sweep);
  try {
    j["riesz_side"] = to_json(riesz_side_criterion(factory, sweep));
  } catch (const RuleRefused&) {
    j["riesz_side"] = nullptr;
  }
  return {r.verdict == Verdict::violated ? kNegative : kSuccess, j};
}

RunResult run_certify(const JobConfig& c, const Json& doc, bool with_inverse) {
  const MultiplierSpec s = load_spec(c, doc);
  const InvertCertificate cert = certify(s, c.order, invert_options(c));
  Json j = to_json(cert);
  if (with_inverse && cert.inverse) {
    const Matrix inv = dense_of(*cert.inverse, c.tol);
    Json rows = Json::array();
    for (Index i = 0; i < inv.rows(); ++i) rows.push_back(to_json(Vector(inv.row(i).transpose())));
    j["inverse"] = rows;
  }
  return {cert.fired() ? kSuccess : kNegative, j};
}

RunResult run_apply(const JobConfig& c, const Json& doc) {
  const MultiplierSpec s = load_spec(c, doc);
  Vector x;
  if (doc.contains("vector")) {
    x = vector_from_json(doc["vector"], "/vector");
    if (x.size() != s.dim()) {
      throw SchemaError("/vector", "vector has " + std::to_string(x.size()) +
                                       " entries, the spec lives in C^" + std::to_string(s.dim()));
    }
  } else {
    std::mt19937_64 rng(0x5eed);
    std::normal_distribution<double> normal;
    x.resize(s.dim());
    for (Index i = 0; i < s.dim(); ++i) x[i] = Complex(normal(rng), normal(rng));
  }
  Json j;
  j["input"] = to_json(x);
  if (c.apply_inverse) {
    const InvertCertificate cert = certify(s, c.order, invert_options(c));
    j["rule"] = to_string(cert.rule);
    if (!cert.inverse) return {kNegative, j};
    j["output"] = to_json(cert.inverse->apply(x));
    return {kSuccess, j};
  }
  j["output"] = to_json(build(s).apply(x));
  return {kSuccess, j};
}

RunResult run_catalogue(const JobConfig& c) {
  if (c.catalogue_action == "list") {
    Json list = Json::array();
    for (const FixtureInfo& f : list_fixtures()) list.push_back(to_json(f));
    return {kSuccess, {{"fixtures", list}}};
  }
  if (c.catalogue_action == "emit") {
    const std::string id = c.catalogue_target.empty() ? c.fixture.value_or("") : c.catalogue_target;
    const FixtureInstance inst = instantiate(id, c.params, c.dim.value_or(16));
    Json j = to_json(inst);
    Json facts = Json::array();
    for (const ExpectedFact& f : expected_facts(id, c.params)) facts.push_back(to_json(f));
    j["expected"] = facts;
    return {kSuccess, j};
  }
  throw Error(ErrorCode::invalid_argument,
              "catalogue action must be list or emit, got '" + c.catalogue_action + "'");
}

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::bounds: return "bounds";
    case Command::diagnose: return "diagnose";
    case Command::certify: return "certify";
    case Command::invert: return "invert";
    case Command::apply: return "apply";
    case Command::catalogue: return "catalogue";
  }
  return "certify";
}

Command command_from_string(std::string_view s) {
  for (Command c : {Command::bounds, Command::diagnose, Command::certify, Command::invert,
                    Command::apply, Command::catalogue}) {
    if (to_string(c) == s) return c;
  }
  throw Error(ErrorCode::invalid_argument, "unknown command '" + std::string(s) + "'");
}

void JobConfig::validate() const {
  if (!(tol.tol_inv > 0) || !(tol.tol_lin > 0) || !(tol.tol_dual_scale > 0)) {
    throw Error(ErrorCode::invalid_argument, "tolerances must be positive");
  }
  if (dims.empty()) throw Error(ErrorCode::invalid_argument, "empty --dims");
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] < 1 || (i > 0 && dims[i] <= dims[i - 1])) {
      throw Error(ErrorCode::invalid_argument, "--dims must be positive and increasing");
    }
  }
}

JobConfig merge_config(JobConfig c, const Json& doc) {
  if (!doc.is_object()) throw SchemaError("/", "config must be an object");
  auto str = [&doc](const char* key) {
    const Json& v = doc.at(key);
    if (!v.is_string()) throw SchemaError(std::string("/") + key, "expected a string");
    return v.get<std::string>();
  };
  auto num = [&doc](const char* key) { return real_from_json(doc.at(key), std::string("/") + key); };
  if (doc.contains("command")) c.command = command_from_string(str("command"));
  if (doc.contains("in")) c.in = str("in");
  if (doc.contains("out")) c.out = str("out");
  if (doc.contains("fixture")) c.fixture = str("fixture");
  if (doc.contains("order")) c.order = parse_order(str("order"));
  if (doc.contains("tol")) c.tol.tol_inv = num("tol");
  if (doc.contains("tol_lin")) c.tol.tol_lin = num("tol_lin");
  if (doc.contains("tol_dual")) c.tol.tol_dual_scale = num("tol_dual");
  if (doc.contains("dim")) c.dim = static_cast<Index>(num("dim"));
  if (doc.contains("oracle")) {
    if (!doc["oracle"].is_boolean()) throw SchemaError("/oracle", "expected a boolean");
    c.oracle = doc["oracle"].get<bool>();
  }
  if (doc.contains("dims")) {
    const Json& d = doc["dims"];
    if (!d.is_array()) throw SchemaError("/dims", "expected an array of integers");
    c.dims.clear();
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (!d[i].is_number_integer()) {
        throw SchemaError("/dims/" + std::to_string(i), "expected an integer");
      }
      c.dims.push_back(d[i].get<Index>());
    }
  }
  if (doc.contains("params")) {
    const Json& p = doc["params"];
    if (!p.is_object()) throw SchemaError("/params", "expected an object");
    for (const auto& [k, v] : p.items()) c.params[k] = real_from_json(v, "/params/" + k);
  }
  return c;
}

Json error_report(const std::exception& e) {
  Json j;
  j["message"] = e.what();
  if (const auto* se = dynamic_cast<const SchemaError*>(&e)) {
    j["error"] = to_string(se->code());
    j["pointer"] = se->pointer();
  } else if (const auto* fe = dynamic_cast<const Error*>(&e)) {
    j["error"] = to_string(fe->code());
  } else {
    j["error"] = "InternalError";
  }
  return j;
}

RunResult run(const JobConfig& c) {
  try {
    c.validate();
    if (c.command == Command::catalogue) return run_catalogue(c);
    const Json doc = load_input(c);
    switch (c.command) {
      case Command::bounds: return {kSuccess, bounds_report(c, load_spec(c, doc))};
      case Command::diagnose: return run_diagnose(c, doc);
      case Command::certify: return run_certify(c, doc, false);
      case Command::invert: return run_certify(c, doc, true);
      case Command::apply: return run_apply(c, doc);
      case Command::catalogue: break;
    }
    throw Error(ErrorCode::invalid_argument, "unhandled command");
  } catch (const std::exception& e) {
    return {kError, error_report(e)};
  }
}

}  // namespace framemult
