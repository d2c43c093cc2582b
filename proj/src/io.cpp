#include "framemult/io.hpp"

#include "framemult/error.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace framemult {

namespace {

const Json& member(const Json& j, const std::string& key, const std::string& pointer) {
  if (!j.is_object()) throw SchemaError(pointer.empty() ? "/" : pointer, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) {
    throw SchemaError(pointer + "/" + key, "missing required member");
  }
  return *it;
}

const Json* optional_member(const Json& j, const std::string& key) {
  const auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

Index index_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) {
    throw SchemaError(pointer, "expected a non-negative integer");
  }
  const auto v = j.get<long long>();
  if (v < 0) throw SchemaError(pointer, "expected a non-negative integer");
  return static_cast<Index>(v);
}

std::string string_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_string()) throw SchemaError(pointer, "expected a string");
  return j.get<std::string>();
}

Tri tri_member(const Json& tags, const std::string& key, const std::string& pointer) {
  const Json* v = optional_member(tags, key);
  if (!v) return Tri::unknown;
  if (v->is_boolean()) return v->get<bool>() ? Tri::yes : Tri::no;
  const std::string s = string_from_json(*v, pointer + "/" + key);
  try {
    return tri_from_string(s);
  } catch (const Error&) {
    throw SchemaError(pointer + "/" + key, "expected yes, no or unknown");
  }
}

std::map<std::string, double> params_from_json(const Json* j, const std::string& pointer) {
  std::map<std::string, double> out;
  if (!j) return out;
  if (!j->is_object()) throw SchemaError(pointer, "expected an object of numbers");
  for (const auto& [k, v] : j->items()) out[k] = real_from_json(v, pointer + "/" + k);
  return out;
}

Json params_to_json(const std::map<std::string, double>& p) {
  Json j = Json::object();
  for (const auto& [k, v] : p) j[k] = real_to_json(v);
  return j;
}

Json constants_to_json(const std::map<std::string, double>& k) { return params_to_json(k); }

void put_optional(Json& j, const char* key, const std::optional<double>& v) {
  if (v) j[key] = real_to_json(*v);
}

std::optional<double> optional_real(const Json& j, const std::string& key,
                                    const std::string& pointer) {
  const Json* v = optional_member(j, key);
  if (!v) return std::nullopt;
  return real_from_json(*v, pointer + "/" + key);
}

TagProvenance provenance_from_json(const Json& tags, const std::string& pointer) {
  const Json* v = optional_member(tags, "provenance");
  if (!v) return TagProvenance::declared;
  const std::string s = string_from_json(*v, pointer + "/provenance");
  if (s == "analytic") return TagProvenance::analytic;
  if (s == "numeric_truncation") return TagProvenance::numeric_truncation;
  if (s == "declared") return TagProvenance::declared;
  throw SchemaError(pointer + "/provenance", "unknown provenance '" + s + "'");
}

ClassTags class_tags_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_object()) throw SchemaError(pointer, "expected an object");
  ClassTags t;
  t.bessel = tri_member(j, "bessel", pointer);
  t.frame = tri_member(j, "frame", pointer);
  t.riesz = tri_member(j, "riesz", pointer);
  t.nbb = tri_member(j, "nbb", pointer);
  t.nba = tri_member(j, "nba", pointer);
  t.sn = tri_member(j, "sn", pointer);
  t.provenance = provenance_from_json(j, pointer);
  if (!t.consistent()) throw SchemaError(pointer, "contradictory class tags");
  return t;
}

SymbolTags symbol_tags_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_object()) throw SchemaError(pointer, "expected an object");
  SymbolTags t;
  t.sn = tri_member(j, "sn", pointer);
  t.nbb = tri_member(j, "nbb", pointer);
  t.ell_infty = tri_member(j, "ell_infty", pointer);
  t.positive = tri_member(j, "positive", pointer);
  t.negative = tri_member(j, "negative", pointer);
  t.provenance = provenance_from_json(j, pointer);
  return t;
}

Json trace_to_json(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(real_to_json(x));
  return a;
}

}  // namespace

Json real_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

Json to_json(Complex z) { return Json::array({real_to_json(z.real()), real_to_json(z.imag())}); }

Json to_json(const Vector& v) {
  Json a = Json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(to_json(v[i]));
  return a;
}

Json to_json(const ClassTags& t) {
  return {{"bessel", to_string(t.bessel)}, {"frame", to_string(t.frame)},
          {"riesz", to_string(t.riesz)},   {"nbb", to_string(t.nbb)},
          {"nba", to_string(t.nba)},       {"sn", to_string(t.sn)},
          {"provenance", to_string(t.provenance)}};
}

Json to_json(const SymbolTags& t) {
  return {{"sn", to_string(t.sn)},
          {"nbb", to_string(t.nbb)},
          {"ell_infty", to_string(t.ell_infty)},
          {"positive", to_string(t.positive)},
          {"negative", to_string(t.negative)},
          {"provenance", to_string(t.provenance)}};
}

Json to_json(const SequenceFamily& f) {
  Json j;
  j["kind"] = "explicit";
  j["dim"] = f.dim();
  j["count"] = f.count();
  j["label"] = f.label;
  Json vectors = Json::array();
  for (Index n = 0; n < f.count(); ++n) vectors.push_back(to_json(Vector(f.vectors.col(n))));
  j["vectors"] = std::move(vectors);
  j["tags"] = to_json(f.tags);
  put_optional(j, "analytic_A", f.analytic_A);
  put_optional(j, "analytic_B", f.analytic_B);
  if (f.origin) j["origin"] = {{"name", f.origin->name}, {"params", params_to_json(f.origin->params)}};
  return j;
}

Json to_json(const Symbol& m) {
  Json j;
  j["kind"] = "explicit";
  j["count"] = m.count();
  j["label"] = m.label;
  j["values"] = to_json(m.values);
  j["tags"] = to_json(m.tags);
  put_optional(j, "analytic_inf_abs", m.analytic_inf_abs);
  put_optional(j, "analytic_sup_abs", m.analytic_sup_abs);
  put_optional(j, "analytic_sup_dev_one", m.analytic_sup_dev_one);
  if (m.origin) j["origin"] = {{"name", m.origin->name}, {"params", params_to_json(m.origin->params)}};
  return j;
}

Json to_json(const AnalyticHints& h) {
  Json j = Json::object();
  put_optional(j, "difference_B", h.difference_B);
  put_optional(j, "weighted_difference_B_synthesis", h.weighted_difference_B_synthesis);
  put_optional(j, "weighted_difference_B_analysis", h.weighted_difference_B_analysis);
  put_optional(j, "weighted_dual_difference_B_synthesis", h.weighted_dual_difference_B_synthesis);
  put_optional(j, "weighted_dual_difference_B_analysis", h.weighted_dual_difference_B_analysis);
  return j;
}

Json to_json(const MultiplierSpec& s) {
  Json j;
  j["label"] = s.label;
  j["m"] = to_json(s.m);
  j["phi"] = to_json(s.phi);
  j["psi"] = to_json(s.psi);
  if (!s.hints.empty()) j["hints"] = to_json(s.hints);
  return j;
}

Json to_json(const FrameBounds& b) {
  return {{"A_lower", real_to_json(b.A_lower)},
          {"A_upper", real_to_json(b.A_upper)},
          {"B_lower", real_to_json(b.B_lower)},
          {"B_upper", real_to_json(b.B_upper)},
          {"certified_frame", b.certified_frame()}};
}

Json to_json(const InvertCertificate& c) {
  Json j;
  j["rule"] = to_string(c.rule);
  j["side"] = c.side ? Json(std::string(to_string(*c.side))) : Json(nullptr);
  j["constants"] = constants_to_json(c.constants);
  j["sandwich"] = Json::array({real_to_json(c.sandwich_lower), real_to_json(c.sandwich_upper)});
  j["terms_used"] = c.terms_used;
  j["residual"] = real_to_json(c.verified_residual);
  j["residual_method"] = c.residual_method;
  Json misses = Json::array();
  for (const NearestMiss& m : c.nearest_misses) {
    misses.push_back({{"rule", to_string(m.rule)},
                      {"error", to_string(m.code)},
                      {"message", m.message},
                      {"constants", constants_to_json(m.constants)}});
  }
  j["nearest_misses"] = std::move(misses);
  Json also = Json::array();
  for (Rule r : c.also_fired) also.push_back(to_string(r));
  j["also_fired"] = std::move(also);
  Json trunc = Json::array();
  for (Rule r : c.truncation_fired) trunc.push_back(to_string(r));
  j["truncation_fired"] = std::move(trunc);
  j["oracle_min_sv"] = c.oracle_min_sv ? real_to_json(*c.oracle_min_sv) : Json(nullptr);
  j["certified_noninvertible"] = c.certified_noninvertible;
  return j;
}

Json to_json(const DiagnosticsReport& r) {
  return {{"sweep_dims", r.sweep_dims},
          {"mixed_norm_trace", trace_to_json(r.mixed_norm_trace)},
          {"bessel_trace_A", trace_to_json(r.bessel_trace_A)},
          {"bessel_trace_B", trace_to_json(r.bessel_trace_B)},
          {"verdict", to_string(r.verdict)},
          {"worst_trace", r.worst_trace},
          {"growth", real_to_json(r.growth)},
          {"cited_rule", r.cited_rule}};
}

Json to_json(const RieszSideReport& r) {
  return {{"sweep_dims", r.sweep_dims},
          {"bessel_trace", trace_to_json(r.bessel_trace)},
          {"symbol_trace", trace_to_json(r.symbol_trace)},
          {"well_defined", to_string(r.well_defined)},
          {"symbol_linfty_forced", r.symbol_linfty_forced},
          {"linfty_violated", r.linfty_violated}};
}

Json to_json(const FixtureInfo& f) {
  Json params = Json::array();
  for (const ParamRange& p : f.params) {
    params.push_back({{"name", p.name},
                      {"range", p.describe()},
                      {"default", real_to_json(p.default_value)}});
  }
  return {{"id", f.id},
          {"aliases", f.aliases},
          {"description", f.description},
          {"params", params},
          {"diagnostics_only", f.diagnostics_only},
          {"min_dim", f.min_dim}};
}

Json to_json(const ExpectedFact& f) {
  Json j = {{"kind", f.kind}, {"subject", f.subject}, {"provenance", f.provenance}};
  if (f.value) j["value"] = real_to_json(*f.value);
  if (!f.text.empty()) j["text"] = f.text;
  return j;
}

Json to_json(const FixtureInstance& f) {
  Json j = to_json(f.spec);
  j["fixture"] = {{"id", f.id}, {"params", params_to_json(f.params)}, {"dim", f.dim}};
  return j;
}

double real_from_json(const Json& j, const std::string& pointer) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    if (s == "nan") return NAN;
  }
  throw SchemaError(pointer, "expected a number");
}

Complex complex_from_json(const Json& j, const std::string& pointer) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw SchemaError(pointer, "expected [re, im]");
  return {real_from_json(j[0], pointer + "/0"), real_from_json(j[1], pointer + "/1")};
}

Vector vector_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_array()) throw SchemaError(pointer, "expected an array of [re, im]");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[static_cast<Index>(i)] = complex_from_json(j[i], pointer + "/" + std::to_string(i));
  }
  return v;
}

SequenceFamily family_from_json(const Json& j, const std::string& pointer) {
  const std::string kind = string_from_json(member(j, "kind", pointer), pointer + "/kind");
  const Index dim = index_from_json(member(j, "dim", pointer), pointer + "/dim");
  if (dim == 0) throw SchemaError(pointer + "/dim", "dimension must be positive");
  const Json* count_j = optional_member(j, "count");
  std::optional<Index> count;
  if (count_j) count = index_from_json(*count_j, pointer + "/count");

  SequenceFamily f;
  if (kind == "generator") {
    const std::string name = string_from_json(member(j, "name", pointer), pointer + "/name");
    try {
      f = generate_family(name, params_from_json(optional_member(j, "params"), pointer + "/params"),
                          dim, count);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::unknown_fixture) throw SchemaError(pointer + "/name", e.what());
      throw;
    }
  } else if (kind == "explicit") {
    const std::string vp = pointer + "/vectors";
    const Json& vectors = member(j, "vectors", pointer);
    if (!vectors.is_array()) throw SchemaError(vp, "expected an array of vectors");
    const Index n = static_cast<Index>(vectors.size());
    if (count && *count != n) {
      throw SchemaError(pointer + "/count", "count " + std::to_string(*count) + " but " +
                                                std::to_string(n) + " vectors given");
    }
    Matrix m(dim, n);
    for (Index c = 0; c < n; ++c) {
      const std::string cp = vp + "/" + std::to_string(c);
      const Vector col = vector_from_json(vectors[static_cast<std::size_t>(c)], cp);
      if (col.size() != dim) {
        throw SchemaError(cp, "vector has " + std::to_string(col.size()) + " entries, dim is " +
                                  std::to_string(dim));
      }
      m.col(c) = col;
    }
    f = make_family(std::move(m));
  } else {
    throw SchemaError(pointer + "/kind", "expected \"explicit\" or \"generator\"");
  }
  if (const Json* l = optional_member(j, "label")) f.label = string_from_json(*l, pointer + "/label");
  if (const Json* t = optional_member(j, "tags")) f.tags = class_tags_from_json(*t, pointer + "/tags");
  if (auto a = optional_real(j, "analytic_A", pointer)) f.analytic_A = a;
  if (auto b = optional_real(j, "analytic_B", pointer)) f.analytic_B = b;
  return f;
}

Symbol symbol_from_json(const Json& j, const std::string& pointer) {
  const std::string kind = string_from_json(member(j, "kind", pointer), pointer + "/kind");
  Symbol s;
  if (kind == "generator") {
    const std::string name = string_from_json(member(j, "name", pointer), pointer + "/name");
    const Index count = index_from_json(member(j, "count", pointer), pointer + "/count");
    try {
      s = generate_symbol(name, params_from_json(optional_member(j, "params"), pointer + "/params"),
                          count);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::unknown_fixture) throw SchemaError(pointer + "/name", e.what());
      throw;
    }
  } else if (kind == "explicit") {
    Vector v = vector_from_json(member(j, "values", pointer), pointer + "/values");
    if (const Json* c = optional_member(j, "count")) {
      if (index_from_json(*c, pointer + "/count") != v.size()) {
        throw SchemaError(pointer + "/count", "count does not match the number of values");
      }
    }
    s = make_symbol(std::move(v));
  } else {
    throw SchemaError(pointer + "/kind", "expected \"explicit\" or \"generator\"");
  }
  if (const Json* l = optional_member(j, "label")) s.label = string_from_json(*l, pointer + "/label");
  if (const Json* t = optional_member(j, "tags")) s.tags = symbol_tags_from_json(*t, pointer + "/tags");
  if (auto v = optional_real(j, "analytic_inf_abs", pointer)) s.analytic_inf_abs = v;
  if (auto v = optional_real(j, "analytic_sup_abs", pointer)) s.analytic_sup_abs = v;
  if (auto v = optional_real(j, "analytic_sup_dev_one", pointer)) s.analytic_sup_dev_one = v;
  return s;
}

AnalyticHints hints_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_object()) throw SchemaError(pointer, "expected an object");
  AnalyticHints h;
  h.difference_B = optional_real(j, "difference_B", pointer);
  h.weighted_difference_B_synthesis = optional_real(j, "weighted_difference_B_synthesis", pointer);
  h.weighted_difference_B_analysis = optional_real(j, "weighted_difference_B_analysis", pointer);
  h.weighted_dual_difference_B_synthesis =
      optional_real(j, "weighted_dual_difference_B_synthesis", pointer);
  h.weighted_dual_difference_B_analysis =
      optional_real(j, "weighted_dual_difference_B_analysis", pointer);
  return h;
}

MultiplierSpec spec_from_json(const Json& j, std::optional<Index> dim, const std::string& pointer) {
  if (!j.is_object()) throw SchemaError(pointer.empty() ? "/" : pointer, "expected an object");
  const bool explicit_spec = j.contains("m") || j.contains("phi") || j.contains("psi");
  if (!explicit_spec && j.contains("fixture")) {
    const std::string fp = pointer + "/fixture";
    const Json& f = j["fixture"];
    const std::string id = string_from_json(member(f, "id", fp), fp + "/id");
    Index d = 16;
    if (const Json* dj = optional_member(f, "dim")) d = index_from_json(*dj, fp + "/dim");
    if (dim) d = *dim;
    return instantiate(id, params_from_json(optional_member(f, "params"), fp + "/params"), d)
        .spec;
  }
  Symbol m = symbol_from_json(member(j, "m", pointer), pointer + "/m");
  SequenceFamily phi = family_from_json(member(j, "phi", pointer), pointer + "/phi");
  SequenceFamily psi = family_from_json(member(j, "psi", pointer), pointer + "/psi");
  if (phi.dim() != psi.dim()) {
    throw SchemaError(pointer + "/psi/dim", "phi lives in C^" + std::to_string(phi.dim()) +
                                                ", psi in C^" + std::to_string(psi.dim()));
  }
  AnalyticHints h;
  if (const Json* hj = optional_member(j, "hints")) h = hints_from_json(*hj, pointer + "/hints");
  std::string label = "M";
  if (const Json* l = optional_member(j, "label")) label = string_from_json(*l, pointer + "/label");
  return make_spec(std::move(m), std::move(phi), std::move(psi), h, std::move(label));
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::invalid_argument, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::invalid_argument, "cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace framemult
