#include "framemult/catalogue.hpp"

#include "framemult/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <sstream>

namespace framemult {

namespace {

using Params = std::map<std::string, double>;
using Term = std::vector<std::pair<Index, Complex>>;  // (1-based basis index, coefficient)
using TermFn = std::function<Term(Index)>;            // 1-based sequence index
using SymFn = std::function<Complex(Index)>;

Term e(Index k, Complex c = 1.0) { return {{k, c}}; }
Term none() { return {}; }

Tri parse_flag(std::string_view tokens, std::string_view name) {
  std::istringstream is{std::string(tokens)};
  std::string t;
  while (is >> t) {
    if (t == name) return Tri::yes;
    if (t.size() > 1 && t[0] == '-' && std::string_view(t).substr(1) == name) return Tri::no;
  }
  return Tri::unknown;
}

ClassTags class_tags(std::string_view tokens) {
  ClassTags t;
  t.bessel = parse_flag(tokens, "bessel");
  t.frame = parse_flag(tokens, "frame");
  t.riesz = parse_flag(tokens, "riesz");
  t.nbb = parse_flag(tokens, "nbb");
  t.nba = parse_flag(tokens, "nba");
  t.sn = parse_flag(tokens, "sn");
  t.provenance = TagProvenance::analytic;
  return t.normalized();
}

SymbolTags symbol_tags(std::string_view tokens) {
  SymbolTags t;
  t.sn = parse_flag(tokens, "sn");
  t.nbb = parse_flag(tokens, "nbb");
  t.ell_infty = parse_flag(tokens, "linf");
  t.positive = parse_flag(tokens, "positive");
  t.negative = parse_flag(tokens, "negative");
  t.provenance = TagProvenance::analytic;
  return t.normalized();
}

// Projects the first N terms onto C^d.
SequenceFamily family(Index d, Index N, const TermFn& f, std::string label,
                      std::string_view tags, std::optional<double> A = {},
                      std::optional<double> B = {}) {
  Matrix v = Matrix::Zero(d, N);
  for (Index n = 1; n <= N; ++n) {
    for (const auto& [k, c] : f(n)) {
      if (k >= 1 && k <= d) v(k - 1, n - 1) += c;
    }
  }
  SequenceFamily out = make_family(std::move(v), std::move(label), class_tags(tags));
  out.analytic_A = A;
  out.analytic_B = B;
  return out;
}

Symbol symbol(Index N, const SymFn& f, std::string label, std::string_view tags,
              std::optional<double> inf_abs = {}, std::optional<double> sup_abs = {},
              std::optional<double> sup_dev = {}) {
  Vector v(N);
  for (Index n = 1; n <= N; ++n) v[n - 1] = f(n);
  Symbol s = make_symbol(std::move(v), std::move(label), symbol_tags(tags));
  s.analytic_inf_abs = inf_abs;
  s.analytic_sup_abs = sup_abs;
  s.analytic_sup_dev_one = sup_dev;
  return s;
}

Symbol constant(Complex c, Index N) { return constant_symbol(c, N); }

double pw(Index n, double p) { return std::pow(static_cast<double>(n), p); }
bool odd(Index n) { return n % 2 == 1; }
Index half_up(Index n) { return (n + 1) / 2; }

// ---------------------------------------------------------------- generators

SequenceFamily onb(Index d, Index N) {
  return family(d, N, [](Index n) { return e(n); }, "(e_n)", "riesz", 1.0, 1.0);
}

// (e1, e1, e2, e3, ...)
SequenceFamily repeat_first(Index d, Index N, double scale = 1.0) {
  std::ostringstream label;
  if (scale != 1.0) label << scale << "*";
  label << "(e1,e1,e2,e3,...)";
  return family(
      d, N, [scale](Index n) { return e(n == 1 ? 1 : n - 1, scale); }, label.str(),
      "frame -riesz nbb nba", scale * scale, 2.0 * scale * scale);
}

// (e1, e1, e2, e2, ...)
SequenceFamily doubled(Index d, Index N) {
  return family(d, N, [](Index n) { return e(half_up(n)); }, "(e1,e1,e2,e2,...)",
                "frame -riesz nbb nba", 2.0, 2.0);
}

// (e1/2, e2, e1/4, e3, e1/8, ...)
SequenceFamily geometric_interleave(Index d, Index N) {
  return family(
      d, N,
      [](Index n) {
        const Index j = half_up(n);
        return odd(n) ? e(1, std::pow(0.5, static_cast<double>(j))) : e(n / 2 + 1);
      },
      "(e1/2,e2,e1/4,e3,...)", "frame -riesz -nbb nba", 1.0 / 3.0, 1.0);
}

// (e1, e2, e1, e3, e1, ...)
SequenceFamily recycled_e1(Index d, Index N) {
  return family(
      d, N, [](Index n) { return odd(n) ? e(1) : e(n / 2 + 1); }, "(e1,e2,e1,e3,...)",
      "-bessel nbb nba");
}

// (n^p e_n)
SequenceFamily power_onb(Index d, Index N, double p) {
  std::string tags = p == 0.0 ? "riesz" : p > 0.0 ? "nbb -nba -bessel" : "nba -nbb bessel -frame";
  std::ostringstream label;
  label << "(n^" << p << " e_n)";
  std::optional<double> B;
  if (p <= 0.0) B = 1.0;
  return family(
      d, N, [p](Index n) { return e(n, pw(n, p)); }, label.str(), tags,
      p == 0.0 ? std::optional<double>(1.0) : std::optional<double>(p < 0.0 ? 0.0 : 1.0), B);
}

Symbol power_symbol(Index N, double p) {
  std::ostringstream label;
  label << "(n^" << p << ")";
  if (p == 0.0) return constant(1.0, N);
  if (p < 0.0) {
    return symbol(N, [p](Index n) { return Complex(pw(n, p)); }, label.str(),
                  "linf -nbb positive", 0.0, 1.0, 1.0);
  }
  return symbol(N, [p](Index n) { return Complex(pw(n, p)); }, label.str(),
                "-linf nbb positive", 1.0);
}

// (1, -1, 1, 1, ...)
Symbol flip_second(Index N) {
  return symbol(N, [](Index n) { return Complex(n == 2 ? -1.0 : 1.0); }, "(1,-1,1,1,...)",
                "sn -positive -negative", 1.0, 1.0, 2.0);
}

// ---------------------------------------------------------------- fixtures

using Builder = std::function<MultiplierSpec(const Params&, Index)>;
using Facts = std::function<std::vector<ExpectedFact>(const Params&)>;

struct Entry {
  FixtureInfo info;
  Builder build;
  Facts facts;
};

ExpectedFact fires(std::string rule, std::string prov = "PAPER") {
  return {"fires", std::move(rule), std::nullopt, "", std::move(prov)};
}
ExpectedFact refuses(std::string rule, std::string prov = "PAPER") {
  return {"refuses", std::move(rule), std::nullopt, "", std::move(prov)};
}
ExpectedFact value(std::string q, double v, std::string prov = "PAPER") {
  return {"value", std::move(q), v, "", std::move(prov)};
}
ExpectedFact verdict(std::string subject, std::string text, std::string prov = "PAPER") {
  return {"verdict", std::move(subject), std::nullopt, std::move(text), std::move(prov)};
}
ExpectedFact identity_fact(double c, std::string prov = "PAPER") {
  return {"identity", "M", c, "", std::move(prov)};
}
ExpectedFact noninvertible(std::string prov = "PAPER") {
  return {"noninvertible", "M", std::nullopt, "", std::move(prov)};
}
ExpectedFact invertible(std::string prov = "PAPER") {
  return {"invertible", "M", std::nullopt, "", std::move(prov)};
}

ParamRange k_range(double lo, double hi, bool lo_open, bool hi_open, double dflt,
                   bool exclude_zero = false) {
  ParamRange r;
  r.name = "k";
  r.lo = lo;
  r.hi = hi;
  r.lo_open = lo_open;
  r.hi_open = hi_open;
  r.default_value = dflt;
  r.exclude_zero = exclude_zero;
  return r;
}

ParamRange k_half() { return k_range(0.0, 0.5, true, true, 0.3); }

MultiplierSpec spec(Symbol m, SequenceFamily phi, SequenceFamily psi, std::string label,
                    AnalyticHints hints = {}) {
  return make_spec(std::move(m), std::move(phi), std::move(psi), hints, std::move(label));
}

// Riesz-basis class table family: phi = (e_n), count d.
Entry riesz_table_entry(std::string id, std::string description,
                        std::function<Symbol(Index)> m, std::function<SequenceFamily(Index)> psi,
                        std::string case_verdict, std::optional<bool> well_defined,
                        bool is_identity = false) {
  Entry en;
  en.info.id = "riesz-" + id;
  en.info.aliases = {"thm4.8-" + id};
  en.info.description = std::move(description);
  en.build = [m, psi, id](const Params&, Index d) {
    return spec(m(d), onb(d, d), psi(d), "riesz-" + id);
  };
  en.facts = [case_verdict, well_defined, is_identity](const Params&) {
    std::vector<ExpectedFact> f{verdict("riesz_case", case_verdict)};
    if (well_defined) f.push_back(verdict("well_defined", *well_defined ? "yes" : "no"));
    if (is_identity) f.push_back(identity_fact(1.0, "DERIVED"));
    return f;
  };
  return en;
}

std::vector<Entry> make_entries() {
  std::vector<Entry> v;
  auto add = [&v](std::string id, std::vector<std::string> aliases, std::string desc,
                  std::vector<ParamRange> params, Builder b, Facts f,
                  bool diagnostics_only = false, Index min_dim = 2) {
    Entry en;
    en.info.id = std::move(id);
    en.info.aliases = std::move(aliases);
    en.info.description = std::move(desc);
    en.info.params = std::move(params);
    en.info.diagnostics_only = diagnostics_only;
    en.info.min_dim = min_dim;
    en.build = std::move(b);
    en.facts = std::move(f);
    v.push_back(std::move(en));
  };

  add("nonnbb_frame", {"nonnbb"}, "frame (e1/2, e2, e1/4, e3, ...) with norms not bounded below",
      {},
      [](const Params&, Index d) {
        const Index N = 2 * (d - 1);
        return spec(constant(1.0, N), geometric_interleave(d, N), geometric_interleave(d, N),
                    "nonnbb_frame");
      },
      [](const Params&) {
        return std::vector<ExpectedFact>{value("B_phi", 1.0), value("A_phi_limit", 1.0 / 3.0)};
      });

  add("conditional", {"rem3.2"},
      "phi = (e1,e1,e1,e2,e2,e2,...), psi = (e1,e1,-e1,e2,e1,-e1,...): M = I only "
      "for the natural order",
      {},
      [](const Params&, Index d) {
        const Index N = 3 * d;
        SequenceFamily phi = family(
            d, N, [](Index n) { return e((n - 1) / 3 + 1); }, "(e1,e1,e1,e2,e2,e2,...)",
            "frame -riesz nbb nba", 3.0, 3.0);
        SequenceFamily psi = family(
            d, N,
            [](Index n) {
              const Index r = (n - 1) % 3;
              return r == 0 ? e((n - 1) / 3 + 1) : e(1, r == 1 ? 1.0 : -1.0);
            },
            "(e1,e1,-e1,e2,e1,-e1,...)", "-bessel nbb nba");
        return spec(constant(1.0, N), phi, psi, "conditional");
      },
      [](const Params&) {
        return std::vector<ExpectedFact>{identity_fact(1.0),
                                         verdict("diagnostics", "violated", "DERIVED")};
      },
      true);

  add("recycled", {"cor3.5"},
      "phi = (e_n), psi = (e1,e2,e1,e3,...): psi not Bessel while m phi is NBB", {},
      [](const Params&, Index d) {
        const Index N = 2 * (d - 1);
        return spec(constant(1.0, N), onb(d, N), recycled_e1(d, N), "recycled");
      },
      [](const Params&) {
        return std::vector<ExpectedFact>{verdict("diagnostics", "violated")};
      },
      true);

  add("nbnb", {"rem3.6"},
      "phi = (e1/2, 2e2, e1/4, 3e3, ...), psi = (e1, e2/2, e1, e3/3, ...): neither NBB "
      "nor NBA, still M = I",
      {},
      [](const Params&, Index d) {
        const Index N = 2 * (d - 1);
        SequenceFamily phi = family(
            d, N,
            [](Index n) {
              const Index j = half_up(n);
              return odd(n) ? e(1, std::pow(0.5, static_cast<double>(j)))
                            : e(n / 2 + 1, static_cast<double>(n / 2 + 1));
            },
            "(e1/2,2e2,e1/4,3e3,...)", "-nbb -nba");
        SequenceFamily psi = family(
            d, N,
            [](Index n) {
              return odd(n) ? e(1) : e(n / 2 + 1, 1.0 / static_cast<double>(n / 2 + 1));
            },
            "(e1,e2/2,e1,e3/3,...)", "-bessel -nbb nba");
        return spec(constant(1.0, N), phi, psi, "nbnb");
      },
      [](const Params&) {
        return std::vector<ExpectedFact>{verdict("diagnostics", "necessary_conditions_hold")};
      },
      true);

  add("cex1", {"rem3.9"},
      "phi = (e1/2, e2, e1/4, e3, ...), psi = (e1, e2, e1, e3, ...): unconditionally "
      "convergent with psi not Bessel",
      {},
      [](const Params&, Index d) {
        const Index N = 2 * (d - 1);
        return spec(constant(1.0, N), geometric_interleave(d, N), recycled_e1(d, N), "cex1");
      },
      [](const Params&) {
        return std::vector<ExpectedFact>{verdict("diagnostics", "necessary_conditions_hold")};
      },
      true);

  add("zero", {}, "phi = (e1,0,e2,0,...), psi = (0,e1,0,e2,...): M = 0", {},
      [](const Params&, Index d) {
        const Index N = 2 * d;
        SequenceFamily phi = family(
            d, N, [](Index n) { return odd(n) ? e(half_up(n)) : none(); }, "(e1,0,e2,0,...)",
            "frame -riesz -nbb nba", 1.0, 1.0);
        SequenceFamily psi = family(
            d, N, [](Index n) { return odd(n) ? none() : e(n / 2); }, "(0,e1,0,e2,...)",
            "frame -riesz -nbb nba", 1.0, 1.0);
        return spec(constant(1.0, N), phi, psi, "zero");
      },
      [](const Params&) {
        return std::vector<ExpectedFact>{noninvertible(), value("min_sv", 0.0)};
      });

  add("identity", {}, "phi = (e1,e1,0,e2,e2,0,...), psi = (0,e1,e1,0,e2,e2,...), "
      "m = (2,1,3,2,1,3,...): M = I",
      {},
      [](const Params&, Index d) {
        const Index N = 3 * d;
        SequenceFamily phi = family(
            d, N, [](Index n) { return (n - 1) % 3 == 2 ? none() : e((n - 1) / 3 + 1); },
            "(e1,e1,0,e2,e2,0,...)", "frame -riesz -nbb nba", 2.0, 2.0);
        SequenceFamily psi = family(
            d, N, [](Index n) { return (n - 1) % 3 == 0 ? none() : e((n - 1) / 3 + 1); },
            "(0,e1,e1,0,e2,e2,...)", "frame -riesz -nbb nba", 2.0, 2.0);
        Symbol m = symbol(
            N, [](Index n) { return Complex(std::array<double, 3>{2.0, 1.0, 3.0}[(n - 1) % 3]); },
            "(2,1,3,...)", "sn positive", 1.0, 3.0, 2.0);
        return spec(m, phi, psi, "identity");
      },
      [](const Params&) { return std::vector<ExpectedFact>{identity_fact(1.0)}; });

  const Builder harmonic = [](const Params&, Index d) {
    AnalyticHints h;
    h.weighted_difference_B_synthesis = 1.0;
    h.weighted_difference_B_analysis = 1.0;
    h.weighted_dual_difference_B_synthesis = 1.0;
    h.weighted_dual_difference_B_analysis = 1.0;
    return spec(power_symbol(d, -1.0), onb(d, d), onb(d, d), "diag(1/n)", h);
  };
  add("harmonic", {"exnonsurj2", "ex5.1"}, "M = diag(1/n): injective, not surjective", {}, harmonic,
      [](const Params&) {
        return std::vector<ExpectedFact>{noninvertible(), value("min_sv_times_d", 1.0, "DERIVED")};
      });
  add("harmonic_dual", {"p1ex", "ex5.2"}, "phi = (e_n), m = (1/n): the symbol bound of the dual-pair rule is sharp",
      {}, harmonic, [](const Params&) {
        return std::vector<ExpectedFact>{refuses("p1"), refuses("cp1"), noninvertible(),
                                         value("min_sv_times_d", 1.0, "DERIVED")};
      });

  add("exof", {"ex5.3a"}, "two overcomplete frames with M = I", {},
      [](const Params&, Index d) {
        const Index N = d + 1;
        SequenceFamily psi = family(
            d, N, [](Index n) { return n <= 2 ? e(1, 0.5) : e(n - 1); },
            "(e1/2,e1/2,e2,e3,...)", "frame -riesz nbb nba", 0.5, 1.0);
        return spec(constant(1.0, N), repeat_first(d, N), psi, "exof");
      },
      [](const Params&) { return std::vector<ExpectedFact>{identity_fact(1.0)}; });
  add("exof_noninv", {"exof-noninv", "ex5.3b"}, "two overcomplete frames with M not injective", {},
      [](const Params&, Index d) {
        return spec(constant(1.0, 2 * d), doubled(d, 2 * d), repeat_first(d, d + 1), "exof_noninv");
      },
      [](const Params&) {
        return std::vector<ExpectedFact>{noninvertible(), value("min_sv", 0.0)};
      },
      false, 3);

  add("noninvex", {"ex5.4"},
      "phi = (e_n), m psi = (k e1, e2/2, e3/3, ...): the mu bounds are sharp",
      {k_range(-INFINITY, INFINITY, true, true, 2.0, true)},
      [](const Params& p, Index d) {
        const double k = p.at("k");
        const double mu = std::max(1.0, (k - 1.0) * (k - 1.0));
        AnalyticHints h;
        h.difference_B = mu;
        h.weighted_difference_B_synthesis = mu;
        h.weighted_difference_B_analysis = mu;
        h.weighted_dual_difference_B_synthesis = mu;
        h.weighted_dual_difference_B_analysis = mu;
        SequenceFamily psi = family(
            d, d, [k](Index n) { return n == 1 ? e(1, k) : e(n, 1.0 / static_cast<double>(n)); },
            "(k e1,e2/2,e3/3,...)", "bessel -frame -nbb nba", 0.0, std::max(k * k, 0.25));
        return spec(constant(1.0, d), onb(d, d), psi, "noninvex", h);
      },
      [](const Params& p) {
        const double k = p.at("k");
        return std::vector<ExpectedFact>{
            value("mu_p4", std::max(1.0, (k - 1.0) * (k - 1.0))), refuses("p4"), refuses("p3"),
            noninvertible()};
      });

  add("inv22", {"ex5.5a"}, "phi = (e_n), m psi = (k e1, e2, e3, ...): invertible for any mu",
      {k_range(-INFINITY, INFINITY, true, true, 0.5, true)},
      [](const Params& p, Index d) {
        const double k = p.at("k");
        SequenceFamily psi = family(
            d, d, [k](Index n) { return n == 1 ? e(1, k) : e(n); }, "(k e1,e2,e3,...)", "riesz",
            std::min(k * k, 1.0), std::max(k * k, 1.0));
        return spec(constant(1.0, d), onb(d, d), psi, "inv22");
      },
      [](const Params& p) {
        const double k = p.at("k");
        return std::vector<ExpectedFact>{value("mu_p4", (k - 1.0) * (k - 1.0)), invertible()};
      });
  add("inv22b", {"ex5.5b"}, "phi = (e_n), m psi = (2 e_n): mu = 1 and M = 2I", {},
      [](const Params&, Index d) {
        SequenceFamily psi = family(
            d, d, [](Index n) { return e(n, 2.0); }, "(2e_n)", "riesz", 4.0, 4.0);
        return spec(constant(1.0, d), onb(d, d), psi, "inv22b");
      },
      [](const Params&) {
        return std::vector<ExpectedFact>{value("mu_p4", 1.0), identity_fact(2.0)};
      });

  add("exdual", {"ex5.6"},
      "phi = (e1,e1,e2,...), m psi = (k+1) phi: weighted perturbation fires, dual "
      "perturbation does not",
      {k_half()},
      [](const Params& p, Index d) {
        const double k = p.at("k");
        return spec(constant(k + 1.0, d + 1), repeat_first(d, d + 1), repeat_first(d, d + 1),
                    "exdual");
      },
      [](const Params& p) {
        const double k = p.at("k");
        return std::vector<ExpectedFact>{value("A_phi", 1.0), value("B_phi", 2.0),
                                         value("mu_p4", 2.0 * k * k), fires("p4"),
                                         refuses("p3")};
      });

  add("exdual2", {"ex5.7"},
      "phi = (e1,e1,e2,...), m psi = (e2, e1-e2, e2, e3, ...) a dual of phi", {},
      [](const Params&, Index d) {
        SequenceFamily psi = family(
            d, d + 1,
            [](Index n) {
              if (n == 1) return e(2);
              if (n == 2) return Term{{1, 1.0}, {2, -1.0}};
              return e(n - 1);
            },
            "(e2,e1-e2,e2,e3,...)", "frame -riesz nbb nba");
        return spec(constant(1.0, d + 1), repeat_first(d, d + 1), psi, "exdual2");
      },
      [](const Params&) {
        return std::vector<ExpectedFact>{fires("p3"), refuses("p4"), value("mu_p3", 0.0)};
      },
      false, 3);

  add("exnew", {"ex5.8"},
      "phi = (e1,e1,e2,e2,...), psi = (e1,e1/2,e2,e2,...), m = 4: frame perturbation "
      "fires, weighted perturbation does not",
      {},
      [](const Params&, Index d) {
        SequenceFamily psi = family(
            d, 2 * d, [](Index n) { return n == 2 ? e(1, 0.5) : e(half_up(n)); },
            "(e1,e1/2,e2,e2,...)", "frame -riesz nbb nba", 1.25, 2.0);
        return spec(constant(4.0, 2 * d), doubled(d, 2 * d), psi, "exnew");
      },
      [](const Params&) {
        return std::vector<ExpectedFact>{value("A_phi", 2.0),       value("B_phi", 2.0),
                                         value("B_psi_minus_phi", 0.25), value("mu_p4", 18.0),
                                         fires("mpos"),             refuses("p4")};
      });

  add("weighted_not_signed", {"8yes7no", "ex5.8b"},
      "m = (1,-1,1,...), psi = (k+1)(phi1, -phi2, phi3, ...): weighted perturbation "
      "fires, the signed-symbol rule does not",
      {k_half()},
      [](const Params& p, Index d) {
        const double k = p.at("k");
        SequenceFamily psi = family(
            d, d + 1,
            [k](Index n) { return e(n == 1 ? 1 : n - 1, n == 2 ? -(k + 1.0) : k + 1.0); },
            "(k+1)(phi1,-phi2,phi3,...)", "frame -riesz nbb nba");
        return spec(flip_second(d + 1), repeat_first(d, d + 1), psi, "weighted_not_signed");
      },
      [](const Params&) { return std::vector<ExpectedFact>{fires("p4"), refuses("mpos")}; });

  add("dual_not_signed", {"9yes7no", "ex5.9"},
      "m = (1,-1,1,...), psi = (e2, e2-e1, e2, e3, ...): dual perturbation fires, the "
      "signed-symbol rule does not",
      {},
      [](const Params&, Index d) {
        SequenceFamily psi = family(
            d, d + 1,
            [](Index n) {
              if (n == 1) return e(2);
              if (n == 2) return Term{{1, -1.0}, {2, 1.0}};
              return e(n - 1);
            },
            "(e2,e2-e1,e2,e3,...)", "frame -riesz nbb nba");
        return spec(flip_second(d + 1), repeat_first(d, d + 1), psi, "dual_not_signed");
      },
      [](const Params&) { return std::vector<ExpectedFact>{fires("p3"), refuses("mpos")}; },
      false, 3);

  add("frame_not_dual", {"7yes9no", "ex5.10"},
      "m = 1, psi = (k+1) phi: frame perturbation fires, dual perturbation does not",
      {k_half()},
      [](const Params& p, Index d) {
        const double k = p.at("k");
        return spec(constant(1.0, d + 1), repeat_first(d, d + 1),
                    repeat_first(d, d + 1, k + 1.0), "frame_not_dual");
      },
      [](const Params& p) {
        const double k = p.at("k");
        return std::vector<ExpectedFact>{value("B_psi_minus_phi", 2.0 * k * k), fires("mpos"),
                                         refuses("p3")};
      });

  // Riesz basis phi = (e_n) against the classes of m and psi.
  const auto sym = [](std::string label, std::string tags, SymFn f) {
    return [label, tags, f](Index N) { return symbol(N, f, label, tags); };
  };
  const auto fam = [](std::string label, std::string tags, TermFn f,
                      std::optional<double> A = {}, std::optional<double> B = {}) {
    return [label, tags, f, A, B](Index d) { return family(d, d, f, label, tags, A, B); };
  };
  const auto alt = [](std::function<double(Index)> o, std::function<double(Index)> ev) {
    return [o, ev](Index n) { return Complex(odd(n) ? o(n) : ev(n)); };
  };
  const auto one = [](Index) { return 1.0; };
  const auto inv = [](double p) { return [p](Index n) { return pw(n, -p); }; };
  const auto pos = [](double p) { return [p](Index n) { return pw(n, p); }; };
  const auto geo = [](double base) {
    return [base](Index n) { return std::pow(base, static_cast<double>(half_up(n))); };
  };

  const auto onb_psi = fam("(e_n)", "riesz", [](Index n) { return e(n); }, 1.0, 1.0);
  const auto recycled = [](Index d) { return recycled_e1(d, d); };
  const auto b2_psi = fam("(e1,2e2,e3/3,4e4,...)", "-nba -nbb -bessel", [](Index n) {
    return e(n, odd(n) ? 1.0 / static_cast<double>(n) : static_cast<double>(n));
  });
  const auto grow1 = fam("(n e_n)", "nbb -nba -bessel", [](Index n) {
    return e(n, static_cast<double>(n));
  });
  const auto grow2 = fam("(n^2 e_n)", "nbb -nba -bessel", [](Index n) { return e(n, pw(n, 2)); });
  const auto decay1 = fam("(e_n/n)", "nba -nbb bessel -frame",
                          [](Index n) { return e(n, pw(n, -1)); }, 0.0, 1.0);
  const auto decay2 = fam("(e_n/n^2)", "nba -nbb bessel -frame",
                          [](Index n) { return e(n, pw(n, -2)); }, 0.0, 1.0);
  const auto geo_psi = [](Index d) { return geometric_interleave(d, d); };
  const auto d2_psi = fam("(e1,e2/4,3e3,e4/16,...)", "-nbb -nba -bessel", [](Index n) {
    return e(n, odd(n) ? static_cast<double>(n) : pw(n, -2));
  });

  const std::string b = "linf -nbb positive";
  const std::string c = "-linf nbb positive";
  const std::string dd = "-linf -nbb positive";

  v.push_back(riesz_table_entry("b1-wd", "m in l-inf not NBB, psi not Bessel but NBA",
                                sym("(1/2,1,1/4,1,...)", b, alt(geo(0.5), one)), recycled,
                                "never_invertible", true));
  v.push_back(riesz_table_entry("b1-nwd", "m in l-inf not NBB, psi not Bessel but NBA",
                                sym("(1,1/2,1,1/3,...)", b,
                                    alt(one, [](Index n) { return 1.0 / static_cast<double>(n / 2 + 1); })),
                                recycled, "never_invertible", false));
  v.push_back(riesz_table_entry("b2-wd", "m in l-inf not NBB, psi neither NBA nor NBB",
                                sym("(1,1/2,1,1/4,...)", b, alt(one, inv(1))), b2_psi,
                                "never_invertible", true));
  v.push_back(riesz_table_entry("b2-nwd", "m in l-inf not NBB, psi neither NBA nor NBB",
                                sym("(1,1,1/3,1,1/5,...)", b, alt(inv(1), one)), b2_psi,
                                "never_invertible", false));
  v.push_back(riesz_table_entry("b3-inv", "m = (1/n), psi = (n e_n): M = I",
                                sym("(1/n)", b, alt(inv(1), inv(1))), grow1,
                                "all_combinations_possible", true, true));
  v.push_back(riesz_table_entry("b3-wdni", "m = (1/n^2), psi = (n e_n)",
                                sym("(1/n^2)", b, alt(inv(2), inv(2))), grow1,
                                "all_combinations_possible", true));
  v.push_back(riesz_table_entry("b3-nwd", "m = (1/n), psi = (n^2 e_n)",
                                sym("(1/n)", b, alt(inv(1), inv(1))), grow2,
                                "all_combinations_possible", false));
  v.push_back(riesz_table_entry("c1", "m = (n), psi = (e_n)",
                                sym("(n)", c, alt(pos(1), pos(1))), onb_psi, "not_well_defined",
                                false));
  v.push_back(riesz_table_entry("c2-inv", "m = (n), psi = (e_n/n): M = I",
                                sym("(n)", c, alt(pos(1), pos(1))), decay1,
                                "all_combinations_possible", true, true));
  v.push_back(riesz_table_entry("c2-wdni", "m = (n), psi = (e_n/n^2)",
                                sym("(n)", c, alt(pos(1), pos(1))), decay2,
                                "all_combinations_possible", true));
  v.push_back(riesz_table_entry("c2-nwd", "m = (n^2), psi = (e_n/n)",
                                sym("(n^2)", c, alt(pos(2), pos(2))), decay1,
                                "all_combinations_possible", false));
  v.push_back(riesz_table_entry("c3-wd", "m NBB unbounded, psi a non-NBB frame",
                                sym("(sqrt2,1,sqrt4,1,...)", c, alt(geo(std::sqrt(2.0)), one)),
                                geo_psi, "never_invertible", true));
  v.push_back(riesz_table_entry("c3-nwd", "m NBB unbounded, psi a non-NBB frame",
                                sym("(2,1,4,1,...)", c, alt(geo(2.0), one)), geo_psi,
                                "never_invertible", false));
  v.push_back(riesz_table_entry("d1", "m = (n^((-1)^n)), psi = (e_n)",
                                sym("(1,2,1/3,4,...)", dd, alt(inv(1), pos(1))), onb_psi,
                                "not_well_defined", false));
  v.push_back(riesz_table_entry("d2-inv", "psi = (e1,e2/4,3e3,e4/16,...): M = I",
                                sym("(1,4,1/3,16,...)", dd, alt(inv(1), pos(2))), d2_psi,
                                "all_combinations_possible", true, true));
  v.push_back(riesz_table_entry("d2-wdni", "psi = (e1,e2/4,3e3,e4/16,...)",
                                sym("(1,2,1/9,4,...)", dd, alt(inv(2), pos(1))), d2_psi,
                                "all_combinations_possible", true));
  v.push_back(riesz_table_entry("d2-nwd", "psi = (e1,e2/4,3e3,e4/16,...)",
                                sym("(1,8,1/3,64,...)", dd, alt(inv(1), pos(3))), d2_psi,
                                "all_combinations_possible", false));
  v.push_back(riesz_table_entry("d3-wd", "psi = (e_n/n), NBA and not NBB",
                                sym("(1,2,1/3,4,...)", dd, alt(inv(1), pos(1))), decay1,
                                "never_invertible", true));
  v.push_back(riesz_table_entry("d3-nwd", "psi = (e_n/n), NBA and not NBB",
                                sym("(1,4,1/3,16,...)", dd, alt(inv(1), pos(2))), decay1,
                                "never_invertible", false));
  for (Entry& en : v) {
    if (en.info.id.rfind("riesz-", 0) == 0) en.info.diagnostics_only = true;
  }
  return v;
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> v = make_entries();
  return v;
}

const Entry& find_entry(const std::string& id) {
  for (const Entry& en : entries()) {
    if (en.info.id == id) return en;
    for (const std::string& a : en.info.aliases) {
      if (a == id) return en;
    }
  }
  throw Error(ErrorCode::unknown_fixture, "unknown fixture '" + id + "'");
}

Params resolve_params(const FixtureInfo& info, const Params& given) {
  Params out;
  for (const auto& [name, v] : given) {
    const auto it = std::find_if(info.params.begin(), info.params.end(),
                                 [&](const ParamRange& r) { return r.name == name; });
    if (it == info.params.end()) {
      throw Error(ErrorCode::param_out_of_range,
                  info.id + " takes no parameter '" + name + "'");
    }
  }
  for (const ParamRange& r : info.params) {
    const auto it = given.find(r.name);
    const double v = it == given.end() ? r.default_value : it->second;
    if (!r.admits(v)) {
      std::ostringstream os;
      os << info.id << ": " << r.name << " = " << v << " outside " << r.describe();
      throw Error(ErrorCode::param_out_of_range, os.str());
    }
    out[r.name] = v;
  }
  return out;
}

double param(const std::map<std::string, double>& p, const std::string& name, double dflt) {
  const auto it = p.find(name);
  return it == p.end() ? dflt : it->second;
}

}  // namespace

bool ParamRange::admits(double v) const {
  if (!std::isfinite(v)) return false;
  if (exclude_zero && v == 0.0) return false;
  if (lo_open ? !(v > lo) : !(v >= lo)) return false;
  if (hi_open ? !(v < hi) : !(v <= hi)) return false;
  return true;
}

std::string ParamRange::describe() const {
  std::ostringstream os;
  os << (lo_open ? "(" : "[") << lo << ", " << hi << (hi_open ? ")" : "]");
  if (exclude_zero) os << " without 0";
  return os.str();
}

const std::vector<FixtureInfo>& list_fixtures() {
  static const std::vector<FixtureInfo> v = [] {
    std::vector<FixtureInfo> out;
    for (const Entry& en : entries()) out.push_back(en.info);
    return out;
  }();
  return v;
}

const FixtureInfo& fixture_info(const std::string& id) { return find_entry(id).info; }

FixtureInstance instantiate(const std::string& id, const std::map<std::string, double>& params,
                            Index d) {
  const Entry& en = find_entry(id);
  if (d < en.info.min_dim) {
    throw Error(ErrorCode::param_out_of_range,
                en.info.id + " needs d >= " + std::to_string(en.info.min_dim));
  }
  FixtureInstance inst;
  inst.id = en.info.id;
  inst.params = resolve_params(en.info, params);
  inst.dim = d;
  inst.spec = en.build(inst.params, d);
  return inst;
}

std::vector<ExpectedFact> expected_facts(const std::string& id,
                                         const std::map<std::string, double>& params) {
  const Entry& en = find_entry(id);
  return en.facts(resolve_params(en.info, params));
}

std::vector<std::string> family_generators() {
  return {"onb", "repeat_first", "doubled", "geometric_interleave", "recycled_e1", "power_onb"};
}

std::vector<std::string> symbol_generators() { return {"constant", "power", "flip_second"}; }

SequenceFamily generate_family(const std::string& name, const std::map<std::string, double>& p,
                               Index d, std::optional<Index> count) {
  if (d < 1) throw Error(ErrorCode::param_out_of_range, "dimension must be positive");
  SequenceFamily f;
  if (name == "onb") {
    f = onb(d, count.value_or(d));
  } else if (name == "repeat_first") {
    f = repeat_first(d, count.value_or(d + 1), param(p, "scale", 1.0));
  } else if (name == "doubled") {
    f = doubled(d, count.value_or(2 * d));
  } else if (name == "geometric_interleave") {
    f = geometric_interleave(d, count.value_or(std::max<Index>(1, 2 * (d - 1))));
  } else if (name == "recycled_e1") {
    f = recycled_e1(d, count.value_or(std::max<Index>(1, 2 * (d - 1))));
  } else if (name == "power_onb") {
    f = power_onb(d, count.value_or(d), param(p, "p", 0.0));
  } else {
    throw Error(ErrorCode::unknown_fixture, "unknown family generator '" + name + "'");
  }
  f.origin = GeneratorRef{name, p};
  return f;
}

Symbol generate_symbol(const std::string& name, const std::map<std::string, double>& p,
                       Index count) {
  Symbol s;
  if (name == "constant") {
    s = constant(Complex(param(p, "re", 1.0), param(p, "im", 0.0)), count);
  } else if (name == "power") {
    s = power_symbol(count, param(p, "p", 0.0));
  } else if (name == "flip_second") {
    s = flip_second(count);
  } else {
    throw Error(ErrorCode::unknown_fixture, "unknown symbol generator '" + name + "'");
  }
  s.origin = GeneratorRef{name, p};
  return s;
}

}  // namespace framemult
