#pragma once

#include "framemult/inversion.hpp"
#include "framemult/multiplier.hpp"

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace framemult {

struct ParamRange {
  std::string name;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_open = false;
  bool hi_open = false;
  double default_value = 0.0;
  bool exclude_zero = false;

  bool admits(double v) const;
  std::string describe() const;
};

struct FixtureInfo {
  std::string id;
  std::vector<std::string> aliases;
  std::string description;
  std::vector<ParamRange> params;
  // Only the necessary-condition diagnostics are meaningful (order sensitive
  // or not well defined in the limit).
  bool diagnostics_only = false;
  Index min_dim = 2;
};

struct FixtureInstance {
  std::string id;
  std::map<std::string, double> params;
  Index dim = 0;
  MultiplierSpec spec;
};

// Machine-checkable statement about a fixture. `kind` is one of
//   fires / refuses      subject = rule name
//   value                subject = quantity (A_phi, B_phi, B_psi_minus_phi,
//                        mu_p4, mu_p3, min_sv, min_sv_times_d), value set
//   verdict              subject = diagnostics | riesz_case, text = expected
//   identity             dense(M) equals value * I
//   noninvertible        the untruncated multiplier is not invertible
struct ExpectedFact {
  std::string kind;
  std::string subject;
  std::optional<double> value;
  std::string text;
  std::string provenance;  // PAPER, DERIVED, TRIVIAL
};

const std::vector<FixtureInfo>& list_fixtures();

// Resolves ids and aliases. Throws UnknownFixture.
const FixtureInfo& fixture_info(const std::string& id);

// Missing params take their defaults. Throws UnknownFixture, ParamOutOfRange.
FixtureInstance instantiate(const std::string& id,
                            const std::map<std::string, double>& params = {},
                            Index d = 16);

std::vector<ExpectedFact> expected_facts(const std::string& id,
                                         const std::map<std::string, double>& params = {});

// Named generators usable from JSON ("kind": "generator").
SequenceFamily generate_family(const std::string& name,
                               const std::map<std::string, double>& params, Index d,
                               std::optional<Index> count = std::nullopt);
Symbol generate_symbol(const std::string& name, const std::map<std::string, double>& params,
                       Index count);
std::vector<std::string> family_generators();
std::vector<std::string> symbol_generators();

}  // namespace framemult
