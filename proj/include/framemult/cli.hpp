#pragma once

#include "framemult/io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace framemult {

enum class Command { bounds, diagnose, certify, invert, apply, catalogue };

std::string_view to_string(Command c);
Command command_from_string(std::string_view s);

struct JobConfig {
  Command command = Command::certify;
  std::optional<std::string> in;
  std::optional<std::string> out;
  std::vector<Index> dims{8, 16, 32, 64};
  Tolerances tol = Tolerances::from_env();
  std::vector<Rule> order = default_order();
  bool oracle = true;
  // Catalogue shortcuts, used when no input file is given.
  std::optional<std::string> fixture;
  std::map<std::string, double> params;
  std::optional<Index> dim;
  // catalogue: "list" or "emit"; target is the fixture id for emit.
  std::string catalogue_action = "list";
  std::string catalogue_target;
  // apply: solve M x = y with the certified inverse instead of computing M x.
  bool apply_inverse = false;

  // Throws InvalidArgument when tolerances are not positive or dims not increasing.
  void validate() const;
};

// Applies the keys present in a config document on top of `base`:
// command, in, out, dims, tol, tol_lin, tol_dual, order, oracle, fixture,
// params, dim.
JobConfig merge_config(JobConfig base, const Json& doc);

struct RunResult {
  int exit_code = 0;
  Json report;
};

// 0 success or fired, 2 none_fired or violated, 1 error (report carries
// "error", "message" and, for schema errors, "pointer").
RunResult run(const JobConfig& config);

Json error_report(const std::exception& e);

}  // namespace framemult
