#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

namespace framemult {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Three-valued truth for analytic class tags.
enum class Tri : std::uint8_t { no, yes, unknown };

constexpr Tri tri_and(Tri a, Tri b) {
  if (a == Tri::no || b == Tri::no) return Tri::no;
  if (a == Tri::yes && b == Tri::yes) return Tri::yes;
  return Tri::unknown;
}

constexpr Tri tri_or(Tri a, Tri b) {
  if (a == Tri::yes || b == Tri::yes) return Tri::yes;
  if (a == Tri::no && b == Tri::no) return Tri::no;
  return Tri::unknown;
}

constexpr Tri tri_not(Tri a) {
  if (a == Tri::yes) return Tri::no;
  if (a == Tri::no) return Tri::yes;
  return Tri::unknown;
}

constexpr Tri tri_of(bool b) { return b ? Tri::yes : Tri::no; }

std::string_view to_string(Tri t);
Tri tri_from_string(std::string_view s);

// Numerical tolerances shared by every module. Defaults are desk-scale
// double precision settings; the oracle cap can be overridden through the
// FRAMEMULT_ORACLE_CAP environment variable (see Tolerances::from_env).
struct Tolerances {
  double tol_lin = 1e-9;       // linearity / adjointness checks, relative
  double tol_dual_scale = 1e-8;  // tol_dual = tol_dual_scale * sqrt(d)
  double tol_inv = 1e-10;      // certificate verification residual
  double tol_sign = 1e-12;     // |Im m_n| allowed for "real" symbols
  double tol_rank = 1e-9;      // sigma_min below this (relative) = rank deficient
  Index oracle_dim_cap = 512;
  int power_max_iters = 5000;
  double power_tol = 1e-10;

  double tol_dual(Index d) const;

  // Defaults with FRAMEMULT_ORACLE_CAP applied when set.
  static Tolerances from_env();
};

}  // namespace framemult
