#pragma once

#include "framemult/types.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace framemult {

// Matrix-free complex linear map C^cols -> C^rows.
//
// Both the forward map and its adjoint are carried so that adjoints of
// composite operators stay matrix-free. Instances are immutable and the
// apply functions are re-entrant, so a LinearOp can be shared freely
// across threads.
class LinearOp {
 public:
  using ApplyFn = std::function<Vector(const Vector&)>;

  LinearOp(Index rows, Index cols, ApplyFn apply, ApplyFn apply_adjoint,
           std::string label = "op");

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  const std::string& label() const noexcept { return label_; }

  Vector apply(const Vector& x) const;
  Vector apply_adjoint(const Vector& y) const;
  Vector operator()(const Vector& x) const { return apply(x); }

 private:
  Index rows_;
  Index cols_;
  ApplyFn apply_;
  ApplyFn apply_adjoint_;
  std::string label_;
};

LinearOp identity(Index d);
LinearOp zero(Index rows, Index cols);
LinearOp from_dense(Matrix m, std::string label = "dense");
LinearOp diagonal(Vector diag, std::string label = "diag");

// outer ∘ inner
LinearOp compose(const LinearOp& outer, const LinearOp& inner);
LinearOp sum(const LinearOp& a, const LinearOp& b);
LinearOp difference(const LinearOp& a, const LinearOp& b);
LinearOp scaled(Complex alpha, const LinearOp& a);
LinearOp adjoint(const LinearOp& a);

// Column j is apply(e_j). Throws DimTooLarge when either dimension exceeds
// tol.oracle_dim_cap.
Matrix dense_of(const LinearOp& op, const Tolerances& tol = Tolerances::from_env());

enum class SpectralMethod { dense_oracle, power_iteration };

std::string_view to_string(SpectralMethod m);

// Brackets on the largest and smallest singular value. For a non-square
// operator the smallest singular value is taken over min(rows, cols) values.
struct SpectralEstimate {
  double op_norm_lower = 0.0;
  double op_norm_upper = 0.0;
  double min_sv_lower = 0.0;
  double min_sv_upper = 0.0;
  SpectralMethod method = SpectralMethod::dense_oracle;
};

// dense_oracle: full SVD of the dense realization, bracket widened by a
// rounding slack proportional to eps * n * sigma_max.
// Falls back to power_iteration when the operator exceeds tol.oracle_dim_cap.
// power_iteration: Rayleigh quotients of the Gram operator with residual
// widening. Throws NoConvergence when the residual target is not met
// within tol.power_max_iters.
SpectralEstimate spectral_estimates(const LinearOp& op,
                                    SpectralMethod method = SpectralMethod::dense_oracle,
                                    const Tolerances& tol = Tolerances::from_env());

// Singular values of a dense matrix, descending, widened slack returned too.
struct SingularSpectrum {
  RealVector values;  // descending
  double slack = 0.0;
};
SingularSpectrum singular_spectrum(const Matrix& m);

// Upper bracket on ||G - F||, the "measured" nu for neumann_invert.
double measure_nu(const LinearOp& F, const LinearOp& G,
                  const Tolerances& tol = Tolerances::from_env());

struct NeumannOptions {
  // Target for the a-priori tail bound. With `relative` the target is
  // tol * guaranteed_lower, which bounds the relative operator-norm error.
  double tol = 1e-12;
  bool relative = false;
  Index max_terms = 1'000'000;
  SpectralMethod method = SpectralMethod::dense_oracle;
};

// Truncated series  sum_{k=0}^{K} [F^-1 (F - G)]^k F^-1  for G^-1.
struct NeumannResult {
  LinearOp inverse;
  Index terms_used = 0;        // K
  double contraction_q = 0.0;  // nu * ||F^-1||_upper
  double a_priori_error = 0.0;
  double guaranteed_lower = 0.0;
  double guaranteed_upper = 0.0;
  double nu = 0.0;
  double f_norm_upper = 0.0;
  double f_inv_norm_upper = 0.0;

  // ||F^-1|| q^{k+1} / (1 - q): bound on ||G^-1 - S_k|| after k terms.
  double tail_bound(Index k) const;
};

NeumannResult neumann_invert(const LinearOp& F, const LinearOp& F_inv,
                             const LinearOp& G, double nu,
                             const NeumannOptions& options = {},
                             const Tolerances& tol = Tolerances::from_env());

// Partial sum S_k applied to y, k = terms (0 gives F^-1 y).
Vector neumann_partial_sum(const LinearOp& F_inv, const LinearOp& G,
                           const Vector& y, Index terms);

struct SolveResult {
  Vector x;
  Index terms = 0;
  double residual = 0.0;  // ||G x - y|| / ||y||
  bool converged = false;
};

// Per-solve refinement: keeps adding series terms beyond the a-priori K
// until ||G x - y|| <= tol ||y|| or max_terms is reached.
SolveResult neumann_solve(const LinearOp& F_inv, const LinearOp& G,
                          const Vector& y, Index start_terms, double tol,
                          Index max_terms = 100'000);

}  // namespace framemult
