#include "framemult/linop.hpp"

#include "framemult/error.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <sstream>

namespace framemult {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_size(const Vector& v, Index expected, const std::string& label,
                const char* what) {
  if (v.size() != expected) {
    std::ostringstream os;
    os << label << ": " << what << " expects length " << expected << ", got "
       << v.size();
    throw Error(ErrorCode::dim_mismatch, os.str());
  }
}

Vector random_unit(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector x(n);
  for (Index i = 0; i < n; ++i) x[i] = Complex(normal(rng), normal(rng));
  return x / x.norm();
}

struct PowerBracket {
  double lower = 0.0;
  double upper = 0.0;
};

// Dominant eigenvalue of a Hermitian PSD map given through `apply`.
PowerBracket power_dominant(const std::function<Vector(const Vector&)>& apply,
                            Index n, const Tolerances& tol, std::uint64_t seed) {
  Vector x = random_unit(n, seed);
  double scale = 0.0;
  for (int it = 0; it < tol.power_max_iters; ++it) {
    Vector y = apply(x);
    const double rho = x.dot(y).real();  // x^H y
    const double res = (y - rho * x).norm();
    scale = std::max(scale, std::abs(rho));
    const double ynorm = y.norm();
    if (ynorm == 0.0) return {0.0, 0.0};
    if (res <= tol.power_tol * std::max(scale, std::numeric_limits<double>::min())) {
      return {std::max(rho, 0.0), rho + res};
    }
    x = y / ynorm;
  }
  throw Error(ErrorCode::no_convergence,
              "power iteration did not reach the residual target");
}

}  // namespace

std::string_view to_string(Tri t) {
  switch (t) {
    case Tri::no: return "no";
    case Tri::yes: return "yes";
    case Tri::unknown: return "unknown";
  }
  return "unknown";
}

Tri tri_from_string(std::string_view s) {
  if (s == "yes" || s == "true") return Tri::yes;
  if (s == "no" || s == "false") return Tri::no;
  return Tri::unknown;
}

double Tolerances::tol_dual(Index d) const {
  return tol_dual_scale * std::sqrt(static_cast<double>(std::max<Index>(d, 1)));
}

Tolerances Tolerances::from_env() {
  Tolerances t;
  if (const char* cap = std::getenv("FRAMEMULT_ORACLE_CAP")) {
    char* end = nullptr;
    const long v = std::strtol(cap, &end, 10);
    if (end != cap && v > 0) t.oracle_dim_cap = v;
  }
  return t;
}

LinearOp::LinearOp(Index rows, Index cols, ApplyFn apply, ApplyFn apply_adjoint,
                   std::string label)
    : rows_(rows),
      cols_(cols),
      apply_(std::move(apply)),
      apply_adjoint_(std::move(apply_adjoint)),
      label_(std::move(label)) {
  if (rows < 0 || cols < 0) {
    throw Error(ErrorCode::invalid_argument, "negative operator dimension");
  }
}

Vector LinearOp::apply(const Vector& x) const {
  check_size(x, cols_, label_, "apply");
  return apply_(x);
}

Vector LinearOp::apply_adjoint(const Vector& y) const {
  check_size(y, rows_, label_, "apply_adjoint");
  return apply_adjoint_(y);
}

LinearOp identity(Index d) {
  auto id = [](const Vector& x) { return x; };
  return LinearOp(d, d, id, id, "I");
}

LinearOp zero(Index rows, Index cols) {
  return LinearOp(
      rows, cols, [rows](const Vector&) -> Vector { return Vector::Zero(rows); },
      [cols](const Vector&) -> Vector { return Vector::Zero(cols); }, "0");
}

LinearOp from_dense(Matrix m, std::string label) {
  auto mat = std::make_shared<const Matrix>(std::move(m));
  return LinearOp(
      mat->rows(), mat->cols(),
      [mat](const Vector& x) -> Vector { return (*mat) * x; },
      [mat](const Vector& y) -> Vector { return mat->adjoint() * y; },
      std::move(label));
}

LinearOp diagonal(Vector diag, std::string label) {
  auto d = std::make_shared<const Vector>(std::move(diag));
  return LinearOp(
      d->size(), d->size(),
      [d](const Vector& x) -> Vector { return d->cwiseProduct(x); },
      [d](const Vector& y) -> Vector { return d->conjugate().cwiseProduct(y); },
      std::move(label));
}

LinearOp compose(const LinearOp& outer, const LinearOp& inner) {
  if (outer.cols() != inner.rows()) {
    std::ostringstream os;
    os << "compose: " << outer.label() << " expects " << outer.cols()
       << " inputs, " << inner.label() << " produces " << inner.rows();
    throw Error(ErrorCode::dim_mismatch, os.str());
  }
  return LinearOp(
      outer.rows(), inner.cols(),
      [outer, inner](const Vector& x) { return outer.apply(inner.apply(x)); },
      [outer, inner](const Vector& y) {
        return inner.apply_adjoint(outer.apply_adjoint(y));
      },
      outer.label() + "*" + inner.label());
}

LinearOp sum(const LinearOp& a, const LinearOp& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::dim_mismatch, "sum: operator shapes differ");
  }
  return LinearOp(
      a.rows(), a.cols(),
      [a, b](const Vector& x) -> Vector { return a.apply(x) + b.apply(x); },
      [a, b](const Vector& y) -> Vector {
        return a.apply_adjoint(y) + b.apply_adjoint(y);
      },
      "(" + a.label() + "+" + b.label() + ")");
}

LinearOp difference(const LinearOp& a, const LinearOp& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::dim_mismatch, "difference: operator shapes differ");
  }
  return LinearOp(
      a.rows(), a.cols(),
      [a, b](const Vector& x) -> Vector { return a.apply(x) - b.apply(x); },
      [a, b](const Vector& y) -> Vector {
        return a.apply_adjoint(y) - b.apply_adjoint(y);
      },
      "(" + a.label() + "-" + b.label() + ")");
}

LinearOp scaled(Complex alpha, const LinearOp& a) {
  return LinearOp(
      a.rows(), a.cols(),
      [alpha, a](const Vector& x) -> Vector { return alpha * a.apply(x); },
      [alpha, a](const Vector& y) -> Vector {
        return std::conj(alpha) * a.apply_adjoint(y);
      },
      "c*" + a.label());
}

LinearOp adjoint(const LinearOp& a) {
  return LinearOp(
      a.cols(), a.rows(), [a](const Vector& y) { return a.apply_adjoint(y); },
      [a](const Vector& x) { return a.apply(x); }, a.label() + "^*");
}

Matrix dense_of(const LinearOp& op, const Tolerances& tol) {
  if (op.rows() > tol.oracle_dim_cap || op.cols() > tol.oracle_dim_cap) {
    std::ostringstream os;
    os << "dense_of: " << op.rows() << "x" << op.cols()
       << " exceeds oracle cap " << tol.oracle_dim_cap;
    throw Error(ErrorCode::dim_too_large, os.str());
  }
  Matrix m(op.rows(), op.cols());
  Vector e = Vector::Zero(op.cols());
  for (Index j = 0; j < op.cols(); ++j) {
    e[j] = 1.0;
    m.col(j) = op.apply(e);
    e[j] = 0.0;
  }
  return m;
}

std::string_view to_string(SpectralMethod m) {
  return m == SpectralMethod::dense_oracle ? "dense_oracle" : "power_iteration";
}

SingularSpectrum singular_spectrum(const Matrix& m) {
  SingularSpectrum out;
  if (m.rows() == 0 || m.cols() == 0) {
    out.values = RealVector::Zero(0);
    return out;
  }
  Eigen::BDCSVD<Matrix> svd(m);
  out.values = svd.singularValues();
  const double n = static_cast<double>(std::max(m.rows(), m.cols()));
  out.slack = 8.0 * kEps * n * (out.values.size() ? out.values[0] : 0.0);
  return out;
}

SpectralEstimate spectral_estimates(const LinearOp& op, SpectralMethod method,
                                    const Tolerances& tol) {
  if (method == SpectralMethod::dense_oracle &&
      std::max(op.rows(), op.cols()) > tol.oracle_dim_cap) {
    method = SpectralMethod::power_iteration;
  }
  SpectralEstimate est;
  est.method = method;
  const Index k = std::min(op.rows(), op.cols());
  if (k == 0) return est;

  if (method == SpectralMethod::dense_oracle) {
    const SingularSpectrum s = singular_spectrum(dense_of(op, tol));
    const double smax = s.values[0];
    const double smin = s.values[s.values.size() - 1];
    est.op_norm_lower = std::max(0.0, smax - s.slack);
    est.op_norm_upper = smax + s.slack;
    est.min_sv_lower = std::max(0.0, smin - s.slack);
    est.min_sv_upper = smin + s.slack;
    return est;
  }

  // Gram operator on the smaller side so its spectrum is {sigma_i^2}.
  const bool tall = op.rows() >= op.cols();
  auto gram = [&op, tall](const Vector& x) -> Vector {
    return tall ? op.apply_adjoint(op.apply(x)) : op.apply(op.apply_adjoint(x));
  };
  const PowerBracket top = power_dominant(gram, k, tol, 0x5eed);
  const double shift = top.upper;
  auto shifted = [&gram, shift](const Vector& x) -> Vector {
    return shift * x - gram(x);
  };
  PowerBracket bottom{0.0, 0.0};
  if (shift > 0.0) bottom = power_dominant(shifted, k, tol, 0xbeef);

  est.op_norm_lower = std::sqrt(std::max(top.lower, 0.0));
  est.op_norm_upper = std::sqrt(std::max(top.upper, 0.0));
  const double lam_min_upper = std::max(shift - bottom.lower, 0.0);
  const double lam_min_lower = std::max(shift - bottom.upper, 0.0);
  est.min_sv_lower = std::sqrt(lam_min_lower);
  est.min_sv_upper = std::min(std::sqrt(lam_min_upper), est.op_norm_upper);
  est.min_sv_lower = std::min(est.min_sv_lower, est.min_sv_upper);
  return est;
}

double measure_nu(const LinearOp& F, const LinearOp& G, const Tolerances& tol) {
  return spectral_estimates(difference(G, F), SpectralMethod::dense_oracle, tol)
      .op_norm_upper;
}

double NeumannResult::tail_bound(Index k) const {
  if (contraction_q == 0.0) return 0.0;
  return f_inv_norm_upper * std::pow(contraction_q, static_cast<double>(k + 1)) /
         (1.0 - contraction_q);
}

Vector neumann_partial_sum(const LinearOp& F_inv, const LinearOp& G,
                           const Vector& y, Index terms) {
  const Vector base = F_inv.apply(y);
  Vector x = base;
  for (Index k = 0; k < terms; ++k) x = base + x - F_inv.apply(G.apply(x));
  return x;
}

NeumannResult neumann_invert(const LinearOp& F, const LinearOp& F_inv,
                             const LinearOp& G, double nu,
                             const NeumannOptions& options, const Tolerances& tol) {
  if (!F.is_square() || F.rows() != G.rows() || F.cols() != G.cols() ||
      F_inv.rows() != F.rows() || F_inv.cols() != F.cols()) {
    throw Error(ErrorCode::dim_mismatch, "neumann_invert: F, F^-1, G shapes differ");
  }
  if (!(nu >= 0.0) || !std::isfinite(nu)) {
    throw Error(ErrorCode::invalid_argument, "neumann_invert: nu must be finite and >= 0");
  }
  const double f_inv_norm = spectral_estimates(F_inv, options.method, tol).op_norm_upper;
  const double f_norm = spectral_estimates(F, options.method, tol).op_norm_upper;
  const double q = nu * f_inv_norm;
  if (q >= 1.0) {
    std::ostringstream os;
    os << "neumann_invert: nu*||F^-1|| = " << q << " >= 1";
    throw RuleRefused(ErrorCode::not_contraction, os.str(),
                      {{"nu", nu}, {"f_inv_norm", f_inv_norm}, {"q", q}});
  }

  NeumannResult r{identity(F.rows())};
  r.contraction_q = q;
  r.nu = nu;
  r.f_norm_upper = f_norm;
  r.f_inv_norm_upper = f_inv_norm;
  r.guaranteed_lower = f_norm > 0.0 ? 1.0 / ((1.0 + q) * f_norm) : 0.0;
  r.guaranteed_upper = 1.0 / (1.0 / f_inv_norm - nu);

  const double target = options.relative ? options.tol * r.guaranteed_lower : options.tol;
  Index K = 0;
  while (r.tail_bound(K) > target) {
    if (++K > options.max_terms) {
      throw Error(ErrorCode::no_convergence,
                  "neumann_invert: tail bound not reached within max_terms");
    }
  }
  r.terms_used = K;
  r.a_priori_error = r.tail_bound(K);

  const LinearOp Fi = F_inv;
  const LinearOp Gc = G;
  r.inverse = LinearOp(
      F.rows(), F.cols(),
      [Fi, Gc, K](const Vector& y) { return neumann_partial_sum(Fi, Gc, y, K); },
      [Fi, Gc, K](const Vector& y) -> Vector {
        // (S_K)^* = F^-* sum_j (I - G^* F^-*)^j
        Vector u = y;
        Vector acc = y;
        for (Index j = 0; j < K; ++j) {
          u = u - Gc.apply_adjoint(Fi.apply_adjoint(u));
          acc += u;
        }
        return Fi.apply_adjoint(acc);
      },
      "neumann(" + G.label() + ")");
  return r;
}

SolveResult neumann_solve(const LinearOp& F_inv, const LinearOp& G,
                          const Vector& y, Index start_terms, double tol,
                          Index max_terms) {
  SolveResult out;
  const double ynorm = y.norm();
  const Vector base = F_inv.apply(y);
  Vector x = base;
  Index k = 0;
  for (; k < start_terms; ++k) x = base + x - F_inv.apply(G.apply(x));
  auto residual = [&]() {
    return ynorm == 0.0 ? (G.apply(x)).norm() : (G.apply(x) - y).norm() / ynorm;
  };
  double res = residual();
  while (res > tol && k < max_terms) {
    x = base + x - F_inv.apply(G.apply(x));
    ++k;
    res = residual();
  }
  out.x = std::move(x);
  out.terms = k;
  out.residual = res;
  out.converged = res <= tol;
  return out;
}

}  // namespace framemult
