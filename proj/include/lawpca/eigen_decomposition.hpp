#pragma once

// Deterministic symmetric eigensolvers.
//
// Two routes produce the same EigenDecomposition type:
//   eigh_jacobi    cyclic Jacobi on a p x p symmetric matrix
//   eigh_snapshot  Jacobi on the n x n Gram matrix of centered data, with
//                  p-dimensional eigenvectors rebuilt as X^T u / |X^T u|
//
// Both finish with canonicalize(), which fixes the sign of every eigenvector
// (largest-magnitude loading positive, lowest index wins ties) and orders
// eigenpairs by descending eigenvalue. Eigenvalues closer than
// 1e-12 * max|lambda| form a tie group ordered by descending lexicographic
// order of their loadings, so degenerate blocks have a reproducible basis.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "lawpca/error.hpp"

namespace lawpca {

enum class MomentKind { covariance, correlation };

inline const char* to_string(MomentKind kind) {
  return kind == MomentKind::covariance ? "covariance" : "correlation";
}

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Dense symmetric matrix. The upper triangle of the source is authoritative;
/// the stored lower triangle is an exact mirror of it.
template <typename Scalar>
class SymmetricMatrix {
 public:
  using Matrix = MatrixX<Scalar>;

  template <typename Derived>
  explicit SymmetricMatrix(const Eigen::MatrixBase<Derived>& source) {
    if (source.rows() != source.cols()) {
      throw InputError("SymmetricMatrix: source is not square");
    }
    if (source.rows() < 1) {
      throw InputError("SymmetricMatrix: dimension must be at least 1");
    }
    entries_ = source.template triangularView<Eigen::Upper>();
    entries_.template triangularView<Eigen::StrictlyLower>() =
        entries_.transpose().template triangularView<Eigen::StrictlyLower>();
  }

  Eigen::Index dim() const { return entries_.rows(); }
  const Matrix& matrix() const { return entries_; }
  Scalar operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

 private:
  Matrix entries_;
};

template <typename Scalar>
struct EigenDecomposition {
  VectorX<Scalar> eigenvalues;   // descending
  MatrixX<Scalar> eigenvectors;  // one orthonormal column per eigenvalue
  MomentKind kind = MomentKind::covariance;
  Eigen::Index source_dim = 0;
  // Set when the decomposed data carried no variance at all.
  bool zero_spectrum = false;

  Eigen::Index size() const { return eigenvalues.size(); }
};

struct JacobiOptions {
  double relative_tolerance = 1e-12;
  int max_sweeps = 100;
};

namespace detail {

template <typename Scalar>
void flip_to_sign_convention(Eigen::Ref<VectorX<Scalar>> v) {
  Eigen::Index pivot = 0;
  Scalar best = Scalar(-1);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const Scalar mag = std::abs(v(i));
    if (mag > best) {
      best = mag;
      pivot = i;
    }
  }
  if (v.size() > 0 && v(pivot) < Scalar(0)) v = -v;
}

template <typename Scalar>
bool lexicographically_greater(const VectorX<Scalar>& a, const VectorX<Scalar>& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return a(i) > b(i);
  }
  return false;
}

}  // namespace detail

/// Applies the sign convention and the descending / tie-group ordering in place.
template <typename Scalar>
void canonicalize(EigenDecomposition<Scalar>& dec) {
  const Eigen::Index k = dec.eigenvalues.size();
  if (k == 0) return;
  for (Eigen::Index j = 0; j < k; ++j) {
    VectorX<Scalar> col = dec.eigenvectors.col(j);
    detail::flip_to_sign_convention<Scalar>(col);
    dec.eigenvectors.col(j) = col;
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return dec.eigenvalues(a) > dec.eigenvalues(b);
  });

  const Scalar tie_tol = Scalar(1e-12) * dec.eigenvalues.cwiseAbs().maxCoeff();
  std::size_t group_start = 0;
  for (std::size_t i = 1; i <= order.size(); ++i) {
    const bool boundary =
        i == order.size() ||
        dec.eigenvalues(order[i - 1]) - dec.eigenvalues(order[i]) > tie_tol;
    if (!boundary) continue;
    if (i - group_start > 1) {
      std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(group_start),
                       order.begin() + static_cast<std::ptrdiff_t>(i),
                       [&](Eigen::Index a, Eigen::Index b) {
                         return detail::lexicographically_greater<Scalar>(
                             dec.eigenvectors.col(a), dec.eigenvectors.col(b));
                       });
    }
    group_start = i;
  }

  VectorX<Scalar> values(k);
  MatrixX<Scalar> vectors(dec.eigenvectors.rows(), k);
  for (Eigen::Index j = 0; j < k; ++j) {
    values(j) = dec.eigenvalues(order[static_cast<std::size_t>(j)]);
    vectors.col(j) = dec.eigenvectors.col(order[static_cast<std::size_t>(j)]);
  }
  dec.eigenvalues = std::move(values);
  dec.eigenvectors = std::move(vectors);
}

/// Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Sweeps until the off-diagonal Frobenius norm drops below
/// relative_tolerance * |m|_F; throws ConvergenceError after max_sweeps.
template <typename Scalar>
EigenDecomposition<Scalar> eigh_jacobi(const SymmetricMatrix<Scalar>& m,
                                       MomentKind kind = MomentKind::covariance,
                                       const JacobiOptions& options = {}) {
  using std::abs;
  using std::sqrt;
  if (!m.matrix().allFinite()) {
    throw InputError("eigh_jacobi: matrix contains NaN or Inf");
  }
  const Eigen::Index n = m.dim();
  MatrixX<Scalar> a = m.matrix();
  MatrixX<Scalar> v = MatrixX<Scalar>::Identity(n, n);

  const Scalar frobenius = a.norm();
  const Scalar tolerance = Scalar(options.relative_tolerance) * frobenius;

  auto off_diagonal_norm = [&] {
    Scalar sum = 0;
    for (Eigen::Index q = 1; q < n; ++q) {
      sum += a.col(q).head(q).squaredNorm();
    }
    return sqrt(Scalar(2) * sum);
  };

  Scalar off = off_diagonal_norm();
  int sweep = 0;
  while (off >= tolerance && off > Scalar(0)) {
    if (sweep == options.max_sweeps) {
      std::ostringstream msg;
      msg << "eigh_jacobi: no convergence after " << sweep
          << " sweeps (off-diagonal norm " << off << ", tolerance " << tolerance << ")";
      throw ConvergenceError(msg.str(), static_cast<double>(off), sweep);
    }
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        if (apq == Scalar(0)) continue;
        const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
        Scalar t;
        if (abs(theta) > Scalar(1e150)) {
          t = Scalar(1) / (Scalar(2) * theta);
        } else {
          t = (theta >= Scalar(0) ? Scalar(1) : Scalar(-1)) /
              (abs(theta) + sqrt(theta * theta + Scalar(1)));
        }
        const Scalar c = Scalar(1) / sqrt(t * t + Scalar(1));
        const Scalar s = t * c;

        VectorX<Scalar> col_p = a.col(p);
        a.col(p) = c * col_p - s * a.col(q);
        a.col(q) = s * col_p + c * a.col(q);
        Eigen::Matrix<Scalar, 1, Eigen::Dynamic> row_p = a.row(p);
        a.row(p) = c * row_p - s * a.row(q);
        a.row(q) = s * row_p + c * a.row(q);
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);

        VectorX<Scalar> vec_p = v.col(p);
        v.col(p) = c * vec_p - s * v.col(q);
        v.col(q) = s * vec_p + c * v.col(q);
      }
    }
    ++sweep;
    off = off_diagonal_norm();
  }

  EigenDecomposition<Scalar> dec;
  dec.eigenvalues = a.diagonal();
  dec.eigenvectors = std::move(v);
  dec.kind = kind;
  dec.source_dim = n;
  dec.zero_spectrum = frobenius == Scalar(0);
  canonicalize(dec);
  return dec;
}

/// Eigenpairs of the p x p sample covariance X^T X / (n-1) of already-centered
/// (and, for correlation kind, standardized) data, computed through the n x n
/// Gram matrix. Returns only eigenvalues above 1e-12 * lambda_max, at most
/// min(p, n-1) of them.
template <typename Derived>
EigenDecomposition<typename Derived::Scalar> eigh_snapshot(
    const Eigen::MatrixBase<Derived>& centered, MomentKind kind = MomentKind::covariance,
    const JacobiOptions& options = {}) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = centered.rows();
  const Eigen::Index p = centered.cols();
  if (n < 2) throw InputError("eigh_snapshot: need at least 2 cases");
  if (p < 1) throw InputError("eigh_snapshot: need at least 1 variable");
  if (!centered.allFinite()) throw InputError("eigh_snapshot: data contains NaN or Inf");

  EigenDecomposition<Scalar> out;
  out.kind = kind;
  out.source_dim = p;
  out.eigenvalues.resize(0);
  out.eigenvectors.resize(p, 0);
  if (centered.isZero(Scalar(0))) {
    out.zero_spectrum = true;
    return out;
  }

  const MatrixX<Scalar> x = centered;
  const MatrixX<Scalar> gram = (x * x.transpose()) / Scalar(n - 1);
  const EigenDecomposition<Scalar> small =
      eigh_jacobi(SymmetricMatrix<Scalar>(gram), kind, options);

  const Scalar lambda_max = small.eigenvalues.maxCoeff();
  const Scalar cutoff = Scalar(1e-12) * lambda_max;
  const Eigen::Index cap = std::min(p, n - 1);
  Eigen::Index keep = 0;
  while (keep < small.size() && keep < cap && small.eigenvalues(keep) > cutoff) ++keep;

  out.eigenvalues = small.eigenvalues.head(keep);
  out.eigenvectors = x.transpose() * small.eigenvectors.leftCols(keep);
  for (Eigen::Index j = 0; j < keep; ++j) {
    out.eigenvectors.col(j).normalize();
  }
  canonicalize(out);
  return out;
}

}  // namespace lawpca
