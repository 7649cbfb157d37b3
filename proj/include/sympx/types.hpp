// Phase-space state types and the copy-defect algebra of the doubled
// phase space.
#ifndef SYMPX_TYPES_HPP
#define SYMPX_TYPES_HPP

#include <Eigen/Core>

#include <stdexcept>

namespace sympx {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Raised when a computation leaves the domain where the dynamics is
/// defined (vortex near-collision, non-finite solver residual, ...).
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// State (q, p) of a canonical Hamiltonian system on T*R^d.
template <typename Scalar>
struct PhasePoint {
  Vector<Scalar> q;
  Vector<Scalar> p;

  PhasePoint() = default;
  PhasePoint(Vector<Scalar> q_, Vector<Scalar> p_)
      : q(std::move(q_)), p(std::move(p_)) {
    if (q.size() != p.size())
      throw std::invalid_argument("PhasePoint: q and p must have equal length");
  }

  Eigen::Index dim() const { return q.size(); }
};

/// State (q, x, p, y) on the doubled phase space T*R^(2d).  (q, p) and
/// (x, y) are the two copies of the original state; the four blocks are
/// kept separate so the split flows read off the defining formulas.
template <typename Scalar>
struct ExtendedPoint {
  Vector<Scalar> q, x, p, y;

  Eigen::Index dim() const { return q.size(); }
};

/// mu = (mu1, mu2) in R^{2d}: the two halves of the projection multiplier,
/// and also the value type of the copy defect (q - x, p - y).
template <typename Scalar>
struct DefectVector {
  Vector<Scalar> mu1, mu2;

  Eigen::Index dim() const { return mu1.size(); }

  static DefectVector Zero(Eigen::Index d) {
    return {Vector<Scalar>::Zero(d), Vector<Scalar>::Zero(d)};
  }

  Scalar norm() const {
    return std::sqrt(mu1.squaredNorm() + mu2.squaredNorm());
  }

  bool allFinite() const { return mu1.allFinite() && mu2.allFinite(); }

  DefectVector operator+(const DefectVector& o) const {
    return {mu1 + o.mu1, mu2 + o.mu2};
  }
  DefectVector operator-(const DefectVector& o) const {
    return {mu1 - o.mu1, mu2 - o.mu2};
  }
  DefectVector operator*(Scalar a) const { return {a * mu1, a * mu2}; }
  DefectVector& operator+=(const DefectVector& o) {
    mu1 += o.mu1;
    mu2 += o.mu2;
    return *this;
  }
};

/// Embedding iota: (q, p) -> (q, q, p, p), the invariant submanifold
/// where both copies agree.
template <typename Scalar>
ExtendedPoint<Scalar> embed(const PhasePoint<Scalar>& z) {
  return {z.q, z.q, z.p, z.p};
}

/// Copy defect A*zeta = (q - x, p - y).  A is the fixed 2d x 4d block
/// matrix [I -I 0 0; 0 0 I -I]; it is applied by index arithmetic and
/// never materialized.
template <typename Scalar>
DefectVector<Scalar> defect(const ExtendedPoint<Scalar>& zeta) {
  return {zeta.q - zeta.x, zeta.p - zeta.y};
}

/// zeta + A^T*mu = (q + mu1, x - mu1, p + mu2, y - mu2).
template <typename Scalar>
ExtendedPoint<Scalar> shift(const ExtendedPoint<Scalar>& zeta,
                            const DefectVector<Scalar>& mu) {
  return {zeta.q + mu.mu1, zeta.x - mu.mu1, zeta.p + mu.mu2, zeta.y - mu.mu2};
}

/// Averaging restriction ((q + x)/2, (p + y)/2); exact inverse of embed
/// on the invariant submanifold and invariant under shift().
template <typename Scalar>
PhasePoint<Scalar> average_restrict(const ExtendedPoint<Scalar>& zeta) {
  return {Scalar(0.5) * (zeta.q + zeta.x), Scalar(0.5) * (zeta.p + zeta.y)};
}

/// Flattening view (q, x, p, y) -> R^{4d} used by Jacobian-based tests.
template <typename Scalar>
Vector<Scalar> to_flat(const ExtendedPoint<Scalar>& zeta) {
  const Eigen::Index d = zeta.dim();
  Vector<Scalar> v(4 * d);
  v.segment(0, d) = zeta.q;
  v.segment(d, d) = zeta.x;
  v.segment(2 * d, d) = zeta.p;
  v.segment(3 * d, d) = zeta.y;
  return v;
}

template <typename Scalar>
ExtendedPoint<Scalar> from_flat(const Vector<Scalar>& v) {
  const Eigen::Index d = v.size() / 4;
  return {v.segment(0, d), v.segment(d, d), v.segment(2 * d, d),
          v.segment(3 * d, d)};
}

template <typename Scalar>
Vector<Scalar> to_flat(const PhasePoint<Scalar>& z) {
  Vector<Scalar> v(2 * z.dim());
  v.segment(0, z.dim()) = z.q;
  v.segment(z.dim(), z.dim()) = z.p;
  return v;
}

template <typename Scalar>
PhasePoint<Scalar> phase_from_flat(const Vector<Scalar>& v) {
  const Eigen::Index d = v.size() / 2;
  return {v.segment(0, d), v.segment(d, d)};
}

}  // namespace sympx

#endif  // SYMPX_TYPES_HPP
