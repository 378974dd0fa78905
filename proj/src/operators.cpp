#include "daseinizer/operators.hpp"

#include <algorithm>
#include <cmath>

namespace daseinizer {

namespace {

void check_square(const Matrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols())
    throw Error(std::string(what) + ": matrix must be square and non-empty");
}

}  // namespace

BorelSet::BorelSet(std::vector<Interval> parts) {
  for (const auto& iv : parts) {
    if (!(iv.lo <= iv.hi)) throw Error("interval with lower bound above upper bound");
    if (iv.lo == iv.hi && !(iv.lo_closed && iv.hi_closed))
      throw Error("degenerate interval must be closed on both ends");
  }
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
  });
  for (const auto& iv : parts) {
    if (!intervals.empty()) {
      Interval& last = intervals.back();
      bool overlaps = iv.lo < last.hi || (iv.lo == last.hi && (iv.lo_closed || last.hi_closed));
      if (overlaps) {
        if (iv.hi > last.hi || (iv.hi == last.hi && iv.hi_closed)) {
          last.hi = iv.hi;
          last.hi_closed = iv.hi_closed;
        }
        continue;
      }
    }
    intervals.push_back(iv);
  }
}

BorelSet BorelSet::closed(double lo, double hi) {
  return BorelSet({Interval{lo, hi, true, true}});
}

bool BorelSet::contains(double x) const {
  for (const auto& iv : intervals) {
    bool above = iv.lo_closed ? x >= iv.lo : x > iv.lo;
    bool below = iv.hi_closed ? x <= iv.hi : x < iv.hi;
    if (above && below) return true;
  }
  return false;
}

BorelSet BorelSet::unite(const BorelSet& other) const {
  std::vector<Interval> all = intervals;
  all.insert(all.end(), other.intervals.begin(), other.intervals.end());
  return BorelSet(std::move(all));
}

BorelSet BorelSet::intersect(const BorelSet& other) const {
  std::vector<Interval> out;
  for (const auto& a : intervals) {
    for (const auto& b : other.intervals) {
      Interval c;
      if (a.lo > b.lo) {
        c.lo = a.lo;
        c.lo_closed = a.lo_closed;
      } else if (b.lo > a.lo) {
        c.lo = b.lo;
        c.lo_closed = b.lo_closed;
      } else {
        c.lo = a.lo;
        c.lo_closed = a.lo_closed && b.lo_closed;
      }
      if (a.hi < b.hi) {
        c.hi = a.hi;
        c.hi_closed = a.hi_closed;
      } else if (b.hi < a.hi) {
        c.hi = b.hi;
        c.hi_closed = b.hi_closed;
      } else {
        c.hi = a.hi;
        c.hi_closed = a.hi_closed && b.hi_closed;
      }
      if (c.lo < c.hi || (c.lo == c.hi && c.lo_closed && c.hi_closed)) out.push_back(c);
    }
  }
  return BorelSet(std::move(out));
}

std::string BorelSet::str() const {
  if (intervals.empty()) return "{}";
  std::string s;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const auto& iv = intervals[i];
    if (i) s += "u";
    s += iv.lo_closed ? '[' : '(';
    s += format_double(iv.lo);
    s += ',';
    s += format_double(iv.hi);
    s += iv.hi_closed ? ']' : ')';
  }
  return s;
}

SelfAdjointOperator::SelfAdjointOperator(Matrix m) : m_(std::move(m)) {
  check_square(m_, "self-adjoint operator");
  if (!is_hermitian(m_)) throw Error("operator is not self-adjoint within tolerance");
}

Projector::Projector(Matrix m) : m_(std::move(m)) {
  check_square(m_, "projector");
  if (!is_hermitian(m_)) throw Error("projector is not hermitian within tolerance");
  if (max_abs(m_ * m_ - m_) > tolerance()) throw Error("projector is not idempotent within tolerance");
  double tr = m_.trace().real();
  if (std::abs(tr - std::round(tr)) > m_.rows() * tolerance())
    throw Error("projector trace is not near an integer rank");
}

Projector projector_unchecked(Matrix m) { return Projector(std::move(m), Projector::Unchecked{}); }

Projector Projector::zero(int dim) {
  return projector_unchecked(Matrix::Zero(dim, dim));
}

Projector Projector::identity(int dim) {
  return projector_unchecked(Matrix::Identity(dim, dim));
}

int Projector::rank() const { return static_cast<int>(std::llround(m_.trace().real())); }

Projector Projector::complement() const {
  return projector_unchecked(Matrix::Identity(m_.rows(), m_.cols()) - m_);
}

StateVector::StateVector(Vector v) : v_(std::move(v)) {
  if (v_.rows() == 0) throw Error("state vector must be non-empty");
  if (std::abs(v_.norm() - 1.0) > tolerance()) throw Error("state vector is not normalized");
}

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
  check_square(m_, "density matrix");
  if (!is_hermitian(m_)) throw Error("density matrix is not hermitian within tolerance");
  if (std::abs(m_.trace().real() - 1.0) > tolerance()) throw Error("density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tolerance()) throw Error("density matrix is not positive");
}

std::vector<EigenPair> spectral_decompose(const SelfAdjointOperator& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.matrix());
  if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
  const auto& vals = es.eigenvalues();
  const Matrix& vecs = es.eigenvectors();
  int n = a.dim();
  double scale = std::max(std::abs(vals(0)), std::abs(vals(n - 1)));
  double ctol = cluster_tolerance(scale);

  std::vector<EigenPair> out;
  int i = 0;
  while (i < n) {
    int j = i;
    while (j + 1 < n && vals(j + 1) - vals(j) <= ctol) ++j;
    double rep = 0.0;
    Matrix proj = Matrix::Zero(n, n);
    for (int k = i; k <= j; ++k) {
      rep += vals(k);
      proj += vecs.col(k) * vecs.col(k).adjoint();
    }
    rep /= (j - i + 1);
    out.push_back({rep, projector_unchecked(std::move(proj))});
    i = j + 1;
  }
  return out;
}

Projector spectral_projector(const SelfAdjointOperator& a, const BorelSet& set) {
  Matrix acc = Matrix::Zero(a.dim(), a.dim());
  for (const auto& ep : spectral_decompose(a))
    if (set.contains(ep.value)) acc += ep.projector.matrix();
  return projector_unchecked(std::move(acc));
}

bool proj_leq(const Projector& p, const Projector& q) {
  if (p.dim() != q.dim()) throw Error("projector dimension mismatch");
  return max_abs(q.matrix() * p.matrix() - p.matrix()) <= tolerance();
}

bool proj_equal(const Projector& p, const Projector& q) {
  return approx_equal(p.matrix(), q.matrix());
}

Projector proj_meet(const Projector& p, const Projector& q) {
  if (p.dim() != q.dim()) throw Error("projector dimension mismatch");
  int n = p.dim();
  // null space of (1-P)+(1-Q) is range(P) ∩ range(Q)
  Matrix m = (Matrix::Identity(n, n) - p.matrix()) + (Matrix::Identity(n, n) - q.matrix());
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
  Matrix acc = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k)
    if (es.eigenvalues()(k) <= cluster_tolerance(1.0))
      acc += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
  return projector_unchecked(std::move(acc));
}

Projector proj_join(const Projector& p, const Projector& q) {
  return proj_meet(p.complement(), q.complement()).complement();
}

double expectation(const Projector& p, const StateVector& psi) {
  if (p.dim() != psi.dim()) throw Error("projector/state dimension mismatch");
  return (psi.vector().adjoint() * p.matrix() * psi.vector())(0).real();
}

double expectation(const Projector& p, const DensityMatrix& rho) {
  if (p.dim() != rho.dim()) throw Error("projector/density dimension mismatch");
  return (rho.matrix() * p.matrix()).trace().real();
}

bool is_certain(const Projector& p, const StateVector& psi) {
  if (p.dim() != psi.dim()) throw Error("projector/state dimension mismatch");
  return (p.matrix() * psi.vector() - psi.vector()).norm() <= tolerance();
}

bool is_certain(const Projector& p, const DensityMatrix& rho) {
  return expectation(p, rho) >= 1.0 - tolerance();
}

}  // namespace daseinizer
