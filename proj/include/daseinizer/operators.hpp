#pragma once

#include <vector>

#include "daseinizer/numeric.hpp"

namespace daseinizer {

/// Finite union of real intervals, kept sorted, disjoint and non-adjacent.
struct BorelSet {
  struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_closed = true;
    bool hi_closed = true;
  };

  std::vector<Interval> intervals;

  BorelSet() = default;
  explicit BorelSet(std::vector<Interval> parts);
  static BorelSet closed(double lo, double hi);

  bool contains(double x) const;
  bool empty() const { return intervals.empty(); }

  BorelSet unite(const BorelSet& other) const;
  BorelSet intersect(const BorelSet& other) const;

  std::string str() const;
};

class SelfAdjointOperator {
 public:
  explicit SelfAdjointOperator(Matrix m);
  const Matrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  Matrix m_;
};

class Projector {
 public:
  explicit Projector(Matrix m);
  static Projector zero(int dim);
  static Projector identity(int dim);

  const Matrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  int rank() const;
  Projector complement() const;
  SelfAdjointOperator as_operator() const { return SelfAdjointOperator(m_); }

 private:
  struct Unchecked {};
  Projector(Matrix m, Unchecked) : m_(std::move(m)) {}
  Matrix m_;
  friend Projector projector_unchecked(Matrix m);
};

/// Internal: wrap a matrix already known to be a projector (sums of
/// orthonormal eigenvector dyads); skips the validation pass.
Projector projector_unchecked(Matrix m);

class StateVector {
 public:
  explicit StateVector(Vector v);
  const Vector& vector() const { return v_; }
  int dim() const { return static_cast<int>(v_.rows()); }

 private:
  Vector v_;
};

class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m);
  const Matrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  Matrix m_;
};

struct EigenPair {
  double value = 0.0;
  Projector projector;
};

/// Eigenvalues ascending, one entry per clustered eigenvalue, projectors
/// orthogonal and resolving the identity.
std::vector<EigenPair> spectral_decompose(const SelfAdjointOperator& a);

/// Sum of the eigenprojectors whose (clustered) eigenvalue lies in the set.
Projector spectral_projector(const SelfAdjointOperator& a, const BorelSet& set);

/// Range inclusion: P <= Q.
bool proj_leq(const Projector& p, const Projector& q);
bool proj_equal(const Projector& p, const Projector& q);

/// Lattice meet: projector onto range(P) ∩ range(Q), via the joint null
/// space of (1-P) and (1-Q).
Projector proj_meet(const Projector& p, const Projector& q);
/// Lattice join, dual to the meet.
Projector proj_join(const Projector& p, const Projector& q);

double expectation(const Projector& p, const StateVector& psi);
double expectation(const Projector& p, const DensityMatrix& rho);

/// Probability-one test: ||P psi - psi|| <= eps, resp. tr(rho P) >= 1 - eps.
bool is_certain(const Projector& p, const StateVector& psi);
bool is_certain(const Projector& p, const DensityMatrix& rho);

}  // namespace daseinizer
