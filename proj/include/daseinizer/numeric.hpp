#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace daseinizer {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Thrown on any domain violation (bad input, mismatched shapes, unknown
/// names). The command line maps it to exit code 1.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when an internal cross-check fails: a law that should hold did
/// not certify on the given data. The command line maps it to exit code 2.
struct CertificationError : Error {
  using Error::Error;
};

/// Global comparison tolerance (absolute, max-norm based).
/// Default 1e-9; initialized once from DASEINIZER_EPS if set.
double tolerance();
void set_tolerance(double eps);
/// Whether DASEINIZER_EPS was set; the environment outranks file options.
bool tolerance_from_env();

/// Tolerance used to cluster nearly equal eigenvalues, relative to scale.
double cluster_tolerance(double scale);

/// Largest absolute entry of a matrix; the norm behind all equality checks.
double max_abs(const Matrix& m);

bool approx_equal(const Matrix& a, const Matrix& b);
bool is_hermitian(const Matrix& m);

/// Deterministic key: entries rounded to 1e-6, row-major, re/im interleaved.
/// Lexicographic order on keys is the canonical order used everywhere.
std::string canonical_key(const Matrix& m);

/// Deterministic formatting helpers (shortest round-trip via to_chars).
std::string format_double(double v);

/// Deterministic random deviates. Distributions are hand-expanded on top of
/// mt19937_64 so sequences do not depend on the standard library build.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform();                    // [0,1)
  double normal();                     // Box-Muller
  int uniform_int(int lo, int hi);     // inclusive
  Complex gaussian();                  // complex standard normal

 private:
  std::mt19937_64 gen_;
};

/// Haar-ish random unitary from QR of a complex Gaussian matrix.
Matrix random_unitary(int dim, Rng& rng);

}  // namespace daseinizer
