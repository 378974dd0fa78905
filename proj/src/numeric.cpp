#include "daseinizer/numeric.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

namespace daseinizer {

namespace {

bool& env_flag() {
  static bool from_env = false;
  return from_env;
}

double initial_tolerance() {
  if (const char* env = std::getenv("DASEINIZER_EPS")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0 && std::isfinite(v)) {
      env_flag() = true;
      return v;
    }
    throw Error("DASEINIZER_EPS must be a positive real, got '" + std::string(env) + "'");
  }
  return 1e-9;
}

double& tolerance_slot() {
  static double eps = initial_tolerance();
  return eps;
}

}  // namespace

bool tolerance_from_env() {
  tolerance_slot();  // force initialization
  return env_flag();
}

double tolerance() { return tolerance_slot(); }

void set_tolerance(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw Error("tolerance must be a positive real");
  tolerance_slot() = eps;
}

double cluster_tolerance(double scale) { return 1e-8 * std::max(1.0, scale); }

double max_abs(const Matrix& m) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) best = std::max(best, std::abs(m(i, j)));
  return best;
}

bool approx_equal(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return max_abs(a - b) <= tolerance();
}

bool is_hermitian(const Matrix& m) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint().eval()) <= tolerance();
}

namespace {

long long round_entry(double v) {
  double scaled = v * 1e6;
  long long r = std::llround(scaled);
  if (r == 0) return 0;  // normalize -0
  return r;
}

}  // namespace

std::string canonical_key(const Matrix& m) {
  std::string key;
  key.reserve(static_cast<std::size_t>(m.size()) * 20 + 8);
  key += std::to_string(m.rows());
  key += 'x';
  key += std::to_string(m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      key += ';';
      key += std::to_string(round_entry(m(i, j).real()));
      key += ',';
      key += std::to_string(round_entry(m(i, j).imag()));
    }
  }
  return key;
}

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double Rng::uniform() {
  // 53 random bits into [0,1)
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

int Rng::uniform_int(int lo, int hi) {
  if (hi < lo) throw Error("uniform_int: empty range");
  auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(gen_() % span);
}

Complex Rng::gaussian() { return {normal(), normal()}; }

Matrix random_unitary(int dim, Rng& rng) {
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = rng.gaussian();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix phases so the factorization is unique
  for (int j = 0; j < dim; ++j) {
    Complex d = r(j, j);
    double a = std::abs(d);
    Complex phase = a > 0 ? d / a : Complex(1, 0);
    q.col(j) *= phase;
  }
  return q;
}

}  // namespace daseinizer
