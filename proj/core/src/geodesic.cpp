#include "stiefel_sr/geodesic.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <string>

#include "stiefel_sr/errors.hpp"

namespace stiefel_sr {
namespace {

constexpr Complex kI{0.0, 1.0};

Complex expi(double angle) { return std::polar(1.0, angle); }

}  // namespace

StiefelPoint normal_geodesic(const GeodesicSpec& spec, double t) {
  const Index n = spec.n();
  const Index k = spec.k();
  const UnitaryMatrix lifted = expm_skew(spec.velocity.embed(), t);
  const UnitaryMatrix fibre = expm_skew(spec.velocity.a_block(), -t);
  DenseMatrix correction = DenseMatrix::Identity(n, n);
  correction.topLeftCorner(k, k) = fibre.body();
  return canonicalize(lifted * UnitaryMatrix(std::move(correction), spec.mode()),
                      k);
}

// ---------------------------------------------------------------------------

GeodesicEvaluator::GeodesicEvaluator(const GeodesicSpec& spec)
    : spec_(spec),
      full_(spec.velocity.embed()),
      fibre_(spec.velocity.a_block()) {}

DenseMatrix GeodesicEvaluator::columns(double t) const {
  return full_.leading_columns(t, spec_.k()) * fibre_.at(-t);
}

StiefelPoint GeodesicEvaluator::point(double t) const {
  return StiefelPoint(columns(t), spec_.mode());
}

DenseMatrix GeodesicEvaluator::ambient_velocity(double t) const {
  const Index k = spec_.k();
  const Index m = spec_.n() - k;
  const DenseMatrix e = full_.at(t);
  return e.rightCols(m) *
         (-spec_.velocity.b_block().adjoint() * fibre_.at(-t));
}

// ---------------------------------------------------------------------------

V21Components geodesic_v21_closed(double lambda, Complex x2, double t) {
  if (x2 == Complex(0.0, 0.0)) {
    return {1.0, 0.0, 0.0, expi(lambda * t)};
  }
  const double s = std::sqrt(lambda * lambda + 4.0 * std::norm(x2));
  const auto mu1 = [&](double l) { return expi(0.5 * t * (l + s)); };
  const auto mu2 = [&](double l) { return expi(0.5 * t * (l - s)); };

  V21Components g{};
  g.g1 = (lambda / (2.0 * s) + 0.5) * mu1(-lambda) +
         (-lambda / (2.0 * s) + 0.5) * mu2(-lambda);
  g.g2 = (x2 * kI / s) * (mu2(lambda) - mu1(lambda));
  g.g3 = -(std::conj(x2) * kI / s) * (mu2(-lambda) - mu1(-lambda));
  g.g4 = -mu1(lambda) / (2.0 * s) * (lambda - s) +
         mu2(lambda) / (2.0 * s) * (lambda + s);
  return g;
}

Vn1Column geodesic_vn1_closed(double x, const DenseMatrix& b_row, double t) {
  if (b_row.rows() != 1) {
    throw DimensionMismatch("B must be a single row for V_{n,1}");
  }
  const double b2 = b_row.squaredNorm();
  if (b2 == 0.0) {
    return {1.0, DenseMatrix::Zero(b_row.cols(), 1)};
  }
  const double s = std::sqrt(x * x + 4.0 * b2);
  const Complex phase = expi(-0.5 * t * (s + x));
  const Complex e = expi(t * s);
  Vn1Column out;
  out.g1 = phase / (2.0 * s) * (s * (e + 1.0) + x * (e - 1.0));
  out.g3 = -b_row.adjoint() * (phase * (e - 1.0) / (kI * s));
  return out;
}

GrassmannBlocks grassmann_geodesic_2kk(const DenseMatrix& b, double t) {
  if (b.rows() != b.cols()) {
    throw DimensionMismatch("G_{2k,k} geodesic needs a square B");
  }
  // B = U S W^*, sqrt(B B^*) = U S U^*. Then
  //   -B^* sin(t sqrt(BB^*)) sqrt(BB^*)^{-1} = -W S (sin(tS)/S) U^* = -W sin(tS) U^*,
  // which is the sinc limit at zero singular values without dividing.
  Eigen::JacobiSVD<DenseMatrix> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const Eigen::VectorXd c = (t * sigma.array()).cos().matrix();
  const Eigen::VectorXd s = (t * sigma.array()).sin().matrix();
  const DenseMatrix& u = svd.matrixU();
  const DenseMatrix& w = svd.matrixV();
  GrassmannBlocks out;
  out.g1 = u * c.cast<Complex>().asDiagonal() * u.adjoint();
  out.g3 = -(w * s.cast<Complex>().asDiagonal() * u.adjoint());
  return out;
}

double speed_squared(const BlockVelocity& v) {
  const double b2 = v.b_block().squaredNorm();
  if (v.mode() == FieldMode::complex) {
    return 4.0 * static_cast<double>(v.n()) * b2;
  }
  return 2.0 * b2;
}

double length(const BlockVelocity& v, double horizon) {
  if (!(horizon >= 0.0)) {
    throw DomainError("length: horizon must be non-negative");
  }
  return horizon * std::sqrt(speed_squared(v));
}

double first_vanishing_time(double x, const DenseMatrix& b_row) {
  const double s2 = x * x + 4.0 * b_row.squaredNorm();
  if (s2 == 0.0) {
    throw DomainError("first_vanishing_time: zero velocity");
  }
  return 2.0 * M_PI / std::sqrt(s2);
}

BlockVelocity mirror_velocity(const BlockVelocity& v, const UnitaryMatrix& u) {
  const Index m = v.n() - v.k();
  if (u.n() != m) {
    throw DimensionMismatch("mirror needs an (n-k) x (n-k) unitary");
  }
  if (u.mode() != v.mode()) {
    throw ModeMismatch("mirror mixes complex and real mode");
  }
  return BlockVelocity(v.a_block(), -(v.b_block() * u.body()));
}

std::vector<GeodesicSample> sample_geodesic(const GeodesicSpec& spec,
                                            double t0, double t1,
                                            Index count) {
  if (count < 1) throw DomainError("sample_geodesic: count must be >= 1");
  const GeodesicEvaluator eval(spec);
  const double speed = std::sqrt(speed_squared(spec.velocity));
  std::vector<GeodesicSample> out;
  out.reserve(static_cast<std::size_t>(count));
  for (Index i = 0; i < count; ++i) {
    const double t =
        count == 1 ? t0
                   : t0 + (t1 - t0) * static_cast<double>(i) /
                              static_cast<double>(count - 1);
    out.push_back({t, t == 0.0 ? StiefelPoint::identity(spec.n(), spec.k(),
                                                        spec.mode())
                               : eval.point(t),
                   speed});
  }
  return out;
}

void write_csv(std::ostream& out, const std::vector<GeodesicSample>& samples) {
  if (samples.empty()) return;
  const StiefelPoint& first = samples.front().point;
  std::ostringstream buf;
  buf.precision(17);
  buf << "# n=" << first.n() << ",k=" << first.k()
      << ",mode=" << to_string(first.mode()) << '\n';
  buf << 't';
  for (Index i = 0; i < first.n(); ++i) {
    for (Index j = 0; j < first.k(); ++j) {
      buf << ",re_" << i << '_' << j << ",im_" << i << '_' << j;
    }
  }
  buf << '\n';
  for (const GeodesicSample& s : samples) {
    buf << s.t;
    const DenseMatrix& c = s.point.cols();
    for (Index i = 0; i < c.rows(); ++i) {
      for (Index j = 0; j < c.cols(); ++j) {
        buf << ',' << c(i, j).real() << ',' << c(i, j).imag();
      }
    }
    buf << '\n';
  }
  out << buf.str();
}

}  // namespace stiefel_sr
