#include "stiefel_sr/distribution.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "stiefel_sr/errors.hpp"
#include "stiefel_sr/random.hpp"

namespace stiefel_sr {
namespace {

Eigen::VectorXd flatten(const SkewHermitianMatrix& x) {
  const DenseMatrix& m = x.body();
  const bool complex = x.mode() == FieldMode::complex;
  Eigen::VectorXd out(complex ? 2 * m.size() : m.size());
  Index at = 0;
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      out(at++) = m(i, j).real();
      if (complex) out(at++) = m(i, j).imag();
    }
  }
  return out;
}

}  // namespace

SkewHermitianMatrix lie_bracket(const SkewHermitianMatrix& x,
                                const SkewHermitianMatrix& y) {
  if (x.n() != y.n()) {
    throw DimensionMismatch("Lie bracket of matrices of different sizes");
  }
  if (x.mode() != y.mode()) {
    throw ModeMismatch("Lie bracket mixes complex and real mode");
  }
  return SkewHermitianMatrix(x.body() * y.body() - y.body() * x.body(),
                             x.mode());
}

SkewHermitianMatrix project_to_stiefel_tangent(const SkewHermitianMatrix& x,
                                               Index k) {
  DenseMatrix body = x.body();
  const Index m = x.n() - k;
  body.bottomRightCorner(m, m).setZero();
  return SkewHermitianMatrix(std::move(body), x.mode());
}

Index real_span_rank(std::span<const SkewHermitianMatrix> vectors,
                     double relative_threshold) {
  if (vectors.empty()) return 0;
  const Index dim = flatten(vectors.front()).size();
  Eigen::MatrixXd stacked(dim, static_cast<Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    stacked.col(static_cast<Index>(j)) = flatten(vectors[j]);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked);
  const Eigen::VectorXd& sigma = svd.singularValues();
  if (sigma.size() == 0 || sigma(0) == 0.0) return 0;
  Index rank = 0;
  for (Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > relative_threshold * sigma(0)) ++rank;
  }
  return rank;
}

BracketReport bracket_generating_rank(Index n, Index k, FieldMode mode) {
  if (k < 1 || k >= n) {
    throw DomainError("bracket test needs 1 <= k < n");
  }
  std::vector<SkewHermitianMatrix> horizontal;
  for (const BlockVelocity& b : horizontal_basis(n, k, mode)) {
    horizontal.push_back(b.embed());
  }
  const Index dim_h = real_span_rank(horizontal);

  std::vector<SkewHermitianMatrix> span = horizontal;
  for (std::size_t i = 0; i < horizontal.size(); ++i) {
    for (std::size_t j = i + 1; j < horizontal.size(); ++j) {
      span.push_back(project_to_stiefel_tangent(
          lie_bracket(horizontal[i], horizontal[j]), k));
    }
  }
  const Index dim_all = real_span_rank(span);
  const Index target = stiefel_dimension(n, k, mode);
  return {n, k, mode, dim_h, dim_all, target, dim_all == target};
}

std::optional<bool> strongly_bracket_section(const DenseMatrix& b_row,
                                             double zero_threshold) {
  if (b_row.rows() != 1) {
    throw DimensionMismatch("V_{n,1} section needs a single-row B");
  }
  if (b_row.norm() < zero_threshold) return std::nullopt;
  const Index n = b_row.cols() + 1;
  const SkewHermitianMatrix z = BlockVelocity::horizontal(b_row).embed();
  std::vector<SkewHermitianMatrix> span;
  for (const BlockVelocity& h : horizontal_basis(n, 1, FieldMode::complex)) {
    span.push_back(h.embed());
    span.push_back(project_to_stiefel_tangent(lie_bracket(z, h.embed()), 1));
  }
  return real_span_rank(span) == stiefel_dimension(n, 1, FieldMode::complex);
}

StrongBracketReport strongly_bracket_check_vn1(Index n, Index samples,
                                               std::uint64_t seed) {
  if (n < 2) throw DomainError("strong bracket check needs n >= 2");
  Rng rng(seed);
  StrongBracketReport report{n, samples, 0, 0, true};
  for (Index s = 0; s < samples; ++s) {
    const DenseMatrix b = random_gaussian(1, n - 1, FieldMode::complex, rng);
    const std::optional<bool> ok = strongly_bracket_section(b);
    if (!ok) {
      ++report.rejected_zero;
      continue;
    }
    if (*ok) {
      ++report.passed;
    } else {
      report.strongly_generating = false;
    }
  }
  if (report.passed == 0) report.strongly_generating = false;
  return report;
}

MontgomeryReport montgomery_condition(Index m, Index l) {
  MontgomeryReport r{};
  r.m = m;
  r.l = l;
  r.in_scope = l > 0 && l < m && (m - l) >= 2;
  r.condition1 = l > 0 && l % 4 == 0;
  r.condition2 = l >= (m - l) + 1;
  r.possible = r.condition1 || r.condition2;
  return r;
}

}  // namespace stiefel_sr
