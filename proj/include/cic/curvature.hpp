#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace cic {

using Vector = std::vector<double>;

/// Dense (0,4) curvature tensor over an orthonormal basis.
///
/// Sign convention: R(X,Y,X,Y) = K(X,Y) |X ^ Y|^2, so the constant-curvature
/// tensor is R_ijkl = k (d_ik d_jl - d_il d_jk) and R_1212 = k. With this
/// convention the isotropic functional reads K13 + K14 + K23 + K24 - 2 R_1234.
class CurvatureTensor {
 public:
  explicit CurvatureTensor(std::size_t dim);

  std::size_t dim() const { return dim_; }

  double operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return comp_[index(i, j, k, l)];
  }

  /// Writes `value` at (i,j,k,l) and at every image under antisymmetry in
  /// each pair and pair exchange. Bianchi is the caller's responsibility.
  void set_symmetric(std::size_t i, std::size_t j, std::size_t k, std::size_t l, double value);

  /// Single-component write with no symmetrization.
  double& raw(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    return comp_[index(i, j, k, l)];
  }

  /// Full multilinear contraction R(x, y, z, w).
  double contract(std::span<const double> x, std::span<const double> y,
                  std::span<const double> z, std::span<const double> w) const;

  std::span<const double> data() const { return comp_; }

 private:
  std::size_t index(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return ((i * dim_ + j) * dim_ + k) * dim_ + l;
  }

  std::size_t dim_;
  std::vector<double> comp_;
};

/// Four orthonormal vectors of a common dimension. Construction checks
/// <e_a, e_b> = delta_ab to `kOrthoTolerance`.
class OrthoFrame4 {
 public:
  static constexpr double kOrthoTolerance = 1e-12;

  explicit OrthoFrame4(std::array<Vector, 4> vectors);

  /// Frame of standard basis vectors e_{i0}, ..., e_{i3} in dimension n.
  static OrthoFrame4 basis(std::size_t n, std::array<std::size_t, 4> indices);

  std::size_t dim() const { return vectors_[0].size(); }
  const Vector& operator[](std::size_t a) const { return vectors_[a]; }
  const std::array<Vector, 4>& vectors() const { return vectors_; }

  /// Largest |<e_a, e_b> - delta_ab|.
  double orthonormality_error() const;

 private:
  std::array<Vector, 4> vectors_;
};

enum class FactorKind { Sphere, Hyperbolic, Flat };

struct ProductFactor {
  FactorKind kind;
  std::size_t dim;
  double curvature;
};

/// Riemannian product of constant-curvature factors.
struct ProductSpec {
  std::vector<ProductFactor> factors;

  std::size_t total_dim() const;
  /// Throws std::invalid_argument naming the first violated constraint.
  void validate() const;
};

/// Parses "S3:1 x R1", "S2:1 x H2:-1", "S3 x S1". Each factor is
/// <S|H|R><dim>[:curvature]; S defaults to curvature 1, H to -1, R is flat.
ProductSpec parse_product_spec(std::string_view text);

std::string to_string(const ProductSpec& spec);

CurvatureTensor build_constant_curvature(std::size_t n, double k);

/// Block-diagonal tensor; one-dimensional factors contribute nothing.
CurvatureTensor build_product(const ProductSpec& spec);

/// Gauss equation for a hypersurface of M^{n+1}(c) in a principal frame:
/// K(e_i, e_j) = c + lambda_i lambda_j.
CurvatureTensor build_from_shape(double c, std::span<const double> lambdas);

/// R(X,Y,X,Y) / (|X|^2 |Y|^2 - <X,Y>^2). Throws std::invalid_argument on a
/// degenerate plane (Gram determinant < 1e-14).
double sectional(const CurvatureTensor& t, std::span<const double> x, std::span<const double> y);

/// The tensor restricted to the frame: P_abcd = R(e_a, e_b, e_c, e_d).
std::array<double, 256> project_to_frame(const CurvatureTensor& t, const OrthoFrame4& f);

/// K13 + K14 + K23 + K24 - 2 R_1234 for the frame. Throws on a frame whose
/// dimension does not match the tensor.
double isotropic_component(const CurvatureTensor& t, const OrthoFrame4& f);

struct SymmetryReport {
  double antisymmetry = 0.0;   ///< max |R_ijkl + R_jikl| and |R_ijkl + R_ijlk|
  double pair_symmetry = 0.0;  ///< max |R_ijkl - R_klij|
  double bianchi = 0.0;        ///< max |R_ijkl + R_iklj + R_iljk|

  double worst() const;
  bool within(double tol) const { return worst() <= tol; }
};

SymmetryReport check_symmetries(const CurvatureTensor& t);

/// {"dim": n, "components": [[i,j,k,l,value], ...]} with zero-based indices,
/// one entry per i<j, k<l, (i,j) <= (k,l).
nlohmann::json to_json(const CurvatureTensor& t);
CurvatureTensor tensor_from_json(const nlohmann::json& j);

}  // namespace cic
