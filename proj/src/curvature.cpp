#include "cic/curvature.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cic/number.hpp"

namespace cic {

namespace {

double kron(std::size_t a, std::size_t b) { return a == b ? 1.0 : 0.0; }

// d_ik d_jl - d_il d_jk
double wedge_metric(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
  return kron(i, k) * kron(j, l) - kron(i, l) * kron(j, k);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

ProductFactor parse_factor(std::string_view tok) {
  tok = trim(tok);
  if (tok.size() < 2) throw std::invalid_argument("malformed factor '" + std::string(tok) + "'");
  ProductFactor f{};
  switch (tok.front()) {
    case 'S': f.kind = FactorKind::Sphere; f.curvature = 1.0; break;
    case 'H': f.kind = FactorKind::Hyperbolic; f.curvature = -1.0; break;
    case 'R': f.kind = FactorKind::Flat; f.curvature = 0.0; break;
    default:
      throw std::invalid_argument("factor '" + std::string(tok) + "' must start with S, H or R");
  }
  tok.remove_prefix(1);
  auto colon = tok.find(':');
  auto dim_text = tok.substr(0, colon);
  if (dim_text.empty() || !std::all_of(dim_text.begin(), dim_text.end(),
                                       [](char ch) { return ch >= '0' && ch <= '9'; })) {
    throw std::invalid_argument("factor dimension '" + std::string(dim_text) + "' is not a positive integer");
  }
  f.dim = std::stoul(std::string(dim_text));
  if (colon != std::string_view::npos) {
    f.curvature = parse_number(tok.substr(colon + 1)).value;
  }
  return f;
}

}  // namespace

// ---------------------------------------------------------------------------
// CurvatureTensor

CurvatureTensor::CurvatureTensor(std::size_t dim) : dim_(dim), comp_(dim * dim * dim * dim, 0.0) {
  if (dim == 0) throw std::invalid_argument("curvature tensor dimension must be >= 1");
}

void CurvatureTensor::set_symmetric(std::size_t i, std::size_t j, std::size_t k, std::size_t l,
                                    double value) {
  raw(i, j, k, l) = value;
  raw(j, i, k, l) = -value;
  raw(i, j, l, k) = -value;
  raw(j, i, l, k) = value;
  raw(k, l, i, j) = value;
  raw(l, k, i, j) = -value;
  raw(k, l, j, i) = -value;
  raw(l, k, j, i) = value;
}

double CurvatureTensor::contract(std::span<const double> x, std::span<const double> y,
                                 std::span<const double> z, std::span<const double> w) const {
  const std::size_t n = dim_;
  if (x.size() != n || y.size() != n || z.size() != n || w.size() != n) {
    throw std::invalid_argument("contract: vector dimension does not match tensor");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0.0) continue;
    double si = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j] == 0.0) continue;
      double sj = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double* row = &comp_[index(i, j, k, 0)];
        double sk = 0.0;
        for (std::size_t l = 0; l < n; ++l) sk += row[l] * w[l];
        sj += sk * z[k];
      }
      si += sj * y[j];
    }
    total += si * x[i];
  }
  return total;
}

// ---------------------------------------------------------------------------
// OrthoFrame4

OrthoFrame4::OrthoFrame4(std::array<Vector, 4> vectors) : vectors_(std::move(vectors)) {
  const std::size_t n = vectors_[0].size();
  for (const auto& v : vectors_) {
    if (v.size() != n) throw std::invalid_argument("frame vectors differ in dimension");
  }
  if (n < 4) throw std::invalid_argument("a 4-frame needs dimension >= 4");
  const double err = orthonormality_error();
  if (!(err <= kOrthoTolerance)) {
    std::ostringstream msg;
    msg << "frame is not orthonormal (max |<e_a,e_b> - delta_ab| = " << err << ")";
    throw std::invalid_argument(msg.str());
  }
}

OrthoFrame4 OrthoFrame4::basis(std::size_t n, std::array<std::size_t, 4> indices) {
  std::array<Vector, 4> v;
  for (std::size_t a = 0; a < 4; ++a) {
    if (indices[a] >= n) throw std::invalid_argument("basis index out of range");
    v[a].assign(n, 0.0);
    v[a][indices[a]] = 1.0;
  }
  return OrthoFrame4(std::move(v));
}

double OrthoFrame4::orthonormality_error() const {
  double err = 0.0;
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a; b < 4; ++b) {
      err = std::max(err, std::abs(dot(vectors_[a], vectors_[b]) - kron(a, b)));
    }
  }
  return err;
}

// ---------------------------------------------------------------------------
// ProductSpec

std::size_t ProductSpec::total_dim() const {
  std::size_t n = 0;
  for (const auto& f : factors) n += f.dim;
  return n;
}

void ProductSpec::validate() const {
  if (factors.empty()) throw std::invalid_argument("product has no factors");
  for (const auto& f : factors) {
    if (f.dim < 1) throw std::invalid_argument("factor dimension must be >= 1");
    switch (f.kind) {
      case FactorKind::Sphere:
        if (!(f.curvature > 0)) throw std::invalid_argument("sphere factor needs curvature > 0");
        break;
      case FactorKind::Hyperbolic:
        if (!(f.curvature < 0)) throw std::invalid_argument("hyperbolic factor needs curvature < 0");
        break;
      case FactorKind::Flat:
        if (f.curvature != 0.0) throw std::invalid_argument("flat factor must have curvature 0");
        break;
    }
  }
  if (total_dim() < 4) throw std::invalid_argument("product dimension must be >= 4");
}

ProductSpec parse_product_spec(std::string_view text) {
  ProductSpec spec;
  std::string_view rest = trim(text);
  if (rest.empty()) throw std::invalid_argument("empty manifold spec");
  while (true) {
    auto sep = rest.find(" x ");
    spec.factors.push_back(parse_factor(rest.substr(0, sep)));
    if (sep == std::string_view::npos) break;
    rest = rest.substr(sep + 3);
  }
  spec.validate();
  return spec;
}

std::string to_string(const ProductSpec& spec) {
  std::string out;
  for (const auto& f : spec.factors) {
    if (!out.empty()) out += " x ";
    out += f.kind == FactorKind::Sphere ? 'S' : (f.kind == FactorKind::Hyperbolic ? 'H' : 'R');
    out += std::to_string(f.dim);
    if (f.kind != FactorKind::Flat) out += ":" + format_double(f.curvature);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Builders

CurvatureTensor build_constant_curvature(std::size_t n, double k) {
  if (n < 1) throw std::invalid_argument("build_constant_curvature: n must be >= 1");
  CurvatureTensor t(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k2 = 0; k2 < n; ++k2)
        for (std::size_t l = 0; l < n; ++l) t.raw(i, j, k2, l) = k * wedge_metric(i, j, k2, l);
  return t;
}

CurvatureTensor build_product(const ProductSpec& spec) {
  spec.validate();
  CurvatureTensor t(spec.total_dim());
  std::size_t offset = 0;
  for (const auto& f : spec.factors) {
    for (std::size_t i = 0; i < f.dim; ++i)
      for (std::size_t j = 0; j < f.dim; ++j)
        for (std::size_t k = 0; k < f.dim; ++k)
          for (std::size_t l = 0; l < f.dim; ++l)
            t.raw(offset + i, offset + j, offset + k, offset + l) = f.curvature * wedge_metric(i, j, k, l);
    offset += f.dim;
  }
  return t;
}

CurvatureTensor build_from_shape(double c, std::span<const double> lambdas) {
  const std::size_t n = lambdas.size();
  if (n < 4) throw std::invalid_argument("build_from_shape: need at least 4 principal curvatures");
  CurvatureTensor t(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double kij = c + lambdas[i] * lambdas[j];
      t.raw(i, j, i, j) = kij;
      t.raw(i, j, j, i) = -kij;
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Evaluation

double sectional(const CurvatureTensor& t, std::span<const double> x, std::span<const double> y) {
  if (x.size() != t.dim() || y.size() != t.dim()) {
    throw std::invalid_argument("sectional: vector dimension does not match tensor");
  }
  const double xx = dot(x, x);
  const double yy = dot(y, y);
  const double xy = dot(x, y);
  const double gram = xx * yy - xy * xy;
  if (!(gram >= 1e-14)) throw std::invalid_argument("sectional: degenerate plane");
  return t.contract(x, y, x, y) / gram;
}

std::array<double, 256> project_to_frame(const CurvatureTensor& t, const OrthoFrame4& f) {
  const std::size_t n = t.dim();
  if (f.dim() != n) throw std::invalid_argument("frame dimension does not match tensor");
  const auto r = t.data();

  // Contract one slot at a time, last index first.
  std::vector<double> s1(n * n * n * 4);  // [i][j][k][d]
  for (std::size_t ijk = 0; ijk < n * n * n; ++ijk) {
    const double* row = &r[ijk * n];
    for (std::size_t d = 0; d < 4; ++d) {
      const auto& e = f[d];
      double s = 0.0;
      for (std::size_t l = 0; l < n; ++l) s += row[l] * e[l];
      s1[ijk * 4 + d] = s;
    }
  }
  std::vector<double> s2(n * n * 16);  // [i][j][c][d]
  for (std::size_t ij = 0; ij < n * n; ++ij)
    for (std::size_t c = 0; c < 4; ++c)
      for (std::size_t d = 0; d < 4; ++d) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += s1[(ij * n + k) * 4 + d] * f[c][k];
        s2[ij * 16 + c * 4 + d] = s;
      }
  std::vector<double> s3(n * 64);  // [i][b][c][d]
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t b = 0; b < 4; ++b)
      for (std::size_t cd = 0; cd < 16; ++cd) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += s2[(i * n + j) * 16 + cd] * f[b][j];
        s3[i * 64 + b * 16 + cd] = s;
      }
  std::array<double, 256> out{};
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t bcd = 0; bcd < 64; ++bcd) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += s3[i * 64 + bcd] * f[a][i];
      out[a * 64 + bcd] = s;
    }
  return out;
}

double isotropic_component(const CurvatureTensor& t, const OrthoFrame4& f) {
  const auto p = project_to_frame(t, f);
  auto at = [&p](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    return p[((a * 4 + b) * 4 + c) * 4 + d];
  };
  return at(0, 2, 0, 2) + at(0, 3, 0, 3) + at(1, 2, 1, 2) + at(1, 3, 1, 3) - 2.0 * at(0, 1, 2, 3);
}

double SymmetryReport::worst() const { return std::max({antisymmetry, pair_symmetry, bianchi}); }

SymmetryReport check_symmetries(const CurvatureTensor& t) {
  const std::size_t n = t.dim();
  SymmetryReport rep;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          const double v = t(i, j, k, l);
          rep.antisymmetry = std::max({rep.antisymmetry, std::abs(v + t(j, i, k, l)),
                                       std::abs(v + t(i, j, l, k))});
          rep.pair_symmetry = std::max(rep.pair_symmetry, std::abs(v - t(k, l, i, j)));
          rep.bianchi = std::max(rep.bianchi, std::abs(v + t(i, k, l, j) + t(i, l, j, k)));
        }
  return rep;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const CurvatureTensor& t) {
  const std::size_t n = t.dim();
  auto comps = nlohmann::json::array();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = i; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
          if (k == i && l < j) continue;
          comps.push_back({i, j, k, l, t(i, j, k, l)});
        }
  return {{"dim", n}, {"components", std::move(comps)}};
}

CurvatureTensor tensor_from_json(const nlohmann::json& j) {
  const auto n = j.at("dim").get<std::size_t>();
  CurvatureTensor t(n);
  for (const auto& e : j.at("components")) {
    if (!e.is_array() || e.size() != 5) throw std::invalid_argument("tensor component must be [i,j,k,l,value]");
    const auto i = e[0].get<std::size_t>();
    const auto jj = e[1].get<std::size_t>();
    const auto k = e[2].get<std::size_t>();
    const auto l = e[3].get<std::size_t>();
    if (i >= n || jj >= n || k >= n || l >= n) throw std::invalid_argument("tensor index out of range");
    if (i >= jj || k >= l) throw std::invalid_argument("tensor components must have i<j and k<l");
    t.set_symmetric(i, jj, k, l, e[4].get<double>());
  }
  return t;
}

}  // namespace cic
