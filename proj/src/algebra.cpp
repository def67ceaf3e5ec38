#include "cstar/algebra.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace cstar {

AlgebraShape::AlgebraShape(std::vector<int> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty())
    throw MalformedInput("algebra shape must have at least one block");
  for (int n : blocks_)
    if (n < 1)
      throw MalformedInput("algebra shape block dimensions must be >= 1");
}

int AlgebraShape::flat_size() const {
  int total = 0;
  for (int n : blocks_) total += n * n;
  return total;
}

int AlgebraShape::space_dim() const {
  return std::accumulate(blocks_.begin(), blocks_.end(), 0);
}

int AlgebraShape::flat_offset(int k) const {
  int off = 0;
  for (int j = 0; j < k; ++j) off += blocks_[static_cast<size_t>(j)] * blocks_[static_cast<size_t>(j)];
  return off;
}

int AlgebraShape::space_offset(int k) const {
  int off = 0;
  for (int j = 0; j < k; ++j) off += blocks_[static_cast<size_t>(j)];
  return off;
}

AlgebraShape AlgebraShape::parse(const std::string& text) {
  std::vector<int> dims;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    try {
      size_t pos = 0;
      int n = std::stoi(token, &pos);
      while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos]))) ++pos;
      if (pos != token.size())
        throw MalformedInput("invalid shape entry: '" + token + "'");
      dims.push_back(n);
    } catch (const std::invalid_argument&) {
      throw MalformedInput("invalid shape entry: '" + token + "'");
    } catch (const std::out_of_range&) {
      throw MalformedInput("shape entry out of range: '" + token + "'");
    }
  }
  return AlgebraShape(std::move(dims));
}

std::string AlgebraShape::to_string() const {
  std::string out;
  for (size_t i = 0; i < blocks_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(blocks_[i]);
  }
  return out;
}

void require_same_shape(const AlgebraShape& a, const AlgebraShape& b,
                        const char* op) {
  if (!(a == b))
    throw ShapeMismatch(std::string(op) + ": shapes [" + a.to_string() +
                        "] and [" + b.to_string() + "] differ");
}

AlgebraElement::AlgebraElement(AlgebraShape shape, std::vector<Matrix> blocks)
    : shape_(std::move(shape)), blocks_(std::move(blocks)) {
  if (static_cast<int>(blocks_.size()) != shape_.block_count())
    throw MalformedInput("element block count does not match shape");
  for (int k = 0; k < shape_.block_count(); ++k) {
    const Matrix& m = blocks_[static_cast<size_t>(k)];
    if (m.rows() != shape_.block_dim(k) || m.cols() != shape_.block_dim(k))
      throw MalformedInput("element block " + std::to_string(k) +
                           " is not " + std::to_string(shape_.block_dim(k)) +
                           "x" + std::to_string(shape_.block_dim(k)));
  }
}

AlgebraElement AlgebraElement::zero(const AlgebraShape& shape) {
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<size_t>(shape.block_count()));
  for (int k = 0; k < shape.block_count(); ++k)
    blocks.push_back(Matrix::Zero(shape.block_dim(k), shape.block_dim(k)));
  return AlgebraElement(shape, std::move(blocks));
}

AlgebraElement AlgebraElement::identity(const AlgebraShape& shape) {
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<size_t>(shape.block_count()));
  for (int k = 0; k < shape.block_count(); ++k)
    blocks.push_back(Matrix::Identity(shape.block_dim(k), shape.block_dim(k)));
  return AlgebraElement(shape, std::move(blocks));
}

Vector AlgebraElement::flatten() const {
  Vector v(shape_.flat_size());
  int pos = 0;
  for (int k = 0; k < block_count(); ++k) {
    const Matrix& m = block(k);
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c) v(pos++) = m(r, c);
  }
  return v;
}

AlgebraElement AlgebraElement::unflatten(const AlgebraShape& shape,
                                         const Vector& v) {
  if (v.size() != shape.flat_size())
    throw ShapeMismatch("unflatten: vector length does not match shape");
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<size_t>(shape.block_count()));
  int pos = 0;
  for (int k = 0; k < shape.block_count(); ++k) {
    int n = shape.block_dim(k);
    Matrix m(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m(r, c) = v(pos++);
    blocks.push_back(std::move(m));
  }
  return AlgebraElement(shape, std::move(blocks));
}

AlgebraElement adjoint(const AlgebraElement& x) {
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<size_t>(x.block_count()));
  for (int k = 0; k < x.block_count(); ++k)
    blocks.push_back(x.block(k).adjoint());
  return AlgebraElement(x.shape(), std::move(blocks));
}

AlgebraElement mul(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_shape(x.shape(), y.shape(), "mul");
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<size_t>(x.block_count()));
  for (int k = 0; k < x.block_count(); ++k)
    blocks.push_back(x.block(k) * y.block(k));
  return AlgebraElement(x.shape(), std::move(blocks));
}

AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_shape(x.shape(), y.shape(), "add");
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<size_t>(x.block_count()));
  for (int k = 0; k < x.block_count(); ++k)
    blocks.push_back(x.block(k) + y.block(k));
  return AlgebraElement(x.shape(), std::move(blocks));
}

AlgebraElement sub(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_shape(x.shape(), y.shape(), "sub");
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<size_t>(x.block_count()));
  for (int k = 0; k < x.block_count(); ++k)
    blocks.push_back(x.block(k) - y.block(k));
  return AlgebraElement(x.shape(), std::move(blocks));
}

AlgebraElement scalar_mul(Complex c, const AlgebraElement& x) {
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<size_t>(x.block_count()));
  for (int k = 0; k < x.block_count(); ++k) blocks.push_back(c * x.block(k));
  return AlgebraElement(x.shape(), std::move(blocks));
}

AlgebraElement hermitize(const AlgebraElement& x) {
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<size_t>(x.block_count()));
  for (int k = 0; k < x.block_count(); ++k)
    blocks.push_back(0.5 * (x.block(k) + x.block(k).adjoint().eval()));
  return AlgebraElement(x.shape(), std::move(blocks));
}

AlgebraElement shift(const AlgebraElement& x, Complex lambda) {
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<size_t>(x.block_count()));
  for (int k = 0; k < x.block_count(); ++k) {
    Matrix m = x.block(k);
    m.diagonal().array() -= lambda;
    blocks.push_back(std::move(m));
  }
  return AlgebraElement(x.shape(), std::move(blocks));
}

double operator_norm(const AlgebraElement& x) {
  double norm = 0.0;
  for (int k = 0; k < x.block_count(); ++k) {
    Eigen::JacobiSVD<Matrix> svd(x.block(k));
    if (svd.info() != Eigen::Success)
      throw NumericalFailure("operator_norm: SVD did not converge");
    if (svd.singularValues().size() > 0)
      norm = std::max(norm, svd.singularValues()(0));
  }
  return norm;
}

double self_adjoint_defect(const AlgebraElement& x) {
  double defect = 0.0;
  for (int k = 0; k < x.block_count(); ++k)
    defect = std::max(defect,
                      (x.block(k) - x.block(k).adjoint().eval()).norm());
  return defect;
}

bool is_self_adjoint(const AlgebraElement& x, double tol) {
  return self_adjoint_defect(x) <= tol;
}

bool is_projection(const AlgebraElement& x, double tol) {
  if (!is_self_adjoint(x, tol)) return false;
  double defect = 0.0;
  for (int k = 0; k < x.block_count(); ++k)
    defect = std::max(defect, (x.block(k) * x.block(k) - x.block(k)).norm());
  return defect <= tol;
}

bool is_positive(const AlgebraElement& x, double tol) {
  AlgebraElement h = hermitize(x);
  for (int k = 0; k < h.block_count(); ++k) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.block(k),
                                                 Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw NumericalFailure("is_positive: eigensolver did not converge");
    if (solver.eigenvalues()(0) < -tol) return false;
  }
  return true;
}

double default_self_adjoint_tol(const AlgebraElement& x) {
  return 1e-10 * std::max(1.0, operator_norm(x));
}

double default_cluster_tol(const AlgebraElement& x) {
  return 1e-8 * std::max(1.0, operator_norm(x));
}

int SpectrumReport::total_multiplicity() const {
  int total = 0;
  for (const auto& p : points) total += p.multiplicity;
  return total;
}

double SpectrumReport::distance_to(Complex lambda) const {
  double dist = std::numeric_limits<double>::infinity();
  for (const auto& p : points) dist = std::min(dist, std::abs(p.value - lambda));
  return dist;
}

namespace {

// Single-linkage merge of eigenvalues within cluster_tol of each other.
std::vector<SpectralPoint> cluster_values(std::vector<Complex> values,
                                          double cluster_tol) {
  const size_t n = values.size();
  std::vector<size_t> parent(n);
  for (size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (std::abs(values[i] - values[j]) <= cluster_tol)
        parent[find(i)] = find(j);

  std::vector<SpectralPoint> points;
  std::vector<bool> seen(n, false);
  for (size_t i = 0; i < n; ++i) {
    size_t root = find(i);
    if (seen[root]) continue;
    seen[root] = true;
    Complex sum = 0.0;
    int count = 0;
    for (size_t j = 0; j < n; ++j)
      if (find(j) == root) {
        sum += values[j];
        ++count;
      }
    points.push_back({sum / static_cast<double>(count), count});
  }
  std::sort(points.begin(), points.end(),
            [](const SpectralPoint& a, const SpectralPoint& b) {
              if (a.value.real() != b.value.real())
                return a.value.real() < b.value.real();
              return a.value.imag() < b.value.imag();
            });
  return points;
}

}  // namespace

SpectrumReport spectrum(const AlgebraElement& x, double cluster_tol) {
  if (cluster_tol < 0.0)
    throw MalformedInput("spectrum: cluster tolerance must be >= 0");
  SpectrumReport report;
  report.cluster_tolerance = cluster_tol;
  report.is_self_adjoint = is_self_adjoint(x, default_self_adjoint_tol(x));

  std::vector<Complex> values;
  values.reserve(static_cast<size_t>(x.shape().space_dim()));
  if (report.is_self_adjoint) {
    AlgebraElement h = hermitize(x);
    for (int k = 0; k < h.block_count(); ++k) {
      Eigen::SelfAdjointEigenSolver<Matrix> solver(h.block(k),
                                                   Eigen::EigenvaluesOnly);
      if (solver.info() != Eigen::Success)
        throw NumericalFailure("spectrum: eigensolver did not converge");
      for (int i = 0; i < solver.eigenvalues().size(); ++i)
        values.emplace_back(solver.eigenvalues()(i), 0.0);
    }
  } else {
    for (int k = 0; k < x.block_count(); ++k) {
      Eigen::ComplexEigenSolver<Matrix> solver(x.block(k), false);
      if (solver.info() != Eigen::Success)
        throw NumericalFailure("spectrum: eigensolver did not converge");
      for (int i = 0; i < solver.eigenvalues().size(); ++i)
        values.push_back(solver.eigenvalues()(i));
    }
  }
  report.points = cluster_values(std::move(values), cluster_tol);
  return report;
}

SpectrumReport spectrum(const AlgebraElement& x) {
  return spectrum(x, default_cluster_tol(x));
}

std::vector<AlgebraElement> matrix_units(const AlgebraShape& shape) {
  std::vector<AlgebraElement> units;
  units.reserve(static_cast<size_t>(shape.flat_size()));
  for (int k = 0; k < shape.block_count(); ++k) {
    int n = shape.block_dim(k);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        AlgebraElement unit = AlgebraElement::zero(shape);
        unit.block(k)(r, c) = 1.0;
        units.push_back(std::move(unit));
      }
  }
  return units;
}

}  // namespace cstar
