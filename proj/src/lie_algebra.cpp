#include "wtrace/lie_algebra.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wtrace {

LieAlgebraData::LieAlgebraData(int dim, std::vector<double> c)
    : d_(dim), c_(std::move(c)) {
  validate();
}

LieAlgebraData LieAlgebraData::make(int dim, const std::vector<Entry>& entries) {
  if (dim <= 0) throw std::invalid_argument("algebra dimension must be positive");
  std::vector<double> c(static_cast<std::size_t>(dim) * dim * dim, 0.0);
  for (const auto& e : entries) {
    if (e.i < 0 || e.i >= dim || e.j < 0 || e.j >= dim || e.k < 0 || e.k >= dim)
      throw std::invalid_argument("structure-constant index out of range");
    c[static_cast<std::size_t>((e.i * dim + e.j) * dim + e.k)] = e.value;
  }
  return LieAlgebraData(dim, std::move(c));
}

LieAlgebraData LieAlgebraData::su2() {
  return make(3, {{0, 1, 2, 1.0},
                  {1, 2, 0, 1.0},
                  {2, 0, 1, 1.0},
                  {1, 0, 2, -1.0},
                  {2, 1, 0, -1.0},
                  {0, 2, 1, -1.0}});
}

LieAlgebraData LieAlgebraData::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open structure-constant file: " + path);
  std::string line;
  int dim = -1;
  std::vector<Entry> entries;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string first;
    if (!(ss >> first)) continue;
    if (first == "dim") {
      if (!(ss >> dim) || dim <= 0)
        throw std::runtime_error("malformed structure-constant file: bad dim at line " +
                                 std::to_string(lineno));
      continue;
    }
    if (dim < 0)
      throw std::runtime_error("malformed structure-constant file: entries before dim");
    Entry e{};
    std::istringstream es(line);
    if (!(es >> e.i >> e.j >> e.k >> e.value))
      throw std::runtime_error("malformed structure-constant file: line " +
                               std::to_string(lineno));
    entries.push_back(e);
  }
  if (dim < 0) throw std::runtime_error("malformed structure-constant file: missing dim");
  return make(dim, entries);
}

void LieAlgebraData::validate() const {
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j)
      for (int k = 0; k < d_; ++k)
        if (std::abs(structure(i, j, k) + structure(j, i, k)) > 1e-12)
          throw std::invalid_argument("structure constants are not antisymmetric");

  // Jacobi: sum over cyclic permutations of [[e_i,e_j],e_k] = 0.
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j)
      for (int k = 0; k < d_; ++k)
        for (int m = 0; m < d_; ++m) {
          double s = 0.0;
          for (int l = 0; l < d_; ++l) {
            s += structure(i, j, l) * structure(l, k, m);
            s += structure(j, k, l) * structure(l, i, m);
            s += structure(k, i, l) * structure(l, j, m);
          }
          if (std::abs(s) > 1e-12)
            throw std::invalid_argument("Jacobi identity violated beyond 1e-12");
        }

  // Killing form K_{ij} = tr(ad_i ad_j) must be negative definite.
  Eigen::MatrixXd killing(d_, d_);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) {
      double t = 0.0;
      for (int l = 0; l < d_; ++l)
        for (int m = 0; m < d_; ++m)
          t += structure(i, l, m) * structure(j, m, l);
      killing(i, j) = t;
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(killing);
  if (es.eigenvalues().maxCoeff() > -1e-12)
    throw std::invalid_argument("Killing form is not negative definite");
}

Vec LieAlgebraData::bracket(const Vec& a, const Vec& b) const {
  Vec r = Vec::Zero(d_);
  for (int i = 0; i < d_; ++i) {
    if (a(i) == cplx(0.0)) continue;
    for (int j = 0; j < d_; ++j) {
      if (b(j) == cplx(0.0)) continue;
      for (int k = 0; k < d_; ++k) {
        const double c = structure(i, j, k);
        if (c != 0.0) r(k) += a(i) * b(j) * c;
      }
    }
  }
  return r;
}

Mat LieAlgebraData::ad(const Vec& a) const {
  Mat m = Mat::Zero(d_, d_);
  for (int i = 0; i < d_; ++i) {
    if (a(i) == cplx(0.0)) continue;
    for (int j = 0; j < d_; ++j)
      for (int k = 0; k < d_; ++k) {
        const double c = structure(i, j, k);
        if (c != 0.0) m(k, j) += a(i) * c;
      }
  }
  return m;
}

cplx LieAlgebraData::killing_inner(const Vec& a, const Vec& b) const {
  return -(ad(a) * ad(b)).trace();
}

double LieAlgebraData::killing_norm2(const Vec& a) const {
  return killing_inner(a.conjugate(), a).real();
}

Vec LieAlgebraData::basis(int i) const {
  Vec v = Vec::Zero(d_);
  v(i) = 1.0;
  return v;
}

}  // namespace wtrace
