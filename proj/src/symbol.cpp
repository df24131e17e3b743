#include "wtrace/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wtrace {
namespace {

bool near(double a, double b) { return std::abs(a - b) < kExpTol; }

}  // namespace

ClassicalSymbol1D::ClassicalSymbol1D(int fibre_dim) : d_(fibre_dim) {
  if (fibre_dim <= 0) throw std::invalid_argument("fibre dimension");
}

double ClassicalSymbol1D::order() const {
  return comps_.empty() ? 0.0 : comps_.front().degree;
}

HomogeneousComponent& ClassicalSymbol1D::bucket(double degree) {
  auto it = std::find_if(comps_.begin(), comps_.end(), [&](const auto& c) {
    return near(c.degree, degree);
  });
  if (it != comps_.end()) return *it;
  auto pos = std::find_if(comps_.begin(), comps_.end(), [&](const auto& c) {
    return c.degree < degree;
  });
  return *comps_.insert(pos, HomogeneousComponent{degree, {}, {}});
}

void ClassicalSymbol1D::add(double degree, Ray ray, int mode,
                            const Mat& coeff) {
  if (coeff.rows() != d_ || coeff.cols() != d_)
    throw std::invalid_argument("coefficient block size");
  if (coeff.isZero(0.0)) return;
  auto& comp = bucket(degree);
  auto& side = (ray == Ray::kPlus) ? comp.plus : comp.minus;
  auto [it, fresh] = side.try_emplace(mode, coeff);
  if (!fresh) it->second += coeff;
}

void ClassicalSymbol1D::set_component(double degree,
                                      const std::map<int, Mat>& plus,
                                      const std::map<int, Mat>& minus) {
  for (const auto& [k, m] : plus) add(degree, Ray::kPlus, k, m);
  for (const auto& [k, m] : minus) add(degree, Ray::kMinus, k, m);
}

Mat ClassicalSymbol1D::at(double degree, Ray ray, int mode) const {
  for (const auto& c : comps_) {
    if (!near(c.degree, degree)) continue;
    const auto& side = (ray == Ray::kPlus) ? c.plus : c.minus;
    auto it = side.find(mode);
    if (it != side.end()) return it->second;
    break;
  }
  return Mat::Zero(d_, d_);
}

bool ClassicalSymbol1D::is_odd_class(double tol) const {
  for (const auto& c : comps_) {
    double r = std::round(c.degree);
    if (std::abs(c.degree - r) > 1e-9) return false;
    double sign = (std::llround(r) % 2 == 0) ? 1.0 : -1.0;
    std::map<int, Mat> expect;
    for (const auto& [k, m] : c.plus) expect[k] = sign * m;
    for (const auto& [k, m] : c.minus) {
      auto it = expect.find(k);
      Mat want = (it == expect.end()) ? Mat(Mat::Zero(d_, d_)) : it->second;
      if ((m - want).cwiseAbs().maxCoeff() > tol) return false;
      if (it != expect.end()) expect.erase(it);
    }
    for (const auto& [k, m] : expect)
      if (m.cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

ClassicalSymbol1D star_compose(const ClassicalSymbol1D& a,
                               const ClassicalSymbol1D& b, int depth) {
  if (a.fibre_dim() != b.fibre_dim())
    throw std::invalid_argument("fibre dimension mismatch");
  ClassicalSymbol1D out(a.fibre_dim());
  if (a.empty() || b.empty()) return out;
  const double lead = a.order() + b.order();
  for (const auto& ca : a.components()) {
    for (const auto& cb : b.components()) {
      double fall = 1.0;  // falling factorial of ca.degree over k!
      for (int k = 0; k <= depth; ++k) {
        const double deg = ca.degree + cb.degree - k;
        if (deg < lead - depth - kExpTol) break;
        if (k > 0) {
          fall *= (ca.degree - (k - 1)) / k;
          if (fall == 0.0) break;  // polynomial ray: derivative terminated
        }
        const double ray_sign = (k % 2 == 0) ? 1.0 : -1.0;
        for (const auto& [ka, ma] : ca.plus)
          for (const auto& [kb, mb] : cb.plus) {
            const double w = fall * std::pow(static_cast<double>(kb), k);
            if (w != 0.0) out.add(deg, Ray::kPlus, ka + kb, Mat(w * ma * mb));
          }
        for (const auto& [ka, ma] : ca.minus)
          for (const auto& [kb, mb] : cb.minus) {
            const double w =
                ray_sign * fall * std::pow(static_cast<double>(kb), k);
            if (w != 0.0) out.add(deg, Ray::kMinus, ka + kb, Mat(w * ma * mb));
          }
      }
    }
  }
  return out;
}

cplx wodzicki_residue_symbol(const ClassicalSymbol1D& a) {
  cplx acc(0.0, 0.0);
  for (const auto& c : a.components()) {
    if (!near(c.degree, -1.0)) continue;
    auto p = c.plus.find(0);
    auto m = c.minus.find(0);
    if (p != c.plus.end()) acc += p->second.trace();
    if (m != c.minus.end()) acc += m->second.trace();
  }
  return acc;
}

BlockBandOperator symbol_to_operator(const ClassicalSymbol1D& a,
                                     Convention convention) {
  const int d = a.fibre_dim();
  BlockBandOperator op(d, convention, 1);
  std::map<int, std::vector<std::pair<double, std::pair<Mat, Mat>>>> bands;
  for (const auto& c : a.components()) {
    auto pull = [&](const std::map<int, Mat>& side, bool plus_ray) {
      for (const auto& [k, m] : side) {
        auto& vec = bands[k];
        auto it = std::find_if(vec.begin(), vec.end(), [&](const auto& e) {
          return near(e.first, c.degree);
        });
        if (it == vec.end()) {
          vec.push_back({c.degree, {Mat::Zero(d, d), Mat::Zero(d, d)}});
          it = std::prev(vec.end());
        }
        (plus_ray ? it->second.first : it->second.second) += m;
      }
    };
    pull(c.plus, true);
    pull(c.minus, false);
  }
  for (auto& [k, vec] : bands) {
    BandEntry e;
    MatSeries plus = MatSeries::zero();
    MatSeries minus = MatSeries::zero();
    for (const auto& [deg, mats] : vec) {
      if (!mats.first.isZero(0.0)) plus.add_term(deg, 0, mats.first);
      if (!mats.second.isZero(0.0)) minus.add_term(deg, 0, mats.second);
    }
    e.plus = plus;
    e.minus = minus;
    auto terms = vec;  // value copy for the closure
    e.eval = [terms, d](std::int64_t n) {
      Mat acc = Mat::Zero(d, d);
      if (n == 0) return acc;
      const double m = std::abs(static_cast<double>(n));
      for (const auto& [deg, mats] : terms)
        acc += std::pow(m, deg) * (n > 0 ? mats.first : mats.second);
      return acc;
    };
    e.support = IndexWindow::all();
    op.set_band(k, std::move(e));
  }
  return op;
}

ClassicalSymbol1D operator_to_symbol(const BlockBandOperator& a) {
  ClassicalSymbol1D out(a.fibre_dim());
  for (int k : a.band_indices()) {
    for (Ray r : {Ray::kPlus, Ray::kMinus}) {
      if (!a.series_active(k, r)) continue;
      for (const auto& t : a.band_series(k, r).terms()) {
        if (t.p != 0)
          throw std::invalid_argument(
              "log terms in the expansion: not a classical symbol");
        out.add(t.e, r, k, t.c);
      }
    }
  }
  return out;
}

}  // namespace wtrace
