#include "wtrace/band_operator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wtrace/zeta.hpp"

namespace wtrace {

namespace {

const MatSeries kZeroSeries{};

Mat eval_band_entry(const BandEntry& e, int d, Convention conv, int k,
                    std::int64_t n) {
  if (conv == Convention::kKernelExcluded && (n == 0 || n + k == 0))
    return Mat::Zero(d, d);
  if (e.support.empty() || !e.support.contains(n)) return Mat::Zero(d, d);
  if (!e.eval) return Mat::Zero(d, d);
  return e.eval(n);
}

bool unbounded(const IndexWindow& w, Ray r) {
  return r == Ray::kPlus ? !w.bounded_above() : !w.bounded_below();
}

MatSeries adjoint_series(const MatSeries& s) {
  MatSeries r;
  r.raise_err(s.err());
  for (const auto& t : s.terms()) r.add_term(t.e, t.p, Mat(t.c.adjoint()));
  return r;
}

void check_compatible(const BlockBandOperator& a, const BlockBandOperator& b,
                      const char* what) {
  if (a.fibre_dim() != b.fibre_dim())
    throw std::invalid_argument(std::string(what) +
                                ": fibre dimensions differ");
  if (a.convention() != b.convention())
    throw std::invalid_argument(std::string(what) +
                                ": mode-lattice conventions differ");
}

}  // namespace

BlockBandOperator::BlockBandOperator(int fibre_dim, Convention conv,
                                     std::int64_t n0)
    : d_(fibre_dim), conv_(conv), n0_(n0) {
  if (fibre_dim <= 0)
    throw std::invalid_argument("band operator: fibre dimension must be positive");
}

void BlockBandOperator::set_band(int k, BandEntry e) {
  bands_[k] = std::make_shared<const BandEntry>(std::move(e));
}

const BandEntry* BlockBandOperator::band(int k) const {
  auto it = bands_.find(k);
  return it == bands_.end() ? nullptr : it->second.get();
}

std::vector<int> BlockBandOperator::band_indices() const {
  std::vector<int> ks;
  ks.reserve(bands_.size());
  for (const auto& [k, e] : bands_) ks.push_back(k);
  return ks;
}

int BlockBandOperator::bandwidth() const {
  int w = 0;
  for (const auto& [k, e] : bands_) w = std::max(w, std::abs(k));
  return w;
}

Mat BlockBandOperator::entry(int k, std::int64_t n) const {
  auto it = bands_.find(k);
  if (it == bands_.end()) return Mat::Zero(d_, d_);
  return eval_band_entry(*it->second, d_, conv_, k, n);
}

bool BlockBandOperator::series_active(int k, Ray r) const {
  auto it = bands_.find(k);
  if (it == bands_.end()) return false;
  const IndexWindow& w = it->second->support;
  return !w.empty() && unbounded(w, r);
}

const MatSeries& BlockBandOperator::band_series(int k, Ray r) const {
  auto it = bands_.find(k);
  if (it == bands_.end() || !series_active(k, r)) return kZeroSeries;
  return r == Ray::kPlus ? it->second->plus : it->second->minus;
}

double BlockBandOperator::order() const {
  double o = kNegInf;
  for (const auto& [k, e] : bands_) {
    if (series_active(k, Ray::kPlus)) o = std::max(o, e->plus.mag());
    if (series_active(k, Ray::kMinus)) o = std::max(o, e->minus.mag());
  }
  return o;
}

bool BlockBandOperator::finite_rank() const {
  for (const auto& [k, e] : bands_) {
    const IndexWindow& w = e->support;
    if (w.empty() || w.finite()) continue;
    // infinite support is still finite rank when the expansion is exactly
    // zero on every unbounded side (entries vanish beyond n0)
    for (Ray r : {Ray::kPlus, Ray::kMinus}) {
      if (!unbounded(w, r)) continue;
      const MatSeries& s = (r == Ray::kPlus) ? e->plus : e->minus;
      if (!(s.is_zero() && s.exact())) return false;
    }
  }
  return true;
}

double BlockBandOperator::validate(int samples) const {
  double worst = 0.0;
  for (const auto& [k, e] : bands_) {
    for (Ray r : {Ray::kPlus, Ray::kMinus}) {
      if (!series_active(k, r)) continue;
      const MatSeries& s = (r == Ray::kPlus) ? e->plus : e->minus;
      for (int i = 1; i <= samples; ++i) {
        std::int64_t m = n0_ + 16 * i + 1;
        std::int64_t n = (r == Ray::kPlus) ? m : -m;
        Mat exact = entry(k, n);
        double dev;
        if (s.is_zero()) {
          dev = exact.norm();
        } else {
          Mat approx = s.eval(static_cast<double>(m));
          dev = (exact - approx).norm() / std::max(1.0, approx.norm());
        }
        worst = std::max(worst, dev);
      }
    }
  }
  return worst;
}

// --- generators ---

BlockBandOperator zero_op(int d, Convention c) {
  return BlockBandOperator(d, c, 0);
}

BlockBandOperator identity_op(int d, Convention c) {
  BlockBandOperator a(d, c, 0);
  BandEntry e;
  e.eval = [d](std::int64_t) { return Mat(Mat::Identity(d, d)); };
  e.plus = MatSeries::power(Mat::Identity(d, d), 0.0);
  e.minus = e.plus;
  a.set_band(0, std::move(e));
  return a;
}

BlockBandOperator d0_op(int d, Convention c) {
  BlockBandOperator a(d, c, 0);
  BandEntry e;
  e.eval = [d](std::int64_t n) {
    return Mat(static_cast<double>(n) * Mat::Identity(d, d));
  };
  e.plus = MatSeries::power(Mat::Identity(d, d), 1.0);
  e.minus = MatSeries::power(Mat(-Mat::Identity(d, d)), 1.0);
  a.set_band(0, std::move(e));
  return a;
}

BlockBandOperator epsilon_sign(int d, Convention c) {
  BlockBandOperator a(d, c, 0);
  BandEntry e;
  e.eval = [d](std::int64_t n) {
    return Mat((n >= 0 ? 1.0 : -1.0) * Mat::Identity(d, d));
  };
  e.plus = MatSeries::power(Mat::Identity(d, d), 0.0);
  e.minus = MatSeries::power(Mat(-Mat::Identity(d, d)), 0.0);
  a.set_band(0, std::move(e));
  return a;
}

BlockBandOperator weight_power(const DiagonalWeight& q, double s, int d,
                               Convention c, int depth) {
  BlockBandOperator a(d, c, q.n0());
  BandEntry e;
  auto mu = [q](std::int64_t n) { return q.mu(n); };
  e.eval = [mu, s, d](std::int64_t n) {
    return Mat(std::pow(mu(n), s) * Mat::Identity(d, d));
  };
  const double qs = q.order() * s;
  for (Ray r : {Ray::kPlus, Ray::kMinus}) {
    // mu_n^s = m^{q s} exp(s lambda(m)) with lambda the log correction
    ScalarSeries factor =
        exp_series(q.log_correction(r).scaled(cplx(s, 0.0)), depth) *
        ScalarSeries::power(cplx(1.0, 0.0), qs);
    MatSeries ms = mat_series_from_scalar(factor, Mat::Identity(d, d));
    (r == Ray::kPlus ? e.plus : e.minus) = std::move(ms);
  }
  a.set_band(0, std::move(e));
  return a;
}

BlockBandOperator multiplier(const std::map<int, Mat>& fourier, Convention c) {
  if (fourier.empty())
    throw std::invalid_argument("multiplier: empty Fourier data");
  const int d = static_cast<int>(fourier.begin()->second.rows());
  BlockBandOperator a(d, c, 0);
  int w = 0;
  for (const auto& [k, fk] : fourier) {
    if (fk.rows() != d || fk.cols() != d)
      throw std::invalid_argument("multiplier: inconsistent block sizes");
    if (fk.norm() == 0.0) continue;
    w = std::max(w, std::abs(k));
    BandEntry e;
    Mat block = fk;
    e.eval = [block](std::int64_t) { return block; };
    e.plus = MatSeries::power(block, 0.0);
    e.minus = e.plus;
    a.set_band(k, std::move(e));
  }
  if (c == Convention::kKernelExcluded) a.set_n0(w);
  return a;
}

BlockBandOperator scalar_multiplier(const std::map<int, cplx>& fourier, int d,
                                    Convention c) {
  std::map<int, Mat> blocks;
  for (const auto& [k, v] : fourier)
    blocks[k] = Mat(v * Mat::Identity(d, d));
  return multiplier(blocks, c);
}

BlockBandOperator ad_operator(const LoopElement& x, Convention c) {
  const int d = x.algebra()->dim();
  std::map<int, Mat> blocks;
  for (const auto& [k, a_k] : x.coefficients())
    blocks[k] = x.algebra()->ad(a_k);
  if (blocks.empty()) return zero_op(d, c);
  return multiplier(blocks, c);
}

BlockBandOperator finite_rank_op(
    int d, Convention c,
    const std::map<std::pair<std::int64_t, std::int64_t>, Mat>& entries) {
  BlockBandOperator a(d, c, 0);
  std::map<int, std::map<std::int64_t, Mat>> by_band;
  std::int64_t radius = 0;
  for (const auto& [rc, block] : entries) {
    if (block.rows() != d || block.cols() != d)
      throw std::invalid_argument("finite_rank_op: inconsistent block sizes");
    const std::int64_t row = rc.first, col = rc.second;
    if (std::llabs(row - col) > INT32_MAX)
      throw std::invalid_argument("finite_rank_op: band index overflow");
    by_band[static_cast<int>(row - col)][col] = block;
    radius = std::max({radius, static_cast<std::int64_t>(std::llabs(row)),
                       static_cast<std::int64_t>(std::llabs(col))});
  }
  for (auto& [k, cols] : by_band) {
    BandEntry e;
    auto table = std::make_shared<const std::map<std::int64_t, Mat>>(cols);
    e.eval = [table, d](std::int64_t n) {
      auto it = table->find(n);
      return it == table->end() ? Mat(Mat::Zero(d, d)) : it->second;
    };
    e.support = IndexWindow::between(cols.begin()->first, cols.rbegin()->first);
    a.set_band(k, std::move(e));
  }
  a.set_n0(radius + 1);
  return a;
}

// --- arithmetic ---

BlockBandOperator add(const BlockBandOperator& a, const BlockBandOperator& b) {
  check_compatible(a, b, "add");
  const int d = a.fibre_dim();
  const Convention conv = a.convention();
  BlockBandOperator c(d, conv, std::max(a.n0(), b.n0()));
  std::vector<int> keys = a.band_indices();
  for (int k : b.band_indices())
    if (!a.band(k)) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  std::int64_t edge = 0;
  for (int k : keys) {
    const BandEntry* ea = a.band(k);
    const BandEntry* eb = b.band(k);
    BandEntry e;
    if (ea && eb) {
      auto fa = ea->eval;
      auto fb = eb->eval;
      IndexWindow wa = ea->support, wb = eb->support;
      e.eval = [fa, fb, wa, wb, d](std::int64_t n) {
        Mat acc = Mat::Zero(d, d);
        if (fa && !wa.empty() && wa.contains(n)) acc += fa(n);
        if (fb && !wb.empty() && wb.contains(n)) acc += fb(n);
        return acc;
      };
      e.support = wa.hull(wb);
      for (Ray r : {Ray::kPlus, Ray::kMinus}) {
        MatSeries s;
        if (!wa.empty() && unbounded(wa, r))
          s = s + (r == Ray::kPlus ? ea->plus : ea->minus);
        if (!wb.empty() && unbounded(wb, r))
          s = s + (r == Ray::kPlus ? eb->plus : eb->minus);
        (r == Ray::kPlus ? e.plus : e.minus) = std::move(s);
      }
      edge = std::max({edge, wa.edge_radius(), wb.edge_radius()});
      c.set_band(k, std::move(e));
    } else {
      const BandEntry* src = ea ? ea : eb;
      edge = std::max(edge, src->support.edge_radius());
      c.set_band(k, *src);
    }
  }
  c.set_n0(edge + 1);
  return c;
}

BlockBandOperator scale(const BlockBandOperator& a, cplx s) {
  BlockBandOperator c(a.fibre_dim(), a.convention(), a.n0());
  for (int k : a.band_indices()) {
    const BandEntry* ea = a.band(k);
    BandEntry e;
    auto f = ea->eval;
    e.eval = f ? std::function<Mat(std::int64_t)>(
                     [f, s](std::int64_t n) { return Mat(s * f(n)); })
               : nullptr;
    e.plus = ea->plus.scaled(s);
    e.minus = ea->minus.scaled(s);
    e.support = ea->support;
    c.set_band(k, std::move(e));
  }
  return c;
}

BlockBandOperator sub(const BlockBandOperator& a, const BlockBandOperator& b) {
  return add(a, scale(b, cplx(-1.0, 0.0)));
}

BlockBandOperator compose(const BlockBandOperator& a,
                          const BlockBandOperator& b, int depth) {
  check_compatible(a, b, "compose");
  const int d = a.fibre_dim();
  const Convention conv = a.convention();

  struct Term {
    std::shared_ptr<const BandEntry> ea, eb;
    int ka, kb;
    IndexWindow win;
  };
  std::map<int, std::vector<Term>> by_band;
  for (const auto& [ka, ea] : a.bands_) {
    for (const auto& [kb, eb] : b.bands_) {
      IndexWindow win =
          eb->support.intersect(ea->support.shifted(-static_cast<std::int64_t>(kb)));
      if (win.empty()) continue;
      by_band[ka + kb].push_back({ea, eb, ka, kb, win});
    }
  }

  const std::int64_t wb = b.bandwidth();
  BlockBandOperator c(d, conv, std::max(a.n0() + wb, b.n0()));
  std::int64_t edge = 0;
  int wc = 0;
  for (auto& [k, terms] : by_band) {
    wc = std::max(wc, std::abs(k));
    BandEntry e;
    std::optional<IndexWindow> hull;
    for (const auto& t : terms) {
      hull = hull ? hull->hull(t.win) : t.win;
      edge = std::max(edge, t.win.edge_radius());
    }
    e.support = *hull;
    for (Ray r : {Ray::kPlus, Ray::kMinus}) {
      MatSeries s;
      for (const auto& t : terms) {
        if (!unbounded(t.ea->support, r) || !unbounded(t.eb->support, r))
          continue;
        const MatSeries& sa = (r == Ray::kPlus) ? t.ea->plus : t.ea->minus;
        const MatSeries& sb = (r == Ray::kPlus) ? t.eb->plus : t.eb->minus;
        // A acts at column n + kb: |n + kb| = m + kb on the plus ray,
        // m - kb on the minus ray
        const double delta = (r == Ray::kPlus) ? t.kb : -t.kb;
        s = s + sa.reexpanded(delta, depth) * sb;
      }
      (r == Ray::kPlus ? e.plus : e.minus) = std::move(s);
    }
    std::vector<Term> tv = terms;
    e.eval = [tv, d, conv](std::int64_t n) {
      Mat acc = Mat::Zero(d, d);
      for (const auto& t : tv) {
        Mat rhs = eval_band_entry(*t.eb, d, conv, t.kb, n);
        if (rhs.isZero(0.0)) continue;
        acc += eval_band_entry(*t.ea, d, conv, t.ka, n + t.kb) * rhs;
      }
      return acc;
    };
    c.set_band(k, std::move(e));
  }
  c.set_n0(std::max({edge + 1, static_cast<std::int64_t>(wc), std::int64_t{1}}));
  return c;
}

BlockBandOperator commutator(const BlockBandOperator& a,
                             const BlockBandOperator& b, int depth) {
  return sub(compose(a, b, depth), compose(b, a, depth));
}

BlockBandOperator anticommutator(const BlockBandOperator& a,
                                 const BlockBandOperator& b, int depth) {
  return add(compose(a, b, depth), compose(b, a, depth));
}

BlockBandOperator adjoint(const BlockBandOperator& a, int depth) {
  const int d = a.fibre_dim();
  BlockBandOperator c(d, a.convention(), 0);
  std::int64_t edge = 0;
  for (int ka : a.band_indices()) {
    const BandEntry* ea = a.band(ka);
    const int k = -ka;
    BandEntry e;
    auto f = ea->eval;
    IndexWindow wa = ea->support;
    const Convention conv = a.convention();
    e.eval = [f, wa, d, conv, ka, k](std::int64_t n) {
      BandEntry tmp;  // support/convention-aware view of the source band
      tmp.eval = f;
      tmp.support = wa;
      return Mat(eval_band_entry(tmp, d, conv, ka, n + k).adjoint());
    };
    e.support = wa.shifted(-k);
    if (unbounded(e.support, Ray::kPlus))
      e.plus = adjoint_series(ea->plus).reexpanded(static_cast<double>(k), depth);
    if (unbounded(e.support, Ray::kMinus))
      e.minus =
          adjoint_series(ea->minus).reexpanded(static_cast<double>(-k), depth);
    edge = std::max(edge, e.support.edge_radius());
    c.set_band(k, std::move(e));
  }
  c.set_n0(std::max(a.n0() + a.bandwidth(), edge + 1));
  return c;
}

BlockBandOperator corner(const BlockBandOperator& a, Quadrant q) {
  const int d = a.fibre_dim();
  const std::int64_t hp = a.convention() == Convention::kKernelPlus ? 0 : 1;
  BlockBandOperator c(d, a.convention(), a.n0());
  std::int64_t edge = 0;
  for (int k : a.band_indices()) {
    const BandEntry* ea = a.band(k);
    IndexWindow win;
    switch (q) {
      case Quadrant::kPP:
        win = IndexWindow::at_least(std::max<std::int64_t>(hp, hp - k));
        break;
      case Quadrant::kPM:
        win = IndexWindow::between(hp - k, -1);
        break;
      case Quadrant::kMP:
        win = IndexWindow::between(hp, -1 - k);
        break;
      case Quadrant::kMM:
        win = IndexWindow::at_most(std::min<std::int64_t>(-1, -1 - k));
        break;
    }
    IndexWindow support = ea->support.intersect(win);
    if (support.empty()) continue;
    BandEntry e;
    e.eval = ea->eval;
    e.support = support;
    if (unbounded(support, Ray::kPlus)) e.plus = ea->plus;
    if (unbounded(support, Ray::kMinus)) e.minus = ea->minus;
    edge = std::max(edge, support.edge_radius());
    c.set_band(k, std::move(e));
  }
  c.set_n0(edge + 1);
  return c;
}

BlockBandOperator log_weight_commutator(const DiagonalWeight& q,
                                        const BlockBandOperator& a,
                                        int depth) {
  const int d = a.fibre_dim();
  const int w = a.bandwidth();
  BlockBandOperator c(d, a.convention(),
                      std::max(a.n0(), q.n0() + static_cast<std::int64_t>(w)));
  for (int k : a.band_indices()) {
    if (k == 0) continue;  // log Q is diagonal: no contribution
    const BandEntry* ea = a.band(k);
    BandEntry e;
    auto f = ea->eval;
    IndexWindow wa = ea->support;
    const Convention conv = a.convention();
    DiagonalWeight qq = q;
    e.eval = [f, wa, d, conv, k, qq](std::int64_t n) {
      BandEntry tmp;
      tmp.eval = f;
      tmp.support = wa;
      Mat v = eval_band_entry(tmp, d, conv, k, n);
      if (v.isZero(0.0)) return v;
      return Mat((qq.log_mu(n + k) - qq.log_mu(n)) * v);
    };
    e.support = wa;
    for (Ray r : {Ray::kPlus, Ray::kMinus}) {
      if (!unbounded(wa, r)) continue;
      const double delta = (r == Ray::kPlus) ? k : -k;
      // log mu_{n+k} - log mu_n = q log(|n+k|/|n|)
      //                           + lambda(|n+k|) - lambda(|n|)
      ScalarSeries dl =
          log_shift_series(delta, depth).scaled(cplx(q.order(), 0.0)) +
          q.log_correction(r).reexpanded(delta, depth) - q.log_correction(r);
      MatSeries s =
          scale_mat_series(r == Ray::kPlus ? ea->plus : ea->minus, dl);
      (r == Ray::kPlus ? e.plus : e.minus) = std::move(s);
    }
    c.set_band(k, std::move(e));
  }
  return c;
}

BlockBandOperator log_weight_difference(const DiagonalWeight& q1,
                                        const DiagonalWeight& q2, int d,
                                        Convention c) {
  if (std::abs(q1.order() - q2.order()) > 1e-12)
    throw std::invalid_argument(
        "log_weight_difference: weights must have equal order");
  BlockBandOperator a(d, c, std::max(q1.n0(), q2.n0()));
  BandEntry e;
  DiagonalWeight w1 = q1, w2 = q2;
  e.eval = [w1, w2, d](std::int64_t n) {
    return Mat((w1.log_mu(n) - w2.log_mu(n)) * Mat::Identity(d, d));
  };
  for (Ray r : {Ray::kPlus, Ray::kMinus}) {
    ScalarSeries dl = q1.log_correction(r) - q2.log_correction(r);
    (r == Ray::kPlus ? e.plus : e.minus) =
        mat_series_from_scalar(dl, Mat::Identity(d, d));
  }
  a.set_band(0, std::move(e));
  return a;
}

BlockBandOperator shift_conjugate(const BlockBandOperator& a, std::int64_t k,
                                  int depth) {
  if (a.convention() != Convention::kKernelPlus)
    throw std::invalid_argument(
        "shift_conjugate: mode shifts do not preserve the kernel-excluded "
        "lattice");
  const int d = a.fibre_dim();
  BlockBandOperator c(d, a.convention(), 0);
  std::int64_t edge = 0;
  for (int kappa : a.band_indices()) {
    const BandEntry* ea = a.band(kappa);
    BandEntry e;
    auto f = ea->eval;
    IndexWindow wa = ea->support;
    const Convention conv = a.convention();
    e.eval = [f, wa, d, conv, kappa, k](std::int64_t n) {
      BandEntry tmp;
      tmp.eval = f;
      tmp.support = wa;
      return eval_band_entry(tmp, d, conv, kappa, n - k);
    };
    e.support = wa.shifted(k);
    if (unbounded(e.support, Ray::kPlus))
      e.plus = ea->plus.reexpanded(static_cast<double>(-k), depth);
    if (unbounded(e.support, Ray::kMinus))
      e.minus = ea->minus.reexpanded(static_cast<double>(k), depth);
    edge = std::max(edge, e.support.edge_radius());
    c.set_band(kappa, std::move(e));
  }
  c.set_n0(std::max(a.n0() + static_cast<std::int64_t>(std::llabs(k)),
                    edge + 1));
  return c;
}

BlockBandOperator fibre_conjugate(const BlockBandOperator& a, const Mat& s) {
  const int d = a.fibre_dim();
  if (s.rows() != d || s.cols() != d)
    throw std::invalid_argument("fibre_conjugate: size mismatch");
  Eigen::FullPivLU<Mat> lu(s);
  if (!lu.isInvertible())
    throw std::invalid_argument("fibre_conjugate: matrix not invertible");
  Mat sinv = lu.inverse();
  BlockBandOperator c(d, a.convention(), a.n0());
  for (int k : a.band_indices()) {
    const BandEntry* ea = a.band(k);
    BandEntry e;
    auto f = ea->eval;
    IndexWindow wa = ea->support;
    const Convention conv = a.convention();
    Mat ss = s, si = sinv;
    e.eval = [f, wa, d, conv, k, ss, si](std::int64_t n) {
      BandEntry tmp;
      tmp.eval = f;
      tmp.support = wa;
      return Mat(ss * eval_band_entry(tmp, d, conv, k, n) * si);
    };
    e.support = wa;
    auto conj_series = [&ss, &si](const MatSeries& m) {
      MatSeries r;
      r.raise_err(m.err());
      for (const auto& t : m.terms()) r.add_term(t.e, t.p, Mat(ss * t.c * si));
      return r;
    };
    e.plus = conj_series(ea->plus);
    e.minus = conj_series(ea->minus);
    c.set_band(k, std::move(e));
  }
  return c;
}

Mat truncate_dense(const BlockBandOperator& a, std::int64_t m_cut) {
  const int d = a.fibre_dim();
  const std::int64_t size = (2 * m_cut + 1) * d;
  Mat out = Mat::Zero(size, size);
  for (int k : a.band_indices()) {
    const std::int64_t lo = std::max(-m_cut, -m_cut - k);
    const std::int64_t hi = std::min(m_cut, m_cut - k);
    for (std::int64_t n = lo; n <= hi; ++n) {
      Mat block = a.entry(k, n);
      if (block.isZero(0.0)) continue;
      out.block((n + k + m_cut) * d, (n + m_cut) * d, d, d) = block;
    }
  }
  return out;
}

void dense_to_csv(const Mat& m, std::ostream& os) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << m(i, j).real() << (m(i, j).imag() < 0 ? "" : "+") << m(i, j).imag()
         << 'i';
    }
    os << '\n';
  }
}

HsNorm hs_norm_squared(const BlockBandOperator& a, std::int64_t head) {
  double total = 0.0;
  for (int k : a.band_indices()) {
    const BandEntry* e = a.band(k);
    const IndexWindow& w = e->support;
    if (w.empty()) continue;
    if (w.finite()) {
      for (std::int64_t n = *w.lo; n <= *w.hi; ++n)
        total += a.entry(k, n).squaredNorm();
      continue;
    }
    for (Ray r : {Ray::kPlus, Ray::kMinus}) {
      if (!unbounded(w, r)) continue;
      const MatSeries& s = (r == Ray::kPlus) ? e->plus : e->minus;
      if (s.is_zero() && s.exact()) continue;
      if (2.0 * s.mag() >= -1.0 - 1e-12) return {0.0, false};
    }
    const std::int64_t big =
        std::max({a.n0(), head, w.edge_radius(),
                  static_cast<std::int64_t>(std::abs(k)) + 1});
    const std::int64_t lo = w.lo ? *w.lo : -big;
    const std::int64_t hi = w.hi ? *w.hi : big;
    for (std::int64_t n = lo; n <= hi; ++n)
      total += a.entry(k, n).squaredNorm();
    for (Ray r : {Ray::kPlus, Ray::kMinus}) {
      if (!unbounded(w, r)) continue;
      const MatSeries& s = (r == Ray::kPlus) ? e->plus : e->minus;
      if (s.is_zero()) continue;
      ScalarSeries fr = frobenius_square_series(s);
      for (const auto& t : fr.terms())
        total += t.c.real() * hurwitz_zeta(-t.e, static_cast<double>(big) + 1.0);
    }
  }
  return {total, true};
}

}  // namespace wtrace
