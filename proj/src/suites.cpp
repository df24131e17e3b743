// Assembly and execution of the named verification suites. Every check is a
// closure producing a (lhs, rhs) pair; the runner times it, measures the
// deviation and applies the tolerance. Corpora are fixed (no run-to-run
// randomness), so numeric fields are reproducible bit for bit.
#include "wtrace/suites.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "wtrace/cocycles.hpp"
#include "wtrace/loop_geometry.hpp"
#include "wtrace/symbol.hpp"

namespace wtrace {

namespace {

struct Check {
  std::string id;
  std::string anchor;
  double tol;
  std::function<std::pair<cplx, cplx>()> eval;
};

struct Ctx {
  SuiteConfig cfg;
  AlgebraPtr alg;
  Convention conv;
  DiagonalWeight lap = DiagonalWeight::laplace_plus();
  DiagonalWeight absd = DiagonalWeight::abs_d_plus();
  DiagonalWeight sq = DiagonalWeight::shifted_sq();
  DiagonalWeight lp1 = DiagonalWeight::laplace_plus_one();
};

Mat m1(cplx v) {
  Mat m(1, 1);
  m(0, 0) = v;
  return m;
}

Vec bas(const Ctx& c, int i) { return c.alg->basis(i % c.alg->dim()); }

LoopElement mono(const Ctx& c, int mode, int basis) {
  return LoopElement::monomial(c.alg, mode, bas(c, basis));
}

// fixed scalar operator corpus (fibre dimension 1)
std::vector<BlockBandOperator> scalar_corpus(const Ctx& c) {
  const Convention v = c.conv;
  std::vector<BlockBandOperator> ops;
  ops.push_back(scalar_multiplier({{1, 1.0}}, 1, v));
  ops.push_back(
      scalar_multiplier({{-1, cplx(0.5, 0.25)}, {2, cplx(0.0, 1.0)}}, 1, v));
  ops.push_back(
      compose(epsilon_sign(1, v), scalar_multiplier({{1, 1.0}}, 1, v)));
  ops.push_back(compose(scalar_multiplier({{-1, 1.0}}, 1, v), d0_op(1, v)));
  ops.push_back(compose(scalar_multiplier({{2, cplx(0.3, -0.4)}}, 1, v),
                        weight_power(c.absd, -1.0, 1, v)));
  return ops;
}

void push(std::vector<Check>& v, std::string id, std::string anchor,
          double tol, std::function<std::pair<cplx, cplx>()> f) {
  v.push_back(Check{std::move(id), std::move(anchor), tol, std::move(f)});
}

std::vector<Check> traces_checks(const Ctx& c) {
  const Convention v = c.conv;
  const int depth = c.cfg.depth;
  const double te = c.cfg.tol_engine;
  std::vector<Check> out;
  push(out, "traces/kernel_weight_identity", "tr^{D^2+P}(Id) = 0", te,
       [c, v] {
         return std::pair<cplx, cplx>(
             weighted_trace(identity_op(1, v), c.lap), 0.0);
       });
  push(out, "traces/residue_modes", "res(|D+P|^{-1}) = 2", te, [c, v] {
    return std::pair<cplx, cplx>(
        wres_from_modes(weight_power(c.absd, -1.0, 1, v), c.lap), 2.0);
  });
  push(out, "traces/residue_symbol_route",
       "mode-side res(|D+P|^{-1}) = symbol-side res", te, [c, v] {
         BlockBandOperator a = weight_power(c.absd, -1.0, 1, v);
         return std::pair<cplx, cplx>(
             wodzicki_residue_symbol(operator_to_symbol(a)),
             wres_from_modes(a, c.lap));
       });
  push(out, "traces/residue_matrix_fibre", "res(|D+P|^{-1} Id_2) = 4", te,
       [c, v] {
         return std::pair<cplx, cplx>(
             wres_from_modes(weight_power(c.absd, -1.0, 2, v), c.lap), 4.0);
       });
  push(out, "traces/canonical_trace_commutator",
       "TR[A, B] = 0 for non-integer total order", te, [c, v, depth] {
         BlockBandOperator a = compose(weight_power(c.absd, 0.3, 1, v),
                                       scalar_multiplier({{1, 1.0}}, 1, v));
         BlockBandOperator b = compose(scalar_multiplier({{-1, 1.0}}, 1, v),
                                       weight_power(c.absd, 0.4, 1, v));
         return std::pair<cplx, cplx>(
             canonical_trace(commutator(a, b, depth)), 0.0);
       });
  push(out, "traces/weight_dependence",
       "tr^{Q1}A - tr^{Q2}A = -res(A (log Q1 - log Q2))/q", te, [c, v] {
         BlockBandOperator a = weight_power(c.lap, -0.5, 1, v);
         CheckPair wp = weight_dependence(a, c.lap, c.sq);
         return std::pair<cplx, cplx>(wp.lhs, wp.rhs);
       });
  push(out, "traces/covariance_shift",
       "tr^{S^{-1}QS}(A) = tr^Q(S A S^{-1})", te, [c, v] {
         BlockBandOperator a =
             add(compose(scalar_multiplier({{-1, 1.0}}, 1, v), d0_op(1, v)),
                 weight_power(c.absd, -1.0, 1, v));
         CheckPair cp = covariance_shift(a, c.lap, 2);
         return std::pair<cplx, cplx>(cp.lhs, cp.rhs);
       });
  push(out, "traces/covariance_fibre",
       "tr^Q(A) = tr^Q(S A S^{-1}) for constant fibre S", te, [c, v] {
         Mat f0(2, 2), f1(2, 2), s(2, 2);
         f0 << cplx(1.0), cplx(0.0, 1.0), cplx(0.5), cplx(-1.0);
         f1 << cplx(0.0), cplx(1.0), cplx(1.0), cplx(0.0);
         s << cplx(1.0), cplx(0.0, 0.5), cplx(0.0), cplx(2.0);
         BlockBandOperator a = compose(
             weight_power(c.absd, -1.0, 2, v),
             multiplier(std::map<int, Mat>{{0, f0}, {1, f1}}, v));
         CheckPair cf = covariance_fibre(a, c.lap, s);
         return std::pair<cplx, cplx>(cf.lhs, cf.rhs);
       });
  push(out, "traces/trace_class_pinned",
       "tr^Q(|D+P|^{-3}) = 1 + 2 zeta(3)", te, [c, v] {
         return std::pair<cplx, cplx>(
             weighted_trace(weight_power(c.absd, -3.0, 1, v), c.lap),
             1.0 + 2.0 * std::riemann_zeta(3.0));
       });
  return out;
}

std::vector<Check> radul_checks(const Ctx& c) {
  const Convention v = c.conv;
  const int depth = c.cfg.depth;
  const double te = c.cfg.tol_engine;
  std::vector<Check> out;
  auto em = [c, v] {
    return compose(epsilon_sign(1, v), scalar_multiplier({{1, 1.0}}, 1, v));
  };
  auto md = [c, v] {
    return compose(scalar_multiplier({{-1, 1.0}}, 1, v), d0_op(1, v));
  };
  push(out, "radul/pinned_trace_route", "c_R(eps M_z, M_{1/z} D0) = -1", te,
       [c, em, md] {
         return std::pair<cplx, cplx>(radul_trace_route(em(), md(), c.lap),
                                      -1.0);
       });
  push(out, "radul/pinned_residue_route",
       "-res([log Q, eps M_z] M_{1/z} D0)/q = -1", te, [c, em, md] {
         return std::pair<cplx, cplx>(radul_residue_route(em(), md(), c.lap),
                                      -1.0);
       });
  push(out, "radul/pinned_matrix_fibre",
       "c_R(eps M_z, M_{1/z} D0) = -2 on a 2-dim fibre", te, [c, v] {
         BlockBandOperator a =
             compose(epsilon_sign(2, v), scalar_multiplier({{1, 1.0}}, 2, v));
         BlockBandOperator b =
             compose(scalar_multiplier({{-1, 1.0}}, 2, v), d0_op(2, v));
         return std::pair<cplx, cplx>(radul_trace_route(a, b, c.lap), -2.0);
       });
  push(out, "radul/dual_routes",
       "tr^Q[A,B] = -(1/q) res([log Q, A] B) over the corpus", te, [c] {
         auto ops = scalar_corpus(c);
         double dev = 0.0;
         for (std::size_t i = 0; i < ops.size(); ++i) {
           for (std::size_t j = i + 1; j < ops.size(); ++j) {
             dev = std::max(
                 dev, std::abs(radul_trace_route(ops[i], ops[j], c.lap) -
                               radul_residue_route(ops[i], ops[j], c.lap)));
           }
         }
         return std::pair<cplx, cplx>(dev, 0.0);
       });
  push(out, "radul/antisymmetry", "c_R(A,B) + c_R(B,A) = 0", te, [c] {
    auto ops = scalar_corpus(c);
    double dev = 0.0;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      for (std::size_t j = i + 1; j < ops.size(); ++j) {
        dev = std::max(dev,
                       std::abs(radul_residue_route(ops[i], ops[j], c.lap) +
                                radul_residue_route(ops[j], ops[i], c.lap)));
      }
    }
    return std::pair<cplx, cplx>(dev, 0.0);
  });
  push(out, "radul/weight_change",
       "c_R^{Q1} - c_R^{Q2} = coboundary of the residue cochain", te,
       [c, depth] {
         auto ops = scalar_corpus(c);
         double dev = 0.0;
         const std::size_t pairs[3][2] = {{0, 3}, {2, 3}, {1, 4}};
         for (const auto& p : pairs) {
           cplx lhs = radul_trace_route(ops[p[0]], ops[p[1]], c.lap) -
                      radul_trace_route(ops[p[0]], ops[p[1]], c.sq);
           cplx rhs = weight_dependence(commutator(ops[p[0]], ops[p[1]], depth),
                                        c.lap, c.sq)
                          .rhs;
           dev = std::max(dev, std::abs(lhs - rhs));
         }
         return std::pair<cplx, cplx>(dev, 0.0);
       });
  push(out, "radul/sign_weight_commute", "c_R(eps, A) = 0", te, [c, v] {
    BlockBandOperator eps = epsilon_sign(1, v);
    BlockBandOperator a = compose(scalar_multiplier({{2, cplx(0.3, -0.4)}}, 1, v),
                                  weight_power(c.absd, -1.0, 1, v));
    double dev = std::max(std::abs(radul_trace_route(eps, a, c.lap)),
                          std::abs(radul_residue_route(eps, a, c.lap)));
    return std::pair<cplx, cplx>(dev, 0.0);
  });
  push(out, "radul/cocycle_law",
       "c_R([x,y],z) - c_R([x,z],y) + c_R([y,z],x) = 0", te, [c, depth] {
         auto ops = scalar_corpus(c);
         OpBilinear cr = [c](const BlockBandOperator& a,
                             const BlockBandOperator& b) {
           return radul_trace_route(a, b, c.lap);
         };
         return std::pair<cplx, cplx>(
             coboundary2(cr, ops[0], ops[2], ops[3], depth), 0.0);
       });
  return out;
}

std::vector<Check> schwinger_checks(const Ctx& c) {
  const Convention v = c.conv;
  const int depth = c.cfg.depth;
  const double te = c.cfg.tol_engine;
  std::vector<Check> out;
  for (int n = 1; n <= 3; ++n) {
    push(out, "schwinger/pinned_n" + std::to_string(n),
         "c_S(M_{z^" + std::to_string(n) + "}, M_{z^-" + std::to_string(n) +
             "}) = -" + std::to_string(2 * n),
         te, [c, v, n] {
           BlockBandOperator a =
               scalar_multiplier({{n, 1.0}}, 1, v);
           BlockBandOperator b =
               scalar_multiplier({{-n, 1.0}}, 1, v);
           return std::pair<cplx, cplx>(schwinger(a, b, c.lap), -2.0 * n);
         });
  }
  push(out, "schwinger/finite_rank_dense",
       "c_S = (1/2) tr(eps [eps,A] [eps,B]) on finite rank", te, [c, v] {
         std::map<std::pair<std::int64_t, std::int64_t>, Mat> e1{
             {{2, -1}, m1(1.0)}, {{0, 0}, m1(cplx(0.0, 1.0))}};
         std::map<std::pair<std::int64_t, std::int64_t>, Mat> e2{
             {{-1, 2}, m1(cplx(1.0, -1.0))}, {{3, 3}, m1(0.5)}};
         BlockBandOperator a = finite_rank_op(1, v, e1);
         BlockBandOperator b = finite_rank_op(1, v, e2);
         Mat ea = truncate_dense(a, 8), eb = truncate_dense(b, 8);
         Mat ee = truncate_dense(epsilon_sign(1, v), 8);
         Mat ca = ee * ea - ea * ee, cb = ee * eb - eb * ee;
         return std::pair<cplx, cplx>(schwinger(a, b, c.lap),
                                      0.5 * (ee * ca * cb).trace());
       });
  push(out, "schwinger/left_route", "c_S(A,B) = tr^Q([A, eps] B)", te,
       [c, v, depth] {
         auto ops = scalar_corpus(c);
         BlockBandOperator eps = epsilon_sign(1, v);
         double dev = 0.0;
         const std::size_t pick[3][2] = {{0, 1}, {2, 3}, {1, 4}};
         for (const auto& p : pick) {
           cplx lhs = schwinger(ops[p[0]], ops[p[1]], c.lap);
           cplx rhs = weighted_trace(
               compose(commutator(ops[p[0]], eps, depth), ops[p[1]], depth),
               c.lap);
           dev = std::max(dev, std::abs(lhs - rhs));
         }
         return std::pair<cplx, cplx>(dev, 0.0);
       });
  push(out, "schwinger/right_route", "c_S(A,B) = tr^Q(A [eps, B])", te,
       [c, v, depth] {
         auto ops = scalar_corpus(c);
         BlockBandOperator eps = epsilon_sign(1, v);
         double dev = 0.0;
         const std::size_t pick[3][2] = {{0, 3}, {2, 1}, {4, 0}};
         for (const auto& p : pick) {
           cplx lhs = schwinger(ops[p[0]], ops[p[1]], c.lap);
           cplx rhs = weighted_trace(
               compose(ops[p[0]], commutator(eps, ops[p[1]], depth), depth),
               c.lap);
           dev = std::max(dev, std::abs(lhs - rhs));
         }
         return std::pair<cplx, cplx>(dev, 0.0);
       });
  push(out, "schwinger/twisted_exchange",
       "tr^Q([eps A, B]) = -tr^Q([B eps, A])", te, [c] {
         auto ops = scalar_corpus(c);
         double dev = 0.0;
         for (std::size_t i = 0; i < ops.size(); ++i) {
           for (std::size_t j = i + 1; j < ops.size(); ++j) {
             dev = std::max(dev,
                            std::abs(twisted_radul(ops[i], ops[j], c.lap) +
                                     twisted_radul_flip(ops[j], ops[i], c.lap)));
           }
         }
         return std::pair<cplx, cplx>(dev, 0.0);
       });
  push(out, "schwinger/exchange_defect",
       "c_TR(A,B) = -c_TR(B,A) - res(eps [A, [log Q, B]])/q, both sides "
       "nonzero",
       te, [c, v] {
         BlockBandOperator a = compose(scalar_multiplier({{1, 1.0}}, 1, v),
                                       weight_power(c.absd, 1.4, 1, v));
         BlockBandOperator b = compose(scalar_multiplier({{-1, 1.0}}, 1, v),
                                       weight_power(c.absd, 0.6, 1, v));
         cplx lhs = twisted_radul(a, b, c.absd);
         cplx rhs = -twisted_radul(b, a, c.absd) -
                    obstruction_residue(a, b, c.absd) / c.absd.order();
         return std::pair<cplx, cplx>(lhs, rhs);
       });
  push(out, "schwinger/obstruction_vanishes",
       "res(eps [A, [log Q, B]]) = 0: band-zero parts are exact finite "
       "differences of classical expansions",
       te, [c, v] {
         BlockBandOperator a1 = compose(scalar_multiplier({{1, 1.0}}, 1, v),
                                        weight_power(c.absd, 1.4, 1, v));
         BlockBandOperator b1 = compose(scalar_multiplier({{-1, 1.0}}, 1, v),
                                        weight_power(c.absd, 0.6, 1, v));
         BlockBandOperator a2 = compose(
             epsilon_sign(1, v), compose(scalar_multiplier({{2, 1.0}}, 1, v),
                                         weight_power(c.absd, 0.65, 1, v)));
         BlockBandOperator b2 = compose(scalar_multiplier({{-2, 1.0}}, 1, v),
                                        weight_power(c.absd, 0.35, 1, v));
         double dev = std::max(std::abs(obstruction_residue(a1, b1, c.absd)),
                               std::abs(obstruction_residue(a2, b2, c.absd)));
         return std::pair<cplx, cplx>(dev, 0.0);
       });
  return out;
}

std::vector<Check> lambda_checks(const Ctx& c) {
  const Convention v = c.conv;
  const double tx = 1e-12;  // finite-rank traces, exact
  std::vector<Check> out;
  for (int n = 1; n <= 5; ++n) {
    for (int i = 0; i < 3; ++i) {
      push(out,
           "lambda/diag_n" + std::to_string(n) + "_e" + std::to_string(i),
           "lambda(ad_{z^n a}, ad_{z^-n a}) = n <a,a>", tx, [c, v, n, i] {
             Vec a = bas(c, i);
             cplx want =
                 static_cast<double>(n) * c.alg->killing_inner(a, a);
             return std::pair<cplx, cplx>(
                 polarization_cocycle(
                     ad_operator(LoopElement::monomial(c.alg, n, a), v),
                     ad_operator(LoopElement::monomial(c.alg, -n, a), v),
                     c.absd),
                 want);
           });
    }
  }
  push(out, "lambda/mode_mismatch", "lambda(ad_{z a}, ad_{z^-2 b}) = 0", tx,
       [c, v] {
         return std::pair<cplx, cplx>(
             polarization_cocycle(ad_operator(mono(c, 1, 0), v),
                                  ad_operator(mono(c, -2, 0), v), c.absd),
             0.0);
       });
  push(out, "lambda/killing_orthogonal",
       "lambda(ad_{z a}, ad_{z^-1 b}) = <a,b> = 0 for orthogonal a, b", tx,
       [c, v] {
         return std::pair<cplx, cplx>(
             polarization_cocycle(ad_operator(mono(c, 1, 0), v),
                                  ad_operator(mono(c, -1, 1), v), c.absd),
             0.0);
       });
  push(out, "lambda/hs_route",
       "tr^Q([A_++, B_++] - [A,B]_++) = tr^Q(B_+- A_-+ - A_+- B_-+)",
       c.cfg.tol_engine, [c, v] {
         double dev = 0.0;
         const int pairs[3][2] = {{1, -1}, {2, -2}, {3, -3}};
         for (const auto& p : pairs) {
           BlockBandOperator a =
               ad_operator(mono(c, p[0], p[0] % 3), v);
           BlockBandOperator b =
               ad_operator(mono(c, p[1], (p[0] + 1) % 3), v);
           dev = std::max(dev, std::abs(polarization_cocycle(a, b, c.absd) -
                                        polarization_hs_route(a, b, c.absd)));
         }
         return std::pair<cplx, cplx>(dev, 0.0);
       });
  for (int k = 0; k < 2; ++k) {
    push(out, "lambda/symplectic_bridge_" + std::to_string(k),
         "lambda(ad_X, ad_Y) = -i omega(X, Y)", c.cfg.tol_engine, [c, v, k] {
           LoopElement x(c.alg), y(c.alg);
           if (k == 0) {
             x.add(1, bas(c, 0));
             x.add(2, Vec(cplx(0.5, 0.5) * bas(c, 1)));
             y.add(-1, bas(c, 0));
             y.add(-2, Vec(cplx(0.0, 0.25) * bas(c, 2)));
           } else {
             x.add(2, Vec(cplx(0.3, -0.2) * bas(c, 2)));
             x.add(-1, Vec(0.1 * bas(c, 1)));
             y.add(1, Vec(cplx(0.0, 0.7) * bas(c, 1)));
             y.add(-3, Vec(bas(c, 0) + 0.5 * bas(c, 2)));
           }
           return std::pair<cplx, cplx>(
               polarization_cocycle(ad_operator(x, v), ad_operator(y, v),
                                    c.absd),
               cplx(0.0, -1.0) * symplectic_form(x, y));
         });
  }
  return out;
}

std::vector<Check> loopgeom_checks(const Ctx& c) {
  const Convention v = c.conv;
  const double te = c.cfg.tol_engine;
  const std::int64_t mfit = std::max<std::int64_t>(c.cfg.truncation, 256);
  const GeometryConfig g05{0.5, v, c.cfg.depth};
  const GeometryConfig g10{1.0, v, c.cfg.depth};
  const GeometryConfig g025{0.25, v, c.cfg.depth};
  std::vector<Check> out;
  push(out, "loopgeom/theta_dual_route",
       "closed band form of theta^s = (ad + W^{-s} ad W^s - W^{-s} ad(W^s .)) / 2",
       1e-12, [c, v, g05] {
         LoopElement u(c.alg);
         u.add(1, bas(c, 0));
         u.add(-2, Vec(cplx(0.3, 0.7) * bas(c, 1)));
         u.add(0, Vec(cplx(0.2, -0.1) * bas(c, 2)));
         BlockBandOperator a = connection_operator(u, g05);
         BlockBandOperator b = connection_operator_composed(u, g05);
         double dev = 0.0;
         for (int k : {-2, 0, 1}) {
           for (std::int64_t n :
                {-129L, -40L, -3L, -1L, 0L, 1L, 3L, 40L, 129L}) {
             dev = std::max(dev, (a.entry(k, n) - b.entry(k, n)).norm());
           }
         }
         return std::pair<cplx, cplx>(dev, 0.0);
       });
  push(out, "loopgeom/ricci_half_pinned",
       "Ricci^{1/2}(z e1, z^{-1} e1) = 1", te, [c, g05] {
         return std::pair<cplx, cplx>(
             ricci_weighted(mono(c, 1, 0), mono(c, -1, 0), c.lap, g05), 1.0);
       });
  push(out, "loopgeom/ricci_one_pinned",
       "Ricci^{1}(z e1, z^{-1} e1) = -3", te, [c, g10] {
         return std::pair<cplx, cplx>(
             ricci_weighted(mono(c, 1, 0), mono(c, -1, 0), c.lap, g10),
             -3.0);
       });
  push(out, "loopgeom/ricci_dense_route",
       "Richardson-extrapolated head sums reach the zeta value",
       10.0 * c.cfg.tol_extrap, [c, g05] {
         return std::pair<cplx, cplx>(
             ricci_extrapolated(mono(c, 1, 0), mono(c, -1, 0), g05,
                                std::max<std::int64_t>(c.cfg.truncation, 64)),
             1.0);
       });
  push(out, "loopgeom/ricci_weight_free",
       "Ricci^{1} agrees across odd-class weights", 10.0 * te, [c, g10] {
         return std::pair<cplx, cplx>(
             ricci_weighted(mono(c, 1, 2), mono(c, -1, 2), c.lap, g10),
             ricci_weighted(mono(c, 1, 2), mono(c, -1, 2), c.lp1, g10));
       });
  push(out, "loopgeom/riemann_residue_zero", "res(R^s(X, Y)) = 0", 10.0 * te,
       [c, g05] {
         return std::pair<cplx, cplx>(
             wres_from_modes(riemann_operator(mono(c, 1, 0), mono(c, -1, 1),
                                              g05),
                             c.lap),
             0.0);
       });
  push(out, "loopgeom/order_entry_fit", "R^{1/2}(X, Y) has order -1", 0.05,
       [c, g05, mfit] {
         LoopElement y =
             LoopElement::monomial(c.alg, -1, Vec(bas(c, 0) + bas(c, 1)));
         BlockBandOperator r = riemann_operator(mono(c, 1, 0), y, g05);
         return std::pair<cplx, cplx>(
             order_estimate(r, 0, mfit, Ray::kMinus), -1.0);
       });
  push(out, "loopgeom/order_trace_fit_quarter",
       "fibre trace of R^s decays with order -2 min(1, 2s), s = 1/4", 0.05,
       [c, g025, mfit] {
         LoopElement y =
             LoopElement::monomial(c.alg, -1, Vec(bas(c, 0) + bas(c, 1)));
         BlockBandOperator r = riemann_operator(mono(c, 1, 0), y, g025);
         double t1 = std::abs(r.entry(0, mfit).trace());
         double t2 = std::abs(r.entry(0, 2 * mfit).trace());
         return std::pair<cplx, cplx>(std::log2(t2 / t1), -1.0);
       });
  push(out, "loopgeom/order_trace_fit_half",
       "fibre trace of R^s decays with order -2 min(1, 2s), s = 1/2", 0.05,
       [c, g05, mfit] {
         LoopElement y =
             LoopElement::monomial(c.alg, -1, Vec(bas(c, 0) + bas(c, 1)));
         BlockBandOperator r = riemann_operator(mono(c, 1, 0), y, g05);
         double t1 = std::abs(r.entry(0, -mfit).trace());
         double t2 = std::abs(r.entry(0, -2 * mfit).trace());
         return std::pair<cplx, cplx>(std::log2(t2 / t1), -2.0);
       });
  push(out, "loopgeom/order_trace_fit_curvature_form",
       "fibre trace of Omega^{1/2}(U, V) decays with order -2", 0.05,
       [c, g05, mfit] {
         LoopElement y =
             LoopElement::monomial(c.alg, -1, Vec(bas(c, 0) + bas(c, 1)));
         BlockBandOperator om = curvature_operator(mono(c, 1, 0), y, g05);
         double t1 = std::abs(om.entry(0, mfit).trace());
         double t2 = std::abs(om.entry(0, 2 * mfit).trace());
         return std::pair<cplx, cplx>(std::log2(t2 / t1), -2.0);
       });
  push(out, "loopgeom/compression_trace_free", "tr^Q(phi(Z)) = 0", te,
       [c, g05] {
         double dev = 0.0;
         for (const LoopElement& z :
              {mono(c, 1, 0), mono(c, 0, 1), mono(c, -2, 2)}) {
           dev = std::max(
               dev,
               std::abs(weighted_trace(grassmann_connection(z, g05), c.lap)));
         }
         return std::pair<cplx, cplx>(dev, 0.0);
       });
  push(out, "loopgeom/cochain_closed",
       "lambda(ad_[x,y], ad_z) - lambda(ad_[x,z], ad_y) + lambda(ad_[y,z], "
       "ad_x) = 0",
       1e-12, [c, v] {
         LoopElement x(c.alg), y(c.alg), z(c.alg);
         x.add(1, bas(c, 0));
         x.add(-1, bas(c, 1));
         y.add(2, bas(c, 2));
         y.add(0, Vec(0.3 * bas(c, 0)));
         z.add(-2, Vec(cplx(0.4, 0.1) * bas(c, 1)));
         z.add(1, bas(c, 2));
         auto lam = [&](const LoopElement& p, const LoopElement& q) {
           return polarization_cocycle(ad_operator(p, v), ad_operator(q, v),
                                       c.absd);
         };
         cplx val = lam(loop_bracket(x, y), z) - lam(loop_bracket(x, z), y) +
                    lam(loop_bracket(y, z), x);
         return std::pair<cplx, cplx>(val, 0.0);
       });
  push(out, "loopgeom/corner_hs_count",
       "|(ad_X)_{+-}|_HS^2 = sum_{k>0} k |ad a_k|_F^2", 1e-12, [c, v] {
         LoopElement x(c.alg);
         x.add(1, Vec(bas(c, 0) + cplx(0.0, 0.5) * bas(c, 1)));
         x.add(3, Vec(cplx(0.2, 0.4) * bas(c, 2)));
         x.add(-2, Vec(cplx(1.0, -1.0) * bas(c, 1)));
         double want = 0.0;
         for (const auto& [k, a] : x.coefficients()) {
           if (k > 0) want += static_cast<double>(k) *
                              c.alg->ad(a).squaredNorm();
         }
         return std::pair<cplx, cplx>(corner_hs_plus_minus(x, v), want);
       });
  return out;
}

std::vector<Check> chern_checks(const Ctx& c) {
  const Convention v = c.conv;
  const double te = c.cfg.tol_engine;
  const double tx = c.cfg.tol_extrap;
  const GeometryConfig g05{0.5, v, c.cfg.depth};
  std::vector<Check> out;
  for (int n = 1; n <= 3; ++n) {
    push(out, "chern/pinned_n" + std::to_string(n),
         "r1(z^n a, z^-n a) = n <a,a> = " + std::to_string(2 * n), tx,
         [c, g05, n] {
           return std::pair<cplx, cplx>(
               chern_form(mono(c, n, 0), mono(c, -n, 0), c.lap, g05),
               2.0 * n);
         });
  }
  push(out, "chern/killing_orthogonal_zero", "r1(z a, z^{-1} b) = 0", tx,
       [c, g05] {
         return std::pair<cplx, cplx>(
             chern_form(mono(c, 1, 0), mono(c, -1, 1), c.lap, g05), 0.0);
       });
  push(out, "chern/kaehler_form",
       "r1(X, Ybar) = -i omega(X, Ybar) on multi-mode arguments", tx,
       [c, g05] {
         LoopElement x(c.alg), y(c.alg);
         x.add(1, bas(c, 0));
         x.add(3, Vec(cplx(0.2, 0.4) * bas(c, 1)));
         y.add(-1, bas(c, 0));
         y.add(-2, Vec(cplx(0.5, -0.3) * bas(c, 2)));
         return std::pair<cplx, cplx>(
             chern_form(x, y, c.lap, g05),
             cplx(0.0, -1.0) * symplectic_form(x, y));
       });
  push(out, "chern/commutator_split",
       "r1(X, Ybar) = tr^Q([phi X, phi Ybar]) since tr^Q(phi([X,Ybar])) = 0",
       te, [c, g05] {
         LoopElement x = mono(c, 1, 0), y = mono(c, -1, 0);
         return std::pair<cplx, cplx>(
             chern_form(x, y, c.lap, g05),
             radul_trace_route(grassmann_connection(x, g05),
                               grassmann_connection(y, g05), c.lap));
       });
  push(out, "chern/weight_free", "r1 agrees across weights", 10.0 * te,
       [c, g05] {
         LoopElement x = mono(c, 2, 0), y = mono(c, -2, 0);
         return std::pair<cplx, cplx>(chern_form(x, y, c.lap, g05),
                                      chern_form(x, y, c.absd, g05));
       });
  push(out, "chern/truncated_route",
       "Richardson-extrapolated head sums reach the zeta value", 10.0 * tx,
       [c, g05] {
         return std::pair<cplx, cplx>(
             chern_form_truncated(mono(c, 1, 0), mono(c, -1, 0), g05,
                                  std::max<std::int64_t>(c.cfg.truncation,
                                                         64)),
             2.0);
       });
  return out;
}

std::vector<CheckReport> run_checks(const std::vector<Check>& checks,
                                    const SuiteConfig& cfg) {
  std::vector<CheckReport> out(checks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= checks.size()) return;
      const Check& ck = checks[i];
      CheckReport r;
      r.check_id = ck.id;
      r.anchor = ck.anchor;
      r.tol = cfg.tol_override > 0.0 ? cfg.tol_override : ck.tol;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        auto [lhs, rhs] = ck.eval();
        r.lhs = lhs;
        r.rhs = rhs;
        r.abs_err = std::abs(lhs - rhs);
        r.pass = r.abs_err <= r.tol;
      } catch (const std::exception& e) {
        r.abs_err = 9e99;
        r.pass = false;
        r.anchor += std::string(" | error: ") + e.what();
      }
      const auto t1 = std::chrono::steady_clock::now();
      r.runtime_ms =
          std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0)
              .count();
      out[i] = std::move(r);
    }
  };
  int jobs = std::max(1, cfg.jobs);
  jobs = std::min<int>(jobs, static_cast<int>(std::max<std::size_t>(
                                 checks.size(), 1)));
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return out;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"traces", "radul", "schwinger", "lambda", "loopgeom", "chern",
          "all"};
}

std::vector<CheckReport> run_suite(const std::string& name,
                                   const SuiteConfig& config) {
  Ctx c;
  c.cfg = config;
  c.alg = config.algebra
              ? config.algebra
              : std::make_shared<const LieAlgebraData>(LieAlgebraData::su2());
  c.conv = config.convention;
  if (c.alg->dim() < 2) {
    throw std::invalid_argument("algebra must have dimension at least 2");
  }
  if (config.truncation < 16) {
    throw std::invalid_argument("truncation cutoff must be at least 16");
  }
  if (config.depth < 2) {
    throw std::invalid_argument("expansion depth must be at least 2");
  }
  std::vector<Check> checks;
  auto extend = [&checks](std::vector<Check> more) {
    for (auto& ck : more) checks.push_back(std::move(ck));
  };
  if (name == "traces") {
    extend(traces_checks(c));
  } else if (name == "radul") {
    extend(radul_checks(c));
  } else if (name == "schwinger") {
    extend(schwinger_checks(c));
  } else if (name == "lambda") {
    extend(lambda_checks(c));
  } else if (name == "loopgeom") {
    extend(loopgeom_checks(c));
  } else if (name == "chern") {
    extend(chern_checks(c));
  } else if (name == "all") {
    extend(traces_checks(c));
    extend(radul_checks(c));
    extend(schwinger_checks(c));
    extend(lambda_checks(c));
    extend(loopgeom_checks(c));
    extend(chern_checks(c));
  } else {
    throw std::invalid_argument("unknown suite: " + name);
  }
  return run_checks(checks, config);
}

namespace {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

std::string reports_to_json(const std::vector<CheckReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const CheckReport& r : reports) {
    nlohmann::ordered_json j;
    j["check_id"] = r.check_id;
    j["anchor"] = r.anchor;
    j["lhs"] = {r.lhs.real(), r.lhs.imag()};
    j["rhs"] = {r.rhs.real(), r.rhs.imag()};
    j["abs_err"] = r.abs_err;
    j["tol"] = r.tol;
    j["status"] = r.pass ? "pass" : "fail";
    j["runtime_ms"] = r.runtime_ms;
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

std::string reports_to_csv(const std::vector<CheckReport>& reports) {
  std::string out =
      "check_id,anchor,lhs_re,lhs_im,rhs_re,rhs_im,abs_err,tol,status,"
      "runtime_ms\n";
  for (const CheckReport& r : reports) {
    out += r.check_id;
    out += ",\"" + r.anchor + "\",";
    out += fmt_double(r.lhs.real()) + "," + fmt_double(r.lhs.imag()) + ",";
    out += fmt_double(r.rhs.real()) + "," + fmt_double(r.rhs.imag()) + ",";
    out += fmt_double(r.abs_err) + "," + fmt_double(r.tol) + ",";
    out += r.pass ? "pass" : "fail";
    out += "," + std::to_string(r.runtime_ms) + "\n";
  }
  return out;
}

bool all_pass(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const CheckReport& r) { return r.pass; });
}

}  // namespace wtrace
