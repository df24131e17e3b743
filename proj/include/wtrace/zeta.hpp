// Riemann and Hurwitz zeta with s-derivatives by Euler-Maclaurin, plus
// digamma. These drive every analytic continuation in the trace engine;
// nothing else in the repo is allowed to regularize a divergent sum.
#pragma once

namespace wtrace {

// Hurwitz zeta(s, a) for a > 0, s != 1 (throws within 1e-12 of the pole).
double hurwitz_zeta(double s, double a);

// d/ds zeta(s, a).
double hurwitz_zeta_ds(double s, double a);

double riemann_zeta(double s);
double riemann_zeta_ds(double s);

double digamma(double a);

}  // namespace wtrace
