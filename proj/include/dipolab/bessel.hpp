#pragma once

namespace dipolab::radial {

// J_nu(x) for nu >= 0, x >= 0, by the ascending power series with the term
// count adapted until the truncation error is below 1e-12 relative.  The
// series is summed in extended precision; past x ~ 30 the alternating-sum
// cancellation starts to erode the result, so callers should stay in the
// moderate-argument regime (all uses here have x < 15).
double bessel_j(double nu, double x);

// n-th positive root of J_nu (n >= 1), bracketed by a fixed-step scan and
// polished by bisection to 1e-12 absolute.
double bessel_j_zero(double nu, int n);

}  // namespace dipolab::radial
