#pragma once

#include <functional>
#include <vector>

#include "multitrace/ensembles.hpp"
#include "multitrace/ncpoly.hpp"
#include "multitrace/rational.hpp"

namespace multitrace {

// Chebyshev series on [-K, K]: f(x) ~ sum_j a[j] T_j(x / K). Equivalently
// the Fourier cosine coefficients of theta -> f(K cos theta).
struct ChebSeries {
  double K = 1.0;
  std::vector<double> a;
  double tail = 0.0;  // declared bound on the dropped coefficient mass

  int degree() const { return static_cast<int>(a.size()) - 1; }
  double eval(double x) const;  // Clenshaw recurrence; |x| <= K
};

// Coefficients of the degree-(M-1) interpolant of h at the
// Chebyshev-Lobatto nodes K cos(pi j / (M-1)). M must be a power of two
// plus one, M >= 17. Throws NumericError on non-finite samples.
ChebSeries cheb_coeffs(const std::function<double(double)>& h, double K, int M);

// Exact basis conversion of h(t) = sum_k mono[k] t^k on [-K, K]; zero
// tail. deg <= 64.
std::vector<Rat> cheb_of_poly(const std::vector<Rat>& mono, const Rat& K);

// sum_{j > q0} |a_j| of the computed interpolant.
double tail_bound(const ChebSeries& s, int q0);
// Drops coefficients above q0 and records the dropped mass in `tail`.
ChebSeries truncate(const ChebSeries& s, int q0);

// Certified upper bound for the limiting spectral radius of P evaluated
// in the ensemble's free limit: Gaussian families substitute free
// semicirculars of norm 2, Haar families substitute unitaries of norm 1,
// and the triangle inequality plus submultiplicativity give
//   K = sum_w |coeff(w)| * 2^|w|   (Gaussian)
//   K = sum_w |coeff(w)|           (Haar).
// P must be self-adjoint.
double spectral_bound(Ensemble ensemble, const NCPoly& P);

}  // namespace multitrace
