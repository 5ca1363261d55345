#include "multitrace/cheb.hpp"

#include <cmath>

namespace multitrace {

double ChebSeries::eval(double x) const {
  if (a.empty()) return 0.0;
  const double u = x / K;
  // Clenshaw.
  double b1 = 0.0, b2 = 0.0;
  for (int j = degree(); j >= 1; --j) {
    const double b0 = 2.0 * u * b1 - b2 + a[j];
    b2 = b1;
    b1 = b0;
  }
  return u * b1 - b2 + a[0];
}

ChebSeries cheb_coeffs(const std::function<double(double)>& h, double K, int M) {
  if (M < 17 || ((M - 1) & (M - 2)) != 0)
    throw ArgumentError("cheb_coeffs: M must be a power of two plus one, M >= 17");
  if (!(K > 0.0)) throw ArgumentError("cheb_coeffs: K must be positive");
  const int n = M - 1;
  std::vector<double> f(M);
  for (int j = 0; j <= n; ++j) {
    f[j] = h(K * std::cos(M_PI * j / n));
    if (!std::isfinite(f[j])) throw NumericError("cheb_coeffs: non-finite sample");
  }
  ChebSeries s;
  s.K = K;
  s.a.resize(M);
  for (int m = 0; m <= n; ++m) {
    double acc = 0.5 * (f[0] + (m % 2 ? -1.0 : 1.0) * f[n]);
    for (int j = 1; j < n; ++j) acc += f[j] * std::cos(M_PI * m * j / n);
    s.a[m] = 2.0 * acc / n;
  }
  s.a[0] *= 0.5;
  s.a[n] *= 0.5;
  return s;
}

std::vector<Rat> cheb_of_poly(const std::vector<Rat>& mono, const Rat& K) {
  if (mono.size() > 65) throw SizeError("cheb_of_poly: degree out of range [0, 64]");
  if (K <= 0) throw ArgumentError("cheb_of_poly: K must be positive");
  // Horner in u = t/K over the Chebyshev basis, using
  // u T_0 = T_1 and u T_j = (T_{j+1} + T_{j-1}) / 2.
  std::vector<Rat> acc;  // acc[j] multiplies T_j
  Rat kpow(1);
  int deg = static_cast<int>(mono.size()) - 1;
  while (deg >= 0 && mono[deg] == 0) --deg;
  for (int k = deg; k >= 0; --k) {
    // acc <- u * acc
    std::vector<Rat> next(acc.size() + 1, Rat(0));
    for (size_t j = 0; j < acc.size(); ++j) {
      if (acc[j] == 0) continue;
      if (j == 0) {
        next[1] += acc[0];
      } else {
        next[j + 1] += acc[j] / 2;
        next[j - 1] += acc[j] / 2;
      }
    }
    acc = std::move(next);
    if (acc.empty()) acc.assign(1, Rat(0));
    // + m_k K^k T_0
    Rat kk(1);
    for (int i = 0; i < k; ++i) kk *= K;
    acc[0] += mono[k] * kk;
  }
  while (!acc.empty() && acc.back() == 0) acc.pop_back();
  if (acc.empty()) acc.assign(1, Rat(0));
  return acc;
}

double tail_bound(const ChebSeries& s, int q0) {
  double acc = s.tail;
  for (int j = q0 + 1; j <= s.degree(); ++j) acc += std::abs(s.a[j]);
  return acc;
}

ChebSeries truncate(const ChebSeries& s, int q0) {
  if (q0 > s.degree()) return s;
  ChebSeries out;
  out.K = s.K;
  out.a.assign(s.a.begin(), s.a.begin() + q0 + 1);
  out.tail = tail_bound(s, q0);
  return out;
}

double spectral_bound(Ensemble ensemble, const NCPoly& P) {
  const bool gaussian = is_gaussian(ensemble);
  const bool selfadj =
      gaussian ? P.is_selfadjoint_hermitian_letters() : P.is_selfadjoint();
  if (!selfadj) throw ArgumentError("spectral_bound: polynomial is not self-adjoint");
  double bound = 0.0;
  for (const auto& [w, c] : P.terms())
    bound += c.abs() * (gaussian ? std::pow(2.0, w.length()) : 1.0);
  return bound;
}

}  // namespace multitrace
