#include "multitrace/sampler.hpp"

#include <cmath>
#include <complex>
#include <thread>

namespace multitrace {

namespace {

uint64_t splitmix64(uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

using Cplx = std::complex<double>;

void check_dim(int N) {
  if (N < 2 || N > 1024) throw SizeError("matrix dimension out of range [2, 1024]");
}

}  // namespace

StreamRng::StreamRng(uint64_t master_seed, uint64_t stream_index) {
  eng_.seed(splitmix64(splitmix64(master_seed) ^ (stream_index + 0x51ED270B76B2F4C1ULL)));
}

Eigen::MatrixXcd sample_gue(int N, StreamRng& rng) {
  check_dim(N);
  Eigen::MatrixXcd H(N, N);
  const double diag_sd = 1.0 / std::sqrt(static_cast<double>(N));
  const double off_sd = 1.0 / std::sqrt(2.0 * N);  // per real component
  for (int i = 0; i < N; ++i) {
    H(i, i) = Cplx(diag_sd * rng.normal(), 0.0);
    for (int j = i + 1; j < N; ++j) {
      const Cplx z(off_sd * rng.normal(), off_sd * rng.normal());
      H(i, j) = z;
      H(j, i) = std::conj(z);
    }
  }
  return H;
}

Eigen::MatrixXcd sample_goe(int N, StreamRng& rng) {
  check_dim(N);
  Eigen::MatrixXcd H(N, N);
  const double diag_sd = std::sqrt(2.0 / N);
  const double off_sd = 1.0 / std::sqrt(static_cast<double>(N));
  for (int i = 0; i < N; ++i) {
    H(i, i) = Cplx(diag_sd * rng.normal(), 0.0);
    for (int j = i + 1; j < N; ++j) {
      const double v = off_sd * rng.normal();
      H(i, j) = Cplx(v, 0.0);
      H(j, i) = Cplx(v, 0.0);
    }
  }
  return H;
}

Eigen::MatrixXcd sample_gse(int N, StreamRng& rng) {
  check_dim(N);
  // Quaternion Hermitian with the component variances dictated by the
  // density exp(-(N/2) Tr H^2) on 2N x 2N self-dual matrices: diagonal
  // real parts have variance 1/(2N), each off-diagonal quaternion
  // component 1/(4N). This makes E[tr H^2] = 1 - 1/(2N) exactly.
  Eigen::MatrixXcd H(2 * N, 2 * N);
  const double diag_sd = 1.0 / std::sqrt(2.0 * N);
  const double off_sd = 1.0 / std::sqrt(4.0 * N);
  for (int s = 0; s < N; ++s) {
    const double a = diag_sd * rng.normal();
    H(2 * s, 2 * s) = Cplx(a, 0);
    H(2 * s + 1, 2 * s + 1) = Cplx(a, 0);
    H(2 * s, 2 * s + 1) = Cplx(0, 0);
    H(2 * s + 1, 2 * s) = Cplx(0, 0);
    for (int t = s + 1; t < N; ++t) {
      const double qa = off_sd * rng.normal();
      const double qb = off_sd * rng.normal();
      const double qc = off_sd * rng.normal();
      const double qd = off_sd * rng.normal();
      // q = a1 + b i + c j + d k as a 2x2 block.
      const Cplx alpha(qa, qb), beta(qc, qd);
      H(2 * s, 2 * t) = alpha;
      H(2 * s, 2 * t + 1) = beta;
      H(2 * s + 1, 2 * t) = -std::conj(beta);
      H(2 * s + 1, 2 * t + 1) = std::conj(alpha);
      // Hermitian mirror (quaternion conjugate block).
      H(2 * t, 2 * s) = std::conj(alpha);
      H(2 * t, 2 * s + 1) = -beta;
      H(2 * t + 1, 2 * s) = std::conj(beta);
      H(2 * t + 1, 2 * s + 1) = alpha;
    }
  }
  return H;
}

Eigen::MatrixXcd haar_unitary(int N, StreamRng& rng) {
  check_dim(N);
  Eigen::MatrixXcd Z(N, N);
  const double sd = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) Z(i, j) = Cplx(sd * rng.normal(), sd * rng.normal());
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Z);
  Eigen::MatrixXcd Q = qr.householderQ();
  const Eigen::MatrixXcd& R = qr.matrixQR();
  for (int i = 0; i < N; ++i) {
    Cplx r = R(i, i);
    const double m = std::abs(r);
    Q.col(i) *= (m > 0 ? r / m : Cplx(1, 0));
  }
  return Q;
}

Eigen::MatrixXcd haar_orthogonal(int N, StreamRng& rng) {
  check_dim(N);
  Eigen::MatrixXd Z(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) Z(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(Z);
  Eigen::MatrixXd Q = qr.householderQ();
  const Eigen::MatrixXd& R = qr.matrixQR();
  for (int i = 0; i < N; ++i) Q.col(i) *= (R(i, i) < 0 ? -1.0 : 1.0);
  return Q.cast<Cplx>();
}

namespace {

// Quaternion q = a + b i + c j + d k stored as the complex pair of its
// 2x2 block [[alpha, beta], [-conj(beta), conj(alpha)]].
struct Quat {
  Cplx alpha{0, 0}, beta{0, 0};

  static Quat gaussian(StreamRng& rng) {
    return {Cplx(rng.normal(), rng.normal()), Cplx(rng.normal(), rng.normal())};
  }
  Quat conj() const { return {std::conj(alpha), -beta}; }
  double norm2() const { return std::norm(alpha) + std::norm(beta); }
  friend Quat operator*(const Quat& p, const Quat& q) {
    return {p.alpha * q.alpha - p.beta * std::conj(q.beta),
            p.alpha * q.beta + p.beta * std::conj(q.alpha)};
  }
  friend Quat operator+(const Quat& p, const Quat& q) {
    return {p.alpha + q.alpha, p.beta + q.beta};
  }
  friend Quat operator-(const Quat& p, const Quat& q) {
    return {p.alpha - q.alpha, p.beta - q.beta};
  }
  Quat scaled(double s) const { return {alpha * s, beta * s}; }
};

}  // namespace

Eigen::MatrixXcd haar_symplectic(int N, StreamRng& rng) {
  check_dim(N);
  // Quaternion Ginibre followed by modified Gram-Schmidt in quaternion
  // arithmetic (two passes); the result is unitary quaternionic, i.e.
  // in Sp(N), and the embedding is exactly self-dual.
  std::vector<std::vector<Quat>> col(N, std::vector<Quat>(N));
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) col[j][i] = Quat::gaussian(rng);
  auto inner = [&](const std::vector<Quat>& u, const std::vector<Quat>& v) {
    Quat acc;
    for (int i = 0; i < static_cast<int>(u.size()); ++i) acc = acc + u[i].conj() * v[i];
    return acc;
  };
  for (int j = 0; j < N; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < j; ++i) {
        const Quat c = inner(col[i], col[j]);
        for (int t = 0; t < N; ++t) col[j][t] = col[j][t] - col[i][t] * c;
      }
    }
    double norm2 = 0.0;
    for (int t = 0; t < N; ++t) norm2 += col[j][t].norm2();
    const double inv = 1.0 / std::sqrt(norm2);
    for (int t = 0; t < N; ++t) col[j][t] = col[j][t].scaled(inv);
  }
  Eigen::MatrixXcd Q(2 * N, 2 * N);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      const Quat& q = col[j][i];
      Q(2 * i, 2 * j) = q.alpha;
      Q(2 * i, 2 * j + 1) = q.beta;
      Q(2 * i + 1, 2 * j) = -std::conj(q.beta);
      Q(2 * i + 1, 2 * j + 1) = std::conj(q.alpha);
    }
  return Q;
}

Eigen::MatrixXcd sample_matrix(Ensemble e, int N, StreamRng& rng) {
  switch (e) {
    case Ensemble::GUE:
      return sample_gue(N, rng);
    case Ensemble::GOE:
      return sample_goe(N, rng);
    case Ensemble::GSE:
      return sample_gse(N, rng);
    case Ensemble::HaarU:
      return haar_unitary(N, rng);
    case Ensemble::HaarO:
      return haar_orthogonal(N, rng);
    case Ensemble::HaarSp:
      return haar_symplectic(N, rng);
  }
  throw ArgumentError("unknown ensemble");
}

int matrix_dim(Ensemble e, int N) { return is_quaternionic(e) ? 2 * N : N; }

Eigen::MatrixXcd evaluate_ncpoly(const std::vector<Eigen::MatrixXcd>& mats, const NCPoly& P) {
  if (mats.empty()) throw ArgumentError("evaluate_ncpoly: no matrices");
  const auto dim = mats[0].rows();
  for (const auto& m : mats)
    if (m.rows() != dim || m.cols() != dim)
      throw ArgumentError("evaluate_ncpoly: dimension mismatch");
  if (P.max_letter_index() > static_cast<int>(mats.size()))
    throw ArgumentError("evaluate_ncpoly: polynomial uses more letters than matrices given");
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [w, c] : P.terms()) {
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto& l : w.letters) {
      const auto& M = mats[l.index - 1];
      term = l.star ? (term * M.adjoint()).eval() : (term * M).eval();
    }
    acc += Cplx(c.re.get_d(), c.im.get_d()) * term;
  }
  const double scale = 1.0 + acc.norm();
  const double defect = (acc - acc.adjoint()).norm();
  if (P.is_selfadjoint() && defect > 1e-9 * scale)
    throw NumericError("evaluate_ncpoly: self-adjoint input produced a non-Hermitian value");
  // Nearly Hermitian values are symmetrized. This also covers star-free
  // polynomials over Hermitian matrices, whose self-adjointness the
  // star-toggling adjoint cannot see; a genuinely non-Hermitian value
  // keeps its defect and is left alone.
  if (defect <= 1e-9 * scale) acc = 0.5 * (acc + acc.adjoint()).eval();
  return acc;
}

double trace_statistic(const Eigen::MatrixXcd& X, const std::function<double(double)>& h) {
  const double scale = 1.0 + X.norm();
  if ((X - X.adjoint()).norm() > 1e-8 * scale)
    throw ArgumentError("trace_statistic: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      0.5 * (X + X.adjoint()), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("eigensolver failed");
  const auto& ev = solver.eigenvalues();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) acc += h(ev[i]);
  return acc / static_cast<double>(ev.size());
}

namespace {

// Runs the per-draw body over deterministic substreams, split across
// workers; aggregation in draw order keeps results independent of the
// worker count.
McResult run_draws(const McConfig& config, int columns,
                   const std::function<void(int draw, StreamRng&, std::vector<double>&)>& body) {
  if (config.draws < 1) throw ArgumentError("mc: need at least one draw");
  const int n = config.draws;
  std::vector<std::vector<double>> raw(n, std::vector<double>(columns, 0.0));
  auto run_range = [&](int lo, int hi) {
    for (int draw = lo; draw < hi; ++draw) {
      StreamRng rng(config.seed, static_cast<uint64_t>(draw));
      body(draw, rng, raw[draw]);
    }
  };
  const int workers = std::max(1, config.workers);
  if (workers == 1 || n < 2 * workers) {
    run_range(0, n);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int lo = w * chunk;
      const int hi = std::min(n, lo + chunk);
      if (lo < hi) pool.emplace_back(run_range, lo, hi);
    }
    for (auto& t : pool) t.join();
  }
  const int last = columns - 1;
  double mean = 0.0;
  for (int i = 0; i < n; ++i) mean += raw[i][last];
  mean /= n;
  double var = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = raw[i][last] - mean;
    var += d * d;
  }
  var = (n > 1) ? var / (n - 1) : 0.0;
  McResult res;
  res.mean = mean;
  res.stderr_ = std::sqrt(var / n);
  res.raw = std::move(raw);
  return res;
}

}  // namespace

McResult mc_expect_trace_product(const McConfig& config, const std::vector<NCPoly>& polys,
                                 const std::vector<TestFn>& h) {
  if (polys.size() != h.size()) throw ArgumentError("mc: polys and test functions must pair up");
  const int r = static_cast<int>(polys.size());
  return run_draws(config, r + 1, [&](int, StreamRng& rng, std::vector<double>& row) {
    std::vector<Eigen::MatrixXcd> mats;
    mats.reserve(config.d);
    for (int l = 0; l < config.d; ++l) mats.push_back(sample_matrix(config.ensemble, config.N, rng));
    double prod = 1.0;
    for (int i = 0; i < r; ++i) {
      const double v = trace_statistic(evaluate_ncpoly(mats, polys[i]), h[i].fn);
      row[i] = v;
      prod *= v;
    }
    row[r] = prod;
  });
}

McResult mc_expect_trace_word_product(const McConfig& config, const std::vector<Word>& words) {
  const int r = static_cast<int>(words.size());
  return run_draws(config, r + 1, [&](int, StreamRng& rng, std::vector<double>& row) {
    std::vector<Eigen::MatrixXcd> mats;
    mats.reserve(config.d);
    for (int l = 0; l < config.d; ++l) mats.push_back(sample_matrix(config.ensemble, config.N, rng));
    const auto dim = mats[0].rows();
    Cplx prod(1.0, 0.0);
    for (int i = 0; i < r; ++i) {
      Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(dim, dim);
      for (const auto& l : words[i].letters) {
        const auto& M = mats[l.index - 1];
        term = l.star ? (term * M.adjoint()).eval() : (term * M).eval();
      }
      const Cplx tr = term.trace() / static_cast<double>(dim);
      row[i] = tr.real();
      prod *= tr;
    }
    row[r] = prod.real();
  });
}

}  // namespace multitrace
