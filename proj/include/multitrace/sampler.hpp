#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "multitrace/ensembles.hpp"
#include "multitrace/ncpoly.hpp"
#include "multitrace/testfn.hpp"

namespace multitrace {

// Deterministic substream: one per draw, derived from (seed, index) by a
// splitmix64 round, so worker partitioning cannot change results.
class StreamRng {
 public:
  StreamRng(uint64_t master_seed, uint64_t stream_index);
  double normal() { return normal_(eng_); }
  double uniform() { return uniform_(eng_); }

 private:
  std::mt19937_64 eng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

// Gaussian ensembles with densities proportional to
//   exp(-(N/4) Tr H^2) (GOE), exp(-(N/2) Tr H^2) (GUE, GSE),
// normalized so the limiting spectral measure is the semicircle on
// [-2, 2]. GSE returns the 2N x 2N complex self-dual representation.
Eigen::MatrixXcd sample_gue(int N, StreamRng& rng);
Eigen::MatrixXcd sample_goe(int N, StreamRng& rng);
Eigen::MatrixXcd sample_gse(int N, StreamRng& rng);

// Haar measures via QR with the standard phase/sign normalization of the
// triangular factor; Sp(N) orthonormalizes in quaternion arithmetic
// (preserving self-duality exactly) and returns the 2N x 2N embedding.
Eigen::MatrixXcd haar_unitary(int N, StreamRng& rng);
Eigen::MatrixXcd haar_orthogonal(int N, StreamRng& rng);
Eigen::MatrixXcd haar_symplectic(int N, StreamRng& rng);

// Dispatcher; N <= 1024.
Eigen::MatrixXcd sample_matrix(Ensemble e, int N, StreamRng& rng);
// Complex dimension of the sampled matrices (2N for GSE / Sp).
int matrix_dim(Ensemble e, int N);

// P evaluated on the matrix tuple; starred letters use the conjugate
// transpose. Self-adjoint P is symmetrized after a 1e-9 Hermiticity
// check.
Eigen::MatrixXcd evaluate_ncpoly(const std::vector<Eigen::MatrixXcd>& mats, const NCPoly& P);

// tr h(X) = (1/dim) sum h(lambda_i) by dense Hermitian eigendecomposition.
double trace_statistic(const Eigen::MatrixXcd& X, const std::function<double(double)>& h);

struct McConfig {
  Ensemble ensemble = Ensemble::GUE;
  int d = 1;       // number of independent matrices
  int N = 8;       // GSE/Sp: quaternion dimension (matrices are 2N x 2N)
  uint64_t seed = 1;
  int draws = 1000;
  int workers = 1;
};

struct McResult {
  double mean = 0.0;
  double stderr_ = 0.0;
  // raw[draw][i] = tr h_i(X_i) for that draw; product in the last column.
  std::vector<std::vector<double>> raw;
};

// Mean of prod_i tr h_i(P_i(matrices)) over draws, with the standard
// error of the mean. Raw per-draw statistics feed the cumulant module.
McResult mc_expect_trace_product(const McConfig& config, const std::vector<NCPoly>& polys,
                                 const std::vector<TestFn>& h);

// Plain word products: per draw the complex product prod_i tr w_i is
// formed by direct matrix multiplication (no eigendecomposition, words
// need not be self-adjoint) and its real part recorded; the expectation
// is real for all supported ensembles. raw columns: Re tr w_i per trace,
// then the product's real part.
McResult mc_expect_trace_word_product(const McConfig& config, const std::vector<Word>& words);

}  // namespace multitrace
