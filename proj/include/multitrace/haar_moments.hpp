#pragma once

#include <map>
#include <vector>

#include "multitrace/intpartition.hpp"
#include "multitrace/ncpoly.hpp"
#include "multitrace/polynomial.hpp"

namespace multitrace {

// C_lambda(N) = prod over cells (i,j) of lambda of (N + j - i), a monic
// polynomial of degree |lambda| in N.
Poly c_lambda(const IntPartition& lambda);

// Unitary Weingarten function as an exact rational function of N,
//   Wg_n(sigma, N) = (1/n!) sum over lambda |- n of
//                    f^lambda chi^lambda(sigma) / C_lambda(N);
// it depends on sigma only through the cycle type mu. Memoized. n <= 7.
RatFn weingarten(int n, const IntPartition& mu);

// The full table for order n: cycle type -> Wg (in N).
std::map<IntPartition, RatFn> weingarten_table(int n);

// Exact E[tr w_1 ... tr w_r] for independent Haar unitaries, as a reduced
// rational function of x = 1/N, valid for all N > total length. Words
// with any letter unbalanced between u and u* give the zero function.
// Per-letter occurrence counts capped at 5, total length at 12.
RatFn expect_trace_product_haar_u(const std::vector<Word>& words);

// Multilinear extension over NCPoly terms; the imaginary part must
// cancel exactly (ConsistencyError otherwise).
RatFn expect_ncpoly_product_haar_u(const std::vector<NCPoly>& polys);

}  // namespace multitrace
