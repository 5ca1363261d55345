#pragma once

#include <vector>

#include "multitrace/ensembles.hpp"
#include "multitrace/ncpoly.hpp"
#include "multitrace/polynomial.hpp"

namespace multitrace {

// Exact E[tr w_1 ... tr w_r] for independent GUE matrices, as a
// polynomial in x = 1/N, valid for every N >= 1:
//   sum over matched pairings pi of N^(c(pi) - k/2 - r),
// where c counts the slot loops after identifying, for each pair (a, b),
// row(a) ~ col(b) and col(a) ~ row(b). Only even powers of x occur.
// Words must be star-free; unbalanced letter counts give the zero
// polynomial. Total length capped at 16 ((k-1)!! terms).
Poly expect_trace_product_gue(const std::vector<Word>& words);

// GOE analogue: each pair additionally chooses straight
// (row~col, col~row) or twisted (row~row, col~col), reflecting the real
// Wick rule E[X_ab X_cd] = (delta_ac delta_bd + delta_ad delta_bc)/N.
// Odd powers of x generally survive. Total length capped at 12
// (extra 2^(k/2) twist factor).
Poly expect_trace_product_goe(const std::vector<Word>& words);

// GSE value at a concrete dimension: the GOE polynomial evaluated at
// x = -1/(2N), exactly.
Rat expect_trace_product_gse_at(const std::vector<Word>& words, long N);

// Multilinear extension over NCPoly terms; ensemble must be GUE or GOE.
// Throws ConsistencyError if the imaginary part fails to cancel (it
// vanishes identically for self-adjoint inputs).
Poly expect_ncpoly_product_gauss(Ensemble ensemble, const std::vector<NCPoly>& polys);

Rat expect_ncpoly_product_gse_at(const std::vector<NCPoly>& polys, long N);

}  // namespace multitrace
