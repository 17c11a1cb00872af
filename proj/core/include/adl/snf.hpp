#pragma once

#include <vector>

#include "adl/mat.hpp"

namespace adl {

// Smith normal form U * input * V = S with S diagonal, non-negative, and each
// diagonal entry dividing the next. U and V are unimodular; their inverses are
// tracked alongside so the round trip u_inv * S * v_inv == input is exact.
struct SmithDecomposition {
    IMat u, s, v;
    IMat u_inv, v_inv;
    std::vector<Int> diagonal;  // full min(rows,cols) diagonal, chain order
    int rank = 0;               // number of nonzero diagonal entries
};

// Pivot rule: smallest nonzero absolute value in the working submatrix, ties
// broken by lowest (row, col); deterministic bases for reproducible output.
SmithDecomposition smith_normal_form(const IMat& m);

}  // namespace adl
