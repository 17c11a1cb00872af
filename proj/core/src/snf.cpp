#include "adl/snf.hpp"

#include <cstdlib>

namespace adl {

namespace {

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

}  // namespace

SmithDecomposition smith_normal_form(const IMat& input) {
    const int rows = input.rows();
    const int cols = input.cols();

    SmithDecomposition d;
    d.s = input;
    d.u = IMat::identity(rows);
    d.u_inv = IMat::identity(rows);
    d.v = IMat::identity(cols);
    d.v_inv = IMat::identity(cols);

    IMat& S = d.s;
    IMat& U = d.u;
    IMat& Ui = d.u_inv;
    IMat& V = d.v;
    IMat& Vi = d.v_inv;

    auto row_swap = [&](int a, int b) {
        if (a == b) return;
        for (int j = 0; j < cols; ++j) std::swap(S(a, j), S(b, j));
        for (int j = 0; j < rows; ++j) {
            std::swap(U(a, j), U(b, j));   // U <- E*U
            std::swap(Ui(j, a), Ui(j, b)); // Ui <- Ui*E
        }
    };
    auto col_swap = [&](int a, int b) {
        if (a == b) return;
        for (int i = 0; i < rows; ++i) std::swap(S(i, a), S(i, b));
        for (int i = 0; i < cols; ++i) {
            std::swap(V(i, a), V(i, b));   // V <- V*F
            std::swap(Vi(a, i), Vi(b, i)); // Vi <- F*Vi
        }
    };
    // row a += q * row b
    auto row_add = [&](int a, int b, const Int& q) {
        if (q == 0) return;
        for (int j = 0; j < cols; ++j) S(a, j) += q * S(b, j);
        for (int j = 0; j < rows; ++j) {
            U(a, j) += q * U(b, j);
            Ui(j, b) -= q * Ui(j, a);
        }
    };
    // col a += q * col b
    auto col_add = [&](int a, int b, const Int& q) {
        if (q == 0) return;
        for (int i = 0; i < rows; ++i) S(i, a) += q * S(i, b);
        for (int i = 0; i < cols; ++i) {
            V(i, a) += q * V(i, b);
            Vi(b, i) -= q * Vi(a, i);
        }
    };
    auto row_negate = [&](int a) {
        for (int j = 0; j < cols; ++j) S(a, j) = -S(a, j);
        for (int j = 0; j < rows; ++j) {
            U(a, j) = -U(a, j);
            Ui(j, a) = -Ui(j, a);
        }
    };

    // Smallest nonzero |entry| in the trailing submatrix, ties broken by
    // lowest (row, col); returns false when the submatrix is zero.
    auto find_pivot = [&](int t, int& pr, int& pc) {
        bool found = false;
        Int best;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j) {
                if (S(i, j) == 0) continue;
                Int a = abs_int(S(i, j));
                if (!found || a < best) {
                    found = true;
                    best = a;
                    pr = i;
                    pc = j;
                }
            }
        return found;
    };

    const int nmin = std::min(rows, cols);
    for (int t = 0; t < nmin; ++t) {
        int pr, pc;
        if (!find_pivot(t, pr, pc)) break;

        for (;;) {
            row_swap(t, pr);
            col_swap(t, pc);

            // Clear the pivot column and row by floor division; remainders
            // shrink strictly, so re-selecting the pivot terminates.
            bool clean = true;
            for (int i = t + 1; i < rows; ++i) {
                if (S(i, t) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), S(i, t).get_mpz_t(), S(t, t).get_mpz_t());
                row_add(i, t, Int(-q));
                if (S(i, t) != 0) clean = false;
            }
            for (int j = t + 1; j < cols; ++j) {
                if (S(t, j) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), S(t, j).get_mpz_t(), S(t, t).get_mpz_t());
                col_add(j, t, Int(-q));
                if (S(t, j) != 0) clean = false;
            }
            if (!clean) {
                find_pivot(t, pr, pc);
                continue;
            }

            // Pivot must divide the whole trailing block for the divisibility
            // chain; fold a violating row into row t and reduce again.
            bool divides = true;
            for (int i = t + 1; i < rows && divides; ++i)
                for (int j = t + 1; j < cols && divides; ++j)
                    if (S(i, j) % S(t, t) != 0) {
                        row_add(t, i, Int(1));
                        divides = false;
                    }
            if (divides) break;
            find_pivot(t, pr, pc);
        }

        if (S(t, t) < 0) row_negate(t);
    }

    d.diagonal.resize(nmin);
    for (int i = 0; i < nmin; ++i) {
        d.diagonal[i] = S(i, i);
        if (S(i, i) != 0) d.rank = i + 1;
    }
    return d;
}

}  // namespace adl
