#include "adl/mat.hpp"

namespace adl {

Int det_integer(IMat m) {
    require(m.rows() == m.cols(), "det_integer: matrix not square");
    const int n = m.rows();
    if (n == 0) return 1;
    // Bareiss fraction-free elimination; all intermediate divisions are exact.
    Int prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = t;
            }
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : Int(-m(n - 1, n - 1));
}

Rat det_rational(QMat m) {
    require(m.rows() == m.cols(), "det_rational: matrix not square");
    const int n = m.rows();
    Rat det(1);
    for (int k = 0; k < n; ++k) {
        int p = -1;
        for (int i = k; i < n; ++i)
            if (m(i, k) != 0) {
                p = i;
                break;
            }
        if (p < 0) return Rat(0);
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            det = -det;
        }
        det *= m(k, k);
        Rat inv = Rat(1) / m(k, k);
        for (int i = k + 1; i < n; ++i) {
            if (m(i, k) == 0) continue;
            Rat f = m(i, k) * inv;
            for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return det;
}

QMat inverse_rational(QMat m) {
    require(m.rows() == m.cols(), "inverse_rational: matrix not square");
    const int n = m.rows();
    QMat inv = QMat::identity(n);
    for (int k = 0; k < n; ++k) {
        int p = -1;
        for (int i = k; i < n; ++i)
            if (m(i, k) != 0) {
                p = i;
                break;
            }
        require(p >= 0, "inverse_rational: singular matrix");
        if (p != k)
            for (int j = 0; j < n; ++j) {
                std::swap(m(k, j), m(p, j));
                std::swap(inv(k, j), inv(p, j));
            }
        Rat piv_inv = Rat(1) / m(k, k);
        for (int j = 0; j < n; ++j) {
            m(k, j) *= piv_inv;
            inv(k, j) *= piv_inv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k || m(i, k) == 0) continue;
            Rat f = m(i, k);
            for (int j = 0; j < n; ++j) {
                m(i, j) -= f * m(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

}  // namespace adl
