#include <doctest.h>

#include "adl/mat.hpp"
#include "adl/rng.hpp"

using adl::IMat;
using adl::Int;
using adl::QMat;
using adl::Rat;

TEST_CASE("integer determinant by fraction-free elimination") {
    CHECK(adl::det_integer(IMat{{Int(2), Int(4)}, {Int(6), Int(8)}}) == Int(-8));
    CHECK(adl::det_integer(IMat::identity(4)) == Int(1));
    CHECK(adl::det_integer(IMat{{Int(0), Int(1)}, {Int(1), Int(0)}}) == Int(-1));
    CHECK(adl::det_integer(IMat{{Int(1), Int(2)}, {Int(2), Int(4)}}) == Int(0));
    CHECK(adl::det_integer(IMat(0, 0)) == Int(1));
}

TEST_CASE("rational inverse round trip on random nonsingular matrices") {
    adl::Rng rng(17);
    int tested = 0;
    while (tested < 25) {
        int n = int(rng.int_range(1, 5));
        QMat m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = adl::make_rat(Int(rng.int_range(-9, 9)), Int(rng.int_range(1, 4)));
        if (adl::det_rational(m) == 0) continue;
        QMat inv = adl::inverse_rational(m);
        CHECK(m * inv == QMat::identity(n));
        CHECK(inv * m == QMat::identity(n));
        ++tested;
    }
}

TEST_CASE("rational and integer determinants agree") {
    adl::Rng rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        int n = int(rng.int_range(1, 5));
        IMat m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = Int(rng.int_range(-20, 20));
        CHECK(Rat(adl::det_integer(m)) == adl::det_rational(adl::to_rational(m)));
    }
}

TEST_CASE("singular matrix inversion is rejected") {
    QMat m{{Rat(1), Rat(2)}, {Rat(2), Rat(4)}};
    CHECK_THROWS_AS(adl::inverse_rational(m), adl::Error);
}
