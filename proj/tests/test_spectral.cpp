#include <doctest.h>

#include "qmc/catalog.hpp"
#include "qmc/spectral.hpp"
#include "test_util.hpp"

using namespace qmc;

TEST_SUITE("spectral") {

TEST_CASE("all catalogued spectral types reproduce at three draws each") {
    for (const auto& row : catalog::spectral_table()) {
        for (unsigned draw = 0; draw < 3; ++draw) {
            catalog::Params p = catalog::random_params(20240601 + 97 * draw);
            if (row.jp_n) p.jp_n = row.jp_n;
            CAPTURE(row.name);
            CAPTURE(row.jp_n);
            CAPTURE(draw);
            SpectralType st = spectral_type(catalog::printed_tuple(row.name, p));
            CHECK(st.rendered() == row.expected);
            CHECK(!st.non_generic);
        }
    }
}

TEST_CASE("divisor multiplicities account for the full determinant degree") {
    catalog::Params p = catalog::random_params(7);
    for (const auto& row : catalog::spectral_table()) {
        catalog::Params pp = p;
        if (row.jp_n) pp.jp_n = row.jp_n;
        SystemTuple t = catalog::printed_tuple(row.name, pp);
        SpectralType st = spectral_type(t);
        int total = 0;
        for (int v : st.s_div) total += v;
        CHECK(total == t.m() * (t.num_poles() - 1));
    }
}

TEST_CASE("rank-two tuple with three finite poles") {
    auto gen = testutil::rng(139);
    for (unsigned draw = 0; draw < 3; ++draw) {
        SystemTuple t(QBase(Complex(0.4, 0)),
                      {Complex(0, 0), testutil::random_complex(gen, 0.6, 1.4, 0.8),
                       testutil::random_complex(gen, 1.5, 2.2, 0.8)},
                      {testutil::random_matrix(gen, 2, 2), testutil::random_matrix(gen, 2, 2),
                       testutil::random_matrix(gen, 2, 2)});
        SpectralType st = spectral_type(t);
        CHECK(st.rendered() == "11;11;1111");
    }
}

TEST_CASE("the double root of the ;21111 family drops rank by two") {
    catalog::Params p = catalog::random_params(20240601);
    SystemTuple t = catalog::printed_tuple("s46", p);
    SpectralType st = spectral_type(t);
    REQUIRE(st.rendered() == "3;111;21111");
    REQUIRE(st.div_roots.front().second == 2);
    const Complex root = st.div_roots.front().first;
    // polynomial form of the cleared matrix at the double root
    const int mm = t.m();
    Complex all(1, 0);
    for (std::size_t j = 1; j < t.poles.size(); ++j) all *= (root - t.poles[j]);
    CMatrix c = (CMatrix::Identity(mm, mm) - t.matrices[0]) * all;
    for (std::size_t i = 1; i < t.poles.size(); ++i) {
        Complex rest(1, 0);
        for (std::size_t j = 1; j < t.poles.size(); ++j)
            if (j != i) rest *= (root - t.poles[j]);
        c += t.matrices[i] * (-root) * rest;
    }
    TolerancePolicy loose;
    loose.rank_rel_tol = 1e-6;
    CHECK(mm - numerical_rank(c, loose) == 2);
}

TEST_CASE("rendering uses commas once parts reach two digits") {
    SpectralType st;
    st.s0 = {11, 2};
    st.s_inf = {13};
    st.s_div = {3, 1};
    CHECK(st.rendered() == "11,2;13;31");
}

}  // TEST_SUITE
