#include <doctest.h>

#include "qmc/linalg.hpp"
#include "test_util.hpp"

using namespace qmc;

TEST_SUITE("linalg") {

TEST_CASE("kernel of simple maps") {
    CHECK(kernel(CMatrix::Zero(2, 2)).dim() == 2);
    CHECK(kernel(CMatrix::Identity(3, 3)).dim() == 0);

    CMatrix m(2, 2);
    m << 1, 1, 1, 1;
    Subspace k = kernel(m);
    REQUIRE(k.dim() == 1);
    // hand solution of the 2x2 system: direction (1,-1)/sqrt(2)
    CVector expect(2);
    expect << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    const Complex overlap = expect.adjoint() * k.basis.col(0);
    CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-12);
}

TEST_CASE("kernel columns are numerically annihilated") {
    auto gen = testutil::rng();
    TolerancePolicy tol;
    for (int trial = 0; trial < 10; ++trial) {
        CMatrix a = testutil::random_matrix(gen, 5, 3);
        CMatrix b = testutil::random_matrix(gen, 3, 5);
        CMatrix m = a * b;  // rank <= 3
        Subspace k = kernel(m, tol);
        CHECK(k.dim() >= 2);
        for (Eigen::Index c = 0; c < k.dim(); ++c)
            CHECK((m * k.basis.col(c)).norm() <= tol.rank_rel_tol * m.norm() * 10);
    }
}

TEST_CASE("eigen clusters: diagonal and defective cases") {
    auto id3 = eigen_clusters(CMatrix::Identity(3, 3));
    REQUIRE(id3.clusters.size() == 1);
    CHECK(id3.clusters[0].multiplicity == 3);
    CHECK(id3.clusters[0].jordan_partition == std::vector<int>{1, 1, 1});

    CMatrix d = CMatrix::Zero(3, 3);
    d.diagonal() << 2, 2, 5;
    auto dc = eigen_clusters(d);
    REQUIRE(dc.clusters.size() == 2);
    int mult2 = 0, mult5 = 0;
    for (const auto& c : dc.clusters) {
        if (std::abs(c.value - Complex(2, 0)) < 1e-8) {
            mult2 = c.multiplicity;
            CHECK(c.jordan_partition == std::vector<int>{1, 1});
        }
        if (std::abs(c.value - Complex(5, 0)) < 1e-8) mult5 = c.multiplicity;
    }
    CHECK(mult2 == 2);
    CHECK(mult5 == 1);

    CMatrix j = CMatrix::Zero(2, 2);
    j(0, 1) = 1;  // rank chain: rank(J)=1, rank(J^2)=0
    auto jc = eigen_clusters(j);
    REQUIRE(jc.clusters.size() == 1);
    CHECK(jc.clusters[0].multiplicity == 2);
    CHECK(jc.clusters[0].jordan_partition == std::vector<int>{2});
}

TEST_CASE("eigen clusters: multiplicities and partitions are consistent") {
    auto gen = testutil::rng(7);
    for (int trial = 0; trial < 8; ++trial) {
        CMatrix m = testutil::random_matrix(gen, 4, 4);
        auto ec = eigen_clusters(m);
        int total = 0;
        for (const auto& c : ec.clusters) {
            total += c.multiplicity;
            int psum = 0;
            for (int p : c.jordan_partition) psum += p;
            CHECK(psum == c.multiplicity);
        }
        CHECK(total == 4);
    }
}

TEST_CASE("eigen clusters flag nearly merged spectra") {
    CMatrix d = CMatrix::Zero(2, 2);
    d.diagonal() << 1.0, 1.0 + 5e-7;
    auto ec = eigen_clusters(d);
    CHECK(ec.clusters.size() == 2);
    CHECK(ec.non_generic);
}

TEST_CASE("subspace sums") {
    auto gen = testutil::rng(3);
    Subspace a = image(testutil::random_matrix(gen, 4, 2));
    CHECK(subspace_sum(a, a).dim() == a.dim());

    CMatrix e1 = CMatrix::Zero(2, 1), e2 = CMatrix::Zero(2, 1);
    e1(0, 0) = 1;
    e2(1, 0) = 1;
    CHECK(subspace_sum(Subspace{e1}, Subspace{e2}).dim() == 2);

    // span{(1,0,0)} + span{(1,1,0)}: Gram-Schmidt gives the x3 = 0 plane
    CMatrix v1 = CMatrix::Zero(3, 1), v2 = CMatrix::Zero(3, 1);
    v1(0, 0) = 1;
    v2(0, 0) = 1.0 / std::sqrt(2.0);
    v2(1, 0) = 1.0 / std::sqrt(2.0);
    Subspace s = subspace_sum(Subspace{v1}, Subspace{v2});
    REQUIRE(s.dim() == 2);
    CVector e3 = CVector::Zero(3);
    e3(2) = 1;
    CHECK((s.basis * (s.basis.adjoint() * e3)).norm() < 1e-12);

    CHECK_THROWS_AS(subspace_sum(Subspace{v1}, Subspace{e1}), DimensionError);
}

TEST_CASE("subspace_sum is commutative and monotone") {
    auto gen = testutil::rng(11);
    for (int trial = 0; trial < 6; ++trial) {
        Subspace a = image(testutil::random_matrix(gen, 5, 2));
        Subspace b = image(testutil::random_matrix(gen, 5, 3));
        Subspace ab = subspace_sum(a, b);
        Subspace ba = subspace_sum(b, a);
        CHECK(ab.dim() == ba.dim());
        CHECK(ab.dim() >= std::max(a.dim(), b.dim()));
        CHECK(ab.dim() <= a.dim() + b.dim());
    }
}

TEST_CASE("quotient_action on trivial subspaces") {
    auto gen = testutil::rng(13);
    CMatrix m = testutil::random_matrix(gen, 4, 4);
    auto qa = quotient_action(m, Subspace::zero(4));
    CHECK((qa.action - m).norm() < 1e-13);
    CHECK((qa.proj - CMatrix::Identity(4, 4)).norm() < 1e-13);

    Subspace w = image(testutil::random_matrix(gen, 4, 2));
    auto qi = quotient_action(CMatrix::Identity(4, 4), w);
    CHECK((qi.action - CMatrix::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("quotient_action commutes through proj and rejects non-invariant subspaces") {
    auto gen = testutil::rng(17);
    TolerancePolicy tol;
    for (int trial = 0; trial < 6; ++trial) {
        // m with an invariant plane: block triangular in a random unitary frame
        CMatrix frame = testutil::random_matrix(gen, 4, 4);
        Eigen::HouseholderQR<CMatrix> qr(frame);
        CMatrix u = qr.householderQ();
        CMatrix block = testutil::random_matrix(gen, 4, 4);
        block.block(2, 0, 2, 2).setZero();  // preserves span(u.col(0), u.col(1))
        CMatrix m = u * block * u.adjoint();
        Subspace w{u.leftCols(2)};
        auto qa = quotient_action(m, w, tol);
        CHECK((qa.proj * m - qa.action * qa.proj).norm() <=
              10 * tol.residual_tol * std::max(1.0, m.norm()));

        CMatrix bad = testutil::random_matrix(gen, 4, 4);
        CHECK_THROWS_AS(quotient_action(bad, w, tol), NotInvariantError);
    }
}

}  // TEST_SUITE
