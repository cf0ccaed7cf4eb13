#include <doctest.h>

#include "qmc/catalog.hpp"
#include "test_util.hpp"

using namespace qmc;
using catalog::Params;

namespace {

// Intertwiner from the proj/lift pair: S carries printed-basis vectors to the
// pipeline's quotient representatives; both actions must commute through it.
double alignment_residual(const MCResult& mc, const CMatrix& printed_lift,
                          const SystemTuple& printed, double* cond = nullptr) {
    const CMatrix s = mc.proj * printed_lift;
    if (cond) {
        Eigen::JacobiSVD<CMatrix> svd(s);
        *cond = svd.singularValues()(0) / svd.singularValues().tail(1)(0);
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < printed.matrices.size(); ++i) {
        const CMatrix lhs = s * printed.matrices[i];
        const CMatrix rhs = mc.reduced.matrices[i] * s;
        worst = std::max(worst, (lhs - rhs).norm() /
                                    std::max(1.0, printed.matrices[i].norm()));
    }
    return worst;
}

void check_build_against_fixtures(const std::string& name, const Params& p) {
    CAPTURE(name);
    auto res = catalog::build(name, p);
    REQUIRE(res.printed_stages.size() >= 2);
    REQUIRE(res.chain.size() >= 2);

    // The last stage before the quotient is plain operator algebra in the
    // printed basis, so it must coincide entrywise.
    const SystemTuple& ours = res.chain[res.chain.size() - (res.mc_steps.empty() ? 1 : 2)];
    const SystemTuple& ref = res.printed_stages[res.printed_stages.size() - 2];
    REQUIRE(ours.m() == ref.m());
    for (std::size_t i = 0; i < ref.matrices.size(); ++i) {
        CHECK((ours.matrices[i] - ref.matrices[i]).norm() <=
              1e-10 * (1 + ref.matrices[i].norm()));
        CHECK(std::abs(ours.poles[i] - ref.poles[i]) < 1e-14);
    }

    if (!res.mc_steps.empty()) {
        double cond = 0.0;
        const double r = alignment_residual(res.mc_steps.back(), res.printed_lift,
                                            res.printed_stages.back(), &cond);
        CHECK(r <= 1e-10);
        CHECK(cond < 1e6);
    }
}

}  // namespace

TEST_SUITE("catalog") {

TEST_CASE("rank-one convolution fixture and its determinant") {
    Params p;
    auto res = catalog::build("qhg", p);
    const SystemTuple& conv = res.chain.back();
    const SystemTuple& printed = res.printed_stages.back();
    for (int i = 0; i < 2; ++i)
        CHECK((conv.matrices[i] - printed.matrices[i]).norm() < 1e-13);

    const CMatrix sum = conv.matrices[0] + conv.matrices[1];
    const Complex q = p.q;
    const Complex expect = (Complex(1, 0) - principal_pow(q, -p.lambda)) *
                           (Complex(1, 0) - principal_pow(q, p.mu - p.lambda) * p.betas[0] /
                                                p.alphas[0]);
    CHECK(std::abs(sum.determinant() - expect) < 1e-14);
}

TEST_CASE("order-3 chain: addition fixture, kernel vector, quotient alignment") {
    Params p;
    auto res = catalog::build("ghg3", p);
    REQUIRE(res.mc_reports.size() == 1);
    CHECK(res.mc_reports[0].dim_k == 1);
    CHECK(res.mc_reports[0].dim_l == 0);
    CHECK(res.mc_reports[0].quotient == 3);

    // the added pair equals the printed one
    const SystemTuple& added = res.chain[2];
    const SystemTuple& printed_added = res.printed_stages[1];
    for (int i = 0; i < 2; ++i)
        CHECK((added.matrices[i] - printed_added.matrices[i]).norm() < 1e-13);

    // printed kernel vector of the second residue matrix
    const Complex q = p.q;
    CVector kv(2);
    kv << principal_pow(q, p.mu) * (Complex(1, 0) - p.betas[0] / p.alphas[0]) +
              principal_pow(q, p.lambda) - Complex(1, 0),
        principal_pow(q, p.mu) - Complex(1, 0);
    CHECK((printed_added.matrices[1] * kv).norm() < 1e-14);
    // and K is exactly that direction, embedded in the second block
    const CVector emb = res.mc_steps[0].k_space.basis.col(0);
    CHECK(emb.head(2).norm() < 1e-12);
    const Complex overlap =
        ((kv / kv.norm()).adjoint() * emb.tail(2))(0) / emb.tail(2).norm();
    CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-12);

    // det(G'_0 + G'_1) on the 4x4 convolution
    SystemTuple conv4 = q_convolution(added, p.lambda2);
    const Complex det = (conv4.matrices[0] + conv4.matrices[1]).determinant();
    const Complex qml2 = principal_pow(q, -p.lambda2);
    const Complex expect =
        (Complex(1, 0) - qml2) * (Complex(1, 0) - qml2) *
        (Complex(1, 0) - principal_pow(q, p.mu2 - p.lambda - p.lambda2)) *
        (Complex(1, 0) -
         principal_pow(q, p.mu + p.mu2 - p.lambda - p.lambda2) * p.betas[0] / p.alphas[0]);
    CHECK(std::abs(det - expect) < 1e-13);

    check_build_against_fixtures("ghg3", p);
}

TEST_CASE("pole-moved chain: gauge fixture and determinant") {
    Params p;
    auto res = catalog::build("ghg3_alt", p);
    CHECK(res.mc_reports[0].dim_k == 1);
    CHECK(res.mc_reports[0].dim_l == 0);

    const SystemTuple& moved = res.chain[2];
    const SystemTuple& printed_moved = res.printed_stages[1];
    for (int i = 0; i < 2; ++i)
        CHECK((moved.matrices[i] - printed_moved.matrices[i]).norm() < 1e-13);

    const Complex q = p.q;
    const CMatrix& b1 = moved.matrices[1];
    const Complex det = b1(0, 0) * b1(1, 1) - b1(0, 1) * b1(1, 0);
    const Complex expect =
        principal_pow(q, p.mu - p.lambda) * (Complex(1, 0) - p.alphas[0] / p.gammas[0]) *
        (Complex(1, 0) - principal_pow(q, -p.lambda) * p.betas[0] / p.gammas[0]);
    CHECK(std::abs(det - expect) < 1e-14);

    // printed kernel vector of the first residue matrix
    CVector kv(2);
    kv << principal_pow(q, p.mu) * (Complex(1, 0) - p.betas[0] / p.alphas[0]),
        principal_pow(q, p.mu) - principal_pow(q, p.lambda);
    CHECK((printed_moved.matrices[0] * kv).norm() < 1e-14);

    check_build_against_fixtures("ghg3_alt", p);
}

TEST_CASE("degree-2/3 variant quotients land on the printed blocks") {
    Params p;
    check_build_against_fixtures("variant_deg2", p);
    auto res2 = catalog::build("variant_deg2", p);
    CHECK(res2.mc_reports[0].dim_k == 1);
    CHECK(res2.mc_reports[0].dim_l == 0);
    CHECK(res2.chain.back().m() == 2);
    // the reduced zero block stays numerically zero
    CHECK(res2.chain.back().matrices[0].norm() < 1e-12);

    check_build_against_fixtures("variant_deg3", p);
    auto res3 = catalog::build("variant_deg3", p);
    CHECK(res3.mc_reports[0].dim_k == 1);
    CHECK(res3.mc_reports[0].dim_l == 1);
    CHECK(res3.chain.back().m() == 2);
}

TEST_CASE("double-gauge chains reproduce printed entries and space dimensions") {
    Params p;
    check_build_against_fixtures("s46", p);
    auto r46 = catalog::build("s46", p);
    CHECK(r46.mc_reports[0].dim_k == 3);
    CHECK(r46.mc_reports[0].dim_l == 0);

    // kernel vector of the second pole's matrix: (q^lambda + B2 - 1, -B1)
    const Complex q = p.q;
    const Complex a1 = p.alphas[0], a2 = p.alphas[1], b1 = p.betas[0], b2 = p.betas[1];
    const Complex B1 = (a1 - b1) * (a1 - b2) / (a1 * (a1 - a2));
    const Complex B2 = (a2 - b1) * (a2 - b2) / (a2 * (a2 - a1));
    CVector kv(2);
    kv << principal_pow(q, p.lambda) + B2 - Complex(1, 0), -B1;
    CHECK((r46.printed_stages[1].matrices[2] * kv).norm() < 1e-13);

    check_build_against_fixtures("s47", p);
    auto r47 = catalog::build("s47", p);
    CHECK(r47.mc_reports[0].dim_k == 2);
    CHECK(r47.mc_reports[0].dim_l == 1);
    // the L generator has the printed (B2, -B1) repetition pattern
    const CVector lv = r47.mc_steps[0].l_space.basis.col(0);
    CVector pattern(6);
    pattern << B2, -B1, B2, -B1, B2, -B1;
    pattern.normalize();
    CHECK(std::abs(std::abs((pattern.adjoint() * lv)(0)) - 1.0) < 1e-10);

    check_build_against_fixtures("s48", p);
    auto r48 = catalog::build("s48", p);
    CHECK(r48.mc_reports[0].dim_k == 3);
    CHECK(r48.mc_reports[0].dim_l == 2);
}

TEST_CASE("non-generic parameters are rejected with a dedicated error") {
    Params p;
    p.lambda = Complex(0, 0);  // the block sum becomes rank deficient
    CHECK_THROWS_AS(catalog::build("qhg", p), NonGenericParameterError);
    CHECK_THROWS_AS(catalog::build("nope", p), ArgumentError);
}

TEST_CASE("scalar equations hold along propagated trajectories") {
    // three independent draws per construction, thirty grid points each
    const std::vector<std::pair<std::string, int>> cases{
        {"qhg", 1}, {"ghg3", 1}, {"ghg3_alt", 2}, {"s46", 3}, {"s47", 4}, {"s48", 5}};
    for (const auto& [name, degree] : cases) {
        CAPTURE(name);
        for (unsigned draw = 0; draw < 3; ++draw) {
            Params p = catalog::random_params(101 + 37 * draw);
            auto rep = catalog::cross_check_scalar(name, p, Complex(1.1, 0.3), 30,
                                                   500 + draw);
            CAPTURE(draw);
            CHECK(rep.max_residual < 1e-8);
            CHECK(rep.degrees_ok);
            int maxdeg = 0;
            for (int d : rep.fitted_degrees) maxdeg = std::max(maxdeg, d);
            CHECK(maxdeg == degree);
        }
    }
}

TEST_CASE("continuum limits shrink linearly and keep rank-one residues") {
    for (const std::string name : {"qhg", "ghg3", "ghg3_alt"}) {
        CAPTURE(name);
        auto rep = catalog::q_to_1_limit(name, Complex(0.7, 0), Complex(0.3, 0),
                                         Complex(0.6, 0), Complex(0.55, 0), Complex(0.9, 0),
                                         Complex(0.8, 0), Complex(1.0, 0),
                                         {0.9, 0.99, 0.999});
        REQUIRE(rep.ratios.size() == 2);
        CHECK(rep.ratios_in_band);
        CHECK(rep.residue_rank_ok);
    }

    // nu = 0 collapses the off-diagonal limit entries consistently
    auto rep0 = catalog::q_to_1_limit("qhg", Complex(0.7, 0), Complex(0.3, 0),
                                      Complex(0.6, 0), Complex(0.55, 0), Complex(0, 0),
                                      Complex(0.8, 0), Complex(1.0, 0), {0.9, 0.99, 0.999});
    CHECK(rep0.ratios_in_band);
}

}  // TEST_SUITE
