#include "qmc/composition.hpp"

#include <cmath>

namespace qmc {

namespace {

// Intersection of all kernels ker B_j, j != skip; full space when the index
// set is empty (N = 0 and skip = 0).
Subspace other_kernels(const SystemTuple& t, int skip, const TolerancePolicy& tol) {
    const int mm = t.m();
    Subspace acc = Subspace::full(mm);
    for (int j = 0; j < t.num_poles(); ++j) {
        if (j == skip) continue;
        acc = subspace_intersection(acc, kernel(t.matrices[j], tol), tol);
        if (acc.dim() == 0) break;
    }
    return acc;
}

bool star_impl(const SystemTuple& t, const TolerancePolicy& tol, CVector* witness) {
    for (int i = 0; i < t.num_poles(); ++i) {
        Subspace w = other_kernels(t, i, tol);
        if (w.dim() == 0) continue;
        Eigen::ComplexEigenSolver<CMatrix> es(t.matrices[i], true);
        for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
            const CMatrix shifted =
                t.matrices[i] - es.eigenvalues()(k) * CMatrix::Identity(t.m(), t.m());
            Subspace eigsp = kernel(shifted, tol);
            Subspace cap = subspace_intersection(eigsp, w, tol);
            if (cap.dim() > 0) {
                if (witness) *witness = cap.basis.col(0);
                return false;
            }
        }
    }
    return true;
}

SystemTuple adjoint_tuple(const SystemTuple& t) {
    std::vector<CMatrix> out;
    out.reserve(t.matrices.size());
    for (const auto& b : t.matrices) out.push_back(b.adjoint());
    return SystemTuple(t.base(), t.poles, std::move(out));
}

}  // namespace

bool check_star(const SystemTuple& t, const TolerancePolicy& tol, CVector* witness) {
    return star_impl(t, tol, witness);
}

bool check_doublestar(const SystemTuple& t, const TolerancePolicy& tol, CVector* witness) {
    // Sum of images + im(B_i + tau) covers V iff no left eigenvector of B_i
    // annihilates every other image: the (*) test on the adjoint tuple.
    return star_impl(adjoint_tuple(t), tol, witness);
}

StarReport star_report(const SystemTuple& t, const TolerancePolicy& tol) {
    StarReport rep;
    CVector w1, w2;
    rep.star = check_star(t, tol, &w1);
    rep.doublestar = check_doublestar(t, tol, &w2);
    if (!rep.star) rep.star_witness = w1;
    if (!rep.doublestar) rep.doublestar_witness = w2;
    return rep;
}

SystemTuple compose_convolutions(const SystemTuple& t, Complex l1, Complex l2) {
    return q_convolution(q_convolution(t, l1), l2);
}

AdditivityReport additivity_check(const SystemTuple& t, Complex l1, Complex l2, double tol) {
    TolerancePolicy tp;
    if (!check_star(t, tp) || !check_doublestar(t, tp))
        throw StarViolationError("additivity_check: tuple fails (*) or (**)");

    AdditivityReport rep;
    const int n1 = t.num_poles();
    const int big = n1 * t.m();

    MCResult mc1 = middle_convolution(t, l1);
    MCResult mc2 = middle_convolution(mc1.reduced, l2);
    MCResult mc12 = middle_convolution(t, l1 + l2);
    rep.dim_composite = mc2.reduced.m();
    rep.dim_direct = mc12.reduced.m();
    rep.dims_match = rep.dim_composite == rep.dim_direct;
    if (!rep.dims_match) {
        rep.passes = false;
        return rep;
    }

    // phi(v) = sum_j G_j(l1) v_j maps the double conv space onto the single
    // conv space; the induced map between quotients intertwines the actions.
    SystemTuple conv1 = q_convolution(t, l1);
    CMatrix phi(big, n1 * big);
    for (int j = 0; j < n1; ++j) phi.block(0, j * big, big, big) = conv1.matrices[j];

    // Representatives of the composite quotient: proj2 after blockwise proj1.
    const int d1 = mc1.reduced.m();
    CMatrix blockproj = CMatrix::Zero(n1 * d1, n1 * big);
    for (int j = 0; j < n1; ++j)
        blockproj.block(j * d1, j * big, d1, big) = mc1.proj;
    CMatrix q2 = mc2.proj * blockproj;  // d2 x (n1*big)

    // Right inverse of the surjective q2, then the induced map.
    Eigen::JacobiSVD<CMatrix> svd(q2, Eigen::ComputeThinU | Eigen::ComputeThinV);
    CMatrix rinv = svd.solve(CMatrix::Identity(q2.rows(), q2.rows()));
    CMatrix induced = mc12.proj * phi * rinv;

    rep.welldef_residual =
        (induced * q2 - mc12.proj * phi).norm() / std::max(1.0, phi.norm());
    double worst = 0.0;
    for (int j = 0; j < n1; ++j) {
        const CMatrix lhs = induced * mc2.reduced.matrices[j];
        const CMatrix rhs = mc12.reduced.matrices[j] * induced;
        worst = std::max(worst, (lhs - rhs).norm() /
                                    std::max(1.0, mc12.reduced.matrices[j].norm()));
    }
    rep.intertwine_residual = worst;
    Eigen::JacobiSVD<CMatrix> svd_phi(induced);
    rep.phi_min_singular = svd_phi.singularValues().size()
                               ? svd_phi.singularValues().tail(1)(0)
                               : 0.0;
    rep.passes = rep.dims_match && rep.welldef_residual < tol &&
                 rep.intertwine_residual < tol && rep.phi_min_singular > 1e-10;
    if (!rep.passes && rep.dims_match && rep.intertwine_residual >= tol)
        throw IsomorphismFailureError("additivity_check: intertwining residual above tolerance");
    return rep;
}

MCResult psi_bar(const SystemTuple& t, Complex lambda, const TolerancePolicy& tol) {
    MCResult mc = middle_convolution(t, lambda, tol);
    mc.reduced = scale_matrices(mc.reduced, principal_pow(t.q, lambda));
    return mc;
}

SyAdditivityReport sy_additivity_check(const SystemTuple& t, Complex l1, Complex l2,
                                       double tol) {
    TolerancePolicy tp;
    if (!check_star(t, tp) || !check_doublestar(t, tp))
        throw StarViolationError("sy_additivity_check: tuple fails (*) or (**)");
    if (t.m() != 1)
        throw ArgumentError("sy_additivity_check: determinant matching needs a rank-one seed");

    SyAdditivityReport rep;
    const Complex q = t.q;
    MCResult first = psi_bar(t, l1);
    MCResult second = psi_bar(first.reduced, l2);

    rep.expected_parameter =
        std::log(principal_pow(q, l1) + principal_pow(q, l2) - Complex(1, 0)) / std::log(q);
    MCResult direct = psi_bar(t, rep.expected_parameter);
    rep.dims_match = second.reduced.m() == direct.reduced.m();

    // For the rank-one seed the block sum of psi_bar_nu has det
    // (q^nu - 1)(q^nu - 1 + S) with S = sum B_i; solve for q^nu and compare.
    Complex s(0, 0);
    for (const auto& b : t.matrices) s += b(0, 0);
    CMatrix sum2 = CMatrix::Zero(second.reduced.m(), second.reduced.m());
    for (const auto& g : second.reduced.matrices) sum2 += g;
    const Complex det2 = sum2.determinant();
    // y^2 + (S-2) y + (1-S) - det2 = 0 with y = q^nu
    const Complex a(1, 0), b = s - Complex(2, 0), c = Complex(1, 0) - s - det2;
    const Complex disc = std::sqrt(b * b - Complex(4, 0) * a * c);
    const Complex y1 = (-b + disc) / (Complex(2, 0) * a);
    const Complex y2 = (-b - disc) / (Complex(2, 0) * a);
    const Complex target = principal_pow(q, rep.expected_parameter);
    const Complex y = (std::abs(y1 - target) < std::abs(y2 - target)) ? y1 : y2;
    rep.composite_parameter = std::log(y) / std::log(q);
    rep.parameter_error = std::abs(y - target);
    rep.passes = rep.dims_match && rep.parameter_error < tol;
    return rep;
}

}  // namespace qmc
