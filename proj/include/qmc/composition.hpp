#pragma once

#include "qmc/system.hpp"

namespace qmc {

struct StarReport {
    bool star = false;
    bool doublestar = false;
    std::optional<CVector> star_witness;        // vector violating (*)
    std::optional<CVector> doublestar_witness;  // left vector violating (**)
};

/// (*): no i admits a nonzero vector killed by every other B_j that is also
/// an eigenvector of B_i. The tau quantifier reduces to the eigenvalues of
/// B_i, so the check is a finite eigenspace/kernel intersection sweep.
bool check_star(const SystemTuple& t, const TolerancePolicy& tol = {},
                CVector* witness = nullptr);

/// (**): dual condition under conjugate transpose.
bool check_doublestar(const SystemTuple& t, const TolerancePolicy& tol = {},
                      CVector* witness = nullptr);

StarReport star_report(const SystemTuple& t, const TolerancePolicy& tol = {});

/// Two convolutions in a row; block identity used as the oracle form of the
/// composite action.
SystemTuple compose_convolutions(const SystemTuple& t, Complex l1, Complex l2);

struct AdditivityReport {
    int dim_composite = 0;
    int dim_direct = 0;
    bool dims_match = false;
    double welldef_residual = 0.0;     // the induced map is well defined on classes
    double intertwine_residual = 0.0;  // max_j |Phi Gbar_j(l1,l2) - Gbar_j(l1+l2) Phi|
    double phi_min_singular = 0.0;     // invertibility margin of the induced map
    bool passes = false;
};

/// Composition law mc_{l2} o mc_{l1} vs mc_{l1+l2}: equal reduced dimensions
/// and an explicit invertible intertwiner built from the map
/// phi(v) = sum_j G_j(l1) v_j. Requires (*) and (**) (StarViolationError) and
/// l1 != 0 != l2 for the explicit route.
AdditivityReport additivity_check(const SystemTuple& t, Complex l1, Complex l2,
                                  double tol = 1e-8);

/// One step of the alternative composition: quotient in the
/// (F_infinity; F_i) convention followed by the exponent shift, which in
/// residue form is q^lambda times the middle convolution.
MCResult psi_bar(const SystemTuple& t, Complex lambda, const TolerancePolicy& tol = {});

struct SyAdditivityReport {
    Complex composite_parameter;   // recovered from det matching
    Complex expected_parameter;    // log(q^l1 + q^l2 - 1)/log q
    double parameter_error = 0.0;
    bool dims_match = false;
    bool passes = false;
};

/// Verifies the composite parameter law of the psi_bar flavour on a rank-one
/// seed: applying psi_bar twice lands on psi_bar of
/// log(q^l1 + q^l2 - 1)/log q, recovered by matching det of the block sum.
SyAdditivityReport sy_additivity_check(const SystemTuple& t, Complex l1, Complex l2,
                                       double tol = 1e-10);

}  // namespace qmc
