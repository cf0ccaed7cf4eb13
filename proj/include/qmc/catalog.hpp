#pragma once

#include <functional>
#include <string>

#include "qmc/solutions.hpp"

namespace qmc::catalog {

/// Parameters for every named construction; unused fields are ignored.
/// Constraints (the deg-3 and double-gauge families fix lambda / lambda2
/// from the alpha/beta/gamma data) are applied by build().
struct Params {
    Complex q{0.4, 0.0};
    Complex mu{0.7, 0.0};
    Complex lambda{0.3, 0.0};
    Complex mu2{0.6, 0.0};      // second-step exponent (mu')
    Complex lambda2{0.55, 0.0}; // second-step convolution parameter (lambda')
    std::vector<Complex> alphas{{1.0, 0.0}, {1.7, 0.0}, {2.9, 0.0}};
    std::vector<Complex> betas{{1.5, 0.0}, {0.6, 0.0}, {1.3, 0.0}};
    std::vector<Complex> gammas{{2.2, 0.0}, {0.8, 0.0}};
    int jp_n = 2;  // pole count for the Jordan-Pochhammer family
};

struct McStepReport {
    int dim_k = 0;
    int dim_l = 0;
    int quotient = 0;
    int expected_k = -1;  // -1: no expectation recorded
    int expected_l = -1;
};

/// A named construction: the chain of tuples it produces, the mc step
/// reports, and (when the source prints them) reference matrices in the
/// printed basis with the change-of-basis columns (lift) identifying the
/// printed quotient representatives inside the convolved space.
struct BuildResult {
    std::string name;
    std::vector<SystemTuple> chain;           // every stage, seed first
    std::vector<MCResult> mc_steps;           // one per middle convolution
    std::vector<McStepReport> mc_reports;
    // Printed-basis data (empty when not applicable):
    std::vector<SystemTuple> printed_stages;  // reference tuples per printed stage
    CMatrix printed_lift;                     // complement columns of the printed P
    int scalar_component = 0;                 // which component satisfies the scalar eq
};

const std::vector<std::string>& names();

/// Reproducible generic parameter draw: moduli in [0.3, 2], arguments away
/// from the negative real axis, real exponents in [0.25, 1.15].
Params random_params(unsigned seed);

BuildResult build(const std::string& name, const Params& p);

/// The reference tuple of a named construction in the printed basis
/// (final stage), used by the scalar-equation and spectral fixtures.
SystemTuple printed_tuple(const std::string& name, const Params& p);

struct ScalarEquation {
    int order = 3;
    // coeff(j, x) multiplies g(q^j x), j = 0..order
    std::function<Complex(int, Complex)> coeff;
    std::vector<int> coeff_degrees;  // stated polynomial degree per name
};

/// The explicit scalar q-difference equation attached to a named
/// construction (qhg, ghg3, ghg3_alt, s46, s47, s48).
ScalarEquation scalar_equation(const std::string& name, const Params& p);

struct CrossCheckReport {
    std::string name;
    double max_residual = 0.0;
    int points = 0;
    bool degrees_ok = false;
    std::vector<int> fitted_degrees;
};

/// Propagates the printed-basis system from a random initial vector and
/// evaluates the scalar equation along the grid; also fits the coefficient
/// polynomial degrees. Verifies the scalar-equation derivation numerically.
CrossCheckReport cross_check_scalar(const std::string& name, const Params& p, Complex x0,
                                    int points, unsigned seed);

struct LimitReport {
    std::vector<double> q_values;
    std::vector<double> distances;  // max_i || B_i/(1-q) - limit_i ||
    std::vector<double> ratios;     // successive distance ratios
    bool ratios_in_band = false;    // all ratios within [0.05, 0.2]
    bool residue_rank_ok = false;   // rank-one residue matrix claims
};

/// Continuum-limit check for {qhg, ghg3, ghg3_alt}: reparametrizes
/// beta/alpha = q^nu (and alpha/gamma = q^nu2), measures the distance of the
/// divided-difference residue matrices to the limiting differential system.
LimitReport q_to_1_limit(const std::string& name, Complex mu, Complex lambda, Complex mu2,
                         Complex lambda2, Complex nu, Complex nu2, Complex alpha,
                         const std::vector<double>& q_seq);

struct SpectralRow {
    std::string name;
    int jp_n;  // 0 when not the Jordan-Pochhammer family
    std::string expected;
};

/// The ten catalogued systems with their spectral-type strings.
const std::vector<SpectralRow>& spectral_table();

}  // namespace qmc::catalog
