#pragma once

#include "qmc/system.hpp"

namespace qmc {

/// Rank-one seed y(x) = x^mu prod_j (alpha_j x;q)_inf / (beta_j x;q)_inf.
struct SeedSolution {
    Complex mu;
    std::vector<Complex> alphas;
    std::vector<Complex> betas;

    SeedSolution(Complex mu_, std::vector<Complex> alphas_, std::vector<Complex> betas_);

    Complex eval(const QBase& base, Complex x) const;
};

/// The 1x1 system the seed satisfies: poles (0, 1/alpha_1, ..., 1/alpha_N),
/// B_0 = 1 - q^mu, B_k = q^mu (alpha_k - beta_k)/alpha_k prod_{j != k} ...
SystemTuple seed_tuple(const SeedSolution& seed, const QBase& base);

/// Stacked Jackson-integral transform: block i is
///   int K_lambda(x,s)/(s - b_i) Y(s) d_q s  over the grid {q^n xi}.
/// Y is any evaluator for a solution of t. Grid points within 1e-10 of a pole
/// abort with PoleError.
CVector convolve_solution(const SystemTuple& t, const std::function<CVector(Complex)>& y,
                          Complex xi, const KernelSpec& kernel_spec, Complex x,
                          const JacksonOptions& opt = {});

/// Finite truncation of the same transform, summed over n in [k, l].
CVector truncated_transform(const SystemTuple& t, const std::function<CVector(Complex)>& y,
                            Complex xi, const KernelSpec& kernel_spec, Complex x, int k,
                            int l);

/// Defect of the finite-truncation difference relation with its boundary
/// terms; vanishes identically (up to rounding) for solutions of t.
double truncated_identity_residual(const SystemTuple& t,
                                   const std::function<CVector(Complex)>& y, Complex xi,
                                   const KernelSpec& kernel_spec, Complex x, int k, int l);

struct ConvergenceCertificate {
    std::vector<Complex> eig_i_minus_b0;
    std::vector<Complex> eig_i_minus_sum;
    double max_abs_b0 = 0.0;
    double min_abs_sum = 0.0;
    double q_lambda_abs = 0.0;
    bool passes = false;
};

/// Sufficient condition for the transform of t with parameter lambda to
/// converge and solve the convolved system: every eigenvalue of I - B_0 inside
/// the unit circle, every eigenvalue of I - sum B_i outside |q^lambda|.
ConvergenceCertificate convergence_certificate(const SystemTuple& t, Complex lambda);

struct QhgParams {
    Complex mu, lambda, alpha, beta;
};

enum class QhgClosedForm { y0al, y0la, y0be_first, y0be_second };

/// The four 2phi1 closed forms of the transformed q-hypergeometric solution,
/// one per anchor choice (xi = 1/alpha, q^-lambda x, 1/beta, x).
Complex closed_form_qhg(QhgClosedForm variant, const QhgParams& p, const QBase& base,
                        Complex x);

struct Ghg3Params {
    Complex mu, lambda, mu2, lambda2, alpha, beta;  // mu2/lambda2: second-step parameters
};

/// 3phi2 closed form of the order-3 solution at the specialized anchors.
Complex closed_form_3phi2(const Ghg3Params& p, const QBase& base, Complex x);

/// Double Jackson-integral representation of the same function, evaluated with
/// nested adaptive sums at anchors xi = q^{-lambda2-lambda} x, xi' = q^{-lambda2} x.
Complex double_integral_3phi2(const Ghg3Params& p, const QBase& base, Complex x,
                              const JacksonOptions& opt = {});

}  // namespace qmc
