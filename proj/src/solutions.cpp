#include "qmc/solutions.hpp"

#include <cmath>

namespace qmc {

SeedSolution::SeedSolution(Complex mu_, std::vector<Complex> alphas_,
                           std::vector<Complex> betas_)
    : mu(mu_), alphas(std::move(alphas_)), betas(std::move(betas_)) {
    if (alphas.size() != betas.size())
        throw ArgumentError("SeedSolution: alphas/betas length mismatch");
    for (const auto& a : alphas)
        if (a == Complex(0, 0)) throw ArgumentError("SeedSolution: alpha_j must be nonzero");
    for (const auto& b : betas)
        if (b == Complex(0, 0)) throw ArgumentError("SeedSolution: beta_j must be nonzero");
}

Complex SeedSolution::eval(const QBase& base, Complex x) const {
    Complex v = principal_pow(x, mu);
    for (std::size_t j = 0; j < alphas.size(); ++j) {
        v *= qpoch_inf(alphas[j] * x, base);
        v /= qpoch_inf_checked(betas[j] * x, base);
    }
    return v;
}

SystemTuple seed_tuple(const SeedSolution& seed, const QBase& base) {
    const int n = static_cast<int>(seed.alphas.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (seed.alphas[i] == seed.alphas[j])
                throw DegenerateError("seed_tuple: coincident alpha parameters");

    const Complex qmu = principal_pow(base.q, seed.mu);
    std::vector<Complex> poles{Complex(0, 0)};
    std::vector<CMatrix> mats;
    CMatrix b0(1, 1);
    b0(0, 0) = Complex(1, 0) - qmu;
    mats.push_back(b0);
    for (int k = 0; k < n; ++k) {
        const Complex ak = seed.alphas[k];
        Complex v = qmu * (ak - seed.betas[k]) / ak;
        for (int j = 0; j < n; ++j) {
            if (j == k) continue;
            v *= (ak - seed.betas[j]) / (ak - seed.alphas[j]);
        }
        CMatrix bk(1, 1);
        bk(0, 0) = v;
        mats.push_back(bk);
        poles.push_back(Complex(1, 0) / ak);
    }
    return SystemTuple(base, std::move(poles), std::move(mats));
}

namespace {

// Stacked integrand of the transform: block i is K(x,s)/(s-b_i) Y(s).
CVector transform_integrand(const SystemTuple& t, const std::function<CVector(Complex)>& y,
                            const KernelSpec& kernel_spec, Complex x, Complex s) {
    const QBase base = t.base();
    const int n1 = t.num_poles();
    const int mm = t.m();
    const Complex kval = kernel_eval(kernel_spec, base, x, s);
    const CVector ys = y(s);
    if (ys.size() != mm) throw DimensionError("convolve_solution: solution size mismatch");
    CVector out(n1 * mm);
    for (int i = 0; i < n1; ++i) {
        const Complex d = s - t.poles[i];
        // s -> 0 along the grid is the integration endpoint, not a collision
        if (i > 0 && std::abs(d) < 1e-10 * std::abs(t.poles[i]))
            throw PoleError("convolve_solution: grid point hits a pole");
        out.segment(i * mm, mm) = (kval / d) * ys;
    }
    return out;
}

}  // namespace

CVector convolve_solution(const SystemTuple& t, const std::function<CVector(Complex)>& y,
                          Complex xi, const KernelSpec& kernel_spec, Complex x,
                          const JacksonOptions& opt) {
    auto f = [&](Complex s) { return transform_integrand(t, y, kernel_spec, x, s); };
    return jackson_integral(f, xi, t.base(), opt).value;
}

CVector truncated_transform(const SystemTuple& t, const std::function<CVector(Complex)>& y,
                            Complex xi, const KernelSpec& kernel_spec, Complex x, int k,
                            int l) {
    JacksonOptions opt;
    opt.fixed_range = std::make_pair(k, l);
    return convolve_solution(t, y, xi, kernel_spec, x, opt);
}

double truncated_identity_residual(const SystemTuple& t,
                                   const std::function<CVector(Complex)>& y, Complex xi,
                                   const KernelSpec& kernel_spec, Complex x, int k, int l) {
    const QBase base = t.base();
    const Complex q = base.q;
    const Complex la = kernel_spec.lambda;
    const Complex qml = principal_pow(q, -la);
    const int n1 = t.num_poles();
    const int mm = t.m();

    const CVector at_x = truncated_transform(t, y, xi, kernel_spec, x, k, l);
    const CVector at_qx = truncated_transform(t, y, xi, kernel_spec, q * x, k, l);

    // Boundary bracket K(x, q^{k-1} xi) Y(q^k xi) - K(x, q^l xi) Y(q^{l+1} xi).
    const Complex s_lo = principal_pow(q, Complex(k - 1, 0)) * xi;
    const Complex s_hi = principal_pow(q, Complex(l, 0)) * xi;
    const CVector boundary =
        kernel_eval(kernel_spec, base, x, s_lo) * y(principal_pow(q, Complex(k, 0)) * xi) -
        kernel_eval(kernel_spec, base, x, s_hi) * y(principal_pow(q, Complex(l + 1, 0)) * xi);

    // sum_j B_j block-applied to the stacked transform.
    CVector weighted = CVector::Zero(mm);
    for (int j = 0; j < n1; ++j) weighted += t.matrices[j] * at_x.segment(j * mm, mm);

    double worst = 0.0;
    for (int i = 0; i < n1; ++i) {
        const Complex d = x - t.poles[i];
        const CVector lhs = (at_qx.segment(i * mm, mm) - at_x.segment(i * mm, mm)) / (-x);
        const CVector rhs = (Complex(1, 0) - qml) / d * at_x.segment(i * mm, mm) +
                            qml / d * weighted -
                            (Complex(1, 0) - q) * qml / d * boundary;
        worst = std::max(worst, (lhs - rhs).norm() / (1.0 + at_x.norm()));
    }
    return worst;
}

ConvergenceCertificate convergence_certificate(const SystemTuple& t, Complex lambda) {
    ConvergenceCertificate cert;
    const int mm = t.m();
    CMatrix i_minus_b0 = CMatrix::Identity(mm, mm) - t.matrices[0];
    CMatrix i_minus_sum = t.b_infinity();

    Eigen::ComplexEigenSolver<CMatrix> es0(i_minus_b0, false);
    Eigen::ComplexEigenSolver<CMatrix> ess(i_minus_sum, false);
    cert.max_abs_b0 = 0.0;
    cert.min_abs_sum = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < mm; ++i) {
        cert.eig_i_minus_b0.push_back(es0.eigenvalues()(i));
        cert.eig_i_minus_sum.push_back(ess.eigenvalues()(i));
        cert.max_abs_b0 = std::max(cert.max_abs_b0, std::abs(es0.eigenvalues()(i)));
        cert.min_abs_sum = std::min(cert.min_abs_sum, std::abs(ess.eigenvalues()(i)));
    }
    cert.q_lambda_abs = std::abs(principal_pow(t.q, lambda));
    cert.passes = cert.max_abs_b0 < 1.0 && cert.min_abs_sum > cert.q_lambda_abs;
    return cert;
}

Complex closed_form_qhg(QhgClosedForm variant, const QhgParams& p, const QBase& base,
                        Complex x) {
    const Complex q = base.q;
    const Complex one(1, 0);
    auto qp = [&](Complex e) { return principal_pow(q, e); };
    const Complex mu = p.mu, la = p.lambda, al = p.alpha, be = p.beta;
    // The alternate seed exponent: q^mu_t alpha/beta = q^mu on the principal branch.
    const Complex mu_t = mu + std::log(be / al) / std::log(q);

    switch (variant) {
        case QhgClosedForm::y0al: {
            const Complex pref = (one - q) * qp(mu) * principal_pow(al, -mu) *
                                 principal_pow(x, -la) *
                                 qpoch_inf_many({q, qp(mu + one) * be / al}, base) /
                                 (qpoch_inf_checked(q * be / al, base) *
                                  qpoch_inf_checked(qp(mu), base));
            return pref *
                   phi21(qp(la), qp(mu), qp(mu + one) * be / al, base, q * q / (al * x)).value;
        }
        case QhgClosedForm::y0la: {
            const Complex pref = (one - q) * qp(-la * mu) * principal_pow(x, mu - la) *
                                 qpoch_inf_many({q, qp(-la + mu + one)}, base) /
                                 (qpoch_inf_checked(qp(-la + one), base) *
                                  qpoch_inf_checked(qp(mu), base));
            return pref * phi21(al / be, qp(mu), qp(-la + mu + one), base, qp(-la) * be * x).value;
        }
        case QhgClosedForm::y0be_first: {
            const Complex pref = (one - q) * principal_pow(be, la - mu_t) *
                                 qpoch_inf_many({q, qp(la - mu + one)}, base) /
                                 (qpoch_inf_checked(q * be / al, base) *
                                  qpoch_inf_checked(qp(la - mu) * al / be, base));
            return pref *
                   phi21(qp(la), qp(la - mu) * al / be, qp(la - mu + one), base,
                         qp(-la) * be * x)
                       .value;
        }
        case QhgClosedForm::y0be_second: {
            const Complex pref = (one - q) * qp(la - mu) * (al / be) *
                                 principal_pow(x, mu_t - la) *
                                 qpoch_inf_many({q, qp(-mu + one) * al / be}, base) /
                                 (qpoch_inf_checked(qp(-la + one), base) *
                                  qpoch_inf_checked(qp(la - mu) * al / be, base));
            return pref *
                   phi21(al / be, qp(la - mu) * al / be, qp(-mu + one) * al / be, base,
                         q * q / (al * x))
                       .value;
        }
    }
    throw ArgumentError("closed_form_qhg: unknown variant");
}

Complex closed_form_3phi2(const Ghg3Params& p, const QBase& base, Complex x) {
    const Complex q = base.q;
    const Complex one(1, 0);
    auto qp = [&](Complex e) { return principal_pow(q, e); };
    const Complex mu = p.mu, la = p.lambda, mu2 = p.mu2, la2 = p.lambda2;
    const Complex al = p.alpha, be = p.beta;
    const Complex z = qp(-la2 - la) * be * x;
    const Complex pref =
        (one - q) * (one - q) * qp(-la2 * mu - la * mu - la2 * mu2 + la2 * la) *
        qpoch_inf_many({q, q, qp(mu - la + one), qp(mu2 + mu - la - la2 + one)}, base) /
        (qpoch_inf_checked(qp(one - la2), base) * qpoch_inf_checked(qp(one - la), base) *
         qpoch_inf_checked(qp(mu), base) * qpoch_inf_checked(qp(mu2 + mu - la), base)) *
        principal_pow(x, mu2 + mu - la2 - la);
    return pref * phi32(al / be, qp(mu), qp(mu2 + mu - la), qp(mu - la + one),
                        qp(mu2 + mu - la - la2 + one), base, z)
                      .value;
}

Complex double_integral_3phi2(const Ghg3Params& p, const QBase& base, Complex x,
                              const JacksonOptions& opt) {
    const Complex q = base.q;
    const Complex xi_outer = principal_pow(q, -p.lambda2) * x;
    const SeedSolution seed(p.mu, {p.alpha}, {p.beta});
    const KernelSpec k_inner{KernelSpec::Variant::K1, p.lambda};
    const KernelSpec k_outer{KernelSpec::Variant::K1, p.lambda2};

    // At these anchors the inner grid is q^{-lambda} s up to an integer shift,
    // and the kernel zeros cut the sum off below that point. Anchoring at
    // q^{-lambda} s starts the walk on the surviving wedge.
    auto inner = [&](Complex s) {
        auto f = [&](Complex t) { return kernel_eval(k_inner, base, s, t) / t * seed.eval(base, t); };
        return jackson_integral_scalar(f, principal_pow(q, -p.lambda) * s, base, opt).value;
    };
    auto outer = [&](Complex s) {
        return kernel_eval(k_outer, base, x, s) * principal_pow(s, p.mu2) / s * inner(s);
    };
    return jackson_integral_scalar(outer, xi_outer, base, opt).value;
}

}  // namespace qmc
