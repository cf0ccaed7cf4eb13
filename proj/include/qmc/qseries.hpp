#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "qmc/linalg.hpp"

namespace qmc {

/// The base of all q-series; enforces 0 < |q| < 1.
struct QBase {
    Complex q;

    explicit QBase(Complex q_) : q(q_) {
        const double a = std::abs(q);
        if (!(a > 0.0) || !(a < 1.0))
            throw ArgumentError("QBase: need 0 < |q| < 1");
    }
    explicit QBase(double q_) : QBase(Complex(q_, 0.0)) {}
};

/// z^w on the principal branch (cut along the negative reals).
Complex principal_pow(Complex z, Complex w);

/// The two kernel families used by the integral transform. Both satisfy
///   q^lambda K(qx,s) = K(x,s/q) = (x - q^lambda s)/(x - s) K(x,s).
/// Further solutions of the same relation exist (theta-like ratios carrying
/// (bx, q/(bx); q)_inf factors for any nonzero b); none of the constructions
/// here need them, so Variant stays a two-member enum for now.
struct KernelSpec {
    enum class Variant { K1, K2 };
    Variant variant = Variant::K1;
    Complex lambda{0.0, 0.0};
};

struct SeriesResult {
    Complex value{0.0, 0.0};
    int terms_used = 0;
    double est_truncation_error = 0.0;
};

/// (a;q)_infty, truncated once |q^k a| falls below `tail_tol`.
Complex qpoch_inf(Complex a, const QBase& base, double tail_tol = 1e-17);

/// (a;q)_infty for a denominator position: a factor within 1e-12 of zero
/// raises PoleError instead of silently returning a tiny product.
Complex qpoch_inf_checked(Complex a, const QBase& base, double tail_tol = 1e-17);

/// (a;q)_n = prod_{k=0}^{n-1} (1 - q^k a); n must be >= 0.
Complex qpoch_fin(Complex a, const QBase& base, int n);

/// Convenience for products (a1, a2, ..., ak; q)_infty.
Complex qpoch_inf_many(std::initializer_list<Complex> as, const QBase& base);

SeriesResult phi21(Complex a, Complex b, Complex c, const QBase& base, Complex z,
                   double tol = 1e-14);

SeriesResult phi32(Complex a1, Complex a2, Complex a3, Complex b1, Complex b2,
                   const QBase& base, Complex z, double tol = 1e-14);

Complex kernel_eval(const KernelSpec& spec, const QBase& base, Complex x, Complex s);

struct JacksonOptions {
    // When set, sum exactly n in [first, second]; otherwise adapt both tails.
    std::optional<std::pair<int, int>> fixed_range;
    double tol = 1e-12;
    int settle = 5;      // consecutive negligible terms required to stop a tail
    int guard = 500;     // consecutive non-decreasing terms tolerated before giving up
    int max_steps = 200000;
};

struct JacksonResult {
    CVector value;
    int k_min = 0;
    int l_max = 0;
    int terms_used = 0;
    double est_error = 0.0;
};

/// (1-q) sum_n q^n xi f(q^n xi) over the bilateral q-grid through xi.
/// Terms are accumulated in a fixed order (n = 0,1,2,... then -1,-2,...),
/// so results are reproducible. Non-decaying tails raise DivergenceError.
JacksonResult jackson_integral(const std::function<CVector(Complex)>& f, Complex xi,
                               const QBase& base, const JacksonOptions& opt = {});

/// Scalar convenience wrapper.
SeriesResult jackson_integral_scalar(const std::function<Complex(Complex)>& f, Complex xi,
                                     const QBase& base, const JacksonOptions& opt = {});

}  // namespace qmc
