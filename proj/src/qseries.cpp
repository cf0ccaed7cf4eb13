#include "qmc/qseries.hpp"

#include <cmath>
#include <limits>

namespace qmc {

namespace {
constexpr int kMaxPochFactors = 4000;
}

Complex principal_pow(Complex z, Complex w) {
    if (w == Complex(0.0, 0.0)) return Complex(1.0, 0.0);
    if (z == Complex(0.0, 0.0)) return Complex(0.0, 0.0);
    return std::exp(w * std::log(z));
}

static Complex qpoch_inf_impl(Complex a, const QBase& base, double tail_tol,
                              bool checked) {
    Complex prod(1.0, 0.0);
    Complex qa = a;
    for (int k = 0; k < kMaxPochFactors; ++k) {
        if (std::abs(qa) < tail_tol) return prod;
        const Complex factor = Complex(1.0, 0.0) - qa;
        if (checked && std::abs(factor) < 1e-12)
            throw PoleError("qpoch_inf: factor vanishes in a denominator product");
        prod *= factor;
        qa *= base.q;
    }
    return prod;  // |q|^k decays geometrically; unreachable for sane tolerances
}

Complex qpoch_inf(Complex a, const QBase& base, double tail_tol) {
    return qpoch_inf_impl(a, base, tail_tol, false);
}

Complex qpoch_inf_checked(Complex a, const QBase& base, double tail_tol) {
    return qpoch_inf_impl(a, base, tail_tol, true);
}

Complex qpoch_fin(Complex a, const QBase& base, int n) {
    if (n < 0) throw ArgumentError("qpoch_fin: negative length");
    Complex prod(1.0, 0.0);
    Complex qa = a;
    for (int k = 0; k < n; ++k) {
        prod *= Complex(1.0, 0.0) - qa;
        qa *= base.q;
    }
    return prod;
}

Complex qpoch_inf_many(std::initializer_list<Complex> as, const QBase& base) {
    Complex prod(1.0, 0.0);
    for (const Complex& a : as) prod *= qpoch_inf(a, base);
    return prod;
}

// Shared driver for the basic hypergeometric series: term ratios are supplied
// by the caller, truncation and divergence handling are common.
static SeriesResult sum_hypergeometric(
    const std::function<Complex(int)>& term_ratio, double tol) {
    SeriesResult res;
    Complex term(1.0, 0.0);
    Complex sum = term;
    double running_max = 1.0;
    int small_streak = 0;
    int nondecreasing_streak = 0;
    double prev_mag = 1.0;
    for (int n = 0; n < 200000; ++n) {
        term *= term_ratio(n);
        const double mag = std::abs(term);
        if (mag == 0.0) {  // terminating series
            res.value = sum;
            res.terms_used = n + 2;
            res.est_truncation_error = 0.0;
            return res;
        }
        sum += term;
        running_max = std::max(running_max, std::abs(sum));
        if (mag <= tol * running_max) {
            if (++small_streak >= 3) {
                res.value = sum;
                res.terms_used = n + 2;
                res.est_truncation_error = 3.0 * mag;
                return res;
            }
        } else {
            small_streak = 0;
        }
        nondecreasing_streak = (mag >= prev_mag) ? nondecreasing_streak + 1 : 0;
        if (nondecreasing_streak >= 500)
            throw DivergenceError("hypergeometric series: terms stopped decaying");
        prev_mag = mag;
    }
    throw DivergenceError("hypergeometric series: truncation budget exhausted");
}

SeriesResult phi21(Complex a, Complex b, Complex c, const QBase& base, Complex z,
                   double tol) {
    const Complex q = base.q;
    return sum_hypergeometric(
        [=](int n) {
            const Complex qn = principal_pow(q, Complex(n, 0));
            const Complex den = (Complex(1, 0) - qn * c) * (Complex(1, 0) - qn * q);
            if (std::abs(Complex(1, 0) - qn * c) < 1e-12)
                throw PoleError("phi21: lower parameter on the forbidden grid");
            return (Complex(1, 0) - qn * a) * (Complex(1, 0) - qn * b) / den * z;
        },
        tol);
}

SeriesResult phi32(Complex a1, Complex a2, Complex a3, Complex b1, Complex b2,
                   const QBase& base, Complex z, double tol) {
    const Complex q = base.q;
    return sum_hypergeometric(
        [=](int n) {
            const Complex qn = principal_pow(q, Complex(n, 0));
            const Complex d1 = Complex(1, 0) - qn * b1;
            const Complex d2 = Complex(1, 0) - qn * b2;
            if (std::abs(d1) < 1e-12 || std::abs(d2) < 1e-12)
                throw PoleError("phi32: lower parameter on the forbidden grid");
            const Complex den = d1 * d2 * (Complex(1, 0) - qn * q);
            return (Complex(1, 0) - qn * a1) * (Complex(1, 0) - qn * a2) *
                   (Complex(1, 0) - qn * a3) / den * z;
        },
        tol);
}

Complex kernel_eval(const KernelSpec& spec, const QBase& base, Complex x, Complex s) {
    if (x == Complex(0, 0) || s == Complex(0, 0))
        throw PoleError("kernel_eval: x and s must be nonzero");
    const Complex q = base.q;
    const Complex la = spec.lambda;
    if (spec.variant == KernelSpec::Variant::K1) {
        const Complex r = s / x;
        const Complex num = qpoch_inf(principal_pow(q, la + Complex(1, 0)) * r, base);
        const Complex den = qpoch_inf_checked(q * r, base);
        return principal_pow(x, -la) * num / den;
    }
    const Complex r = x / s;
    const Complex num = qpoch_inf(r, base);
    const Complex den = qpoch_inf_checked(principal_pow(q, -la) * r, base);
    return principal_pow(s, -la) * num / den;
}

JacksonResult jackson_integral(const std::function<CVector(Complex)>& f, Complex xi,
                               const QBase& base, const JacksonOptions& opt) {
    if (xi == Complex(0, 0)) throw ArgumentError("jackson_integral: xi must be nonzero");
    const Complex q = base.q;
    const Complex pref = Complex(1, 0) - q;

    auto term = [&](int n) -> CVector {
        const Complex s = principal_pow(q, Complex(n, 0)) * xi;
        return pref * s * f(s);
    };

    JacksonResult res;
    res.value = CVector();

    auto add = [&](const CVector& t) {
        if (res.value.size() == 0)
            res.value = t;
        else
            res.value += t;
        ++res.terms_used;
    };

    if (opt.fixed_range) {
        const auto [k, l] = *opt.fixed_range;
        if (k > l) throw ArgumentError("jackson_integral: empty fixed range");
        for (int n = k; n <= l; ++n) add(term(n));
        res.k_min = k;
        res.l_max = l;
        return res;
    }

    double running_max = 0.0;
    auto run_tail = [&](int start, int step) -> int {
        int n = start;
        int small_streak = 0;
        int nondecreasing_streak = 0;
        double prev_mag = std::numeric_limits<double>::infinity();
        int last = start;
        for (int steps = 0; steps < opt.max_steps; ++steps, n += step) {
            const CVector t = term(n);
            add(t);
            last = n;
            const double mag = t.norm();
            running_max = std::max(running_max, mag);
            if (mag <= opt.tol * running_max) {
                if (++small_streak >= opt.settle) return last;
            } else {
                small_streak = 0;
            }
            nondecreasing_streak = (mag >= prev_mag) ? nondecreasing_streak + 1 : 0;
            if (nondecreasing_streak >= opt.guard)
                throw DivergenceError("jackson_integral: tail is not decaying");
            prev_mag = mag;
        }
        throw DivergenceError("jackson_integral: step budget exhausted");
    };

    res.l_max = run_tail(0, +1);
    res.k_min = run_tail(-1, -1);
    res.est_error = opt.tol * running_max * (opt.settle + 1);
    return res;
}

SeriesResult jackson_integral_scalar(const std::function<Complex(Complex)>& f, Complex xi,
                                     const QBase& base, const JacksonOptions& opt) {
    auto vec = jackson_integral(
        [&](Complex s) {
            CVector v(1);
            v(0) = f(s);
            return v;
        },
        xi, base, opt);
    SeriesResult r;
    r.value = vec.value(0);
    r.terms_used = vec.terms_used;
    r.est_truncation_error = vec.est_error;
    return r;
}

}  // namespace qmc
