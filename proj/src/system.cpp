#include "qmc/system.hpp"

#include <cmath>

namespace qmc {

SystemTuple::SystemTuple(QBase base, std::vector<Complex> poles_,
                         std::vector<CMatrix> matrices_)
    : q(base.q), poles(std::move(poles_)), matrices(std::move(matrices_)) {
    if (poles.empty() || matrices.size() != poles.size())
        throw ArgumentError("SystemTuple: need one matrix per pole");
    if (poles.front() != Complex(0, 0))
        throw ArgumentError("SystemTuple: b_0 must be exactly 0");
    for (std::size_t i = 0; i < poles.size(); ++i)
        for (std::size_t j = i + 1; j < poles.size(); ++j)
            if (poles[i] == poles[j])
                throw ArgumentError("SystemTuple: poles must be pairwise distinct");
    const Eigen::Index mm = matrices.front().rows();
    for (const auto& b : matrices)
        if (b.rows() != mm || b.cols() != mm)
            throw DimensionError("SystemTuple: matrices must be square of equal size");
}

CMatrix SystemTuple::b_infinity() const {
    CMatrix s = CMatrix::Identity(m(), m());
    for (const auto& b : matrices) s -= b;
    return s;
}

const CVector& GridFunction::at(int n) const {
    auto it = values.find(n);
    if (it == values.end()) throw ArgumentError("GridFunction: missing grid index");
    return it->second;
}

std::optional<int> GridFunction::index_of(Complex x, Complex q, double rel_tol) const {
    // q^n xi = x  =>  n = log(x/xi) / log(q); round and verify.
    if (x == Complex(0, 0)) return std::nullopt;
    const Complex ratio = x / xi;
    const double n_guess = std::log(std::abs(ratio)) / std::log(std::abs(q));
    const int n = static_cast<int>(std::lround(n_guess));
    for (int cand : {n, n - 1, n + 1}) {
        const Complex pt = principal_pow(q, Complex(cand, 0)) * xi;
        if (std::abs(pt - x) <= rel_tol * std::abs(x)) return cand;
    }
    return std::nullopt;
}

double GridFunction::decay_ratio(bool positive_tail, int window) const {
    if (values.size() < 2) return 0.0;
    std::vector<double> mags;
    if (positive_tail) {
        auto it = values.rbegin();
        for (int k = 0; k < window && it != values.rend(); ++k, ++it)
            mags.push_back(it->second.norm());
        std::reverse(mags.begin(), mags.end());
    } else {
        auto it = values.begin();
        for (int k = 0; k < window && it != values.end(); ++k, ++it)
            mags.push_back(it->second.norm());
    }
    double acc = 0.0;
    int cnt = 0;
    for (std::size_t i = 1; i < mags.size(); ++i) {
        if (mags[i - 1] > 0.0) {
            // ratio in the direction of increasing |n|
            acc += positive_tail ? mags[i] / mags[i - 1] : mags[i - 1] / mags[i];
            ++cnt;
        }
    }
    return cnt ? acc / cnt : 0.0;
}

CMatrix eval_B(const SystemTuple& t, Complex x) {
    const int mm = t.m();
    CMatrix b = CMatrix::Identity(mm, mm) - t.matrices[0];
    for (std::size_t i = 1; i < t.poles.size(); ++i) {
        const Complex d = x - t.poles[i];
        if (std::abs(d) < 1e-14 * std::max(1.0, std::abs(x)))
            throw PoleError("eval_B: x hits a nonzero pole");
        b += t.matrices[i] * (-x / d);
    }
    return b;
}

CMatrix eval_rhs(const SystemTuple& t, Complex x) {
    const int mm = t.m();
    CMatrix a = CMatrix::Zero(mm, mm);
    for (std::size_t i = 0; i < t.poles.size(); ++i) {
        const Complex d = x - t.poles[i];
        if (std::abs(d) < 1e-14 * std::max(1.0, std::abs(x)))
            throw PoleError("eval_rhs: x hits a pole");
        a += t.matrices[i] / d;
    }
    return a;
}

GridFunction propagate(const SystemTuple& t, Complex x0, const CVector& y0, int steps,
                       int direction) {
    if (y0.size() != t.m()) throw DimensionError("propagate: initial vector size mismatch");
    if (steps < 0) throw ArgumentError("propagate: steps must be >= 0");
    GridFunction g;
    g.xi = x0;
    g.values[0] = y0;
    const Complex q = t.q;
    if (direction >= 0) {
        CVector y = y0;
        Complex x = x0;
        for (int n = 0; n < steps; ++n) {
            y = eval_B(t, x) * y;
            x *= q;
            g.values[n + 1] = y;
        }
    } else {
        CVector y = y0;
        Complex x = x0;
        for (int n = 0; n < steps; ++n) {
            const Complex xprev = x / q;
            const CMatrix b = eval_B(t, xprev);
            Eigen::FullPivLU<CMatrix> lu(b);
            if (!lu.isInvertible())
                throw SingularStepError("propagate: singular step matrix in backward mode");
            y = lu.solve(y);
            x = xprev;
            g.values[-(n + 1)] = y;
        }
    }
    return g;
}

double residual(const SystemTuple& t, const GridFunction& y, int n) {
    const Complex q = t.q;
    const Complex x = principal_pow(q, Complex(n, 0)) * y.xi;
    if (x == Complex(0, 0) || std::abs(x) == 0.0)
        throw ArgumentError("residual: x must be nonzero");
    const CVector& yx = y.at(n);
    const CVector& yqx = y.at(n + 1);
    const CVector lhs = (yqx - yx) / (-x);
    const CVector rhs = eval_rhs(t, x) * yx;
    return (lhs - rhs).norm() / (1.0 + yx.norm());
}

double residual_at(const SystemTuple& t, const GridFunction& y, Complex x) {
    auto n = y.index_of(x, t.q);
    if (!n) throw ArgumentError("residual_at: x is not on the sample grid");
    return residual(t, y, *n);
}

SystemTuple add_mu(const SystemTuple& t, Complex mu) {
    const Complex qmu = principal_pow(t.q, mu);
    std::vector<CMatrix> out;
    out.reserve(t.matrices.size());
    const int mm = t.m();
    out.push_back((Complex(1, 0) - qmu) * CMatrix::Identity(mm, mm) + qmu * t.matrices[0]);
    for (std::size_t i = 1; i < t.matrices.size(); ++i) out.push_back(qmu * t.matrices[i]);
    return SystemTuple(t.base(), t.poles, std::move(out));
}

SystemTuple pole_move(const SystemTuple& t, int index, Complex b_new) {
    if (index < 1 || index >= t.num_poles())
        throw ArgumentError("pole_move: index must name a nonzero pole");
    if (b_new == Complex(0, 0)) throw PoleCollisionError("pole_move: new pole collides with 0");
    for (int i = 0; i < t.num_poles(); ++i)
        if (i != index && t.poles[i] == b_new)
            throw PoleCollisionError("pole_move: new pole collides with an existing pole");

    const Complex b_old = t.poles[index];
    const int mm = t.m();
    const Complex ratio = b_new / b_old;
    std::vector<CMatrix> out = t.matrices;
    std::vector<Complex> poles = t.poles;
    poles[index] = b_new;

    CMatrix moved = (Complex(1, 0) - ratio) * (CMatrix::Identity(mm, mm) - t.matrices[0]) +
                    ratio * t.matrices[index];
    for (int j = 1; j < t.num_poles(); ++j) {
        if (j == index) continue;
        const Complex bj = t.poles[j];
        moved -= (Complex(1, 0) - ratio) / (Complex(1, 0) - bj / b_new) * t.matrices[j];
        out[j] = (Complex(1, 0) - bj / b_old) / (Complex(1, 0) - bj / b_new) * t.matrices[j];
    }
    out[index] = moved;
    return SystemTuple(t.base(), std::move(poles), std::move(out));
}

namespace {

// Block-row convolution shared by the three convolution flavours: block row i
// of the i-th output matrix is (c B_0, ..., c B_i + shift I, ..., c B_N).
std::vector<CMatrix> block_convolution(const std::vector<CMatrix>& bs, Complex c,
                                       Complex shift) {
    const int n1 = static_cast<int>(bs.size());
    const int mm = static_cast<int>(bs.front().rows());
    const int big = n1 * mm;
    std::vector<CMatrix> out;
    out.reserve(n1);
    for (int i = 0; i < n1; ++i) {
        CMatrix g = CMatrix::Zero(big, big);
        for (int j = 0; j < n1; ++j) g.block(i * mm, j * mm, mm, mm) = c * bs[j];
        g.block(i * mm, i * mm, mm, mm) += shift * CMatrix::Identity(mm, mm);
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace

SystemTuple q_convolution(const SystemTuple& t, Complex lambda) {
    const Complex qml = principal_pow(t.q, -lambda);
    return SystemTuple(t.base(), t.poles,
                       block_convolution(t.matrices, qml, Complex(1, 0) - qml));
}

SystemTuple dr_convolution(const SystemTuple& t, Complex lambda) {
    return SystemTuple(t.base(), t.poles,
                       block_convolution(t.matrices, Complex(1, 0), lambda));
}

SystemTuple sy_convolution(const SystemTuple& t, Complex lambda) {
    // F_i = B_i - (1 - q^lambda) I on block row i; the residue-form B_0 of the
    // output absorbs F_infinity = I - Fhat.
    const Complex ql = principal_pow(t.q, lambda);
    auto fs = block_convolution(t.matrices, Complex(1, 0), -(Complex(1, 0) - ql));
    // Residue form: B_0^out = I - F_inf - sum_{i>=1} F_i = Fhat - sum_{i>=1} F_i.
    const int big = static_cast<int>(fs.front().rows());
    const int n1 = t.num_poles();
    const int mm = t.m();
    CMatrix fhat = CMatrix::Zero(big, big);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j) fhat.block(i * mm, j * mm, mm, mm) = t.matrices[j];
    CMatrix b0 = fhat;
    for (int i = 1; i < n1; ++i) b0 -= fs[i];
    std::vector<CMatrix> out;
    out.push_back(std::move(b0));
    for (int i = 1; i < n1; ++i) out.push_back(std::move(fs[i]));
    return SystemTuple(t.base(), t.poles, std::move(out));
}

std::pair<Subspace, Subspace> kl_spaces(const SystemTuple& conv, const SystemTuple& original,
                                        const TolerancePolicy& tol) {
    const int n1 = original.num_poles();
    const int mm = original.m();
    if (conv.m() != n1 * mm)
        throw DimensionError("kl_spaces: convolved size does not match original tuple");

    // K: kernels of the original residue matrices, embedded block by block.
    std::vector<Subspace> kers;
    int kdim = 0;
    for (const auto& b : original.matrices) {
        kers.push_back(kernel(b, tol));
        kdim += static_cast<int>(kers.back().dim());
    }
    CMatrix kbasis = CMatrix::Zero(n1 * mm, kdim);
    int col = 0;
    for (int i = 0; i < n1; ++i) {
        const auto& ki = kers[i];
        kbasis.block(i * mm, col, mm, ki.dim()) = ki.basis;
        col += static_cast<int>(ki.dim());
    }

    CMatrix gsum = CMatrix::Zero(conv.m(), conv.m());
    for (const auto& g : conv.matrices) gsum += g;
    return {Subspace{std::move(kbasis)}, kernel(gsum, tol)};
}

MCResult middle_convolution(const SystemTuple& t, Complex lambda,
                            const TolerancePolicy& tol) {
    SystemTuple conv = q_convolution(t, lambda);
    auto [kspace, lspace] = kl_spaces(conv, t, tol);
    Subspace w = subspace_sum(kspace, lspace, tol);
    Subspace comp = orthogonal_complement(w);

    const Eigen::Index big = conv.m();
    for (const auto& g : conv.matrices) {
        if (w.dim() == 0) break;
        const CMatrix gw = g * w.basis;
        const CMatrix off = gw - w.basis * (w.basis.adjoint() * gw);
        if (off.norm() > tol.residual_tol * std::max(1.0, g.norm()))
            throw NotInvariantError("middle_convolution: K+L is not invariant numerically");
    }

    CMatrix proj = comp.basis.adjoint() *
                   (CMatrix::Identity(big, big) - w.basis * w.basis.adjoint());
    std::vector<CMatrix> reduced;
    reduced.reserve(conv.matrices.size());
    for (const auto& g : conv.matrices)
        reduced.push_back(comp.basis.adjoint() * g * comp.basis);

    return MCResult{SystemTuple(t.base(), t.poles, std::move(reduced)),
                    std::move(kspace), std::move(lspace), std::move(proj), comp.basis};
}

SystemTuple scale_matrices(const SystemTuple& t, Complex c) {
    std::vector<CMatrix> out;
    out.reserve(t.matrices.size());
    for (const auto& b : t.matrices) out.push_back(c * b);
    return SystemTuple(t.base(), t.poles, std::move(out));
}

}  // namespace qmc
