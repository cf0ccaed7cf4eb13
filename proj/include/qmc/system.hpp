#pragma once

#include <map>
#include <vector>

#include "qmc/qseries.hpp"

namespace qmc {

/// A first-order linear q-difference system in residue form,
///   (Y(qx) - Y(x)) / (-x) = [ sum_i B_i / (x - b_i) ] Y(x),
/// stored as the tuple (B_0, ..., B_N) with b_0 = 0.
struct SystemTuple {
    Complex q;
    std::vector<Complex> poles;     // b_0 = 0, pairwise distinct
    std::vector<CMatrix> matrices;  // all m x m

    SystemTuple(QBase base, std::vector<Complex> poles_, std::vector<CMatrix> matrices_);

    int m() const { return static_cast<int>(matrices.front().rows()); }
    int num_poles() const { return static_cast<int>(poles.size()); }  // N + 1
    QBase base() const { return QBase(q); }

    /// B_infinity = I - B_0 - ... - B_N, the coefficient at x -> infinity.
    CMatrix b_infinity() const;
};

/// Samples of a vector solution on a q-grid {q^n xi}, index n |-> Y(q^n xi).
struct GridFunction {
    Complex xi;
    std::map<int, CVector> values;

    bool has(int n) const { return values.count(n) != 0; }
    const CVector& at(int n) const;
    /// Grid index of a point x = q^n xi, if x lies on the grid.
    std::optional<int> index_of(Complex x, Complex q, double rel_tol = 1e-9) const;
    /// Geometric decay ratio fitted on the extreme `window` samples.
    double decay_ratio(bool positive_tail, int window = 4) const;
};

/// Coefficient matrix of Y(qx) = B(x) Y(x); x must avoid the nonzero poles.
CMatrix eval_B(const SystemTuple& t, Complex x);

/// Right-hand side sum_i B_i / (x - b_i); x must avoid all poles including 0.
CMatrix eval_rhs(const SystemTuple& t, Complex x);

/// Iterates Y(qx) = B(x) Y(x) from (x0, Y0); direction -1 steps backward
/// through B(x/q)^{-1} and throws SingularStepError when that fails.
GridFunction propagate(const SystemTuple& t, Complex x0, const CVector& y0, int steps,
                       int direction = +1);

/// Relative defect of the difference equation at grid index n (needs n and n+1).
double residual(const SystemTuple& t, const GridFunction& y, int n);
/// Same, locating x on the grid first.
double residual_at(const SystemTuple& t, const GridFunction& y, Complex x);

/// Tuple transform induced by Y(x) |-> x^mu Y(x).
SystemTuple add_mu(const SystemTuple& t, Complex mu);

/// Tuple transform induced by the Pochhammer-ratio gauge that relocates pole
/// `index` (>= 1) to b_new. b_new may equal the old pole (identity) but must
/// not collide with any other pole or 0.
SystemTuple pole_move(const SystemTuple& t, int index, Complex b_new);

/// Convolution: the (N+1)m block tuple whose i-th block row carries
/// (q^-lambda B_0, ..., q^-lambda B_i + (1-q^-lambda) I, ..., q^-lambda B_N).
SystemTuple q_convolution(const SystemTuple& t, Complex lambda);

/// Classical convolution blocks: row i is (B_0, ..., B_i + lambda I, ..., B_N).
SystemTuple dr_convolution(const SystemTuple& t, Complex lambda);

/// Convolution in the (F_infinity; F_1, ..., F_N) convention, returned in the
/// (B_0, ..., B_N) residue form via B_0 = I - F_infinity - sum F_i.
SystemTuple sy_convolution(const SystemTuple& t, Complex lambda);

/// The invariant spaces of a convolution output: K = blockwise kernels of the
/// original matrices, L = kernel of the block sum.
std::pair<Subspace, Subspace> kl_spaces(const SystemTuple& conv, const SystemTuple& original,
                                        const TolerancePolicy& tol = {});

struct MCResult {
    SystemTuple reduced;
    Subspace k_space;
    Subspace l_space;
    CMatrix proj;  // reduced.m x (N+1)m, proj * G_i = reduced.B_i * proj
    CMatrix lift;  // (N+1)m x reduced.m
};

/// Middle convolution: convolve, then quotient all blocks by K + L
/// simultaneously (one shared complement basis).
MCResult middle_convolution(const SystemTuple& t, Complex lambda,
                            const TolerancePolicy& tol = {});

/// Rescales every matrix of the tuple by c (gauge bookkeeping helper).
SystemTuple scale_matrices(const SystemTuple& t, Complex c);

}  // namespace qmc
