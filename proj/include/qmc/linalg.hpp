#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qmc/errors.hpp"

namespace qmc {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Thresholds used by every rank/eigen/quotient decision in the library.
struct TolerancePolicy {
    double rank_rel_tol = 1e-9;   // relative to the largest singular value
    double eig_cluster_tol = 1e-7;
    double residual_tol = 1e-8;
};

/// A subspace of C^n given by an orthonormal column basis (n x dim).
struct Subspace {
    CMatrix basis;

    Eigen::Index ambient_dim() const { return basis.rows(); }
    Eigen::Index dim() const { return basis.cols(); }

    static Subspace zero(Eigen::Index ambient) { return Subspace{CMatrix(ambient, 0)}; }
    static Subspace full(Eigen::Index ambient) {
        return Subspace{CMatrix::Identity(ambient, ambient)};
    }
};

struct EigenCluster {
    Complex value;                    // cluster mean
    int multiplicity = 0;             // algebraic multiplicity
    std::vector<int> jordan_partition; // block sizes, descending, sums to multiplicity
};

struct EigenClusters {
    std::vector<EigenCluster> clusters;
    bool non_generic = false;  // two clusters separated by less than 10x the cluster tol
};

int numerical_rank(const CMatrix& m, const TolerancePolicy& tol = {});

/// Orthonormal basis of the numerical null space of m.
Subspace kernel(const CMatrix& m, const TolerancePolicy& tol = {});

/// Orthonormal basis of the numerical column space of m.
Subspace image(const CMatrix& m, const TolerancePolicy& tol = {});

/// Eigenvalues grouped within eig_cluster_tol, with Jordan partitions read off
/// the rank chain of (M - lambda I)^k.
EigenClusters eigen_clusters(const CMatrix& m, const TolerancePolicy& tol = {});

/// span(A union B). Throws DimensionError on ambient mismatch.
Subspace subspace_sum(const Subspace& a, const Subspace& b, const TolerancePolicy& tol = {});

/// Intersection of two subspaces.
Subspace subspace_intersection(const Subspace& a, const Subspace& b,
                               const TolerancePolicy& tol = {});

/// Orthonormal basis of the orthogonal complement of w.
Subspace orthogonal_complement(const Subspace& w);

struct QuotientAction {
    CMatrix action;  // induced matrix on the complement representative
    CMatrix proj;    // (n - k) x n, proj * M == action * proj on accepted inputs
    CMatrix lift;    // n x (n - k), orthonormal complement basis
};

/// Induced action of m on C^n / w. Requires m * w within w up to residual_tol;
/// otherwise throws NotInvariantError. Representatives are orthonormal
/// complements, so results are canonical only up to similarity: compare
/// through proj/lift, never entrywise.
QuotientAction quotient_action(const CMatrix& m, const Subspace& w,
                               const TolerancePolicy& tol = {});

}  // namespace qmc
