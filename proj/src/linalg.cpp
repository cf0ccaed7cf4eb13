#include "qmc/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace qmc {

namespace {

// SVD with thin U/V plus the rank under the relative threshold.
struct RankedSvd {
    Eigen::JacobiSVD<CMatrix> svd;
    int rank;
};

RankedSvd ranked_svd(const CMatrix& m, const TolerancePolicy& tol, unsigned options) {
    RankedSvd r{Eigen::JacobiSVD<CMatrix>(m, options), 0};
    const auto& sv = r.svd.singularValues();
    if (sv.size() == 0) return r;
    const double cutoff = tol.rank_rel_tol * sv(0);
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff && sv(i) > 0.0) ++r.rank;
    return r;
}

}  // namespace

int numerical_rank(const CMatrix& m, const TolerancePolicy& tol) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<CMatrix> svd(m);
    const auto& sv = svd.singularValues();
    const double cutoff = tol.rank_rel_tol * (sv.size() ? sv(0) : 0.0);
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff && sv(i) > 0.0) ++rank;
    return rank;
}

Subspace kernel(const CMatrix& m, const TolerancePolicy& tol) {
    if (m.cols() == 0) return Subspace::zero(0);
    if (m.rows() == 0) return Subspace::full(m.cols());
    auto r = ranked_svd(m, tol, Eigen::ComputeFullV);
    return Subspace{r.svd.matrixV().rightCols(m.cols() - r.rank)};
}

Subspace image(const CMatrix& m, const TolerancePolicy& tol) {
    if (m.size() == 0) return Subspace::zero(m.rows());
    auto r = ranked_svd(m, tol, Eigen::ComputeThinU);
    return Subspace{r.svd.matrixU().leftCols(r.rank)};
}

EigenClusters eigen_clusters(const CMatrix& m, const TolerancePolicy& tol) {
    if (m.rows() != m.cols()) throw DimensionError("eigen_clusters: matrix not square");
    const Eigen::Index n = m.rows();
    EigenClusters out;
    if (n == 0) return out;

    Eigen::ComplexEigenSolver<CMatrix> es(m, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) throw Error("eigen_clusters: eigensolver failed");
    std::vector<Complex> evs(es.eigenvalues().data(), es.eigenvalues().data() + n);

    double scale = 1.0;
    for (const auto& e : evs) scale = std::max(scale, std::abs(e));
    const double ctol = tol.eig_cluster_tol * scale;

    // Greedy clustering of the sorted eigenvalue list.
    std::sort(evs.begin(), evs.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    std::vector<std::vector<Complex>> groups;
    for (const auto& e : evs) {
        bool placed = false;
        for (auto& g : groups) {
            Complex mean(0, 0);
            for (const auto& v : g) mean += v;
            mean /= static_cast<double>(g.size());
            if (std::abs(e - mean) <= ctol) {
                g.push_back(e);
                placed = true;
                break;
            }
        }
        if (!placed) groups.push_back({e});
    }

    for (const auto& g : groups) {
        EigenCluster c;
        Complex mean(0, 0);
        for (const auto& v : g) mean += v;
        c.value = mean / static_cast<double>(g.size());
        c.multiplicity = static_cast<int>(g.size());

        // Jordan partition from the rank chain of (M - lambda I)^k: the number
        // of blocks of size >= k equals rank((M-l)^{k-1}) - rank((M-l)^k).
        CMatrix shifted = m - c.value * CMatrix::Identity(n, n);
        std::vector<int> ranks{static_cast<int>(n)};
        CMatrix power = CMatrix::Identity(n, n);
        for (int k = 1; k <= c.multiplicity; ++k) {
            power = power * shifted;
            ranks.push_back(numerical_rank(power, tol));
            if (ranks.back() == static_cast<int>(n) - c.multiplicity) break;
        }
        std::vector<int> blocks_ge;  // blocks_ge[k-1] = #blocks of size >= k
        for (std::size_t k = 1; k < ranks.size(); ++k)
            blocks_ge.push_back(ranks[k - 1] - ranks[k]);
        for (std::size_t k = 0; k < blocks_ge.size(); ++k) {
            int next = (k + 1 < blocks_ge.size()) ? blocks_ge[k + 1] : 0;
            for (int b = 0; b < blocks_ge[k] - next; ++b)
                c.jordan_partition.push_back(static_cast<int>(k) + 1);
        }
        std::sort(c.jordan_partition.rbegin(), c.jordan_partition.rend());
        out.clusters.push_back(std::move(c));
    }

    for (std::size_t i = 0; i < out.clusters.size(); ++i)
        for (std::size_t j = i + 1; j < out.clusters.size(); ++j)
            if (std::abs(out.clusters[i].value - out.clusters[j].value) < 10.0 * ctol)
                out.non_generic = true;
    return out;
}

Subspace subspace_sum(const Subspace& a, const Subspace& b, const TolerancePolicy& tol) {
    if (a.ambient_dim() != b.ambient_dim())
        throw DimensionError("subspace_sum: ambient dimensions differ");
    CMatrix joint(a.ambient_dim(), a.dim() + b.dim());
    joint << a.basis, b.basis;
    return image(joint, tol);
}

Subspace subspace_intersection(const Subspace& a, const Subspace& b,
                               const TolerancePolicy& tol) {
    if (a.ambient_dim() != b.ambient_dim())
        throw DimensionError("subspace_intersection: ambient dimensions differ");
    if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(a.ambient_dim());
    // x in A cap B  <=>  x = A u = B v: read (u, v) off ker [A | -B].
    CMatrix stacked(a.ambient_dim(), a.dim() + b.dim());
    stacked << a.basis, -b.basis;
    Subspace k = kernel(stacked, tol);
    if (k.dim() == 0) return Subspace::zero(a.ambient_dim());
    CMatrix vecs = a.basis * k.basis.topRows(a.dim());
    return image(vecs, tol);
}

Subspace orthogonal_complement(const Subspace& w) {
    const Eigen::Index n = w.ambient_dim();
    if (w.dim() == 0) return Subspace::full(n);
    if (w.dim() == n) return Subspace::zero(n);
    Eigen::JacobiSVD<CMatrix> svd(w.basis, Eigen::ComputeFullU);
    return Subspace{svd.matrixU().rightCols(n - w.dim())};
}

QuotientAction quotient_action(const CMatrix& m, const Subspace& w,
                               const TolerancePolicy& tol) {
    const Eigen::Index n = w.ambient_dim();
    if (m.rows() != n || m.cols() != n)
        throw DimensionError("quotient_action: matrix size does not match ambient dimension");

    if (w.dim() > 0) {
        const CMatrix mw = m * w.basis;
        const CMatrix off = mw - w.basis * (w.basis.adjoint() * mw);
        const double scale = std::max(1.0, m.norm());
        if (off.norm() > tol.residual_tol * scale)
            throw NotInvariantError("quotient_action: subspace is not invariant");
    }

    Subspace comp = orthogonal_complement(w);
    QuotientAction qa;
    qa.lift = comp.basis;
    qa.proj = comp.basis.adjoint() *
              (CMatrix::Identity(n, n) - w.basis * w.basis.adjoint());
    qa.action = comp.basis.adjoint() * m * comp.basis;
    return qa;
}

}  // namespace qmc
