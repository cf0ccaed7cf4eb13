#include "qmc/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace qmc {

namespace {

std::vector<int> partition_of(const EigenClusters& ec) {
    std::vector<int> parts;
    parts.reserve(ec.clusters.size());
    for (const auto& c : ec.clusters) parts.push_back(c.multiplicity);
    std::sort(parts.rbegin(), parts.rend());
    return parts;
}

// C(x) = B(x) prod_{i>=1}(x - b_i) in its polynomial form, which stays finite
// at the poles themselves:
//   C(x) = (I - B_0) prod_{j>=1}(x-b_j) + sum_{i>=1} (-x) B_i prod_{j!=i}(x-b_j).
CMatrix cleared_matrix(const SystemTuple& t, Complex x) {
    const int mm = t.m();
    Complex all(1, 0);
    for (std::size_t j = 1; j < t.poles.size(); ++j) all *= (x - t.poles[j]);
    CMatrix c = (CMatrix::Identity(mm, mm) - t.matrices[0]) * all;
    for (std::size_t i = 1; i < t.poles.size(); ++i) {
        Complex rest(1, 0);
        for (std::size_t j = 1; j < t.poles.size(); ++j)
            if (j != i) rest *= (x - t.poles[j]);
        c += t.matrices[i] * (-x) * rest;
    }
    return c;
}

// det C(x) sampled on a circle and interpolated; exact degree <= m*N.
Eigen::VectorXcd det_poly_coeffs_at(const SystemTuple& t, double radius) {
    const int deg = t.m() * (t.num_poles() - 1);
    const int npts = deg + 1;
    Eigen::MatrixXcd vand(npts, deg + 1);
    CVector rhs(npts);
    for (int k = 0; k < npts; ++k) {
        const Complex x = radius * std::exp(Complex(0, 2.0 * M_PI * k / npts + 0.37));
        Complex pw(1, 0);
        for (int d = 0; d <= deg; ++d) {
            vand(k, d) = pw;
            pw *= x;
        }
        rhs(k) = cleared_matrix(t, x).determinant();
    }
    return vand.colPivHouseholderQr().solve(rhs);
}

Complex poly_eval(const Eigen::VectorXcd& coeffs, Complex x) {
    Complex acc(0, 0);
    for (Eigen::Index d = coeffs.size() - 1; d >= 0; --d) acc = acc * x + coeffs(d);
    return acc;
}

double poly_scale(const Eigen::VectorXcd& coeffs, double radius) {
    double acc = 0.0, pw = 1.0;
    for (Eigen::Index d = 0; d < coeffs.size(); ++d) {
        acc += std::abs(coeffs(d)) * pw;
        pw *= radius;
    }
    return acc;
}

// a few plain Newton steps per root tighten simple roots to rounding level
// and shrink the cloud around multiple roots
void polish_roots(const Eigen::VectorXcd& coeffs, std::vector<Complex>& roots) {
    const Eigen::VectorXcd deriv = [&] {
        Eigen::VectorXcd d(coeffs.size() - 1);
        for (Eigen::Index j = 1; j < coeffs.size(); ++j)
            d(j - 1) = static_cast<double>(j) * coeffs(j);
        return d;
    }();
    for (auto& r : roots) {
        for (int it = 0; it < 6; ++it) {
            const Complex dp = poly_eval(deriv, r);
            if (dp == Complex(0, 0)) break;
            const Complex step = poly_eval(coeffs, r) / dp;
            if (!(std::abs(step) < 0.1 * std::max(1.0, std::abs(r)))) break;
            r -= step;
        }
    }
}

std::vector<Complex> poly_roots(const Eigen::VectorXcd& coeffs, int* degree_out) {
    const double scale = coeffs.cwiseAbs().maxCoeff();
    int deg = static_cast<int>(coeffs.size()) - 1;
    while (deg > 0 && std::abs(coeffs(deg)) < 1e-11 * scale) --deg;
    if (degree_out) *degree_out = deg;
    if (deg <= 0) return {};
    CMatrix companion = CMatrix::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -coeffs(i) / coeffs(deg);
    Eigen::ComplexEigenSolver<CMatrix> es(companion, false);
    return {es.eigenvalues().data(), es.eigenvalues().data() + deg};
}

std::vector<std::vector<Complex>> linkage_cluster(const std::vector<Complex>& pts,
                                                  double rel_tol) {
    std::vector<std::vector<Complex>> groups;
    std::vector<bool> used(pts.size(), false);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (used[i]) continue;
        std::vector<Complex> g{pts[i]};
        used[i] = true;
        bool grew = true;
        while (grew) {
            grew = false;
            for (std::size_t j = 0; j < pts.size(); ++j) {
                if (used[j]) continue;
                for (const auto& v : g) {
                    if (std::abs(pts[j] - v) <= rel_tol * std::max(1.0, std::abs(v))) {
                        g.push_back(pts[j]);
                        used[j] = true;
                        grew = true;
                        break;
                    }
                }
            }
        }
        groups.push_back(std::move(g));
    }
    return groups;
}

Complex mean_of(const std::vector<Complex>& g) {
    Complex m(0, 0);
    for (const auto& v : g) m += v;
    return m / static_cast<double>(g.size());
}

Eigen::VectorXcd poly_derivative(const Eigen::VectorXcd& coeffs) {
    if (coeffs.size() <= 1) return Eigen::VectorXcd::Zero(1);
    Eigen::VectorXcd out(coeffs.size() - 1);
    for (Eigen::Index d = 1; d < coeffs.size(); ++d)
        out(d - 1) = static_cast<double>(d) * coeffs(d);
    return out;
}

// A multiplicity-k root of p is a simple root of p^(k-1): Newton on that
// derivative sharpens the cluster mean to a well-conditioned center.
Complex refine_center(const Eigen::VectorXcd& coeffs, Complex start, int k, double leash) {
    Eigen::VectorXcd dlow = coeffs;
    for (int j = 1; j < k; ++j) dlow = poly_derivative(dlow);
    const Eigen::VectorXcd dhigh = poly_derivative(dlow);
    Complex z = start;
    for (int it = 0; it < 30; ++it) {
        const Complex denom = poly_eval(dhigh, z);
        if (denom == Complex(0, 0)) break;
        const Complex step = poly_eval(dlow, z) / denom;
        if (std::abs(step) > leash) break;  // wandering toward a different critical point
        z -= step;
        if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    return (std::abs(z - start) <= leash) ? z : start;
}

// Genuine multiplicity-k cluster: |p| at the refined center collapses to
// rounding level. A spurious merge of distinct roots instead leaves |p| at
// the local extremum scale |p^(k)| r^k / k!, with r the cluster radius.
bool cluster_is_genuine(const Eigen::VectorXcd& coeffs, const std::vector<Complex>& g,
                        double scale, Complex* center_out) {
    const Complex mean = mean_of(g);
    if (center_out) *center_out = mean;
    if (g.size() <= 1) return true;
    double radius = 1e-9 * std::max(1.0, std::abs(mean));
    for (const auto& v : g) radius = std::max(radius, std::abs(v - mean));
    const int k = static_cast<int>(g.size());
    const Complex center = refine_center(coeffs, mean, k, 6.0 * radius);
    const double pval = std::abs(poly_eval(coeffs, center));
    if (center_out) *center_out = center;
    if (pval <= 1e-12 * scale) return true;
    Eigen::VectorXcd dk = coeffs;
    double factorial = 1.0;
    for (int j = 1; j <= k; ++j) {
        dk = poly_derivative(dk);
        factorial *= static_cast<double>(j);
    }
    const double taylor = std::abs(poly_eval(dk, center)) / factorial *
                          std::pow(radius, static_cast<double>(k));
    return pval <= 1e-4 * taylor;
}

struct RootCluster {
    std::vector<Complex> points;
    Complex center;
};

void split_refine(const Eigen::VectorXcd& coeffs, std::vector<Complex> pts, double tol,
                  double scale, std::vector<RootCluster>& out, bool& ambiguous) {
    auto groups = linkage_cluster(pts, tol);
    for (auto& g : groups) {
        Complex center;
        if (cluster_is_genuine(coeffs, g, scale, &center)) {
            out.push_back(RootCluster{std::move(g), center});
        } else if (tol > 2e-4) {
            split_refine(coeffs, g, tol / 5.0, scale, out, ambiguous);
        } else {
            // could not separate: record as-is and flag
            ambiguous = true;
            out.push_back(RootCluster{std::move(g), center});
        }
    }
}

}  // namespace

std::string SpectralType::rendered() const {
    auto fmt = [](const std::vector<int>& parts) {
        bool wide = false;
        for (int p : parts) wide |= p >= 10;
        std::string out;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i && wide) out += ',';
            out += std::to_string(parts[i]);
        }
        return out;
    };
    return fmt(s0) + ";" + fmt(s_inf) + ";" + fmt(s_div);
}

SpectralType spectral_type(const SystemTuple& t, const SpectralOptions& opt) {
    SpectralType st;
    const int mm = t.m();

    EigenClusters c0 = eigen_clusters(CMatrix::Identity(mm, mm) - t.matrices[0], opt.tol);
    EigenClusters ci = eigen_clusters(t.b_infinity(), opt.tol);
    st.s0 = partition_of(c0);
    st.s_inf = partition_of(ci);
    st.non_generic = c0.non_generic || ci.non_generic;

    // two passes: a coarse one to locate the root magnitudes, then a rescaled
    // interpolation near their geometric mean for well-conditioned coefficients
    double sample_radius = 1.31;
    for (std::size_t i = 1; i < t.poles.size(); ++i)
        sample_radius = std::max(sample_radius, 1.31 * std::abs(t.poles[i]));
    auto coeffs = det_poly_coeffs_at(t, sample_radius);
    int degree = 0;
    auto roots = poly_roots(coeffs, &degree);
    if (!roots.empty()) {
        double log_acc = 0.0;
        int cnt = 0;
        for (const auto& r : roots)
            if (std::abs(r) > 1e-8) {
                log_acc += std::log(std::abs(r));
                ++cnt;
            }
        if (cnt) {
            const double gm = std::clamp(std::exp(log_acc / cnt), 1e-3, 1e3);
            coeffs = det_poly_coeffs_at(t, 1.043 * gm);
            roots = poly_roots(coeffs, &degree);
        }
    }
    polish_roots(coeffs, roots);
    double radius = 1.0;
    for (const auto& r : roots) radius = std::max(radius, std::abs(r));
    const double scale = poly_scale(coeffs, radius);

    std::vector<RootCluster> groups;
    bool ambiguous = false;
    split_refine(coeffs, roots, opt.root_cluster_rel_tol, scale, groups, ambiguous);
    st.non_generic = st.non_generic || ambiguous;

    for (const auto& g : groups) {
        st.div_roots.emplace_back(g.center, static_cast<int>(g.points.size()));
        st.s_div.push_back(static_cast<int>(g.points.size()));
        if (g.points.size() > 1) {
            // local rank drop confirms the elementary-divisor reading; the
            // achievable center accuracy depends on how close other roots
            // sit, so read the rank off the largest singular-value gap
            Eigen::JacobiSVD<CMatrix> svd(cleared_matrix(t, g.center));
            const auto& sv = svd.singularValues();
            int rank = 0;
            double best_gap = 0.0;
            int gap_at = mm;
            for (int i = 0; i + 1 < mm; ++i) {
                if (sv(i + 1) <= 0.0) {
                    gap_at = i + 1;
                    best_gap = 1e30;
                    break;
                }
                const double ratio = sv(i) / sv(i + 1);
                if (ratio > best_gap) {
                    best_gap = ratio;
                    gap_at = i + 1;
                }
            }
            if (best_gap >= 1e3) {
                rank = gap_at;
            } else {
                rank = 0;
                for (int i = 0; i < mm; ++i)
                    if (sv(i) > 1e-6 * sv(0)) ++rank;
            }
            const int drop = mm - rank;
            if (drop < 1 || drop > static_cast<int>(g.points.size())) st.non_generic = true;
        }
    }
    std::sort(st.s_div.rbegin(), st.s_div.rend());
    std::sort(st.div_roots.begin(), st.div_roots.end(),
              [](const auto& a, const auto& b) { return a.second > b.second; });
    return st;
}

}  // namespace qmc
