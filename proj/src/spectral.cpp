#include "qhlat/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qhlat/errors.hpp"
#include "qhlat/parallel.hpp"

namespace qhlat {

EigenDecomposition eigen_decompose(const ComplexMatrix& m, bool with_vectors) {
    if (m.rows() != m.cols()) throw InputError("eigen_decompose: matrix is not square");
    if (m.rows() == 0) throw InputError("eigen_decompose: empty matrix");
    if (static_cast<std::size_t>(m.rows()) > kMaxEigenDimension) {
        throw InputError("eigen_decompose: dimension exceeds " + std::to_string(kMaxEigenDimension));
    }
    if (!m.allFinite()) throw InputError("eigen_decompose: non-finite entries");

    Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, with_vectors);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eigen_decompose: QR iteration did not converge (N = " +
                             std::to_string(m.rows()) + ")");
    }
    EigenDecomposition out;
    out.values = solver.eigenvalues();
    if (with_vectors) {
        out.vectors = solver.eigenvectors();
        for (Eigen::Index k = 0; k < out.vectors.cols(); ++k) out.vectors.col(k).normalize();
    }
    return out;
}

void sort_eigenvalues(std::vector<Complex>& values) {
    std::sort(values.begin(), values.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

namespace {

std::vector<Complex> to_vector(const ComplexVector& v) {
    return std::vector<Complex>(v.data(), v.data() + v.size());
}

double max_abs_imag(const std::vector<Complex>& values) {
    double out = 0.0;
    for (const auto& z : values) out = std::max(out, std::abs(z.imag()));
    return out;
}

double spectral_scale(const std::vector<Complex>& values) {
    double out = 1.0;
    for (const auto& z : values) out = std::max(out, std::abs(z));
    return out;
}

double condition_number(const ComplexMatrix& v) {
    Eigen::JacobiSVD<ComplexMatrix> svd(v);
    const auto& s = svd.singularValues();
    const double lo = s(s.size() - 1);
    if (lo == 0.0) return std::numeric_limits<double>::infinity();
    return s(0) / lo;
}

// Hungarian algorithm (shortest augmenting path with potentials) on a dense
// square cost matrix. Returns assignment[row] = column.
std::vector<std::size_t> min_cost_assignment(const RealMatrix& cost) {
    const auto n = static_cast<std::size_t>(cost.rows());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = p[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(static_cast<Eigen::Index>(i0 - 1),
                                        static_cast<Eigen::Index>(j - 1)) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<std::size_t> assignment(n, 0);
    for (std::size_t j = 1; j <= n; ++j) assignment[p[j] - 1] = j - 1;
    return assignment;
}

} // namespace

bool spectrum_is_real(const std::vector<Complex>& eigenvalues, double reality_tol) {
    return max_abs_imag(eigenvalues) <= reality_tol * spectral_scale(eigenvalues);
}

bool spectrum_is_real(const ComplexMatrix& m, double reality_tol) {
    return spectrum_is_real(to_vector(eigen_decompose(m, false).values), reality_tol);
}

double conjugate_pair_defect(const std::vector<Complex>& eigenvalues) {
    const auto n = static_cast<Eigen::Index>(eigenvalues.size());
    if (n == 0) return 0.0;
    RealMatrix cost(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            cost(a, b) = std::abs(eigenvalues[static_cast<std::size_t>(a)] -
                                  std::conj(eigenvalues[static_cast<std::size_t>(b)]));
        }
    }
    const auto match = min_cost_assignment(cost);
    double worst = 0.0;
    for (Eigen::Index a = 0; a < n; ++a) {
        worst = std::max(worst, cost(a, static_cast<Eigen::Index>(match[static_cast<std::size_t>(a)])));
    }
    return worst;
}

SpectrumReport spectrum_report(const ComplexMatrix& m, const SpectralOptions& opts) {
    const auto eig = eigen_decompose(m, true);
    SpectrumReport rep;

    const double scale = std::max(max_norm(m), std::numeric_limits<double>::min());
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
        const ComplexVector r = m * eig.vectors.col(k) - eig.values(k) * eig.vectors.col(k);
        rep.residual = std::max(rep.residual, r.norm() / scale);
    }
    rep.eigvec_condition = condition_number(eig.vectors);

    rep.eigenvalues = to_vector(eig.values);
    sort_eigenvalues(rep.eigenvalues);
    rep.max_imag = max_abs_imag(rep.eigenvalues);
    rep.is_real = spectrum_is_real(rep.eigenvalues, opts.reality_tol);

    rep.min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < rep.eigenvalues.size(); ++a) {
        for (std::size_t b = a + 1; b < rep.eigenvalues.size(); ++b) {
            rep.min_gap = std::min(rep.min_gap, std::abs(rep.eigenvalues[a] - rep.eigenvalues[b]));
        }
    }
    if (rep.eigenvalues.size() < 2) rep.min_gap = 0.0;
    return rep;
}

SpectrumReport spectrum_report(const HamiltonianMatrix& h, const SpectralOptions& opts) {
    return spectrum_report(h.matrix(), opts);
}

double default_p_max(const ParameterDirection& dir) {
    switch (dir.kind()) {
    case DirectionKind::Alternating:
    case DirectionKind::Uniform: return 0.5;
    case DirectionKind::SingleSite:
    case DirectionKind::Custom: return 1.5;
    }
    return 1.5;
}

ExceptionalPointResult find_exceptional_point(const ParameterDirection& dir, std::size_t dimension,
                                              const ExceptionalPointOptions& opts) {
    if (dimension != 2 * dir.count()) {
        throw InputError("find_exceptional_point: dimension " + std::to_string(dimension) +
                         " does not match " + std::to_string(dir.count()) + " parameters");
    }
    if (!(opts.param_tol > 0.0)) throw InputError("find_exceptional_point: param_tol must be positive");
    if (opts.scan_points == 0) throw InputError("find_exceptional_point: scan_points must be positive");
    const double p_max = opts.p_max.value_or(default_p_max(dir));
    if (!(p_max > 0.0) || !std::isfinite(p_max)) {
        throw InputError("find_exceptional_point: p_max must be positive");
    }

    auto real_at = [&](double p) {
        return spectrum_is_real(build_hamiltonian(direction_to_params(dir, p)).matrix(), opts.reality_tol);
    };

    // Coarse sweep p_max·m/K, m = 1..K.
    const std::size_t k_pts = opts.scan_points;
    std::vector<std::uint8_t> sweep(k_pts, 0);
    parallel_for(k_pts, opts.threads, [&](std::size_t m) {
        sweep[m] = real_at(p_max * static_cast<double>(m + 1) / static_cast<double>(k_pts)) ? 1 : 0;
    });
    const auto first_complex = std::find(sweep.begin(), sweep.end(), std::uint8_t{0});
    if (first_complex == sweep.end()) {
        throw NotFoundError("no exceptional point found in range [0, " + std::to_string(p_max) +
                            "] along " + dir.label());
    }
    const auto f = static_cast<std::size_t>(first_complex - sweep.begin());

    ExceptionalPointResult res{dir};
    res.dimension = dimension;
    res.p_max = p_max;
    res.param_tol = opts.param_tol;
    res.reality_tol = opts.reality_tol;
    res.non_monotone = std::find(first_complex, sweep.end(), std::uint8_t{1}) != sweep.end();
    if (res.non_monotone) {
        res.warning = "non-monotone reality predicate along " + dir.label() +
                      ": spectrum becomes real again below p_max; first crossing reported";
    }

    double lo = p_max * static_cast<double>(f) / static_cast<double>(k_pts);
    double hi = p_max * static_cast<double>(f + 1) / static_cast<double>(k_pts);
    int it = 0;
    while (hi - lo > opts.param_tol && it < opts.max_iterations) {
        const double mid = 0.5 * (lo + hi);
        if (real_at(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
        ++it;
    }
    if (hi - lo > opts.param_tol) {
        throw NumericalError("find_exceptional_point: bracket did not shrink below param_tol in " +
                             std::to_string(opts.max_iterations) + " iterations");
    }
    res.p_lo = lo;
    res.p_hi = hi;
    res.p_crit = 0.5 * (lo + hi);
    res.iterations = it;
    res.eigvec_condition_lo =
        spectrum_report(build_hamiltonian(direction_to_params(dir, lo)).matrix()).eigvec_condition;
    return res;
}

std::size_t DomainScan::real_count() const {
    return static_cast<std::size_t>(std::count(is_real.begin(), is_real.end(), std::uint8_t{1}));
}

DomainScan scan_domain_2d(std::size_t i, std::size_t j, const LatticeParams& fixed,
                          const GridSpec& grid, const ScanOptions& opts) {
    const std::size_t n = fixed.count();
    if (i == j) throw InputError("scan_domain_2d: axes must differ");
    if (i < 1 || j < 1 || i > n || j > n) {
        throw InputError("scan_domain_2d: axis index outside 1.." + std::to_string(n));
    }
    if (grid.first.steps == 0 || grid.second.steps == 0) {
        throw InputError("scan_domain_2d: degenerate grid (zero steps)");
    }
    if (!(grid.first.max > grid.first.min) || !(grid.second.max > grid.second.min)) {
        throw InputError("scan_domain_2d: empty grid range");
    }

    DomainScan scan{i, j, fixed, grid, opts.reality_tol};
    const std::size_t cells = grid.first.steps * grid.second.steps;
    scan.is_real.assign(cells, 0);
    scan.max_imag.assign(cells, 0.0);
    const std::vector<double> base(fixed.values().begin(), fixed.values().end());

    parallel_for(cells, opts.threads, [&](std::size_t c) {
        const std::size_t a = c / grid.second.steps;
        const std::size_t b = c % grid.second.steps;
        auto v = base;
        v[i - 1] = grid.first.centre(a);
        v[j - 1] = grid.second.centre(b);
        const auto eig = eigen_decompose(build_hamiltonian(LatticeParams(std::move(v))).matrix(), false);
        const std::vector<Complex> vals(eig.values.data(), eig.values.data() + eig.values.size());
        scan.max_imag[c] = max_abs_imag(vals);
        scan.is_real[c] = spectrum_is_real(vals, opts.reality_tol) ? 1 : 0;
    });
    return scan;
}

} // namespace qhlat
