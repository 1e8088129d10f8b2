#include "qhlat/metric.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "qhlat/errors.hpp"
#include "qhlat/parallel.hpp"

namespace qhlat {

std::string to_string(Positivity p) {
    switch (p) {
    case Positivity::Positive: return "positive";
    case Positivity::Indefinite: return "indefinite";
    case Positivity::SingularWithinTol: return "singular-within-tol";
    }
    return "indefinite";
}

std::string to_string(FrontierMode m) {
    switch (m) {
    case FrontierMode::Auto: return "auto";
    case FrontierMode::Grid: return "grid";
    case FrontierMode::Sample: return "sample";
    }
    return "auto";
}

namespace {

struct Verdict {
    Positivity positivity;
    double min_eigenvalue;
    double norm;
    double margin;
};

Verdict classify_positivity(const ComplexMatrix& theta, double pd_tol) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(theta, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("assemble_metric: Hermitian eigensolver failed");
    const auto& ev = solver.eigenvalues();
    const double lo = ev(0);
    const double norm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
    const double floor = pd_tol * norm;
    Verdict v{Positivity::Indefinite, lo, norm, lo - floor};
    if (lo > floor) {
        v.positivity = Positivity::Positive;
    } else if (std::abs(lo) <= floor) {
        v.positivity = Positivity::SingularWithinTol;
    }
    return v;
}

ComplexMatrix combine(const PseudometricBasis& basis, const std::vector<double>& eps) {
    const auto n = static_cast<Eigen::Index>(basis.dimension);
    ComplexMatrix acc = ComplexMatrix::Zero(n, n);
    for (std::size_t k = 0; k < eps.size(); ++k) {
        if (eps[k] != 0.0) acc += eps[k] * basis.elements[k].matrix();
    }
    return acc;
}

void check_basis(const PseudometricBasis& basis) {
    if (basis.elements.empty() || basis.elements.size() != basis.dimension) {
        throw InputError("metric: basis must hold exactly N elements");
    }
}

} // namespace

MetricCandidate assemble_metric(const PseudometricBasis& basis, const std::vector<double>& eps, double pd_tol) {
    check_basis(basis);
    if (eps.size() != basis.dimension) {
        throw InputError("assemble_metric: expected " + std::to_string(basis.dimension) + " coefficients, got " +
                         std::to_string(eps.size()));
    }
    for (double e : eps) {
        if (!std::isfinite(e)) throw InputError("assemble_metric: non-finite coefficient");
    }
    if (!(pd_tol >= 0.0)) throw InputError("assemble_metric: pd_tol must be non-negative");

    MetricCandidate out{eps, HermitianMatrix(combine(basis, eps))};
    const auto v = classify_positivity(out.theta.matrix(), pd_tol);
    out.positivity = v.positivity;
    out.min_eigenvalue = v.min_eigenvalue;
    out.norm = v.norm;
    out.margin = v.margin;
    out.pd_tol = pd_tol;
    return out;
}

QuasiHermiticityReport verify_quasi_hermiticity(const ComplexMatrix& h, const ComplexMatrix& theta, double tol) {
    if (h.rows() != h.cols() || theta.rows() != theta.cols() || h.rows() != theta.rows()) {
        throw InputError("verify_quasi_hermiticity: incompatible dimensions");
    }
    QuasiHermiticityReport rep;
    rep.residual = dieudonne_residual(h, theta);
    rep.tol = tol;
    rep.pass = rep.residual <= tol;
    return rep;
}

PositivityFrontier positivity_frontier(const PseudometricBasis& basis, const FrontierSpec& spec) {
    check_basis(basis);
    const std::size_t n = basis.dimension;
    const std::size_t free = spec.free_first ? n : n - 1;

    FrontierMode mode = spec.mode;
    if (mode == FrontierMode::Auto) {
        mode = FrontierMode::Sample;
        if (n <= kMaxGridDimension && spec.steps > 0) {
            double cells = std::pow(static_cast<double>(spec.steps), static_cast<double>(free));
            if (cells <= static_cast<double>(spec.max_cells)) mode = FrontierMode::Grid;
        }
    }

    std::vector<std::vector<double>> coords;
    if (mode == FrontierMode::Grid) {
        if (n > kMaxGridDimension) {
            throw InputError("positivity_frontier: dense grids need N ≤ " + std::to_string(kMaxGridDimension) +
                             "; use sampling");
        }
        if (spec.steps == 0) throw InputError("positivity_frontier: empty grid");
        const double cells = std::pow(static_cast<double>(spec.steps), static_cast<double>(free));
        if (cells > static_cast<double>(spec.max_cells)) {
            throw InputError("positivity_frontier: grid of " + std::to_string(static_cast<long long>(cells)) +
                             " cells exceeds max_cells");
        }
        const auto total = static_cast<std::size_t>(cells);
        auto node = [&](std::size_t idx) {
            if (spec.steps == 1) return 0.5 * (spec.min + spec.max);
            const double hi = static_cast<double>(idx);
            const double lo = static_cast<double>(spec.steps - 1 - idx);
            return (lo * spec.min + hi * spec.max) / static_cast<double>(spec.steps - 1);
        };
        coords.reserve(total);
        std::vector<std::size_t> idx(free, 0);
        for (std::size_t c = 0; c < total; ++c) {
            std::vector<double> eps;
            eps.reserve(n);
            if (!spec.free_first) eps.push_back(1.0);
            for (auto i : idx) eps.push_back(node(i));
            coords.push_back(std::move(eps));
            for (std::size_t d = free; d-- > 0;) {
                if (++idx[d] < spec.steps) break;
                idx[d] = 0;
            }
        }
    } else {
        if (spec.samples == 0) throw InputError("positivity_frontier: zero samples requested");
        if (!(spec.max > spec.min)) throw InputError("positivity_frontier: empty sampling range");
        std::mt19937_64 rng(spec.seed);
        std::uniform_real_distribution<double> dist(spec.min, spec.max);
        coords.reserve(spec.samples);
        for (std::size_t s = 0; s < spec.samples; ++s) {
            std::vector<double> eps;
            eps.reserve(n);
            if (!spec.free_first) eps.push_back(1.0);
            for (std::size_t d = 0; d < free; ++d) eps.push_back(dist(rng));
            coords.push_back(std::move(eps));
        }
    }

    PositivityFrontier out;
    out.dimension = n;
    out.mode = mode;
    out.spec = spec;
    out.points.resize(coords.size());
    parallel_for(coords.size(), spec.threads, [&](std::size_t c) {
        const auto v = classify_positivity(combine(basis, coords[c]), spec.pd_tol);
        out.points[c] = FrontierPoint{coords[c], v.positivity, v.min_eigenvalue, v.margin};
    });
    out.positive_count = static_cast<std::size_t>(std::count_if(
        out.points.begin(), out.points.end(), [](const FrontierPoint& p) { return p.positivity == Positivity::Positive; }));
    return out;
}

PositivityThreshold p1_positivity_threshold(const ParameterDirection& dir, const PositivityThresholdOptions& opts) {
    if (!(opts.p_max > 0.0) || !(opts.param_tol > 0.0) || opts.scan_points == 0) {
        throw InputError("p1_positivity_threshold: p_max, param_tol and scan_points must be positive");
    }
    auto positive_at = [&](double p) {
        try {
            const auto basis = pseudometric_basis(build_hamiltonian(direction_to_params(dir, p)));
            std::vector<double> eps(basis.dimension, 0.0);
            eps[0] = 1.0;
            return assemble_metric(basis, eps, opts.pd_tol).positivity == Positivity::Positive;
        } catch (const NumericalError&) {
            return false;
        }
    };

    PositivityThreshold out;
    std::size_t f = 0;
    for (; f < opts.scan_points; ++f) {
        if (!positive_at(opts.p_max * static_cast<double>(f + 1) / static_cast<double>(opts.scan_points))) break;
    }
    if (f == opts.scan_points) return out;

    double lo = opts.p_max * static_cast<double>(f) / static_cast<double>(opts.scan_points);
    double hi = opts.p_max * static_cast<double>(f + 1) / static_cast<double>(opts.scan_points);
    for (int it = 0; hi - lo > opts.param_tol && it < opts.max_iterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (positive_at(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    out.found = true;
    out.p_lo = lo;
    out.p_hi = hi;
    out.p_crit = 0.5 * (lo + hi);
    return out;
}

} // namespace qhlat
