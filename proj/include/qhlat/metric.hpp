#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qhlat/commutant.hpp"

namespace qhlat {

enum class Positivity { Positive, Indefinite, SingularWithinTol };

std::string to_string(Positivity p);

struct MetricCandidate {
    std::vector<double> eps;
    HermitianMatrix theta;
    Positivity positivity = Positivity::Indefinite;
    double min_eigenvalue = 0.0;
    double norm = 0.0;   // spectral norm of Θ
    double margin = 0.0; // min_eigenvalue − pd_tol·‖Θ‖; > 0 iff positive
    double pd_tol = 0.0;
};

// Θ = Σ ε_k P^k. Positive iff the smallest eigenvalue exceeds pd_tol·‖Θ‖,
// singular-within-tol if its modulus does not.
MetricCandidate assemble_metric(const PseudometricBasis& basis, const std::vector<double>& eps,
                                double pd_tol = 1e-10);

struct QuasiHermiticityReport {
    double residual = 0.0; // max|H†Θ − ΘH| / (max|H|·max|Θ|)
    double tol = 0.0;
    bool pass = false;
};

QuasiHermiticityReport verify_quasi_hermiticity(const ComplexMatrix& h, const ComplexMatrix& theta,
                                                double tol = 1e-10);

enum class FrontierMode { Auto, Grid, Sample };

// Dense grids are limited to this dimension.
inline constexpr std::size_t kMaxGridDimension = 12;

struct FrontierSpec {
    double min = -1.0;            // per free coefficient, endpoints included
    double max = 1.0;
    std::size_t steps = 5;        // grid points per free coefficient
    bool free_first = false;      // otherwise ε₁ = 1
    FrontierMode mode = FrontierMode::Auto;
    std::size_t samples = 10000;  // uniform draws in [min, max] for sampling mode
    std::uint64_t seed = 1;
    std::size_t max_cells = 1000000;
    double pd_tol = 1e-10;
    unsigned threads = 1;
};

struct FrontierPoint {
    std::vector<double> eps;
    Positivity positivity = Positivity::Indefinite;
    double min_eigenvalue = 0.0;
    double margin = 0.0;
};

struct PositivityFrontier {
    std::size_t dimension = 0;
    FrontierMode mode = FrontierMode::Grid; // Grid or Sample after resolution
    FrontierSpec spec;
    std::vector<FrontierPoint> points;      // grid: last coefficient fastest
    std::size_t positive_count = 0;

    double positive_fraction() const {
        return points.empty() ? 0.0 : static_cast<double>(positive_count) / static_cast<double>(points.size());
    }
};

std::string to_string(FrontierMode m);

PositivityFrontier positivity_frontier(const PseudometricBasis& basis, const FrontierSpec& spec);

struct PositivityThresholdOptions {
    double p_max = 1.5;
    double param_tol = 1e-6;
    std::size_t scan_points = 64;
    double pd_tol = 1e-10;
    int max_iterations = 60;
};

struct PositivityThreshold {
    double p_crit = 0.0; // first magnitude where P¹ stops being positive definite
    double p_lo = 0.0;
    double p_hi = 0.0;
    bool found = false;  // false: P¹ positive on the whole sweep
};

// Empirical magnitude along `dir` at which Θ = P¹ ceases to be positive.
PositivityThreshold p1_positivity_threshold(const ParameterDirection& dir,
                                            const PositivityThresholdOptions& opts = {});

} // namespace qhlat
