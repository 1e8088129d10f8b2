#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qhlat/lattice.hpp"

namespace qhlat {

// Dense nonsymmetric eigensolver limit. Tables need N = 100; 200 is the
// documented floor, the cap only guards against accidental huge requests.
inline constexpr std::size_t kMaxEigenDimension = 4096;

struct EigenDecomposition {
    ComplexVector values;
    ComplexMatrix vectors; // unit columns; empty when not requested
};

// Throws NumericalError if the QR iteration does not converge.
EigenDecomposition eigen_decompose(const ComplexMatrix& m, bool with_vectors = true);

struct SpectralOptions {
    double reality_tol = 1e-8;
};

struct SpectrumReport {
    std::vector<Complex> eigenvalues; // sorted by real part, then imaginary part
    double max_imag = 0.0;
    double min_gap = 0.0;
    double residual = 0.0;            // max_k ‖H v_k − λ_k v_k‖ / max|H|
    double eigvec_condition = 0.0;    // σ_max/σ_min of the eigenvector matrix
    bool is_real = false;
};

// max|Im λ| ≤ tol·max(1, max|λ|)
bool spectrum_is_real(const std::vector<Complex>& eigenvalues, double reality_tol);
bool spectrum_is_real(const ComplexMatrix& m, double reality_tol);

SpectrumReport spectrum_report(const ComplexMatrix& m, const SpectralOptions& opts = {});
SpectrumReport spectrum_report(const HamiltonianMatrix& h, const SpectralOptions& opts = {});

void sort_eigenvalues(std::vector<Complex>& values);

// Largest distance in a minimum-weight pairing of the eigenvalues with their
// complex conjugates. Zero (up to rounding) for any PT-symmetric matrix.
double conjugate_pair_defect(const std::vector<Complex>& eigenvalues);

struct ExceptionalPointOptions {
    std::optional<double> p_max;     // defaults per direction kind, see default_p_max
    double param_tol = 1e-6;
    double reality_tol = 1e-8;
    int max_iterations = 60;
    std::size_t scan_points = 64;    // coarse sweep used to catch non-monotone predicates
    unsigned threads = 1;
};

struct ExceptionalPointResult {
    ParameterDirection direction;
    std::size_t dimension = 0;
    double p_crit = 0.0;
    double p_lo = 0.0;               // spectrum real here
    double p_hi = 0.0;               // spectrum non-real here
    double p_max = 0.0;
    double param_tol = 0.0;
    double reality_tol = 0.0;
    int iterations = 0;
    bool non_monotone = false;       // the sweep found reality returning past the first crossing
    std::string warning;
    double eigvec_condition_lo = 0.0;
};

double default_p_max(const ParameterDirection& dir);

// Bisection on the magnitude along `dir` for the first loss of spectral
// reality. `dimension` must equal 2·dir.count().
ExceptionalPointResult find_exceptional_point(const ParameterDirection& dir, std::size_t dimension,
                                              const ExceptionalPointOptions& opts = {});

struct GridAxis {
    double min = -1.0;
    double max = 1.0;
    std::size_t steps = 1;

    // Centre of cell `idx`.
    double centre(std::size_t idx) const {
        return min + (static_cast<double>(idx) + 0.5) * (max - min) / static_cast<double>(steps);
    }
};

struct GridSpec {
    GridAxis first;  // parameter i
    GridAxis second; // parameter j
};

struct DomainScan {
    std::size_t axis_i = 0; // 1-based parameter indices
    std::size_t axis_j = 0;
    LatticeParams fixed;
    GridSpec grid;
    double reality_tol = 0.0;
    // Row-major over (first, second): cell (a, b) at a·second.steps + b.
    std::vector<std::uint8_t> is_real;
    std::vector<double> max_imag;

    bool real_at(std::size_t a, std::size_t b) const { return is_real[a * grid.second.steps + b] != 0; }
    double max_imag_at(std::size_t a, std::size_t b) const { return max_imag[a * grid.second.steps + b]; }
    std::size_t real_count() const;
};

struct ScanOptions {
    double reality_tol = 1e-8;
    unsigned threads = 1;
};

// Evaluates spectral reality at every cell centre, varying parameters i and j
// (1-based) while the rest stay at `fixed`.
DomainScan scan_domain_2d(std::size_t i, std::size_t j, const LatticeParams& fixed,
                          const GridSpec& grid, const ScanOptions& opts = {});

} // namespace qhlat
