#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qhlat/lattice.hpp"

namespace qhlat {

// The null-space solve works on an N²×N² real matrix.
inline constexpr std::size_t kMaxNullSpaceDimension = 32;

/// Exactly Hermitian storage: the diagonal is real and the lower triangle is
/// always the conjugate of the upper one.
class HermitianMatrix {
public:
    // Keeps the upper triangle of `m` and derives the rest.
    explicit HermitianMatrix(const ComplexMatrix& m);

    const ComplexMatrix& matrix() const { return m_; }
    std::size_t dimension() const { return static_cast<std::size_t>(m_.rows()); }
    Complex operator()(std::size_t i, std::size_t j) const {
        return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

    HermitianMatrix& operator+=(const HermitianMatrix& other);
    friend HermitianMatrix operator*(double s, const HermitianMatrix& p);

private:
    ComplexMatrix m_;
};

// max|H†P − PH| / (max|H|·max|P|)
double dieudonne_residual(const ComplexMatrix& h, const ComplexMatrix& p);

struct CommutantSolve {
    std::vector<HermitianMatrix> basis;
    std::vector<double> singular_values; // descending, absolute
    double threshold = 0.0;              // rank_tol·σ_max
};

// Null space of the real-linear map P ↦ H†P − PH on Hermitian matrices,
// by singular-value thresholding at rank_tol·σ_max. Throws NumericalError when
// a singular value lies within a factor 10 of the threshold.
CommutantSolve solve_commutant(const ComplexMatrix& h, double rank_tol = 1e-8);
std::vector<HermitianMatrix> commutant_null_space(const ComplexMatrix& h, double rank_tol = 1e-8);
std::vector<HermitianMatrix> commutant_null_space(const HamiltonianMatrix& h, double rank_tol = 1e-8);

// Rank-one solutions ηη† built from eigenvectors of H†. Refuses (NumericalError)
// unless the spectrum is real and simple.
struct SpectralPseudometricOptions {
    double reality_tol = 1e-8;
    double gap_tol = 1e-8;
};
std::vector<HermitianMatrix> spectral_pseudometrics(const ComplexMatrix& h,
                                                    const SpectralPseudometricOptions& opts = {});

enum class Normalization {
    Staircase,   // matched to the free-lattice basis on the staircase entries
    NonStandard, // fallback row-major echelon; pivots wherever they landed
};

std::string to_string(Normalization n);

struct PseudometricBasis {
    std::optional<LatticeParams> params; // set when built from a lattice Hamiltonian
    std::size_t dimension = 0;
    std::vector<HermitianMatrix> elements;
    Normalization normalization = Normalization::Staircase;
};

// Free-lattice pseudometrics P^k = 𝒫·U_{N−k}(T/2) (Chebyshev recurrence on the
// hopping matrix T). Element 1 is the identity, element N the parity.
PseudometricBasis laplacian_pseudometrics(std::size_t n);

// Canonical labelling of a spanning set. Every Hermitian solution for this
// lattice family is 𝒫·p(H) with p real of degree < N, and the real parts of
// the staircase entries (1,1),(1,2),(2,2),(2,3),… (centre of each antidiagonal)
// determine p through a triangular system. Element k is the solution whose
// staircase values equal those of the free-lattice P^k; hence row 1 vanishes
// left of column k and (1,k) = 1. Falls back to a row-major real echelon
// (Re/Im interleaved) tagged NonStandard when the staircase map is singular.
PseudometricBasis canonicalize_basis(const std::vector<HermitianMatrix>& raw);

enum class PseudometricRoute { Auto, NullSpace, Spectral };

// Canonical basis for a lattice Hamiltonian. Auto uses the null space up to
// kMaxNullSpaceDimension and the spectral construction beyond.
PseudometricBasis pseudometric_basis(const HamiltonianMatrix& h,
                                     PseudometricRoute route = PseudometricRoute::Auto,
                                     double rank_tol = 1e-8);

enum class EntryClass { Zero, One, Real, Imaginary, Complex };

struct EntryPattern {
    std::size_t dimension = 0;
    double tol = 0.0;
    std::vector<EntryClass> labels; // row-major

    EntryClass at(std::size_t i, std::size_t j) const { return labels[i * dimension + j]; }
    // One line per row using ". 1 R I C".
    std::string to_string() const;
};

char symbol(EntryClass c);
EntryPattern classify_pattern(const ComplexMatrix& p, double tol = 1e-9);
inline EntryPattern classify_pattern(const HermitianMatrix& p, double tol = 1e-9) {
    return classify_pattern(p.matrix(), tol);
}

// N = 6 alternating-model skeletons, rows joined by '\n', using '.', '1' and
// 'I' (for ±iα).
const std::vector<std::string>& alternating_reference_patterns_n6();

struct ConjectureReport {
    std::size_t dimension = 0;
    double alpha = 0.0;
    double second_alpha = 0.0;
    double tol = 0.0;
    bool entries_confined = false;     // nonzero entries all in {1, ±iα}
    double max_entry_deviation = 0.0;
    bool even_parameter_free = false;  // even-indexed elements equal at both α
    double max_even_difference = 0.0;
    std::optional<bool> matches_reference; // only for N = 6
    std::vector<EntryPattern> patterns;
};

// Canonical basis of the alternating Hamiltonian (α, −α, α, …) with N sites.
ConjectureReport verify_alternating_conjecture(std::size_t dimension, double alpha, double tol = 1e-9);

} // namespace qhlat
