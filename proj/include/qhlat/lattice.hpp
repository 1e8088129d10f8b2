#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qhlat {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Largest absolute entry. Used as the matrix norm throughout the toolkit.
double max_norm(const ComplexMatrix& m);

// Anti-identity (site reversal) of dimension n.
ComplexMatrix parity_matrix(std::size_t n);

/// Real couplings (γ₁, …, γ_n) placed on the imaginary diagonal of a 2n×2n
/// lattice Hamiltonian. Always non-empty with finite entries.
class LatticeParams {
public:
    explicit LatticeParams(std::vector<double> values);

    std::size_t count() const { return values_.size(); }
    std::size_t dimension() const { return 2 * values_.size(); }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t k) const { return values_[k]; }

    // Couplings of P·H·P (= conj(H)): reversing the sites carries iγ_k onto
    // the −iγ_k slot, so the result is the negated list in the same order.
    LatticeParams negated() const;

    bool operator==(const LatticeParams&) const = default;

private:
    std::vector<double> values_;
};

/// Tridiagonal PT-symmetric Hamiltonian: −1 hoppings, diagonal
/// (iγ₁, …, iγ_n, −iγ_n, …, −iγ₁).
class HamiltonianMatrix {
public:
    const ComplexMatrix& matrix() const { return m_; }
    const LatticeParams& params() const { return params_; }
    std::size_t dimension() const { return static_cast<std::size_t>(m_.rows()); }

private:
    HamiltonianMatrix(LatticeParams params, ComplexMatrix m)
        : params_(std::move(params)), m_(std::move(m)) {}
    friend HamiltonianMatrix build_hamiltonian(const LatticeParams&);

    LatticeParams params_;
    ComplexMatrix m_;
};

/// Free lattice: −1 hoppings, zero diagonal. Any N ≥ 1, odd included.
class LaplacianMatrix {
public:
    const ComplexMatrix& matrix() const { return m_; }
    std::size_t dimension() const { return static_cast<std::size_t>(m_.rows()); }

private:
    explicit LaplacianMatrix(ComplexMatrix m) : m_(std::move(m)) {}
    friend LaplacianMatrix build_laplacian(std::size_t);

    ComplexMatrix m_;
};

enum class DirectionKind { SingleSite, Alternating, Uniform, Custom };

/// Unit vector in parameter space, optionally tagged with the preset that
/// produced it.
class ParameterDirection {
public:
    static ParameterDirection single_site(std::size_t site, std::size_t n); // site is 1-based
    static ParameterDirection alternating(std::size_t n);
    static ParameterDirection uniform(std::size_t n);
    static ParameterDirection custom(std::vector<double> v);

    // Accepts "single:k", "alternating", "uniform".
    static ParameterDirection parse_preset(const std::string& spec, std::size_t n);

    DirectionKind kind() const { return kind_; }
    std::size_t site() const { return site_; }
    std::span<const double> unit() const { return unit_; }
    std::size_t count() const { return unit_.size(); }
    std::string label() const;

private:
    ParameterDirection(DirectionKind kind, std::vector<double> unit, std::size_t site = 0)
        : kind_(kind), unit_(std::move(unit)), site_(site) {}

    DirectionKind kind_;
    std::vector<double> unit_;
    std::size_t site_;
};

HamiltonianMatrix build_hamiltonian(const LatticeParams& params);
LaplacianMatrix build_laplacian(std::size_t n);

// max|P·M·P − conj(M)| ≤ tol·(1 + max|M|)
bool pt_symmetry_check(const ComplexMatrix& m, double tol = 1e-12);

// Presets are rescaled so that every nonzero coupling has |γ_k| = magnitude;
// custom directions are multiplied by magnitude as given.
LatticeParams direction_to_params(const ParameterDirection& dir, double magnitude);

} // namespace qhlat
