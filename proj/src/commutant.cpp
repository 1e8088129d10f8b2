#include "qhlat/commutant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "qhlat/errors.hpp"
#include "qhlat/spectral.hpp"

namespace qhlat {

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) : m_(m.rows(), m.cols()) {
    if (m.rows() != m.cols()) throw InputError("HermitianMatrix: matrix is not square");
    const auto n = m.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        m_(i, i) = Complex(m(i, i).real(), 0.0);
        for (Eigen::Index j = i + 1; j < n; ++j) {
            m_(i, j) = m(i, j);
            m_(j, i) = std::conj(m(i, j));
        }
    }
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& other) {
    if (other.m_.rows() != m_.rows()) throw InputError("HermitianMatrix: dimension mismatch");
    m_ += other.m_;
    return *this;
}

HermitianMatrix operator*(double s, const HermitianMatrix& p) {
    HermitianMatrix out = p;
    out.m_ *= s;
    return out;
}

double dieudonne_residual(const ComplexMatrix& h, const ComplexMatrix& p) {
    const double denom = max_norm(h) * max_norm(p);
    const double num = max_norm(h.adjoint() * p - p * h);
    if (denom == 0.0) return num;
    return num / denom;
}

std::string to_string(Normalization n) {
    return n == Normalization::Staircase ? "staircase" : "non-standard";
}

namespace {

// Orthonormal real coordinates (Frobenius) for Hermitian and anti-Hermitian
// matrices: diagonal first-class entries, then √2·Re / √2·Im of each (i<j).
ComplexMatrix hermitian_from_coords(const RealVector& v, Eigen::Index n) {
    ComplexMatrix p(n, n);
    Eigen::Index c = 0;
    const double inv = 1.0 / std::numbers::sqrt2;
    for (Eigen::Index i = 0; i < n; ++i) {
        p(i, i) = v(c++);
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double re = v(c++) * inv;
            const double im = v(c++) * inv;
            p(i, j) = Complex(re, im);
            p(j, i) = Complex(re, -im);
        }
    }
    return p;
}

RealVector antihermitian_coords(const ComplexMatrix& a) {
    const auto n = a.rows();
    RealVector v(n * n);
    Eigen::Index c = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        v(c++) = a(i, i).imag();
        for (Eigen::Index j = i + 1; j < n; ++j) {
            v(c++) = std::numbers::sqrt2 * a(i, j).real();
            v(c++) = std::numbers::sqrt2 * a(i, j).imag();
        }
    }
    return v;
}

struct StairEntry {
    Eigen::Index row;
    Eigen::Index col;
};

// Centre entry of antidiagonal i + j = t (0-based): (0,0), (0,1), (1,1), (1,2), …
std::vector<StairEntry> staircase(Eigen::Index n) {
    std::vector<StairEntry> out;
    out.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index t = 0; t < n; ++t) out.push_back({t / 2, (t + 1) / 2});
    return out;
}

// Reduced row echelon over the row-major coordinate list
// [Re(1,1), Im(1,1), Re(1,2), Im(1,2), …] continued through later rows (upper
// triangle). Pivots are normalised to +1.
std::vector<HermitianMatrix> echelon_basis(const std::vector<HermitianMatrix>& raw) {
    const auto n = static_cast<Eigen::Index>(raw.front().dimension());
    const auto k = static_cast<Eigen::Index>(raw.size());
    const Eigen::Index m = n * (n + 1);
    RealMatrix coef(k, m);
    for (Eigen::Index r = 0; r < k; ++r) {
        Eigen::Index c = 0;
        const auto& p = raw[static_cast<std::size_t>(r)].matrix();
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = i; j < n; ++j) {
                coef(r, c++) = p(i, j).real();
                coef(r, c++) = p(i, j).imag();
            }
        }
    }
    // Track the combination applied to the raw elements alongside.
    RealMatrix comb = RealMatrix::Identity(k, k);
    const double tiny = 1e-9 * std::max(coef.cwiseAbs().maxCoeff(), 1e-300);
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < m && row < k; ++col) {
        Eigen::Index piv = row;
        coef.col(col).segment(row, k - row).cwiseAbs().maxCoeff(&piv);
        piv += row;
        if (std::abs(coef(piv, col)) <= tiny) continue;
        coef.row(row).swap(coef.row(piv));
        comb.row(row).swap(comb.row(piv));
        const double s = 1.0 / coef(row, col);
        coef.row(row) *= s;
        comb.row(row) *= s;
        for (Eigen::Index r = 0; r < k; ++r) {
            if (r == row) continue;
            const double f = coef(r, col);
            if (f == 0.0) continue;
            coef.row(r) -= f * coef.row(row);
            comb.row(r) -= f * comb.row(row);
        }
        ++row;
    }
    if (row < k) throw InputError("canonicalize_basis: raw basis is linearly dependent");

    std::vector<HermitianMatrix> out;
    out.reserve(raw.size());
    for (Eigen::Index r = 0; r < k; ++r) {
        ComplexMatrix acc = ComplexMatrix::Zero(n, n);
        for (Eigen::Index c = 0; c < k; ++c) acc += comb(r, c) * raw[static_cast<std::size_t>(c)].matrix();
        out.emplace_back(acc);
    }
    return out;
}

} // namespace

CommutantSolve solve_commutant(const ComplexMatrix& h, double rank_tol) {
    if (h.rows() != h.cols() || h.rows() == 0) throw InputError("commutant: matrix must be square and non-empty");
    if (static_cast<std::size_t>(h.rows()) > kMaxNullSpaceDimension) {
        throw InputError("commutant: N = " + std::to_string(h.rows()) + " exceeds the null-space limit " +
                         std::to_string(kMaxNullSpaceDimension) + "; use the spectral construction");
    }
    if (!(rank_tol > 0.0)) throw InputError("commutant: rank_tol must be positive");

    const auto n = h.rows();
    const Eigen::Index dim = n * n;
    const ComplexMatrix hd = h.adjoint();
    RealMatrix op(dim, dim);
    RealVector e = RealVector::Zero(dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        e.setZero();
        e(c) = 1.0;
        const ComplexMatrix p = hermitian_from_coords(e, n);
        op.col(c) = antihermitian_coords(hd * p - p * h);
    }

    Eigen::BDCSVD<RealMatrix> svd(op, Eigen::ComputeFullV);
    const RealVector& sv = svd.singularValues();
    CommutantSolve out;
    out.singular_values.assign(sv.data(), sv.data() + sv.size());
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    out.threshold = rank_tol * smax;

    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        const double s = sv(i);
        if (s > out.threshold / 10.0 && s < out.threshold * 10.0) {
            std::ostringstream msg;
            msg << "commutant: ill-separated null space (singular value " << s / smax
                << " of the largest within a factor 10 of rank_tol " << rank_tol
                << "); perturb the parameters";
            throw NumericalError(msg.str());
        }
        if (s > out.threshold) ++rank;
    }
    const RealMatrix& v = svd.matrixV();
    for (Eigen::Index c = rank; c < dim; ++c) out.basis.emplace_back(hermitian_from_coords(v.col(c), n));
    return out;
}

std::vector<HermitianMatrix> commutant_null_space(const ComplexMatrix& h, double rank_tol) {
    return solve_commutant(h, rank_tol).basis;
}

std::vector<HermitianMatrix> commutant_null_space(const HamiltonianMatrix& h, double rank_tol) {
    return solve_commutant(h.matrix(), rank_tol).basis;
}

std::vector<HermitianMatrix> spectral_pseudometrics(const ComplexMatrix& h,
                                                    const SpectralPseudometricOptions& opts) {
    const ComplexMatrix hd = h.adjoint();
    const auto eig = eigen_decompose(hd, true);
    const std::vector<Complex> vals(eig.values.data(), eig.values.data() + eig.values.size());
    if (!spectrum_is_real(vals, opts.reality_tol)) {
        std::ostringstream msg;
        double mi = 0.0;
        for (const auto& z : vals) mi = std::max(mi, std::abs(z.imag()));
        msg << "spectral_pseudometrics: spectrum is not real (max |Im λ| = " << mi << ")";
        throw NumericalError(msg.str());
    }
    double scale = 1.0;
    for (const auto& z : vals) scale = std::max(scale, std::abs(z));
    for (std::size_t a = 0; a < vals.size(); ++a) {
        for (std::size_t b = a + 1; b < vals.size(); ++b) {
            if (std::abs(vals[a] - vals[b]) <= opts.gap_tol * scale) {
                std::ostringstream msg;
                msg << "spectral_pseudometrics: degenerate spectrum (gap " << std::abs(vals[a] - vals[b])
                    << " at λ ≈ " << vals[a].real() << ")";
                throw NumericalError(msg.str());
            }
        }
    }
    std::vector<Eigen::Index> order(vals.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<Eigen::Index>(i);
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index a, Eigen::Index b) { return vals[static_cast<std::size_t>(a)].real() <
                                                           vals[static_cast<std::size_t>(b)].real(); });
    std::vector<HermitianMatrix> out;
    out.reserve(vals.size());
    for (auto k : order) {
        const ComplexVector eta = eig.vectors.col(k);
        out.emplace_back(eta * eta.adjoint());
    }
    return out;
}

PseudometricBasis laplacian_pseudometrics(std::size_t n) {
    const ComplexMatrix t = -build_laplacian(n).matrix();
    const auto dim = static_cast<Eigen::Index>(n);
    const ComplexMatrix parity = parity_matrix(n);

    // U_0 = I, U_1 = T, U_{m+1} = T·U_m − U_{m−1}
    std::vector<ComplexMatrix> cheb;
    cheb.reserve(n);
    cheb.push_back(ComplexMatrix::Identity(dim, dim));
    if (n > 1) cheb.push_back(t);
    while (cheb.size() < n) {
        const auto m = cheb.size();
        cheb.push_back(t * cheb[m - 1] - cheb[m - 2]);
    }

    PseudometricBasis out;
    out.dimension = n;
    out.normalization = Normalization::Staircase;
    for (std::size_t k = 1; k <= n; ++k) out.elements.emplace_back(parity * cheb[n - k]);
    return out;
}

PseudometricBasis canonicalize_basis(const std::vector<HermitianMatrix>& raw) {
    if (raw.empty()) throw InputError("canonicalize_basis: empty basis");
    const std::size_t n = raw.front().dimension();
    for (const auto& p : raw) {
        if (p.dimension() != n) throw InputError("canonicalize_basis: mixed dimensions");
    }

    PseudometricBasis out;
    out.dimension = n;

    if (raw.size() == n) {
        const auto dim = static_cast<Eigen::Index>(n);
        const auto stairs = staircase(dim);
        const auto lap = laplacian_pseudometrics(n);
        RealMatrix a(dim, dim), target(dim, dim);
        for (Eigen::Index t = 0; t < dim; ++t) {
            const auto [i, j] = stairs[static_cast<std::size_t>(t)];
            for (Eigen::Index c = 0; c < dim; ++c) {
                a(t, c) = raw[static_cast<std::size_t>(c)].matrix()(i, j).real();
                target(t, c) = lap.elements[static_cast<std::size_t>(c)].matrix()(i, j).real();
            }
        }
        Eigen::FullPivLU<RealMatrix> lu(a);
        lu.setThreshold(1e-10);
        if (lu.isInvertible()) {
            const RealMatrix comb = lu.solve(target);
            for (Eigen::Index k = 0; k < dim; ++k) {
                ComplexMatrix acc = ComplexMatrix::Zero(dim, dim);
                for (Eigen::Index c = 0; c < dim; ++c) {
                    acc += comb(c, k) * raw[static_cast<std::size_t>(c)].matrix();
                }
                out.elements.emplace_back(acc);
            }
            out.normalization = Normalization::Staircase;
            return out;
        }
    }

    out.elements = echelon_basis(raw);
    out.normalization = Normalization::NonStandard;
    return out;
}

PseudometricBasis pseudometric_basis(const HamiltonianMatrix& h, PseudometricRoute route, double rank_tol) {
    if (route == PseudometricRoute::Auto) {
        route = h.dimension() <= kMaxNullSpaceDimension ? PseudometricRoute::NullSpace
                                                        : PseudometricRoute::Spectral;
    }
    const auto raw = route == PseudometricRoute::NullSpace ? commutant_null_space(h, rank_tol)
                                                           : spectral_pseudometrics(h.matrix());
    if (raw.size() != h.dimension()) {
        throw NumericalError("pseudometric_basis: expected " + std::to_string(h.dimension()) +
                             " independent solutions, found " + std::to_string(raw.size()));
    }
    auto basis = canonicalize_basis(raw);
    basis.params = h.params();
    return basis;
}

char symbol(EntryClass c) {
    switch (c) {
    case EntryClass::Zero: return '.';
    case EntryClass::One: return '1';
    case EntryClass::Real: return 'R';
    case EntryClass::Imaginary: return 'I';
    case EntryClass::Complex: return 'C';
    }
    return '?';
}

std::string EntryPattern::to_string() const {
    std::string out;
    out.reserve(dimension * (dimension + 1));
    for (std::size_t i = 0; i < dimension; ++i) {
        for (std::size_t j = 0; j < dimension; ++j) out.push_back(symbol(at(i, j)));
        out.push_back('\n');
    }
    return out;
}

EntryPattern classify_pattern(const ComplexMatrix& p, double tol) {
    if (p.rows() != p.cols()) throw InputError("classify_pattern: matrix must be square");
    EntryPattern pat;
    pat.dimension = static_cast<std::size_t>(p.rows());
    pat.tol = tol;
    pat.labels.reserve(static_cast<std::size_t>(p.size()));
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
        for (Eigen::Index j = 0; j < p.cols(); ++j) {
            const Complex z = p(i, j);
            const double re = std::abs(z.real());
            const double im = std::abs(z.imag());
            EntryClass c = EntryClass::Complex;
            if (std::abs(z) <= tol) {
                c = EntryClass::Zero;
            } else if (std::abs(z - 1.0) <= tol) {
                c = EntryClass::One;
            } else if (re <= tol) {
                c = EntryClass::Imaginary;
            } else if (im <= tol) {
                c = EntryClass::Real;
            }
            pat.labels.push_back(c);
        }
    }
    return pat;
}

const std::vector<std::string>& alternating_reference_patterns_n6() {
    static const std::vector<std::string> patterns = {
        "1I.I.I\n"
        "I1....\n"
        "..1I.I\n"
        "I.I1..\n"
        "....1I\n"
        "I.I.I1\n",

        ".1....\n"
        "1.1...\n"
        ".1.1..\n"
        "..1.1.\n"
        "...1.1\n"
        "....1.\n",

        "..1I.I\n"
        ".1I1..\n"
        "1I1.1I\n"
        "I1.1I1\n"
        "..1I1.\n"
        "I.I1..\n",

        "...1..\n"
        "..1.1.\n"
        ".1.1.1\n"
        "1.1.1.\n"
        ".1.1..\n"
        "..1...\n",

        "....1I\n"
        "...1I1\n"
        "..1I1.\n"
        ".1I1..\n"
        "1I1...\n"
        "I1....\n",

        ".....1\n"
        "....1.\n"
        "...1..\n"
        "..1...\n"
        ".1....\n"
        "1.....\n",
    };
    return patterns;
}

namespace {

LatticeParams alternating_params(std::size_t dimension, double alpha) {
    std::vector<double> v(dimension / 2);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = (k % 2 == 0) ? alpha : -alpha;
    return LatticeParams(std::move(v));
}

} // namespace

ConjectureReport verify_alternating_conjecture(std::size_t dimension, double alpha, double tol) {
    if (dimension < 2 || dimension % 2 != 0) throw InputError("conjecture: dimension must be even and ≥ 2");
    if (!std::isfinite(alpha)) throw InputError("conjecture: alpha must be finite");

    const auto h = build_hamiltonian(alternating_params(dimension, alpha));
    const auto rep = spectrum_report(h);
    if (!rep.is_real || rep.min_gap <= 1e-8) {
        throw InputError("conjecture: alpha outside the observability domain of the alternating model");
    }

    ConjectureReport out;
    out.dimension = dimension;
    out.alpha = alpha;
    out.second_alpha = alpha / 2.0;
    out.tol = tol;

    const auto basis = pseudometric_basis(h);
    const auto other = pseudometric_basis(build_hamiltonian(alternating_params(dimension, out.second_alpha)));

    const Complex allowed[] = {Complex(0.0, 0.0), Complex(1.0, 0.0), Complex(0.0, alpha), Complex(0.0, -alpha)};
    for (const auto& p : basis.elements) {
        const auto& m = p.matrix();
        for (Eigen::Index i = 0; i < m.size(); ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& z : allowed) best = std::min(best, std::abs(m(i) - z));
            out.max_entry_deviation = std::max(out.max_entry_deviation, best);
        }
        out.patterns.push_back(classify_pattern(p, tol));
    }
    out.entries_confined = out.max_entry_deviation <= tol;

    for (std::size_t k = 1; k < dimension; k += 2) {
        out.max_even_difference = std::max(
            out.max_even_difference, max_norm(basis.elements[k].matrix() - other.elements[k].matrix()));
    }
    out.even_parameter_free = out.max_even_difference <= tol;

    if (dimension == 6) {
        const auto& ref = alternating_reference_patterns_n6();
        bool ok = true;
        for (std::size_t k = 0; k < 6; ++k) ok = ok && out.patterns[k].to_string() == ref[k];
        out.matches_reference = ok;
    }
    return out;
}

} // namespace qhlat
