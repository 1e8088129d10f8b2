#include "qhlat/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "qhlat/errors.hpp"

namespace qhlat {

double max_norm(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

ComplexMatrix parity_matrix(std::size_t n) {
    const auto dim = static_cast<Eigen::Index>(n);
    ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) p(i, dim - 1 - i) = 1.0;
    return p;
}

LatticeParams::LatticeParams(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw InputError("lattice parameters: empty parameter list");
    for (double v : values_) {
        if (!std::isfinite(v)) throw InputError("lattice parameters: non-finite coupling");
    }
}

LatticeParams LatticeParams::negated() const {
    auto v = values_;
    for (auto& x : v) x = -x;
    return LatticeParams(std::move(v));
}

namespace {

ComplexMatrix hopping_chain(Eigen::Index dim) {
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i + 1 < dim; ++i) {
        m(i, i + 1) = -1.0;
        m(i + 1, i) = -1.0;
    }
    return m;
}

} // namespace

HamiltonianMatrix build_hamiltonian(const LatticeParams& params) {
    const auto n = static_cast<Eigen::Index>(params.count());
    const auto dim = 2 * n;
    ComplexMatrix m = hopping_chain(dim);
    for (Eigen::Index k = 0; k < n; ++k) {
        m(k, k) = Complex(0.0, params[static_cast<std::size_t>(k)]);
        m(dim - 1 - k, dim - 1 - k) = Complex(0.0, -params[static_cast<std::size_t>(k)]);
    }
    return HamiltonianMatrix(params, std::move(m));
}

LaplacianMatrix build_laplacian(std::size_t n) {
    if (n == 0) throw InputError("laplacian: dimension must be at least 1");
    return LaplacianMatrix(hopping_chain(static_cast<Eigen::Index>(n)));
}

bool pt_symmetry_check(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    const ComplexMatrix p = parity_matrix(static_cast<std::size_t>(m.rows()));
    const double defect = max_norm(p * m * p - m.conjugate());
    return defect <= tol * (1.0 + max_norm(m));
}

ParameterDirection ParameterDirection::single_site(std::size_t site, std::size_t n) {
    if (n == 0) throw InputError("direction: parameter count must be at least 1");
    if (site < 1 || site > n) {
        throw InputError("direction: site " + std::to_string(site) + " outside 1.." +
                         std::to_string(n));
    }
    std::vector<double> v(n, 0.0);
    v[site - 1] = 1.0;
    return ParameterDirection(DirectionKind::SingleSite, std::move(v), site);
}

ParameterDirection ParameterDirection::alternating(std::size_t n) {
    if (n == 0) throw InputError("direction: parameter count must be at least 1");
    std::vector<double> v(n);
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k) v[k] = (k % 2 == 0) ? s : -s;
    return ParameterDirection(DirectionKind::Alternating, std::move(v));
}

ParameterDirection ParameterDirection::uniform(std::size_t n) {
    if (n == 0) throw InputError("direction: parameter count must be at least 1");
    return ParameterDirection(DirectionKind::Uniform,
                              std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n))));
}

ParameterDirection ParameterDirection::custom(std::vector<double> v) {
    if (v.empty()) throw InputError("direction: empty vector");
    double norm2 = 0.0;
    for (double x : v) {
        if (!std::isfinite(x)) throw InputError("direction: non-finite component");
        norm2 += x * x;
    }
    if (norm2 == 0.0) throw InputError("direction: zero direction vector");
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& x : v) x *= inv;
    return ParameterDirection(DirectionKind::Custom, std::move(v));
}

ParameterDirection ParameterDirection::parse_preset(const std::string& spec, std::size_t n) {
    if (spec == "alternating") return alternating(n);
    if (spec == "uniform") return uniform(n);
    if (spec.rfind("single:", 0) == 0) {
        const auto tail = spec.substr(7);
        std::size_t pos = 0;
        unsigned long site = 0;
        try {
            site = std::stoul(tail, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos == 0 || pos != tail.size()) throw InputError("direction: bad preset '" + spec + "'");
        return single_site(site, n);
    }
    throw InputError("direction: unknown preset '" + spec +
                     "' (expected single:k, alternating or uniform)");
}

std::string ParameterDirection::label() const {
    switch (kind_) {
    case DirectionKind::SingleSite: return "single:" + std::to_string(site_);
    case DirectionKind::Alternating: return "alternating";
    case DirectionKind::Uniform: return "uniform";
    case DirectionKind::Custom: return "custom";
    }
    return "custom";
}

LatticeParams direction_to_params(const ParameterDirection& dir, double magnitude) {
    if (!(magnitude >= 0.0) || !std::isfinite(magnitude)) {
        throw InputError("direction: magnitude must be a finite non-negative number");
    }
    const auto unit = dir.unit();
    std::vector<double> out(unit.begin(), unit.end());
    double scale = magnitude;
    if (dir.kind() != DirectionKind::Custom) {
        double peak = 0.0;
        for (double x : unit) peak = std::max(peak, std::abs(x));
        scale = magnitude / peak;
    }
    for (auto& x : out) x *= scale;
    return LatticeParams(std::move(out));
}

} // namespace qhlat
