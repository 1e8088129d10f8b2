#include "qhlat/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace qhlat {

std::string format_fixed(double v, int decimals) {
    if (v == 0.0) v = 0.0; // drop the sign of negative zero
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    std::string s = buf;
    if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
    return s;
}

std::string format_sig(double v, int sig) {
    if (v == 0.0) v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", sig, v);
    return buf;
}

namespace {

std::string pad_left(const std::string& s, std::size_t w) {
    return s.size() >= w ? s : std::string(w - s.size(), ' ') + s;
}

std::string complex_text(Complex z, int decimals) {
    std::string re = format_fixed(z.real(), decimals);
    std::string im = format_fixed(std::abs(z.imag()), decimals);
    const bool neg = z.imag() < 0.0 && im.find_first_not_of("0.") != std::string::npos;
    return re + (neg ? "-" : "+") + im + "i";
}

Json number_list(std::span<const double> v) {
    Json out = Json::array();
    for (double x : v) out.push_back(x);
    return out;
}

} // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const LatticeParams& p) { return number_list(p.values()); }

Json to_json(const ParameterDirection& d) {
    Json out;
    out["label"] = d.label();
    out["unit"] = number_list(d.unit());
    return out;
}

Json to_json(const SpectrumReport& r) {
    Json out;
    Json ev = Json::array();
    for (const auto& z : r.eigenvalues) ev.push_back(to_json(z));
    out["eigenvalues"] = std::move(ev);
    out["max_imag"] = r.max_imag;
    out["min_gap"] = r.min_gap;
    out["residual"] = r.residual;
    out["eigvec_condition"] = r.eigvec_condition;
    out["is_real"] = r.is_real;
    return out;
}

Json to_json(const ExceptionalPointResult& r) {
    Json out;
    out["direction"] = to_json(r.direction);
    out["dimension"] = r.dimension;
    out["p_crit"] = r.p_crit;
    out["p_lo"] = r.p_lo;
    out["p_hi"] = r.p_hi;
    out["p_max"] = r.p_max;
    out["param_tol"] = r.param_tol;
    out["reality_tol"] = r.reality_tol;
    out["iterations"] = r.iterations;
    out["non_monotone"] = r.non_monotone;
    if (!r.warning.empty()) out["warning"] = r.warning;
    out["eigvec_condition_lo"] = r.eigvec_condition_lo;
    return out;
}

Json to_json(const CriticalTable& t) {
    Json out;
    out["table"] = t.name;
    out["convention"] = to_string(t.convention);
    out["dims"] = t.dims;
    Json rows = Json::array();
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        Json row;
        row["label"] = t.rows[r];
        Json cells = Json::array();
        for (const auto& c : t.cells[r]) cells.push_back(to_json(c));
        row["cells"] = std::move(cells);
        rows.push_back(std::move(row));
    }
    out["rows"] = std::move(rows);
    return out;
}

Json to_json(const DomainScan& s) {
    Json out;
    out["axes"] = Json::array({s.axis_i, s.axis_j});
    out["fixed"] = to_json(s.fixed);
    out["grid"] = {{"first", {{"min", s.grid.first.min}, {"max", s.grid.first.max}, {"steps", s.grid.first.steps}}},
                   {"second",
                    {{"min", s.grid.second.min}, {"max", s.grid.second.max}, {"steps", s.grid.second.steps}}}};
    out["reality_tol"] = s.reality_tol;
    out["real_count"] = s.real_count();
    Json real = Json::array();
    Json imag = Json::array();
    for (std::size_t a = 0; a < s.grid.first.steps; ++a) {
        Json rrow = Json::array();
        Json irow = Json::array();
        for (std::size_t b = 0; b < s.grid.second.steps; ++b) {
            rrow.push_back(s.real_at(a, b) ? 1 : 0);
            irow.push_back(s.max_imag_at(a, b));
        }
        real.push_back(std::move(rrow));
        imag.push_back(std::move(irow));
    }
    out["is_real"] = std::move(real);
    out["max_imag"] = std::move(imag);
    return out;
}

Json to_json(const PseudometricBasis& b, const ComplexMatrix& h, bool with_patterns) {
    Json out;
    if (b.params) out["params"] = to_json(*b.params);
    out["dimension"] = b.dimension;
    out["normalization"] = to_string(b.normalization);
    Json elems = Json::array();
    for (std::size_t k = 0; k < b.elements.size(); ++k) {
        Json e;
        e["k"] = k + 1;
        e["residual"] = dieudonne_residual(h, b.elements[k].matrix());
        e["matrix"] = to_json(b.elements[k].matrix());
        if (with_patterns) {
            std::string pat = classify_pattern(b.elements[k]).to_string();
            Json lines = Json::array();
            std::istringstream in(pat);
            for (std::string line; std::getline(in, line);) lines.push_back(line);
            e["pattern"] = std::move(lines);
        }
        elems.push_back(std::move(e));
    }
    out["elements"] = std::move(elems);
    return out;
}

Json to_json(const MetricCandidate& m, const QuasiHermiticityReport& q) {
    Json out;
    out["eps"] = m.eps;
    out["positivity"] = to_string(m.positivity);
    out["min_eigenvalue"] = m.min_eigenvalue;
    out["norm"] = m.norm;
    out["margin"] = m.margin;
    out["pd_tol"] = m.pd_tol;
    out["residual"] = q.residual;
    out["residual_tol"] = q.tol;
    out["quasi_hermitian"] = q.pass;
    out["theta"] = to_json(m.theta.matrix());
    return out;
}

Json to_json(const PositivityFrontier& f) {
    Json out;
    out["dimension"] = f.dimension;
    out["mode"] = to_string(f.mode);
    out["free_first"] = f.spec.free_first;
    out["range"] = Json::array({f.spec.min, f.spec.max});
    if (f.mode == FrontierMode::Grid) {
        out["steps"] = f.spec.steps;
    } else {
        out["samples"] = f.spec.samples;
        out["seed"] = f.spec.seed;
    }
    out["points"] = f.points.size();
    out["positive_count"] = f.positive_count;
    out["positive_fraction"] = f.positive_fraction();
    return out;
}

Json to_json(const ConjectureReport& r) {
    Json out;
    out["dimension"] = r.dimension;
    out["alpha"] = r.alpha;
    out["second_alpha"] = r.second_alpha;
    out["tol"] = r.tol;
    out["entries_confined"] = r.entries_confined;
    out["max_entry_deviation"] = r.max_entry_deviation;
    out["even_parameter_free"] = r.even_parameter_free;
    out["max_even_difference"] = r.max_even_difference;
    out["matches_reference"] = r.matches_reference ? Json(*r.matches_reference) : Json(nullptr);
    Json pats = Json::array();
    for (const auto& p : r.patterns) {
        Json lines = Json::array();
        std::istringstream in(p.to_string());
        for (std::string line; std::getline(in, line);) lines.push_back(line);
        pats.push_back(std::move(lines));
    }
    out["patterns"] = std::move(pats);
    return out;
}

Json to_json(const RunRecord& r) {
    Json out;
    out["command"] = r.command;
    out["version"] = r.version;
    out["timestamp"] = r.timestamp ? Json(*r.timestamp) : Json(nullptr);
    out["convention"] = r.convention;
    out["config"] = r.config;
    out["result"] = r.result;
    return out;
}

std::string to_csv(const SpectrumReport& r) {
    std::ostringstream out;
    out << "index,re,im\n";
    for (std::size_t k = 0; k < r.eigenvalues.size(); ++k) {
        out << k + 1 << ',' << format_sig(r.eigenvalues[k].real()) << ',' << format_sig(r.eigenvalues[k].imag())
            << '\n';
    }
    return out.str();
}

std::string to_csv(const ExceptionalPointResult& r) {
    std::ostringstream out;
    out << "direction,dimension,p_crit,p_lo,p_hi,non_monotone\n";
    out << r.direction.label() << ',' << r.dimension << ',' << format_sig(r.p_crit) << ',' << format_sig(r.p_lo)
        << ',' << format_sig(r.p_hi) << ',' << (r.non_monotone ? 1 : 0) << '\n';
    return out.str();
}

std::string to_csv(const CriticalTable& t) {
    std::ostringstream out;
    out << "row";
    for (auto n : t.dims) out << ",n=" << n;
    out << '\n';
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        out << t.rows[r];
        for (std::size_t c = 0; c < t.dims.size(); ++c) out << ',' << format_sig(t.value(r, c));
        out << '\n';
    }
    return out.str();
}

std::string to_csv(const DomainScan& s) {
    std::ostringstream out;
    out << "p" << s.axis_i << ",p" << s.axis_j << ",is_real,max_imag\n";
    for (std::size_t a = 0; a < s.grid.first.steps; ++a) {
        for (std::size_t b = 0; b < s.grid.second.steps; ++b) {
            out << format_sig(s.grid.first.centre(a)) << ',' << format_sig(s.grid.second.centre(b)) << ','
                << (s.real_at(a, b) ? 1 : 0) << ',' << format_sig(s.max_imag_at(a, b)) << '\n';
        }
    }
    return out.str();
}

std::string to_csv(const PseudometricBasis& b) {
    std::ostringstream out;
    out << "k,i,j,re,im\n";
    for (std::size_t k = 0; k < b.elements.size(); ++k) {
        for (std::size_t i = 0; i < b.dimension; ++i) {
            for (std::size_t j = 0; j < b.dimension; ++j) {
                const Complex z = b.elements[k](i, j);
                out << k + 1 << ',' << i + 1 << ',' << j + 1 << ',' << format_sig(z.real()) << ','
                    << format_sig(z.imag()) << '\n';
            }
        }
    }
    return out.str();
}

std::string to_csv(const MetricCandidate& m) {
    std::ostringstream out;
    for (std::size_t k = 0; k < m.eps.size(); ++k) out << "eps" << k + 1 << ',';
    out << "positivity,min_eigenvalue,margin\n";
    for (double e : m.eps) out << format_sig(e) << ',';
    out << to_string(m.positivity) << ',' << format_sig(m.min_eigenvalue) << ',' << format_sig(m.margin) << '\n';
    return out.str();
}

std::string to_csv(const PositivityFrontier& f) {
    std::ostringstream out;
    for (std::size_t k = 0; k < f.dimension; ++k) out << "eps" << k + 1 << ',';
    out << "positivity,margin\n";
    for (const auto& p : f.points) {
        for (double e : p.eps) out << format_sig(e) << ',';
        out << to_string(p.positivity) << ',' << format_sig(p.margin) << '\n';
    }
    return out.str();
}

std::string to_text(const SpectrumReport& r) {
    std::ostringstream out;
    out << "  k          Re λ          Im λ\n";
    for (std::size_t k = 0; k < r.eigenvalues.size(); ++k) {
        out << pad_left(std::to_string(k + 1), 3) << pad_left(format_fixed(r.eigenvalues[k].real(), 5), 14)
            << pad_left(format_fixed(r.eigenvalues[k].imag(), 5), 14) << '\n';
    }
    out << "real spectrum: " << (r.is_real ? "yes" : "no") << '\n';
    out << "max |Im λ|:    " << format_sig(r.max_imag) << '\n';
    out << "min gap:       " << format_sig(r.min_gap) << '\n';
    out << "residual:      " << format_sig(r.residual) << '\n';
    return out.str();
}

std::string to_text(const ExceptionalPointResult& r) {
    std::ostringstream out;
    out << "direction:  " << r.direction.label() << '\n';
    out << "dimension:  " << r.dimension << '\n';
    out << "p_crit:     " << format_fixed(r.p_crit, 6) << '\n';
    out << "bracket:    [" << format_fixed(r.p_lo, 8) << ", " << format_fixed(r.p_hi, 8) << "]\n";
    out << "iterations: " << r.iterations << '\n';
    if (!r.warning.empty()) out << "warning:    " << r.warning << '\n';
    return out.str();
}

std::string to_text(const CriticalTable& t) {
    std::size_t w = 3;
    for (const auto& r : t.rows) w = std::max(w, r.size());
    std::ostringstream out;
    out << std::string(w, ' ');
    for (auto n : t.dims) out << pad_left("n=" + std::to_string(n), 10);
    out << '\n';
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        out << t.rows[r] << std::string(w - t.rows[r].size(), ' ');
        for (std::size_t c = 0; c < t.dims.size(); ++c) out << pad_left(format_fixed(t.value(r, c), 4), 10);
        out << '\n';
    }
    out << "convention: " << to_string(t.convention) << '\n';
    return out.str();
}

std::string to_text(const DomainScan& s) {
    std::ostringstream out;
    out << "axes p" << s.axis_i << " (rows, top = max) x p" << s.axis_j << " (columns); '#' real, '.' complex\n";
    for (std::size_t a = s.grid.first.steps; a-- > 0;) {
        for (std::size_t b = 0; b < s.grid.second.steps; ++b) out << (s.real_at(a, b) ? '#' : '.');
        out << '\n';
    }
    out << "real cells: " << s.real_count() << " / " << s.is_real.size() << '\n';
    return out.str();
}

std::string to_text(const PseudometricBasis& b, bool with_patterns) {
    std::ostringstream out;
    out << "normalization: " << to_string(b.normalization) << "\n\n";
    for (std::size_t k = 0; k < b.elements.size(); ++k) {
        out << "P" << k + 1 << ":\n";
        std::vector<std::string> cells;
        std::size_t w = 0;
        for (std::size_t i = 0; i < b.dimension; ++i) {
            for (std::size_t j = 0; j < b.dimension; ++j) {
                cells.push_back(complex_text(b.elements[k](i, j), 4));
                w = std::max(w, cells.back().size());
            }
        }
        for (std::size_t i = 0; i < b.dimension; ++i) {
            for (std::size_t j = 0; j < b.dimension; ++j) out << pad_left(cells[i * b.dimension + j], w + 2);
            out << '\n';
        }
        if (with_patterns) out << classify_pattern(b.elements[k]).to_string();
        out << '\n';
    }
    return out.str();
}

std::string to_text(const MetricCandidate& m, const QuasiHermiticityReport& q) {
    std::ostringstream out;
    out << "eps:            ";
    for (std::size_t k = 0; k < m.eps.size(); ++k) out << (k ? " " : "") << format_sig(m.eps[k]);
    out << '\n';
    out << "positivity:     " << to_string(m.positivity) << '\n';
    out << "min eigenvalue: " << format_sig(m.min_eigenvalue) << '\n';
    out << "margin:         " << format_sig(m.margin) << '\n';
    out << "residual:       " << format_sig(q.residual) << (q.pass ? " (pass)" : " (fail)") << '\n';
    return out.str();
}

std::string to_text(const ConjectureReport& r) {
    std::ostringstream out;
    out << "dimension:            " << r.dimension << '\n';
    out << "alpha:                " << format_sig(r.alpha) << '\n';
    out << "entries in {0,1,±iα}: " << (r.entries_confined ? "yes" : "no") << " (max deviation "
        << format_sig(r.max_entry_deviation) << ")\n";
    out << "even elements fixed:  " << (r.even_parameter_free ? "yes" : "no") << " (max difference "
        << format_sig(r.max_even_difference) << " vs alpha " << format_sig(r.second_alpha) << ")\n";
    if (r.matches_reference) out << "reference skeletons:  " << (*r.matches_reference ? "match" : "differ") << '\n';
    for (std::size_t k = 0; k < r.patterns.size(); ++k) out << "\nP" << k + 1 << ":\n" << r.patterns[k].to_string();
    return out.str();
}

std::string to_ppm(const DomainScan& s) {
    const std::size_t width = s.grid.second.steps;
    const std::size_t height = s.grid.first.steps;
    std::string out = "P6\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    out.reserve(out.size() + 3 * width * height);
    for (std::size_t a = height; a-- > 0;) {
        for (std::size_t b = 0; b < width; ++b) {
            const char v = s.real_at(a, b) ? '\0' : '\xff';
            out.append(3, v);
        }
    }
    return out;
}

} // namespace qhlat
