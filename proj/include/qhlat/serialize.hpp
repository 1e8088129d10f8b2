#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "qhlat/commutant.hpp"
#include "qhlat/metric.hpp"
#include "qhlat/spectral.hpp"
#include "qhlat/tables.hpp"

namespace qhlat {

using Json = nlohmann::ordered_json;

// Fixed-point with `decimals` digits; "%.{sig}g" for the significant-digit form.
std::string format_fixed(double v, int decimals);
std::string format_sig(double v, int sig = 6);

// Complex numbers serialize as [re, im].
Json to_json(Complex z);
Json to_json(const ComplexMatrix& m); // row-major list of rows
Json to_json(const LatticeParams& p);
Json to_json(const ParameterDirection& d);
Json to_json(const SpectrumReport& r);
Json to_json(const ExceptionalPointResult& r);
Json to_json(const CriticalTable& t);
Json to_json(const DomainScan& s);
Json to_json(const PseudometricBasis& b, const ComplexMatrix& h, bool with_patterns);
Json to_json(const MetricCandidate& m, const QuasiHermiticityReport& q);
Json to_json(const PositivityFrontier& f);
Json to_json(const ConjectureReport& r);

// CSV payloads. Header line first; floats use 6 significant digits.
std::string to_csv(const SpectrumReport& r);
std::string to_csv(const ExceptionalPointResult& r);
std::string to_csv(const CriticalTable& t);
std::string to_csv(const DomainScan& s);
std::string to_csv(const PseudometricBasis& b);
std::string to_csv(const MetricCandidate& m);
std::string to_csv(const PositivityFrontier& f);

// Aligned text for humans.
std::string to_text(const SpectrumReport& r);
std::string to_text(const ExceptionalPointResult& r);
std::string to_text(const CriticalTable& t);
std::string to_text(const DomainScan& s);
std::string to_text(const PseudometricBasis& b, bool with_patterns);
std::string to_text(const MetricCandidate& m, const QuasiHermiticityReport& q);
std::string to_text(const ConjectureReport& r);

// Binary portable pixmap of the verdict grid (layout in docs/ppm.md).
std::string to_ppm(const DomainScan& s);

struct RunRecord {
    std::string command;
    Json config;
    std::string version;
    std::optional<long long> timestamp; // seconds since the epoch
    std::string convention;
    Json result;
};

Json to_json(const RunRecord& r);

} // namespace qhlat
