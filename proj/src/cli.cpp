#include "qhlat/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "qhlat/errors.hpp"
#include "qhlat/serialize.hpp"

namespace qhlat {

namespace {

struct Settings {
    std::size_t dim = 0;
    std::string params;
    std::string preset;
    double mag = 0.0;
    double tol_imag = 1e-8;
    double tol_param = 1e-6;
    double pmax = 0.0;
    std::string out;
    std::string format = "json";
    std::string convention = "lattice-size";
    unsigned threads = 1;
    std::string dims = "10,30,50,100";
    std::string axes = "1,2";
    std::string range = "-1.5,1.5";
    std::string range2;
    std::size_t steps = 200;
    std::size_t steps2 = 0;
    bool patterns = false;
    std::string route = "auto";
    double tol_rank = 1e-8;
    std::string eps;
    double pd_tol = 1e-10;
    double tol_residual = 1e-10;
    bool frontier = false;
    std::string frontier_range = "-1,1";
    std::size_t frontier_steps = 5;
    std::size_t samples = 0;
    std::uint64_t seed = 1;
    bool free_first = false;
    double tol = 1e-9;
};

std::vector<double> parse_doubles(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find(',', pos), text.size());
        std::string tok = text.substr(pos, end - pos);
        const auto first = tok.find_first_not_of(" \t");
        const auto last = tok.find_last_not_of(" \t");
        tok = first == std::string::npos ? "" : tok.substr(first, last - first + 1);
        double v = 0.0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
            throw InputError(what + ": cannot parse '" + tok + "' as a number");
        }
        out.push_back(v);
        pos = end + 1;
    }
    return out;
}

std::vector<std::size_t> parse_indices(const std::string& text, const std::string& what) {
    std::vector<std::size_t> out;
    for (double v : parse_doubles(text, what)) {
        if (v < 0.0 || v != std::floor(v)) throw InputError(what + ": expected non-negative integers");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

std::pair<double, double> parse_range(const std::string& text, const std::string& what) {
    const auto v = parse_doubles(text, what);
    if (v.size() != 2) throw InputError(what + ": expected 'min,max'");
    return {v[0], v[1]};
}

unsigned resolve_threads(unsigned t) {
    if (t != 0) return t;
    return std::max(1u, std::thread::hardware_concurrency());
}

// Hamiltonian couplings from --params, --preset/--mag/--dim, or --dim alone
// (free lattice).
LatticeParams resolve_params(const Settings& s, const CLI::App& sub) {
    if (sub.count("--params") > 0) {
        LatticeParams p(parse_doubles(s.params, "--params"));
        if (sub.count("--dim") > 0 && s.dim != p.dimension()) {
            throw InputError("--dim " + std::to_string(s.dim) + " does not match " + std::to_string(p.count()) +
                             " parameters (N = " + std::to_string(p.dimension()) + ")");
        }
        return p;
    }
    if (sub.count("--dim") == 0) throw InputError("give --params, or --dim (with --preset and --mag)");
    if (s.dim < 2 || s.dim % 2 != 0) throw InputError("--dim must be even and at least 2");
    if (sub.count("--preset") > 0) {
        if (sub.count("--mag") == 0) throw InputError("--preset needs --mag");
        return direction_to_params(ParameterDirection::parse_preset(s.preset, s.dim / 2), s.mag);
    }
    return LatticeParams(std::vector<double>(s.dim / 2, 0.0));
}

ParameterDirection resolve_direction(const Settings& s, const CLI::App& sub, std::size_t& dim) {
    if (sub.count("--preset") > 0) {
        if (sub.count("--dim") == 0) throw InputError("--preset needs --dim");
        if (s.dim < 2 || s.dim % 2 != 0) throw InputError("--dim must be even and at least 2");
        dim = s.dim;
        return ParameterDirection::parse_preset(s.preset, s.dim / 2);
    }
    if (sub.count("--params") > 0) {
        auto d = ParameterDirection::custom(parse_doubles(s.params, "--params"));
        dim = 2 * d.count();
        if (sub.count("--dim") > 0 && s.dim != dim) throw InputError("--dim does not match the direction length");
        return d;
    }
    throw InputError("give --preset (with --dim) or a direction via --params");
}

void require_format(const std::string& fmt, std::initializer_list<const char*> allowed, const std::string& cmd) {
    for (const char* a : allowed) {
        if (fmt == a) return;
    }
    throw InputError("format '" + fmt + "' is not available for " + cmd);
}

std::optional<long long> source_date_epoch() {
    const char* env = std::getenv("SOURCE_DATE_EPOCH");
    if (env == nullptr || *env == '\0') return std::nullopt;
    long long v = 0;
    const char* end = env + std::char_traits<char>::length(env);
    const auto res = std::from_chars(env, end, v);
    if (res.ec != std::errc() || res.ptr != end) return std::nullopt;
    return v;
}

// Flat key=value file; '#' starts a comment line.
std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read config file " + path);
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InputError(path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        auto trim = [](std::string v) {
            const auto a = v.find_first_not_of(" \t\r");
            const auto b = v.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : v.substr(a, b - a + 1);
        };
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

struct Emission {
    std::string body;
};

Emission emit_record(const std::string& command, const Settings& s, Json config, Json result) {
    RunRecord rec;
    rec.command = command;
    rec.version = kVersion;
    rec.timestamp = source_date_epoch();
    rec.convention = s.convention;
    config["format"] = s.format;
    rec.config = std::move(config);
    rec.result = std::move(result);
    return {to_json(rec).dump(2) + "\n"};
}

Json params_config(const LatticeParams& p, const Settings& s) {
    Json c;
    c["dim"] = p.dimension();
    c["params"] = to_json(p);
    c["tol_imag"] = s.tol_imag;
    return c;
}

Emission cmd_spectrum(const Settings& s, const CLI::App& sub) {
    require_format(s.format, {"json", "csv", "text"}, "spectrum");
    const auto p = resolve_params(s, sub);
    const auto rep = spectrum_report(build_hamiltonian(p), SpectralOptions{s.tol_imag});
    if (s.format == "csv") return {to_csv(rep)};
    if (s.format == "text") return {to_text(rep)};
    return emit_record("spectrum", s, params_config(p, s), to_json(rep));
}

Emission cmd_ep(const Settings& s, const CLI::App& sub) {
    require_format(s.format, {"json", "csv", "text"}, "ep");
    std::size_t dim = 0;
    const auto dir = resolve_direction(s, sub, dim);
    ExceptionalPointOptions opts;
    if (sub.count("--pmax") > 0) opts.p_max = s.pmax;
    opts.param_tol = s.tol_param;
    opts.reality_tol = s.tol_imag;
    opts.threads = resolve_threads(s.threads);
    const auto res = find_exceptional_point(dir, dim, opts);
    if (s.format == "csv") return {to_csv(res)};
    if (s.format == "text") return {to_text(res)};
    Json c;
    c["dim"] = dim;
    c["direction"] = to_json(dir);
    c["p_max"] = res.p_max;
    c["tol_param"] = s.tol_param;
    c["tol_imag"] = s.tol_imag;
    return emit_record("ep", s, std::move(c), to_json(res));
}

Emission cmd_table(const std::string& which, const Settings& s) {
    require_format(s.format, {"json", "csv", "text"}, which);
    const auto dims = parse_indices(s.dims, "--dims");
    const auto conv = parse_convention(s.convention);
    ExceptionalPointOptions opts;
    opts.param_tol = s.tol_param;
    opts.reality_tol = s.tol_imag;
    opts.threads = resolve_threads(s.threads);
    const auto t = which == "table1" ? compute_table1(dims, conv, opts) : compute_table2(dims, conv, opts);
    if (s.format == "csv") return {to_csv(t)};
    if (s.format == "text") return {to_text(t)};
    Json c;
    c["dims"] = dims;
    c["tol_param"] = s.tol_param;
    c["tol_imag"] = s.tol_imag;
    return emit_record(which, s, std::move(c), to_json(t));
}

Emission cmd_domain(const Settings& s, const CLI::App& sub) {
    require_format(s.format, {"json", "csv", "text", "ppm"}, "domain");
    const auto p = resolve_params(s, sub);
    const auto axes = parse_indices(s.axes, "--axes");
    if (axes.size() != 2) throw InputError("--axes: expected 'i,j'");
    const auto r1 = parse_range(s.range, "--range");
    const auto r2 = s.range2.empty() ? r1 : parse_range(s.range2, "--range2");
    GridSpec grid{{r1.first, r1.second, s.steps}, {r2.first, r2.second, s.steps2 == 0 ? s.steps : s.steps2}};
    const auto scan = scan_domain_2d(axes[0], axes[1], p, grid, ScanOptions{s.tol_imag, resolve_threads(s.threads)});
    if (s.format == "csv") return {to_csv(scan)};
    if (s.format == "text") return {to_text(scan)};
    if (s.format == "ppm") return {to_ppm(scan)};
    return emit_record("domain", s, params_config(p, s), to_json(scan));
}

PseudometricRoute parse_route(const std::string& r) {
    if (r == "auto") return PseudometricRoute::Auto;
    if (r == "nullspace") return PseudometricRoute::NullSpace;
    if (r == "spectral") return PseudometricRoute::Spectral;
    throw InputError("--route: expected auto, nullspace or spectral");
}

Emission cmd_pseudometrics(const Settings& s, const CLI::App& sub) {
    require_format(s.format, {"json", "csv", "text"}, "pseudometrics");
    const auto p = resolve_params(s, sub);
    const auto h = build_hamiltonian(p);
    const auto basis = pseudometric_basis(h, parse_route(s.route), s.tol_rank);
    if (s.format == "csv") return {to_csv(basis)};
    if (s.format == "text") return {to_text(basis, s.patterns)};
    Json c = params_config(p, s);
    c["route"] = s.route;
    c["tol_rank"] = s.tol_rank;
    c["patterns"] = s.patterns;
    return emit_record("pseudometrics", s, std::move(c), to_json(basis, h.matrix(), s.patterns));
}

Emission cmd_metric(const Settings& s, const CLI::App& sub) {
    require_format(s.format, {"json", "csv", "text"}, "metric");
    const auto p = resolve_params(s, sub);
    const auto h = build_hamiltonian(p);
    const auto basis = pseudometric_basis(h);
    std::vector<double> eps(basis.dimension, 0.0);
    eps[0] = 1.0;
    if (sub.count("--eps") > 0) eps = parse_doubles(s.eps, "--eps");
    const auto cand = assemble_metric(basis, eps, s.pd_tol);
    const auto q = verify_quasi_hermiticity(h.matrix(), cand.theta.matrix(), s.tol_residual);

    std::optional<PositivityFrontier> frontier;
    FrontierSpec spec;
    if (s.frontier) {
        const auto r = parse_range(s.frontier_range, "--frontier-range");
        spec.min = r.first;
        spec.max = r.second;
        spec.steps = s.frontier_steps;
        spec.free_first = s.free_first;
        spec.pd_tol = s.pd_tol;
        spec.threads = resolve_threads(s.threads);
        spec.seed = s.seed;
        if (s.samples > 0) {
            spec.mode = FrontierMode::Sample;
            spec.samples = s.samples;
        }
        frontier = positivity_frontier(basis, spec);
    }

    if (s.format == "csv") return {frontier ? to_csv(*frontier) : to_csv(cand)};
    if (s.format == "text") {
        std::string body = to_text(cand, q);
        if (frontier) {
            body += "frontier:       " + std::to_string(frontier->positive_count) + " / " +
                    std::to_string(frontier->points.size()) + " positive (" + to_string(frontier->mode) + ")\n";
        }
        return {body};
    }
    Json c = params_config(p, s);
    c["eps"] = eps;
    c["pd_tol"] = s.pd_tol;
    c["tol_residual"] = s.tol_residual;
    Json result = to_json(cand, q);
    if (frontier) {
        c["frontier"] = {{"range", Json::array({spec.min, spec.max})},
                         {"steps", spec.steps},
                         {"samples", s.samples},
                         {"seed", spec.seed},
                         {"free_first", spec.free_first}};
        result["frontier"] = to_json(*frontier);
    }
    return emit_record("metric", s, std::move(c), std::move(result));
}

Emission cmd_conjecture(const Settings& s, const CLI::App& sub) {
    require_format(s.format, {"json", "text"}, "conjecture");
    const std::size_t dim = sub.count("--dim") > 0 ? s.dim : 6;
    const double alpha = sub.count("--mag") > 0 ? s.mag : 0.05;
    const auto rep = verify_alternating_conjecture(dim, alpha, s.tol);
    PositivityThresholdOptions topts;
    topts.p_max = 1.0;
    topts.pd_tol = s.pd_tol;
    const auto thr = p1_positivity_threshold(ParameterDirection::alternating(dim / 2), topts);
    if (s.format == "text") {
        std::string body = to_text(rep);
        body += "\nP1 positive up to alpha ≈ " +
                (thr.found ? format_fixed(thr.p_crit, 6) : std::string("(not lost below 1)")) + "\n";
        return {body};
    }
    Json c;
    c["dim"] = dim;
    c["alpha"] = alpha;
    c["tol"] = s.tol;
    c["pd_tol"] = s.pd_tol;
    Json result = to_json(rep);
    result["p1_positivity_threshold"] = thr.found ? Json(thr.p_crit) : Json(nullptr);
    return emit_record("conjecture", s, std::move(c), std::move(result));
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Settings s;
    CLI::App app{"Spectra, exceptional points and metrics of PT-symmetric lattice Hamiltonians", "qhlat"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", s.format, "json, csv, text (ppm for domain)");
        sub->add_option("--out", s.out, "Write output to this file instead of stdout");
        sub->add_option("--convention", s.convention, "Table column convention: lattice-size or param-count");
    };
    auto hamiltonian = [&](CLI::App* sub) {
        sub->add_option("--dim", s.dim, "Matrix dimension N (even)");
        sub->add_option("--params", s.params, "Comma-separated couplings γ1,...,γn");
        sub->add_option("--preset", s.preset, "single:k, alternating or uniform");
        sub->add_option("--mag", s.mag, "Preset magnitude");
        sub->add_option("--tol-imag", s.tol_imag, "Relative reality tolerance");
    };

    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues and reality verdict");
    common(spectrum);
    hamiltonian(spectrum);

    auto* ep = app.add_subcommand("ep", "Exceptional point along a direction");
    common(ep);
    hamiltonian(ep);
    ep->add_option("--tol-param", s.tol_param, "Bracket width");
    ep->add_option("--pmax", s.pmax, "Upper end of the magnitude search");
    ep->add_option("--threads", s.threads, "Worker threads (0 = all cores)");

    std::vector<CLI::App*> tables;
    for (const char* name : {"table1", "table2"}) {
        auto* t = app.add_subcommand(name, std::string(name) == "table1" ? "Critical values, single-site couplings"
                                                                         : "Critical values, full-lattice couplings");
        common(t);
        t->add_option("--dims", s.dims, "Comma-separated column labels n");
        t->add_option("--tol-param", s.tol_param, "Bracket width");
        t->add_option("--tol-imag", s.tol_imag, "Relative reality tolerance");
        t->add_option("--threads", s.threads, "Worker threads (0 = all cores)");
        tables.push_back(t);
    }

    auto* domain = app.add_subcommand("domain", "2D scan of spectral reality");
    common(domain);
    hamiltonian(domain);
    domain->add_option("--axes", s.axes, "Varied parameters i,j (1-based)");
    domain->add_option("--range", s.range, "min,max for both axes");
    domain->add_option("--range2", s.range2, "min,max for the second axis");
    domain->add_option("--steps", s.steps, "Cells per axis");
    domain->add_option("--steps2", s.steps2, "Cells along the second axis");
    domain->add_option("--threads", s.threads, "Worker threads (0 = all cores)");

    auto* pseudo = app.add_subcommand("pseudometrics", "Canonical pseudometric basis");
    common(pseudo);
    hamiltonian(pseudo);
    pseudo->add_flag("--patterns", s.patterns, "Print zero/one/real/imaginary skeletons");
    pseudo->add_option("--route", s.route, "auto, nullspace or spectral");
    pseudo->add_option("--tol-rank", s.tol_rank, "Relative singular-value threshold");

    auto* metric = app.add_subcommand("metric", "Assemble Θ = Σ ε_k P^k and test positivity");
    common(metric);
    hamiltonian(metric);
    metric->add_option("--eps", s.eps, "Comma-separated coefficients (default 1,0,...,0)");
    metric->add_option("--pd-tol", s.pd_tol, "Relative positive-definiteness tolerance");
    metric->add_option("--tol-residual", s.tol_residual, "Quasi-hermiticity residual tolerance");
    metric->add_flag("--frontier", s.frontier, "Scan coefficient space for positive combinations");
    metric->add_option("--frontier-range", s.frontier_range, "min,max per free coefficient");
    metric->add_option("--frontier-steps", s.frontier_steps, "Grid points per free coefficient");
    metric->add_option("--samples", s.samples, "Random samples instead of a grid");
    metric->add_option("--seed", s.seed, "Sampling seed");
    metric->add_flag("--free-first", s.free_first, "Let ε1 vary as well");
    metric->add_option("--threads", s.threads, "Worker threads (0 = all cores)");

    auto* conj = app.add_subcommand("conjecture", "Check the alternating-model entry structure");
    common(conj);
    conj->add_option("--dim", s.dim, "Matrix dimension N (even, default 6)");
    conj->add_option("--mag", s.mag, "Coupling α (default 0.05)");
    conj->add_option("--tol", s.tol, "Entry tolerance");
    conj->add_option("--pd-tol", s.pd_tol, "Relative positive-definiteness tolerance");

    std::vector<std::string> args(argv, argv + argc);
    try {
        if (const char* cfg = std::getenv("QHLAT_CONFIG"); cfg != nullptr && *cfg != '\0') {
            const auto entries = read_config(cfg);
            std::size_t pos = 1;
            while (pos < args.size() && !args[pos].empty() && args[pos][0] == '-') ++pos;
            CLI::App* target = nullptr;
            if (pos < args.size()) {
                for (auto* sub : app.get_subcommands({})) {
                    if (sub->get_name() == args[pos]) target = sub;
                }
            }
            if (target != nullptr) {
                std::set<std::string> known;
                for (auto* sub : app.get_subcommands({})) {
                    for (const auto* opt : sub->get_options()) {
                        for (const auto& name : opt->get_lnames()) known.insert(name);
                    }
                }
                std::vector<std::string> injected;
                for (const auto& [key, value] : entries) {
                    if (key == "out" || key == "help") throw InputError("config key '" + key + "' is not allowed");
                    if (known.count(key) == 0) throw InputError("unknown config key '" + key + "'");
                    if (target->get_option_no_throw("--" + key) != nullptr) injected.push_back("--" + key + "=" + value);
                }
                args.insert(args.begin() + static_cast<std::ptrdiff_t>(pos) + 1, injected.begin(), injected.end());
            }
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    std::vector<const char*> cargv;
    for (const auto& a : args) cargv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        Emission em;
        if (spectrum->parsed()) {
            em = cmd_spectrum(s, *spectrum);
        } else if (ep->parsed()) {
            em = cmd_ep(s, *ep);
        } else if (tables[0]->parsed()) {
            em = cmd_table("table1", s);
        } else if (tables[1]->parsed()) {
            em = cmd_table("table2", s);
        } else if (domain->parsed()) {
            em = cmd_domain(s, *domain);
        } else if (pseudo->parsed()) {
            em = cmd_pseudometrics(s, *pseudo);
        } else if (metric->parsed()) {
            em = cmd_metric(s, *metric);
        } else {
            em = cmd_conjecture(s, *conj);
        }
        if (s.out.empty()) {
            out << em.body;
            out.flush();
        } else {
            std::ofstream f(s.out, std::ios::binary | std::ios::trunc);
            if (!f) throw InputError("cannot open output file " + s.out);
            f << em.body;
            if (!f) throw InputError("failed writing " + s.out);
        }
        return 0;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const NotFoundError& e) {
        err << "not found: " << e.what() << '\n';
        return 4;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 3;
    }
}

} // namespace qhlat
