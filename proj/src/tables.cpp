#include "qhlat/tables.hpp"

#include <optional>

#include "qhlat/errors.hpp"
#include "qhlat/parallel.hpp"

namespace qhlat {

std::string to_string(DimensionConvention c) {
    return c == DimensionConvention::LatticeSize ? "lattice-size" : "param-count";
}

DimensionConvention parse_convention(const std::string& s) {
    if (s == "lattice-size") return DimensionConvention::LatticeSize;
    if (s == "param-count") return DimensionConvention::ParamCount;
    throw InputError("unknown convention '" + s + "' (expected lattice-size or param-count)");
}

std::size_t lattice_dimension(std::size_t table_n, DimensionConvention c) {
    if (table_n == 0) throw InputError("table dimension must be positive");
    if (c == DimensionConvention::ParamCount) return 2 * table_n;
    if (table_n % 2 != 0) throw InputError("lattice size " + std::to_string(table_n) + " is odd");
    return table_n;
}

namespace {

using DirectionFactory = ParameterDirection (*)(std::size_t row, std::size_t count);

CriticalTable compute(std::string name, std::vector<std::string> rows, DirectionFactory make,
                      const std::vector<std::size_t>& dims, DimensionConvention c,
                      const ExceptionalPointOptions& opts) {
    if (dims.empty()) throw InputError(name + ": no dimensions given");
    CriticalTable t;
    t.name = std::move(name);
    t.convention = c;
    t.rows = std::move(rows);
    t.dims = dims;

    std::vector<std::size_t> lattice;
    for (auto n : dims) lattice.push_back(lattice_dimension(n, c));

    const std::size_t nr = t.rows.size();
    const std::size_t nc = dims.size();
    std::vector<std::optional<ExceptionalPointResult>> flat(nr * nc);
    ExceptionalPointOptions inner = opts;
    inner.threads = 1;
    parallel_for(nr * nc, opts.threads, [&](std::size_t idx) {
        const std::size_t r = idx / nc;
        const std::size_t col = idx % nc;
        const std::size_t dim = lattice[col];
        flat[idx] = find_exceptional_point(make(r, dim / 2), dim, inner);
    });
    t.cells.resize(nr);
    for (std::size_t r = 0; r < nr; ++r) {
        for (std::size_t col = 0; col < nc; ++col) t.cells[r].push_back(std::move(*flat[r * nc + col]));
    }
    return t;
}

} // namespace

CriticalTable compute_table1(const std::vector<std::size_t>& dims, DimensionConvention c,
                             const ExceptionalPointOptions& opts) {
    for (auto n : dims) {
        if (lattice_dimension(n, c) / 2 < 4) {
            throw InputError("table1: dimension " + std::to_string(n) + " has fewer than 4 couplings");
        }
    }
    return compute(
        "table1", {"alpha", "beta", "gamma", "delta"},
        [](std::size_t row, std::size_t count) { return ParameterDirection::single_site(row + 1, count); }, dims,
        c, opts);
}

CriticalTable compute_table2(const std::vector<std::size_t>& dims, DimensionConvention c,
                             const ExceptionalPointOptions& opts) {
    return compute(
        "table2", {"alternating", "uniform"},
        [](std::size_t row, std::size_t count) {
            return row == 0 ? ParameterDirection::alternating(count) : ParameterDirection::uniform(count);
        },
        dims, c, opts);
}

} // namespace qhlat
