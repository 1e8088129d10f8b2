#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qhlat/spectral.hpp"

namespace qhlat {

// How a table column label n maps to a matrix dimension.
enum class DimensionConvention {
    LatticeSize, // N = n
    ParamCount,  // N = 2n
};

std::string to_string(DimensionConvention c);
DimensionConvention parse_convention(const std::string& s);

// Throws InputError for odd lattice sizes.
std::size_t lattice_dimension(std::size_t table_n, DimensionConvention c);

struct CriticalTable {
    std::string name;                     // "table1" / "table2"
    DimensionConvention convention = DimensionConvention::LatticeSize;
    std::vector<std::string> rows;
    std::vector<std::size_t> dims;        // column labels n
    std::vector<std::vector<ExceptionalPointResult>> cells; // [row][column]

    double value(std::size_t r, std::size_t c) const { return cells[r][c].p_crit; }
};

inline const std::vector<std::size_t> kDefaultTableDims = {10, 30, 50, 100};

// Single-site directions k = 1..4 (alpha, beta, gamma, delta).
CriticalTable compute_table1(const std::vector<std::size_t>& dims, DimensionConvention c,
                             const ExceptionalPointOptions& opts = {});

// Full-lattice alternating and uniform directions.
CriticalTable compute_table2(const std::vector<std::size_t>& dims, DimensionConvention c,
                             const ExceptionalPointOptions& opts = {});

} // namespace qhlat
