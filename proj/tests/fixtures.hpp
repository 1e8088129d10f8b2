#pragma once

// Reference skeletons for the six-site pseudometrics, rows joined by '\n'.
// '.' zero, '1' one, 'I' imaginary, 'R' real other than one, '?' a cell drawn
// as an overlay of a one and a coloured dot (not compared).

#include <complex>
#include <string>
#include <vector>

namespace fixtures {

// Single coupling on the third site (gamma only).
inline const std::vector<std::string> kGammaOnly = {
    "1....I\n"
    ".1..I.\n"
    "..1I..\n"
    "..I1..\n"
    ".I..1.\n"
    "I....1\n",

    // Drawn with P6 subtracted so that (1,6) vanishes.
    ".1..I.\n"
    "1.1I.I\n"
    ".1.?I.\n"
    ".I?.1.\n"
    "I.I1.1\n"
    ".I..1.\n",

    "..1IR.\n"
    ".1.1IR\n"
    "1.1I1I\n"
    "I1I1.1\n"
    "RI1.1.\n"
    ".RI1..\n",

    "...1.R\n"
    "..1I?.\n"
    ".1.1I1\n"
    "1I1.1.\n"
    ".?I1..\n"
    "R.1...\n",

    "....1.\n"
    "...1.1\n"
    "..1I1.\n"
    ".1I1..\n"
    "1.1...\n"
    ".1....\n",

    ".....1\n"
    "....1.\n"
    "...1..\n"
    "..1...\n"
    ".1....\n"
    "1.....\n",
};

// Zero ('.') versus nonzero ('x') cells of the general six-site model. The two
// middle diagonal cells of the fourth element vanish: they would have to be
// purely imaginary, which a Hermitian diagonal cannot be.
inline const std::vector<std::string> kGeneralSkeleton = {
    "xxxxxx\n"
    "xxxxxx\n"
    "xxxxxx\n"
    "xxxxxx\n"
    "xxxxxx\n"
    "xxxxxx\n",

    ".xxxxx\n"
    "x.xxxx\n"
    "xx.xxx\n"
    "xxx.xx\n"
    "xxxx.x\n"
    "xxxxx.\n",

    "..xxxx\n"
    ".xxxxx\n"
    "xxxxxx\n"
    "xxxxxx\n"
    "xxxxx.\n"
    "xxxx..\n",

    "...xxx\n"
    "..xxxx\n"
    ".x.xxx\n"
    "xxx.x.\n"
    "xxxx..\n"
    "xxx...\n",

    "....xx\n"
    "...xxx\n"
    "..xxx.\n"
    ".xxx..\n"
    "xxx...\n"
    "xx....\n",

    ".....x\n"
    "....x.\n"
    "...x..\n"
    "..x...\n"
    ".x....\n"
    "x.....\n",
};

// Symbolic entries of the four-site canonical basis at couplings (a, b).
inline std::vector<std::vector<std::complex<double>>> four_site_basis(int k, double a, double b) {
    using C = std::complex<double>;
    const C i(0.0, 1.0);
    std::vector<std::vector<C>> m(4, std::vector<C>(4, 0.0));
    auto set = [&](int r, int c, C v) {
        m[r][c] = v;
        m[c][r] = std::conj(v);
    };
    switch (k) {
    case 1:
        for (int d = 0; d < 4; ++d) m[d][d] = 1.0;
        set(0, 1, i * a);
        set(0, 2, -a * (a + b));
        set(0, 3, -i * (a * (a * a - b * b) - b));
        set(1, 2, i * (a + b));
        set(1, 3, -a * (a + b));
        set(2, 3, i * a);
        break;
    case 2:
        set(0, 1, 1.0);
        set(0, 2, i * (a + b));
        set(0, 3, b * b - a * a);
        set(1, 2, 1.0);
        set(1, 3, i * (a + b));
        set(2, 3, 1.0);
        break;
    case 3:
        set(0, 2, 1.0);
        set(0, 3, i * a);
        m[1][1] = 1.0;
        set(1, 2, i * b);
        set(1, 3, 1.0);
        m[2][2] = 1.0;
        break;
    default:
        for (int d = 0; d < 4; ++d) m[d][3 - d] = 1.0;
    }
    return m;
}

} // namespace fixtures
