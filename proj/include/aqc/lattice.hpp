#pragma once

#include <compare>
#include <cstdlib>
#include <set>
#include <string>
#include <vector>

#include "aqc/error.hpp"

namespace aqc {

struct Site {
    int r = 0;
    int c = 0;
    auto operator<=>(const Site&) const = default;
};

inline std::string to_string(const Site& s) {
    return "(" + std::to_string(s.r) + "," + std::to_string(s.c) + ")";
}

/// Triangular lattice in "odd-r" offset coordinates: odd rows are shifted
/// half a cell to the right. Interior sites have exactly 6 neighbors;
/// boundary sites simply have fewer. Defect sites exist geometrically but
/// must not participate in any coupling.
struct TriangularLattice {
    int rows = 0;
    int cols = 0;
    std::set<Site> defects;

    bool in_bounds(const Site& s) const {
        return s.r >= 0 && s.r < rows && s.c >= 0 && s.c < cols;
    }

    bool is_defect(const Site& s) const { return defects.count(s) > 0; }

    bool usable(const Site& s) const { return in_bounds(s) && !is_defect(s); }

    std::vector<Site> neighbors(const Site& s) const {
        static constexpr int even_off[6][2] = {{0, -1}, {0, 1},  {-1, -1},
                                               {-1, 0}, {1, -1}, {1, 0}};
        static constexpr int odd_off[6][2] = {{0, -1}, {0, 1}, {-1, 0},
                                              {-1, 1}, {1, 0}, {1, 1}};
        const auto& off = (s.r & 1) ? odd_off : even_off;
        std::vector<Site> out;
        out.reserve(6);
        for (int k = 0; k < 6; ++k) {
            Site t{s.r + off[k][0], s.c + off[k][1]};
            if (in_bounds(t))
                out.push_back(t);
        }
        return out;
    }

    bool adjacent(const Site& a, const Site& b) const {
        for (const auto& t : neighbors(a))
            if (t == b)
                return true;
        return false;
    }

    /// Hex distance via axial coordinates.
    static int distance(const Site& a, const Site& b) {
        auto axial_q = [](const Site& s) { return s.c - (s.r - (s.r & 1)) / 2; };
        int dq = axial_q(a) - axial_q(b);
        int dr = a.r - b.r;
        return (std::abs(dq) + std::abs(dr) + std::abs(dq + dr)) / 2;
    }
};

enum class CouplingState { Off, AF, FM };

inline std::string to_string(CouplingState s) {
    switch (s) {
    case CouplingState::AF: return "AF";
    case CouplingState::FM: return "FM";
    default: return "off";
    }
}

/// Undirected lattice edge, normalized so a < b.
struct LatticeEdge {
    Site a, b;
    LatticeEdge() = default;
    LatticeEdge(Site x, Site y) {
        if (y < x)
            std::swap(x, y);
        a = x;
        b = y;
    }
    auto operator<=>(const LatticeEdge&) const = default;
};

} // namespace aqc
