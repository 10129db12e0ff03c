#pragma once

// Textbook persistence: dense Z/2 boundary matrix, left-to-right column
// reduction without clearing, O(m^3). Shares no code with the library
// reducers; only the FilteredSimplex/PersistenceDiagram types are reused.

#include <algorithm>
#include <vector>

#include "tdanorms/persistence.hpp"

namespace oracle {

inline bool is_face(const tdanorms::FilteredSimplex& face, const tdanorms::FilteredSimplex& s) {
    if (face.n_vertices + 1 != s.n_vertices) return false;
    for (int i = 0; i < face.n_vertices; ++i) {
        bool found = false;
        for (int j = 0; j < s.n_vertices; ++j) found = found || face.vertices[i] == s.vertices[j];
        if (!found) return false;
    }
    return true;
}

inline tdanorms::PersistenceDiagram naive_persistence(const std::vector<tdanorms::FilteredSimplex>& filtration) {
    const std::size_t m = filtration.size();
    // columns[j][i] == true when simplex i is in the boundary of simplex j
    std::vector<std::vector<char>> columns(m, std::vector<char>(m, 0));
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (is_face(filtration[i], filtration[j])) columns[j][i] = 1;
        }
    }
    auto low = [&](std::size_t j) -> long {
        for (long i = static_cast<long>(m) - 1; i >= 0; --i) {
            if (columns[j][static_cast<std::size_t>(i)]) return i;
        }
        return -1;
    };
    std::vector<long> lows(m, -1);
    for (std::size_t j = 0; j < m; ++j) {
        bool changed = true;
        while (changed) {
            changed = false;
            long l = low(j);
            if (l < 0) break;
            for (std::size_t k = 0; k < j; ++k) {
                if (lows[k] == l) {
                    for (std::size_t i = 0; i < m; ++i) columns[j][i] ^= columns[k][i];
                    changed = true;
                    break;
                }
            }
        }
        lows[j] = low(j);
    }

    std::vector<bool> is_birth_of_pair(m, false), is_death(m, false);
    for (std::size_t j = 0; j < m; ++j) {
        if (lows[j] >= 0) {
            is_birth_of_pair[static_cast<std::size_t>(lows[j])] = true;
            is_death[j] = true;
        }
    }
    tdanorms::PersistenceDiagram diagram;
    for (std::size_t j = 0; j < m; ++j) {
        const int dim = filtration[j].n_vertices - 1;
        if (lows[j] >= 0) {
            const auto& b = filtration[static_cast<std::size_t>(lows[j])];
            const int birth_dim = b.n_vertices - 1;
            if (birth_dim <= 1 && b.filtration != filtration[j].filtration) {
                diagram[birth_dim].finite.push_back({b.filtration, filtration[j].filtration});
            }
        } else if (!is_birth_of_pair[j] && dim <= 1) {
            diagram[dim].infinite_births.push_back(filtration[j].filtration);
        }
    }
    for (auto& d : diagram.dims) {
        std::sort(d.finite.begin(), d.finite.end());
        std::sort(d.infinite_births.begin(), d.infinite_births.end());
    }
    return diagram;
}

// Every subset of 1..3 points with its diameter, by brute force over index
// triples, unsorted.
inline std::vector<tdanorms::FilteredSimplex> enumerate_rips(const tdanorms::DistanceMatrix& d, double threshold) {
    std::vector<tdanorms::FilteredSimplex> out;
    const auto n = static_cast<std::uint32_t>(d.size());
    for (std::uint32_t a = 0; a < n; ++a) {
        out.push_back({{a, 0, 0}, 1, 0.0});
        for (std::uint32_t b = a + 1; b < n; ++b) {
            if (d(a, b) <= threshold) out.push_back({{a, b, 0}, 2, d(a, b)});
            for (std::uint32_t c = b + 1; c < n; ++c) {
                double diam = std::max({d(a, b), d(a, c), d(b, c)});
                if (diam <= threshold) out.push_back({{a, b, c}, 3, diam});
            }
        }
    }
    return out;
}

}  // namespace oracle
