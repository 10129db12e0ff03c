#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <vector>

#include "tdanorms/cloud.hpp"

namespace tdanorms {

// A simplex of a Vietoris-Rips filtration: 1 to 3 sorted vertex indices and
// its diameter.
struct FilteredSimplex {
    std::array<std::uint32_t, 3> vertices{};
    std::uint8_t n_vertices = 1;
    double filtration = 0.0;

    int dim() const { return n_vertices - 1; }
    std::span<const std::uint32_t> vertex_span() const { return {vertices.data(), n_vertices}; }
};

struct PersistencePair {
    double birth = 0.0;
    double death = 0.0;

    double lifetime() const { return death - birth; }
    friend auto operator<=>(const PersistencePair&, const PersistencePair&) = default;
};

struct DimensionDiagram {
    std::vector<PersistencePair> finite;
    std::vector<double> infinite_births;

    friend bool operator==(const DimensionDiagram&, const DimensionDiagram&) = default;
};

// Persistence diagram in homology dimensions 0 and 1. Pairs with death equal
// to birth are never stored.
struct PersistenceDiagram {
    static constexpr int max_homology_dim = 1;

    std::array<DimensionDiagram, max_homology_dim + 1> dims;

    DimensionDiagram& operator[](int dim) { return dims.at(static_cast<std::size_t>(dim)); }
    const DimensionDiagram& operator[](int dim) const { return dims.at(static_cast<std::size_t>(dim)); }

    // Sorts every multiset so that equal diagrams compare equal.
    void canonicalize();
    friend bool operator==(const PersistenceDiagram&, const PersistenceDiagram&) = default;
};

std::ostream& operator<<(std::ostream& os, const PersistenceDiagram& diagram);

// Smallest r at which some vertex is within r of every other vertex. At this
// scale the flag complex is a cone, so nothing of positive dimension survives.
double enclosing_radius(const DistanceMatrix& d);

// Every simplex of dimension <= max_dim with diameter <= threshold, sorted by
// (filtration, dimension, lexicographic vertex order).
std::vector<FilteredSimplex> rips_filtration(const DistanceMatrix& d, int max_dim, double threshold);

// Persistence pairs over Z/2 of an explicit filtration by boundary-matrix
// column reduction with clearing. The list must be sorted by filtration value
// and contain every face before its cofaces; ties may be in any order.
PersistenceDiagram compute_persistence(const std::vector<FilteredSimplex>& filtration, std::size_t n_points);

struct RipsOptions {
    // Defaults to the enclosing radius of the distance matrix.
    std::optional<double> threshold;
};

// Persistence of the Rips filtration (simplices up to dimension 2) of a
// distance matrix without materializing it: dimension 0 by union-find over
// sorted edges, dimension 1 by implicit coboundary reduction with clearing
// and apparent-pair shortcuts.
PersistenceDiagram rips_persistence(const DistanceMatrix& d, const RipsOptions& options = {});

// Edge weights of a minimum spanning tree of the complete graph weighted by
// d (Prim's algorithm). Equal to the finite dimension-0 deaths.
std::vector<double> dim0_mst_oracle(const DistanceMatrix& d);

}  // namespace tdanorms
