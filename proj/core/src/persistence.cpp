#include "tdanorms/persistence.hpp"

#include <algorithm>
#include <ostream>
#include <unordered_map>

#include "tdanorms/error.hpp"

namespace tdanorms {

namespace {

// Key of a simplex given by sorted vertices, unique for n_points vertices.
std::uint64_t simplex_key(std::span<const std::uint32_t> vertices, std::uint64_t n_points) {
    std::uint64_t key = 0;
    for (std::uint32_t v : vertices) key = key * n_points + v;
    return key * 4 + vertices.size();
}

void symmetric_difference_into(std::vector<std::uint32_t>& target, const std::vector<std::uint32_t>& other,
                               std::vector<std::uint32_t>& scratch) {
    scratch.clear();
    std::set_symmetric_difference(target.begin(), target.end(), other.begin(), other.end(),
                                  std::back_inserter(scratch));
    target.swap(scratch);
}

}  // namespace

void PersistenceDiagram::canonicalize() {
    for (auto& dim : dims) {
        std::sort(dim.finite.begin(), dim.finite.end());
        std::sort(dim.infinite_births.begin(), dim.infinite_births.end());
    }
}

std::ostream& operator<<(std::ostream& os, const PersistenceDiagram& diagram) {
    for (int z = 0; z <= PersistenceDiagram::max_homology_dim; ++z) {
        os << "dim " << z << ":";
        for (const auto& p : diagram[z].finite) os << " [" << p.birth << "," << p.death << ")";
        for (double b : diagram[z].infinite_births) os << " [" << b << ",inf)";
        os << "\n";
    }
    return os;
}

double enclosing_radius(const DistanceMatrix& d) {
    const std::size_t n = d.size();
    if (n == 0) return 0.0;
    double radius = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        auto row = d.row(i);
        radius = std::min(radius, *std::max_element(row.begin(), row.end()));
    }
    return radius;
}

std::vector<FilteredSimplex> rips_filtration(const DistanceMatrix& d, int max_dim, double threshold) {
    if (max_dim < 0 || max_dim > 2) throw Error(ErrorCode::InvalidConfig, "max_dim must be 0, 1 or 2");
    const auto n = static_cast<std::uint32_t>(d.size());
    std::vector<FilteredSimplex> out;
    for (std::uint32_t i = 0; i < n; ++i) out.push_back({{i, 0, 0}, 1, 0.0});
    if (max_dim >= 1) {
        for (std::uint32_t i = 0; i < n; ++i) {
            for (std::uint32_t j = i + 1; j < n; ++j) {
                if (d(i, j) <= threshold) out.push_back({{i, j, 0}, 2, d(i, j)});
            }
        }
    }
    if (max_dim >= 2) {
        for (std::uint32_t i = 0; i < n; ++i) {
            for (std::uint32_t j = i + 1; j < n; ++j) {
                if (d(i, j) > threshold) continue;
                for (std::uint32_t l = j + 1; l < n; ++l) {
                    double diam = std::max({d(i, j), d(i, l), d(j, l)});
                    if (diam <= threshold) out.push_back({{i, j, l}, 3, diam});
                }
            }
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const FilteredSimplex& a, const FilteredSimplex& b) {
        if (a.filtration != b.filtration) return a.filtration < b.filtration;
        if (a.n_vertices != b.n_vertices) return a.n_vertices < b.n_vertices;
        return std::lexicographical_compare(a.vertices.begin(), a.vertices.begin() + a.n_vertices,
                                            b.vertices.begin(), b.vertices.begin() + b.n_vertices);
    });
    return out;
}

PersistenceDiagram compute_persistence(const std::vector<FilteredSimplex>& filtration, std::size_t n_points) {
    const std::size_t m = filtration.size();
    if (m >= std::numeric_limits<std::uint32_t>::max()) {
        throw Error(ErrorCode::InvalidConfig, "filtration too large for explicit reduction");
    }

    // Boundary columns as ascending lists of filtration positions.
    std::vector<std::vector<std::uint32_t>> columns(m);
    std::unordered_map<std::uint64_t, std::uint32_t> position;
    position.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        const auto& s = filtration[j];
        if (s.n_vertices < 1 || s.n_vertices > 3) {
            throw Error(ErrorCode::UnsortedFiltration, "simplex " + std::to_string(j) + " has an invalid size");
        }
        if (j > 0 && s.filtration < filtration[j - 1].filtration) {
            throw Error(ErrorCode::UnsortedFiltration,
                        "filtration value decreases at position " + std::to_string(j));
        }
        auto verts = s.vertex_span();
        for (std::size_t a = 0; a < verts.size(); ++a) {
            if (verts[a] >= n_points || (a > 0 && verts[a] <= verts[a - 1])) {
                throw Error(ErrorCode::UnsortedFiltration,
                            "simplex " + std::to_string(j) + " has unsorted or out-of-range vertices");
            }
        }
        if (!position.emplace(simplex_key(verts, n_points), static_cast<std::uint32_t>(j)).second) {
            throw Error(ErrorCode::UnsortedFiltration, "simplex " + std::to_string(j) + " appears twice");
        }
        if (s.n_vertices == 1) continue;
        for (std::size_t skip = 0; skip < verts.size(); ++skip) {
            std::array<std::uint32_t, 2> face{};
            std::size_t f = 0;
            for (std::size_t a = 0; a < verts.size(); ++a) {
                if (a != skip) face[f++] = verts[a];
            }
            auto it = position.find(simplex_key({face.data(), f}, n_points));
            if (it == position.end()) {
                throw Error(ErrorCode::MissingFace,
                            "simplex " + std::to_string(j) + " listed before one of its faces");
            }
            columns[j].push_back(it->second);
        }
        std::sort(columns[j].begin(), columns[j].end());
    }

    // Twist reduction: higher dimensions first so their pivots clear columns below.
    constexpr std::uint32_t none = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> pivot_owner(m, none);
    std::vector<std::uint32_t> paired_with(m, none);
    std::vector<std::uint32_t> scratch;
    for (int dim = 2; dim >= 1; --dim) {
        for (std::uint32_t j = 0; j < m; ++j) {
            if (filtration[j].dim() != dim || paired_with[j] != none) continue;
            auto& col = columns[j];
            while (!col.empty() && pivot_owner[col.back()] != none) {
                symmetric_difference_into(col, columns[pivot_owner[col.back()]], scratch);
            }
            if (col.empty()) continue;
            std::uint32_t low = col.back();
            pivot_owner[low] = j;
            paired_with[low] = j;
            paired_with[j] = low;
        }
    }

    PersistenceDiagram diagram;
    for (std::uint32_t j = 0; j < m; ++j) {
        const int dim = filtration[j].dim();
        if (dim > PersistenceDiagram::max_homology_dim) continue;
        const std::uint32_t partner = paired_with[j];
        if (partner == none) {
            diagram[dim].infinite_births.push_back(filtration[j].filtration);
        } else if (partner > j) {
            double birth = filtration[j].filtration;
            double death = filtration[partner].filtration;
            if (death != birth) diagram[dim].finite.push_back({birth, death});
        }
    }
    diagram.canonicalize();
    return diagram;
}

std::vector<double> dim0_mst_oracle(const DistanceMatrix& d) {
    const std::size_t n = d.size();
    std::vector<double> weights;
    if (n < 2) return weights;
    std::vector<bool> in_tree(n, false);
    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    best[0] = 0.0;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t next = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (!in_tree[v] && (next == n || best[v] < best[next])) next = v;
        }
        in_tree[next] = true;
        if (step > 0) weights.push_back(best[next]);
        for (std::size_t v = 0; v < n; ++v) {
            if (!in_tree[v]) best[v] = std::min(best[v], d(next, v));
        }
    }
    std::sort(weights.begin(), weights.end());
    return weights;
}

}  // namespace tdanorms
