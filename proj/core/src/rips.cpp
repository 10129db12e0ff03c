// Implicit Vietoris-Rips persistence for homology dimensions 0 and 1.
//
// Simplices are identified by their index in the combinatorial number
// system over vertices listed in decreasing order: the edge {a > b} has index
// C(a,2) + b and the triangle {a > b > c} has index C(a,3) + C(b,2) + c.
// Within one dimension the filtration order is (diameter, index).

#include <algorithm>
#include <numeric>
#include <queue>
#include <unordered_map>

#include "tdanorms/error.hpp"
#include "tdanorms/persistence.hpp"

namespace tdanorms {

namespace {

using index_t = std::uint64_t;

index_t choose2(index_t n) { return n * (n - 1) / 2; }
index_t choose3(index_t n) { return n * (n - 1) * (n - 2) / 6; }

struct Entry {
    double diameter;
    index_t index;

    friend bool operator<(const Entry& a, const Entry& b) {
        return a.diameter < b.diameter || (a.diameter == b.diameter && a.index < b.index);
    }
    friend bool operator>(const Entry& a, const Entry& b) { return b < a; }
    friend bool operator==(const Entry& a, const Entry& b) {
        return a.diameter == b.diameter && a.index == b.index;
    }
};

struct Edge {
    Entry key;
    std::uint32_t a;  // a > b
    std::uint32_t b;
};

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t x, std::size_t y) {
        x = find(x);
        y = find(y);
        if (x == y) return false;
        if (rank_[x] < rank_[y]) std::swap(x, y);
        parent_[y] = x;
        if (rank_[x] == rank_[y]) ++rank_[x];
        return true;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::uint8_t> rank_;
};

class CoboundaryReducer {
public:
    CoboundaryReducer(const DistanceMatrix& d, double threshold, const std::vector<Edge>& edges)
        : d_(d), threshold_(threshold), edges_(edges) {}

    // Reduces the coboundary column of edges_[slot]; returns the pivot
    // triangle, or nothing when the column reduces to zero.
    std::optional<Entry> reduce(std::uint32_t slot) {
        const Edge& e = edges_[slot];

        std::optional<Cofacet> first = min_cofacet(e);
        if (!first) return std::nullopt;
        if (first->triangle.diameter == e.key.diameter && is_max_facet(e, first->apex)) {
            // Apparent pair: no earlier column can own this pivot.
            claim(first->triangle, {slot});
            return first->triangle;
        }

        heap_ = {};
        std::vector<std::uint32_t> combination{slot};
        push_coboundary(e);
        while (auto pivot = pop_pivot()) {
            auto owner = pivot_owner_.find(pivot->index);
            if (owner == pivot_owner_.end()) {
                claim(*pivot, std::move(combination));
                return pivot;
            }
            heap_.push(*pivot);
            for (std::uint32_t other : combinations_[owner->second]) {
                push_coboundary(edges_[other]);
                combination.push_back(other);
            }
        }
        return std::nullopt;
    }

private:
    template <class Visit>
    void for_each_cofacet(const Edge& e, Visit&& visit) const {
        const std::size_t n = d_.size();
        auto row_a = d_.row(e.a);
        auto row_b = d_.row(e.b);
        for (std::uint32_t v = 0; v < n; ++v) {
            if (v == e.a || v == e.b) continue;
            double diam = std::max({e.key.diameter, row_a[v], row_b[v]});
            if (diam > threshold_) continue;
            std::array<index_t, 3> s{e.a, e.b, v};
            std::sort(s.begin(), s.end(), std::greater<>());
            visit(Entry{diam, choose3(s[0]) + choose2(s[1]) + s[2]}, v);
        }
    }

    struct Cofacet {
        Entry triangle;
        std::uint32_t apex;
    };

    std::optional<Cofacet> min_cofacet(const Edge& e) const {
        std::optional<Cofacet> best;
        for_each_cofacet(e, [&](const Entry& t, std::uint32_t v) {
            if (!best || t < best->triangle) best = Cofacet{t, v};
        });
        return best;
    }

    // Whether e is the last edge, in filtration order, of the triangle e + apex.
    bool is_max_facet(const Edge& e, std::uint32_t apex) const {
        for (std::uint32_t u : {e.a, e.b}) {
            index_t hi = std::max(u, apex), lo = std::min(u, apex);
            Entry other{d_(u, apex), choose2(hi) + lo};
            if (e.key < other) return false;
        }
        return true;
    }

    void push_coboundary(const Edge& e) {
        for_each_cofacet(e, [&](const Entry& t, std::uint32_t) { heap_.push(t); });
    }

    // Removes and returns the smallest entry with odd multiplicity.
    std::optional<Entry> pop_pivot() {
        while (!heap_.empty()) {
            Entry top = heap_.top();
            heap_.pop();
            if (!heap_.empty() && heap_.top() == top) {
                heap_.pop();
                continue;
            }
            return top;
        }
        return std::nullopt;
    }

    void claim(const Entry& pivot, std::vector<std::uint32_t> combination) {
        // Over Z/2 an edge used twice cancels.
        std::sort(combination.begin(), combination.end());
        std::vector<std::uint32_t> reduced;
        for (std::size_t i = 0; i < combination.size();) {
            std::size_t j = i;
            while (j < combination.size() && combination[j] == combination[i]) ++j;
            if ((j - i) % 2 == 1) reduced.push_back(combination[i]);
            i = j;
        }
        combination.swap(reduced);
        pivot_owner_.emplace(pivot.index, combinations_.size());
        combinations_.push_back(std::move(combination));
    }

    const DistanceMatrix& d_;
    double threshold_;
    const std::vector<Edge>& edges_;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap_;
    std::unordered_map<index_t, std::size_t> pivot_owner_;
    std::vector<std::vector<std::uint32_t>> combinations_;
};

}  // namespace

PersistenceDiagram rips_persistence(const DistanceMatrix& d, const RipsOptions& options) {
    const std::size_t n = d.size();
    const double threshold = options.threshold.value_or(enclosing_radius(d));
    if (threshold < 0.0) throw Error(ErrorCode::InvalidConfig, "negative Rips threshold");

    std::vector<Edge> edges;
    for (std::uint32_t a = 1; a < n; ++a) {
        for (std::uint32_t b = 0; b < a; ++b) {
            if (d(a, b) <= threshold) edges.push_back({{d(a, b), choose2(a) + b}, a, b});
        }
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) { return x.key < y.key; });

    PersistenceDiagram diagram;

    // Dimension 0: every edge joining two components kills one of them.
    UnionFind components(n);
    std::vector<std::uint32_t> columns_to_reduce;
    for (std::uint32_t slot = 0; slot < edges.size(); ++slot) {
        const Edge& e = edges[slot];
        if (components.unite(e.a, e.b)) {
            if (e.key.diameter > 0.0) diagram[0].finite.push_back({0.0, e.key.diameter});
        } else {
            columns_to_reduce.push_back(slot);
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (components.find(v) == v) diagram[0].infinite_births.push_back(0.0);
    }

    // Dimension 1: cohomology, columns in reverse filtration order. Edges that
    // merged components reduce to zero and were already cleared above.
    CoboundaryReducer reducer(d, threshold, edges);
    for (auto it = columns_to_reduce.rbegin(); it != columns_to_reduce.rend(); ++it) {
        const double birth = edges[*it].key.diameter;
        auto pivot = reducer.reduce(*it);
        if (!pivot) {
            diagram[1].infinite_births.push_back(birth);
        } else if (pivot->diameter > birth) {
            diagram[1].finite.push_back({birth, pivot->diameter});
        }
    }

    diagram.canonicalize();
    return diagram;
}

}  // namespace tdanorms
