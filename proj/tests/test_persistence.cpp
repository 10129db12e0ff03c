#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles/naive_reduction.hpp"
#include "support/synthetic.hpp"
#include "tdanorms/error.hpp"
#include "tdanorms/persistence.hpp"

using namespace tdanorms;

namespace {

DistanceMatrix equilateral() { return DistanceMatrix(3, {0, 1, 1, 1, 0, 1, 1, 1, 0}); }

std::vector<FilteredSimplex> shuffle_ties(std::vector<FilteredSimplex> f, std::mt19937_64& rng) {
    for (std::size_t i = 0; i < f.size();) {
        std::size_t j = i;
        while (j < f.size() && f[j].filtration == f[i].filtration) ++j;
        std::shuffle(f.begin() + static_cast<long>(i), f.begin() + static_cast<long>(j), rng);
        std::stable_sort(f.begin() + static_cast<long>(i), f.begin() + static_cast<long>(j),
                         [](const FilteredSimplex& a, const FilteredSimplex& b) { return a.n_vertices < b.n_vertices; });
        i = j;
    }
    return f;
}

std::vector<double> finite_deaths(const PersistenceDiagram& d, int dim) {
    std::vector<double> out;
    for (const auto& p : d[dim].finite) out.push_back(p.death);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("enclosing radius") {
    CHECK(enclosing_radius(DistanceMatrix(2, {0, 3, 3, 0})) == 3.0);
    CHECK(enclosing_radius(distance_matrix(testsupport::unit_square())) == std::sqrt(2.0));
    CHECK(enclosing_radius(equilateral()) == 1.0);
    CHECK(enclosing_radius(DistanceMatrix(1, {0})) == 0.0);
}

TEST_CASE("rips filtration fixtures") {
    SUBCASE("equilateral triangle") {
        auto f = rips_filtration(equilateral(), 2, 1.0);
        REQUIRE(f.size() == 7);
        for (int i = 0; i < 3; ++i) CHECK(f[i].filtration == 0.0);
        for (int i = 3; i < 6; ++i) {
            CHECK(f[i].dim() == 1);
            CHECK(f[i].filtration == 1.0);
        }
        CHECK(f[6].dim() == 2);
        CHECK(f[6].filtration == 1.0);
    }
    SUBCASE("unit square below the diagonal") {
        auto d = distance_matrix(testsupport::unit_square());
        auto f = rips_filtration(d, 2, 1.0);
        CHECK(f.size() == 8);
        CHECK(std::count_if(f.begin(), f.end(), [](auto& s) { return s.dim() == 1; }) == 4);
        CHECK(std::none_of(f.begin(), f.end(), [](auto& s) { return s.dim() == 2; }));
    }
    SUBCASE("unit square at the diagonal matches subset enumeration") {
        auto d = distance_matrix(testsupport::unit_square());
        auto f = rips_filtration(d, 2, std::sqrt(2.0));
        auto brute = oracle::enumerate_rips(d, std::sqrt(2.0));
        CHECK(f.size() == brute.size());
        CHECK(f.size() == 14);
        auto count = [](const auto& v, int dim, double value) {
            return std::count_if(v.begin(), v.end(), [&](auto& s) { return s.dim() == dim && s.filtration == value; });
        };
        CHECK(count(f, 1, 1.0) == 4);
        CHECK(count(f, 1, std::sqrt(2.0)) == 2);
        CHECK(count(f, 2, std::sqrt(2.0)) == 4);
    }
    SUBCASE("sorted and face-closed on random clouds") {
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 20; ++trial) {
            auto d = distance_matrix(testsupport::gaussian_cloud(9, 3, rng));
            const double r = enclosing_radius(d);
            auto f = rips_filtration(d, 2, r);
            CHECK(f.size() == oracle::enumerate_rips(d, r).size());
            for (std::size_t i = 1; i < f.size(); ++i) {
                CHECK((f[i - 1].filtration < f[i].filtration ||
                       (f[i - 1].filtration == f[i].filtration && f[i - 1].n_vertices <= f[i].n_vertices)));
            }
            // compute_persistence validates face closure
            CHECK_NOTHROW(compute_persistence(f, d.size()));
        }
    }
}

TEST_CASE("persistence fixtures") {
    SUBCASE("two points") {
        DistanceMatrix d(2, {0, 2.5, 2.5, 0});
        for (const auto& diagram : {compute_persistence(rips_filtration(d, 2, 2.5), 2), rips_persistence(d)}) {
            REQUIRE(diagram[0].finite.size() == 1);
            CHECK(diagram[0].finite[0] == PersistencePair{0.0, 2.5});
            CHECK(diagram[0].infinite_births == std::vector<double>{0.0});
            CHECK(diagram[1].finite.empty());
            CHECK(diagram[1].infinite_births.empty());
        }
    }
    SUBCASE("unit square") {
        auto d = distance_matrix(testsupport::unit_square());
        const auto f = rips_filtration(d, 2, std::sqrt(2.0));
        const auto expected = oracle::naive_persistence(f);
        REQUIRE(expected[1].finite.size() == 1);
        CHECK(expected[1].finite[0].birth == 1.0);
        CHECK(expected[1].finite[0].death == std::sqrt(2.0));
        CHECK(finite_deaths(expected, 0) == std::vector<double>{1.0, 1.0, 1.0});

        CHECK(compute_persistence(f, 4) == expected);
        CHECK(rips_persistence(d) == expected);
    }
    SUBCASE("equilateral triangle has no persistent loop") {
        for (const auto& diagram : {compute_persistence(rips_filtration(equilateral(), 2, 1.0), 3),
                                    rips_persistence(equilateral()), oracle::naive_persistence(rips_filtration(equilateral(), 2, 1.0))}) {
            CHECK(diagram[1].finite.empty());
            CHECK(diagram[1].infinite_births.empty());
            CHECK(finite_deaths(diagram, 0) == std::vector<double>{1.0, 1.0});
        }
    }
    SUBCASE("square without its diagonals keeps an essential loop") {
        auto d = distance_matrix(testsupport::unit_square());
        auto diagram = rips_persistence(d, RipsOptions{1.0});
        CHECK(diagram[1].infinite_births == std::vector<double>{1.0});
        CHECK(compute_persistence(rips_filtration(d, 2, 1.0), 4) == diagram);
    }
}

TEST_CASE("explicit reduction rejects malformed filtrations") {
    auto f = rips_filtration(distance_matrix(testsupport::unit_square()), 2, std::sqrt(2.0));
    auto code = [](const std::vector<FilteredSimplex>& g, std::size_t n) {
        try {
            compute_persistence(g, n);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::IoError;
    };
    auto unsorted = f;
    std::swap(unsorted[5], unsorted[8]);
    CHECK(code(unsorted, 4) == ErrorCode::UnsortedFiltration);

    auto missing = f;
    missing.erase(std::find_if(missing.begin(), missing.end(), [](auto& s) { return s.dim() == 1; }));
    CHECK(code(missing, 4) == ErrorCode::MissingFace);

    // a triangle placed before one of its equal-valued edges
    auto reversed = f;
    auto tri = std::find_if(reversed.begin(), reversed.end(), [](auto& s) { return s.dim() == 2; });
    std::rotate(reversed.begin() + 8, tri, tri + 1);
    CHECK(code(reversed, 4) == ErrorCode::MissingFace);

    auto duplicated = f;
    duplicated.insert(duplicated.begin() + 1, duplicated[0]);
    CHECK(code(duplicated, 4) == ErrorCode::UnsortedFiltration);
    CHECK(code(f, 3) == ErrorCode::UnsortedFiltration);
}

TEST_CASE("MST oracle fixtures") {
    CHECK(dim0_mst_oracle(DistanceMatrix(2, {0, 3, 3, 0})) == std::vector<double>{3.0});
    CHECK(dim0_mst_oracle(distance_matrix(testsupport::unit_square())) == std::vector<double>{1.0, 1.0, 1.0});
    CHECK(dim0_mst_oracle(distance_matrix(PointCloud(1, {0.0, 1.0, 5.0}))) == std::vector<double>{1.0, 4.0});
    CHECK(dim0_mst_oracle(DistanceMatrix(1, {0})).empty());
}

TEST_CASE("reducers agree with the textbook reduction, including shuffled ties") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> size(2, 10);
    for (int trial = 0; trial < 60; ++trial) {
        const bool lattice = trial % 2 == 1;
        const std::size_t n = size(rng);
        auto cloud = lattice ? testsupport::lattice_cloud(n, 3, rng) : testsupport::gaussian_cloud(n, 4, rng);
        auto d = distance_matrix(cloud);
        for (double threshold : {enclosing_radius(d), 0.5 * enclosing_radius(d)}) {
            auto f = rips_filtration(d, 2, threshold);
            auto expected = oracle::naive_persistence(f);
            CHECK(compute_persistence(f, n) == expected);
            CHECK(rips_persistence(d, RipsOptions{threshold}) == expected);
            auto shuffled = shuffle_ties(f, rng);
            CHECK(oracle::naive_persistence(shuffled) == expected);
            CHECK(compute_persistence(shuffled, n) == expected);
        }
    }
}

TEST_CASE("dimension 0 equals MST weights") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        auto d = distance_matrix(testsupport::gaussian_cloud(30, 4, rng));
        CHECK(finite_deaths(rips_persistence(d), 0) == dim0_mst_oracle(d));
    }
}

TEST_CASE("diagram invariants") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        auto cloud = testsupport::gaussian_cloud(25, 4, rng, 0.01);
        auto d = distance_matrix(cloud);
        auto base = rips_persistence(d);

        // cone at the enclosing radius
        CHECK(base[1].infinite_births.empty());
        CHECK(base[0].infinite_births.size() == 1);

        // relabeling points
        std::vector<std::size_t> perm(d.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<double> relabeled(d.size() * d.size());
        for (std::size_t i = 0; i < d.size(); ++i)
            for (std::size_t j = 0; j < d.size(); ++j) relabeled[i * d.size() + j] = d(perm[i], perm[j]);
        CHECK(rips_persistence(DistanceMatrix(d.size(), relabeled)) == base);

        // scaling the metric
        auto scaled = rips_persistence(d.scaled(3.0));
        REQUIRE(scaled[1].finite.size() == base[1].finite.size());
        for (std::size_t i = 0; i < base[1].finite.size(); ++i) {
            CHECK(scaled[1].finite[i].birth == doctest::Approx(3.0 * base[1].finite[i].birth).epsilon(1e-12));
            CHECK(scaled[1].finite[i].death == doctest::Approx(3.0 * base[1].finite[i].death).epsilon(1e-12));
        }

        // raising the threshold keeps every pair that died below the old one
        const double low = 0.6 * enclosing_radius(d);
        auto truncated = rips_persistence(d, RipsOptions{low});
        for (int z = 0; z <= 1; ++z) {
            for (const auto& p : truncated[z].finite) {
                CHECK(std::find(base[z].finite.begin(), base[z].finite.end(), p) != base[z].finite.end());
            }
        }
    }
}

TEST_CASE("degenerate clouds") {
    SUBCASE("all points identical") {
        auto d = distance_matrix(PointCloud(4, std::vector<double>(40, 0.01)));
        auto diagram = rips_persistence(d);
        CHECK(diagram[0].finite.empty());
        CHECK(diagram[0].infinite_births.size() == 1);
        CHECK(diagram[1].finite.empty());
    }
    SUBCASE("single point") {
        auto diagram = rips_persistence(DistanceMatrix(1, {0}));
        CHECK(diagram[0].infinite_births.size() == 1);
    }
}
