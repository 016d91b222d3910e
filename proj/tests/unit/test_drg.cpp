#include <doctest.h>

#include <numeric>

#include "lcdsub/drg.hpp"
#include "lcdsub/error.hpp"
#include "support/oracles.hpp"

using namespace lcdsub;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::InternalInconsistency;
}

// b_i = p^i_{1,i+1} and c_i = p^i_{1,i-1}, read from the counting tensor.
IntersectionArray array_from_counts(const IntMatrix& adj) {
    const auto t = oracle::triple_count_tensor(oracle::bfs_distances(adj));
    const std::size_t d = t.size() - 1;
    IntersectionArray arr;
    for (std::size_t i = 0; i < d; ++i) arr.b.push_back(t[1][i + 1][i]);
    for (std::size_t i = 1; i <= d; ++i) arr.c.push_back(t[1][i - 1][i]);
    return arr;
}

}  // namespace

TEST_CASE("graph construction") {
    auto g = Graph::from_edges(3, {{0, 1}, {1, 2}});
    CHECK(g.adjacency() == oracle::path(3));
    CHECK(g.neighbors(1) == std::vector<std::size_t>{0, 2});
    CHECK(code_of([] { Graph::from_edges(3, {{0, 3}}); }) == ErrorCode::IndexOutOfRange);
    CHECK(code_of([] { Graph::from_edges(3, {{1, 1}}); }) == ErrorCode::InvalidSpec);
    CHECK(code_of([] { Graph::from_adjacency(IntMatrix{{0, 1}, {0, 0}}); }) == ErrorCode::NotSymmetric);
}

TEST_CASE("distance matrices") {
    auto k3 = distance_matrices(Graph::from_adjacency(oracle::complete(3)));
    REQUIRE(k3.size() == 2);
    CHECK(k3[0] == IntMatrix::identity(3));
    CHECK(k3[1] == oracle::complete(3));

    auto p3 = distance_matrices(Graph::from_adjacency(oracle::path(3)));
    REQUIRE(p3.size() == 3);
    CHECK(p3[2] == IntMatrix{{0, 0, 1}, {0, 0, 0}, {1, 0, 0}});

    const auto pet = oracle::petersen();
    auto pm = distance_matrices(Graph::from_adjacency(pet));
    REQUIRE(pm.size() == 3);
    CHECK(pm[1] == pet);
    CHECK(pm[2] == IntMatrix::ones(10, 10) - IntMatrix::identity(10) - pet);
    const auto bfs = oracle::bfs_distances(pet);
    for (std::size_t u = 0; u < 10; ++u)
        for (std::size_t v = 0; v < 10; ++v) CHECK(pm[static_cast<std::size_t>(bfs[u][v])](u, v) == 1);

    auto two_edges = Graph::from_edges(4, {{0, 1}, {2, 3}});
    CHECK(code_of([&] { distance_matrices(two_edges); }) == ErrorCode::Disconnected);
}

TEST_CASE("intersection arrays") {
    auto pet = intersection_array(Graph::from_adjacency(oracle::petersen()));
    REQUIRE(std::holds_alternative<IntersectionArray>(pet));
    CHECK(std::get<IntersectionArray>(pet).to_string() == "{3,2;1,1}");
    CHECK(std::get<IntersectionArray>(pet) == array_from_counts(oracle::petersen()));

    auto q3 = intersection_array(Graph::from_adjacency(oracle::hypercube(3)));
    REQUIRE(std::holds_alternative<IntersectionArray>(q3));
    CHECK(std::get<IntersectionArray>(q3).to_string() == "{3,2,1;1,2,3}");

    for (const auto& adj : {oracle::hypercube(4), oracle::rook(3), oracle::rook(4), oracle::complete_bipartite(5),
                            oracle::cycle(8), oracle::cycle(9), oracle::complete(6)}) {
        auto arr = intersection_array(Graph::from_adjacency(adj));
        REQUIRE(std::holds_alternative<IntersectionArray>(arr));
        CHECK(std::get<IntersectionArray>(arr) == array_from_counts(adj));
        const auto& a = std::get<IntersectionArray>(arr);
        CHECK(a.b_at(0) == a.b[0]);
        CHECK(a.c_at(1) == 1);
        CHECK(a.b_at(a.diameter()) == 0);
        CHECK(a.c_at(0) == 0);
    }

    auto star = intersection_array(Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}}));
    REQUIRE(std::holds_alternative<NotDrgWitness>(star));
    CHECK_FALSE(std::get<NotDrgWitness>(star).what.empty());
    CHECK_FALSE(std::holds_alternative<IntersectionArray>(intersection_array(Graph::from_adjacency(oracle::path(4)))));
}

TEST_CASE("intersection numbers from the array alone") {
    for (const auto& adj : {oracle::petersen(), oracle::hypercube(3), oracle::hypercube(4), oracle::rook(3),
                            oracle::rook(4), oracle::complete_bipartite(4), oracle::cycle(7), oracle::cycle(8),
                            oracle::complete(5)}) {
        const auto t = oracle::triple_count_tensor(oracle::bfs_distances(adj));
        const auto p = intersection_numbers(array_from_counts(adj));
        const std::size_t d = p.classes();
        REQUIRE(t.size() == d + 1);
        for (std::size_t i = 0; i <= d; ++i)
            for (std::size_t j = 0; j <= d; ++j)
                for (std::size_t k = 0; k <= d; ++k) REQUIRE(p(i, j, k) == t[i][j][k]);
    }
    auto hs = parse_intersection_array("{22, 21, 16, 6, 1; 1, 6, 16, 21, 22}");
    auto k = hs.valencies();
    CHECK(std::accumulate(k.begin(), k.end(), std::int64_t{0}) == 200);
    auto m22 = parse_intersection_array("{16,15,12,4,1;1,4,12,15,16}");
    k = m22.valencies();
    CHECK(std::accumulate(k.begin(), k.end(), std::int64_t{0}) == 154);
    const auto p = intersection_numbers(hs);
    for (std::size_t i = 0; i <= 5; ++i) CHECK(p.valency(i) == hs.valencies()[i]);

    CHECK(code_of([] { parse_intersection_array("{3,2;1}"); }) == ErrorCode::InvalidSpec);
    CHECK(code_of([] { parse_intersection_array("3,2;1,1"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_intersection_array("{3,x;1,1}"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { intersection_numbers(parse_intersection_array("{3,2;2,1}")); }) == ErrorCode::NotDRG);
    // 7 vertices of valency 3 would need an odd number of edge ends.
    CHECK(code_of([] { intersection_numbers(parse_intersection_array("{3,2;1,2}")); }) == ErrorCode::NotDRG);
}

TEST_CASE("schemes from distance-regular graphs") {
    CHECK(scheme_from_drg(Graph::from_adjacency(oracle::petersen())).class_count() == 2);
    CHECK(scheme_from_drg(Graph::from_adjacency(oracle::hypercube(3))).class_count() == 3);
    CHECK(scheme_from_drg(Graph::from_adjacency(oracle::complete(6))).class_count() == 1);
    for (const auto& adj : {oracle::hypercube(4), oracle::rook(4), oracle::cycle(9), oracle::complete_bipartite(3)}) {
        auto s = scheme_from_drg(Graph::from_adjacency(adj));
        const std::size_t d = s.class_count();
        for (std::size_t i = 0; i <= d; ++i)
            for (std::size_t j = 0; j <= d; ++j)
                for (std::size_t k = 0; k <= d; ++k)
                    if (i + j < k || k + i < j || k + j < i) CHECK(s.p(i, j, k) == 0);
    }
    CHECK(code_of([] { scheme_from_drg(Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}})); }) == ErrorCode::NotDRG);
}

TEST_CASE("orbit partitions") {
    auto c6 = Graph::from_adjacency(oracle::cycle(6));
    auto trivial = orbit_partition(PermutationGroup(6, {}), c6);
    CHECK(trivial.partition.cell_count() == 6);
    CHECK(trivial.equal_lengths);

    std::vector<std::size_t> rot1(6), rot3(6), refl(6);
    for (std::size_t i = 0; i < 6; ++i) {
        rot1[i] = (i + 1) % 6;
        rot3[i] = (i + 3) % 6;
        refl[i] = (6 - i) % 6;
    }
    auto full = orbit_partition(PermutationGroup(6, {rot1}), c6);
    CHECK(full.partition.cell_count() == 1);

    auto half = orbit_partition(PermutationGroup(6, {rot3}), c6);
    CHECK(half.partition.cells() == std::vector<std::vector<std::size_t>>{{0, 3}, {1, 4}, {2, 5}});
    CHECK(half.equal_lengths);
    CHECK(verify_equitable(half.partition, {oracle::cycle(6)}).ok);

    auto mirror = orbit_partition(PermutationGroup(6, {refl}), c6);
    CHECK(mirror.partition.cells() == std::vector<std::vector<std::size_t>>{{0}, {1, 5}, {2, 4}, {3}});
    CHECK_FALSE(mirror.equal_lengths);

    std::vector<std::size_t> swap01{1, 0, 2, 3, 4, 5};
    CHECK(code_of([&] { orbit_partition(PermutationGroup(6, {swap01}), c6); }) == ErrorCode::NotAnAutomorphism);
    CHECK(code_of([] { PermutationGroup(3, {{0, 0, 1}}); }) == ErrorCode::InvalidSpec);
    CHECK(code_of([] { PermutationGroup(3, {{0, 1}}); }) == ErrorCode::InvalidSpec);
    CHECK(code_of([&] { orbit_partition(PermutationGroup(5, {}), c6); }) == ErrorCode::DimensionMismatch);
}
