#include <doctest.h>

#include <algorithm>
#include <bit>
#include <set>

#include "lcdsub/error.hpp"
#include "lcdsub/drg.hpp"
#include "lcdsub/hadamard.hpp"
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

// Ordered quadruples of pairwise orthogonal ±1 rows of length 4.
std::vector<IntMatrix> order4_by_rows() {
    std::vector<std::vector<std::int64_t>> vecs;
    for (int m = 0; m < 16; ++m) {
        std::vector<std::int64_t> v(4);
        for (int j = 0; j < 4; ++j) v[j] = (m >> j) & 1 ? -1 : 1;
        vecs.push_back(v);
    }
    auto dot = [&](int a, int b) {
        std::int64_t s = 0;
        for (int j = 0; j < 4; ++j) s += vecs[a][j] * vecs[b][j];
        return s;
    };
    std::vector<IntMatrix> out;
    for (int a = 0; a < 16; ++a)
        for (int b = 0; b < 16; ++b)
            for (int c = 0; c < 16; ++c)
                for (int d = 0; d < 16; ++d)
                    if (dot(a, b) == 0 && dot(a, c) == 0 && dot(a, d) == 0 && dot(b, c) == 0 && dot(b, d) == 0 &&
                        dot(c, d) == 0)
                        out.push_back(IntMatrix::from_rows({vecs[a], vecs[b], vecs[c], vecs[d]}));
    return out;
}

// HK^T / sqrt(n) has ±1 entries; its Hadamard property follows from the Gram identities.
bool unbiased_oracle(const IntMatrix& a, const IntMatrix& b, std::int64_t root) {
    const IntMatrix p = a * b.transpose();
    for (auto v : p.data())
        if (v != root && v != -root) return false;
    return true;
}

IntMatrix bush_pair_member(std::size_t which) {
    SearchOptions o;
    o.bush = true;
    o.order = 16;
    auto h1 = search_unbiased_extension({}, o);
    REQUIRE(h1.found);
    if (which == 0) return *h1.found;
    auto h2 = search_unbiased_extension({*h1.found}, o);
    REQUIRE(h2.found);
    return *h2.found;
}

}  // namespace

TEST_CASE("validation") {
    auto h2 = HadamardMatrix::validate(IntMatrix{{1, 1}, {1, -1}});
    CHECK(h2.order() == 2);
    auto syl4 = sylvester(2);
    CHECK_FALSE(syl4.is_regular());
    std::vector<std::int64_t> sums;
    for (std::size_t i = 0; i < 4; ++i) {
        std::int64_t s = 0;
        for (std::size_t j = 0; j < 4; ++j) s += syl4.matrix()(i, j);
        sums.push_back(s);
    }
    CHECK(sums == std::vector<std::int64_t>{4, 0, 0, 0});
    CHECK(code_of([&] { h2.is_regular(); }) == ErrorCode::NotSquareOrder);
    CHECK(code_of([&] { h2.is_bush_type(); }) == ErrorCode::NotSquareOrder);

    auto reg = HadamardMatrix::validate(IntMatrix::ones(4, 4) - IntMatrix::identity(4).scaled(2));
    CHECK(reg.is_regular());

    CHECK(WeighingMatrix::validate(IntMatrix::identity(5), 1).weight() == 1);
    CHECK(code_of([] { WeighingMatrix::validate(IntMatrix::identity(5), 2); }) == ErrorCode::GramFailure);
    CHECK(code_of([] { HadamardMatrix::validate(IntMatrix{{1, 1}, {1, 1}}); }) == ErrorCode::GramFailure);
    CHECK(code_of([] { HadamardMatrix::validate(IntMatrix{{1, 0}, {1, -1}}); }) == ErrorCode::BadAlphabet);
    CHECK(code_of([] { HadamardMatrix::validate(IntMatrix{{1, 1}}); }) == ErrorCode::DimensionMismatch);
    CHECK(code_of([] { WeighingMatrix::validate(IntMatrix{{2, 0}, {0, 2}}, 1); }) == ErrorCode::BadAlphabet);
    // W W^T = 2I while W^T W is not: only the row side holds
    CHECK(code_of([] {
              WeighingMatrix::validate(IntMatrix{{1, 1, 0}, {1, -1, 0}, {0, 0, 0}}, 2);
          }) == ErrorCode::GramFailure);
}

TEST_CASE("sylvester") {
    CHECK(sylvester(0).matrix() == IntMatrix{{1}});
    CHECK(sylvester(1).matrix() == IntMatrix{{1, 1}, {1, -1}});
    auto h16 = sylvester(4);
    CHECK(h16.order() == 16);
    CHECK(h16.matrix() * h16.matrix().transpose() == IntMatrix::identity(16).scaled(16));
    CHECK(sylvester(8).order() == 256);
    CHECK(code_of([] { sylvester(9); }) == ErrorCode::OrderTooLarge);
}

TEST_CASE("all Hadamard matrices of order 4") {
    const auto& all = all_hadamard_order4();
    CHECK(all.size() == 768);
    auto oracle = order4_by_rows();
    std::set<std::vector<std::int64_t>> a, b;
    for (const auto& m : all) a.insert(m.data());
    for (const auto& m : oracle) b.insert(m.data());
    CHECK(a == b);
}

TEST_CASE("unbiasedness") {
    const auto& all = all_hadamard_order4();
    const IntMatrix syl = sylvester(2).matrix();
    CHECK_FALSE(are_unbiased(syl, syl, MatrixKind::Hadamard, 4).unbiased);
    auto h2 = sylvester(1);
    auto two = are_unbiased(h2, h2);
    CHECK_FALSE(two.unbiased);
    CHECK(two.reason.find("perfect square") != std::string::npos);

    std::size_t mates = 0;
    for (std::size_t i = 0; i < all.size(); i += 7)
        for (std::size_t j = 0; j < all.size(); j += 5) {
            const bool ab = are_unbiased(all[i], all[j], MatrixKind::Hadamard, 4).unbiased;
            CHECK(ab == are_unbiased(all[j], all[i], MatrixKind::Hadamard, 4).unbiased);
            CHECK(ab == unbiased_oracle(all[i], all[j], 2));
            mates += ab;
        }
    CHECK(mates > 0);

    auto ok = are_unbiased(HadamardMatrix::validate(bush_pair_member(0)), HadamardMatrix::validate(bush_pair_member(1)));
    CHECK(ok.unbiased);
    REQUIRE(ok.quotient);
    CHECK(*ok.quotient * ok.quotient->transpose() == IntMatrix::identity(16).scaled(16));

    CHECK(code_of([&] { are_unbiased(syl, IntMatrix{{1}}, MatrixKind::Hadamard, 4); }) ==
          ErrorCode::DimensionMismatch);
}

TEST_CASE("unbiased sets") {
    const IntMatrix syl = sylvester(2).matrix();
    CHECK(UnbiasedSet(MatrixKind::Hadamard, {syl}).size() == 1);
    CHECK(code_of([&] { UnbiasedSet(MatrixKind::Hadamard, {syl, syl}); }) == ErrorCode::NotUnbiased);
    CHECK(code_of([] { UnbiasedSet(MatrixKind::Hadamard, {}); }) == ErrorCode::InvalidSpec);
    CHECK(code_of([] { UnbiasedSet(MatrixKind::Hadamard, {IntMatrix{{1, 1}, {1, 1}}}); }) == ErrorCode::GramFailure);
    auto set = UnbiasedSet(MatrixKind::Hadamard, {bush_pair_member(0), bush_pair_member(1)});
    CHECK(set.order() == 16);
    CHECK(set.weight() == 16);
}

TEST_CASE("order-4 search against exhaustive enumeration") {
    const auto& all = all_hadamard_order4();
    const IntMatrix syl = sylvester(2).matrix();
    SearchOptions o;

    auto mate = search_unbiased_extension({syl}, o);
    REQUIRE(mate.status == SearchStatus::Found);
    REQUIRE(mate.found);
    CHECK(unbiased_oracle(syl, *mate.found, 2));

    // Mates up to row order and row signs: 4! * 2^4 = 384 matrices per normalised solution.
    std::size_t oracle_mates = 0;
    for (const auto& h : all) oracle_mates += unbiased_oracle(syl, h, 2);
    std::size_t normalised = 0;
    auto full = enumerate_unbiased_extensions({syl}, o, [&](const IntMatrix&) {
        ++normalised;
        return true;
    });
    CHECK(full.status == SearchStatus::Found);
    CHECK(oracle_mates == normalised * 384);

    auto third = search_unbiased_extension({syl, *mate.found}, o);
    CHECK(third.status == SearchStatus::ProvenNone);
    CHECK_FALSE(third.found);
    for (const auto& h : all) CHECK_FALSE((unbiased_oracle(syl, h, 2) && unbiased_oracle(*mate.found, h, 2)));

    auto run = extend_unbiased_set({syl}, 5, o);
    CHECK(run.bound_capped);
    CHECK(run.set.size() == 2);

    // determinism
    auto again = search_unbiased_extension({syl}, o);
    CHECK(again.found == mate.found);
    CHECK(again.nodes == mate.nodes);
}

TEST_CASE("search budget and limits") {
    SearchOptions o;
    o.node_budget = 0;
    auto r = search_unbiased_extension({sylvester(2).matrix()}, o);
    CHECK(r.status == SearchStatus::BudgetExhausted);
    CHECK(r.nodes == 0);
    o.node_budget = 3;
    r = search_unbiased_extension({sylvester(4).matrix()}, o);
    CHECK(r.status == SearchStatus::BudgetExhausted);
    CHECK(r.nodes == 3);
    CHECK(code_of([] { search_unbiased_extension({sylvester(5).matrix()}, SearchOptions{}); }) ==
          ErrorCode::OrderTooLarge);

    SearchOptions w;
    w.kind = MatrixKind::Weighing;
    w.order = 4;
    w.weight = 4;
    auto w4 = search_unbiased_extension({}, w);
    REQUIRE(w4.found);
    CHECK(WeighingMatrix::validate(*w4.found, 4).weight() == 4);
    w.weight = 2;
    auto w2 = search_unbiased_extension({}, w);
    REQUIRE(w2.found);
    CHECK(WeighingMatrix::validate(*w2.found, 2).weight() == 2);
}

TEST_CASE("weighing unbiasedness") {
    // Two W(4,4) matrices are Hadamard matrices; weight 4 has root 2.
    const IntMatrix syl = sylvester(2).matrix();
    SearchOptions w;
    w.kind = MatrixKind::Weighing;
    w.weight = 4;
    auto mate = search_unbiased_extension({syl}, w);
    REQUIRE(mate.found);
    CHECK(are_unbiased(WeighingMatrix::validate(syl, 4), WeighingMatrix::validate(*mate.found, 4)).unbiased);
    // W(4,1) pairs: root 1, and any two signed permutation matrices are unbiased
    const IntMatrix p{{0, 1, 0, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, 0, 1, 0}};
    CHECK(are_unbiased(WeighingMatrix::validate(IntMatrix::identity(4), 1), WeighingMatrix::validate(p, 1)).unbiased);
    CHECK_FALSE(are_unbiased(IntMatrix::identity(4), p, MatrixKind::Weighing, 2).unbiased);
}

TEST_CASE("Bush-type search of order 16") {
    const IntMatrix a = bush_pair_member(0);
    const IntMatrix b = bush_pair_member(1);
    for (const auto& m : {a, b}) {
        auto h = HadamardMatrix::validate(m);
        CHECK(h.is_bush_type());
        CHECK(h.is_regular());
    }
    CHECK(unbiased_oracle(a, b, 4));
    CHECK_FALSE(HadamardMatrix::validate(sylvester(4).matrix()).is_bush_type());

    SearchOptions o;
    o.bush = true;
    o.kind = MatrixKind::Weighing;
    o.order = 16;
    o.weight = 9;
    CHECK(code_of([&] { search_unbiased_extension({}, o); }) == ErrorCode::InvalidSpec);
}

TEST_CASE("Gramian B-matrices") {
    const IntMatrix a = bush_pair_member(0);
    const IntMatrix b = bush_pair_member(1);
    auto g = gramian_b(UnbiasedSet(MatrixKind::Hadamard, {a, b}));
    CHECK(g.n == 2);
    CHECK(g.m == 2);
    CHECK(g.b.rows() == 48);
    CHECK(g.b1.rows() == 48);
    CHECK(g.b.is_symmetric());
    CHECK(g.b1 - g.b2 == g.b);
    for (std::size_t blk = 0; blk < 3; ++blk) CHECK(g.b.block(16 * blk, 16 * blk, 16, 16) == IntMatrix(16, 16));
    CHECK(g.b.block(0, 16, 16, 16) == a.transpose());
    IntMatrix quarter = a * b.transpose();
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = 0; j < 16; ++j) quarter(i, j) /= 4;
    CHECK(g.b.block(16, 32, 16, 16) == quarter);
    CHECK(g.b1 + g.b2 + g.b3 + IntMatrix::identity(48) == IntMatrix::ones(48, 48));

    CHECK(code_of([&] { gramian_b(UnbiasedSet(MatrixKind::Hadamard, {a})); }) == ErrorCode::InvalidSpec);
    // Order 4 is 4n^2 with n = 1. No regular unbiased pair exists there, so the odd-n
    // guard cannot be reached through a valid set of that order.
    const auto& all = all_hadamard_order4();
    std::vector<IntMatrix> regular;
    for (const auto& h : all)
        if (HadamardMatrix::validate(h).is_regular()) regular.push_back(h);
    CHECK_FALSE(regular.empty());
    std::size_t regular_pairs = 0;
    for (const auto& x : regular)
        for (const auto& y : regular) regular_pairs += unbiased_oracle(x, y, 2);
    CHECK(regular_pairs == 0);
    const IntMatrix syl16 = sylvester(4).matrix();
    SearchOptions o;
    auto mate = search_unbiased_extension({syl16}, o);
    REQUIRE(mate.found);
    CHECK(code_of([&] { gramian_b(UnbiasedSet(MatrixKind::Hadamard, {syl16, *mate.found})); }) ==
          ErrorCode::NotRegular);
}

TEST_CASE("quotients of a matrix set") {
    const IntMatrix a = bush_pair_member(0);
    const IntMatrix b = bush_pair_member(1);
    auto single = partition_quotients_of_set({a, b}, Partition::singleton(16));
    CHECK(single[0] == a);
    CHECK(single[1] == b);
    auto one = partition_quotients_of_set({a, b}, Partition::one_cell(16));
    CHECK(one[0] == IntMatrix{{4}});

    std::vector<std::vector<std::size_t>> blocks(4);
    for (std::size_t v = 0; v < 16; ++v) blocks[v / 4].push_back(v);
    auto bq = partition_quotients_of_set({a}, Partition::from_cells(blocks, 16));
    CHECK(bq[0] == IntMatrix::identity(4).scaled(4));

    const IntMatrix syl = sylvester(2).matrix();
    CHECK(code_of([&] { partition_quotients_of_set({syl}, Partition::from_cells({{0, 1}, {2, 3}}, 4)); }) ==
          ErrorCode::NotEquitable);
    CHECK(code_of([&] { partition_quotients_of_set({syl}, Partition::from_cells({{0}, {1, 2, 3}}, 4)); }) ==
          ErrorCode::UnequalCells);

    // two-cell equitable splits of an order-4 unbiased pair, checked by block sums
    auto mate = search_unbiased_extension({syl}, SearchOptions{});
    REQUIRE(mate.found);
    std::size_t found = 0;
    for_each_equitable_partition({syl, *mate.found}, 2, [&](const Partition& p) {
        CHECK(verify_equitable(p, {syl, *mate.found}).ok);
        auto q = partition_quotients_of_set({syl, *mate.found}, p);
        const IntMatrix c = p.char_matrix();
        CHECK(syl * c == c * q[0]);
        ++found;
        return true;
    });
    std::size_t oracle = 0;
    const std::vector<std::vector<std::vector<std::size_t>>> splits{
        {{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}, {{0, 3}, {1, 2}}};
    for (const auto& cells : splits) oracle += verify_equitable(Partition::from_cells(cells, 4), {syl, *mate.found}).ok;
    CHECK(found == oracle);
}

namespace {

// Every partition of {0..n-1} into cells of the given size, smallest free point first.
void all_partitions(std::size_t n, std::size_t size, std::vector<std::vector<std::size_t>>& cells, std::vector<bool>& used,
                    std::vector<std::vector<std::vector<std::size_t>>>& out) {
    std::size_t first = 0;
    while (first < n && used[first]) ++first;
    if (first == n) {
        out.push_back(cells);
        return;
    }
    std::vector<std::size_t> rest;
    for (std::size_t v = first + 1; v < n; ++v)
        if (!used[v]) rest.push_back(v);
    const std::size_t r = rest.size();
    for (std::uint32_t mask = 0; mask < (1u << r); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != size - 1) continue;
        std::vector<std::size_t> cell{first};
        for (std::size_t i = 0; i < r; ++i)
            if (mask >> i & 1) cell.push_back(rest[i]);
        for (auto v : cell) used[v] = true;
        cells.push_back(cell);
        all_partitions(n, size, cells, used, out);
        cells.pop_back();
        for (auto v : cell) used[v] = false;
    }
}

bool equitable_oracle(const std::vector<IntMatrix>& mats, const std::vector<std::vector<std::size_t>>& cells) {
    for (const auto& m : mats)
        for (const auto& a : cells)
            for (const auto& b : cells) {
                std::set<std::int64_t> rows, cols;
                for (auto x : a) {
                    std::int64_t s = 0;
                    for (auto y : b) s += m(x, y);
                    rows.insert(s);
                }
                for (auto y : b) {
                    std::int64_t s = 0;
                    for (auto x : a) s += m(x, y);
                    cols.insert(s);
                }
                if (rows.size() > 1 || cols.size() > 1) return false;
            }
    return true;
}

}  // namespace

TEST_CASE("equitable partitions with many cells match brute force") {
    const auto mats = distance_matrices(Graph::from_adjacency(oracle::hypercube(3)));
    for (std::size_t size : {1u, 2u, 4u, 8u}) {
        std::vector<std::vector<std::vector<std::size_t>>> listed;
        for_each_equitable_partition(mats, size, [&](const Partition& p) {
            listed.push_back(p.cells());
            return true;
        });
        std::vector<std::vector<std::vector<std::size_t>>> all, expected;
        std::vector<std::vector<std::size_t>> cells;
        std::vector<bool> used(8, false);
        all_partitions(8, size, cells, used, all);
        for (const auto& c : all)
            if (equitable_oracle(mats, c)) expected.push_back(c);
        std::sort(expected.begin(), expected.end());
        CHECK(std::is_sorted(listed.begin(), listed.end()));
        INFO("cell size " << size << ": walker " << listed.size() << ", oracle " << expected.size());
        CHECK(listed == expected);
        CHECK_FALSE(expected.empty());
    }
}
