#include <doctest.h>

#include <random>

#include "lcdsub/error.hpp"
#include "lcdsub/subspace.hpp"
#include "support/oracles.hpp"

using namespace lcdsub;

namespace {

Subspace random_subspace(const FieldPtr& f, std::size_t n, std::mt19937_64& rng) {
    const std::size_t gens = rng() % (n + 1);
    return Subspace::row_space(oracle::random_matrix(f, gens, n, rng));
}

Vector random_vector(const FieldPtr& f, std::size_t n, std::mt19937_64& rng) {
    Vector v(n);
    for (auto& x : v) x = static_cast<std::uint32_t>(rng() % f->order());
    return v;
}

std::vector<FieldPtr> test_fields() { return {Field::make(2), Field::make(3), Field::make(2, 2)}; }

}  // namespace

TEST_CASE("span examples") {
    auto f2 = Field::make(2), f3 = Field::make(3);
    auto z = Subspace::span(f2, 3, {});
    CHECK(z.dim() == 0);
    CHECK(z.ambient_dim() == 3);
    auto l = Subspace::span(f2, 2, {{1, 1}, {1, 1}});
    CHECK(l.dim() == 1);
    CHECK(l.basis() == MatrixFq::from_rows(f2, {{1, 1}}));
    auto full = Subspace::span(f3, 2, {{1, 0}, {1, 1}});
    CHECK(full.basis() == MatrixFq::identity(f3, 2));
    CHECK_THROWS_AS(Subspace::span(f3, 2, {{1, 0, 0}}), Error);
}

TEST_CASE("sum and intersection examples") {
    auto f2 = Field::make(2), f3 = Field::make(3);
    auto e1 = Subspace::span(f2, 2, {{1, 0}}), e2 = Subspace::span(f2, 2, {{0, 1}});
    CHECK(sum(e1, e2) == Subspace::full(f2, 2));
    CHECK(intersect(e1, e2) == Subspace::zero(f2, 2));
    CHECK(sum(e1, e1) == e1);
    CHECK(intersect(e1, e1) == e1);

    auto u = Subspace::span(f3, 3, {{1, 0, 0}, {0, 1, 0}});
    auto w = Subspace::span(f3, 3, {{0, 1, 0}, {0, 0, 1}});
    // Oracle: enumerate both planes and count common vectors.
    const auto su = oracle::span_set(*f3, oracle::rows_of(u.basis()), 3);
    const auto sw = oracle::span_set(*f3, oracle::rows_of(w.basis()), 3);
    CHECK(oracle::intersection_size(su, sw) == 3);
    CHECK(intersect(u, w) == Subspace::span(f3, 3, {{0, 1, 0}}));

    CHECK_THROWS_AS(sum(e1, Subspace::zero(f2, 3)), Error);
}

TEST_CASE("dual examples") {
    auto f2 = Field::make(2), f3 = Field::make(3);
    CHECK(dual(Subspace::zero(f3, 3)) == Subspace::full(f3, 3));
    CHECK(dual(Subspace::full(f3, 3)) == Subspace::zero(f3, 3));
    auto l = Subspace::span(f2, 2, {{1, 1}});
    CHECK(dual(l) == l);
    CHECK(dual(Subspace::span(f3, 2, {{1, 0}})) == Subspace::span(f3, 2, {{0, 1}}));
}

TEST_CASE("distance examples") {
    auto f2 = Field::make(2), f3 = Field::make(3);
    auto e1 = Subspace::span(f2, 2, {{1, 0}}), e2 = Subspace::span(f2, 2, {{0, 1}});
    CHECK(distance(e1, e1) == 0);
    CHECK(distance(e1, e2) == 2);
    auto a = Subspace::span(f3, 2, {{1, 0}}), b = Subspace::span(f3, 2, {{1, 1}});
    const auto sa = oracle::span_set(*f3, {{1, 0}}, 2), sb = oracle::span_set(*f3, {{1, 1}}, 2);
    CHECK(oracle::intersection_size(sa, sb) == 1);  // only the zero vector
    CHECK(distance(a, b) == 2);
}

TEST_CASE("is_lcd examples") {
    auto f2 = Field::make(2), f3 = Field::make(3);
    CHECK(is_lcd(Subspace::span(f2, 2, {{1, 0}})).lcd);
    auto self_dual = is_lcd(Subspace::span(f2, 2, {{1, 1}}));
    CHECK_FALSE(self_dual.lcd);
    CHECK(self_dual.gram_det == 0);
    auto l3 = is_lcd(Subspace::span(f3, 2, {{1, 1}}));
    CHECK(l3.lcd);
    CHECK(l3.gram_det == 2);
    CHECK(is_lcd(Subspace::zero(f3, 4)).lcd);
}

TEST_CASE("pairwise_lcd examples") {
    auto f2 = Field::make(2), f3 = Field::make(3);
    auto u = Subspace::span(f3, 2, {{1, 0}}), w = Subspace::span(f3, 2, {{1, 1}});
    // Oracle: W^⊥ = <(1,2)> and U^⊥ = <(0,1)>, intersections enumerated.
    const auto w_perp = oracle::orthogonal_set(*f3, {{1, 1}}, 2);
    const auto u_perp = oracle::orthogonal_set(*f3, {{1, 0}}, 2);
    CHECK(oracle::intersection_size(oracle::span_set(*f3, {{1, 0}}, 2), w_perp) == 1);
    CHECK(oracle::intersection_size(oracle::span_set(*f3, {{1, 1}}, 2), u_perp) == 1);
    auto r = pairwise_lcd(u, w);
    CHECK(r.lcd);
    CHECK(r.gram_nonsingular == true);

    auto l = Subspace::span(f2, 2, {{1, 1}});
    CHECK_FALSE(pairwise_lcd(l, l).lcd);
    CHECK(pairwise_lcd(Subspace::full(f3, 3), Subspace::full(f3, 3)).lcd);
}

TEST_CASE("projector examples") {
    auto f3 = Field::make(3);
    CHECK(projector_complement(Subspace::span(f3, 2, {{1, 0}})) == MatrixFq::from_rows(f3, {{0, 0}, {0, 1}}));
    CHECK(projector_complement(Subspace::zero(f3, 3)) == MatrixFq::identity(f3, 3));

    // Oracle: solve (1,0) = a(1,1) + b(1,2) by trying all 9 (a, b).
    Vector expected;
    for (std::uint32_t a = 0; a < 3; ++a)
        for (std::uint32_t b = 0; b < 3; ++b)
            if ((a + b) % 3 == 1 && (a + 2 * b) % 3 == 0) expected = {b, (2 * b) % 3};
    REQUIRE(expected == Vector{2, 1});
    auto p = projector_complement(Subspace::span(f3, 2, {{1, 1}}));
    CHECK(row_times(Vector{1, 0}, p) == expected);

    auto f2 = Field::make(2);
    CHECK_THROWS_AS(projector_complement(Subspace::span(f2, 2, {{1, 1}})), Error);
}

TEST_CASE("intersection matches brute-force enumeration") {
    std::mt19937_64 rng(17);
    for (const auto& f : test_fields()) {
        for (int trial = 0; trial < 150; ++trial) {
            const std::size_t n = 1 + rng() % 4;
            auto u = random_subspace(f, n, rng), w = random_subspace(f, n, rng);
            const auto su = oracle::span_set(*f, oracle::rows_of(u.basis()), n);
            const auto sw = oracle::span_set(*f, oracle::rows_of(w.basis()), n);
            const auto cap = intersect(u, w);
            REQUIRE(oracle::span_set(*f, oracle::rows_of(cap.basis()), n).size() == oracle::intersection_size(su, sw));
            REQUIRE(cap.dim() == intersection_dim(u, w));
            const auto perp = oracle::orthogonal_set(*f, oracle::rows_of(u.basis()), n);
            REQUIRE(oracle::span_set(*f, oracle::rows_of(dual(u).basis()), n) == perp);
        }
    }
}

TEST_CASE("metric axioms and dimension formula") {
    std::mt19937_64 rng(23);
    for (const auto& f : test_fields()) {
        for (int trial = 0; trial < 1000; ++trial) {
            const std::size_t n = 1 + rng() % 8;
            auto a = random_subspace(f, n, rng), b = random_subspace(f, n, rng), c = random_subspace(f, n, rng);
            REQUIRE(distance(a, a) == 0);
            REQUIRE(distance(a, b) == distance(b, a));
            REQUIRE((distance(a, b) == 0) == (a == b));
            REQUIRE(distance(a, c) <= distance(a, b) + distance(b, c));
            REQUIRE(sum(a, b).dim() + intersect(a, b).dim() == a.dim() + b.dim());
            REQUIRE(distance(a, b) == sum(a, b).dim() - intersect(a, b).dim());
        }
    }
}

TEST_CASE("dual is an inclusion-reversing involution") {
    std::mt19937_64 rng(29);
    for (const auto& f : test_fields()) {
        for (int trial = 0; trial < 300; ++trial) {
            const std::size_t n = 1 + rng() % 8;
            auto u = random_subspace(f, n, rng);
            auto w = sum(u, random_subspace(f, n, rng));
            REQUIRE(dual(dual(u)) == u);
            REQUIRE(dual(u).dim() == n - u.dim());
            REQUIRE(w.contains(u));
            REQUIRE(dual(u).contains(dual(w)));
        }
    }
}

TEST_CASE("Massey criterion agrees with the intersection test") {
    std::mt19937_64 rng(31);
    for (const auto& f : test_fields()) {
        std::size_t lcd = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            const std::size_t n = 1 + rng() % 8;
            auto u = random_subspace(f, n, rng);
            const auto check = is_lcd(u);  // throws on disagreement
            REQUIRE(check.lcd == (intersect(u, dual(u)).dim() == 0));
            lcd += check.lcd;
        }
        CHECK(lcd > 0);
        CHECK(lcd < 1000);
    }
}

TEST_CASE("pairwise_lcd matches the Gram test for equal dimensions") {
    std::mt19937_64 rng(37);
    for (const auto& f : test_fields()) {
        for (int trial = 0; trial < 500; ++trial) {
            const std::size_t n = 2 + rng() % 6, k = 1 + rng() % (n - 1);
            auto u = Subspace::row_space(oracle::random_matrix(f, k, n, rng));
            auto w = Subspace::row_space(oracle::random_matrix(f, k, n, rng));
            auto r = pairwise_lcd(u, w);
            REQUIRE(r.u_cap_w_dual == intersect(u, dual(w)).dim());
            REQUIRE(r.w_cap_u_dual == intersect(w, dual(u)).dim());
            if (u.dim() == w.dim()) {
                REQUIRE(r.gram_nonsingular.has_value());
                REQUIRE(*r.gram_nonsingular == r.lcd);
            }
        }
    }
}

TEST_CASE("projection decomposition") {
    std::mt19937_64 rng(41);
    for (const auto& f : test_fields()) {
        int checked = 0;
        for (int trial = 0; trial < 1000 && checked < 300; ++trial) {
            const std::size_t n = 1 + rng() % 8;
            auto u = random_subspace(f, n, rng);
            if (!is_lcd(u).lcd) continue;
            ++checked;
            const auto p = projector_complement(u);
            REQUIRE(p * p == p);
            const auto perp = dual(u);
            for (std::size_t i = 0; i < u.dim(); ++i) REQUIRE(row_times(u.basis().row(i), p) == Vector(n, 0));
            for (std::size_t i = 0; i < perp.dim(); ++i) {
                const auto row = perp.basis().row(i);
                REQUIRE(row_times(row, p) == Vector(row.begin(), row.end()));
            }
            const auto v = random_vector(f, n, rng);
            const auto pv = row_times(v, p);
            Vector diff(n);
            for (std::size_t j = 0; j < n; ++j) diff[j] = f->sub(v[j], pv[j]);
            REQUIRE(u.contains(diff));
            REQUIRE(perp.contains(pv));
            const auto line = Subspace::span(f, n, {v});
            const auto projected = Subspace::span(f, n, {pv});
            REQUIRE(sum(u, line).dim() == u.dim() + projected.dim());
        }
        CHECK(checked > 50);
    }
}
