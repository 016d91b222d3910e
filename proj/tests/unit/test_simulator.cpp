#include <doctest.h>

#include <random>

#include "lcdsub/error.hpp"
#include "lcdsub/simulator.hpp"
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

// Greedy collection of random subspaces that are pairwise LCD, including with themselves.
SubspaceCode random_lcd_code(std::uint32_t q, std::size_t n, std::size_t k, std::size_t want, std::uint64_t seed) {
    auto f = Field::from_order(q);
    std::mt19937_64 rng(seed);
    std::vector<Subspace> words;
    for (int attempt = 0; attempt < 2000 && words.size() < want; ++attempt) {
        auto u = Subspace::row_space(oracle::random_matrix(f, k, n, rng));
        if (u.dim() != k || !is_lcd(u).lcd) continue;
        bool ok = true;
        for (const auto& w : words) ok = ok && pairwise_lcd(u, w).lcd && u != w;
        if (ok) words.push_back(u);
    }
    REQUIRE(words.size() == want);
    return SubspaceCode(words);
}

// d(U, W) = 2 dim(U + W) - dim U - dim W, with dim(U + W) counted by enumeration.
std::size_t brute_distance(const Field& f, const Subspace& u, const Subspace& w) {
    auto gens = oracle::rows_of(u.basis());
    for (const auto& r : oracle::rows_of(w.basis())) gens.push_back(r);
    const std::size_t sum = oracle::span_dim(f, gens, u.ambient_dim());
    return 2 * sum - oracle::span_dim(f, oracle::rows_of(u.basis()), u.ambient_dim()) -
           oracle::span_dim(f, oracle::rows_of(w.basis()), u.ambient_dim());
}

}  // namespace

TEST_CASE("corrupt") {
    auto f2 = Field::make(2);
    const auto u = Subspace::span(f2, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}});
    CHECK(corrupt(u, ChannelSpec{0, 0, 5}, 3) == u);
    CHECK(corrupt(u, ChannelSpec{2, 0, 5}, 3) == Subspace::zero(f2, 4));

    // frozen regression output
    const auto fixture = corrupt(u, ChannelSpec{0, 1, 42}, 0);
    CHECK(fixture == Subspace::span(f2, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}}));
    CHECK(corrupt(u, ChannelSpec{0, 1, 42}, 0) == fixture);
    CHECK(trial_stream_seed(42, 0) != trial_stream_seed(42, 1));
    CHECK(trial_stream_seed(42, 0) != trial_stream_seed(43, 0));

    std::mt19937_64 rng(8);
    for (std::uint32_t q : {2u, 3u, 4u}) {
        auto f = Field::from_order(q);
        for (int rep = 0; rep < 200; ++rep) {
            const std::size_t n = 4 + rng() % 4;
            const auto w = Subspace::row_space(oracle::random_matrix(f, 1 + rng() % 3, n, rng));
            const std::size_t rho = rng() % (w.dim() + 1);
            const std::size_t e = rng() % 3;
            const auto r = corrupt(w, ChannelSpec{rho, e, rng()}, rng() % 100);
            CHECK(r.dim() >= w.dim() - rho);
            CHECK(r.dim() <= w.dim() - rho + e);
            CHECK(intersection_dim(r, w) >= w.dim() - rho);
            if (e == 0) CHECK(w.contains(r));
        }
    }

    CHECK(code_of([&] { corrupt(u, ChannelSpec{3, 0, 0}, 0); }) == ErrorCode::InvalidSpec);
    CHECK(code_of([&] { corrupt(u, ChannelSpec{0, 5, 0}, 0); }) == ErrorCode::InvalidSpec);
}

TEST_CASE("noiseless channel and determinism") {
    for (std::uint32_t q : {2u, 3u, 4u}) {
        const auto code = random_lcd_code(q, 6, 2, 5, q);
        const auto s = run_experiment(code, ChannelSpec{0, 0, 1}, 300);
        CHECK(s.trials == 300);
        CHECK(s.correct == 300);
        CHECK(s.failure == 0);
        CHECK(s.wrong == 0);
        CHECK(s.agreement == 300);
        CHECK(s.mean_received_distance == 0);
        CHECK(s.records.size() == 300);

        const ChannelSpec noisy{1, 1, 77};
        const auto a = run_experiment(code, noisy, 200);
        const auto b = run_experiment(code, noisy, 200);
        CHECK(same_outcomes(a, b));
        CHECK(a.correct + a.failure + a.wrong == a.trials);
        SimulationOptions par;
        par.threads = 4;
        CHECK(same_outcomes(a, run_experiment(code, noisy, 200, par)));
        const auto other = run_experiment(code, ChannelSpec{1, 1, 78}, 200);
        CHECK_FALSE(same_outcomes(a, other));
    }
}

TEST_CASE("classification against an exhaustive distance table") {
    std::size_t failures = 0, wrongs = 0;
    for (std::uint32_t q : {2u, 3u}) {
        const auto code = random_lcd_code(q, 6, 2, 4, 10 + q);
        const Field& f = *code.field();
        for (const ChannelSpec spec : {ChannelSpec{1, 0, 3}, ChannelSpec{1, 1, 4}, ChannelSpec{0, 2, 5},
                                       ChannelSpec{2, 1, 6}}) {
            const auto s = run_experiment(code, spec, 60);
            for (std::size_t t = 0; t < s.trials; ++t) {
                const auto& rec = s.records[t];
                const auto received = corrupt(code[rec.sent], spec, t);
                std::vector<std::size_t> table;
                for (const auto& w : code.codewords()) table.push_back(brute_distance(f, received, w));
                const std::size_t best = *std::min_element(table.begin(), table.end());
                const auto hits = std::count(table.begin(), table.end(), best);
                CHECK(rec.decoded_distance == best);
                CHECK(rec.received_distance == table[rec.sent]);
                if (hits > 1) {
                    CHECK(rec.verdict == Verdict::Failure);
                } else {
                    const std::size_t arg = static_cast<std::size_t>(std::min_element(table.begin(), table.end()) - table.begin());
                    CHECK(rec.decoded == std::optional<std::size_t>{arg});
                    CHECK(rec.verdict == (arg == rec.sent ? Verdict::Correct : Verdict::Wrong));
                    // a wrong verdict needs a codeword strictly closer than the one sent
                    if (rec.verdict == Verdict::Wrong) CHECK(table[arg] < table[rec.sent]);
                    // e = 0 with a unique closest codeword decodes correctly
                    if (spec.errors == 0) CHECK(rec.verdict == Verdict::Correct);
                }
                failures += rec.verdict == Verdict::Failure;
                wrongs += rec.verdict == Verdict::Wrong;
            }
        }
    }
    CHECK(failures > 0);

    // Erasing everything leaves the zero subspace, equidistant from equal-dimension codewords.
    const auto code = random_lcd_code(2, 6, 2, 3, 1);
    const auto all_erased = run_experiment(code, ChannelSpec{2, 0, 9}, 50);
    CHECK(all_erased.failure == 50);
    CHECK(all_erased.mean_decoded_distance == 2);
}

TEST_CASE("experiment preconditions") {
    auto f2 = Field::make(2);
    const SubspaceCode bad({Subspace::span(f2, 2, {{1, 1}})});
    CHECK(code_of([&] { run_experiment(bad, ChannelSpec{}, 1); }) == ErrorCode::NotLCDCode);
    const auto code = random_lcd_code(2, 6, 2, 2, 3);
    CHECK(code_of([&] { run_experiment(code, ChannelSpec{}, 0); }) == ErrorCode::InvalidSpec);
    CHECK(code_of([&] { run_experiment(code, ChannelSpec{3, 0, 0}, 5); }) == ErrorCode::InvalidSpec);
    CHECK(code_of([&] { run_experiment(code, ChannelSpec{0, 7, 0}, 5); }) == ErrorCode::InvalidSpec);
    SimulationOptions lean;
    lean.keep_records = false;
    const auto s = run_experiment(code, ChannelSpec{1, 1, 2}, 20, lean);
    CHECK(s.records.empty());
    CHECK(s.agreement == 20);
    CHECK(s.timings.naive_median_ns > 0);
}
