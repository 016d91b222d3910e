#include <doctest.h>

#include <random>
#include <sstream>

#include "lcdsub/error.hpp"
#include "lcdsub/io.hpp"
#include "support/oracles.hpp"

using namespace lcdsub;

namespace {

std::string witness_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        return e.witness();
    }
    FAIL("no error thrown");
    return {};
}

MatrixFile parse(const std::string& text) {
    std::istringstream in(text);
    return parse_matrix_file(in, "m");
}

}  // namespace

TEST_CASE("matrix files") {
    const auto m = parse("# a comment\n\nint 2 3\n1 -2 3  # trailing\n\n4 5 6\n");
    CHECK(m.kind == MatrixFileKind::Int);
    CHECK(m.to_int() == IntMatrix{{1, -2, 3}, {4, 5, 6}});

    const auto f = parse("fq 1 3 4\n0 3 2\n");
    CHECK(f.to_fq() == MatrixFq::from_rows(Field::from_order(4), {{0, 3, 2}}));

    CHECK(witness_of([] { parse("pm1 1 2\n1 0\n"); }) == "m:2");
    CHECK(witness_of([] { parse("zpm1 1 2\n1 2\n"); }) == "m:2");
    CHECK(witness_of([] { parse("fq 1 2 4\n1 4\n"); }) == "m:2");
    CHECK(witness_of([] { parse("fq 1 2 6\n1 1\n"); }) == "m:1");
    CHECK(witness_of([] { parse("fq 1 2\n1 1\n"); }) == "m:1");
    CHECK(witness_of([] { parse("int 2 2\n1 1\n"); }) == "m:1");
    CHECK(witness_of([] { parse("int 1 2\n1 1 1\n"); }) == "m:2");
    CHECK(witness_of([] { parse("int 1 2\n1 x\n"); }) == "m:2");
    CHECK(witness_of([] { parse("real 1 1\n1\n"); }) == "m:1");
    CHECK(witness_of([] { parse("# nothing\n"); }) == "m");
    CHECK(witness_of([] { parse("int 1 1\n5\n").to_fq(); }) == "int");
    CHECK(witness_of([] { read_matrix_file("/nonexistent/file.txt"); }) == "/nonexistent/file.txt");

    // written matrices parse back to the same object
    std::mt19937_64 rng(4);
    for (int rep = 0; rep < 100; ++rep) {
        IntMatrix a(1 + rng() % 5, 1 + rng() % 5);
        const int span = rep % 3 == 0 ? 1 : rep % 3 == 1 ? 2 : 100;
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) {
                std::int64_t v = static_cast<std::int64_t>(rng() % (2 * span + 1)) - span;
                if (span == 1 && v == 0) v = 1;
                a(i, j) = v;
            }
        const auto file = to_matrix_file(a);
        CHECK(parse(format_matrix_file(file)) == file);
        CHECK(parse(format_matrix_file(file)).to_int() == a);
        for (std::uint32_t q : {2u, 3u, 8u, 9u}) {
            const auto b = oracle::random_matrix(Field::from_order(q), 1 + rng() % 4, 1 + rng() % 4, rng);
            CHECK(parse(format_matrix_file(to_matrix_file(b))).to_fq() == b);
        }
    }
    CHECK(to_matrix_file(IntMatrix{{1, -1}}).kind == MatrixFileKind::Pm1);
    CHECK(to_matrix_file(IntMatrix{{1, 0}}).kind == MatrixFileKind::Zpm1);
    CHECK(to_matrix_file(IntMatrix{{2, 0}}).kind == MatrixFileKind::Int);
}

TEST_CASE("group and partition files") {
    std::istringstream g("# swaps\n2 1 3\n3 1 2\n");
    const auto gens = parse_group_file(g, 3, "g");
    CHECK(gens == std::vector<std::vector<std::size_t>>{{1, 0, 2}, {2, 0, 1}});
    std::istringstream again(format_group_file(gens));
    CHECK(parse_group_file(again, 3) == gens);

    std::istringstream dup("1 1 3\n");
    CHECK(witness_of([&] { parse_group_file(dup, 3, "g"); }) == "g:1");
    std::istringstream short_line("1 2\n");
    CHECK(witness_of([&] { parse_group_file(short_line, 3, "g"); }) == "g:1");
    std::istringstream zero("0 1 2\n");
    CHECK(witness_of([&] { parse_group_file(zero, 3, "g"); }) == "g:1");

    std::istringstream p("1 4\n\n2 3\n");
    const auto part = parse_partition_file(p, 4, "p");
    CHECK(part.cells() == std::vector<std::vector<std::size_t>>{{0, 3}, {1, 2}});
    std::istringstream back(format_partition_file(part));
    CHECK(parse_partition_file(back, 4).cells() == part.cells());
    std::istringstream out_of_range("1 5\n2 3 4\n");
    CHECK(witness_of([&] { parse_partition_file(out_of_range, 4, "p"); }) == "p:1");
    std::istringstream gap("1 2\n");
    try {
        parse_partition_file(gap, 4);
        FAIL("gap accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotAPartition);
    }
}

TEST_CASE("json reports") {
    auto f3 = Field::make(3);
    const SubspaceCode code({Subspace::span(f3, 4, {{1, 0, 1, 0}}), Subspace::span(f3, 4, {{1, 1, 0, 0}})});
    const Json j = code_to_json(code);
    CHECK(j.at("q") == 3);
    CHECK(j.at("n") == 4);
    CHECK(code_from_json(j).codewords() == code.codewords());
    CHECK(code_from_json(Json::parse(j.dump())).codewords() == code.codewords());
    // keys come out sorted
    CHECK(j.dump() == R"({"codewords":[[[1,0,1,0]],[[1,1,0,0]]],"n":4,"q":3})");

    CHECK_THROWS_AS(code_from_json(Json{{"q", 3}}), Error);
    Json bad = j;
    bad["codewords"][0][0].push_back(1);
    CHECK_THROWS_AS(code_from_json(bad), Error);

    const auto d = to_json(decode_naive(code, code[1]));
    CHECK(d.at("codeword") == 2);
    CHECK(d.at("failed") == false);
    const auto tie = to_json(decode_naive(code, Subspace::zero(f3, 4)));
    CHECK(tie.at("codeword").is_null());
    CHECK(tie.at("failed") == true);

    const auto params_json = to_json(params(code));
    CHECK(params_json.at("d") == 2);
    CHECK(params_json.at("K") == Json::array({1}));

    const auto stats = run_experiment(code, ChannelSpec{0, 1, 5}, 10);
    const auto sj = to_json(stats, true);
    CHECK(sj.at("trials") == 10);
    CHECK(sj.at("records").size() == 10);
    CHECK(sj.contains("informational"));
    Json canonical = sj;
    canonical.erase("informational");
    Json again = to_json(run_experiment(code, ChannelSpec{0, 1, 5}, 10), true);
    again.erase("informational");
    CHECK(canonical.dump() == again.dump());
}
