#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "lcdsub/codes.hpp"
#include "lcdsub/constructions.hpp"
#include "lcdsub/simulator.hpp"

namespace lcdsub {

// Text formats use 1-based indices for points and permutations; everything in
// memory is 0-based. Blank lines and '#' comments are skipped everywhere.

enum class MatrixFileKind { Int, Pm1, Zpm1, Fq };

/// Header "kind rows cols [q]" then the rows. q is required for (and only for) fq.
struct MatrixFile {
    MatrixFileKind kind = MatrixFileKind::Int;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::uint32_t q = 0;
    std::vector<std::int64_t> entries;  // row-major

    IntMatrix to_int() const;
    /// Throws ParseError unless the file is of kind fq.
    MatrixFq to_fq() const;
    bool operator==(const MatrixFile&) const = default;
};

/// Throws ParseError with witness "<source>:<line>".
MatrixFile parse_matrix_file(std::istream& in, const std::string& source = "<input>");
MatrixFile read_matrix_file(const std::string& path);
std::string format_matrix_file(const MatrixFile& m);
void write_matrix_file(const std::string& path, const MatrixFile& m);

/// Narrowest kind that holds the entries (pm1, then zpm1, then int).
MatrixFile to_matrix_file(const IntMatrix& m);
MatrixFile to_matrix_file(const MatrixFq& m);

/// One generator per line as "g(1) ... g(n)". Returns 0-based image arrays; every line
/// must be a permutation of 1..degree. Throws ParseError.
std::vector<std::vector<std::size_t>> parse_group_file(std::istream& in, std::size_t degree,
                                                       const std::string& source = "<input>");
std::vector<std::vector<std::size_t>> read_group_file(const std::string& path, std::size_t degree);
std::string format_group_file(const std::vector<std::vector<std::size_t>>& generators);

/// One cell per line, 1-based. Throws ParseError, or what Partition::from_cells throws.
Partition parse_partition_file(std::istream& in, std::size_t points, const std::string& source = "<input>");
Partition read_partition_file(const std::string& path, std::size_t points);
std::string format_partition_file(const Partition& part);

using Json = nlohmann::json;

/// {n, size, d, K, q, d_exhaustive}.
Json to_json(const CodeParams& p);
/// {q, n, codewords: [[rref rows], ...]}; codewords in code order.
Json code_to_json(const SubspaceCode& code);
/// Reads "q", "n" and "codewords" from a code dump or a construction report. Throws ParseError.
SubspaceCode code_from_json(const Json& j);
Json to_json(const ConstructionReport& r);
Json to_json(const ClassicalReport& r);
/// Codeword numbers are 1-based, matching the text formats.
Json to_json(const DecodeOutcome& d);
/// Timings are kept under "informational".
Json to_json(const TrialStats& s, bool with_records = false);
Json error_json(const std::string& error, const std::string& witness);

}  // namespace lcdsub
