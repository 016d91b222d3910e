#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lcdsub/int_matrix.hpp"
#include "lcdsub/schemes.hpp"

namespace lcdsub {

/// Integer square root when n is a perfect square.
std::optional<std::int64_t> exact_sqrt(std::int64_t n);

/// ±1 matrix with H H^T = H^T H = nI.
class HadamardMatrix {
public:
    /// Throws DimensionMismatch, BadAlphabet or GramFailure.
    static HadamardMatrix validate(IntMatrix h);

    std::size_t order() const noexcept { return h_.rows(); }
    const IntMatrix& matrix() const noexcept { return h_; }

    /// All row and column sums equal sqrt(n). Throws NotSquareOrder for non-square n.
    bool is_regular() const;
    /// Block size s = sqrt(n): diagonal blocks are J_s, off-diagonal blocks have zero
    /// row and column sums. Throws NotSquareOrder for non-square n.
    bool is_bush_type() const;

private:
    IntMatrix h_;
};

/// {-1,0,1} matrix with W W^T = W^T W = kI and exactly k nonzeros in every row and column.
class WeighingMatrix {
public:
    /// Throws DimensionMismatch, BadAlphabet or GramFailure.
    static WeighingMatrix validate(IntMatrix w, std::int64_t weight);

    std::size_t order() const noexcept { return w_.rows(); }
    std::int64_t weight() const noexcept { return k_; }
    const IntMatrix& matrix() const noexcept { return w_; }

private:
    IntMatrix w_;
    std::int64_t k_ = 0;
};

/// Sylvester's construction, order 2^k with 2^k <= 256. Throws OrderTooLarge.
HadamardMatrix sylvester(unsigned k);

enum class MatrixKind { Hadamard, Weighing };

struct UnbiasedCheck {
    bool unbiased = false;
    std::string reason;             // why not, when not
    std::optional<IntMatrix> quotient;  // A B^T / sqrt(weight) when integral
};

/// A B^T = sqrt(k) L with L of the same kind (k = n for Hadamard). A non-square
/// weight gives false with the reason "not a perfect square".
UnbiasedCheck are_unbiased(const IntMatrix& a, const IntMatrix& b, MatrixKind kind, std::int64_t weight);
UnbiasedCheck are_unbiased(const HadamardMatrix& a, const HadamardMatrix& b);
UnbiasedCheck are_unbiased(const WeighingMatrix& a, const WeighingMatrix& b);

/// Pairwise unbiased family of one kind, order and weight.
class UnbiasedSet {
public:
    /// Validates every member and every pair. Throws GramFailure, BadAlphabet,
    /// DimensionMismatch or NotUnbiased (witness "i,j").
    UnbiasedSet(MatrixKind kind, std::vector<IntMatrix> mats, std::int64_t weight = 0);

    MatrixKind kind() const noexcept { return kind_; }
    std::size_t order() const noexcept { return order_; }
    std::int64_t weight() const noexcept { return weight_; }
    std::size_t size() const noexcept { return mats_.size(); }
    const std::vector<IntMatrix>& matrices() const noexcept { return mats_; }

private:
    MatrixKind kind_;
    std::size_t order_ = 0;
    std::int64_t weight_ = 0;
    std::vector<IntMatrix> mats_;
};

/// Every Hadamard matrix of order 4 (all 2^16 sign patterns tried); computed once.
const std::vector<IntMatrix>& all_hadamard_order4();

struct SearchOptions {
    std::uint64_t node_budget = 100'000'000;
    /// Restrict to Bush-type Hadamard matrices (block size sqrt(n)).
    bool bush = false;
    /// Order/weight used when the seed list is empty.
    std::size_t order = 0;
    std::int64_t weight = 0;
    MatrixKind kind = MatrixKind::Hadamard;
};

enum class SearchStatus { Found, ProvenNone, BudgetExhausted };
std::string to_string(SearchStatus s);

struct SearchResult {
    SearchStatus status = SearchStatus::BudgetExhausted;
    std::optional<IntMatrix> found;
    std::uint64_t nodes = 0;
    std::size_t candidates = 0;  // admissible rows after filtering against the seeds
};

inline constexpr std::size_t kMaxSearchOrder = 16;

/// Backtracking for one more matrix unbiased with every seed. Rows are admissible
/// vectors (inner product ±sqrt(n), or 0/±sqrt(k), with each seed row), chosen
/// pairwise orthogonal in increasing order, which fixes row order and signs. The
/// first solution in that order is returned; ProvenNone means the space was
/// exhausted. Throws OrderTooLarge for order > 16.
SearchResult search_unbiased_extension(const std::vector<IntMatrix>& seeds, const SearchOptions& opt);

/// Calls `visit` on each solution in traversal order until it returns false or the
/// budget runs out; same status semantics as search_unbiased_extension.
SearchResult enumerate_unbiased_extensions(const std::vector<IntMatrix>& seeds, const SearchOptions& opt,
                                           const std::function<bool(const IntMatrix&)>& visit);

/// Extends `seeds` greedily until `target` members or failure. The m <= n/2 bound
/// for order n caps the target.
struct ExtensionRun {
    std::vector<IntMatrix> set;
    SearchStatus last_status = SearchStatus::Found;
    bool bound_capped = false;
    std::uint64_t nodes = 0;
};
ExtensionRun extend_unbiased_set(std::vector<IntMatrix> seeds, std::size_t target, const SearchOptions& opt);

struct GramianB {
    IntMatrix b;  // 2n(M - I), entries in {-1,0,1}
    IntMatrix b1, b2, b3;
    std::int64_t n = 0;  // order is 4n^2
    std::size_t m = 0;
};

/// B-matrices of a family of m >= 2 mutually unbiased regular Hadamard matrices of
/// order 4n^2. Throws NotRegular, OddN, NotSquareOrder or InvalidSpec (m < 2).
GramianB gramian_b(const UnbiasedSet& set);

/// Quotients of a matrix family for an equitable partition with equal cells.
/// Throws NotEquitable or UnequalCells.
std::vector<IntMatrix> partition_quotients_of_set(const std::vector<IntMatrix>& mats, const Partition& part);

/// Calls `visit` on every partition of {0..n-1} into cells of size `cell_size`
/// (cells listed by smallest element) that is equitable for all matrices, until it
/// returns false. Meant for small n.
void for_each_equitable_partition(const std::vector<IntMatrix>& mats, std::size_t cell_size,
                                  const std::function<bool(const Partition&)>& visit);

}  // namespace lcdsub
