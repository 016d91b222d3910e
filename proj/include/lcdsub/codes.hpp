#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "lcdsub/subspace.hpp"

namespace lcdsub {

/// A nonempty set of subspaces of one F_q^n. Duplicates are dropped and the
/// codewords are kept sorted, so the result does not depend on input order.
class SubspaceCode {
public:
    /// Throws EmptyCode, FieldMismatch or AmbientMismatch.
    explicit SubspaceCode(std::vector<Subspace> words);

    const FieldPtr& field() const noexcept { return words_.front().field(); }
    std::size_t ambient_dim() const noexcept { return words_.front().ambient_dim(); }
    std::size_t size() const noexcept { return words_.size(); }
    const std::vector<Subspace>& codewords() const noexcept { return words_; }
    const Subspace& operator[](std::size_t i) const noexcept { return words_[i]; }
    /// The set K of codeword dimensions.
    std::set<std::size_t> dims() const;

private:
    std::vector<Subspace> words_;
};

inline constexpr std::uint64_t kPairBudget = 10'000'000;

struct CodeParams {
    std::size_t n = 0;
    std::size_t size = 0;
    std::optional<std::size_t> d;  // absent for a single codeword
    /// False when d came from sampled pairs; it is then only an upper bound on the true d.
    bool d_exhaustive = true;
    std::set<std::size_t> dims;
    std::uint32_t q = 0;
    bool constant_dimension() const noexcept { return dims.size() == 1; }
};

/// Exact minimum distance over all unordered pairs. Throws DegenerateCode for a
/// single codeword and PairBudgetExceeded when the pair count exceeds the budget.
std::size_t minimum_distance(const SubspaceCode& code, std::uint64_t pair_budget = kPairBudget);

/// Parameters with exact d; d is absent for size 1. Throws PairBudgetExceeded.
CodeParams params(const SubspaceCode& code, std::uint64_t pair_budget = kPairBudget);

/// Like params, but over budget it takes the minimum over `pair_budget` random
/// distinct pairs and clears d_exhaustive.
CodeParams estimate_params(const SubspaceCode& code, std::uint64_t pair_budget = kPairBudget, std::uint64_t seed = 0);

struct CodeLcdVerdict {
    bool lcd = true;
    /// False when only a random subset of off-diagonal pairs was examined.
    bool exhaustive = true;
    /// Lexicographically first ordered pair (i, j) with C_i ∩ C_j^⊥ nontrivial.
    std::optional<std::pair<std::size_t, std::size_t>> witness;
    std::uint64_t pairs_checked = 0;
};

/// C_i ∩ C_j^⊥ = {0} for every ordered pair, including i = j. Over budget, all
/// diagonal pairs plus `pair_budget` random ordered pairs are checked.
CodeLcdVerdict is_lcd_subspace_code(const SubspaceCode& code, std::uint64_t pair_budget = kPairBudget,
                                    std::uint64_t seed = 0);

struct DecodeOutcome {
    std::optional<std::size_t> index;  // empty means failure (tie)
    std::size_t distance = 0;          // smallest distance reached
    std::vector<std::size_t> distances;

    bool failed() const noexcept { return !index; }
    bool operator==(const DecodeOutcome&) const = default;
};

/// Closest codeword by direct distance computation; any tie is a failure.
DecodeOutcome decode_naive(const SubspaceCode& code, const Subspace& received);

/// Decoder based on the projections onto C_i^⊥ along C_i. Needs every codeword to
/// be an LCD subspace; the projectors are computed once.
class ProjectionDecoder {
public:
    /// Throws NotLCDCode when some codeword meets its dual.
    explicit ProjectionDecoder(const SubspaceCode& code);

    DecodeOutcome decode(const Subspace& received) const;
    /// Received word given by generators (not necessarily independent).
    DecodeOutcome decode(const MatrixFq& generators) const;

    const MatrixFq& projector(std::size_t i) const noexcept { return projectors_[i]; }
    std::size_t size() const noexcept { return dims_.size(); }

private:
    DecodeOutcome decode_generators(const MatrixFq& g, std::size_t received_dim) const;

    FieldPtr field_;
    std::size_t n_ = 0;
    std::vector<std::size_t> dims_;
    std::vector<MatrixFq> projectors_;
};

DecodeOutcome decode_projection(const SubspaceCode& code, const Subspace& received);

/// det(G G^T) != 0 for a full-row-rank generator matrix. Throws RankDeficient.
bool classical_lcd_check(const MatrixFq& g);

}  // namespace lcdsub
