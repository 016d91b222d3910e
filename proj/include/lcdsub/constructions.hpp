#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lcdsub/codes.hpp"
#include "lcdsub/drg.hpp"
#include "lcdsub/hadamard.hpp"
#include "lcdsub/matrix_fq.hpp"
#include "lcdsub/schemes.hpp"

namespace lcdsub {

/// Linearly independent spanning set of the (non-unital) algebra generated by some
/// t x t matrices: the identity is present only when some product produces it.
struct AlgebraBasis {
    FieldPtr field;
    std::size_t t = 0;
    std::vector<MatrixFq> basis;

    std::size_t dim() const noexcept { return basis.size(); }
};

inline constexpr std::size_t kMaxAlgebraDim = 64;

/// Closes the span of the generators under products. Throws InvalidSpec (no
/// generators), DimensionMismatch, FieldMismatch, EmptyAlgebra (every generator is
/// zero) or DimensionBlowup (dimension above max_dim).
AlgebraBasis algebra_closure(const std::vector<MatrixFq>& generators, std::size_t max_dim = kMaxAlgebraDim);

/// Exact span membership.
bool algebra_contains(const AlgebraBasis& a, const MatrixFq& m);

/// [X | alpha I_t]. Throws ZeroAlpha or DimensionMismatch (X not square).
MatrixFq build_block(const MatrixFq& x, Field::Elem alpha);

struct ClassicalReport {
    MatrixFq generator;  // [M_i | alpha I_t]
    std::size_t n = 0;
    std::size_t k = 0;
    std::uint32_t q = 0;
    Field::Elem gram_det = 0;
    bool lcd = false;
};

/// Single relation i with p | p_{i,i}^k for every k: [M_i | alpha I] spans a [2t, t]
/// LCD code. Throws UnequalCells, DivisibilityFails, IndexOutOfRange, NotEquitable,
/// ZeroAlpha, or NotLCD when the check disagrees.
ClassicalReport lcd_code_thm42(const AssociationScheme& scheme, const Partition& part, std::size_t i,
                               std::uint32_t p, std::uint32_t r, Field::Elem alpha);

struct EnumerationOptions {
    /// Complete enumeration when q^a is at most this (and the codewords fit in memory).
    std::uint64_t cap = 1u << 20;
    std::uint64_t sample = 10'000;
    std::uint64_t seed = 0;
    /// Also run over every alpha. The resulting codeword set is identical.
    bool alpha_sweep = false;
    /// Adds [0 | alpha I] to the code.
    bool include_zero_x = false;
    std::uint64_t pair_budget = kPairBudget;
};

struct HypothesisCheck {
    std::string name;
    std::string detail;
};

struct ConstructionReport {
    explicit ConstructionReport(SubspaceCode c) : code(std::move(c)) {}

    SubspaceCode code;
    CodeParams params;
    std::string pipeline;  // "thm43", "cor45", ... or empty for the bare engine
    std::string source;
    std::uint32_t p = 0;
    std::uint32_t r = 0;
    std::size_t t = 0;
    std::size_t algebra_dim = 0;
    std::vector<HypothesisCheck> hypotheses;  // every entry passed
    bool lcd_verified = false;
    bool lcd_exhaustive = false;
    bool enumeration_complete = false;
    /// (X, alpha) pairs formed, and distinct row spaces with and without the zero X.
    std::uint64_t pairs_formed = 0;
    std::size_t classes_nonzero_x = 0;
    std::size_t classes_with_zero_x = 0;
    /// 2 * min rank over enumerated nonzero X; equals d for complete enumerations.
    std::optional<std::size_t> min_rank_distance;
    /// X Y^T = 0 over the whole algebra, checked on basis pairs.
    bool block_identity = false;
    std::uint64_t block_pairs_checked = 0;
};

/// Row spaces of [X | alpha I] over the nonzero algebra elements X, followed by an
/// independent LCD check of the result. Throws NotLCDCode (witness "i,j") when the
/// check fails.
ConstructionReport subspace_code_from_algebra(const AlgebraBasis& basis, const EnumerationOptions& opt = {});

struct IdentityCheck {
    std::string name;
    bool ok = false;
};

struct MurhScheme {
    AssociationScheme scheme;  // I, B_1, B_2, B_3
    std::vector<IdentityCheck> identities;
};

/// 3-class scheme of the B-matrices with its five product equalities. Throws IdentityFails.
MurhScheme murh_scheme(const GramianB& g);

struct BushSchemes {
    AssociationScheme five;
    AssociationScheme eight;
    std::vector<IdentityCheck> identities;
};

/// 5-class and 8-class schemes of a Bush-type unbiased family, with every product
/// identity checked over the integers. Throws NotBushType, IdentityFails, or what
/// gramian_b throws.
BushSchemes bush_schemes(const UnbiasedSet& set);

/// Cells of `cell` consecutive points: the Kronecker sub-block partition of the
/// Bush schemes when cell = 2n.
Partition consecutive_partition(std::size_t points, std::size_t cell);

struct PipelineOptions {
    std::uint32_t p = 2;
    std::uint32_t r = 1;
    EnumerationOptions enumeration;
};

/// The pipelines check their hypotheses first (HypothesisFailed with the hypothesis
/// name as witness), then reduce the generators mod p, close the algebra, build the
/// code, and verify it is LCD by intersection computations.

/// Scheme, equitable partition with equal cells, index set I with p | p_{i,j}^k.
ConstructionReport thm43(const AssociationScheme& scheme, const Partition& part, const std::vector<std::size_t>& index_set,
                         const PipelineOptions& opt);

/// Distance-regular graph with the orbit partition of a group having equal orbits.
ConstructionReport cor45(const Graph& g, const PermutationGroup& group, const std::vector<std::size_t>& index_set,
                         const PipelineOptions& opt);

/// Unbiased Hadamard family, p | sqrt(n).
ConstructionReport thm51(const UnbiasedSet& set, const PipelineOptions& opt);
/// Unbiased weighing family, p | sqrt(k).
ConstructionReport thm52(const UnbiasedSet& set, const PipelineOptions& opt);
/// Quotients of an unbiased Hadamard family under an equitable equal-cell partition.
ConstructionReport thm54(const UnbiasedSet& set, const Partition& part, const PipelineOptions& opt);
/// Same for weighing matrices.
ConstructionReport thm55(const UnbiasedSet& set, const Partition& part, const PipelineOptions& opt);
/// Regular Hadamard family, partition of the 3-class scheme points, p | n/2, generators M_1, M_2.
ConstructionReport thm56(const UnbiasedSet& set, const Partition& part, const PipelineOptions& opt);
/// Bush-type family, partition of the 5-class scheme points, p | n/2, generators M_2..M_5.
ConstructionReport thm58(const UnbiasedSet& set, const Partition& part, const PipelineOptions& opt);
/// Bush-type family, partition of the 8-class scheme points, p | n, generators M_3..M_7.
ConstructionReport thm59(const UnbiasedSet& set, const Partition& part, const PipelineOptions& opt);

}  // namespace lcdsub
