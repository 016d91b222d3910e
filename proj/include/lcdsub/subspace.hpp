#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lcdsub/matrix_fq.hpp"

namespace lcdsub {

using Vector = std::vector<Field::Elem>;

/// Subspace of F_q^n held by its canonical basis: the nonzero rows of the RREF of any
/// generator matrix. Two subspaces are equal iff their bases are equal entry-for-entry,
/// which also gives a total order usable for deduplication.
class Subspace {
public:
    static Subspace span(const FieldPtr& field, std::size_t n, const std::vector<Vector>& vectors);
    static Subspace row_space(const MatrixFq& generators);
    static Subspace zero(const FieldPtr& field, std::size_t n);
    static Subspace full(const FieldPtr& field, std::size_t n);

    const FieldPtr& field() const noexcept { return basis_.field(); }
    std::size_t ambient_dim() const noexcept { return basis_.cols(); }
    std::size_t dim() const noexcept { return basis_.rows(); }
    const MatrixFq& basis() const noexcept { return basis_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

    bool contains(std::span<const Field::Elem> v) const;
    bool contains(const Subspace& other) const;

    bool operator==(const Subspace& o) const noexcept { return basis_ == o.basis_; }
    std::strong_ordering operator<=>(const Subspace& o) const noexcept;

private:
    Subspace(MatrixFq basis, std::vector<std::size_t> pivots);

    MatrixFq basis_;
    std::vector<std::size_t> pivots_;
};

/// Throws AmbientMismatch (or FieldMismatch) when the operands live in different spaces.
void require_same_ambient(const Subspace& u, const Subspace& w);

Subspace sum(const Subspace& u, const Subspace& w);
/// U ∩ W computed as (U^⊥ + W^⊥)^⊥.
Subspace intersect(const Subspace& u, const Subspace& w);
Subspace dual(const Subspace& u);
/// dim(U ∩ W) from the dimension formula, without materialising the intersection.
std::size_t intersection_dim(const Subspace& u, const Subspace& w);

/// Subspace metric dim(U + W) - dim(U ∩ W).
std::size_t distance(const Subspace& u, const Subspace& w);

struct LcdCheck {
    bool lcd = false;
    Field::Elem gram_det = 0;  // det(G G^T)
};

/// Decides U ∩ U^⊥ = {0} by the Gram determinant and cross-checks it against the
/// intersection dimension; a disagreement throws InternalInconsistency.
LcdCheck is_lcd(const Subspace& u);

struct PairwiseLcd {
    bool lcd = false;
    std::size_t u_cap_w_dual = 0;  // dim(U ∩ W^⊥)
    std::size_t w_cap_u_dual = 0;  // dim(W ∩ U^⊥)
    /// det(G_W G_U^T) != 0, reported only when dim U = dim W.
    std::optional<bool> gram_nonsingular;
};

/// Both U ∩ W^⊥ and W ∩ U^⊥ trivial, decided by intersection dimensions.
PairwiseLcd pairwise_lcd(const Subspace& u, const Subspace& w);
/// Same decision with the duals already at hand (used by code-level loops).
PairwiseLcd pairwise_lcd(const Subspace& u, const Subspace& u_dual, const Subspace& w, const Subspace& w_dual);

/// Matrix P with v P = projection of v onto U^⊥ along U (row-vector convention).
/// Throws NotLCD when F_q^n is not U ⊕ U^⊥.
MatrixFq projector_complement(const Subspace& u);

}  // namespace lcdsub
