#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lcdsub/int_matrix.hpp"

namespace lcdsub {

/// p[i][j][k] for i, j, k in 0..d, stored flat.
class IntersectionTensor {
public:
    IntersectionTensor() = default;
    explicit IntersectionTensor(std::size_t classes) : d_(classes), data_((classes + 1) * (classes + 1) * (classes + 1)) {}

    std::size_t classes() const noexcept { return d_; }
    std::int64_t operator()(std::size_t i, std::size_t j, std::size_t k) const noexcept { return data_[idx(i, j, k)]; }
    std::int64_t& operator()(std::size_t i, std::size_t j, std::size_t k) noexcept { return data_[idx(i, j, k)]; }
    /// k_i = p_{i,i}^0.
    std::int64_t valency(std::size_t i) const noexcept { return (*this)(i, i, 0); }
    bool operator==(const IntersectionTensor&) const = default;

private:
    std::size_t idx(std::size_t i, std::size_t j, std::size_t k) const noexcept {
        return (i * (d_ + 1) + j) * (d_ + 1) + k;
    }
    std::size_t d_ = 0;
    std::vector<std::int64_t> data_;
};

/// Symmetric association scheme given by its relation matrices A_0 = I, A_1, ..., A_d.
class AssociationScheme {
public:
    /// Checks the axioms exhaustively and derives the intersection numbers. Throws
    /// DimensionMismatch, NotAPartition, MissingIdentity, NotSymmetric or NotClosed.
    static AssociationScheme from_matrices(std::vector<IntMatrix> mats);

    std::size_t point_count() const noexcept { return mats_.front().rows(); }
    std::size_t class_count() const noexcept { return mats_.size() - 1; }
    const IntMatrix& adjacency(std::size_t i) const noexcept { return mats_[i]; }
    const std::vector<IntMatrix>& matrices() const noexcept { return mats_; }
    const IntersectionTensor& tensor() const noexcept { return p_; }
    std::int64_t p(std::size_t i, std::size_t j, std::size_t k) const noexcept { return p_(i, j, k); }
    /// Relation index of the pair (u, v).
    std::size_t relation(std::size_t u, std::size_t v) const noexcept { return relation_[u * point_count() + v]; }

private:
    std::vector<IntMatrix> mats_;
    std::vector<std::uint16_t> relation_;
    IntersectionTensor p_;
};

/// Ordered list of disjoint cells covering {0..n-1}. Cell order is kept as given
/// (it fixes the row/column order of quotient matrices); each cell is sorted.
class Partition {
public:
    /// Throws IndexOutOfRange for entries >= n and NotAPartition for overlaps, gaps or empty cells.
    static Partition from_cells(std::vector<std::vector<std::size_t>> cells, std::size_t n);
    static Partition singleton(std::size_t n);
    static Partition one_cell(std::size_t n);

    std::size_t point_count() const noexcept { return cell_of_.size(); }
    std::size_t cell_count() const noexcept { return cells_.size(); }
    const std::vector<std::vector<std::size_t>>& cells() const noexcept { return cells_; }
    std::size_t cell_of(std::size_t v) const noexcept { return cell_of_[v]; }
    bool equal_cells() const noexcept;
    /// n x t 0/1 matrix H whose column j indicates cell j.
    IntMatrix char_matrix() const;

private:
    std::vector<std::vector<std::size_t>> cells_;
    std::vector<std::size_t> cell_of_;
};

struct EquitableCheck {
    bool ok = true;
    /// First failure: matrix index, the two cells, and whether a row or column sum varied.
    std::optional<std::string> witness;
};

/// Every block A[cell_a, cell_b] has constant row sums and constant column sums, for
/// every matrix given. Throws IndexOutOfRange when sizes disagree.
EquitableCheck verify_equitable(const Partition& part, const std::vector<IntMatrix>& mats);

struct QuotientSet {
    std::vector<IntMatrix> m;
    bool equal_cells = false;
};

/// M_i = (H^T H)^{-1} H^T A_i H, with A_i H = H M_i checked afterwards. Throws
/// NotEquitable or NonIntegralQuotient.
QuotientSet quotient_matrices(const Partition& part, const std::vector<IntMatrix>& mats);

struct AlgebraCheck {
    bool ok = true;
    std::optional<std::string> witness;  // "i,j" of the first failing product
};

/// M_i M_j = sum_k p_{i,j}^k M_k over the integers, for all i, j.
AlgebraCheck verify_quotient_algebra(const IntersectionTensor& p, const QuotientSet& q);

inline constexpr std::size_t kMaxScreenClasses = 20;

/// Maximal sets I of relation indices with p | p_{i,j}^k for all i, j in I and all k,
/// sorted lexicographically. Throws NotPrime or TooManyClasses.
std::vector<std::vector<std::size_t>> divisibility_screen(const IntersectionTensor& p, std::uint32_t prime);

}  // namespace lcdsub
