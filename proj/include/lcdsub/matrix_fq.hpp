#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lcdsub/field.hpp"
#include "lcdsub/int_matrix.hpp"

namespace lcdsub {

/// Dense row-major matrix over a finite field. Entries use the integer element encoding.
/// Zero-row matrices are allowed (they represent the empty generator list).
class MatrixFq {
public:
    using Elem = Field::Elem;

    MatrixFq() = default;
    MatrixFq(FieldPtr field, std::size_t rows, std::size_t cols);

    static MatrixFq identity(FieldPtr field, std::size_t n);
    /// Throws DimensionMismatch on ragged input, InvalidSpec on out-of-range entries.
    static MatrixFq from_rows(FieldPtr field, const std::vector<std::vector<Elem>>& rows, std::size_t cols = 0);

    const FieldPtr& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Elem operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
    Elem& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    std::span<const Elem> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }
    std::span<Elem> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
    const std::vector<Elem>& data() const noexcept { return data_; }
    std::vector<std::vector<Elem>> to_rows() const;

    bool is_zero() const noexcept;
    bool operator==(const MatrixFq& o) const noexcept;

    MatrixFq operator*(const MatrixFq& o) const;
    MatrixFq operator+(const MatrixFq& o) const;
    MatrixFq operator-(const MatrixFq& o) const;
    MatrixFq scaled(Elem s) const;
    MatrixFq transpose() const;
    /// Rows [first, first + count).
    MatrixFq row_range(std::size_t first, std::size_t count) const;

    std::string to_string() const;

private:
    FieldPtr field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Elem> data_;
};

MatrixFq vstack(const MatrixFq& top, const MatrixFq& bottom);
MatrixFq hstack(const MatrixFq& left, const MatrixFq& right);

/// v * M for a row vector v.
std::vector<Field::Elem> row_times(std::span<const Field::Elem> v, const MatrixFq& m);

struct RrefResult {
    MatrixFq reduced;
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
};

/// Unique reduced row echelon form (zero rows kept at the bottom).
RrefResult rref(const MatrixFq& m);
std::size_t rank(const MatrixFq& m);
/// Throws DimensionMismatch for non-square input.
Field::Elem det(const MatrixFq& m);
/// Basis of {x : A x = 0}, returned as the rows of an RREF matrix.
MatrixFq kernel(const MatrixFq& a);
/// One solution of A x = b, or nothing when the system is inconsistent.
std::optional<std::vector<Field::Elem>> solve(const MatrixFq& a, std::span<const Field::Elem> b);
std::optional<MatrixFq> inverse(const MatrixFq& m);

/// Entry-wise image of an integer matrix in F_q (k -> k mod p).
MatrixFq reduce_mod(const IntMatrix& a, const FieldPtr& field);

}  // namespace lcdsub
