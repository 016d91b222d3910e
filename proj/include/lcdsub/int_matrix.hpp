#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace lcdsub {

/// Dense row-major matrix of 64-bit signed integers. Arithmetic that would overflow
/// throws Overflow instead of wrapping.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols, std::int64_t fill = 0);
    IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix ones(std::size_t rows, std::size_t cols);
    static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    std::int64_t operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
    std::int64_t& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    std::span<const std::int64_t> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }
    const std::vector<std::int64_t>& data() const noexcept { return data_; }

    IntMatrix transpose() const;
    bool is_symmetric() const noexcept;
    bool operator==(const IntMatrix& o) const noexcept = default;

    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix scaled(std::int64_t s) const;
    IntMatrix& operator+=(const IntMatrix& o);

    /// Copy of the block starting at (r0, c0).
    IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const IntMatrix& b);

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::int64_t> data_;
};

IntMatrix kron(const IntMatrix& a, const IntMatrix& b);
/// 2x2 block matrix [[a, b], [c, d]].
IntMatrix block2(const IntMatrix& a, const IntMatrix& b, const IntMatrix& c, const IntMatrix& d);

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

}  // namespace lcdsub
