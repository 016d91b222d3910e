#include "lcdsub/matrix_fq.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "lcdsub/error.hpp"

namespace lcdsub {

namespace {

void require_shape(bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::DimensionMismatch, what);
}

// F_2 elimination on bit-packed rows.
RrefResult rref_binary(const MatrixFq& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    const std::size_t words = (cols + 63) / 64;
    std::vector<std::uint64_t> bits(rows * words, 0);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (m(i, j)) bits[i * words + j / 64] |= std::uint64_t{1} << (j % 64);

    RrefResult out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        const std::size_t w = c / 64;
        const std::uint64_t mask = std::uint64_t{1} << (c % 64);
        std::size_t piv = r;
        while (piv < rows && !(bits[piv * words + w] & mask)) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            std::swap_ranges(bits.begin() + static_cast<std::ptrdiff_t>(piv * words),
                             bits.begin() + static_cast<std::ptrdiff_t>((piv + 1) * words),
                             bits.begin() + static_cast<std::ptrdiff_t>(r * words));
        const std::uint64_t* prow = bits.data() + r * words;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || !(bits[i * words + w] & mask)) continue;
            std::uint64_t* dst = bits.data() + i * words;
            for (std::size_t k = w; k < words; ++k) dst[k] ^= prow[k];
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.rank = r;
    out.reduced = MatrixFq(m.field(), rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            out.reduced(i, j) = (bits[i * words + j / 64] >> (j % 64)) & 1u;
    return out;
}

}  // namespace

MatrixFq::MatrixFq(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

MatrixFq MatrixFq::identity(FieldPtr field, std::size_t n) {
    MatrixFq m(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

MatrixFq MatrixFq::from_rows(FieldPtr field, const std::vector<std::vector<Elem>>& rows, std::size_t cols) {
    if (!rows.empty()) cols = rows.front().size();
    MatrixFq m(field, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        require_shape(rows[i].size() == cols, "ragged rows");
        for (std::size_t j = 0; j < cols; ++j) {
            if (rows[i][j] >= field->order())
                throw Error(ErrorCode::InvalidSpec, "entry " + std::to_string(rows[i][j]) + " outside " + field->name());
            m(i, j) = rows[i][j];
        }
    }
    return m;
}

std::vector<std::vector<MatrixFq::Elem>> MatrixFq::to_rows() const {
    std::vector<std::vector<Elem>> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i].assign(row(i).begin(), row(i).end());
    return out;
}

bool MatrixFq::is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](Elem e) { return e == 0; });
}

bool MatrixFq::operator==(const MatrixFq& o) const noexcept {
    return rows_ == o.rows_ && cols_ == o.cols_ && same_field(field_, o.field_) && data_ == o.data_;
}

MatrixFq MatrixFq::operator*(const MatrixFq& o) const {
    require_same_field(field_, o.field_);
    require_shape(cols_ == o.rows_, "matrix product shape");
    const Field& f = *field_;
    MatrixFq out(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Elem* dst = out.data_.data() + i * o.cols_;
        for (std::size_t k = 0; k < cols_; ++k) {
            const Elem a = (*this)(i, k);
            if (a == 0) continue;
            const Elem* src = o.data_.data() + k * o.cols_;
            for (std::size_t j = 0; j < o.cols_; ++j)
                if (src[j]) dst[j] = f.add(dst[j], f.mul(a, src[j]));
        }
    }
    return out;
}

MatrixFq MatrixFq::operator+(const MatrixFq& o) const {
    require_same_field(field_, o.field_);
    require_shape(rows_ == o.rows_ && cols_ == o.cols_, "matrix sum shape");
    MatrixFq out(field_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_->add(data_[i], o.data_[i]);
    return out;
}

MatrixFq MatrixFq::operator-(const MatrixFq& o) const {
    require_same_field(field_, o.field_);
    require_shape(rows_ == o.rows_ && cols_ == o.cols_, "matrix difference shape");
    MatrixFq out(field_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_->sub(data_[i], o.data_[i]);
    return out;
}

MatrixFq MatrixFq::scaled(Elem s) const {
    MatrixFq out(field_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_->mul(data_[i], s);
    return out;
}

MatrixFq MatrixFq::transpose() const {
    MatrixFq t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

MatrixFq MatrixFq::row_range(std::size_t first, std::size_t count) const {
    require_shape(first + count <= rows_, "row range");
    MatrixFq out(field_, count, cols_);
    std::copy(data_.begin() + static_cast<std::ptrdiff_t>(first * cols_),
              data_.begin() + static_cast<std::ptrdiff_t>((first + count) * cols_), out.data_.begin());
    return out;
}

std::string MatrixFq::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
        os << '\n';
    }
    return os.str();
}

MatrixFq vstack(const MatrixFq& top, const MatrixFq& bottom) {
    require_same_field(top.field(), bottom.field());
    require_shape(top.cols() == bottom.cols(), "vstack column count");
    MatrixFq out(top.field(), top.rows() + bottom.rows(), top.cols());
    for (std::size_t i = 0; i < top.rows(); ++i) std::ranges::copy(top.row(i), out.row(i).begin());
    for (std::size_t i = 0; i < bottom.rows(); ++i) std::ranges::copy(bottom.row(i), out.row(top.rows() + i).begin());
    return out;
}

MatrixFq hstack(const MatrixFq& left, const MatrixFq& right) {
    require_same_field(left.field(), right.field());
    require_shape(left.rows() == right.rows(), "hstack row count");
    MatrixFq out(left.field(), left.rows(), left.cols() + right.cols());
    for (std::size_t i = 0; i < left.rows(); ++i) {
        std::ranges::copy(left.row(i), out.row(i).begin());
        std::ranges::copy(right.row(i), out.row(i).begin() + static_cast<std::ptrdiff_t>(left.cols()));
    }
    return out;
}

std::vector<Field::Elem> row_times(std::span<const Field::Elem> v, const MatrixFq& m) {
    require_shape(v.size() == m.rows(), "row vector length");
    const Field& f = *m.field();
    std::vector<Field::Elem> out(m.cols(), 0);
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] == 0) continue;
        const auto r = m.row(k);
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (r[j]) out[j] = f.add(out[j], f.mul(v[k], r[j]));
    }
    return out;
}

RrefResult rref(const MatrixFq& m) {
    if (m.field() && m.field()->is_binary()) return rref_binary(m);
    RrefResult out;
    out.reduced = m;
    MatrixFq& a = out.reduced;
    if (m.rows() == 0) return out;
    const Field& f = *m.field();
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a(piv, c) == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r) std::swap_ranges(a.row(piv).begin(), a.row(piv).end(), a.row(r).begin());
        const auto prow = a.row(r);
        const Field::Elem pinv = f.inv(prow[c]);
        for (std::size_t j = c; j < cols; ++j) prow[j] = f.mul(prow[j], pinv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const Field::Elem factor = a(i, c);
            if (factor == 0) continue;
            auto dst = a.row(i);
            for (std::size_t j = c; j < cols; ++j)
                if (prow[j]) dst[j] = f.sub(dst[j], f.mul(factor, prow[j]));
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.rank = r;
    return out;
}

std::size_t rank(const MatrixFq& m) { return rref(m).rank; }

Field::Elem det(const MatrixFq& m) {
    require_shape(m.rows() == m.cols(), "determinant of non-square matrix");
    if (m.rows() == 0) return 1;
    const Field& f = *m.field();
    MatrixFq a = m;
    const std::size_t n = a.rows();
    Field::Elem d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a(piv, c) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap_ranges(a.row(piv).begin(), a.row(piv).end(), a.row(c).begin());
            d = f.neg(d);
        }
        const Field::Elem p = a(c, c);
        d = f.mul(d, p);
        const Field::Elem pinv = f.inv(p);
        for (std::size_t i = c + 1; i < n; ++i) {
            const Field::Elem factor = f.mul(a(i, c), pinv);
            if (factor == 0) continue;
            for (std::size_t j = c; j < n; ++j) a(i, j) = f.sub(a(i, j), f.mul(factor, a(c, j)));
        }
    }
    return d;
}

MatrixFq kernel(const MatrixFq& a) {
    const RrefResult rr = rref(a);
    const std::size_t n = a.cols();
    const Field& f = *a.field();
    std::vector<bool> is_pivot(n, false);
    for (auto c : rr.pivots) is_pivot[c] = true;
    MatrixFq basis(a.field(), n - rr.rank, n);
    std::size_t b = 0;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        basis(b, free) = 1;
        for (std::size_t i = 0; i < rr.rank; ++i) basis(b, rr.pivots[i]) = f.neg(rr.reduced(i, free));
        ++b;
    }
    return rref(basis).reduced;
}

std::optional<std::vector<Field::Elem>> solve(const MatrixFq& a, std::span<const Field::Elem> b) {
    require_shape(b.size() == a.rows(), "right-hand side length");
    MatrixFq aug(a.field(), a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::ranges::copy(a.row(i), aug.row(i).begin());
        aug(i, a.cols()) = b[i];
    }
    const RrefResult rr = rref(aug);
    if (!rr.pivots.empty() && rr.pivots.back() == a.cols()) return std::nullopt;
    std::vector<Field::Elem> x(a.cols(), 0);
    for (std::size_t i = 0; i < rr.rank; ++i) x[rr.pivots[i]] = rr.reduced(i, a.cols());
    return x;
}

std::optional<MatrixFq> inverse(const MatrixFq& m) {
    require_shape(m.rows() == m.cols(), "inverse of non-square matrix");
    const std::size_t n = m.rows();
    const RrefResult rr = rref(hstack(m, MatrixFq::identity(m.field(), n)));
    if (rr.rank < n || (n > 0 && rr.pivots[n - 1] != n - 1)) return std::nullopt;
    MatrixFq inv(m.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = rr.reduced(i, n + j);
    return inv;
}

MatrixFq reduce_mod(const IntMatrix& a, const FieldPtr& field) {
    MatrixFq out(field, a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = field->from_int(a(i, j));
    return out;
}

}  // namespace lcdsub
