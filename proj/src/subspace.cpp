#include "lcdsub/subspace.hpp"

#include <algorithm>

#include "lcdsub/error.hpp"

namespace lcdsub {

Subspace::Subspace(MatrixFq basis, std::vector<std::size_t> pivots) : basis_(std::move(basis)), pivots_(std::move(pivots)) {}

Subspace Subspace::row_space(const MatrixFq& generators) {
    RrefResult rr = rref(generators);
    return Subspace(rr.reduced.row_range(0, rr.rank), std::move(rr.pivots));
}

Subspace Subspace::span(const FieldPtr& field, std::size_t n, const std::vector<Vector>& vectors) {
    MatrixFq m(field, vectors.size(), n);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != n)
            throw Error(ErrorCode::DimensionMismatch,
                        "vector of length " + std::to_string(vectors[i].size()) + " in F_q^" + std::to_string(n));
        for (std::size_t j = 0; j < n; ++j) {
            if (vectors[i][j] >= field->order()) throw Error(ErrorCode::InvalidSpec, "entry outside " + field->name());
            m(i, j) = vectors[i][j];
        }
    }
    return row_space(m);
}

Subspace Subspace::zero(const FieldPtr& field, std::size_t n) { return Subspace(MatrixFq(field, 0, n), {}); }

Subspace Subspace::full(const FieldPtr& field, std::size_t n) {
    std::vector<std::size_t> piv(n);
    for (std::size_t i = 0; i < n; ++i) piv[i] = i;
    return Subspace(MatrixFq::identity(field, n), std::move(piv));
}

bool Subspace::contains(std::span<const Field::Elem> v) const {
    if (v.size() != ambient_dim()) throw Error(ErrorCode::AmbientMismatch, "vector length differs from ambient dimension");
    const Field& f = *field();
    Vector w(v.begin(), v.end());
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
        const Field::Elem c = w[pivots_[i]];
        if (c == 0) continue;
        const auto b = basis_.row(i);
        for (std::size_t j = pivots_[i]; j < w.size(); ++j)
            if (b[j]) w[j] = f.sub(w[j], f.mul(c, b[j]));
    }
    return std::all_of(w.begin(), w.end(), [](Field::Elem e) { return e == 0; });
}

bool Subspace::contains(const Subspace& other) const {
    require_same_ambient(*this, other);
    for (std::size_t i = 0; i < other.dim(); ++i)
        if (!contains(other.basis().row(i))) return false;
    return true;
}

std::strong_ordering Subspace::operator<=>(const Subspace& o) const noexcept {
    if (auto c = ambient_dim() <=> o.ambient_dim(); c != 0) return c;
    if (auto c = dim() <=> o.dim(); c != 0) return c;
    const auto& a = basis_.data();
    const auto& b = o.basis_.data();
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

void require_same_ambient(const Subspace& u, const Subspace& w) {
    require_same_field(u.field(), w.field());
    if (u.ambient_dim() != w.ambient_dim())
        throw Error(ErrorCode::AmbientMismatch,
                    "F_q^" + std::to_string(u.ambient_dim()) + " vs F_q^" + std::to_string(w.ambient_dim()));
}

Subspace sum(const Subspace& u, const Subspace& w) {
    require_same_ambient(u, w);
    return Subspace::row_space(vstack(u.basis(), w.basis()));
}

Subspace dual(const Subspace& u) {
    if (u.dim() == 0) return Subspace::full(u.field(), u.ambient_dim());
    return Subspace::row_space(kernel(u.basis()));
}

Subspace intersect(const Subspace& u, const Subspace& w) {
    require_same_ambient(u, w);
    return dual(sum(dual(u), dual(w)));
}

std::size_t intersection_dim(const Subspace& u, const Subspace& w) {
    require_same_ambient(u, w);
    return u.dim() + w.dim() - rank(vstack(u.basis(), w.basis()));
}

std::size_t distance(const Subspace& u, const Subspace& w) {
    require_same_ambient(u, w);
    const std::size_t s = rank(vstack(u.basis(), w.basis()));
    const std::size_t i = u.dim() + w.dim() - s;
    return s - i;
}

LcdCheck is_lcd(const Subspace& u) {
    LcdCheck out;
    const MatrixFq& g = u.basis();
    out.gram_det = det(g * g.transpose());
    out.lcd = out.gram_det != 0;
    const bool trivial = intersection_dim(u, dual(u)) == 0;
    if (trivial != out.lcd)
        throw Error(ErrorCode::InternalInconsistency, "Gram determinant and U ∩ U^⊥ disagree");
    return out;
}

PairwiseLcd pairwise_lcd(const Subspace& u, const Subspace& u_dual, const Subspace& w, const Subspace& w_dual) {
    require_same_ambient(u, w);
    PairwiseLcd out;
    out.u_cap_w_dual = intersection_dim(u, w_dual);
    out.w_cap_u_dual = &u == &w ? out.u_cap_w_dual : intersection_dim(w, u_dual);
    out.lcd = out.u_cap_w_dual == 0 && out.w_cap_u_dual == 0;
    if (u.dim() == w.dim()) {
        out.gram_nonsingular = det(w.basis() * u.basis().transpose()) != 0;
        if (*out.gram_nonsingular && !out.lcd)
            throw Error(ErrorCode::InternalInconsistency, "nonsingular G_W G_U^T with a nontrivial intersection");
    }
    return out;
}

PairwiseLcd pairwise_lcd(const Subspace& u, const Subspace& w) { return pairwise_lcd(u, dual(u), w, dual(w)); }

MatrixFq projector_complement(const Subspace& u) {
    const std::size_t n = u.ambient_dim(), k = u.dim();
    const Subspace perp = dual(u);
    const MatrixFq stacked = vstack(u.basis(), perp.basis());
    const auto inv = inverse(stacked);
    if (!inv) throw Error(ErrorCode::NotLCD, "U ∩ U^⊥ is nontrivial; no projection onto U^⊥ along U");
    // v = c S with S = [G_U; G_perp]; the U^⊥ component is c[k..n) G_perp.
    MatrixFq lower_cols(u.field(), n, n - k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n - k; ++j) lower_cols(i, j) = (*inv)(i, k + j);
    return lower_cols * perp.basis();
}

}  // namespace lcdsub
