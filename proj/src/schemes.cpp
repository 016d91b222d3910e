#include "lcdsub/schemes.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

#include "lcdsub/error.hpp"
#include "lcdsub/field.hpp"

namespace lcdsub {

namespace {

std::string pair_str(std::size_t a, std::size_t b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

}  // namespace

AssociationScheme AssociationScheme::from_matrices(std::vector<IntMatrix> mats) {
    if (mats.empty()) throw Error(ErrorCode::NotAPartition, "no relation matrices");
    const std::size_t n = mats.front().rows();
    for (std::size_t i = 0; i < mats.size(); ++i)
        if (mats[i].rows() != n || mats[i].cols() != n)
            throw Error(ErrorCode::DimensionMismatch, "relation " + std::to_string(i) + " is not " + std::to_string(n) +
                                                          "x" + std::to_string(n));
    if (mats.size() > 0xffff) throw Error(ErrorCode::TooManyClasses, "too many relations");

    AssociationScheme s;
    s.relation_.assign(n * n, 0xffff);
    for (std::size_t i = 0; i < mats.size(); ++i) {
        bool nonempty = false;
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v) {
                const auto e = mats[i](u, v);
                if (e != 0 && e != 1)
                    throw Error(ErrorCode::NotAPartition, "relation " + std::to_string(i) + " has a non 0/1 entry",
                                pair_str(u, v));
                if (!e) continue;
                if (s.relation_[u * n + v] != 0xffff)
                    throw Error(ErrorCode::NotAPartition,
                                "pair " + pair_str(u, v) + " lies in relations " +
                                    std::to_string(s.relation_[u * n + v]) + " and " + std::to_string(i),
                                pair_str(u, v));
                s.relation_[u * n + v] = static_cast<std::uint16_t>(i);
                nonempty = true;
            }
        if (!nonempty) throw Error(ErrorCode::NotAPartition, "relation " + std::to_string(i) + " is empty");
    }
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            if (s.relation_[u * n + v] == 0xffff)
                throw Error(ErrorCode::NotAPartition, "pair " + pair_str(u, v) + " is in no relation", pair_str(u, v));
    if (mats[0] != IntMatrix::identity(n)) throw Error(ErrorCode::MissingIdentity, "A_0 is not the identity");
    for (std::size_t i = 0; i < mats.size(); ++i)
        if (!mats[i].is_symmetric()) throw Error(ErrorCode::NotSymmetric, "A_" + std::to_string(i) + " is not symmetric");

    const std::size_t d = mats.size() - 1;
    // One representative pair per relation for reading off coefficients.
    std::vector<std::pair<std::size_t, std::size_t>> rep(d + 1);
    std::vector<bool> seen(d + 1, false);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            if (auto r = s.relation_[u * n + v]; !seen[r]) {
                seen[r] = true;
                rep[r] = {u, v};
            }

    s.p_ = IntersectionTensor(d);
    for (std::size_t i = 0; i <= d; ++i)
        for (std::size_t j = i; j <= d; ++j) {
            const IntMatrix prod = mats[i] * mats[j];
            for (std::size_t k = 0; k <= d; ++k) s.p_(i, j, k) = s.p_(j, i, k) = prod(rep[k].first, rep[k].second);
            for (std::size_t u = 0; u < n; ++u)
                for (std::size_t v = 0; v < n; ++v) {
                    const std::size_t k = s.relation_[u * n + v];
                    if (prod(u, v) != s.p_(i, j, k))
                        throw Error(ErrorCode::NotClosed,
                                    "A_" + std::to_string(i) + " A_" + std::to_string(j) + " is not constant on relation " +
                                        std::to_string(k),
                                    std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k));
                }
        }

    // Independent count of common neighbours on a few pairs per relation.
    std::mt19937_64 rng(0x5eed);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> by_rel(d + 1);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) by_rel[s.relation_[u * n + v]].emplace_back(u, v);
    for (std::size_t k = 0; k <= d; ++k)
        for (int t = 0; t < 10; ++t) {
            const auto [u, v] = by_rel[k][rng() % by_rel[k].size()];
            std::vector<std::int64_t> counts((d + 1) * (d + 1), 0);
            for (std::size_t w = 0; w < n; ++w) ++counts[s.relation_[u * n + w] * (d + 1) + s.relation_[w * n + v]];
            for (std::size_t i = 0; i <= d; ++i)
                for (std::size_t j = 0; j <= d; ++j)
                    if (counts[i * (d + 1) + j] != s.p_(i, j, k))
                        throw Error(ErrorCode::InternalInconsistency, "product and counting disagree on p_{" +
                                                                          std::to_string(i) + "," + std::to_string(j) +
                                                                          "}^" + std::to_string(k));
        }
    s.mats_ = std::move(mats);
    return s;
}

Partition Partition::from_cells(std::vector<std::vector<std::size_t>> cells, std::size_t n) {
    Partition p;
    p.cell_of_.assign(n, SIZE_MAX);
    for (std::size_t c = 0; c < cells.size(); ++c) {
        if (cells[c].empty()) throw Error(ErrorCode::NotAPartition, "cell " + std::to_string(c) + " is empty");
        std::sort(cells[c].begin(), cells[c].end());
        for (auto v : cells[c]) {
            if (v >= n)
                throw Error(ErrorCode::IndexOutOfRange, "point " + std::to_string(v) + " outside 0.." + std::to_string(n - 1));
            if (p.cell_of_[v] != SIZE_MAX)
                throw Error(ErrorCode::NotAPartition, "point " + std::to_string(v) + " appears twice", std::to_string(v));
            p.cell_of_[v] = c;
        }
    }
    for (std::size_t v = 0; v < n; ++v)
        if (p.cell_of_[v] == SIZE_MAX)
            throw Error(ErrorCode::NotAPartition, "point " + std::to_string(v) + " is in no cell", std::to_string(v));
    p.cells_ = std::move(cells);
    return p;
}

Partition Partition::singleton(std::size_t n) {
    std::vector<std::vector<std::size_t>> cells(n);
    for (std::size_t v = 0; v < n; ++v) cells[v] = {v};
    return from_cells(std::move(cells), n);
}

Partition Partition::one_cell(std::size_t n) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    return from_cells({all}, n);
}

bool Partition::equal_cells() const noexcept {
    return std::all_of(cells_.begin(), cells_.end(), [&](const auto& c) { return c.size() == cells_.front().size(); });
}

IntMatrix Partition::char_matrix() const {
    IntMatrix h(point_count(), cell_count());
    for (std::size_t v = 0; v < point_count(); ++v) h(v, cell_of_[v]) = 1;
    return h;
}

EquitableCheck verify_equitable(const Partition& part, const std::vector<IntMatrix>& mats) {
    const std::size_t n = part.point_count(), t = part.cell_count();
    EquitableCheck out;
    for (std::size_t m = 0; m < mats.size(); ++m) {
        const IntMatrix& a = mats[m];
        if (a.rows() != n || a.cols() != n)
            throw Error(ErrorCode::IndexOutOfRange, "partition of " + std::to_string(n) + " points vs matrix of order " +
                                                        std::to_string(a.rows()));
        // row[u][b] = sum of A[u, cell b]; col[v][a] = sum of A[cell a, v].
        std::vector<std::int64_t> row(n * t, 0), col(n * t, 0);
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v)
                if (const auto e = a(u, v)) {
                    row[u * t + part.cell_of(v)] += e;
                    col[v * t + part.cell_of(u)] += e;
                }
        for (std::size_t ca = 0; ca < t; ++ca) {
            const auto& cell = part.cells()[ca];
            for (std::size_t cb = 0; cb < t; ++cb)
                for (std::size_t idx = 1; idx < cell.size(); ++idx) {
                    if (row[cell[idx] * t + cb] != row[cell[0] * t + cb]) {
                        out.ok = false;
                        out.witness = "matrix " + std::to_string(m) + ", block " + pair_str(ca, cb) + ", row sums differ";
                        return out;
                    }
                    // Column sums of block (cb, ca): columns in cell ca, rows in cell cb.
                    if (col[cell[idx] * t + cb] != col[cell[0] * t + cb]) {
                        out.ok = false;
                        out.witness = "matrix " + std::to_string(m) + ", block " + pair_str(cb, ca) + ", column sums differ";
                        return out;
                    }
                }
        }
    }
    return out;
}

QuotientSet quotient_matrices(const Partition& part, const std::vector<IntMatrix>& mats) {
    if (auto chk = verify_equitable(part, mats); !chk.ok)
        throw Error(ErrorCode::NotEquitable, "partition is not equitable", *chk.witness);
    const std::size_t t = part.cell_count();
    const IntMatrix h = part.char_matrix();
    const IntMatrix ht = h.transpose();
    QuotientSet out;
    out.equal_cells = part.equal_cells();
    for (std::size_t m = 0; m < mats.size(); ++m) {
        IntMatrix s = ht * mats[m] * h;  // block sums
        for (std::size_t a = 0; a < t; ++a) {
            const auto size = static_cast<std::int64_t>(part.cells()[a].size());
            for (std::size_t b = 0; b < t; ++b) {
                if (s(a, b) % size != 0)
                    throw Error(ErrorCode::NonIntegralQuotient, "block sum not divisible by the cell size",
                                std::to_string(m) + ":" + pair_str(a, b));
                s(a, b) /= size;
            }
        }
        if (mats[m] * h != h * s)
            throw Error(ErrorCode::InternalInconsistency, "A H != H M for matrix " + std::to_string(m));
        out.m.push_back(std::move(s));
    }
    return out;
}

AlgebraCheck verify_quotient_algebra(const IntersectionTensor& p, const QuotientSet& q) {
    const std::size_t d = p.classes();
    if (q.m.size() != d + 1)
        throw Error(ErrorCode::DimensionMismatch,
                    std::to_string(q.m.size()) + " quotients for " + std::to_string(d + 1) + " relations");
    AlgebraCheck out;
    for (std::size_t i = 0; i <= d; ++i)
        for (std::size_t j = 0; j <= d; ++j) {
            IntMatrix rhs(q.m[0].rows(), q.m[0].cols());
            for (std::size_t k = 0; k <= d; ++k)
                if (p(i, j, k)) rhs += q.m[k].scaled(p(i, j, k));
            if (q.m[i] * q.m[j] != rhs) {
                out.ok = false;
                out.witness = std::to_string(i) + "," + std::to_string(j);
                return out;
            }
        }
    return out;
}

namespace {

void bron_kerbosch(std::uint32_t r, std::uint32_t p, std::uint32_t x, const std::vector<std::uint32_t>& adj,
                   std::vector<std::uint32_t>& out) {
    if (!p && !x) {
        out.push_back(r);
        return;
    }
    const std::uint32_t px = p | x;
    const int pivot = std::countr_zero(px);
    std::uint32_t cand = p & ~adj[pivot];
    while (cand) {
        const int v = std::countr_zero(cand);
        const std::uint32_t bit = 1u << v;
        bron_kerbosch(r | bit, p & adj[v], x & adj[v], adj, out);
        p &= ~bit;
        x |= bit;
        cand &= ~bit;
    }
}

}  // namespace

std::vector<std::vector<std::size_t>> divisibility_screen(const IntersectionTensor& p, std::uint32_t prime) {
    if (!is_prime(prime)) throw Error(ErrorCode::NotPrime, std::to_string(prime) + " is not prime");
    const std::size_t d = p.classes();
    if (d > kMaxScreenClasses)
        throw Error(ErrorCode::TooManyClasses, std::to_string(d) + " classes exceed the screen limit of " +
                                                   std::to_string(kMaxScreenClasses));
    auto compatible = [&](std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k <= d; ++k)
            if (p(i, j, k) % static_cast<std::int64_t>(prime) != 0) return false;
        return true;
    };
    std::uint32_t looped = 0;
    for (std::size_t i = 0; i <= d; ++i)
        if (compatible(i, i)) looped |= 1u << i;
    std::vector<std::uint32_t> adj(d + 1, 0);
    for (std::size_t i = 0; i <= d; ++i)
        for (std::size_t j = 0; j <= d; ++j)
            if (i != j && (looped >> i & 1) && (looped >> j & 1) && compatible(i, j)) adj[i] |= 1u << j;

    std::vector<std::uint32_t> masks;
    if (looped) bron_kerbosch(0, looped, 0, adj, masks);
    std::vector<std::vector<std::size_t>> out;
    for (auto m : masks) {
        std::vector<std::size_t> set;
        for (std::size_t i = 0; i <= d; ++i)
            if (m >> i & 1) set.push_back(i);
        out.push_back(std::move(set));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace lcdsub
