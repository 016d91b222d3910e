#include "lcdsub/hadamard.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "lcdsub/error.hpp"

namespace lcdsub {

std::optional<std::int64_t> exact_sqrt(std::int64_t n) {
    if (n < 0) return std::nullopt;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    if (r * r != n) return std::nullopt;
    return r;
}

namespace {

void require_square(const IntMatrix& m, const char* what) {
    if (!m.is_square() || m.rows() == 0)
        throw Error(ErrorCode::DimensionMismatch, std::string(what) + " must be a non-empty square matrix",
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

// Both Gram products equal k*I.
void require_gram(const IntMatrix& m, std::int64_t k, const char* what) {
    const IntMatrix target = IntMatrix::identity(m.rows()).scaled(k);
    const IntMatrix mt = m.transpose();
    if (m * mt != target) throw Error(ErrorCode::GramFailure, std::string(what) + ": M M^T is not kI");
    if (mt * m != target) throw Error(ErrorCode::GramFailure, std::string(what) + ": M^T M is not kI");
}

std::int64_t require_sqrt_order(std::size_t n) {
    auto s = exact_sqrt(static_cast<std::int64_t>(n));
    if (!s) throw Error(ErrorCode::NotSquareOrder, "order is not a perfect square", std::to_string(n));
    return *s;
}

}  // namespace

HadamardMatrix HadamardMatrix::validate(IntMatrix h) {
    require_square(h, "Hadamard matrix");
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < h.cols(); ++j)
            if (h(i, j) != 1 && h(i, j) != -1)
                throw Error(ErrorCode::BadAlphabet, "Hadamard entries must be +1 or -1",
                            std::to_string(i) + "," + std::to_string(j));
    require_gram(h, static_cast<std::int64_t>(h.rows()), "Hadamard matrix");
    HadamardMatrix out;
    out.h_ = std::move(h);
    return out;
}

bool HadamardMatrix::is_regular() const {
    const std::int64_t s = require_sqrt_order(order());
    const std::size_t n = order();
    for (std::size_t i = 0; i < n; ++i) {
        std::int64_t r = 0, c = 0;
        for (std::size_t j = 0; j < n; ++j) {
            r += h_(i, j);
            c += h_(j, i);
        }
        if (r != s || c != s) return false;
    }
    return true;
}

bool HadamardMatrix::is_bush_type() const {
    const auto s = static_cast<std::size_t>(require_sqrt_order(order()));
    for (std::size_t bi = 0; bi < s; ++bi)
        for (std::size_t bj = 0; bj < s; ++bj)
            for (std::size_t x = 0; x < s; ++x) {
                std::int64_t r = 0, c = 0;
                for (std::size_t y = 0; y < s; ++y) {
                    r += h_(bi * s + x, bj * s + y);
                    c += h_(bi * s + y, bj * s + x);
                }
                if (bi == bj) {
                    // every entry of a diagonal block is 1, so its row sums are s
                    if (r != static_cast<std::int64_t>(s)) return false;
                } else if (r != 0 || c != 0) {
                    return false;
                }
            }
    if (!is_regular()) throw Error(ErrorCode::InternalInconsistency, "Bush-type matrix is not regular");
    return true;
}

WeighingMatrix WeighingMatrix::validate(IntMatrix w, std::int64_t weight) {
    require_square(w, "weighing matrix");
    if (weight < 0 || weight > static_cast<std::int64_t>(w.rows()))
        throw Error(ErrorCode::InvalidSpec, "weight must lie in 0..n", std::to_string(weight));
    const std::size_t n = w.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (w(i, j) < -1 || w(i, j) > 1)
                throw Error(ErrorCode::BadAlphabet, "weighing entries must be -1, 0 or 1",
                            std::to_string(i) + "," + std::to_string(j));
    for (std::size_t i = 0; i < n; ++i) {
        std::int64_t r = 0, c = 0;
        for (std::size_t j = 0; j < n; ++j) {
            r += w(i, j) != 0;
            c += w(j, i) != 0;
        }
        if (r != weight || c != weight)
            throw Error(ErrorCode::GramFailure, "row or column with the wrong number of nonzeros", std::to_string(i));
    }
    require_gram(w, weight, "weighing matrix");
    WeighingMatrix out;
    out.w_ = std::move(w);
    out.k_ = weight;
    return out;
}

HadamardMatrix sylvester(unsigned k) {
    if (k > 8) throw Error(ErrorCode::OrderTooLarge, "Sylvester order above 256", std::to_string(k));
    const IntMatrix h1{{1, 1}, {1, -1}};
    IntMatrix h{{1}};
    for (unsigned i = 0; i < k; ++i) h = kron(h1, h);
    return HadamardMatrix::validate(std::move(h));
}

UnbiasedCheck are_unbiased(const IntMatrix& a, const IntMatrix& b, MatrixKind kind, std::int64_t weight) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorCode::DimensionMismatch, "unbiasedness needs matrices of one order");
    const std::int64_t k = kind == MatrixKind::Hadamard ? static_cast<std::int64_t>(a.rows()) : weight;
    UnbiasedCheck out;
    const auto root = exact_sqrt(k);
    if (!root) {
        out.reason = "not a perfect square: " + std::to_string(k);
        return out;
    }
    IntMatrix prod = a * b.transpose();
    for (std::size_t i = 0; i < prod.rows(); ++i)
        for (std::size_t j = 0; j < prod.cols(); ++j) {
            if (prod(i, j) % *root != 0) {
                out.reason = "entry " + std::to_string(i) + "," + std::to_string(j) + " not divisible by " +
                             std::to_string(*root);
                return out;
            }
            prod(i, j) /= *root;
        }
    try {
        if (kind == MatrixKind::Hadamard)
            HadamardMatrix::validate(prod);
        else
            WeighingMatrix::validate(prod, k);
    } catch (const Error& e) {
        out.reason = std::string("quotient fails: ") + e.what();
        out.quotient = std::move(prod);
        return out;
    }
    out.unbiased = true;
    out.quotient = std::move(prod);
    return out;
}

UnbiasedCheck are_unbiased(const HadamardMatrix& a, const HadamardMatrix& b) {
    return are_unbiased(a.matrix(), b.matrix(), MatrixKind::Hadamard, static_cast<std::int64_t>(a.order()));
}

UnbiasedCheck are_unbiased(const WeighingMatrix& a, const WeighingMatrix& b) {
    if (a.weight() != b.weight()) throw Error(ErrorCode::DimensionMismatch, "weighing matrices of different weight");
    return are_unbiased(a.matrix(), b.matrix(), MatrixKind::Weighing, a.weight());
}

UnbiasedSet::UnbiasedSet(MatrixKind kind, std::vector<IntMatrix> mats, std::int64_t weight) : kind_(kind) {
    if (mats.empty()) throw Error(ErrorCode::InvalidSpec, "empty unbiased set");
    order_ = mats.front().rows();
    weight_ = kind == MatrixKind::Hadamard ? static_cast<std::int64_t>(order_) : weight;
    for (auto& m : mats) {
        if (m.rows() != order_ || m.cols() != order_)
            throw Error(ErrorCode::DimensionMismatch, "members of an unbiased set need one order");
        if (kind == MatrixKind::Hadamard)
            HadamardMatrix::validate(m);
        else
            WeighingMatrix::validate(m, weight_);
    }
    for (std::size_t i = 0; i < mats.size(); ++i)
        for (std::size_t j = i + 1; j < mats.size(); ++j) {
            auto chk = are_unbiased(mats[i], mats[j], kind, weight_);
            if (!chk.unbiased)
                throw Error(ErrorCode::NotUnbiased, "members are not unbiased: " + chk.reason,
                            std::to_string(i) + "," + std::to_string(j));
        }
    mats_ = std::move(mats);
}

const std::vector<IntMatrix>& all_hadamard_order4() {
    static const std::vector<IntMatrix> all = [] {
        std::vector<IntMatrix> out;
        const IntMatrix four = IntMatrix::identity(4).scaled(4);
        for (std::uint32_t mask = 0; mask < (1u << 16); ++mask) {
            IntMatrix h(4, 4);
            for (std::size_t e = 0; e < 16; ++e) h(e / 4, e % 4) = (mask >> e) & 1u ? -1 : 1;
            if (h * h.transpose() == four) out.push_back(std::move(h));
        }
        return out;
    }();
    return all;
}

std::string to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::Found: return "found";
        case SearchStatus::ProvenNone: return "proven_none";
        case SearchStatus::BudgetExhausted: return "budget_exhausted";
    }
    return "?";
}

namespace {

// Row vector with bit j of `supp` marking a nonzero entry and bit j of `sign` a -1.
struct Row {
    std::uint32_t supp = 0;
    std::uint32_t sign = 0;
    std::uint32_t block = 0;
};

int inner(const Row& a, const Row& b) {
    const std::uint32_t common = a.supp & b.supp;
    return std::popcount(common) - 2 * std::popcount(common & (a.sign ^ b.sign));
}

Row row_of(const IntMatrix& m, std::size_t i) {
    Row r;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (m(i, j) != 0) r.supp |= 1u << j;
        if (m(i, j) < 0) r.sign |= 1u << j;
    }
    return r;
}

IntMatrix matrix_of(const std::vector<Row>& rows, std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if ((rows[i].supp >> j) & 1u) m(i, j) = (rows[i].sign >> j) & 1u ? -1 : 1;
    return m;
}

// Rows admissible before any seed filtering. Hadamard and weighing rows are
// normalised (first nonzero entry +1) because negating a row keeps every
// condition; Bush rows instead carry an all-ones segment, which fixes the sign.
std::vector<Row> base_rows(std::size_t n, MatrixKind kind, std::int64_t weight, bool bush) {
    std::vector<Row> out;
    const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
    if (bush) {
        const auto s = static_cast<std::size_t>(*exact_sqrt(static_cast<std::int64_t>(n)));
        std::vector<std::uint32_t> balanced;  // sign patterns of a zero-sum segment
        for (std::uint32_t m = 0; m < (1u << s); ++m)
            if (2 * static_cast<std::size_t>(std::popcount(m)) == s) balanced.push_back(m);
        for (std::size_t b = 0; b < s; ++b) {
            std::vector<std::uint32_t> signs{0};
            for (std::size_t seg = 0; seg < s; ++seg) {
                if (seg == b) continue;
                std::vector<std::uint32_t> next;
                for (auto prefix : signs)
                    for (auto m : balanced) next.push_back(prefix | (m << (seg * s)));
                signs = std::move(next);
            }
            std::sort(signs.begin(), signs.end());
            for (auto sg : signs) out.push_back({full, sg, static_cast<std::uint32_t>(b)});
        }
        return out;
    }
    const std::int64_t k = kind == MatrixKind::Hadamard ? static_cast<std::int64_t>(n) : weight;
    for (std::uint64_t supp = 0; supp <= full; ++supp) {
        if (std::popcount(static_cast<std::uint32_t>(supp)) != k) continue;
        const auto sp = static_cast<std::uint32_t>(supp);
        if (sp == 0) {
            out.push_back({0, 0, 0});
            continue;
        }
        const std::uint32_t low = sp & (~sp + 1);
        const std::uint32_t free = sp & ~low;
        // all submasks of `free`, ascending
        std::vector<std::uint32_t> subs;
        for (std::uint32_t sub = free;; sub = (sub - 1) & free) {
            subs.push_back(sub);
            if (sub == 0) break;
        }
        std::reverse(subs.begin(), subs.end());
        for (auto sg : subs) out.push_back({sp, sg, 0});
    }
    return out;
}

struct SearchSetup {
    std::size_t n = 0;
    MatrixKind kind = MatrixKind::Hadamard;
    std::int64_t weight = 0;
    std::size_t block = 1;  // Bush block size, 1 when not Bush
    std::vector<Row> candidates;
};

SearchSetup prepare(const std::vector<IntMatrix>& seeds, const SearchOptions& opt) {
    SearchSetup st;
    st.kind = opt.kind;
    if (!seeds.empty()) {
        UnbiasedSet set(opt.kind, seeds, opt.weight);
        st.n = set.order();
        st.weight = set.weight();
    } else {
        st.n = opt.order;
        st.weight = opt.kind == MatrixKind::Hadamard ? static_cast<std::int64_t>(opt.order) : opt.weight;
        if (st.n == 0) throw Error(ErrorCode::InvalidSpec, "search needs an order when no seeds are given");
    }
    if (st.n > kMaxSearchOrder)
        throw Error(ErrorCode::OrderTooLarge, "search is limited to order 16", std::to_string(st.n));
    if (opt.bush) {
        if (opt.kind != MatrixKind::Hadamard)
            throw Error(ErrorCode::InvalidSpec, "Bush-type search is only defined for Hadamard matrices");
        st.block = static_cast<std::size_t>(require_sqrt_order(st.n));
    }
    if (st.weight < 0 || st.weight > static_cast<std::int64_t>(st.n))
        throw Error(ErrorCode::InvalidSpec, "weight must lie in 0..n", std::to_string(st.weight));

    auto base = base_rows(st.n, st.kind, st.weight, opt.bush);
    if (seeds.empty()) {
        st.candidates = std::move(base);
        return st;
    }
    const auto root = exact_sqrt(st.weight);
    if (!root) {
        // no unbiased partner can exist; an empty candidate list proves it
        return st;
    }
    std::vector<Row> seed_rows;
    for (const auto& s : seeds)
        for (std::size_t i = 0; i < st.n; ++i) seed_rows.push_back(row_of(s, i));
    const int r = static_cast<int>(*root);
    for (const auto& c : base) {
        bool ok = true;
        for (const auto& sr : seed_rows) {
            const int ip = inner(c, sr);
            const bool allowed = ip == r || ip == -r || (ip == 0 && st.kind == MatrixKind::Weighing);
            if (!allowed) {
                ok = false;
                break;
            }
        }
        if (ok) st.candidates.push_back(c);
    }
    return st;
}

class Backtracker {
public:
    Backtracker(const SearchSetup& st, const std::vector<IntMatrix>& seeds, std::uint64_t budget,
                const std::function<bool(const IntMatrix&)>& visit, bool bush)
        : st_(st), seeds_(seeds), budget_(budget), visit_(visit), bush_(bush) {}

    SearchResult run() {
        SearchResult res;
        res.candidates = st_.candidates.size();
        if (budget_ == 0) {
            res.status = SearchStatus::BudgetExhausted;
            return res;
        }
        chosen_.clear();
        dfs(st_.candidates);
        res.nodes = nodes_;
        res.found = first_;
        if (stopped_)
            res.status = SearchStatus::Found;
        else if (exhausted_)
            res.status = SearchStatus::BudgetExhausted;
        else
            res.status = solutions_ > 0 ? SearchStatus::Found : SearchStatus::ProvenNone;
        return res;
    }

private:
    bool halted() const { return stopped_ || exhausted_; }

    // Enough rows left in the list for the current and every later block row.
    bool feasible(const std::vector<Row>& list, std::size_t level) const {
        const std::size_t need = st_.n - level;
        if (list.size() < need) return false;
        if (!bush_) return true;
        const std::size_t s = st_.block;
        std::vector<std::size_t> count(s, 0);
        for (const auto& r : list) ++count[r.block];
        const std::size_t b = level / s;
        if (count[b] < s - level % s) return false;
        for (std::size_t x = b + 1; x < s; ++x)
            if (count[x] < s) return false;
        return true;
    }

    void dfs(const std::vector<Row>& list) {
        const std::size_t level = chosen_.size();
        if (level == st_.n) {
            accept();
            return;
        }
        if (!feasible(list, level)) return;
        const std::size_t need = st_.n - level;
        const std::uint32_t block = bush_ ? static_cast<std::uint32_t>(level / st_.block) : 0;
        for (std::size_t i = 0; i < list.size() && !halted(); ++i) {
            if (list.size() - i < need) break;
            if (list[i].block != block) break;  // list is sorted by block
            if (nodes_ >= budget_) {
                exhausted_ = true;
                return;
            }
            ++nodes_;
            const Row& c = list[i];
            std::vector<Row> next;
            next.reserve(list.size() - i - 1);
            for (std::size_t j = i + 1; j < list.size(); ++j)
                if (inner(c, list[j]) == 0) next.push_back(list[j]);
            chosen_.push_back(c);
            dfs(next);
            chosen_.pop_back();
        }
    }

    void accept() {
        IntMatrix m = matrix_of(chosen_, st_.n);
        // independent confirmation of what the row filters promise
        if (st_.kind == MatrixKind::Hadamard) {
            auto h = HadamardMatrix::validate(m);
            if (bush_ && !h.is_bush_type())
                throw Error(ErrorCode::InternalInconsistency, "search produced a non-Bush matrix");
        } else {
            WeighingMatrix::validate(m, st_.weight);
        }
        for (const auto& s : seeds_)
            if (!are_unbiased(s, m, st_.kind, st_.weight).unbiased)
                throw Error(ErrorCode::InternalInconsistency, "search produced a biased matrix");
        ++solutions_;
        if (!first_) first_ = m;
        if (!visit_(m)) stopped_ = true;
    }

    const SearchSetup& st_;
    const std::vector<IntMatrix>& seeds_;
    std::uint64_t budget_;
    const std::function<bool(const IntMatrix&)>& visit_;
    bool bush_;
    std::vector<Row> chosen_;
    std::uint64_t nodes_ = 0;
    std::uint64_t solutions_ = 0;
    bool stopped_ = false;
    bool exhausted_ = false;
    std::optional<IntMatrix> first_;
};

}  // namespace

SearchResult enumerate_unbiased_extensions(const std::vector<IntMatrix>& seeds, const SearchOptions& opt,
                                           const std::function<bool(const IntMatrix&)>& visit) {
    const SearchSetup st = prepare(seeds, opt);
    Backtracker bt(st, seeds, opt.node_budget, visit, opt.bush);
    return bt.run();
}

SearchResult search_unbiased_extension(const std::vector<IntMatrix>& seeds, const SearchOptions& opt) {
    return enumerate_unbiased_extensions(seeds, opt, [](const IntMatrix&) { return false; });
}

ExtensionRun extend_unbiased_set(std::vector<IntMatrix> seeds, std::size_t target, const SearchOptions& opt) {
    ExtensionRun run;
    if (opt.kind == MatrixKind::Hadamard) {
        const std::size_t n = seeds.empty() ? opt.order : seeds.front().rows();
        const std::size_t cap = std::max<std::size_t>(1, n / 2);
        if (target > cap) {
            target = cap;
            run.bound_capped = true;
        }
    }
    run.set = std::move(seeds);
    while (run.set.size() < target) {
        auto res = search_unbiased_extension(run.set, opt);
        run.nodes += res.nodes;
        run.last_status = res.status;
        if (!res.found) break;
        run.set.push_back(std::move(*res.found));
    }
    return run;
}

GramianB gramian_b(const UnbiasedSet& set) {
    if (set.kind() != MatrixKind::Hadamard)
        throw Error(ErrorCode::InvalidSpec, "the Gramian construction needs Hadamard matrices");
    if (set.size() < 2) throw Error(ErrorCode::InvalidSpec, "the Gramian construction needs m >= 2");
    const std::size_t order = set.order();
    const std::int64_t root = require_sqrt_order(order);
    if (root % 2 != 0) throw Error(ErrorCode::NotSquareOrder, "order is not of the form 4n^2", std::to_string(order));
    const std::int64_t n = root / 2;
    if (n % 2 != 0) throw Error(ErrorCode::OddN, "n must be even", std::to_string(n));
    for (std::size_t i = 0; i < set.size(); ++i)
        if (!HadamardMatrix::validate(set.matrices()[i]).is_regular())
            throw Error(ErrorCode::NotRegular, "member is not a regular Hadamard matrix", std::to_string(i));

    const std::size_t m = set.size();
    const std::size_t total = (m + 1) * order;
    // B = 2n(M - I): blocks H_j^T in row 0, H_i in column 0, H_i H_j^T / 2n elsewhere.
    std::vector<IntMatrix> parts{IntMatrix::identity(order).scaled(2 * n)};
    for (const auto& h : set.matrices()) parts.push_back(h);
    GramianB g;
    g.n = n;
    g.m = m;
    g.b = IntMatrix(total, total);
    for (std::size_t i = 0; i <= m; ++i)
        for (std::size_t j = 0; j <= m; ++j) {
            if (i == j) continue;
            IntMatrix blk = parts[i] * parts[j].transpose();
            for (std::size_t x = 0; x < order; ++x)
                for (std::size_t y = 0; y < order; ++y) {
                    if (blk(x, y) % (2 * n) != 0)
                        throw Error(ErrorCode::InternalInconsistency, "Gramian block not divisible by 2n");
                    blk(x, y) /= 2 * n;
                }
            g.b.set_block(i * order, j * order, blk);
        }
    if (!g.b.is_symmetric()) throw Error(ErrorCode::InternalInconsistency, "B is not symmetric");
    g.b1 = IntMatrix(total, total);
    g.b2 = IntMatrix(total, total);
    g.b3 = kron(IntMatrix::identity(m + 1), IntMatrix::ones(order, order)) - IntMatrix::identity(total);
    for (std::size_t x = 0; x < total; ++x)
        for (std::size_t y = 0; y < total; ++y) {
            const std::int64_t v = g.b(x, y);
            if (v < -1 || v > 1) throw Error(ErrorCode::InternalInconsistency, "B has an entry outside {-1,0,1}");
            if (v == 1) g.b1(x, y) = 1;
            if (v == -1) g.b2(x, y) = 1;
        }
    if (g.b1 + g.b2 + g.b3 + IntMatrix::identity(total) != IntMatrix::ones(total, total))
        throw Error(ErrorCode::InternalInconsistency, "B_1, B_2, B_3 and I do not partition J");
    return g;
}

std::vector<IntMatrix> partition_quotients_of_set(const std::vector<IntMatrix>& mats, const Partition& part) {
    if (!part.equal_cells()) throw Error(ErrorCode::UnequalCells, "partition cells differ in size");
    auto q = quotient_matrices(part, mats);
    const IntMatrix c = part.char_matrix();
    for (std::size_t i = 0; i < mats.size(); ++i)
        if (mats[i] * c != c * q.m[i])
            throw Error(ErrorCode::InternalInconsistency, "H C differs from C M", std::to_string(i));
    return std::move(q.m);
}

namespace {

// Block sums between two cells are constant by rows and by columns.
bool blocks_ok(const std::vector<IntMatrix>& mats, const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    for (const auto& m : mats) {
        std::optional<std::int64_t> row, col;
        for (auto x : a) {
            std::int64_t s = 0;
            for (auto y : b) s += m(x, y);
            if (row && *row != s) return false;
            row = s;
        }
        for (auto y : b) {
            std::int64_t s = 0;
            for (auto x : a) s += m(x, y);
            if (col && *col != s) return false;
            col = s;
        }
    }
    return true;
}

struct PartitionWalker {
    const std::vector<IntMatrix>& mats;
    std::size_t n;
    std::size_t size;
    const std::function<bool(const Partition&)>& visit;
    std::vector<std::vector<std::size_t>> cells;
    std::vector<bool> used;
    bool stop = false;

    void grow() {
        if (stop) return;
        // index, not a reference: next_cell() appends to `cells`
        const std::size_t c = cells.size() - 1;
        if (cells[c].size() == size) {
            for (const auto& other : cells) {
                if (!blocks_ok(mats, cells[c], other) || !blocks_ok(mats, other, cells[c])) return;
            }
            next_cell();
            return;
        }
        for (std::size_t v = cells[c].back() + 1; v < n && !stop; ++v) {
            if (used[v]) continue;
            used[v] = true;
            cells[c].push_back(v);
            grow();
            cells[c].pop_back();
            used[v] = false;
        }
    }

    void next_cell() {
        std::size_t first = 0;
        while (first < n && used[first]) ++first;
        if (first == n) {
            if (!visit(Partition::from_cells(cells, n))) stop = true;
            return;
        }
        used[first] = true;
        cells.push_back({first});
        grow();
        cells.pop_back();
        used[first] = false;
    }
};

}  // namespace

void for_each_equitable_partition(const std::vector<IntMatrix>& mats, std::size_t cell_size,
                                  const std::function<bool(const Partition&)>& visit) {
    if (mats.empty()) throw Error(ErrorCode::InvalidSpec, "no matrices given");
    const std::size_t n = mats.front().rows();
    for (const auto& m : mats)
        if (m.rows() != n || m.cols() != n) throw Error(ErrorCode::DimensionMismatch, "matrices of different order");
    if (cell_size == 0 || n % cell_size != 0)
        throw Error(ErrorCode::UnequalCells, "cell size does not divide the order", std::to_string(cell_size));
    PartitionWalker w{mats, n, cell_size, visit, {}, std::vector<bool>(n, false)};
    w.next_cell();
}

}  // namespace lcdsub
