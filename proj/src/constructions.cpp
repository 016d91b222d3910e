#include "lcdsub/constructions.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "lcdsub/error.hpp"

namespace lcdsub {

namespace {

// Row echelon set of vectors, grown one vector at a time. Each stored row has a
// leading 1 and zeros in the pivot columns of the rows stored before it, so a
// single pass in insertion order reduces any vector.
class Echelon {
public:
    explicit Echelon(FieldPtr f) : f_(std::move(f)) {}

    // Reduces v in place; true when something nonzero is left.
    bool reduce(std::vector<Field::Elem>& v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Field::Elem c = v[pivots_[i]];
            if (c == 0) continue;
            const auto& row = rows_[i];
            for (std::size_t j = 0; j < v.size(); ++j)
                if (row[j] != 0) v[j] = f_->sub(v[j], f_->mul(c, row[j]));
        }
        return std::any_of(v.begin(), v.end(), [](Field::Elem e) { return e != 0; });
    }

    bool insert(std::vector<Field::Elem> v) {
        if (!reduce(v)) return false;
        std::size_t p = 0;
        while (v[p] == 0) ++p;
        const Field::Elem inv = f_->inv(v[p]);
        for (auto& e : v) e = f_->mul(e, inv);
        rows_.push_back(std::move(v));
        pivots_.push_back(p);
        return true;
    }

private:
    FieldPtr f_;
    std::vector<std::vector<Field::Elem>> rows_;
    std::vector<std::size_t> pivots_;
};

void fail_hypothesis(const std::string& name, const std::string& detail) {
    throw Error(ErrorCode::HypothesisFailed, name + ": " + detail, name);
}

struct Hypotheses {
    std::vector<HypothesisCheck> list;

    void require(bool ok, const std::string& name, const std::string& detail) {
        if (!ok) fail_hypothesis(name, detail);
        list.push_back({name, detail});
    }
};

std::string join(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

}  // namespace

AlgebraBasis algebra_closure(const std::vector<MatrixFq>& generators, std::size_t max_dim) {
    if (generators.empty()) throw Error(ErrorCode::InvalidSpec, "algebra closure needs at least one generator");
    const FieldPtr field = generators.front().field();
    const std::size_t t = generators.front().rows();
    for (const auto& g : generators) {
        require_same_field(field, g.field());
        if (g.rows() != t || g.cols() != t)
            throw Error(ErrorCode::DimensionMismatch, "generators must be square of one size");
    }
    AlgebraBasis out{field, t, {}};
    Echelon ech(field);
    auto add = [&](const MatrixFq& m) {
        if (!ech.insert(m.data())) return;
        out.basis.push_back(m);
        if (out.basis.size() > max_dim)
            throw Error(ErrorCode::DimensionBlowup, "algebra dimension exceeds the limit", std::to_string(max_dim));
    };
    for (const auto& g : generators) add(g);
    if (out.basis.empty()) throw Error(ErrorCode::EmptyAlgebra, "every generator is zero");
    // Every ordered product of basis elements is formed exactly once.
    for (std::size_t k = 0; k < out.basis.size(); ++k)
        for (std::size_t j = 0; j <= k; ++j) {
            add(out.basis[k] * out.basis[j]);
            if (j != k) add(out.basis[j] * out.basis[k]);
        }
    return out;
}

bool algebra_contains(const AlgebraBasis& a, const MatrixFq& m) {
    require_same_field(a.field, m.field());
    if (m.rows() != a.t || m.cols() != a.t) return false;
    Echelon ech(a.field);
    for (const auto& b : a.basis) ech.insert(b.data());
    auto v = m.data();
    return !ech.reduce(v);
}

MatrixFq build_block(const MatrixFq& x, Field::Elem alpha) {
    if (x.rows() != x.cols()) throw Error(ErrorCode::DimensionMismatch, "X must be square");
    if (alpha == 0) throw Error(ErrorCode::ZeroAlpha, "alpha must be nonzero");
    if (alpha >= x.field()->order()) throw Error(ErrorCode::InvalidSpec, "alpha is not a field element");
    return hstack(x, MatrixFq::identity(x.field(), x.rows()).scaled(alpha));
}

ClassicalReport lcd_code_thm42(const AssociationScheme& scheme, const Partition& part, std::size_t i,
                               std::uint32_t p, std::uint32_t r, Field::Elem alpha) {
    if (i > scheme.class_count()) throw Error(ErrorCode::IndexOutOfRange, "no such relation", std::to_string(i));
    if (!part.equal_cells()) throw Error(ErrorCode::UnequalCells, "partition cells differ in size");
    const FieldPtr field = Field::make(p, r);
    for (std::size_t k = 0; k <= scheme.class_count(); ++k)
        if (scheme.p(i, i, k) % static_cast<std::int64_t>(p) != 0)
            throw Error(ErrorCode::DivisibilityFails, "p does not divide p_{i,i}^k", std::to_string(k));
    const auto q = quotient_matrices(part, scheme.matrices());
    ClassicalReport rep;
    rep.generator = build_block(reduce_mod(q.m[i], field), alpha);
    rep.n = rep.generator.cols();
    rep.k = rep.generator.rows();
    rep.q = field->order();
    rep.gram_det = det(rep.generator * rep.generator.transpose());
    rep.lcd = classical_lcd_check(rep.generator);
    if (!rep.lcd || rep.gram_det == 0) throw Error(ErrorCode::NotLCD, "[M_i | alpha I] does not span an LCD code");
    return rep;
}

ConstructionReport subspace_code_from_algebra(const AlgebraBasis& basis, const EnumerationOptions& opt) {
    if (basis.basis.empty()) throw Error(ErrorCode::EmptyAlgebra, "empty algebra basis");
    const FieldPtr& f = basis.field;
    const std::size_t a = basis.dim();
    const std::size_t t = basis.t;
    const std::uint64_t q = f->order();

    // q^a, saturating
    std::uint64_t total = 1;
    bool huge = false;
    for (std::size_t i = 0; i < a && !huge; ++i) {
        if (total > (std::uint64_t{1} << 40) / q) huge = true;
        total *= q;
    }
    // Keep the stored codewords under about 2^27 field entries.
    const bool complete = !huge && total <= opt.cap && (total - 1) * 2 * t * t <= (std::uint64_t{1} << 27);

    std::mt19937_64 rng(opt.seed);
    std::vector<std::vector<Field::Elem>> coeffs;
    if (complete) {
        for (std::uint64_t idx = 1; idx < total; ++idx) {
            std::vector<Field::Elem> c(a);
            std::uint64_t v = idx;
            for (std::size_t i = a; i-- > 0;) {
                c[i] = static_cast<Field::Elem>(v % q);
                v /= q;
            }
            coeffs.push_back(std::move(c));
        }
    } else {
        std::uniform_int_distribution<Field::Elem> digit(0, static_cast<Field::Elem>(q - 1));
        std::set<std::vector<Field::Elem>> seen;
        // a nonzero basis means at least q - 1 >= 1 nonzero elements exist; stop early if
        // the space is small enough to run out
        std::uint64_t attempts = 0;
        while (seen.size() < opt.sample && attempts < 100 * opt.sample) {
            ++attempts;
            std::vector<Field::Elem> c(a);
            for (auto& e : c) e = digit(rng);
            if (std::all_of(c.begin(), c.end(), [](Field::Elem e) { return e == 0; })) continue;
            if (seen.insert(c).second) coeffs.push_back(std::move(c));
        }
    }

    auto element = [&](const std::vector<Field::Elem>& c) {
        MatrixFq x(f, t, t);
        for (std::size_t i = 0; i < a; ++i)
            if (c[i] != 0) x = x + basis.basis[i].scaled(c[i]);
        return x;
    };

    std::set<Subspace> words;
    std::optional<std::size_t> min_rank;
    for (const auto& c : coeffs) {
        const MatrixFq x = element(c);
        const std::size_t rk = rank(x);
        if (!min_rank || rk < *min_rank) min_rank = rk;
        words.insert(Subspace::row_space(build_block(x, 1)));
        if (opt.alpha_sweep)
            for (Field::Elem al = 2; al < q; ++al) words.insert(Subspace::row_space(build_block(x, al)));
    }

    // [X | aI] and [bX | baI] have one row space.
    std::uniform_int_distribution<Field::Elem> nonzero(1, static_cast<Field::Elem>(q - 1));
    for (std::size_t s = 0; s < std::min<std::size_t>(8, coeffs.size()); ++s) {
        const MatrixFq x = element(coeffs[s]);
        const Field::Elem al = nonzero(rng), be = nonzero(rng);
        if (Subspace::row_space(build_block(x, al)) != Subspace::row_space(build_block(x.scaled(be), f->mul(be, al))))
            throw Error(ErrorCode::InternalInconsistency, "row space changed under scalar scaling");
    }

    const Subspace zero_word = Subspace::row_space(build_block(MatrixFq(f, t, t), 1));
    const std::size_t nonzero_classes = words.size();
    std::set<Subspace> with_zero = words;
    with_zero.insert(zero_word);
    const std::size_t zero_classes = with_zero.size();

    std::vector<Subspace> list(opt.include_zero_x ? with_zero.begin() : words.begin(),
                               opt.include_zero_x ? with_zero.end() : words.end());
    ConstructionReport rep(SubspaceCode(std::move(list)));
    rep.p = f->characteristic();
    rep.r = f->degree();
    rep.t = t;
    rep.algebra_dim = a;
    rep.enumeration_complete = complete;
    rep.pairs_formed = coeffs.size() * (q - 1);
    rep.classes_nonzero_x = nonzero_classes;
    rep.classes_with_zero_x = zero_classes;
    if (min_rank) rep.min_rank_distance = 2 * *min_rank;

    const std::uint64_t sz = rep.code.size();
    rep.params = sz * (sz - 1) / 2 <= opt.pair_budget ? params(rep.code, opt.pair_budget)
                                                       : estimate_params(rep.code, opt.pair_budget, opt.seed);
    if (complete && rep.params.d && rep.params.d_exhaustive && rep.params.d != rep.min_rank_distance)
        throw Error(ErrorCode::InternalInconsistency, "minimum distance differs from twice the minimum rank");

    const auto verdict = is_lcd_subspace_code(rep.code, opt.pair_budget, opt.seed);
    if (!verdict.lcd)
        throw Error(ErrorCode::NotLCDCode, "constructed code is not an LCD subspace code",
                    std::to_string(verdict.witness->first) + "," + std::to_string(verdict.witness->second));
    rep.lcd_verified = true;
    rep.lcd_exhaustive = verdict.exhaustive;

    // N_x N_y^T = X Y^T + a_x a_y I, so the identity N_x N_y^T = a_x a_y I over the
    // algebra reduces to B_i B_j^T = 0 on basis pairs; direct checks on sampled
    // pairs follow.
    bool ok = true;
    for (std::size_t i = 0; i < a && ok; ++i)
        for (std::size_t j = 0; j < a && ok; ++j) {
            ++rep.block_pairs_checked;
            ok = (basis.basis[i] * basis.basis[j].transpose()).is_zero();
        }
    if (!coeffs.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, coeffs.size() - 1);
        for (std::size_t s = 0; s < 100 && ok; ++s) {
            const MatrixFq x = element(coeffs[pick(rng)]), y = element(coeffs[pick(rng)]);
            const Field::Elem ax = nonzero(rng), ay = nonzero(rng);
            const MatrixFq prod = build_block(x, ax) * build_block(y, ay).transpose();
            ok = prod == MatrixFq::identity(f, t).scaled(f->mul(ax, ay));
            ++rep.block_pairs_checked;
        }
    }
    rep.block_identity = ok;
    return rep;
}

namespace {

// lhs == sum c_k A_k, and the scheme's structure constants agree with the c_k.
struct IdentityLog {
    std::vector<IdentityCheck> list;

    void check(const std::string& name, const IntMatrix& lhs, const IntMatrix& rhs) {
        const bool ok = lhs == rhs;
        list.push_back({name, ok});
        if (!ok) throw Error(ErrorCode::IdentityFails, "product identity fails: " + name, name);
    }

    void check_scheme(const std::string& name, const AssociationScheme& s, std::size_t i, std::size_t j,
                      const std::vector<std::int64_t>& coeff) {
        const auto& A = s.matrices();
        IntMatrix rhs(A[0].rows(), A[0].rows());
        for (std::size_t k = 0; k < coeff.size(); ++k)
            if (coeff[k] != 0) rhs += A[k].scaled(coeff[k]);
        check(name, A[i] * A[j], rhs);
        for (std::size_t k = 0; k < coeff.size(); ++k)
            if (s.p(i, j, k) != coeff[k])
                throw Error(ErrorCode::IdentityFails, "structure constant disagrees: " + name, name);
    }
};

IntMatrix block2x2(const IntMatrix& a, const IntMatrix& b) { return block2(a, b, b, a); }

}  // namespace

MurhScheme murh_scheme(const GramianB& g) {
    const std::int64_t n = g.n, m = static_cast<std::int64_t>(g.m), h = n / 2;
    const std::size_t P = g.b.rows();
    if (n % 2 != 0) throw Error(ErrorCode::OddN, "n must be even", std::to_string(n));
    auto scheme = AssociationScheme::from_matrices({IntMatrix::identity(P), g.b1, g.b2, g.b3});
    IdentityLog log;
    const std::int64_t n2 = n * n;
    // B_3 coefficients of B_1^2 and B_2^2: two points of one block have n^2 + n
    // (resp. n^2 - n) common B_1 (resp. B_2) neighbours in each of the other m blocks.
    log.check_scheme("B1*B1", scheme, 1, 1, {(2 * n2 + n) * m, (n2 + 3 * h) * (m - 1), (n2 + h) * (m - 1), (n2 + n) * m});
    log.check_scheme("B2*B2", scheme, 2, 2, {(2 * n2 - n) * m, (n2 - h) * (m - 1), (n2 - 3 * h) * (m - 1), (n2 - n) * m});
    log.check_scheme("B1*B2", scheme, 1, 2, {0, (n2 - h) * (m - 1), (n2 + h) * (m - 1), n2 * m});
    log.check_scheme("B1*B3", scheme, 1, 3, {0, 2 * n2 + n - 1, 2 * n2 + n, 0});
    log.check_scheme("B2*B3", scheme, 2, 3, {0, 2 * n2 - n, 2 * n2 - n - 1, 0});
    return {std::move(scheme), std::move(log.list)};
}

BushSchemes bush_schemes(const UnbiasedSet& set) {
    if (set.kind() != MatrixKind::Hadamard) throw Error(ErrorCode::InvalidSpec, "Bush schemes need Hadamard matrices");
    for (std::size_t i = 0; i < set.size(); ++i)
        if (!HadamardMatrix::validate(set.matrices()[i]).is_bush_type())
            throw Error(ErrorCode::NotBushType, "member is not of Bush type", std::to_string(i));
    const GramianB g = gramian_b(set);
    const std::int64_t n = g.n, m = static_cast<std::int64_t>(g.m), h = n / 2, n2 = n * n;
    const std::size_t s = static_cast<std::size_t>(2 * n);
    const std::size_t P = g.b.rows();

    const IntMatrix Im = IntMatrix::identity(g.m + 1), Jm = IntMatrix::ones(g.m + 1, g.m + 1);
    const IntMatrix Is = IntMatrix::identity(s), Js = IntMatrix::ones(s, s);
    const IntMatrix A0 = IntMatrix::identity(P);
    const IntMatrix A1 = kron(kron(Im, Is), Js - Is);
    const IntMatrix A2 = kron(kron(Im, Js - Is), Js);
    const IntMatrix A3 = kron(kron(Jm - Im, Is), Js);
    const IntMatrix A4 = g.b1 - A3;
    const IntMatrix A5 = g.b2;
    for (auto v : A4.data())
        if (v != 0 && v != 1)
            throw Error(ErrorCode::IdentityFails, "B1 does not contain A3", "A4 = B1 - A3 is 0/1");

    IdentityLog log;
    auto five = AssociationScheme::from_matrices({A0, A1, A2, A3, A4, A5});
    const std::int64_t c44_3 = (n2 - h) * (m - 1), c44_5 = (n2 - 3 * h) * (m - 1);
    log.check_scheme("A1*A1", five, 1, 1, {2 * n - 1, 2 * n - 2, 0, 0, 0, 0});
    log.check_scheme("A1*A2", five, 1, 2, {0, 0, 2 * n - 1, 0, 0, 0});
    log.check_scheme("A1*A3", five, 1, 3, {0, 0, 0, 2 * n - 1, 0, 0});
    log.check_scheme("A1*A4", five, 1, 4, {0, 0, 0, 0, n - 1, n});
    log.check_scheme("A1*A5", five, 1, 5, {0, 0, 0, 0, n, n - 1});
    log.check_scheme("A2*A2", five, 2, 2, {2 * n * (2 * n - 1), 2 * n * (2 * n - 1), 2 * n * (2 * n - 2), 0, 0, 0});
    log.check_scheme("A2*A3", five, 2, 3, {0, 0, 0, 0, 2 * n, 2 * n});
    const std::vector<std::int64_t> a24{0, 0, 0, (2 * n - 1) * n, (2 * n - 2) * n, (2 * n - 2) * n};
    log.check_scheme("A2*A4", five, 2, 4, a24);
    log.check_scheme("A2*A5", five, 2, 5, a24);
    log.check_scheme("A3*A3", five, 3, 3, {2 * m * n, 2 * m * n, 0, 2 * n * (m - 1), 0, 0});
    const std::vector<std::int64_t> a34{0, 0, m * n, 0, (m - 1) * n, (m - 1) * n};
    log.check_scheme("A3*A4", five, 3, 4, a34);
    log.check_scheme("A3*A5", five, 3, 5, a34);
    const std::vector<std::int64_t> a44{(2 * n2 - n) * m, (n2 - n) * m, (n2 - n) * m, c44_3, c44_3, c44_5};
    log.check_scheme("A4*A4", five, 4, 4, a44);
    log.check_scheme("A5*A5", five, 5, 5, a44);
    log.check_scheme("A4*A5", five, 4, 5, {0, n2 * m, m * (n2 - n), c44_3, c44_5, c44_3});

    const IntMatrix Z(P, P);
    const std::vector<IntMatrix> T{block2x2(A0, Z), block2x2(A1, Z), block2x2(Z, A1), block2x2(A2, A2), block2x2(A3, Z),
                                   block2x2(Z, A3), block2x2(A4, A5), block2x2(A5, A4), block2x2(Z, A0)};
    auto eight = AssociationScheme::from_matrices(T);

    // block forms of the tilde products
    const IntMatrix A22 = A2 * A2, A23 = A2 * A3, A33 = A3 * A3, A34 = A3 * A4, A35 = A3 * A5;
    const IntMatrix A2S = A2 * (A4 + A5), D = A4 * A4 + A5 * A5, E = (A4 * A5).scaled(2);
    log.check("T3*T3 blocks", T[3] * T[3], block2x2(A22, A22).scaled(2));
    log.check("T3*T4 blocks", T[3] * T[4], block2x2(A23, A23));
    log.check("T3*T5 blocks", T[3] * T[5], block2x2(A23, A23));
    log.check("T3*T6 blocks", T[3] * T[6], block2x2(A2S, A2S));
    log.check("T3*T7 blocks", T[3] * T[7], block2x2(A2S, A2S));
    log.check("T4*T4 blocks", T[4] * T[4], block2x2(A33, Z));
    log.check("T5*T5 blocks", T[5] * T[5], block2x2(A33, Z));
    log.check("T4*T5 blocks", T[4] * T[5], block2x2(Z, A33));
    log.check("T4*T6 blocks", T[4] * T[6], block2x2(A34, A35));
    log.check("T5*T7 blocks", T[5] * T[7], block2x2(A34, A35));
    log.check("T4*T7 blocks", T[4] * T[7], block2x2(A35, A34));
    log.check("T5*T6 blocks", T[5] * T[6], block2x2(A35, A34));
    log.check("T6*T6 blocks", T[6] * T[6], block2x2(D, E));
    log.check("T7*T7 blocks", T[7] * T[7], block2x2(D, E));
    log.check("T6*T7 blocks", T[6] * T[7], block2x2(E, D));

    // the same products in the basis of the eight-class scheme
    const std::int64_t u = 2 * n - 1;
    log.check_scheme("T3*T3", eight, 3, 3, {4 * n * u, 4 * n * u, 4 * n * u, 4 * n * (2 * n - 2), 0, 0, 0, 0, 4 * n * u});
    const std::vector<std::int64_t> t34{0, 0, 0, 0, 0, 0, 2 * n, 2 * n, 0};
    log.check_scheme("T3*T4", eight, 3, 4, t34);
    log.check_scheme("T3*T5", eight, 3, 5, t34);
    const std::vector<std::int64_t> t36{0, 0, 0, 0, 2 * n * u, 2 * n * u, 2 * n * (2 * n - 2), 2 * n * (2 * n - 2), 0};
    log.check_scheme("T3*T6", eight, 3, 6, t36);
    log.check_scheme("T3*T7", eight, 3, 7, t36);
    const std::vector<std::int64_t> t44{2 * m * n, 2 * m * n, 0, 0, 2 * n * (m - 1), 0, 0, 0, 0};
    log.check_scheme("T4*T4", eight, 4, 4, t44);
    log.check_scheme("T5*T5", eight, 5, 5, t44);
    log.check_scheme("T4*T5", eight, 4, 5, {0, 0, 2 * m * n, 0, 0, 2 * n * (m - 1), 0, 0, 2 * m * n});
    const std::vector<std::int64_t> t46{0, 0, 0, m * n, 0, 0, (m - 1) * n, (m - 1) * n, 0};
    log.check_scheme("T4*T6", eight, 4, 6, t46);
    log.check_scheme("T5*T7", eight, 5, 7, t46);
    log.check_scheme("T4*T7", eight, 4, 7, t46);
    log.check_scheme("T5*T6", eight, 5, 6, t46);
    const std::int64_t w0 = 2 * (2 * n2 - n) * m, w1 = 2 * (n2 - n) * m, w2 = 2 * n2 * m;
    const std::int64_t w4 = (2 * n2 - n) * (m - 1), w7 = (2 * n2 - 3 * n) * (m - 1);
    const std::vector<std::int64_t> t66{w0, w1, w2, w1, w4, w4, w4, w7, 0};
    log.check_scheme("T6*T6", eight, 6, 6, t66);
    log.check_scheme("T7*T7", eight, 7, 7, t66);
    log.check_scheme("T6*T7", eight, 6, 7, {0, w2, w1, w1, w4, w4, w7, w4, w0});

    return {std::move(five), std::move(eight), std::move(log.list)};
}

Partition consecutive_partition(std::size_t points, std::size_t cell) {
    if (cell == 0 || points % cell != 0)
        throw Error(ErrorCode::UnequalCells, "cell size does not divide the point count", std::to_string(cell));
    std::vector<std::vector<std::size_t>> cells(points / cell);
    for (std::size_t v = 0; v < points; ++v) cells[v / cell].push_back(v);
    return Partition::from_cells(std::move(cells), points);
}

namespace {

void require_prime(Hypotheses& h, std::uint32_t p) {
    h.require(is_prime(p), "p prime", std::to_string(p));
}

ConstructionReport finish(const std::string& pipeline, const std::string& source, Hypotheses hyps,
                          const std::vector<IntMatrix>& generators, const PipelineOptions& opt) {
    const FieldPtr field = Field::make(opt.p, opt.r);
    std::vector<MatrixFq> gens;
    for (const auto& g : generators) gens.push_back(reduce_mod(g, field));
    const AlgebraBasis basis = algebra_closure(gens);
    ConstructionReport rep = subspace_code_from_algebra(basis, opt.enumeration);
    if (!rep.block_identity)
        throw Error(ErrorCode::IdentityFails, "N_x N_y^T differs from a_x a_y I", "N_x N_y^T = a_x a_y I");
    if (rep.params.dims != std::set<std::size_t>{rep.t} || rep.code.ambient_dim() != 2 * rep.t)
        throw Error(ErrorCode::InternalInconsistency, "code is not constant dimension t in F_q^{2t}");
    rep.pipeline = pipeline;
    rep.source = source;
    rep.hypotheses = std::move(hyps.list);
    return rep;
}

// Shared body for a scheme with an equitable partition and an index set.
ConstructionReport scheme_pipeline(const std::string& pipeline, const std::string& source, Hypotheses hyps,
                                   const AssociationScheme& scheme, const Partition& part,
                                   const std::vector<std::size_t>& index_set, const PipelineOptions& opt) {
    const std::size_t d = scheme.class_count();
    require_prime(hyps, opt.p);
    hyps.require(!index_set.empty() && std::all_of(index_set.begin(), index_set.end(), [&](std::size_t i) { return i <= d; }),
                 "index set", "{" + join(index_set) + "} within 0.." + std::to_string(d));
    hyps.require(part.point_count() == scheme.point_count(), "partition size",
                 std::to_string(part.point_count()) + " points");
    hyps.require(part.equal_cells(), "equal cells", std::to_string(part.cell_count()) + " cells");
    const auto eq = verify_equitable(part, scheme.matrices());
    hyps.require(eq.ok, "equitable", eq.witness.value_or("every relation"));
    for (auto i : index_set)
        for (auto j : index_set)
            for (std::size_t k = 0; k <= d; ++k)
                if (scheme.p(i, j, k) % static_cast<std::int64_t>(opt.p) != 0)
                    fail_hypothesis("divisibility", "p does not divide p_{" + std::to_string(i) + "," +
                                                        std::to_string(j) + "}^" + std::to_string(k));
    hyps.require(true, "divisibility", "p | p_{i,j}^k for i, j in {" + join(index_set) + "}");

    const auto q = quotient_matrices(part, scheme.matrices());
    const auto alg = verify_quotient_algebra(scheme.tensor(), q);
    if (!alg.ok)
        throw Error(ErrorCode::IdentityFails, "quotient matrices break the structure constants", alg.witness.value_or(""));
    for (std::size_t i = 0; i <= d; ++i)
        if (!q.m[i].is_symmetric())
            throw Error(ErrorCode::IdentityFails, "quotient matrix is not symmetric", std::to_string(i));
    std::vector<IntMatrix> gens;
    for (auto i : index_set) gens.push_back(q.m[i]);
    return finish(pipeline, source, std::move(hyps), gens, opt);
}

std::int64_t square_root_or_fail(std::int64_t v, const std::string& name) {
    auto r = exact_sqrt(v);
    if (!r) fail_hypothesis(name, std::to_string(v) + " is not a perfect square");
    return *r;
}

ConstructionReport family_pipeline(const std::string& pipeline, const UnbiasedSet& set, const Partition* part,
                                   const PipelineOptions& opt) {
    Hypotheses hyps;
    const bool hadamard = set.kind() == MatrixKind::Hadamard;
    hyps.require(true, hadamard ? "mutually unbiased Hadamard" : "mutually unbiased weighing",
                 std::to_string(set.size()) + " matrices of order " + std::to_string(set.order()));
    require_prime(hyps, opt.p);
    const std::string what = hadamard ? "p divides sqrt(n)" : "p divides sqrt(k)";
    const std::int64_t root = square_root_or_fail(set.weight(), what);
    hyps.require(root % opt.p == 0, what, std::to_string(opt.p) + " | " + std::to_string(root));
    std::vector<IntMatrix> gens = set.matrices();
    std::string source = std::string(hadamard ? "hadamard" : "weighing") + " order " + std::to_string(set.order());
    if (part) {
        hyps.require(part->point_count() == set.order(), "partition size", std::to_string(part->point_count()));
        hyps.require(part->equal_cells(), "equal cells", std::to_string(part->cell_count()) + " cells");
        const auto eq = verify_equitable(*part, gens);
        hyps.require(eq.ok, "equitable", eq.witness.value_or("every matrix"));
        gens = partition_quotients_of_set(gens, *part);
        source += ", " + std::to_string(part->cell_count()) + " cells";
    }
    return finish(pipeline, source, std::move(hyps), gens, opt);
}

// Order 4n^2 with n even; returns n.
std::int64_t require_even_n(Hypotheses& h, const UnbiasedSet& set) {
    h.require(set.kind() == MatrixKind::Hadamard, "Hadamard family", "");
    h.require(set.size() >= 2, "m >= 2", std::to_string(set.size()));
    const std::int64_t root = square_root_or_fail(static_cast<std::int64_t>(set.order()), "order 4n^2");
    h.require(root % 2 == 0, "order 4n^2", std::to_string(set.order()));
    const std::int64_t n = root / 2;
    h.require(n % 2 == 0, "n even", std::to_string(n));
    return n;
}

}  // namespace

ConstructionReport thm43(const AssociationScheme& scheme, const Partition& part, const std::vector<std::size_t>& index_set,
                         const PipelineOptions& opt) {
    return scheme_pipeline("thm43", "scheme on " + std::to_string(scheme.point_count()) + " points", {}, scheme, part,
                           index_set, opt);
}

ConstructionReport cor45(const Graph& g, const PermutationGroup& group, const std::vector<std::size_t>& index_set,
                         const PipelineOptions& opt) {
    Hypotheses hyps;
    std::optional<AssociationScheme> scheme;
    try {
        scheme = scheme_from_drg(g);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NotDRG && e.code() != ErrorCode::Disconnected) throw;
        fail_hypothesis("distance-regular", e.what());
    }
    hyps.require(true, "distance-regular", "diameter " + std::to_string(scheme->class_count()));
    std::optional<OrbitPartition> orbits;
    try {
        orbits = orbit_partition(group, g);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NotAnAutomorphism) throw;
        fail_hypothesis("automorphism group", e.what());
    }
    hyps.require(true, "automorphism group", std::to_string(group.generators().size()) + " generators");
    hyps.require(orbits->equal_lengths, "equal orbits", std::to_string(orbits->partition.cell_count()) + " orbits");
    return scheme_pipeline("cor45", "graph on " + std::to_string(g.vertex_count()) + " vertices", std::move(hyps),
                           *scheme, orbits->partition, index_set, opt);
}

ConstructionReport thm51(const UnbiasedSet& set, const PipelineOptions& opt) {
    if (set.kind() != MatrixKind::Hadamard) fail_hypothesis("Hadamard family", "weighing matrices given");
    return family_pipeline("thm51", set, nullptr, opt);
}

ConstructionReport thm52(const UnbiasedSet& set, const PipelineOptions& opt) {
    if (set.kind() != MatrixKind::Weighing) fail_hypothesis("weighing family", "Hadamard matrices given");
    return family_pipeline("thm52", set, nullptr, opt);
}

ConstructionReport thm54(const UnbiasedSet& set, const Partition& part, const PipelineOptions& opt) {
    if (set.kind() != MatrixKind::Hadamard) fail_hypothesis("Hadamard family", "weighing matrices given");
    return family_pipeline("thm54", set, &part, opt);
}

ConstructionReport thm55(const UnbiasedSet& set, const Partition& part, const PipelineOptions& opt) {
    if (set.kind() != MatrixKind::Weighing) fail_hypothesis("weighing family", "Hadamard matrices given");
    return family_pipeline("thm55", set, &part, opt);
}

ConstructionReport thm56(const UnbiasedSet& set, const Partition& part, const PipelineOptions& opt) {
    Hypotheses hyps;
    const std::int64_t n = require_even_n(hyps, set);
    for (std::size_t i = 0; i < set.size(); ++i)
        hyps.require(HadamardMatrix::validate(set.matrices()[i]).is_regular(), "regular", "member " + std::to_string(i));
    hyps.require((n / 2) % opt.p == 0, "p divides n/2", std::to_string(opt.p) + " | " + std::to_string(n / 2));
    const auto murh = murh_scheme(gramian_b(set));
    return scheme_pipeline("thm56", "regular Hadamard family, n = " + std::to_string(n), std::move(hyps), murh.scheme,
                           part, {1, 2}, opt);
}

ConstructionReport thm58(const UnbiasedSet& set, const Partition& part, const PipelineOptions& opt) {
    Hypotheses hyps;
    const std::int64_t n = require_even_n(hyps, set);
    for (std::size_t i = 0; i < set.size(); ++i)
        hyps.require(HadamardMatrix::validate(set.matrices()[i]).is_bush_type(), "Bush type",
                     "member " + std::to_string(i));
    hyps.require((n / 2) % opt.p == 0, "p divides n/2", std::to_string(opt.p) + " | " + std::to_string(n / 2));
    const auto bush = bush_schemes(set);
    return scheme_pipeline("thm58", "Bush-type family, five classes, n = " + std::to_string(n), std::move(hyps),
                           bush.five, part, {2, 3, 4, 5}, opt);
}

ConstructionReport thm59(const UnbiasedSet& set, const Partition& part, const PipelineOptions& opt) {
    Hypotheses hyps;
    const std::int64_t n = require_even_n(hyps, set);
    for (std::size_t i = 0; i < set.size(); ++i)
        hyps.require(HadamardMatrix::validate(set.matrices()[i]).is_bush_type(), "Bush type",
                     "member " + std::to_string(i));
    hyps.require(n % opt.p == 0, "p divides n", std::to_string(opt.p) + " | " + std::to_string(n));
    const auto bush = bush_schemes(set);
    return scheme_pipeline("thm59", "Bush-type family, eight classes, n = " + std::to_string(n), std::move(hyps),
                           bush.eight, part, {3, 4, 5, 6, 7}, opt);
}

}  // namespace lcdsub
