#include "lcdsub/codes.hpp"

#include <algorithm>
#include <random>

#include "lcdsub/error.hpp"

namespace lcdsub {

SubspaceCode::SubspaceCode(std::vector<Subspace> words) : words_(std::move(words)) {
    if (words_.empty()) throw Error(ErrorCode::EmptyCode, "a subspace code needs at least one codeword");
    for (const auto& w : words_) require_same_ambient(words_.front(), w);
    std::sort(words_.begin(), words_.end());
    words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
}

std::set<std::size_t> SubspaceCode::dims() const {
    std::set<std::size_t> k;
    for (const auto& w : words_) k.insert(w.dim());
    return k;
}

namespace {

std::uint64_t unordered_pairs(std::size_t m) { return static_cast<std::uint64_t>(m) * (m - 1) / 2; }

std::size_t exact_min_distance(const SubspaceCode& code) {
    std::size_t best = SIZE_MAX;
    for (std::size_t i = 0; i < code.size() && best > 1; ++i)
        for (std::size_t j = i + 1; j < code.size(); ++j) best = std::min(best, distance(code[i], code[j]));
    return best;
}

CodeParams base_params(const SubspaceCode& code) {
    CodeParams p;
    p.n = code.ambient_dim();
    p.size = code.size();
    p.dims = code.dims();
    p.q = code.field()->order();
    return p;
}

}  // namespace

std::size_t minimum_distance(const SubspaceCode& code, std::uint64_t pair_budget) {
    if (code.size() < 2) throw Error(ErrorCode::DegenerateCode, "minimum distance needs two codewords");
    const auto pairs = unordered_pairs(code.size());
    if (pairs > pair_budget)
        throw Error(ErrorCode::PairBudgetExceeded,
                    std::to_string(pairs) + " pairs exceed the budget of " + std::to_string(pair_budget));
    return exact_min_distance(code);
}

CodeParams params(const SubspaceCode& code, std::uint64_t pair_budget) {
    CodeParams p = base_params(code);
    if (code.size() >= 2) p.d = minimum_distance(code, pair_budget);
    return p;
}

CodeParams estimate_params(const SubspaceCode& code, std::uint64_t pair_budget, std::uint64_t seed) {
    CodeParams p = base_params(code);
    if (code.size() < 2) return p;
    if (unordered_pairs(code.size()) <= pair_budget) {
        p.d = exact_min_distance(code);
        return p;
    }
    std::mt19937_64 rng(seed);
    const std::size_t m = code.size();
    std::size_t best = SIZE_MAX;
    for (std::uint64_t s = 0; s < pair_budget && best > 1; ++s) {
        const std::size_t i = rng() % m;
        std::size_t j = rng() % (m - 1);
        if (j >= i) ++j;
        best = std::min(best, distance(code[i], code[j]));
    }
    p.d = best;
    p.d_exhaustive = false;
    return p;
}

CodeLcdVerdict is_lcd_subspace_code(const SubspaceCode& code, std::uint64_t pair_budget, std::uint64_t seed) {
    const std::size_t m = code.size();
    std::vector<Subspace> duals;
    duals.reserve(m);
    for (const auto& w : code.codewords()) duals.push_back(dual(w));

    CodeLcdVerdict out;
    auto check = [&](std::size_t i, std::size_t j) {
        ++out.pairs_checked;
        if (intersection_dim(code[i], duals[j]) != 0) {
            out.lcd = false;
            out.witness = {i, j};
            return false;
        }
        return true;
    };

    const std::uint64_t ordered = static_cast<std::uint64_t>(m) * m;
    if (ordered <= pair_budget) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (!check(i, j)) return out;
        return out;
    }

    out.exhaustive = false;
    for (std::size_t i = 0; i < m; ++i)
        if (!check(i, i)) return out;
    // Collect violations among the sampled pairs and keep the smallest one, so the
    // witness is the same whatever order the samples come in.
    std::mt19937_64 rng(seed);
    std::optional<std::pair<std::size_t, std::size_t>> first;
    for (std::uint64_t s = 0; s < pair_budget; ++s) {
        const std::size_t i = rng() % m, j = rng() % m;
        ++out.pairs_checked;
        if (intersection_dim(code[i], duals[j]) != 0 && (!first || std::pair{i, j} < *first)) first = {i, j};
    }
    if (first) {
        out.lcd = false;
        out.witness = first;
    }
    return out;
}

namespace {

DecodeOutcome pick_closest(std::vector<std::size_t> distances) {
    DecodeOutcome out;
    const auto best = std::min_element(distances.begin(), distances.end());
    out.distance = *best;
    if (std::count(distances.begin(), distances.end(), *best) == 1)
        out.index = static_cast<std::size_t>(best - distances.begin());
    out.distances = std::move(distances);
    return out;
}

}  // namespace

DecodeOutcome decode_naive(const SubspaceCode& code, const Subspace& received) {
    std::vector<std::size_t> d;
    d.reserve(code.size());
    for (const auto& w : code.codewords()) d.push_back(distance(w, received));
    return pick_closest(std::move(d));
}

ProjectionDecoder::ProjectionDecoder(const SubspaceCode& code) : field_(code.field()), n_(code.ambient_dim()) {
    for (std::size_t i = 0; i < code.size(); ++i) {
        try {
            projectors_.push_back(projector_complement(code[i]));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NotLCD) throw;
            throw Error(ErrorCode::NotLCDCode, "codeword " + std::to_string(i) + " meets its dual",
                        "codeword " + std::to_string(i));
        }
        dims_.push_back(code[i].dim());
    }
}

DecodeOutcome ProjectionDecoder::decode_generators(const MatrixFq& g, std::size_t received_dim) const {
    std::vector<std::size_t> d;
    d.reserve(dims_.size());
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        // dim(C_i + C) = dim C_i + dim(C P_i), and dim(C_i ∩ C) follows from it.
        const std::size_t projected = g.rows() == 0 ? 0 : rank(g * projectors_[i]);
        d.push_back(dims_[i] + 2 * projected - received_dim);
    }
    return pick_closest(std::move(d));
}

DecodeOutcome ProjectionDecoder::decode(const Subspace& received) const {
    require_same_field(field_, received.field());
    if (received.ambient_dim() != n_) throw Error(ErrorCode::AmbientMismatch, "received word lives in another space");
    return decode_generators(received.basis(), received.dim());
}

DecodeOutcome ProjectionDecoder::decode(const MatrixFq& generators) const {
    require_same_field(field_, generators.field());
    if (generators.cols() != n_) throw Error(ErrorCode::AmbientMismatch, "received generators have the wrong length");
    return decode_generators(generators, generators.rows() == 0 ? 0 : rank(generators));
}

DecodeOutcome decode_projection(const SubspaceCode& code, const Subspace& received) {
    return ProjectionDecoder(code).decode(received);
}

bool classical_lcd_check(const MatrixFq& g) {
    if (rank(g) != g.rows())
        throw Error(ErrorCode::RankDeficient, "generator matrix has rank " + std::to_string(rank(g)) + " < " +
                                                  std::to_string(g.rows()));
    return det(g * g.transpose()) != 0;
}

}  // namespace lcdsub
