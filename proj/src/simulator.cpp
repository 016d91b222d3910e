#include "lcdsub/simulator.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <random>
#include <string>
#include <thread>

#include "lcdsub/error.hpp"

namespace lcdsub {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Codeword choice draws from its own stream so corrupt() alone reproduces the channel.
constexpr std::uint64_t kPickDomain = 0x70696b636f646557ULL;

MatrixFq random_matrix(const FieldPtr& f, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    std::uniform_int_distribution<Field::Elem> elem(0, f->order() - 1);
    MatrixFq m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = elem(rng);
    return m;
}

double median(std::vector<double> v) {
    if (v.empty()) return 0;
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    if (v.size() % 2) return v[mid];
    const double hi = v[mid];
    return (hi + *std::max_element(v.begin(), v.begin() + mid)) / 2;
}

struct TrialResult {
    TrialRecord record;
    bool agree = false;
    double naive_ns = 0;
    double projection_ns = 0;
};

}  // namespace

void validate_channel(const SubspaceCode& code, const ChannelSpec& spec) {
    std::size_t min_dim = code.ambient_dim();
    for (const auto& w : code.codewords()) min_dim = std::min(min_dim, w.dim());
    if (spec.erasures > min_dim)
        throw Error(ErrorCode::InvalidSpec, "more erasures than the smallest codeword dimension",
                    std::to_string(spec.erasures) + ">" + std::to_string(min_dim));
    if (spec.errors > code.ambient_dim())
        throw Error(ErrorCode::InvalidSpec, "more error vectors than the ambient dimension",
                    std::to_string(spec.errors) + ">" + std::to_string(code.ambient_dim()));
}

std::uint64_t trial_stream_seed(std::uint64_t seed, std::uint64_t trial) {
    return splitmix64(splitmix64(seed) ^ trial);
}

Subspace corrupt(const Subspace& codeword, const ChannelSpec& spec, std::uint64_t trial) {
    const FieldPtr& f = codeword.field();
    const std::size_t n = codeword.ambient_dim();
    if (spec.erasures > codeword.dim())
        throw Error(ErrorCode::InvalidSpec, "more erasures than the codeword dimension",
                    std::to_string(spec.erasures) + ">" + std::to_string(codeword.dim()));
    if (spec.errors > n)
        throw Error(ErrorCode::InvalidSpec, "more error vectors than the ambient dimension",
                    std::to_string(spec.errors) + ">" + std::to_string(n));

    std::mt19937_64 rng(trial_stream_seed(spec.seed, trial));
    const std::size_t keep = codeword.dim() - spec.erasures;
    MatrixFq coeff = random_matrix(f, keep, codeword.dim(), rng);
    while (rank(coeff) != keep) coeff = random_matrix(f, keep, codeword.dim(), rng);
    const MatrixFq kept = coeff * codeword.basis();
    const MatrixFq noise = random_matrix(f, spec.errors, n, rng);

    MatrixFq all(f, keep + spec.errors, n);
    for (std::size_t i = 0; i < keep; ++i)
        for (std::size_t j = 0; j < n; ++j) all(i, j) = kept(i, j);
    for (std::size_t i = 0; i < spec.errors; ++i)
        for (std::size_t j = 0; j < n; ++j) all(keep + i, j) = noise(i, j);
    return Subspace::row_space(all);
}

const char* to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::Correct: return "correct";
        case Verdict::Failure: return "failure";
        case Verdict::Wrong: return "wrong";
    }
    return "?";
}

bool same_outcomes(const TrialStats& a, const TrialStats& b) {
    return a.trials == b.trials && a.correct == b.correct && a.failure == b.failure && a.wrong == b.wrong &&
           a.agreement == b.agreement && a.mean_received_distance == b.mean_received_distance &&
           a.mean_decoded_distance == b.mean_decoded_distance && a.records == b.records;
}

TrialStats run_experiment(const SubspaceCode& code, const ChannelSpec& spec, std::size_t trials,
                          const SimulationOptions& opt) {
    if (trials == 0) throw Error(ErrorCode::InvalidSpec, "at least one trial is needed");
    validate_channel(code, spec);
    const auto lcd = is_lcd_subspace_code(code);
    if (!lcd.lcd) {
        std::string w;
        if (lcd.witness) w = std::to_string(lcd.witness->first) + "," + std::to_string(lcd.witness->second);
        throw Error(ErrorCode::NotLCDCode, "code is not an LCD subspace code", w);
    }
    const ProjectionDecoder projection(code);

    std::vector<TrialResult> results(trials);
    auto run_one = [&](std::size_t t) {
        using clock = std::chrono::steady_clock;
        std::mt19937_64 pick(trial_stream_seed(spec.seed ^ kPickDomain, t));
        const std::size_t sent = std::uniform_int_distribution<std::size_t>(0, code.size() - 1)(pick);
        const Subspace received = corrupt(code[sent], spec, t);

        const auto t0 = clock::now();
        const DecodeOutcome naive = decode_naive(code, received);
        const auto t1 = clock::now();
        const DecodeOutcome proj = projection.decode(received);
        const auto t2 = clock::now();

        TrialResult& r = results[t];
        r.agree = naive == proj;
        r.naive_ns = std::chrono::duration<double, std::nano>(t1 - t0).count();
        r.projection_ns = std::chrono::duration<double, std::nano>(t2 - t1).count();
        r.record.sent = sent;
        r.record.decoded = naive.index;
        r.record.received_distance = naive.distances[sent];
        r.record.decoded_distance = naive.distance;
        r.record.verdict = !naive.index ? Verdict::Failure : *naive.index == sent ? Verdict::Correct : Verdict::Wrong;
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(trials)));
    if (threads == 1) {
        for (std::size_t t = 0; t < trials; ++t) run_one(t);
    } else {
        std::vector<std::exception_ptr> errors(threads);
        {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < threads; ++w)
                pool.emplace_back([&, w] {
                    try {
                        for (std::size_t t = w; t < trials; t += threads) run_one(t);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
        }
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    TrialStats s;
    s.trials = trials;
    std::vector<double> naive_ns, proj_ns;
    double recv = 0, dec = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const TrialResult& r = results[t];
        if (!r.agree)
            throw Error(ErrorCode::InternalInconsistency, "naive and projection decoders disagree",
                        "trial " + std::to_string(t));
        ++s.agreement;
        switch (r.record.verdict) {
            case Verdict::Correct: ++s.correct; break;
            case Verdict::Failure: ++s.failure; break;
            case Verdict::Wrong: ++s.wrong; break;
        }
        recv += static_cast<double>(r.record.received_distance);
        dec += static_cast<double>(r.record.decoded_distance);
        naive_ns.push_back(r.naive_ns);
        proj_ns.push_back(r.projection_ns);
        if (opt.keep_records) s.records.push_back(r.record);
    }
    s.mean_received_distance = recv / static_cast<double>(trials);
    s.mean_decoded_distance = dec / static_cast<double>(trials);
    s.timings.naive_median_ns = median(std::move(naive_ns));
    s.timings.projection_median_ns = median(std::move(proj_ns));
    return s;
}

}  // namespace lcdsub
