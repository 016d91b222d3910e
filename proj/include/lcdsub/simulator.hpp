#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "lcdsub/codes.hpp"

namespace lcdsub {

/// Operator channel: drop `erasures` dimensions of the sent codeword, then adjoin
/// `errors` uniform random vectors of F_q^n.
struct ChannelSpec {
    std::size_t erasures = 0;
    std::size_t errors = 0;
    std::uint64_t seed = 0;
};

/// Throws InvalidSpec when erasures exceed the smallest codeword dimension or errors exceed n.
void validate_channel(const SubspaceCode& code, const ChannelSpec& spec);

/// Seed of the independent stream for one trial (splitmix64 of seed and index).
std::uint64_t trial_stream_seed(std::uint64_t seed, std::uint64_t trial);

/// Received word for one trial. Erasures keep a uniformly random subspace of
/// dimension dim - erasures. Throws InvalidSpec.
Subspace corrupt(const Subspace& codeword, const ChannelSpec& spec, std::uint64_t trial);

enum class Verdict { Correct, Failure, Wrong };

const char* to_string(Verdict v) noexcept;

struct TrialRecord {
    std::size_t sent = 0;
    Verdict verdict = Verdict::Correct;
    std::optional<std::size_t> decoded;
    std::size_t received_distance = 0;  // d(received, sent)
    std::size_t decoded_distance = 0;   // smallest distance to any codeword

    bool operator==(const TrialRecord&) const = default;
};

struct TrialTimings {
    double naive_median_ns = 0;
    double projection_median_ns = 0;
};

struct TrialStats {
    std::size_t trials = 0;
    std::size_t correct = 0;
    std::size_t failure = 0;
    std::size_t wrong = 0;
    std::size_t agreement = 0;
    double mean_received_distance = 0;
    double mean_decoded_distance = 0;
    std::vector<TrialRecord> records;
    /// Wall-clock figures; everything else is a pure function of (code, spec, trials).
    TrialTimings timings;
};

/// Equality of everything except the timings.
bool same_outcomes(const TrialStats& a, const TrialStats& b);

struct SimulationOptions {
    unsigned threads = 1;
    bool keep_records = true;
};

/// Sends a uniformly chosen codeword per trial through the channel and decodes it
/// with both decoders. Throws NotLCDCode (code not LCD), InvalidSpec (trials == 0 or
/// bad channel) and InternalInconsistency if the decoders ever disagree.
TrialStats run_experiment(const SubspaceCode& code, const ChannelSpec& spec, std::size_t trials,
                          const SimulationOptions& opt = {});

}  // namespace lcdsub
