// simulate.hpp - Monte Carlo of the randomized-settings CHSH experiment and
// the estimators run on its event stream.
//
// Each trial draws the left setting, the right setting and the outcome pair
// from one Philox block: counter {local trial index, 0, 0, 0}, key
// {seed, shard}. Shard s owns the contiguous trial range shard_range(s), so
// the event stream depends on (seed, shards) only, never on thread count.
//
// The OpenMP kernels (simulate, tally) have serial twins kept as references
// for the tests and the benchmark.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kolmo/chsh.hpp"
#include "kolmo/quantum.hpp"

namespace kolmo {

struct SimulationConfig {
    std::optional<AngleQuad> angles;
    std::optional<PairwiseTable> table;
    SettingDistribution settings = SettingDistribution::uniform();
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    std::uint64_t shards = 8;

    /// Throws ConfigError unless trials >= 1, shards >= 1 and exactly one of
    /// {angles, table} is present.
    void validate() const;

    /// The explicit table, or the singlet table at `angles`.
    PairwiseTable resolved_table() const;
};

struct EventRecord {
    std::uint64_t t = 0;
    std::int8_t i = 1;
    std::int8_t j = 1;
    std::int8_t a = 1;
    std::int8_t b = 1;

    friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

struct ShardRange {
    std::uint64_t begin = 0;
    std::uint64_t end = 0;
};

/// Trials [trials*s/shards, trials*(s+1)/shards).
ShardRange shard_range(std::uint64_t trials, std::uint64_t shards, std::uint64_t shard);

/// The trial at position `local` of shard `shard`.
EventRecord draw_trial(const PairwiseTable& table, const SettingDistribution& settings, std::uint64_t seed,
                       std::uint64_t shard, std::uint64_t local, std::uint64_t t);

std::vector<EventRecord> simulate(const SimulationConfig& config);
std::vector<EventRecord> simulate_serial(const SimulationConfig& config);

template <class T>
using Grid2 = std::array<std::array<T, 2>, 2>;

/// Per-cell trial counts and sums of a*b.
struct CellTally {
    Grid2<std::uint64_t> n{};
    Grid2<std::int64_t> sum_ab{};
    std::uint64_t total = 0;

    friend bool operator==(const CellTally&, const CellTally&) = default;
};

/// Throws FormatError on a record with an invalid setting or outcome.
CellTally tally(std::span<const EventRecord> events);
CellTally tally_serial(std::span<const EventRecord> events);

struct EstimateReport {
    std::uint64_t trials = 0;
    Grid2<std::uint64_t> counts{};
    Grid2<std::optional<double>> chat{};    ///< undefined where N_ij = 0
    Grid2<std::optional<double>> stderr_{}; ///< sqrt((1 - C^2) / N)
    std::optional<double> shat;             ///< sum of +/- P(i,j) C_ij
    std::optional<double> shat_stderr;
    std::optional<double> schat;            ///< C11 + C12 + C21 - C22
    std::optional<double> schat_stderr;
    std::optional<double> schat_bootstrap_stderr;
    std::optional<ChshReport> exact;
};

EstimateReport estimate_from_tally(const CellTally& tally, const SettingDistribution& settings);

/// Throws ValidationError on an empty stream.
EstimateReport estimate(std::span<const EventRecord> events, const SettingDistribution& settings);

/// Bootstrap standard error of S_C-hat: `replicates` resamples with
/// replacement, resample r drawing from the Philox stream keyed by
/// {seed ^ kBootstrapSalt, r}. Returns nullopt if a resample leaves a cell
/// empty.
inline constexpr std::uint64_t kBootstrapSalt = 0xB0075700B0075700ULL;
std::optional<double> bootstrap_schat_stderr(std::span<const EventRecord> events, int replicates,
                                             std::uint64_t seed);

}  // namespace kolmo
