#include "kolmo/simulate.hpp"

#include <cmath>

#include "kolmo/philox.hpp"

namespace kolmo {

namespace {

constexpr int kSigns[2] = {+1, -1};

EventRecord decode_trial(const Philox4x64::Counter& block, const PairwiseTable& table,
                         const SettingDistribution& settings, std::uint64_t t) {
    EventRecord rec;
    rec.t = t;
    rec.i = to_unit(block[0]) < settings.left(1) ? 1 : 2;
    rec.j = to_unit(block[1]) < settings.right(1) ? 1 : 2;

    // Inverse CDF over the cells of block (i, j) in table order; rounding
    // slack past the last cell falls back to the last cell of positive mass.
    const double u = to_unit(block[2]);
    double cum = 0.0;
    bool placed = false;
    for (int e : kSigns) {
        for (int ep : kSigns) {
            const double p = table.p(rec.i, rec.j, e, ep);
            if (p <= 0.0) continue;
            cum += p;
            rec.a = static_cast<std::int8_t>(e);
            rec.b = static_cast<std::int8_t>(ep);
            if (u < cum) {
                placed = true;
                break;
            }
        }
        if (placed) break;
    }
    return rec;
}

void require_record(const EventRecord& r) {
    if ((r.i != 1 && r.i != 2) || (r.j != 1 && r.j != 2) || (r.a != 1 && r.a != -1) || (r.b != 1 && r.b != -1))
        throw FormatError("event record " + std::to_string(r.t) + " has an invalid setting or outcome");
}

std::uint64_t uniform_index(std::uint64_t x, std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * n) >> 64);
}

}  // namespace

void SimulationConfig::validate() const {
    if (trials < 1) throw ConfigError("trials must be at least 1");
    if (shards < 1) throw ConfigError("shards must be at least 1");
    if (angles.has_value() == table.has_value())
        throw ConfigError("exactly one of angles or table must be given");
}

PairwiseTable SimulationConfig::resolved_table() const {
    validate();
    return table ? *table : epr_bohm_table(*angles);
}

ShardRange shard_range(std::uint64_t trials, std::uint64_t shards, std::uint64_t shard) {
    const auto at = [&](std::uint64_t s) {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(trials) * s / shards);
    };
    return {at(shard), at(shard + 1)};
}

EventRecord draw_trial(const PairwiseTable& table, const SettingDistribution& settings, std::uint64_t seed,
                       std::uint64_t shard, std::uint64_t local, std::uint64_t t) {
    return decode_trial(Philox4x64::block({local, 0, 0, 0}, {seed, shard}), table, settings, t);
}

std::vector<EventRecord> simulate(const SimulationConfig& config) {
    const PairwiseTable table = config.resolved_table();
    std::vector<EventRecord> out(config.trials);
    const auto shards = static_cast<std::int64_t>(config.shards);

#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t s = 0; s < shards; ++s) {
        const auto shard = static_cast<std::uint64_t>(s);
        const ShardRange r = shard_range(config.trials, config.shards, shard);
        for (std::uint64_t t = r.begin; t < r.end; ++t)
            out[t] = draw_trial(table, config.settings, config.seed, shard, t - r.begin, t);
    }
    return out;
}

std::vector<EventRecord> simulate_serial(const SimulationConfig& config) {
    const PairwiseTable table = config.resolved_table();
    std::vector<EventRecord> out;
    out.reserve(config.trials);
    for (std::uint64_t shard = 0; shard < config.shards; ++shard) {
        PhiloxStream stream(config.seed, shard);
        const ShardRange r = shard_range(config.trials, config.shards, shard);
        for (std::uint64_t t = r.begin; t < r.end; ++t)
            out.push_back(decode_trial(stream.next(), table, config.settings, t));
    }
    return out;
}

CellTally tally(std::span<const EventRecord> events) {
    std::uint64_t n[4] = {0, 0, 0, 0};
    std::int64_t sum[4] = {0, 0, 0, 0};
    const auto size = static_cast<std::int64_t>(events.size());
    bool bad = false;

#pragma omp parallel for reduction(+ : n[:4], sum[:4]) reduction(|| : bad)
    for (std::int64_t k = 0; k < size; ++k) {
        const EventRecord& r = events[static_cast<std::size_t>(k)];
        if ((r.i != 1 && r.i != 2) || (r.j != 1 && r.j != 2) || (r.a != 1 && r.a != -1) || (r.b != 1 && r.b != -1)) {
            bad = true;
            continue;
        }
        const int cell = (r.i - 1) * 2 + (r.j - 1);
        n[cell] += 1;
        sum[cell] += r.a * r.b;
    }
    if (bad)
        for (const auto& r : events) require_record(r);

    CellTally out;
    for (int c = 0; c < 4; ++c) {
        out.n[c / 2][c % 2] = n[c];
        out.sum_ab[c / 2][c % 2] = sum[c];
    }
    out.total = events.size();
    return out;
}

CellTally tally_serial(std::span<const EventRecord> events) {
    CellTally out;
    for (const auto& r : events) {
        require_record(r);
        out.n[r.i - 1][r.j - 1] += 1;
        out.sum_ab[r.i - 1][r.j - 1] += r.a * r.b;
    }
    out.total = events.size();
    return out;
}

EstimateReport estimate_from_tally(const CellTally& tally, const SettingDistribution& settings) {
    EstimateReport rep;
    rep.trials = tally.total;
    rep.counts = tally.n;
    bool all_defined = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const std::uint64_t n = tally.n[i][j];
            if (n == 0) {
                all_defined = false;
                continue;
            }
            const double c = static_cast<double>(tally.sum_ab[i][j]) / static_cast<double>(n);
            rep.chat[i][j] = c;
            rep.stderr_[i][j] = std::sqrt(std::max(0.0, 1.0 - c * c) / static_cast<double>(n));
        }
    if (!all_defined) return rep;

    double s = 0.0, s_var = 0.0, sc = 0.0, sc_var = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double sign = (i == 1 && j == 1) ? -1.0 : 1.0;
            const double pij = settings.joint(i + 1, j + 1);
            const double se = *rep.stderr_[i][j];
            s += sign * pij * *rep.chat[i][j];
            s_var += pij * pij * se * se;
            sc += sign * *rep.chat[i][j];
            sc_var += se * se;
        }
    rep.shat = s;
    rep.shat_stderr = std::sqrt(s_var);
    rep.schat = sc;
    rep.schat_stderr = std::sqrt(sc_var);
    return rep;
}

EstimateReport estimate(std::span<const EventRecord> events, const SettingDistribution& settings) {
    if (events.empty()) throw ValidationError("cannot estimate from an empty event stream");
    return estimate_from_tally(tally(events), settings);
}

std::optional<double> bootstrap_schat_stderr(std::span<const EventRecord> events, int replicates,
                                             std::uint64_t seed) {
    if (events.empty()) throw ValidationError("cannot bootstrap an empty event stream");
    if (replicates < 2) throw ValidationError("bootstrap needs at least 2 replicates");
    for (const auto& r : events) require_record(r);

    const std::uint64_t n = events.size();
    std::vector<double> values(static_cast<std::size_t>(replicates), 0.0);
    bool degenerate = false;

#pragma omp parallel for schedule(dynamic, 1) reduction(|| : degenerate)
    for (int rep = 0; rep < replicates; ++rep) {
        PhiloxStream stream(seed ^ kBootstrapSalt, static_cast<std::uint64_t>(rep));
        Grid2<std::uint64_t> cnt{};
        Grid2<std::int64_t> sum{};
        Philox4x64::Counter block{};
        for (std::uint64_t k = 0; k < n; ++k) {
            if (k % 4 == 0) block = stream.next();
            const EventRecord& r = events[uniform_index(block[k % 4], n)];
            cnt[r.i - 1][r.j - 1] += 1;
            sum[r.i - 1][r.j - 1] += r.a * r.b;
        }
        double sc = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                if (cnt[i][j] == 0) {
                    degenerate = true;
                    continue;
                }
                const double sign = (i == 1 && j == 1) ? -1.0 : 1.0;
                sc += sign * static_cast<double>(sum[i][j]) / static_cast<double>(cnt[i][j]);
            }
        values[static_cast<std::size_t>(rep)] = sc;
    }
    if (degenerate) return std::nullopt;

    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= replicates;
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    return std::sqrt(var / (replicates - 1));
}

}  // namespace kolmo
