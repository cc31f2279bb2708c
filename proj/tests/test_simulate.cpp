#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kolmo/simulate.hpp"
#include "support/generators.hpp"

using namespace kolmo;

namespace {

SimulationConfig singlet_config(std::uint64_t trials, std::uint64_t seed, std::uint64_t shards = 8) {
    SimulationConfig c;
    c.angles = AngleQuad::tsirelson();
    c.trials = trials;
    c.seed = seed;
    c.shards = shards;
    return c;
}

// Hand tally of one cell straight from the records.
std::pair<std::uint64_t, std::int64_t> count_cell(const std::vector<EventRecord>& ev, int i, int j) {
    std::uint64_t n = 0;
    std::int64_t s = 0;
    for (const auto& r : ev)
        if (r.i == i && r.j == j) {
            ++n;
            s += r.a * r.b;
        }
    return {n, s};
}

}  // namespace

TEST_CASE("config validation") {
    auto c = singlet_config(10, 1);
    CHECK_NOTHROW(c.validate());
    c.trials = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = singlet_config(10, 1, 0);
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = singlet_config(10, 1);
    c.table = PairwiseTable::uniform();
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.angles.reset();
    c.table.reset();
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("shard ranges tile the trials") {
    for (std::uint64_t trials : {1ULL, 7ULL, 1000ULL, ~0ULL})
        for (std::uint64_t shards : {1ULL, 3ULL, 8ULL}) {
            std::uint64_t next = 0;
            for (std::uint64_t s = 0; s < shards; ++s) {
                const auto r = shard_range(trials, shards, s);
                CHECK(r.begin == next);
                next = r.end;
            }
            CHECK(next == trials);
        }
}

TEST_CASE("degenerate table and settings give a deterministic stream") {
    SimulationConfig c;
    PairwiseTable::Cells cells{};
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) cells[PairwiseTable::cell_index(i, j, 1, -1)] = 1.0;
    c.table = PairwiseTable::from_cells(cells);
    c.settings = SettingDistribution::make(1.0, 0.0);
    c.trials = 1000;
    for (const auto& r : simulate(c)) {
        CHECK(r.i == 1);
        CHECK(r.j == 2);
        CHECK(r.a == 1);
        CHECK(r.b == -1);
    }
}

TEST_CASE("streams are reproducible and thread-independent") {
    const auto a = simulate(singlet_config(20000, 42));
    CHECK(a == simulate(singlet_config(20000, 42)));
    CHECK(a != simulate(singlet_config(20000, 43)));
    for (std::uint64_t shards : {1ULL, 3ULL, 8ULL, 64ULL}) {
        const auto c = singlet_config(5003, 9, shards);
        CHECK(simulate(c) == simulate_serial(c));
    }
    for (std::size_t t = 0; t < a.size(); ++t) CHECK(a[t].t == t);
}

TEST_CASE("tally twins and a hand count agree") {
    const auto ev = simulate(singlet_config(30000, 5));
    const auto par = tally(ev), ser = tally_serial(ev);
    CHECK(par == ser);
    CHECK(par.total == 30000);
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) {
            const auto [n, s] = count_cell(ev, i, j);
            CHECK(par.n[i - 1][j - 1] == n);
            CHECK(par.sum_ab[i - 1][j - 1] == s);
        }
    std::vector<EventRecord> bad{{0, 3, 1, 1, 1}};
    CHECK_THROWS_AS(tally(bad), FormatError);
    CHECK_THROWS_AS(tally_serial(bad), FormatError);
}

TEST_CASE("setting counts match their probabilities") {
    // N_ij ~ Binomial(1e6, 1/4), sigma about 433.
    const auto t = tally(simulate(singlet_config(1000000, 11)));
    for (const auto& row : t.n)
        for (auto n : row) CHECK(std::abs(static_cast<double>(n) - 250000.0) < 4 * 433.0);
}

TEST_CASE("estimator examples") {
    CellTally t;
    t.n = {{{{4, 4}}, {{4, 4}}}};
    t.sum_ab = {{{{4, 4}}, {{4, -4}}}};
    t.total = 16;
    const auto r = estimate_from_tally(t, SettingDistribution::uniform());
    CHECK(*r.chat[0][0] == 1.0);
    CHECK(*r.stderr_[0][0] == 0.0);
    CHECK(*r.schat == 4.0);
    CHECK(*r.shat == 1.0);

    t.sum_ab = {{{{2, 0}}, {{0, 0}}}};
    const auto h = estimate_from_tally(t, SettingDistribution::uniform());
    CHECK(*h.chat[0][0] == 0.5);
    CHECK(std::abs(*h.stderr_[0][0] - std::sqrt(0.75 / 4.0)) < 1e-15);
    CHECK(std::abs(*h.schat_stderr - std::sqrt(0.75 / 4.0 + 3 * 0.25)) < 1e-15);

    CellTally empty = t;
    empty.n[1][1] = 0;
    empty.sum_ab[1][1] = 0;
    const auto e = estimate_from_tally(empty, SettingDistribution::uniform());
    CHECK_FALSE(e.chat[1][1].has_value());
    CHECK_FALSE(e.schat.has_value());
    CHECK_FALSE(e.shat.has_value());

    CHECK_THROWS_AS(estimate(std::vector<EventRecord>{}, SettingDistribution::uniform()), ValidationError);
}

TEST_CASE("property: estimates are consistent with the exact value") {
    const double exact = 2 * std::numbers::sqrt2;
    int inside = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto r = estimate(simulate(singlet_config(20000, seed)), SettingDistribution::uniform());
        if (std::abs(*r.schat - exact) <= 4 * *r.schat_stderr) ++inside;
        CHECK(std::abs(*r.shat) <= 1.0 + 4 * *r.shat_stderr);
        CHECK(std::abs(*r.schat - 4 * *r.shat) < 0.05);
    }
    CHECK(inside >= 198);

    // Error shrinks with N.
    double err_small = 0.0, err_large = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        err_small += std::abs(*estimate(simulate(singlet_config(10000, seed)), SettingDistribution::uniform()).schat - exact);
        err_large += std::abs(*estimate(simulate(singlet_config(1000000, seed)), SettingDistribution::uniform()).schat - exact);
    }
    CHECK(err_large < err_small);
}

TEST_CASE("bootstrap agrees with the analytic standard error") {
    const auto ev = simulate(singlet_config(40000, 3));
    const auto r = estimate(ev, SettingDistribution::uniform());
    const auto b = bootstrap_schat_stderr(ev, 200, 3);
    REQUIRE(b.has_value());
    CHECK(*b == doctest::Approx(*r.schat_stderr).epsilon(0.25));
    CHECK(b == bootstrap_schat_stderr(ev, 200, 3));
    CHECK_THROWS_AS(bootstrap_schat_stderr(ev, 1, 3), ValidationError);
}
