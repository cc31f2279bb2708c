// io.hpp - file formats and report rendering.
//
//   config     flat "key = value" lines, '#' starts a comment
//   event log  CSV, header "t,i,j,a,b", LF endings, no quoting
//   table      CSV, header "i,j,eps,epsp,p", 16 rows, 17 significant digits
//   report     JSON (or plain text), reals at 12 significant digits
#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kolmo/jointness.hpp"
#include "kolmo/qlogic.hpp"
#include "kolmo/simulate.hpp"

namespace kolmo {

/// Significant digits used for every real in a report.
inline constexpr int kReportDigits = 12;

/// An angle literal: radians by default, or with a "deg" / "rad" suffix
/// ("45deg", "0.785398rad"). Throws ConfigError on anything else.
PolarizationSetting parse_angle(std::string_view text);

/// Recognized keys: theta1, theta2, theta1p, theta2p, pl1, pr1, trials,
/// seed, shards, preset (only "singlet") and table (a table file, relative
/// to `base_dir`). Unknown keys are a ConfigError.
SimulationConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});
SimulationConfig load_config(const std::filesystem::path& path);

void write_event_log(std::ostream& out, std::span<const EventRecord> events);
std::vector<EventRecord> read_event_log(std::istream& in);

void write_table(std::ostream& out, const PairwiseTable& table);
PairwiseTable read_table(std::istream& in);
PairwiseTable load_table(const std::filesystem::path& path);

/// x rounded to kReportDigits significant digits.
double report_real(double x);

nlohmann::ordered_json to_json(const ChshReport& r);
nlohmann::ordered_json to_json(const EstimateReport& r);
nlohmann::ordered_json to_json(const FeasibilityResult& r);
nlohmann::ordered_json to_json(const Subspace& s);

std::string to_text(const ChshReport& r);
std::string to_text(const EstimateReport& r);
std::string to_text(const FeasibilityResult& r);

}  // namespace kolmo
