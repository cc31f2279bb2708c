#include "kolmo/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace kolmo {

namespace {

using json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

template <class T>
bool parse_number(std::string_view s, T& value) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const char* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, value);
    return ec == std::errc() && ptr == end && !s.empty();
}

template <class T>
T parse_or_throw(std::string_view s, const std::string& what) {
    T value{};
    if (!parse_number(s, value)) throw ConfigError(what + ": cannot parse '" + std::string(s) + "'");
    return value;
}

bool getline_lf(std::istream& in, std::string& line, std::size_t lineno) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r')
        throw FormatError("line " + std::to_string(lineno) + " ends with CR; expected LF line endings");
    return true;
}

std::string format_real(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

json real(double x) { return report_real(x); }

json real(const std::optional<double>& x) { return x ? json(report_real(*x)) : json(nullptr); }

template <class M>
json grid(const M& m) {
    json out = json::array();
    for (const auto& row : m) {
        json r = json::array();
        for (const auto& v : row) r.push_back(real(v));
        out.push_back(std::move(r));
    }
    return out;
}

json count_grid(const Grid2<std::uint64_t>& m) {
    return json::array({json::array({m[0][0], m[0][1]}), json::array({m[1][0], m[1][1]})});
}

std::string text_real(const std::optional<double>& x) {
    return x ? format_real(*x, kReportDigits) : std::string("undefined");
}

const char* pass_fail(bool ok) { return ok ? "PASS" : "FAIL"; }

const char* kPairNames[4] = {"11", "12", "21", "22"};

}  // namespace

PolarizationSetting parse_angle(std::string_view text) {
    std::string_view s = trim(text);
    bool degrees = false;
    if (s.size() > 3 && s.substr(s.size() - 3) == "deg") {
        degrees = true;
        s = trim(s.substr(0, s.size() - 3));
    } else if (s.size() > 3 && s.substr(s.size() - 3) == "rad") {
        s = trim(s.substr(0, s.size() - 3));
    }
    double v = 0.0;
    if (!parse_number(s, v)) throw ConfigError("bad angle '" + std::string(text) + "'");
    try {
        return degrees ? PolarizationSetting::degrees(v) : PolarizationSetting::radians(v);
    } catch (const RangeViolation& e) {
        throw ConfigError(std::string("bad angle '") + std::string(text) + "': " + e.what());
    }
}

SimulationConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view body = line;
        if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
        body = trim(body);
        if (!body.empty() && body.back() == '\r') body = trim(body.substr(0, body.size() - 1));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        std::string key(trim(body.substr(0, eq)));
        std::string value(trim(body.substr(eq + 1)));
        if (!kv.emplace(key, value).second) throw ConfigError("duplicate key '" + key + "'");
    }

    static const std::set<std::string> known = {"theta1", "theta2", "theta1p", "theta2p", "pl1",   "pr1",
                                                "trials", "seed",   "shards",  "preset",  "table"};
    for (const auto& [k, v] : kv)
        if (!known.count(k)) throw ConfigError("unknown key '" + k + "'");

    SimulationConfig cfg;
    const char* angle_keys[] = {"theta1", "theta2", "theta1p", "theta2p"};
    int present = 0;
    for (const char* k : angle_keys) present += kv.count(k) ? 1 : 0;
    if (present != 0 && present != 4) throw ConfigError("give all four of theta1, theta2, theta1p, theta2p");
    if (present == 4)
        cfg.angles = AngleQuad{parse_angle(kv["theta1"]), parse_angle(kv["theta2"]), parse_angle(kv["theta1p"]),
                               parse_angle(kv["theta2p"])};
    if (kv.count("preset")) {
        if (kv["preset"] != "singlet") throw ConfigError("unknown preset '" + kv["preset"] + "'");
        if (!cfg.angles) throw ConfigError("preset 'singlet' needs the four angles");
    }
    if (kv.count("table")) cfg.table = load_table(base_dir / kv["table"]);

    const double pl1 = kv.count("pl1") ? parse_or_throw<double>(kv["pl1"], "pl1") : 0.5;
    const double pr1 = kv.count("pr1") ? parse_or_throw<double>(kv["pr1"], "pr1") : 0.5;
    try {
        cfg.settings = SettingDistribution::make(pl1, pr1);
    } catch (const ValidationError& e) {
        throw ConfigError(e.what());
    }
    if (kv.count("trials")) cfg.trials = parse_or_throw<std::uint64_t>(kv["trials"], "trials");
    if (kv.count("seed")) cfg.seed = parse_or_throw<std::uint64_t>(kv["seed"], "seed");
    if (kv.count("shards")) cfg.shards = parse_or_throw<std::uint64_t>(kv["shards"], "shards");
    return cfg;
}

SimulationConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
    return parse_config(in, path.parent_path());
}

void write_event_log(std::ostream& out, std::span<const EventRecord> events) {
    std::string buf;
    buf.reserve(64 * 1024);
    buf += "t,i,j,a,b\n";
    char line[64];
    for (const auto& r : events) {
        const int n = std::snprintf(line, sizeof line, "%llu,%d,%d,%d,%d\n", static_cast<unsigned long long>(r.t),
                                    r.i, r.j, r.a, r.b);
        buf.append(line, static_cast<std::size_t>(n));
        if (buf.size() > 60 * 1024) {
            out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
            buf.clear();
        }
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

std::vector<EventRecord> read_event_log(std::istream& in) {
    std::string line;
    std::size_t lineno = 1;
    if (!getline_lf(in, line, lineno) || line != "t,i,j,a,b")
        throw FormatError("event log must start with the header 't,i,j,a,b'");
    std::vector<EventRecord> out;
    while (getline_lf(in, line, ++lineno)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 5) throw FormatError("line " + std::to_string(lineno) + ": expected 5 fields");
        EventRecord r;
        int i = 0, j = 0, a = 0, b = 0;
        if (!parse_number(f[0], r.t) || !parse_number(f[1], i) || !parse_number(f[2], j) || !parse_number(f[3], a) ||
            !parse_number(f[4], b))
            throw FormatError("line " + std::to_string(lineno) + ": malformed record");
        if ((i != 1 && i != 2) || (j != 1 && j != 2) || (a != 1 && a != -1) || (b != 1 && b != -1))
            throw FormatError("line " + std::to_string(lineno) + ": setting must be 1|2 and outcome -1|+1");
        r.i = static_cast<std::int8_t>(i);
        r.j = static_cast<std::int8_t>(j);
        r.a = static_cast<std::int8_t>(a);
        r.b = static_cast<std::int8_t>(b);
        out.push_back(r);
    }
    return out;
}

void write_table(std::ostream& out, const PairwiseTable& table) {
    out << "i,j,eps,epsp,p\n";
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            for (int e : {+1, -1})
                for (int ep : {+1, -1})
                    out << i << ',' << j << ',' << e << ',' << ep << ',' << format_real(table.p(i, j, e, ep), 17)
                        << '\n';
}

PairwiseTable read_table(std::istream& in) {
    std::string line;
    std::size_t lineno = 1;
    if (!getline_lf(in, line, lineno) || line != "i,j,eps,epsp,p")
        throw FormatError("table file must start with the header 'i,j,eps,epsp,p'");
    PairwiseTable::Cells cells{};
    std::array<bool, 16> seen{};
    int rows = 0;
    while (getline_lf(in, line, ++lineno)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 5) throw FormatError("line " + std::to_string(lineno) + ": expected 5 fields");
        int i = 0, j = 0, e = 0, ep = 0;
        double p = 0.0;
        if (!parse_number(f[0], i) || !parse_number(f[1], j) || !parse_number(f[2], e) || !parse_number(f[3], ep) ||
            !parse_number(f[4], p))
            throw FormatError("line " + std::to_string(lineno) + ": malformed row");
        std::size_t idx = 0;
        try {
            idx = PairwiseTable::cell_index(i, j, e, ep);
        } catch (const DomainMismatch&) {
            throw FormatError("line " + std::to_string(lineno) + ": setting must be 1|2 and outcome -1|+1");
        }
        if (seen[idx]) throw FormatError("line " + std::to_string(lineno) + ": duplicate cell");
        seen[idx] = true;
        cells[idx] = p;
        ++rows;
    }
    if (rows != 16) throw FormatError("table file needs 16 rows, found " + std::to_string(rows));
    return PairwiseTable::from_cells(cells);
}

PairwiseTable load_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open table '" + path.string() + "'");
    return read_table(in);
}

double report_real(double x) {
    if (!std::isfinite(x)) return x;
    return std::stod(format_real(x, kReportDigits));
}

json to_json(const ChshReport& r) {
    Matrix2 pij{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) pij[i][j] = r.settings.joint(i + 1, j + 1);
    json out;
    out["settings"] = {{"pl1", real(r.settings.left(1))}, {"pr1", real(r.settings.right(1))}, {"P", grid(pij)}};
    out["unconditional"] = grid(r.unconditional);
    out["table_correlations"] = grid(r.table_correlations);
    out["C"] = r.conditional ? grid(*r.conditional) : json(nullptr);
    out["S"] = real(r.S);
    out["S_C"] = real(r.S_C);
    out["bound_S"] = {{"limit", real(r.bound_S_limit)}, {"pass", r.bound_S}};
    out["bound_SC"] =
        r.bound_SC ? json{{"limit", 4.0}, {"pass", *r.bound_SC}} : json(nullptr);
    out["identity_residual"] = real(r.identity_residual);
    return out;
}

json to_json(const EstimateReport& r) {
    json out;
    out["trials"] = r.trials;
    out["counts"] = count_grid(r.counts);
    out["C_hat"] = grid(r.chat);
    out["stderr"] = grid(r.stderr_);
    out["S_hat"] = real(r.shat);
    out["S_hat_stderr"] = real(r.shat_stderr);
    out["SC_hat"] = real(r.schat);
    out["SC_hat_stderr"] = real(r.schat_stderr);
    if (r.schat_bootstrap_stderr) out["SC_hat_bootstrap_stderr"] = real(r.schat_bootstrap_stderr);
    if (r.exact) out["exact"] = to_json(*r.exact);
    return out;
}

json to_json(const FeasibilityResult& r) {
    json out;
    out["feasible"] = r.feasible;
    if (r.witness) {
        json w = json::array();
        for (std::size_t k = 0; k < 16; ++k) {
            const Assignment x = assignment(k);
            w.push_back({{"assignment", x}, {"p", real(r.witness->weights()[k])}});
        }
        out["witness"] = std::move(w);
    } else {
        out["witness"] = nullptr;
    }
    out["max_chsh_variant"] = real(r.max_chsh_variant);
    if (r.violating_variant)
        out["violating_variant"] = {{"minus_at", kPairNames[r.violating_variant->minus_at]},
                                    {"sign", r.violating_variant->sign}};
    else
        out["violating_variant"] = nullptr;
    out["infeasibility"] = real(r.infeasibility);
    json f = json::array();
    for (double y : r.farkas) f.push_back(real(y));
    out["farkas"] = std::move(f);
    return out;
}

json to_json(const Subspace& s) {
    json basis = json::array();
    for (const auto& v : s.basis()) {
        json vec = json::array();
        for (Eigen::Index k = 0; k < v.size(); ++k) vec.push_back({real(v(k).real()), real(v(k).imag())});
        basis.push_back(std::move(vec));
    }
    return {{"ambient_dim", s.ambient_dim()}, {"dim", s.dim()}, {"basis", std::move(basis)}};
}

std::string to_text(const ChshReport& r) {
    std::ostringstream os;
    os << "settings  P_L(1)=" << format_real(r.settings.left(1), kReportDigits)
       << "  P_R(1)=" << format_real(r.settings.right(1), kReportDigits) << '\n';
    for (int k = 0; k < 4; ++k) {
        const int i = k / 2, j = k % 2;
        os << "pair " << kPairNames[k] << "  <A,B>=" << format_real(r.unconditional[i][j], kReportDigits)
           << "  C=" << (r.conditional ? format_real((*r.conditional)[i][j], kReportDigits) : "undefined") << '\n';
    }
    os << "S    = " << format_real(r.S, kReportDigits) << "  |S| <= " << format_real(r.bound_S_limit, kReportDigits)
       << "  " << pass_fail(r.bound_S) << '\n';
    os << "S_C  = " << text_real(r.S_C) << "  |S_C| <= 4  "
       << (r.bound_SC ? pass_fail(*r.bound_SC) : "n/a") << '\n';
    os << "identity residual = " << format_real(r.identity_residual, kReportDigits) << '\n';
    return os.str();
}

std::string to_text(const EstimateReport& r) {
    std::ostringstream os;
    os << "trials " << r.trials << '\n';
    for (int k = 0; k < 4; ++k) {
        const int i = k / 2, j = k % 2;
        os << "pair " << kPairNames[k] << "  N=" << r.counts[i][j] << "  C_hat=" << text_real(r.chat[i][j])
           << "  stderr=" << text_real(r.stderr_[i][j]) << '\n';
    }
    os << "S_hat  = " << text_real(r.shat) << " +/- " << text_real(r.shat_stderr) << '\n';
    os << "SC_hat = " << text_real(r.schat) << " +/- " << text_real(r.schat_stderr) << '\n';
    if (r.schat_bootstrap_stderr) os << "SC_hat bootstrap stderr = " << text_real(r.schat_bootstrap_stderr) << '\n';
    if (r.exact) os << "-- exact --\n" << to_text(*r.exact);
    return os.str();
}

std::string to_text(const FeasibilityResult& r) {
    std::ostringstream os;
    os << "joint distribution: " << (r.feasible ? "exists" : "does not exist") << '\n';
    os << "max CHSH variant = " << format_real(r.max_chsh_variant, kReportDigits) << '\n';
    if (r.violating_variant)
        os << "violated variant: minus sign at " << kPairNames[r.violating_variant->minus_at] << ", overall sign "
           << (r.violating_variant->sign > 0 ? "+" : "-") << '\n';
    if (r.witness) {
        os << "witness:\n";
        for (std::size_t k = 0; k < 16; ++k) {
            const double w = r.witness->weights()[k];
            if (w == 0.0) continue;
            const Assignment x = assignment(k);
            os << "  (" << x[0] << ',' << x[1] << ',' << x[2] << ',' << x[3] << ")  " << format_real(w, kReportDigits)
               << '\n';
        }
    } else {
        os << "phase-one infeasibility = " << format_real(r.infeasibility, kReportDigits) << '\n';
    }
    return os.str();
}

}  // namespace kolmo
