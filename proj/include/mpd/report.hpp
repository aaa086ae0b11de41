// Run configuration and deterministic reporting.  A RunConfig describes a
// parameter grid plus output options; a Report is the schema-versioned
// result document.  Report bytes depend only on the configuration and the
// tool version — timings and output paths are deliberately kept out of the
// serialized form so that golden-file comparison is exact.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mpd/arith.hpp"
#include "mpd/hdr.hpp"
#include "mpd/jet.hpp"

namespace mpd {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "mpd-report/1";

// Keys accepted both as CLI flags (--key) and as config-file entries.
// Repeated keys form lists; a flag given on the command line replaces the
// file value for that key wholesale.
using KvList = std::map<std::string, std::vector<std::string>>;

// Parses a flat key = value file.  '#' starts a comment; blank lines are
// ignored.  Throws ConfigError on unreadable files or malformed lines.
KvList parse_config_file(const std::string& path);

struct RunConfig {
    std::vector<std::int64_t> ps{2, 3};
    std::vector<std::int64_t> ms{0, 1};
    std::vector<std::int64_t> ns{1, 2};
    std::vector<std::int64_t> big_ns{1, 2};
    std::int64_t max_weight = 8;
    std::vector<EvalPoint> eval_points;  // empty: per-point defaults
    std::vector<std::string> suites;     // empty: default asserted set
    std::string out_path;                // empty: stdout
    std::string format = "json";         // json | csv
    std::string goldens_dir = "goldens";
    int threads = 1;

    // Grid/bounds validation; throws ConfigError.
    void validate() const;
    // Cartesian product of the parameter lists, in list order (p-major).
    std::vector<PParams> grid() const;
    // Resolves the suite selection: empty -> the asserted set, the single
    // entry "none" -> empty, "all" -> asserted + jet.  Throws ConfigError on
    // unknown names.
    std::vector<std::string> selected_suites() const;
    // Evaluation points for one grid point: the configured ones (checked for
    // length n), or the defaults 0, 1, p * 1.
    std::vector<EvalPoint> eval_for(const PParams& par) const;
};

// Builds a RunConfig from parsed key/value pairs on top of the defaults.
// Unknown keys and unparsable values throw ConfigError.
RunConfig config_from_kv(const KvList& kv);

struct SuiteResult {
    std::string suite;
    std::string status = "pass";  // pass | fail | skip
    bool asserted = true;
    std::int64_t checks = 0;
    std::vector<std::string> diagnostics;
    double seconds = 0;  // reported on stderr only, never serialized
};

struct HomologyRow {
    std::int64_t degree = 0;
    std::int64_t free_rank = 0;
    std::vector<std::int64_t> torsion;
};

struct HomologyTable {
    PParams par;
    std::vector<std::pair<std::int64_t, std::vector<HomologyRow>>> by_weight;
    std::int64_t total_h0_free = 0;  // summed over the listed weights
};

struct Report {
    std::string command;  // verify | homology | explore-jet | report
    RunConfig config;
    std::vector<SuiteResult> suites;
    std::vector<HomologyTable> homology;
    std::vector<FreenessReport> jet;

    // False iff some asserted suite failed.
    bool asserted_pass() const;
    // Deterministic serializations; rendered() picks by config.format.
    std::string to_json() const;
    std::string to_csv() const;
    std::string rendered() const;
};

}  // namespace mpd
