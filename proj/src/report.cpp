#include "mpd/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mpd/errors.hpp"
#include "mpd/suites.hpp"

namespace mpd {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::int64_t parse_int(const std::string& key, const std::string& s) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used != s.size()) throw ConfigError("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("value for '" + key + "' is not an integer: '" + s + "'");
    }
}

std::vector<std::int64_t> parse_int_list(const std::string& key,
                                         const std::vector<std::string>& vs) {
    std::vector<std::int64_t> out;
    for (const std::string& s : vs) out.push_back(parse_int(key, s));
    return out;
}

EvalPoint parse_eval(const std::string& s) {
    EvalPoint pt;
    std::stringstream ss(s);
    std::string coord;
    while (std::getline(ss, coord, ',')) {
        const std::int64_t v = parse_int("eval", trim(coord));
        if (v < 0) throw ConfigError("evaluation coordinates must be nonnegative");
        pt.push_back(static_cast<std::uint64_t>(v));
    }
    if (pt.empty()) throw ConfigError("empty evaluation point");
    return pt;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string join_plus(const std::vector<std::int64_t>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? "+" : "") + std::to_string(v[i]);
    return out;
}

}  // namespace

KvList parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    KvList kv;
    std::string line;
    std::int64_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": empty key or value");
        kv[key].push_back(value);
    }
    return kv;
}

RunConfig config_from_kv(const KvList& kv) {
    RunConfig cfg;
    for (const auto& [key, values] : kv) {
        if (key == "p")
            cfg.ps = parse_int_list(key, values);
        else if (key == "m")
            cfg.ms = parse_int_list(key, values);
        else if (key == "n")
            cfg.ns = parse_int_list(key, values);
        else if (key == "modulus-exp")
            cfg.big_ns = parse_int_list(key, values);
        else if (key == "max-weight")
            cfg.max_weight = parse_int(key, values.back());
        else if (key == "eval") {
            cfg.eval_points.clear();
            for (const std::string& s : values) cfg.eval_points.push_back(parse_eval(s));
        } else if (key == "suite")
            cfg.suites = values;
        else if (key == "out")
            cfg.out_path = values.back();
        else if (key == "format")
            cfg.format = values.back();
        else if (key == "goldens-dir")
            cfg.goldens_dir = values.back();
        else if (key == "threads")
            cfg.threads = static_cast<int>(parse_int(key, values.back()));
        else
            throw ConfigError("unknown configuration key '" + key + "'");
    }
    return cfg;
}

void RunConfig::validate() const {
    if (ps.empty() || ms.empty() || ns.empty() || big_ns.empty())
        throw ConfigError("parameter lists must be nonempty");
    if (max_weight < 0) throw ConfigError("max-weight must be nonnegative");
    if (format != "json" && format != "csv")
        throw ConfigError("format must be json or csv, got '" + format + "'");
    if (threads < 1) throw ConfigError("threads must be at least 1");
    for (const PParams& par : grid()) par.validate();
    selected_suites();  // name check
}

std::vector<PParams> RunConfig::grid() const {
    std::vector<PParams> out;
    for (std::int64_t p : ps)
        for (std::int64_t m : ms)
            for (std::int64_t n : ns)
                for (std::int64_t big_n : big_ns) out.push_back(PParams{p, m, n, big_n});
    return out;
}

std::vector<std::string> RunConfig::selected_suites() const {
    if (suites.empty()) return asserted_suites();
    if (suites.size() == 1 && suites[0] == "none") return {};
    std::vector<std::string> out;
    for (const std::string& s : suites) {
        if (s == "none")
            throw ConfigError("'none' cannot be combined with other suites");
        if (s == "all") {
            for (const std::string& a : asserted_suites()) out.push_back(a);
            out.push_back("jet");
            continue;
        }
        if (!is_known_suite(s)) throw ConfigError("unknown suite '" + s + "'");
        out.push_back(s);
    }
    return out;
}

std::vector<EvalPoint> RunConfig::eval_for(const PParams& par) const {
    const std::size_t n = static_cast<std::size_t>(par.n);
    if (!eval_points.empty()) {
        std::vector<EvalPoint> out;
        for (const EvalPoint& pt : eval_points)
            if (pt.size() == n) out.push_back(pt);
        if (out.empty())
            throw ConfigError("no configured evaluation point has length " +
                              std::to_string(par.n));
        return out;
    }
    const std::uint64_t mod = par.modulus();
    return {EvalPoint(n, 0), EvalPoint(n, 1),
            EvalPoint(n, static_cast<std::uint64_t>(par.p) % mod)};
}

bool Report::asserted_pass() const {
    for (const SuiteResult& s : suites)
        if (s.asserted && s.status == "fail") return false;
    return true;
}

std::string Report::to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = kReportSchema;
    j["version"] = kToolVersion;
    j["command"] = command;

    nlohmann::ordered_json cj;
    cj["p"] = config.ps;
    cj["m"] = config.ms;
    cj["n"] = config.ns;
    cj["modulus_exp"] = config.big_ns;
    cj["max_weight"] = config.max_weight;
    cj["eval"] = config.eval_points;
    std::vector<std::string> ran;
    for (const SuiteResult& s : suites) ran.push_back(s.suite);
    cj["suites"] = ran;
    j["config"] = std::move(cj);

    nlohmann::ordered_json sj = nlohmann::ordered_json::array();
    for (const SuiteResult& s : suites)
        sj.push_back({{"suite", s.suite},
                      {"status", s.status},
                      {"asserted", s.asserted},
                      {"checks", s.checks},
                      {"diagnostics", s.diagnostics}});
    j["suites"] = std::move(sj);

    nlohmann::ordered_json hj = nlohmann::ordered_json::array();
    for (const HomologyTable& t : homology) {
        nlohmann::ordered_json tj;
        tj["p"] = t.par.p;
        tj["m"] = t.par.m;
        tj["n"] = t.par.n;
        tj["modulus_exp"] = t.par.big_n;
        tj["total_h0_free"] = t.total_h0_free;
        nlohmann::ordered_json wj = nlohmann::ordered_json::array();
        for (const auto& [w, rows] : t.by_weight) {
            nlohmann::ordered_json rj = nlohmann::ordered_json::array();
            for (const HomologyRow& r : rows)
                rj.push_back({{"degree", r.degree},
                              {"free_rank", r.free_rank},
                              {"torsion", r.torsion}});
            wj.push_back({{"weight", w}, {"rows", std::move(rj)}});
        }
        tj["weights"] = std::move(wj);
        hj.push_back(std::move(tj));
    }
    j["homology"] = std::move(hj);

    nlohmann::ordered_json jj = nlohmann::ordered_json::array();
    for (const FreenessReport& r : jet)
        jj.push_back(nlohmann::ordered_json::parse(r.to_json()));
    j["jet"] = std::move(jj);

    return j.dump(2) + "\n";
}

std::string Report::to_csv() const {
    std::ostringstream os;
    os << "# " << kReportSchema << " version=" << kToolVersion
       << " command=" << command << "\n";
    if (!suites.empty()) {
        os << "suite,name,status,asserted,checks,diagnostic\n";
        for (const SuiteResult& s : suites)
            os << "suite," << s.suite << ',' << s.status << ','
               << (s.asserted ? "true" : "false") << ',' << s.checks << ','
               << csv_escape(s.diagnostics.empty() ? "" : s.diagnostics.front())
               << "\n";
    }
    if (!homology.empty()) {
        os << "homology,p,m,n,modulus_exp,weight,degree,free_rank,torsion\n";
        for (const HomologyTable& t : homology)
            for (const auto& [w, rows] : t.by_weight)
                for (const HomologyRow& r : rows)
                    os << "homology," << t.par.p << ',' << t.par.m << ',' << t.par.n
                       << ',' << t.par.big_n << ',' << w << ',' << r.degree << ','
                       << r.free_rank << ',' << join_plus(r.torsion) << "\n";
    }
    if (!jet.empty()) {
        os << "jet,p,m,n,modulus_exp,window,generators,extra_columns,relations,"
              "empty_relations,dropped_terms,eliminated,eliminated_mod_p,residual,"
              "all_nonunit_relations,reentry_terms,cycles\n";
        for (const FreenessReport& r : jet)
            os << "jet," << r.par.p << ',' << r.par.m << ',' << r.par.n << ','
               << r.par.big_n << ',' << r.window << ',' << r.generator_count << ','
               << r.extra_column_count << ',' << r.relation_count << ','
               << r.empty_relation_count << ',' << r.dropped_term_count << ','
               << r.eliminated_count << ',' << r.eliminated_count_mod_p << ','
               << r.residual_generators << ',' << r.all_nonunit_relation_count << ','
               << r.reentry_term_count << ',' << r.b_cycles.size() << "\n";
    }
    return os.str();
}

std::string Report::rendered() const {
    if (config.format == "csv") return to_csv();
    return to_json();
}

}  // namespace mpd
