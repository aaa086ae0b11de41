#include "mpd/suites.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "mpd/errors.hpp"
#include "mpd/frob.hpp"
#include "mpd/hdr.hpp"
#include "mpd/homology.hpp"
#include "mpd/jet.hpp"
#include "mpd/matrix.hpp"
#include "mpd/ring.hpp"
#include "mpd/strat.hpp"

namespace mpd {

namespace {

constexpr std::int64_t kDiagCap = 8;

// Check counter with capped first-failure diagnostics.
struct Tally {
    SuiteResult r;

    explicit Tally(const std::string& name, bool asserted = true) {
        r.suite = name;
        r.asserted = asserted;
    }
    void pass() { ++r.checks; }
    void fail(const std::string& diag) {
        ++r.checks;
        r.status = "fail";
        if (static_cast<std::int64_t>(r.diagnostics.size()) < kDiagCap)
            r.diagnostics.push_back(diag);
        else if (static_cast<std::int64_t>(r.diagnostics.size()) == kDiagCap)
            r.diagnostics.push_back("(further diagnostics suppressed)");
    }
    void check(bool ok, const std::string& diag) { ok ? pass() : fail(diag); }
    SuiteResult finish() {
        if (r.checks == 0 && r.status == "pass") r.status = "skip";
        return r;
    }
};

std::string point_str(const PParams& par) {
    return "p=" + std::to_string(par.p) + " m=" + std::to_string(par.m) +
           " n=" + std::to_string(par.n) + " N=" + std::to_string(par.big_n);
}

std::string eval_str(const EvalPoint& a) {
    std::string s = "a=(";
    for (std::size_t i = 0; i < a.size(); ++i)
        s += (i ? "," : "") + std::to_string(a[i]);
    return s + ")";
}

std::string first_block(const HomologySummary& H) {
    for (const auto& [key, d] : H.by_degree_weight)
        if (!d.trivial())
            return "cone homology nonzero at degree " + std::to_string(key.first) +
                   ", weight " + std::to_string(key.second) + ": free rank " +
                   std::to_string(d.free_rank) + ", " +
                   std::to_string(d.torsion.size()) + " torsion summand(s)";
    return "";
}

bool mat_invertible(const Mat& M, const Zq& R) {
    if (M.rows != M.cols) return false;
    for (std::int64_t e : snf_local(M, R).exponents)
        if (e != 0) return false;
    return true;
}

std::int64_t ipow(std::int64_t b, std::int64_t e) {
    std::int64_t r = 1;
    for (std::int64_t i = 0; i < e; ++i) r *= b;
    return r;
}

SuiteResult suite_arith_lemmas(const RunConfig& cfg) {
    Tally t("arith-lemmas");
    for (std::int64_t p : cfg.ps)
        for (std::int64_t m : cfg.ms) {
            const PParams par{p, m, 1, 1};
            const std::int64_t pm = static_cast<std::int64_t>(par.pm());
            for (std::int64_t i = pm; i <= 2000; ++i)
                t.check(check_unit_lemma(i, par),
                        "unit lemma fails at p=" + std::to_string(p) +
                            " m=" + std::to_string(m) + " i=" + std::to_string(i));
            // binomial factorization: qbinom * mbinom == binom, exactly
            for (std::int64_t k = 0; k <= 60; ++k)
                for (std::int64_t kp = 0; kp <= k; ++kp)
                    t.check(qbinom_s(k, kp, pm) * BigRat(mbinom_s(k, kp, pm)) ==
                                BigRat(binom_s(k, kp)),
                            "binomial factorization fails at k=" + std::to_string(k) +
                                " k'=" + std::to_string(kp) +
                                " p^m=" + std::to_string(pm));
        }
    return t.finish();
}

SuiteResult suite_poincare(const RunConfig& cfg) {
    Tally t("poincare");
    for (const PParams& par : cfg.grid()) {
        const std::int64_t w_eff = cfg.max_weight;
        const Zq R = Zq::from(par);

        // differential squares to zero, weight by weight
        for (std::int64_t w = 0; w <= w_eff; ++w) {
            try {
                build_lhdr(par, w).validate();
                t.pass();
            } catch (const CalcError& e) {
                t.fail("complex invalid at " + point_str(par) + " w=" +
                       std::to_string(w) + ": " + e.what());
            }
        }

        // augmented complex is exact (the augmentation is a quasi-isomorphism)
        const auto [ok, H] = is_quasi_iso(iota_prime(par, w_eff), cfg.threads);
        t.check(ok, "augmented complex not exact at " + point_str(par) + ": " +
                        first_block(H));

        // total degree-0 homology is free of the box rank
        const std::int64_t box_span = par.n * (static_cast<std::int64_t>(par.pm()) - 1);
        if (w_eff >= box_span) {
            const HomologySummary full = homology(build_lhdr_upto(par, w_eff), cfg.threads);
            const auto it = full.by_degree.find(0);
            const std::int64_t rank = it == full.by_degree.end() ? 0 : it->second.free_rank;
            const bool tor = it != full.by_degree.end() && !it->second.torsion.empty();
            t.check(rank == ipow(par.p, par.m * par.n) && !tor,
                    "degree-0 homology has rank " + std::to_string(rank) + " at " +
                        point_str(par) + ", expected " +
                        std::to_string(ipow(par.p, par.m * par.n)));
        }

        // evaluation-point comparisons: beta invertible, iota a quasi-isomorphism
        for (const EvalPoint& a : cfg.eval_for(par)) {
            t.check(mat_invertible(beta(par, a), R),
                    "basis-change matrix not invertible at " + point_str(par) + " " +
                        eval_str(a));
            const auto [okA, HA] = is_quasi_iso(iota(par, a, w_eff), cfg.threads);
            t.check(okA, "augmentation at " + eval_str(a) + " not a quasi-iso at " +
                             point_str(par) + ": " + first_block(HA));
        }
    }
    return t.finish();
}

SuiteResult suite_stratification(const RunConfig& cfg) {
    Tally t("stratification");
    for (const PParams& par : cfg.grid()) {
        const std::int64_t w_cap = std::min<std::int64_t>(cfg.max_weight, 6);
        t.check(strat_axioms_hold(stratification_eps(par, w_cap)),
                "transport axioms fail at " + point_str(par));
        const StratCheck c = verify_cocycle(par, w_cap);
        t.check(c.ok, "cocycle identity fails at " + point_str(par) + " on " +
                          c.failing_basis + ": " + c.lhs + " vs " + c.rhs);
        const std::int64_t box_span = par.n * (static_cast<std::int64_t>(par.pm()) - 1);
        if (w_cap >= box_span) {
            const StratCheck h = verify_horizontality(par, w_cap);
            t.check(h.ok, "horizontality square fails at " + point_str(par) + " on " +
                              h.failing_basis + ": " + h.lhs + " vs " + h.rhs);
        }
    }
    return t.finish();
}

SuiteResult suite_frobenius(const RunConfig& cfg) {
    Tally t("frobenius");
    std::vector<FrobPoint> grid = frob_default_grid();
    for (FrobPoint& pt : grid) pt.w_max = std::min<std::int64_t>(cfg.max_weight, 8);
    for (const FrobPointResult& r : verify_frobenius_descent(grid, cfg.threads)) {
        const FrobParams& fp = r.point.fp;
        t.check(r.pass(), "descent fails at p=" + std::to_string(fp.base.p) +
                              " m=" + std::to_string(fp.base.m) +
                              " s=" + std::to_string(fp.s) +
                              " n=" + std::to_string(fp.base.n) + ": " + r.detail);
    }
    return t.finish();
}

SuiteResult suite_kunneth(const RunConfig& cfg) {
    Tally t("kunneth");
    for (std::int64_t p : cfg.ps)
        for (std::int64_t m : cfg.ms)
            for (std::int64_t big_n : cfg.big_ns) {
                const PParams par{p, m, 1, big_n};
                const std::int64_t w = std::min<std::int64_t>(cfg.max_weight, 8);
                try {
                    const ComplexMap f = kunneth_iso(par, par, w);
                    f.validate();
                    t.pass();
                    const Zq R = Zq::from(par);
                    bool inv = true;
                    for (const Mat& M : f.mats) inv = inv && mat_invertible(M, R);
                    t.check(inv, "product comparison not invertible at " + point_str(par));
                } catch (const CalcError& e) {
                    t.fail("product comparison fails at " + point_str(par) + ": " +
                           e.what());
                }
            }
    return t.finish();
}

SuiteResult suite_basechange(const RunConfig& cfg) {
    Tally t("basechange");
    for (const PParams& par : cfg.grid()) {
        if (par.big_n < 2) continue;
        const std::int64_t w = std::min<std::int64_t>(cfg.max_weight, 8);
        const BasedComplex C = build_lhdr_upto(par, w);
        for (std::int64_t np = 1; np < par.big_n; ++np) {
            const BasedComplex D = base_change(C, np);
            PParams par2 = par;
            par2.big_n = np;
            const BasedComplex E = build_lhdr_upto(par2, w);
            bool same = D.diffs.size() == E.diffs.size();
            std::string where = "shape";
            for (std::size_t k = 0; same && k < D.diffs.size(); ++k)
                if (!(D.diffs[k] == E.diffs[k])) {
                    same = false;
                    where = "degree " + std::to_string(D.d_min + static_cast<std::int64_t>(k));
                }
            t.check(same, "reduction mismatch at " + point_str(par) + " -> N'=" +
                              std::to_string(np) + " (" + where + ")");
        }
    }
    return t.finish();
}

SuiteResult suite_crosscheck(const RunConfig& cfg) {
    Tally t("crosscheck");
    for (const PParams& par : cfg.grid()) {
        if (par.n > 2) continue;
        const std::int64_t need = 2 * static_cast<std::int64_t>(par.pm());
        const std::int64_t w_cap = std::min<std::int64_t>(cfg.max_weight, 6);
        if (w_cap < need) continue;  // window cannot reach the comparison range
        t.check(crosscheck_quotient(par, w_cap),
                "quotient presentation mismatch at " + point_str(par));
    }
    return t.finish();
}

SuiteResult suite_jet(const RunConfig& cfg, std::vector<FreenessReport>* jet_out) {
    Tally t("jet", /*asserted=*/false);
    for (const PParams& par : cfg.grid()) {
        try {
            const SplittingChoice c = find_splittings(par);
            t.pass();
            const Omega2Basis b = omega2_basis(par, c);
            t.check(b.certificate() &&
                        b.relation_rank ==
                            static_cast<std::int64_t>(qualifying_indices(par).size()),
                    "degree-2 elimination certificate fails at " + point_str(par));
            const FreenessReport r = omega3_probe(par, c);
            t.pass();
            if (jet_out) jet_out->push_back(r);
        } catch (const CalcError& e) {
            t.fail("probe aborted at " + point_str(par) + ": " + e.what());
        }
    }
    return t.finish();
}

// Canned golden artifacts: each is the full rendered report of a fixed
// command + configuration, regenerable with the documented CLI invocation.
struct Canned {
    const char* file;
    const char* command;
    KvList kv;
};

const std::vector<Canned>& canned_goldens() {
    static const std::vector<Canned> cans = {
        {"jet_p2_m1_n1.json", "explore-jet",
         {{"p", {"2"}}, {"m", {"1"}}, {"n", {"1"}}, {"modulus-exp", {"1"}}}},
        {"jet_p3_m1_n1.json", "explore-jet",
         {{"p", {"3"}}, {"m", {"1"}}, {"n", {"1"}}, {"modulus-exp", {"1"}}}},
        {"homology_p2_m1_n2.json", "homology",
         {{"p", {"2"}},
          {"m", {"1"}},
          {"n", {"2"}},
          {"modulus-exp", {"2"}},
          {"max-weight", {"4"}}}},
    };
    return cans;
}

SuiteResult suite_golden(const RunConfig& cfg) {
    Tally t("golden");
    for (const Canned& c : canned_goldens()) {
        const std::string path = cfg.goldens_dir + "/" + c.file;
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            t.fail("missing golden file " + path);
            continue;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        const std::string actual = buf.str();
        const std::string expected = run_command(c.command, config_from_kv(c.kv)).rendered();
        if (actual == expected) {
            t.pass();
            continue;
        }
        std::istringstream ea(expected), aa(actual);
        std::string el, al;
        std::int64_t line = 0;
        bool reported = false;
        while (true) {
            ++line;
            const bool he = static_cast<bool>(std::getline(ea, el));
            const bool ha = static_cast<bool>(std::getline(aa, al));
            if (!he && !ha) break;  // differ only in trailing bytes
            if (!he || !ha || el != al) {
                t.fail(path + ":" + std::to_string(line) + ": expected '" +
                       (he ? el : "<eof>") + "' got '" + (ha ? al : "<eof>") + "'");
                reported = true;
                break;
            }
        }
        if (!reported) t.fail(path + ": differs in trailing bytes");
    }
    return t.finish();
}

}  // namespace

const std::vector<std::string>& asserted_suites() {
    static const std::vector<std::string> names = {
        "poincare", "stratification", "frobenius", "kunneth",
        "basechange", "arith-lemmas", "crosscheck"};
    return names;
}

bool is_known_suite(const std::string& name) {
    for (const std::string& s : asserted_suites())
        if (s == name) return true;
    return name == "jet" || name == "golden";
}

SuiteResult run_suite(const std::string& name, const RunConfig& cfg,
                      std::vector<FreenessReport>* jet_out) {
    const auto start = std::chrono::steady_clock::now();
    SuiteResult r;
    if (name == "arith-lemmas")
        r = suite_arith_lemmas(cfg);
    else if (name == "poincare")
        r = suite_poincare(cfg);
    else if (name == "stratification")
        r = suite_stratification(cfg);
    else if (name == "frobenius")
        r = suite_frobenius(cfg);
    else if (name == "kunneth")
        r = suite_kunneth(cfg);
    else if (name == "basechange")
        r = suite_basechange(cfg);
    else if (name == "crosscheck")
        r = suite_crosscheck(cfg);
    else if (name == "jet")
        r = suite_jet(cfg, jet_out);
    else if (name == "golden")
        r = suite_golden(cfg);
    else
        throw ConfigError("unknown suite '" + name + "'");
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                    .count();
    return r;
}

std::vector<HomologyTable> homology_tables(const RunConfig& cfg) {
    std::vector<HomologyTable> out;
    for (const PParams& par : cfg.grid()) {
        HomologyTable t;
        t.par = par;
        for (std::int64_t w = 0; w <= cfg.max_weight; ++w) {
            const HomologySummary H = homology(build_lhdr(par, w), cfg.threads);
            std::vector<HomologyRow> rows;
            for (std::int64_t d = 0; d <= par.n; ++d) {
                HomologyRow row;
                row.degree = d;
                const auto it = H.by_degree.find(d);
                if (it != H.by_degree.end()) {
                    row.free_rank = it->second.free_rank;
                    row.torsion = it->second.torsion;
                }
                rows.push_back(std::move(row));
            }
            t.total_h0_free += rows[0].free_rank;
            t.by_weight.emplace_back(w, std::move(rows));
        }
        out.push_back(std::move(t));
    }
    return out;
}

Report run_command(const std::string& command, const RunConfig& cfg) {
    cfg.validate();
    Report rep;
    rep.command = command;
    rep.config = cfg;
    if (command == "verify") {
        for (const std::string& name : cfg.selected_suites())
            rep.suites.push_back(run_suite(name, cfg, &rep.jet));
    } else if (command == "homology") {
        rep.homology = homology_tables(cfg);
    } else if (command == "explore-jet") {
        rep.suites.push_back(run_suite("jet", cfg, &rep.jet));
    } else if (command == "report") {
        for (const std::string& name : asserted_suites())
            rep.suites.push_back(run_suite(name, cfg, &rep.jet));
        rep.suites.push_back(run_suite("jet", cfg, &rep.jet));
        rep.homology = homology_tables(cfg);
    } else {
        throw ConfigError("unknown command '" + command + "'");
    }
    return rep;
}

int exit_code(const Report& report) { return report.asserted_pass() ? 0 : 1; }

}  // namespace mpd
