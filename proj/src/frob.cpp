#include "mpd/frob.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

#include "mpd/errors.hpp"
#include "mpd/hdr.hpp"

namespace mpd {

namespace {

// Relabel weight w to scale*w + shift in every degree.  Legal because the
// differentials connect equal-weight labels only, so the transform keeps the
// complex weight-graded.
BasedComplex regrade(BasedComplex C, std::int64_t scale, std::int64_t shift) {
    for (auto& basis : C.bases)
        for (auto& lbl : basis) lbl.weight = scale * lbl.weight + shift;
    return C;
}

std::string digit_prefix(const MultiIndex& J) {
    std::ostringstream os;
    os << "F[";
    for (std::size_t i = 0; i < J.size(); ++i) os << (i ? "," : "") << J[i];
    os << "]:";
    return os.str();
}

// Walks the degree-r basis of a level-m window (weights 0..w_cap in the
// build_lhdr_upto order) and writes, for each source form (I, S), a unit
// entry at the row of t[J + p^s*I]^w[S] in the target complex.  The column
// labels are asserted against the expected enumeration so a silent ordering
// change upstream cannot misalign the matrix.
void fill_component(Mat& M, const PParams& src_par, std::int64_t w_cap,
                    std::int64_t r, const BasedComplex& source_cx,
                    const std::string& prefix, std::int64_t col0,
                    const BasedComplex& target, std::int64_t ps,
                    const MultiIndex& J) {
    std::int64_t col = col0;
    for (std::int64_t w = 0; w <= w_cap; ++w) {
        for (const HdrForm& f : hdr_forms(src_par, r, w)) {
            const auto& have = source_cx.bases[static_cast<std::size_t>(r)]
                                              [static_cast<std::size_t>(col)];
            if (have.name != prefix + f.label())
                throw std::logic_error("source basis enumeration out of order at " + have.name);
            MultiIndex K(f.I.size());
            for (std::size_t i = 0; i < f.I.size(); ++i) K[i] = J[i] + ps * f.I[i];
            M.at(position_of(target, r, HdrForm{K, f.S}.label()), col) = 1;
            ++col;
        }
    }
}

}  // namespace

PParams FrobParams::target() const {
    PParams t = base;
    t.m = base.m + s;
    return t;
}

std::int64_t FrobParams::ps() const {
    std::int64_t v = 1;
    for (std::int64_t i = 0; i < s; ++i) v *= base.p;
    return v;
}

void FrobParams::validate() const {
    base.validate();
    if (base.big_n != 1)
        throw LevelMismatch("descent comparison requires modulus exponent N = 1, got N = " +
                            std::to_string(base.big_n));
    if (s < 1)
        throw LevelMismatch("Frobenius iteration count must be >= 1, got s = " +
                            std::to_string(s));
    target().validate();  // ConfigError when level m+s leaves the bounds
}

ComplexMap frobenius_pullback(const FrobParams& fp, std::int64_t w_max) {
    fp.validate();
    if (w_max < 0) throw PreconditionViolation("weight window must be nonnegative");
    const std::int64_t ps = fp.ps();
    const PParams tgt_par = fp.target();

    ComplexMap cm;
    cm.source = regrade(build_lhdr_upto(fp.base, w_max), ps, 0);
    cm.target = build_lhdr_upto(tgt_par, ps * w_max);
    const MultiIndex zero(static_cast<std::size_t>(fp.base.n), 0);
    for (std::int64_t r = 0; r <= fp.base.n; ++r) {
        Mat M(cm.target.dim(r), cm.source.dim(r));
        fill_component(M, fp.base, w_max, r, cm.source, "", 0, cm.target, ps, zero);
        cm.mats.push_back(std::move(M));
    }
    cm.validate();
    return cm;
}

ComplexMap phi_map(const FrobParams& fp, std::int64_t w_max) {
    fp.validate();
    if (w_max < 0) throw PreconditionViolation("weight window must be nonnegative");
    const std::int64_t ps = fp.ps();
    const std::int64_t w_target = ps * w_max;
    const std::int64_t digit_weight_max = fp.base.n * (ps - 1);
    if (w_target < digit_weight_max)
        throw PreconditionViolation(
            "weight window too small to hold all " + std::to_string(fp.base.n) +
            "-coordinate digit copies: need p^s*w_max >= " + std::to_string(digit_weight_max));

    // Digit vectors 0 <= J_i <= p^s - 1 via the box of an auxiliary level-s
    // parameter tuple (same strict-inequality convention as the box basis).
    PParams digit_par = fp.base;
    digit_par.m = fp.s;
    const std::vector<MultiIndex> digits = basis_box(digit_par);

    std::vector<BasedComplex> parts;
    std::vector<std::string> prefixes;
    std::vector<std::int64_t> caps;
    parts.reserve(digits.size());
    for (const MultiIndex& J : digits) {
        const std::int64_t cap = (w_target - weight(J)) / ps;  // floor; >= 0 by the check above
        caps.push_back(cap);
        parts.push_back(regrade(build_lhdr_upto(fp.base, cap), ps, weight(J)));
        prefixes.push_back(digit_prefix(J));
    }
    DirectSum ds = direct_sum(parts, prefixes);

    ComplexMap cm;
    cm.source = std::move(ds.cx);
    cm.target = build_lhdr_upto(fp.target(), w_target);
    for (std::int64_t r = 0; r <= fp.base.n; ++r) {
        Mat M(cm.target.dim(r), cm.source.dim(r));
        for (std::size_t c = 0; c < digits.size(); ++c)
            fill_component(M, fp.base, caps[c], r, cm.source, prefixes[c],
                           ds.offsets[c][static_cast<std::size_t>(r)], cm.target, ps,
                           digits[c]);
        cm.mats.push_back(std::move(M));
    }
    cm.validate();
    return cm;
}

std::vector<FrobPointResult> verify_frobenius_descent(const std::vector<FrobPoint>& grid,
                                                      int threads) {
    std::vector<FrobPointResult> out;
    out.reserve(grid.size());
    for (const FrobPoint& pt : grid) {
        FrobPointResult res;
        res.point = pt;
        ComplexMap phi;
        try {
            phi = phi_map(pt.fp, pt.w_max);
            res.chain_map_ok = true;
        } catch (const CalcError& e) {
            res.detail = std::string("phi construction failed: ") + e.what();
            out.push_back(std::move(res));
            continue;
        }
        auto [acyclic, summary] = is_quasi_iso(phi, threads);
        res.cone_acyclic = acyclic;
        if (!acyclic) {
            for (const auto& [key, block] : summary.by_degree_weight) {
                if (block.trivial()) continue;
                std::ostringstream os;
                os << "cone homology nonzero at degree " << key.first << ", weight "
                   << key.second << ": free rank " << block.free_rank << ", "
                   << block.torsion.size() << " torsion summand(s)";
                res.detail = os.str();
                break;
            }
        }
        out.push_back(std::move(res));
    }
    return out;
}

std::vector<FrobPoint> frob_default_grid() {
    std::vector<FrobPoint> grid;
    for (auto [p, m] : {std::pair<std::int64_t, std::int64_t>{2, 0}, {3, 0}, {2, 1}}) {
        FrobPoint pt;
        pt.fp.base = PParams{p, m, 1, 1};
        pt.fp.s = 1;
        pt.w_max = 8;
        grid.push_back(pt);
    }
    return grid;
}

}  // namespace mpd
