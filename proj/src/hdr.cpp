#include "mpd/hdr.hpp"

#include <algorithm>
#include <map>

namespace mpd {

namespace {

std::string joined(const std::vector<std::int64_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

// Count of box indices below the given weight — used nowhere fancy, kept
// local.  (Weights of box elements range over 0 .. n*(p^m - 1).)
std::int64_t box_weight_cap(const PParams& par) {
    return par.n * (static_cast<std::int64_t>(par.pm()) - 1);
}

// v is in the column span of M over Z/p^N  <=>  after L*v, every coordinate
// is divisible by the matching diagonal p-power (missing diagonal = zero).
bool in_span(const Zq& R, const Mat& M, const std::vector<std::uint64_t>& v) {
    if (M.rows != static_cast<std::int64_t>(v.size()))
        throw ParamMismatch("span test: vector length differs from row count");
    if (M.rows == 0) return true;
    const SnfResult s = snf_local(M, R);
    for (std::int64_t i = 0; i < M.rows; ++i) {
        std::uint64_t wi = 0;
        for (std::int64_t j = 0; j < M.rows; ++j)
            wi = R.add(wi, R.mul(s.transform.at(i, j), v[static_cast<std::size_t>(j)]));
        const std::int64_t e = i < static_cast<std::int64_t>(s.exponents.size())
                                   ? s.exponents[static_cast<std::size_t>(i)]
                                   : R.big_n;
        if (R.val(wi) < e) return false;
    }
    return true;
}

}  // namespace

std::int64_t HdrForm::weight(std::int64_t pm) const {
    return mpd::weight(I) + degree() * pm;
}

std::string HdrForm::label() const {
    std::string s = "t[" + joined(I) + "]";
    if (!S.empty()) s += "^w[" + joined(S) + "]";
    return s;
}

std::vector<std::vector<std::int64_t>> subsets_of_size(std::int64_t n, std::int64_t r) {
    std::vector<std::vector<std::int64_t>> out;
    if (r < 0 || r > n) return out;
    std::vector<std::int64_t> cur;
    cur.reserve(static_cast<std::size_t>(r));
    auto rec = [&](auto&& self, std::int64_t next) -> void {
        if (static_cast<std::int64_t>(cur.size()) == r) {
            out.push_back(cur);
            return;
        }
        const std::int64_t need = r - static_cast<std::int64_t>(cur.size());
        for (std::int64_t j = next; j + need <= n; ++j) {
            cur.push_back(j);
            self(self, j + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<HdrForm> hdr_forms(const PParams& par, std::int64_t r, std::int64_t w) {
    std::vector<HdrForm> out;
    const std::int64_t pm = static_cast<std::int64_t>(par.pm());
    const std::int64_t wi = w - r * pm;
    if (r < 0 || r > par.n || wi < 0) return out;
    const auto subsets = subsets_of_size(par.n, r);
    for (const auto& I : multiindices_of_weight(par.n, wi))
        for (const auto& S : subsets) out.push_back(HdrForm{I, S});
    return out;
}

BasedComplex build_hdr(const PParams& par) {
    par.validate();
    const std::int64_t pm = static_cast<std::int64_t>(par.pm());
    BasedComplex C;
    C.ring = Zq::from(par);
    C.d_min = 0;
    for (std::int64_t r = 0; r <= par.n; ++r) {
        std::vector<BasisLabel> lab;
        for (const auto& S : subsets_of_size(par.n, r)) {
            HdrForm f{MultiIndex(static_cast<std::size_t>(par.n), 0), S};
            lab.push_back({f.label(), r * pm});
        }
        C.bases.push_back(std::move(lab));
    }
    for (std::int64_t r = 0; r < par.n; ++r)
        C.diffs.emplace_back(C.dim(r + 1), C.dim(r));
    return C;
}

BasedComplex build_lhdr(const PParams& par, std::int64_t w) {
    par.validate();
    if (w < 0) throw PreconditionViolation("weight must be nonnegative");
    const std::int64_t pm = static_cast<std::int64_t>(par.pm());
    const Zq R = Zq::from(par);

    std::vector<std::vector<HdrForm>> forms;
    for (std::int64_t r = 0; r <= par.n; ++r) forms.push_back(hdr_forms(par, r, w));

    BasedComplex C;
    C.ring = R;
    C.d_min = 0;
    for (std::int64_t r = 0; r <= par.n; ++r) {
        std::vector<BasisLabel> lab;
        for (const auto& f : forms[static_cast<std::size_t>(r)]) lab.push_back({f.label(), w});
        C.bases.push_back(std::move(lab));
    }

    for (std::int64_t r = 0; r < par.n; ++r) {
        const auto& src = forms[static_cast<std::size_t>(r)];
        const auto& dst = forms[static_cast<std::size_t>(r + 1)];
        std::map<std::string, std::int64_t> pos;
        for (std::size_t i = 0; i < dst.size(); ++i)
            pos.emplace(dst[i].label(), static_cast<std::int64_t>(i));

        Mat D(static_cast<std::int64_t>(dst.size()), static_cast<std::int64_t>(src.size()));
        for (std::size_t c = 0; c < src.size(); ++c) {
            const HdrForm& f = src[c];
            for (std::int64_t j = 0; j < par.n; ++j) {
                if (f.I[static_cast<std::size_t>(j)] < pm) continue;
                if (std::binary_search(f.S.begin(), f.S.end(), j)) continue;
                HdrForm g;
                g.I = f.I;
                g.I[static_cast<std::size_t>(j)] -= pm;
                g.S = f.S;
                g.S.insert(std::upper_bound(g.S.begin(), g.S.end(), j), j);
                const std::int64_t below =
                    std::count_if(f.S.begin(), f.S.end(), [&](std::int64_t s) { return s < j; });
                std::uint64_t c0 = rat_reduce(
                    qbinom_s(f.I[static_cast<std::size_t>(j)], pm, pm), R);
                if (below % 2 == 1) c0 = R.neg(c0);
                D.at(pos.at(g.label()), static_cast<std::int64_t>(c)) = c0;
            }
        }
        C.diffs.push_back(std::move(D));
    }
    return C;
}

BasedComplex build_lhdr_upto(const PParams& par, std::int64_t w_max) {
    if (w_max < 0) throw PreconditionViolation("weight window must be nonnegative");
    std::vector<BasedComplex> parts;
    std::vector<std::string> prefixes;
    for (std::int64_t w = 0; w <= w_max; ++w) {
        parts.push_back(build_lhdr(par, w));
        prefixes.emplace_back();  // labels are already distinct across weights
    }
    return direct_sum(parts, prefixes).cx;
}

BasedComplex truncate_weight(const BasedComplex& C, std::int64_t w_max,
                             std::vector<std::vector<std::int64_t>>* kept) {
    BasedComplex out;
    out.ring = C.ring;
    out.d_min = C.d_min;
    std::vector<std::vector<std::int64_t>> keep;
    for (const auto& lab : C.bases) {
        std::vector<BasisLabel> nl;
        std::vector<std::int64_t> ki;
        for (std::size_t i = 0; i < lab.size(); ++i)
            if (lab[i].weight <= w_max) {
                nl.push_back(lab[i]);
                ki.push_back(static_cast<std::int64_t>(i));
            }
        out.bases.push_back(std::move(nl));
        keep.push_back(std::move(ki));
    }
    for (std::size_t k = 0; k < C.diffs.size(); ++k) {
        const auto& rows = keep[k + 1];
        const auto& cols = keep[k];
        Mat D(static_cast<std::int64_t>(rows.size()), static_cast<std::int64_t>(cols.size()));
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j)
                D.at(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)) =
                    C.diffs[k].at(rows[i], cols[j]);
        out.diffs.push_back(std::move(D));
    }
    if (kept) *kept = std::move(keep);
    return out;
}

std::vector<MultiIndex> basis_box(const PParams& par) {
    const std::int64_t pm = static_cast<std::int64_t>(par.pm());
    std::vector<MultiIndex> out;
    MultiIndex cur(static_cast<std::size_t>(par.n), 0);
    auto rec = [&](auto&& self, std::int64_t t) -> void {
        if (t == par.n) {
            out.push_back(cur);
            return;
        }
        for (std::int64_t v = 0; v <= pm - 1; ++v) {
            cur[static_cast<std::size_t>(t)] = v;
            self(self, t + 1);
        }
        cur[static_cast<std::size_t>(t)] = 0;
    };
    rec(rec, 0);
    return out;
}

BasedComplex augmentation_source(const PParams& par) {
    BasedComplex C;
    C.ring = Zq::from(par);
    C.d_min = 0;
    std::vector<BasisLabel> lab;
    for (const auto& I : basis_box(par)) lab.push_back({"e[" + joined(I) + "]", weight(I)});
    C.bases.push_back(std::move(lab));
    return C;
}

Mat beta(const PParams& par, const EvalPoint& a) {
    if (static_cast<std::int64_t>(a.size()) != par.n)
        throw ParamMismatch("evaluation point length differs from coordinate count");
    const Zq R = Zq::from(par);
    const auto box = basis_box(par);
    std::map<MultiIndex, std::int64_t> pos;
    for (std::size_t i = 0; i < box.size(); ++i)
        pos.emplace(box[i], static_cast<std::int64_t>(i));

    Mat B(static_cast<std::int64_t>(box.size()), static_cast<std::int64_t>(box.size()));
    for (std::size_t c = 0; c < box.size(); ++c) {
        const MultiIndex& I = box[c];
        for (const auto& J : subindices(I)) {
            std::uint64_t coeff = R.reduce(binom(I, J));
            for (std::int64_t t = 0; t < par.n; ++t)
                coeff = R.mul(coeff, R.pow(a[static_cast<std::size_t>(t)],
                                           static_cast<std::uint64_t>(J[static_cast<std::size_t>(t)])));
            if (coeff)
                B.at(pos.at(sub(I, J)), static_cast<std::int64_t>(c)) =
                    R.add(B.at(pos.at(sub(I, J)), static_cast<std::int64_t>(c)), coeff);
        }
    }
    return B;
}

ComplexMap iota_prime(const PParams& par, std::int64_t w_max) {
    if (w_max < box_weight_cap(par))
        throw PreconditionViolation("weight window does not cover the box basis");
    ComplexMap f;
    f.source = augmentation_source(par);
    f.target = build_lhdr_upto(par, w_max);
    const auto box = basis_box(par);
    Mat M(f.target.dim(0), static_cast<std::int64_t>(box.size()));
    for (std::size_t c = 0; c < box.size(); ++c) {
        const HdrForm form{box[c], {}};
        M.at(position_of(f.target, 0, form.label()), static_cast<std::int64_t>(c)) = 1;
    }
    f.mats.push_back(std::move(M));
    return f;
}

ComplexMap iota(const PParams& par, const EvalPoint& a, std::int64_t w_max) {
    ComplexMap f = iota_prime(par, w_max);
    const Zq R = Zq::from(par);
    const Mat binv = mat_inverse(R, beta(par, a));
    f.mats[0] = mat_mul(R, f.mats[0], binv);
    return f;
}

ComplexMap kunneth_iso(const PParams& px, const PParams& py, std::int64_t w_max) {
    if (px.p != py.p || px.m != py.m || px.big_n != py.big_n)
        throw ParamMismatch("product sides must share (p, m, N)");
    PParams pz = px;
    pz.n = px.n + py.n;
    pz.validate();

    const BasedComplex X = build_lhdr_upto(px, w_max);
    const BasedComplex Y = build_lhdr_upto(py, w_max);
    const TensorProduct tp = tensor_product(X, Y);
    std::vector<std::vector<std::int64_t>> kept;
    BasedComplex source = truncate_weight(tp.cx, w_max, &kept);
    BasedComplex target = build_lhdr_upto(pz, w_max);

    // Recover the HdrForm carried by each position of the windowed sides.
    auto side_forms = [&](const PParams& par, const BasedComplex& C) {
        std::vector<std::vector<HdrForm>> fs(static_cast<std::size_t>(C.degree_count()));
        for (std::int64_t r = 0; r <= par.n; ++r) {
            auto& list = fs[static_cast<std::size_t>(r)];
            for (std::int64_t w = 0; w <= w_max; ++w) {
                const auto part = hdr_forms(par, r, w);
                list.insert(list.end(), part.begin(), part.end());
            }
            if (static_cast<std::int64_t>(list.size()) != C.dim(r))
                throw std::logic_error("windowed enumeration out of sync with the complex");
        }
        return fs;
    };
    const auto xf = side_forms(px, X);
    const auto yf = side_forms(py, Y);

    ComplexMap f;
    f.source = source;
    f.target = target;
    for (std::int64_t k = 0; k < source.degree_count(); ++k) {
        const std::int64_t d = source.d_min + k;
        Mat M(target.dim(d), source.dim(d));
        const auto& keep_k = kept[static_cast<std::size_t>(k)];
        for (std::size_t c = 0; c < keep_k.size(); ++c) {
            const auto [dc, dd, i, j] =
                tp.index[static_cast<std::size_t>(k)][static_cast<std::size_t>(keep_k[c])];
            const HdrForm& a = xf[static_cast<std::size_t>(dc)][static_cast<std::size_t>(i)];
            const HdrForm& b = yf[static_cast<std::size_t>(dd)][static_cast<std::size_t>(j)];
            HdrForm g;
            g.I = a.I;
            g.I.insert(g.I.end(), b.I.begin(), b.I.end());
            g.S = a.S;
            for (const std::int64_t s : b.S) g.S.push_back(s + px.n);
            M.at(position_of(target, d, g.label()), static_cast<std::int64_t>(c)) = 1;
        }
        f.mats.push_back(std::move(M));
    }
    return f;
}

bool crosscheck_quotient(const PParams& par, std::int64_t w_cap) {
    par.validate();
    const std::int64_t pm = static_cast<std::int64_t>(par.pm());
    if (w_cap < 2 * pm)
        throw PreconditionViolation("cross-check window must reach weight 2p^m");
    const Zq R = Zq::from(par);
    DpAlg A(par, WeightWindow{w_cap});

    // Allowed one-slot words: exactly the p^m unit-vector indices.
    auto allowed = [&](const MultiIndex& I) {
        std::int64_t hits = 0;
        for (std::int64_t t = 0; t < par.n; ++t) {
            const std::int64_t v = I[static_cast<std::size_t>(t)];
            if (v == pm)
                ++hits;
            else if (v != 0)
                return false;
        }
        return hits == 1;
    };

    // Grade-1 check: the non-generator words span everything except the n
    // classes at weight p^m.
    for (std::int64_t v = 1; v <= w_cap; ++v) {
        std::int64_t residual = 0;
        for (const auto& I : multiindices_of_weight(par.n, v))
            if (allowed(I)) ++residual;
        const std::int64_t expect = v == pm ? par.n : 0;
        if (residual != expect) return false;
    }

    // Grade-2: per weight v, rows = normalized two-slot words of weight v.
    for (std::int64_t v = 2; v <= w_cap; ++v) {
        std::vector<TensorWord> rows;
        for (const auto& w : A.all_words(2))
            if (w.total_weight() == v &&
                !is_zero(w.factors[0]) && !is_zero(w.factors[1]))
                rows.push_back(w);
        std::map<TensorWord, std::int64_t> rpos;
        for (std::size_t i = 0; i < rows.size(); ++i)
            rpos.emplace(rows[i], static_cast<std::int64_t>(i));

        // Ideal columns: unit vectors at words with a non-generator slot,
        // plus the differentials of the grade-1 non-generator words.
        std::vector<std::vector<std::uint64_t>> cols;
        for (const auto& w : rows)
            if (!allowed(w.factors[0]) || !allowed(w.factors[1])) {
                std::vector<std::uint64_t> col(rows.size(), 0);
                col[static_cast<std::size_t>(rpos.at(w))] = 1;
                cols.push_back(std::move(col));
            }
        for (const auto& I : multiindices_of_weight(par.n, v))
            if (!allowed(I)) {
                TensorWord g;
                g.factors = {I};
                const DPElement dI = A.dga_differential(1, A.monomial(g));
                std::vector<std::uint64_t> col(rows.size(), 0);
                for (const auto& [w, c] : dI.terms) {
                    if (is_zero(w.factors[0]) || is_zero(w.factors[1]))
                        continue;  // degenerate words project to zero
                    col[static_cast<std::size_t>(rpos.at(w))] = c;
                }
                cols.push_back(std::move(col));
            }

        Mat M(static_cast<std::int64_t>(rows.size()), static_cast<std::int64_t>(cols.size()));
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < rows.size(); ++i)
                M.at(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)) = cols[j][i];

        // Cokernel must be free of rank C(n,2) at weight 2p^m, zero else.
        const SnfResult s = snf_local(M, R);
        std::int64_t free_rank = static_cast<std::int64_t>(rows.size());
        for (const std::int64_t e : s.exponents) {
            if (e != 0 && e != R.big_n) return false;  // torsion class
            if (e == 0) --free_rank;
        }
        const std::int64_t expect = v == 2 * pm ? par.n * (par.n - 1) / 2 : 0;
        if (free_rank != expect) return false;

        if (v != 2 * pm) continue;

        // Squares die: the class of [p^m e_i, p^m e_i] lies in the ideal.
        for (std::int64_t i = 0; i < par.n; ++i) {
            TensorWord sq;
            sq.factors = {unit_index(par.n, i), unit_index(par.n, i)};
            for (auto& f : sq.factors)
                for (auto& x : f) x *= pm;
            std::vector<std::uint64_t> vec(rows.size(), 0);
            vec[static_cast<std::size_t>(rpos.at(sq))] = 1;
            if (!in_span(R, M, vec)) return false;
        }
        // Anticommutativity: [i|j] + [j|i] lies in the ideal for i < j.
        for (std::int64_t i = 0; i < par.n; ++i)
            for (std::int64_t j = i + 1; j < par.n; ++j) {
                MultiIndex ei = unit_index(par.n, i), ej = unit_index(par.n, j);
                for (auto& x : ei) x *= pm;
                for (auto& x : ej) x *= pm;
                TensorWord ij, ji;
                ij.factors = {ei, ej};
                ji.factors = {ej, ei};
                std::vector<std::uint64_t> vec(rows.size(), 0);
                vec[static_cast<std::size_t>(rpos.at(ij))] = 1;
                vec[static_cast<std::size_t>(rpos.at(ji))] = R.add(
                    vec[static_cast<std::size_t>(rpos.at(ji))], 1);
                if (!in_span(R, M, vec)) return false;
            }
    }

    // Induced differential vanishes: d of each generator class lands in the
    // ideal (all its two-slot terms carry a non-generator slot).
    for (std::int64_t j = 0; j < par.n; ++j) {
        MultiIndex g = unit_index(par.n, j);
        for (auto& x : g) x *= pm;
        TensorWord gw;
        gw.factors = {g};
        const DPElement dg = A.dga_differential(1, A.monomial(gw));
        for (const auto& [w, c] : dg.terms) {
            if (c == 0 || is_zero(w.factors[0]) || is_zero(w.factors[1])) continue;
            if (allowed(w.factors[0]) && allowed(w.factors[1])) return false;
        }
    }

    // Ranks agree with the constant-coefficient avatar in degrees 1 and 2.
    const BasedComplex H = build_hdr(par);
    if (H.dim(1) != par.n) return false;
    if (par.n >= 2 && H.dim(2) != par.n * (par.n - 1) / 2) return false;
    return true;
}

std::int64_t position_of(const BasedComplex& C, std::int64_t degree, const std::string& label) {
    const auto* lab = C.basis(degree);
    if (!lab) throw IndexOutOfRange("degree outside the complex");
    for (std::size_t i = 0; i < lab->size(); ++i)
        if ((*lab)[i].name == label) return static_cast<std::int64_t>(i);
    throw IndexOutOfRange("label not found in degree " + std::to_string(degree));
}

}  // namespace mpd
