#include "mpd/dpcore.hpp"

#include <algorithm>

namespace mpd {

std::int64_t TensorWord::total_weight() const {
    std::int64_t w = 0;
    for (const auto& f : factors) w += weight(f);
    return w;
}

bool TensorWord::operator<(const TensorWord& o) const {
    if (factors.size() != o.factors.size()) return factors.size() < o.factors.size();
    const std::int64_t wa = total_weight(), wb = o.total_weight();
    if (wa != wb) return wa < wb;
    return factors < o.factors;
}

std::string TensorWord::str() const {
    std::string s = "[";
    for (std::size_t k = 0; k < factors.size(); ++k) {
        if (k) s += "|";
        for (std::size_t t = 0; t < factors[k].size(); ++t) {
            if (t) s += ",";
            s += std::to_string(factors[k][t]);
        }
    }
    s += "]";
    return s;
}

std::vector<MultiIndex> subindices(const MultiIndex& V) {
    std::vector<MultiIndex> out{MultiIndex{}};
    for (auto v : V) {
        std::vector<MultiIndex> next;
        next.reserve(out.size() * static_cast<std::size_t>(v + 1));
        for (const auto& pre : out)
            for (std::int64_t u = 0; u <= v; ++u) {
                MultiIndex e = pre;
                e.push_back(u);
                next.push_back(std::move(e));
            }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

DpAlg::DpAlg(const PParams& par, WeightWindow win)
    : par_(par), ring_(Zq::from(par)), win_(win) {
    par_.validate();
    if (win_.w_max < 0) throw PreconditionViolation("weight window must be >= 0");
}

DPElement DpAlg::zero(std::int64_t grade) const {
    DPElement x;
    x.grade = grade;
    x.n = par_.n;
    return x;
}

DPElement DpAlg::monomial(const TensorWord& w, std::uint64_t coeff) const {
    DPElement x = zero(w.grade());
    add_term(x, w, coeff);
    return x;
}

void DpAlg::check_element(const DPElement& x, std::int64_t grade) const {
    if (x.grade != grade) throw GradeMismatch("element grade does not match operation");
    if (x.n != par_.n) throw ParamMismatch("element variable count differs from context");
}

void DpAlg::add_term(DPElement& x, const TensorWord& w, std::uint64_t coeff) const {
    coeff %= ring_.q;
    if (coeff == 0) return;
    if (w.grade() != x.grade) throw GradeMismatch("word grade does not match element");
    if (w.total_weight() > win_.w_max) return;  // window truncation
    auto it = x.terms.find(w);
    if (it == x.terms.end()) {
        x.terms.emplace(w, coeff);
    } else {
        it->second = ring_.add(it->second, coeff);
        if (it->second == 0) x.terms.erase(it);
    }
}

DPElement DpAlg::axpy(const DPElement& x, std::uint64_t c, const DPElement& y) const {
    check_element(y, x.grade);
    DPElement r = x;
    r.n = par_.n;
    for (const auto& [w, cy] : y.terms) add_term(r, w, ring_.mul(c, cy));
    return r;
}

std::uint64_t DpAlg::qbinom_mod(const MultiIndex& I, const MultiIndex& J) const {
    return rat_reduce(qbinom(I, J, static_cast<std::int64_t>(par_.pm())), ring_);
}

std::uint64_t DpAlg::mbinom_mod(const MultiIndex& I, const MultiIndex& J) const {
    return ring_.reduce(mbinom(I, J, static_cast<std::int64_t>(par_.pm())));
}

DPElement DpAlg::dp_mul(const DPElement& x, const DPElement& y) const {
    if (x.grade != y.grade) throw GradeMismatch("dp_mul requires equal grades");
    check_element(x, x.grade);
    check_element(y, y.grade);
    DPElement r = zero(x.grade);
    for (const auto& [wx, cx] : x.terms)
        for (const auto& [wy, cy] : y.terms) {
            std::uint64_t c = ring_.mul(cx, cy);
            TensorWord w;
            w.factors.reserve(wx.factors.size());
            for (std::size_t k = 0; k < wx.factors.size() && c; ++k) {
                const MultiIndex s = add(wx.factors[k], wy.factors[k]);
                c = ring_.mul(c, mbinom_mod(s, wx.factors[k]));
                w.factors.push_back(s);
            }
            if (c) add_term(r, w, c);
        }
    return r;
}

DPElement DpAlg::dp_scale_substitute(std::uint64_t c, const DPElement& x) const {
    check_element(x, x.grade);
    DPElement r = zero(x.grade);
    for (const auto& [w, cw] : x.terms) {
        const std::uint64_t f = ring_.pow(c % ring_.q, static_cast<std::uint64_t>(w.total_weight()));
        add_term(r, w, ring_.mul(cw, f));
    }
    return r;
}

DPElement DpAlg::dp_add_expand(const MultiIndex& I) const {
    if (static_cast<std::int64_t>(I.size()) != par_.n)
        throw ParamMismatch("multi-index length differs from variable count");
    DPElement r = zero(2);
    for (const auto& J : subindices(I)) {
        TensorWord w;
        w.factors = {J, sub(I, J)};
        add_term(r, w, qbinom_mod(I, J));
    }
    return r;
}

DPElement DpAlg::face_map(std::int64_t r, std::int64_t i, const DPElement& x) const {
    check_element(x, r);
    if (i < 0 || i > r + 1) throw IndexOutOfRange("face index must lie in 0..r+1");
    DPElement out = zero(r + 1);
    const MultiIndex zero_idx(static_cast<std::size_t>(par_.n), 0);
    for (const auto& [w, c] : x.terms) {
        if (i == 0) {
            TensorWord v = w;
            v.factors.push_back(zero_idx);
            add_term(out, v, c);
        } else if (i == r + 1) {
            TensorWord v;
            v.factors.reserve(w.factors.size() + 1);
            v.factors.push_back(zero_idx);
            v.factors.insert(v.factors.end(), w.factors.begin(), w.factors.end());
            add_term(out, v, c);
        } else {
            const std::size_t idx = static_cast<std::size_t>(r - i);  // slot r-i+1, 0-based
            const MultiIndex V = w.factors[idx];
            for (const auto& U : subindices(V)) {
                TensorWord v;
                v.factors.reserve(w.factors.size() + 1);
                v.factors.insert(v.factors.end(), w.factors.begin(),
                                 w.factors.begin() + static_cast<std::ptrdiff_t>(idx));
                v.factors.push_back(U);
                v.factors.push_back(sub(V, U));
                v.factors.insert(v.factors.end(),
                                 w.factors.begin() + static_cast<std::ptrdiff_t>(idx) + 1,
                                 w.factors.end());
                add_term(out, v, ring_.mul(c, qbinom_mod(V, U)));
            }
        }
    }
    return out;
}

DPElement DpAlg::degeneracy_map(std::int64_t r, std::int64_t i, const DPElement& x) const {
    check_element(x, r);
    if (r < 1) throw GradeMismatch("degeneracy requires grade >= 1");
    if (i < 0 || i > r - 1) throw IndexOutOfRange("degeneracy index must lie in 0..r-1");
    DPElement out = zero(r - 1);
    const std::size_t idx = static_cast<std::size_t>(r - 1 - i);  // slot r-i, 0-based
    for (const auto& [w, c] : x.terms) {
        if (!is_zero(w.factors[idx])) continue;  // counit kills positive weight
        TensorWord v = w;
        v.factors.erase(v.factors.begin() + static_cast<std::ptrdiff_t>(idx));
        add_term(out, v, c);
    }
    return out;
}

DPElement DpAlg::dga_differential(std::int64_t r, const DPElement& x) const {
    check_element(x, r);
    DPElement out = zero(r + 1);
    for (std::int64_t i = 0; i <= r + 1; ++i) {
        const std::uint64_t sign = (i % 2 == 0) ? 1 : ring_.neg(1);
        out = axpy(out, sign, face_map(r, i, x));
    }
    return out;
}

DPElement DpAlg::l_differential(std::int64_t r, const DPElement& x) const {
    check_element(x, r + 1);
    DPElement out = zero(r + 2);
    for (std::int64_t i = 1; i <= r + 2; ++i) {
        const std::uint64_t sign = (i % 2 == 1) ? 1 : ring_.neg(1);
        out = axpy(out, sign, face_map(r + 1, i, x));
    }
    return out;
}

void DpAlg::enum_words(std::int64_t r, std::int64_t w_max, bool allow_zero_slot,
                       std::vector<MultiIndex>& cur, std::vector<TensorWord>& out) const {
    if (r == 0) {
        out.push_back(TensorWord{cur});
        return;
    }
    const std::int64_t lo = allow_zero_slot ? 0 : 1;
    for (std::int64_t w = lo; w <= w_max; ++w)
        for (const auto& V : multiindices_of_weight(par_.n, w)) {
            cur.push_back(V);
            enum_words(r - 1, w_max - w, allow_zero_slot, cur, out);
            cur.pop_back();
        }
}

std::vector<TensorWord> DpAlg::normalized_basis(std::int64_t r) const {
    std::vector<TensorWord> out;
    std::vector<MultiIndex> cur;
    if (r == 0) return {TensorWord{}};
    enum_words(r, win_.w_max, /*allow_zero_slot=*/false, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<TensorWord> DpAlg::l_normalized_basis(std::int64_t r) const {
    // Grade r+1; slots 1..r nonzero, the trailing coefficient slot is free.
    std::vector<TensorWord> out;
    std::vector<MultiIndex> head;
    std::vector<TensorWord> heads;
    if (r == 0) {
        heads.push_back(TensorWord{});
    } else {
        enum_words(r, win_.w_max, /*allow_zero_slot=*/false, head, heads);
    }
    for (const auto& h : heads) {
        const std::int64_t rest = win_.w_max - h.total_weight();
        for (std::int64_t w = 0; w <= rest; ++w)
            for (const auto& C : multiindices_of_weight(par_.n, w)) {
                TensorWord v = h;
                v.factors.push_back(C);
                out.push_back(std::move(v));
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<TensorWord> DpAlg::all_words(std::int64_t r) const {
    if (r == 0) return {TensorWord{}};
    std::vector<TensorWord> out;
    std::vector<MultiIndex> cur;
    enum_words(r, win_.w_max, /*allow_zero_slot=*/true, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace mpd
