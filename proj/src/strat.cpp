#include "mpd/strat.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "mpd/errors.hpp"
#include "mpd/hdr.hpp"
#include "mpd/ring.hpp"

namespace mpd {

namespace {

std::map<TensorWord, std::int64_t> position_map(const std::vector<TensorWord>& words) {
    std::map<TensorWord, std::int64_t> pos;
    for (std::size_t k = 0; k < words.size(); ++k) {
        pos.emplace(words[k], static_cast<std::int64_t>(k));
    }
    return pos;
}

void write_column(Mat& M, std::int64_t col, const DPElement& x,
                  const std::map<TensorWord, std::int64_t>& pos) {
    for (const auto& [word, coeff] : x.terms) {
        const auto it = pos.find(word);
        if (it == pos.end()) {
            throw std::logic_error("transport image leaves the weight window");
        }
        M.at(it->second, col) = coeff;
    }
}

// Signed re-expansion of the right slot: sum_V qbinom(x, V) (-1)^{|x-V|} with
// the remainder x-V placed per `spread`, then the scalar word merged in by a
// slotwise product.  Grade 2 uses kRight only; the grade-3 pullbacks place
// the carried factor in the left scalar slot, the middle scalar slot, or
// comultiply it into both (the inner-face expansion).
enum class Spread { kRight, kLeft, kMiddle, kBoth };

DPElement transport_of_word(const DpAlg& alg, const TensorWord& w, Spread spread) {
    const Zq& R = alg.ring();
    const std::int64_t n = alg.params().n;
    const MultiIndex zero(static_cast<std::size_t>(n), 0);
    const MultiIndex& x = w.factors.back();

    const std::int64_t grade = w.grade();
    DPElement expanded = alg.zero(grade);
    for (const MultiIndex& V : subindices(x)) {
        const MultiIndex rest = sub(x, V);
        std::uint64_t c = alg.qbinom_mod(x, V);
        if (weight(rest) % 2 != 0) c = R.neg(c);
        if (c == 0) continue;
        switch (spread) {
            case Spread::kRight:
                alg.add_term(expanded, TensorWord{{V, rest}}, c);
                break;
            case Spread::kLeft:
                alg.add_term(expanded, TensorWord{{rest, zero, V}}, c);
                break;
            case Spread::kMiddle:
                alg.add_term(expanded, TensorWord{{zero, rest, V}}, c);
                break;
            case Spread::kBoth:
                for (const MultiIndex& U : subindices(rest)) {
                    const std::uint64_t cu = R.mul(c, alg.qbinom_mod(rest, U));
                    if (cu == 0) continue;
                    alg.add_term(expanded, TensorWord{{U, sub(rest, U), V}}, cu);
                }
                break;
        }
    }

    TensorWord scalar = w;
    if (spread == Spread::kRight) {
        // [b, x]: the left factor b merges into the right-hand output slot.
        scalar.factors = {zero, w.factors[0]};
    } else {
        // [a, b, x]: both scalar slots stay in place; the module slot clears.
        scalar.factors.back() = zero;
    }
    return alg.dp_mul(expanded, alg.monomial(scalar));
}

Mat transport_matrix(const DpAlg& alg, const std::vector<TensorWord>& words,
                     const std::map<TensorWord, std::int64_t>& pos, Spread spread) {
    const auto dim = static_cast<std::int64_t>(words.size());
    Mat M(dim, dim);
    for (std::int64_t j = 0; j < dim; ++j) {
        write_column(M, j, transport_of_word(alg, words[j], spread), pos);
    }
    return M;
}

std::string render_column(const Zq& R, const Mat& M, std::int64_t col,
                          const std::vector<TensorWord>& basis) {
    (void)R;
    std::ostringstream out;
    bool first = true;
    for (std::int64_t i = 0; i < M.rows; ++i) {
        const std::uint64_t c = M.at(i, col);
        if (c == 0) continue;
        if (!first) out << " + ";
        out << c << "*" << basis[static_cast<std::size_t>(i)].str();
        first = false;
    }
    return first ? "0" : out.str();
}

// --- truncated polynomial coefficients -------------------------------------
//
// A term is keyed by the concatenation of its word slots and the exponent of
// the polynomial coefficient t^E; values are canonical residues.

using PolyElem = std::map<std::vector<std::int64_t>, std::uint64_t>;

std::vector<std::int64_t> poly_key(std::initializer_list<const MultiIndex*> parts) {
    std::vector<std::int64_t> key;
    for (const MultiIndex* part : parts) {
        key.insert(key.end(), part->begin(), part->end());
    }
    return key;
}

void poly_add(const Zq& R, PolyElem& x, const std::vector<std::int64_t>& key,
              std::uint64_t c) {
    if (c == 0) return;
    const std::uint64_t s = R.add(x[key], c);
    if (s == 0) {
        x.erase(key);
    } else {
        x[key] = s;
    }
}

std::string render_poly(const PolyElem& x, std::int64_t n, std::int64_t slots) {
    if (x.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [key, c] : x) {
        if (!first) out << " + ";
        first = false;
        out << c;
        TensorWord w;
        for (std::int64_t s = 0; s < slots; ++s) {
            w.factors.emplace_back(key.begin() + s * n, key.begin() + (s + 1) * n);
        }
        const MultiIndex texp(key.begin() + slots * n, key.end());
        if (!is_zero(texp)) {
            out << "*t" << TensorWord{{texp}}.str();
        }
        out << "*" << w.str();
    }
    return out.str();
}

// One-slot algebra with polynomial coefficients: key = (slot, texp).
PolyElem poly_mul1(const DpAlg& alg, const PolyElem& a, const PolyElem& b) {
    const Zq& R = alg.ring();
    const std::int64_t n = alg.params().n;
    PolyElem out;
    for (const auto& [ka, ca] : a) {
        const MultiIndex sa(ka.begin(), ka.begin() + n);
        const MultiIndex ta(ka.begin() + n, ka.end());
        for (const auto& [kb, cb] : b) {
            const MultiIndex sb(kb.begin(), kb.begin() + n);
            const MultiIndex tb(kb.begin() + n, kb.end());
            const MultiIndex slot = add(sa, sb);
            const std::uint64_t merge = alg.mbinom_mod(slot, sa);
            const std::uint64_t c = R.mul(R.mul(ca, cb), merge);
            const MultiIndex texp = add(ta, tb);
            poly_add(R, out, poly_key({&slot, &texp}), c);
        }
    }
    return out;
}

PolyElem poly_pow1(const DpAlg& alg, const PolyElem& x, std::int64_t k) {
    const std::int64_t n = alg.params().n;
    const MultiIndex zero(static_cast<std::size_t>(n), 0);
    PolyElem acc;
    poly_add(alg.ring(), acc, poly_key({&zero, &zero}), 1);
    for (std::int64_t i = 0; i < k; ++i) acc = poly_mul1(alg, x, acc);
    return acc;
}

}  // namespace

std::int64_t StratMatrix::index_of(const TensorWord& w) const {
    for (std::size_t k = 0; k < words.size(); ++k) {
        if (words[k] == w) return static_cast<std::int64_t>(k);
    }
    return -1;
}

StratMatrix stratification_eps(const PParams& par, std::int64_t w_max) {
    const DpAlg alg(par, WeightWindow{w_max});
    StratMatrix out;
    out.par = par;
    out.w_max = w_max;
    out.words = alg.all_words(2);
    const auto pos = position_map(out.words);
    out.mat = transport_matrix(alg, out.words, pos, Spread::kRight);
    return out;
}

StratMatrix stratification_eps_inverse(const PParams& par, std::int64_t w_max) {
    const DpAlg alg(par, WeightWindow{w_max});
    const std::int64_t n = par.n;
    const MultiIndex zero(static_cast<std::size_t>(n), 0);
    StratMatrix out;
    out.par = par;
    out.w_max = w_max;
    out.words = alg.all_words(2);
    const auto pos = position_map(out.words);
    const auto dim = static_cast<std::int64_t>(out.words.size());
    out.mat = Mat(dim, dim);
    for (std::int64_t j = 0; j < dim; ++j) {
        // [B, X] -> sum_W qbinom(B, W) [W, B-W], then X merges on the left.
        const MultiIndex& B = out.words[static_cast<std::size_t>(j)].factors[0];
        const MultiIndex& X = out.words[static_cast<std::size_t>(j)].factors[1];
        const DPElement expanded = alg.dp_add_expand(B);
        const DPElement img =
            alg.dp_mul(expanded, alg.monomial(TensorWord{{X, zero}}));
        write_column(out.mat, j, img, pos);
    }
    return out;
}

bool strat_axioms_hold(const StratMatrix& eps) {
    const auto dim = static_cast<std::int64_t>(eps.words.size());
    for (std::int64_t j = 0; j < dim; ++j) {
        const TensorWord& in = eps.words[static_cast<std::size_t>(j)];
        for (std::int64_t i = 0; i < dim; ++i) {
            if (eps.mat.at(i, j) == 0) continue;
            const TensorWord& outw = eps.words[static_cast<std::size_t>(i)];
            if (outw.total_weight() != in.total_weight()) return false;
        }
        if (!is_zero(in.factors[0])) continue;
        // Augmentation axiom on a pure right-slot input [0, x]: the only
        // output word with zero right slot is [x, 0], with coefficient 1.
        for (std::int64_t i = 0; i < dim; ++i) {
            const std::uint64_t c = eps.mat.at(i, j);
            const TensorWord& outw = eps.words[static_cast<std::size_t>(i)];
            if (!is_zero(outw.factors[1])) continue;
            const bool mirror = outw.factors[0] == in.factors[1];
            if (mirror ? (c != 1) : (c != 0)) return false;
        }
    }
    return true;
}

StratCheck first_column_mismatch(const Zq& R, const Mat& A, const Mat& B,
                                 const std::vector<TensorWord>& basis) {
    StratCheck out;
    if (A.rows != B.rows || A.cols != B.cols) {
        throw PreconditionViolation("column comparison needs equal shapes");
    }
    for (std::int64_t j = 0; j < A.cols; ++j) {
        bool same = true;
        for (std::int64_t i = 0; i < A.rows; ++i) {
            if (A.at(i, j) != B.at(i, j)) {
                same = false;
                break;
            }
        }
        if (same) continue;
        out.ok = false;
        out.failing_basis = basis[static_cast<std::size_t>(j)].str();
        out.lhs = render_column(R, A, j, basis);
        out.rhs = render_column(R, B, j, basis);
        return out;
    }
    return out;
}

StratCheck verify_cocycle(const PParams& par, std::int64_t w_max) {
    const DpAlg alg(par, WeightWindow{w_max});
    const std::vector<TensorWord> words = alg.all_words(3);
    const auto pos = position_map(words);
    const Mat m01 = transport_matrix(alg, words, pos, Spread::kLeft);
    const Mat m12 = transport_matrix(alg, words, pos, Spread::kMiddle);
    const Mat m02 = transport_matrix(alg, words, pos, Spread::kBoth);
    // The two single-merge transports commute -- their merge coefficients
    // telescope to the same split multinomial -- so both composition orders
    // must reproduce the double-merge transport exactly.
    const StratCheck first =
        first_column_mismatch(alg.ring(), m02, mat_mul(alg.ring(), m01, m12), words);
    if (!first.ok) return first;
    return first_column_mismatch(alg.ring(), m02, mat_mul(alg.ring(), m12, m01), words);
}

StratCheck verify_horizontality(const PParams& par, std::int64_t w_max) {
    const std::int64_t n = par.n;
    const auto pm = static_cast<std::int64_t>(par.pm());
    if (w_max < n * (pm - 1)) {
        throw PreconditionViolation(
            "horizontality window must cover the full coefficient box");
    }
    const DpAlg alg(par, WeightWindow{w_max});
    const Zq& R = alg.ring();
    const MultiIndex zero(static_cast<std::size_t>(n), 0);

    StratCheck out;
    for (const MultiIndex& I : basis_box(par)) {
        // Path through the transport: eps(1 x tau^{I}), no polynomial part.
        PolyElem path_eps;
        for (const MultiIndex& V : subindices(I)) {
            const MultiIndex rest = sub(I, V);
            std::uint64_t c = alg.qbinom_mod(I, V);
            if (weight(rest) % 2 != 0) c = R.neg(c);
            poly_add(R, path_eps, poly_key({&V, &rest, &zero}), c);
        }

        // Path through the flip and the augmentation embedding: the basis
        // section 1 x (sum_J binom(I,J) t^J e_{I-J}) flips to
        // sum_J binom(I,J) e_{I-J} x t^J; the embedding expands e_M as
        // sum_K binom(M,K) (-t)^K tau^{M-K} in the left slot, and the
        // right-hand copy of t expands as t - tau.
        PolyElem path_flip;
        for (const MultiIndex& J : subindices(I)) {
            const std::uint64_t cj = R.reduce(binom(I, J));
            for (const MultiIndex& K : subindices(sub(I, J))) {
                std::uint64_t ck = R.mul(cj, R.reduce(binom(sub(I, J), K)));
                if (weight(K) % 2 != 0) ck = R.neg(ck);
                const MultiIndex left = sub(sub(I, J), K);
                for (const MultiIndex& Kp : subindices(J)) {
                    std::uint64_t c = R.mul(ck, R.reduce(binom(J, Kp)));
                    if (weight(Kp) % 2 != 0) c = R.neg(c);
                    const MultiIndex texp = add(K, sub(J, Kp));
                    if (weight(texp) > w_max) continue;
                    poly_add(R, path_flip, poly_key({&left, &Kp, &texp}), c);
                }
            }
        }

        if (path_eps != path_flip) {
            out.ok = false;
            out.failing_basis = TensorWord{{I}}.str();
            out.lhs = render_poly(path_eps, n, 2);
            out.rhs = render_poly(path_flip, n, 2);
            return out;
        }
    }
    return out;
}

bool poly_power_recombination(const PParams& par, const MultiIndex& L) {
    const auto n = static_cast<std::int64_t>(L.size());
    PParams local = par;
    local.n = n;
    const DpAlg alg(local, WeightWindow{weight(L) + 1});
    const Zq& R = alg.ring();
    const MultiIndex zero(static_cast<std::size_t>(n), 0);

    const auto t_monomial = [&](const MultiIndex& E) {
        PolyElem x;
        poly_add(R, x, poly_key({&zero, &E}), 1);
        return x;
    };
    // 1 x t_i = t_i - tau_i against the left-based coordinates.
    const auto right_copy = [&](std::int64_t i) {
        const MultiIndex ei = unit_index(n, i);
        PolyElem x;
        poly_add(R, x, poly_key({&zero, &ei}), 1);
        poly_add(R, x, poly_key({&ei, &zero}), R.neg(1));
        return x;
    };
    // 1 x t_i - t_i x 1 = -tau_i.
    const auto difference = [&](std::int64_t i) {
        const MultiIndex ei = unit_index(n, i);
        PolyElem x;
        poly_add(R, x, poly_key({&ei, &zero}), R.neg(1));
        return x;
    };

    PolyElem lhs;
    for (const MultiIndex& J : subindices(L)) {
        PolyElem term = t_monomial(sub(L, J));
        for (std::int64_t i = 0; i < n; ++i) {
            term = poly_mul1(alg, term, poly_pow1(alg, difference(i), J[static_cast<std::size_t>(i)]));
        }
        const std::uint64_t c = R.reduce(binom(L, J));
        for (const auto& [key, value] : term) poly_add(R, lhs, key, R.mul(value, c));
    }

    PolyElem rhs;
    poly_add(R, rhs, poly_key({&zero, &zero}), 1);
    for (std::int64_t i = 0; i < n; ++i) {
        rhs = poly_mul1(alg, rhs, poly_pow1(alg, right_copy(i), L[static_cast<std::size_t>(i)]));
    }
    return lhs == rhs;
}

}  // namespace mpd
