#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "axioms.hpp"

namespace cyl {

/// Finite time flow: moments 0..T-1, a strict (irreflexive, transitive) order,
/// gate sets Q1 (for Until) and Q2 (for Since), and a designated moment.
struct TimeFlow {
    int T = 1;
    std::vector<std::vector<char>> lt; // lt[s][t] : s earlier than t
    std::vector<char> Q1, Q2;
    int zero = 0;

    void validate() const {
        if (T < 1) throw std::invalid_argument("time flow needs at least one moment");
        if ((int)lt.size() != T || (int)Q1.size() != T || (int)Q2.size() != T)
            throw std::invalid_argument("time flow shape mismatch");
        if (zero < 0 || zero >= T) throw std::invalid_argument("designated moment out of range");
        for (int s = 0; s < T; ++s) {
            if ((int)lt[s].size() != T) throw std::invalid_argument("time flow shape mismatch");
            if (lt[s][s]) throw std::invalid_argument("time flow order must be irreflexive");
            for (int t = 0; t < T; ++t)
                for (int r = 0; r < T; ++r)
                    if (lt[s][t] && lt[t][r] && !lt[s][r])
                        throw std::invalid_argument("time flow order must be transitive");
        }
    }

    static TimeFlow linear(int k, bool gates_full = true) {
        TimeFlow f;
        f.T = k;
        f.lt.assign(k, std::vector<char>(k, 0));
        for (int s = 0; s < k; ++s)
            for (int t = s + 1; t < k; ++t) f.lt[s][t] = 1;
        f.Q1.assign(k, gates_full ? 1 : 0);
        f.Q2.assign(k, gates_full ? 1 : 0);
        return f;
    }
    static TimeFlow single() { return linear(1); }

    TimeFlow reversed() const {
        TimeFlow f = *this;
        for (int s = 0; s < T; ++s)
            for (int t = 0; t < T; ++t) f.lt[s][t] = lt[t][s];
        std::swap(f.Q1, f.Q2);
        return f;
    }
};

/// Tense system: per-moment base sets X_t with n-dimensional cubic components,
/// and optional navigation maps V[t][s] : X_t -> X_s for order-related moments.
/// Displayed "plain-x" evaluation is the default; the V-translated variant is
/// available via the use_navigation flag on the evaluators.
struct TenseSystem {
    TimeFlow flow;
    int n = 1;
    std::vector<int> base;                          // |X_t|
    std::vector<std::vector<std::vector<int>>> V;   // V[t][s], empty = undefined
    std::vector<std::string> warnings;              // non-fatal structural flags

    std::size_t comp_atoms(int t) const {
        std::size_t k = 1;
        for (int i = 0; i < n; ++i) k *= (std::size_t)base[t];
        return k;
    }
    bool has_V(int t, int s) const {
        return !V.empty() && !V[t][s].empty();
    }

    void validate() {
        flow.validate();
        if (n < 1) throw std::invalid_argument("tense system dimension must be >= 1");
        if ((int)base.size() != flow.T) throw std::invalid_argument("tense system base count mismatch");
        for (int b : base)
            if (b < 1) throw std::invalid_argument("tense system bases must be nonempty");
        if (V.empty()) return;
        if ((int)V.size() != flow.T) throw std::invalid_argument("navigation map shape mismatch");
        for (int t = 0; t < flow.T; ++t) {
            if ((int)V[t].size() != flow.T) throw std::invalid_argument("navigation map shape mismatch");
            for (int s = 0; s < flow.T; ++s) {
                if (V[t][s].empty()) continue;
                if ((int)V[t][s].size() != base[t]) throw std::invalid_argument("navigation map domain mismatch");
                for (int v : V[t][s])
                    if (v < 0 || v >= base[s]) throw std::invalid_argument("navigation map range mismatch");
                if (t == s)
                    for (int a = 0; a < base[t]; ++a)
                        if (V[t][t][a] != a) throw std::invalid_argument("V_tt must be the identity");
            }
        }
        // plausible composition law along the order: V_tr = V_sr after V_ts
        for (int t = 0; t < flow.T; ++t)
            for (int s = 0; s < flow.T; ++s)
                for (int r = 0; r < flow.T; ++r) {
                    if (!(flow.lt[t][s] && flow.lt[s][r])) continue;
                    if (!(has_V(t, s) && has_V(s, r) && has_V(t, r))) continue;
                    for (int a = 0; a < base[t]; ++a)
                        if (V[t][r][a] != V[s][r][V[t][s][a]])
                            throw std::invalid_argument("navigation maps do not compose along the order");
                }
        // the verbatim equation "V_tr = V_st o V_tr" is flagged, never enforced:
        // as displayed it is type-correct only when s = r, where it degenerates
        for (int t = 0; t < flow.T; ++t)
            for (int s = 0; s < flow.T; ++s)
                for (int r = 0; r < flow.T; ++r) {
                    if (!(has_V(t, r) && has_V(s, t) && has_V(t, r))) continue;
                    if (s != r) continue; // only typing that composes
                    for (int a = 0; a < base[t]; ++a)
                        if (V[t][r][a] != V[s][t][V[t][r][a]]) {
                            warnings.push_back("verbatim navigation equation fails at moments (" +
                                               std::to_string(s) + "," + std::to_string(t) + "," +
                                               std::to_string(r) + ")");
                            return;
                        }
                }
    }
};

/// One element of the product algebra: a subset of ^nX_t per moment.
struct TenseElement {
    std::vector<Bits> comp;
    bool operator==(const TenseElement&) const = default;
};

namespace detail {

inline std::vector<int> unrank_tuple(std::size_t a, int n, int b) {
    std::vector<int> d(n);
    for (int i = n - 1; i >= 0; --i) {
        d[i] = (int)(a % (std::size_t)b);
        a /= (std::size_t)b;
    }
    return d;
}
inline std::size_t rank_tuple(const std::vector<int>& d, int b) {
    std::size_t a = 0;
    for (int x : d) a = a * (std::size_t)b + (std::size_t)x;
    return a;
}

} // namespace detail

inline TenseElement tense_zero(const TenseSystem& sys) {
    TenseElement e;
    for (int t = 0; t < sys.flow.T; ++t) e.comp.emplace_back(sys.comp_atoms(t));
    return e;
}
inline TenseElement tense_one(const TenseSystem& sys) {
    TenseElement e;
    for (int t = 0; t < sys.flow.T; ++t) e.comp.push_back(Bits::ones(sys.comp_atoms(t)));
    return e;
}
inline TenseElement tense_not(const TenseSystem&, TenseElement x) {
    for (auto& c : x.comp) c = ~c;
    return x;
}
inline TenseElement tense_and(TenseElement x, const TenseElement& y) {
    for (std::size_t t = 0; t < x.comp.size(); ++t) x.comp[t] &= y.comp[t];
    return x;
}
inline TenseElement tense_or(TenseElement x, const TenseElement& y) {
    for (std::size_t t = 0; t < x.comp.size(); ++t) x.comp[t] |= y.comp[t];
    return x;
}
inline bool tense_leq(const TenseElement& x, const TenseElement& y) {
    for (std::size_t t = 0; t < x.comp.size(); ++t)
        if (!x.comp[t].subset_of(y.comp[t])) return false;
    return true;
}

/// Componentwise cylindrifier c_j.
inline TenseElement eval_cyl(const TenseSystem& sys, int j, const TenseElement& x) {
    if (j < 0 || j >= sys.n) throw std::out_of_range("cylindrifier index out of dimension");
    TenseElement g = tense_zero(sys);
    for (int t = 0; t < sys.flow.T; ++t) {
        int b = sys.base[t];
        std::size_t k = sys.comp_atoms(t);
        for (std::size_t a = 0; a < k; ++a) {
            if (g.comp[t].test(a)) continue;
            auto d = detail::unrank_tuple(a, sys.n, b);
            bool hit = false;
            for (int v = 0; v < b && !hit; ++v) {
                d[j] = v;
                hit = x.comp[t].test(detail::rank_tuple(d, b));
            }
            if (hit) {
                // mark the whole =_j class at once
                for (int v = 0; v < b; ++v) {
                    d[j] = v;
                    g.comp[t].set(detail::rank_tuple(d, b));
                }
            }
        }
    }
    return g;
}

/// Diagonal d_ij: tuples with equal i-th and j-th coordinates, per component.
inline TenseElement eval_diag(const TenseSystem& sys, int i, int j) {
    if (i < 0 || i >= sys.n || j < 0 || j >= sys.n) throw std::out_of_range("diagonal index out of dimension");
    TenseElement g = tense_zero(sys);
    for (int t = 0; t < sys.flow.T; ++t)
        for (std::size_t a = 0; a < sys.comp_atoms(t); ++a) {
            auto d = detail::unrank_tuple(a, sys.n, sys.base[t]);
            if (d[i] == d[j]) g.comp[t].set(a);
        }
    return g;
}

/// Replacement substitution s_i^j (tuple x belongs iff x with slot i overwritten
/// by x_j belongs) and the transposition s_[i,j].
inline TenseElement eval_subst(const TenseSystem& sys, int i, int j, const TenseElement& x,
                               bool transposition) {
    if (i < 0 || i >= sys.n || j < 0 || j >= sys.n) throw std::out_of_range("substitution index out of dimension");
    TenseElement g = tense_zero(sys);
    for (int t = 0; t < sys.flow.T; ++t)
        for (std::size_t a = 0; a < sys.comp_atoms(t); ++a) {
            auto d = detail::unrank_tuple(a, sys.n, sys.base[t]);
            if (transposition) std::swap(d[i], d[j]);
            else d[i] = d[j];
            if (x.comp[t].test(detail::rank_tuple(d, sys.base[t]))) g.comp[t].set(a);
        }
    return g;
}

namespace detail {

/// Translate a component-t tuple index into moment s through V, or return the
/// same index for the plain displayed semantics. Returns false when the
/// required navigation map is missing or bases mismatch.
inline bool translate_tuple(const TenseSystem& sys, int t, int s, std::size_t a, bool use_navigation,
                            std::size_t& out) {
    if (!use_navigation) {
        if (sys.base[t] != sys.base[s]) return false;
        out = a;
        return true;
    }
    if (!sys.has_V(t, s)) return false;
    auto d = unrank_tuple(a, sys.n, sys.base[t]);
    for (auto& xi : d) xi = sys.V[t][s][xi];
    out = rank_tuple(d, sys.base[s]);
    return true;
}

} // namespace detail

/// G (always in the future): g_t = meet of the later components; empty meet = top.
/// H is the mirror along the reversed order.
inline TenseElement eval_G(const TenseSystem& sys, const TenseElement& x, bool use_navigation = false) {
    TenseElement g = tense_one(sys);
    for (int t = 0; t < sys.flow.T; ++t)
        for (int s = 0; s < sys.flow.T; ++s) {
            if (!sys.flow.lt[t][s]) continue;
            for (std::size_t a = 0; a < sys.comp_atoms(t); ++a) {
                std::size_t b;
                if (!detail::translate_tuple(sys, t, s, a, use_navigation, b))
                    throw std::invalid_argument("component bases differ and no navigation map is available");
                if (!x.comp[s].test(b)) g.comp[t].reset(a);
            }
        }
    return g;
}
inline TenseElement eval_H(const TenseSystem& sys, const TenseElement& x, bool use_navigation = false) {
    TenseElement g = tense_one(sys);
    for (int t = 0; t < sys.flow.T; ++t)
        for (int s = 0; s < sys.flow.T; ++s) {
            if (!sys.flow.lt[s][t]) continue;
            for (std::size_t a = 0; a < sys.comp_atoms(t); ++a) {
                std::size_t b;
                if (!detail::translate_tuple(sys, t, s, a, use_navigation, b))
                    throw std::invalid_argument("component bases differ and no navigation map is available");
                if (!x.comp[s].test(b)) g.comp[t].reset(a);
            }
        }
    return g;
}
inline TenseElement eval_F(const TenseSystem& sys, const TenseElement& x, bool nav = false) {
    return tense_not(sys, eval_G(sys, tense_not(sys, x), nav));
}
inline TenseElement eval_P(const TenseSystem& sys, const TenseElement& x, bool nav = false) {
    return tense_not(sys, eval_H(sys, tense_not(sys, x), nav));
}

/// Until: u_t(x) = 1 iff t in Q1 and some later s has f_s(x) with h_u(x) at every
/// strictly intermediate moment t < u < s. Since is the mirror, gated by Q2.
inline TenseElement eval_U(const TenseSystem& sys, const TenseElement& f, const TenseElement& h,
                           bool nav = false) {
    TenseElement g = tense_zero(sys);
    for (int t = 0; t < sys.flow.T; ++t) {
        if (!sys.flow.Q1[t]) continue;
        for (std::size_t a = 0; a < sys.comp_atoms(t); ++a) {
            bool val = false;
            for (int s = 0; s < sys.flow.T && !val; ++s) {
                if (!sys.flow.lt[t][s]) continue;
                std::size_t bs;
                if (!detail::translate_tuple(sys, t, s, a, nav, bs))
                    throw std::invalid_argument("component bases differ and no navigation map is available");
                if (!f.comp[s].test(bs)) continue;
                bool guard = true;
                for (int u = 0; u < sys.flow.T && guard; ++u) {
                    if (!(sys.flow.lt[t][u] && sys.flow.lt[u][s])) continue;
                    std::size_t bu;
                    if (!detail::translate_tuple(sys, t, u, a, nav, bu))
                        throw std::invalid_argument("component bases differ and no navigation map is available");
                    guard = h.comp[u].test(bu);
                }
                val = guard;
            }
            if (val) g.comp[t].set(a);
        }
    }
    return g;
}
inline TenseElement eval_S(const TenseSystem& sys, const TenseElement& f, const TenseElement& h,
                           bool nav = false) {
    TenseElement g = tense_zero(sys);
    for (int t = 0; t < sys.flow.T; ++t) {
        if (!sys.flow.Q2[t]) continue;
        for (std::size_t a = 0; a < sys.comp_atoms(t); ++a) {
            bool val = false;
            for (int s = 0; s < sys.flow.T && !val; ++s) {
                if (!sys.flow.lt[s][t]) continue;
                std::size_t bs;
                if (!detail::translate_tuple(sys, t, s, a, nav, bs))
                    throw std::invalid_argument("component bases differ and no navigation map is available");
                if (!f.comp[s].test(bs)) continue;
                bool guard = true;
                for (int u = 0; u < sys.flow.T && guard; ++u) {
                    if (!(sys.flow.lt[s][u] && sys.flow.lt[u][t])) continue;
                    std::size_t bu;
                    if (!detail::translate_tuple(sys, t, u, a, nav, bu))
                        throw std::invalid_argument("component bases differ and no navigation map is available");
                    guard = h.comp[u].test(bu);
                }
                val = guard;
            }
            if (val) g.comp[t].set(a);
        }
    }
    return g;
}

namespace detail {

inline std::size_t tense_total_bits(const TenseSystem& sys) {
    std::size_t total = 0;
    for (int t = 0; t < sys.flow.T; ++t) total += sys.comp_atoms(t);
    return total;
}
inline TenseElement tense_unrank(const TenseSystem& sys, std::uint64_t mask) {
    TenseElement e = tense_zero(sys);
    std::size_t bit = 0;
    for (int t = 0; t < sys.flow.T; ++t)
        for (std::size_t a = 0; a < sys.comp_atoms(t); ++a, ++bit)
            if ((mask >> bit) & 1) e.comp[t].set(a);
    return e;
}
inline TenseElement tense_random(const TenseSystem& sys, std::mt19937_64& rng) {
    TenseElement e = tense_zero(sys);
    for (int t = 0; t < sys.flow.T; ++t)
        for (std::size_t a = 0; a < sys.comp_atoms(t); ++a)
            if (rng() & 1) e.comp[t].set(a);
    return e;
}

} // namespace detail

/// Exhaustive-or-sampled verification of an equation in `arity` element
/// variables over the tense system.
template <class Pred>
inline AxiomVerdict tense_axiom(const TenseSystem& sys, std::string name, int arity, Pred&& pred,
                                std::uint64_t samples = 2000, std::uint64_t seed = 0,
                                std::size_t full_bits_cap = 10) {
    AxiomVerdict v;
    v.axiom = std::move(name);
    std::size_t bits = detail::tense_total_bits(sys);
    std::vector<TenseElement> args(arity, tense_zero(sys));
    if (bits * (std::size_t)arity <= full_bits_cap * 2 && bits <= 16) {
        std::uint64_t total = 1;
        for (int i = 0; i < arity; ++i) total *= (1ull << bits);
        for (std::uint64_t m = 0; m < total && v.pass; ++m) {
            std::uint64_t rest = m;
            for (int i = 0; i < arity; ++i) {
                args[i] = detail::tense_unrank(sys, rest & ((1ull << bits) - 1));
                rest >>= bits;
            }
            if (!pred(args)) {
                v.pass = false;
                v.witness = "element combination #" + std::to_string(m);
            }
        }
        v.mode = "full";
        return v;
    }
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 77);
    for (std::uint64_t s = 0; s < samples && v.pass; ++s) {
        for (int i = 0; i < arity; ++i) args[i] = detail::tense_random(sys, rng);
        if (!pred(args)) {
            v.pass = false;
            v.witness = "random sample #" + std::to_string(s);
        }
    }
    v.mode = "sampled(" + std::to_string(samples) + ")";
    return v;
}

/// Tense axiom suite over a concrete system: T1-T4, the commutation reading of
/// the (non-)interaction equations, the printed fixed-point interaction form on
/// G/H-image elements, and the printed T2 variant reported for transparency.
inline AxiomReport check_tense_axioms(const TenseSystem& sys, std::uint64_t samples = 2000,
                                      std::uint64_t seed = 0) {
    AxiomReport rep;
    auto G = [&](const TenseElement& x) { return eval_G(sys, x); };
    auto H = [&](const TenseElement& x) { return eval_H(sys, x); };
    auto F = [&](const TenseElement& x) { return eval_F(sys, x); };
    auto P = [&](const TenseElement& x) { return eval_P(sys, x); };
    auto push = [&](AxiomVerdict v) { rep.items.push_back(std::move(v)); };
    using Args = std::vector<TenseElement>;

    push(tense_axiom(sys, "T1 G(x.y)=Gx.Gy", 2,
                     [&](const Args& a) { return G(tense_and(a[0], a[1])) == tense_and(G(a[0]), G(a[1])); },
                     samples, seed));
    push(tense_axiom(sys, "T2 H(x.y)=Hx.Hy", 2,
                     [&](const Args& a) { return H(tense_and(a[0], a[1])) == tense_and(H(a[0]), H(a[1])); },
                     samples, seed));
    push(tense_axiom(sys, "T2-as-printed H(x.y)=Hx.Gy", 2,
                     [&](const Args& a) { return H(tense_and(a[0], a[1])) == tense_and(H(a[0]), G(a[1])); },
                     samples, seed));
    push(tense_axiom(sys, "T3 Gx<=GGx", 1,
                     [&](const Args& a) { return tense_leq(G(a[0]), G(G(a[0]))); }, samples, seed));
    push(tense_axiom(sys, "T4 x<=GPx and x<=HFx", 1,
                     [&](const Args& a) {
                         return tense_leq(a[0], G(P(a[0]))) && tense_leq(a[0], H(F(a[0])));
                     },
                     samples, seed));
    for (int i = 0; i < sys.n; ++i) {
        push(tense_axiom(sys, "Tint c_iGx=Gc_ix [i=" + std::to_string(i) + "]", 1,
                         [&](const Args& a) {
                             return eval_cyl(sys, i, G(a[0])) == G(eval_cyl(sys, i, a[0]));
                         },
                         samples, seed));
        push(tense_axiom(sys, "Tint c_iHx=Hc_ix [i=" + std::to_string(i) + "]", 1,
                         [&](const Args& a) {
                             return eval_cyl(sys, i, H(a[0])) == H(eval_cyl(sys, i, a[0]));
                         },
                         samples, seed));
        push(tense_axiom(sys, "Tint c_iG(x)=G(x) on the G-image [i=" + std::to_string(i) + "]", 1,
                         [&](const Args& a) {
                             TenseElement gx = G(G(a[0])); // x := G(a), then the equation on x
                             return eval_cyl(sys, i, gx) == gx;
                         },
                         samples, seed));
        push(tense_axiom(sys, "Tint c_iH(x)=H(x) on the H-image [i=" + std::to_string(i) + "]", 1,
                         [&](const Args& a) {
                             TenseElement hx = H(H(a[0]));
                             return eval_cyl(sys, i, hx) == hx;
                         },
                         samples, seed));
    }
    return rep;
}

/// The ten Since/Until axioms (complete for (N, <)), evaluated as element-wise
/// validities on the given finite system. Typos in the printed list are
/// resolved minimally: (3) "a" read as q, (5) "rq" read as q, (8) "T" read as
/// top, (10) "phi" read as p; (7) is the mirror of (1)-(6).
inline AxiomReport check_venema(const TenseSystem& sys, std::uint64_t samples = 500,
                                std::uint64_t seed = 0) {
    AxiomReport rep;
    auto G = [&](const TenseElement& x) { return eval_G(sys, x); };
    auto H = [&](const TenseElement& x) { return eval_H(sys, x); };
    auto F = [&](const TenseElement& x) { return eval_F(sys, x); };
    auto P = [&](const TenseElement& x) { return eval_P(sys, x); };
    auto U = [&](const TenseElement& x, const TenseElement& y) { return eval_U(sys, x, y); };
    auto S = [&](const TenseElement& x, const TenseElement& y) { return eval_S(sys, x, y); };
    auto NOT = [&](const TenseElement& x) { return tense_not(sys, x); };
    auto AND = [&](const TenseElement& x, const TenseElement& y) { return tense_and(x, y); };
    auto OR = [&](const TenseElement& x, const TenseElement& y) { return tense_or(x, y); };
    auto IMP = [&](const TenseElement& x, const TenseElement& y) { return OR(NOT(x), y); };
    TenseElement top = tense_one(sys), bot = tense_zero(sys);
    auto valid = [&](const TenseElement& x) { return x == top; };
    auto push = [&](AxiomVerdict v) { rep.items.push_back(std::move(v)); };
    using Args = std::vector<TenseElement>;

    push(tense_axiom(sys, "V1 G(p->q)->(U(p,r)->U(q,r))", 3,
                     [&](const Args& a) {
                         return valid(IMP(G(IMP(a[0], a[1])), IMP(U(a[0], a[2]), U(a[1], a[2]))));
                     },
                     samples, seed, 8));
    push(tense_axiom(sys, "V2 G(p->q)->(U(r,p)->U(r,q))", 3,
                     [&](const Args& a) {
                         return valid(IMP(G(IMP(a[0], a[1])), IMP(U(a[2], a[0]), U(a[2], a[1]))));
                     },
                     samples, seed, 8));
    push(tense_axiom(sys, "V3 p&U(q,r)->U(q&S(p,r),r)", 3,
                     [&](const Args& a) {
                         return valid(IMP(AND(a[0], U(a[1], a[2])),
                                          U(AND(a[1], S(a[0], a[2])), a[2])));
                     },
                     samples, seed, 8));
    push(tense_axiom(sys, "V4 U(p,q)&-U(p,r)->U(q&-r,q)", 3,
                     [&](const Args& a) {
                         return valid(IMP(AND(U(a[0], a[1]), NOT(U(a[0], a[2]))),
                                          U(AND(a[1], NOT(a[2])), a[1])));
                     },
                     samples, seed, 8));
    push(tense_axiom(sys, "V5 U(p,q)->U(p,q&U(p,q))", 2,
                     [&](const Args& a) {
                         return valid(IMP(U(a[0], a[1]), U(a[0], AND(a[1], U(a[0], a[1])))));
                     },
                     samples, seed, 8));
    push(tense_axiom(sys, "V6 U(p,q)&U(r,s)->U(p&r,q&s)|U(p&s,q&s)|U(q&r,q&s)", 4,
                     [&](const Args& a) {
                         auto lhs = AND(U(a[0], a[1]), U(a[2], a[3]));
                         auto rhs = OR(OR(U(AND(a[0], a[2]), AND(a[1], a[3])),
                                          U(AND(a[0], a[3]), AND(a[1], a[3]))),
                                       U(AND(a[1], a[2]), AND(a[1], a[3])));
                         return valid(IMP(lhs, rhs));
                     },
                     samples, seed, 8));
    push(tense_axiom(sys, "V7 mirror of V1 (H/S/P)", 3,
                     [&](const Args& a) {
                         return valid(IMP(H(IMP(a[0], a[1])), IMP(S(a[0], a[2]), S(a[1], a[2]))));
                     },
                     samples, seed, 8));
    {
        AxiomVerdict v;
        v.axiom = "V8 FT->U(T,bot) & (PT->S(T,bot))";
        v.mode = "full";
        if (!valid(AND(IMP(F(top), U(top, bot)), IMP(P(top), S(top, bot))))) {
            v.pass = false;
            v.witness = "discreteness axiom fails on this flow";
        }
        push(v);
    }
    {
        AxiomVerdict v;
        v.axiom = "V9 H bot | PH bot";
        v.mode = "full";
        if (!valid(OR(H(bot), P(H(bot))))) {
            v.pass = false;
            v.witness = "no-minimum flow";
        }
        push(v);
    }
    push(tense_axiom(sys, "V10 Fp->U(p,-p)", 1,
                     [&](const Args& a) { return valid(IMP(F(a[0]), U(a[0], NOT(a[0])))); },
                     samples, seed, 8));
    return rep;
}

} // namespace cyl
