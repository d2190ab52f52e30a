#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "algebra.hpp"

namespace cyl {

enum class CheckLevel { full, atom_level };

struct CheckOptions {
    std::uint64_t max_evals = 1ull << 24; // cap on full-mode evaluation work
    std::uint64_t samples = 100000;       // random samples when exhaustion is off the table
    std::uint64_t seed = 0;
};

struct AxiomVerdict {
    std::string axiom;
    bool pass = true;
    std::string mode;    // "full", "atom", "sampled(N)", "structural", combinations
    std::string witness; // first counterexample, empty when passing
};

struct AxiomReport {
    std::vector<AxiomVerdict> items;
    bool complete = true; // false when a full-level request exceeded the budget

    bool all_pass() const {
        for (auto& v : items)
            if (!v.pass) return false;
        return true;
    }
    const AxiomVerdict* find(const std::string& name) const {
        for (auto& v : items)
            if (v.axiom == name) return &v;
        return nullptr;
    }
};

namespace detail {

inline Bits random_element(std::mt19937_64& rng, std::size_t k) {
    Bits b(k);
    for (std::size_t i = 0; i < k; ++i)
        if (rng() & 1) b.set(i);
    return b;
}

/// Enumerate the whole universe if it fits in `cap` elements; otherwise return false.
template <class F>
bool for_universe(const FiniteAlgebra& alg, std::uint64_t cap, F&& f) {
    if (alg.universe) {
        if (alg.universe->size() > cap) return false;
        for (auto& x : *alg.universe) f(x);
        return true;
    }
    std::size_t k = alg.atoms();
    if (k >= 63 || (1ull << k) > cap) return false;
    for (std::uint64_t m = 0; m < (1ull << k); ++m) {
        Bits b(k);
        for (std::size_t i = 0; i < k; ++i)
            if ((m >> i) & 1) b.set(i);
        f(b);
    }
    return true;
}

/// Check `eq(x)` for all x (full) or on seeded samples. Returns the mode used and
/// leaves the first counterexample, if any, in `witness`.
template <class Eq, class Describe>
AxiomVerdict check_unary(const FiniteAlgebra& alg, std::string name, const CheckOptions& opt,
                         bool allow_sampling, bool& complete, Eq&& eq, Describe&& describe) {
    AxiomVerdict v;
    v.axiom = std::move(name);
    bool done = for_universe(alg, opt.max_evals, [&](const Bits& x) {
        if (v.pass && !eq(x)) {
            v.pass = false;
            v.witness = describe(x);
        }
    });
    if (done) {
        v.mode = "full";
        return v;
    }
    if (!allow_sampling) complete = false;
    std::mt19937_64 rng(opt.seed * 0x9e3779b97f4a7c15ull + 1);
    std::uint64_t n = opt.samples;
    // keep the sampling work itself within the evaluation budget
    std::uint64_t words = alg.atoms() / 64 + 1;
    if (n * words > opt.max_evals) n = opt.max_evals / words + 1;
    for (std::uint64_t s = 0; s < n; ++s) {
        Bits x = random_element(rng, alg.atoms());
        if (!eq(x)) {
            v.pass = false;
            v.witness = describe(x);
            break;
        }
    }
    v.mode = (allow_sampling ? "sampled(" : "sampled-incomplete(") + std::to_string(n) + ")";
    return v;
}

template <class Eq, class Describe>
AxiomVerdict check_binary(const FiniteAlgebra& alg, std::string name, const CheckOptions& opt,
                          bool allow_sampling, bool& complete, Eq&& eq, Describe&& describe) {
    AxiomVerdict v;
    v.axiom = std::move(name);
    // square root of the pair budget bounds the universe size we can do in full
    std::uint64_t cap = 1;
    while ((cap + 1) * (cap + 1) <= opt.max_evals) ++cap;
    std::vector<Bits> all;
    bool done = for_universe(alg, cap, [&](const Bits& x) { all.push_back(x); });
    if (done) {
        for (auto& x : all)
            for (auto& y : all)
                if (!eq(x, y)) {
                    v.pass = false;
                    v.witness = describe(x, y);
                    v.mode = "full";
                    return v;
                }
        v.mode = "full";
        return v;
    }
    if (!allow_sampling) complete = false;
    std::mt19937_64 rng(opt.seed * 0x9e3779b97f4a7c15ull + 2);
    std::uint64_t n = opt.samples;
    std::uint64_t words = alg.atoms() / 64 + 1;
    if (n * words > opt.max_evals) n = opt.max_evals / words + 1;
    for (std::uint64_t s = 0; s < n; ++s) {
        Bits x = random_element(rng, alg.atoms());
        Bits y = random_element(rng, alg.atoms());
        if (!eq(x, y)) {
            v.pass = false;
            v.witness = describe(x, y);
            break;
        }
    }
    v.mode = (allow_sampling ? "sampled(" : "sampled-incomplete(") + std::to_string(n) + ")";
    return v;
}

inline std::string atom_witness(const char* what, std::size_t a) {
    return std::string(what) + " at atom " + std::to_string(a);
}

} // namespace detail

/// Evaluate every axiom of the algebra's signature.
///
/// Full level enumerates the universe (budgeted). Atom level decides the
/// cylindric axioms exactly through the equivalent frame conditions (sound for
/// complex algebras, whose operators are completely additive) and backs each
/// with seeded random spot checks of the raw equation; interior and tense
/// axioms are not determined by atom values, so they are always evaluated over
/// elements (exhaustively when the universe fits the budget, sampled
/// otherwise).
inline AxiomReport check_axioms(const FiniteAlgebra& alg, CheckLevel level, CheckOptions opt = {}) {
    AxiomReport rep;
    const int n = alg.sig.n;
    const std::size_t k = alg.atoms();
    const AtomStructure& at = *alg.at;
    bool atom_mode = (level == CheckLevel::atom_level);

    auto push = [&](AxiomVerdict v) { rep.items.push_back(std::move(v)); };

    // (1) Boolean reduct: a powerset (or a field of sets closed by construction).
    {
        AxiomVerdict v;
        v.axiom = "CA1 boolean";
        v.mode = "structural";
        push(v);
    }

    // (2) c_i 0 = 0
    {
        AxiomVerdict v;
        v.axiom = "CA2 c_i0=0";
        v.mode = "full";
        for (int i = 0; i < n && v.pass; ++i)
            if (alg.cyl(i, alg.zero()).any()) {
                v.pass = false;
                v.witness = "c_" + std::to_string(i) + "(0) != 0";
            }
        push(v);
    }

    // (3) x <= c_i x  <->  T_i reflexive
    for (int i = 0; i < n; ++i) {
        AxiomVerdict v;
        v.axiom = "CA3 x<=c_ix [i=" + std::to_string(i) + "]";
        if (atom_mode || !alg.universe) {
            v.mode = "atom";
            if (at.T[i].kind() == Rel::Kind::pairs) {
                for (std::size_t a = 0; a < k; ++a)
                    if (!at.T[i].related(a, a)) {
                        v.pass = false;
                        v.witness = detail::atom_witness("T_i not reflexive", a);
                        break;
                    }
            }
            push(v);
        } else {
            push(detail::check_unary(
                alg, v.axiom, opt, atom_mode, rep.complete,
                [&](const Bits& x) { return x.subset_of(alg.cyl(i, x)); },
                [&](const Bits&) { return std::string("element not below its cylindrification"); }));
        }
    }

    // (4) c_i(x . c_i y) = c_i x . c_i y  <->  T_i symmetric and transitive
    for (int i = 0; i < n; ++i) {
        std::string name = "CA4 c_i(x.c_iy)=c_ix.c_iy [i=" + std::to_string(i) + "]";
        if (atom_mode) {
            AxiomVerdict v;
            v.axiom = name;
            v.mode = "atom";
            if (at.T[i].kind() == Rel::Kind::pairs) {
                if (!at.T[i].is_symmetric()) {
                    v.pass = false;
                    v.witness = "T_i not symmetric";
                } else if (!at.T[i].is_transitive()) {
                    v.pass = false;
                    v.witness = "T_i not transitive";
                }
            }
            push(v);
        } else {
            push(detail::check_binary(
                alg, name, opt, atom_mode, rep.complete,
                [&](const Bits& x, const Bits& y) {
                    return alg.cyl(i, x & alg.cyl(i, y)) == (alg.cyl(i, x) & alg.cyl(i, y));
                },
                [&](const Bits&, const Bits&) { return std::string("CA4 violated"); }));
        }
    }

    // (5) c_i c_j x = c_j c_i x
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::string name =
                "CA5 c_ic_jx=c_jc_ix [i=" + std::to_string(i) + ",j=" + std::to_string(j) + "]";
            if (atom_mode && at.T[i].kind() == Rel::Kind::partition &&
                at.T[j].kind() == Rel::Kind::partition) {
                AxiomVerdict v;
                v.axiom = name;
                v.mode = "atom";
                // realized (class_i, class_j) pairs; commutation iff membership of
                // (x1,y2) and (x2,y1) agrees across realized pairs
                std::uint32_t ci = at.T[i].nclasses(), cj = at.T[j].nclasses();
                std::vector<char> real((std::size_t)ci * cj, 0);
                for (std::size_t a = 0; a < k; ++a)
                    real[(std::size_t)at.T[i].cls(a) * cj + at.T[j].cls(a)] = 1;
                std::vector<std::pair<std::uint32_t, std::uint32_t>> P;
                for (std::uint32_t x = 0; x < ci; ++x)
                    for (std::uint32_t y = 0; y < cj; ++y)
                        if (real[(std::size_t)x * cj + y]) P.emplace_back(x, y);
                for (std::size_t p = 0; p < P.size() && v.pass; ++p)
                    for (std::size_t q = 0; q < P.size(); ++q) {
                        bool l = real[(std::size_t)P[p].first * cj + P[q].second];
                        bool r = real[(std::size_t)P[q].first * cj + P[p].second];
                        if (l != r) {
                            v.pass = false;
                            v.witness = "cylindrifier composition not symmetric between classes";
                            break;
                        }
                    }
                push(v);
            } else if (atom_mode) {
                AxiomVerdict v;
                v.axiom = name;
                v.mode = "atom";
                for (std::size_t a = 0; a < k && v.pass; ++a) {
                    Bits x = Bits::single(k, a);
                    if (alg.cyl(i, alg.cyl(j, x)) != alg.cyl(j, alg.cyl(i, x))) {
                        v.pass = false;
                        v.witness = detail::atom_witness("c_ic_j != c_jc_i", a);
                    }
                }
                push(v);
            } else {
                push(detail::check_unary(
                    alg, name, opt, atom_mode, rep.complete,
                    [&](const Bits& x) { return alg.cyl(i, alg.cyl(j, x)) == alg.cyl(j, alg.cyl(i, x)); },
                    [&](const Bits&) { return std::string("CA5 violated"); }));
            }
        }

    // (6) d_ii = 1
    if (alg.sig.diagonals)
        for (int i = 0; i < n; ++i) {
            AxiomVerdict v;
            v.axiom = "CA6 d_ii=1 [i=" + std::to_string(i) + "]";
            v.mode = "full";
            if (alg.diag(i, i) != alg.one()) {
                v.pass = false;
                v.witness = detail::atom_witness("atom missing from d_ii", (~alg.diag(i, i)).first());
            }
            push(v);
        }

    // (7) d_ij = c_k(d_ik . d_jk), k distinct from i,j
    if (alg.sig.diagonals)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int kk = 0; kk < n; ++kk) {
                    if (kk == i || kk == j) continue;
                    AxiomVerdict v;
                    v.axiom = "CA7 d_ij=c_k(d_ik.d_jk) [i=" + std::to_string(i) +
                              ",j=" + std::to_string(j) + ",k=" + std::to_string(kk) + "]";
                    v.mode = "full";
                    Bits rhs = alg.cyl(kk, alg.diag(i, kk) & alg.diag(j, kk));
                    if (rhs != alg.diag(i, j)) {
                        v.pass = false;
                        v.witness = detail::atom_witness("difference", (rhs ^ alg.diag(i, j)).first());
                    }
                    push(v);
                }

    // (8) i != j: c_i(d_ij.x) . c_i(d_ij.-x) = 0
    //     <-> every atom has at most one T_i neighbour inside E_ij
    if (alg.sig.diagonals)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                std::string name =
                    "CA8 c_i(d_ij.x).c_i(d_ij.-x)=0 [i=" + std::to_string(i) + ",j=" + std::to_string(j) + "]";
                if (atom_mode || !alg.universe) {
                    AxiomVerdict v;
                    v.axiom = name;
                    v.mode = "atom";
                    const Bits& e = at.E[i][j];
                    if (at.T[i].kind() == Rel::Kind::partition) {
                        std::vector<std::uint32_t> cnt(at.T[i].nclasses(), 0);
                        e.for_each([&](std::size_t a) { ++cnt[at.T[i].cls(a)]; });
                        for (std::size_t a = 0; a < k && v.pass; ++a)
                            if (cnt[at.T[i].cls(a)] > 1) {
                                v.pass = false;
                                v.witness = detail::atom_witness("two d_ij-atoms in one c_i class", a);
                            }
                    } else if (at.T[i].kind() == Rel::Kind::pairs) {
                        for (std::size_t a = 0; a < k && v.pass; ++a) {
                            int c = 0;
                            for (auto b : at.T[i].neighbours(a))
                                if (e.test(b) && ++c > 1) {
                                    v.pass = false;
                                    v.witness = detail::atom_witness("two d_ij witnesses", a);
                                    break;
                                }
                        }
                    } // identity relation: at most one neighbour, nothing to do
                    push(v);
                } else {
                    push(detail::check_unary(
                        alg, name, opt, atom_mode, rep.complete,
                        [&](const Bits& x) {
                            return (alg.cyl(i, alg.diag(i, j) & x) & alg.cyl(i, alg.diag(i, j) & ~x)).none();
                        },
                        [&](const Bits&) { return std::string("CA8 violated"); }));
                }
            }

    // Interior axioms: not determined by atom values, always element-level.
    if (alg.sig.interior) {
        for (int i = 0; i < n; ++i) {
            auto I = [&](const Bits& x) { return alg.interior(i, x); };
            auto q = [&](const Bits& x) { return q_op(alg, i, x); };
            auto sym = [](const Bits& a, const Bits& b) { return a ^ b; };
            push(detail::check_binary(
                alg, "TCA1 q_i(p(+)q)<=q_i(I_ip(+)I_iq) [i=" + std::to_string(i) + "] (verbatim)", opt,
                true, rep.complete,
                [&](const Bits& p, const Bits& qq) { return q(sym(p, qq)).subset_of(q(sym(I(p), I(qq)))); },
                [&](const Bits&, const Bits&) { return std::string("TCA1 violated"); }));
            push(detail::check_unary(
                alg, "TCA2 I_ip<=p [i=" + std::to_string(i) + "]", opt, true, rep.complete,
                [&](const Bits& p) { return I(p).subset_of(p); },
                [&](const Bits&) { return std::string("TCA2 violated"); }));
            push(detail::check_binary(
                alg, "TCA3 I_ip.I_iq=I_i(p.q) [i=" + std::to_string(i) + "]", opt, true, rep.complete,
                [&](const Bits& p, const Bits& qq) { return (I(p) & I(qq)) == I(p & qq); },
                [&](const Bits&, const Bits&) { return std::string("TCA3 violated"); }));
            push(detail::check_unary(
                alg, "TCA4 p<=I_iI_ip [i=" + std::to_string(i) + "] (verbatim)", opt, true, rep.complete,
                [&](const Bits& p) { return p.subset_of(I(I(p))); },
                [&](const Bits&) { return std::string("TCA4 violated"); }));
            {
                AxiomVerdict v;
                v.axiom = "TCA5 I_i1=1 [i=" + std::to_string(i) + "]";
                v.mode = "full";
                if (I(alg.one()) != alg.one()) {
                    v.pass = false;
                    v.witness = "I_i(1) != 1";
                }
                push(v);
            }
            for (int kk = 0; kk < n; ++kk) {
                if (kk == i) continue;
                push(detail::check_unary(
                    alg, "TCA6 c_kI_ip=I_ip (k not in dim p) [i=" + std::to_string(i) + ",k=" + std::to_string(kk) + "]",
                    opt, true, rep.complete,
                    [&](const Bits& p) {
                        if (alg.cyl(kk, p) != p) return true; // side condition k not in delta(p)
                        return alg.cyl(kk, I(p)) == I(p);
                    },
                    [&](const Bits&) { return std::string("TCA6 violated"); }));
            }
            for (int j = 0; j < n; ++j) {
                if (j == i) continue; // s_j^i displayed only via d_ji, j != i
                push(detail::check_unary(
                    alg, "TCA7 s_j^iI_ip=I_js_j^ip (j not in dim p) [i=" + std::to_string(i) + ",j=" + std::to_string(j) + "]",
                    opt, true, rep.complete,
                    [&](const Bits& p) {
                        if (alg.cyl(j, p) != p) return true; // side condition j not in delta(p)
                        return s_op(alg, j, i, I(p)) == alg.interior(j, s_op(alg, j, i, p));
                    },
                    [&](const Bits&) { return std::string("TCA7 violated"); }));
            }
        }
    }

    // Tense axioms T1-T4 plus the (non-)interaction equations.
    if (alg.sig.tense) {
        auto G = [&](const Bits& x) { return alg.G(x); };
        auto H = [&](const Bits& x) { return alg.H(x); };
        auto F = [&](const Bits& x) { return alg.F(x); };
        auto P = [&](const Bits& x) { return alg.P(x); };
        push(detail::check_binary(
            alg, "T1 G(x.y)=Gx.Gy", opt, true, rep.complete,
            [&](const Bits& x, const Bits& y) { return G(x & y) == (G(x) & G(y)); },
            [&](const Bits&, const Bits&) { return std::string("T1 violated"); }));
        push(detail::check_binary(
            alg, "T2 H(x.y)=Hx.Hy", opt, true, rep.complete,
            [&](const Bits& x, const Bits& y) { return H(x & y) == (H(x) & H(y)); },
            [&](const Bits&, const Bits&) { return std::string("T2 violated"); }));
        push(detail::check_unary(
            alg, "T3 Gx<=GGx", opt, true, rep.complete,
            [&](const Bits& x) { return G(x).subset_of(G(G(x))); },
            [&](const Bits&) { return std::string("T3 violated"); }));
        push(detail::check_unary(
            alg, "T4 x<=GPx and x<=HFx", opt, true, rep.complete,
            [&](const Bits& x) { return x.subset_of(G(P(x))) && x.subset_of(H(F(x))); },
            [&](const Bits&) { return std::string("T4 violated"); }));
        // "non-interaction": the tense operators and cylindrifiers are
        // independent, i.e. they commute (the fixed-point phrasing c_iGx = Gx
        // fails already for G = Id on any algebra with a non-trivial c_i)
        for (int i = 0; i < n; ++i) {
            push(detail::check_unary(
                alg, "Tint c_iGx=Gc_ix [i=" + std::to_string(i) + "]", opt, true, rep.complete,
                [&](const Bits& x) { return alg.cyl(i, G(x)) == G(alg.cyl(i, x)); },
                [&](const Bits&) { return std::string("interaction axiom violated"); }));
            push(detail::check_unary(
                alg, "Tint c_iHx=Hc_ix [i=" + std::to_string(i) + "]", opt, true, rep.complete,
                [&](const Bits& x) { return alg.cyl(i, H(x)) == H(alg.cyl(i, x)); },
                [&](const Bits&) { return std::string("interaction axiom violated"); }));
        }
    }

    return rep;
}

} // namespace cyl
