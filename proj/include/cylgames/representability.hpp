#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "axioms.hpp"
#include "games.hpp"

namespace cyl {

/// A (possibly relativized) set representation of a finite atomic algebra over
/// a base U = {0..U-1}.  The labelling assigns an atom to each n-tuple over
/// the base, in lexicographic tuple order; `outside` marks tuples excluded
/// from the unit V (classical representations label every tuple).  The
/// induced map sends an element x to the set of tuples whose label lies in x.
struct Representation {
    enum class Kind { classical, k_square };
    static constexpr std::uint32_t outside = 0xFFFFFFFFu;

    Kind kind = Kind::classical;
    int n = 0; ///< dimension
    int U = 0; ///< base size
    int k = 0; ///< clique width (k_square only)
    std::vector<std::uint32_t> label; ///< one entry per tuple of ^nU

    std::size_t tuples() const { return label.size(); }
    bool in_unit(std::size_t idx) const { return label[idx] != outside; }
};

namespace detail {

inline std::size_t ipow(std::size_t b, int e) {
    std::size_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

inline void tuple_decode(std::size_t idx, int n, int U, std::vector<int>& t) {
    t.assign(n, 0);
    for (int i = n - 1; i >= 0; --i) {
        t[i] = (int)(idx % (std::size_t)U);
        idx /= (std::size_t)U;
    }
}

inline std::size_t tuple_encode(const std::vector<int>& t, int U) {
    std::size_t idx = 0;
    for (int v : t) idx = idx * (std::size_t)U + (std::size_t)v;
    return idx;
}

/// All injections l : n -> k, as vectors of target positions.
inline std::vector<std::vector<int>> injections(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::vector<char> used(k, 0);
    auto rec = [&](auto&& self) -> void {
        if ((int)cur.size() == n) {
            out.push_back(cur);
            return;
        }
        for (int p = 0; p < k; ++p) {
            if (used[p]) continue;
            used[p] = 1;
            cur.push_back(p);
            self(self);
            cur.pop_back();
            used[p] = 0;
        }
    };
    rec(rec);
    return out;
}

} // namespace detail

struct RepCheck {
    bool ok = true;
    std::string reason;
    std::string mode; ///< element coverage of the operator checks
};

/// Independent verification that a representation really induces an injective
/// homomorphism: totality/shape, diagonal pattern, cylindrifier equalities,
/// transposition equivariance, injectivity (every atom realised), base cover,
/// and for the relativized kind the clique-guarded witness condition.
/// Operator equalities are checked on every element when the universe is small
/// (<= 12 atoms) and on atoms plus seeded random samples above that.
inline RepCheck verify_representation(const FiniteAlgebra& A, const Representation& rep) {
    RepCheck out;
    auto fail = [&](std::string why) {
        out.ok = false;
        out.reason = std::move(why);
        return out;
    };
    const AtomStructure& at = *A.at;
    const int n = A.sig.n;
    const std::size_t natoms = at.atoms;
    if (rep.n != n) return fail("dimension mismatch");
    if (rep.U < 1) return fail("empty base");
    const std::size_t T = detail::ipow((std::size_t)rep.U, n);
    if (rep.label.size() != T) return fail("labelling has the wrong shape");
    if (rep.kind == Representation::Kind::classical) {
        for (auto l : rep.label)
            if (l == Representation::outside) return fail("classical representation leaves a tuple unlabelled");
    } else if (rep.k <= n) {
        return fail("clique width must exceed the dimension");
    }
    for (auto l : rep.label)
        if (l != Representation::outside && l >= natoms) return fail("label is not an atom");
    if (A.sig.interior)
        for (auto& r : at.In)
            if (!r.is_identity()) return fail("unsupported non-discrete interior operators");

    std::vector<int> t(n), t2(n);

    // injectivity: every atom realised somewhere in the unit
    {
        std::vector<char> used(natoms, 0);
        for (auto l : rep.label)
            if (l != Representation::outside) used[l] = 1;
        for (std::size_t a = 0; a < natoms; ++a)
            if (!used[a]) return fail("atom " + std::to_string(a) + " has an empty image");
    }
    // base cover: every point of U occurs in a unit tuple
    {
        std::vector<char> seen(rep.U, 0);
        for (std::size_t idx = 0; idx < T; ++idx) {
            if (!rep.in_unit(idx)) continue;
            detail::tuple_decode(idx, n, rep.U, t);
            for (int v : t) seen[v] = 1;
        }
        for (int v = 0; v < rep.U; ++v)
            if (!seen[v]) return fail("base point " + std::to_string(v) + " not covered by the unit");
    }
    // diagonal pattern: tuple agreement at (i,j) iff the label sits below d_ij
    for (std::size_t idx = 0; idx < T; ++idx) {
        if (!rep.in_unit(idx)) continue;
        detail::tuple_decode(idx, n, rep.U, t);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if ((t[i] == t[j]) != at.E[i][j].test(rep.label[idx]))
                    return fail("diagonal pattern violated at tuple " + std::to_string(idx));
    }
    // transposition equivariance: L(s o [i,j]) determines L(s)
    if (A.sig.transpositions)
        for (std::size_t idx = 0; idx < T; ++idx) {
            detail::tuple_decode(idx, n, rep.U, t);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    t2 = t;
                    std::swap(t2[i], t2[j]);
                    std::size_t p = detail::tuple_encode(t2, rep.U);
                    bool u1 = rep.in_unit(idx), u2 = rep.in_unit(p);
                    if (u1 != u2) return fail("unit not closed under coordinate transposition");
                    if (u1 && rep.label[p] != at.subst(i, j, rep.label[idx]))
                        return fail("transposition equivariance violated at tuple " + std::to_string(idx));
                }
        }
    // cylindrifier equalities on atoms: h(c_i a) = c_i^V h(a), both inclusions
    for (std::size_t idx = 0; idx < T; ++idx) {
        if (!rep.in_unit(idx)) continue;
        detail::tuple_decode(idx, n, rep.U, t);
        std::uint32_t ls = rep.label[idx];
        for (int i = 0; i < n; ++i) {
            std::vector<char> found(natoms, 0);
            for (int w = 0; w < rep.U; ++w) {
                t2 = t;
                t2[i] = w;
                std::size_t p = detail::tuple_encode(t2, rep.U);
                if (!rep.in_unit(p)) continue;
                std::uint32_t lt = rep.label[p];
                if (!at.T[i].related(ls, lt) || !at.T[i].related(lt, ls))
                    return fail("cylindrifier-inconsistent neighbours at tuple " + std::to_string(idx));
                found[lt] = 1;
            }
            for (std::size_t a = 0; a < natoms; ++a)
                if (at.T[i].related(ls, a) && !found[a])
                    return fail("missing cylindrifier witness: tuple " + std::to_string(idx) + ", axis " +
                                std::to_string(i) + ", atom " + std::to_string(a));
        }
    }
    // element-level spot check of the full homomorphism property, beyond atoms
    {
        auto image = [&](const Bits& x) {
            std::vector<char> v(T, 0);
            for (std::size_t idx = 0; idx < T; ++idx)
                if (rep.in_unit(idx) && x.test(rep.label[idx])) v[idx] = 1;
            return v;
        };
        auto cyl_set = [&](int i, const std::vector<char>& v) {
            std::vector<char> r(T, 0);
            for (std::size_t idx = 0; idx < T; ++idx) {
                if (!rep.in_unit(idx)) continue;
                detail::tuple_decode(idx, n, rep.U, t);
                for (int w = 0; w < rep.U && !r[idx]; ++w) {
                    t2 = t;
                    t2[i] = w;
                    if (v[detail::tuple_encode(t2, rep.U)]) r[idx] = 1;
                }
            }
            return r;
        };
        auto check_element = [&](const Bits& x) -> bool {
            auto hx = image(x);
            for (int i = 0; i < n; ++i)
                if (image(A.cyl(i, x)) != cyl_set(i, hx)) return false;
            return true;
        };
        if (natoms <= 12) {
            out.mode = "all elements";
            for (std::size_t code = 0; code < ((std::size_t)1 << natoms); ++code) {
                Bits x(natoms);
                for (std::size_t a = 0; a < natoms; ++a)
                    if (code & ((std::size_t)1 << a)) x.set(a);
                if (!check_element(x)) return fail("cylindrifier equality fails on an element");
            }
        } else {
            out.mode = "atoms + 256 samples";
            std::mt19937_64 rng(0xC0FFEE);
            for (int s = 0; s < 256; ++s) {
                Bits x(natoms);
                for (std::size_t a = 0; a < natoms; ++a)
                    if (rng() & 1) x.set(a);
                if (!check_element(x)) return fail("cylindrifier equality fails on a sampled element");
            }
        }
    }
    // clique-guarded witnesses for the relativized kind
    if (rep.kind == Representation::Kind::k_square) {
        // n-hyperedges: ranges of unit tuples with n distinct entries
        std::set<std::vector<int>> edges;
        for (std::size_t idx = 0; idx < T; ++idx) {
            if (!rep.in_unit(idx)) continue;
            detail::tuple_decode(idx, n, rep.U, t);
            std::vector<int> rng(t);
            std::sort(rng.begin(), rng.end());
            rng.erase(std::unique(rng.begin(), rng.end()), rng.end());
            if ((int)rng.size() == n) edges.insert(rng);
        }
        auto clique = [&](const std::vector<int>& kt) {
            std::vector<int> pts(kt);
            std::sort(pts.begin(), pts.end());
            pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
            if ((int)pts.size() < n) return true;
            std::vector<int> sel(n);
            std::vector<int> pos(n);
            // iterate n-subsets of pts
            for (int i = 0; i < n; ++i) pos[i] = i;
            while (true) {
                for (int i = 0; i < n; ++i) sel[i] = pts[pos[i]];
                if (!edges.count(sel)) return false;
                int i = n - 1;
                while (i >= 0 && pos[i] == (int)pts.size() - n + i) --i;
                if (i < 0) break;
                ++pos[i];
                for (int j = i + 1; j < n; ++j) pos[j] = pos[j - 1] + 1;
            }
            return true;
        };
        const std::size_t K = detail::ipow((std::size_t)rep.U, rep.k);
        auto inj = detail::injections(n, rep.k);
        std::vector<int> kt(rep.k), kt2(rep.k), v(n);
        for (std::size_t sidx = 0; sidx < K; ++sidx) {
            detail::tuple_decode(sidx, rep.k, rep.U, kt);
            if (!clique(kt)) continue;
            for (auto& l : inj) {
                for (int i = 0; i < n; ++i) v[i] = kt[l[i]];
                std::size_t vidx = detail::tuple_encode(v, rep.U);
                if (!rep.in_unit(vidx)) continue;
                std::uint32_t lv = rep.label[vidx];
                for (int i = 0; i < n; ++i)
                    for (std::size_t a = 0; a < natoms; ++a) {
                        if (!at.T[i].related(lv, a)) continue;
                        bool hit = false;
                        for (int w = 0; w < rep.U && !hit; ++w) {
                            kt2 = kt;
                            kt2[l[i]] = w;
                            if (!clique(kt2)) continue;
                            std::vector<int> v2(n);
                            for (int q = 0; q < n; ++q) v2[q] = kt2[l[q]];
                            std::size_t v2idx = detail::tuple_encode(v2, rep.U);
                            if (rep.in_unit(v2idx) && rep.label[v2idx] == a) hit = true;
                        }
                        if (!hit)
                            return fail("clique-guarded witness missing at wide tuple " + std::to_string(sidx));
                    }
            }
        }
    }
    return out;
}

/// Completeness of a verified representation: the atom images must cover the
/// image of the top element (so arbitrary meets pass through).  For a total
/// labelling of the unit this holds by construction; it is still computed
/// literally.  Throws on an unverifiable representation.
inline bool check_complete(const FiniteAlgebra& A, const Representation& rep) {
    auto chk = verify_representation(A, rep);
    if (!chk.ok) throw std::invalid_argument("check_complete: representation invalid: " + chk.reason);
    std::vector<char> covered(rep.tuples(), 0);
    for (std::size_t a = 0; a < A.at->atoms; ++a)
        for (std::size_t idx = 0; idx < rep.tuples(); ++idx)
            if (rep.in_unit(idx) && rep.label[idx] == a) covered[idx] = 1;
    for (std::size_t idx = 0; idx < rep.tuples(); ++idx)
        if (rep.in_unit(idx) != (bool)covered[idx]) return false;
    return true;
}

struct SearchResult {
    std::optional<Representation> rep;
    int umax = 0;             ///< exhausted bound when no representation was found
    std::uint64_t nodes = 0;  ///< search tree nodes visited
};

namespace detail {

/// Backtracking core shared by the classical and relativized searches.  Tries
/// base sizes 1..umax; within a base size, tuples are labelled in
/// lexicographic order with atoms in increasing id (and, when allowed,
/// exclusion from the unit last), so the first solution is the
/// lexicographically least labelling.  Constraint propagation: the diagonal
/// pattern filters candidate atoms, cylindrifier accessibility must hold both
/// ways between already-labelled neighbours, transposed tuples force each
/// other's labels, and a count of unrealised atoms prunes branches that can no
/// longer be injective.  Witness conditions are checked on complete leaves and
/// every candidate is re-verified independently before being returned.
inline SearchResult representation_search(const FiniteAlgebra& A, int umax, bool relativized, int k,
                                          std::size_t budget) {
    const AtomStructure& at = *A.at;
    const int n = A.sig.n;
    const std::size_t natoms = at.atoms;

    if (A.sig.interior)
        for (auto& r : at.In)
            if (!r.is_identity())
                throw std::invalid_argument(
                    "representation search: only discrete interior operators are supported");
    auto axioms = check_axioms(A, CheckLevel::atom_level);
    for (auto& v : axioms.items)
        if (!v.pass)
            throw std::invalid_argument("representation search: axiom suite failed: " + v.axiom);

    SearchResult res;
    res.umax = umax;
    std::vector<int> t(n), t2(n);

    for (int U = 1; U <= umax; ++U) {
        const std::size_t T = ipow((std::size_t)U, n);
        if (natoms > T) continue; // injectivity needs a tuple per atom
        std::vector<std::uint32_t> label(T, Representation::outside);
        std::vector<char> assigned(T, 0);
        std::vector<std::uint32_t> uses(natoms, 0);
        std::size_t unrealised = natoms;

        // per-tuple atom candidates from the diagonal pattern
        std::vector<std::vector<std::uint32_t>> diag_ok(T);
        for (std::size_t idx = 0; idx < T; ++idx) {
            tuple_decode(idx, n, U, t);
            for (std::uint32_t a = 0; a < natoms; ++a) {
                bool ok = true;
                for (int i = 0; i < n && ok; ++i)
                    for (int j = i + 1; j < n && ok; ++j)
                        if ((t[i] == t[j]) != at.E[i][j].test(a)) ok = false;
                if (ok) diag_ok[idx].push_back(a);
            }
        }

        auto leaf_ok = [&]() -> bool {
            if (unrealised) return false;
            if (relativized) {
                std::vector<char> seen(U, 0);
                for (std::size_t idx = 0; idx < T; ++idx) {
                    if (label[idx] == Representation::outside) continue;
                    tuple_decode(idx, n, U, t);
                    for (int v : t) seen[v] = 1;
                }
                for (int v = 0; v < U; ++v)
                    if (!seen[v]) return false;
            }
            for (std::size_t idx = 0; idx < T; ++idx) {
                if (label[idx] == Representation::outside) continue;
                tuple_decode(idx, n, U, t);
                for (int i = 0; i < n; ++i) {
                    std::vector<char> found(natoms, 0);
                    for (int w = 0; w < U; ++w) {
                        t2 = t;
                        t2[i] = w;
                        std::uint32_t lt = label[tuple_encode(t2, U)];
                        if (lt != Representation::outside) found[lt] = 1;
                    }
                    for (std::size_t a = 0; a < natoms; ++a)
                        if (at.T[i].related(label[idx], a) && !found[a]) return false;
                }
            }
            return true;
        };

        auto admissible = [&](std::size_t idx, std::uint32_t a) -> bool {
            tuple_decode(idx, n, U, t);
            // transposition forcing against earlier tuples
            if (A.sig.transpositions)
                for (int i = 0; i < n; ++i)
                    for (int j = i + 1; j < n; ++j) {
                        t2 = t;
                        std::swap(t2[i], t2[j]);
                        std::size_t p = tuple_encode(t2, U);
                        if (p >= idx || !assigned[p]) continue;
                        std::uint32_t need = label[p] == Representation::outside
                                                 ? Representation::outside
                                                 : (std::uint32_t)at.subst(i, j, label[p]);
                        if (a != need) return false;
                    }
            if (a == Representation::outside) return true;
            // accessibility with earlier neighbours, both directions
            for (int i = 0; i < n; ++i)
                for (int w = 0; w < U; ++w) {
                    t2 = t;
                    t2[i] = w;
                    std::size_t p = tuple_encode(t2, U);
                    if (p >= idx || !assigned[p] || label[p] == Representation::outside) continue;
                    if (!at.T[i].related(a, label[p]) || !at.T[i].related(label[p], a)) return false;
                }
            return true;
        };

        std::optional<Representation> found;
        auto dfs = [&](auto&& self, std::size_t idx) -> bool {
            if (budget == 0) throw BudgetExceeded("representation search budget exhausted");
            --budget;
            ++res.nodes;
            if (unrealised > T - idx) return false; // not enough tuples left for injectivity
            if (idx == T) {
                if (!leaf_ok()) return false;
                Representation rep;
                rep.kind = relativized ? Representation::Kind::k_square : Representation::Kind::classical;
                rep.n = n;
                rep.U = U;
                rep.k = relativized ? k : 0;
                rep.label = label;
                auto chk = verify_representation(A, rep);
                if (!chk.ok)
                    throw std::logic_error("representation search produced an unverifiable candidate: " +
                                           chk.reason);
                found = std::move(rep);
                return true;
            }
            for (std::uint32_t a : diag_ok[idx]) {
                if (!admissible(idx, a)) continue;
                assigned[idx] = 1;
                label[idx] = a;
                if (uses[a]++ == 0) --unrealised;
                if (self(self, idx + 1)) return true;
                if (--uses[a] == 0) ++unrealised;
                label[idx] = Representation::outside;
                assigned[idx] = 0;
            }
            if (relativized && admissible(idx, Representation::outside)) {
                assigned[idx] = 1;
                if (self(self, idx + 1)) return true;
                assigned[idx] = 0;
            }
            return false;
        };
        if (dfs(dfs, 0)) {
            res.rep = std::move(found);
            return res;
        }
    }
    return res;
}

} // namespace detail

/// Bounded search for a classical set representation over bases of size
/// 1..umax.  Requires a finite atomic algebra passing its axiom suite; only
/// discrete (identity) interior operators are searchable.  Absence of a
/// result is an honest "exhausted up to umax", never a non-representability
/// claim.
inline SearchResult search_representation(const FiniteAlgebra& A, int umax,
                                          std::size_t budget = games_default_budget()) {
    return detail::representation_search(A, umax, false, 0, budget);
}

/// Bounded search for a relativized representation whose cylindrifier
/// witnesses are demanded inside width-k clique-guarded parts only.  Full
/// labellings are tried first, so whenever a classical representation exists
/// at some base size the relativized search returns it.
inline SearchResult search_k_square(const FiniteAlgebra& A, int k, int umax,
                                    std::size_t budget = games_default_budget()) {
    if (k <= A.sig.n) throw std::invalid_argument("clique width must exceed the dimension");
    return detail::representation_search(A, umax, true, k, budget);
}

/// Hypergraph induced on the base by a labelling: an m-set of base points is a
/// hyperedge when some unit tuple's range contains all of them.
struct GaifmanHypergraph {
    int base = 0;
    int m = 0;
    std::set<std::vector<int>> edges; ///< sorted m-element subsets

    /// every m-subset of `C` is a hyperedge (sets smaller than m vacuously so)
    bool is_clique(std::vector<int> C) const {
        std::sort(C.begin(), C.end());
        C.erase(std::unique(C.begin(), C.end()), C.end());
        if ((int)C.size() < m) return true;
        std::vector<int> pos(m), sel(m);
        for (int i = 0; i < m; ++i) pos[i] = i;
        while (true) {
            for (int i = 0; i < m; ++i) sel[i] = C[pos[i]];
            if (!edges.count(sel)) return false;
            int i = m - 1;
            while (i >= 0 && pos[i] == (int)C.size() - m + i) --i;
            if (i < 0) return true;
            ++pos[i];
            for (int j = i + 1; j < m; ++j) pos[j] = pos[j - 1] + 1;
        }
    }
};

inline GaifmanHypergraph gaifman(const Representation& rep, int m) {
    if (m < 1 || m > rep.n) throw std::invalid_argument("hyperedge arity must lie in 1..n");
    GaifmanHypergraph g;
    g.base = rep.U;
    g.m = m;
    std::vector<int> t;
    for (std::size_t idx = 0; idx < rep.tuples(); ++idx) {
        if (!rep.in_unit(idx)) continue;
        detail::tuple_decode(idx, rep.n, rep.U, t);
        std::vector<int> pts(t);
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        if ((int)pts.size() < m) continue;
        std::vector<int> pos(m), sel(m);
        for (int i = 0; i < m; ++i) pos[i] = i;
        while (true) {
            for (int i = 0; i < m; ++i) sel[i] = pts[pos[i]];
            g.edges.insert(sel);
            int i = m - 1;
            while (i >= 0 && pos[i] == (int)pts.size() - m + i) --i;
            if (i < 0) break;
            ++pos[i];
            for (int j = i + 1; j < m; ++j) pos[j] = pos[j - 1] + 1;
        }
    }
    return g;
}

/// The width-k clique set: all k-tuples over the base whose range is a clique.
inline std::vector<std::vector<int>> clique_tuples(const GaifmanHypergraph& g, int k) {
    if (g.m > k) throw std::invalid_argument("clique width below the hyperedge arity");
    std::vector<std::vector<int>> out;
    std::vector<int> t;
    const std::size_t K = detail::ipow((std::size_t)g.base, k);
    for (std::size_t idx = 0; idx < K; ++idx) {
        detail::tuple_decode(idx, k, g.base, t);
        if (g.is_clique(t)) out.push_back(t);
    }
    return out;
}

struct FlatReport {
    bool pass = true;
    std::string fragment; ///< which formula class was quantified over
    std::string witness;  ///< first commutation failure, empty when passing
};

/// Commutation of clique-guarded quantifiers over a k-square representation:
/// for each formula in the checked fragment and all distinct i,j < k, the
/// guarded values of (exists x_i)(exists x_j) phi and its swap must agree on
/// every width-k clique tuple.  The fragment covers the atomic formulas
/// a(x_{l(0)},...,x_{l(n-1)}) and their single-quantifier compounds; full
/// quantification over all k-variable formulas is infinite and out of reach.
inline FlatReport check_k_flat(const FiniteAlgebra& A, const Representation& rep) {
    if (rep.kind != Representation::Kind::k_square)
        throw std::invalid_argument("flatness check needs a relativized representation");
    FlatReport out;
    out.fragment = "atomic formulas and single-quantifier compounds";
    const int n = rep.n, k = rep.k;
    auto g = gaifman(rep, n);
    auto cliques = clique_tuples(g, k);
    std::map<std::vector<int>, std::size_t> pos;
    for (std::size_t c = 0; c < cliques.size(); ++c) pos[cliques[c]] = c;

    // guarded existential on a truth vector over the clique tuples
    auto gquant = [&](int axis, const std::vector<char>& v) {
        std::vector<char> r(cliques.size(), 0);
        for (std::size_t c = 0; c < cliques.size(); ++c) {
            std::vector<int> t = cliques[c];
            for (int w = 0; w < rep.U && !r[c]; ++w) {
                t[axis] = w;
                auto it = pos.find(t);
                if (it != pos.end() && v[it->second]) r[c] = 1;
            }
        }
        return r;
    };

    std::vector<std::vector<char>> formulas;
    std::vector<std::string> names;
    auto inj = detail::injections(n, k);
    for (std::size_t a = 0; a < A.at->atoms; ++a)
        for (std::size_t li = 0; li < inj.size(); ++li) {
            std::vector<char> v(cliques.size(), 0);
            std::vector<int> vt(n);
            for (std::size_t c = 0; c < cliques.size(); ++c) {
                for (int q = 0; q < n; ++q) vt[q] = cliques[c][inj[li][q]];
                std::size_t idx = detail::tuple_encode(vt, rep.U);
                if (rep.in_unit(idx) && rep.label[idx] == a) v[c] = 1;
            }
            formulas.push_back(v);
            names.push_back("atom " + std::to_string(a) + " / injection " + std::to_string(li));
        }
    std::size_t atomic = formulas.size();
    for (std::size_t f = 0; f < atomic; ++f)
        for (int q = 0; q < k; ++q) {
            formulas.push_back(gquant(q, formulas[f]));
            names.push_back("exists x" + std::to_string(q) + " of (" + names[f] + ")");
        }

    for (std::size_t f = 0; f < formulas.size(); ++f)
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                auto ij = gquant(i, gquant(j, formulas[f]));
                auto ji = gquant(j, gquant(i, formulas[f]));
                if (ij != ji) {
                    out.pass = false;
                    out.witness = "quantifiers x" + std::to_string(i) + ", x" + std::to_string(j) +
                                  " fail to commute on " + names[f];
                    return out;
                }
            }
    return out;
}

/// Machine-checked record that the demanding player wins the m-node reuse
/// game on an atom structure.  The game result is what is verified; the claim
/// field records the semantic consequence (no embedding into a complete neat
/// reduct of an m-dimensional algebra, no complete m-flat representation)
/// drawn from the theory that motivates the game.  The checksum binds the
/// fields so a record cannot be edited without detection.
struct NonmembershipCertificate {
    bool issued = false;
    int n = 0;
    int m = 0;
    int rounds = 0;     ///< the win lands by this round
    std::string game;   ///< solver or verifier that produced the win
    std::string claim;
    std::string reason; ///< why no certificate was issued
    std::string checksum;
};

namespace detail {

inline std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

inline NonmembershipCertificate issue_certificate(int n, int m, int rounds, std::string game) {
    NonmembershipCertificate c;
    c.issued = true;
    c.n = n;
    c.m = m;
    c.rounds = rounds;
    c.game = std::move(game);
    c.claim = "the demanding player wins the " + std::to_string(m) +
              "-node reuse game on this atom structure within " + std::to_string(rounds) +
              " rounds; hence the algebra lies outside every complete neat reduct of a " +
              std::to_string(m) + "-dimensional algebra and has no complete " + std::to_string(m) +
              "-flat representation";
    c.checksum = fnv1a_hex(std::to_string(n) + "|" + std::to_string(m) + "|" + std::to_string(rounds) +
                           "|" + c.game + "|" + c.claim);
    return c;
}

inline NonmembershipCertificate no_certificate(int n, int m, std::string why) {
    NonmembershipCertificate c;
    c.n = n;
    c.m = m;
    c.reason = std::move(why);
    return c;
}

} // namespace detail

/// Certificate from the exhaustive network-game solver.
inline NonmembershipCertificate nonmembership_certificate(const AtomStructure& at, int m, int round_bound,
                                                          std::size_t budget = games_default_budget()) {
    GameConfig cfg{GameConfig::Kind::Fm, m, round_bound, 0};
    auto res = solve(cfg, at, budget);
    if (!res.conclusive)
        return detail::no_certificate(at.sig.n, m, "network solver inconclusive within budget");
    if (res.winner != Player::forall)
        return detail::no_certificate(at.sig.n, m, "responder survives every play within " +
                                                       std::to_string(round_bound) + " rounds");
    return detail::issue_certificate(at.sig.n, m, res.rounds,
                                     "exhaustive " + std::to_string(m) + "-node reuse network game, " +
                                         std::to_string(round_bound) + "-round horizon");
}

/// Certificate from the coloured-graph solver over an enumerated structure.
inline NonmembershipCertificate nonmembership_certificate(const RainbowStructure& rs, int m, int round_bound,
                                                          const std::vector<std::uint64_t>* opening_hints = nullptr,
                                                          bool responder_full_yellow = false,
                                                          std::size_t budget = games_default_budget()) {
    GameConfig cfg{GameConfig::Kind::Fm, m, round_bound, 0};
    auto res = solve(cfg, rs, opening_hints, responder_full_yellow, budget);
    if (!res.conclusive)
        return detail::no_certificate(rs.sig.n, m, "graph solver inconclusive within budget");
    if (res.winner != Player::forall)
        return detail::no_certificate(rs.sig.n, m, "responder survives every play within " +
                                                       std::to_string(round_bound) + " rounds");
    return detail::issue_certificate(rs.sig.n, m, res.rounds,
                                     "exhaustive " + std::to_string(m) + "-node reuse graph game, " +
                                         std::to_string(round_bound) + "-round horizon");
}

/// Certificate from an independently verified scripted demand strategy.
inline NonmembershipCertificate nonmembership_certificate(const GameConfig& cfg, const RainbowSignature& sig,
                                                          const ForallScript& script, int round_bound,
                                                          std::size_t budget = games_default_budget(),
                                                          bool responder_full_yellow = true) {
    if (cfg.kind != GameConfig::Kind::Fm)
        throw std::invalid_argument("nonmembership certificates are about the reuse game");
    auto ver = verify_forall_strategy(cfg, sig, script, round_bound, budget, responder_full_yellow);
    if (!ver.conclusive)
        return detail::no_certificate(sig.n, cfg.m, "strategy verifier inconclusive within budget");
    if (!ver.certified)
        return detail::no_certificate(sig.n, cfg.m, "script not certified: " + ver.failure);
    return detail::issue_certificate(sig.n, cfg.m, ver.rounds,
                                     "verified scripted strategy in the " + std::to_string(cfg.m) +
                                         "-node reuse graph game");
}

// ---------------------------------------------------------------------------
// Componentwise complete representability of product algebras.
// ---------------------------------------------------------------------------

struct ComponentwiseVerdict {
    bool complete = true;
    int failing = -1;   ///< first failing component, -1 when all pass
    std::string reason; ///< why that component failed
};

/// A product algebra is completely representable exactly when every component
/// is.  Each component is first stripped to its cylindric core (interior and
/// tense operators dropped), a representation is searched up to the base
/// bound, and completeness is certified by the atom-cover test.  Components
/// with no representation within the bound count as failures, so a negative
/// verdict is only as strong as `umax`.
inline ComponentwiseVerdict componentwise_complete(const std::vector<FiniteAlgebra>& components,
                                                   int umax,
                                                   std::size_t budget = games_default_budget()) {
    if (components.empty())
        throw std::invalid_argument("componentwise check needs a product presentation");
    ComponentwiseVerdict out;
    for (std::size_t t = 0; t < components.size(); ++t) {
        const FiniteAlgebra& comp = components[t];
        FiniteAlgebra core =
            (comp.sig.interior || comp.sig.tense || comp.sig.temporal) ? ca_reduct(comp) : comp;
        auto fail = [&](std::string why) {
            out.complete = false;
            out.failing = (int)t;
            out.reason = std::move(why);
            return out;
        };
        SearchResult found = search_representation(core, umax, budget);
        if (!found.rep)
            return fail("no representation with base size up to " + std::to_string(found.umax));
        if (!check_complete(core, *found.rep)) return fail("representation misses an atom cover");
    }
    return out;
}

} // namespace cyl
