#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "algebra.hpp"

namespace cyl {

using BigInt = boost::multiprecision::cpp_int;

/// kappa(x,0) = 0, kappa(x,y+1) = 1 + x*kappa(x,y)
inline BigInt kappa(const BigInt& x, unsigned long y) {
    BigInt v = 0;
    for (unsigned long t = 0; t < y; ++t) v = 1 + x * v;
    return v;
}

/// psi(n) = kappa(5(n-1), 5(n-1)) + 1; an override replaces the astronomic value
/// with a workable size parameter (all constructions below take it explicitly).
inline BigInt psi(int n, std::optional<BigInt> override_value = std::nullopt) {
    if (override_value) return *override_value;
    unsigned long a = 5ul * (unsigned long)(n - 1);
    return kappa(BigInt(a), a) + 1;
}

/// Binary atom over the parameter n: Id, or a^k(i,j) with i < n-1, j < 5, k < psi_hat.
/// Encoded as 0 for Id and 1 + (i*5 + j)*psi_hat + k otherwise.
struct BinAtom {
    bool id = true;
    int i = 0, j = 0, k = 0;
};

struct BinSpace {
    int n;       // colour parameter (not the algebra dimension)
    int psi_hat; // size parameter standing in for psi(n)

    std::uint32_t count() const { return 1 + (std::uint32_t)(n - 1) * 5u * (std::uint32_t)psi_hat; }
    std::uint32_t encode(const BinAtom& a) const {
        if (a.id) return 0;
        return 1 + ((std::uint32_t)a.i * 5u + (std::uint32_t)a.j) * (std::uint32_t)psi_hat + (std::uint32_t)a.k;
    }
    BinAtom decode(std::uint32_t c) const {
        if (c == 0) return {};
        c -= 1;
        BinAtom a;
        a.id = false;
        a.k = (int)(c % (std::uint32_t)psi_hat);
        c /= (std::uint32_t)psi_hat;
        a.j = (int)(c % 5u);
        a.i = (int)(c / 5u);
        return a;
    }
    std::string name(std::uint32_t c) const {
        if (c == 0) return "Id";
        BinAtom a = decode(c);
        return "a^" + std::to_string(a.k) + "(" + std::to_string(a.i) + "," + std::to_string(a.j) + ")";
    }

    /// Forbidden triples, read as unordered triangle patterns:
    ///  - a triangle containing Id whose other two labels differ;
    ///  - three labels a^k(i,j), a^k'(i,j), a^k*(i,j') with a common i, two of them
    ///    sharing j, and the remaining one carrying j' <= j.
    bool forbidden(std::uint32_t t1, std::uint32_t t2, std::uint32_t t3) const {
        std::uint32_t t[3] = {t1, t2, t3};
        for (int p = 0; p < 3; ++p)
            if (t[p] == 0) {
                if (t[(p + 1) % 3] != t[(p + 2) % 3]) return true;
            }
        if (t1 == 0 || t2 == 0 || t3 == 0) return false;
        BinAtom a[3] = {decode(t1), decode(t2), decode(t3)};
        if (a[0].i != a[1].i || a[1].i != a[2].i) return false;
        for (int p = 0; p < 3; ++p) { // p plays the a^k*(i,j') role
            int j1 = a[(p + 1) % 3].j, j2 = a[(p + 2) % 3].j;
            if (j1 == j2 && a[p].j <= j1) return true;
        }
        return false;
    }
};

inline bool is_forbidden_bin(int n, int psi_hat, std::uint32_t t1, std::uint32_t t2, std::uint32_t t3) {
    return BinSpace{n, psi_hat}.forbidden(t1, t2, t3);
}

/// Basic matrix on m nodes: symmetric, Id on the diagonal, stored as the strict
/// upper triangle in (y, x)-major order, i.e. edges (0,1),(0,2),(1,2),(0,3),...
using BasicMatrix = std::vector<std::uint32_t>;

inline std::size_t edge_index(int x, int y) { // requires x < y
    return (std::size_t)y * (y - 1) / 2 + (std::size_t)x;
}
inline std::uint32_t matrix_entry(const BasicMatrix& f, int x, int y) {
    if (x == y) return 0; // Id
    if (x > y) std::swap(x, y);
    return f[edge_index(x, y)];
}

/// All basic matrices on m nodes over Bin(n, psi_hat), in lexicographic order of
/// their edge vectors, enumerated by backtracking with triangle pruning.
inline std::vector<BasicMatrix> enumerate_basic_matrices(int m, const BinSpace& bin,
                                                         std::size_t budget = 1u << 24) {
    std::size_t edges = (std::size_t)m * (m - 1) / 2;
    std::vector<std::pair<int, int>> order; // (x, y), x < y, y-major
    for (int y = 1; y < m; ++y)
        for (int x = 0; x < y; ++x) order.emplace_back(x, y);
    std::vector<BasicMatrix> out;
    BasicMatrix f(edges, 0);
    std::uint32_t B = bin.count();
    // depth-first over edge assignments; a triangle is validated when its last
    // edge in the order (the one with the larger endpoints) is placed
    std::vector<std::size_t> stack{0};
    std::function<void(std::size_t)> rec = [&](std::size_t e) {
        if (e == edges) {
            out.push_back(f);
            if (out.size() > budget) throw std::runtime_error("basic-matrix enumeration exceeds budget");
            return;
        }
        auto [x, y] = order[e];
        for (std::uint32_t v = 0; v < B; ++v) {
            f[e] = v;
            bool ok = true;
            for (int z = 0; z < x && ok; ++z)
                if (bin.forbidden(matrix_entry(f, z, x), matrix_entry(f, z, y), v)) ok = false;
            // triangles through z in (x,y) or z > y are completed by later edges
            if (ok) rec(e + 1);
        }
        f[e] = 0;
    };
    rec(0);
    return out;
}

/// The finite algebra on the basic matrices F(m, n): diagonals d_xy = {f : f(x,y) = Id},
/// cylindrifier classes f =_x g (agreement off node x), transpositions f [x,y].
struct CmnAlgebra {
    int m = 0;
    BinSpace bin;
    std::vector<BasicMatrix> matrices; // sorted, index = atom id
    FiniteAlgebra alg;

    std::size_t atom_of(const BasicMatrix& f) const {
        auto it = std::lower_bound(matrices.begin(), matrices.end(), f);
        if (it == matrices.end() || *it != f) throw std::runtime_error("matrix is not a basic matrix");
        return (std::size_t)(it - matrices.begin());
    }
};

inline BasicMatrix apply_tau(const BasicMatrix& f, int m, const std::vector<int>& tau) {
    BasicMatrix g((std::size_t)m * (m - 1) / 2);
    for (int y = 1; y < m; ++y)
        for (int x = 0; x < y; ++x) g[edge_index(x, y)] = matrix_entry(f, tau[x], tau[y]);
    return g;
}

inline CmnAlgebra build_Cmn(int m, int n, int psi_hat, std::size_t budget = 1u << 24) {
    if (m < 3) throw std::invalid_argument("build_Cmn requires m >= 3");
    if (n < 2 || psi_hat < 1) throw std::invalid_argument("build_Cmn requires n >= 2, psi_hat >= 1");
    CmnAlgebra c;
    c.m = m;
    c.bin = BinSpace{n, psi_hat};
    c.matrices = enumerate_basic_matrices(m, c.bin, budget);
    std::size_t k = c.matrices.size();

    AtomStructure at;
    at.sig = pea_signature(m);
    at.atoms = k;
    at.E.assign(m, std::vector<Bits>(m, Bits(k)));
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            for (std::size_t a = 0; a < k; ++a)
                if (matrix_entry(c.matrices[a], x, y) == 0) at.E[x][y].set(a);
    for (int x = 0; x < m; ++x) {
        // class key: the matrix with row/column x blanked out
        std::map<BasicMatrix, std::uint32_t> key;
        std::vector<std::uint32_t> cls(k);
        for (std::size_t a = 0; a < k; ++a) {
            BasicMatrix key_m = c.matrices[a];
            for (int y = 0; y < m; ++y)
                if (y != x) key_m[edge_index(std::min(x, y), std::max(x, y))] = 0;
            auto [it, fresh] = key.emplace(std::move(key_m), (std::uint32_t)key.size());
            (void)fresh;
            cls[a] = it->second;
        }
        at.T.push_back(Rel::from_classes(std::move(cls), (std::uint32_t)key.size()));
    }
    at.S.assign(m, std::vector<std::vector<std::uint32_t>>(m));
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) {
            if (x == y) continue;
            std::vector<int> tau(m);
            std::iota(tau.begin(), tau.end(), 0);
            std::swap(tau[x], tau[y]);
            auto& map = at.S[x][y];
            map.resize(k);
            for (std::size_t a = 0; a < k; ++a)
                map[a] = (std::uint32_t)c.atom_of(apply_tau(c.matrices[a], m, tau));
        }
    c.alg = complex_algebra(std::move(at));
    return c;
}

/// Polyadic operation for an arbitrary tau: m -> m: s_tau(X) = {f : f tau in X}.
inline Bits subst_tau(const CmnAlgebra& c, const std::vector<int>& tau, const Bits& x) {
    if ((int)tau.size() != c.m) throw std::invalid_argument("tau arity mismatch");
    Bits r(c.matrices.size());
    for (std::size_t a = 0; a < c.matrices.size(); ++a)
        if (x.test(c.atom_of(apply_tau(c.matrices[a], c.m, tau)))) r.set(a);
    return r;
}

/// Partition of atoms into classes of the join of T_x for x in [m, n): two atoms
/// are linked iff they can be connected by cylindrifications above m. Elements
/// with dimension set inside m are exactly the unions of these classes.
inline Rel high_dimension_join(const AtomStructure& at, int m) {
    std::size_t k = at.atoms;
    std::vector<std::uint32_t> parent(k);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    auto unite = [&](std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); };
    for (int x = m; x < at.sig.n; ++x) {
        const Rel& t = at.T[x];
        if (t.kind() == Rel::Kind::partition) {
            std::vector<std::int64_t> rep(t.nclasses(), -1);
            for (std::uint32_t a = 0; a < k; ++a) {
                auto c = t.cls(a);
                if (rep[c] < 0) rep[c] = a;
                else unite(a, (std::uint32_t)rep[c]);
            }
        } else {
            for (auto [a, b] : t.to_pairs()) unite(a, b);
        }
    }
    std::map<std::uint32_t, std::uint32_t> remap;
    std::vector<std::uint32_t> cls(k);
    for (std::uint32_t a = 0; a < k; ++a) {
        auto [it, fresh] = remap.emplace(find(a), (std::uint32_t)remap.size());
        (void)fresh;
        cls[a] = it->second;
    }
    return Rel::from_classes(std::move(cls), (std::uint32_t)remap.size());
}

/// Neat m-reduct: elements whose dimension set lies inside m, with the operations
/// indexed below m. The atom structure is shared with the input; only the
/// signature dimension shrinks and the universe is enumerated explicitly.
inline FiniteAlgebra neat_reduct(const FiniteAlgebra& b, int m, std::size_t budget = 1u << 20) {
    if (m <= 0 || m >= b.sig.n) throw std::invalid_argument("neat_reduct requires 0 < m < dim");
    Rel join = high_dimension_join(*b.at, m);
    std::size_t nc = join.nclasses();
    std::vector<Bits> classes(nc, Bits(b.atoms()));
    for (std::size_t a = 0; a < b.atoms(); ++a) classes[join.cls(a)].set(a);
    if (nc >= 63 || (1ull << nc) > budget)
        throw std::runtime_error("neat reduct universe exceeds budget");
    std::vector<Bits> universe;
    for (std::uint64_t mask = 0; mask < (1ull << nc); ++mask) {
        Bits e(b.atoms());
        for (std::size_t c = 0; c < nc; ++c)
            if ((mask >> c) & 1) e |= classes[c];
        if (b.in_universe(e)) universe.push_back(e);
    }
    std::sort(universe.begin(), universe.end());
    FiniteAlgebra r = b;
    r.sig.n = m;
    r.universe = std::move(universe);
    return r;
}

/// Certificate for C(m,n) being the neat m-reduct of C(m',n) via the inverse of
/// the restriction map g -> g restricted to m x m.
struct NeatIsoCertificate {
    bool ok = true;
    std::string failure;
    std::size_t atoms_small = 0, atoms_big = 0, blocks = 0;
};

inline NeatIsoCertificate verify_neat_iso(int m, int mprime, int n, int psi_hat,
                                          std::size_t budget = 1u << 24) {
    if (!(3 <= m && m <= mprime)) throw std::invalid_argument("verify_neat_iso requires 3 <= m <= m'");
    NeatIsoCertificate cert;
    CmnAlgebra small = build_Cmn(m, n, psi_hat, budget);
    CmnAlgebra big = build_Cmn(mprime, n, psi_hat, budget);
    cert.atoms_small = small.matrices.size();
    cert.atoms_big = big.matrices.size();
    auto fail = [&](std::string why) {
        cert.ok = false;
        cert.failure = std::move(why);
        return cert;
    };

    // restriction p : F(m') -> F(m)
    std::size_t K = big.matrices.size();
    std::vector<std::uint32_t> p(K);
    std::vector<char> hit(small.matrices.size(), 0);
    for (std::size_t g = 0; g < K; ++g) {
        BasicMatrix r((std::size_t)m * (m - 1) / 2, 0);
        for (int y = 1; y < m; ++y)
            for (int x = 0; x < y; ++x) r[edge_index(x, y)] = matrix_entry(big.matrices[g], x, y);
        p[g] = (std::uint32_t)small.atom_of(r); // throws if the restriction were not basic
        hit[p[g]] = 1;
    }
    for (std::size_t f = 0; f < small.matrices.size(); ++f)
        if (!hit[f]) return fail("restriction map is not onto F(m): matrix " + std::to_string(f) + " has empty block");

    // blocks of p must be exactly the classes of the join of T_x, x >= m
    Rel join = high_dimension_join(*big.alg.at, m);
    cert.blocks = small.matrices.size();
    if (join.nclasses() != (std::uint32_t)small.matrices.size())
        return fail("high-dimension join has " + std::to_string(join.nclasses()) + " classes, expected " +
                    std::to_string(small.matrices.size()));
    {
        std::map<std::uint32_t, std::uint32_t> cls_to_f;
        for (std::size_t g = 0; g < K; ++g) {
            auto [it, fresh] = cls_to_f.emplace(join.cls(g), p[g]);
            if (!fresh && it->second != p[g])
                return fail("a high-dimension class crosses two restriction blocks at atom " + std::to_string(g));
        }
    }

    const AtomStructure& AS = *small.alg.at;
    const AtomStructure& AB = *big.alg.at;
    // diagonals below m correspond exactly
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (std::size_t g = 0; g < K; ++g)
                if (AB.E[i][j].test(g) != AS.E[i][j].test(p[g]))
                    return fail("diagonal d_" + std::to_string(i) + std::to_string(j) + " not preserved at atom " +
                                std::to_string(g));
    // transpositions below m commute with restriction
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            for (std::size_t g = 0; g < K; ++g)
                if (p[AB.S[i][j][g]] != AS.S[i][j][p[g]])
                    return fail("transposition [" + std::to_string(i) + "," + std::to_string(j) +
                                "] not preserved at atom " + std::to_string(g));
        }
    // bounded-morphism conditions for the cylindrifiers below m:
    // forward: g ='_x h implies p(g) =_x p(h); back: every =_x move of p(g) lifts
    for (int x = 0; x < m; ++x) {
        const Rel& tb = AB.T[x];
        const Rel& ts = AS.T[x];
        std::vector<std::int64_t> class_val(tb.nclasses(), -1);
        for (std::size_t g = 0; g < K; ++g) {
            auto c = tb.cls(g);
            std::int64_t v = (std::int64_t)ts.cls(p[g]);
            if (class_val[c] < 0) class_val[c] = v;
            else if (class_val[c] != v)
                return fail("restriction breaks a c_" + std::to_string(x) + " class at atom " + std::to_string(g));
        }
        // back condition: for g and f' =_x p(g), find h ='_x g with p(h) = f'
        std::vector<std::vector<std::uint32_t>> small_class(ts.nclasses());
        for (std::size_t f = 0; f < small.matrices.size(); ++f) small_class[ts.cls(f)].push_back((std::uint32_t)f);
        for (std::size_t g = 0; g < K; ++g) {
            for (auto fp : small_class[ts.cls(p[g])]) {
                // candidate h: row x copied from f' below m, searched above m
                BasicMatrix h = big.matrices[g];
                for (int y = 0; y < m; ++y)
                    if (y != x)
                        h[edge_index(std::min(x, y), std::max(x, y))] = matrix_entry(small.matrices[fp], x, y);
                std::vector<int> frees;
                for (int y = m; y < mprime; ++y) frees.push_back(y);
                std::uint32_t B = big.bin.count();
                bool found = false;
                std::function<void(std::size_t)> search = [&](std::size_t d) {
                    if (found) return;
                    if (d == frees.size()) {
                        for (int u = 0; u < mprime && !found; ++u)
                            for (int v = u + 1; v < mprime; ++v)
                                if (u != x && v != x &&
                                    big.bin.forbidden(matrix_entry(h, x, u), matrix_entry(h, u, v),
                                                      matrix_entry(h, x, v)))
                                    return;
                        found = true;
                        return;
                    }
                    int y = frees[d];
                    for (std::uint32_t val = 0; val < B && !found; ++val) {
                        h[edge_index(std::min(x, y), std::max(x, y))] = val;
                        search(d + 1);
                    }
                };
                search(0);
                if (!found)
                    return fail("cylindrifier c_" + std::to_string(x) + " move at atom " + std::to_string(g) +
                                " towards matrix " + std::to_string(fp) + " does not lift");
            }
        }
    }
    return cert;
}

/// Relativization to x: atoms inside x, accessibility relations restricted.
/// For the additive operators this realizes o^Rl(a) = o(a) . x exactly.
/// Transpositions are kept only when x is closed under them (otherwise the
/// relativized substitution is not induced by an atom bijection).
inline FiniteAlgebra relativize(const FiniteAlgebra& alg, const Bits& x) {
    const AtomStructure& at = *alg.at;
    std::vector<std::uint32_t> keep, back(at.atoms, 0);
    x.for_each([&](std::size_t a) {
        back[a] = (std::uint32_t)keep.size();
        keep.push_back((std::uint32_t)a);
    });
    std::size_t k = keep.size();

    AtomStructure r;
    r.sig = at.sig;
    r.atoms = k;
    r.E.assign(at.sig.n, std::vector<Bits>(at.sig.n, Bits(k)));
    for (int i = 0; i < at.sig.n; ++i)
        for (int j = 0; j < at.sig.n; ++j)
            for (std::size_t a = 0; a < k; ++a)
                if (at.E[i][j].test(keep[a])) r.E[i][j].set(a);
    auto restrict_rel = [&](const Rel& t) {
        if (t.kind() == Rel::Kind::identity) return Rel::identity(k);
        if (t.kind() == Rel::Kind::partition) {
            std::map<std::uint32_t, std::uint32_t> remap;
            std::vector<std::uint32_t> cls(k);
            for (std::size_t a = 0; a < k; ++a) {
                auto [it, fresh] = remap.emplace(t.cls(keep[a]), (std::uint32_t)remap.size());
                (void)fresh;
                cls[a] = it->second;
            }
            return Rel::from_classes(std::move(cls), (std::uint32_t)remap.size());
        }
        std::vector<std::pair<std::uint32_t, std::uint32_t>> ps;
        for (std::size_t a = 0; a < k; ++a)
            for (auto b : t.neighbours(keep[a]))
                if (x.test(b)) ps.emplace_back((std::uint32_t)a, back[b]);
        return Rel::from_pairs(k, std::move(ps));
    };
    for (int i = 0; i < at.sig.n; ++i) r.T.push_back(restrict_rel(at.T[i]));
    if (at.sig.transpositions) {
        bool closed = true;
        for (int i = 0; i < at.sig.n && closed; ++i)
            for (int j = 0; j < at.sig.n && closed; ++j) {
                if (i == j) continue;
                for (std::size_t a = 0; a < k; ++a)
                    if (!x.test(at.S[i][j][keep[a]])) {
                        closed = false;
                        break;
                    }
            }
        if (closed) {
            r.S.assign(at.sig.n, std::vector<std::vector<std::uint32_t>>(at.sig.n));
            for (int i = 0; i < at.sig.n; ++i)
                for (int j = 0; j < at.sig.n; ++j) {
                    if (i == j) continue;
                    r.S[i][j].resize(k);
                    for (std::size_t a = 0; a < k; ++a) r.S[i][j][a] = back[at.S[i][j][keep[a]]];
                }
        } else {
            r.sig.transpositions = false;
        }
    }
    if (at.sig.interior)
        for (int i = 0; i < at.sig.n; ++i) r.In.push_back(restrict_rel(at.In[i]));
    return complex_algebra(std::move(r));
}

/// Dimension reduct Rd_m: forget the operators with indices >= m. Elements are
/// unchanged; only the signature and relation tables shrink.
inline FiniteAlgebra reduct_dim(const FiniteAlgebra& alg, int m) {
    if (m <= 0 || m > alg.sig.n) throw std::invalid_argument("reduct_dim requires 0 < m <= dim");
    AtomStructure at = *alg.at;
    at.sig.n = m;
    at.E.resize(m);
    for (auto& row : at.E) row.resize(m);
    at.T.resize(m);
    if (at.sig.transpositions) {
        at.S.resize(m);
        for (auto& row : at.S) row.resize(m);
    }
    if (at.sig.interior) at.In.resize(m);
    FiniteAlgebra r = alg;
    r.sig.n = m;
    r.at = std::make_shared<const AtomStructure>(std::move(at));
    return r;
}

/// Feature reduct: forget transpositions / interior / tense operators.
inline FiniteAlgebra reduct_features(const FiniteAlgebra& alg, bool drop_transpositions,
                                     bool drop_interior, bool drop_tense) {
    AtomStructure at = *alg.at;
    if (drop_transpositions) {
        at.sig.transpositions = false;
        at.S.clear();
    }
    if (drop_interior) {
        at.sig.interior = false;
        at.In.clear();
    }
    if (drop_tense) at.sig.tense = at.sig.temporal = false;
    FiniteAlgebra r = alg;
    r.sig = at.sig;
    r.at = std::make_shared<const AtomStructure>(std::move(at));
    return r;
}

} // namespace cyl
