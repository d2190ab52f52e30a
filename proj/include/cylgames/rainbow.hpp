#pragma once

// Rainbow coloured graphs and their finite atom structures.
//
// Edge colours are greens (ranked g_i and tinted g_0^i), whites w_i and reds
// r_{jk} (optionally carrying a copy superscript r^t_{jk}); shades of yellow
// y_S label (n-1)-tuples of distinct nodes.  Graph validity = completeness,
// no forbidden triangle, the yellow-labelling rule and the cone-tint rule.
//
// Atoms are equivalence classes of surjections a : n -> M into valid coloured
// graphs; two surjections are identified when they induce the same index-level
// data (which indices coincide, the edge colour between every pair of distinct
// indices, and the hyperlabels whenever defined).  We therefore represent an
// atom directly by that index-level data: a set partition of the indices, an
// edge colour per pair of distinct blocks, and a yellow label per
// (n-1)-subset of blocks.  Yellow labels are kept as tint *sets*, so they are
// invariant under reordering a tuple; this is what makes the enumeration
// finite at desk scale.
//
// The shade rho is representable as a Colour but lies outside every
// signature: no forbidden pattern mentions it and validity checking never
// produces it; only game-strategy code may label an edge with it.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "algebra.hpp"

namespace cyl {

enum class RedMode { plain, superscripted, ordered };

/// The colour alphabet of a rainbow construction.
struct RainbowSignature {
    int n = 3;                    // algebra dimension; hyperedges have arity n-1
    std::vector<int> green_zero;  // ordered tint set A for g_0^i (entries may be negative)
    std::vector<int> red_index;   // ordered index set B; reds are r_{ij} for i < j in B
                                  // (ordered regime: all pairs, equal indices included)
    int copies = 1;               // superscript count L (superscripted reds only)
    RedMode red_mode = RedMode::plain;
    bool order_forbidden = false; // extra (g_0^i, g_0^j, r_kl) order-preservation rule

    void validate() const {
        if (n < 2) throw std::invalid_argument("rainbow signature: n < 2");
        auto dupfree = [](const std::vector<int>& v) {
            auto s = v;
            std::sort(s.begin(), s.end());
            return std::adjacent_find(s.begin(), s.end()) == s.end();
        };
        if (green_zero.empty() || !dupfree(green_zero))
            throw std::invalid_argument("rainbow signature: green tint set empty or duplicated");
        if (red_index.size() < 2 || !dupfree(red_index))
            throw std::invalid_argument("rainbow signature: red index set too small or duplicated");
        if (red_mode == RedMode::superscripted && copies < 1)
            throw std::invalid_argument("rainbow signature: superscripted reds need copies >= 1");
        if (order_forbidden) {
            if (!std::is_sorted(green_zero.begin(), green_zero.end()) ||
                !std::is_sorted(red_index.begin(), red_index.end()))
                throw std::invalid_argument(
                    "rainbow signature: order-sensitive regime needs sorted green and red index sets");
        }
        if (green_zero.size() > 20)
            throw std::invalid_argument("rainbow signature: green tint set too large for yellow masks");
    }

    int tint_bit(int tint) const {
        for (std::size_t p = 0; p < green_zero.size(); ++p)
            if (green_zero[p] == tint) return (int)p;
        return -1;
    }
};

/// Greens g_0^0 .. g_0^{n+1}, reds over pairs in n, yellows y_S for S within
/// n+2 tints: the alphabet of the finite algebra sitting above dimension n.
inline RainbowSignature standard_rainbow_signature(int n) {
    RainbowSignature sig;
    sig.n = n;
    for (int i = 0; i <= n + 1; ++i) sig.green_zero.push_back(i);
    for (int i = 0; i < n; ++i) sig.red_index.push_back(i);
    return sig;
}

/// Edge colour (or the out-of-signature shade rho). Yellows live on
/// hyperedges and are kept as tint sets, not as Colour values.
struct Colour {
    enum class Kind { green_rank, green_zero, white, red, rho };
    Kind kind = Kind::white;
    int i = 0, j = 0; // green_rank/white: rank i; green_zero: tint i; red: pair (i, j)
    int sup = -1;     // red copy superscript, -1 when absent

    static Colour green(int rank) { return {Kind::green_rank, rank, 0, -1}; }
    static Colour green0(int tint) { return {Kind::green_zero, tint, 0, -1}; }
    static Colour white(int rank) { return {Kind::white, rank, 0, -1}; }
    static Colour red(int a, int b, int sup = -1) { return {Kind::red, a, b, sup}; }
    static Colour shade_rho() { return {Kind::rho, 0, 0, -1}; }

    bool is_green() const { return kind == Kind::green_rank || kind == Kind::green_zero; }
    bool is_red() const { return kind == Kind::red; }

    friend bool operator==(const Colour& a, const Colour& b) {
        return a.kind == b.kind && a.i == b.i && a.j == b.j && a.sup == b.sup;
    }
    friend bool operator<(const Colour& a, const Colour& b) {
        return std::tie(a.kind, a.i, a.j, a.sup) < std::tie(b.kind, b.i, b.j, b.sup);
    }

    std::string str() const {
        switch (kind) {
        case Kind::green_rank: return "g:" + std::to_string(i);
        case Kind::green_zero: return "g0:" + std::to_string(i);
        case Kind::white: return "w:" + std::to_string(i);
        case Kind::red: {
            std::string s = "r:" + std::to_string(i) + "," + std::to_string(j);
            if (sup >= 0) s += "^" + std::to_string(sup);
            return s;
        }
        case Kind::rho: return "rho";
        }
        return "?";
    }
};

inline Colour parse_colour(const std::string& s) {
    auto num = [](const std::string& t) { return std::stoi(t); };
    if (s == "rho") return Colour::shade_rho();
    if (s.rfind("g0:", 0) == 0) return Colour::green0(num(s.substr(3)));
    if (s.rfind("g:", 0) == 0) return Colour::green(num(s.substr(2)));
    if (s.rfind("w:", 0) == 0) return Colour::white(num(s.substr(2)));
    if (s.rfind("r:", 0) == 0) {
        auto body = s.substr(2);
        auto comma = body.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("bad red colour: " + s);
        auto caret = body.find('^');
        int a = num(body.substr(0, comma));
        int b, sup = -1;
        if (caret == std::string::npos) {
            b = num(body.substr(comma + 1));
        } else {
            b = num(body.substr(comma + 1, caret - comma - 1));
            sup = num(body.substr(caret + 1));
        }
        return Colour::red(a, b, sup);
    }
    throw std::invalid_argument("unparseable colour: " + s);
}

namespace detail {

inline void validate_colour(const RainbowSignature& sig, const Colour& c) {
    switch (c.kind) {
    case Colour::Kind::green_rank:
        if (c.i < 1 || c.i > sig.n - 2) throw std::invalid_argument("green rank outside signature");
        return;
    case Colour::Kind::green_zero:
        if (sig.tint_bit(c.i) < 0) throw std::invalid_argument("green tint outside signature");
        return;
    case Colour::Kind::white:
        if (c.i < 0 || c.i > sig.n - 2) throw std::invalid_argument("white rank outside signature");
        return;
    case Colour::Kind::red: {
        bool ia = std::find(sig.red_index.begin(), sig.red_index.end(), c.i) != sig.red_index.end();
        bool jb = std::find(sig.red_index.begin(), sig.red_index.end(), c.j) != sig.red_index.end();
        // equal index pairs exist only in the ordered regime, where the
        // order-preservation rule needs them for equal-tint cone apexes
        if (!ia || !jb || (c.i == c.j && sig.red_mode != RedMode::ordered))
            throw std::invalid_argument("red indices outside signature");
        if (sig.red_mode == RedMode::superscripted) {
            if (c.sup < 0 || c.sup >= sig.copies)
                throw std::invalid_argument("red superscript outside signature");
        } else if (c.sup != -1) {
            throw std::invalid_argument("red superscript in a plain signature");
        }
        return;
    }
    case Colour::Kind::rho:
        // deliberately outside the signature; tolerated wherever a strategy plays it
        return;
    }
}

/// partial function {(a,x),(b,y)} is order preserving: equal inputs map to
/// equal outputs and strictly smaller inputs to strictly smaller outputs.
inline bool order_preserving_pair(int a, int x, int b, int y) {
    if (a == b) return x == y;
    if (a < b) return x < y;
    return x > y;
}

} // namespace detail

/// The forbidden-triangle test on a triple of edge colours.
///
/// The purely pattern-based rules (three greens; two equal ranked greens with
/// the matching white; two tinted greens with w_0; the red composition rule,
/// quantified over all orderings) are invariant under permuting the
/// arguments.  The order-sensitive regime adds the (g_0^i, g_0^j, r_kl) rule,
/// which reads the two tints positionally against the red pair after rotating
/// the red into third place: it is rotation-invariant but *not* invariant
/// under swapping the two greens (the pairing {(i,k),(j,l)} is fixed).
inline bool is_forbidden_triple(const RainbowSignature& sig, Colour c1, Colour c2, Colour c3) {
    detail::validate_colour(sig, c1);
    detail::validate_colour(sig, c2);
    detail::validate_colour(sig, c3);
    const Colour cs[3] = {c1, c2, c3};

    int greens = 0, reds = 0, zeros = 0;
    for (auto& c : cs) {
        greens += c.is_green();
        reds += c.is_red();
        zeros += c.kind == Colour::Kind::green_zero;
    }
    if (greens == 3) return true; // (g, g', g*)

    // (g_i, g_i, w_i) and (g_0^j, g_0^k, w_0)
    for (int w = 0; w < 3; ++w) {
        if (cs[w].kind != Colour::Kind::white) continue;
        const Colour& a = cs[(w + 1) % 3];
        const Colour& b = cs[(w + 2) % 3];
        if (cs[w].i == 0 && a.kind == Colour::Kind::green_zero && b.kind == Colour::Kind::green_zero)
            return true;
        if (a.kind == Colour::Kind::green_rank && a == b && cs[w].i == a.i) return true;
    }

    if (reds == 3) {
        if (sig.red_mode == RedMode::superscripted &&
            !(cs[0].sup == cs[1].sup && cs[1].sup == cs[2].sup))
            return true;
        // allowed iff some ordering composes: e1 = r_ij, e2 = r_jk', e3 = r_ik'
        int perm[3] = {0, 1, 2};
        std::sort(perm, perm + 3);
        do {
            const Colour& e1 = cs[perm[0]];
            const Colour& e2 = cs[perm[1]];
            const Colour& e3 = cs[perm[2]];
            if (e1.i == e3.i && e1.j == e2.i && e2.j == e3.j) return false;
        } while (std::next_permutation(perm, perm + 3));
        return true;
    }

    if (sig.order_forbidden && reds == 1 && zeros == 2) {
        int r = cs[0].is_red() ? 0 : cs[1].is_red() ? 1 : 2;
        const Colour& red = cs[r];
        const Colour& t1 = cs[(r + 1) % 3]; // rotate the red into third place
        const Colour& t2 = cs[(r + 2) % 3];
        return !detail::order_preserving_pair(t1.i, red.i, t2.i, red.j);
    }
    return false;
}

/// A complete coloured graph with yellow hyperlabels on sorted
/// (n-1)-subsets of nodes.  Edge orientation convention for ordered reds:
/// the first red index belongs to the smaller node.
struct ColouredGraph {
    int n = 3;
    int nodes = 0;
    std::vector<std::optional<Colour>> edges;       // slot(u,v) for u < v
    std::map<std::vector<int>, std::set<int>> hyper; // sorted node subset -> tint set

    ColouredGraph() = default;
    ColouredGraph(int n_, int nodes_)
        : n(n_), nodes(nodes_), edges((std::size_t)nodes_ * (nodes_ - 1) / 2) {}

    static std::size_t slot(int u, int v) {
        if (u > v) std::swap(u, v);
        return (std::size_t)v * (v - 1) / 2 + u;
    }
    const std::optional<Colour>& edge(int u, int v) const { return edges[slot(u, v)]; }
    void set_edge(int u, int v, Colour c) {
        if (u == v) throw std::invalid_argument("coloured graph: loop edge");
        edges[slot(u, v)] = c;
    }
    void set_hyper(std::vector<int> t, std::set<int> S) {
        std::sort(t.begin(), t.end());
        hyper[std::move(t)] = std::move(S);
    }
    const std::set<int>* hyperlabel(std::vector<int> t) const {
        std::sort(t.begin(), t.end());
        auto it = hyper.find(t);
        return it == hyper.end() ? nullptr : &it->second;
    }
};

/// An i-cone inside a graph: apex joined to base node 0 by g_0^tint, to base
/// node j by g_j, with no other green edge among the n nodes involved.
struct Cone {
    std::vector<int> base; // d_0 .. d_{n-2}, the order induced by the green ranks
    int apex = 0;
    int tint = 0;
};

namespace detail {

template <typename F>
inline void for_subsets(int nodes, int size, F&& f) {
    std::vector<int> pick(size);
    auto rec = [&](auto&& self, int from, int depth) -> void {
        if (depth == size) {
            f(pick);
            return;
        }
        for (int v = from; v + (size - depth) <= nodes; ++v) {
            pick[depth] = v;
            self(self, v + 1, depth + 1);
        }
    };
    if (size >= 0 && size <= nodes) rec(rec, 0, 0);
}

} // namespace detail

inline std::vector<Cone> find_cones(const ColouredGraph& g) {
    std::vector<Cone> out;
    const int n = g.n;
    if (g.nodes < n) return out;
    detail::for_subsets(g.nodes, n, [&](const std::vector<int>& D) {
        for (int zi = 0; zi < n; ++zi) {
            int z = D[zi];
            std::vector<int> rest;
            for (int v : D)
                if (v != z) rest.push_back(v);
            int d0 = -1, tint = 0;
            std::vector<int> ranked(n - 1, -1); // ranked[j] = d_j for 1 <= j <= n-2
            bool ok = true;
            for (int x : rest) {
                const auto& c = g.edge(x, z);
                if (!c) { ok = false; break; }
                if (c->kind == Colour::Kind::green_zero) {
                    if (d0 >= 0) { ok = false; break; }
                    d0 = x;
                    tint = c->i;
                } else if (c->kind == Colour::Kind::green_rank) {
                    if (c->i < 1 || c->i > n - 2 || ranked[c->i] >= 0) { ok = false; break; }
                    ranked[c->i] = x;
                } else {
                    ok = false;
                    break;
                }
            }
            if (!ok || d0 < 0) continue;
            for (int j = 1; j <= n - 2; ++j)
                if (ranked[j] < 0) ok = false;
            if (!ok) continue;
            // no other green edge: the base must be green-free
            for (std::size_t p = 0; p < rest.size() && ok; ++p)
                for (std::size_t q = p + 1; q < rest.size(); ++q) {
                    const auto& c = g.edge(rest[p], rest[q]);
                    if (!c || c->is_green()) { ok = false; break; }
                }
            if (!ok) continue;
            Cone cone;
            cone.base.push_back(d0);
            for (int j = 1; j <= n - 2; ++j) cone.base.push_back(ranked[j]);
            cone.apex = z;
            cone.tint = tint;
            out.push_back(std::move(cone));
        }
    });
    return out;
}

struct GraphReport {
    bool ok = true;
    std::string violation;
    std::vector<int> witness;
};

namespace detail {

/// Triangle test for concrete nodes a < b < c: routes the order-sensitive
/// two-tints-one-red pattern through the positional rule with the convention
/// that a red's first index belongs to the smaller endpoint.
inline bool triangle_forbidden(const RainbowSignature& sig, const Colour& ab, const Colour& ac,
                               const Colour& bc) {
    if (sig.order_forbidden) {
        // With order-sensitive reds the pair (i, j) is directed: i sits at the
        // smaller endpoint.  Three reds compose exactly when one index map h on
        // the nodes a < b < c realises all of them, so the test is positional
        // here, unlike the plain regime where red pairs are unordered.
        if (ab.is_red() && ac.is_red() && bc.is_red())
            return !(ab.i == ac.i && ab.j == bc.i && ac.j == bc.j);
        if (bc.is_red() && ab.kind == Colour::Kind::green_zero && ac.kind == Colour::Kind::green_zero)
            return is_forbidden_triple(sig, ab, ac, bc); // apex a; red.i <-> b, red.j <-> c
        if (ac.is_red() && ab.kind == Colour::Kind::green_zero && bc.kind == Colour::Kind::green_zero)
            return is_forbidden_triple(sig, ab, bc, ac); // apex b; red.i <-> a, red.j <-> c
        if (ab.is_red() && ac.kind == Colour::Kind::green_zero && bc.kind == Colour::Kind::green_zero)
            return is_forbidden_triple(sig, ac, bc, ab); // apex c; red.i <-> a, red.j <-> b
    }
    return is_forbidden_triple(sig, ab, ac, bc);
}

} // namespace detail

inline GraphReport check_coloured_graph(const RainbowSignature& sig, const ColouredGraph& g) {
    sig.validate();
    if (g.n != sig.n) throw std::invalid_argument("coloured graph: dimension mismatch");
    GraphReport rep;
    for (int u = 0; u < g.nodes; ++u)
        for (int v = u + 1; v < g.nodes; ++v)
            if (!g.edge(u, v)) throw std::invalid_argument("coloured graph: incomplete edge map");
    for (int u = 0; u < g.nodes; ++u)
        for (int v = u + 1; v < g.nodes; ++v) detail::validate_colour(sig, *g.edge(u, v));
    for (auto& [tuple, S] : g.hyper) {
        if ((int)tuple.size() != sig.n - 1 ||
            std::adjacent_find(tuple.begin(), tuple.end()) != tuple.end())
            throw std::invalid_argument("coloured graph: hyperedge is not an (n-1)-set of distinct nodes");
        for (int v : tuple)
            if (v < 0 || v >= g.nodes) throw std::invalid_argument("coloured graph: hyperedge node out of range");
        for (int t : S)
            if (sig.tint_bit(t) < 0) throw std::invalid_argument("coloured graph: yellow tint outside signature");
    }

    for (int a = 0; a < g.nodes && rep.ok; ++a)
        for (int b = a + 1; b < g.nodes && rep.ok; ++b)
            for (int c = b + 1; c < g.nodes; ++c)
                if (detail::triangle_forbidden(sig, *g.edge(a, b), *g.edge(a, c), *g.edge(b, c))) {
                    rep.ok = false;
                    rep.violation = "forbidden triangle (" + g.edge(a, b)->str() + ", " +
                                    g.edge(a, c)->str() + ", " + g.edge(b, c)->str() + ")";
                    rep.witness = {a, b, c};
                    break;
                }
    if (!rep.ok) return rep;

    // yellow rule: a green-free (n-1)-set carries exactly one shade, others none
    detail::for_subsets(g.nodes, sig.n - 1, [&](const std::vector<int>& t) {
        if (!rep.ok) return;
        bool greenfree = true;
        for (std::size_t p = 0; p < t.size(); ++p)
            for (std::size_t q = p + 1; q < t.size(); ++q)
                if (g.edge(t[p], t[q])->is_green()) greenfree = false;
        bool labelled = g.hyper.count(t) != 0;
        if (greenfree && !labelled) {
            rep.ok = false;
            rep.violation = "green-free tuple lacks its shade of yellow";
            rep.witness = t;
        } else if (!greenfree && labelled) {
            rep.ok = false;
            rep.violation = "tuple with a green edge carries a shade of yellow";
            rep.witness = t;
        }
    });
    if (!rep.ok) return rep;

    for (const Cone& cone : find_cones(g)) {
        const std::set<int>* S = g.hyperlabel(cone.base);
        if (!S || !S->count(cone.tint)) {
            rep.ok = false;
            rep.violation = "cone tint " + std::to_string(cone.tint) + " missing from the base's yellow";
            rep.witness = cone.base;
            rep.witness.push_back(cone.apex);
            return rep;
        }
    }
    return rep;
}

/// Index-level canonical representative of an equivalence class of
/// surjections: a restricted-growth partition of the n indices, an edge
/// colour id per pair of distinct blocks and a yellow mask (-1 = undefined)
/// per (n-1)-subset of blocks.
struct RainbowAtom {
    std::vector<int> cls;   // size n, restricted growth string
    int m = 0;              // number of blocks
    std::vector<int> edge;  // colour id at slot(q*(q-1)/2 + p) for block pair p < q
    std::vector<int> hyper; // yellow mask per (n-1)-subset of blocks (lex order), -1 = none

    friend bool operator==(const RainbowAtom& a, const RainbowAtom& b) {
        return a.cls == b.cls && a.edge == b.edge && a.hyper == b.hyper;
    }
};

/// Enumerated rainbow atom structure plus the codec needed to navigate it.
struct RainbowStructure {
    RainbowSignature sig;
    std::vector<Colour> colours; // edge colour ids; greens occupy the front
    int ngreens = 0;
    std::vector<std::vector<int>> partitions;      // restricted growth strings, lex order
    std::vector<std::vector<std::vector<int>>> subsets_by_m; // (n-1)-subsets of {0..m-1}
    int eslots = 0, hslots = 0, bits_e = 0, bits_h = 0;
    std::vector<std::uint64_t> codes; // sorted packed atoms
    std::shared_ptr<const AtomStructure> at;

    std::size_t atoms() const { return codes.size(); }
    bool is_green_id(int id) const { return id < ngreens; }

    int colour_id(const Colour& c) const {
        for (std::size_t i = 0; i < colours.size(); ++i)
            if (colours[i] == c) return (int)i;
        return -1;
    }

    std::uint64_t encode(const RainbowAtom& a) const {
        std::uint64_t code = (std::uint64_t)partition_index(a.cls);
        std::size_t ne = (std::size_t)a.m * (a.m - 1) / 2;
        for (int t = 0; t < eslots; ++t)
            code = (code << bits_e) | (t < (int)ne ? (std::uint64_t)a.edge[t] : 0u);
        for (int t = 0; t < hslots; ++t)
            code = (code << bits_h) | (t < (int)a.hyper.size() ? (std::uint64_t)(a.hyper[t] + 1) : 0u);
        return code;
    }

    RainbowAtom decode(std::uint64_t code) const {
        RainbowAtom a;
        std::vector<std::uint64_t> hv(hslots), ev(eslots);
        for (int t = hslots - 1; t >= 0; --t) {
            hv[t] = code & ((1ull << bits_h) - 1);
            code >>= bits_h;
        }
        for (int t = eslots - 1; t >= 0; --t) {
            ev[t] = code & ((1ull << bits_e) - 1);
            code >>= bits_e;
        }
        a.cls = partitions[(std::size_t)code];
        a.m = 1 + *std::max_element(a.cls.begin(), a.cls.end());
        a.edge.assign((std::size_t)a.m * (a.m - 1) / 2, 0);
        for (std::size_t t = 0; t < a.edge.size(); ++t) a.edge[t] = (int)ev[t];
        a.hyper.assign(subsets_by_m[a.m].size(), -1);
        for (std::size_t t = 0; t < a.hyper.size(); ++t) a.hyper[t] = (int)hv[t] - 1;
        return a;
    }

    std::size_t index_of(std::uint64_t code) const {
        auto it = std::lower_bound(codes.begin(), codes.end(), code);
        if (it == codes.end() || *it != code) return npos;
        return (std::size_t)(it - codes.begin());
    }
    static constexpr std::size_t npos = (std::size_t)-1;

    int partition_index(const std::vector<int>& rgs) const {
        auto it = std::lower_bound(partitions.begin(), partitions.end(), rgs);
        if (it == partitions.end() || *it != rgs)
            throw std::invalid_argument("rainbow atom: not a canonical partition");
        return (int)(it - partitions.begin());
    }

    int subset_slot(int m, const std::vector<int>& sub) const {
        const auto& list = subsets_by_m[m];
        for (std::size_t s = 0; s < list.size(); ++s)
            if (list[s] == sub) return (int)s;
        throw std::invalid_argument("rainbow atom: unknown block subset");
    }

    /// Transposition of indices i and j followed by recanonicalization.
    RainbowAtom apply_swap(const RainbowAtom& a, int i, int j) const {
        const int n = sig.n;
        std::vector<int> c = a.cls;
        std::swap(c[i], c[j]);
        std::vector<int> perm(a.m, -1);
        int next = 0;
        for (int t = 0; t < n; ++t) {
            if (perm[c[t]] < 0) perm[c[t]] = next++;
            c[t] = perm[c[t]];
        }
        RainbowAtom b;
        b.cls = std::move(c);
        b.m = a.m;
        b.edge.assign(a.edge.size(), 0);
        for (int q = 1; q < a.m; ++q)
            for (int p = 0; p < q; ++p) {
                int np = perm[p], nq = perm[q];
                if (np > nq) std::swap(np, nq);
                b.edge[(std::size_t)nq * (nq - 1) / 2 + np] = a.edge[(std::size_t)q * (q - 1) / 2 + p];
            }
        b.hyper.assign(a.hyper.size(), -1);
        for (std::size_t s = 0; s < a.hyper.size(); ++s) {
            std::vector<int> sub = subsets_by_m[a.m][s];
            for (int& x : sub) x = perm[x];
            std::sort(sub.begin(), sub.end());
            b.hyper[(std::size_t)subset_slot(a.m, sub)] = a.hyper[s];
        }
        return b;
    }
};

namespace detail {

inline std::vector<std::vector<int>> growth_strings(int len, int max_blocks) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(len);
    auto rec = [&](auto&& self, int pos, int used) -> void {
        if (pos == len) {
            out.push_back(cur);
            return;
        }
        for (int b = 0; b <= used && b < max_blocks; ++b) {
            cur[pos] = b;
            self(self, pos + 1, std::max(used, b + 1));
        }
    };
    if (len > 0) rec(rec, 0, 0);
    return out;
}

inline std::vector<std::vector<int>> subsets_of(int m, int size) {
    std::vector<std::vector<int>> out;
    for_subsets(m, size, [&](const std::vector<int>& s) { out.push_back(s); });
    return out;
}

} // namespace detail

/// Enumerate the atom structure over a rainbow signature: every valid
/// index-level atom on graphs of at most up_to_nodes nodes, with the
/// relations E_ij (index equality), T_i (agreement off i, hyperlabels
/// included whenever defined), S_ij (transposition) and the emitted frame
/// flagged as a polyadic-equality structure.
inline RainbowStructure enumerate_atoms(const RainbowSignature& sig, int up_to_nodes = -1,
                                        std::size_t atom_budget = (std::size_t)1 << 26) {
    sig.validate();
    const int n = sig.n;
    if (up_to_nodes < 0 || up_to_nodes > n) up_to_nodes = n;

    RainbowStructure rs;
    rs.sig = sig;
    for (int t : sig.green_zero) rs.colours.push_back(Colour::green0(t));
    for (int i = 1; i <= n - 2; ++i) rs.colours.push_back(Colour::green(i));
    rs.ngreens = (int)rs.colours.size();
    for (int i = 0; i <= n - 2; ++i) rs.colours.push_back(Colour::white(i));
    for (std::size_t p = 0; p < sig.red_index.size(); ++p)
        for (std::size_t q = p + 1; q < sig.red_index.size(); ++q) {
            if (sig.red_mode == RedMode::superscripted)
                for (int t = 0; t < sig.copies; ++t)
                    rs.colours.push_back(Colour::red(sig.red_index[p], sig.red_index[q], t));
            else
                rs.colours.push_back(Colour::red(sig.red_index[p], sig.red_index[q]));
        }

    const int C = (int)rs.colours.size();
    const int Y = 1 << (int)sig.green_zero.size();
    rs.partitions = detail::growth_strings(n, up_to_nodes);
    rs.subsets_by_m.resize(n + 1);
    for (int m = 0; m <= n; ++m) rs.subsets_by_m[m] = detail::subsets_of(m, n - 1);
    rs.eslots = n * (n - 1) / 2;
    rs.hslots = n; // an m-block atom uses C(m, n-1) <= n of these
    rs.bits_e = std::max(1, (int)std::bit_width((unsigned)(C - 1)));
    rs.bits_h = std::max(1, (int)std::bit_width((unsigned)Y));
    int bits_part = std::max(1, (int)std::bit_width((unsigned)(rs.partitions.size() - 1)));
    if (bits_part + rs.eslots * rs.bits_e + rs.hslots * rs.bits_h > 64)
        throw std::runtime_error("rainbow enumeration: atom code exceeds 64 bits");

    // forbidden-triangle table over colour ids with block ids as node order
    std::vector<char> forb((std::size_t)C * C * C);
    for (int a = 0; a < C; ++a)
        for (int b = 0; b < C; ++b)
            for (int c = 0; c < C; ++c)
                forb[((std::size_t)a * C + b) * C + c] =
                    detail::triangle_forbidden(sig, rs.colours[a], rs.colours[b], rs.colours[c]);

    for (std::size_t pi = 0; pi < rs.partitions.size(); ++pi) {
        const auto& rgs = rs.partitions[pi];
        const int m = 1 + *std::max_element(rgs.begin(), rgs.end());
        const auto& subs = rs.subsets_by_m[m];
        const std::size_t ne = (std::size_t)m * (m - 1) / 2;
        std::vector<int> edge(ne, 0);

        auto emit_with_yellows = [&](std::uint64_t base) {
            // per subset: -1 slot value 0 when a green edge is present, else any
            // mask containing the cone-forced tints
            std::vector<int> req(subs.size(), 0);
            std::vector<char> greenfree(subs.size(), 1);
            for (std::size_t s = 0; s < subs.size(); ++s)
                for (std::size_t p = 0; p < subs[s].size(); ++p)
                    for (std::size_t q = p + 1; q < subs[s].size(); ++q) {
                        int a = subs[s][p], b = subs[s][q];
                        if (rs.is_green_id(edge[(std::size_t)b * (b - 1) / 2 + a])) greenfree[s] = 0;
                    }
            if (m == n) {
                // cones use all blocks: apex = the block missing from the base
                for (std::size_t s = 0; s < subs.size(); ++s) {
                    if (!greenfree[s]) continue;
                    int z = -1;
                    for (int b = 0; b < m; ++b)
                        if (std::find(subs[s].begin(), subs[s].end(), b) == subs[s].end()) z = b;
                    int d0 = -1, tint = -1;
                    std::vector<int> ranked(n - 1, -1);
                    bool cone = true;
                    for (int x : subs[s]) {
                        int lo = std::min(x, z), hi = std::max(x, z);
                        const Colour& c = rs.colours[edge[(std::size_t)hi * (hi - 1) / 2 + lo]];
                        if (c.kind == Colour::Kind::green_zero && d0 < 0) {
                            d0 = x;
                            tint = c.i;
                        } else if (c.kind == Colour::Kind::green_rank && ranked[c.i] < 0) {
                            ranked[c.i] = x;
                        } else {
                            cone = false;
                            break;
                        }
                    }
                    for (int j = 1; j <= n - 2 && cone; ++j)
                        if (ranked[j] < 0) cone = false;
                    if (cone && d0 >= 0) req[s] |= 1 << sig.tint_bit(tint);
                }
            }
            // odometer over yellow masks, most significant slot first
            auto rec = [&](auto&& self, std::size_t s, std::uint64_t acc) -> void {
                if (s == subs.size()) {
                    for (std::size_t t = subs.size(); t < (std::size_t)rs.hslots; ++t) acc <<= rs.bits_h;
                    rs.codes.push_back(acc);
                    if (rs.codes.size() > atom_budget)
                        throw std::runtime_error("rainbow enumeration: atom budget exceeded");
                    return;
                }
                if (!greenfree[s]) {
                    self(self, s + 1, acc << rs.bits_h);
                    return;
                }
                for (int S = req[s]; S < Y; ++S) {
                    if ((S & req[s]) != req[s]) continue; // masks must contain the forced tints
                    self(self, s + 1, (acc << rs.bits_h) | (std::uint64_t)(S + 1));
                }
            };
            rec(rec, 0, base);
        };

        auto dfs = [&](auto&& self, std::size_t slot) -> void {
            if (slot == ne) {
                std::uint64_t base = (std::uint64_t)pi;
                for (int t = 0; t < rs.eslots; ++t)
                    base = (base << rs.bits_e) | (t < (int)ne ? (std::uint64_t)edge[t] : 0u);
                emit_with_yellows(base);
                return;
            }
            // slot encodes the pair (p, q): q-major order
            int q = 1;
            while ((std::size_t)q * (q + 1) / 2 <= slot) ++q;
            int p = (int)(slot - (std::size_t)q * (q - 1) / 2);
            for (int c = 0; c < C; ++c) {
                bool ok = true;
                for (int r = 0; r < p && ok; ++r)
                    if (forb[((std::size_t)edge[(std::size_t)p * (p - 1) / 2 + r] * C +
                              edge[(std::size_t)q * (q - 1) / 2 + r]) *
                                 C +
                             c])
                        ok = false;
                if (!ok) continue;
                edge[slot] = c;
                self(self, slot + 1);
            }
            edge[slot] = 0;
        };
        dfs(dfs, 0);
    }

    std::sort(rs.codes.begin(), rs.codes.end());
    rs.codes.erase(std::unique(rs.codes.begin(), rs.codes.end()), rs.codes.end());

    const std::size_t k = rs.codes.size();
    AtomStructure frame;
    frame.sig = Signature{n, true, true, false, false, false};
    frame.atoms = k;

    // E_ij from the partition field alone
    const int tailbits = rs.eslots * rs.bits_e + rs.hslots * rs.bits_h;
    frame.E.assign(n, std::vector<Bits>(n, Bits(k)));
    for (std::size_t a = 0; a < k; ++a) {
        const auto& rgs = rs.partitions[(std::size_t)(rs.codes[a] >> tailbits)];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (rgs[i] == rgs[j]) frame.E[i][j].set(a);
    }

    // T_i: atoms agreeing off index i share a restriction key
    std::vector<std::vector<int>> rest_partitions = detail::growth_strings(n - 1, n - 1);
    auto rest_index = [&](const std::vector<int>& rgs) {
        auto it = std::lower_bound(rest_partitions.begin(), rest_partitions.end(), rgs);
        return (std::uint64_t)(it - rest_partitions.begin());
    };
    const int rest_eslots = (n - 1) * (n - 2) / 2;
    for (int i = 0; i < n; ++i) {
        std::vector<std::uint64_t> key(k);
        std::vector<int> rcls(n - 1), hit;
        for (std::size_t a = 0; a < k; ++a) {
            RainbowAtom at_a = rs.decode(rs.codes[a]);
            hit.assign(at_a.m, -1);
            int m2 = 0, pos = 0;
            std::vector<int> old_of(n - 1);
            for (int t = 0; t < n; ++t) {
                if (t == i) continue;
                int oc = at_a.cls[t];
                if (hit[oc] < 0) {
                    hit[oc] = m2;
                    old_of[m2] = oc;
                    ++m2;
                }
                rcls[pos++] = hit[oc];
            }
            std::uint64_t kk = rest_index(std::vector<int>(rcls.begin(), rcls.begin() + (n - 1)));
            int slot = 0;
            for (int q2 = 1; q2 < n - 1; ++q2)
                for (int p2 = 0; p2 < q2; ++p2, ++slot) {
                    std::uint64_t v = 0;
                    if (q2 < m2) {
                        int op = old_of[p2], oq = old_of[q2];
                        if (op > oq) std::swap(op, oq);
                        v = (std::uint64_t)at_a.edge[(std::size_t)oq * (oq - 1) / 2 + op] + 1;
                    }
                    kk = (kk << (rs.bits_e + 1)) | v;
                }
            for (; slot < rest_eslots; ++slot) kk <<= (rs.bits_e + 1);
            std::uint64_t hv = 0;
            if (m2 == n - 1) {
                std::vector<int> sub(old_of.begin(), old_of.begin() + m2);
                std::sort(sub.begin(), sub.end());
                hv = (std::uint64_t)(at_a.hyper[(std::size_t)rs.subset_slot(at_a.m, sub)] + 2);
            }
            key[a] = (kk << (rs.bits_h + 1)) | hv;
        }
        std::vector<std::uint32_t> order(k);
        std::iota(order.begin(), order.end(), 0u);
        std::sort(order.begin(), order.end(),
                  [&](std::uint32_t x, std::uint32_t y) { return key[x] < key[y]; });
        std::vector<std::uint32_t> cls(k);
        std::uint32_t nc = 0;
        for (std::size_t p = 0; p < k; ++p) {
            if (p > 0 && key[order[p]] != key[order[p - 1]]) ++nc;
            cls[order[p]] = nc;
        }
        frame.T.push_back(Rel::from_classes(std::move(cls), k ? nc + 1 : 0));
    }

    // S_ij by transposing indices and looking the canonical form back up
    frame.S.assign(n, std::vector<std::vector<std::uint32_t>>(n));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::vector<std::uint32_t> map(k);
            for (std::size_t a = 0; a < k; ++a) {
                RainbowAtom at_a = rs.decode(rs.codes[a]);
                std::size_t b = rs.index_of(rs.encode(rs.apply_swap(at_a, i, j)));
                if (b == RainbowStructure::npos)
                    throw std::logic_error("rainbow enumeration: transposition image missing");
                map[a] = (std::uint32_t)b;
            }
            frame.S[i][j] = map;
            frame.S[j][i] = std::move(map);
        }

    frame.validate();
    rs.at = std::make_shared<const AtomStructure>(std::move(frame));
    return rs;
}

/// Index-level atom induced by a surjection a : n -> nodes(M); throws if a is
/// not surjective or M's data is incomplete where the atom needs it.
inline RainbowAtom atom_of_surjection(const RainbowStructure& rs, const ColouredGraph& M,
                                      const std::vector<int>& a) {
    const int n = rs.sig.n;
    if ((int)a.size() != n) throw std::invalid_argument("surjection arity mismatch");
    RainbowAtom out;
    out.cls.assign(n, -1);
    std::vector<int> rep; // block -> node
    for (int t = 0; t < n; ++t) {
        if (a[t] < 0 || a[t] >= M.nodes) throw std::invalid_argument("surjection target out of range");
        for (std::size_t b = 0; b < rep.size(); ++b)
            if (rep[b] == a[t]) out.cls[t] = (int)b;
        if (out.cls[t] < 0) {
            out.cls[t] = (int)rep.size();
            rep.push_back(a[t]);
        }
    }
    if ((int)rep.size() != M.nodes) throw std::invalid_argument("map is not surjective");
    out.m = (int)rep.size();
    out.edge.assign((std::size_t)out.m * (out.m - 1) / 2, 0);
    for (int q = 1; q < out.m; ++q)
        for (int p = 0; p < q; ++p) {
            const auto& c = M.edge(rep[p], rep[q]);
            if (!c) throw std::invalid_argument("graph edge missing under the surjection");
            int id = rs.colour_id(*c);
            if (id < 0) throw std::invalid_argument("graph colour outside the enumerated signature");
            out.edge[(std::size_t)q * (q - 1) / 2 + p] = id;
        }
    out.hyper.assign(rs.subsets_by_m[out.m].size(), -1);
    for (std::size_t s = 0; s < out.hyper.size(); ++s) {
        std::vector<int> nodes;
        for (int b : rs.subsets_by_m[out.m][s]) nodes.push_back(rep[b]);
        const std::set<int>* S = M.hyperlabel(nodes);
        if (S) {
            int mask = 0;
            for (int t : *S) mask |= 1 << rs.sig.tint_bit(t);
            out.hyper[s] = mask;
        }
    }
    return out;
}

/// Standard-signature structure above dimension n: greens g_0^0..g_0^{n+1}
/// and g_1..g_{n-2}, reds over pairs in n, yellows over the n+2 tints.
inline RainbowStructure build_finite_rainbow(int n, std::size_t atom_budget = (std::size_t)1 << 26) {
    if (n < 3) throw std::invalid_argument("finite rainbow structure needs n >= 3");
    return enumerate_atoms(standard_rainbow_signature(n), n, atom_budget);
}

/// Result of splitting every red into `copies` superscripted copies.
struct BlowUp {
    RainbowStructure structure;
    std::vector<std::uint32_t> original; // atom -> atom of the unsplit structure
    std::vector<char> red;               // atom carries at least one red edge
};

inline BlowUp blow_up_and_blur(const RainbowStructure& src, int copies,
                               std::size_t atom_budget = (std::size_t)1 << 26) {
    if (copies < 1) throw std::invalid_argument("blow up: copies must be >= 1");
    if (src.sig.red_mode == RedMode::superscripted)
        throw std::invalid_argument("blow up: source already carries superscripts");
    RainbowSignature sig = src.sig;
    sig.red_mode = RedMode::superscripted;
    sig.copies = copies;

    BlowUp out;
    out.structure = enumerate_atoms(sig, sig.n, atom_budget);
    const RainbowStructure& dst = out.structure;

    std::vector<int> strip(dst.colours.size());
    for (std::size_t c = 0; c < dst.colours.size(); ++c) {
        Colour col = dst.colours[c];
        if (col.is_red()) col.sup = -1;
        strip[c] = src.colour_id(col);
        if (strip[c] < 0) throw std::logic_error("blow up: colour table mismatch");
    }

    out.original.resize(dst.atoms());
    out.red.resize(dst.atoms());
    for (std::size_t a = 0; a < dst.atoms(); ++a) {
        RainbowAtom at_a = dst.decode(dst.codes[a]);
        bool has_red = false;
        for (int& e : at_a.edge) {
            if (dst.colours[e].is_red()) has_red = true;
            e = strip[e];
        }
        out.red[a] = has_red;
        std::size_t o = src.index_of(src.encode(at_a));
        if (o == RainbowStructure::npos)
            throw std::logic_error("blow up: stripped atom missing from the source structure");
        out.original[a] = (std::uint32_t)o;
    }
    return out;
}

/// Verification report for the copy-set embedding of the unsplit algebra into
/// the complex algebra of its blow-up.
struct ThetaReport {
    bool ok = true;
    std::string failure;
    bool truncation_artifact = false; // failure disappears at copies+1
    std::size_t src_atoms = 0, dst_atoms = 0;
    std::vector<std::uint32_t> copy_count; // per source atom: |Theta(atom)|
};

namespace detail {

inline bool theta_check(const RainbowStructure& src, const BlowUp& blown, ThetaReport& rep) {
    const RainbowStructure& dst = blown.structure;
    const int n = src.sig.n;
    rep.src_atoms = src.atoms();
    rep.dst_atoms = dst.atoms();
    rep.copy_count.assign(src.atoms(), 0);
    for (auto o : blown.original) ++rep.copy_count[o];

    // injectivity: the copy sets partition the blown atoms and none is empty;
    // an atom has one copy exactly when it carries no red edge
    for (std::size_t a = 0; a < src.atoms(); ++a)
        if (rep.copy_count[a] == 0) {
            rep.ok = false;
            rep.failure = "source atom " + std::to_string(a) + " has no copy";
            return false;
        }
    for (std::size_t d = 0; d < dst.atoms(); ++d)
        if (!blown.red[d] && rep.copy_count[blown.original[d]] != 1) {
            rep.ok = false;
            rep.failure = "red-free atom " + std::to_string(d) + " shares its original";
            return false;
        }

    // diagonal preservation: a copy realises the same index partition
    const int src_tail = src.eslots * src.bits_e + src.hslots * src.bits_h;
    const int dst_tail = dst.eslots * dst.bits_e + dst.hslots * dst.bits_h;
    for (std::size_t d = 0; d < dst.atoms(); ++d)
        if ((dst.codes[d] >> dst_tail) != (src.codes[blown.original[d]] >> src_tail)) {
            rep.ok = false;
            rep.failure = "copy " + std::to_string(d) + " changes the index partition";
            return false;
        }

    // transpositions commute with taking originals
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (std::size_t d = 0; d < dst.atoms(); ++d)
                if (blown.original[dst.at->S[i][j][d]] != src.at->S[i][j][blown.original[d]]) {
                    rep.ok = false;
                    rep.failure = "transposition [" + std::to_string(i) + "," + std::to_string(j) +
                                  "] disagrees with originals at atom " + std::to_string(d);
                    return false;
                }

    // cylindrifier equation at atom level: Theta(c_i[a]) = c_i Theta([a]).
    // Per blown T_i class: the originals of its members must (a) lie inside a
    // single source T_i class and (b) cover that class exactly.
    for (int i = 0; i < n; ++i) {
        const Rel& td = dst.at->T[i];
        const Rel& ts = src.at->T[i];
        std::vector<std::uint32_t> src_class_size(ts.nclasses(), 0);
        for (std::size_t a = 0; a < src.atoms(); ++a) ++src_class_size[ts.cls(a)];
        std::vector<std::vector<std::uint32_t>> members(td.nclasses());
        for (std::size_t d = 0; d < dst.atoms(); ++d) members[td.cls(d)].push_back((std::uint32_t)d);
        for (std::size_t cl = 0; cl < members.size(); ++cl) {
            std::vector<std::uint32_t> originals;
            originals.reserve(members[cl].size());
            for (auto d : members[cl]) originals.push_back(blown.original[d]);
            std::sort(originals.begin(), originals.end());
            originals.erase(std::unique(originals.begin(), originals.end()), originals.end());
            std::uint32_t c0 = ts.cls(originals[0]);
            for (auto o : originals)
                if (ts.cls(o) != c0) {
                    rep.ok = false;
                    rep.failure = "c_" + std::to_string(i) +
                                  ": originals of one blown class span two source classes";
                    return false;
                }
            if (originals.size() != src_class_size[c0]) {
                rep.ok = false;
                rep.failure = "c_" + std::to_string(i) +
                              ": a blown class misses a source atom (some copy does not lift)";
                return false;
            }
        }
    }
    return true;
}

} // namespace detail

inline ThetaReport theta_embedding(const RainbowStructure& src, const BlowUp& blown,
                                   bool diagnose_truncation = true) {
    ThetaReport rep;
    if (!detail::theta_check(src, blown, rep) && diagnose_truncation) {
        BlowUp next = blow_up_and_blur(src, blown.structure.sig.copies + 1);
        ThetaReport again;
        if (detail::theta_check(src, next, again)) rep.truncation_artifact = true;
    }
    return rep;
}

/// Exact chromatic number of a simple graph by iterative-deepening
/// backtracking with a greedy clique lower bound.
inline int chromatic_number(int nodes, const std::vector<std::pair<int, int>>& edge_list,
                            int node_budget = 64) {
    if (nodes < 0 || nodes > node_budget || nodes > 64)
        throw std::invalid_argument("chromatic number: node budget exceeded");
    if (nodes == 0) return 0;
    std::vector<std::uint64_t> adj(nodes, 0);
    for (auto [u, v] : edge_list) {
        if (u < 0 || v < 0 || u >= nodes || v >= nodes || u == v)
            throw std::invalid_argument("chromatic number: bad edge");
        adj[u] |= 1ull << v;
        adj[v] |= 1ull << u;
    }
    std::vector<int> order(nodes);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::popcount(adj[a]) > std::popcount(adj[b]);
    });
    // greedy clique through the degree order
    int lb = 0;
    {
        std::uint64_t clique = 0;
        for (int v : order) {
            if ((adj[v] & clique) == clique) {
                clique |= 1ull << v;
                ++lb;
            }
        }
    }
    std::vector<int> colour(nodes, -1);
    auto colourable = [&](auto&& self, int pos, int k, int used) -> bool {
        if (pos == nodes) return true;
        int v = order[pos];
        for (int c = 0; c < std::min(k, used + 1); ++c) {
            bool clash = false;
            for (int u = 0; u < nodes && !clash; ++u)
                if (colour[u] == c && (adj[v] >> u & 1)) clash = true;
            if (clash) continue;
            colour[v] = c;
            if (self(self, pos + 1, k, std::max(used, c + 1))) return true;
            colour[v] = -1;
        }
        return false;
    };
    for (int k = std::max(lb, 1); k <= nodes; ++k) {
        std::fill(colour.begin(), colour.end(), -1);
        if (colourable(colourable, 0, k, 0)) return k;
    }
    return nodes;
}

} // namespace cyl
