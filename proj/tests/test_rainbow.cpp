#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "cylgames/axioms.hpp"
#include "cylgames/rainbow.hpp"

using namespace cyl;

namespace {

/// One tint, one red pair: the smallest interesting rainbow alphabet.
RainbowSignature small_sig() {
    RainbowSignature sig;
    sig.n = 3;
    sig.green_zero = {0};
    sig.red_index = {0, 1};
    return sig;
}

RainbowSignature order_sig() {
    RainbowSignature sig;
    sig.n = 3;
    sig.green_zero = {-2, -1};
    sig.red_index = {1, 2};
    sig.order_forbidden = true;
    return sig;
}

/// Independent oracle: enumerate every valid coloured graph on <= 3 nodes
/// with every hyperlabel assignment, then every surjection from the indices,
/// and collect the induced atoms.
std::set<std::uint64_t> graph_level_atoms(const RainbowStructure& rs) {
    const auto& sig = rs.sig;
    std::set<std::uint64_t> out;
    const int C = (int)rs.colours.size();
    for (int m = 1; m <= 3; ++m) {
        std::vector<std::vector<int>> surjections;
        for (int f0 = 0; f0 < m; ++f0)
            for (int f1 = 0; f1 < m; ++f1)
                for (int f2 = 0; f2 < m; ++f2) {
                    std::set<int> img = {f0, f1, f2};
                    if ((int)img.size() == m) surjections.push_back({f0, f1, f2});
                }
        const int ne = m * (m - 1) / 2;
        std::vector<int> edge(ne);
        // hyper option per node pair: 0 = unlabelled, 1 = y_{}, 2 = y_{first tint}
        std::vector<int> hyp(ne);
        auto hyper_rec = [&](auto&& self, ColouredGraph g, int slot) -> void {
            if (slot == ne) {
                if (!check_coloured_graph(sig, g).ok) return;
                for (auto& a : surjections) out.insert(rs.encode(atom_of_surjection(rs, g, a)));
                return;
            }
            for (int opt = 0; opt < 3; ++opt) {
                ColouredGraph h = g;
                if (opt > 0) {
                    int v = 1;
                    while (v * (v - 1) / 2 <= slot) ++v;
                    int u = slot - (v - 1) * (v - 2) / 2;
                    // recover (u, v-1) from the slot; pairs are exactly the 2-subsets
                    std::set<int> S;
                    if (opt == 2) S.insert(sig.green_zero[0]);
                    h.set_hyper({u, v - 1}, S);
                }
                self(self, std::move(h), slot + 1);
            }
        };
        auto edge_rec = [&](auto&& self, int slot) -> void {
            if (slot == ne) {
                ColouredGraph g(3, m);
                int s = 0;
                for (int v = 1; v < m; ++v)
                    for (int u = 0; u < v; ++u) g.set_edge(u, v, rs.colours[edge[s++]]);
                hyper_rec(hyper_rec, std::move(g), 0);
                return;
            }
            for (int c = 0; c < C; ++c) {
                edge[slot] = c;
                self(self, slot + 1);
            }
        };
        edge_rec(edge_rec, 0);
    }
    return out;
}

int edge_colour_of(const RainbowAtom& a, int p, int q) {
    if (p > q) std::swap(p, q);
    return a.edge[(std::size_t)q * (q - 1) / 2 + p];
}

/// Off-index agreement spelled out structurally, as an oracle for T_i.
bool off_index_equal(const RainbowStructure& rs, const RainbowAtom& a, const RainbowAtom& b, int i) {
    const int n = rs.sig.n;
    for (int s = 0; s < n; ++s)
        for (int t = s + 1; t < n; ++t) {
            if (s == i || t == i) continue;
            if ((a.cls[s] == a.cls[t]) != (b.cls[s] == b.cls[t])) return false;
            if (a.cls[s] != a.cls[t] &&
                edge_colour_of(a, a.cls[s], a.cls[t]) != edge_colour_of(b, b.cls[s], b.cls[t]))
                return false;
        }
    std::set<int> ha, hb;
    for (int t = 0; t < n; ++t)
        if (t != i) {
            ha.insert(a.cls[t]);
            hb.insert(b.cls[t]);
        }
    if ((int)ha.size() == n - 1) {
        std::vector<int> sa(ha.begin(), ha.end()), sb(hb.begin(), hb.end());
        if (a.hyper[(std::size_t)rs.subset_slot(a.m, sa)] != b.hyper[(std::size_t)rs.subset_slot(b.m, sb)])
            return false;
    }
    return true;
}

int red_edges_of(const RainbowStructure& rs, const RainbowAtom& a) {
    int c = 0;
    for (int e : a.edge) c += rs.colours[e].is_red();
    return c;
}

} // namespace

TEST_CASE("colour literals round-trip") {
    for (const Colour& c : {Colour::green(1), Colour::green0(4), Colour::white(0), Colour::red(0, 2),
                            Colour::red(1, 2, 7), Colour::shade_rho()})
        CHECK(parse_colour(c.str()) == c);
    CHECK_THROWS_AS(parse_colour("blue"), std::invalid_argument);
}

TEST_CASE("forbidden triples, pattern rules") {
    auto sig = standard_rainbow_signature(3);
    auto g1 = Colour::green(1), w0 = Colour::white(0), w1 = Colour::white(1);
    CHECK(is_forbidden_triple(sig, g1, g1, w1));
    CHECK_FALSE(is_forbidden_triple(sig, g1, g1, w0));
    CHECK(is_forbidden_triple(sig, g1, Colour::green0(2), Colour::green0(3))); // three greens
    CHECK(is_forbidden_triple(sig, Colour::green0(1), Colour::green0(4), w0));
    CHECK(is_forbidden_triple(sig, Colour::green0(2), Colour::green0(2), w0)); // equal tints too
    CHECK_FALSE(is_forbidden_triple(sig, Colour::green0(2), g1, w0));

    auto r01 = Colour::red(0, 1), r02 = Colour::red(0, 2), r12 = Colour::red(1, 2);
    CHECK_FALSE(is_forbidden_triple(sig, r01, r12, r02)); // i=i*, j=j', k'=k*
    CHECK(is_forbidden_triple(sig, r01, r01, r01));
    CHECK(is_forbidden_triple(sig, r01, r01, r02));
    CHECK_FALSE(is_forbidden_triple(sig, r01, w0, w1)); // reds mix freely with whites

    CHECK_THROWS_AS(is_forbidden_triple(sig, Colour::green0(99), w0, w0), std::invalid_argument);
    CHECK_THROWS_AS(is_forbidden_triple(sig, Colour::green(2), w0, w0), std::invalid_argument);

    // permutation invariance of the pattern rules
    std::vector<Colour> pool = {g1, w0, w1, Colour::green0(0), Colour::green0(3), r01, r02, r12};
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        Colour t[3] = {pool[rng() % pool.size()], pool[rng() % pool.size()], pool[rng() % pool.size()]};
        bool base = is_forbidden_triple(sig, t[0], t[1], t[2]);
        int perm[3] = {0, 1, 2};
        std::sort(perm, perm + 3);
        do {
            CHECK(is_forbidden_triple(sig, t[perm[0]], t[perm[1]], t[perm[2]]) == base);
        } while (std::next_permutation(perm, perm + 3));
    }
}

TEST_CASE("forbidden triples, order-sensitive regime") {
    auto sig = order_sig();
    auto r = Colour::red(1, 2);
    // pairing is positional: tints (-1, -2) against indices (1, 2) reverses the order
    CHECK(is_forbidden_triple(sig, Colour::green0(-1), Colour::green0(-2), r));
    CHECK_FALSE(is_forbidden_triple(sig, Colour::green0(-2), Colour::green0(-1), r));
    // equal tints need equal red indices
    CHECK(is_forbidden_triple(sig, Colour::green0(-1), Colour::green0(-1), r));
    // rotations keep the reading
    CHECK(is_forbidden_triple(sig, Colour::green0(-2), r, Colour::green0(-1)));
    CHECK_FALSE(is_forbidden_triple(sig, Colour::green0(-1), r, Colour::green0(-2)));
}

TEST_CASE("coloured graph validity") {
    auto sig = standard_rainbow_signature(3);
    std::set<int> full(sig.green_zero.begin(), sig.green_zero.end());

    ColouredGraph allw(3, 3);
    for (int u = 0; u < 3; ++u)
        for (int v = u + 1; v < 3; ++v) allw.set_edge(u, v, Colour::white(0));
    ColouredGraph incomplete = allw;
    incomplete.edges[ColouredGraph::slot(0, 2)].reset();
    CHECK_THROWS_AS(check_coloured_graph(sig, incomplete), std::invalid_argument);
    CHECK_FALSE(check_coloured_graph(sig, allw).ok); // green-free pairs need yellows
    for (int u = 0; u < 3; ++u)
        for (int v = u + 1; v < 3; ++v) allw.set_hyper({u, v}, full);
    CHECK(check_coloured_graph(sig, allw).ok);

    ColouredGraph badtri = allw;
    badtri.set_edge(0, 1, Colour::green(1));
    badtri.set_edge(0, 2, Colour::green(1));
    badtri.set_edge(1, 2, Colour::white(1));
    badtri.hyper.clear();
    badtri.set_hyper({1, 2}, full);
    auto rep = check_coloured_graph(sig, badtri);
    CHECK_FALSE(rep.ok);
    CHECK(rep.violation.find("forbidden triangle") != std::string::npos);
    CHECK(rep.witness == std::vector<int>{0, 1, 2});

    ColouredGraph greeny = allw;
    greeny.set_edge(0, 1, Colour::green0(0)); // now {0,1} may not carry yellow
    CHECK_FALSE(check_coloured_graph(sig, greeny).ok);
    greeny.hyper.erase(std::vector<int>{0, 1});
    CHECK(check_coloured_graph(sig, greeny).ok);
}

TEST_CASE("cone detection and the tint rule") {
    auto sig = standard_rainbow_signature(3);
    std::set<int> full(sig.green_zero.begin(), sig.green_zero.end());

    // the opening configuration: base (0,1), apex 2, tint 0
    ColouredGraph g(3, 3);
    g.set_edge(0, 1, Colour::white(0));
    g.set_edge(0, 2, Colour::green0(0));
    g.set_edge(1, 2, Colour::green(1));
    g.set_hyper({0, 1}, full);
    auto cones = find_cones(g);
    REQUIRE(cones.size() == 1);
    CHECK(cones[0].base == std::vector<int>{0, 1});
    CHECK(cones[0].apex == 2);
    CHECK(cones[0].tint == 0);
    CHECK(check_coloured_graph(sig, g).ok);

    g.set_hyper({0, 1}, std::set<int>{1, 2}); // tint 0 missing from the base
    auto rep = check_coloured_graph(sig, g);
    CHECK_FALSE(rep.ok);
    CHECK(rep.violation.find("cone tint") != std::string::npos);

    ColouredGraph allw(3, 3);
    for (int u = 0; u < 3; ++u)
        for (int v = u + 1; v < 3; ++v) allw.set_edge(u, v, Colour::white(0));
    CHECK(find_cones(allw).empty());

    // two cones on the same base with different tints, both reported
    ColouredGraph two(3, 4);
    two.set_edge(0, 1, Colour::white(0));
    two.set_edge(0, 2, Colour::green0(2));
    two.set_edge(1, 2, Colour::green(1));
    two.set_edge(0, 3, Colour::green0(4));
    two.set_edge(1, 3, Colour::green(1));
    two.set_edge(2, 3, Colour::red(0, 1));
    two.set_hyper({0, 1}, full);
    two.set_hyper({2, 3}, full);
    cones = find_cones(two);
    REQUIRE(cones.size() == 2);
    std::set<int> tints = {cones[0].tint, cones[1].tint};
    CHECK(tints == std::set<int>{2, 4});
    CHECK(cones[0].base == cones[1].base);
    CHECK(check_coloured_graph(sig, two).ok);
}

TEST_CASE("atom enumeration matches the graph-level oracle") {
    auto rs = enumerate_atoms(small_sig());
    CHECK(rs.atoms() == 491);
    auto oracle = graph_level_atoms(rs);
    REQUIRE(oracle.size() == rs.atoms());
    CHECK(std::equal(oracle.begin(), oracle.end(), rs.codes.begin()));

    // node ceiling and budget
    auto flat = enumerate_atoms(small_sig(), 2);
    CHECK(flat.atoms() == 25); // 1 one-block atom + 3 partitions x 8 labelled edges
    CHECK_THROWS_AS(enumerate_atoms(small_sig(), 3, 10), std::runtime_error);
}

TEST_CASE("canonicalization: equivalent surjections give the same atom") {
    auto rs = enumerate_atoms(small_sig());
    std::set<int> full = {0};
    ColouredGraph g(3, 3);
    g.set_edge(0, 1, Colour::red(0, 1));
    g.set_edge(0, 2, Colour::green0(0));
    g.set_edge(1, 2, Colour::green(1));
    g.set_hyper({0, 1}, full);
    REQUIRE(check_coloured_graph(rs.sig, g).ok);

    std::mt19937 rng(11);
    std::vector<int> a = {0, 1, 2};
    for (int trial = 0; trial < 30; ++trial) {
        std::shuffle(a.begin(), a.end(), rng);
        std::vector<int> perm = {0, 1, 2};
        std::shuffle(perm.begin(), perm.end(), rng);
        ColouredGraph h(3, 3);
        for (int u = 0; u < 3; ++u)
            for (int v = u + 1; v < 3; ++v) h.set_edge(perm[u], perm[v], *g.edge(u, v));
        for (auto& [t, S] : g.hyper) h.set_hyper({perm[t[0]], perm[t[1]]}, S);
        std::vector<int> b(3);
        for (int t = 0; t < 3; ++t) b[t] = perm[a[t]];
        CHECK(atom_of_surjection(rs, g, a) == atom_of_surjection(rs, h, b));
    }
    CHECK_THROWS_AS(atom_of_surjection(rs, g, {0, 0, 1}), std::invalid_argument);
}

TEST_CASE("relations on the small structure") {
    auto rs = enumerate_atoms(small_sig());
    const auto& at = *rs.at;
    const std::size_t k = rs.atoms();

    // E is transitive across indices and matches the block partition
    for (std::size_t a = 0; a < k; ++a)
        if (at.E[0][1].test(a) && at.E[1][2].test(a)) CHECK(at.E[0][2].test(a));

    // cylindrifier accessibility equals structural off-index agreement
    std::vector<RainbowAtom> dec(k);
    for (std::size_t a = 0; a < k; ++a) dec[a] = rs.decode(rs.codes[a]);
    for (int i = 0; i < 3; ++i)
        for (std::size_t a = 0; a < k; a += 7)
            for (std::size_t b = 0; b < k; b += 5)
                CHECK(at.T[i].related(a, b) == off_index_equal(rs, dec[a], dec[b], i));

    // the one-block atom is code 0; re-placing index 2 reaches it plus every
    // two-block atom splitting index 2 off: 1 + 8 atoms
    CHECK(dec[0].m == 1);
    auto alg = complex_algebra(at);
    CHECK(alg.cyl(2, Bits::single(k, 0)).count() == 9);

    auto rep = check_axioms(alg, CheckLevel::atom_level);
    for (auto& v : rep.items) {
        INFO(v.axiom << " [" << v.mode << "] " << v.witness);
        CHECK(v.pass); // axioms (1)-(7) and the diagonal-functionality axiom (8)
    }
}

TEST_CASE("standard structure at n = 3") {
    auto rs = build_finite_rainbow(3);
    CHECK(rs.atoms() == 3881555); // frozen on first derivation
    CHECK(rs.sig.green_zero.size() == 5);
    CHECK(check_axioms(complex_algebra(*rs.at), CheckLevel::atom_level).all_pass());
    CHECK_THROWS_AS(build_finite_rainbow(2), std::invalid_argument);
}

TEST_CASE("blow up and blur") {
    auto rs = enumerate_atoms(small_sig());
    CHECK_THROWS_AS(blow_up_and_blur(rs, 0), std::invalid_argument);

    auto b1 = blow_up_and_blur(rs, 1);
    CHECK(b1.structure.atoms() == rs.atoms()); // relabelling r <-> r^0
    for (std::size_t d = 0; d < b1.structure.atoms(); ++d) CHECK(b1.original[d] == d);

    auto b2 = blow_up_and_blur(rs, 2);
    auto b3 = blow_up_and_blur(rs, 3);
    CHECK(b2.structure.atoms() == 923);
    CHECK(b3.structure.atoms() == 1499);
    CHECK(rs.atoms() < b2.structure.atoms());
    CHECK(b2.structure.atoms() < b3.structure.atoms());

    // original_of is a retraction: red-free atoms are their own originals in
    // the L = 1 sense, and stripping a copy's superscripts lands on its original
    for (std::size_t d = 0; d < b2.structure.atoms(); ++d) {
        RainbowAtom a = b2.structure.decode(b2.structure.codes[d]);
        bool red = false;
        for (int e : a.edge)
            if (b2.structure.colours[e].is_red()) red = true;
        CHECK(red == (bool)b2.red[d]);
        for (int& e : a.edge) {
            Colour c = b2.structure.colours[e];
            if (c.is_red()) c.sup = -1;
            e = rs.colour_id(c);
        }
        CHECK(rs.index_of(rs.encode(a)) == b2.original[d]);
    }
}

TEST_CASE("theta embedding on the small structure") {
    auto rs = enumerate_atoms(small_sig());
    for (int L : {2, 3}) {
        auto blown = blow_up_and_blur(rs, L);
        auto th = theta_embedding(rs, blown);
        INFO("L=" << L << " " << th.failure);
        CHECK(th.ok);
        CHECK_FALSE(th.truncation_artifact);
        CHECK(th.src_atoms == rs.atoms());
        CHECK(th.dst_atoms == blown.structure.atoms());
        // with a single red pair colour no all-red triangle is consistent, so
        // the copies of an atom multiply freely over its red edges
        std::size_t total = 0;
        for (std::size_t a = 0; a < rs.atoms(); ++a) {
            int nred = red_edges_of(rs, rs.decode(rs.codes[a]));
            std::size_t expect = 1;
            for (int t = 0; t < nred; ++t) expect *= (std::size_t)L;
            CHECK(th.copy_count[a] == expect);
            CHECK((th.copy_count[a] == 1) == (nred == 0));
            total += th.copy_count[a];
        }
        CHECK(total == blown.structure.atoms());
    }
}

TEST_CASE("chromatic number") {
    CHECK(chromatic_number(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}) == 4); // K_4
    CHECK(chromatic_number(5, {}) == 1);
    CHECK(chromatic_number(0, {}) == 0);
    CHECK(chromatic_number(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}) == 3);          // C_5
    CHECK(chromatic_number(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}}) ==
          2); // K_{3,3}
    CHECK_THROWS_AS(chromatic_number(10, {}, 5), std::invalid_argument);
    CHECK_THROWS_AS(chromatic_number(3, {{0, 0}}), std::invalid_argument);
}
