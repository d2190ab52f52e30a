#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cylgames/representability.hpp>

using namespace cyl;

namespace {

/// Two atoms over a one-class frame: the diagonal atom and one off-diagonal
/// atom, with both cylindrifiers total.
AtomStructure pair2() {
    AtomStructure at;
    at.sig = ca_signature(2);
    at.atoms = 2;
    Bits diag(2);
    diag.set(0);
    at.E.assign(2, std::vector<Bits>(2, Bits::ones(2)));
    at.E[0][1] = diag;
    at.E[1][0] = diag;
    at.T.push_back(Rel::from_classes({0, 0}, 1));
    at.T.push_back(Rel::from_classes({0, 0}, 1));
    at.validate();
    return at;
}

/// Three atoms over a one-class frame: the diagonal atom and two
/// off-diagonal atoms that must both appear in every row and column.
AtomStructure triple3() {
    AtomStructure at;
    at.sig = ca_signature(2);
    at.atoms = 3;
    Bits diag(3);
    diag.set(0);
    at.E.assign(2, std::vector<Bits>(2, Bits::ones(3)));
    at.E[0][1] = diag;
    at.E[1][0] = diag;
    at.T.push_back(Rel::from_classes({0, 0, 0}, 1));
    at.T.push_back(Rel::from_classes({0, 0, 0}, 1));
    at.validate();
    return at;
}

/// Six atoms from a two-coloured base: (colour of x, colour of y, equality
/// flag), with consistent diagonal (equal flag forces equal colours).
/// Atom ids: 0 = (0,0,eq), 1 = (1,1,eq), 2 = (0,0,ne), 3 = (0,1,ne),
/// 4 = (1,0,ne), 5 = (1,1,ne).
AtomStructure coloured6() {
    AtomStructure at;
    at.sig = ca_signature(2);
    at.atoms = 6;
    Bits diag(6);
    diag.set(0);
    diag.set(1);
    at.E.assign(2, std::vector<Bits>(2, Bits::ones(6)));
    at.E[0][1] = diag;
    at.E[1][0] = diag;
    // T0 erases x: class = colour of y;  T1 erases y: class = colour of x
    at.T.push_back(Rel::from_classes({0, 1, 0, 1, 0, 1}, 2));
    at.T.push_back(Rel::from_classes({0, 1, 0, 0, 1, 1}, 2));
    at.validate();
    return at;
}

/// Atom structure from test_games whose complex algebra loses to the
/// demanding player: it fails the diagonal-composition axiom, so the
/// representation search must reject it at the precondition.
AtomStructure doomed2() {
    AtomStructure at;
    at.sig = ca_signature(2);
    at.atoms = 3;
    Bits diag(3);
    diag.set(0);
    at.E.assign(2, std::vector<Bits>(2, Bits::ones(3)));
    at.E[0][1] = diag;
    at.E[1][0] = diag;
    at.T.push_back(Rel::from_classes({0, 0, 1}, 2));
    at.T.push_back(Rel::from_classes({0, 0, 0}, 1));
    at.validate();
    return at;
}

RainbowSignature small_sig() {
    RainbowSignature sig;
    sig.n = 3;
    sig.green_zero = {0};
    sig.red_index = {0, 1};
    return sig;
}

/// Independent one-point oracle: a representation on a single base point
/// exists iff the algebra has exactly one atom and that atom sits below every
/// diagonal and is its own only cylindrifier neighbour.
bool one_point_representable(const FiniteAlgebra& A) {
    const AtomStructure& at = *A.at;
    if (at.atoms != 1) return false;
    for (int i = 0; i < A.sig.n; ++i)
        for (int j = 0; j < A.sig.n; ++j)
            if (!at.E[i][j].test(0)) return false;
    for (int i = 0; i < A.sig.n; ++i)
        if (!at.T[i].related(0, 0)) return false;
    return true;
}

} // namespace

TEST_CASE("classical search recovers the full pair algebra over a two-point base") {
    FiniteAlgebra A = complex_algebra(cube_frame(2, 2));
    auto res = search_representation(A, 2);
    REQUIRE(res.rep.has_value());
    CHECK(res.rep->kind == Representation::Kind::classical);
    CHECK(res.rep->U == 2);
    // the lexicographically least labelling is the identity: the found map is
    // a bijection onto the concrete algebra it was presented from
    for (std::size_t idx = 0; idx < res.rep->tuples(); ++idx)
        CHECK(res.rep->label[idx] == idx);
    auto chk = verify_representation(A, *res.rep);
    CHECK(chk.ok);
    CHECK(chk.mode == "all elements");
    CHECK(check_complete(A, *res.rep));
}

TEST_CASE("one-atom algebra represents on a single point") {
    FiniteAlgebra A = complex_algebra(cube_frame(2, 1));
    auto res = search_representation(A, 2);
    REQUIRE(res.rep.has_value());
    CHECK(res.rep->U == 1);
    CHECK(res.rep->label == std::vector<std::uint32_t>{0});
    CHECK(one_point_representable(A));
    CHECK(check_complete(A, *res.rep));
}

TEST_CASE("axiom-suite failures are rejected before searching") {
    // d_ii != 1: shrink a reflexive diagonal
    AtomStructure bad = pair2();
    Bits e(2);
    e.set(0);
    bad.E[0][0] = e;
    CHECK_THROWS_WITH_AS(search_representation(complex_algebra(bad), 2),
                         doctest::Contains("axiom suite failed"), std::invalid_argument);

    // diagonal composition fails on the doomed fixture (an isolated atom
    // unreachable from the diagonal), so it is rejected, not searched
    CHECK_THROWS_WITH_AS(search_representation(complex_algebra(doomed2()), 3),
                         doctest::Contains("axiom suite failed"), std::invalid_argument);
}

TEST_CASE("non-discrete interior operators are unsupported") {
    AtomStructure at = cube_frame(2, 2, true, true);
    at.In[0] = Rel::from_classes({0, 0, 1, 1}, 2);
    FiniteAlgebra A = complex_algebra(at);
    CHECK_THROWS_WITH_AS(search_representation(A, 2), doctest::Contains("discrete interior"),
                         std::invalid_argument);

    Representation rep;
    rep.n = 2;
    rep.U = 2;
    rep.label = {0, 1, 2, 3};
    auto chk = verify_representation(A, rep);
    CHECK_FALSE(chk.ok);
    CHECK(chk.reason.find("interior") != std::string::npos);
}

TEST_CASE("exhaustion is an honest bound and budgets are honoured") {
    FiniteAlgebra A = complex_algebra(pair2());
    auto res = search_representation(A, 1);
    CHECK_FALSE(res.rep.has_value());
    CHECK(res.umax == 1);
    CHECK_FALSE(one_point_representable(A)); // independent one-point oracle agrees

    CHECK_THROWS_AS(search_representation(complex_algebra(cube_frame(2, 3)), 3, 5), BudgetExceeded);
}

TEST_CASE("ten-algebra corpus: search outcomes survive discrete topologizing") {
    struct Entry {
        const char* name;
        FiniteAlgebra alg;
        int umax;
        int expect_u; // 0 = exhausted
    };
    std::vector<Entry> corpus;
    corpus.push_back({"cube 2/1", complex_algebra(cube_frame(2, 1)), 2, 1});
    corpus.push_back({"cube 2/2", complex_algebra(cube_frame(2, 2)), 2, 2});
    corpus.push_back({"cube 2/3", complex_algebra(cube_frame(2, 3)), 3, 3});
    corpus.push_back({"cube 3/2", complex_algebra(cube_frame(3, 2)), 2, 2});
    corpus.push_back({"cube 2/2 no transpositions", complex_algebra(cube_frame(2, 2, false)), 2, 2});
    corpus.push_back({"cube 3/2 no transpositions", complex_algebra(cube_frame(3, 2, false)), 2, 2});
    corpus.push_back({"pair algebra", complex_algebra(pair2()), 2, 2});
    corpus.push_back({"two off-diagonal atoms", complex_algebra(triple3()), 3, 3});
    corpus.push_back({"cube 2/4", complex_algebra(cube_frame(2, 4)), 4, 4});
    corpus.push_back({"two-coloured base", complex_algebra(coloured6()), 4, 4});
    REQUIRE(corpus.size() == 10);

    for (auto& e : corpus) {
        INFO(e.name);
        auto res = search_representation(e.alg, e.umax);
        if (e.expect_u == 0) {
            CHECK_FALSE(res.rep.has_value());
        } else {
            REQUIRE(res.rep.has_value());
            CHECK(res.rep->U == e.expect_u);
            CHECK(verify_representation(e.alg, *res.rep).ok);
            CHECK(check_complete(e.alg, *res.rep));
        }
        // identity interiors change nothing the search can see
        auto topo = discrete_topologize(e.alg);
        auto res2 = search_representation(topo, e.umax);
        CHECK(res.rep.has_value() == res2.rep.has_value());
        if (res.rep && res2.rep) {
            CHECK(res.rep->U == res2.rep->U);
            CHECK(res.rep->label == res2.rep->label);
        }
    }

    // frozen lex-least labellings for the hand-made fixtures
    CHECK(search_representation(complex_algebra(pair2()), 2).rep->label ==
          std::vector<std::uint32_t>{0, 1, 1, 0});
    CHECK(search_representation(complex_algebra(triple3()), 3).rep->label ==
          std::vector<std::uint32_t>{0, 1, 2, 2, 0, 1, 1, 2, 0});
}

TEST_CASE("relativized search coincides with classical search on the corpus") {
    std::vector<std::pair<FiniteAlgebra, int>> corpus = {
        {complex_algebra(cube_frame(2, 1)), 1}, {complex_algebra(cube_frame(2, 2)), 2},
        {complex_algebra(cube_frame(3, 2)), 2}, {complex_algebra(pair2()), 2},
        {complex_algebra(triple3()), 3},        {complex_algebra(coloured6()), 4},
    };
    for (auto& [alg, umax] : corpus) {
        auto cls = search_representation(alg, umax);
        auto sq = search_k_square(alg, alg.sig.n + 2, umax);
        REQUIRE(cls.rep.has_value() == sq.rep.has_value());
        if (cls.rep) {
            CHECK(sq.rep->kind == Representation::Kind::k_square);
            CHECK(cls.rep->U == sq.rep->U);
            // full labellings come first in the search order, so the
            // relativized search lands on the classical labelling
            CHECK(cls.rep->label == sq.rep->label);
            CHECK(verify_representation(alg, *sq.rep).ok);
        }
    }
    // one-element base is wide-clique representable for the two-element algebra
    auto tiny = search_k_square(complex_algebra(cube_frame(2, 1)), 3, 1);
    REQUIRE(tiny.rep.has_value());
    CHECK(tiny.rep->U == 1);

    CHECK_THROWS_AS(search_k_square(complex_algebra(pair2()), 2, 2), std::invalid_argument);
}

TEST_CASE("relativized search on a blown-up structure exhausts small bases honestly") {
    auto blown = blow_up_and_blur(enumerate_atoms(small_sig()), 2);
    FiniteAlgebra A = complex_algebra(blown.structure.at);
    auto res = search_k_square(A, 6, 2);
    CHECK_FALSE(res.rep.has_value());
    CHECK(res.umax == 2); // an honest bound, not a non-representability claim
}

TEST_CASE("clique machinery on hand-built labellings") {
    // relativized unit over three points: only the pair {1,2} is never
    // jointly covered by a labelled tuple
    Representation rel;
    rel.kind = Representation::Kind::k_square;
    rel.n = 2;
    rel.U = 3;
    rel.k = 3;
    const std::uint32_t out = Representation::outside;
    rel.label = {0, 1, 1, 1, 0, out, 1, out, 0};
    FiniteAlgebra P = complex_algebra(pair2());
    CHECK(verify_representation(P, rel).ok);

    auto g = gaifman(rel, 2);
    CHECK(g.edges == std::set<std::vector<int>>{{0, 1}, {0, 2}});
    CHECK(g.is_clique({0, 1}));
    CHECK_FALSE(g.is_clique({1, 2}));
    CHECK(g.is_clique({1})); // below the hyperedge arity, vacuously
    // triples avoiding 1 and 2 together: 27 - 12 of them
    CHECK(clique_tuples(g, 3).size() == 15);

    // labels only on the diagonal: no two points are jointly covered
    Representation diag_only;
    diag_only.kind = Representation::Kind::k_square;
    diag_only.n = 2;
    diag_only.U = 2;
    diag_only.k = 3;
    diag_only.label = {0, out, out, 0};
    auto gd = gaifman(diag_only, 2);
    CHECK(gd.edges.empty());
    CHECK(clique_tuples(gd, 2) == std::vector<std::vector<int>>{{0, 0}, {1, 1}});

    // hyperedges grow with the labelled set
    Representation full;
    full.n = 2;
    full.U = 3;
    full.label = {0, 1, 1, 1, 0, 1, 1, 1, 0};
    auto gf = gaifman(full, 2);
    CHECK(gf.edges.size() == 3);
    for (auto& e : g.edges) CHECK(gf.edges.count(e));
    for (auto& e : gd.edges) CHECK(g.edges.count(e));

    CHECK_THROWS_AS(clique_tuples(g, 1), std::invalid_argument); // width below arity
    CHECK_THROWS_AS(gaifman(rel, 3), std::invalid_argument);     // arity above dimension
}

TEST_CASE("punctured labellings fail verification upstream of completeness") {
    FiniteAlgebra A = complex_algebra(cube_frame(2, 2));
    auto res = search_representation(A, 2);
    REQUIRE(res.rep.has_value());
    Representation punctured = *res.rep;
    punctured.label[1] = Representation::outside;
    CHECK_FALSE(verify_representation(A, punctured).ok);
    CHECK_THROWS_AS(check_complete(A, punctured), std::invalid_argument);
}

TEST_CASE("guarded quantifiers commute on the checked fragment") {
    // a full labelling makes every wide tuple a clique, so guarded
    // quantification is plain quantification and must commute
    FiniteAlgebra A = complex_algebra(cube_frame(2, 2));
    auto sq = search_k_square(A, 4, 2);
    REQUIRE(sq.rep.has_value());
    auto flat = check_k_flat(A, *sq.rep);
    CHECK(flat.pass);
    CHECK(flat.fragment == "atomic formulas and single-quantifier compounds");

    // a single conflicting pair in the base is too sparse to separate the
    // two quantifier orders: every blocked witness is blocked both ways
    Representation rel;
    rel.kind = Representation::Kind::k_square;
    rel.n = 2;
    rel.U = 3;
    rel.k = 3;
    const std::uint32_t out = Representation::outside;
    rel.label = {0, 1, 1, 1, 0, out, 1, out, 0};
    FiniteAlgebra P = complex_algebra(pair2());
    auto flat2 = check_k_flat(P, rel);
    CHECK(flat2.pass);

    CHECK_THROWS_AS(check_k_flat(A, *search_representation(A, 2).rep), std::invalid_argument);
}

TEST_CASE("nonmembership certificates from the network solver") {
    // the doomed fixture fails the axiom suite yet plays the game fine:
    // certificates are about the game, not the variety axioms
    auto cert = nonmembership_certificate(doomed2(), 3, 2);
    CHECK(cert.issued);
    CHECK(cert.n == 2);
    CHECK(cert.m == 3);
    CHECK(cert.rounds == 2);
    CHECK(cert.claim.find("3-flat") != std::string::npos);
    CHECK_FALSE(cert.checksum.empty());

    // identical inputs give an identical signed record
    auto again = nonmembership_certificate(doomed2(), 3, 2);
    CHECK(again.checksum == cert.checksum);
    CHECK(again.claim == cert.claim);

    // the responder survives on a concrete cube: no certificate
    auto none = nonmembership_certificate(cube_frame(2, 2), 2, 4);
    CHECK_FALSE(none.issued);
    CHECK(none.reason.find("survives") != std::string::npos);
    CHECK(none.checksum.empty());

    // an exhausted solver never certifies
    auto starved = nonmembership_certificate(doomed2(), 3, 2, 1);
    CHECK_FALSE(starved.issued);
    CHECK(starved.reason.find("inconclusive") != std::string::npos);
}

TEST_CASE("nonmembership certificates from the graph solver and scripts") {
    RainbowSignature sig = small_sig();
    RainbowStructure rs = enumerate_atoms(sig);
    std::vector<std::uint64_t> hints = {
        rs.encode(atom_of_surjection(rs, cyl::detail::cone_opening(sig), {0, 1, 2}))};
    auto cert = nonmembership_certificate(rs, 5, 3, &hints, false);
    CHECK(cert.issued);
    CHECK(cert.n == 3);
    CHECK(cert.m == 5);
    CHECK(cert.rounds == 3);

    // verified script in the order regime
    RainbowSignature osig = ordered_rainbow_signature(3, 9, 4);
    ForallScript script = scripted_decreasing_strategy(osig, 6);
    GameConfig cfg{GameConfig::Kind::Fm, 6, 10, 0};
    auto scert = nonmembership_certificate(cfg, osig, script, 10, (std::size_t)1 << 28);
    CHECK(scert.issued);
    CHECK(scert.m == 6);
    CHECK(scert.rounds >= 3);
    CHECK(scert.rounds <= 10);
    CHECK(scert.game.find("scripted") != std::string::npos);

    // certificates are about the reuse game only
    GameConfig gm{GameConfig::Kind::Gm, 6, 10, 0};
    CHECK_THROWS_AS(nonmembership_certificate(gm, osig, script, 10), std::invalid_argument);

    // a script that cannot win yields no certificate
    ForallScript idle = script;
    idle.demand = [](const Board&, int) -> std::optional<GraphDemand> { return std::nullopt; };
    auto none = nonmembership_certificate(cfg, osig, idle, 3);
    CHECK_FALSE(none.issued);
    CHECK(none.reason.find("not certified") != std::string::npos);
}
