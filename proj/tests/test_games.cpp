#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <vector>

#include "cylgames/games.hpp"

using namespace cyl;

namespace {

/// One tint, two red indices: the smallest interesting rainbow alphabet.
RainbowSignature small_sig() {
    RainbowSignature sig;
    sig.n = 3;
    sig.green_zero = {0};
    sig.red_index = {0, 1};
    return sig;
}

/// Dimension-2 structure where every initial network dies to one demand:
/// atom 2 is cut off from the diagonal atom under T[0], so any demand that
/// pins atom 2 next to a diagonal tuple has no completion.
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

/// Network over a cube frame induced by a point map: the label of a tuple is
/// the atom of the pointwise image.
Network map_network(int n, int u, std::vector<int> ids, const std::vector<int>& vals) {
    Network N;
    N.n = n;
    N.nodes = std::move(ids);
    N.label.assign(N.tuples(), 0);
    std::vector<int> t(n, 0);
    do {
        std::size_t a = 0;
        for (int i = 0; i < n; ++i) a = a * (std::size_t)u + (std::size_t)vals[t[i]];
        N.label[N.idx(t)] = a;
    } while (cyl::detail::next_tuple(t, (int)N.count()));
    return N;
}

GameConfig cfg_of(GameConfig::Kind kind, int m, int rounds, int pebbles = 0) {
    GameConfig c;
    c.kind = kind;
    c.m = m;
    c.rounds = rounds;
    c.pebbles = pebbles;
    return c;
}

} // namespace

TEST_CASE("game configurations reject degenerate parameters") {
    CHECK_THROWS_AS(cfg_of(GameConfig::Kind::Fm, 3, 0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(cfg_of(GameConfig::Kind::Gm, 0, 2).validate(), std::invalid_argument);
    CHECK_THROWS_AS(cfg_of(GameConfig::Kind::EF, 0, 2, 0).validate(), std::invalid_argument);
    CHECK_NOTHROW(cfg_of(GameConfig::Kind::Gk, 0, 1).validate());
}

TEST_CASE("pebble game separates complete graphs at exactly one extra round") {
    for (int n = 2; n <= 4; ++n) {
        EFGraph big = EFGraph::complete(n + 1);
        EFGraph small = EFGraph::complete(n);
        INFO("n = " << n);
        CHECK(ef_solve(big, small, n + 1, n + 1) == Player::forall);
        CHECK(ef_solve(big, small, n + 1, n) == Player::exists);
    }
}

TEST_CASE("pebble game is reflexive and rejects malformed inputs") {
    for (int m = 2; m <= 5; ++m)
        CHECK(ef_solve(EFGraph::complete(m), EFGraph::complete(m), m, 6) == Player::exists);

    EFGraph path;
    path.size = 4;
    path.adj.assign(4, std::vector<char>(4, 0));
    for (int i = 0; i + 1 < 4; ++i) path.adj[i][i + 1] = path.adj[i + 1][i] = 1;
    CHECK(ef_solve(path, path, 3, 5) == Player::exists);

    CHECK_THROWS_AS(ef_solve(path, path, 0, 3), std::invalid_argument);
    EFGraph loop = EFGraph::complete(2);
    loop.adj[0][0] = 1;
    CHECK_THROWS_AS(ef_solve(loop, loop, 2, 2), std::invalid_argument);
    EFGraph askew = EFGraph::complete(3);
    askew.adj[0][1] = 0;
    CHECK_THROWS_AS(ef_solve(askew, askew, 2, 2), std::invalid_argument);
}

TEST_CASE("network coherence over the three-dimensional cube frame") {
    AtomStructure at = cube_frame(3, 2);

    Network one;
    one.n = 3;
    one.nodes = {0};
    for (std::size_t a = 0; a < at.atoms; ++a) {
        one.label = {a};
        bool constant = a == 0 || a == 7; // equal digits
        CHECK(check_network(at, one).ok == constant);
    }
    one.label = {1};
    auto rep = check_network(at, one);
    CHECK_FALSE(rep.ok);
    CHECK(rep.violation.find("repeated coordinates") != std::string::npos);

    Network two = map_network(3, 2, {0, 1}, {0, 1});
    CHECK(check_network(at, two).ok);
    Network renamed = map_network(3, 2, {3, 5}, {0, 1});
    CHECK(check_network(at, renamed).ok);

    Network broken = two;
    broken.label[broken.idx({1, 1, 1})] = 0; // no longer the image of a map
    auto rep2 = check_network(at, broken);
    CHECK_FALSE(rep2.ok);
    CHECK(rep2.violation.find("cylindrifier") != std::string::npos);
}

TEST_CASE("demand enumeration distinguishes the reuse and no-reuse games") {
    AtomStructure at = cube_frame(2, 2);
    Network N = map_network(2, 2, {0, 1, 2}, {0, 1, 0});

    auto fm = net_legal_demands(cfg_of(GameConfig::Kind::Fm, 3, 2), at, N);
    CHECK_FALSE(fm.empty());
    for (const auto& d : fm) {
        CHECK(N.position(d.k) >= 0); // only recycled nodes: the budget is full
        CHECK(std::find(d.face.begin(), d.face.end(), d.k) == d.face.end());
    }
    auto gm = net_legal_demands(cfg_of(GameConfig::Kind::Gm, 3, 2), at, N);
    CHECK(gm.empty());

    auto gk = net_legal_demands(cfg_of(GameConfig::Kind::Gk, 0, 2), at, N);
    bool has_fresh = false;
    for (const auto& d : gk) has_fresh = has_fresh || N.position(d.k) < 0;
    CHECK(has_fresh);
}

TEST_CASE("responses to a demand are exactly the coherent extensions") {
    AtomStructure at = cube_frame(3, 2);
    Network two = map_network(3, 2, {0, 1}, {0, 1});
    NetDemand d;
    d.face = {0, 1};
    d.l = 2;
    d.k = 2;
    d.b = 3; // digits (0,1,1)

    std::size_t budget = 1 << 20;
    std::vector<Network> got;
    net_responses(at, two, d, budget, [&](const Network& M) {
        got.push_back(M);
        return false;
    });
    REQUIRE(got.size() == 1);
    const Network& M = got[0];
    CHECK(check_network(at, M).ok);
    std::vector<int> pos = {M.position(0), M.position(1), M.position(2)};
    CHECK(M.label[M.idx(pos)] == 3);
    // the unique extension is the point map sending the new node to 1
    CHECK(M.label == map_network(3, 2, {0, 1, 2}, {0, 1, 1}).label);
}

TEST_CASE("network games over cube frames are always survivable") {
    for (auto kind : {GameConfig::Kind::Gm, GameConfig::Kind::Fm}) {
        auto r3 = solve(cfg_of(kind, 3, 3), cube_frame(3, 2));
        CHECK(r3.winner == Player::exists);
        CHECK(r3.conclusive);
        auto r2 = solve(cfg_of(kind, 2, 4), cube_frame(2, 2));
        CHECK(r2.winner == Player::exists);
        CHECK(r2.conclusive);
    }
}

TEST_CASE("network game on the doomed structure") {
    AtomStructure at = doomed2();

    // one round: the opponent cannot even realise the isolated atom
    auto r1 = solve(cfg_of(GameConfig::Kind::Gm, 3, 1), at);
    CHECK(r1.winner == Player::forall);
    CHECK(r1.rounds == 1);
    CHECK(r1.atom == 2);

    // two rounds: every initial network (they all contain the diagonal atom)
    // loses to one demand
    auto r2 = solve(cfg_of(GameConfig::Kind::Gm, 3, 2), at);
    CHECK(r2.winner == Player::forall);
    CHECK(r2.rounds == 2);
    CHECK(r2.atom == 0);

    // more rounds and node reuse keep the verdict (monotonicity)
    CHECK(solve(cfg_of(GameConfig::Kind::Gm, 3, 3), at).winner == Player::forall);
    CHECK(solve(cfg_of(GameConfig::Kind::Fm, 3, 2), at).winner == Player::forall);

    // determinism
    auto again = solve(cfg_of(GameConfig::Kind::Gm, 3, 2), at);
    CHECK(again.winner == r2.winner);
    CHECK(again.rounds == r2.rounds);
    CHECK(again.atom == r2.atom);

    // budget exhaustion is reported, never guessed over
    auto starved = solve(cfg_of(GameConfig::Kind::Gm, 3, 2), at, 1);
    CHECK_FALSE(starved.conclusive);
}

TEST_CASE("hypernetwork validation: short hyperedges and diagonal classes") {
    AtomStructure at = cube_frame(2, 3);

    Hypernetwork H;
    H.net = map_network(2, 3, {0, 1, 2}, {0, 1, 2});
    H.lambda = 0;
    H.maxlen = 3;
    H.hyper[{0, 1, 2}] = 5;
    CHECK(check_hypernetwork(at, H).ok);
    CHECK_FALSE(short_hyperedge(at, H, {0, 1, 2}));
    CHECK(short_hyperedge(at, H, {0, 1}));

    Hypernetwork bad = H;
    bad.hyper[{0, 1}] = 5;
    auto rep = check_hypernetwork(at, bad);
    CHECK_FALSE(rep.ok);
    CHECK(rep.violation.find("short hyperedge") != std::string::npos);

    // nodes 2 and 3 fall in one diagonal class, so hyperedge labels must agree
    // on sequences that differ only by swapping them
    Hypernetwork J;
    J.net = map_network(2, 3, {0, 1, 2, 3}, {0, 1, 2, 2});
    J.lambda = 0;
    J.maxlen = 3;
    J.hyper[{0, 1, 2}] = 7;
    auto rep2 = check_hypernetwork(at, J);
    CHECK_FALSE(rep2.ok);
    CHECK(rep2.violation.find("diagonal-equivalent") != std::string::npos);
    J.hyper[{0, 1, 3}] = 7;
    CHECK(check_hypernetwork(at, J).ok);
}

TEST_CASE("hypernetwork game moves") {
    AtomStructure at = cube_frame(2, 3);
    Hypernetwork full;
    full.net = map_network(2, 3, {0, 1, 2}, {0, 1, 2});
    full.lambda = 0;
    full.maxlen = 3;
    full.hyper[{0, 1, 2}] = 9;

    JState st;
    st.played.push_back(full);

    // identity transformation reproduces the hypernetwork
    JTransformation id;
    id.index = 0;
    id.theta = {{0, 0}, {1, 1}, {2, 2}};
    st = j_game_step(at, st, id);
    CHECK(st.played.back().net.label == full.net.label);
    CHECK(st.played.back().hyperlabel({0, 1, 2}) == 9);

    // renaming transformation relabels nodes and transports hyperedges
    JTransformation ren;
    ren.index = 0;
    ren.theta = {{5, 0}, {7, 1}, {9, 2}};
    st = j_game_step(at, st, ren);
    const Hypernetwork& R = st.played.back();
    CHECK(R.net.nodes == std::vector<int>{5, 7, 9});
    std::vector<int> pos = {R.net.position(5), R.net.position(7)};
    CHECK(R.net.label[R.net.idx(pos)] == 1); // the image of (0,1)
    CHECK(R.hyperlabel({5, 7, 9}) == 9);

    // restrictions to {0,1} and {1,2}, then their amalgam
    JTransformation left;
    left.index = 0;
    left.theta = {{0, 0}, {1, 1}};
    st = j_game_step(at, st, left);
    std::size_t li = st.played.size() - 1;
    JTransformation right;
    right.index = 0;
    right.theta = {{1, 1}, {2, 2}};
    st = j_game_step(at, st, right);
    std::size_t ri = st.played.size() - 1;

    JAmalgamation am;
    am.m_index = li;
    am.n_index = ri;
    am.response = full;
    st = j_game_step(at, st, am);
    CHECK(st.played.back().net.nodes == std::vector<int>{0, 1, 2});

    // disjoint hypernetworks cannot be amalgamated
    JTransformation lone;
    lone.index = 0;
    lone.theta = {{11, 2}};
    st = j_game_step(at, st, lone);
    JAmalgamation bad;
    bad.m_index = li;
    bad.n_index = st.played.size() - 1;
    bad.response = full;
    CHECK_THROWS_AS(j_game_step(at, st, bad), std::invalid_argument);

    // cylindrifier demand: response must carry the demanded atom
    JCylindrifier cy;
    cy.index = li;
    cy.demand.face = {1};
    cy.demand.l = 0;
    cy.demand.k = 2;
    cy.demand.b = 7; // digits (2,1)
    cy.response.net = map_network(2, 3, {0, 1, 2}, {0, 1, 2});
    cy.response.lambda = 0;
    st = j_game_step(at, st, cy);
    CHECK(st.played.back().net.nodes == std::vector<int>{0, 1, 2});

    JCylindrifier wrong = cy;
    wrong.demand.b = 1; // digits (0,1): the response realises 7 instead
    CHECK_THROWS_AS(j_game_step(at, st, wrong), std::invalid_argument);

    JCylindrifier reuse = cy;
    reuse.demand.k = 1; // already present
    CHECK_THROWS_AS(j_game_step(at, st, reuse), std::invalid_argument);
}

TEST_CASE("red composition is positional in the order regime, unordered otherwise") {
    RainbowSignature ord = ordered_rainbow_signature(3, 1, 3);
    // one index map h(a)=0, h(b)=1, h(c)=2 realises all three directed reds
    CHECK_FALSE(cyl::detail::triangle_forbidden(ord, Colour::red(0, 1), Colour::red(0, 2),
                                                Colour::red(1, 2)));
    // reversing the bc pair breaks every such map
    CHECK(cyl::detail::triangle_forbidden(ord, Colour::red(0, 1), Colour::red(0, 2),
                                          Colour::red(2, 1)));

    RainbowSignature plain;
    plain.n = 3;
    plain.green_zero = {0};
    plain.red_index = {0, 1, 2};
    // the same unordered set of pairs composes wherever it is placed
    CHECK_FALSE(cyl::detail::triangle_forbidden(plain, Colour::red(1, 2), Colour::red(0, 1),
                                                Colour::red(0, 2)));
    CHECK(cyl::detail::triangle_forbidden(plain, Colour::red(0, 1), Colour::red(0, 1),
                                          Colour::red(0, 1)));
}

TEST_CASE("board canonicalisation is invariant under renaming, reds flip with it") {
    Board a;
    a.n = 3;
    a.active = {0, 1, 2};
    a.set(0, 1, Colour::red(1, 2));
    a.set(0, 2, Colour::green0(-1));

    // image under 0 -> 2, 1 -> 0, 2 -> 1: the red's endpoints swap order
    Board b;
    b.n = 3;
    b.active = {0, 1, 2};
    b.set(0, 2, Colour::red(2, 1));
    b.set(1, 2, Colour::green0(-1));
    CHECK(board_key(a) == board_key(b));

    // flipping the red without renaming is a genuinely different board
    Board c = a;
    c.set(0, 1, Colour::red(2, 1));
    CHECK(board_key(a) != board_key(c));
}

TEST_CASE("boards and coloured graphs round-trip") {
    ColouredGraph g = cyl::detail::cone_opening(small_sig());
    Board b = board_from_graph(g);
    ColouredGraph h = board_graph(b);
    CHECK(h.nodes == g.nodes);
    for (int v = 0; v < g.nodes; ++v)
        for (int u = 0; u < v; ++u) {
            REQUIRE(h.edge(u, v));
            CHECK(*h.edge(u, v) == *g.edge(u, v));
        }
    CHECK(h.hyper == g.hyper);
}

TEST_CASE("demand legality and reply enumeration on the cone opening") {
    RainbowSignature sig = small_sig();
    GameConfig gm = cfg_of(GameConfig::Kind::Gm, 5, 3);
    GameConfig fm = cfg_of(GameConfig::Kind::Fm, 5, 3);
    Board b = board_from_graph(cyl::detail::cone_opening(sig));

    GraphDemand cone = cyl::detail::cone_demand(sig, 0, 3);
    std::string why;
    CHECK(demand_legal(sig, gm, b, cone, &why));

    GraphDemand onface = cone;
    onface.node = 1;
    CHECK_FALSE(demand_legal(sig, gm, b, onface, &why));

    GraphDemand recycle = cyl::detail::cone_demand(sig, 0, 2);
    CHECK_FALSE(demand_legal(sig, gm, b, recycle, &why)); // no reuse in this game
    CHECK(demand_legal(sig, fm, b, recycle, &why));

    GraphDemand clash = cone;
    clash.edge[0] = Colour::green0(0); // two tinted greens meet the rank-0 white
    clash.edge[1] = Colour::green0(0);
    CHECK_FALSE(demand_legal(sig, gm, b, clash, &why));
    CHECK(why.find("forbidden triangle") != std::string::npos);

    // recycling erases the node's previous labels before the new ones land
    Board rec = apply_demand(b, recycle);
    CHECK(rec.active == std::vector<int>{0, 1, 2});
    CHECK(rec.edge_at(0, 2)->kind == Colour::Kind::green_zero);
    CHECK(rec.edge_at(1, 2)->kind == Colour::Kind::green_rank);

    // with one tint, both apexes answer the same cone, so the apex edge must
    // be the sole red pair
    Board after = apply_demand(b, cone);
    std::size_t budget = 1 << 20;
    std::size_t replies = 0;
    enumerate_replies(sig, after, 3, false, budget, [&](Board& rb) {
        ++replies;
        const Colour* apex = rb.edge_at(2, 3);
        REQUIRE(apex != nullptr);
        CHECK(apex->is_red());
        CHECK(check_coloured_graph(sig, board_graph(rb)).ok);
        return false;
    });
    CHECK(replies > 0);
}

TEST_CASE("graph solver forces the one-tint win and its table replays") {
    RainbowSignature sig = small_sig();
    RainbowStructure rs = enumerate_atoms(sig);
    std::vector<std::uint64_t> hints = {
        rs.encode(atom_of_surjection(rs, cyl::detail::cone_opening(sig), {0, 1, 2}))};

    GameConfig cfg = cfg_of(GameConfig::Kind::Gm, 5, 3);
    auto res = solve(cfg, rs, &hints, false);
    REQUIRE(res.conclusive);
    CHECK(res.winner == Player::forall);
    CHECK(res.rounds == 3);
    REQUIRE(res.has_opening);
    CHECK(res.opening == hints[0]);
    CHECK_FALSE(res.strategy.empty());

    // determinism
    auto again = solve(cfg, rs, &hints, false);
    CHECK(again.winner == res.winner);
    CHECK(again.rounds == res.rounds);
    CHECK(again.opening == res.opening);
    CHECK(again.strategy.size() == res.strategy.size());

    // reuse can only help the demanding player
    auto fm = solve(cfg_of(GameConfig::Kind::Fm, 5, 3), rs, &hints, false);
    CHECK(fm.winner == Player::forall);

    // the recorded table replays to the same certified win
    ForallScript script = script_from_table(cfg, rs, res);
    auto ver = verify_forall_strategy(cfg, sig, script, 3, games_default_budget(), false);
    CHECK(ver.certified);
    CHECK(ver.rounds == 3);

    // budget starvation is inconclusive and keeps no strategy
    auto starved = solve(cfg, rs, &hints, false, 10);
    CHECK_FALSE(starved.conclusive);
    CHECK(starved.strategy.empty());
}

TEST_CASE("cone strategy wins the standard three-dimensional game") {
    ForallScript script = scripted_cone_strategy(3);
    GameConfig cfg = cfg_of(GameConfig::Kind::Fm, 7, 5);
    RainbowSignature sig = standard_rainbow_signature(3);

    // apex-apex edges (both endpoints past the shared base) are forced red
    PlayObserver reds_only = [&](const Board&, const Board& after, int) {
        for (auto& [uv, c] : after.edge)
            if (uv.first >= sig.n - 1 && uv.second >= sig.n - 1 && !c.is_red()) return false;
        return true;
    };
    auto ver = verify_forall_strategy(cfg, sig, script, 5, (std::size_t)1 << 28, true, reds_only);
    INFO(ver.failure);
    REQUIRE(ver.certified);
    CHECK(ver.rounds == 5); // five apexes force two equal reds at a shared vertex

    // against the small alphabet the opening itself is rejected (honest failure)
    auto bad = verify_forall_strategy(cfg, small_sig(), script, 5);
    CHECK_FALSE(bad.certified);
    CHECK(bad.failure.find("opening configuration invalid") != std::string::npos);
}

TEST_CASE("scripts that never win are reported, not certified") {
    RainbowSignature sig = standard_rainbow_signature(3);
    ForallScript idle;
    ColouredGraph g(3, 3);
    for (int v = 0; v < 3; ++v)
        for (int u = 0; u < v; ++u) g.set_edge(u, v, Colour::white(0));
    for (auto& t : std::vector<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}}) g.set_hyper(t, {});
    idle.opening = g;
    idle.demand = [](const Board& b, int) -> std::optional<GraphDemand> {
        GraphDemand d;
        d.face = {0, 1};
        int fresh = 0;
        while (b.is_active(fresh)) ++fresh;
        d.node = fresh;
        d.edge = {Colour::white(0), Colour::white(0)};
        d.hyper[{0, fresh}] = {};
        d.hyper[{1, fresh}] = {};
        return d;
    };
    GameConfig cfg = cfg_of(GameConfig::Kind::Fm, 6, 3);
    auto ver = verify_forall_strategy(cfg, sig, idle, 3);
    CHECK_FALSE(ver.certified);
    CHECK(ver.failure.find("no win within the round bound") != std::string::npos);

    ForallScript illegal = idle;
    illegal.demand = [](const Board&, int) -> std::optional<GraphDemand> {
        GraphDemand d;
        d.face = {0, 1};
        d.node = 1; // sits on its own face
        d.edge = {Colour::white(0), Colour::white(0)};
        return d;
    };
    auto ver2 = verify_forall_strategy(cfg, sig, illegal, 3);
    CHECK_FALSE(ver2.certified);
    CHECK(ver2.failure.find("illegal demand") != std::string::npos);
}

TEST_CASE("decreasing-tint strategy wins the reuse game in the order regime") {
    RainbowSignature sig = ordered_rainbow_signature(3, 9, 4);
    CHECK_THROWS_AS(scripted_decreasing_strategy(sig, 3), std::invalid_argument);

    ForallScript script = scripted_decreasing_strategy(sig, 6);
    GameConfig cfg = cfg_of(GameConfig::Kind::Fm, 6, 10);
    PlayObserver reds_only = [&](const Board&, const Board& after, int) {
        for (auto& [uv, c] : after.edge)
            if (uv.first >= sig.n - 1 && uv.second >= sig.n - 1 && !c.is_red()) return false;
        return true;
    };
    auto ver = verify_forall_strategy(cfg, sig, script, 10, (std::size_t)1 << 28, true, reds_only);
    INFO(ver.failure);
    REQUIRE(ver.certified);
    CHECK(ver.rounds <= 10);
    CHECK(ver.rounds >= 3);
}

TEST_CASE("order-preserving red placement with geometric safety gaps") {
    RainbowSignature sig = ordered_rainbow_signature(3, 9, 400);
    ExistsRhoStrategy strat{sig, 6};

    CHECK(strat.gap(0) == 243);
    CHECK(strat.gap(3) == 9);
    CHECK(strat.gap(7) == 1);

    std::map<int, int> rho;
    CHECK(strat.place(rho, 0, 0));
    CHECK(rho.at(0) == 243);
    CHECK(strat.place(rho, -1, 1)); // below the least: step down by 81
    CHECK(rho.at(-1) == 162);
    CHECK(strat.place(rho, -2, 2));
    CHECK(rho.at(-2) == 135);
    CHECK(strat.place(rho, 1, 1)); // above the greatest: step up by 81
    CHECK(rho.at(1) == 324);

    std::map<int, int> between = {{-2, 162}, {0, 243}};
    CHECK(strat.place(between, -1, 2)); // midpoint with 27 clearance each side
    CHECK(between.at(-1) == 202);

    std::map<int, int> cramped = {{-2, 242}, {0, 243}};
    std::string diag;
    CHECK_FALSE(strat.place(cramped, -1, 2, &diag));
    CHECK(diag.find("spacing exhausted") != std::string::npos);

    std::map<int, int> edge = {{0, 399}};
    CHECK_FALSE(strat.place(edge, 1, 5, &diag));
    CHECK(diag.find("cannot absorb") != std::string::npos);
}

TEST_CASE("the responder's plan answers a second cone with the mapped red pair") {
    RainbowSignature sig = ordered_rainbow_signature(3, 2, 400);
    ExistsRhoStrategy strat{sig, 6};
    Board before = board_from_graph(cyl::detail::cone_opening(sig));

    std::map<int, int> rho;
    std::string diag;
    REQUIRE(strat.initialise(before, rho, &diag));
    CHECK(rho.at(0) == 243);

    GraphDemand d = cyl::detail::cone_demand(sig, -1, 3);
    auto reply = strat.respond(before, d, 1, rho, &diag);
    INFO(diag);
    REQUIRE(reply.has_value());
    CHECK(rho.at(-1) == 162);
    const Colour* apex = reply->edge_at(2, 3);
    REQUIRE(apex != nullptr);
    CHECK(apex->is_red());
    CHECK(apex->i == 243); // the earlier apex keeps the larger value
    CHECK(apex->j == 162);
    CHECK(check_coloured_graph(sig, board_graph(*reply)).ok);
}

TEST_CASE("responder plan survives one exhaustively enumerated demand") {
    RainbowSignature sig = ordered_rainbow_signature(3, 2, 64);
    ExistsRhoStrategy strat{sig, 4};
    GameConfig cfg = cfg_of(GameConfig::Kind::Gm, 4, 2);
    auto res = verify_exists_strategy(cfg, strat, 2, (std::size_t)1 << 26);
    INFO(res.failure);
    REQUIRE(res.conclusive);
    CHECK(res.certified);
    CHECK(res.plays > 0);
}

TEST_CASE("initial board enumeration honours its budget") {
    RainbowSignature sig = ordered_rainbow_signature(3, 2, 64);
    std::size_t tight = 3;
    CHECK_THROWS_AS(initial_boards(sig, 2, tight), BudgetExceeded);
    std::size_t ample = 1 << 24;
    auto boards = initial_boards(sig, 2, ample);
    CHECK_FALSE(boards.empty());
    std::set<std::string> keys;
    for (const Board& b : boards) {
        CHECK(check_coloured_graph(sig, board_graph(b)).ok);
        CHECK(keys.insert(board_key(b)).second); // deduplicated up to renaming
    }
}
