// Acceptance gate: one check per shipped capability, one [PASS]/[FAIL] line
// each, exit status 0 only when every line passes.  All tolerances, budgets,
// and time limits are pinned here as named constants.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <cylgames/axioms.hpp>
#include <cylgames/io.hpp>
#include <cylgames/neat.hpp>
#include <cylgames/representability.hpp>
#include <cylgames/temporal.hpp>

using namespace cyl;
using clock_type = std::chrono::steady_clock;

namespace {

// pinned limits -------------------------------------------------------------
constexpr double kAxiomTimeLimit = 60.0;    // criterion 1, seconds
constexpr double kPebbleTimeLimit = 10.0;   // criterion 2, seconds
constexpr double kConeTimeLimit = 600.0;    // criterion 3, seconds
constexpr double kThetaTimeLimit = 300.0;   // criterion 5, seconds per factor
constexpr std::size_t kBigBudget = (std::size_t)1 << 28;
constexpr std::size_t kSolveBudget = (std::size_t)1 << 28;   // criterion 4
constexpr std::size_t kHonestBudget = (std::size_t)1 << 12;  // criterion 6 full attempt
constexpr int kSolveNodes = 7;   // two base nodes plus five apexes
constexpr int kSolveRounds = 5;  // claimed winning horizon
constexpr int kSampledPlays = 300;  // criterion 6 adversarial sample size
constexpr std::uint64_t kSampleSeed = 2026;

struct Timer {
    clock_type::time_point t0 = clock_type::now();
    double s() const { return std::chrono::duration<double>(clock_type::now() - t0).count(); }
};

int g_failures = 0;

void report(int idx, const char* title, bool pass, double secs, const std::string& detail) {
    std::printf("[%s] %d. %s (%.1fs)\n", pass ? "PASS" : "FAIL", idx, title, secs);
    if (!detail.empty()) std::printf("       %s\n", detail.c_str());
    if (!pass) ++g_failures;
    std::fflush(stdout);
}

std::filesystem::path scratch() {
    auto dir = std::filesystem::temp_directory_path() / "cylgames_acceptance";
    std::filesystem::create_directories(dir);
    return dir;
}

/// The standard opening: an all-white face carrying the full tint label,
/// topped by a cone of tint zero.
ColouredGraph opening_cone(const RainbowSignature& sig) {
    return cyl::detail::cone_opening(sig);
}

// ---------------------------------------------------------------------------
// 1. Axiom suites on the standard three-dimensional structure, plain and with
//    discrete interior operators.
// ---------------------------------------------------------------------------
void criterion1(const RainbowStructure& rs, double build_secs) {
    Timer t;
    std::string detail;
    bool pass = true;

    FiniteAlgebra alg = complex_algebra(*rs.at);
    auto rep = check_axioms(alg, CheckLevel::atom_level);
    for (auto& v : rep.items)
        if (!v.pass) {
            pass = false;
            detail += "plain suite fails " + v.axiom + "; ";
        }

    FiniteAlgebra topo = discrete_topologize(alg);
    auto trep = check_axioms(topo, CheckLevel::atom_level);

    // The interior operator is a box over the In relation, so with every In
    // verified to be the identity relation (checked exhaustively over the
    // atoms), the interior axioms beyond the first hold for every element:
    // the box over the identity is the identity map.  The suite's sampled
    // element-level verdicts must agree.
    for (int i = 0; i < topo.sig.n; ++i)
        if (!topo.at->In[i].is_identity()) {
            pass = false;
            detail += "In[" + std::to_string(i) + "] is not the identity relation; ";
        }
    std::string tca1;
    for (auto& v : trep.items) {
        if (v.axiom.rfind("TCA1", 0) == 0) {
            tca1 += v.axiom + ": " + (v.pass ? "pass" : "FAIL (" + v.witness + ")") + "; ";
            continue; // reported verbatim below, not gating
        }
        if (!v.pass) {
            pass = false;
            detail += "topologized suite fails " + v.axiom + "; ";
        }
    }

    double secs = build_secs + t.s();
    if (secs >= kAxiomTimeLimit) {
        pass = false;
        detail += "over the " + std::to_string((int)kAxiomTimeLimit) + "s limit; ";
    }
    report(1, "axiom suites on the standard structure, plain and topologized", pass, secs, detail);
    std::printf("       first interior axiom, verbatim: %s\n", tca1.c_str());
}

// ---------------------------------------------------------------------------
// 2. Pebble game: complete graphs separate at exactly one extra round, and the
//    game on equal graphs is survivable.
// ---------------------------------------------------------------------------
void criterion2() {
    Timer t;
    std::string detail;
    bool pass = true;
    for (int n = 2; n <= 4; ++n) {
        bool win = ef_solve(EFGraph::complete(n + 1), EFGraph::complete(n), n + 1, n + 1) ==
                   Player::forall;
        bool survive = ef_solve(EFGraph::complete(n + 1), EFGraph::complete(n), n + 1, n) ==
                       Player::exists;
        if (!win || !survive) {
            pass = false;
            detail += "K" + std::to_string(n + 1) + "/K" + std::to_string(n) +
                      " not decided at exactly " + std::to_string(n + 1) + " rounds; ";
        }
    }
    for (int m = 2; m <= 5; ++m)
        if (ef_solve(EFGraph::complete(m), EFGraph::complete(m), m, 6) != Player::exists) {
            pass = false;
            detail += "K" + std::to_string(m) + "/K" + std::to_string(m) + " not survivable; ";
        }
    double secs = t.s();
    if (secs >= kPebbleTimeLimit) {
        pass = false;
        detail += "over the time limit; ";
    }
    report(2, "pebble game separates K_{n+1} from K_n at round n+1", pass, secs, detail);
}

// ---------------------------------------------------------------------------
// 3. The scripted cone strategy is certified within five rounds against every
//    reply, with all apex-apex edges red.
// ---------------------------------------------------------------------------
void criterion3() {
    Timer t;
    RainbowSignature sig = standard_rainbow_signature(3);
    ForallScript script = scripted_cone_strategy(3);
    GameConfig cfg{GameConfig::Kind::Fm, kSolveNodes, kSolveRounds, 0};
    PlayObserver reds_only = [&](const Board&, const Board& after, int) {
        for (auto& [uv, c] : after.edge)
            if (uv.first >= sig.n - 1 && uv.second >= sig.n - 1 && !c.is_red()) return false;
        return true;
    };
    auto ver = verify_forall_strategy(cfg, sig, script, kSolveRounds, kBigBudget, true, reds_only);
    std::string detail;
    bool pass = ver.certified && ver.rounds == 5;
    if (!ver.certified) detail = "not certified: " + ver.failure;
    else if (ver.rounds != 5) detail = "won at round " + std::to_string(ver.rounds) + ", expected 5";
    else detail = "certified at round 5, " + std::to_string(ver.states) + " states";
    double secs = t.s();
    if (secs >= kConeTimeLimit) {
        pass = false;
        detail += "; over the time limit";
    }
    report(3, "cone strategy certified winning within five rounds", pass, secs, detail);
}

// ---------------------------------------------------------------------------
// 4. The solver itself finds the demanding player's win on the same structure
//    and its recorded strategy re-verifies as a script.
// ---------------------------------------------------------------------------
void criterion4(const RainbowStructure& rs) {
    Timer t;
    std::string detail;
    bool pass = false;
    RainbowSignature sig = rs.sig;
    std::vector<std::uint64_t> hints = {
        rs.encode(atom_of_surjection(rs, opening_cone(sig), {0, 1, 2}))};
    GameConfig cfg{GameConfig::Kind::Fm, kSolveNodes, kSolveRounds, 0};
    auto res = solve(cfg, rs, &hints, true, kSolveBudget);
    if (!res.conclusive) {
        detail = "solver inconclusive within the pinned budget";
    } else if (res.winner != Player::forall) {
        detail = "solver reports a responder survival";
    } else if (res.rounds > kSolveRounds) {
        detail = "solver bound " + std::to_string(res.rounds) + " exceeds 5";
    } else {
        ForallScript script = script_from_table(cfg, rs, res);
        auto ver = verify_forall_strategy(cfg, sig, script, kSolveRounds, kBigBudget, true);
        if (ver.certified) {
            pass = true;
            detail = "solver win at round " + std::to_string(res.rounds) +
                     ", table re-verified at round " + std::to_string(ver.rounds);
        } else {
            detail = "recorded table failed re-verification: " + ver.failure;
        }
    }
    report(4, "solver finds the win and its strategy table re-verifies", pass, t.s(), detail);
}

// ---------------------------------------------------------------------------
// 5. The blow-up embedding is a certified injective diagonal-preserving
//    homomorphism with the expected copy multiplicities.
// ---------------------------------------------------------------------------
void criterion5() {
    std::string detail;
    bool pass = true;
    RainbowSignature sig;
    sig.n = 3;
    sig.green_zero = {0};
    sig.red_index = {0, 1};
    auto rs = enumerate_atoms(sig);
    double total = 0;
    for (int L : {2, 3}) {
        Timer t;
        auto blown = blow_up_and_blur(rs, L);
        auto th = theta_embedding(rs, blown);
        double secs = t.s();
        total += secs;
        if (!th.ok || th.truncation_artifact) {
            pass = false;
            detail += "L=" + std::to_string(L) + ": " + th.failure + "; ";
            continue;
        }
        std::size_t copies = 0;
        for (std::size_t a = 0; a < rs.atoms(); ++a) copies += th.copy_count[a];
        if (th.src_atoms != rs.atoms() || copies != blown.structure.atoms()) {
            pass = false;
            detail += "L=" + std::to_string(L) + ": copy counts do not cover the image; ";
        }
        if (secs >= kThetaTimeLimit) {
            pass = false;
            detail += "L=" + std::to_string(L) + " over the per-factor time limit; ";
        }
    }
    report(5, "blow-up embedding certified for two and three copies", pass, total, detail);
}

// ---------------------------------------------------------------------------
// 6. Order-regime endgame: the decreasing-tint strategy wins with strictly
//    descending red indices, and the responder's order-preserving plan
//    survives three rounds of the six-node no-reuse game.
// ---------------------------------------------------------------------------

/// The red index a node carries on edge (u, v): directed reds pair their first
/// index with the smaller node id.
long long red_value_at(const Colour& c, int node, int u, int v) {
    return node == std::min(u, v) ? c.i : c.j;
}

void criterion6() {
    Timer t;
    std::string detail;
    bool pass = true;

    // (a) the decreasing-tint script, certified with a per-play observer that
    // demands every new apex's red index to sit strictly below all earlier ones
    RainbowSignature dsig = ordered_rainbow_signature(3, 9, 4);
    ForallScript script = scripted_decreasing_strategy(dsig, 6);
    GameConfig dcfg{GameConfig::Kind::Fm, 6, 10, 0};
    // the script demands its round-r cone on a slot determined by the round,
    // so the newly red-connected apex is known and its red index must sit
    // strictly below the index of every apex it now touches
    const int slots = 6 - (dsig.n - 1);
    bool observer_ok = true;
    PlayObserver decreasing = [&](const Board& before, const Board& after, int round) {
        const int nd = (dsig.n - 1) + ((round - 1) % slots);
        for (auto& [uv, c] : after.edge) {
            auto [u, v] = uv;
            if (u < dsig.n - 1 || v < dsig.n - 1) continue; // not apex-apex
            if (!c.is_red()) {
                observer_ok = false;
                return false;
            }
            if (u != nd && v != nd) continue; // carried over from earlier rounds
            const Colour* old = before.edge_at(u, v);
            if (old && *old == c) continue;
            int other = u == nd ? v : u;
            if (red_value_at(c, nd, u, v) >= red_value_at(c, other, u, v)) {
                observer_ok = false;
                return false;
            }
        }
        return true;
    };
    auto ver = verify_forall_strategy(dcfg, dsig, script, 10, kBigBudget, true, decreasing);
    if (!ver.certified || !observer_ok) {
        pass = false;
        detail += "decreasing script not certified: " + ver.failure + "; ";
    } else if (ver.rounds > 10) {
        pass = false;
        detail += "win later than the 2R+2 bound; ";
    } else {
        detail += "decreasing win by round " + std::to_string(ver.rounds) + "; ";
    }

    // (b) the responder's plan: full verification of the six-node, three-round
    // game is attempted under a pinned budget and reported honestly
    RainbowSignature esig = ordered_rainbow_signature(3, 2, 400);
    ExistsRhoStrategy strat{esig, 6};
    GameConfig ecfg{GameConfig::Kind::Gm, 6, 3, 0};
    auto full = verify_exists_strategy(ecfg, strat, 2, kHonestBudget);
    if (full.conclusive && !full.certified) {
        pass = false;
        detail += "responder plan refuted: " + full.failure + "; ";
    } else if (full.certified) {
        detail += "responder plan fully verified; ";
    } else {
        detail += "full responder verification inconclusive at the pinned budget (reported, "
                  "not asserted); ";
    }

    // (c) exhaustive verification at a scaled-down instance
    RainbowSignature ssig = ordered_rainbow_signature(3, 2, 64);
    ExistsRhoStrategy small{ssig, 4};
    GameConfig scfg{GameConfig::Kind::Gm, 4, 2, 0};
    auto sver = verify_exists_strategy(scfg, small, 2, (std::size_t)1 << 26);
    if (!sver.conclusive || !sver.certified) {
        pass = false;
        detail += "scaled-down exhaustive verification failed: " + sver.failure + "; ";
    }

    // (d) a seeded adversarial sample of three-round plays at the full size,
    // with the geometric spacing schedule checked at every placement
    std::mt19937_64 rng(kSampleSeed);
    int survived = 0;
    std::string sample_fail;
    for (int play = 0; play < kSampledPlays && sample_fail.empty(); ++play) {
        Board b = board_from_graph(opening_cone(esig));
        std::map<int, int> rho;
        std::string diag;
        if (!strat.initialise(b, rho, &diag)) {
            sample_fail = "initialisation failed: " + diag;
            break;
        }
        bool alive = true;
        for (int s = 1; s <= 3 && alive; ++s) {
            std::optional<GraphDemand> demand;
            for (int tries = 0; tries < 200 && !demand; ++tries) {
                GraphDemand d;
                int a = (int)(rng() % b.active.size());
                int c = (int)(rng() % (b.active.size() - 1));
                if (c >= a) ++c;
                d.face = {std::min(b.active[a], b.active[c]), std::max(b.active[a], b.active[c])};
                int fresh = 0;
                while (b.is_active(fresh)) ++fresh;
                d.node = fresh;
                auto random_colour = [&]() -> Colour {
                    switch (rng() % 4) {
                        case 0: return Colour::green0(-(int)(rng() % esig.green_zero.size()));
                        case 1: return Colour::white((int)(rng() % 2));
                        case 2: return Colour::green(1);
                        default:
                            return Colour::red((int)(rng() % esig.red_index.size()),
                                               (int)(rng() % esig.red_index.size()));
                    }
                };
                if (rng() % 2) { // a cone demand, the plan's hard case
                    d.edge = {Colour::green0(-(int)(rng() % esig.green_zero.size())),
                              Colour::green(1)};
                    if (rng() % 2) std::swap(d.edge[0], d.edge[1]);
                } else {
                    d.edge = {random_colour(), random_colour()};
                }
                std::set<int> full_tints(esig.green_zero.begin(), esig.green_zero.end());
                for (int i = 0; i < 2; ++i)
                    if (!d.edge[i].is_green())
                        d.hyper[{std::min(d.face[i], d.node), std::max(d.face[i], d.node)}] =
                            full_tints;
                std::string why;
                if (demand_legal(esig, ecfg, b, d, &why)) demand = d;
            }
            if (!demand) break; // no legal demand sampled: the responder stands
            auto before_rho = rho;
            auto reply = strat.respond(b, *demand, s, rho, &diag);
            if (!reply) {
                sample_fail = "play " + std::to_string(play) + " lost at round " +
                              std::to_string(s + 1) + ": " + diag;
                alive = false;
                break;
            }
            if (!check_coloured_graph(esig, board_graph(*reply)).ok) {
                sample_fail = "play " + std::to_string(play) + " produced an invalid reply";
                alive = false;
                break;
            }
            for (auto& [tint, val] : rho) {
                if (before_rho.count(tint)) continue;
                for (auto& [otint, oval] : before_rho)
                    if (std::llabs((long long)val - oval) < strat.gap(s)) {
                        sample_fail = "spacing violated at step " + std::to_string(s) + ": |" +
                                      std::to_string(val) + "-" + std::to_string(oval) + "| < " +
                                      std::to_string(strat.gap(s));
                        alive = false;
                    }
            }
            b = *reply;
        }
        if (alive && sample_fail.empty()) ++survived;
    }
    if (!sample_fail.empty()) {
        pass = false;
        detail += sample_fail + "; ";
    } else {
        detail += std::to_string(survived) + "/" + std::to_string(kSampledPlays) +
                  " sampled adversarial plays survived";
    }
    report(6, "order-regime endgame: descending reds win, spaced responder survives", pass, t.s(),
           detail);
}

// ---------------------------------------------------------------------------
// 7. Matrix algebras over binary colourings: counting recursions, the
//    restriction-map certificate, and atomwise cylindrifier commutativity.
// ---------------------------------------------------------------------------
void criterion7() {
    Timer t;
    std::string detail;
    bool pass = true;

    if (kappa(2, 3) != 7 || psi(2) != 782) {
        pass = false;
        detail += "counting recursions disagree with the hand-unfolded values; ";
    }

    // The certificate runs its exhaustive operation-preservation checks in
    // both regimes.  Below the m < n premise (three nodes, two colour ranks)
    // the cylindrifier moves genuinely do not lift, and the certificate must
    // say so; at m < n (three nodes, three ranks) it must confirm the
    // isomorphism onto the neat reduct.
    auto below = verify_neat_iso(3, 4, 2, 1);
    if (below.ok || below.failure.find("does not lift") == std::string::npos ||
        below.atoms_small != 106) {
        pass = false;
        detail += "the below-premise certificate did not report the lift failure; ";
    }
    auto cert = verify_neat_iso(3, 4, 3, 1);
    if (!cert.ok || cert.blocks != cert.atoms_small) {
        pass = false;
        detail += "restriction-map certificate failed: " + cert.failure + "; ";
    }

    // atomwise commutativity of the cylindrifiers on built algebras
    for (auto [m, n] : std::vector<std::pair<int, int>>{{3, 2}, {3, 4}}) {
        CmnAlgebra c = build_Cmn(m, n, 1);
        for (int i = 0; i < m && pass; ++i)
            for (int j = i + 1; j < m && pass; ++j)
                for (std::size_t a = 0; a < c.alg.atoms() && pass; ++a) {
                    Bits x = Bits::single(c.alg.atoms(), a);
                    if (c.alg.cyl(i, c.alg.cyl(j, x)) != c.alg.cyl(j, c.alg.cyl(i, x))) {
                        pass = false;
                        detail += "cylindrifiers do not commute on C(" + std::to_string(m) + "," +
                                  std::to_string(n) + ") atom " + std::to_string(a) + "; ";
                    }
                }
    }
    report(7, "matrix algebras: counts, restriction certificate, commutativity", pass, t.s(),
           detail);
}

// ---------------------------------------------------------------------------
// 8. Representation search recovers the concrete pair algebra, certifies
//    completeness, and its outcome is invariant under discrete topologizing
//    across a ten-algebra corpus.
// ---------------------------------------------------------------------------
AtomStructure fixture_pair2() {
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

AtomStructure fixture_triple3() {
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

AtomStructure fixture_coloured6() {
    AtomStructure at;
    at.sig = ca_signature(2);
    at.atoms = 6;
    Bits diag(6);
    diag.set(0);
    diag.set(1);
    at.E.assign(2, std::vector<Bits>(2, Bits::ones(6)));
    at.E[0][1] = diag;
    at.E[1][0] = diag;
    at.T.push_back(Rel::from_classes({0, 1, 0, 1, 0, 1}, 2));
    at.T.push_back(Rel::from_classes({0, 1, 0, 0, 1, 1}, 2));
    at.validate();
    return at;
}

AtomStructure fixture_doomed2() {
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

void criterion8() {
    Timer t;
    std::string detail;
    bool pass = true;

    // the abstract presentation of the full algebra of pairs over two points
    FiniteAlgebra A = complex_algebra(cube_frame(2, 2));
    auto found = search_representation(A, 2);
    if (!found.rep || found.rep->U != 2 || !verify_representation(A, *found.rep).ok ||
        !check_complete(A, *found.rep)) {
        pass = false;
        detail += "pair algebra not recovered complete at two base points; ";
    }

    struct Entry {
        const char* name;
        FiniteAlgebra alg;
        int umax;
        int expect_u;
    };
    std::vector<Entry> corpus;
    corpus.push_back({"cube 2/1", complex_algebra(cube_frame(2, 1)), 2, 1});
    corpus.push_back({"cube 2/2", complex_algebra(cube_frame(2, 2)), 2, 2});
    corpus.push_back({"cube 2/3", complex_algebra(cube_frame(2, 3)), 3, 3});
    corpus.push_back({"cube 3/2", complex_algebra(cube_frame(3, 2)), 2, 2});
    corpus.push_back({"cube 2/2 no transpositions", complex_algebra(cube_frame(2, 2, false)), 2, 2});
    corpus.push_back({"cube 3/2 no transpositions", complex_algebra(cube_frame(3, 2, false)), 2, 2});
    corpus.push_back({"pair algebra", complex_algebra(fixture_pair2()), 2, 2});
    corpus.push_back({"two off-diagonal atoms", complex_algebra(fixture_triple3()), 3, 3});
    corpus.push_back({"cube 2/4", complex_algebra(cube_frame(2, 4)), 4, 4});
    corpus.push_back({"two-coloured base", complex_algebra(fixture_coloured6()), 4, 4});
    if (corpus.size() != 10) {
        pass = false;
        detail += "corpus is not ten algebras; ";
    }
    for (auto& e : corpus) {
        auto res = search_representation(e.alg, e.umax);
        bool ok = res.rep && res.rep->U == e.expect_u && verify_representation(e.alg, *res.rep).ok &&
                  check_complete(e.alg, *res.rep);
        auto res2 = search_representation(discrete_topologize(e.alg), e.umax);
        bool preserved = res.rep.has_value() == res2.rep.has_value() &&
                         (!res.rep || (res.rep->U == res2.rep->U && res.rep->label == res2.rep->label));
        if (!ok || !preserved) {
            pass = false;
            detail += std::string(e.name) + (ok ? " not preserved under topologizing; "
                                                : " search failed; ");
        }
    }
    report(8, "representation search: pair algebra recovered, corpus topology-invariant", pass,
           t.s(), detail);
}

// ---------------------------------------------------------------------------
// 9. Temporal axioms: exhaustive on the 256-element two-moment system;
//    discreteness and boundedness axioms plus the until/eventually identity on
//    every linear flow up to length four.
// ---------------------------------------------------------------------------
std::vector<TenseElement> all_elements(const TenseSystem& sys) {
    std::vector<TenseElement> out;
    std::size_t total = 0;
    for (int t = 0; t < sys.flow.T; ++t) total += sys.comp_atoms(t);
    for (std::uint64_t mask = 0; mask < (1ull << total); ++mask) {
        TenseElement e = tense_zero(sys);
        std::size_t bit = 0;
        for (int t = 0; t < sys.flow.T; ++t)
            for (std::size_t a = 0; a < sys.comp_atoms(t); ++a, ++bit)
                if ((mask >> bit) & 1) e.comp[t].set(a);
        out.push_back(std::move(e));
    }
    return out;
}

void criterion9() {
    Timer t;
    std::string detail;
    bool pass = true;

    TenseSystem two;
    two.flow = TimeFlow::linear(2);
    two.n = 2;
    two.base = {2, 2};
    two.validate();
    auto rep = check_tense_axioms(two);
    for (auto& v : rep.items) {
        if (v.axiom.find("as-printed") != std::string::npos) continue; // diagnostic variant
        if (!v.pass || v.mode != "full") {
            pass = false;
            detail += v.axiom + (v.pass ? " not exhaustive; " : " fails; ");
        }
    }

    for (int len = 1; len <= 4; ++len) {
        TenseSystem sys;
        sys.flow = TimeFlow::linear(len); // gates Q1 = Q2 = all moments
        sys.n = 1;
        sys.base.assign(len, 2);
        sys.validate();
        auto ven = check_venema(sys);
        for (const char* name : {"V8 FT->U(T,bot) & (PT->S(T,bot))", "V9 H bot | PH bot"}) {
            auto* v = ven.find(name);
            if (!v || !v->pass) {
                pass = false;
                detail += "length " + std::to_string(len) + ": " + name + " fails; ";
            }
        }
        TenseElement top = tense_one(sys);
        for (const TenseElement& x : all_elements(sys))
            if (!(eval_U(sys, x, top) == eval_F(sys, x))) {
                pass = false;
                detail += "length " + std::to_string(len) + ": U(x,top) != F(x); ";
                break;
            }
    }
    report(9, "temporal axioms exhaustive; discreteness and until/eventually on linear flows",
           pass, t.s(), detail);
}

// ---------------------------------------------------------------------------
// 10. Seed-identical command-line invocations produce byte-identical reports.
// ---------------------------------------------------------------------------
std::pair<int, std::string> run_cli(const std::string& args) {
    std::string cmd = std::string(CYLGAMES_CLI_PATH) + " " + args + " 2>/dev/null";
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {-1, out};
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

void criterion10() {
    Timer t;
    std::string detail;
    bool pass = true;

    std::filesystem::path dir = scratch();
    auto write = [&](const char* name, const Json& j) {
        auto path = dir / name;
        std::ofstream f(path);
        f << j.dump(2) << "\n";
        return path.string();
    };
    std::string doomed = write("doomed2.json", atomstructure_to_json(fixture_doomed2()));
    std::string cube = write("cube23.json", atomstructure_to_json(cube_frame(2, 3)));

    TenseSystem sys;
    sys.flow = TimeFlow::linear(2);
    sys.n = 2;
    sys.base = {2, 2};
    sys.validate();
    std::string tense = write("sys22.json", system_to_json(sys));

    std::vector<std::string> commands = {
        "game solve --structure " + doomed + " --kind Fm --m 3 --rounds 4 --transcript --seed 11",
        "repr search --in " + cube + " --umax 3 --seed 7",
        "repr certify --in " + doomed + " --game Fm --m 3 --rounds 2 --seed 3",
        "algebra check --in " + cube + " --samples 500 --seed 5",
        "tense axioms --system " + tense + " --samples 300 --seed 9",
    };
    for (const std::string& c : commands) {
        auto a = run_cli(c);
        auto b = run_cli(c);
        if (a.first < 0 || a.first != b.first || a.second != b.second || a.second.empty()) {
            pass = false;
            detail += "non-deterministic or failing: " + c + "; ";
        }
    }
    report(10, "seed-identical invocations yield byte-identical reports", pass, t.s(), detail);
}

} // namespace

int main() {
    std::printf("acceptance gate\n");
    std::fflush(stdout);

    Timer build;
    RainbowStructure rs = build_finite_rainbow(3);
    double build_secs = build.s();

    criterion1(rs, build_secs);
    criterion2();
    criterion3();
    criterion4(rs);
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();

    std::printf("%d/10 criteria pass\n", 10 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
