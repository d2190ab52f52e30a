#pragma once

// JSON interchange for every on-disk artefact: atom structures, rainbow
// signatures, coloured graphs, representations, time flows and tense systems,
// plus game transcripts (a witnessed play with per-round snapshots) and their
// replay checker.  All emitters use ordered JSON so identical inputs always
// produce byte-identical documents.

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "atom_structure.hpp"
#include "games.hpp"
#include "rainbow.hpp"
#include "representability.hpp"
#include "temporal.hpp"

namespace cyl {

using Json = nlohmann::ordered_json;

inline constexpr const char* format_atomstructure = "atomstructure/1";
inline constexpr const char* format_signature = "signature/1";
inline constexpr const char* format_graph = "graph/1";
inline constexpr const char* format_representation = "representation/1";
inline constexpr const char* format_flow = "flow/1";
inline constexpr const char* format_system = "system/1";
inline constexpr const char* format_transcript = "transcript/1";
inline constexpr const char* format_report = "report/1";

namespace detail {

inline void expect_format(const Json& j, const char* fmt) {
    if (!j.is_object() || !j.contains("format") || j.at("format") != fmt)
        throw std::invalid_argument(std::string("expected a \"") + fmt + "\" document");
}

inline std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs_from_json(const Json& a) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ps;
    for (const auto& p : a) ps.emplace_back(p.at(0).get<std::uint32_t>(), p.at(1).get<std::uint32_t>());
    return ps;
}

inline Json pairs_to_json(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& ps) {
    Json a = Json::array();
    for (auto [x, y] : ps) a.push_back(Json::array({x, y}));
    return a;
}

/// Relations keep their backing: pair lists stay pair lists, but identity and
/// partition backings use compact forms ("identity", {"classes": ...}) —
/// expanding a partition over millions of atoms to pairs is quadratic.
inline Json rel_to_json(const Rel& r) {
    switch (r.kind()) {
    case Rel::Kind::identity: return Json("identity");
    case Rel::Kind::partition: {
        Json j;
        std::vector<std::uint32_t> cls(r.atoms());
        for (std::size_t a = 0; a < r.atoms(); ++a) cls[a] = r.cls(a);
        j["classes"] = std::move(cls);
        j["nclasses"] = r.nclasses();
        return j;
    }
    case Rel::Kind::pairs: return pairs_to_json(r.to_pairs());
    }
    return Json::array();
}

inline Rel rel_from_json(const Json& j, std::size_t atoms) {
    if (j.is_string()) {
        if (j != "identity") throw std::invalid_argument("relation: unknown encoding " + j.dump());
        return Rel::identity(atoms);
    }
    if (j.is_object()) {
        auto cls = j.at("classes").get<std::vector<std::uint32_t>>();
        if (cls.size() != atoms) throw std::invalid_argument("relation: class vector has wrong size");
        return Rel::from_classes(std::move(cls), j.at("nclasses").get<std::uint32_t>());
    }
    return Rel::from_pairs(atoms, pairs_from_json(j));
}

} // namespace detail

// ---------------------------------------------------------------------------
// Atom structures.
// ---------------------------------------------------------------------------

inline Json atomstructure_to_json(const AtomStructure& at) {
    const int n = at.sig.n;
    Json j;
    j["format"] = format_atomstructure;
    j["n"] = n;
    j["atoms"] = at.atoms;
    Json E = Json::array();
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            Json members = Json::array();
            at.E[i][k].for_each([&](std::size_t a) { members.push_back(a); });
            E.push_back(Json::array({i, k, members}));
        }
    j["E"] = std::move(E);
    Json T = Json::array();
    for (int i = 0; i < n; ++i) T.push_back(Json::array({i, detail::rel_to_json(at.T[i])}));
    j["T"] = std::move(T);
    Json S = Json::array();
    if (at.sig.transpositions)
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                if (i == k || at.S[i][k].empty()) continue;
                S.push_back(Json::array({i, k, at.S[i][k]}));
            }
    j["S"] = std::move(S);
    Json In = Json::array();
    if (at.sig.interior)
        for (int i = 0; i < n; ++i) In.push_back(Json::array({i, detail::rel_to_json(at.In[i])}));
    j["In"] = std::move(In);
    if (at.sig.tense) j["tense"] = true;
    if (at.sig.temporal) j["temporal"] = true;
    return j;
}

inline AtomStructure atomstructure_from_json(const Json& j) {
    detail::expect_format(j, format_atomstructure);
    AtomStructure at;
    const int n = j.at("n").get<int>();
    const std::size_t atoms = j.at("atoms").get<std::size_t>();
    if (n < 1) throw std::invalid_argument("atom structure: dimension must be positive");
    at.sig.n = n;
    at.sig.diagonals = true;
    at.sig.transpositions = !j.at("S").empty();
    at.sig.interior = !j.at("In").empty();
    at.sig.tense = j.value("tense", false);
    at.sig.temporal = j.value("temporal", false);
    at.atoms = atoms;
    at.E.assign(n, std::vector<Bits>(n, Bits(atoms)));
    for (const auto& e : j.at("E")) {
        int i = e.at(0).get<int>(), k = e.at(1).get<int>();
        if (i < 0 || i >= n || k < 0 || k >= n)
            throw std::invalid_argument("atom structure: diagonal index out of range");
        for (const auto& a : e.at(2)) at.E[i][k].set(a.get<std::size_t>());
    }
    at.T.assign(n, Rel::identity(atoms));
    for (const auto& t : j.at("T")) {
        int i = t.at(0).get<int>();
        if (i < 0 || i >= n) throw std::invalid_argument("atom structure: cylindrifier index out of range");
        at.T[i] = detail::rel_from_json(t.at(1), atoms);
    }
    if (at.sig.transpositions) {
        at.S.assign(n, std::vector<std::vector<std::uint32_t>>(n));
        for (const auto& s : j.at("S")) {
            int i = s.at(0).get<int>(), k = s.at(1).get<int>();
            if (i < 0 || i >= n || k < 0 || k >= n || i == k)
                throw std::invalid_argument("atom structure: transposition index out of range");
            at.S[i][k] = s.at(2).get<std::vector<std::uint32_t>>();
            if (at.S[i][k].size() != atoms)
                throw std::invalid_argument("atom structure: transposition map has wrong size");
        }
    }
    if (at.sig.interior) {
        at.In.clear();
        std::map<int, Rel> rows;
        for (const auto& t : j.at("In")) {
            int i = t.at(0).get<int>();
            if (i < 0 || i >= n) throw std::invalid_argument("atom structure: interior index out of range");
            rows.emplace(i, detail::rel_from_json(t.at(1), atoms));
        }
        for (int i = 0; i < n; ++i) {
            auto it = rows.find(i);
            at.In.push_back(it == rows.end() ? Rel::identity(atoms) : it->second);
        }
    }
    return at;
}

// ---------------------------------------------------------------------------
// Rainbow signatures and coloured graphs.
// ---------------------------------------------------------------------------

inline std::string red_mode_name(RedMode m) {
    switch (m) {
    case RedMode::plain: return "plain";
    case RedMode::superscripted: return "superscripted";
    case RedMode::ordered: return "ordered";
    }
    return "?";
}

inline RedMode red_mode_from_name(const std::string& s) {
    if (s == "plain") return RedMode::plain;
    if (s == "superscripted") return RedMode::superscripted;
    if (s == "ordered") return RedMode::ordered;
    throw std::invalid_argument("unknown red regime: " + s);
}

inline Json signature_to_json(const RainbowSignature& sig) {
    Json j;
    j["format"] = format_signature;
    j["n"] = sig.n;
    j["green_zero"] = sig.green_zero;
    j["red_index"] = sig.red_index;
    j["red_mode"] = red_mode_name(sig.red_mode);
    j["copies"] = sig.copies;
    j["order_forbidden"] = sig.order_forbidden;
    return j;
}

inline RainbowSignature signature_from_json(const Json& j) {
    detail::expect_format(j, format_signature);
    RainbowSignature sig;
    sig.n = j.at("n").get<int>();
    sig.green_zero = j.at("green_zero").get<std::vector<int>>();
    sig.red_index = j.at("red_index").get<std::vector<int>>();
    sig.red_mode = red_mode_from_name(j.at("red_mode").get<std::string>());
    sig.copies = j.at("copies").get<int>();
    sig.order_forbidden = j.at("order_forbidden").get<bool>();
    sig.validate();
    return sig;
}

inline Json graph_to_json(const ColouredGraph& g) {
    Json j;
    j["format"] = format_graph;
    j["n"] = g.n;
    j["nodes"] = g.nodes;
    Json edges = Json::array();
    for (int v = 0; v < g.nodes; ++v)
        for (int u = 0; u < v; ++u)
            if (auto c = g.edge(u, v)) edges.push_back(Json::array({u, v, c->str()}));
    j["edges"] = std::move(edges);
    Json hyper = Json::array();
    for (const auto& [tuple, S] : g.hyper)
        hyper.push_back(Json::array({tuple, "yS", std::vector<int>(S.begin(), S.end())}));
    j["hyper"] = std::move(hyper);
    return j;
}

inline ColouredGraph graph_from_json(const Json& j) {
    detail::expect_format(j, format_graph);
    ColouredGraph g(j.at("n").get<int>(), j.at("nodes").get<int>());
    for (const auto& e : j.at("edges"))
        g.set_edge(e.at(0).get<int>(), e.at(1).get<int>(), parse_colour(e.at(2).get<std::string>()));
    for (const auto& h : j.at("hyper")) {
        if (h.at(1) != "yS") throw std::invalid_argument("coloured graph: malformed hyperedge entry");
        auto tints = h.at(2).get<std::vector<int>>();
        g.set_hyper(h.at(0).get<std::vector<int>>(), std::set<int>(tints.begin(), tints.end()));
    }
    return g;
}

// ---------------------------------------------------------------------------
// Representations.
// ---------------------------------------------------------------------------

namespace detail {

// big-endian digits of a tuple index, matching the search's tuple order
inline std::vector<int> rep_tuple_digits(const Representation& rep, std::size_t idx) {
    std::vector<int> t(rep.n);
    for (int i = rep.n - 1; i >= 0; --i) {
        t[i] = (int)(idx % (std::size_t)rep.U);
        idx /= (std::size_t)rep.U;
    }
    return t;
}

} // namespace detail

inline Json representation_to_json(const Representation& rep) {
    Json j;
    j["format"] = format_representation;
    j["kind"] = rep.kind == Representation::Kind::classical ? "classical" : "k_square";
    j["n"] = rep.n;
    j["U"] = rep.U;
    j["k"] = rep.k;
    Json labels = Json::array();
    for (std::size_t idx = 0; idx < rep.tuples(); ++idx) {
        if (!rep.in_unit(idx)) continue;
        labels.push_back(Json::array({detail::rep_tuple_digits(rep, idx), rep.label[idx]}));
    }
    j["labels"] = std::move(labels);
    return j;
}

inline Representation representation_from_json(const Json& j) {
    detail::expect_format(j, format_representation);
    Representation rep;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "classical") rep.kind = Representation::Kind::classical;
    else if (kind == "k_square") rep.kind = Representation::Kind::k_square;
    else throw std::invalid_argument("unknown representation kind: " + kind);
    rep.n = j.at("n").get<int>();
    rep.U = j.at("U").get<int>();
    rep.k = j.at("k").get<int>();
    if (rep.n < 1 || rep.U < 1) throw std::invalid_argument("representation: bad dimensions");
    std::size_t T = 1;
    for (int i = 0; i < rep.n; ++i) T *= (std::size_t)rep.U;
    rep.label.assign(T, Representation::outside);
    for (const auto& l : j.at("labels")) {
        auto t = l.at(0).get<std::vector<int>>();
        if ((int)t.size() != rep.n) throw std::invalid_argument("representation: tuple arity mismatch");
        std::size_t idx = 0;
        for (int d : t) {
            if (d < 0 || d >= rep.U) throw std::invalid_argument("representation: tuple entry out of base");
            idx = idx * (std::size_t)rep.U + (std::size_t)d;
        }
        rep.label[idx] = l.at(1).get<std::uint32_t>();
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Time flows and tense systems.
// ---------------------------------------------------------------------------

namespace detail {

inline void flow_fields_to_json(const TimeFlow& f, Json& j) {
    j["T"] = f.T;
    Json lt = Json::array();
    for (int s = 0; s < f.T; ++s)
        for (int t = 0; t < f.T; ++t)
            if (f.lt[s][t]) lt.push_back(Json::array({s, t}));
    j["lt"] = std::move(lt);
    Json q1 = Json::array(), q2 = Json::array();
    for (int t = 0; t < f.T; ++t) {
        if (f.Q1[t]) q1.push_back(t);
        if (f.Q2[t]) q2.push_back(t);
    }
    j["Q1"] = std::move(q1);
    j["Q2"] = std::move(q2);
    j["zero"] = f.zero;
}

inline TimeFlow flow_fields_from_json(const Json& j) {
    TimeFlow f;
    f.T = j.at("T").get<int>();
    if (f.T < 1) throw std::invalid_argument("time flow needs at least one moment");
    f.lt.assign(f.T, std::vector<char>(f.T, 0));
    for (const auto& p : j.at("lt")) {
        int s = p.at(0).get<int>(), t = p.at(1).get<int>();
        if (s < 0 || s >= f.T || t < 0 || t >= f.T)
            throw std::invalid_argument("time flow: moment out of range");
        f.lt[s][t] = 1;
    }
    f.Q1.assign(f.T, 0);
    f.Q2.assign(f.T, 0);
    for (const auto& t : j.at("Q1")) f.Q1.at(t.get<int>()) = 1;
    for (const auto& t : j.at("Q2")) f.Q2.at(t.get<int>()) = 1;
    f.zero = j.at("zero").get<int>();
    f.validate();
    return f;
}

} // namespace detail

inline Json flow_to_json(const TimeFlow& f) {
    Json j;
    j["format"] = format_flow;
    detail::flow_fields_to_json(f, j);
    return j;
}

inline TimeFlow flow_from_json(const Json& j) {
    detail::expect_format(j, format_flow);
    return detail::flow_fields_from_json(j);
}

inline Json system_to_json(const TenseSystem& sys) {
    Json j;
    j["format"] = format_system;
    detail::flow_fields_to_json(sys.flow, j);
    j["n"] = sys.n;
    j["base"] = sys.base;
    Json V = Json::array();
    if (!sys.V.empty())
        for (int t = 0; t < sys.flow.T; ++t)
            for (int s = 0; s < sys.flow.T; ++s)
                if (!sys.V[t][s].empty()) V.push_back(Json::array({t, s, sys.V[t][s]}));
    j["V"] = std::move(V);
    return j;
}

inline TenseSystem system_from_json(const Json& j) {
    detail::expect_format(j, format_system);
    TenseSystem sys;
    sys.flow = detail::flow_fields_from_json(j);
    sys.n = j.at("n").get<int>();
    sys.base = j.at("base").get<std::vector<int>>();
    const auto& V = j.at("V");
    if (!V.empty()) {
        sys.V.assign(sys.flow.T, std::vector<std::vector<int>>(sys.flow.T));
        for (const auto& v : V) {
            int t = v.at(0).get<int>(), s = v.at(1).get<int>();
            if (t < 0 || t >= sys.flow.T || s < 0 || s >= sys.flow.T)
                throw std::invalid_argument("tense system: navigation moment out of range");
            sys.V[t][s] = v.at(2).get<std::vector<int>>();
        }
    }
    sys.validate();
    return sys;
}

// ---------------------------------------------------------------------------
// Game configurations, networks, boards.
// ---------------------------------------------------------------------------

inline std::string game_kind_name(GameConfig::Kind k) {
    switch (k) {
    case GameConfig::Kind::Gm: return "Gm";
    case GameConfig::Kind::Fm: return "Fm";
    case GameConfig::Kind::Gk: return "Gk";
    case GameConfig::Kind::EF: return "EF";
    case GameConfig::Kind::J: return "J";
    }
    return "?";
}

inline GameConfig::Kind game_kind_from_name(const std::string& s) {
    if (s == "Gm") return GameConfig::Kind::Gm;
    if (s == "Fm") return GameConfig::Kind::Fm;
    if (s == "Gk") return GameConfig::Kind::Gk;
    if (s == "EF") return GameConfig::Kind::EF;
    if (s == "J") return GameConfig::Kind::J;
    throw std::invalid_argument("unknown game kind: " + s);
}

inline Json config_to_json(const GameConfig& cfg) {
    Json j;
    j["kind"] = game_kind_name(cfg.kind);
    j["m"] = cfg.m;
    j["rounds"] = cfg.rounds;
    j["pebbles"] = cfg.pebbles;
    return j;
}

inline GameConfig config_from_json(const Json& j) {
    GameConfig cfg;
    cfg.kind = game_kind_from_name(j.at("kind").get<std::string>());
    cfg.m = j.at("m").get<int>();
    cfg.rounds = j.at("rounds").get<int>();
    cfg.pebbles = j.at("pebbles").get<int>();
    cfg.validate();
    return cfg;
}

inline Json network_to_json(const Network& N) {
    Json j;
    j["nodes"] = N.nodes;
    j["label"] = N.label;
    return j;
}

inline Network network_from_json(const Json& j, int n) {
    Network N;
    N.n = n;
    N.nodes = j.at("nodes").get<std::vector<int>>();
    N.label = j.at("label").get<std::vector<std::size_t>>();
    if (N.label.size() != N.tuples()) throw std::invalid_argument("network: label table has wrong size");
    return N;
}

inline bool network_equal(const Network& a, const Network& b) {
    return a.n == b.n && a.nodes == b.nodes && a.label == b.label;
}

inline Json board_to_json(const Board& b) {
    Json j;
    j["n"] = b.n;
    j["active"] = b.active;
    Json edges = Json::array();
    for (const auto& [uv, c] : b.edge) edges.push_back(Json::array({uv.first, uv.second, c.str()}));
    j["edges"] = std::move(edges);
    Json hyper = Json::array();
    for (const auto& [ids, S] : b.hyper)
        hyper.push_back(Json::array({ids, "yS", std::vector<int>(S.begin(), S.end())}));
    j["hyper"] = std::move(hyper);
    return j;
}

inline Board board_from_json(const Json& j) {
    Board b;
    b.n = j.at("n").get<int>();
    b.active = j.at("active").get<std::vector<int>>();
    for (const auto& e : j.at("edges")) {
        int u = e.at(0).get<int>(), v = e.at(1).get<int>();
        if (u > v) std::swap(u, v);
        b.edge[{u, v}] = parse_colour(e.at(2).get<std::string>());
    }
    for (const auto& h : j.at("hyper")) {
        if (h.at(1) != "yS") throw std::invalid_argument("board: malformed hyperedge entry");
        auto tints = h.at(2).get<std::vector<int>>();
        b.hyper[h.at(0).get<std::vector<int>>()] = std::set<int>(tints.begin(), tints.end());
    }
    return b;
}

inline bool board_equal(const Board& a, const Board& b) {
    return a.n == b.n && a.active == b.active && a.edge == b.edge && a.hyper == b.hyper;
}

inline Json net_demand_to_json(const NetDemand& d) {
    Json j;
    j["face"] = d.face;
    j["l"] = d.l;
    j["k"] = d.k;
    j["b"] = d.b;
    return j;
}

inline NetDemand net_demand_from_json(const Json& j) {
    NetDemand d;
    d.face = j.at("face").get<std::vector<int>>();
    d.l = j.at("l").get<int>();
    d.k = j.at("k").get<int>();
    d.b = j.at("b").get<std::size_t>();
    return d;
}

inline bool net_demand_equal(const NetDemand& a, const NetDemand& b) {
    return a.face == b.face && a.l == b.l && a.k == b.k && a.b == b.b;
}

inline Json graph_demand_to_json(const GraphDemand& d) {
    Json j;
    j["face"] = d.face;
    j["node"] = d.node;
    Json edge = Json::array();
    for (const Colour& c : d.edge) edge.push_back(c.str());
    j["edge"] = std::move(edge);
    Json hyper = Json::array();
    for (const auto& [ids, S] : d.hyper)
        hyper.push_back(Json::array({ids, "yS", std::vector<int>(S.begin(), S.end())}));
    j["hyper"] = std::move(hyper);
    return j;
}

inline GraphDemand graph_demand_from_json(const Json& j) {
    GraphDemand d;
    d.face = j.at("face").get<std::vector<int>>();
    d.node = j.at("node").get<int>();
    for (const auto& c : j.at("edge")) d.edge.push_back(parse_colour(c.get<std::string>()));
    for (const auto& h : j.at("hyper")) {
        if (h.at(1) != "yS") throw std::invalid_argument("demand: malformed hyperedge entry");
        auto tints = h.at(2).get<std::vector<int>>();
        d.hyper[h.at(0).get<std::vector<int>>()] = std::set<int>(tints.begin(), tints.end());
    }
    return d;
}

// ---------------------------------------------------------------------------
// Transcripts: one witnessed play, per-round snapshots, replayable.
// ---------------------------------------------------------------------------

/// Witness play for a network-game win: starting from the first surviving-free
/// initial network that realises the winning atom, the demander always picks
/// the first legal demand that leaves no surviving response, the responder the
/// first available response.  Terminates within the configured round count by
/// construction of the solved game value.
inline Json network_transcript(const GameConfig& cfg, const AtomStructure& at, std::size_t atom,
                               std::size_t budget = games_default_budget()) {
    cfg.validate();
    std::map<std::pair<std::string, int>, int> memo;
    std::size_t work = budget;

    // game value, same rules as the solver: 0 means the responder survives
    // `rl` further demands, v > 0 means failure is forced within v demands
    auto value = [&](auto&& self, const Network& N, int rl) -> int {
        if (rl == 0) return 0;
        auto key = std::make_pair(detail::network_key(N), rl);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        if (work == 0) throw BudgetExceeded("transcript budget exhausted");
        --work;
        int best = 0;
        for (const NetDemand& d : net_legal_demands(cfg, at, N)) {
            int worst = 0;
            bool survived = false;
            net_responses(at, N, d, work, [&](const Network& M) {
                int v = self(self, M, rl - 1);
                if (v == 0) {
                    survived = true;
                    return true;
                }
                worst = std::max(worst, v);
                return false;
            });
            if (!survived) {
                best = 1 + worst;
                break;
            }
        }
        memo.emplace(key, best);
        return best;
    };

    const int n = at.sig.n;
    int maxnodes = std::min(n, cfg.kind == GameConfig::Kind::Gk ? n : cfg.m);
    std::optional<Network> start;
    for (int k = 1; k <= maxnodes && !start; ++k) {
        Network N;
        N.n = n;
        for (int i = 0; i < k; ++i) N.nodes.push_back(i);
        std::vector<std::optional<std::size_t>> partial(N.tuples());
        detail::complete_network(at, N, partial, work, [&](const Network& M) {
            for (std::size_t u = 0; u < M.label.size(); ++u)
                if (M.label[u] == atom) {
                    start = M;
                    return true;
                }
            return false;
        });
    }
    Json t;
    t["format"] = format_transcript;
    t["game"] = "network";
    t["config"] = config_to_json(cfg);
    t["structure"] = atomstructure_to_json(at);
    t["atom"] = atom;

    // vacuous win: no coherent initial network realises the atom at all, so
    // the responder already fails the opening demand
    if (!start) {
        t["initial"] = nullptr;
        t["moves"] = Json::array();
        t["winner"] = "forall";
        t["rounds"] = 1;
        return t;
    }
    t["initial"] = network_to_json(*start);

    Json moves = Json::array();
    Network N = *start;
    int round = 1, rl = cfg.rounds - 1;
    while (true) {
        if (rl <= 0) throw std::logic_error("transcript: play exceeded the round budget");
        std::optional<NetDemand> pick;
        for (const NetDemand& d : net_legal_demands(cfg, at, N)) {
            bool survived = false;
            net_responses(at, N, d, work, [&](const Network& M) {
                if (value(value, M, rl - 1) == 0) {
                    survived = true;
                    return true;
                }
                return false;
            });
            if (!survived) {
                pick = d;
                break;
            }
        }
        if (!pick) throw std::logic_error("transcript: no winning demand from a losing position");

        ++round;
        std::optional<Network> reply;
        std::size_t count = 0;
        net_responses(at, N, *pick, work, [&](const Network& M) {
            if (!reply) reply = M;
            ++count;
            return false;
        });
        Json mv;
        mv["round"] = round;
        mv["demand"] = net_demand_to_json(*pick);
        mv["replies"] = count;
        if (count == 0) {
            moves.push_back(std::move(mv));
            break;
        }
        N = *reply;
        mv["state"] = network_to_json(N);
        moves.push_back(std::move(mv));
        --rl;
    }
    t["moves"] = std::move(moves);
    t["winner"] = "forall";
    t["rounds"] = round;
    return t;
}

/// Witness play for a certified demander script on the graph game: the script
/// supplies the demands, the responder plays the first reply the enumerator
/// produces, and the play ends at the first unanswerable demand.
inline Json graph_transcript(const GameConfig& cfg, const RainbowSignature& sig,
                             const ForallScript& script, int bound, bool responder_full_yellow = true,
                             std::size_t budget = games_default_budget()) {
    cfg.validate();
    auto rep = check_coloured_graph(sig, script.opening);
    if (!rep.ok) throw std::invalid_argument("transcript: invalid opening: " + rep.violation);

    Json t;
    t["format"] = format_transcript;
    t["game"] = "graph";
    t["config"] = config_to_json(cfg);
    t["signature"] = signature_to_json(sig);
    t["full_yellow"] = responder_full_yellow;
    t["opening"] = graph_to_json(script.opening);

    Json moves = Json::array();
    Board b = board_from_graph(script.opening);
    std::size_t work = budget;
    int round = 1;
    while (true) {
        if (round >= bound) throw std::logic_error("transcript: play exceeded the round bound");
        auto d = script.demand(b, round + 1);
        if (!d) throw std::invalid_argument("transcript: script offers no demand at round " +
                                            std::to_string(round + 1));
        std::string why;
        if (!demand_legal(sig, cfg, b, *d, &why))
            throw std::invalid_argument("transcript: illegal demand at round " +
                                        std::to_string(round + 1) + ": " + why);
        Board after = apply_demand(b, *d);
        std::optional<Board> reply;
        std::size_t count = 0;
        enumerate_replies(sig, after, d->node, responder_full_yellow, work, [&](Board& rb) {
            if (!reply) reply = rb;
            ++count;
            return false;
        });
        ++round;
        Json mv;
        mv["round"] = round;
        mv["demand"] = graph_demand_to_json(*d);
        mv["replies"] = count;
        if (count == 0) {
            moves.push_back(std::move(mv));
            break;
        }
        b = *reply;
        mv["state"] = board_to_json(b);
        moves.push_back(std::move(mv));
    }
    t["moves"] = std::move(moves);
    t["winner"] = "forall";
    t["rounds"] = round;
    return t;
}

struct ReplayResult {
    bool ok = false;        ///< every move legal and every reply genuine
    std::string winner;     ///< "forall" when the final demand is unanswerable
    int rounds = 0;
    std::string failure;
};

/// Re-checks a transcript move by move against the game rules: the recorded
/// demands must be legal, every recorded responder state must be among the
/// rule-generated responses, and a win claim requires the final demand to
/// admit no response at all.
inline ReplayResult replay_transcript(const Json& t, std::size_t budget = games_default_budget()) {
    detail::expect_format(t, format_transcript);
    ReplayResult out;
    auto fail = [&](std::string why) {
        out.failure = std::move(why);
        return out;
    };
    const GameConfig cfg = config_from_json(t.at("config"));
    const std::string game = t.at("game").get<std::string>();
    std::size_t work = budget;

    if (game == "network") {
        AtomStructure at = atomstructure_from_json(t.at("structure"));
        const std::size_t atom = t.at("atom").get<std::size_t>();
        if (t.at("initial").is_null()) {
            // vacuous win claim: confirm no coherent initial network realises
            // the atom by re-running the enumeration
            const int n = at.sig.n;
            int maxnodes = std::min(n, cfg.kind == GameConfig::Kind::Gk ? n : cfg.m);
            bool realised = false;
            for (int k = 1; k <= maxnodes && !realised; ++k) {
                Network M;
                M.n = n;
                for (int i = 0; i < k; ++i) M.nodes.push_back(i);
                std::vector<std::optional<std::size_t>> partial(M.tuples());
                cyl::detail::complete_network(at, M, partial, work, [&](const Network& C) {
                    for (std::size_t u = 0; u < C.label.size(); ++u)
                        if (C.label[u] == atom) {
                            realised = true;
                            return true;
                        }
                    return false;
                });
            }
            if (realised) return fail("an initial network realises the atom; the vacuous win claim is false");
            out.ok = true;
            out.winner = "forall";
            out.rounds = 1;
            return out;
        }
        Network N = network_from_json(t.at("initial"), at.sig.n);
        auto netrep = check_network(at, N);
        if (!netrep.ok) return fail("initial network invalid: " + netrep.violation);
        bool holds = false;
        for (std::size_t u = 0; u < N.label.size() && !holds; ++u)
            if (N.label[u] == atom) holds = true;
        if (!holds) return fail("initial network does not realise the claimed atom");

        int round = 1;
        for (const auto& mv : t.at("moves")) {
            round = mv.at("round").get<int>();
            if (round > cfg.rounds) return fail("play exceeds the configured round count");
            NetDemand d = net_demand_from_json(mv.at("demand"));
            bool legal = false;
            for (const NetDemand& c : net_legal_demands(cfg, at, N))
                if (net_demand_equal(c, d)) {
                    legal = true;
                    break;
                }
            if (!legal) return fail("illegal demand at round " + std::to_string(round));
            std::vector<Network> responses;
            net_responses(at, N, d, work, [&](const Network& M) {
                responses.push_back(M);
                return false;
            });
            if (!mv.contains("state")) {
                if (!responses.empty())
                    return fail("final demand at round " + std::to_string(round) + " has responses");
                out.ok = true;
                out.winner = "forall";
                out.rounds = round;
                return out;
            }
            Network next = network_from_json(mv.at("state"), at.sig.n);
            bool genuine = false;
            for (const Network& M : responses)
                if (network_equal(M, next)) {
                    genuine = true;
                    break;
                }
            if (!genuine) return fail("recorded response at round " + std::to_string(round) +
                                      " is not a legal reply");
            N = next;
        }
        out.winner = "exists";
        out.rounds = round;
        return fail("play ends with the responder alive");
    }

    if (game == "graph") {
        RainbowSignature sig = signature_from_json(t.at("signature"));
        const bool full_yellow = t.at("full_yellow").get<bool>();
        ColouredGraph opening = graph_from_json(t.at("opening"));
        auto rep = check_coloured_graph(sig, opening);
        if (!rep.ok) return fail("opening invalid: " + rep.violation);
        Board b = board_from_graph(opening);

        int round = 1;
        for (const auto& mv : t.at("moves")) {
            round = mv.at("round").get<int>();
            GraphDemand d = graph_demand_from_json(mv.at("demand"));
            std::string why;
            if (!demand_legal(sig, cfg, b, d, &why))
                return fail("illegal demand at round " + std::to_string(round) + ": " + why);
            Board after = apply_demand(b, d);
            std::vector<Board> replies;
            enumerate_replies(sig, after, d.node, full_yellow, work, [&](Board& rb) {
                replies.push_back(rb);
                return false;
            });
            if (!mv.contains("state")) {
                if (!replies.empty())
                    return fail("final demand at round " + std::to_string(round) + " has replies");
                out.ok = true;
                out.winner = "forall";
                out.rounds = round;
                return out;
            }
            Board next = board_from_json(mv.at("state"));
            bool genuine = false;
            for (const Board& rb : replies)
                if (board_equal(rb, next)) {
                    genuine = true;
                    break;
                }
            if (!genuine) return fail("recorded reply at round " + std::to_string(round) +
                                      " is not a legal reply");
            b = next;
        }
        out.winner = "exists";
        out.rounds = round;
        return fail("play ends with the responder alive");
    }

    return fail("unknown transcript game: " + game);
}

} // namespace cyl
