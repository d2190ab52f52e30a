#pragma once
/// Model-theoretic games over atom structures and coloured graphs:
///   - the forth pebble game measuring partial-isomorphism equivalence of
///     finite graphs,
///   - atomic-network games with a node budget, with and without node reuse,
///     and their unbounded-node variant,
///   - hypernetwork games with transformation and amalgamation moves,
///   - coloured-graph games driven by a rainbow signature, an exact solver for
///     small instances, scripted strategies for both players, and exhaustive
///     verifiers that certify a scripted strategy up to a round bound.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cylgames/atom_structure.hpp"
#include "cylgames/rainbow.hpp"

namespace cyl {

enum class Player { forall, exists };

inline const char* player_name(Player p) { return p == Player::forall ? "forall" : "exists"; }

/// Which game is played and how long.  Rounds count the initial configuration
/// as round 1, so `rounds` cylindrifier demands happen in a game of
/// `rounds + 1` total rounds.
struct GameConfig {
    enum class Kind { Gm, Fm, Gk, EF, J };
    Kind kind = Kind::Fm;
    int m = 0;       ///< node budget for Gm/Fm (node ids range over 0..m-1)
    int rounds = 1;  ///< total rounds, the initial round included
    int pebbles = 0; ///< EF only

    bool reuse() const { return kind == Kind::Fm; }

    void validate() const {
        if (rounds < 1) throw std::invalid_argument("game config: at least one round");
        if ((kind == Kind::Gm || kind == Kind::Fm) && m < 1)
            throw std::invalid_argument("game config: node budget must be positive");
        if (kind == Kind::EF && pebbles < 1)
            throw std::invalid_argument("game config: pebble count must be positive");
    }
};

/// Work budget, overridable through the CYLGAMES_BUDGET environment variable.
inline std::size_t games_default_budget(std::size_t fallback = (std::size_t)1 << 24) {
    if (const char* s = std::getenv("CYLGAMES_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end && *end == '\0' && v > 0) return (std::size_t)v;
    }
    return fallback;
}

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Forth pebble game on finite graphs.
// ---------------------------------------------------------------------------

/// Finite loop-free undirected graph for the pebble game.
struct EFGraph {
    int size = 0;
    std::vector<std::vector<char>> adj;

    static EFGraph complete(int k) {
        EFGraph g;
        g.size = k;
        g.adj.assign(k, std::vector<char>(k, 1));
        for (int i = 0; i < k; ++i) g.adj[i][i] = 0;
        return g;
    }

    void validate() const {
        if (size < 1) throw std::invalid_argument("pebble graph: empty");
        if ((int)adj.size() != size) throw std::invalid_argument("pebble graph: shape");
        for (int i = 0; i < size; ++i) {
            if ((int)adj[i].size() != size) throw std::invalid_argument("pebble graph: shape");
            if (adj[i][i]) throw std::invalid_argument("pebble graph: loop");
            for (int j = 0; j < size; ++j)
                if (adj[i][j] != adj[j][i]) throw std::invalid_argument("pebble graph: not symmetric");
        }
    }
};

/// Forth game with `pebbles` pairs over `rounds` rounds: each round the first
/// player places a spare pebble or moves a placed one on the left graph, the
/// second player answers on the right graph so that the pebbled map stays a
/// partial isomorphism (equalities and edges both ways).  Returns the winner
/// under optimal play.
inline Player ef_solve(const EFGraph& A, const EFGraph& B, int pebbles, int rounds) {
    A.validate();
    B.validate();
    if (pebbles < 1) throw std::invalid_argument("pebble game: pebble count must be positive");
    if (rounds < 0) throw std::invalid_argument("pebble game: negative round count");

    using State = std::vector<std::pair<int, int>>;
    std::map<std::pair<State, int>, bool> memo;

    auto consistent = [&](const State& s, int a, int b) {
        for (auto& [x, y] : s) {
            if ((x == a) != (y == b)) return false;
            if ((bool)A.adj[x][a] != (bool)B.adj[y][b]) return false;
        }
        return true;
    };

    auto survives = [&](auto&& self, const State& s, int r) -> bool {
        if (r == 0) return true;
        auto key = std::make_pair(s, r);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        // bases the first player can demand on: keep all pebbles, or lift one
        std::set<State> bases;
        if ((int)s.size() < pebbles) bases.insert(s);
        for (std::size_t i = 0; i < s.size(); ++i) {
            State t = s;
            t.erase(t.begin() + i);
            bases.insert(t);
        }
        bool ok = true;
        for (const State& base : bases) {
            for (int a = 0; a < A.size && ok; ++a) {
                bool answered = false;
                for (int b = 0; b < B.size && !answered; ++b) {
                    if (!consistent(base, a, b)) continue;
                    State t = base;
                    t.emplace_back(a, b);
                    std::sort(t.begin(), t.end());
                    if (self(self, t, r - 1)) answered = true;
                }
                if (!answered) ok = false;
            }
            if (!ok) break;
        }
        memo.emplace(key, ok);
        return ok;
    };

    return survives(survives, {}, rounds) ? Player::exists : Player::forall;
}

// ---------------------------------------------------------------------------
// Atomic networks over an atom structure.
// ---------------------------------------------------------------------------

/// Atomic network: an atom of the structure for every n-tuple of nodes.
/// Labels are indexed by node positions (indices into `nodes`), big-endian.
struct Network {
    int n = 3;
    std::vector<int> nodes;         ///< sorted distinct node ids
    std::vector<std::size_t> label; ///< one atom per position tuple

    std::size_t count() const { return nodes.size(); }

    std::size_t tuples() const {
        std::size_t t = 1;
        for (int i = 0; i < n; ++i) t *= count();
        return t;
    }

    std::size_t idx(const std::vector<int>& pos) const {
        std::size_t v = 0;
        for (int p : pos) v = v * count() + (std::size_t)p;
        return v;
    }

    int position(int id) const {
        auto it = std::lower_bound(nodes.begin(), nodes.end(), id);
        if (it == nodes.end() || *it != id) return -1;
        return (int)(it - nodes.begin());
    }

    void validate() const {
        if (nodes.empty()) throw std::invalid_argument("network: no nodes");
        if (!std::is_sorted(nodes.begin(), nodes.end()) ||
            std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end())
            throw std::invalid_argument("network: node ids must be sorted and distinct");
        if (label.size() != tuples()) throw std::invalid_argument("network: label table size");
    }
};

namespace detail {

inline bool next_tuple(std::vector<int>& t, int k) {
    for (int i = (int)t.size() - 1; i >= 0; --i) {
        if (++t[i] < k) return true;
        t[i] = 0;
    }
    return false;
}

} // namespace detail

struct NetworkReport {
    bool ok = true;
    std::string violation;
    std::vector<int> witness; ///< node ids of the offending tuple
};

/// Validates the three coherence conditions of an atomic network: repeated
/// coordinates force the label under the diagonal, changing one coordinate
/// stays under the cylindrifier of the original label, and transposing two
/// coordinates substitutes the label.
inline NetworkReport check_network(const AtomStructure& at, const Network& N) {
    N.validate();
    const int n = at.sig.n;
    if (N.n != n) throw std::invalid_argument("network: arity differs from the structure dimension");
    for (std::size_t a : N.label)
        if (a >= at.atoms) throw std::invalid_argument("network: label is not an atom");

    NetworkReport rep;
    const int k = (int)N.count();
    std::vector<int> t(n, 0);
    auto fail = [&](const char* what) {
        rep.ok = false;
        rep.violation = what;
        for (int p : t) rep.witness.push_back(N.nodes[p]);
    };
    do {
        std::size_t a = N.label[N.idx(t)];
        for (int i = 0; i < n && rep.ok; ++i)
            for (int j = i + 1; j < n && rep.ok; ++j)
                if (t[i] == t[j] && !at.E[i][j].test(a))
                    fail("repeated coordinates but the label avoids the diagonal");
        for (int i = 0; i < n && rep.ok; ++i)
            for (int d = 0; d < k && rep.ok; ++d) {
                if (d == t[i]) continue;
                std::vector<int> s = t;
                s[i] = d;
                if (!at.T[i].related(N.label[N.idx(s)], a))
                    fail("one-coordinate change escapes the cylindrifier");
            }
        if (at.sig.transpositions)
            for (int i = 0; i < n && rep.ok; ++i)
                for (int j = i + 1; j < n && rep.ok; ++j) {
                    std::vector<int> s = t;
                    std::swap(s[i], s[j]);
                    if (N.label[N.idx(s)] != at.subst(i, j, a))
                        fail("transposed tuple is not labelled by the substituted atom");
                }
        if (!rep.ok) return rep;
    } while (detail::next_tuple(t, k));
    return rep;
}

/// A cylindrifier demand: the second player must produce a network extending
/// the current one to node `k` in which the tuple (face with k at slot l) is
/// labelled by atom `b`.
struct NetDemand {
    std::vector<int> face; ///< n-1 distinct existing node ids, in demand order
    int l = 0;             ///< slot of the new node inside the tuple
    int k = 0;             ///< node id: fresh, or an existing id off the face when reuse is allowed
    std::size_t b = 0;     ///< demanded atom
};

namespace detail {

inline std::vector<int> demand_tuple(const NetDemand& d, int x) {
    std::vector<int> t;
    t.reserve(d.face.size() + 1);
    for (std::size_t i = 0, f = 0; i < d.face.size() + 1; ++i)
        t.push_back((int)i == d.l ? x : d.face[f++]);
    return t;
}

} // namespace detail

/// All demands the first player may issue on network `N`.  Freshness uses the
/// smallest unused node id (below the budget for Gm/Fm); reuse (Fm) offers
/// every off-face node.
inline std::vector<NetDemand> net_legal_demands(const GameConfig& cfg, const AtomStructure& at,
                                                const Network& N) {
    cfg.validate();
    const int n = at.sig.n;
    std::vector<NetDemand> out;

    int fresh = -1;
    if (cfg.kind == GameConfig::Kind::Gk) {
        fresh = 0;
        while (N.position(fresh) >= 0) ++fresh;
    } else {
        for (int id = 0; id < cfg.m; ++id)
            if (N.position(id) < 0) {
                fresh = id;
                break;
            }
    }

    std::vector<int> face(n - 1);
    std::vector<char> used(N.count(), 0);
    auto faces = [&](auto&& self, int depth) -> void {
        if (depth == n - 1) {
            for (int l = 0; l < n; ++l) {
                auto push = [&](int k) {
                    // the demanded atom must sit under the cylindrifier of the
                    // tuple with any existing node at the new slot
                    std::vector<int> probe = detail::demand_tuple({face, l, k, 0}, face[0]);
                    std::vector<int> pos;
                    for (int id : probe) pos.push_back(N.position(id));
                    std::size_t base = N.label[N.idx(pos)];
                    for (std::size_t b = 0; b < at.atoms; ++b)
                        if (at.T[l].related(b, base)) out.push_back({face, l, k, b});
                };
                if (fresh >= 0) push(fresh);
                if (cfg.reuse())
                    for (int id : N.nodes)
                        if (std::find(face.begin(), face.end(), id) == face.end()) push(id);
            }
            return;
        }
        for (std::size_t p = 0; p < N.count(); ++p) {
            if (used[p]) continue;
            used[p] = 1;
            face[depth] = N.nodes[p];
            self(self, depth + 1);
            used[p] = 0;
        }
    };
    if ((int)N.count() >= n - 1) faces(faces, 0);
    return out;
}

namespace detail {

/// Depth-first completion of a partially labelled network.  `partial` holds
/// the already-fixed labels (copied tuples and the demanded one); every
/// unassigned tuple is tried against all atoms, pruned by the diagonal,
/// cylindrifier and transposition constraints versus assigned tuples.
template <typename F>
inline bool complete_network(const AtomStructure& at, Network& N,
                             std::vector<std::optional<std::size_t>>& partial,
                             std::size_t& budget, F&& emit) {
    const int n = at.sig.n;
    const int k = (int)N.count();
    std::vector<std::size_t> order;
    for (std::size_t u = 0; u < partial.size(); ++u)
        if (!partial[u]) order.push_back(u);

    std::vector<int> digits(n);
    auto decode = [&](std::size_t u, std::vector<int>& t) {
        for (int i = n - 1; i >= 0; --i) {
            t[i] = (int)(u % (std::size_t)k);
            u /= (std::size_t)k;
        }
    };

    auto admissible = [&](const std::vector<int>& t, std::size_t a) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (t[i] == t[j] && !at.E[i][j].test(a)) return false;
        std::vector<int> s(n);
        for (int i = 0; i < n; ++i) {
            s = t;
            for (int d = 0; d < k; ++d) {
                if (d == t[i]) continue;
                s[i] = d;
                auto& v = partial[N.idx(s)];
                if (v && !(at.T[i].related(a, *v) && at.T[i].related(*v, a))) return false;
            }
            s[i] = t[i];
        }
        if (at.sig.transpositions)
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    if (t[i] == t[j]) continue;
                    s = t;
                    std::swap(s[i], s[j]);
                    auto& v = partial[N.idx(s)];
                    if (v && *v != at.subst(i, j, a)) return false;
                }
        return true;
    };

    auto rec = [&](auto&& self, std::size_t d) -> bool {
        if (budget == 0) throw BudgetExceeded("network completion budget exhausted");
        --budget;
        if (d == order.size()) {
            for (std::size_t u = 0; u < partial.size(); ++u) N.label[u] = *partial[u];
            if (!check_network(at, N).ok) return false;
            return emit(N);
        }
        std::size_t u = order[d];
        if (partial[u]) return self(self, d + 1); // forced by an earlier transposition
        for (std::size_t a = 0; a < at.atoms; ++a) {
            decode(u, digits); // deeper levels reuse the scratch tuple
            if (!admissible(digits, a)) continue;
            partial[u] = a;
            if (self(self, d + 1)) {
                partial[u] = std::nullopt;
                return true;
            }
            partial[u] = std::nullopt;
        }
        return false;
    };
    N.label.assign(partial.size(), 0);
    return rec(rec, 0);
}

} // namespace detail

/// Every network the second player may answer demand `d` with: extensions of
/// `N` by node d.k whose demanded tuple carries atom d.b.  When d.k is an
/// existing node its old labels are discarded first.  `emit` may return true
/// to stop early.
template <typename F>
inline void net_responses(const AtomStructure& at, const Network& N, const NetDemand& d,
                          std::size_t& budget, F&& emit) {
    const int n = at.sig.n;
    if ((int)d.face.size() != n - 1) throw std::invalid_argument("demand: face arity");
    for (int id : d.face)
        if (N.position(id) < 0) throw std::invalid_argument("demand: face node missing");
    if (std::find(d.face.begin(), d.face.end(), d.k) != d.face.end())
        throw std::invalid_argument("demand: new node on the face");
    if (d.l < 0 || d.l >= n) throw std::invalid_argument("demand: slot out of range");
    if (d.b >= at.atoms) throw std::invalid_argument("demand: atom out of range");

    const bool reused = N.position(d.k) >= 0;
    Network M;
    M.n = n;
    M.nodes = N.nodes;
    if (!reused) {
        M.nodes.push_back(d.k);
        std::sort(M.nodes.begin(), M.nodes.end());
    }

    std::vector<std::optional<std::size_t>> partial(M.tuples());
    const int kc = (int)M.count();
    const int knew = M.position(d.k);
    std::vector<int> t(n, 0);
    do {
        if (std::find(t.begin(), t.end(), knew) != t.end()) continue; // to be refilled
        std::vector<int> old;
        for (int p : t) old.push_back(N.position(M.nodes[p]));
        partial[M.idx(t)] = N.label[N.idx(old)];
    } while (detail::next_tuple(t, kc));

    std::vector<int> pinned_ids = detail::demand_tuple(d, d.k);
    std::vector<int> pinned;
    for (int id : pinned_ids) pinned.push_back(M.position(id));
    partial[M.idx(pinned)] = d.b;

    detail::complete_network(at, M, partial, budget, std::forward<F>(emit));
}

namespace detail {

/// Canonical form of a network up to node renaming: the minimum label table
/// over all permutations of the node positions.
inline std::string network_key(const Network& N) {
    const int k = (int)N.count();
    const int n = N.n;
    if (k > 8) throw std::invalid_argument("network key: too many nodes to canonicalise exactly");
    std::vector<int> order(k);
    for (int i = 0; i < k; ++i) order[i] = i;
    std::string best;
    std::vector<int> t(n, 0), s(n, 0);
    do {
        std::string cur;
        cur.push_back((char)k);
        std::fill(t.begin(), t.end(), 0);
        do {
            for (int i = 0; i < n; ++i) s[i] = order[t[i]];
            std::size_t a = N.label[N.idx(s)];
            cur.push_back((char)(a & 0xff));
            cur.push_back((char)((a >> 8) & 0xff));
        } while (next_tuple(t, k));
        if (best.empty() || cur < best) best = cur;
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

} // namespace detail

struct NetSolveResult {
    Player winner = Player::exists;
    bool conclusive = true;
    int rounds = 0;                    ///< rounds the first player needs when winning
    std::size_t states = 0;            ///< memoised positions explored
    std::size_t atom = (std::size_t)-1; ///< winning initial atom, if any
};

/// Exhaustive solver for the bounded-node network games.  The first player
/// wins if some atom admits no surviving initial network within the round
/// budget; a budget exhaustion yields an inconclusive verdict (never a claim).
inline NetSolveResult solve(const GameConfig& cfg, const AtomStructure& at,
                            std::size_t budget = games_default_budget()) {
    cfg.validate();
    if (cfg.kind == GameConfig::Kind::EF || cfg.kind == GameConfig::Kind::J)
        throw std::invalid_argument("network solver: not a network game kind");
    const int n = at.sig.n;
    NetSolveResult res;

    // initial networks on up to n nodes, grouped once
    std::vector<Network> initial;
    std::size_t init_budget = budget;
    int maxnodes = std::min(n, cfg.kind == GameConfig::Kind::Gk ? n : cfg.m);
    for (int j = 1; j <= maxnodes; ++j) {
        Network N;
        N.n = n;
        for (int i = 0; i < j; ++i) N.nodes.push_back(i);
        std::vector<std::optional<std::size_t>> partial(N.tuples());
        try {
            detail::complete_network(at, N, partial, init_budget, [&](const Network& M) {
                initial.push_back(M);
                return false;
            });
        } catch (const BudgetExceeded&) {
            res.conclusive = false;
            return res;
        }
    }

    std::map<std::pair<std::string, int>, int> memo;
    std::size_t work = budget;

    // value 0: the second player survives `rl` more demands; value v > 0: the
    // first player forces failure within v demands
    auto value = [&](auto&& self, const Network& N, int rl) -> int {
        if (rl == 0) return 0;
        auto key = std::make_pair(detail::network_key(N), rl);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        if (work == 0) throw BudgetExceeded("network game budget exhausted");
        --work;
        ++res.states;
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

    try {
        for (std::size_t a = 0; a < at.atoms; ++a) {
            int worst = 0;
            bool survived = false;
            for (const Network& N : initial) {
                bool holds = false;
                for (std::size_t u = 0; u < N.label.size() && !holds; ++u)
                    if (N.label[u] == a) holds = true;
                if (!holds) continue;
                int v = value(value, N, cfg.rounds - 1);
                if (v == 0) {
                    survived = true;
                    break;
                }
                worst = std::max(worst, v);
            }
            if (!survived) {
                res.winner = Player::forall;
                res.rounds = 1 + worst;
                res.atom = a;
                return res;
            }
        }
    } catch (const BudgetExceeded&) {
        res.conclusive = false;
    }
    return res;
}

// ---------------------------------------------------------------------------
// Hypernetworks and the transformation/amalgamation game.
// ---------------------------------------------------------------------------

/// Network enriched with labelled hyperedges: finite sequences of nodes of any
/// positive length up to `maxlen`.  Sequences absent from the map carry the
/// default label `lambda`.
struct Hypernetwork {
    Network net;
    std::map<std::vector<int>, int> hyper; ///< node-id sequence -> label
    int lambda = 0;
    int maxlen = 0; ///< longest hyperedge length under consideration

    int hyperlabel(const std::vector<int>& xs) const {
        auto it = hyper.find(xs);
        return it == hyper.end() ? lambda : it->second;
    }
};

namespace detail {

/// Classes of the relation "x and y complete to a tuple under the first
/// diagonal", closed under union-find so a class id exists even on degenerate
/// inputs.
inline std::vector<int> diagonal_classes(const AtomStructure& at, const Network& N) {
    const int k = (int)N.count();
    const int n = N.n;
    std::vector<int> parent(k);
    for (int i = 0; i < k; ++i) parent[i] = i;
    auto find = [&](auto&& self, int x) -> int {
        return parent[x] == x ? x : parent[x] = self(self, parent[x]);
    };
    std::vector<int> t(n, 0);
    do {
        if (at.E[0][1].test(N.label[N.idx(t)])) {
            int a = find(find, t[0]), b = find(find, t[1]);
            if (a != b) parent[a] = b;
        }
    } while (next_tuple(t, k));
    std::vector<int> cls(k);
    for (int i = 0; i < k; ++i) cls[i] = find(find, i);
    return cls;
}

template <typename F>
inline void for_sequences(int k, int maxlen, F&& f) {
    std::vector<int> seq;
    auto rec = [&](auto&& self) -> void {
        if (!seq.empty()) f(seq);
        if ((int)seq.size() == maxlen) return;
        for (int p = 0; p < k; ++p) {
            seq.push_back(p);
            self(self);
            seq.pop_back();
        }
    };
    if (maxlen > 0) rec(rec);
}

} // namespace detail

struct HyperReport {
    bool ok = true;
    std::string violation;
    std::vector<int> witness;
};

/// Hyperedge is short when its entries touch at most n diagonal classes.
inline bool short_hyperedge(const AtomStructure& at, const Hypernetwork& H,
                            const std::vector<int>& xs) {
    auto cls = detail::diagonal_classes(at, H.net);
    std::set<int> seen;
    for (int id : xs) {
        int p = H.net.position(id);
        if (p < 0) throw std::invalid_argument("hyperedge: node not in the network");
        seen.insert(cls[p]);
    }
    return (int)seen.size() <= at.sig.n;
}

/// Validates the network part, that hyperedge labels depend only on the
/// diagonal classes of the entries, and that every short hyperedge carries the
/// default label.
inline HyperReport check_hypernetwork(const AtomStructure& at, const Hypernetwork& H) {
    HyperReport rep;
    auto net = check_network(at, H.net);
    if (!net.ok) {
        rep.ok = false;
        rep.violation = net.violation;
        rep.witness = net.witness;
        return rep;
    }
    int maxlen = H.maxlen;
    for (auto& [xs, lab] : H.hyper) {
        (void)lab;
        if (xs.empty()) throw std::invalid_argument("hyperedge: empty sequence");
        for (int id : xs)
            if (H.net.position(id) < 0) throw std::invalid_argument("hyperedge: node not in the network");
        maxlen = std::max(maxlen, (int)xs.size());
    }
    auto cls = detail::diagonal_classes(at, H.net);
    const int k = (int)H.net.count();
    std::map<std::vector<int>, std::pair<int, std::vector<int>>> by_class;
    bool done = false;
    detail::for_sequences(k, maxlen, [&](const std::vector<int>& pos) {
        if (done) return;
        std::vector<int> ids, key;
        std::set<int> classes;
        for (int p : pos) {
            ids.push_back(H.net.nodes[p]);
            key.push_back(cls[p]);
            classes.insert(cls[p]);
        }
        int lab = H.hyperlabel(ids);
        if ((int)classes.size() <= at.sig.n && lab != H.lambda) {
            rep.ok = false;
            rep.violation = "short hyperedge with a non-default label";
            rep.witness = ids;
            done = true;
            return;
        }
        auto [it, fresh] = by_class.emplace(key, std::make_pair(lab, ids));
        if (!fresh && it->second.first != lab) {
            rep.ok = false;
            rep.violation = "hyperedge label differs across diagonal-equivalent sequences";
            rep.witness = ids;
            done = true;
        }
    });
    return rep;
}

/// First-player moves of the hypernetwork game: transform a played
/// hypernetwork along a finite map, demand an amalgam of two played
/// hypernetworks that agree on their (nonempty) overlap, or issue a
/// cylindrifier demand.  For the latter two the second player's response
/// travels with the move.
struct JTransformation {
    std::size_t index = 0;
    std::map<int, int> theta; ///< new node id -> existing node id
};

struct JAmalgamation {
    std::size_t m_index = 0, n_index = 0;
    Hypernetwork response;
};

struct JCylindrifier {
    std::size_t index = 0;
    NetDemand demand;
    Hypernetwork response;
};

using JMove = std::variant<JTransformation, JAmalgamation, JCylindrifier>;

struct JState {
    std::vector<Hypernetwork> played;
};

namespace detail {

/// Labels of one hypernetwork must reproduce those of another on every tuple
/// and hyperedge drawn from the given node set.
inline bool agrees_on(const AtomStructure& at, const Hypernetwork& A, const Hypernetwork& B,
                      const std::vector<int>& ids, int maxlen) {
    const int n = at.sig.n;
    std::vector<int> t(n, 0);
    std::vector<int> pa(n), pb(n), xs;
    do {
        for (int i = 0; i < n; ++i) {
            pa[i] = A.net.position(ids[t[i]]);
            pb[i] = B.net.position(ids[t[i]]);
        }
        if (A.net.label[A.net.idx(pa)] != B.net.label[B.net.idx(pb)]) return false;
    } while (next_tuple(t, (int)ids.size()));
    bool same = true;
    for_sequences((int)ids.size(), maxlen, [&](const std::vector<int>& pos) {
        if (!same) return;
        xs.clear();
        for (int p : pos) xs.push_back(ids[p]);
        if (A.hyperlabel(xs) != B.hyperlabel(xs)) same = false;
    });
    return same;
}

} // namespace detail

/// Applies one move of the hypernetwork game and returns the state with the
/// second player's (validated or computed) answer appended.
inline JState j_game_step(const AtomStructure& at, JState state, const JMove& move) {
    const int n = at.sig.n;
    auto played = [&](std::size_t i) -> const Hypernetwork& {
        if (i >= state.played.size()) throw std::invalid_argument("hypernetwork move: index out of range");
        return state.played[i];
    };

    if (auto* tr = std::get_if<JTransformation>(&move)) {
        const Hypernetwork& N = played(tr->index);
        Hypernetwork M;
        M.lambda = N.lambda;
        M.maxlen = N.maxlen;
        M.net.n = n;
        for (auto& [x, y] : tr->theta) {
            if (N.net.position(y) < 0)
                throw std::invalid_argument("transformation: image node not in the network");
            M.net.nodes.push_back(x);
        }
        std::sort(M.net.nodes.begin(), M.net.nodes.end());
        if (M.net.nodes.empty()) throw std::invalid_argument("transformation: empty domain");
        M.net.label.assign(M.net.tuples(), 0);
        const int kc = (int)M.net.count();
        std::vector<int> t(n, 0), old(n);
        do {
            for (int i = 0; i < n; ++i) old[i] = N.net.position(tr->theta.at(M.net.nodes[t[i]]));
            M.net.label[M.net.idx(t)] = N.net.label[N.net.idx(old)];
        } while (detail::next_tuple(t, kc));
        detail::for_sequences(kc, M.maxlen, [&](const std::vector<int>& pos) {
            std::vector<int> ids, img;
            for (int p : pos) {
                ids.push_back(M.net.nodes[p]);
                img.push_back(tr->theta.at(M.net.nodes[p]));
            }
            int lab = N.hyperlabel(img);
            if (lab != M.lambda) M.hyper[ids] = lab;
        });
        state.played.push_back(std::move(M));
        return state;
    }

    if (auto* am = std::get_if<JAmalgamation>(&move)) {
        const Hypernetwork& M = played(am->m_index);
        const Hypernetwork& N = played(am->n_index);
        int maxlen = std::max({M.maxlen, N.maxlen, am->response.maxlen});
        std::vector<int> overlap;
        std::set_intersection(M.net.nodes.begin(), M.net.nodes.end(), N.net.nodes.begin(),
                              N.net.nodes.end(), std::back_inserter(overlap));
        if (overlap.empty()) throw std::invalid_argument("amalgamation: disjoint hypernetworks");
        if (M.lambda != N.lambda || am->response.lambda != M.lambda)
            throw std::invalid_argument("amalgamation: default labels differ");
        if (!detail::agrees_on(at, M, N, overlap, maxlen))
            throw std::invalid_argument("amalgamation: the two hypernetworks disagree on their overlap");
        const Hypernetwork& L = am->response;
        std::vector<int> uni;
        std::set_union(M.net.nodes.begin(), M.net.nodes.end(), N.net.nodes.begin(),
                       N.net.nodes.end(), std::back_inserter(uni));
        if (L.net.nodes != uni)
            throw std::invalid_argument("amalgamation response: nodes must be exactly the union");
        if (!detail::agrees_on(at, L, M, M.net.nodes, maxlen) ||
            !detail::agrees_on(at, L, N, N.net.nodes, maxlen))
            throw std::invalid_argument("amalgamation response: does not extend both sides");
        auto rep = check_hypernetwork(at, L);
        if (!rep.ok) throw std::invalid_argument("amalgamation response: " + rep.violation);
        state.played.push_back(L);
        return state;
    }

    const auto& cy = std::get<JCylindrifier>(move);
    const Hypernetwork& N = played(cy.index);
    const NetDemand& d = cy.demand;
    if (N.net.position(d.k) >= 0)
        throw std::invalid_argument("cylindrifier move: node reuse is not part of this game");
    const Hypernetwork& L = cy.response;
    if (L.lambda != N.lambda) throw std::invalid_argument("cylindrifier response: default label differs");
    std::vector<int> expect = N.net.nodes;
    expect.push_back(d.k);
    std::sort(expect.begin(), expect.end());
    if (L.net.nodes != expect)
        throw std::invalid_argument("cylindrifier response: nodes must be the old ones plus the new");
    if (!detail::agrees_on(at, L, N, N.net.nodes, std::max({N.maxlen, L.maxlen, 1})))
        throw std::invalid_argument("cylindrifier response: does not extend the old hypernetwork");
    std::vector<int> tuple_ids = detail::demand_tuple(d, d.k), pos;
    for (int id : tuple_ids) pos.push_back(L.net.position(id));
    if (L.net.label[L.net.idx(pos)] != d.b)
        throw std::invalid_argument("cylindrifier response: demanded tuple carries the wrong atom");
    auto rep = check_hypernetwork(at, L);
    if (!rep.ok) throw std::invalid_argument("cylindrifier response: " + rep.violation);
    state.played.push_back(L);
    return state;
}

// ---------------------------------------------------------------------------
// Coloured-graph games driven by a rainbow signature.
// ---------------------------------------------------------------------------

/// Game position: a coloured graph over a mutable set of node ids.  Edge
/// colours are stored under the smaller id first, which orients the directed
/// red pairs of the order-sensitive regime.
struct Board {
    int n = 3;
    std::vector<int> active;                         ///< sorted node ids
    std::map<std::pair<int, int>, Colour> edge;      ///< key (min id, max id)
    std::map<std::vector<int>, std::set<int>> hyper; ///< sorted id tuple -> tint set

    bool is_active(int id) const { return std::binary_search(active.begin(), active.end(), id); }

    const Colour* edge_at(int u, int v) const {
        if (u > v) std::swap(u, v);
        auto it = edge.find({u, v});
        return it == edge.end() ? nullptr : &it->second;
    }

    void set(int u, int v, Colour c) {
        if (u == v) throw std::invalid_argument("board: loop edge");
        if (u > v) std::swap(u, v);
        edge[{u, v}] = c;
    }
};

inline Board board_from_graph(const ColouredGraph& g) {
    Board b;
    b.n = g.n;
    for (int v = 0; v < g.nodes; ++v) b.active.push_back(v);
    for (int v = 0; v < g.nodes; ++v)
        for (int u = 0; u < v; ++u)
            if (g.edge(u, v)) b.edge[{u, v}] = *g.edge(u, v);
    b.hyper = g.hyper;
    return b;
}

/// The board as a coloured graph on positions 0..|active|-1 (id order, so red
/// orientation is preserved).  Missing edges stay unlabelled.
inline ColouredGraph board_graph(const Board& b) {
    ColouredGraph g(b.n, (int)b.active.size());
    auto pos = [&](int id) {
        return (int)(std::lower_bound(b.active.begin(), b.active.end(), id) - b.active.begin());
    };
    for (auto& [uv, c] : b.edge) g.set_edge(pos(uv.first), pos(uv.second), c);
    for (auto& [ids, S] : b.hyper) {
        std::vector<int> t;
        for (int id : ids) t.push_back(pos(id));
        g.set_hyper(t, S);
    }
    return g;
}

/// Canonical form of a board up to node renaming: the minimum encoding over
/// all orderings of the nodes; directed red pairs are re-oriented whenever a
/// renaming inverts the order of an edge's endpoints.  Optionally reports the
/// minimising ordering (new index -> position in `active`).
inline std::string board_key(const Board& b, std::vector<int>* order_out = nullptr) {
    const int k = (int)b.active.size();
    if (k > 8) throw std::invalid_argument("board key: too many nodes to canonicalise exactly");
    std::vector<int> order(k);
    for (int i = 0; i < k; ++i) order[i] = i;
    std::string best;
    std::vector<int> best_order = order;
    auto enc16 = [](std::string& s, int v) {
        v += 4096;
        s.push_back((char)((v >> 8) & 0xff));
        s.push_back((char)(v & 0xff));
    };
    do {
        std::string cur;
        cur.push_back((char)k);
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                int u = b.active[order[i]], v = b.active[order[j]];
                const Colour* c = b.edge_at(u, v);
                if (!c) {
                    cur.push_back((char)0);
                    continue;
                }
                Colour cc = *c;
                if (u > v && cc.is_red()) std::swap(cc.i, cc.j);
                cur.push_back((char)((int)cc.kind + 1));
                enc16(cur, cc.i);
                enc16(cur, cc.j);
                enc16(cur, cc.sup);
            }
        detail::for_subsets(k, b.n - 1, [&](const std::vector<int>& pick) {
            std::vector<int> ids;
            for (int p : pick) ids.push_back(b.active[order[p]]);
            std::sort(ids.begin(), ids.end());
            auto it = b.hyper.find(ids);
            if (it == b.hyper.end()) {
                cur.push_back((char)0xf0);
                return;
            }
            cur.push_back((char)it->second.size());
            for (int t : it->second) enc16(cur, t);
        });
        if (best.empty() || cur < best) {
            best = cur;
            best_order = order;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    if (order_out) *order_out = best_order;
    return best;
}

/// Cylindrifier demand on a board: label every edge from the face to `node`.
/// A fresh `node` extends the board; an active off-face `node` is recycled
/// (all its previous labels are discarded first).  Edge colours are oriented
/// smaller-id-first, like board storage.
struct GraphDemand {
    std::vector<int> face;    ///< sorted distinct active ids, n-1 of them
    int node = -1;            ///< the demanded node
    std::vector<Colour> edge; ///< edge[i] joins face[i] to node
    std::map<std::vector<int>, std::set<int>> hyper; ///< yellows inside face + node
};

inline Board apply_demand(const Board& b, const GraphDemand& d) {
    Board out = b;
    if (out.is_active(d.node)) {
        for (auto it = out.edge.begin(); it != out.edge.end();)
            it = (it->first.first == d.node || it->first.second == d.node) ? out.edge.erase(it) : ++it;
        for (auto it = out.hyper.begin(); it != out.hyper.end();)
            it = std::binary_search(it->first.begin(), it->first.end(), d.node) ? out.hyper.erase(it)
                                                                                : ++it;
    } else {
        out.active.insert(std::upper_bound(out.active.begin(), out.active.end(), d.node), d.node);
    }
    for (std::size_t i = 0; i < d.face.size(); ++i) out.set(d.face[i], d.node, d.edge[i]);
    for (auto& [ids, S] : d.hyper) out.hyper[ids] = S;
    return out;
}

/// Whether the demand is well-formed and its labelled part (face, new node,
/// carried-over face yellow) is itself a valid coloured graph.
inline bool demand_legal(const RainbowSignature& sig, const GameConfig& cfg, const Board& b,
                         const GraphDemand& d, std::string* why = nullptr) {
    auto bad = [&](const char* what) {
        if (why) *why = what;
        return false;
    };
    const int n = sig.n;
    if ((int)d.face.size() != n - 1 || (int)d.edge.size() != n - 1) return bad("face arity");
    if (!std::is_sorted(d.face.begin(), d.face.end()) ||
        std::adjacent_find(d.face.begin(), d.face.end()) != d.face.end())
        return bad("face must be sorted and distinct");
    for (int id : d.face)
        if (!b.is_active(id)) return bad("face node not on the board");
    if (std::binary_search(d.face.begin(), d.face.end(), d.node)) return bad("demanded node on the face");
    const bool recycled = b.is_active(d.node);
    if (recycled && !cfg.reuse()) return bad("node reuse is not allowed in this game");
    if (!recycled && cfg.kind != GameConfig::Kind::Gk && (int)b.active.size() >= cfg.m)
        return bad("node budget exhausted");
    try {
        for (const Colour& c : d.edge) detail::validate_colour(sig, c);
        for (auto& [ids, S] : d.hyper) {
            if ((int)ids.size() != n - 1 || !std::is_sorted(ids.begin(), ids.end()))
                return bad("demand yellow: not a sorted (n-1)-tuple");
            if (!std::binary_search(ids.begin(), ids.end(), d.node))
                return bad("demand yellow: tuple misses the new node");
            for (int id : ids)
                if (id != d.node && std::find(d.face.begin(), d.face.end(), id) == d.face.end())
                    return bad("demand yellow: tuple leaves the face");
            for (int t : S)
                if (sig.tint_bit(t) < 0) return bad("demand yellow: tint outside the signature");
        }
        // the labelled part: face subgraph + the new node, with the face's own
        // yellow carried over
        Board phi;
        phi.n = n;
        phi.active = d.face;
        phi.active.insert(std::upper_bound(phi.active.begin(), phi.active.end(), d.node), d.node);
        for (std::size_t i = 0; i < d.face.size(); ++i)
            for (std::size_t j = i + 1; j < d.face.size(); ++j) {
                const Colour* c = b.edge_at(d.face[i], d.face[j]);
                if (!c) return bad("face edge missing from the board");
                phi.set(d.face[i], d.face[j], *c);
            }
        for (std::size_t i = 0; i < d.face.size(); ++i) phi.set(d.face[i], d.node, d.edge[i]);
        if (auto it = b.hyper.find(d.face); it != b.hyper.end()) phi.hyper[d.face] = it->second;
        for (auto& [ids, S] : d.hyper) phi.hyper[ids] = S;
        auto rep = check_coloured_graph(sig, board_graph(phi));
        if (!rep.ok) return bad(rep.violation.c_str());
    } catch (const std::invalid_argument& e) {
        if (why) *why = e.what();
        return false;
    }
    return true;
}

/// Cones of a (possibly edge-incomplete) board: every fully labelled n-subset
/// is inspected.  Base and apex are node ids.
inline std::vector<Cone> board_cones(const Board& b) {
    std::vector<Cone> out;
    const int k = (int)b.active.size();
    if (k < b.n) return out;
    detail::for_subsets(k, b.n, [&](const std::vector<int>& pick) {
        ColouredGraph g(b.n, b.n);
        for (int i = 0; i < b.n; ++i)
            for (int j = i + 1; j < b.n; ++j) {
                const Colour* c = b.edge_at(b.active[pick[i]], b.active[pick[j]]);
                if (!c) return;
                Colour cc = *c;
                g.set_edge(i, j, cc);
            }
        for (Cone c : find_cones(g)) {
            for (int& v : c.base) v = b.active[pick[v]];
            c.apex = b.active[pick[c.apex]];
            out.push_back(std::move(c));
        }
    });
    return out;
}

/// The colour alphabet the players draw edge labels from; tinted greens come
/// first so that cone-shaped demands are generated early.
inline std::vector<Colour> game_colours(const RainbowSignature& sig) {
    if (sig.red_mode == RedMode::superscripted)
        throw std::invalid_argument("graph games: superscripted reds are a blow-up artefact, not playable");
    std::vector<Colour> out;
    for (int t : sig.green_zero) out.push_back(Colour::green0(t));
    for (int r = 1; r <= sig.n - 2; ++r) out.push_back(Colour::green(r));
    for (int w = 0; w <= sig.n - 2; ++w) out.push_back(Colour::white(w));
    for (int a : sig.red_index)
        for (int c : sig.red_index) {
            // plain reds are unordered distinct pairs (one orientation);
            // ordered reds take every pair, equal indices included
            if (sig.red_mode == RedMode::plain && a >= c) continue;
            out.push_back(Colour::red(a, c));
        }
    return out;
}

/// All completions the responding player may answer a demand with: every
/// unlabelled edge at `node` gets a colour (triangle patterns pruned inline),
/// every newly green-free unlabelled (n-1)-tuple through `node` gets a yellow.
/// With `full_yellow` only the complete tint set is offered, which is the
/// dominant choice whenever the opponent's later demands copy face labels from
/// the board instead of reading yellow content.  `emit` may return true to
/// stop; the function reports whether it was stopped.
template <typename F>
inline bool enumerate_replies(const RainbowSignature& sig, const Board& after_demand, int node,
                              bool full_yellow, std::size_t& budget, F&& emit) {
    const Board& base = after_demand;
    std::vector<int> others;
    for (int id : base.active)
        if (id != node && !base.edge_at(node, id)) others.push_back(id);
    std::vector<Colour> palette = game_colours(sig);

    Board work = base;
    std::vector<int> full_tints(sig.green_zero.begin(), sig.green_zero.end());

    auto leaf = [&](auto&& self_yellows, std::vector<std::vector<int>>& tuples, std::size_t ti) -> bool {
        if (ti == tuples.size()) {
            auto rep = check_coloured_graph(sig, board_graph(work));
            if (!rep.ok) return false;
            Board done = work;
            return emit(done);
        }
        const std::vector<int>& t = tuples[ti];
        auto choose = [&](const std::set<int>& S) {
            work.hyper[t] = S;
            bool stop = self_yellows(self_yellows, tuples, ti + 1);
            work.hyper.erase(t);
            return stop;
        };
        if (full_yellow) return choose(std::set<int>(full_tints.begin(), full_tints.end()));
        std::size_t total = (std::size_t)1 << full_tints.size();
        for (std::size_t m = 0; m < total; ++m) {
            std::set<int> S;
            for (std::size_t p = 0; p < full_tints.size(); ++p)
                if (m & ((std::size_t)1 << p)) S.insert(full_tints[p]);
            if (choose(S)) return true;
        }
        return false;
    };

    auto yellows = [&]() -> bool {
        std::vector<std::vector<int>> tuples;
        detail::for_subsets((int)work.active.size(), sig.n - 1, [&](const std::vector<int>& pick) {
            std::vector<int> ids;
            for (int p : pick) ids.push_back(work.active[p]);
            if (!std::binary_search(ids.begin(), ids.end(), node)) return;
            if (work.hyper.count(ids)) return;
            for (std::size_t i = 0; i < ids.size(); ++i)
                for (std::size_t j = i + 1; j < ids.size(); ++j) {
                    const Colour* c = work.edge_at(ids[i], ids[j]);
                    if (c && c->is_green()) return;
                }
            tuples.push_back(std::move(ids));
        });
        auto rec = [&](auto&& self, std::vector<std::vector<int>>& ts, std::size_t ti) -> bool {
            return leaf(self, ts, ti);
        };
        return rec(rec, tuples, 0);
    };

    auto triangles_ok = [&](int beta, const Colour& c) {
        for (int g : work.active) {
            if (g == node || g == beta) continue;
            const Colour* e1 = work.edge_at(node, g);
            const Colour* e2 = work.edge_at(beta, g);
            if (!e1 || !e2) continue;
            int a = std::min({node, beta, g}), cc = std::max({node, beta, g});
            int bb = node + beta + g - a - cc;
            auto lab = [&](int u, int v) -> Colour {
                if ((u == node && v == beta) || (u == beta && v == node)) return c;
                return *work.edge_at(u, v);
            };
            if (detail::triangle_forbidden(sig, lab(a, bb), lab(a, cc), lab(bb, cc))) return false;
        }
        return true;
    };

    auto edges = [&](auto&& self, std::size_t oi) -> bool {
        if (budget == 0) throw BudgetExceeded("reply enumeration budget exhausted");
        --budget;
        if (oi == others.size()) return yellows();
        int beta = others[oi];
        // palette reds are already oriented smaller-endpoint-first; the order
        // regime lists both orientations, the plain regime needs only one
        for (const Colour& cc : palette) {
            if (!triangles_ok(beta, cc)) continue;
            work.set(node, beta, cc);
            bool stop = self(self, oi + 1);
            work.edge.erase({std::min(node, beta), std::max(node, beta)});
            if (stop) return true;
        }
        return false;
    };
    return edges(edges, 0);
}

/// Every demand available on a board, edge labels drawn from `palette`.
/// Demands carrying a tinted green to a face node come first (the palette
/// lists those colours first), which finds cone-based wins early.  With
/// `full_yellow_only` the demanding player's own yellows are fixed to the
/// complete tint set — the dominant choice when certifying the responder.
/// `fn` may return true to stop; returns whether it was stopped.
template <typename F>
inline bool for_each_demand(const RainbowSignature& sig, const GameConfig& cfg, const Board& b,
                            const std::vector<Colour>& palette, bool full_yellow_only, F&& fn) {
    const int n = sig.n;
    if ((int)b.active.size() < n - 1) return false;
    int fresh = 0;
    while (b.is_active(fresh)) ++fresh;
    const bool fresh_ok = cfg.kind == GameConfig::Kind::Gk || (int)b.active.size() < cfg.m;
    std::vector<int> full_tints(sig.green_zero.begin(), sig.green_zero.end());

    bool stopped = false;
    detail::for_subsets((int)b.active.size(), n - 1, [&](const std::vector<int>& pick) {
        if (stopped) return;
        std::vector<int> face;
        for (int p : pick) face.push_back(b.active[p]);
        std::vector<int> nopts;
        if (fresh_ok) nopts.push_back(fresh);
        if (cfg.reuse())
            for (int id : b.active)
                if (!std::binary_search(face.begin(), face.end(), id)) nopts.push_back(id);
        for (int node : nopts) {
            std::vector<std::size_t> pc(n - 1, 0);
            for (;;) {
                GraphDemand d;
                d.face = face;
                d.node = node;
                for (int i = 0; i < n - 1; ++i) d.edge.push_back(palette[pc[i]]);
                // green-free (n-1)-tuples through the node need a yellow
                std::vector<std::vector<int>> need;
                std::vector<int> ext = face;
                ext.insert(std::upper_bound(ext.begin(), ext.end(), node), node);
                detail::for_subsets(n, n - 1, [&](const std::vector<int>& q) {
                    std::vector<int> ids;
                    for (int p : q) ids.push_back(ext[p]);
                    if (!std::binary_search(ids.begin(), ids.end(), node)) return;
                    for (std::size_t i = 0; i < ids.size(); ++i)
                        for (std::size_t j = i + 1; j < ids.size(); ++j) {
                            int u = ids[i], v = ids[j];
                            Colour c;
                            if (u == node || v == node) {
                                int f = u == node ? v : u;
                                c = d.edge[std::find(face.begin(), face.end(), f) - face.begin()];
                            } else {
                                const Colour* e = b.edge_at(u, v);
                                if (!e) return;
                                c = *e;
                            }
                            if (c.is_green()) return;
                        }
                    need.push_back(std::move(ids));
                });
                auto emit = [&]() {
                    std::string why;
                    if (demand_legal(sig, cfg, b, d, &why) && fn(d)) stopped = true;
                };
                if (full_yellow_only || need.empty()) {
                    for (auto& t : need) d.hyper[t] = std::set<int>(full_tints.begin(), full_tints.end());
                    emit();
                } else {
                    std::vector<std::size_t> ym(need.size(), 0);
                    std::size_t total = (std::size_t)1 << full_tints.size();
                    for (;;) {
                        d.hyper.clear();
                        for (std::size_t ti = 0; ti < need.size(); ++ti) {
                            std::set<int> S;
                            for (std::size_t p = 0; p < full_tints.size(); ++p)
                                if (ym[ti] & ((std::size_t)1 << p)) S.insert(full_tints[p]);
                            d.hyper[need[ti]] = std::move(S);
                        }
                        emit();
                        if (stopped) break;
                        std::size_t c = 0;
                        while (c < ym.size() && ++ym[c] == total) ym[c++] = 0;
                        if (c == ym.size()) break;
                    }
                }
                if (stopped) break;
                std::size_t c = 0;
                while (c < pc.size() && ++pc[c] == palette.size()) pc[c++] = 0;
                if (c == pc.size()) break;
            }
            if (stopped) break;
        }
    });
    return stopped;
}

/// The board a rainbow atom describes: one node per block of the partition.
inline ColouredGraph graph_of_atom(const RainbowStructure& rs, const RainbowAtom& a) {
    ColouredGraph g(rs.sig.n, a.m);
    for (int q = 0; q < a.m; ++q)
        for (int p = 0; p < q; ++p) g.set_edge(p, q, rs.colours[a.edge[ColouredGraph::slot(p, q)]]);
    const auto& subs = rs.subsets_by_m[a.m];
    for (std::size_t s = 0; s < subs.size() && s < a.hyper.size(); ++s) {
        if (a.hyper[s] < 0) continue;
        std::set<int> S;
        for (std::size_t bit = 0; bit < rs.sig.green_zero.size(); ++bit)
            if (a.hyper[s] & (1 << bit)) S.insert(rs.sig.green_zero[bit]);
        g.set_hyper(subs[s], S);
    }
    return g;
}

namespace detail {

inline Colour reorient_red(Colour c, bool flip) {
    if (flip && c.is_red()) std::swap(c.i, c.j);
    return c;
}

/// Demands are stored in canonical coordinates: node ids become indices of the
/// canonical node ordering (a fresh node becomes the index past the last), and
/// directed reds are re-oriented to the canonical order of their endpoints.
inline GraphDemand demand_to_canonical(const Board& b, const std::vector<int>& order,
                                       const GraphDemand& d) {
    const int k = (int)b.active.size();
    auto canon = [&](int id) {
        for (int i = 0; i < k; ++i)
            if (b.active[order[i]] == id) return i;
        return k;
    };
    GraphDemand out;
    out.node = canon(d.node);
    std::vector<std::pair<int, Colour>> fe;
    for (std::size_t i = 0; i < d.face.size(); ++i) {
        int ci = canon(d.face[i]);
        bool flip = (d.face[i] < d.node) != (ci < out.node);
        fe.emplace_back(ci, reorient_red(d.edge[i], flip));
    }
    std::sort(fe.begin(), fe.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [ci, c] : fe) {
        out.face.push_back(ci);
        out.edge.push_back(c);
    }
    for (auto& [ids, S] : d.hyper) {
        std::vector<int> t;
        for (int id : ids) t.push_back(canon(id));
        std::sort(t.begin(), t.end());
        out.hyper[t] = S;
    }
    return out;
}

inline GraphDemand demand_from_canonical(const Board& b, const std::vector<int>& order,
                                         const GraphDemand& cd) {
    const int k = (int)b.active.size();
    int fresh = 0;
    while (b.is_active(fresh)) ++fresh;
    auto concrete = [&](int ci) { return ci >= k ? fresh : b.active[order[ci]]; };
    GraphDemand out;
    out.node = concrete(cd.node);
    std::vector<std::pair<int, Colour>> fe;
    for (std::size_t i = 0; i < cd.face.size(); ++i) {
        int id = concrete(cd.face[i]);
        bool flip = (cd.face[i] < cd.node) != (id < out.node);
        fe.emplace_back(id, reorient_red(cd.edge[i], flip));
    }
    std::sort(fe.begin(), fe.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [id, c] : fe) {
        out.face.push_back(id);
        out.edge.push_back(c);
    }
    for (auto& [ids, S] : cd.hyper) {
        std::vector<int> t;
        for (int ci : ids) t.push_back(concrete(ci));
        std::sort(t.begin(), t.end());
        out.hyper[t] = S;
    }
    return out;
}

} // namespace detail

struct GraphSolveResult {
    Player winner = Player::exists;
    bool conclusive = true;
    int rounds = 0;
    std::size_t states = 0;
    bool has_opening = false;
    std::uint64_t opening = 0; ///< packed code of a winning initial atom
    /// winning demand per (canonical board, rounds left)
    std::map<std::pair<std::string, int>, GraphDemand> strategy;
};

/// Exact solver for a coloured-graph game over an enumerated rainbow
/// structure.  The first player picks the initial atom; a first-player win
/// returns as soon as one is found, a second-player verdict requires scanning
/// every atom.  `opening_hints` orders promising initial atoms first.
///
/// With `responder_full_yellow` the responder's yellow choices are fixed to
/// full tint sets.  This restriction is sound for certifying a demand-side win
/// as long as the produced strategy's demands are gated only by yellows the
/// demanding player placed himself (e.g. cone demands on a face labelled by
/// the initial atom): enlarging the responder's yellow sets never invalidates
/// her replies and never blocks such demands, so any survival in the full game
/// maps to a survival in the restricted one.  Verify the produced table's
/// demands against that condition before trusting a win obtained this way.
inline GraphSolveResult solve(const GameConfig& cfg, const RainbowStructure& rs,
                              const std::vector<std::uint64_t>* opening_hints = nullptr,
                              bool responder_full_yellow = false,
                              std::size_t budget = games_default_budget()) {
    cfg.validate();
    if (cfg.kind == GameConfig::Kind::EF || cfg.kind == GameConfig::Kind::J)
        throw std::invalid_argument("graph solver: not a graph game kind");
    const RainbowSignature& sig = rs.sig;
    const std::vector<Colour> palette = game_colours(sig);
    GraphSolveResult res;
    std::map<std::pair<std::string, int>, int> memo;
    std::size_t work = budget;

    auto value = [&](auto&& self, const Board& b, int rl) -> int {
        if (rl == 0) return 0;
        std::vector<int> order;
        auto key = std::make_pair(board_key(b, &order), rl);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        if (work == 0) throw BudgetExceeded("graph game budget exhausted");
        --work;
        ++res.states;
        // try tints absent from the board first: a winning cone demand wants a
        // fresh tint, and finding it first keeps the exploration shallow
        std::set<int> used;
        for (auto& [uv, c] : b.edge)
            if (c.kind == Colour::Kind::green_zero) used.insert(c.i);
        std::vector<Colour> pal;
        for (const Colour& c : palette)
            if (c.kind == Colour::Kind::green_zero && !used.count(c.i)) pal.push_back(c);
        for (const Colour& c : palette)
            if (c.kind != Colour::Kind::green_zero || used.count(c.i)) pal.push_back(c);
        int out = 0;
        GraphDemand winning;
        auto attempt = [&](const GraphDemand& d) -> bool {
            Board after = apply_demand(b, d);
            int worst = 0;
            bool survived = false;
            enumerate_replies(sig, after, d.node, responder_full_yellow, work, [&](Board& rb) {
                int v = self(self, rb, rl - 1);
                if (v == 0) {
                    survived = true;
                    return true;
                }
                worst = std::max(worst, v);
                return false;
            });
            if (!survived) {
                out = 1 + worst;
                winning = d;
                return true;
            }
            return false;
        };
        // Move ordering, not pruning: a fresh-tint cone demanded over an
        // all-white face that carries a tint label is the canonical winning
        // move.  Trying those few demands before the general sweep keeps
        // winning subtrees narrow — disproving even one losing demand costs a
        // whole reply subtree, so hitting a winner first matters enormously.
        bool done = false;
        const int nn = sig.n;
        if ((int)b.active.size() >= nn - 1) {
            int fresh = 0;
            while (b.is_active(fresh)) ++fresh;
            const bool fresh_ok =
                cfg.kind == GameConfig::Kind::Gk || (int)b.active.size() < cfg.m;
            detail::for_subsets((int)b.active.size(), nn - 1, [&](const std::vector<int>& pick) {
                if (done) return;
                std::vector<int> face;
                for (int p : pick) face.push_back(b.active[p]);
                for (std::size_t i = 0; i + 1 < face.size(); ++i)
                    for (std::size_t j = i + 1; j < face.size(); ++j) {
                        const Colour* c = b.edge_at(face[i], face[j]);
                        if (!c || c->kind != Colour::Kind::white) return;
                    }
                auto hy = b.hyper.find(face);
                if (hy == b.hyper.end()) return;
                std::vector<int> nopts;
                if (fresh_ok) nopts.push_back(fresh);
                if (cfg.reuse())
                    for (int id : b.active)
                        if (!std::binary_search(face.begin(), face.end(), id))
                            nopts.push_back(id);
                for (int node : nopts) {
                    for (int tint : sig.green_zero) {
                        if (used.count(tint) || !hy->second.count(tint)) continue;
                        for (int p = 0; p < nn - 1 && !done; ++p) {
                            GraphDemand d;
                            d.face = face;
                            d.node = node;
                            int rank = 1;
                            for (int i = 0; i < nn - 1; ++i)
                                d.edge.push_back(i == p ? Colour::green0(tint)
                                                        : Colour::green(rank++));
                            std::string why;
                            if (!demand_legal(sig, cfg, b, d, &why)) continue;
                            if (attempt(d)) done = true;
                        }
                        if (done) break;
                    }
                    if (done) break;
                }
            });
        }
        if (!done)
            for_each_demand(sig, cfg, b, pal, false,
                            [&](const GraphDemand& d) { return attempt(d); });
        memo.emplace(key, out);
        if (out > 0) res.strategy[key] = detail::demand_to_canonical(b, order, winning);
        return out;
    };

    try {
        std::set<std::uint64_t> tried;
        auto attempt = [&](std::uint64_t code) -> bool {
            if (!tried.insert(code).second) return false;
            Board b0 = board_from_graph(graph_of_atom(rs, rs.decode(code)));
            int v = value(value, b0, cfg.rounds - 1);
            if (v > 0) {
                res.winner = Player::forall;
                res.rounds = 1 + v;
                res.has_opening = true;
                res.opening = code;
                return true;
            }
            return false;
        };
        if (opening_hints)
            for (std::uint64_t code : *opening_hints)
                if (attempt(code)) return res;
        for (std::uint64_t code : rs.codes)
            if (attempt(code)) return res;
    } catch (const BudgetExceeded&) {
        res.conclusive = false;
        res.strategy.clear();
    }
    return res;
}

// ---------------------------------------------------------------------------
// Scripted strategies and their verifiers.
// ---------------------------------------------------------------------------

/// A deterministic plan for the demanding player: an opening configuration and
/// a demand for every reachable position (round counts from 2).
struct ForallScript {
    ColouredGraph opening;
    std::function<std::optional<GraphDemand>(const Board&, int round)> demand;
};

struct VerifyResult {
    bool certified = false;
    bool conclusive = true;
    int rounds = 0; ///< latest round at which a certified play ends
    std::size_t states = 0;
    std::string failure;
};

/// Invoked on every (position, reply) pair along explored plays; returning
/// false aborts certification.
using PlayObserver = std::function<bool(const Board& before, const Board& after, int round)>;

/// Exhaustively plays the script against every response and certifies that the
/// responder runs out of moves by round `bound`.  When the script's demands
/// never read yellow content, restricting the responder's yellows to full tint
/// sets (`responder_full_yellow`) is sound: shrinking a yellow set only
/// removes response options later, never demand options.
inline VerifyResult verify_forall_strategy(const GameConfig& cfg, const RainbowSignature& sig,
                                           const ForallScript& script, int bound,
                                           std::size_t budget = games_default_budget(),
                                           bool responder_full_yellow = true,
                                           const PlayObserver& observer = {}) {
    cfg.validate();
    VerifyResult out;
    std::map<std::pair<std::string, int>, int> memo;
    std::size_t work = budget;
    std::string fail;

    auto run = [&](auto&& self, const Board& b, int round) -> int {
        if (round >= bound) {
            fail = "no win within the round bound";
            return -1;
        }
        auto key = std::make_pair(board_key(b), round);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        if (work == 0) throw BudgetExceeded("verification budget exhausted");
        --work;
        ++out.states;
        auto d = script.demand(b, round + 1);
        int value = -1;
        if (!d) {
            fail = "script offers no demand at round " + std::to_string(round + 1);
        } else {
            std::string why;
            if (!demand_legal(sig, cfg, b, *d, &why)) {
                fail = "illegal demand at round " + std::to_string(round + 1) + ": " + why;
            } else {
                Board after = apply_demand(b, *d);
                int worst = round + 1;
                bool failed = false, any = false;
                enumerate_replies(sig, after, d->node, responder_full_yellow, work, [&](Board& rb) {
                    any = true;
                    if (observer && !observer(b, rb, round + 1)) {
                        fail = "observer rejected a play at round " + std::to_string(round + 1);
                        failed = true;
                        return true;
                    }
                    int v = self(self, rb, round + 1);
                    if (v < 0) {
                        failed = true;
                        return true;
                    }
                    worst = std::max(worst, v);
                    return false;
                });
                if (!failed) value = any ? worst : round + 1;
            }
        }
        memo.emplace(key, value);
        return value;
    };

    try {
        auto rep = check_coloured_graph(sig, script.opening);
        if (!rep.ok) {
            out.failure = "opening configuration invalid: " + rep.violation;
            return out;
        }
    } catch (const std::invalid_argument& e) {
        out.failure = std::string("opening configuration invalid: ") + e.what();
        return out;
    }
    try {
        int v = run(run, board_from_graph(script.opening), 1);
        if (v > 0) {
            out.certified = true;
            out.rounds = v;
        } else {
            out.failure = fail;
        }
    } catch (const BudgetExceeded&) {
        out.conclusive = false;
        out.failure = "budget exhausted";
    }
    return out;
}

namespace detail {

inline ColouredGraph cone_opening(const RainbowSignature& sig) {
    const int n = sig.n;
    ColouredGraph g(n, n);
    for (int i = 0; i < n - 1; ++i)
        for (int j = i + 1; j < n - 1; ++j) g.set_edge(i, j, Colour::white(0));
    g.set_edge(0, n - 1, Colour::green0(0));
    for (int i = 1; i <= n - 2; ++i) g.set_edge(i, n - 1, Colour::green(i));
    std::vector<int> base;
    for (int i = 0; i < n - 1; ++i) base.push_back(i);
    g.set_hyper(base, std::set<int>(sig.green_zero.begin(), sig.green_zero.end()));
    return g;
}

inline GraphDemand cone_demand(const RainbowSignature& sig, int tint, int node) {
    GraphDemand d;
    for (int i = 0; i < sig.n - 1; ++i) d.face.push_back(i);
    d.node = node;
    d.edge.push_back(Colour::green0(tint));
    for (int i = 1; i <= sig.n - 2; ++i) d.edge.push_back(Colour::green(i));
    return d;
}

} // namespace detail

/// The demanding player's cone plan: open with a white face topped by a tinted
/// cone, then repeatedly demand a fresh cone on the same face with an unused
/// tint.  All apex-apex edges are forced red, and distinct tints admit only
/// finitely many compatible red pairs, so responses run out.
inline ForallScript scripted_cone_strategy(int n) {
    RainbowSignature sig = standard_rainbow_signature(n);
    ForallScript s;
    s.opening = detail::cone_opening(sig);
    s.demand = [sig, n](const Board& b, int round) -> std::optional<GraphDemand> {
        int tint = round - 1; // tint 0 went to the opening cone
        if (tint > n + 1) return std::nullopt;
        int fresh = 0;
        while (b.is_active(fresh)) ++fresh;
        return detail::cone_demand(sig, tint, fresh);
    };
    return s;
}

/// Order-sensitive signature with tints -tints_below..0 and red indices
/// 0..reds-1.
inline RainbowSignature ordered_rainbow_signature(int n, int tints_below, int reds) {
    RainbowSignature sig;
    sig.n = n;
    for (int t = -tints_below; t <= 0; ++t) sig.green_zero.push_back(t);
    for (int r = 0; r < reds; ++r) sig.red_index.push_back(r);
    sig.red_mode = RedMode::ordered;
    sig.order_forbidden = true;
    sig.validate();
    return sig;
}

/// The demanding player's plan in the order-sensitive regime: cones with tints
/// 0, -1, -2, ... on a fixed face, cycling through the m - n + 1 off-face node
/// slots (node reuse once they are exhausted).  Each new cone's tint sits
/// below all earlier ones, so the responder's red indices between apexes must
/// keep descending.
inline ForallScript scripted_decreasing_strategy(const RainbowSignature& sig, int m) {
    const int n = sig.n;
    if (m < n + 1) throw std::invalid_argument("decreasing strategy: need at least one off-face slot");
    ForallScript s;
    s.opening = detail::cone_opening(sig);
    s.demand = [sig, n, m](const Board&, int round) -> std::optional<GraphDemand> {
        int tint = -(round - 1);
        if (sig.tint_bit(tint) < 0) return std::nullopt;
        int slots = m - (n - 1);
        int node = (n - 1) + ((round - 1) % slots);
        return detail::cone_demand(sig, tint, node);
    };
    return s;
}

/// Replays a solver's strategy table as a script, for independent
/// re-verification of a solve result.
inline ForallScript script_from_table(const GameConfig& cfg, const RainbowStructure& rs,
                                      const GraphSolveResult& res) {
    if (!res.has_opening) throw std::invalid_argument("strategy replay: no winning opening recorded");
    ForallScript s;
    s.opening = graph_of_atom(rs, rs.decode(res.opening));
    auto table = res.strategy;
    int total = cfg.rounds;
    s.demand = [table, total](const Board& b, int round) -> std::optional<GraphDemand> {
        std::vector<int> order;
        std::string key = board_key(b, &order);
        auto it = table.find({key, total - (round - 1)});
        if (it == table.end()) return std::nullopt;
        return detail::demand_from_canonical(b, order, it->second);
    };
    return s;
}

// ---------------------------------------------------------------------------
// The responder's strategy in the order-sensitive regime.
// ---------------------------------------------------------------------------

inline long long pow3ll(int e) {
    long long v = 1;
    while (e-- > 0) v *= 3;
    return v;
}

/// Responder's plan for the no-reuse game with node budget m: maintain an
/// order-preserving map from cone tints into the red index set, placed with
/// geometrically shrinking safety gaps (3^(m-s-1) at demand s), answer co-apex
/// pairs over a common ordered cone base with the mapped red pair, everything
/// else with whites, and label new green-free tuples with exactly the tints of
/// the cones standing on them.  Runs out — honestly reported — when the index
/// set cannot absorb another insertion.
struct ExistsRhoStrategy {
    RainbowSignature sig;
    int m = 6; ///< node budget driving the spacing schedule

    long long gap(int s) const {
        int e = m - s - 1;
        return e <= 0 ? 1 : pow3ll(e);
    }

    bool in_range(long long v) const {
        return v >= sig.red_index.front() && v <= sig.red_index.back() &&
               std::binary_search(sig.red_index.begin(), sig.red_index.end(), (int)v);
    }

    /// Inserts a value for `tint` while keeping the map order-preserving with
    /// gap(s) clearance on both sides.
    bool place(std::map<int, int>& rho, int tint, int s, std::string* diag = nullptr) const {
        if (rho.count(tint)) return true;
        const long long g = gap(s);
        auto hi = rho.lower_bound(tint);
        long long val;
        if (rho.empty()) {
            val = pow3ll(m - 1);
        } else if (hi == rho.begin()) {
            val = (long long)hi->second - g;
        } else if (hi == rho.end()) {
            val = (long long)std::prev(hi)->second + g;
        } else {
            long long lo = std::prev(hi)->second, up = hi->second;
            val = (lo + up) / 2;
            if (val - lo < g || up - val < g) {
                if (diag)
                    *diag = "spacing exhausted between red indices " + std::to_string(lo) + " and " +
                            std::to_string(up) + " at demand " + std::to_string(s);
                return false;
            }
        }
        if (!in_range(val)) {
            if (diag)
                *diag = "red index set cannot absorb value " + std::to_string(val) + " at demand " +
                        std::to_string(s);
            return false;
        }
        rho[tint] = (int)val;
        return true;
    }

    bool register_cones(const Board& b, std::map<int, int>& rho, int s,
                        std::string* diag = nullptr) const {
        std::vector<int> tints;
        for (const Cone& c : board_cones(b))
            if (!rho.count(c.tint)) tints.push_back(c.tint);
        std::sort(tints.begin(), tints.end(), std::greater<int>());
        tints.erase(std::unique(tints.begin(), tints.end()), tints.end());
        for (int t : tints)
            if (!place(rho, t, s, diag)) return false;
        return true;
    }

    /// Call once on the initial configuration (demand index 0).
    bool initialise(const Board& b0, std::map<int, int>& rho, std::string* diag = nullptr) const {
        return register_cones(b0, rho, 0, diag);
    }

    /// Answer demand `d` (the s-th of the game) on `before`; extends `rho` as
    /// a side effect.  Returns the completed board, or nothing with a
    /// diagnosis when the plan has no valid answer.
    std::optional<Board> respond(const Board& before, const GraphDemand& d, int s,
                                 std::map<int, int>& rho, std::string* diag = nullptr) const {
        Board work = apply_demand(before, d);
        auto cones = board_cones(work);
        if (!register_cones(work, rho, s, diag)) return std::nullopt;

        const int node = d.node;
        auto cone_on_face = [&](int apex) -> const Cone* {
            for (const Cone& c : cones) {
                if (c.apex != apex) continue;
                std::vector<int> base = c.base;
                std::sort(base.begin(), base.end());
                if (base == d.face) return &c;
            }
            return nullptr;
        };
        const Cone* mine = cone_on_face(node);

        for (int beta : work.active) {
            if (beta == node || work.edge_at(node, beta)) continue;
            Colour chosen;
            const Cone* his = cone_on_face(beta);
            if (mine && his && mine->base == his->base) {
                // co-apexes over the same ordered base: the mapped red pair
                int u = std::min(node, beta), v = std::max(node, beta);
                int tu = (u == node ? mine : his)->tint;
                int tv = (v == node ? mine : his)->tint;
                chosen = Colour::red(rho.at(tu), rho.at(tv));
            } else {
                bool shared_tint = false;
                for (int f : d.face) {
                    const Colour* a = work.edge_at(node, f);
                    const Colour* c = work.edge_at(beta, f);
                    if (a && c && a->kind == Colour::Kind::green_zero &&
                        c->kind == Colour::Kind::green_zero)
                        shared_tint = true;
                }
                if (!shared_tint) {
                    chosen = Colour::white(0);
                } else {
                    int rank = -1;
                    for (int i = 1; i <= sig.n - 2 && rank < 0; ++i) {
                        bool shared = false;
                        for (int f : d.face) {
                            const Colour* a = work.edge_at(node, f);
                            const Colour* c = work.edge_at(beta, f);
                            if (a && c && a->kind == Colour::Kind::green_rank && a->i == i &&
                                c->kind == Colour::Kind::green_rank && c->i == i)
                                shared = true;
                        }
                        if (!shared) rank = i;
                    }
                    if (rank < 0) {
                        if (diag) *diag = "no admissible white between two apexes";
                        return std::nullopt;
                    }
                    chosen = Colour::white(rank);
                }
            }
            work.set(node, beta, chosen);
        }

        // yellows: exactly the tints of the cones standing on each tuple
        auto allcones = board_cones(work);
        detail::for_subsets((int)work.active.size(), sig.n - 1, [&](const std::vector<int>& pick) {
            std::vector<int> ids;
            for (int p : pick) ids.push_back(work.active[p]);
            if (work.hyper.count(ids)) return;
            for (std::size_t i = 0; i < ids.size(); ++i)
                for (std::size_t j = i + 1; j < ids.size(); ++j) {
                    const Colour* c = work.edge_at(ids[i], ids[j]);
                    if (c && c->is_green()) return;
                }
            std::set<int> S;
            for (const Cone& c : allcones) {
                std::vector<int> base = c.base;
                std::sort(base.begin(), base.end());
                if (base == ids) S.insert(c.tint);
            }
            work.hyper[ids] = std::move(S);
        });

        auto rep = check_coloured_graph(sig, board_graph(work));
        if (!rep.ok) {
            if (diag) *diag = "planned reply invalid: " + rep.violation;
            return std::nullopt;
        }
        return work;
    }
};

/// All valid configurations on up to n nodes the demanding player can open
/// with, yellows fixed to full tint sets and red values drawn from the first
/// `red_values` indices (only their order pattern matters), deduplicated up to
/// renaming.
inline std::vector<Board> initial_boards(const RainbowSignature& sig, int red_values,
                                         std::size_t& budget) {
    std::vector<Colour> palette;
    for (int t : sig.green_zero) palette.push_back(Colour::green0(t));
    for (int r = 1; r <= sig.n - 2; ++r) palette.push_back(Colour::green(r));
    for (int w = 0; w <= sig.n - 2; ++w) palette.push_back(Colour::white(w));
    int nv = std::min<int>(red_values, (int)sig.red_index.size());
    for (int a = 0; a < nv; ++a)
        for (int c = 0; c < nv; ++c) {
            if (sig.red_mode == RedMode::plain && a >= c) continue;
            if (sig.red_mode != RedMode::ordered && a == c) continue;
            palette.push_back(Colour::red(sig.red_index[a], sig.red_index[c]));
        }

    std::vector<Board> out;
    std::set<std::string> seen;
    std::set<int> full(sig.green_zero.begin(), sig.green_zero.end());
    for (int j = 1; j <= sig.n; ++j) {
        Board b;
        b.n = sig.n;
        for (int i = 0; i < j; ++i) b.active.push_back(i);
        std::vector<std::pair<int, int>> pairs;
        for (int v = 0; v < j; ++v)
            for (int u = 0; u < v; ++u) pairs.emplace_back(u, v);
        auto rec = [&](auto&& self, std::size_t pi) -> void {
            if (budget == 0) throw BudgetExceeded("initial board enumeration budget exhausted");
            --budget;
            if (pi == pairs.size()) {
                Board cand = b;
                detail::for_subsets(j, sig.n - 1, [&](const std::vector<int>& pick) {
                    bool greenfree = true;
                    for (std::size_t x = 0; x < pick.size(); ++x)
                        for (std::size_t y = x + 1; y < pick.size(); ++y) {
                            const Colour* c = cand.edge_at(pick[x], pick[y]);
                            if (c && c->is_green()) greenfree = false;
                        }
                    if (greenfree) cand.hyper[pick] = full;
                });
                if (!check_coloured_graph(sig, board_graph(cand)).ok) return;
                if (seen.insert(board_key(cand)).second) out.push_back(std::move(cand));
                return;
            }
            auto [u, v] = pairs[pi];
            for (const Colour& c : palette) {
                bool ok = true;
                for (int g = 0; g < j && ok; ++g) {
                    if (g == u || g == v) continue;
                    const Colour* e1 = b.edge_at(u, g);
                    const Colour* e2 = b.edge_at(v, g);
                    if (!e1 || !e2) continue;
                    int a = std::min({u, v, g}), cc = std::max({u, v, g});
                    int bb = u + v + g - a - cc;
                    auto lab = [&](int x, int y) -> Colour {
                        if ((x == u && y == v) || (x == v && y == u)) return c;
                        return *b.edge_at(x, y);
                    };
                    if (detail::triangle_forbidden(sig, lab(a, bb), lab(a, cc), lab(bb, cc)))
                        ok = false;
                }
                if (!ok) continue;
                b.set(u, v, c);
                self(self, pi + 1);
                b.edge.erase({u, v});
            }
        };
        rec(rec, 0);
    }
    return out;
}

struct ExistsVerifyResult {
    bool certified = false;
    bool conclusive = true;
    std::size_t states = 0;
    std::size_t plays = 0;
    std::string failure;
};

namespace detail {

/// Demand-side red options against a responder whose constraints only couple
/// red values through their relative order: every value on the board, the
/// representative of every order gap between them, and one value beyond each
/// end.
inline std::vector<int> abstract_red_values(const RainbowSignature& sig, const Board& b) {
    std::set<int> vals;
    for (auto& [uv, c] : b.edge)
        if (c.is_red()) {
            vals.insert(c.i);
            vals.insert(c.j);
        }
    std::vector<int> out;
    const int lo = sig.red_index.front(), hi = sig.red_index.back();
    if (vals.empty()) {
        out.push_back((lo + hi) / 2);
        return out;
    }
    std::vector<int> v(vals.begin(), vals.end());
    if (v.front() - 1 >= lo) out.push_back(v.front() - 1);
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(v[i]);
        if (i + 1 < v.size() && v[i + 1] - v[i] > 1) out.push_back((v[i] + v[i + 1]) / 2);
    }
    if (v.back() + 1 <= hi) out.push_back(v.back() + 1);
    return out;
}

} // namespace detail

/// Plays every abstract demand sequence of the no-reuse game against the
/// responder's plan, for `cfg.rounds` total rounds.  Demand-side yellows are
/// fixed to full tint sets (dominant against a responder who reads cones, not
/// yellows) and red values are quotiented to order representatives.  Certifies
/// survival, or reports the first losing play.
inline ExistsVerifyResult verify_exists_strategy(const GameConfig& cfg,
                                                 const ExistsRhoStrategy& strat,
                                                 int initial_red_values = 6,
                                                 std::size_t budget = games_default_budget()) {
    cfg.validate();
    if (cfg.kind != GameConfig::Kind::Gm)
        throw std::invalid_argument("responder verification: only the no-reuse bounded game");
    const RainbowSignature& sig = strat.sig;
    ExistsVerifyResult res;
    std::size_t work = budget;
    std::set<std::string> survived;
    std::string fail;

    auto state_key = [&](const Board& b, const std::map<int, int>& rho, int r) {
        std::ostringstream os;
        os << board_key(b) << '|' << r;
        for (auto& [t, v] : rho) os << ';' << t << ':' << v;
        return os.str();
    };

    auto rec = [&](auto&& self, const Board& b, const std::map<int, int>& rho, int r) -> bool {
        if (r >= cfg.rounds) {
            ++res.plays;
            return true;
        }
        std::string key = state_key(b, rho, r);
        if (survived.count(key)) return true;
        if (work == 0) throw BudgetExceeded("responder verification budget exhausted");
        --work;
        ++res.states;
        std::vector<Colour> palette;
        for (int t : sig.green_zero) palette.push_back(Colour::green0(t));
        for (int g = 1; g <= sig.n - 2; ++g) palette.push_back(Colour::green(g));
        for (int w = 0; w <= sig.n - 2; ++w) palette.push_back(Colour::white(w));
        auto reds = detail::abstract_red_values(sig, b);
        for (int a : reds)
            for (int c : reds) {
                if (sig.red_mode == RedMode::plain && a >= c) continue;
                if (sig.red_mode != RedMode::ordered && a == c) continue;
                palette.push_back(Colour::red(a, c));
            }
        bool lost = for_each_demand(sig, cfg, b, palette, true, [&](const GraphDemand& d) {
            auto rho2 = rho;
            std::string diag;
            auto reply = strat.respond(b, d, r, rho2, &diag);
            if (!reply) {
                fail = "no reply at round " + std::to_string(r + 1) + ": " +
                       (diag.empty() ? "plan exhausted" : diag);
                return true;
            }
            return !self(self, *reply, rho2, r + 1);
        });
        if (lost) return false;
        survived.insert(std::move(key));
        return true;
    };

    try {
        std::size_t ib = work;
        auto openings = initial_boards(sig, initial_red_values, ib);
        work = ib;
        for (const Board& b0 : openings) {
            std::map<int, int> rho;
            std::string diag;
            if (!strat.initialise(b0, rho, &diag)) {
                res.failure = "initialisation failed: " + diag;
                return res;
            }
            if (!rec(rec, b0, rho, 1)) {
                res.failure = fail;
                return res;
            }
        }
        res.certified = true;
    } catch (const BudgetExceeded&) {
        res.conclusive = false;
        res.failure = "budget exhausted";
    }
    return res;
}

/// One move of any of the games, for transcripts.
struct InitialAtom {
    std::uint64_t atom = 0;
};

using Move = std::variant<InitialAtom, NetDemand, GraphDemand, JTransformation, JAmalgamation,
                          JCylindrifier>;

} // namespace cyl
