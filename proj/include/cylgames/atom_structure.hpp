#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bits.hpp"
#include "signature.hpp"

namespace cyl {

/// Binary relation on atoms. Three backings:
///  - identity (no storage),
///  - explicit sorted adjacency lists,
///  - an equivalence relation stored as a class id per atom (the common case for
///    cylindrifier accessibility, where it scales to millions of atoms).
class Rel {
public:
    enum class Kind { identity, pairs, partition };

    static Rel identity(std::size_t k) {
        Rel r;
        r.kind_ = Kind::identity;
        r.k_ = k;
        return r;
    }
    static Rel from_pairs(std::size_t k, std::vector<std::pair<std::uint32_t, std::uint32_t>> ps) {
        Rel r;
        r.kind_ = Kind::pairs;
        r.k_ = k;
        r.adj_.assign(k, {});
        for (auto [a, b] : ps) {
            if (a >= k || b >= k) throw std::invalid_argument("relation pair out of range");
            r.adj_[a].push_back(b);
        }
        for (auto& v : r.adj_) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
        return r;
    }
    static Rel from_classes(std::vector<std::uint32_t> cls, std::uint32_t nclasses) {
        Rel r;
        r.kind_ = Kind::partition;
        r.k_ = cls.size();
        r.cls_ = std::move(cls);
        r.nclasses_ = nclasses;
        return r;
    }

    Kind kind() const { return kind_; }
    std::size_t atoms() const { return k_; }
    std::uint32_t cls(std::size_t a) const { return cls_[a]; }
    std::uint32_t nclasses() const { return nclasses_; }
    const std::vector<std::uint32_t>& neighbours(std::size_t a) const { return adj_[a]; }

    bool related(std::size_t a, std::size_t b) const {
        switch (kind_) {
        case Kind::identity: return a == b;
        case Kind::partition: return cls_[a] == cls_[b];
        case Kind::pairs: return std::binary_search(adj_[a].begin(), adj_[a].end(), (std::uint32_t)b);
        }
        return false;
    }

    /// {a : exists b in X with a R b}
    Bits image(const Bits& x) const {
        switch (kind_) {
        case Kind::identity:
            return x;
        case Kind::partition: {
            std::vector<char> hit(nclasses_, 0);
            x.for_each([&](std::size_t b) { hit[cls_[b]] = 1; });
            Bits r(k_);
            for (std::size_t a = 0; a < k_; ++a)
                if (hit[cls_[a]]) r.set(a);
            return r;
        }
        case Kind::pairs: {
            Bits r(k_);
            for (std::size_t a = 0; a < k_; ++a)
                for (auto b : adj_[a])
                    if (x.test(b)) { r.set(a); break; }
            return r;
        }
        }
        return Bits(k_);
    }

    bool is_reflexive() const {
        if (kind_ != Kind::pairs) return true;
        for (std::size_t a = 0; a < k_; ++a)
            if (!related(a, a)) return false;
        return true;
    }
    bool is_symmetric() const {
        if (kind_ != Kind::pairs) return true;
        for (std::size_t a = 0; a < k_; ++a)
            for (auto b : adj_[a])
                if (!related(b, a)) return false;
        return true;
    }
    bool is_transitive() const {
        if (kind_ != Kind::pairs) return true;
        for (std::size_t a = 0; a < k_; ++a)
            for (auto b : adj_[a])
                for (auto c : adj_[b])
                    if (!related(a, c)) return false;
        return true;
    }
    bool is_identity() const {
        if (kind_ == Kind::identity) return true;
        if (kind_ == Kind::partition) return nclasses_ == k_;
        for (std::size_t a = 0; a < k_; ++a)
            if (adj_[a].size() != 1 || adj_[a][0] != a) return false;
        return true;
    }

    std::vector<std::pair<std::uint32_t, std::uint32_t>> to_pairs() const {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> ps;
        if (kind_ == Kind::identity) {
            for (std::uint32_t a = 0; a < k_; ++a) ps.emplace_back(a, a);
        } else if (kind_ == Kind::pairs) {
            for (std::uint32_t a = 0; a < k_; ++a)
                for (auto b : adj_[a]) ps.emplace_back(a, b);
        } else {
            std::vector<std::vector<std::uint32_t>> members(nclasses_);
            for (std::uint32_t a = 0; a < k_; ++a) members[cls_[a]].push_back(a);
            for (auto& m : members)
                for (auto a : m)
                    for (auto b : m) ps.emplace_back(a, b);
        }
        return ps;
    }

private:
    Kind kind_ = Kind::identity;
    std::size_t k_ = 0;
    std::vector<std::vector<std::uint32_t>> adj_;
    std::vector<std::uint32_t> cls_;
    std::uint32_t nclasses_ = 0;
};

/// Finite frame underlying a complex algebra: diagonal atom sets E_ij,
/// cylindrifier accessibility T_i, transpositions S_ij, interior accessibility In_i.
struct AtomStructure {
    Signature sig;
    std::size_t atoms = 0;
    std::vector<std::vector<Bits>> E;  // E[i][j], i,j < n
    std::vector<Rel> T;                // T[i], i < n
    std::vector<std::vector<std::vector<std::uint32_t>>> S; // S[i][j] total map, empty if disabled
    std::vector<Rel> In;               // In[i], empty if no interior

    std::uint32_t subst(int i, int j, std::uint32_t a) const {
        if (i == j) return a;
        return S[i][j][a];
    }

    void validate() const {
        sig.validate();
        const int n = sig.n;
        if ((int)E.size() != n || (int)T.size() != n)
            throw std::invalid_argument("atom structure: relation arity mismatch");
        for (auto& row : E) {
            if ((int)row.size() != n) throw std::invalid_argument("atom structure: E shape");
            for (auto& b : row)
                if (b.size() != atoms) throw std::invalid_argument("atom structure: E width");
        }
        for (auto& t : T)
            if (t.atoms() != atoms) throw std::invalid_argument("atom structure: T width");
        if (sig.transpositions) {
            if ((int)S.size() != n) throw std::invalid_argument("atom structure: S shape");
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    if (i == j) continue;
                    auto& m = S[i][j];
                    if (m.size() != atoms) throw std::invalid_argument("atom structure: S width");
                    for (std::size_t a = 0; a < atoms; ++a) {
                        if (m[a] >= atoms) throw std::invalid_argument("atom structure: S range");
                        if (m[m[a]] != a) throw std::invalid_argument("atom structure: S not an involution");
                    }
                }
        }
        if (sig.interior) {
            if ((int)In.size() != n) throw std::invalid_argument("atom structure: In shape");
            for (auto& r : In)
                if (r.atoms() != atoms) throw std::invalid_argument("atom structure: In width");
        }
    }
};

/// Frame of the concrete set algebra on ^n U (atoms are the n-tuples over a base of
/// size u, in lexicographic order).
inline AtomStructure cube_frame(int n, int u, bool with_subst = true, bool with_interior = false) {
    AtomStructure at;
    at.sig = Signature{n, true, with_subst, with_interior, false, false};
    std::size_t k = 1;
    for (int i = 0; i < n; ++i) k *= (std::size_t)u;
    at.atoms = k;
    auto digit = [&](std::size_t a, int i) {
        for (int t = n - 1; t > i; --t) a /= (std::size_t)u;
        return (int)(a % (std::size_t)u);
    };
    at.E.assign(n, std::vector<Bits>(n, Bits(k)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (std::size_t a = 0; a < k; ++a)
                if (digit(a, i) == digit(a, j)) at.E[i][j].set(a);
    for (int i = 0; i < n; ++i) {
        // tuples agreeing off coordinate i form a class
        std::vector<std::uint32_t> cls(k);
        // class id: erase digit i
        for (std::size_t a = 0; a < k; ++a) {
            std::size_t id = 0;
            for (int t = 0; t < n; ++t)
                if (t != i) id = id * (std::size_t)u + (std::size_t)digit(a, t);
            cls[a] = (std::uint32_t)id;
        }
        at.T.push_back(Rel::from_classes(std::move(cls), (std::uint32_t)(k / (std::size_t)u)));
    }
    if (with_subst) {
        at.S.assign(n, std::vector<std::vector<std::uint32_t>>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                auto& m = at.S[i][j];
                m.resize(k);
                for (std::size_t a = 0; a < k; ++a) {
                    // transpose digits i and j
                    std::vector<int> d(n);
                    for (int t = 0; t < n; ++t) d[t] = digit(a, t);
                    std::swap(d[i], d[j]);
                    std::size_t b = 0;
                    for (int t = 0; t < n; ++t) b = b * (std::size_t)u + (std::size_t)d[t];
                    m[a] = (std::uint32_t)b;
                }
            }
    }
    if (with_interior)
        for (int i = 0; i < n; ++i) at.In.push_back(Rel::identity(k));
    return at;
}

} // namespace cyl
