#pragma once

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "atom_structure.hpp"

namespace cyl {

/// Boolean algebra with operators over an atom structure. Elements are bitsets
/// over atoms. If `universe` is absent the algebra is the full complex algebra
/// (all subsets); otherwise it is the listed subuniverse (e.g. a generated
/// subalgebra or a neat reduct).
///
/// Tense/temporal operators, when enabled, are the static expansion:
/// G = H = identity, S = U = constant zero (one-moment, empty flow).
struct FiniteAlgebra {
    Signature sig;
    std::shared_ptr<const AtomStructure> at;
    std::optional<std::vector<Bits>> universe; // sorted, absent = full powerset

    std::size_t atoms() const { return at->atoms; }

    Bits zero() const { return Bits(atoms()); }
    Bits one() const { return Bits::ones(atoms()); }
    Bits meet(const Bits& x, const Bits& y) const { return x & y; }
    Bits join(const Bits& x, const Bits& y) const { return x | y; }
    Bits complement(const Bits& x) const { return ~x; }

    Bits cyl(int i, const Bits& x) const {
        check_index(i);
        return at->T[i].image(x);
    }
    Bits diag(int i, int j) const {
        check_index(i);
        check_index(j);
        return at->E[i][j];
    }
    /// s_[i,j], the transposition substitution
    Bits subst(int i, int j, const Bits& x) const {
        check_index(i);
        check_index(j);
        if (i == j) return x;
        if (!sig.transpositions) throw std::invalid_argument("algebra has no transpositions");
        Bits r(atoms());
        x.for_each([&](std::size_t a) { r.set(at->S[i][j][a]); });
        return r;
    }
    Bits interior(int i, const Bits& x) const {
        check_index(i);
        if (!sig.interior) throw std::invalid_argument("algebra has no interior operators");
        return ~at->In[i].image(~x);
    }

    Bits G(const Bits& x) const { require_tense(); return x; }
    Bits H(const Bits& x) const { require_tense(); return x; }
    Bits F(const Bits& x) const { return ~G(~x); }
    Bits P(const Bits& x) const { return ~H(~x); }
    /// Since/Until of the one-moment empty flow: no witness moment exists.
    Bits S(const Bits&, const Bits&) const { require_temporal(); return zero(); }
    Bits U(const Bits&, const Bits&) const { require_temporal(); return zero(); }

    bool in_universe(const Bits& x) const {
        if (!universe) return true;
        return std::binary_search(universe->begin(), universe->end(), x);
    }

private:
    void check_index(int i) const {
        if (i < 0 || i >= sig.n) throw std::out_of_range("operator index out of dimension");
    }
    void require_tense() const {
        if (!sig.tense) throw std::invalid_argument("algebra has no tense operators");
    }
    void require_temporal() const {
        if (!sig.temporal) throw std::invalid_argument("algebra has no temporal operators");
    }
};

/// Cm At: the full powerset algebra of the frame.
inline FiniteAlgebra complex_algebra(std::shared_ptr<const AtomStructure> at) {
    at->validate();
    return FiniteAlgebra{at->sig, std::move(at), std::nullopt};
}
inline FiniteAlgebra complex_algebra(AtomStructure at) {
    return complex_algebra(std::make_shared<const AtomStructure>(std::move(at)));
}

/// Subalgebra generated by `gens`, by closure under the signature operations.
/// Throws if the closure exceeds `budget` elements.
inline FiniteAlgebra generated_subalgebra(const FiniteAlgebra& alg, const std::vector<Bits>& gens,
                                          std::size_t budget = 1u << 20) {
    std::set<Bits> seen;
    std::vector<Bits> queue;
    auto add = [&](const Bits& x) {
        if (seen.insert(x).second) {
            queue.push_back(x);
            if (seen.size() > budget) throw std::runtime_error("generated subalgebra exceeds budget");
        }
    };
    add(alg.zero());
    add(alg.one());
    for (int i = 0; i < alg.sig.n; ++i)
        for (int j = 0; j < alg.sig.n; ++j)
            if (alg.sig.diagonals) add(alg.diag(i, j));
    for (auto& g : gens) add(g);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Bits x = queue[head];
        add(~x);
        for (int i = 0; i < alg.sig.n; ++i) {
            add(alg.cyl(i, x));
            if (alg.sig.interior) add(alg.interior(i, x));
            for (int j = 0; j < alg.sig.n; ++j)
                if (i != j && alg.sig.transpositions) add(alg.subst(i, j, x));
        }
        // binary joins against everything found so far
        for (std::size_t k = 0; k <= head; ++k) add(x | queue[k]);
    }
    FiniteAlgebra sub = alg;
    sub.universe = std::vector<Bits>(seen.begin(), seen.end());
    return sub;
}

/// Tm At: the subalgebra generated by the atoms. For a finite frame this has the
/// full powerset as its Boolean side.
inline FiniteAlgebra term_algebra(std::shared_ptr<const AtomStructure> at, std::size_t budget = 1u << 20) {
    FiniteAlgebra cm = complex_algebra(at);
    std::vector<Bits> singletons;
    for (std::size_t a = 0; a < at->atoms; ++a) singletons.push_back(Bits::single(at->atoms, a));
    return generated_subalgebra(cm, singletons, budget);
}
inline FiniteAlgebra term_algebra(AtomStructure at, std::size_t budget = 1u << 20) {
    return term_algebra(std::make_shared<const AtomStructure>(std::move(at)), budget);
}

/// q_i x = -c_i -x
inline Bits q_op(const FiniteAlgebra& alg, int i, const Bits& x) { return ~alg.cyl(i, ~x); }

/// s_i^j x = c_i(d_ij . x); defined only for i != j
inline Bits s_op(const FiniteAlgebra& alg, int i, int j, const Bits& x) {
    if (i == j) throw std::invalid_argument("s_i^j requires i != j");
    return alg.cyl(i, alg.diag(i, j) & x);
}

/// dimension set: {i < n : c_i x != x}
inline std::vector<int> dimension_set(const FiniteAlgebra& alg, const Bits& x) {
    std::vector<int> d;
    for (int i = 0; i < alg.sig.n; ++i)
        if (alg.cyl(i, x) != x) d.push_back(i);
    return d;
}

/// Expand a CA-signature algebra with identity interior operators.
inline FiniteAlgebra discrete_topologize(const FiniteAlgebra& alg) {
    if (alg.sig.interior) throw std::invalid_argument("algebra already has interior operators");
    AtomStructure at = *alg.at;
    at.sig.interior = true;
    at.In.clear();
    for (int i = 0; i < at.sig.n; ++i) at.In.push_back(Rel::identity(at.atoms));
    FiniteAlgebra r = alg;
    r.sig.interior = true;
    r.at = std::make_shared<const AtomStructure>(std::move(at));
    return r;
}

/// Expand a CA-signature algebra with the one-moment tense/temporal operators
/// (G = H = Id; S = U = 0 on the empty flow).
inline FiniteAlgebra static_temporalize(const FiniteAlgebra& alg) {
    if (alg.sig.tense) throw std::invalid_argument("algebra already has tense operators");
    AtomStructure at = *alg.at;
    at.sig.tense = at.sig.temporal = true;
    FiniteAlgebra r = alg;
    r.sig.tense = r.sig.temporal = true;
    r.at = std::make_shared<const AtomStructure>(std::move(at));
    return r;
}

/// Forget operations: drop interior and/or tense features from the signature.
inline FiniteAlgebra ca_reduct(const FiniteAlgebra& alg) {
    AtomStructure at = *alg.at;
    at.sig.interior = at.sig.tense = at.sig.temporal = false;
    at.In.clear();
    FiniteAlgebra r = alg;
    r.sig.interior = r.sig.tense = r.sig.temporal = false;
    r.at = std::make_shared<const AtomStructure>(std::move(at));
    return r;
}

} // namespace cyl
