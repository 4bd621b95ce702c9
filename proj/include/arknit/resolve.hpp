#pragma once

#include "arknit/complex.hpp"
#include "arknit/rep.hpp"

#include <map>

namespace arknit {

// A bounded cochain complex of representations; levels[i] sits in degree
// lo + i and diffs[i] : levels[i] -> levels[i+1].
struct RepComplex {
    const BasicAlgebra* alg = nullptr;
    int lo = 0;
    std::vector<Representation> levels;
    std::vector<RepMorphism> diffs;

    static RepComplex empty(const BasicAlgebra* a);
    static RepComplex stalk(Representation m, int degree = 0);
    static RepComplex from_proj(const ProjComplex& x);

    bool is_empty() const;
    int hi() const { return lo + static_cast<int>(levels.size()) - 1; }
    Representation level_at(int n) const; // zero module outside [lo, hi]
    RepMorphism diff_at(int n) const;     // zero morphism outside [lo, hi-1]
    void validate() const;
};

// Dimension of the degree-n cohomology for every n in [lo, hi].
std::map<int, std::size_t> rep_homology_dims(const RepComplex& c);
std::map<int, std::size_t> homology_dims(const ProjComplex& x);

// Transport of a complex of projectives through the Nakayama functor: each
// cell becomes the matching injective and each differential moves across.
RepComplex nakayama_complex(const ProjComplex& x);

// A complex of projectives quasi-isomorphic to c, with the comparison chain
// morphisms q[n] : P^n -> c^n.  Both the chain condition and acyclicity of
// the comparison cone are re-verified on every call.
struct ResolveResult {
    ProjComplex proj;
    std::map<int, RepMorphism> q;
};
ResolveResult resolve_complex(const RepComplex& c, int max_len = 64);

// Minimal projective resolution of a module, placed in degrees [-pd, 0].
ProjComplex resolution_of(const Representation& m, int max_len = 64);

// Certified global dimension: the exact value when every simple resolves
// within the budget, -1 when some simple does not (suspected infinite).
// A certified value is cached on the algebra; -1 is relative to the budget
// and is recomputed on each call.
int gldim_certified(const BasicAlgebra* alg, int max_len = 64);

// Hom(-, algebra) on a complex of projectives: cells keep their vertex
// labels over the opposite algebra, degrees are negated, and the degree-n
// differential is the dual of the old degree -n-1 one.  An involution.
ProjComplex dual_complex(const ProjComplex& x);

// Derived translates on K^b(proj): resolve the Nakayama transport and shift.
// Results are minimal; the two maps are mutually inverse up to isomorphism.
ProjComplex tau_K(const ProjComplex& x, int max_len = 64);
ProjComplex tau_inv_K(const ProjComplex& x, int max_len = 64);

// Module-level translates via the transpose: D Tr on the minimal projective
// presentation, and its inverse Tr D.  Used to cross-check the derived ones.
Representation ar_translate_mod(const Representation& m);
Representation ar_translate_mod_inv(const Representation& m);

} // namespace arknit
