#pragma once

#include "arknit/complex.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace arknit {

// Per-degree splitting behaviour of a chain-map component, decided by the
// ranks of its scalar (trivial-path) part: full column rank makes the
// component a split monomorphism in the additive category of projectives,
// full row rank a split epimorphism, and both make it an isomorphism.
enum class SplitKind { Neither, SplitMono, SplitEpi, Both };
std::string to_string(SplitKind k);

// Degreewise splitting record of a degree-0 map, over the union of the
// supports of source and target.  Witnesses are verified by multiplication
// on construction: retraction . component = 1 on the source summand,
// component . section = 1 on the target summand.
struct SplitPattern {
    struct Entry {
        int n = 0;
        SplitKind kind = SplitKind::Neither;
        std::optional<AlgMatrix> retraction; // set iff split mono at n
        std::optional<AlgMatrix> section;    // set iff split epi at n
    };
    std::vector<Entry> entries; // consecutive degrees, ascending

    const Entry& at(int n) const;
    bool all_mono() const; // every degree SplitMono or Both
    bool all_epi() const;
    bool all_both() const;
    // Some pivot degree with only SplitEpi/Both strictly below it and only
    // SplitMono/Both strictly above, while the map is neither fully split
    // mono nor fully split epi.  The shape every irreducible-like composite
    // leaves behind, whether or not any component is itself irreducible.
    bool mixed_cut() const;
    std::string to_string() const; // e.g. "-1:epi 0:neither 1:mono"
};

SplitPattern split_pattern(const ChainMap& f);

enum class MorphKind { Smonic, Sepic, Sirreducible, Unclassified };

// Classification of a chain map by the split structure of its components:
//   Smonic        every component split mono;
//   Sepic         every component split epi;
//   Sirreducible  exactly one degree iota with a radical nonzero component
//                 that splits neither way, split-epi components strictly
//                 below it and split-mono components strictly above;
//   Unclassified  anything else (such a map is never irreducible).
// `certified` marks an exact verdict: always for Smonic and Sepic, and for
// Sirreducible when both cells at iota are single indecomposables and the
// component is an arrow class (the exact criterion for irreducibility
// between indecomposable projectives).  When a cell at iota is decomposable
// no finite criterion decides irreducibility, so the class is reported as a
// Sirreducible candidate with certified = false.
struct MorphClass {
    MorphKind kind = MorphKind::Unclassified;
    int iota = 0; // meaningful for Sirreducible only
    bool certified = false;
    SplitPattern pattern;
    std::string to_string() const; // "smonic", "sepic", "sirreducible", "unclassified"
};

// Total on degree-0 chain maps except for two degenerate inputs, which
// throw: a map between empty complexes, and an isomorphism of complexes.
MorphClass classify(const ChainMap& f);

// A classified map rewritten in coordinates where it takes its canonical
// block shape: a smonic f becomes the column [1; 0] into X^n (+) Y'^n, a
// sepic f the row [1 0] out of Y^n (+) X'^n, and a sirreducible f is the
// canonical projection below iota, the original component at iota, and the
// canonical injection above.  The basis changes are isomorphisms of
// complexes with exact two-sided inverses; the leftover blocks of the
// rewritten differentials are the residual data the reduced cone is built
// from.
struct StandardForm {
    MorphClass cls;
    ChainMap f;          // the original map X -> Y
    ProjComplex std_src; // X in standard coordinates
    ProjComplex std_tgt; // Y in standard coordinates
    ChainMap from_std_src, to_std_src; // inverse isomorphisms std_src <-> X
    ChainMap from_std_tgt, to_std_tgt; // inverse isomorphisms std_tgt <-> Y
    ChainMap std_map;                  // the rewritten map std_src -> std_tgt

    // Complement cells per degree: Y'^n on the split-mono side (std_tgt^n =
    // X^n (+) Y'^n), X'^n on the split-epi side (std_src^n = Y^n (+) X'^n).
    std::map<int, std::vector<int>> mono_comp, epi_comp;
    // Residual blocks of the rewritten differentials:
    //   split-mono side: d_std_tgt^n = [[d_X^n, a^n], [0, e_mono^n]]
    //   split-epi side:  d_std_src^n = [[d_Y^n, 0], [b^n, e_epi^n]]
    std::map<int, AlgMatrix> e_mono, e_epi, a, b;
    // Junction blocks, sirreducible case only:
    //   d_std_src^{iota-1} = [c | e_bar]  (column blocks: Y^{iota-1}, X'^{iota-1})
    //   d_std_tgt^{iota}   = [ell; eps]   (row blocks: X^{iota+1}, Y'^{iota+1})
    std::optional<AlgMatrix> c, e_bar, ell, eps;
};

// Rewrites f per its class; cls must come from classify(f).  Unclassified
// input throws.
StandardForm standard_form(const ChainMap& f, const MorphClass& cls);

// A small model Z of the mapping cone of a classified map f : X -> Y,
// assembled directly from the standard-form residuals, with a verified
// homotopy equivalence to the cone:
//   h eta = 1_Z exactly;          g = h t_f exactly;
//   p_f - w h = d s + s d;        1_{C_f} - eta h = d v + v d.
// When X and Y are minimal so is Z, and X -> Y -> Z -> X[1] is a triangle
// isomorphic to the standard one.
struct ReducedCone {
    ChainMap f;    // the classified map X -> Y
    ProjComplex Z; // the reduced third term
    ChainMap g;    // Y -> Z
    ChainMap w;    // Z -> X[1]
    ChainMap h;    // C_f -> Z
    ChainMap eta;  // Z -> C_f
    ChainMap s;    // C_f -> X[1], degree -1
    ChainMap v;    // C_f -> C_f, degree -1

    Triangle triangle() const; // X -> Y -> Z -> X[1]
};
ReducedCone reduced_cone(const StandardForm& sf);

// An isomorphism in the homotopy category with all witnesses:
//   bwd fwd = 1_src + d h_src + h_src d,  fwd bwd = 1_tgt + d h_tgt + h_tgt d.
struct IsoK {
    ChainMap fwd, bwd;
    ChainMap h_src, h_tgt; // degree -1
};

// Upgrades a chain map to an isomorphism in the homotopy category by
// solving for a two-sided homotopy inverse; nullopt when there is none.
std::optional<IsoK> iso_witness_K(const ChainMap& f);

// Searches hom_K(a, b) for an isomorphism: the basis classes first, then a
// bounded batch of pseudorandom combinations with a fixed seed.  A nullopt
// is exact for minimal complexes whose cells differ in some degree (minimal
// models of isomorphic objects agree degreewise); otherwise it means the
// bounded search found nothing.
std::optional<IsoK> find_iso_K(const ProjComplex& a, const ProjComplex& b);

// An isomorphism of triangles: component isomorphisms in the homotopy
// category plus homotopies making all three squares commute:
//   on_y.fwd u1 - u2 on_x.fwd = d su + su d,
//   on_z.fwd v1 - v2 on_y.fwd = d sv + sv d,
//   on_x.fwd[1] w1 - w2 on_z.fwd = d sw + sw d.
struct TriangleIso {
    IsoK on_x, on_y, on_z;
    ChainMap su, sv, sw; // degree -1
};
std::optional<TriangleIso> verify_triangle_iso(const Triangle& t1, const Triangle& t2);

// The endomorphism ring of x in the homotopy category, with its radical.
// The radical is the kernel of the trace form of the regular representation,
// re-verified to be a nilpotent ideal (exact over the rationals and over any
// prime field where that verification succeeds; it throws otherwise).
struct EndK {
    HomK hom;                      // hom_K(x, x)
    Matrix identity_coords;        // class coordinates of the identity
    std::vector<Matrix> left_mult; // per class i, the matrix of [g] -> [classes[i] g]
    std::vector<ChainMap> radical; // basis of the radical, as representatives
    Matrix radical_coords;         // their class coordinates, one column each
};
EndK end_K(const ProjComplex& x);

// Indecomposability of x in the homotopy category.  A false verdict is
// exact (a nontrivial idempotent endomorphism was found); a true verdict is
// exact when the endomorphism ring is local and otherwise comes from a
// Fitting-style search over a deterministic element schedule — basis
// classes, pairwise products, then seeded pseudorandom combinations — that
// factored no minimal polynomial into coprime nontrivial parts
// (heuristically complete).
bool is_indecomposable_K(const ProjComplex& x);

// Shape analysis of a triangle X -u-> Y -v-> Z -w-> X[1] whose first map
// has the given class.  Checks the class implication (smonic -> sepic,
// sepic -> sirreducible, sirreducible -> smonic or sirreducible), then
// matches the degreewise cells of the three terms against the template for
// that class pair:
//   "a"  u smonic:            Y^n = X^n (+) Z^n degreewise;
//   "b"  u sepic:             Y stops at the pivot j1 of v, Z starts there,
//                             X agrees with Y through j1 and with Z[-1] above;
//   "c1" u sirr., v smonic:   X stops at iota, Y starts there, Z = X[1]
//                             below iota and Z = Y from iota on;
//   "c2" u sirr., v sirr. with pivot j1 <= iota-2: X agrees with Y through
//                             j1, Y gaps strictly between, Z = X[1] on
//                             [j1, iota-1] and Z = Y from iota on;
//   "c3" the j1 = iota-1 degeneration of c2.
// Throws "shape violation: ..." when the implication or template fails.
struct ShapeReport {
    std::string template_id; // "a", "b", "c1", "c2", "c3"
    MorphClass u_class, v_class;
    std::string details;
};
ShapeReport triangle_shape(const MorphClass& u_class, const Triangle& tri);

// Support-window consistency checks for a map f : X -> Y assumed
// irreducible in the homotopy category, judged against its computed class.
// A clause applies when its degree-window hypothesis holds; inapplicable
// clauses pass vacuously.  The two clauses concluding "no irreducible
// morphism exists here at all" fail whenever applicable, flagging the
// irreducibility assumption itself.
struct SupportReport {
    struct Clause {
        std::string id;
        bool applicable = false;
        bool passed = true;
        std::string note;
    };
    std::vector<Clause> clauses;
    bool all_passed = true;
};
SupportReport support_checks(const ChainMap& f, const MorphClass& cls);

// Orthogonality of the reduced cone of f against projectives: no nonzero
// maps in the homotopy category from minimize(cone f) to any stalk P_i[0],
// and none from the resolution of any indecomposable injective into
// minimize(cone f)[-1].  Both hold when f is an irreducible map between
// minimal resolutions of modules.
bool orthogonality_check(const ChainMap& f, int max_len = 64);

} // namespace arknit
