#pragma once

#include "arknit/algebra.hpp"

#include <optional>

namespace arknit {

// A finite-dimensional right module, presented as a representation of the
// quiver: a vector space per vertex and a matrix per arrow.  For an arrow
// a : u -> v the matrix arr[a] has shape dims[v] x dims[u] and gives the
// right action of a as M_u -> M_v; a path acts by composing its arrow
// matrices last-arrow-outermost.
struct Representation {
    const BasicAlgebra* alg = nullptr;
    std::vector<std::size_t> dims; // per vertex
    std::vector<Matrix> arr;       // per arrow

    static Representation zero(const BasicAlgebra* a);
    static Representation simple(const BasicAlgebra* a, int v);

    std::size_t total_dim() const;
    std::size_t dim_at(int v) const { return dims[static_cast<std::size_t>(v)]; }
    bool is_zero() const { return total_dim() == 0; }

    Matrix act_path(const PathWord& p) const;      // M_src -> M_tgt
    Matrix act(const AlgElem& x, int u, int v) const; // x in e_u L e_v

    // Checks shapes and that the algebra's relations act as zero.
    void validate() const;

    bool operator==(const Representation& o) const;
    bool operator!=(const Representation& o) const { return !(*this == o); }
    std::string to_string() const;
};

// The projective sum (+)_k P_{cells[k]} as a representation.  The basis at a
// vertex v is ordered cell by cell, each block listing piece(cells[k], v) in
// algebra basis order.
Representation proj_rep(const BasicAlgebra* alg, const std::vector<int>& cells);
// Start of cell k's block at vertex v in that ordering.
std::size_t proj_block_offset(const BasicAlgebra* alg, const std::vector<int>& cells,
                              std::size_t k, int v);
// Coordinate (at vertex cells[k]) of the generator e_{cells[k]} of cell k.
std::size_t proj_generator_index(const BasicAlgebra* alg, const std::vector<int>& cells,
                                 std::size_t k);

// The injective sum (+)_k I_{cells[k]}, where I_i is the vector-space dual of
// the left projective at i; the basis at v is the dual of piece(v, cells[k]),
// block by block.
Representation inj_rep(const BasicAlgebra* alg, const std::vector<int>& cells);

// Degreewise direct sum with a's coordinates listed first.
Representation rep_sum(const Representation& a, const Representation& b);

// A morphism of representations: one matrix per vertex commuting with the
// arrow actions.
struct RepMorphism {
    Representation src, tgt;
    std::vector<Matrix> comp; // per vertex, dims tgt_v x src_v

    static RepMorphism zero(Representation src, Representation tgt);
    static RepMorphism identity(const Representation& m);

    void validate() const; // shapes and commutation with every arrow
    bool is_zero() const;

    RepMorphism operator+(const RepMorphism& o) const;
    RepMorphism operator-(const RepMorphism& o) const;
    RepMorphism operator-() const;
    RepMorphism scaled(const Scalar& s) const;
    bool operator==(const RepMorphism& o) const;
    bool operator!=(const RepMorphism& o) const { return !(*this == o); }
    std::string to_string() const;
};

RepMorphism compose(const RepMorphism& g, const RepMorphism& f); // g after f

// Kernel, image and quotient, each with its structure morphism.
struct KernelRep {
    Representation ker;
    RepMorphism incl; // ker -> src
};
KernelRep kernel_rep(const RepMorphism& f);

struct ImageRep {
    Representation img;
    RepMorphism incl; // img -> tgt
};
ImageRep image_rep(const RepMorphism& f);

struct QuotientRep {
    Representation quo;
    RepMorphism proj; // m -> quo
};
QuotientRep quotient_rep(const Representation& m, const RepMorphism& sub_incl);

// Smallest subrepresentation of m containing the given per-vertex columns
// (which must already be closed under the action).
struct SubRep {
    Representation sub;
    RepMorphism incl;
};
SubRep subrep_span(const Representation& m, const std::vector<Matrix>& span_cols);

// Columns spanning (m . rad)_v = sum of the incoming arrow images.
Matrix radical_columns(const Representation& m, int v);

// Basis of Hom(m, n) as representations.
std::vector<RepMorphism> hom_rep(const Representation& m, const Representation& n);
// Search for an isomorphism m -> n through Hom-basis combinations; the
// search is deterministic and may miss an isomorphism only over tiny fields.
std::optional<RepMorphism> find_iso_rep(const Representation& m, const Representation& n);

// Vector-space duality: a right module over the algebra becomes a right
// module over the opposite algebra, with every arrow matrix transposed.
Representation dual_rep(const Representation& m);
// The contravariant transport D(f) : D(tgt) -> D(src).
RepMorphism dual_morphism(const RepMorphism& f);

// A morphism between projective sums given by generator images: column k is
// the image in tgt (at vertex cells[k]) of the generator of cell k.
RepMorphism from_generators(const BasicAlgebra* alg, const std::vector<int>& cells,
                            const Representation& tgt, const std::vector<Matrix>& gen_cols);

// The two descriptions of a morphism between projective sums agree through
// this pair of bridges.
RepMorphism rep_morphism_of(const AlgMatrix& f);
AlgMatrix alg_matrix_of(const RepMorphism& f, const std::vector<int>& row_cells,
                        const std::vector<int>& col_cells);

// Projective cover: cells lists one vertex per top generator (vertex order,
// then basis order inside a vertex) and eps : proj_rep(cells) -> m is onto
// with kernel inside the radical.
struct CoverRep {
    std::vector<int> cells;
    RepMorphism eps;
};
CoverRep projective_cover(const Representation& m);

// Nakayama transport of a morphism between projective sums: the induced
// morphism between the matching injective sums.
RepMorphism nakayama_morphism(const AlgMatrix& f);

// Exact direct-summand tests (P_i | m, respectively I_i | m, for some i).
bool has_projective_summand(const Representation& m);
bool has_injective_summand(const Representation& m);

} // namespace arknit
