#pragma once

#include "arknit/algebra.hpp"

#include <functional>
#include <map>
#include <optional>

namespace arknit {

// A bounded complex of finitely generated projective right modules.  Each
// degree n holds a finite direct sum of indecomposable projectives P_v,
// recorded as the list of vertex ids `cells_at(n)`; the differential
// diff_at(n) : X^n -> X^{n+1} is an AlgMatrix between consecutive sums.
// Instances are always trimmed (nonempty cells in the boundary degrees,
// possibly empty interior degrees) and validated (shape, graded-piece
// membership of every entry, d . d = 0) on construction.
class ProjComplex {
public:
    ProjComplex() = default; // placeholder only; not a valid complex

    ProjComplex(const BasicAlgebra* alg, int lo,
                std::vector<std::vector<int>> cells,
                std::vector<AlgMatrix> diffs);

    static ProjComplex empty(const BasicAlgebra* alg);
    // The stalk complex P_v concentrated in the given degree.
    static ProjComplex stalk(const BasicAlgebra* alg, int vertex, int degree = 0);

    const BasicAlgebra* alg() const { return alg_; }
    bool is_empty() const { return cells_.empty(); }
    int lo() const; // lowest degree with cells (requires nonempty)
    int hi() const; // highest degree with cells
    const std::vector<int>& cells_at(int n) const; // {} outside [lo, hi]
    AlgMatrix diff_at(int n) const;                // X^n -> X^{n+1}, zero outside
    std::size_t total_cells() const;

    ProjComplex shifted(int k) const; // X[k]^n = X^{n+k}, differential scaled by (-1)^k
    bool is_minimal() const;          // every differential entry is radical
    // Canonical display name of a minimal complex, e.g. "(P1-P2)[0]".
    std::string signature() const;
    std::string to_string() const;

    bool operator==(const ProjComplex& o) const;
    bool operator!=(const ProjComplex& o) const { return !(*this == o); }

private:
    void normalize();
    void validate() const;

    const BasicAlgebra* alg_ = nullptr;
    int lo_ = 0;
    std::vector<std::vector<int>> cells_; // cells_[n - lo_] = vertex ids
    std::vector<AlgMatrix> diff_;         // diff_[n - lo_]: X^n -> X^{n+1}
};

// Degreewise direct sum, with the summands' cells concatenated a-then-b.
ProjComplex direct_sum(const ProjComplex& a, const ProjComplex& b);

// A graded map f : X -> Y of degree `deg`, with components
// at(n) : X^n -> Y^{n+deg}.  Chain maps are the deg = 0 instances satisfying
// the chain condition; homotopies are deg = -1 instances.  Components absent
// from `comp` are zero.
struct ChainMap {
    ProjComplex src, tgt;
    int deg = 0;
    std::map<int, AlgMatrix> comp;

    static ChainMap zero(ProjComplex src, ProjComplex tgt, int deg = 0);
    static ChainMap identity(const ProjComplex& x);

    AlgMatrix at(int n) const;
    void set(int n, AlgMatrix m); // validates the shape; drops zero components

    bool is_zero() const;
    bool chain_condition_holds() const; // deg = 0 only: d_Y f = f d_X

    ChainMap shifted(int k) const; // component at n becomes the old one at n+k
    ChainMap operator+(const ChainMap& o) const;
    ChainMap operator-(const ChainMap& o) const;
    ChainMap operator-() const;
    ChainMap scaled(const Scalar& s) const;
    bool operator==(const ChainMap& o) const;
    bool operator!=(const ChainMap& o) const { return !(*this == o); }
    std::string to_string() const;
};

// g after f; degrees add.
ChainMap compose(const ChainMap& g, const ChainMap& f);

// For a degree -1 map s : X -> Y, the degree 0 map d_Y s + s d_X.
ChainMap homotopy_boundary(const ChainMap& s);

// Mapping cone of a chain map f : X -> Y.  C^n = X^{n+1} (+) Y^n with the
// X block listed first and differential [[-d_X, 0], [f, d_Y]]; `incl` is the
// canonical inclusion Y -> C and `proj` the projection C -> X[1].
struct ConeResult {
    ProjComplex cone;
    ChainMap incl;
    ChainMap proj;
};
ConeResult mapping_cone(const ChainMap& f);

// A triangle X -> Y -> Z -> X[1].  Nothing is certified at construction;
// "standard" or "Auslander-Reiten" status is established by the operations
// that produce or verify instances.
struct Triangle {
    ProjComplex X, Y, Z;
    ChainMap u; // X -> Y
    ChainMap v; // Y -> Z
    ChainMap w; // Z -> X[1]
};

// The standard triangle X -> Y -> C_f -> X[1] of a chain map f.
Triangle standard_triangle(const ChainMap& f);

// Gaussian elimination of invertible differential entries.  `min` has a
// radical differential and phi : X -> min, psi : min -> X are inverse
// homotopy equivalences with exact witnesses:
//   phi . psi = 1_min        and        psi . phi = 1_X - (d h + h d).
struct MinimizeResult {
    ProjComplex min;
    ChainMap phi;
    ChainMap psi;
    ChainMap h; // degree -1 endomap of X
};
MinimizeResult minimize(const ProjComplex& x);

// Coordinates on the space of degree-`deg` graded maps X -> Y: one scalar
// slot per (degree, target cell, source cell, path-class) tuple.
struct MapSpace {
    ProjComplex src, tgt;
    int deg = 0;
    struct Slot {
        int n;            // source degree
        std::size_t r, c; // entry position in the component at n
        int basis_index;  // algebra basis element carried by the slot
    };
    std::vector<Slot> slots;

    std::size_t dim() const { return slots.size(); }
    Matrix flatten(const ChainMap& f) const;           // dim x 1 column
    ChainMap unflatten(const Matrix& column) const;    // inverse of flatten
    ChainMap unflatten_col(const Matrix& m, std::size_t j) const;
};
MapSpace map_space(const ProjComplex& x, const ProjComplex& y, int deg);

// Matrix of a linear operator between map spaces, computed by probing the
// standard basis of `dom`.
Matrix operator_matrix(const MapSpace& dom, const MapSpace& cod,
                       const std::function<ChainMap(const ChainMap&)>& t);

// The morphism space Hom(X, Y) in the homotopy category: chain maps modulo
// the null-homotopic ones, with an explicit basis of representatives.
struct HomK {
    MapSpace space;     // degree-0 graded maps X -> Y
    Matrix chain_maps;  // columns: basis of the space of chain maps
    Matrix boundaries;  // columns: spanning set of the null-homotopic maps
    std::size_t dim = 0;
    std::vector<ChainMap> classes; // basis of Hom_K, one representative each
    Matrix class_cols;             // their flattened coordinates, one column each

    // Coordinates of the class [f] in the `classes` basis; f must be a chain
    // map X -> Y.
    Matrix class_coords(const ChainMap& f) const;
};
HomK hom_K(const ProjComplex& x, const ProjComplex& y);

// Whether two parallel chain maps agree in the homotopy category, and the
// homotopy s with f - g = d s + s d when they do.
bool homotopic(const ChainMap& f, const ChainMap& g);
std::optional<ChainMap> null_homotopy(const ChainMap& f);

} // namespace arknit
