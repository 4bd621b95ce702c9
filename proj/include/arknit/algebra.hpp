#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "arknit/matrix.hpp"

namespace arknit {

struct Arrow {
    std::string name;
    int src = -1;
    int tgt = -1;
};

struct Quiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;

    int nv() const { return static_cast<int>(vertices.size()); }
    int na() const { return static_cast<int>(arrows.size()); }
    int vertex_id(const std::string& name) const;
    int arrow_id(const std::string& name) const;
    Quiver opposite() const;
    void validate() const;
};

// A path written left to right: word {a_1, ..., a_k} means "first traverse
// a_1, then a_2, ...".  A trivial path has an empty word and src == tgt.
struct PathWord {
    int src = -1;
    int tgt = -1;
    std::vector<int> arrows;

    int length() const { return static_cast<int>(arrows.size()); }
    std::string key() const;
    std::string display(const Quiver& q) const; // "e3" or "ba"
    static PathWord trivial(int v) { return PathWord{v, v, {}}; }
    static PathWord from_arrows(const Quiver& q, const std::vector<int>& word);
};

// One relation: a linear combination of parallel paths, each of length >= 2.
struct Relation {
    std::vector<std::pair<Scalar, PathWord>> terms;
};

struct AlgebraOptions {
    int max_len = 32;        // bound for the nilpotency certificate search
    long long path_cap = 200000;
};

class BasicAlgebra;

// Element of a BasicAlgebra in terms of its path basis.
struct AlgElem {
    const BasicAlgebra* alg = nullptr;
    std::vector<Scalar> c;

    bool is_zero() const;
    AlgElem operator+(const AlgElem& o) const;
    AlgElem operator-(const AlgElem& o) const;
    AlgElem operator-() const;
    AlgElem operator*(const AlgElem& o) const; // algebra product, left factor first
    AlgElem scaled(const Scalar& s) const;
    bool operator==(const AlgElem& o) const;
    bool operator!=(const AlgElem& o) const { return !(*this == o); }
    std::string to_string() const;
};

// Finite-dimensional quotient of a path algebra by an admissible ideal,
// with a certified path basis and a precomputed multiplication table.
class BasicAlgebra {
public:
    static std::shared_ptr<const BasicAlgebra> build(const Quiver& q,
                                                     const std::vector<Relation>& rels,
                                                     const Field& f,
                                                     const AlgebraOptions& opts = {});

    const Quiver& quiver() const { return quiver_; }
    const Field& field() const { return field_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<PathWord>& basis() const { return basis_; }
    const PathWord& basis_path(int i) const { return basis_[i]; }
    int trivial_index(int v) const { return trivial_idx_[v]; }

    // Basis indices of e_src Λ e_tgt, i.e. classes of paths src -> tgt.
    const std::vector<int>& piece(int src, int tgt) const;

    // Class of an arbitrary path in the quotient (zero if it lies in the ideal).
    AlgElem path_class(const PathWord& p) const;

    AlgElem zero_elem() const;
    AlgElem unit() const;
    AlgElem trivial_elem(int v) const; // e_v
    AlgElem arrow_elem(int arrow) const;
    AlgElem basis_elem(int i) const;

    AlgElem multiply(const AlgElem& a, const AlgElem& b) const;

    // Basis indices of paths of length exactly n (a section of rad^n / rad^{n+1}).
    std::vector<int> radical_layer(int n) const;
    // Basis indices spanning rad^n.
    std::vector<int> radical_power(int n) const;

    bool in_radical(const AlgElem& x) const;
    // x lies in rad \ rad^2, i.e. has a nonzero arrow coefficient and no
    // trivial-path coefficient.
    bool is_arrow_class(const AlgElem& x) const;

    const BasicAlgebra& opposite() const;
    // Transport an element along the canonical anti-isomorphism (path reversal).
    AlgElem op_elem(const AlgElem& x) const;

    // Coordinates of x inside the graded piece (src, tgt); x must be supported there.
    std::vector<Scalar> piece_coords(const AlgElem& x, int src, int tgt) const;
    AlgElem from_piece_coords(int src, int tgt, const std::vector<Scalar>& coords) const;

    // Matrix of (a * -): piece(a_tgt, t) -> piece(a_src, t); a must lie in
    // piece(a_src, a_tgt).
    Matrix lmul_matrix(const AlgElem& a, int a_src, int a_tgt, int t) const;
    // Matrix of (- * a): piece(s, a_src) -> piece(s, a_tgt).
    Matrix rmul_matrix(const AlgElem& a, int a_src, int a_tgt, int s) const;

    // Cached derived invariants, filled in lazily by higher layers.
    mutable int gldim_cache = -2; // -2 unknown, >= 0 certified global dimension

private:
    friend struct AlgElem;
    BasicAlgebra() = default;
    BasicAlgebra(const BasicAlgebra&) = delete;
    BasicAlgebra& operator=(const BasicAlgebra&) = delete;

    static std::shared_ptr<BasicAlgebra> build_impl(const Quiver& q,
                                                    const std::vector<Relation>& rels,
                                                    const Field& f,
                                                    const AlgebraOptions& opts,
                                                    bool with_opposite);
    void check_structure(const std::vector<Relation>& rels) const;

    Quiver quiver_;
    Field field_;
    int trunc_len_ = 0; // certified L with rad^L contained in the ideal
    std::vector<PathWord> basis_;
    std::vector<int> basis_len_;
    std::vector<int> trivial_idx_;
    std::map<std::string, int> path_index_;   // enumerated paths of length < L
    std::vector<int> path_to_basis_;          // -1 when the path is not a basis element
    std::unique_ptr<ColumnSpace> ideal_rows_; // echelon form of the truncated ideal
    std::vector<int> reduced_support_;        // basis position per path coordinate, -1 on pivots
    std::size_t n_short_paths_ = 0;
    std::vector<std::vector<int>> piece_;     // nv*nv -> basis indices
    std::vector<std::vector<Scalar>> table_;  // dim*dim -> product coordinates
    std::shared_ptr<const BasicAlgebra> op_owned_;
    const BasicAlgebra* op_back_ = nullptr;
};

using AlgebraPtr = std::shared_ptr<const BasicAlgebra>;

// Matrix with entries in the algebra, representing a morphism between finite
// direct sums of indecomposable projectives: columns index the source summands
// P_{col_cells[c]}, rows the target summands P_{row_cells[r]}, and the (r, c)
// entry lies in Hom(P_{col_c}, P_{row_r}) = e_{row_r} Λ e_{col_c}.
// Morphisms act by left multiplication, and composition is the ordinary
// matrix product with the left factor written first.
struct AlgMatrix {
    const BasicAlgebra* alg = nullptr;
    std::vector<int> row_cells;
    std::vector<int> col_cells;
    std::vector<AlgElem> e; // row-major

    AlgMatrix() = default;
    AlgMatrix(const BasicAlgebra* a, std::vector<int> rows, std::vector<int> cols);

    static AlgMatrix identity(const BasicAlgebra* a, const std::vector<int>& cells);

    std::size_t rows() const { return row_cells.size(); }
    std::size_t cols() const { return col_cells.size(); }
    const AlgElem& at(std::size_t r, std::size_t c) const { return e[r * cols() + c]; }
    AlgElem& at(std::size_t r, std::size_t c) { return e[r * cols() + c]; }

    bool is_zero() const;
    bool is_radical() const;
    bool operator==(const AlgMatrix& o) const;
    bool operator!=(const AlgMatrix& o) const { return !(*this == o); }

    AlgMatrix operator*(const AlgMatrix& o) const;
    AlgMatrix operator+(const AlgMatrix& o) const;
    AlgMatrix operator-(const AlgMatrix& o) const;
    AlgMatrix operator-() const;
    AlgMatrix scaled(const Scalar& s) const;

    // Per-entry trivial-path coefficients (zero off equal vertices).
    Matrix scalar_part() const;

    AlgMatrix select(const std::vector<std::size_t>& rs,
                     const std::vector<std::size_t>& cs) const;

    // Transpose with entries transported to the opposite algebra; models
    // Hom(-, Λ) on morphisms between projectives.
    AlgMatrix dual() const;

    void validate() const;
    std::string to_string() const;

    static AlgMatrix hcat(const AlgMatrix& a, const AlgMatrix& b);
    static AlgMatrix vcat(const AlgMatrix& a, const AlgMatrix& b);
    static AlgMatrix block_diag(const AlgMatrix& a, const AlgMatrix& b);
};

// Two-sided inverse of a square morphism between projective sums, or nullopt.
std::optional<AlgMatrix> alg_inverse(const AlgMatrix& m);

} // namespace arknit
