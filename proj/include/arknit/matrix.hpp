#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "arknit/field.hpp"

namespace arknit {

// Dense matrix over a Field.  Rows and columns are 0-indexed.  All reduction
// routines are deterministic: pivots are always chosen as the first usable
// entry in row/column order.
class Matrix {
public:
    Matrix() : field_(Field::rationals()), rows_(0), cols_(0) {}
    Matrix(const Field& f, std::size_t rows, std::size_t cols)
        : field_(f), rows_(rows), cols_(cols), e_(rows * cols, Scalar::zero(f)) {}

    static Matrix identity(const Field& f, std::size_t n);

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const Scalar& at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }
    Scalar& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }

    bool is_zero() const;
    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator-() const;
    Matrix scaled(const Scalar& s) const;
    Matrix transpose() const;

    // Stack side by side / on top of each other.
    static Matrix hcat(const Matrix& a, const Matrix& b);
    static Matrix vcat(const Matrix& a, const Matrix& b);

    Matrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    Matrix select_columns(const std::vector<std::size_t>& cs) const;
    Matrix select_rows(const std::vector<std::size_t>& rs) const;

    std::string to_string() const;

private:
    Field field_;
    std::size_t rows_, cols_;
    std::vector<Scalar> e_;
};

struct RrefResult {
    Matrix r;                        // reduced row echelon form
    std::vector<std::size_t> pivots; // pivot column per pivot row, ascending
    std::size_t rank = 0;
};

// Gauss-Jordan reduction; pivot = first nonzero entry scanning down the
// current column, columns left to right.
RrefResult rref(const Matrix& a);

std::size_t rank(const Matrix& a);

// Basis of the right null space, returned as matrix columns (possibly 0
// columns).  Free coordinates are taken in ascending column order, and each
// basis vector has a 1 in its free coordinate.
Matrix kernel(const Matrix& a);

// Solve a x = b for each column of b; returns one particular solution with
// all free variables set to zero, or nullopt if any column is inconsistent.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

// Inverse of a square matrix, or nullopt when singular.
std::optional<Matrix> inverse(const Matrix& a);

// Helper for working with a subspace of k^n spanned by the columns of
// `span`: reduce an arbitrary vector modulo the subspace, decide membership,
// and extend a partial basis deterministically.
class ColumnSpace {
public:
    explicit ColumnSpace(const Matrix& span);
    ColumnSpace(const Field& f, std::size_t n); // zero subspace of k^n

    std::size_t dim() const { return basis_.size(); }
    std::size_t ambient() const { return n_; }

    // Returns the residue of v after reduction by the stored row-echelon
    // basis; the residue is zero iff v lies in the span.
    std::vector<Scalar> reduce(const std::vector<Scalar>& v) const;
    bool contains(const std::vector<Scalar>& v) const;
    // Adds v to the space if independent; returns true when the dimension grew.
    bool add(const std::vector<Scalar>& v);

    // Leading coordinate of each echelon row (unordered across rows).
    const std::vector<std::size_t>& leads() const { return lead_; }

private:
    Field field_;
    std::size_t n_;
    std::vector<std::vector<Scalar>> basis_; // echelonized rows
    std::vector<std::size_t> lead_;          // leading coordinate per row
};

} // namespace arknit
