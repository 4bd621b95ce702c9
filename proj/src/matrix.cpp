#include "arknit/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace arknit {

Matrix Matrix::identity(const Field& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
}

bool Matrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool Matrix::operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || field_ != o.field_) return false;
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] != o.e_[i]) return false;
    return true;
}

Matrix Matrix::operator+(const Matrix& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, "matrix shape mismatch in addition");
    Matrix m(field_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] + o.e_[i];
    return m;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + (-o); }

Matrix Matrix::operator-() const {
    Matrix m(field_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] = -e_[i];
    return m;
}

Matrix Matrix::scaled(const Scalar& s) const {
    Matrix m(field_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] * s;
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    require(cols_ == o.rows_, "matrix shape mismatch in product");
    Matrix m(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& x = at(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                if (o.at(k, j).is_zero()) continue;
                m.at(i, j) = m.at(i, j) + x * o.at(k, j);
            }
        }
    return m;
}

Matrix Matrix::transpose() const {
    Matrix m(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
}

Matrix Matrix::hcat(const Matrix& a, const Matrix& b) {
    require(a.rows_ == b.rows_ && a.field_ == b.field_, "matrix shape mismatch in hcat");
    Matrix m(a.field_, a.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t j = 0; j < a.cols_; ++j) m.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols_; ++j) m.at(i, a.cols_ + j) = b.at(i, j);
    }
    return m;
}

Matrix Matrix::vcat(const Matrix& a, const Matrix& b) {
    require(a.cols_ == b.cols_ && a.field_ == b.field_, "matrix shape mismatch in vcat");
    Matrix m(a.field_, a.rows_ + b.rows_, a.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j) m.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j) m.at(a.rows_ + i, j) = b.at(i, j);
    return m;
}

Matrix Matrix::submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    require(r0 + nr <= rows_ && c0 + nc <= cols_, "submatrix out of range");
    Matrix m(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) m.at(i, j) = at(r0 + i, c0 + j);
    return m;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& cs) const {
    Matrix m(field_, rows_, cs.size());
    for (std::size_t j = 0; j < cs.size(); ++j) {
        require(cs[j] < cols_, "column index out of range");
        for (std::size_t i = 0; i < rows_; ++i) m.at(i, j) = at(i, cs[j]);
    }
    return m;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& rs) const {
    Matrix m(field_, rs.size(), cols_);
    for (std::size_t i = 0; i < rs.size(); ++i) {
        require(rs[i] < rows_, "row index out of range");
        for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(rs[i], j);
    }
    return m;
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).to_string();
    }
    os << "]";
    return os.str();
}

RrefResult rref(const Matrix& a) {
    RrefResult res{a, {}, 0};
    Matrix& m = res.r;
    std::size_t prow = 0;
    for (std::size_t col = 0; col < m.cols() && prow < m.rows(); ++col) {
        std::size_t sel = m.rows();
        for (std::size_t r = prow; r < m.rows(); ++r)
            if (!m.at(r, col).is_zero()) { sel = r; break; }
        if (sel == m.rows()) continue;
        if (sel != prow)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(prow, j));
        const Scalar inv = m.at(prow, col).inverse();
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(prow, j) = m.at(prow, j) * inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == prow || m.at(r, col).is_zero()) continue;
            const Scalar f = m.at(r, col);
            for (std::size_t j = 0; j < m.cols(); ++j)
                m.at(r, j) = m.at(r, j) - f * m.at(prow, j);
        }
        res.pivots.push_back(col);
        ++prow;
    }
    res.rank = res.pivots.size();
    return res;
}

std::size_t rank(const Matrix& a) { return rref(a).rank; }

Matrix kernel(const Matrix& a) {
    const RrefResult rr = rref(a);
    std::vector<std::size_t> free_cols;
    {
        std::size_t pi = 0;
        for (std::size_t c = 0; c < a.cols(); ++c) {
            if (pi < rr.pivots.size() && rr.pivots[pi] == c) { ++pi; continue; }
            free_cols.push_back(c);
        }
    }
    Matrix k(a.field(), a.cols(), free_cols.size());
    for (std::size_t j = 0; j < free_cols.size(); ++j) {
        const std::size_t fc = free_cols[j];
        k.at(fc, j) = Scalar::one(a.field());
        for (std::size_t pi = 0; pi < rr.pivots.size(); ++pi)
            k.at(rr.pivots[pi], j) = -rr.r.at(pi, fc);
    }
    return k;
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
    require(a.rows() == b.rows(), "shape mismatch in solve");
    const RrefResult rr = rref(Matrix::hcat(a, b));
    // Inconsistent iff some pivot lands in the b-block.
    for (std::size_t p : rr.pivots)
        if (p >= a.cols()) return std::nullopt;
    Matrix x(a.field(), a.cols(), b.cols());
    for (std::size_t pi = 0; pi < rr.pivots.size(); ++pi)
        for (std::size_t j = 0; j < b.cols(); ++j)
            x.at(rr.pivots[pi], j) = rr.r.at(pi, a.cols() + j);
    return x;
}

std::optional<Matrix> inverse(const Matrix& a) {
    require(a.rows() == a.cols(), "inverse of non-square matrix");
    if (rank(a) != a.rows()) return std::nullopt;
    auto x = solve(a, Matrix::identity(a.field(), a.rows()));
    check_internal(x.has_value(), "full-rank square system must be solvable");
    return x;
}

ColumnSpace::ColumnSpace(const Field& f, std::size_t n) : field_(f), n_(n) {}

ColumnSpace::ColumnSpace(const Matrix& span) : field_(span.field()), n_(span.rows()) {
    for (std::size_t j = 0; j < span.cols(); ++j) {
        std::vector<Scalar> v;
        v.reserve(n_);
        for (std::size_t i = 0; i < n_; ++i) v.push_back(span.at(i, j));
        add(v);
    }
}

std::vector<Scalar> ColumnSpace::reduce(const std::vector<Scalar>& v) const {
    require(v.size() == n_, "vector length mismatch in ColumnSpace");
    std::vector<Scalar> w = v;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        const Scalar c = w[lead_[k]];
        if (c.is_zero()) continue;
        for (std::size_t i = 0; i < n_; ++i) w[i] = w[i] - c * basis_[k][i];
    }
    return w;
}

bool ColumnSpace::contains(const std::vector<Scalar>& v) const {
    const auto w = reduce(v);
    return std::all_of(w.begin(), w.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool ColumnSpace::add(const std::vector<Scalar>& v) {
    std::vector<Scalar> w = reduce(v);
    std::size_t lead = n_;
    for (std::size_t i = 0; i < n_; ++i)
        if (!w[i].is_zero()) { lead = i; break; }
    if (lead == n_) return false;
    const Scalar inv = w[lead].inverse();
    for (std::size_t i = 0; i < n_; ++i) w[i] = w[i] * inv;
    // Keep earlier rows reduced against the new one for stable membership tests.
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        const Scalar c = basis_[k][lead];
        if (c.is_zero()) continue;
        for (std::size_t i = 0; i < n_; ++i) basis_[k][i] = basis_[k][i] - c * w[i];
    }
    basis_.push_back(std::move(w));
    lead_.push_back(lead);
    return true;
}

} // namespace arknit
