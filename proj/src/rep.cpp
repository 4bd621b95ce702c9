#include "arknit/rep.hpp"

#include "arknit/error.hpp"

#include <algorithm>
#include <sstream>

namespace arknit {

namespace {

Matrix column_as_matrix(const Matrix& m, std::size_t j) {
    return m.select_columns({j});
}

Matrix block_diag2(const Matrix& a, const Matrix& b) {
    Matrix m(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return m;
}

} // namespace

// ---------------------------------------------------------------------------
// Representation

Representation Representation::zero(const BasicAlgebra* a) {
    Representation m;
    m.alg = a;
    m.dims.assign(static_cast<std::size_t>(a->quiver().nv()), 0);
    for (const Arrow& ar : a->quiver().arrows)
        m.arr.emplace_back(a->field(), m.dims[static_cast<std::size_t>(ar.tgt)],
                           m.dims[static_cast<std::size_t>(ar.src)]);
    return m;
}

Representation Representation::simple(const BasicAlgebra* a, int v) {
    Representation m = zero(a);
    m.dims[static_cast<std::size_t>(v)] = 1;
    for (std::size_t i = 0; i < m.arr.size(); ++i) {
        const Arrow& ar = a->quiver().arrows[i];
        m.arr[i] = Matrix(a->field(), m.dims[static_cast<std::size_t>(ar.tgt)],
                          m.dims[static_cast<std::size_t>(ar.src)]);
    }
    return m;
}

std::size_t Representation::total_dim() const {
    std::size_t t = 0;
    for (std::size_t d : dims) t += d;
    return t;
}

Matrix Representation::act_path(const PathWord& p) const {
    Matrix m = Matrix::identity(alg->field(), dim_at(p.src));
    for (int a : p.arrows) m = arr[static_cast<std::size_t>(a)] * m;
    return m;
}

Matrix Representation::act(const AlgElem& x, int u, int v) const {
    require(x.alg == alg, "acting by an element of a different algebra");
    Matrix m(alg->field(), dim_at(v), dim_at(u));
    for (std::size_t b = 0; b < x.c.size(); ++b) {
        if (x.c[b].is_zero()) continue;
        const PathWord& p = alg->basis_path(static_cast<int>(b));
        require(p.src == u && p.tgt == v, "element acts outside the stated piece");
        m = m + act_path(p).scaled(x.c[b]);
    }
    return m;
}

void Representation::validate() const {
    require(alg != nullptr, "representation needs an algebra");
    const Quiver& q = alg->quiver();
    require(dims.size() == static_cast<std::size_t>(q.nv()) &&
                arr.size() == static_cast<std::size_t>(q.na()),
            "representation has the wrong number of spaces or matrices");
    for (std::size_t a = 0; a < arr.size(); ++a) {
        const Arrow& ar = q.arrows[a];
        require(arr[a].rows() == dim_at(ar.tgt) && arr[a].cols() == dim_at(ar.src),
                "arrow matrix has the wrong shape");
    }
    // One-step closure: extending any basis path by an arrow must act the way
    // its class in the algebra does; inductively this checks all relations.
    for (int b = 0; b < static_cast<int>(alg->dim()); ++b) {
        const PathWord& p = alg->basis_path(b);
        for (std::size_t a = 0; a < arr.size(); ++a) {
            const Arrow& ar = q.arrows[a];
            if (ar.src != p.tgt) continue;
            std::vector<int> word = p.arrows;
            word.push_back(static_cast<int>(a));
            const AlgElem cls = alg->path_class(PathWord::from_arrows(q, word));
            const Matrix lhs = arr[a] * act_path(p);
            require(lhs == act(cls, p.src, ar.tgt),
                    "module structure does not satisfy the algebra relations");
        }
    }
}

bool Representation::operator==(const Representation& o) const {
    return alg == o.alg && dims == o.dims && arr == o.arr;
}

std::string Representation::to_string() const {
    std::ostringstream out;
    out << "rep dims (";
    for (std::size_t v = 0; v < dims.size(); ++v) out << (v ? " " : "") << dims[v];
    out << ")";
    return out.str();
}

// ---------------------------------------------------------------------------
// Standard modules

Representation proj_rep(const BasicAlgebra* alg, const std::vector<int>& cells) {
    const Quiver& q = alg->quiver();
    Representation m;
    m.alg = alg;
    m.dims.assign(static_cast<std::size_t>(q.nv()), 0);
    for (int v = 0; v < q.nv(); ++v)
        for (int cell : cells) m.dims[static_cast<std::size_t>(v)] += alg->piece(cell, v).size();
    for (int a = 0; a < q.na(); ++a) {
        const Arrow& ar = q.arrows[static_cast<std::size_t>(a)];
        Matrix block(alg->field(), 0, 0);
        for (int cell : cells)
            block = block_diag2(block, alg->rmul_matrix(alg->arrow_elem(a), ar.src, ar.tgt, cell));
        m.arr.push_back(std::move(block));
    }
    return m;
}

std::size_t proj_block_offset(const BasicAlgebra* alg, const std::vector<int>& cells,
                              std::size_t k, int v) {
    std::size_t off = 0;
    for (std::size_t j = 0; j < k; ++j) off += alg->piece(cells[j], v).size();
    return off;
}

std::size_t proj_generator_index(const BasicAlgebra* alg, const std::vector<int>& cells,
                                 std::size_t k) {
    const int v = cells[k];
    const std::vector<int>& pc = alg->piece(v, v);
    const int tr = alg->trivial_index(v);
    const auto it = std::find(pc.begin(), pc.end(), tr);
    check_internal(it != pc.end(), "trivial path missing from its own piece");
    return proj_block_offset(alg, cells, k, v) +
           static_cast<std::size_t>(it - pc.begin());
}

Representation inj_rep(const BasicAlgebra* alg, const std::vector<int>& cells) {
    const Quiver& q = alg->quiver();
    Representation m;
    m.alg = alg;
    m.dims.assign(static_cast<std::size_t>(q.nv()), 0);
    for (int v = 0; v < q.nv(); ++v)
        for (int cell : cells) m.dims[static_cast<std::size_t>(v)] += alg->piece(v, cell).size();
    for (int a = 0; a < q.na(); ++a) {
        const Arrow& ar = q.arrows[static_cast<std::size_t>(a)];
        Matrix block(alg->field(), 0, 0);
        for (int cell : cells)
            block = block_diag2(
                block,
                alg->lmul_matrix(alg->arrow_elem(a), ar.src, ar.tgt, cell).transpose());
        m.arr.push_back(std::move(block));
    }
    return m;
}

Representation rep_sum(const Representation& a, const Representation& b) {
    require(a.alg == b.alg, "direct sum of modules over different algebras");
    Representation m;
    m.alg = a.alg;
    for (std::size_t v = 0; v < a.dims.size(); ++v) m.dims.push_back(a.dims[v] + b.dims[v]);
    for (std::size_t j = 0; j < a.arr.size(); ++j)
        m.arr.push_back(block_diag2(a.arr[j], b.arr[j]));
    return m;
}

// ---------------------------------------------------------------------------
// RepMorphism

RepMorphism RepMorphism::zero(Representation src, Representation tgt) {
    require(src.alg == tgt.alg, "morphism between modules over different algebras");
    RepMorphism f;
    for (std::size_t v = 0; v < src.dims.size(); ++v)
        f.comp.emplace_back(src.alg->field(), tgt.dims[v], src.dims[v]);
    f.src = std::move(src);
    f.tgt = std::move(tgt);
    return f;
}

RepMorphism RepMorphism::identity(const Representation& m) {
    RepMorphism f = zero(m, m);
    for (std::size_t v = 0; v < m.dims.size(); ++v)
        f.comp[v] = Matrix::identity(m.alg->field(), m.dims[v]);
    return f;
}

void RepMorphism::validate() const {
    require(src.alg == tgt.alg && comp.size() == src.dims.size(),
            "morphism has the wrong number of components");
    for (std::size_t v = 0; v < comp.size(); ++v)
        require(comp[v].rows() == tgt.dims[v] && comp[v].cols() == src.dims[v],
                "morphism component has the wrong shape");
    const Quiver& q = src.alg->quiver();
    for (std::size_t a = 0; a < src.arr.size(); ++a) {
        const Arrow& ar = q.arrows[a];
        const auto u = static_cast<std::size_t>(ar.src);
        const auto v = static_cast<std::size_t>(ar.tgt);
        require(tgt.arr[a] * comp[u] == comp[v] * src.arr[a],
                "morphism does not commute with the action");
    }
}

bool RepMorphism::is_zero() const {
    for (const Matrix& m : comp)
        if (!m.is_zero()) return false;
    return true;
}

RepMorphism RepMorphism::operator+(const RepMorphism& o) const {
    require(src == o.src && tgt == o.tgt, "adding incompatible morphisms");
    RepMorphism f = *this;
    for (std::size_t v = 0; v < comp.size(); ++v) f.comp[v] = comp[v] + o.comp[v];
    return f;
}

RepMorphism RepMorphism::operator-(const RepMorphism& o) const { return *this + (-o); }

RepMorphism RepMorphism::operator-() const {
    RepMorphism f = *this;
    for (auto& m : f.comp) m = -m;
    return f;
}

RepMorphism RepMorphism::scaled(const Scalar& s) const {
    RepMorphism f = *this;
    for (auto& m : f.comp) m = m.scaled(s);
    return f;
}

bool RepMorphism::operator==(const RepMorphism& o) const {
    return src == o.src && tgt == o.tgt && comp == o.comp;
}

std::string RepMorphism::to_string() const {
    std::ostringstream out;
    out << "morphism " << src.to_string() << " -> " << tgt.to_string();
    return out.str();
}

RepMorphism compose(const RepMorphism& g, const RepMorphism& f) {
    require(f.tgt == g.src, "composing morphisms whose middles differ");
    RepMorphism r = RepMorphism::zero(f.src, g.tgt);
    for (std::size_t v = 0; v < r.comp.size(); ++v) r.comp[v] = g.comp[v] * f.comp[v];
    return r;
}

// ---------------------------------------------------------------------------
// Kernels, images, quotients

KernelRep kernel_rep(const RepMorphism& f) {
    const BasicAlgebra* alg = f.src.alg;
    KernelRep r;
    r.ker.alg = alg;
    std::vector<Matrix> basis;
    for (std::size_t v = 0; v < f.comp.size(); ++v) {
        basis.push_back(kernel(f.comp[v]));
        r.ker.dims.push_back(basis.back().cols());
    }
    const Quiver& q = alg->quiver();
    for (std::size_t a = 0; a < f.src.arr.size(); ++a) {
        const auto u = static_cast<std::size_t>(q.arrows[a].src);
        const auto v = static_cast<std::size_t>(q.arrows[a].tgt);
        const auto sol = solve(basis[v], f.src.arr[a] * basis[u]);
        check_internal(sol.has_value(), "kernel is not closed under the action");
        r.ker.arr.push_back(*sol);
    }
    r.incl = RepMorphism::zero(r.ker, f.src);
    for (std::size_t v = 0; v < basis.size(); ++v) r.incl.comp[v] = basis[v];
    r.incl.validate();
    return r;
}

ImageRep image_rep(const RepMorphism& f) {
    const BasicAlgebra* alg = f.src.alg;
    ImageRep r;
    r.img.alg = alg;
    std::vector<Matrix> basis;
    for (std::size_t v = 0; v < f.comp.size(); ++v) {
        basis.push_back(f.comp[v].select_columns(rref(f.comp[v]).pivots));
        r.img.dims.push_back(basis.back().cols());
    }
    const Quiver& q = alg->quiver();
    for (std::size_t a = 0; a < f.tgt.arr.size(); ++a) {
        const auto u = static_cast<std::size_t>(q.arrows[a].src);
        const auto v = static_cast<std::size_t>(q.arrows[a].tgt);
        const auto sol = solve(basis[v], f.tgt.arr[a] * basis[u]);
        check_internal(sol.has_value(), "image is not closed under the action");
        r.img.arr.push_back(*sol);
    }
    r.incl = RepMorphism::zero(r.img, f.tgt);
    for (std::size_t v = 0; v < basis.size(); ++v) r.incl.comp[v] = basis[v];
    r.incl.validate();
    return r;
}

QuotientRep quotient_rep(const Representation& m, const RepMorphism& sub_incl) {
    require(sub_incl.tgt == m, "quotient by a subobject of a different module");
    const BasicAlgebra* alg = m.alg;
    const Field& f = alg->field();
    QuotientRep r;
    r.quo.alg = alg;
    std::vector<Matrix> pi, sect;
    for (std::size_t v = 0; v < m.dims.size(); ++v) {
        const Matrix& s = sub_incl.comp[v];
        require(rank(s) == s.cols(), "quotient by a non-injective inclusion");
        ColumnSpace cs(s);
        std::vector<std::size_t> picked;
        for (std::size_t j = 0; j < m.dims[v]; ++j) {
            std::vector<Scalar> e(m.dims[v], Scalar::zero(f));
            e[j] = Scalar::one(f);
            if (cs.add(e)) picked.push_back(j);
        }
        const Matrix ev = Matrix::identity(f, m.dims[v]).select_columns(picked);
        const Matrix t = Matrix::hcat(s, ev);
        const auto tinv = inverse(t);
        check_internal(tinv.has_value(), "basis completion failed in quotient");
        pi.push_back(tinv->submatrix(s.cols(), 0, picked.size(), m.dims[v]));
        sect.push_back(ev);
        r.quo.dims.push_back(picked.size());
    }
    const Quiver& q = alg->quiver();
    for (std::size_t a = 0; a < m.arr.size(); ++a) {
        const auto u = static_cast<std::size_t>(q.arrows[a].src);
        const auto v = static_cast<std::size_t>(q.arrows[a].tgt);
        r.quo.arr.push_back(pi[v] * m.arr[a] * sect[u]);
    }
    r.proj = RepMorphism::zero(m, r.quo);
    for (std::size_t v = 0; v < pi.size(); ++v) r.proj.comp[v] = pi[v];
    r.proj.validate();
    return r;
}

SubRep subrep_span(const Representation& m, const std::vector<Matrix>& span_cols) {
    require(span_cols.size() == m.dims.size(), "span needs one block per vertex");
    SubRep r;
    r.sub.alg = m.alg;
    std::vector<Matrix> basis;
    for (std::size_t v = 0; v < m.dims.size(); ++v) {
        require(span_cols[v].rows() == m.dims[v], "span block has the wrong height");
        basis.push_back(span_cols[v].select_columns(rref(span_cols[v]).pivots));
        r.sub.dims.push_back(basis.back().cols());
    }
    const Quiver& q = m.alg->quiver();
    for (std::size_t a = 0; a < m.arr.size(); ++a) {
        const auto u = static_cast<std::size_t>(q.arrows[a].src);
        const auto v = static_cast<std::size_t>(q.arrows[a].tgt);
        const auto sol = solve(basis[v], m.arr[a] * basis[u]);
        check_internal(sol.has_value(), "span is not closed under the action");
        r.sub.arr.push_back(*sol);
    }
    r.incl = RepMorphism::zero(r.sub, m);
    for (std::size_t v = 0; v < basis.size(); ++v) r.incl.comp[v] = basis[v];
    r.incl.validate();
    return r;
}

Matrix radical_columns(const Representation& m, int v) {
    Matrix cols(m.alg->field(), m.dim_at(v), 0);
    const Quiver& q = m.alg->quiver();
    for (std::size_t a = 0; a < m.arr.size(); ++a)
        if (q.arrows[a].tgt == v) cols = Matrix::hcat(cols, m.arr[a]);
    return cols;
}

// ---------------------------------------------------------------------------
// Hom spaces and isomorphism search

std::vector<RepMorphism> hom_rep(const Representation& m, const Representation& n) {
    require(m.alg == n.alg, "hom between modules over different algebras");
    const BasicAlgebra* alg = m.alg;
    const Field& f = alg->field();
    const Quiver& q = alg->quiver();

    std::vector<std::size_t> var_off(m.dims.size() + 1, 0);
    for (std::size_t v = 0; v < m.dims.size(); ++v)
        var_off[v + 1] = var_off[v] + n.dims[v] * m.dims[v];
    std::vector<std::size_t> eq_off(m.arr.size() + 1, 0);
    for (std::size_t a = 0; a < m.arr.size(); ++a) {
        const auto u = static_cast<std::size_t>(q.arrows[a].src);
        const auto v = static_cast<std::size_t>(q.arrows[a].tgt);
        eq_off[a + 1] = eq_off[a] + n.dims[v] * m.dims[u];
    }

    Matrix a_mat(f, eq_off.back(), var_off.back());
    for (std::size_t v = 0; v < m.dims.size(); ++v) {
        for (std::size_t r = 0; r < n.dims[v]; ++r)
            for (std::size_t c = 0; c < m.dims[v]; ++c) {
                const std::size_t col = var_off[v] + r * m.dims[v] + c;
                std::vector<Matrix> probe;
                for (std::size_t w = 0; w < m.dims.size(); ++w)
                    probe.emplace_back(f, n.dims[w], m.dims[w]);
                probe[v].at(r, c) = Scalar::one(f);
                for (std::size_t a = 0; a < m.arr.size(); ++a) {
                    const auto au = static_cast<std::size_t>(q.arrows[a].src);
                    const auto av = static_cast<std::size_t>(q.arrows[a].tgt);
                    const Matrix d = n.arr[a] * probe[au] - probe[av] * m.arr[a];
                    for (std::size_t i = 0; i < d.rows(); ++i)
                        for (std::size_t j = 0; j < d.cols(); ++j)
                            a_mat.at(eq_off[a] + i * d.cols() + j, col) = d.at(i, j);
                }
            }
    }

    const Matrix k = kernel(a_mat);
    std::vector<RepMorphism> basis;
    for (std::size_t j = 0; j < k.cols(); ++j) {
        RepMorphism g = RepMorphism::zero(m, n);
        for (std::size_t v = 0; v < m.dims.size(); ++v)
            for (std::size_t r = 0; r < n.dims[v]; ++r)
                for (std::size_t c = 0; c < m.dims[v]; ++c)
                    g.comp[v].at(r, c) = k.at(var_off[v] + r * m.dims[v] + c, j);
        g.validate();
        basis.push_back(std::move(g));
    }
    return basis;
}

std::optional<RepMorphism> find_iso_rep(const Representation& m, const Representation& n) {
    if (m.alg != n.alg || m.dims != n.dims) return std::nullopt;
    if (m.total_dim() == 0) return RepMorphism::zero(m, n);
    const std::vector<RepMorphism> basis = hom_rep(m, n);
    if (basis.empty()) return std::nullopt;
    const Field& f = m.alg->field();

    auto invertible = [&](const RepMorphism& g) {
        for (const Matrix& c : g.comp)
            if (!inverse(c).has_value()) return false;
        return true;
    };
    for (const RepMorphism& g : basis)
        if (invertible(g)) return g;

    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    auto next = [&]() { return state = state * 6364136223846793005ull + 1442695040888963407ull; };
    for (int attempt = 0; attempt < 60; ++attempt) {
        RepMorphism g = RepMorphism::zero(m, n);
        for (const RepMorphism& b : basis) {
            long long c;
            if (f.kind == FieldKind::Prime)
                c = static_cast<long long>((next() >> 16) % f.p);
            else
                c = static_cast<long long>((next() >> 16) % 9) - 4;
            if (c != 0) g = g + b.scaled(Scalar::from_int(f, c));
        }
        if (invertible(g)) return g;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Duality

Representation dual_rep(const Representation& m) {
    Representation d;
    d.alg = &m.alg->opposite();
    d.dims = m.dims;
    for (const Matrix& a : m.arr) d.arr.push_back(a.transpose());
    return d;
}

RepMorphism dual_morphism(const RepMorphism& f) {
    RepMorphism d = RepMorphism::zero(dual_rep(f.tgt), dual_rep(f.src));
    for (std::size_t v = 0; v < f.comp.size(); ++v) d.comp[v] = f.comp[v].transpose();
    return d;
}

// ---------------------------------------------------------------------------
// Bridges between AlgMatrix morphisms and representation morphisms

RepMorphism from_generators(const BasicAlgebra* alg, const std::vector<int>& cells,
                            const Representation& tgt, const std::vector<Matrix>& gen_cols) {
    require(tgt.alg == alg, "generator images live in a module over another algebra");
    require(gen_cols.size() == cells.size(), "one generator image per cell required");
    const Representation src = proj_rep(alg, cells);
    RepMorphism f = RepMorphism::zero(src, tgt);
    const int nv = alg->quiver().nv();
    for (std::size_t k = 0; k < cells.size(); ++k) {
        const int vk = cells[k];
        require(gen_cols[k].rows() == tgt.dim_at(vk) && gen_cols[k].cols() == 1,
                "generator image has the wrong shape");
        for (int w = 0; w < nv; ++w) {
            const std::vector<int>& pc = alg->piece(vk, w);
            const std::size_t off = proj_block_offset(alg, cells, k, w);
            for (std::size_t i = 0; i < pc.size(); ++i) {
                const Matrix img = tgt.act(alg->basis_elem(pc[i]), vk, w) * gen_cols[k];
                for (std::size_t rr = 0; rr < img.rows(); ++rr)
                    f.comp[static_cast<std::size_t>(w)].at(rr, off + i) = img.at(rr, 0);
            }
        }
    }
    f.validate();
    return f;
}

RepMorphism rep_morphism_of(const AlgMatrix& f) {
    const BasicAlgebra* alg = f.alg;
    const Representation tgt = proj_rep(alg, f.row_cells);
    std::vector<Matrix> gen_cols;
    for (std::size_t c = 0; c < f.cols(); ++c) {
        const int vc = f.col_cells[c];
        Matrix col(alg->field(), tgt.dim_at(vc), 1);
        for (std::size_t r = 0; r < f.rows(); ++r) {
            const std::vector<int>& pc = alg->piece(f.row_cells[r], vc);
            const std::size_t off = proj_block_offset(alg, f.row_cells, r, vc);
            for (std::size_t i = 0; i < pc.size(); ++i)
                col.at(off + i, 0) = f.at(r, c).c[static_cast<std::size_t>(pc[i])];
        }
        gen_cols.push_back(std::move(col));
    }
    return from_generators(alg, f.col_cells, tgt, gen_cols);
}

AlgMatrix alg_matrix_of(const RepMorphism& f, const std::vector<int>& row_cells,
                        const std::vector<int>& col_cells) {
    const BasicAlgebra* alg = f.src.alg;
    require(f.src == proj_rep(alg, col_cells) && f.tgt == proj_rep(alg, row_cells),
            "morphism endpoints do not match the stated projective sums");
    AlgMatrix m(alg, row_cells, col_cells);
    for (std::size_t c = 0; c < col_cells.size(); ++c) {
        const int vc = col_cells[c];
        const std::size_t g = proj_generator_index(alg, col_cells, c);
        const Matrix col = column_as_matrix(f.comp[static_cast<std::size_t>(vc)], g);
        for (std::size_t r = 0; r < row_cells.size(); ++r) {
            const std::vector<int>& pc = alg->piece(row_cells[r], vc);
            const std::size_t off = proj_block_offset(alg, row_cells, r, vc);
            AlgElem x = alg->zero_elem();
            for (std::size_t i = 0; i < pc.size(); ++i)
                if (!col.at(off + i, 0).is_zero())
                    x = x + alg->basis_elem(pc[i]).scaled(col.at(off + i, 0));
            m.at(r, c) = std::move(x);
        }
    }
    m.validate();
    return m;
}

// ---------------------------------------------------------------------------
// Projective covers

CoverRep projective_cover(const Representation& m) {
    const BasicAlgebra* alg = m.alg;
    const Field& f = alg->field();
    CoverRep r;
    std::vector<Matrix> gen_cols;
    for (int v = 0; v < alg->quiver().nv(); ++v) {
        ColumnSpace cs(radical_columns(m, v));
        for (std::size_t j = 0; j < m.dim_at(v); ++j) {
            std::vector<Scalar> e(m.dim_at(v), Scalar::zero(f));
            e[j] = Scalar::one(f);
            if (cs.add(e)) {
                r.cells.push_back(v);
                Matrix col(f, m.dim_at(v), 1);
                col.at(j, 0) = Scalar::one(f);
                gen_cols.push_back(std::move(col));
            }
        }
    }
    r.eps = from_generators(alg, r.cells, m, gen_cols);
    for (std::size_t v = 0; v < m.dims.size(); ++v)
        check_internal(rank(r.eps.comp[v]) == m.dims[v], "projective cover is not onto");
    return r;
}

// ---------------------------------------------------------------------------
// Nakayama transport

RepMorphism nakayama_morphism(const AlgMatrix& f) {
    const BasicAlgebra* alg = f.alg;
    const Representation src = inj_rep(alg, f.col_cells);
    const Representation tgt = inj_rep(alg, f.row_cells);
    RepMorphism g = RepMorphism::zero(src, tgt);
    const int nv = alg->quiver().nv();
    for (int v = 0; v < nv; ++v) {
        std::size_t roff = 0;
        for (std::size_t r = 0; r < f.rows(); ++r) {
            std::size_t coff = 0;
            for (std::size_t c = 0; c < f.cols(); ++c) {
                const Matrix block =
                    alg->rmul_matrix(f.at(r, c), f.row_cells[r], f.col_cells[c], v).transpose();
                for (std::size_t i = 0; i < block.rows(); ++i)
                    for (std::size_t j = 0; j < block.cols(); ++j)
                        g.comp[static_cast<std::size_t>(v)].at(roff + i, coff + j) =
                            block.at(i, j);
                coff += block.cols();
            }
            roff += alg->piece(v, f.row_cells[r]).size();
        }
    }
    g.validate();
    return g;
}

// ---------------------------------------------------------------------------
// Summand tests

bool has_projective_summand(const Representation& m) {
    const BasicAlgebra* alg = m.alg;
    for (int i = 0; i < alg->quiver().nv(); ++i) {
        if (m.dim_at(i) == 0) continue;
        const Representation pi = proj_rep(alg, {i});
        const std::vector<RepMorphism> back = hom_rep(m, pi);
        if (back.empty()) continue;
        const std::size_t gen = proj_generator_index(alg, {i}, 0);
        for (std::size_t j = 0; j < m.dim_at(i); ++j) {
            Matrix col(alg->field(), m.dim_at(i), 1);
            col.at(j, 0) = Scalar::one(alg->field());
            const RepMorphism phi = from_generators(alg, {i}, m, {col});
            for (const RepMorphism& psi : back) {
                const RepMorphism chi = compose(psi, phi);
                if (!chi.comp[static_cast<std::size_t>(i)].at(gen, gen).is_zero()) return true;
            }
        }
    }
    return false;
}

bool has_injective_summand(const Representation& m) {
    return has_projective_summand(dual_rep(m));
}

} // namespace arknit
