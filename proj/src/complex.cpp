#include "arknit/complex.hpp"

#include "arknit/error.hpp"

#include <algorithm>
#include <sstream>

namespace arknit {

namespace {

const std::vector<int> kNoCells;

std::vector<Scalar> column_of(const Matrix& m, std::size_t j) {
    std::vector<Scalar> v;
    v.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) v.push_back(m.at(i, j));
    return v;
}

} // namespace

// ---------------------------------------------------------------------------
// ProjComplex

ProjComplex::ProjComplex(const BasicAlgebra* alg, int lo,
                         std::vector<std::vector<int>> cells,
                         std::vector<AlgMatrix> diffs)
    : alg_(alg), lo_(lo), cells_(std::move(cells)), diff_(std::move(diffs)) {
    require(alg_ != nullptr, "complex needs an algebra");
    require(cells_.empty() ? diff_.empty() : diff_.size() + 1 == cells_.size(),
            "complex needs one differential per consecutive pair of degrees");
    normalize();
    validate();
}

ProjComplex ProjComplex::empty(const BasicAlgebra* alg) {
    return ProjComplex(alg, 0, {}, {});
}

ProjComplex ProjComplex::stalk(const BasicAlgebra* alg, int vertex, int degree) {
    return ProjComplex(alg, degree, {{vertex}}, {});
}

void ProjComplex::normalize() {
    while (!cells_.empty() && cells_.front().empty()) {
        cells_.erase(cells_.begin());
        if (!diff_.empty()) diff_.erase(diff_.begin());
        ++lo_;
    }
    while (!cells_.empty() && cells_.back().empty()) {
        cells_.pop_back();
        if (!diff_.empty()) diff_.pop_back();
    }
    if (cells_.empty()) {
        lo_ = 0;
        diff_.clear();
    }
}

void ProjComplex::validate() const {
    const int nv = alg_->quiver().nv();
    for (const auto& degree : cells_)
        for (int v : degree)
            require(0 <= v && v < nv, "complex cell vertex out of range");
    for (std::size_t i = 0; i < diff_.size(); ++i) {
        const AlgMatrix& d = diff_[i];
        require(d.alg == alg_, "complex differential over a different algebra");
        require(d.row_cells == cells_[i + 1] && d.col_cells == cells_[i],
                "complex differential has the wrong shape");
        d.validate();
        if (i + 1 < diff_.size())
            require((diff_[i + 1] * diff_[i]).is_zero(),
                    "complex differential does not square to zero");
    }
}

int ProjComplex::lo() const {
    require(!is_empty(), "empty complex has no degree range");
    return lo_;
}

int ProjComplex::hi() const {
    require(!is_empty(), "empty complex has no degree range");
    return lo_ + static_cast<int>(cells_.size()) - 1;
}

const std::vector<int>& ProjComplex::cells_at(int n) const {
    if (is_empty() || n < lo_ || n > hi()) return kNoCells;
    return cells_[static_cast<std::size_t>(n - lo_)];
}

AlgMatrix ProjComplex::diff_at(int n) const {
    if (!is_empty() && n >= lo_ && n < hi())
        return diff_[static_cast<std::size_t>(n - lo_)];
    return AlgMatrix(alg_, cells_at(n + 1), cells_at(n));
}

std::size_t ProjComplex::total_cells() const {
    std::size_t t = 0;
    for (const auto& degree : cells_) t += degree.size();
    return t;
}

ProjComplex ProjComplex::shifted(int k) const {
    if (is_empty()) return *this;
    std::vector<AlgMatrix> d = diff_;
    if (k % 2 != 0) {
        const Scalar m1 = Scalar::from_int(alg_->field(), -1);
        for (auto& m : d) m = m.scaled(m1);
    }
    return ProjComplex(alg_, lo_ - k, cells_, std::move(d));
}

bool ProjComplex::is_minimal() const {
    for (const auto& d : diff_)
        if (!d.is_radical()) return false;
    return true;
}

std::string ProjComplex::signature() const {
    if (is_empty()) return "0";
    require(is_minimal(), "signature of a non-minimal complex");
    const Quiver& q = alg_->quiver();
    std::ostringstream out;
    const bool wrap = hi() > lo();
    if (wrap) out << "(";
    for (int n = lo(); n <= hi(); ++n) {
        if (n > lo()) out << "-";
        const std::vector<int>& cs = cells_at(n);
        if (cs.empty()) {
            out << "0";
            continue;
        }
        std::vector<std::string> names;
        names.reserve(cs.size());
        for (int v : cs) names.push_back(q.vertices[static_cast<std::size_t>(v)]);
        std::sort(names.begin(), names.end());
        for (std::size_t i = 0; i < names.size(); ++i)
            out << (i ? "+" : "") << "P" << names[i];
    }
    if (wrap) out << ")";
    out << "[" << -hi() << "]";
    return out.str();
}

std::string ProjComplex::to_string() const {
    if (is_empty()) return "0";
    const Quiver& q = alg_->quiver();
    std::ostringstream out;
    for (int n = lo(); n <= hi(); ++n) {
        if (n > lo()) out << " -> ";
        out << n << ":";
        for (int v : cells_at(n)) out << " P" << q.vertices[static_cast<std::size_t>(v)];
        if (cells_at(n).empty()) out << " 0";
    }
    return out.str();
}

bool ProjComplex::operator==(const ProjComplex& o) const {
    return alg_ == o.alg_ && lo_ == o.lo_ && cells_ == o.cells_ && diff_ == o.diff_;
}

ProjComplex direct_sum(const ProjComplex& a, const ProjComplex& b) {
    require(a.alg() == b.alg(), "direct sum over different algebras");
    if (a.is_empty()) return b;
    if (b.is_empty()) return a;
    const int lo = std::min(a.lo(), b.lo());
    const int hi = std::max(a.hi(), b.hi());
    std::vector<std::vector<int>> cells;
    std::vector<AlgMatrix> diffs;
    for (int n = lo; n <= hi; ++n) {
        std::vector<int> cs = a.cells_at(n);
        const std::vector<int>& bc = b.cells_at(n);
        cs.insert(cs.end(), bc.begin(), bc.end());
        cells.push_back(std::move(cs));
        if (n < hi) diffs.push_back(AlgMatrix::block_diag(a.diff_at(n), b.diff_at(n)));
    }
    return ProjComplex(a.alg(), lo, std::move(cells), std::move(diffs));
}

// ---------------------------------------------------------------------------
// ChainMap

ChainMap ChainMap::zero(ProjComplex src, ProjComplex tgt, int deg) {
    require(src.alg() == tgt.alg(), "map between complexes over different algebras");
    ChainMap f;
    f.src = std::move(src);
    f.tgt = std::move(tgt);
    f.deg = deg;
    return f;
}

ChainMap ChainMap::identity(const ProjComplex& x) {
    ChainMap f = zero(x, x, 0);
    if (!x.is_empty())
        for (int n = x.lo(); n <= x.hi(); ++n)
            if (!x.cells_at(n).empty())
                f.comp.emplace(n, AlgMatrix::identity(x.alg(), x.cells_at(n)));
    return f;
}

AlgMatrix ChainMap::at(int n) const {
    auto it = comp.find(n);
    if (it != comp.end()) return it->second;
    require(src.alg() != nullptr, "map has no algebra");
    return AlgMatrix(src.alg(), tgt.cells_at(n + deg), src.cells_at(n));
}

void ChainMap::set(int n, AlgMatrix m) {
    require(m.row_cells == tgt.cells_at(n + deg) && m.col_cells == src.cells_at(n),
            "map component has the wrong shape");
    m.validate();
    if (m.is_zero() || m.rows() == 0 || m.cols() == 0)
        comp.erase(n);
    else
        comp[n] = std::move(m);
}

bool ChainMap::is_zero() const {
    for (const auto& [n, m] : comp) {
        (void)n;
        if (!m.is_zero()) return false;
    }
    return true;
}

bool ChainMap::chain_condition_holds() const {
    require(deg == 0, "chain condition applies to degree-0 maps");
    if (src.is_empty() || tgt.is_empty()) return is_zero();
    const int lo = std::min(src.lo(), tgt.lo()) - 1;
    const int hi = std::max(src.hi(), tgt.hi());
    for (int n = lo; n <= hi; ++n)
        if (!(tgt.diff_at(n) * at(n) == at(n + 1) * src.diff_at(n))) return false;
    return true;
}

ChainMap ChainMap::shifted(int k) const {
    ChainMap f = zero(src.shifted(k), tgt.shifted(k), deg);
    for (const auto& [n, m] : comp) f.set(n - k, m);
    return f;
}

ChainMap ChainMap::operator+(const ChainMap& o) const {
    require(src == o.src && tgt == o.tgt && deg == o.deg, "adding incompatible maps");
    ChainMap f = zero(src, tgt, deg);
    for (const auto& [n, m] : comp) f.set(n, m + o.at(n));
    for (const auto& [n, m] : o.comp)
        if (!comp.count(n)) f.set(n, m);
    return f;
}

ChainMap ChainMap::operator-(const ChainMap& o) const {
    return *this + (-o);
}

ChainMap ChainMap::operator-() const {
    ChainMap f = zero(src, tgt, deg);
    for (const auto& [n, m] : comp) f.set(n, -m);
    return f;
}

ChainMap ChainMap::scaled(const Scalar& s) const {
    ChainMap f = zero(src, tgt, deg);
    for (const auto& [n, m] : comp) f.set(n, m.scaled(s));
    return f;
}

bool ChainMap::operator==(const ChainMap& o) const {
    if (!(src == o.src && tgt == o.tgt && deg == o.deg)) return false;
    for (const auto& [n, m] : comp)
        if (!(m == o.at(n))) return false;
    for (const auto& [n, m] : o.comp)
        if (!comp.count(n) && !m.is_zero()) return false;
    return true;
}

std::string ChainMap::to_string() const {
    std::ostringstream out;
    out << "map deg " << deg << " : " << src.to_string() << "  ==>  " << tgt.to_string();
    for (const auto& [n, m] : comp) out << "\n  [" << n << "] " << m.to_string();
    return out.str();
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
    require(f.tgt == g.src, "composing maps whose middles differ");
    ChainMap r = ChainMap::zero(f.src, g.tgt, f.deg + g.deg);
    if (!f.src.is_empty())
        for (int n = f.src.lo(); n <= f.src.hi(); ++n)
            r.set(n, g.at(n + f.deg) * f.at(n));
    return r;
}

ChainMap homotopy_boundary(const ChainMap& s) {
    require(s.deg == -1, "homotopy boundary applies to degree -1 maps");
    ChainMap r = ChainMap::zero(s.src, s.tgt, 0);
    if (!s.src.is_empty())
        for (int n = s.src.lo(); n <= s.src.hi(); ++n)
            r.set(n, s.tgt.diff_at(n - 1) * s.at(n) + s.at(n + 1) * s.src.diff_at(n));
    return r;
}

// ---------------------------------------------------------------------------
// Mapping cone

ConeResult mapping_cone(const ChainMap& f) {
    require(f.deg == 0, "cone of a map of nonzero degree");
    require(f.chain_condition_holds(), "cone of a non-chain map");
    const ProjComplex& x = f.src;
    const ProjComplex& y = f.tgt;
    const BasicAlgebra* alg = x.alg();

    bool any = false;
    int lo = 0, hi = -1;
    auto widen = [&](int a, int b) {
        if (!any) {
            lo = a;
            hi = b;
            any = true;
        } else {
            lo = std::min(lo, a);
            hi = std::max(hi, b);
        }
    };
    if (!x.is_empty()) widen(x.lo() - 1, x.hi() - 1);
    if (!y.is_empty()) widen(y.lo(), y.hi());

    std::vector<std::vector<int>> cells;
    std::vector<AlgMatrix> diffs;
    for (int n = lo; n <= hi; ++n) {
        std::vector<int> cs = x.cells_at(n + 1);
        const std::vector<int>& yc = y.cells_at(n);
        cs.insert(cs.end(), yc.begin(), yc.end());
        cells.push_back(std::move(cs));
        if (n < hi) {
            const AlgMatrix top =
                AlgMatrix::hcat(-x.diff_at(n + 1),
                                AlgMatrix(alg, x.cells_at(n + 2), y.cells_at(n)));
            const AlgMatrix bottom = AlgMatrix::hcat(f.at(n + 1), y.diff_at(n));
            diffs.push_back(AlgMatrix::vcat(top, bottom));
        }
    }

    ConeResult r;
    r.cone = any ? ProjComplex(alg, lo, std::move(cells), std::move(diffs))
                 : ProjComplex::empty(alg);

    r.incl = ChainMap::zero(y, r.cone, 0);
    if (!y.is_empty())
        for (int n = y.lo(); n <= y.hi(); ++n) {
            const AlgMatrix zero_block(alg, x.cells_at(n + 1), y.cells_at(n));
            r.incl.set(n, AlgMatrix::vcat(zero_block, AlgMatrix::identity(alg, y.cells_at(n))));
        }

    r.proj = ChainMap::zero(r.cone, x.shifted(1), 0);
    if (!x.is_empty())
        for (int n = x.lo() - 1; n <= x.hi() - 1; ++n) {
            const AlgMatrix zero_block(alg, x.cells_at(n + 1), y.cells_at(n));
            r.proj.set(n, AlgMatrix::hcat(AlgMatrix::identity(alg, x.cells_at(n + 1)), zero_block));
        }

    check_internal(r.incl.chain_condition_holds() && r.proj.chain_condition_holds(),
                   "cone structure maps fail the chain condition");
    return r;
}

// ---------------------------------------------------------------------------
// Minimization

namespace {

struct Pivot {
    int n = 0;
    std::size_t r = 0, c = 0;
};

std::optional<Pivot> find_pivot(const ProjComplex& x) {
    if (x.is_empty()) return std::nullopt;
    for (int n = x.lo(); n < x.hi(); ++n) {
        const AlgMatrix d = x.diff_at(n);
        const std::vector<int>& rows = x.cells_at(n + 1);
        const std::vector<int>& cols = x.cells_at(n);
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < cols.size(); ++c) {
                if (rows[r] != cols[c]) continue;
                const AlgElem& u = d.at(r, c);
                const int tr = x.alg()->trivial_index(rows[r]);
                if (!u.c[static_cast<std::size_t>(tr)].is_zero()) return Pivot{n, r, c};
            }
    }
    return std::nullopt;
}

std::vector<std::size_t> all_but(std::size_t size, std::size_t skip) {
    std::vector<std::size_t> v;
    v.reserve(size ? size - 1 : 0);
    for (std::size_t i = 0; i < size; ++i)
        if (i != skip) v.push_back(i);
    return v;
}

} // namespace

MinimizeResult minimize(const ProjComplex& x) {
    const BasicAlgebra* alg = x.alg();
    ProjComplex cur = x;
    ChainMap phi = ChainMap::identity(x);
    ChainMap psi = ChainMap::identity(x);
    ChainMap h = ChainMap::zero(x, x, -1);

    while (auto piv = find_pivot(cur)) {
        const int n = piv->n;
        const std::size_t pr = piv->r, pc = piv->c;
        const AlgMatrix d = cur.diff_at(n);
        const int v = cur.cells_at(n)[pc];

        AlgMatrix u1(alg, {v}, {v});
        u1.at(0, 0) = d.at(pr, pc);
        const auto uinv1 = alg_inverse(u1);
        check_internal(uinv1.has_value(), "minimization pivot is not invertible");
        const AlgElem uinv = uinv1->at(0, 0);

        const std::vector<std::size_t> keep_r = all_but(d.rows(), pr);
        const std::vector<std::size_t> keep_c = all_but(d.cols(), pc);

        // The complex with the contractible summand removed.
        std::vector<std::vector<int>> cells;
        std::vector<AlgMatrix> diffs;
        for (int m = cur.lo(); m <= cur.hi(); ++m) {
            std::vector<int> cs = cur.cells_at(m);
            if (m == n)
                cs.erase(cs.begin() + static_cast<std::ptrdiff_t>(pc));
            else if (m == n + 1)
                cs.erase(cs.begin() + static_cast<std::ptrdiff_t>(pr));
            cells.push_back(std::move(cs));
        }
        for (int m = cur.lo(); m < cur.hi(); ++m) {
            const AlgMatrix dm = cur.diff_at(m);
            if (m == n - 1) {
                diffs.push_back(dm.select(all_but(dm.rows(), pc),
                                          all_but(dm.cols(), dm.cols())));
            } else if (m == n) {
                AlgMatrix nd(alg, cells[static_cast<std::size_t>(m + 1 - cur.lo())],
                             cells[static_cast<std::size_t>(m - cur.lo())]);
                for (std::size_t i = 0; i < keep_r.size(); ++i)
                    for (std::size_t j = 0; j < keep_c.size(); ++j)
                        nd.at(i, j) = dm.at(keep_r[i], keep_c[j]) -
                                      dm.at(keep_r[i], pc) * uinv * dm.at(pr, keep_c[j]);
                diffs.push_back(std::move(nd));
            } else if (m == n + 1) {
                diffs.push_back(dm.select(all_but(dm.rows(), dm.rows()),
                                          all_but(dm.cols(), pr)));
            } else {
                diffs.push_back(dm);
            }
        }
        ProjComplex next(alg, cur.lo(), std::move(cells), std::move(diffs));

        // Step maps cur -> next -> cur and the step homotopy on cur.
        ChainMap phi_step = ChainMap::zero(cur, next, 0);
        ChainMap psi_step = ChainMap::zero(next, cur, 0);
        for (int m = cur.lo(); m <= cur.hi(); ++m) {
            if (m == n) {
                AlgMatrix p(alg, next.cells_at(m), cur.cells_at(m));
                AlgMatrix q(alg, cur.cells_at(m), next.cells_at(m));
                for (std::size_t j = 0; j < keep_c.size(); ++j) {
                    p.at(j, keep_c[j]) = alg->trivial_elem(cur.cells_at(m)[keep_c[j]]);
                    q.at(keep_c[j], j) = p.at(j, keep_c[j]);
                    q.at(pc, j) = -(uinv * d.at(pr, keep_c[j]));
                }
                phi_step.set(m, std::move(p));
                psi_step.set(m, std::move(q));
            } else if (m == n + 1) {
                AlgMatrix p(alg, next.cells_at(m), cur.cells_at(m));
                AlgMatrix q(alg, cur.cells_at(m), next.cells_at(m));
                for (std::size_t i = 0; i < keep_r.size(); ++i) {
                    p.at(i, keep_r[i]) = alg->trivial_elem(cur.cells_at(m)[keep_r[i]]);
                    q.at(keep_r[i], i) = p.at(i, keep_r[i]);
                    p.at(i, pr) = -(d.at(keep_r[i], pc) * uinv);
                }
                phi_step.set(m, std::move(p));
                psi_step.set(m, std::move(q));
            } else if (!cur.cells_at(m).empty()) {
                phi_step.set(m, AlgMatrix::identity(alg, cur.cells_at(m)));
                psi_step.set(m, AlgMatrix::identity(alg, cur.cells_at(m)));
            }
        }
        ChainMap s_step = ChainMap::zero(cur, cur, -1);
        {
            AlgMatrix s(alg, cur.cells_at(n), cur.cells_at(n + 1));
            s.at(pc, pr) = uinv;
            s_step.set(n + 1, std::move(s));
        }

        h = h + compose(psi, compose(s_step, phi));
        phi = compose(phi_step, phi);
        psi = compose(psi, psi_step);
        cur = next;
    }

    check_internal(cur.is_minimal(), "minimization left an invertible entry");
    check_internal(phi.chain_condition_holds() && psi.chain_condition_holds(),
                   "minimization witnesses fail the chain condition");
    check_internal(compose(phi, psi) == ChainMap::identity(cur),
                   "minimization retraction is not the identity");
    check_internal(compose(psi, phi) == ChainMap::identity(x) - homotopy_boundary(h),
                   "minimization homotopy witness fails");
    return MinimizeResult{std::move(cur), std::move(phi), std::move(psi), std::move(h)};
}

// ---------------------------------------------------------------------------
// Map spaces and hom in the homotopy category

Matrix MapSpace::flatten(const ChainMap& f) const {
    require(f.src == src && f.tgt == tgt && f.deg == deg,
            "flattening a map from a different space");
    Matrix col(src.alg()->field(), slots.size(), 1);
    for (std::size_t i = 0; i < slots.size(); ++i) {
        const Slot& s = slots[i];
        col.at(i, 0) = f.at(s.n).at(s.r, s.c).c[static_cast<std::size_t>(s.basis_index)];
    }
    return col;
}

ChainMap MapSpace::unflatten(const Matrix& column) const {
    require(column.rows() == slots.size() && column.cols() == 1,
            "coordinate vector has the wrong size");
    return unflatten_col(column, 0);
}

ChainMap MapSpace::unflatten_col(const Matrix& m, std::size_t j) const {
    require(m.rows() == slots.size() && (slots.empty() || j < m.cols()),
            "coordinate column out of range");
    ChainMap f = ChainMap::zero(src, tgt, deg);
    std::map<int, AlgMatrix> parts;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        const Slot& s = slots[i];
        auto it = parts.find(s.n);
        if (it == parts.end())
            it = parts.emplace(s.n, AlgMatrix(src.alg(), tgt.cells_at(s.n + deg),
                                              src.cells_at(s.n)))
                     .first;
        it->second.at(s.r, s.c).c[static_cast<std::size_t>(s.basis_index)] = m.at(i, j);
    }
    for (auto& [n, mat] : parts) f.set(n, std::move(mat));
    return f;
}

MapSpace map_space(const ProjComplex& x, const ProjComplex& y, int deg) {
    require(x.alg() == y.alg(), "map space over different algebras");
    MapSpace sp;
    sp.src = x;
    sp.tgt = y;
    sp.deg = deg;
    if (x.is_empty() || y.is_empty()) return sp;
    for (int n = x.lo(); n <= x.hi(); ++n) {
        const std::vector<int>& sc = x.cells_at(n);
        const std::vector<int>& tc = y.cells_at(n + deg);
        for (std::size_t r = 0; r < tc.size(); ++r)
            for (std::size_t c = 0; c < sc.size(); ++c)
                for (int b : x.alg()->piece(tc[r], sc[c]))
                    sp.slots.push_back(MapSpace::Slot{n, r, c, b});
    }
    return sp;
}

Matrix operator_matrix(const MapSpace& dom, const MapSpace& cod,
                       const std::function<ChainMap(const ChainMap&)>& t) {
    const Field& f = dom.src.alg()->field();
    Matrix res(f, cod.dim(), dom.dim());
    Matrix unit(f, dom.dim(), 1);
    for (std::size_t j = 0; j < dom.dim(); ++j) {
        if (j > 0) unit.at(j - 1, 0) = Scalar::zero(f);
        unit.at(j, 0) = Scalar::one(f);
        const Matrix img = cod.flatten(t(dom.unflatten(unit)));
        for (std::size_t i = 0; i < cod.dim(); ++i) res.at(i, j) = img.at(i, 0);
    }
    return res;
}

namespace {

ChainMap chain_defect(const ChainMap& f) {
    ChainMap r = ChainMap::zero(f.src, f.tgt, 1);
    if (!f.src.is_empty())
        for (int n = f.src.lo(); n <= f.src.hi(); ++n)
            r.set(n, f.tgt.diff_at(n) * f.at(n) - f.at(n + 1) * f.src.diff_at(n));
    return r;
}

} // namespace

HomK hom_K(const ProjComplex& x, const ProjComplex& y) {
    HomK h;
    h.space = map_space(x, y, 0);
    const MapSpace defects = map_space(x, y, 1);
    const MapSpace homotopies = map_space(x, y, -1);

    const Matrix a = operator_matrix(h.space, defects, chain_defect);
    h.chain_maps = kernel(a);
    h.boundaries = operator_matrix(homotopies, h.space, homotopy_boundary);

    ColumnSpace seen(h.boundaries);
    const std::size_t rank_b = seen.dim();
    std::vector<std::size_t> picked;
    for (std::size_t j = 0; j < h.chain_maps.cols(); ++j)
        if (seen.add(column_of(h.chain_maps, j))) picked.push_back(j);
    h.class_cols = h.chain_maps.select_columns(picked);
    for (std::size_t j = 0; j < picked.size(); ++j)
        h.classes.push_back(h.space.unflatten_col(h.class_cols, j));
    h.dim = picked.size();
    check_internal(h.dim + rank_b == h.chain_maps.cols(),
                   "null-homotopic maps escape the chain-map space");
    return h;
}

Matrix HomK::class_coords(const ChainMap& f) const {
    require(f.src == space.src && f.tgt == space.tgt && f.deg == 0,
            "class coordinates of a map between different complexes");
    require(f.chain_condition_holds(), "class coordinates of a non-chain map");
    const Matrix coords = space.flatten(f);
    const Matrix m = Matrix::hcat(boundaries, class_cols);
    const auto sol = solve(m, coords);
    check_internal(sol.has_value(), "chain map escapes boundaries plus class basis");
    Matrix res(coords.field(), dim, 1);
    for (std::size_t i = 0; i < dim; ++i)
        res.at(i, 0) = sol->at(boundaries.cols() + i, 0);
    return res;
}

std::optional<ChainMap> null_homotopy(const ChainMap& f) {
    require(f.deg == 0, "null homotopy of a map of nonzero degree");
    require(f.chain_condition_holds(), "null homotopy of a non-chain map");
    const MapSpace sp0 = map_space(f.src, f.tgt, 0);
    const MapSpace spm1 = map_space(f.src, f.tgt, -1);
    const Matrix b = operator_matrix(spm1, sp0, homotopy_boundary);
    const auto sol = solve(b, sp0.flatten(f));
    if (!sol) return std::nullopt;
    ChainMap s = spm1.unflatten(*sol);
    check_internal(homotopy_boundary(s) == f, "null homotopy witness fails");
    return s;
}

bool homotopic(const ChainMap& f, const ChainMap& g) {
    require(f.src == g.src && f.tgt == g.tgt && f.deg == 0 && g.deg == 0,
            "homotopy comparison of incompatible maps");
    return null_homotopy(f - g).has_value();
}

Triangle standard_triangle(const ChainMap& f) {
    require(f.deg == 0, "standard triangle of a map of nonzero degree");
    ConeResult cr = mapping_cone(f);
    return Triangle{f.src, f.tgt, cr.cone, f, cr.incl, cr.proj};
}

} // namespace arknit
