#include "arknit/algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace arknit {

// ---------------------------------------------------------------------------
// Quiver

int Quiver::vertex_id(const std::string& name) const {
    for (int i = 0; i < nv(); ++i)
        if (vertices[i] == name) return i;
    fail("unknown vertex: " + name);
}

int Quiver::arrow_id(const std::string& name) const {
    for (int i = 0; i < na(); ++i)
        if (arrows[i].name == name) return i;
    fail("unknown arrow: " + name);
}

Quiver Quiver::opposite() const {
    Quiver q;
    q.vertices = vertices;
    for (const Arrow& a : arrows) q.arrows.push_back(Arrow{a.name, a.tgt, a.src});
    return q;
}

void Quiver::validate() const {
    require(!vertices.empty(), "quiver needs at least one vertex");
    std::set<std::string> names(vertices.begin(), vertices.end());
    require(names.size() == vertices.size(), "duplicate vertex name");
    std::set<std::string> anames;
    for (const Arrow& a : arrows) {
        require(a.src >= 0 && a.src < nv() && a.tgt >= 0 && a.tgt < nv(),
                "arrow endpoint out of range: " + a.name);
        require(anames.insert(a.name).second, "duplicate arrow name: " + a.name);
        require(!a.name.empty() && a.name[0] != 'e', "arrow name must not start with 'e': " + a.name);
    }
}

// ---------------------------------------------------------------------------
// PathWord

std::string PathWord::key() const {
    std::string k = std::to_string(src) + "|";
    for (int a : arrows) k += std::to_string(a) + ",";
    return k;
}

std::string PathWord::display(const Quiver& q) const {
    if (arrows.empty()) return "e" + q.vertices[src];
    std::string s;
    for (int a : arrows) s += q.arrows[a].name;
    return s;
}

PathWord PathWord::from_arrows(const Quiver& q, const std::vector<int>& word) {
    require(!word.empty(), "empty arrow word");
    PathWord p;
    p.src = q.arrows[word.front()].src;
    p.tgt = q.arrows[word.back()].tgt;
    p.arrows = word;
    for (std::size_t i = 0; i + 1 < word.size(); ++i)
        require(q.arrows[word[i]].tgt == q.arrows[word[i + 1]].src,
                "arrows do not compose: " + q.arrows[word[i]].name + " then " +
                    q.arrows[word[i + 1]].name);
    return p;
}

// ---------------------------------------------------------------------------
// BasicAlgebra construction

namespace {

struct PathEnum {
    const Quiver& q;
    long long cap;
    std::vector<PathWord> paths;          // flat, ordered by (length, lex)
    std::vector<std::size_t> offsets{0};  // offsets[len] = first index of that length
    std::map<std::string, int> index;
    bool exhausted = false; // no paths of the next length exist

    explicit PathEnum(const Quiver& quiver, long long path_cap) : q(quiver), cap(path_cap) {
        for (int v = 0; v < q.nv(); ++v) push(PathWord::trivial(v));
        offsets.push_back(paths.size());
    }

    int max_len() const { return static_cast<int>(offsets.size()) - 2; }

    void push(const PathWord& p) {
        require(static_cast<long long>(paths.size()) < cap,
                "not finite-dimensional within max_len (path budget exceeded)");
        index[p.key()] = static_cast<int>(paths.size());
        paths.push_back(p);
    }

    void ensure(int len) {
        while (max_len() < len && !exhausted) {
            const int cur = max_len();
            const std::size_t beg = offsets[cur], end = offsets[cur + 1];
            for (std::size_t i = beg; i < end; ++i)
                for (int a = 0; a < q.na(); ++a) {
                    if (q.arrows[a].src != paths[i].tgt) continue;
                    PathWord p = paths[i];
                    p.arrows.push_back(a);
                    p.tgt = q.arrows[a].tgt;
                    push(p);
                }
            offsets.push_back(paths.size());
            if (offsets[offsets.size() - 1] == offsets[offsets.size() - 2]) exhausted = true;
        }
    }

    // Number of paths of length <= len (len must be enumerated or past exhaustion).
    std::size_t count_upto(int len) const {
        if (len < 0) return 0;
        const int m = std::min(len, max_len());
        return offsets[m + 1];
    }
};

void validate_relations(const Quiver& q, const std::vector<Relation>& rels, const Field& f) {
    for (const Relation& rel : rels) {
        require(!rel.terms.empty(), "inadmissible relation: empty");
        int src = -1, tgt = -1;
        for (const auto& [coef, p] : rel.terms) {
            require(coef.field() == f, "relation coefficient in wrong field");
            require(!coef.is_zero(), "inadmissible relation: zero coefficient term");
            require(p.length() >= 2,
                    "inadmissible relation: term of length < 2 (" + p.display(q) + ")");
            // Re-derive endpoints to confirm composability.
            PathWord check = PathWord::from_arrows(q, p.arrows);
            if (src == -1) { src = check.src; tgt = check.tgt; }
            require(check.src == src && check.tgt == tgt,
                    "inadmissible relation: terms not parallel");
        }
    }
}

} // namespace

std::shared_ptr<const BasicAlgebra> BasicAlgebra::build(const Quiver& q,
                                                        const std::vector<Relation>& rels,
                                                        const Field& f,
                                                        const AlgebraOptions& opts) {
    return build_impl(q, rels, f, opts, true);
}

std::shared_ptr<BasicAlgebra> BasicAlgebra::build_impl(const Quiver& q,
                                                       const std::vector<Relation>& rels,
                                                       const Field& f,
                                                       const AlgebraOptions& opts,
                                                       bool with_opposite) {
    q.validate();
    validate_relations(q, rels, f);

    int spread = 0, max_rel_len = 0;
    for (const Relation& rel : rels) {
        int lo = 1 << 28, hi = 0;
        for (const auto& [coef, p] : rel.terms) {
            lo = std::min(lo, p.length());
            hi = std::max(hi, p.length());
        }
        spread = std::max(spread, hi - lo);
        max_rel_len = std::max(max_rel_len, hi);
    }

    PathEnum en(q, opts.path_cap);

    // Find the least L with rad^L contained in the ideal, certified by an
    // explicit span computation over paths of length <= L + spread.
    int cert_len = -1;
    for (int L = 1; L <= opts.max_len; ++L) {
        const int w = L + spread;
        en.ensure(w);
        if (en.max_len() < L) { cert_len = L; break; } // no paths of length L at all
        const std::size_t lbeg = en.offsets[L], lend = en.offsets[L + 1];
        if (lbeg == lend) { cert_len = L; break; }
        if (rels.empty()) continue;

        const std::size_t ncoord = en.count_upto(w);
        ColumnSpace span(f, ncoord);
        for (const Relation& rel : rels) {
            int m = 0;
            for (const auto& [coef, p] : rel.terms) m = std::max(m, p.length());
            for (std::size_t ui = 0; ui < en.count_upto(std::max(0, w - m)); ++ui) {
                const PathWord& u = en.paths[ui];
                if (u.length() + m > w) continue;
                if (u.tgt != rel.terms[0].second.src) continue;
                for (std::size_t vi = 0; vi < en.count_upto(w - m - u.length()); ++vi) {
                    const PathWord& v = en.paths[vi];
                    if (u.length() + m + v.length() > w) continue;
                    if (v.src != rel.terms[0].second.tgt) continue;
                    std::vector<Scalar> gen(ncoord, Scalar::zero(f));
                    for (const auto& [coef, p] : rel.terms) {
                        std::vector<int> word = u.arrows;
                        word.insert(word.end(), p.arrows.begin(), p.arrows.end());
                        word.insert(word.end(), v.arrows.begin(), v.arrows.end());
                        PathWord full{u.src, v.tgt, word};
                        auto it = en.index.find(full.key());
                        check_internal(it != en.index.end(), "relation path not enumerated");
                        gen[it->second] = gen[it->second] + coef;
                    }
                    span.add(gen);
                }
            }
        }

        bool all_in = true;
        for (std::size_t i = lbeg; i < lend && all_in; ++i) {
            std::vector<Scalar> ind(ncoord, Scalar::zero(f));
            ind[i] = Scalar::one(f);
            all_in = span.contains(ind);
        }
        if (all_in) { cert_len = L; break; }
    }
    require(cert_len > 0, "not finite-dimensional within max_len");

    auto alg = std::shared_ptr<BasicAlgebra>(new BasicAlgebra());
    alg->quiver_ = q;
    alg->field_ = f;
    alg->trunc_len_ = cert_len;

    const int L = cert_len;
    en.ensure(L - 1);
    const std::size_t nshort = en.count_upto(L - 1);
    alg->n_short_paths_ = nshort;
    for (std::size_t i = 0; i < nshort; ++i) alg->path_index_[en.paths[i].key()] = static_cast<int>(i);

    // Truncated ideal inside the span of short paths.
    auto ideal = std::make_unique<ColumnSpace>(f, nshort);
    if (!rels.empty()) {
        en.ensure(L - 1 + spread);
        for (const Relation& rel : rels) {
            int m = 0;
            for (const auto& [coef, p] : rel.terms) m = std::max(m, p.length());
            const int budget = L - 1 + spread;
            if (m > budget) continue;
            for (std::size_t ui = 0; ui < en.count_upto(budget - m); ++ui) {
                const PathWord& u = en.paths[ui];
                if (u.length() + m > budget) continue;
                if (u.tgt != rel.terms[0].second.src) continue;
                for (std::size_t vi = 0; vi < en.count_upto(budget - m - u.length()); ++vi) {
                    const PathWord& v = en.paths[vi];
                    if (u.length() + m + v.length() > budget) continue;
                    if (v.src != rel.terms[0].second.tgt) continue;
                    std::vector<Scalar> gen(nshort, Scalar::zero(f));
                    bool any = false;
                    for (const auto& [coef, p] : rel.terms) {
                        if (u.length() + p.length() + v.length() >= L) continue;
                        std::vector<int> word = u.arrows;
                        word.insert(word.end(), p.arrows.begin(), p.arrows.end());
                        word.insert(word.end(), v.arrows.begin(), v.arrows.end());
                        PathWord full{u.src, v.tgt, word};
                        auto it = alg->path_index_.find(full.key());
                        check_internal(it != alg->path_index_.end(), "short path missing");
                        gen[it->second] = gen[it->second] + coef;
                        any = true;
                    }
                    if (any) ideal->add(gen);
                }
            }
        }
    }

    // Basis = short paths at non-pivot coordinates.
    std::vector<bool> pivot(nshort, false);
    for (std::size_t lead : ideal->leads()) pivot[lead] = true;
    alg->path_to_basis_.assign(nshort, -1);
    alg->reduced_support_.assign(nshort, -1);
    for (std::size_t i = 0; i < nshort; ++i) {
        if (pivot[i]) continue;
        alg->path_to_basis_[i] = static_cast<int>(alg->basis_.size());
        alg->reduced_support_[i] = static_cast<int>(alg->basis_.size());
        alg->basis_.push_back(en.paths[i]);
        alg->basis_len_.push_back(en.paths[i].length());
    }
    alg->ideal_rows_ = std::move(ideal);

    const int dim = alg->dim();
    alg->trivial_idx_.assign(q.nv(), -1);
    for (int i = 0; i < dim; ++i)
        if (alg->basis_[i].length() == 0) alg->trivial_idx_[alg->basis_[i].src] = i;
    for (int v = 0; v < q.nv(); ++v)
        check_internal(alg->trivial_idx_[v] >= 0, "trivial path eliminated from basis");

    alg->piece_.assign(static_cast<std::size_t>(q.nv()) * q.nv(), {});
    for (int i = 0; i < dim; ++i)
        alg->piece_[static_cast<std::size_t>(alg->basis_[i].src) * q.nv() + alg->basis_[i].tgt]
            .push_back(i);

    // Class coordinates of every short path, then the multiplication table.
    std::vector<std::vector<Scalar>> pclass(nshort);
    for (std::size_t i = 0; i < nshort; ++i) {
        std::vector<Scalar> coords(dim, Scalar::zero(f));
        if (alg->path_to_basis_[i] >= 0) {
            coords[alg->path_to_basis_[i]] = Scalar::one(f);
        } else {
            std::vector<Scalar> ind(nshort, Scalar::zero(f));
            ind[i] = Scalar::one(f);
            const auto residue = alg->ideal_rows_->reduce(ind);
            for (std::size_t c = 0; c < nshort; ++c) {
                if (residue[c].is_zero()) continue;
                check_internal(alg->path_to_basis_[c] >= 0, "residue hits pivot coordinate");
                coords[alg->path_to_basis_[c]] = residue[c];
            }
        }
        pclass[i] = std::move(coords);
    }

    alg->table_.assign(static_cast<std::size_t>(dim) * dim,
                       std::vector<Scalar>(dim, Scalar::zero(f)));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            const PathWord& p = alg->basis_[i];
            const PathWord& qp = alg->basis_[j];
            if (p.tgt != qp.src) continue;
            if (p.length() + qp.length() >= L) continue;
            std::vector<int> word = p.arrows;
            word.insert(word.end(), qp.arrows.begin(), qp.arrows.end());
            PathWord full{p.src, qp.tgt, word};
            auto it = alg->path_index_.find(full.key());
            check_internal(it != alg->path_index_.end(), "product path missing");
            alg->table_[static_cast<std::size_t>(i) * dim + j] = pclass[it->second];
        }

    alg->check_structure(rels);

    if (with_opposite) {
        std::vector<Relation> oprels;
        for (const Relation& rel : rels) {
            Relation r;
            for (const auto& [coef, p] : rel.terms) {
                std::vector<int> word(p.arrows.rbegin(), p.arrows.rend());
                r.terms.push_back({coef, PathWord{p.tgt, p.src, word}});
            }
            oprels.push_back(r);
        }
        auto op = build_impl(q.opposite(), oprels, f, opts, false);
        check_internal(op->dim() == alg->dim(), "opposite algebra dimension mismatch");
        op->op_back_ = alg.get();
        alg->op_owned_ = op;
    }
    return alg;
}

void BasicAlgebra::check_structure(const std::vector<Relation>& rels) const {
    const int d = dim();
    // Relations vanish in the quotient.
    for (const Relation& rel : rels) {
        AlgElem acc = zero_elem();
        for (const auto& [coef, p] : rel.terms) acc = acc + path_class(p).scaled(coef);
        check_internal(acc.is_zero(), "relation does not vanish in quotient");
    }
    // Unit acts as identity.
    const AlgElem u = unit();
    for (int i = 0; i < d; ++i) {
        const AlgElem b = basis_elem(i);
        check_internal(multiply(u, b) == b && multiply(b, u) == b, "unit fails");
    }
    // Associativity, exhaustively for small algebras, sampled otherwise.
    auto check_triple = [&](int i, int j, int k) {
        const AlgElem bi = basis_elem(i), bj = basis_elem(j), bk = basis_elem(k);
        check_internal(multiply(multiply(bi, bj), bk) == multiply(bi, multiply(bj, bk)),
                       "associativity fails");
    };
    if (d <= 14) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k) check_triple(i, j, k);
    } else {
        std::uint64_t s = 0x9e3779b97f4a7c15ull;
        for (int t = 0; t < 1000; ++t) {
            auto next = [&] {
                s = s * 6364136223846793005ull + 1442695040888963407ull;
                return static_cast<int>((s >> 33) % d);
            };
            const int i = next(), j = next(), k = next();
            check_triple(i, j, k);
        }
    }
}

// ---------------------------------------------------------------------------
// BasicAlgebra queries

const std::vector<int>& BasicAlgebra::piece(int src, int tgt) const {
    require(src >= 0 && src < quiver_.nv() && tgt >= 0 && tgt < quiver_.nv(),
            "vertex out of range");
    return piece_[static_cast<std::size_t>(src) * quiver_.nv() + tgt];
}

AlgElem BasicAlgebra::path_class(const PathWord& p) const {
    // Validates composability and endpoints.
    if (p.length() > 0) {
        PathWord check = PathWord::from_arrows(quiver_, p.arrows);
        require(check.src == p.src && check.tgt == p.tgt, "inconsistent path endpoints");
    }
    if (p.length() >= trunc_len_) return zero_elem();
    auto it = path_index_.find(p.key());
    check_internal(it != path_index_.end(), "path not enumerated: " + p.display(quiver_));
    AlgElem x = zero_elem();
    const std::size_t idx = static_cast<std::size_t>(it->second);
    if (path_to_basis_[idx] >= 0) {
        x.c[path_to_basis_[idx]] = Scalar::one(field_);
        return x;
    }
    std::vector<Scalar> ind(n_short_paths_, Scalar::zero(field_));
    ind[idx] = Scalar::one(field_);
    const auto residue = ideal_rows_->reduce(ind);
    for (std::size_t c = 0; c < n_short_paths_; ++c) {
        if (residue[c].is_zero()) continue;
        x.c[path_to_basis_[c]] = residue[c];
    }
    return x;
}

AlgElem BasicAlgebra::zero_elem() const {
    return AlgElem{this, std::vector<Scalar>(dim(), Scalar::zero(field_))};
}

AlgElem BasicAlgebra::unit() const {
    AlgElem x = zero_elem();
    for (int v = 0; v < quiver_.nv(); ++v) x.c[trivial_idx_[v]] = Scalar::one(field_);
    return x;
}

AlgElem BasicAlgebra::trivial_elem(int v) const {
    AlgElem x = zero_elem();
    x.c[trivial_idx_[v]] = Scalar::one(field_);
    return x;
}

AlgElem BasicAlgebra::arrow_elem(int arrow) const {
    require(arrow >= 0 && arrow < quiver_.na(), "arrow out of range");
    const Arrow& a = quiver_.arrows[arrow];
    return path_class(PathWord{a.src, a.tgt, {arrow}});
}

AlgElem BasicAlgebra::basis_elem(int i) const {
    AlgElem x = zero_elem();
    x.c[i] = Scalar::one(field_);
    return x;
}

AlgElem BasicAlgebra::multiply(const AlgElem& a, const AlgElem& b) const {
    require(a.alg == this && b.alg == this, "element belongs to a different algebra");
    AlgElem r = zero_elem();
    const int d = dim();
    for (int i = 0; i < d; ++i) {
        if (a.c[i].is_zero()) continue;
        for (int j = 0; j < d; ++j) {
            if (b.c[j].is_zero()) continue;
            const Scalar f = a.c[i] * b.c[j];
            const auto& prod = table_[static_cast<std::size_t>(i) * d + j];
            for (int k = 0; k < d; ++k) {
                if (prod[k].is_zero()) continue;
                r.c[k] = r.c[k] + f * prod[k];
            }
        }
    }
    return r;
}

std::vector<int> BasicAlgebra::radical_layer(int n) const {
    std::vector<int> out;
    for (int i = 0; i < dim(); ++i)
        if (basis_len_[i] == n) out.push_back(i);
    return out;
}

std::vector<int> BasicAlgebra::radical_power(int n) const {
    std::vector<int> out;
    for (int i = 0; i < dim(); ++i)
        if (basis_len_[i] >= n) out.push_back(i);
    return out;
}

bool BasicAlgebra::in_radical(const AlgElem& x) const {
    require(x.alg == this, "element belongs to a different algebra");
    for (int i = 0; i < dim(); ++i)
        if (basis_len_[i] == 0 && !x.c[i].is_zero()) return false;
    return true;
}

bool BasicAlgebra::is_arrow_class(const AlgElem& x) const {
    if (!in_radical(x)) return false;
    for (int i = 0; i < dim(); ++i)
        if (basis_len_[i] == 1 && !x.c[i].is_zero()) return true;
    return false;
}

const BasicAlgebra& BasicAlgebra::opposite() const {
    if (op_owned_) return *op_owned_;
    check_internal(op_back_ != nullptr, "opposite algebra unavailable");
    return *op_back_;
}

AlgElem BasicAlgebra::op_elem(const AlgElem& x) const {
    require(x.alg == this, "element belongs to a different algebra");
    const BasicAlgebra& op = opposite();
    AlgElem r = op.zero_elem();
    for (int i = 0; i < dim(); ++i) {
        if (x.c[i].is_zero()) continue;
        const PathWord& p = basis_[i];
        std::vector<int> word(p.arrows.rbegin(), p.arrows.rend());
        const AlgElem cls = op.path_class(PathWord{p.tgt, p.src, word});
        r = r + cls.scaled(x.c[i]);
    }
    return r;
}

std::vector<Scalar> BasicAlgebra::piece_coords(const AlgElem& x, int src, int tgt) const {
    require(x.alg == this, "element belongs to a different algebra");
    const auto& pc = piece(src, tgt);
    std::vector<Scalar> out(pc.size(), Scalar::zero(field_));
    std::vector<Scalar> seen = x.c;
    for (std::size_t k = 0; k < pc.size(); ++k) {
        out[k] = x.c[pc[k]];
        seen[pc[k]] = Scalar::zero(field_);
    }
    for (const Scalar& s : seen)
        check_internal(s.is_zero(), "element not supported in requested graded piece");
    return out;
}

AlgElem BasicAlgebra::from_piece_coords(int src, int tgt,
                                        const std::vector<Scalar>& coords) const {
    const auto& pc = piece(src, tgt);
    require(coords.size() == pc.size(), "piece coordinate length mismatch");
    AlgElem x = zero_elem();
    for (std::size_t k = 0; k < pc.size(); ++k) x.c[pc[k]] = coords[k];
    return x;
}

Matrix BasicAlgebra::lmul_matrix(const AlgElem& a, int a_src, int a_tgt, int t) const {
    const auto& from = piece(a_tgt, t);
    const auto& to = piece(a_src, t);
    Matrix m(field_, to.size(), from.size());
    for (std::size_t j = 0; j < from.size(); ++j) {
        const AlgElem prod = multiply(a, basis_elem(from[j]));
        const auto coords = piece_coords(prod, a_src, t);
        for (std::size_t i = 0; i < to.size(); ++i) m.at(i, j) = coords[i];
    }
    return m;
}

Matrix BasicAlgebra::rmul_matrix(const AlgElem& a, int a_src, int a_tgt, int s) const {
    const auto& from = piece(s, a_src);
    const auto& to = piece(s, a_tgt);
    Matrix m(field_, to.size(), from.size());
    for (std::size_t j = 0; j < from.size(); ++j) {
        const AlgElem prod = multiply(basis_elem(from[j]), a);
        const auto coords = piece_coords(prod, s, a_tgt);
        for (std::size_t i = 0; i < to.size(); ++i) m.at(i, j) = coords[i];
    }
    return m;
}

// ---------------------------------------------------------------------------
// AlgElem

bool AlgElem::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](const Scalar& s) { return s.is_zero(); });
}

AlgElem AlgElem::operator+(const AlgElem& o) const {
    require(alg == o.alg, "elements of different algebras");
    AlgElem r = *this;
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = r.c[i] + o.c[i];
    return r;
}

AlgElem AlgElem::operator-(const AlgElem& o) const { return *this + (-o); }

AlgElem AlgElem::operator-() const {
    AlgElem r = *this;
    for (auto& s : r.c) s = -s;
    return r;
}

AlgElem AlgElem::operator*(const AlgElem& o) const { return alg->multiply(*this, o); }

AlgElem AlgElem::scaled(const Scalar& s) const {
    AlgElem r = *this;
    for (auto& x : r.c) x = x * s;
    return r;
}

bool AlgElem::operator==(const AlgElem& o) const {
    require(alg == o.alg, "elements of different algebras");
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != o.c[i]) return false;
    return true;
}

std::string AlgElem::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (!c[i].is_one()) os << c[i].to_string() << "*";
        os << alg->basis_path(static_cast<int>(i)).display(alg->quiver());
    }
    if (first) os << "0";
    return os.str();
}

// ---------------------------------------------------------------------------
// AlgMatrix

AlgMatrix::AlgMatrix(const BasicAlgebra* a, std::vector<int> rows, std::vector<int> cols)
    : alg(a), row_cells(std::move(rows)), col_cells(std::move(cols)) {
    e.assign(row_cells.size() * col_cells.size(), a->zero_elem());
}

AlgMatrix AlgMatrix::identity(const BasicAlgebra* a, const std::vector<int>& cells) {
    AlgMatrix m(a, cells, cells);
    for (std::size_t i = 0; i < cells.size(); ++i) m.at(i, i) = a->trivial_elem(cells[i]);
    return m;
}

bool AlgMatrix::is_zero() const {
    return std::all_of(e.begin(), e.end(), [](const AlgElem& x) { return x.is_zero(); });
}

bool AlgMatrix::is_radical() const {
    return std::all_of(e.begin(), e.end(),
                       [this](const AlgElem& x) { return alg->in_radical(x); });
}

bool AlgMatrix::operator==(const AlgMatrix& o) const {
    if (alg != o.alg || row_cells != o.row_cells || col_cells != o.col_cells) return false;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != o.e[i]) return false;
    return true;
}

AlgMatrix AlgMatrix::operator*(const AlgMatrix& o) const {
    require(alg == o.alg, "matrices over different algebras");
    require(col_cells == o.row_cells, "cell mismatch in composition");
    AlgMatrix m(alg, row_cells, o.col_cells);
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t k = 0; k < cols(); ++k) {
            if (at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < o.cols(); ++j) {
                if (o.at(k, j).is_zero()) continue;
                m.at(i, j) = m.at(i, j) + at(i, k) * o.at(k, j);
            }
        }
    return m;
}

AlgMatrix AlgMatrix::operator+(const AlgMatrix& o) const {
    require(alg == o.alg && row_cells == o.row_cells && col_cells == o.col_cells,
            "cell mismatch in addition");
    AlgMatrix m = *this;
    for (std::size_t i = 0; i < e.size(); ++i) m.e[i] = m.e[i] + o.e[i];
    return m;
}

AlgMatrix AlgMatrix::operator-(const AlgMatrix& o) const { return *this + (-o); }

AlgMatrix AlgMatrix::operator-() const {
    AlgMatrix m = *this;
    for (auto& x : m.e) x = -x;
    return m;
}

AlgMatrix AlgMatrix::scaled(const Scalar& s) const {
    AlgMatrix m = *this;
    for (auto& x : m.e) x = x.scaled(s);
    return m;
}

Matrix AlgMatrix::scalar_part() const {
    Matrix m(alg->field(), rows(), cols());
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t j = 0; j < cols(); ++j) {
            if (row_cells[i] != col_cells[j]) continue;
            m.at(i, j) = at(i, j).c[alg->trivial_index(row_cells[i])];
        }
    return m;
}

AlgMatrix AlgMatrix::select(const std::vector<std::size_t>& rs,
                            const std::vector<std::size_t>& cs) const {
    std::vector<int> rc, cc;
    for (std::size_t r : rs) rc.push_back(row_cells[r]);
    for (std::size_t c : cs) cc.push_back(col_cells[c]);
    AlgMatrix m(alg, rc, cc);
    for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t j = 0; j < cs.size(); ++j) m.at(i, j) = at(rs[i], cs[j]);
    return m;
}

AlgMatrix AlgMatrix::dual() const {
    const BasicAlgebra* op = &alg->opposite();
    AlgMatrix m(op, col_cells, row_cells);
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t j = 0; j < cols(); ++j) m.at(j, i) = alg->op_elem(at(i, j));
    return m;
}

void AlgMatrix::validate() const {
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t j = 0; j < cols(); ++j)
            (void)alg->piece_coords(at(i, j), row_cells[i], col_cells[j]);
}

std::string AlgMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows(); ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < cols(); ++j) os << (j ? ", " : "") << at(i, j).to_string();
    }
    os << "]";
    return os.str();
}

AlgMatrix AlgMatrix::hcat(const AlgMatrix& a, const AlgMatrix& b) {
    require(a.alg == b.alg && a.row_cells == b.row_cells, "cell mismatch in hcat");
    std::vector<int> cc = a.col_cells;
    cc.insert(cc.end(), b.col_cells.begin(), b.col_cells.end());
    AlgMatrix m(a.alg, a.row_cells, cc);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) m.at(i, a.cols() + j) = b.at(i, j);
    }
    return m;
}

AlgMatrix AlgMatrix::vcat(const AlgMatrix& a, const AlgMatrix& b) {
    require(a.alg == b.alg && a.col_cells == b.col_cells, "cell mismatch in vcat");
    std::vector<int> rc = a.row_cells;
    rc.insert(rc.end(), b.row_cells.begin(), b.row_cells.end());
    AlgMatrix m(a.alg, rc, a.col_cells);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m.at(a.rows() + i, j) = b.at(i, j);
    return m;
}

AlgMatrix AlgMatrix::block_diag(const AlgMatrix& a, const AlgMatrix& b) {
    std::vector<int> rc = a.row_cells, cc = a.col_cells;
    rc.insert(rc.end(), b.row_cells.begin(), b.row_cells.end());
    cc.insert(cc.end(), b.col_cells.begin(), b.col_cells.end());
    AlgMatrix m(a.alg, rc, cc);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return m;
}

std::optional<AlgMatrix> alg_inverse(const AlgMatrix& m) {
    const BasicAlgebra* alg = m.alg;
    const Field& f = alg->field();
    // Unknown V with V.row_cells = m.col_cells, V.col_cells = m.row_cells,
    // subject to m*V = 1 and V*m = 1.
    const auto& R = m.row_cells;
    const auto& C = m.col_cells;
    if (R.size() != C.size()) return std::nullopt;

    // Flatten variables: per (k, j) entry of V, coordinates in piece(C[k], R[j]).
    std::vector<std::vector<std::size_t>> off(C.size(), std::vector<std::size_t>(R.size()));
    std::size_t nvars = 0;
    for (std::size_t k = 0; k < C.size(); ++k)
        for (std::size_t j = 0; j < R.size(); ++j) {
            off[k][j] = nvars;
            nvars += alg->piece(C[k], R[j]).size();
        }

    std::vector<std::vector<Scalar>> rows;
    std::vector<Scalar> rhs;
    auto emit_identity_rows = [&](const std::vector<int>& cells, std::size_t i, std::size_t j,
                                  std::vector<std::pair<std::size_t, Matrix>> blocks,
                                  std::size_t nout) {
        // Equation entry lives in piece(cells[i], cells[j]);
        // blocks are (var offset, coefficient matrix into that piece).
        for (std::size_t r = 0; r < nout; ++r) {
            std::vector<Scalar> row(nvars, Scalar::zero(f));
            for (const auto& [o, blk] : blocks)
                for (std::size_t c = 0; c < blk.cols(); ++c) row[o + c] = blk.at(r, c);
            rows.push_back(std::move(row));
            Scalar target = Scalar::zero(f);
            if (i == j) {
                // Identity entry e_{cells[i]}: coordinate 1 at the trivial path.
                const auto& pc = alg->piece(cells[i], cells[j]);
                if (pc[r] == alg->trivial_index(cells[i])) target = Scalar::one(f);
            }
            rhs.push_back(target);
        }
    };

    // m*V = identity on R: entry (i, j) = sum_k m(i,k) V(k,j).
    for (std::size_t i = 0; i < R.size(); ++i)
        for (std::size_t j = 0; j < R.size(); ++j) {
            std::vector<std::pair<std::size_t, Matrix>> blocks;
            for (std::size_t k = 0; k < C.size(); ++k)
                blocks.push_back({off[k][j], alg->lmul_matrix(m.at(i, k), R[i], C[k], R[j])});
            emit_identity_rows(R, i, j, std::move(blocks), alg->piece(R[i], R[j]).size());
        }
    // V*m = identity on C: entry (i, j) = sum_k V(i,k) m(k,j).
    for (std::size_t i = 0; i < C.size(); ++i)
        for (std::size_t j = 0; j < C.size(); ++j) {
            std::vector<std::pair<std::size_t, Matrix>> blocks;
            for (std::size_t k = 0; k < R.size(); ++k)
                blocks.push_back({off[i][k], alg->rmul_matrix(m.at(k, j), C[k], C[j], C[i])});
            emit_identity_rows(C, i, j, std::move(blocks), alg->piece(C[i], C[j]).size());
        }

    Matrix a(f, rows.size(), nvars), b(f, rows.size(), 1);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < nvars; ++c) a.at(r, c) = rows[r][c];
        b.at(r, 0) = rhs[r];
    }
    const auto x = solve(a, b);
    if (!x) return std::nullopt;

    AlgMatrix v(alg, C, R);
    for (std::size_t k = 0; k < C.size(); ++k)
        for (std::size_t j = 0; j < R.size(); ++j) {
            const auto& pc = alg->piece(C[k], R[j]);
            std::vector<Scalar> coords;
            for (std::size_t c = 0; c < pc.size(); ++c) coords.push_back(x->at(off[k][j] + c, 0));
            v.at(k, j) = alg->from_piece_coords(C[k], R[j], coords);
        }
    check_internal((m * v) == AlgMatrix::identity(alg, R) && (v * m) == AlgMatrix::identity(alg, C),
                   "inverse verification failed");
    return v;
}

} // namespace arknit
