#include "arknit/resolve.hpp"

#include "arknit/error.hpp"

#include <algorithm>
#include <optional>

namespace arknit {

// ---------------------------------------------------------------------------
// RepComplex

RepComplex RepComplex::empty(const BasicAlgebra* a) {
    RepComplex c;
    c.alg = a;
    return c;
}

RepComplex RepComplex::stalk(Representation m, int degree) {
    RepComplex c;
    c.alg = m.alg;
    c.lo = degree;
    c.levels.push_back(std::move(m));
    return c;
}

RepComplex RepComplex::from_proj(const ProjComplex& x) {
    RepComplex c;
    c.alg = x.alg();
    if (x.is_empty()) return c;
    c.lo = x.lo();
    for (int n = x.lo(); n <= x.hi(); ++n) c.levels.push_back(proj_rep(c.alg, x.cells_at(n)));
    for (int n = x.lo(); n < x.hi(); ++n) c.diffs.push_back(rep_morphism_of(x.diff_at(n)));
    return c;
}

bool RepComplex::is_empty() const { return levels.empty(); }

Representation RepComplex::level_at(int n) const {
    if (is_empty() || n < lo || n > hi()) return Representation::zero(alg);
    return levels[static_cast<std::size_t>(n - lo)];
}

RepMorphism RepComplex::diff_at(int n) const {
    if (!is_empty() && n >= lo && n < hi()) return diffs[static_cast<std::size_t>(n - lo)];
    return RepMorphism::zero(level_at(n), level_at(n + 1));
}

void RepComplex::validate() const {
    require(alg != nullptr, "complex needs an algebra");
    require(levels.empty() ? diffs.empty() : diffs.size() + 1 == levels.size(),
            "complex needs one differential per consecutive pair of degrees");
    for (const Representation& m : levels) {
        require(m.alg == alg, "level over a different algebra");
        m.validate();
    }
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        require(diffs[i].src == levels[i] && diffs[i].tgt == levels[i + 1],
                "differential endpoints do not match the levels");
        diffs[i].validate();
    }
    for (std::size_t i = 0; i + 1 < diffs.size(); ++i)
        require(compose(diffs[i + 1], diffs[i]).is_zero(),
                "complex differential does not square to zero");
}

std::map<int, std::size_t> rep_homology_dims(const RepComplex& c) {
    std::map<int, std::size_t> h;
    if (c.is_empty()) return h;
    auto rank_of = [](const RepMorphism& f) {
        std::size_t r = 0;
        for (const Matrix& m : f.comp) r += rank(m);
        return r;
    };
    for (int n = c.lo; n <= c.hi(); ++n)
        h[n] = c.level_at(n).total_dim() - rank_of(c.diff_at(n)) - rank_of(c.diff_at(n - 1));
    return h;
}

std::map<int, std::size_t> homology_dims(const ProjComplex& x) {
    return rep_homology_dims(RepComplex::from_proj(x));
}

RepComplex nakayama_complex(const ProjComplex& x) {
    RepComplex c;
    c.alg = x.alg();
    if (x.is_empty()) return c;
    c.lo = x.lo();
    for (int n = x.lo(); n <= x.hi(); ++n) c.levels.push_back(inj_rep(c.alg, x.cells_at(n)));
    for (int n = x.lo(); n < x.hi(); ++n) c.diffs.push_back(nakayama_morphism(x.diff_at(n)));
    return c;
}

// ---------------------------------------------------------------------------
// Resolution of a complex by projectives
//
// Working from the top degree down, each step covers the cycles of the
// comparison cone modulo the boundaries already present.  With the data of
// degree j+1 in hand, Phi^j = [[-d_P^{j+1}, 0], [q^{j+1}, d_c^j]] is the
// cone differential P^{j+1} (+) c^j -> P^{j+2} (+) c^{j+1}; a projective
// cover of ker Phi^j modulo (0 (+) im d_c^{j-1}) lifts to the kernel, its
// top block gives -d_P^j and its bottom block q^j.  The loop stops below the
// complex once the kernel vanishes.

namespace {

struct PhiProfile {
    std::size_t ker_dim = 0;
    std::size_t rank = 0;
};

std::optional<ResolveResult> try_resolve(const RepComplex& c, int max_len) {
    const BasicAlgebra* alg = c.alg;
    if (c.is_empty()) return ResolveResult{ProjComplex::empty(alg), {}};
    const Field& field = alg->field();

    std::vector<int> cells1; // cells of P^{j+1}
    Representation q_up = proj_rep(alg, cells1);     // P^{j+1}
    Representation q_up2 = proj_rep(alg, cells1);    // P^{j+2}
    AlgMatrix d_up(alg, {}, {});                     // P^{j+1} -> P^{j+2}
    RepMorphism q1 = RepMorphism::zero(q_up, c.level_at(c.hi() + 1));

    std::map<int, std::vector<int>> all_cells;
    std::map<int, AlgMatrix> all_d;
    std::map<int, RepMorphism> all_q;
    std::map<int, PhiProfile> profile;

    int j = c.hi();
    int lowest = c.hi() + 1;
    while (true) {
        if (j < c.lo - max_len) return std::nullopt;

        const Representation cj = c.level_at(j);
        const Representation cj1 = c.level_at(j + 1);
        const Representation dom = rep_sum(q_up, cj);
        const Representation cod = rep_sum(q_up2, cj1);
        const RepMorphism d_up_rm = rep_morphism_of(d_up);
        const RepMorphism dc = c.diff_at(j);

        RepMorphism phi = RepMorphism::zero(dom, cod);
        for (std::size_t v = 0; v < phi.comp.size(); ++v) {
            const int vi = static_cast<int>(v);
            const Matrix top = Matrix::hcat(
                -d_up_rm.comp[v], Matrix(field, q_up2.dim_at(vi), cj.dim_at(vi)));
            const Matrix bot = Matrix::hcat(q1.comp[v], dc.comp[v]);
            phi.comp[v] = Matrix::vcat(top, bot);
        }
        phi.validate();
        PhiProfile pr;
        for (const Matrix& m : phi.comp) {
            const std::size_t r = rank(m);
            pr.rank += r;
            pr.ker_dim += m.cols() - r;
        }
        profile[j] = pr;

        const KernelRep k = kernel_rep(phi);
        if (j < c.lo && k.ker.total_dim() == 0) {
            lowest = j + 1;
            break;
        }

        const RepMorphism dcm1 = c.diff_at(j - 1);
        std::vector<Matrix> lcols;
        for (std::size_t v = 0; v < k.incl.comp.size(); ++v) {
            const int vi = static_cast<int>(v);
            const Matrix target = Matrix::vcat(
                Matrix(field, q_up.dim_at(vi), dcm1.comp[v].cols()), dcm1.comp[v]);
            const auto sol = solve(k.incl.comp[v], target);
            check_internal(sol.has_value(), "boundaries do not lie in the cycles");
            lcols.push_back(*sol);
        }
        const SubRep l = subrep_span(k.ker, lcols);
        const QuotientRep n = quotient_rep(k.ker, l.incl);
        const CoverRep cov = projective_cover(n.quo);

        std::vector<Matrix> gen_cols;
        for (std::size_t kk = 0; kk < cov.cells.size(); ++kk) {
            const auto v = static_cast<std::size_t>(cov.cells[kk]);
            const std::size_t g = proj_generator_index(alg, cov.cells, kk);
            const Matrix y = cov.eps.comp[v].select_columns({g});
            const auto x = solve(n.proj.comp[v], y);
            check_internal(x.has_value(), "cover does not lift through the quotient");
            gen_cols.push_back(k.incl.comp[v] * *x);
        }
        const RepMorphism eps_t = from_generators(alg, cov.cells, dom, gen_cols);

        const Representation qj = proj_rep(alg, cov.cells);
        RepMorphism top = RepMorphism::zero(qj, q_up);
        RepMorphism bot = RepMorphism::zero(qj, cj);
        for (std::size_t v = 0; v < eps_t.comp.size(); ++v) {
            const int vi = static_cast<int>(v);
            top.comp[v] = eps_t.comp[v].submatrix(0, 0, q_up.dim_at(vi), qj.dim_at(vi));
            bot.comp[v] =
                eps_t.comp[v].submatrix(q_up.dim_at(vi), 0, cj.dim_at(vi), qj.dim_at(vi));
        }
        top.validate();
        bot.validate();

        const AlgMatrix dj = -alg_matrix_of(top, cells1, cov.cells);
        all_cells[j] = cov.cells;
        all_d[j] = dj;
        all_q[j] = bot;

        q_up2 = q_up;
        q_up = qj;
        cells1 = cov.cells;
        d_up = dj;
        q1 = bot;
        --j;
    }

    // Assemble the complex.
    ResolveResult res;
    if (lowest > c.hi()) {
        res.proj = ProjComplex::empty(alg);
        return res;
    }
    std::vector<std::vector<int>> cells;
    std::vector<AlgMatrix> diffs;
    for (int n = lowest; n <= c.hi(); ++n) {
        cells.push_back(all_cells.at(n));
        if (n < c.hi()) diffs.push_back(all_d.at(n));
    }
    res.proj = ProjComplex(alg, lowest, std::move(cells), std::move(diffs));
    res.q = all_q;

    // The comparison morphisms form a chain map ...
    for (int n = lowest; n < c.hi(); ++n)
        check_internal(compose(all_q.at(n + 1), rep_morphism_of(all_d.at(n))) ==
                           compose(c.diff_at(n), all_q.at(n)),
                       "comparison morphisms are not a chain map");
    // ... whose cone is acyclic, so they are a quasi-isomorphism.
    for (int n = lowest - 1; n <= c.hi(); ++n) {
        const std::size_t ker = profile.count(n) ? profile.at(n).ker_dim : 0;
        const std::size_t im = profile.count(n - 1) ? profile.at(n - 1).rank : 0;
        check_internal(ker == im, "comparison cone has homology");
    }
    return res;
}

[[noreturn]] void report_budget_failure(const BasicAlgebra* alg, int max_len) {
    if (gldim_certified(alg, max_len) >= 0) fail("resolution exceeds max_len");
    fail("infinite global dimension suspected");
}

} // namespace

ResolveResult resolve_complex(const RepComplex& c, int max_len) {
    c.validate();
    auto r = try_resolve(c, max_len);
    if (!r) report_budget_failure(c.alg, max_len);
    return std::move(*r);
}

ProjComplex resolution_of(const Representation& m, int max_len) {
    m.validate();
    auto r = try_resolve(RepComplex::stalk(m, 0), max_len);
    if (!r) report_budget_failure(m.alg, max_len);
    check_internal(r->proj.is_minimal(), "module resolution is not minimal");
    return r->proj;
}

int gldim_certified(const BasicAlgebra* alg, int max_len) {
    if (alg->gldim_cache != -2) return alg->gldim_cache;
    int g = 0;
    for (int v = 0; v < alg->quiver().nv(); ++v) {
        auto r = try_resolve(RepComplex::stalk(Representation::simple(alg, v)), max_len);
        // A failure is relative to this budget, so only success is cached.
        if (!r) return -1;
        if (!r->proj.is_empty()) g = std::max(g, -r->proj.lo());
    }
    alg->gldim_cache = g;
    return g;
}

// ---------------------------------------------------------------------------
// Duality and translates

ProjComplex dual_complex(const ProjComplex& x) {
    const BasicAlgebra* op = &x.alg()->opposite();
    if (x.is_empty()) return ProjComplex::empty(op);
    const int lo2 = -x.hi();
    const int hi2 = -x.lo();
    std::vector<std::vector<int>> cells;
    std::vector<AlgMatrix> diffs;
    for (int n = lo2; n <= hi2; ++n) {
        cells.push_back(x.cells_at(-n));
        if (n < hi2) diffs.push_back(x.diff_at(-n - 1).dual());
    }
    return ProjComplex(op, lo2, std::move(cells), std::move(diffs));
}

ProjComplex tau_K(const ProjComplex& x, int max_len) {
    if (x.is_empty()) return ProjComplex::empty(x.alg());
    const ResolveResult r = resolve_complex(nakayama_complex(x), max_len);
    return minimize(r.proj.shifted(-1)).min;
}

ProjComplex tau_inv_K(const ProjComplex& x, int max_len) {
    if (x.is_empty()) return ProjComplex::empty(x.alg());
    const ResolveResult r = resolve_complex(nakayama_complex(dual_complex(x)), max_len);
    return minimize(dual_complex(r.proj).shifted(1)).min;
}

// ---------------------------------------------------------------------------
// Module-level translates

namespace {

struct Presentation {
    std::vector<int> cells0, cells1;
    AlgMatrix d; // proj(cells1) -> proj(cells0), both minimal
};

Presentation present(const Representation& m) {
    const CoverRep c0 = projective_cover(m);
    const KernelRep k = kernel_rep(c0.eps);
    const CoverRep c1 = projective_cover(k.ker);
    const RepMorphism d = compose(k.incl, c1.eps);
    return Presentation{c0.cells, c1.cells, alg_matrix_of(d, c0.cells, c1.cells)};
}

} // namespace

Representation ar_translate_mod(const Representation& m) {
    if (m.is_zero()) return Representation::zero(m.alg);
    const Presentation p = present(m);
    const RepMorphism f = rep_morphism_of(p.d.dual()); // P0^op -> P1^op
    const QuotientRep tr = quotient_rep(f.tgt, image_rep(f).incl);
    return dual_rep(tr.quo);
}

Representation ar_translate_mod_inv(const Representation& m) {
    if (m.is_zero()) return Representation::zero(m.alg);
    const Presentation p = present(dual_rep(m));       // over the opposite
    const RepMorphism f = rep_morphism_of(p.d.dual()); // back over m's algebra
    return quotient_rep(f.tgt, image_rep(f).incl).quo;
}

} // namespace arknit
