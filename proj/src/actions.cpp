#include "whopf/actions.hpp"

#include "worst.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace whopf {

using detail::idx;
using detail::Worst;

namespace {

Element as_operator(const Algebra& amb, const Mat& m)
{
    Element e(amb);
    e.blk[0] = m;
    return e;
}

Mat inverse_checked(const Mat& m, const char* what)
{
    if (min_singular_value(m) < 1e-10)
        throw invalid_structure(std::string(what) + " is not invertible");
    return m.inverse();
}

}  // namespace

Mat Action::rep(const Vec& q) const
{
    if (q.size() != symmetry.dim())
        throw shape_error("symmetry element has wrong length");
    const int d = target.dim();
    Mat out = Mat::Zero(d, d);
    for (int k = 0; k < q.size(); ++k)
        if (q(k) != cplx(0.0))
            out += q(k) * ops[k];
    return out;
}

Element Action::apply(const Element& q, const Element& b) const
{
    if (!b.alg.same_shape(target))
        throw shape_error("action applied outside its target");
    return from_coords(target, rep(q) * coords(b));
}

Action make_action(const WeakHopfAlgebra& q, const Algebra& target, std::vector<Mat> ops)
{
    if (static_cast<int>(ops.size()) != q.dim())
        throw shape_error("one operator per basis element of the symmetry");
    for (const auto& m : ops)
        if (m.rows() != target.dim() || m.cols() != target.dim())
            throw shape_error("action operator does not match the target dimension");
    return Action{q, target, std::move(ops)};
}

Action trivial_action(const Algebra& target)
{
    Algebra c = scalars();
    Mat one = Mat::Identity(1, 1);
    WeakHopfAlgebra w = make_weak_hopf("trivial", c, one, Vec::Ones(1), one);
    return make_action(w, target, {Mat::Identity(target.dim(), target.dim())});
}

Action group_action(const Transported& group_alg, const Algebra& target, const std::vector<Mat>& group_ops)
{
    const int n = group_alg.w.dim();
    if (static_cast<int>(group_ops.size()) != n)
        throw shape_error("one operator per group element");
    std::vector<Mat> ops;
    for (int k = 0; k < n; ++k) {
        Mat m = Mat::Zero(target.dim(), target.dim());
        for (int g = 0; g < n; ++g)
            if (std::abs(group_alg.inv(g, k)) > 1e-14)
                m += group_alg.inv(g, k) * group_ops[g];
        ops.push_back(m);
    }
    return make_action(group_alg.w, target, std::move(ops));
}

ActionReport verify_action(const Action& act, double tol)
{
    const WeakHopfAlgebra& w = act.symmetry;
    const Algebra& q = w.Q;
    const Algebra& b = act.target;
    const int n = q.dim(), d = b.dim();
    ActionReport rep;

    {
        Worst worst;
        worst.see(max_abs(Mat(act.rep(unit(q)) - Mat::Identity(d, d))), [] { return std::string("unit"); });
        rep.unital = worst.result(tol);
    }
    {
        Worst worst;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Mat lhs = act.rep(basis_element(q, i) * basis_element(q, j));
                worst.see(max_abs(Mat(lhs - act.ops[i] * act.ops[j])), [&] { return idx("q", i, "r", j); });
            }
        rep.homomorphism = worst.result(tol);
    }
    {
        // compares q |> (b .) with sum_a L(q1 |> b) (q2 |> .) as operators, one basis b at a time
        std::vector<std::vector<Mat>> moved(n);
        for (int a = 0; a < n; ++a)
            for (int k = 0; k < d; ++k)
                moved[a].push_back(left_mult(from_coords(b, act.ops[a].col(k))));
        Worst worst;
        for (int k = 0; k < n; ++k) {
            Mat dk = w.delta_of(k);
            std::vector<int> live;
            std::vector<Mat> right(n);
            for (int a = 0; a < n; ++a) {
                if (dk.row(a).cwiseAbs().maxCoeff() < 1e-14)
                    continue;
                live.push_back(a);
                right[a] = act.rep(Vec(dk.row(a).transpose()));
            }
            for (int e = 0; e < d; ++e) {
                Mat lhs = act.ops[k] * left_mult(basis_element(b, e));
                Mat rhs = Mat::Zero(d, d);
                for (int a : live)
                    rhs += moved[a][e] * right[a];
                worst.see(max_abs(Mat(lhs - rhs)), [&] { return idx("q", k, "b", e); });
            }
        }
        rep.module_algebra = worst.result(tol);
    }
    {
        Worst worst;
        Mat sinv;
        try {
            sinv = inverse_checked(w.antipode.m, "antipode");
        } catch (const invalid_structure&) {
            rep.star_law = Check{false, INFINITY, "antipode not invertible"};
            return rep;
        }
        Mat jq = star_matrix(q), jb = star_matrix(b);
        for (int k = 0; k < n; ++k) {
            Vec qs = jq * Vec::Unit(n, k);
            Mat lhs = jb * act.rep(qs).conjugate() * jb;
            Mat rhs = act.rep(Vec(sinv.col(k)));
            worst.see(max_abs(Mat(lhs - rhs)), [&] { return idx("q", k); });
        }
        rep.star_law = worst.result(tol);
    }
    return rep;
}

Subalgebra invariants(const Action& act, double tol)
{
    const int n = act.symmetry.dim();
    Mat et = counital_target_map(act.symmetry).m;
    KernelBuilder kb(act.target.dim());
    for (int k = 0; k < n; ++k)
        kb.add(act.ops[k] - act.rep(Vec(et.col(k))), tol);
    return Subalgebra{act.target, kb.basis()};
}

int IsotypicDecomposition::total_dim() const
{
    int s = 0;
    for (size_t i = 0; i < multiplicity.size(); ++i)
        s += multiplicity[i] * block_size[i];
    return s;
}

int IsotypicDecomposition::trivial_dim() const
{
    int s = 0;
    for (size_t i = 0; i < multiplicity.size(); ++i)
        if (trivial[i])
            s += multiplicity[i] * block_size[i];
    return s;
}

int IsotypicDecomposition::invariant_count() const
{
    int s = 0;
    for (size_t i = 0; i < multiplicity.size(); ++i)
        s += trivial_multiplicity[i] * multiplicity[i];
    return s;
}

IsotypicDecomposition isotypic_decomposition(const Action& act, double tol)
{
    const Algebra& q = act.symmetry.Q;
    IsotypicDecomposition out;
    const Mat et = counital_target_map(act.symmetry).m;
    const Mat qt = range_basis(et, tol);
    for (int s = 0; s < q.nblocks(); ++s) {
        const int n = q.blocks[s];
        Mat r = range_basis(act.ops[q.index(s, 0, 0)], tol);
        out.multiplicity.push_back(static_cast<int>(r.cols()));
        out.block_size.push_back(n);
        Mat on_qt = qt.adjoint() * et * left_mult(matrix_unit(q, s, 0, 0)) * qt;
        const int tm = static_cast<int>(range_basis(on_qt, tol).cols());
        out.trivial_multiplicity.push_back(tm);
        out.trivial.push_back(tm > 0);
        for (Eigen::Index c = 0; c < r.cols(); ++c) {
            Multiplet m;
            m.charge = s;
            m.size = n;
            for (int a = 0; a < n; ++a)
                m.basis.push_back(from_coords(act.target, act.ops[q.index(s, a, 0)] * r.col(c)));
            out.multiplets.push_back(std::move(m));
        }
    }
    return out;
}

LinearMap averaging_expectation(const Action& act, double tol)
{
    auto h = haar_integral(act.symmetry, tol);
    if (!h)
        throw invalid_structure("symmetry has no Haar integral");
    return LinearMap(act.target, act.target, act.rep(*h));
}

CrossedProduct crossed_product(const Algebra& a, const Action& act, Rng& rng, std::optional<TraceState> tau,
                               double tol)
{
    if (!act.target.same_shape(a))
        throw shape_error("action does not act on " + a.str());
    TraceState t = tau ? *tau : matrix_trace(a);
    if (!t.faithful())
        throw invalid_structure("crossed product needs a faithful trace");
    const int d = a.dim(), n = act.symmetry.dim();
    RVec sq = t.coord_weights().cwiseSqrt();
    Mat dm = Mat(sq.cast<cplx>().asDiagonal());
    Mat dinv = Mat(sq.cwiseInverse().cast<cplx>().asDiagonal());
    Algebra amb = full_matrix(d);

    std::vector<Mat> la, qa;
    std::vector<Element> gens;
    for (int k = 0; k < d; ++k) {
        la.push_back(left_mult(basis_element(a, k)));
        gens.push_back(as_operator(amb, la.back()));
    }
    for (int k = 0; k < n; ++k) {
        qa.push_back(dm * act.ops[k] * dinv);
        gens.push_back(as_operator(amb, qa.back()));
    }

    CrossedProduct cp;
    cp.concrete = generate_star_subalgebra(amb, gens, tol);
    cp.dec = decompose(cp.concrete, rng, tol);
    cp.B = cp.dec.alg;

    Mat im(cp.B.dim(), d), jm(cp.B.dim(), n);
    for (int k = 0; k < d; ++k)
        im.col(k) = coords(cp.dec.lower(gens[k]));
    for (int k = 0; k < n; ++k)
        jm.col(k) = coords(cp.dec.lower(gens[d + k]));
    cp.iota = LinearMap(a, cp.B, im);
    cp.j = LinearMap(act.symmetry.Q, cp.B, jm);

    double res = 0.0;
    for (int k = 0; k < n; ++k) {
        Mat dk = act.symmetry.delta_of(k);
        for (int e = 0; e < d; ++e) {
            Mat rhs = Mat::Zero(d, d);
            for (int i = 0; i < n; ++i) {
                if (dk.row(i).cwiseAbs().maxCoeff() < 1e-14)
                    continue;
                Mat moved = left_mult(from_coords(a, act.ops[i].col(e)));
                for (int j = 0; j < n; ++j)
                    if (dk(i, j) != cplx(0.0))
                        rhs += dk(i, j) * moved * qa[j];
            }
            res = std::max(res, max_abs(Mat(qa[k] * la[e] - rhs)));
        }
    }
    cp.relation_residual = res;

    Mat span(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(d) * n);
    for (int e = 0; e < d; ++e)
        for (int k = 0; k < n; ++k) {
            Mat p = la[e] * qa[k];
            span.col(e * n + k) = Eigen::Map<const Vec>(p.data(), p.size());
        }
    cp.generated = range_basis(span, tol).cols() == cp.concrete.dim();
    return cp;
}

Element Intertwiner::apply(const Element& b, const Algebra& target) const
{
    if (!found)
        throw invalid_structure("no intertwiner");
    Element out(target);
    for (size_t i = 0; i < perm.size(); ++i)
        out.blk[perm[i]] = unitaries[i] * b.blk[i] * unitaries[i].adjoint();
    return out;
}

Intertwiner intertwine_inclusions(const LinearMap& iota1, const LinearMap& iota2, Rng& rng)
{
    if (!iota1.src.same_shape(iota2.src))
        throw shape_error("inclusions of different algebras");
    Intertwiner out;
    const Algebra& b1 = iota1.tgt;
    const Algebra& b2 = iota2.tgt;
    if (b1.nblocks() != b2.nblocks() || b1.dim() != b2.dim())
        return out;
    IMat l1 = inclusion_matrix(iota1), l2 = inclusion_matrix(iota2);
    const int m = b1.nblocks();

    std::vector<int> perm(m, -1);
    std::vector<bool> used(m, false);
    std::function<bool(int)> match = [&](int i) {
        if (i == m)
            return true;
        for (int p = 0; p < m; ++p) {
            if (used[p] || b1.blocks[i] != b2.blocks[p] || l1.row(i) != l2.row(p))
                continue;
            used[p] = true;
            perm[i] = p;
            if (match(i + 1))
                return true;
            used[p] = false;
        }
        return false;
    };
    if (!match(0))
        return out;

    const Algebra& a = iota1.src;
    std::vector<Element> im1, im2;
    for (int k = 0; k < a.dim(); ++k) {
        im1.push_back(iota1(basis_element(a, k)));
        im2.push_back(iota2(basis_element(a, k)));
    }
    for (int i = 0; i < m; ++i) {
        const int n = b1.blocks[i];
        const Mat id = Mat::Identity(n, n);
        KernelBuilder kb(n * n);
        for (int k = 0; k < a.dim(); ++k)
            kb.add(kron(im1[k].blk[i].transpose(), id) - kron(id, im2[k].blk[perm[i]]));
        if (kb.dim() == 0)
            return out;
        Vec x = kb.basis() * random_complex(kb.dim(), 1, rng);
        Mat xm = Eigen::Map<const Mat>(x.data(), n, n);
        out.unitaries.push_back(polar_unitary(xm));
    }
    out.perm = perm;
    out.found = true;
    for (int k = 0; k < a.dim(); ++k)
        out.residual = std::max(out.residual, distance(out.apply(im1[k], b2), im2[k]));
    return out;
}

ReconstructionReport verify_reconstruction(const Action& act, const LinearMap& iota, const std::optional<Action>& dual,
                                           Rng& rng, std::optional<TraceState> tau_a, double tol)
{
    if (!iota.tgt.same_shape(act.target))
        throw shape_error("inclusion target differs from the acted-on algebra");
    ReconstructionReport rep;
    Subalgebra inv = invariants(act, tol);
    Subalgebra img = image(iota, tol);
    double r = 0.0;
    for (const auto& e : inv.elements())
        r = std::max(r, img.distance_to(e));
    for (const auto& e : img.elements())
        r = std::max(r, inv.distance_to(e));
    rep.invariants_residual = r;
    rep.invariants_match = inv.dim() == img.dim() && r <= std::sqrt(tol);

    if (!dual) {
        rep.note = "no dual action supplied";
        return rep;
    }
    if (!dual->target.same_shape(iota.src)) {
        rep.note = "dual action does not act on the smaller algebra";
        return rep;
    }
    rep.checkable = true;
    CrossedProduct cp = crossed_product(iota.src, *dual, rng, tau_a, tol);
    rep.crossed = cp.B;
    Intertwiner it = intertwine_inclusions(cp.iota, iota, rng);
    rep.blocks_match = it.found;
    rep.intertwiner_residual = it.found ? it.residual : INFINITY;
    if (!it.found)
        rep.note = "crossed product " + cp.B.str() + " does not match " + iota.tgt.str() + " over the inclusion";
    return rep;
}

}  // namespace whopf
