#include "whopf/duality.hpp"

#include "worst.hpp"

#include <algorithm>
#include <cmath>

namespace whopf {

using detail::idx;
using detail::Worst;

DualPair dualize(const WeakHopfAlgebra& w, Rng& rng, double tol)
{
    const Algebra& q = w.Q;
    const int d = q.dim();
    if (min_singular_value(w.antipode.m) < 1e-10)
        throw invalid_structure("antipode is not invertible");

    Mat dk = w.delta_kron();
    StructureConstants qsc = structure_constants(q);
    Mat jq = star_matrix(q);

    // abstract basis f^k of the dual, f^k(e_i) = delta_ki
    AbstractHopfData h;
    h.sc.n = d;
    for (int a = 0; a < d; ++a) {
        Mat l(d, d);
        for (int k = 0; k < d; ++k)
            for (int b = 0; b < d; ++b)
                l(k, b) = dk(a * d + b, k);
        h.sc.L.push_back(l);
    }
    // (f^k)*(e_a) = conj f^k(S(e_a)*)
    h.sc.star = Mat(d, d);
    for (int a = 0; a < d; ++a) {
        Vec s = jq * w.antipode.m.col(a).conjugate();
        for (int k = 0; k < d; ++k)
            h.sc.star(a, k) = std::conj(s(k));
    }
    if (max_abs(Mat(h.sc.star * h.sc.star.conjugate() - Mat::Identity(d, d))) > std::sqrt(tol))
        throw invalid_structure("dual star is not involutive; input is not a weak C* Hopf algebra");

    h.delta = Mat::Zero(d * d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            h.delta.row(a * d + b) = qsc.L[a].col(b).transpose();
    h.counit = coords(unit(q));
    h.antipode = w.antipode.m.transpose();

    Transported t;
    try {
        t = from_abstract("dual of " + w.name, h, rng, tol);
    } catch (const invalid_structure& e) {
        throw invalid_structure(std::string("input is not a weak C* Hopf algebra: ") + e.what());
    }
    DualPair p;
    p.primal = w;
    p.dual = t.w;
    p.pairing = t.inv.transpose();
    p.condition = condition_number(p.pairing);
    return p;
}

double DoubleDualReport::residual() const
{
    return std::max({multiplicative.residual, star.residual, coproduct.residual, counit.residual, antipode.residual});
}

DoubleDualReport double_dual_check(const WeakHopfAlgebra& w, Rng& rng, double tol)
{
    DualPair p1 = dualize(w, rng);
    DualPair p2 = dualize(p1.dual, rng);
    const WeakHopfAlgebra& w2 = p2.dual;
    const int d = w.dim();

    // ev_q(qhat_a) = <qhat_a, q>; abstract coords of ev_{e_i} are pairing column i
    Mat iso2 = p2.pairing.transpose().inverse();
    Mat c = iso2 * p1.pairing;
    DoubleDualReport r;
    r.iso = LinearMap(w.Q, w2.Q, c);

    StructureConstants s1 = structure_constants(w.Q), s2 = structure_constants(w2.Q);
    {
        Worst worst;
        for (int k = 0; k < d; ++k)
            worst.see(max_abs(Mat(c * s1.L[k] - s2.left(c.col(k)) * c)), [&] { return idx("q", k); });
        worst.see(max_abs(Vec(c * coords(unit(w.Q)) - coords(unit(w2.Q)))), [] { return std::string("unit"); });
        r.multiplicative = worst.result(tol);
    }
    {
        Worst worst;
        worst.see(max_abs(Mat(c * s1.star - s2.star * c.conjugate())), [] { return std::string("star"); });
        r.star = worst.result(tol);
    }
    {
        Worst worst;
        worst.see(max_abs(Mat(w2.delta_kron() * c - kron(c, c) * w.delta_kron())), [] { return std::string("delta"); });
        r.coproduct = worst.result(tol);
    }
    {
        Worst worst;
        worst.see(max_abs(Mat(w2.counit.m * c - w.counit.m)), [] { return std::string("counit"); });
        r.counit = worst.result(tol);
    }
    {
        Worst worst;
        worst.see(max_abs(Mat(w2.antipode.m * c - c * w.antipode.m)), [] { return std::string("antipode"); });
        r.antipode = worst.result(tol);
    }
    return r;
}

Action solve_adjoint_action(const DualPair& pair)
{
    const Algebra& q = pair.primal.Q;
    const int d = q.dim();
    if (min_singular_value(pair.pairing) < 1e-10)
        throw invalid_structure("pairing is degenerate");
    Mat pt = pair.pairing.transpose();
    Eigen::PartialPivLU<Mat> lu(pt);
    std::vector<Mat> ops;
    for (int k = 0; k < d; ++k) {
        Mat rk = right_mult(basis_element(q, k));
        ops.push_back(lu.solve(Mat(rk.transpose() * pt)));
    }
    return make_action(pair.primal, pair.dual.Q, std::move(ops));
}

Check verify_adjoint_action(const DualPair& pair, const Action& act, double tol)
{
    const Algebra& q = pair.primal.Q;
    const int d = q.dim();
    if (act.symmetry.dim() != d || !act.target.same_shape(pair.dual.Q))
        throw shape_error("action is not of the primal on the dual");
    Worst worst;
    const Mat& p = pair.pairing;
    for (int k = 0; k < d; ++k) {
        // rows a, columns i: <q_k |> qhat_a, q_i> and <qhat_a, q_i q_k>
        Mat lhs = (p.transpose() * act.ops[k]).transpose();
        Mat rhs = p * right_mult(basis_element(q, k));
        for (int a = 0; a < d; ++a)
            for (int i = 0; i < d; ++i)
                worst.see(std::abs(lhs(a, i) - rhs(a, i)), [&] { return idx("q", k, "qhat", a) + "," + idx("p", i); });
    }
    return worst.result(tol);
}

SelfDualityReport algebra_level_self_duality(const WeakHopfAlgebra& w, Rng& rng, double tol)
{
    DualPair p = dualize(w, rng, tol);
    SelfDualityReport r;
    r.primal_blocks = w.Q.blocks;
    r.dual_blocks = p.dual.Q.blocks;
    std::sort(r.primal_blocks.begin(), r.primal_blocks.end());
    std::sort(r.dual_blocks.begin(), r.dual_blocks.end());
    r.pass = r.primal_blocks == r.dual_blocks;
    return r;
}

}  // namespace whopf
