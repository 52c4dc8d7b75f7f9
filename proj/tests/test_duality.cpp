#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "whopf/duality.hpp"

using namespace whopf;

namespace {

std::vector<int> sorted_blocks(const WeakHopfAlgebra& w)
{
    std::vector<int> b = w.Q.blocks;
    std::sort(b.begin(), b.end());
    return b;
}

}  // namespace

TEST_CASE("dual of the Z2 group algebra is the Z2 function algebra")
{
    Rng rng(3);
    WeakHopfAlgebra g = group_algebra(cyclic_group(2), rng);
    DualPair p = dualize(g, rng);
    CHECK(p.dual.dim() == 2);
    CHECK(p.dual.Q.blocks == std::vector<int>{1, 1});
    CHECK(classify(p.dual).verdict == Verdict::True);
    CHECK(verify_all(p.dual).all_pass());
    CHECK(algebra_level_self_duality(g, rng).pass);
}

TEST_CASE("dual block structures")
{
    Rng rng(4);
    // C[S3]^ is the commutative algebra of functions on S3
    DualPair gs3 = dualize(group_algebra(symmetric_group(3), rng), rng);
    CHECK(sorted_blocks(gs3.dual) == std::vector<int>(6, 1));
    CHECK_FALSE(algebra_level_self_duality(group_algebra(symmetric_group(3), rng), rng).pass);
    // C(S3)^ is the group algebra, irreps 1, 1, 2
    DualPair fs3 = dualize(function_algebra(symmetric_group(3)), rng);
    CHECK(sorted_blocks(fs3.dual) == std::vector<int>{1, 1, 2});
    // the pair groupoid algebra Mat_n has the commutative dual C^{n^2}
    DualPair pg = dualize(groupoid_algebra(pair_groupoid(2), rng), rng);
    CHECK(sorted_blocks(pg.dual) == std::vector<int>(4, 1));
    CHECK(classify(pg.dual).verdict == Verdict::Weak);
}

TEST_CASE("dimension, double dual and adjoint action on every stock algebra")
{
    Rng rng(5);
    for (const WeakHopfAlgebra& w :
         {group_algebra(cyclic_group(2), rng), group_algebra(cyclic_group(3), rng),
          group_algebra(symmetric_group(3), rng), function_algebra(cyclic_group(2)),
          function_algebra(cyclic_group(3)), function_algebra(symmetric_group(3)),
          groupoid_algebra(pair_groupoid(2), rng), groupoid_algebra(pair_groupoid(3), rng)}) {
        INFO(w.name);
        DualPair p = dualize(w, rng);
        CHECK(p.dual.dim() == w.dim());
        CHECK(std::isfinite(p.condition));
        CHECK(verify_all(p.dual).all_pass());
        CHECK(classify(p.dual).coherent());
        CHECK(classify(p.dual).verdict == classify(w).verdict);
        DoubleDualReport dd = double_dual_check(w, rng);
        CHECK(dd.pass());
        CHECK(dd.residual() < 1e-8);
        Action adj = solve_adjoint_action(p);
        Check c = verify_adjoint_action(p, adj);
        CHECK(c.pass);
        CHECK(c.residual < 1e-9);
    }
}

TEST_CASE("adjoint action rule checked by hand on the Z2 pair")
{
    Rng rng(6);
    DualPair p = dualize(group_algebra(cyclic_group(2), rng), rng);
    Action adj = solve_adjoint_action(p);
    // <q |> qhat, r> = <qhat, r q>, the pairing read as a bilinear form on coordinates
    double worst = 0.0;
    for (int q = 0; q < 2; ++q)
        for (int a = 0; a < 2; ++a)
            for (int r = 0; r < 2; ++r) {
                Element eq = basis_element(p.primal.Q, q), er = basis_element(p.primal.Q, r);
                Vec moved = adj.rep(coords(eq)) * Vec::Unit(2, a);
                cplx lhs = (moved.transpose() * p.pairing * coords(er))(0);
                cplx rhs = (Vec::Unit(2, a).transpose() * p.pairing * coords(er * eq))(0);
                worst = std::max(worst, std::abs(lhs - rhs));
            }
    CHECK(worst < 1e-9);
}

TEST_CASE("dualize rejects invalid input")
{
    Rng rng(7);
    WeakHopfAlgebra w = group_algebra(cyclic_group(2), rng);
    w.coproduct.m(0, 0) += 0.5;
    CHECK_THROWS_AS(dualize(w, rng), invalid_structure);
}
