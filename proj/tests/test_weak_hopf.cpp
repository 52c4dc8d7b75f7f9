#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "whopf/weak_hopf.hpp"

using namespace whopf;

namespace {

void check_suite(const WeakHopfAlgebra& w, Verdict expected)
{
    INFO(w.name);
    AxiomSuite s = verify_all(w);
    for (const auto& [name, c] : s.checks) {
        INFO(name);
        CHECK(c.pass);
        CHECK(c.residual < 1e-9);
    }
    CHECK(s.classification.verdict == expected);
    CHECK(s.classification.coherent());
}

}  // namespace

TEST_CASE("finite groups")
{
    CHECK(cyclic_group(5).size() == 5);
    FiniteGroup s3 = symmetric_group(3);
    CHECK(s3.size() == 6);
    CHECK(s3.mul[s3.identity()][4] == 4);
    CHECK(s3.mul[4][s3.inverse(4)] == s3.identity());
    FiniteGroup bad = cyclic_group(3);
    bad.mul[1][1] = 1;
    CHECK_THROWS(validate(bad));
    Groupoid g = pair_groupoid(3);
    CHECK(g.arrows() == 9);
    CHECK_NOTHROW(validate(g));
}

TEST_CASE("group and function algebras are true Hopf algebras")
{
    Rng rng(1);
    check_suite(group_algebra(cyclic_group(2), rng), Verdict::True);
    check_suite(group_algebra(cyclic_group(3), rng), Verdict::True);
    check_suite(group_algebra(symmetric_group(3), rng), Verdict::True);
    check_suite(function_algebra(cyclic_group(2)), Verdict::True);
    check_suite(function_algebra(cyclic_group(3)), Verdict::True);
    check_suite(function_algebra(symmetric_group(3)), Verdict::True);
}

TEST_CASE("group algebra block structure")
{
    Rng rng(2);
    // irreps of S3 have dimensions 1, 1, 2
    std::vector<int> b = group_algebra(symmetric_group(3), rng).Q.blocks;
    std::sort(b.begin(), b.end());
    CHECK(b == std::vector<int>{1, 1, 2});
    CHECK(group_algebra(cyclic_group(3), rng).Q.blocks == std::vector<int>{1, 1, 1});
}

TEST_CASE("pair groupoid algebras are weak")
{
    Rng rng(1);
    for (int n : {2, 3}) {
        WeakHopfAlgebra w = groupoid_algebra(pair_groupoid(n), rng);
        check_suite(w, Verdict::Weak);
        CHECK(w.Q.blocks == std::vector<int>{n});
        // Delta(1) = sum over objects of e_x (x) e_x, each factor of rank one
        CHECK(delta_one_rank(w) == n);
        CHECK(delta_one_rank(w) < w.dim() * w.dim());
    }
}

TEST_CASE("Delta(1) is the unit exactly for true Hopf algebras")
{
    Rng rng(3);
    WeakHopfAlgebra w = group_algebra(symmetric_group(3), rng);
    const int n = 1 + 1 + 2;
    CHECK(delta_one_rank(w) == n * n);
}

TEST_CASE("counital maps")
{
    Rng rng(4);
    WeakHopfAlgebra g = group_algebra(cyclic_group(3), rng);
    Element q = random_element(g.Q, rng);
    cplx eps = (g.counit.m * coords(q))(0);
    CHECK(distance(counital_target(g, q), eps * unit(g.Q)) < 1e-12);
    CHECK(distance(counital_source(g, q), eps * unit(g.Q)) < 1e-12);

    WeakHopfAlgebra p = groupoid_algebra(pair_groupoid(2), rng);
    LinearMap et = counital_target_map(p);
    // the target counital subalgebra is the diagonal, so eps_t is idempotent with rank 2
    CHECK(max_abs(Mat(et.m * et.m - et.m)) < 1e-12);
    CHECK(range_basis(et.m).cols() == 2);
}

TEST_CASE("Haar integral and antipode square")
{
    Rng rng(5);
    for (const WeakHopfAlgebra& w :
         {group_algebra(symmetric_group(3), rng), function_algebra(cyclic_group(3)),
          groupoid_algebra(pair_groupoid(3), rng)}) {
        INFO(w.name);
        auto h = haar_integral(w);
        REQUIRE(h.has_value());
        CHECK(distance(counital_target(w, *h), unit(w.Q)) < 1e-9);
        Element q = random_element(w.Q, rng);
        CHECK(distance(q * *h, counital_target(w, q) * *h) < 1e-9);
        auto g = antipode_square_conjugator(w, rng);
        REQUIRE(g.has_value());
        CHECK(g->residual < 1e-9);
    }
}

TEST_CASE("Haar element of a group algebra is the group average")
{
    Rng rng(6);
    Transported t = group_algebra_transported(cyclic_group(3), rng);
    auto h = haar_integral(t.w);
    REQUIRE(h.has_value());
    Vec avg = Vec::Constant(3, 1.0 / 3.0);
    CHECK(max_abs(Vec(t.iso * avg - coords(*h))) < 1e-10);
}

TEST_CASE("perturbed structure maps are rejected")
{
    Rng rng(7);
    WeakHopfAlgebra w = group_algebra(cyclic_group(2), rng);
    WeakHopfAlgebra bad = w;
    bad.coproduct.m(0, 1) += 0.01;
    CHECK_FALSE((verify_coassociativity(bad).pass && verify_coproduct_star_hom(bad).pass()));
    CHECK(classify(bad).verdict == Verdict::Invalid);

    WeakHopfAlgebra s = w;
    s.antipode.m *= 2.0;
    CHECK_FALSE((verify_antipode(s).pass() && verify_weak_axioms(s).pass()));
    CHECK(classify(s).verdict == Verdict::Invalid);

    WeakHopfAlgebra e = w;
    e.counit.m *= -1.0;
    CHECK_FALSE(verify_counit_law(e).pass);
}

TEST_CASE("make_weak_hopf checks shapes")
{
    Algebra a({1, 1});
    CHECK_THROWS_AS(make_weak_hopf("x", a, Mat::Zero(3, 2), Vec::Zero(2), Mat::Identity(2, 2)), shape_error);
    CHECK_THROWS_AS(make_weak_hopf("x", a, Mat::Zero(4, 2), Vec::Zero(3), Mat::Identity(2, 2)), shape_error);
}
