#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "whopf/actions.hpp"

using namespace whopf;

namespace {

struct Fixture {
    Rng rng{1};
    Transported z2 = group_algebra_transported(cyclic_group(2), rng);
    Algebra m2 = full_matrix(2);
    Algebra c2 = Algebra({1, 1});
    Action conj;  // Z2 on Mat2 by Ad diag(1, -1)
    Action swap;  // Z2 on C2 by exchanging the points

    Fixture()
    {
        Element u(m2);
        u.blk[0] = Mat::Identity(2, 2);
        u.blk[0](1, 1) = -1;
        conj = group_action(z2, m2, {Mat::Identity(4, 4), left_mult(u) * right_mult(u)});
        Mat sw = Mat::Zero(2, 2);
        sw(0, 1) = sw(1, 0) = 1;
        swap = group_action(z2, c2, {Mat::Identity(2, 2), sw});
    }
};

}  // namespace

TEST_CASE_FIXTURE(Fixture, "conjugation action is a module algebra")
{
    ActionReport r = verify_action(conj);
    CHECK(r.pass());
    CHECK(r.module_algebra.residual < 1e-12);
    CHECK(verify_action(swap).pass());
    CHECK(verify_action(trivial_action(m2)).pass());
}

TEST_CASE_FIXTURE(Fixture, "invariants of conjugation by diag(1,-1) are the diagonal")
{
    Subalgebra inv = invariants(conj);
    CHECK(inv.dim() == 2);
    CHECK(inv.contains(matrix_unit(m2, 0, 0, 0)));
    CHECK(inv.contains(matrix_unit(m2, 0, 1, 1)));
    CHECK_FALSE(inv.contains(matrix_unit(m2, 0, 0, 1)));
    CHECK(invariants(swap).dim() == 1);
    CHECK(invariants(trivial_action(m2)).dim() == 4);
}

TEST_CASE_FIXTURE(Fixture, "isotypic decomposition")
{
    IsotypicDecomposition iso = isotypic_decomposition(conj);
    CHECK(iso.total_dim() == 4);
    CHECK(iso.multiplicity == std::vector<int>{2, 2});
    CHECK(iso.trivial_dim() == 2);
    CHECK(iso.invariant_count() == invariants(conj).dim());
}

TEST_CASE_FIXTURE(Fixture, "averaging is the diagonal projection")
{
    LinearMap e = averaging_expectation(conj);
    Mat oracle = Mat::Zero(4, 4);
    oracle(0, 0) = oracle(3, 3) = 1;
    CHECK(max_abs(Mat(e.m - oracle)) < 1e-12);
}

TEST_CASE_FIXTURE(Fixture, "crossed products")
{
    // the action is inner, so Mat2 x| Z2 = Mat2 (x) C[Z2]
    CrossedProduct cp = crossed_product(m2, conj, rng);
    CHECK(cp.generated);
    CHECK(cp.B.blocks == std::vector<int>{2, 2});
    CHECK(cp.relation_residual < 1e-10);
    // a free transitive action on two points gives Mat2
    CrossedProduct cp2 = crossed_product(c2, swap, rng);
    CHECK(cp2.B.blocks == std::vector<int>{2});
}

TEST_CASE_FIXTURE(Fixture, "reconstruction of C2 inside Mat2")
{
    Mat em = Mat::Zero(4, 2);
    em(0, 0) = 1;
    em(3, 1) = 1;
    LinearMap iota(c2, m2, em);
    ReconstructionReport rr = verify_reconstruction(conj, iota, swap, rng);
    CHECK(rr.checkable);
    CHECK(rr.invariants_match);
    CHECK(rr.blocks_match);
    CHECK(rr.intertwiner_residual < 1e-8);
    CHECK(rr.pass());
}

TEST_CASE_FIXTURE(Fixture, "broken actions are caught")
{
    Mat scaled = 2.0 * Mat::Identity(4, 4);
    Action bad = group_action(z2, m2, {Mat::Identity(4, 4), scaled});
    ActionReport r = verify_action(bad);
    CHECK_FALSE(r.pass());
    CHECK_FALSE(r.homomorphism.pass);
    CHECK_THROWS_AS(make_action(z2.w, m2, {Mat::Identity(4, 4)}), shape_error);
}

TEST_CASE_FIXTURE(Fixture, "inclusion intertwiner")
{
    Mat em = Mat::Zero(4, 2);
    em(0, 0) = 1;
    em(3, 1) = 1;
    Mat em2 = Mat::Zero(4, 2);
    em2(3, 0) = 1;
    em2(0, 1) = 1;
    Intertwiner it = intertwine_inclusions(LinearMap(c2, m2, em), LinearMap(c2, m2, em2), rng);
    CHECK(it.found);
    CHECK(it.residual < 1e-10);
}
