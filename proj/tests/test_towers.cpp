#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "whopf/towers.hpp"

#include <cmath>

using namespace whopf;

namespace {

IMat row(std::initializer_list<int> v)
{
    IMat m(1, static_cast<Eigen::Index>(v.size()));
    int j = 0;
    for (int x : v)
        m(0, j++) = x;
    return m;
}

// sum of squared entries of the inclusion matrix of A in L_k, by alternating products
std::vector<long long> paths_oracle(const IMat& l, int levels)
{
    std::vector<long long> out;
    Eigen::MatrixXi m = Eigen::MatrixXi::Identity(l.cols(), l.cols());
    for (int k = 0; k <= levels; ++k) {
        out.push_back(m.cwiseProduct(m).sum());
        m = (k % 2 == 0) ? Eigen::MatrixXi(l * m) : Eigen::MatrixXi(l.transpose() * m);
    }
    return out;
}

}  // namespace

TEST_CASE("Markov index and path counting")
{
    for (const auto& [a, l] : std::vector<std::pair<std::vector<int>, IMat>>{
             {{1, 1}, row({1, 1})},
             {{1}, (IMat(2, 1) << 1, 1).finished()},
             {{1, 1}, row({2, 1})},
             {{1, 1}, (IMat(2, 2) << 1, 1, 1, 0).finished()},
             {{1, 1, 1}, (IMat(2, 3) << 1, 1, 0, 0, 1, 1).finished()}}) {
        Inclusion inc = standard_inclusion(a, l);
        CHECK(commutant_dimensions(l, 4) == paths_oracle(l, 4));
        // index is the squared spectral norm of the inclusion matrix
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(l.cast<double>());
        const double s = svd.singularValues()(0);
        CHECK(inc.index == doctest::Approx(s * s).epsilon(1e-10));
    }
}

TEST_CASE("depth")
{
    CHECK(depth(row({1, 1})) == 2);
    CHECK(depth(row({2, 1})) == 2);
    CHECK(depth((IMat(2, 2) << 1, 1, 1, 0).finished()) == 3);
    CHECK(is_depth_two(standard_inclusion({1, 1}, row({1, 1}))));
    CHECK_FALSE(is_depth_two(standard_inclusion({1, 1}, (IMat(2, 2) << 1, 1, 1, 0).finished())));
    CHECK(is_connected(row({1, 1})));
    CHECK_FALSE(is_connected((IMat(2, 2) << 1, 0, 0, 1).finished()));
}

TEST_CASE("make_inclusion validates the embedding")
{
    Algebra c2({1, 1}), m2 = full_matrix(2);
    Mat em = Mat::Zero(4, 2);
    em(0, 0) = 1;
    em(3, 1) = 1;
    Inclusion inc = make_inclusion(LinearMap(c2, m2, em));
    CHECK(inc.lambda == row({1, 1}));
    CHECK(inc.index == doctest::Approx(2.0).epsilon(1e-12));
    Mat not_unital = Mat::Zero(4, 2);
    not_unital(0, 0) = 1;
    CHECK_THROWS_AS(make_inclusion(LinearMap(c2, m2, not_unital)), invalid_structure);
}

TEST_CASE("basic construction of C2 in Mat2")
{
    Inclusion inc = standard_inclusion({1, 1}, row({1, 1}));
    BasicConstruction bc = basic_construction(inc);
    CHECK(bc.upper.B.blocks == std::vector<int>{2, 2});
    CHECK(bc.markov_relation.pass);
    CHECK(bc.trace_relation.pass);
    CHECK(is_projection(bc.e));
    CHECK(std::abs(bc.upper.trace(bc.e) - 1.0 / inc.index) < 1e-12);

    TowerContext t = build_tower(inc);
    REQUIRE(t.level.size() == 4);
    CHECK(t.level[3].blocks == std::vector<int>{4});
    std::vector<int> numeric = commutant_dimensions_numeric(t);
    std::vector<long long> exact = commutant_dimensions(inc.lambda, 3);
    REQUIRE(numeric.size() == exact.size());
    for (size_t k = 0; k < exact.size(); ++k)
        CHECK(numeric[k] == exact[k]);
}

TEST_CASE("extraction from C2 in Mat2")
{
    Rng rng(7);
    Inclusion inc = standard_inclusion({1, 1}, row({1, 1}));
    ExtractionResult res = extract_weak_hopf(inc, rng);
    CHECK(res.Q.dim() == 4);
    CHECK(res.Qhat.dim() == 4);
    CHECK(verify_all(res.Q).all_pass());
    CHECK(verify_all(res.Qhat).all_pass());
    CHECK(classify(res.Q).verdict == Verdict::Weak);
    CHECK(classify(res.Qhat).verdict == Verdict::Weak);
    CHECK(verify_action(res.action).pass());

    Subalgebra inv = invariants(res.action);
    Subalgebra a = image(inc.embed);
    REQUIRE(inv.dim() == 2);
    for (int k = 0; k < 2; ++k) {
        CHECK(a.distance_to(inv.element(k)) < 1e-9);
        CHECK(inv.distance_to(a.element(k)) < 1e-9);
    }

    MinimalExpectation me = minimal_expectation(res);
    CHECK(me.residual < 1e-9);
    LinearMap tr = expectation_onto(inc.embed, inc.trace);
    CHECK(max_abs(Mat(me.averaging.m - inc.embed.m * tr.m)) < 1e-9);

    InnerPartReport ip = inner_part(res);
    CHECK(ip.nontrivial);
    CHECK(ip.pass());

    Action adj = solve_adjoint_action(res.pair);
    CHECK(verify_adjoint_action(res.pair, adj).residual < 1e-9);

    ReconstructionReport rr = reconstruct(res, rng);
    CHECK(rr.pass());
    CHECK(rr.crossed.blocks == std::vector<int>{2});
}

TEST_CASE("extraction on other depth-2 inclusions")
{
    Rng rng(8);
    SUBCASE("C3 in Mat3")
    {
        ExtractionResult res = extract_weak_hopf(standard_inclusion({1, 1, 1}, row({1, 1, 1})), rng);
        CHECK(res.Q.dim() == 9);
        CHECK(verify_all(res.Q).all_pass());
        CHECK(classify(res.Q).coherent());
        CHECK(invariants(res.action).dim() == 3);
        CHECK(reconstruct(res, rng).pass());
    }
    SUBCASE("C + Mat2 in Mat3, dressed and bare")
    {
        Inclusion inc = standard_inclusion({1, 2}, row({1, 1}));
        ExtractionResult res = extract_weak_hopf(inc, rng);
        CHECK(verify_all(res.Q).all_pass());
        CHECK(invariants(res.action).dim() == 5);
        ExtractOptions bare;
        bare.dress = false;
        ExtractionResult raw = extract_weak_hopf(inc, rng, bare);
        CHECK(classify(raw.Q).verdict == Verdict::Invalid);
    }
    SUBCASE("unequal multiplicities")
    {
        ExtractionResult res = extract_weak_hopf(standard_inclusion({1, 1}, row({2, 1})), rng);
        CHECK(res.Q.dim() == res.Qhat.dim());
        CHECK(res.Q.dim() == paths_oracle(row({2, 1}), 3)[2]);
        CHECK(verify_all(res.Q).all_pass());
        IsotypicDecomposition iso = isotypic_decomposition(res.action);
        CHECK(iso.invariant_count() == invariants(res.action).dim());
    }
    SUBCASE("factor inclusion is a true Hopf algebra")
    {
        ExtractionResult res = extract_weak_hopf(standard_inclusion({2}, IMat::Constant(1, 1, 1)), rng);
        CHECK(classify(res.Q).verdict == Verdict::True);
    }
}

TEST_CASE("depth above two is refused")
{
    Rng rng(9);
    Inclusion inc = standard_inclusion({1, 1}, (IMat(2, 2) << 1, 1, 1, 0).finished());
    CHECK_THROWS_AS(extract_weak_hopf(inc, rng), depth_error);
}

TEST_CASE("Q-system of the inclusion")
{
    QSystemReport r = verify_qsystem(qsystem_from_inclusion(standard_inclusion({1, 1}, row({1, 1}))));
    CHECK(r.pass());
    QSystemReport r3 = verify_qsystem(qsystem_from_inclusion(standard_inclusion({1, 2}, row({1, 1}))));
    CHECK(r3.pass());
    CHECK(verify_qsystem(trivial_qsystem(full_matrix(2))).pass());
}

TEST_CASE("tunnel")
{
    auto t = tunnel(standard_inclusion({1, 1}, row({1, 1})));
    REQUIRE(t.has_value());
    CHECK(t->B.blocks == std::vector<int>{1, 1});
    CHECK(t->A.dim() == 1);
}
