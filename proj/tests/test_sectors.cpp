#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "whopf/sectors.hpp"

#include <cmath>
#include <limits>

using namespace whopf;

namespace {

const double phi = (1 + std::sqrt(5.0)) / 2;

// sum_{a,b} m_a m_b N(a,b,s) read off the fusion matrices
std::vector<long long> square_by_matrices(const FusionRing& fr, const std::vector<long long>& m)
{
    std::vector<long long> out(fr.rank(), 0);
    for (int a = 0; a < fr.rank(); ++a) {
        RMat na = fr.fusion_matrix(a);
        for (int b = 0; b < fr.rank(); ++b)
            for (int s = 0; s < fr.rank(); ++s)
                out[s] += m[a] * m[b] * std::llround(na(b, s));
    }
    return out;
}

}  // namespace

TEST_CASE("stock rings satisfy the fusion axioms")
{
    for (const FusionRing& fr :
         {fibonacci_ring(), ising_ring(), cyclic_ring(2), cyclic_ring(3), cyclic_ring(5), trivial_ring(),
          rep_s3_ring()}) {
        INFO(fr.name);
        CHECK(verify_fusion(fr).pass());
        CHECK_NOTHROW(require_valid(fr));
        QuantumDimensions q = quantum_dimensions(fr);
        CHECK(q.consistency < 1e-9);
        CHECK(frobenius_identity_check(fr, q.d) < 1e-9);
    }
}

TEST_CASE("Fibonacci sectors")
{
    FusionRing fr = fibonacci_ring();
    // (a + b tau)(c + d tau) with tau^2 = 1 + tau
    auto mul = [](std::pair<long long, long long> x, std::pair<long long, long long> y) {
        return std::pair<long long, long long>{x.first * y.first + x.second * y.second,
                                               x.first * y.second + x.second * y.first + x.second * y.second};
    };
    auto sq = mul({1, 1}, {1, 1});
    SectorData s = sigma_oplus(fr);
    CHECK(s.n == std::vector<long long>{sq.first, sq.second});
    CHECK(s.n == std::vector<long long>{2, 3});
    CHECK(s.n == square_by_matrices(fr, s.sigma));
    CHECK(s.dim_q == 13);
    CHECK(quantum_dimensions(fr).d[1] == doctest::Approx(phi).epsilon(1e-12));
    CHECK(std::abs(s.index - std::pow(phi, 4)) < 1e-9);
    CHECK(s.global_dim == doctest::Approx(1 + phi * phi).epsilon(1e-12));
    CHECK_THROWS_AS(sigma_reg(fr), invalid_structure);
}

TEST_CASE("Ising sectors")
{
    FusionRing fr = ising_ring();
    // hand table on labels 1, sigma, psi
    const long long t[3][3][3] = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
                                  {{0, 1, 0}, {1, 0, 1}, {0, 1, 0}},
                                  {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}};
    std::vector<long long> oracle(3, 0);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                oracle[c] += t[a][b][c];
    SectorData s = sigma_oplus(fr);
    CHECK(s.n == oracle);
    CHECK(s.n == std::vector<long long>{3, 4, 3});
    CHECK(s.n == square_by_matrices(fr, s.sigma));
    CHECK(s.dim_q == 34);
    CHECK(std::abs(s.index - std::pow(2 + std::sqrt(2.0), 2)) < 1e-9);
}

TEST_CASE("regular sigma")
{
    SectorData r = sigma_reg(cyclic_ring(2));
    SectorData o = sigma_oplus(cyclic_ring(2));
    CHECK(r.sigma == o.sigma);
    CHECK(r.z_weights == std::vector<double>{1.0, 1.0});

    SectorData s3 = sigma_reg(rep_s3_ring());
    CHECK(s3.sigma == std::vector<long long>{1, 1, 2});
    // sigma_reg^2 = d(sigma_reg) sigma_reg with d = 6
    CHECK(s3.n == std::vector<long long>{6, 6, 12});
    CHECK(s3.dim_q == 216);
    CHECK(s3.n == square_by_matrices(rep_s3_ring(), s3.sigma));
}

TEST_CASE("depth-two criterion")
{
    for (const FusionRing& fr : {fibonacci_ring(), ising_ring(), cyclic_ring(2), cyclic_ring(3), trivial_ring(),
                                 rep_s3_ring()})
        CHECK(depth_two_test(fr, sigma_oplus(fr).sigma).pass);

    FusionRing fib = fibonacci_ring();
    DepthTwoResult d = depth_two_test(fib, {0, 1});
    CHECK_FALSE(d.pass);
    REQUIRE(d.witness.has_value());
    CHECK(fib.labels[*d.witness] == "1");
    // tau^3 = 1 + 2 tau
    CHECK(d.triple == std::vector<long long>{1, 2});

    CHECK(depth_two_test(ising_ring(), {0, 1, 0}).pass);
}

TEST_CASE("defective rings are rejected with a witness")
{
    FusionRing z = cyclic_ring(2);
    z.N(1, 0, 0) = 1;
    FusionReport r = verify_fusion(z);
    CHECK_FALSE(r.pass());
    REQUIRE(r.first_failure() != nullptr);
    CHECK(r.first_failure()->axiom == "unit");
    CHECK_FALSE(r.first_failure()->witness.empty());
    CHECK_THROWS_AS(require_valid(z), invalid_structure);

    FusionRing bad_dual = cyclic_ring(3);
    bad_dual.conj = {0, 1, 2};
    CHECK_FALSE(verify_fusion(bad_dual).pass());
}

TEST_CASE("integer overflow is detected")
{
    const long long big = std::numeric_limits<long long>::max() / 2;
    CHECK_THROWS(sector_data(cyclic_ring(2), {big, big}));
    CHECK_THROWS(sector_data(cyclic_ring(2), {-1, 1}));
}

TEST_CASE("conjugate and fuse")
{
    FusionRing z3 = cyclic_ring(3);
    CHECK(conjugate(z3, {0, 1, 0}) == std::vector<long long>{0, 0, 1});
    CHECK(fuse(z3, {0, 1, 0}, {0, 1, 0}) == std::vector<long long>{0, 0, 1});
    CHECK(symmetry_dimension(z3, {1, 1, 1}) == 27);
}
