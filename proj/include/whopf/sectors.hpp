#pragma once

#include "whopf/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace whopf {

// Label 0 is the unit. N(a, b, c) is the multiplicity of c in a x b.
struct FusionRing {
    std::string name;
    std::vector<std::string> labels;
    std::vector<int> conj;
    std::vector<long long> n;  // rank^3 entries, a-major

    FusionRing() = default;
    FusionRing(std::string nm, std::vector<std::string> lbl, std::vector<int> dual);

    int rank() const { return static_cast<int>(labels.size()); }
    long long N(int a, int b, int c) const { return n[flat(a, b, c)]; }
    long long& N(int a, int b, int c) { return n[flat(a, b, c)]; }
    std::optional<int> find(const std::string& label) const;
    // rows b, columns c: N(s, b, c)
    RMat fusion_matrix(int s) const;

private:
    size_t flat(int a, int b, int c) const;
};

FusionRing fibonacci_ring();
FusionRing ising_ring();
FusionRing cyclic_ring(int n);  // Z_n
FusionRing trivial_ring();
FusionRing rep_s3_ring();       // representations of S3: 1, sign, 2-dim

struct FusionCheck {
    std::string axiom;
    bool pass = true;
    std::vector<int> witness;  // label indices of the first violation
};

struct FusionReport {
    std::vector<FusionCheck> checks;  // shape, unit, associativity, frobenius, duality
    bool pass() const;
    const FusionCheck* first_failure() const;
};

FusionReport verify_fusion(const FusionRing& fr);
// throws invalid_structure naming the violated axiom and its witness
void require_valid(const FusionRing& fr);
std::string describe(const FusionRing& fr, const FusionCheck& c);

struct QuantumDimensions {
    std::vector<double> d;
    double consistency = 0.0;  // max |sum_c N(a,b,c) d_c - d_a d_b|
};
QuantumDimensions quantum_dimensions(const FusionRing& fr);

// the multiplicity vector of sigma-bar
std::vector<long long> conjugate(const FusionRing& fr, const std::vector<long long>& m);
// multiplicities of x times y
std::vector<long long> fuse(const FusionRing& fr, const std::vector<long long>& x, const std::vector<long long>& y);

struct SectorData {
    std::string kind;                // oplus, reg or custom
    std::vector<double> dims;
    std::vector<long long> sigma;    // multiplicity of each label in sigma
    std::vector<long long> n;        // multiplicity of each label in sigma^2
    std::vector<double> z_weights;   // sqrt(sigma_s / d_s)
    double d_sigma = 0.0;
    double index = 0.0;              // d_sigma^2
    double global_dim = 0.0;         // sum d_s^2
    long long dim_q = 0;             // sum n_s^2
};

SectorData sector_data(const FusionRing& fr, const std::vector<long long>& sigma, const std::string& kind = "custom");
SectorData sigma_oplus(const FusionRing& fr);
SectorData sigma_reg(const FusionRing& fr);  // requires integral dimensions
bool integral_dimensions(const QuantumDimensions& q, double tol = 1e-9);

long long symmetry_dimension(const FusionRing& fr, const std::vector<long long>& sigma);

struct DepthTwoResult {
    bool pass = true;
    std::optional<int> witness;      // a label of sigma sigma-bar sigma outside supp(sigma)
    std::vector<long long> triple;   // sigma sigma-bar sigma
};
DepthTwoResult depth_two_test(const FusionRing& fr, const std::vector<long long>& sigma);

double frobenius_identity_check(const FusionRing& fr, const std::vector<double>& dims);

struct SectorReport {
    std::string ring;
    std::vector<std::string> labels;
    SectorData data;
    double dims_consistency = 0.0;
    double frobenius_residual = 0.0;
    DepthTwoResult depth_two;
    std::optional<SectorData> reg;   // integral rings only
    double index_ratio = 0.0;        // index(reg) / index(sigma)
    double dim_ratio = 0.0;          // dim Q(reg) / dim Q(sigma)
};
SectorReport report(const FusionRing& fr, const SectorData& data);

}  // namespace whopf
