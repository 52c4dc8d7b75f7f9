#pragma once

#include "whopf/duality.hpp"

#include <optional>
#include <string>
#include <vector>

namespace whopf {

// unital inclusion A -> B with its Markov trace
struct Inclusion {
    Algebra A;
    Algebra B;
    LinearMap embed;
    IMat lambda;        // rows: blocks of B, columns: blocks of A
    TraceState trace;   // Markov trace on B
    TraceState trace_a; // its restriction to A
    double index = 1.0;
};

bool is_connected(const IMat& lambda);

struct MarkovWeights {
    double index = 1.0;
    std::vector<double> b, a;  // trace of a minimal projection per block
};
MarkovWeights markov_weights(const IMat& lambda, const std::vector<int>& b_sizes);

// checks the embedding is a unital *-homomorphism, reads off the inclusion matrix and the Markov trace
Inclusion make_inclusion(const LinearMap& embed, double tol = 1e-9);
// block-diagonal embedding with the given multiplicities, A blocks laid out in order
LinearMap standard_embedding(const Algebra& a, const Algebra& b, const IMat& lambda);
Inclusion standard_inclusion(const std::vector<int>& a_blocks, const IMat& lambda);

double index(const Inclusion& inc);

// trace-preserving conditional expectation onto the image of embed, in source coordinates
LinearMap expectation_onto(const LinearMap& embed, const TraceState& tau);

struct BasicConstruction {
    Inclusion upper;  // B inside B2
    Element e;        // Jones projection in B2
    Check markov_relation;  // e b e = E_A(b) e
    Check trace_relation;   // tau(e b) = tau(b) / index
    bool reflected = false; // inclusion matrix of B in B2 is the transpose
};
BasicConstruction basic_construction(const Inclusion& inc, double tol = 1e-9);

// A = L0, B = L1, B2 = L2, B3 = L3
struct TowerContext {
    std::vector<Algebra> level;
    std::vector<LinearMap> up;      // up[k]: L_k -> L_{k+1}
    std::vector<TraceState> trace;  // Markov traces, compatible along the chain
    Element e1, e2;
    double lambda = 1.0;
    IMat lambda_matrix;
    std::vector<BasicConstruction> steps;

    LinearMap embedding(int from, int to) const;
    Element lift(const Element& x, int from, int to) const;
};
TowerContext build_tower(const Inclusion& inc, double tol = 1e-9);

// exact path counting: dim(A' n L_k) = sum of squared entries of the A -> L_k inclusion matrix
std::vector<long long> commutant_dimensions(const IMat& lambda, int levels);
// the same dimensions solved numerically on a built tower, levels 0..3
std::vector<int> commutant_dimensions_numeric(const TowerContext& t, double tol = 1e-9);
int depth(const IMat& lambda);
int depth(const Inclusion& inc);
bool is_depth_two(const Inclusion& inc);

// --- canonical triple, realized on the bimodules V_k = B (x)_A ... (x)_A B (k factors), V_0 = A ---
struct QSystem {
    Algebra A;
    Algebra B;
    double lambda = 1.0;
    Mat w;  // V0 -> V1
    Mat x;  // V1 -> V2
    // orthonormal coordinates of V_k: proj[k] from raw B^{(x)k} coordinates, lift[k] back
    std::vector<Mat> proj, lift;
    Mat embed;    // raw A -> raw B
    std::vector<Mat> left_a;  // left action of A basis on V_0..V_3

    int space_dim(int k) const { return static_cast<int>(proj[k].rows()); }
};
QSystem qsystem_from_inclusion(const Inclusion& inc, double tol = 1e-9);
QSystem trivial_qsystem(const Algebra& a);

struct QSystemReport {
    Check w_isometry, x_isometry;
    Check w_intertwines;   // w a = rho(a) w
    Check x_intertwines;   // x rho(a) = rho^2(a) x
    Check associativity;   // x x = rho(x) x
    Check frobenius;       // x x* = rho(x*) x
    Check unit_left;       // w* x = lambda^{-1/2}
    Check unit_right;      // rho(w*) x = lambda^{-1/2}
    bool intertwiners_pass() const { return w_intertwines.pass && x_intertwines.pass; }
    bool pass() const
    {
        return w_isometry.pass && x_isometry.pass && w_intertwines.pass && x_intertwines.pass &&
               associativity.pass && frobenius.pass && unit_left.pass && unit_right.pass;
    }
};
QSystemReport verify_qsystem(const QSystem& qs, double tol = 1e-9);

// --- extraction of the dual pair from a depth-2 inclusion ---
struct SectorRow {
    int block = 0;      // block of A' n B
    int n = 0;          // its size
    double d = 0.0;     // index times the trace of a minimal projection in the block
    double z = 0.0;     // sqrt(n / d)
    double trace = 0.0; // trace of the central projection
};

struct ExtractOptions {
    bool dress = true;
    double tol = 1e-9;
};

struct ExtractionResult {
    Inclusion inc;
    TowerContext tower;
    int depth = 0;
    WeakHopfAlgebra Q;     // A' n B2, acts on B
    WeakHopfAlgebra Qhat;  // B' n B3
    DualPair pair;
    Action action;
    Decomposition q_dec, qhat_dec;
    Subalgebra inner;      // A' n B inside B
    Decomposition inner_dec;
    std::vector<SectorRow> sector_table;
    double scale = 1.0;
    bool dressed = true;
};

// thrown when the inclusion is not of depth 2
struct depth_error : invalid_structure {
    int depth;
    depth_error(int d) : invalid_structure("inclusion has depth " + std::to_string(d) + ", not 2"), depth(d) {}
};

ExtractionResult extract_weak_hopf(const Inclusion& inc, Rng& rng, const ExtractOptions& opt = {});

struct InnerPartReport {
    Subalgebra P, Pbar;  // inside Q
    bool nontrivial = false;
    Check commute;       // [P, Pbar] = 0
    Check delta_p;       // Delta(p) = Delta(1)(p (x) 1)Delta(1)
    Check delta_pbar;    // Delta(pbar) = Delta(1)(1 (x) pbar)Delta(1)
    Check implementers;  // p pbar |> b = u b u'
    bool pass() const { return commute.pass && delta_p.pass && delta_pbar.pass && implementers.pass; }
};
InnerPartReport inner_part(const ExtractionResult& res, double tol = 1e-9);

struct MinimalExpectation {
    LinearMap mu;         // B -> B, the trace route
    LinearMap averaging;  // Haar element through the action
    LinearMap jones;      // b -> lambda E_B(e1 b e1)
    double residual = 0.0;  // largest pairwise difference
};
MinimalExpectation minimal_expectation(const ExtractionResult& res, double tol = 1e-9);

// A1 inside A whose basic construction reproduces A inside B, if block sizes allow
std::optional<Inclusion> tunnel(const Inclusion& inc);
ReconstructionReport reconstruct(const ExtractionResult& res, Rng& rng, double tol = 1e-9);

}  // namespace whopf
