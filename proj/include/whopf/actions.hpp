#pragma once

#include "whopf/weak_hopf.hpp"

#include <optional>
#include <string>
#include <vector>

namespace whopf {

// q |> b, stored as one operator on target coordinates per canonical basis element of Q
struct Action {
    WeakHopfAlgebra symmetry;
    Algebra target;
    std::vector<Mat> ops;

    Mat rep(const Vec& q) const;
    Mat rep(const Element& q) const { return rep(coords(q)); }
    Element apply(const Element& q, const Element& b) const;
};

Action make_action(const WeakHopfAlgebra& q, const Algebra& target, std::vector<Mat> ops);
Action trivial_action(const Algebra& target);  // trivial group acting on target
// an action of a group algebra given by one operator per group element
Action group_action(const Transported& group_alg, const Algebra& target, const std::vector<Mat>& group_ops);

struct ActionReport {
    Check unital;
    Check homomorphism;
    Check module_algebra;  // q |> (bc) = (q1 |> b)(q2 |> c)
    Check star_law;        // (q* |> b*)* = S^{-1}(q) |> b
    bool pass() const { return unital.pass && homomorphism.pass && module_algebra.pass && star_law.pass; }
};
ActionReport verify_action(const Action& act, double tol = 1e-9);

// elements with q |> a = eps_t(q) |> a for all q
Subalgebra invariants(const Action& act, double tol = 1e-9);

struct Multiplet {
    int charge = 0;  // block of Q
    std::vector<Element> basis;
    int size = 0;
};
struct IsotypicDecomposition {
    std::vector<Multiplet> multiplets;
    std::vector<int> multiplicity;  // per block of Q
    std::vector<int> block_size;    // per block of Q
    // multiplicity of each block in the trivial module Q_t, where q . z = eps_t(q z)
    std::vector<int> trivial_multiplicity;
    std::vector<bool> trivial;      // blocks occurring in Q_t
    int total_dim() const;
    int trivial_dim() const;
    // dim Hom_Q(Q_t, target); equals the dimension of the invariants
    int invariant_count() const;
};
IsotypicDecomposition isotypic_decomposition(const Action& act, double tol = 1e-9);

// the Haar integral acting through the action; kills nontrivial charges
LinearMap averaging_expectation(const Action& act, double tol = 1e-9);

struct CrossedProduct {
    Algebra B;
    LinearMap iota;  // A -> B
    LinearMap j;     // Qhat -> B
    Subalgebra concrete;  // inside operators on L^2(A, tau)
    Decomposition dec;
    double relation_residual = 0.0;  // qhat iota(a) = iota(qhat1 |> a) qhat2
    bool generated = false;
};
// realized on L^2(A, tau); tau defaults to the matrix trace
CrossedProduct crossed_product(const Algebra& a, const Action& act, Rng& rng,
                               std::optional<TraceState> tau = std::nullopt, double tol = 1e-9);

struct ReconstructionReport {
    bool checkable = false;
    std::string note;
    bool invariants_match = false;
    double invariants_residual = 0.0;
    Algebra crossed;
    bool blocks_match = false;
    double intertwiner_residual = 0.0;
    bool pass() const { return checkable && invariants_match && blocks_match && intertwiner_residual <= 1e-8; }
};

// act: Q on B; iota: A -> B with invariants(act) = iota(A) expected; dual: Qhat on A
ReconstructionReport verify_reconstruction(const Action& act, const LinearMap& iota,
                                           const std::optional<Action>& dual, Rng& rng,
                                           std::optional<TraceState> tau_a = std::nullopt, double tol = 1e-9);

// unital *-isomorphism phi: B1 -> B2 with phi o iota1 = iota2, if the two inclusions match
struct Intertwiner {
    bool found = false;
    std::vector<int> perm;  // block i of B1 goes to block perm[i] of B2
    std::vector<Mat> unitaries;
    double residual = 0.0;
    Element apply(const Element& b, const Algebra& target) const;
};
Intertwiner intertwine_inclusions(const LinearMap& iota1, const LinearMap& iota2, Rng& rng);

}  // namespace whopf
