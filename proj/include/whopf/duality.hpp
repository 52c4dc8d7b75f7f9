#pragma once

#include "whopf/actions.hpp"

namespace whopf {

// pairing(a, i) = <qhat_a, q_i> over the canonical bases of dual and primal
struct DualPair {
    WeakHopfAlgebra primal;
    WeakHopfAlgebra dual;
    Mat pairing;
    double condition = 0.0;
};

DualPair dualize(const WeakHopfAlgebra& w, Rng& rng, double tol = 1e-9);

struct DoubleDualReport {
    LinearMap iso;  // q -> evaluation at q, primal -> dual(dual)
    Check multiplicative;
    Check star;
    Check coproduct;
    Check counit;
    Check antipode;
    bool pass() const { return multiplicative.pass && star.pass && coproduct.pass && counit.pass && antipode.pass; }
    double residual() const;
};
DoubleDualReport double_dual_check(const WeakHopfAlgebra& w, Rng& rng, double tol = 1e-8);

// the action of the primal on the dual fixed by <q |> qhat, p> = <qhat, p q>
Action solve_adjoint_action(const DualPair& pair);
Check verify_adjoint_action(const DualPair& pair, const Action& act, double tol = 1e-9);

struct SelfDualityReport {
    std::vector<int> primal_blocks;  // sorted
    std::vector<int> dual_blocks;
    bool pass = false;
};
SelfDualityReport algebra_level_self_duality(const WeakHopfAlgebra& w, Rng& rng, double tol = 1e-9);

}  // namespace whopf
