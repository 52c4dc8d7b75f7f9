#pragma once

#include "whopf/algebra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace whopf {

struct WeakHopfAlgebra {
    std::string name;
    Algebra Q;
    LinearMap coproduct;  // Q -> tensor(Q, Q), canonical coordinates on both sides
    LinearMap counit;     // Q -> C
    LinearMap antipode;   // Q -> Q

    int dim() const { return Q.dim(); }
    // coproduct in kron coordinates: row i*dim+j is the coefficient of e_i (x) e_j
    Mat delta_kron() const;
    Mat delta_of(int q) const;          // coefficient matrix of Delta(e_q)
    Mat delta_of(const Vec& q) const;
    Vec counit_vec() const { return counit.m.row(0).transpose(); }
};

// builds a weak Hopf algebra from kron-coordinate data on an existing multimatrix algebra
WeakHopfAlgebra make_weak_hopf(const std::string& name, const Algebra& q, const Mat& delta_kron,
                               const Vec& counit, const Mat& antipode);

struct Check {
    bool pass = false;
    double residual = 0.0;
    std::string worst;  // where the largest residual was seen
};

Check verify_coassociativity(const WeakHopfAlgebra& w, double tol = 1e-9);
Check verify_counit_law(const WeakHopfAlgebra& w, double tol = 1e-9);

struct StarHomReport {
    Check multiplicative;
    Check star;
    bool pass() const { return multiplicative.pass && star.pass; }
};
StarHomReport verify_coproduct_star_hom(const WeakHopfAlgebra& w, double tol = 1e-9);

struct WeakAxioms {
    Check delta_one_projection;
    Check counit_factorization;
    Check antipode_identity;
    bool pass() const { return delta_one_projection.pass && counit_factorization.pass && antipode_identity.pass; }
};
WeakAxioms verify_weak_axioms(const WeakHopfAlgebra& w, double tol = 1e-9);
// matrix trace of the projection Delta(1) in Q (x) Q; below (sum of block sizes)^2 unless Delta(1) = 1 (x) 1
int delta_one_rank(const WeakHopfAlgebra& w);

struct AntipodeReport {
    bool invertible = false;
    Check anti_multiplicative;
    Check anti_comultiplicative;
    Check inverse_identity;  // S^{-1}(q) = S(q*)*
    bool pass() const
    {
        return invertible && anti_multiplicative.pass && anti_comultiplicative.pass && inverse_identity.pass;
    }
};
AntipodeReport verify_antipode(const WeakHopfAlgebra& w, double tol = 1e-9);

Check verify_counit_positivity(const WeakHopfAlgebra& w, double tol = 1e-9);

enum class Verdict { True, Weak, Invalid };
const char* verdict_name(Verdict v);

struct ClassificationReport {
    bool is_coassociative = false;
    bool is_star_hom = false;
    bool counit_law = false;
    bool antipode = false;
    bool counit_positive = false;
    bool weak_axioms[3] = {false, false, false};
    bool true_axioms[3] = {false, false, false};  // Delta(1)=1(x)1, eps multiplicative, S(q1)q2 = eps(q)1
    double true_residuals[3] = {0, 0, 0};
    Verdict verdict = Verdict::Invalid;
    bool weak_pass() const { return weak_axioms[0] && weak_axioms[1] && weak_axioms[2]; }
    bool coherent() const { return true_axioms[0] == true_axioms[1] && true_axioms[1] == true_axioms[2]; }
};
ClassificationReport classify(const WeakHopfAlgebra& w, double tol = 1e-9);

// every check of the axiom suite, in a fixed order, for reports
struct AxiomSuite {
    std::vector<std::pair<std::string, Check>> checks;
    ClassificationReport classification;
    bool all_pass() const;
    std::pair<std::string, Check> worst() const;
};
AxiomSuite verify_all(const WeakHopfAlgebra& w, double tol = 1e-9);

Element counital_target(const WeakHopfAlgebra& w, const Element& q);  // q1 S(q2)
Element counital_source(const WeakHopfAlgebra& w, const Element& q);  // S(q1) q2
LinearMap counital_target_map(const WeakHopfAlgebra& w);
LinearMap counital_source_map(const WeakHopfAlgebra& w);

struct Conjugator {
    Element g;
    double residual = 0.0;
};
std::optional<Conjugator> antipode_square_conjugator(const WeakHopfAlgebra& w, Rng& rng, double tol = 1e-9);

// Haar integral: q h = eps_t(q) h, h q = h eps_s(q), eps_t(h) = 1
std::optional<Element> haar_integral(const WeakHopfAlgebra& w, double tol = 1e-9);

// --- finite groups and groupoids ---

struct FiniteGroup {
    std::string name;
    std::vector<std::vector<int>> mul;  // mul[g][h] = g h
    int size() const { return static_cast<int>(mul.size()); }
    int identity() const;
    int inverse(int g) const;
};
void validate(const FiniteGroup& g);
FiniteGroup cyclic_group(int n);
FiniteGroup symmetric_group(int n);

struct Groupoid {
    std::string name;
    int objects = 0;
    std::vector<int> source, target;
    std::vector<std::vector<int>> comp;  // comp[a][b] = a o b when source(a) == target(b), else -1
    int arrows() const { return static_cast<int>(source.size()); }
};
void validate(const Groupoid& g);
Groupoid pair_groupoid(int n);

// transports abstract structure maps through the Wedderburn isomorphism
struct AbstractHopfData {
    StructureConstants sc;
    Mat delta;   // n^2 x n kron coordinates
    Vec counit;  // length n
    Mat antipode;
};
struct Transported {
    WeakHopfAlgebra w;
    Mat iso;  // abstract -> canonical
    Mat inv;
};
Transported from_abstract(const std::string& name, const AbstractHopfData& d, Rng& rng, double tol = 1e-9);

WeakHopfAlgebra group_algebra(const FiniteGroup& g, Rng& rng);
Transported group_algebra_transported(const FiniteGroup& g, Rng& rng);  // keeps the group-basis isomorphism
WeakHopfAlgebra function_algebra(const FiniteGroup& g);
WeakHopfAlgebra groupoid_algebra(const Groupoid& g, Rng& rng);

}  // namespace whopf
