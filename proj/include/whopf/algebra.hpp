#pragma once

#include "whopf/linalg.hpp"

#include <string>
#include <vector>

namespace whopf {

// Direct sum of full matrix rings. Canonical basis: matrix units, block-major then row-major.
struct Algebra {
    std::vector<int> blocks;
    std::vector<std::string> labels;

    Algebra() = default;
    explicit Algebra(std::vector<int> sizes, std::vector<std::string> names = {});

    int dim() const;
    int nblocks() const { return static_cast<int>(blocks.size()); }
    int offset(int b) const;
    int index(int b, int r, int c) const { return offset(b) + r * blocks[b] + c; }
    std::string str() const;
    bool same_shape(const Algebra& o) const { return blocks == o.blocks; }
};

Algebra scalars();
Algebra full_matrix(int n);

struct Element {
    Algebra alg;
    std::vector<Mat> blk;

    Element() = default;
    explicit Element(const Algebra& a);

    Element adjoint() const;
    Element operator-() const;
    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    double norm() const;  // Hilbert-Schmidt
};

Element operator*(const Element& a, const Element& b);
Element operator+(Element a, const Element& b);
Element operator-(Element a, const Element& b);
Element operator*(cplx s, Element a);
double distance(const Element& a, const Element& b);

Element zero(const Algebra& a);
Element unit(const Algebra& a);
Element matrix_unit(const Algebra& a, int b, int r, int c);
Element basis_element(const Algebra& a, int k);
Element from_coords(const Algebra& a, const Vec& v);
Vec coords(const Element& x);
Element random_element(const Algebra& a, Rng& rng);
Element random_selfadjoint(const Algebra& a, Rng& rng);
bool is_projection(const Element& p, double tol = 1e-9);

// operators on coordinate vectors
Mat left_mult(const Element& a);
Mat right_mult(const Element& a);
// coords(x*) = star_matrix(A) * conj(coords(x))
Mat star_matrix(const Algebra& a);

struct LinearMap {
    Algebra src;
    Algebra tgt;
    Mat m;

    LinearMap() = default;
    LinearMap(Algebra s, Algebra t, Mat mat);
    Element operator()(const Element& x) const;
    LinearMap after(const LinearMap& first) const;  // this o first
};

LinearMap identity_map(const Algebra& a);

// tau(a) = sum_i w_i Tr(a_i); w_i is the trace of a minimal projection of block i
struct TraceState {
    Algebra alg;
    std::vector<double> w;

    TraceState() = default;
    TraceState(Algebra a, std::vector<double> weights);
    cplx operator()(const Element& x) const;
    RVec coord_weights() const;
    bool faithful() const;
    TraceState normalized() const;
};

TraceState matrix_trace(const Algebra& a);  // all weights 1

Algebra tensor(const Algebra& a, const Algebra& b);
// kron index i*dim(b)+j of e_i (x) e_j  ->  canonical index in tensor(a, b)
std::vector<int> kron_to_tensor(const Algebra& a, const Algebra& b);
Element tensor(const Element& x, const Element& y);
Vec kron_to_tensor_coords(const Algebra& a, const Algebra& b, const Vec& kron_coords);
Vec tensor_to_kron_coords(const Algebra& a, const Algebra& b, const Vec& tensor_coords);

// A subspace of an ambient multimatrix algebra with orthonormal (Hilbert-Schmidt) coordinate basis.
struct Subalgebra {
    Algebra ambient;
    Mat basis;

    int dim() const { return static_cast<int>(basis.cols()); }
    Element element(int k) const { return from_coords(ambient, basis.col(k)); }
    std::vector<Element> elements() const;
    double distance_to(const Element& x) const;
    bool contains(const Element& x, double tol = 1e-9) const { return distance_to(x) <= tol; }
};

Subalgebra whole(const Algebra& a);
Subalgebra image(const LinearMap& f, double tol = 1e-9);
Subalgebra generate_star_subalgebra(const Algebra& ambient, const std::vector<Element>& gens,
                                    double tol = 1e-9);
Subalgebra relative_commutant(const Subalgebra& s, double tol = 1e-9);
bool is_star_closed_algebra(const Subalgebra& s, double tol = 1e-9);
bool subspace_contains(const Subalgebra& big, const Subalgebra& small, double tol = 1e-9);

Mat center(const Algebra& a, double tol = 1e-9);
std::vector<Element> minimal_central_projections(const Algebra& a);

// Multimatrix form of a *-subalgebra containing the ambient unit.
struct Decomposition {
    Algebra alg;
    LinearMap embed;  // alg -> ambient, a unital *-homomorphism
    Mat to_alg;       // ambient coords -> alg coords, exact on the subalgebra
    std::vector<int> ranks;

    Element lower(const Element& ambient_elem) const;
    std::vector<Element> central_projections() const;  // in the ambient
};

Decomposition decompose(const Subalgebra& s, Rng& rng, double tol = 1e-9);

// abstract finite-dimensional *-algebra; L[i] is left multiplication by basis vector i
struct StructureConstants {
    int n = 0;
    std::vector<Mat> L;
    Mat star;  // coords(x*) = star * conj(coords(x))

    Vec product(const Vec& x, const Vec& y) const;
    Vec adjoint(const Vec& x) const { return star * x.conjugate(); }
    Mat left(const Vec& x) const;
};

StructureConstants structure_constants(const Algebra& a);

struct Wedderburn {
    Algebra alg;
    Mat iso;  // abstract coords -> canonical coords of alg
    Mat inv;
};

Wedderburn wedderburn_decompose(const StructureConstants& sc, Rng& rng, double tol = 1e-9);

using IMat = Eigen::MatrixXi;

// rows: blocks of the target, columns: blocks of the source
IMat inclusion_matrix(const LinearMap& embed, double tol = 1e-7);

// tau-orthogonal projection of the ambient onto s
LinearMap conditional_expectation(const Subalgebra& s, const TraceState& tau);

}  // namespace whopf
