#include "whopf/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <tuple>

namespace whopf {

Algebra::Algebra(std::vector<int> sizes, std::vector<std::string> names)
    : blocks(std::move(sizes)), labels(std::move(names))
{
    if (blocks.empty())
        throw shape_error("algebra needs at least one block");
    for (int n : blocks)
        if (n < 1)
            throw shape_error("block sizes must be positive");
    if (!labels.empty() && labels.size() != blocks.size())
        throw shape_error("one label per block");
}

int Algebra::dim() const
{
    int d = 0;
    for (int n : blocks)
        d += n * n;
    return d;
}

int Algebra::offset(int b) const
{
    int d = 0;
    for (int i = 0; i < b; ++i)
        d += blocks[i] * blocks[i];
    return d;
}

std::string Algebra::str() const
{
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < blocks.size(); ++i)
        os << (i ? "," : "") << blocks[i];
    os << ']';
    return os.str();
}

Algebra scalars() { return Algebra({1}); }
Algebra full_matrix(int n) { return Algebra({n}); }

Element::Element(const Algebra& a) : alg(a)
{
    blk.reserve(a.blocks.size());
    for (int n : a.blocks)
        blk.push_back(Mat::Zero(n, n));
}

Element Element::adjoint() const
{
    Element out(alg);
    for (size_t i = 0; i < blk.size(); ++i)
        out.blk[i] = blk[i].adjoint();
    return out;
}

Element Element::operator-() const
{
    Element out(*this);
    for (auto& b : out.blk)
        b = -b;
    return out;
}

static void check_owner(const Element& a, const Element& b)
{
    if (!a.alg.same_shape(b.alg))
        throw shape_error("elements of different algebras: " + a.alg.str() + " vs " + b.alg.str());
}

Element& Element::operator+=(const Element& o)
{
    check_owner(*this, o);
    for (size_t i = 0; i < blk.size(); ++i)
        blk[i] += o.blk[i];
    return *this;
}

Element& Element::operator-=(const Element& o)
{
    check_owner(*this, o);
    for (size_t i = 0; i < blk.size(); ++i)
        blk[i] -= o.blk[i];
    return *this;
}

double Element::norm() const
{
    double s = 0.0;
    for (const auto& b : blk)
        s += b.squaredNorm();
    return std::sqrt(s);
}

Element operator*(const Element& a, const Element& b)
{
    check_owner(a, b);
    Element out(a.alg);
    for (size_t i = 0; i < a.blk.size(); ++i)
        out.blk[i].noalias() = a.blk[i] * b.blk[i];
    return out;
}

Element operator+(Element a, const Element& b) { return a += b; }
Element operator-(Element a, const Element& b) { return a -= b; }

Element operator*(cplx s, Element a)
{
    for (auto& b : a.blk)
        b *= s;
    return a;
}

double distance(const Element& a, const Element& b)
{
    check_owner(a, b);
    double m = 0.0;
    for (size_t i = 0; i < a.blk.size(); ++i)
        m = std::max(m, max_abs(Mat(a.blk[i] - b.blk[i])));
    return m;
}

Element zero(const Algebra& a) { return Element(a); }

Element unit(const Algebra& a)
{
    Element e(a);
    for (auto& b : e.blk)
        b.setIdentity();
    return e;
}

Element matrix_unit(const Algebra& a, int b, int r, int c)
{
    if (b < 0 || b >= a.nblocks() || r < 0 || c < 0 || r >= a.blocks[b] || c >= a.blocks[b])
        throw shape_error("matrix unit out of range");
    Element e(a);
    e.blk[b](r, c) = 1.0;
    return e;
}

Element basis_element(const Algebra& a, int k)
{
    for (int b = 0; b < a.nblocks(); ++b) {
        int n = a.blocks[b];
        if (k < n * n)
            return matrix_unit(a, b, k / n, k % n);
        k -= n * n;
    }
    throw shape_error("basis index out of range");
}

Element from_coords(const Algebra& a, const Vec& v)
{
    if (v.size() != a.dim())
        throw shape_error("coordinate vector has wrong length");
    Element e(a);
    int k = 0;
    for (int b = 0; b < a.nblocks(); ++b) {
        int n = a.blocks[b];
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                e.blk[b](r, c) = v(k++);
    }
    return e;
}

Vec coords(const Element& x)
{
    Vec v(x.alg.dim());
    int k = 0;
    for (size_t b = 0; b < x.blk.size(); ++b) {
        const Mat& m = x.blk[b];
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            for (Eigen::Index c = 0; c < m.cols(); ++c)
                v(k++) = m(r, c);
    }
    return v;
}

Element random_element(const Algebra& a, Rng& rng)
{
    Element e(a);
    for (size_t b = 0; b < e.blk.size(); ++b)
        e.blk[b] = random_complex(a.blocks[b], a.blocks[b], rng);
    return e;
}

Element random_selfadjoint(const Algebra& a, Rng& rng)
{
    Element e = random_element(a, rng);
    return cplx(0.5) * (e + e.adjoint());
}

bool is_projection(const Element& p, double tol)
{
    return distance(p * p, p) <= tol && distance(p.adjoint(), p) <= tol;
}

Mat left_mult(const Element& a)
{
    const int d = a.alg.dim();
    Mat out = Mat::Zero(d, d);
    for (int b = 0; b < a.alg.nblocks(); ++b) {
        int n = a.alg.blocks[b], off = a.alg.offset(b);
        out.block(off, off, n * n, n * n) = kron(a.blk[b], Mat::Identity(n, n));
    }
    return out;
}

Mat right_mult(const Element& a)
{
    const int d = a.alg.dim();
    Mat out = Mat::Zero(d, d);
    for (int b = 0; b < a.alg.nblocks(); ++b) {
        int n = a.alg.blocks[b], off = a.alg.offset(b);
        out.block(off, off, n * n, n * n) = kron(Mat::Identity(n, n), a.blk[b].transpose());
    }
    return out;
}

Mat star_matrix(const Algebra& a)
{
    const int d = a.dim();
    Mat j = Mat::Zero(d, d);
    for (int b = 0; b < a.nblocks(); ++b)
        for (int r = 0; r < a.blocks[b]; ++r)
            for (int c = 0; c < a.blocks[b]; ++c)
                j(a.index(b, c, r), a.index(b, r, c)) = 1.0;
    return j;
}

LinearMap::LinearMap(Algebra s, Algebra t, Mat mat) : src(std::move(s)), tgt(std::move(t)), m(std::move(mat))
{
    if (m.rows() != tgt.dim() || m.cols() != src.dim())
        throw shape_error("linear map matrix does not match source/target dimensions");
}

Element LinearMap::operator()(const Element& x) const
{
    if (!x.alg.same_shape(src))
        throw shape_error("linear map applied outside its source");
    return from_coords(tgt, m * coords(x));
}

LinearMap LinearMap::after(const LinearMap& first) const
{
    if (!first.tgt.same_shape(src))
        throw shape_error("cannot compose: target/source mismatch");
    return LinearMap(first.src, tgt, m * first.m);
}

LinearMap identity_map(const Algebra& a)
{
    return LinearMap(a, a, Mat::Identity(a.dim(), a.dim()));
}

TraceState::TraceState(Algebra a, std::vector<double> weights) : alg(std::move(a)), w(std::move(weights))
{
    if (static_cast<int>(w.size()) != alg.nblocks())
        throw shape_error("one trace weight per block");
}

cplx TraceState::operator()(const Element& x) const
{
    if (!x.alg.same_shape(alg))
        throw shape_error("trace applied to a foreign element");
    cplx s = 0.0;
    for (size_t i = 0; i < w.size(); ++i)
        s += w[i] * x.blk[i].trace();
    return s;
}

RVec TraceState::coord_weights() const
{
    RVec v(alg.dim());
    for (int b = 0; b < alg.nblocks(); ++b)
        v.segment(alg.offset(b), alg.blocks[b] * alg.blocks[b]).setConstant(w[b]);
    return v;
}

bool TraceState::faithful() const
{
    return std::all_of(w.begin(), w.end(), [](double x) { return x > 0.0; });
}

TraceState TraceState::normalized() const
{
    double t = 0.0;
    for (size_t i = 0; i < w.size(); ++i)
        t += w[i] * alg.blocks[i];
    std::vector<double> v = w;
    for (auto& x : v)
        x /= t;
    return TraceState(alg, v);
}

TraceState matrix_trace(const Algebra& a)
{
    return TraceState(a, std::vector<double>(a.nblocks(), 1.0));
}

Algebra tensor(const Algebra& a, const Algebra& b)
{
    std::vector<int> s;
    std::vector<std::string> l;
    bool named = !a.labels.empty() && !b.labels.empty();
    for (int i = 0; i < a.nblocks(); ++i)
        for (int j = 0; j < b.nblocks(); ++j) {
            s.push_back(a.blocks[i] * b.blocks[j]);
            if (named)
                l.push_back(a.labels[i] + "*" + b.labels[j]);
        }
    return Algebra(s, l);
}

std::vector<int> kron_to_tensor(const Algebra& a, const Algebra& b)
{
    Algebra t = tensor(a, b);
    std::vector<int> perm(static_cast<size_t>(a.dim()) * b.dim(), -1);
    for (int i = 0; i < a.nblocks(); ++i)
        for (int j = 0; j < b.nblocks(); ++j) {
            int n = a.blocks[i], m = b.blocks[j], tb = i * b.nblocks() + j;
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c)
                    for (int p = 0; p < m; ++p)
                        for (int q = 0; q < m; ++q) {
                            int k = a.index(i, r, c) * b.dim() + b.index(j, p, q);
                            perm[k] = t.index(tb, r * m + p, c * m + q);
                        }
        }
    return perm;
}

Element tensor(const Element& x, const Element& y)
{
    Element out(tensor(x.alg, y.alg));
    int nb = y.alg.nblocks();
    for (size_t i = 0; i < x.blk.size(); ++i)
        for (size_t j = 0; j < y.blk.size(); ++j)
            out.blk[i * nb + j] = kron(x.blk[i], y.blk[j]);
    return out;
}

Vec kron_to_tensor_coords(const Algebra& a, const Algebra& b, const Vec& kc)
{
    auto perm = kron_to_tensor(a, b);
    if (kc.size() != static_cast<Eigen::Index>(perm.size()))
        throw shape_error("kron coordinates have wrong length");
    Vec out(kc.size());
    for (size_t k = 0; k < perm.size(); ++k)
        out(perm[k]) = kc(static_cast<Eigen::Index>(k));
    return out;
}

Vec tensor_to_kron_coords(const Algebra& a, const Algebra& b, const Vec& tc)
{
    auto perm = kron_to_tensor(a, b);
    if (tc.size() != static_cast<Eigen::Index>(perm.size()))
        throw shape_error("tensor coordinates have wrong length");
    Vec out(tc.size());
    for (size_t k = 0; k < perm.size(); ++k)
        out(static_cast<Eigen::Index>(k)) = tc(perm[k]);
    return out;
}

std::vector<Element> Subalgebra::elements() const
{
    std::vector<Element> out;
    for (int k = 0; k < dim(); ++k)
        out.push_back(element(k));
    return out;
}

double Subalgebra::distance_to(const Element& x) const
{
    Vec v = coords(x);
    if (dim() == 0)
        return v.norm();
    Vec r = v - basis * (basis.adjoint() * v);
    return r.norm();
}

Subalgebra whole(const Algebra& a)
{
    return Subalgebra{a, Mat::Identity(a.dim(), a.dim())};
}

Subalgebra image(const LinearMap& f, double tol)
{
    return Subalgebra{f.tgt, range_basis(f.m, tol)};
}

Subalgebra generate_star_subalgebra(const Algebra& ambient, const std::vector<Element>& gens, double tol)
{
    std::vector<Element> g;
    for (const auto& x : gens) {
        if (!x.alg.same_shape(ambient))
            throw shape_error("generator outside the ambient algebra");
        g.push_back(x);
        g.push_back(x.adjoint());
    }
    const int d = ambient.dim();
    Vec one = coords(unit(ambient));
    Mat basis = one / one.norm();
    Mat frontier = basis;
    while (frontier.cols() > 0 && basis.cols() < d) {
        Mat fresh(d, frontier.cols() * static_cast<Eigen::Index>(g.size()));
        Eigen::Index c = 0;
        for (Eigen::Index j = 0; j < frontier.cols(); ++j) {
            Element x = from_coords(ambient, frontier.col(j));
            for (const auto& h : g)
                fresh.col(c++) = coords(h * x);
        }
        double scale = fresh.colwise().norm().maxCoeff();
        for (int pass = 0; pass < 2; ++pass)
            fresh -= basis * (basis.adjoint() * fresh);
        if (scale == 0.0)
            break;
        Mat add = range_basis(fresh / scale, tol);
        if (add.cols() == 0)
            break;
        add -= basis * (basis.adjoint() * add);
        add = range_basis(add, tol);
        Mat nb(d, basis.cols() + add.cols());
        nb << basis, add;
        basis = std::move(nb);
        frontier = add;
    }
    return Subalgebra{ambient, basis};
}

Subalgebra relative_commutant(const Subalgebra& s, double tol)
{
    const Algebra& a = s.ambient;
    KernelBuilder kb(a.dim());
    // generic elements first, so the basis constraints only ever trim an accurate kernel
    Rng rng(0x5eed);
    for (int t = 0; t < 3 && s.dim() > 0; ++t) {
        Element x = from_coords(a, s.basis * random_complex(s.dim(), 1, rng).col(0));
        kb.add(left_mult(x) - right_mult(x), tol);
    }
    for (int k = 0; k < s.dim(); ++k) {
        Element x = s.element(k);
        kb.add(left_mult(x) - right_mult(x), tol);
    }
    return Subalgebra{a, kb.basis()};
}

bool is_star_closed_algebra(const Subalgebra& s, double tol)
{
    auto xs = s.elements();
    if (!s.contains(unit(s.ambient), tol))
        return false;
    for (const auto& x : xs) {
        if (!s.contains(x.adjoint(), tol))
            return false;
        for (const auto& y : xs)
            if (!s.contains(x * y, tol * std::max(1.0, x.norm() * y.norm())))
                return false;
    }
    return true;
}

bool subspace_contains(const Subalgebra& big, const Subalgebra& small, double tol)
{
    for (int k = 0; k < small.dim(); ++k)
        if (!big.contains(small.element(k), tol))
            return false;
    return true;
}

Mat center(const Algebra& a, double tol)
{
    return relative_commutant(whole(a), tol).basis;
}

std::vector<Element> minimal_central_projections(const Algebra& a)
{
    std::vector<Element> out;
    for (int b = 0; b < a.nblocks(); ++b) {
        Element p(a);
        p.blk[b].setIdentity();
        out.push_back(p);
    }
    return out;
}

namespace {

double ambient_trace(const Element& x)
{
    cplx s = 0.0;
    for (const auto& b : x.blk)
        s += b.trace();
    return s.real();
}

struct Spectrum {
    std::vector<double> values;
    std::vector<Element> projections;
    double min_gap = INFINITY;
};

Spectrum spectral_projections(const Element& h)
{
    struct Eig {
        double value;
        int block;
        Vec vec;
    };
    std::vector<Eig> all;
    double scale = 1.0;
    for (int b = 0; b < h.alg.nblocks(); ++b) {
        Eigen::SelfAdjointEigenSolver<Mat> es(h.blk[b]);
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
            all.push_back({es.eigenvalues()(i), b, es.eigenvectors().col(i)});
            scale = std::max(scale, std::abs(es.eigenvalues()(i)));
        }
    }
    std::stable_sort(all.begin(), all.end(), [](const Eig& x, const Eig& y) { return x.value < y.value; });
    Spectrum sp;
    const double ctol = 1e-8 * scale;
    std::vector<std::vector<size_t>> groups;
    for (size_t i = 0; i < all.size(); ++i) {
        if (i == 0 || all[i].value - all[i - 1].value > ctol)
            groups.emplace_back();
        if (i > 0 && all[i].value - all[i - 1].value > ctol)
            sp.min_gap = std::min(sp.min_gap, (all[i].value - all[i - 1].value) / scale);
        groups.back().push_back(i);
    }
    for (const auto& g : groups) {
        Element p(h.alg);
        double mean = 0.0;
        for (size_t i : g) {
            p.blk[all[i].block] += all[i].vec * all[i].vec.adjoint();
            mean += all[i].value;
        }
        sp.values.push_back(mean / g.size());
        sp.projections.push_back(p);
    }
    return sp;
}

Element random_in(const Algebra& amb, const Mat& basis, Rng& rng)
{
    Mat r = random_complex(static_cast<int>(basis.cols()), 1, rng);
    return from_coords(amb, basis * r.col(0));
}

struct BlockUnits {
    int n = 0;
    int rank = 0;
    std::vector<std::vector<Element>> e;
    Element central;
};

constexpr double kGap = 1e-6;

}  // namespace

Element Decomposition::lower(const Element& x) const
{
    return from_coords(alg, to_alg * coords(x));
}

std::vector<Element> Decomposition::central_projections() const
{
    std::vector<Element> out;
    for (auto& p : minimal_central_projections(alg))
        out.push_back(embed(p));
    return out;
}

Decomposition decompose(const Subalgebra& s, Rng& rng, double tol)
{
    const Algebra& amb = s.ambient;
    const int m = s.dim();
    if (m == 0)
        throw shape_error("cannot decompose the zero subspace");
    Element one = unit(amb);
    if (!s.contains(one, 1e-7))
        throw invalid_structure("subalgebra does not contain the unit");

    auto xs = s.elements();
    KernelBuilder kb(m);
    auto commutators_with = [&](const Element& y) {
        Mat rows(amb.dim(), m);
        for (int k = 0; k < m; ++k)
            rows.col(k) = coords(xs[k] * y - y * xs[k]);
        return rows;
    };
    for (int t = 0; t < 3; ++t)
        kb.add(commutators_with(random_in(amb, s.basis, rng)), tol);
    for (int j = 0; j < m && kb.dim() > 1; ++j)
        kb.add(commutators_with(xs[j]), tol);
    const Mat zbasis = s.basis * kb.basis();
    const int kc = static_cast<int>(zbasis.cols());

    for (int attempt = 0; attempt < 40; ++attempt) {
        Element z = random_in(amb, zbasis, rng);
        z = cplx(0.5) * (z + z.adjoint());
        Spectrum cs = spectral_projections(z);
        if (static_cast<int>(cs.projections.size()) != kc || cs.min_gap < kGap)
            continue;

        std::vector<BlockUnits> units;
        bool ok = true;
        for (const Element& p : cs.projections) {
            Mat cols(amb.dim(), m);
            for (int k = 0; k < m; ++k)
                cols.col(k) = coords(p * xs[k]);
            Mat y = range_basis(cols, tol);
            int dimc = static_cast<int>(y.cols());
            int n = static_cast<int>(std::lround(std::sqrt(double(dimc))));
            if (n * n != dimc) {
                ok = false;
                break;
            }
            BlockUnits bu;
            bu.n = n;
            bu.central = p;
            std::vector<Element> f;
            if (n == 1) {
                f.push_back(p);
            } else {
                Element h = random_in(amb, y, rng);
                h = cplx(0.5) * (h + h.adjoint());
                double shift = 2.0 * (h.norm() + 1.0);
                Element hs = h + cplx(shift) * (one - p);
                Spectrum fs = spectral_projections(hs);
                for (size_t i = 0; i < fs.values.size(); ++i)
                    if (fs.values[i] < 0.5 * shift)
                        f.push_back(fs.projections[i]);
                if (static_cast<int>(f.size()) != n || fs.min_gap < kGap) {
                    ok = false;
                    break;
                }
            }
            bu.rank = static_cast<int>(std::lround(ambient_trace(f[0])));
            bu.e.assign(n, std::vector<Element>(n, Element(amb)));
            bu.e[0][0] = f[0];
            for (int j = 1; j < n && ok; ++j) {
                bool found = false;
                for (int tries = 0; tries < 10 && !found; ++tries) {
                    Element u = f[0] * random_in(amb, y, rng) * f[j];
                    double c = ambient_trace(u * u.adjoint()) / ambient_trace(f[0]);
                    if (c < 1e-8)
                        continue;
                    bu.e[0][j] = cplx(1.0 / std::sqrt(c)) * u;
                    bu.e[j][0] = bu.e[0][j].adjoint();
                    found = true;
                }
                ok = found;
            }
            if (!ok)
                break;
            for (int i = 1; i < n; ++i)
                for (int j = 1; j < n; ++j)
                    bu.e[i][j] = bu.e[i][0] * bu.e[0][j];
            for (int j = 0; j < n; ++j)
                if (distance(bu.e[j][j], f[j]) > 1e-7)
                    ok = false;
            if (!ok)
                break;
            units.push_back(std::move(bu));
        }
        if (!ok)
            continue;

        auto first_index = [](const Element& p) {
            Vec v = coords(p);
            for (Eigen::Index i = 0; i < v.size(); ++i)
                if (std::abs(v(i)) > 1e-8)
                    return std::make_pair(static_cast<int>(i), -std::abs(v(i)));
            return std::make_pair(static_cast<int>(v.size()), 0.0);
        };
        std::stable_sort(units.begin(), units.end(), [&](const BlockUnits& a, const BlockUnits& b) {
            auto ka = std::make_tuple(a.n, a.rank, first_index(a.central));
            auto kb2 = std::make_tuple(b.n, b.rank, first_index(b.central));
            return ka < kb2;
        });

        std::vector<int> sizes;
        for (const auto& u : units)
            sizes.push_back(u.n);
        Decomposition d;
        d.alg = Algebra(sizes);
        Mat emb(amb.dim(), d.alg.dim());
        Mat low(d.alg.dim(), amb.dim());
        int col = 0;
        for (const auto& u : units) {
            d.ranks.push_back(u.rank);
            for (int a = 0; a < u.n; ++a)
                for (int b = 0; b < u.n; ++b) {
                    emb.col(col) = coords(u.e[a][b]);
                    low.row(col) = emb.col(col).adjoint() / double(u.rank);
                    ++col;
                }
        }
        if (d.alg.dim() != m)
            continue;
        d.embed = LinearMap(d.alg, amb, emb);
        d.to_alg = low;
        return d;
    }
    throw invalid_structure("decomposition did not stabilise (spectral gaps too small)");
}

Vec StructureConstants::product(const Vec& x, const Vec& y) const
{
    return left(x) * y;
}

Mat StructureConstants::left(const Vec& x) const
{
    Mat out = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i)
        if (x(i) != cplx(0.0))
            out += x(i) * L[i];
    return out;
}

StructureConstants structure_constants(const Algebra& a)
{
    StructureConstants sc;
    sc.n = a.dim();
    for (int i = 0; i < sc.n; ++i)
        sc.L.push_back(left_mult(basis_element(a, i)));
    sc.star = star_matrix(a);
    return sc;
}

Wedderburn wedderburn_decompose(const StructureConstants& sc, Rng& rng, double tol)
{
    const int n = sc.n;
    if (n < 1 || static_cast<int>(sc.L.size()) != n || sc.star.rows() != n || sc.star.cols() != n)
        throw shape_error("structure constants have inconsistent sizes");
    for (const auto& l : sc.L)
        if (l.rows() != n || l.cols() != n)
            throw shape_error("structure constants have inconsistent sizes");

    double lmax = 0.0;
    for (const auto& l : sc.L)
        lmax = std::max(lmax, max_abs(l));
    for (int t = 0; t < 3; ++t) {
        Vec x = random_complex(n, 1, rng).col(0);
        Vec y = random_complex(n, 1, rng).col(0);
        Vec z = random_complex(n, 1, rng).col(0);
        Vec lhs = sc.product(sc.product(x, y), z);
        Vec rhs = sc.product(x, sc.product(y, z));
        double scale = std::max(1.0, lmax * lmax) * x.norm() * y.norm() * z.norm();
        if ((lhs - rhs).norm() > 1e-9 * scale)
            throw invalid_structure("structure constants are not associative");
    }

    Mat vl(n * n, n), vt(n * n, n);
    for (int i = 0; i < n; ++i) {
        vl.col(i) = Eigen::Map<const Vec>(sc.L[i].data(), n * n);
        Mat t = sc.L[i].transpose();
        vt.col(i) = Eigen::Map<const Vec>(t.data(), n * n);
    }
    Mat unit_sys = vl;
    Mat id = Mat::Identity(n, n);
    Vec rhs = Eigen::Map<const Vec>(id.data(), n * n);
    Vec u = lstsq(unit_sys, rhs);
    if ((unit_sys * u - rhs).norm() > 1e-8 * std::max(1.0, rhs.norm()))
        throw invalid_structure("algebra has no unit");

    Mat g = vl.transpose() * vt;  // g(k,j) = Tr(L_k L_j)
    Mat tform = sc.star.transpose() * g;
    if (max_abs(Mat(tform - tform.adjoint())) > 1e-8 * std::max(1.0, max_abs(tform)))
        throw invalid_structure("star is not compatible with the product (trace form not hermitian)");
    Mat herm = 0.5 * (tform + tform.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(herm);
    double emax = es.eigenvalues().cwiseAbs().maxCoeff();
    if (es.eigenvalues().minCoeff() <= 1e-10 * std::max(1.0, emax))
        throw invalid_structure("degenerate trace form: algebra is not semisimple or star is not positive");
    Eigen::LLT<Mat> llt(herm);
    Mat r = llt.matrixU();  // herm = r^* r
    Mat rinv = r.inverse();

    Algebra amb = full_matrix(n);
    Mat cols(n * n, n);
    for (int i = 0; i < n; ++i) {
        Element e(amb);
        e.blk[0] = r * sc.L[i] * rinv;
        cols.col(i) = coords(e);
    }
    Subalgebra s{amb, range_basis(cols, tol)};
    if (s.dim() != n)
        throw invalid_structure("left regular representation is not faithful");
    Decomposition d = decompose(s, rng, tol);
    Wedderburn w;
    w.alg = d.alg;
    w.iso = d.to_alg * cols;
    if (w.iso.rows() != n)
        throw invalid_structure("decomposition has the wrong dimension");
    w.inv = w.iso.inverse();
    return w;
}

IMat inclusion_matrix(const LinearMap& embed, double tol)
{
    const Algebra& a = embed.src;
    const Algebra& b = embed.tgt;
    IMat out = IMat::Zero(b.nblocks(), a.nblocks());
    for (int j = 0; j < a.nblocks(); ++j) {
        Element p = embed(matrix_unit(a, j, 0, 0));
        for (int i = 0; i < b.nblocks(); ++i) {
            double r = p.blk[i].trace().real();
            long k = std::lround(r);
            if (std::abs(r - double(k)) > tol || k < 0)
                throw invalid_structure("embedding is not a *-homomorphism (non-integer multiplicity)");
            out(i, j) = static_cast<int>(k);
        }
    }
    return out;
}

LinearMap conditional_expectation(const Subalgebra& s, const TraceState& tau)
{
    if (!s.ambient.same_shape(tau.alg))
        throw shape_error("trace lives on a different algebra");
    if (!tau.faithful())
        throw invalid_structure("conditional expectation needs a faithful trace");
    RVec w = tau.coord_weights();
    const Mat& x = s.basis;
    Mat wx = w.cast<cplx>().asDiagonal() * x;
    Mat gram = x.adjoint() * wx;
    Mat e = x * gram.ldlt().solve(wx.adjoint());
    return LinearMap(s.ambient, s.ambient, e);
}

}  // namespace whopf
