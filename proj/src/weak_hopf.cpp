#include "whopf/weak_hopf.hpp"

#include "worst.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace whopf {

namespace {

using detail::Worst;
using detail::idx;

Vec flat(const Mat& m)
{
    // row-major flattening: index i*cols + j
    Vec v(m.size());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            v(i * m.cols() + j) = m(i, j);
    return v;
}

Mat unflat(const Vec& v, Eigen::Index rows, Eigen::Index cols)
{
    Mat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            m(i, j) = v(i * cols + j);
    return m;
}

Mat tensor_coeff(const Algebra& q, const Element& t)
{
    Vec k = tensor_to_kron_coords(q, q, coords(t));
    return unflat(k, q.dim(), q.dim());
}

Mat products(const Algebra& q, const Mat& left_map)
{
    // column a*d+b: coords of left_map(e_a) * e_b
    const int d = q.dim();
    Mat f(d, d * d);
    for (int a = 0; a < d; ++a) {
        Element la = from_coords(q, left_map.col(a));
        Mat l = left_mult(la);
        for (int b = 0; b < d; ++b)
            f.col(a * d + b) = l.col(b);
    }
    return f;
}

}  // namespace

Mat WeakHopfAlgebra::delta_kron() const
{
    auto perm = kron_to_tensor(Q, Q);
    Mat out(coproduct.m.rows(), coproduct.m.cols());
    for (size_t k = 0; k < perm.size(); ++k)
        out.row(static_cast<Eigen::Index>(k)) = coproduct.m.row(perm[k]);
    return out;
}

Mat WeakHopfAlgebra::delta_of(int q) const
{
    Vec e = Vec::Zero(dim());
    e(q) = 1.0;
    return delta_of(e);
}

Mat WeakHopfAlgebra::delta_of(const Vec& q) const
{
    Vec t = coproduct.m * q;
    return unflat(tensor_to_kron_coords(Q, Q, t), dim(), dim());
}

WeakHopfAlgebra make_weak_hopf(const std::string& name, const Algebra& q, const Mat& delta_kron,
                               const Vec& counit, const Mat& antipode)
{
    const int d = q.dim();
    if (delta_kron.rows() != d * d || delta_kron.cols() != d || counit.size() != d || antipode.rows() != d ||
        antipode.cols() != d)
        throw shape_error("structure maps do not match the algebra dimension");
    auto perm = kron_to_tensor(q, q);
    Mat dt(d * d, d);
    for (size_t k = 0; k < perm.size(); ++k)
        dt.row(perm[k]) = delta_kron.row(static_cast<Eigen::Index>(k));
    WeakHopfAlgebra w;
    w.name = name;
    w.Q = q;
    w.coproduct = LinearMap(q, tensor(q, q), dt);
    w.counit = LinearMap(q, scalars(), counit.transpose());
    w.antipode = LinearMap(q, q, antipode);
    return w;
}

Check verify_coassociativity(const WeakHopfAlgebra& w, double tol)
{
    const int d = w.dim();
    Mat dk = w.delta_kron();
    Worst worst;
    for (int q = 0; q < d; ++q) {
        Mat m = unflat(dk.col(q), d, d);
        Mat t1 = dk * m;                // (a*d+b, j)
        Mat t2 = m * dk.transpose();    // (i, a*d+b)
        double r = 0.0;
        for (int x = 0; x < d; ++x)
            for (int y = 0; y < d; ++y)
                for (int z = 0; z < d; ++z)
                    r = std::max(r, std::abs(t1(x * d + y, z) - t2(x, y * d + z)));
        worst.see(r, [&] { return idx("q", q); });
    }
    return worst.result(tol);
}

Check verify_counit_law(const WeakHopfAlgebra& w, double tol)
{
    const int d = w.dim();
    Vec eps = w.counit_vec();
    Worst worst;
    for (int q = 0; q < d; ++q) {
        Mat m = w.delta_of(q);
        Vec e = Vec::Zero(d);
        e(q) = 1.0;
        Vec left = m.transpose() * eps;
        Vec right = m * eps;
        worst.see(std::max(max_abs(Vec(left - e)), max_abs(Vec(right - e))), [&] { return idx("q", q); });
    }
    return worst.result(tol);
}

StarHomReport verify_coproduct_star_hom(const WeakHopfAlgebra& w, double tol)
{
    const int d = w.dim();
    const Algebra qq = tensor(w.Q, w.Q);
    std::vector<Element> del;
    for (int q = 0; q < d; ++q)
        del.push_back(from_coords(qq, w.coproduct.m.col(q)));
    Worst mul, star;
    for (int i = 0; i < d; ++i) {
        Element ei = basis_element(w.Q, i);
        for (int j = 0; j < d; ++j) {
            Element prod = ei * basis_element(w.Q, j);
            Element lhs = w.coproduct(prod);
            double r = distance(lhs, del[i] * del[j]);
            mul.see(r, [&] { return idx("q", i, "p", j); });
        }
        double r = distance(w.coproduct(ei.adjoint()), del[i].adjoint());
        star.see(r, [&] { return idx("q", i); });
    }
    return StarHomReport{mul.result(tol), star.result(tol)};
}

int delta_one_rank(const WeakHopfAlgebra& w)
{
    Element d1 = w.coproduct(unit(w.Q));
    double t = 0.0;
    for (const Mat& b : d1.blk)
        t += b.trace().real();
    return static_cast<int>(std::lround(t));
}

WeakAxioms verify_weak_axioms(const WeakHopfAlgebra& w, double tol)
{
    const int d = w.dim();
    WeakAxioms out;
    Element one = unit(w.Q);
    Element d1 = w.coproduct(one);
    {
        double r = std::max(distance(d1 * d1, d1), distance(d1.adjoint(), d1));
        out.delta_one_projection = Check{r <= tol, r, "Delta(1)"};
    }
    Vec eps = w.counit_vec();
    Mat epsprod(d, d);  // eps(e_q e_p)
    for (int q = 0; q < d; ++q) {
        Mat l = left_mult(basis_element(w.Q, q));
        epsprod.row(q) = (eps.transpose() * l);
    }
    {
        Mat m1 = tensor_coeff(w.Q, d1);
        Mat rhs = epsprod * m1 * epsprod;
        Worst worst;
        for (int q = 0; q < d; ++q)
            for (int p = 0; p < d; ++p)
                worst.see(std::abs(epsprod(q, p) - rhs(q, p)), [&] { return idx("q", q, "p", p); });
        out.counit_factorization = worst.result(tol);
    }
    {
        Mat dk = w.delta_kron();
        Mat f = products(w.Q, w.antipode.m);  // S(e_a) e_b
        Worst worst;
        for (int q = 0; q < d; ++q) {
            Mat m = unflat(dk.col(q), d, d);
            Mat t1 = dk * m;      // (a*d+b, k)
            Mat lhs = f * t1;     // (coord, k)
            Element rhs = tensor(one, basis_element(w.Q, q)) * d1;
            Mat rc = tensor_coeff(w.Q, rhs);
            worst.see(max_abs(Mat(lhs - rc)), [&] { return idx("q", q); });
        }
        out.antipode_identity = worst.result(tol);
    }
    return out;
}

AntipodeReport verify_antipode(const WeakHopfAlgebra& w, double tol)
{
    const int d = w.dim();
    AntipodeReport out;
    const Mat& s = w.antipode.m;
    double smin = min_singular_value(s);
    out.invertible = smin > 1e-10 * std::max(1.0, max_abs(s));
    Worst am, ac, inv;
    std::vector<Element> se;
    for (int q = 0; q < d; ++q)
        se.push_back(from_coords(w.Q, s.col(q)));
    for (int i = 0; i < d; ++i) {
        Element ei = basis_element(w.Q, i);
        for (int j = 0; j < d; ++j) {
            Element lhs = w.antipode(ei * basis_element(w.Q, j));
            am.see(distance(lhs, se[j] * se[i]), [&] { return idx("q", i, "p", j); });
        }
        Mat m = w.delta_of(i);
        Mat lhs = s * m * s.transpose();
        Mat rhs = w.delta_of(Vec(s.col(i))).transpose();
        ac.see(max_abs(Mat(lhs - rhs)), [&] { return idx("q", i); });
        // S(S(q*)*) = q is S^{-1}(q) = S(q*)* applied through S
        Element t = w.antipode(w.antipode(ei.adjoint()).adjoint());
        inv.see(distance(t, ei), [&] { return idx("q", i); });
    }
    out.anti_multiplicative = am.result(tol);
    out.anti_comultiplicative = ac.result(tol);
    out.inverse_identity = inv.result(tol);
    return out;
}

Check verify_counit_positivity(const WeakHopfAlgebra& w, double tol)
{
    const int d = w.dim();
    Vec eps = w.counit_vec();
    Mat g(d, d);
    for (int i = 0; i < d; ++i) {
        Element ai = basis_element(w.Q, i).adjoint();
        Mat l = left_mult(ai);
        g.row(i) = eps.transpose() * l;
    }
    double herm = max_abs(Mat(g - g.adjoint()));
    Mat h = 0.5 * (g + g.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    double lo = es.eigenvalues().minCoeff();
    double r = std::max(herm, std::max(0.0, -lo));
    std::ostringstream os;
    os << "min eigenvalue " << lo;
    return Check{r <= tol, r, os.str()};
}

const char* verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::True: return "True";
    case Verdict::Weak: return "Weak";
    default: return "Invalid";
    }
}

ClassificationReport classify(const WeakHopfAlgebra& w, double tol)
{
    const int d = w.dim();
    ClassificationReport rep;
    rep.is_coassociative = verify_coassociativity(w, tol).pass;
    rep.is_star_hom = verify_coproduct_star_hom(w, tol).pass();
    rep.counit_law = verify_counit_law(w, tol).pass;
    rep.antipode = verify_antipode(w, tol).pass();
    rep.counit_positive = verify_counit_positivity(w, tol).pass;
    WeakAxioms wa = verify_weak_axioms(w, tol);
    rep.weak_axioms[0] = wa.delta_one_projection.pass;
    rep.weak_axioms[1] = wa.counit_factorization.pass;
    rep.weak_axioms[2] = wa.antipode_identity.pass;

    Element one = unit(w.Q);
    rep.true_residuals[0] = distance(w.coproduct(one), tensor(one, one));

    Vec eps = w.counit_vec();
    double r1 = 0.0, r2 = 0.0;
    Mat f = products(w.Q, w.antipode.m);
    Vec onec = coords(one);
    for (int q = 0; q < d; ++q) {
        Mat l = left_mult(basis_element(w.Q, q));
        for (int p = 0; p < d; ++p)
            r1 = std::max(r1, std::abs(eps.dot(l.col(p)) - eps(q) * eps(p)));
        Vec lhs = f * flat(w.delta_of(q));
        r2 = std::max(r2, max_abs(Vec(lhs - eps(q) * onec)));
    }
    rep.true_residuals[1] = r1;
    rep.true_residuals[2] = r2;
    for (int i = 0; i < 3; ++i)
        rep.true_axioms[i] = rep.true_residuals[i] <= tol;

    bool valid = rep.is_coassociative && rep.is_star_hom && rep.counit_law && rep.antipode &&
                 rep.counit_positive && rep.weak_pass();
    if (!valid)
        rep.verdict = Verdict::Invalid;
    else if (rep.true_axioms[0] && rep.true_axioms[1] && rep.true_axioms[2])
        rep.verdict = Verdict::True;
    else
        rep.verdict = Verdict::Weak;
    return rep;
}

bool AxiomSuite::all_pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second.pass; });
}

std::pair<std::string, Check> AxiomSuite::worst() const
{
    std::pair<std::string, Check> best{"", Check{true, 0.0, ""}};
    for (const auto& c : checks) {
        bool worse = (!c.second.pass && best.second.pass) ||
                     (c.second.pass == best.second.pass && c.second.residual > best.second.residual);
        if (best.first.empty() || worse)
            best = c;
    }
    return best;
}

AxiomSuite verify_all(const WeakHopfAlgebra& w, double tol)
{
    AxiomSuite s;
    s.checks.emplace_back("coassociativity", verify_coassociativity(w, tol));
    s.checks.emplace_back("counit_law", verify_counit_law(w, tol));
    auto sh = verify_coproduct_star_hom(w, tol);
    s.checks.emplace_back("coproduct_multiplicative", sh.multiplicative);
    s.checks.emplace_back("coproduct_star", sh.star);
    auto ap = verify_antipode(w, tol);
    Check inv{ap.invertible, ap.invertible ? 0.0 : 1.0, "antipode matrix"};
    s.checks.emplace_back("antipode_invertible", inv);
    s.checks.emplace_back("antipode_anti_multiplicative", ap.anti_multiplicative);
    s.checks.emplace_back("antipode_anti_comultiplicative", ap.anti_comultiplicative);
    s.checks.emplace_back("antipode_inverse_identity", ap.inverse_identity);
    s.checks.emplace_back("counit_positivity", verify_counit_positivity(w, tol));
    auto wa = verify_weak_axioms(w, tol);
    s.checks.emplace_back("weak_delta_one_projection", wa.delta_one_projection);
    s.checks.emplace_back("weak_counit_factorization", wa.counit_factorization);
    s.checks.emplace_back("weak_antipode_identity", wa.antipode_identity);
    s.classification = classify(w, tol);
    return s;
}

LinearMap counital_target_map(const WeakHopfAlgebra& w)
{
    const int d = w.dim();
    // e_a S(e_b)
    Mat f(d, d * d);
    for (int a = 0; a < d; ++a) {
        Mat l = left_mult(basis_element(w.Q, a));
        for (int b = 0; b < d; ++b)
            f.col(a * d + b) = l * w.antipode.m.col(b);
    }
    Mat out(d, d);
    for (int q = 0; q < d; ++q)
        out.col(q) = f * flat(w.delta_of(q));
    return LinearMap(w.Q, w.Q, out);
}

LinearMap counital_source_map(const WeakHopfAlgebra& w)
{
    const int d = w.dim();
    Mat f = products(w.Q, w.antipode.m);
    Mat out(d, d);
    for (int q = 0; q < d; ++q)
        out.col(q) = f * flat(w.delta_of(q));
    return LinearMap(w.Q, w.Q, out);
}

Element counital_target(const WeakHopfAlgebra& w, const Element& q)
{
    return counital_target_map(w)(q);
}

Element counital_source(const WeakHopfAlgebra& w, const Element& q)
{
    return counital_source_map(w)(q);
}

namespace {

bool invertible_element(const Element& g, double tol)
{
    for (const auto& b : g.blk)
        if (min_singular_value(b) <= tol * std::max(1.0, max_abs(b)))
            return false;
    return true;
}

Element inverse_element(const Element& g)
{
    Element out(g.alg);
    for (size_t i = 0; i < g.blk.size(); ++i)
        out.blk[i] = g.blk[i].inverse();
    return out;
}

}  // namespace

std::optional<Conjugator> antipode_square_conjugator(const WeakHopfAlgebra& w, Rng& rng, double tol)
{
    const int d = w.dim();
    Mat s2 = w.antipode.m * w.antipode.m;
    KernelBuilder kb(d);
    for (int q = 0; q < d; ++q) {
        Element sq = from_coords(w.Q, s2.col(q));
        kb.add(left_mult(sq) - right_mult(basis_element(w.Q, q)), tol);
    }
    const Mat& k = kb.basis();
    if (k.cols() == 0)
        return std::nullopt;
    std::vector<Element> candidates;
    Element one = unit(w.Q);
    Subalgebra ks{w.Q, k};
    if (ks.contains(one, 1e-8))
        candidates.push_back(one);
    for (int t = 0; t < 20; ++t)
        candidates.push_back(from_coords(w.Q, k * random_complex(static_cast<int>(k.cols()), 1, rng).col(0)));
    for (const auto& g : candidates) {
        if (!invertible_element(g, 1e-8))
            continue;
        Element gi = inverse_element(g);
        double r = 0.0;
        for (int q = 0; q < d; ++q) {
            Element e = basis_element(w.Q, q);
            r = std::max(r, distance(from_coords(w.Q, s2.col(q)), g * e * gi));
        }
        if (r <= std::max(tol, 1e-9))
            return Conjugator{g, r};
    }
    return std::nullopt;
}

std::optional<Element> haar_integral(const WeakHopfAlgebra& w, double tol)
{
    const int d = w.dim();
    Mat et = counital_target_map(w).m;
    Mat es = counital_source_map(w).m;
    KernelBuilder kb(d);
    for (int q = 0; q < d; ++q) {
        Element e = basis_element(w.Q, q);
        kb.add(left_mult(e) - left_mult(from_coords(w.Q, et.col(q))), tol);
        kb.add(right_mult(e) - right_mult(from_coords(w.Q, es.col(q))), tol);
    }
    const Mat& k = kb.basis();
    if (k.cols() == 0)
        return std::nullopt;
    Vec one = coords(unit(w.Q));
    Mat sys = et * k;
    Vec c = lstsq(sys, one);
    if ((sys * c - one).norm() > 1e-7)
        return std::nullopt;
    return from_coords(w.Q, k * c);
}

int FiniteGroup::identity() const
{
    for (int e = 0; e < size(); ++e) {
        bool ok = true;
        for (int g = 0; g < size() && ok; ++g)
            ok = mul[e][g] == g && mul[g][e] == g;
        if (ok)
            return e;
    }
    throw invalid_structure("group table has no identity");
}

int FiniteGroup::inverse(int g) const
{
    int e = identity();
    for (int h = 0; h < size(); ++h)
        if (mul[g][h] == e && mul[h][g] == e)
            return h;
    throw invalid_structure("group element " + std::to_string(g) + " has no inverse");
}

void validate(const FiniteGroup& g)
{
    const int n = g.size();
    if (n < 1)
        throw invalid_structure("empty group");
    for (const auto& row : g.mul) {
        if (static_cast<int>(row.size()) != n)
            throw invalid_structure("group table is not square");
        for (int x : row)
            if (x < 0 || x >= n)
                throw invalid_structure("group table entry out of range");
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (g.mul[g.mul[a][b]][c] != g.mul[a][g.mul[b][c]])
                    throw invalid_structure("group table is not associative at (" + std::to_string(a) + "," +
                                            std::to_string(b) + "," + std::to_string(c) + ")");
    g.identity();
    for (int a = 0; a < n; ++a)
        g.inverse(a);
}

FiniteGroup cyclic_group(int n)
{
    FiniteGroup g;
    g.name = "Z" + std::to_string(n);
    g.mul.assign(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            g.mul[a][b] = (a + b) % n;
    return g;
}

FiniteGroup symmetric_group(int n)
{
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do
        perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    const int m = static_cast<int>(perms.size());
    FiniteGroup g;
    g.name = "S" + std::to_string(n);
    g.mul.assign(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            std::vector<int> c(n);
            for (int i = 0; i < n; ++i)
                c[i] = perms[a][perms[b][i]];
            g.mul[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
        }
    return g;
}

void validate(const Groupoid& g)
{
    const int n = g.arrows();
    if (g.objects < 1 || n < 1)
        throw invalid_structure("groupoid needs objects and arrows");
    if (static_cast<int>(g.target.size()) != n || static_cast<int>(g.comp.size()) != n)
        throw invalid_structure("groupoid arrays have inconsistent lengths");
    for (int a = 0; a < n; ++a) {
        if (g.source[a] < 0 || g.source[a] >= g.objects || g.target[a] < 0 || g.target[a] >= g.objects)
            throw invalid_structure("arrow endpoint out of range");
        if (static_cast<int>(g.comp[a].size()) != n)
            throw invalid_structure("composition table is not square");
        for (int b = 0; b < n; ++b) {
            int c = g.comp[a][b];
            bool composable = g.source[a] == g.target[b];
            if (composable != (c >= 0))
                throw invalid_structure("composition defined exactly on composable pairs");
            if (c >= n)
                throw invalid_structure("composition entry out of range");
            if (c >= 0 && (g.source[c] != g.source[b] || g.target[c] != g.target[a]))
                throw invalid_structure("composite has wrong endpoints");
        }
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                int ab = g.comp[a][b], bc = g.comp[b][c];
                if (ab >= 0 && bc >= 0 && g.comp[ab][c] != g.comp[a][bc])
                    throw invalid_structure("groupoid composition is not associative");
            }
    std::vector<int> id(g.objects, -1);
    for (int x = 0; x < g.objects; ++x)
        for (int a = 0; a < n && id[x] < 0; ++a) {
            if (g.source[a] != x || g.target[a] != x)
                continue;
            bool ok = true;
            for (int b = 0; b < n && ok; ++b) {
                if (g.target[b] == x && g.comp[a][b] != b)
                    ok = false;
                if (g.source[b] == x && g.comp[b][a] != b)
                    ok = false;
            }
            if (ok)
                id[x] = a;
        }
    for (int x = 0; x < g.objects; ++x)
        if (id[x] < 0)
            throw invalid_structure("object " + std::to_string(x) + " has no identity arrow");
    for (int a = 0; a < n; ++a) {
        bool found = false;
        for (int b = 0; b < n && !found; ++b)
            found = g.comp[a][b] == id[g.target[a]] && g.comp[b][a] == id[g.source[a]];
        if (!found)
            throw invalid_structure("arrow " + std::to_string(a) + " has no inverse");
    }
}

Groupoid pair_groupoid(int n)
{
    Groupoid g;
    g.name = "pair" + std::to_string(n);
    g.objects = n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            g.target.push_back(i);
            g.source.push_back(j);
        }
    const int m = n * n;
    g.comp.assign(m, std::vector<int>(m, -1));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (g.source[a] == g.target[b])
                g.comp[a][b] = g.target[a] * n + g.source[b];
    return g;
}

Transported from_abstract(const std::string& name, const AbstractHopfData& d, Rng& rng, double tol)
{
    const int n = d.sc.n;
    if (d.delta.rows() != n * n || d.delta.cols() != n || d.counit.size() != n || d.antipode.rows() != n ||
        d.antipode.cols() != n)
        throw shape_error("abstract structure maps have wrong sizes");
    Wedderburn wd = wedderburn_decompose(d.sc, rng, tol);
    Mat dk(n * n, n);
    for (int q = 0; q < n; ++q) {
        Vec col = d.delta * wd.inv.col(q);
        Mat m = unflat(col, n, n);
        dk.col(q) = flat(wd.iso * m * wd.iso.transpose());
    }
    Vec eps = (d.counit.transpose() * wd.inv).transpose();
    Mat s = wd.iso * d.antipode * wd.inv;
    Transported t;
    t.w = make_weak_hopf(name, wd.alg, dk, eps, s);
    t.iso = wd.iso;
    t.inv = wd.inv;
    return t;
}

WeakHopfAlgebra group_algebra(const FiniteGroup& g, Rng& rng)
{
    return group_algebra_transported(g, rng).w;
}

Transported group_algebra_transported(const FiniteGroup& g, Rng& rng)
{
    validate(g);
    const int n = g.size();
    AbstractHopfData d;
    d.sc.n = n;
    d.sc.star = Mat::Zero(n, n);
    d.delta = Mat::Zero(n * n, n);
    d.counit = Vec::Ones(n);
    d.antipode = Mat::Zero(n, n);
    for (int a = 0; a < n; ++a) {
        Mat l = Mat::Zero(n, n);
        for (int b = 0; b < n; ++b)
            l(g.mul[a][b], b) = 1.0;
        d.sc.L.push_back(l);
        d.sc.star(g.inverse(a), a) = 1.0;
        d.delta(a * n + a, a) = 1.0;
        d.antipode(g.inverse(a), a) = 1.0;
    }
    return from_abstract("group " + g.name, d, rng);
}

WeakHopfAlgebra function_algebra(const FiniteGroup& g)
{
    validate(g);
    const int n = g.size();
    Algebra q(std::vector<int>(n, 1));
    Mat delta = Mat::Zero(n * n, n);
    Vec eps = Vec::Zero(n);
    Mat s = Mat::Zero(n, n);
    eps(g.identity()) = 1.0;
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            delta(a * n + b, g.mul[a][b]) = 1.0;
        s(g.inverse(a), a) = 1.0;
    }
    return make_weak_hopf("functions on " + g.name, q, delta, eps, s);
}

WeakHopfAlgebra groupoid_algebra(const Groupoid& g, Rng& rng)
{
    validate(g);
    const int n = g.arrows();
    std::vector<int> inv(n, -1);
    auto is_identity = [&](int a) {
        if (g.source[a] != g.target[a])
            return false;
        for (int c = 0; c < n; ++c)
            if (g.target[c] == g.target[a] && g.comp[a][c] != c)
                return false;
        return true;
    };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n && inv[a] < 0; ++b) {
            int ab = g.comp[a][b], ba = g.comp[b][a];
            if (ab >= 0 && ba >= 0 && is_identity(ab) && is_identity(ba))
                inv[a] = b;
        }

    // principal groupoids map arrow-by-arrow onto matrix units
    bool principal = true;
    for (int a = 0; a < n; ++a)
        if (g.source[a] == g.target[a] && !is_identity(a))
            principal = false;
    if (principal) {
        std::vector<int> comp(g.objects, -1), local(g.objects, 0);
        std::vector<int> sizes;
        for (int x = 0; x < g.objects; ++x) {
            if (comp[x] >= 0)
                continue;
            int c = static_cast<int>(sizes.size());
            int k = 0;
            for (int y = x; y < g.objects; ++y) {
                bool linked = y == x;
                for (int a = 0; a < n && !linked; ++a)
                    linked = g.source[a] == x && g.target[a] == y;
                if (linked) {
                    comp[y] = c;
                    local[y] = k++;
                }
            }
            sizes.push_back(k);
        }
        Algebra q(sizes);
        const int d = q.dim();
        if (d != n)
            throw invalid_structure("groupoid arrows do not fill the matrix units");
        std::vector<int> where(n);
        for (int a = 0; a < n; ++a)
            where[a] = q.index(comp[g.target[a]], local[g.target[a]], local[g.source[a]]);
        Mat delta = Mat::Zero(d * d, d);
        Vec eps = Vec::Zero(d);
        Mat s = Mat::Zero(d, d);
        for (int a = 0; a < n; ++a) {
            int k = where[a];
            delta(k * d + k, k) = 1.0;
            eps(k) = 1.0;
            s(where[inv[a]], k) = 1.0;
        }
        return make_weak_hopf("groupoid " + g.name, q, delta, eps, s);
    }

    AbstractHopfData d;
    d.sc.n = n;
    d.sc.star = Mat::Zero(n, n);
    d.delta = Mat::Zero(n * n, n);
    d.counit = Vec::Ones(n);
    d.antipode = Mat::Zero(n, n);
    for (int a = 0; a < n; ++a) {
        Mat l = Mat::Zero(n, n);
        for (int b = 0; b < n; ++b)
            if (g.comp[a][b] >= 0)
                l(g.comp[a][b], b) = 1.0;
        d.sc.L.push_back(l);
        d.sc.star(inv[a], a) = 1.0;
        d.delta(a * n + a, a) = 1.0;
        d.antipode(inv[a], a) = 1.0;
    }
    return from_abstract("groupoid " + g.name, d, rng).w;
}

}  // namespace whopf
