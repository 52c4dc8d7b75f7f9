#include "whopf/towers.hpp"

#include "worst.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>

namespace whopf {

using detail::idx;
using detail::Worst;

namespace {

// tau(x y) without forming the product
cplx trace_pair(const TraceState& tau, const Element& x, const Element& y)
{
    cplx s = 0.0;
    for (size_t b = 0; b < x.blk.size(); ++b)
        s += tau.w[b] * (x.blk[b].array() * y.blk[b].transpose().array()).sum();
    return s;
}

std::vector<std::vector<int>> sorted_rows(const IMat& m)
{
    std::vector<std::vector<int>> rows;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        std::vector<int> r(m.cols());
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            r[j] = m(i, j);
        rows.push_back(r);
    }
    std::sort(rows.begin(), rows.end());
    return rows;
}

Vec tensor_product_kron(const Algebra& q, const Vec& u, const Vec& v)
{
    Algebra qq = tensor(q, q);
    Element x = from_coords(qq, kron_to_tensor_coords(q, q, u));
    Element y = from_coords(qq, kron_to_tensor_coords(q, q, v));
    return tensor_to_kron_coords(q, q, coords(x * y));
}

Vec flat_rows(const Mat& m)
{
    Vec v(m.size());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            v(i * m.cols() + j) = m(i, j);
    return v;
}

}  // namespace

bool is_connected(const IMat& lambda)
{
    const int nb = static_cast<int>(lambda.rows()), na = static_cast<int>(lambda.cols());
    if (nb == 0 || na == 0)
        return false;
    for (int i = 0; i < nb; ++i)
        if (lambda.row(i).maxCoeff() <= 0)
            return false;
    for (int j = 0; j < na; ++j)
        if (lambda.col(j).maxCoeff() <= 0)
            return false;
    // vertices 0..nb-1 are B blocks, nb.. are A blocks
    std::vector<bool> seen(nb + na, false);
    std::queue<int> todo;
    todo.push(0);
    seen[0] = true;
    while (!todo.empty()) {
        int v = todo.front();
        todo.pop();
        if (v < nb) {
            for (int j = 0; j < na; ++j)
                if (lambda(v, j) > 0 && !seen[nb + j]) {
                    seen[nb + j] = true;
                    todo.push(nb + j);
                }
        } else {
            for (int i = 0; i < nb; ++i)
                if (lambda(i, v - nb) > 0 && !seen[i]) {
                    seen[i] = true;
                    todo.push(i);
                }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool s) { return s; });
}

MarkovWeights markov_weights(const IMat& lambda, const std::vector<int>& b_sizes)
{
    if (!is_connected(lambda))
        throw invalid_structure("inclusion matrix is not connected");
    RMat l = lambda.cast<double>();
    Perron pf = perron_frobenius(l * l.transpose());
    RVec tb = pf.vector.cwiseAbs();
    double norm = 0.0;
    for (int i = 0; i < tb.size(); ++i)
        norm += b_sizes[i] * tb(i);
    tb /= norm;
    RVec ta = l.transpose() * tb;
    MarkovWeights mw;
    mw.index = pf.value;
    mw.b.assign(tb.data(), tb.data() + tb.size());
    mw.a.assign(ta.data(), ta.data() + ta.size());
    return mw;
}

Inclusion make_inclusion(const LinearMap& embed, double tol)
{
    const Algebra& a = embed.src;
    const Algebra& b = embed.tgt;
    if (distance(embed(unit(a)), unit(b)) > tol)
        throw invalid_structure("embedding is not unital");
    for (int i = 0; i < a.dim(); ++i) {
        Element x = basis_element(a, i);
        Element fx = embed(x);
        if (distance(embed(x.adjoint()), fx.adjoint()) > tol)
            throw invalid_structure("embedding does not preserve the adjoint");
        for (int j = 0; j < a.dim(); ++j) {
            Element y = basis_element(a, j);
            if (distance(embed(x * y), fx * embed(y)) > tol)
                throw invalid_structure("embedding is not multiplicative");
        }
    }
    Inclusion inc;
    inc.A = a;
    inc.B = b;
    inc.embed = embed;
    inc.lambda = inclusion_matrix(embed);
    for (int i = 0; i < b.nblocks(); ++i) {
        int s = 0;
        for (int j = 0; j < a.nblocks(); ++j)
            s += inc.lambda(i, j) * a.blocks[j];
        if (s != b.blocks[i])
            throw invalid_structure("inclusion matrix does not reproduce the block sizes of " + b.str());
    }
    MarkovWeights mw = markov_weights(inc.lambda, b.blocks);
    inc.index = mw.index;
    inc.trace = TraceState(b, mw.b);
    inc.trace_a = TraceState(a, mw.a);
    return inc;
}

LinearMap standard_embedding(const Algebra& a, const Algebra& b, const IMat& lambda)
{
    if (lambda.rows() != b.nblocks() || lambda.cols() != a.nblocks())
        throw shape_error("inclusion matrix has the wrong shape");
    Mat m = Mat::Zero(b.dim(), a.dim());
    for (int i = 0; i < b.nblocks(); ++i) {
        int off = 0;
        for (int j = 0; j < a.nblocks(); ++j) {
            const int n = a.blocks[j];
            for (int c = 0; c < lambda(i, j); ++c) {
                if (off + n > b.blocks[i])
                    throw shape_error("multiplicities overflow block " + std::to_string(i) + " of " + b.str());
                for (int r = 0; r < n; ++r)
                    for (int s = 0; s < n; ++s)
                        m(b.index(i, off + r, off + s), a.index(j, r, s)) = 1.0;
                off += n;
            }
        }
        if (off != b.blocks[i])
            throw shape_error("multiplicities do not fill block " + std::to_string(i) + " of " + b.str());
    }
    return LinearMap(a, b, m);
}

Inclusion standard_inclusion(const std::vector<int>& a_blocks, const IMat& lambda)
{
    Algebra a(a_blocks);
    std::vector<int> sizes;
    for (Eigen::Index i = 0; i < lambda.rows(); ++i) {
        int s = 0;
        for (int j = 0; j < a.nblocks(); ++j)
            s += lambda(i, j) * a_blocks[j];
        sizes.push_back(s);
    }
    return make_inclusion(standard_embedding(a, Algebra(sizes), lambda));
}

double index(const Inclusion& inc) { return inc.index; }

LinearMap expectation_onto(const LinearMap& embed, const TraceState& tau)
{
    const Mat& x = embed.m;
    Mat w = Mat(tau.coord_weights().cast<cplx>().asDiagonal());
    Mat xw = x.adjoint() * w;
    Mat g = xw * x;
    return LinearMap(embed.tgt, embed.src, g.ldlt().solve(xw));
}

BasicConstruction basic_construction(const Inclusion& inc, double tol)
{
    const Algebra& b = inc.B;
    const int db = b.dim();
    RVec sq = inc.trace.coord_weights().cwiseSqrt();
    Mat d = Mat(sq.cast<cplx>().asDiagonal());
    Mat u = range_basis(d * inc.embed.m, tol);
    Mat e = u * u.adjoint();

    // B2 is the commutant of the right A action on L2(B); it splits over the blocks of A
    const Algebra& a = inc.A;
    std::vector<Mat> v;
    std::vector<int> sizes;
    for (int j = 0; j < a.nblocks(); ++j) {
        Mat r = right_mult(inc.embed(matrix_unit(a, j, 0, 0)));
        v.push_back(range_basis(r, tol));
        sizes.push_back(static_cast<int>(v.back().cols()));
    }
    Algebra b2(sizes);
    auto compress = [&](const Mat& op) {
        Element x(b2);
        for (int j = 0; j < b2.nblocks(); ++j)
            x.blk[j] = v[j].adjoint() * op * v[j];
        return x;
    };
    Mat up(b2.dim(), db);
    for (int k = 0; k < db; ++k)
        up.col(k) = coords(compress(left_mult(basis_element(b, k))));
    BasicConstruction bc;
    bc.upper = make_inclusion(LinearMap(b, b2, up), std::sqrt(tol));
    bc.e = compress(e);
    bc.reflected = sorted_rows(bc.upper.lambda) == sorted_rows(IMat(inc.lambda.transpose()));

    LinearMap ea = expectation_onto(inc.embed, inc.trace);
    const LinearMap& f = bc.upper.embed;
    Worst mk, tr;
    for (int k = 0; k < db; ++k) {
        Element x = basis_element(b, k);
        Element lhs = bc.e * f(x) * bc.e;
        Element rhs = f(inc.embed(ea(x))) * bc.e;
        mk.see(distance(lhs, rhs), [&] { return idx("b", k); });
        tr.see(std::abs(bc.upper.trace(bc.e * f(x)) - inc.trace(x) / inc.index), [&] { return idx("b", k); });
    }
    for (int i = 0; i < b.nblocks(); ++i)
        tr.see(std::abs(bc.upper.trace_a.w[i] - inc.trace.w[i]), [&] { return idx("restriction", i); });
    tr.see(std::abs(bc.upper.index - inc.index), [] { return std::string("index"); });
    bc.markov_relation = mk.result(tol);
    bc.trace_relation = tr.result(tol);
    return bc;
}

LinearMap TowerContext::embedding(int from, int to) const
{
    if (from < 0 || to >= static_cast<int>(level.size()) || from > to)
        throw shape_error("no embedding between these tower levels");
    LinearMap m = identity_map(level[from]);
    for (int k = from; k < to; ++k)
        m = up[k].after(m);
    return m;
}

Element TowerContext::lift(const Element& x, int from, int to) const { return embedding(from, to)(x); }

TowerContext build_tower(const Inclusion& inc, double tol)
{
    TowerContext t;
    BasicConstruction b1 = basic_construction(inc, tol);
    BasicConstruction b2 = basic_construction(b1.upper, tol);
    t.level = {inc.A, inc.B, b1.upper.B, b2.upper.B};
    t.up = {inc.embed, b1.upper.embed, b2.upper.embed};
    t.trace = {inc.trace_a, inc.trace, b1.upper.trace, b2.upper.trace};
    t.e1 = b1.e;
    t.e2 = b2.e;
    t.lambda = inc.index;
    t.lambda_matrix = inc.lambda;
    t.steps = {b1, b2};
    return t;
}

std::vector<long long> commutant_dimensions(const IMat& lambda, int levels)
{
    using LMat = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;
    LMat l = lambda.cast<long long>();
    LMat m = LMat::Identity(lambda.cols(), lambda.cols());
    std::vector<long long> out;
    for (int k = 0; k <= levels; ++k) {
        long long s = 0;
        for (Eigen::Index i = 0; i < m.size(); ++i) {
            long long sq;
            if (__builtin_mul_overflow(m.data()[i], m.data()[i], &sq) || __builtin_add_overflow(s, sq, &s))
                throw error("commutant dimension overflows 64 bits");
        }
        out.push_back(s);
        if (k == levels)
            break;
        const LMat& g = (k % 2 == 0) ? l : LMat(l.transpose());
        LMat next = LMat::Zero(g.rows(), m.cols());
        for (Eigen::Index i = 0; i < g.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                for (Eigen::Index r = 0; r < g.cols(); ++r) {
                    long long p;
                    if (__builtin_mul_overflow(g(i, r), m(r, j), &p) || __builtin_add_overflow(next(i, j), p, &next(i, j)))
                        throw error("path count overflows 64 bits");
                }
        m = next;
    }
    return out;
}

std::vector<int> commutant_dimensions_numeric(const TowerContext& t, double tol)
{
    std::vector<int> out;
    for (int k = 0; k < static_cast<int>(t.level.size()); ++k)
        out.push_back(relative_commutant(image(t.embedding(0, k), tol), tol).dim());
    return out;
}

int depth(const IMat& lambda)
{
    if (!is_connected(lambda))
        throw invalid_structure("inclusion matrix is not connected");
    using BMat = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;
    auto support = [](const BMat& m) { return BMat((m.array() > 0).cast<int>()); };
    BMat l = support(lambda);
    BMat lt = l.transpose();
    std::vector<BMat> m = {BMat::Identity(lambda.cols(), lambda.cols()), l};
    const int limit = 4 * static_cast<int>(lambda.rows() + lambda.cols()) + 4;
    for (int k = 1; k < limit; ++k) {
        const BMat& g = (k % 2 == 0) ? l : lt;
        m.push_back(support(g * m[k]));
        if (m[k + 1] == m[k - 1])
            return k;
    }
    throw error("depth did not stabilize");
}

int depth(const Inclusion& inc) { return depth(inc.lambda); }
bool is_depth_two(const Inclusion& inc) { return depth(inc) <= 2; }

// ---------------- canonical triple on relative tensor powers ----------------

namespace {

struct BasisIndex {
    std::vector<int> blk, row, col;
};

BasisIndex basis_index(const Algebra& b)
{
    BasisIndex bi;
    for (int s = 0; s < b.nblocks(); ++s)
        for (int r = 0; r < b.blocks[s]; ++r)
            for (int c = 0; c < b.blocks[s]; ++c) {
                bi.blk.push_back(s);
                bi.row.push_back(r);
                bi.col.push_back(c);
            }
    return bi;
}

// A-valued inner products of k-fold tensors: row I*n+J holds <xi_I, xi_J>_A in B coordinates
struct TensorGram {
    Mat inner;  // n*n x dim B
    Mat gram;   // n x n, tau of the above
    int n = 1;
};

TensorGram next_gram(const TensorGram& prev, const Algebra& b, const BasisIndex& bi, const Mat& pa, const RVec& wb,
                     bool keep_inner)
{
    const int db = b.dim(), n = prev.n, nn = n * db;
    TensorGram out;
    out.n = nn;
    out.gram = Mat::Zero(nn, nn);
    if (keep_inner)
        out.inner = Mat::Zero(static_cast<Eigen::Index>(nn) * nn, db);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto x = prev.inner.row(static_cast<Eigen::Index>(i) * n + j);
            if (x.cwiseAbs().maxCoeff() == 0.0)
                continue;
            for (int p = 0; p < db; ++p)
                for (int q = 0; q < db; ++q) {
                    const int s = bi.blk[p];
                    if (bi.blk[q] != s)
                        continue;
                    // e_{ab}^* X e_{cd} = X_{ac} e_{bd}
                    cplx xa = x(b.index(s, bi.row[p], bi.row[q]));
                    if (xa == cplx(0.0))
                        continue;
                    const int r = i * db + p, c = j * db + q;
                    const int bd = b.index(s, bi.col[p], bi.col[q]);
                    if (bi.col[p] == bi.col[q])
                        out.gram(r, c) += xa * wb(bd);
                    if (keep_inner)
                        out.inner.row(static_cast<Eigen::Index>(r) * nn + c) += xa * pa.col(bd).transpose();
                }
        }
    return out;
}

void orthonormal_coordinates(const Mat& g, double tol, Mat& proj, Mat& lift)
{
    Eigen::SelfAdjointEigenSolver<Mat> es(Mat(0.5 * (g + g.adjoint())));
    const RVec& mu = es.eigenvalues();
    const double cut = tol * std::max(1.0, mu.cwiseAbs().maxCoeff());
    std::vector<int> keep;
    for (int i = 0; i < mu.size(); ++i)
        if (mu(i) > cut)
            keep.push_back(i);
    const int r = static_cast<int>(keep.size());
    proj = Mat(r, g.rows());
    lift = Mat(g.rows(), r);
    for (int k = 0; k < r; ++k) {
        double s = std::sqrt(mu(keep[k]));
        proj.row(k) = s * es.eigenvectors().col(keep[k]).adjoint();
        lift.col(k) = es.eigenvectors().col(keep[k]) / s;
    }
}

// (l (x) 1) m, where the rows of m are indexed by i * inner + j with i in the first factor
Mat act_on_first_factor(const Mat& l, const Mat& m)
{
    const Eigen::Index db = l.rows(), inner = m.rows() / db;
    Mat out(m.rows(), m.cols());
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        Eigen::Map<const Mat> y(m.col(c).data(), inner, db);
        Eigen::Map<Mat>(out.col(c).data(), inner, db) = y * l.transpose();
    }
    return out;
}

QSystem build_qsystem(const Algebra& a, const Algebra& b, const Mat& embed, const TraceState& ta, const TraceState& tb,
                      double lambda, double tol)
{
    QSystem qs;
    qs.A = a;
    qs.B = b;
    qs.lambda = lambda;
    qs.embed = embed;
    const int db = b.dim();
    BasisIndex bi = basis_index(b);
    RVec wa = ta.coord_weights(), wb = tb.coord_weights();
    Mat ea = expectation_onto(LinearMap(a, b, embed), tb).m;
    Mat pa = embed * ea;

    TensorGram g0;
    g0.inner = coords(unit(b)).transpose();
    TensorGram g1 = next_gram(g0, b, bi, pa, wb, true);
    TensorGram g2 = next_gram(g1, b, bi, pa, wb, true);
    TensorGram g3 = next_gram(g2, b, bi, pa, wb, false);

    qs.proj.resize(4);
    qs.lift.resize(4);
    qs.proj[0] = Mat(wa.cwiseSqrt().cast<cplx>().asDiagonal());
    qs.lift[0] = Mat(wa.cwiseSqrt().cwiseInverse().cast<cplx>().asDiagonal());
    orthonormal_coordinates(g1.gram, tol, qs.proj[1], qs.lift[1]);
    orthonormal_coordinates(g2.gram, tol, qs.proj[2], qs.lift[2]);
    orthonormal_coordinates(g3.gram, tol, qs.proj[3], qs.lift[3]);

    Mat mult(db, db * db);
    for (int p = 0; p < db; ++p)
        for (int q = 0; q < db; ++q)
            mult.col(p * db + q) = coords(basis_element(b, p) * basis_element(b, q));

    qs.w = qs.proj[1] * embed * qs.lift[0];
    qs.x = (qs.proj[1] * mult * qs.lift[2]).adjoint() / std::sqrt(lambda);

    for (int k = 0; k < a.dim(); ++k) {
        Element x = basis_element(a, k);
        Mat l = left_mult(from_coords(b, embed.col(k)));
        std::vector<Mat> ops = {qs.proj[0] * left_mult(x) * qs.lift[0]};
        for (int level = 1; level <= 3; ++level)
            ops.push_back(qs.proj[level] * act_on_first_factor(l, qs.lift[level]));
        for (int level = 0; level <= 3; ++level)
            qs.left_a.push_back(ops[level]);
    }
    return qs;
}

}  // namespace

QSystem qsystem_from_inclusion(const Inclusion& inc, double tol)
{
    return build_qsystem(inc.A, inc.B, inc.embed.m, inc.trace_a, inc.trace, inc.index, tol);
}

QSystem trivial_qsystem(const Algebra& a)
{
    TraceState t = matrix_trace(a).normalized();
    return build_qsystem(a, a, Mat::Identity(a.dim(), a.dim()), t, t, 1.0, 1e-9);
}

QSystemReport verify_qsystem(const QSystem& qs, double tol)
{
    QSystemReport r;
    const int db = qs.B.dim();
    const Mat ib = Mat::Identity(db, db);
    auto one = [](const QSystem& q, int k) { return Mat::Identity(q.space_dim(k), q.space_dim(k)); };
    auto single = [&](double v, const char* where) {
        Worst w;
        w.see(v, [&] { return std::string(where); });
        return w.result(tol);
    };

    r.w_isometry = single(max_abs(Mat(qs.w.adjoint() * qs.w - one(qs, 0))), "w*w");
    r.x_isometry = single(max_abs(Mat(qs.x.adjoint() * qs.x - one(qs, 1))), "x*x");

    {
        Worst ww, wx;
        for (int k = 0; k < qs.A.dim(); ++k) {
            const Mat* l = &qs.left_a[4 * k];
            ww.see(max_abs(Mat(qs.w * l[0] - l[1] * qs.w)), [&] { return idx("a", k); });
            wx.see(max_abs(Mat(qs.x * l[1] - l[2] * qs.x)), [&] { return idx("a", k); });
        }
        r.w_intertwines = ww.result(tol);
        r.x_intertwines = wx.result(tol);
    }

    // raw representatives
    Mat xr = qs.lift[2] * qs.x * qs.proj[1];
    Mat xsr = qs.lift[1] * qs.x.adjoint() * qs.proj[2];
    Mat wsr = qs.embed * qs.lift[0] * qs.w.adjoint() * qs.proj[1];
    Mat mult(db, db * db);
    for (int p = 0; p < db; ++p)
        for (int q = 0; q < db; ++q)
            mult.col(p * db + q) = coords(basis_element(qs.B, p) * basis_element(qs.B, q));

    Mat lhs = qs.proj[3] * kron(xr, ib) * qs.lift[2] * qs.x;
    Mat rhs = qs.proj[3] * kron(ib, xr) * qs.lift[2] * qs.x;
    r.associativity = single(max_abs(Mat(lhs - rhs)), "x x = rho(x) x");

    Mat f = qs.proj[2] * kron(ib, xsr) * kron(xr, ib) * qs.lift[2];
    r.frobenius = single(max_abs(Mat(qs.x * qs.x.adjoint() - f)), "x x* = rho(x*) x");

    const double s = 1.0 / std::sqrt(qs.lambda);
    Mat ul = qs.proj[1] * mult * kron(wsr, ib) * qs.lift[2] * qs.x;
    Mat ur = qs.proj[1] * mult * kron(ib, wsr) * qs.lift[2] * qs.x;
    r.unit_left = single(max_abs(Mat(ul - s * one(qs, 1))), "w* x");
    r.unit_right = single(max_abs(Mat(ur - s * one(qs, 1))), "rho(w*) x");
    return r;
}

// ---------------- extraction ----------------

ExtractionResult extract_weak_hopf(const Inclusion& inc, Rng& rng, const ExtractOptions& opt)
{
    const double tol = opt.tol;
    ExtractionResult res;
    res.inc = inc;
    res.depth = depth(inc);
    if (res.depth > 2)
        throw depth_error(res.depth);
    res.dressed = opt.dress;
    res.tower = build_tower(inc, tol);
    const TowerContext& t = res.tower;
    const double lam = t.lambda;

    res.q_dec = decompose(relative_commutant(image(t.embedding(0, 2), tol), tol), rng, tol);
    res.qhat_dec = decompose(relative_commutant(image(t.embedding(1, 3), tol), tol), rng, tol);
    const Algebra& q = res.q_dec.alg;
    const Algebra& qh = res.qhat_dec.alg;
    const int d = q.dim();
    if (qh.dim() != d)
        throw invalid_structure("relative commutants have different dimensions: " + std::to_string(d) + " vs " +
                                std::to_string(qh.dim()));

    res.inner = relative_commutant(image(inc.embed, tol), tol);
    res.inner_dec = decompose(res.inner, rng, tol);
    Element dressing(inc.B);
    {
        auto ps = res.inner_dec.central_projections();
        for (int s = 0; s < res.inner_dec.alg.nblocks(); ++s) {
            SectorRow row;
            row.block = s;
            row.n = res.inner_dec.alg.blocks[s];
            row.trace = inc.trace(ps[s]).real();
            row.d = lam * row.trace / row.n;
            row.z = std::sqrt(row.n / row.d);
            res.sector_table.push_back(row);
            dressing += cplx(opt.dress ? row.z * row.z : 1.0) * ps[s];
        }
    }

    // <qhat_a, q_i> = tau_3(q_i W e2 e1 qhat_a), then rescaled
    const TraceState& t3 = t.trace[3];
    Element w3 = t.lift(dressing, 1, 3);
    Element e1 = t.lift(t.e1, 2, 3);
    Element tail = w3 * t.e2 * e1;
    std::vector<Element> qhats;
    for (int a = 0; a < d; ++a)
        qhats.push_back(res.qhat_dec.embed(basis_element(qh, a)));
    Mat p0(d, d);
    for (int i = 0; i < d; ++i) {
        Element x = t.lift(res.q_dec.embed(basis_element(q, i)), 2, 3) * tail;
        for (int a = 0; a < d; ++a)
            p0(a, i) = trace_pair(t3, x, qhats[a]);
    }
    if (min_singular_value(p0) < 1e-10)
        throw invalid_structure("pairing is degenerate (condition number " + std::to_string(condition_number(p0)) + ")");

    StructureConstants sq = structure_constants(q), sqh = structure_constants(qh);
    Eigen::PartialPivLU<Mat> lu(p0);
    Mat p0inv = lu.inverse();
    auto coproduct_for = [&](const Mat& p, const Mat& pinv) {
        Mat dk(d * d, d);
        for (int i = 0; i < d; ++i) {
            Mat v(d, d);
            for (int a = 0; a < d; ++a)
                v.row(a) = (sqh.L[a].transpose() * p.col(i)).transpose();
            dk.col(i) = flat_rows(pinv * v * pinv.transpose());
        }
        return dk;
    };
    Mat d1 = coproduct_for(p0, p0inv);
    Vec one_q = coords(unit(q));
    Vec u = d1 * one_q;
    Vec u2 = tensor_product_kron(q, u, u);
    cplx c = u.dot(u2) / u.dot(u);
    res.scale = c.real();
    Mat p = c * p0;
    Mat dk = d1 / c;

    Vec eps = p.transpose() * coords(unit(qh));
    Mat jq = star_matrix(q), jqh = star_matrix(qh);
    Mat s(d, d);
    {
        Eigen::PartialPivLU<Mat> plu(p);
        for (int i = 0; i < d; ++i) {
            Vec v(d);
            for (int a = 0; a < d; ++a) {
                Eigen::Index as;
                jqh.col(a).real().maxCoeff(&as);
                v(a) = std::conj(p(as, i));
            }
            Vec y = plu.solve(v);
            s.col(i) = jq * y.conjugate();
        }
    }
    res.Q = make_weak_hopf("A'nB2 of " + inc.A.str() + " in " + inc.B.str(), q, dk, eps, s);

    // dual side: product of Q transposed through the pairing
    Mat pinv = p.inverse();
    Mat dkh(d * d, d);
    for (int a = 0; a < d; ++a) {
        Mat v(d, d);
        for (int i = 0; i < d; ++i)
            v.row(i) = (sq.L[i].transpose() * p.row(a).transpose()).transpose();
        dkh.col(a) = flat_rows(pinv.transpose() * v * pinv);
    }
    Vec epsh = p * one_q;
    Mat sh = (p * s * pinv).transpose();
    res.Qhat = make_weak_hopf("B'nB3 of " + inc.A.str() + " in " + inc.B.str(), qh, dkh, epsh, sh);

    res.pair.primal = res.Q;
    res.pair.dual = res.Qhat;
    res.pair.pairing = p;
    res.pair.condition = condition_number(p);

    // q |> b = lambda E_B(q b e1)
    LinearMap eb = expectation_onto(t.up[1], t.trace[2]);
    std::vector<Mat> ops;
    const int db = inc.B.dim();
    std::vector<Element> bs;
    for (int k = 0; k < db; ++k)
        bs.push_back(t.up[1](basis_element(inc.B, k)));
    for (int i = 0; i < d; ++i) {
        Element qi = res.q_dec.embed(basis_element(q, i));
        Mat op(db, db);
        for (int k = 0; k < db; ++k)
            op.col(k) = lam * (eb.m * coords(qi * bs[k] * t.e1));
        ops.push_back(op);
    }
    res.action = make_action(res.Q, inc.B, std::move(ops));
    return res;
}

InnerPartReport inner_part(const ExtractionResult& res, double tol)
{
    const WeakHopfAlgebra& w = res.Q;
    const Algebra& q = w.Q;
    const Algebra& b = res.inc.B;
    const int d = q.dim(), db = b.dim();
    InnerPartReport r;

    std::vector<Element> us, ps, pbars;
    Mat pc(d, res.inner.dim()), pbc(d, res.inner.dim());
    for (int k = 0; k < res.inner.dim(); ++k) {
        Element u = res.inner.element(k);
        Vec c = res.q_dec.to_alg * coords(res.tower.up[1](u));
        us.push_back(u);
        ps.push_back(from_coords(q, c));
        pbars.push_back(w.antipode(ps.back()));
        pc.col(k) = c;
        pbc.col(k) = coords(pbars.back());
    }
    r.P = Subalgebra{q, range_basis(pc, tol)};
    r.Pbar = Subalgebra{q, range_basis(pbc, tol)};
    r.nontrivial = r.P.dim() > 1;

    Worst cm, dp, dpb, im;
    for (size_t i = 0; i < ps.size(); ++i)
        for (size_t j = 0; j < pbars.size(); ++j)
            cm.see(distance(ps[i] * pbars[j], pbars[j] * ps[i]), [&] { return idx("p", int(i), "pbar", int(j)); });

    Element d1 = w.coproduct(unit(q));
    Element one = unit(q);
    for (size_t i = 0; i < ps.size(); ++i) {
        dp.see(distance(w.coproduct(ps[i]), d1 * tensor(ps[i], one) * d1), [&] { return idx("p", int(i)); });
        dpb.see(distance(w.coproduct(pbars[i]), d1 * tensor(one, pbars[i]) * d1), [&] { return idx("pbar", int(i)); });
    }

    // right multiplications span: column j is vec(R_{b_j})
    Mat rspan(static_cast<Eigen::Index>(db) * db, db);
    for (int j = 0; j < db; ++j) {
        Mat rm = right_mult(basis_element(b, j));
        rspan.col(j) = Eigen::Map<const Vec>(rm.data(), rm.size());
    }
    for (size_t j = 0; j < pbars.size(); ++j) {
        Mat op = res.action.rep(pbars[j]);
        Vec rhs = Eigen::Map<const Vec>(op.data(), op.size());
        Vec up = lstsq(rspan, rhs);
        Mat rm = right_mult(from_coords(b, up));
        im.see(max_abs(Mat(rm - op)), [&] { return idx("pbar", int(j)); });
        for (size_t i = 0; i < ps.size(); ++i) {
            Mat lhs = res.action.rep(ps[i] * pbars[j]);
            im.see(max_abs(Mat(lhs - left_mult(us[i]) * rm)), [&] { return idx("p", int(i), "pbar", int(j)); });
        }
    }
    r.commute = cm.result(tol);
    r.delta_p = dp.result(tol);
    r.delta_pbar = dpb.result(tol);
    r.implementers = im.result(tol);
    return r;
}

MinimalExpectation minimal_expectation(const ExtractionResult& res, double tol)
{
    const Inclusion& inc = res.inc;
    const TowerContext& t = res.tower;
    const int db = inc.B.dim();
    MinimalExpectation me;
    me.mu = inc.embed.after(expectation_onto(inc.embed, inc.trace));
    me.averaging = averaging_expectation(res.action, tol);
    LinearMap eb = expectation_onto(t.up[1], t.trace[2]);
    Mat j(db, db);
    for (int k = 0; k < db; ++k)
        j.col(k) = t.lambda * (eb.m * coords(t.e1 * t.up[1](basis_element(inc.B, k)) * t.e1));
    me.jones = LinearMap(inc.B, inc.B, j);
    me.residual = std::max({max_abs(Mat(me.mu.m - me.averaging.m)), max_abs(Mat(me.mu.m - me.jones.m)),
                            max_abs(Mat(me.averaging.m - me.jones.m))});
    return me;
}

std::optional<Inclusion> tunnel(const Inclusion& inc)
{
    // A1 has one block per block of B; Lambda^T m = block sizes of A
    const IMat lt = inc.lambda.transpose();
    const int nb = static_cast<int>(inc.lambda.rows());
    const auto& a = inc.A.blocks;
    const int bound = *std::max_element(a.begin(), a.end());
    std::vector<int> m(nb, 1);
    std::function<bool(int)> search = [&](int i) {
        if (i == nb) {
            for (Eigen::Index r = 0; r < lt.rows(); ++r) {
                int s = 0;
                for (int c = 0; c < nb; ++c)
                    s += lt(r, c) * m[c];
                if (s != a[r])
                    return false;
            }
            return true;
        }
        for (int v = 1; v <= bound; ++v) {
            m[i] = v;
            if (search(i + 1))
                return true;
        }
        return false;
    };
    if (!search(0))
        return std::nullopt;
    return make_inclusion(standard_embedding(Algebra(m), inc.A, lt));
}

ReconstructionReport reconstruct(const ExtractionResult& res, Rng& rng, double tol)
{
    auto tn = tunnel(res.inc);
    if (!tn) {
        ReconstructionReport r;
        Subalgebra inv = invariants(res.action, tol);
        r.note = "no tunnel inclusion with these block sizes; dual action not checkable at this level";
        r.invariants_match = inv.dim() == res.inc.A.dim();
        return r;
    }
    ExtractOptions opt;
    opt.tol = tol;
    opt.dress = res.dressed;
    ExtractionResult down = extract_weak_hopf(*tn, rng, opt);
    return verify_reconstruction(res.action, res.inc.embed, down.action, rng, res.inc.trace_a, tol);
}

}  // namespace whopf
