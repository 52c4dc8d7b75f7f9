#include "whopf/sectors.hpp"

#include <algorithm>
#include <cmath>

namespace whopf {

namespace {

long long checked_mul(long long a, long long b)
{
    long long r;
    if (__builtin_mul_overflow(a, b, &r))
        throw error("fusion multiplicity overflow");
    return r;
}

long long checked_add(long long a, long long b)
{
    long long r;
    if (__builtin_add_overflow(a, b, &r))
        throw error("fusion multiplicity overflow");
    return r;
}

void check_labels(const FusionRing& fr, const std::vector<long long>& m)
{
    if (static_cast<int>(m.size()) != fr.rank())
        throw shape_error("multiplicity vector has " + std::to_string(m.size()) + " entries, ring has " +
                          std::to_string(fr.rank()) + " labels");
    for (long long x : m)
        if (x < 0)
            throw invalid_structure("negative multiplicity in sigma");
    if (std::all_of(m.begin(), m.end(), [](long long x) { return x == 0; }))
        throw invalid_structure("sigma is the zero object");
}

}  // namespace

FusionRing::FusionRing(std::string nm, std::vector<std::string> lbl, std::vector<int> dual)
    : name(std::move(nm)), labels(std::move(lbl)), conj(std::move(dual))
{
    const size_t r = labels.size();
    if (r == 0)
        throw shape_error("fusion ring needs at least the unit label");
    if (conj.size() != r)
        throw shape_error("conjugation must list one label per label");
    n.assign(r * r * r, 0);
}

size_t FusionRing::flat(int a, int b, int c) const
{
    const size_t r = labels.size();
    return (static_cast<size_t>(a) * r + static_cast<size_t>(b)) * r + static_cast<size_t>(c);
}

std::optional<int> FusionRing::find(const std::string& label) const
{
    for (int i = 0; i < rank(); ++i)
        if (labels[i] == label)
            return i;
    return std::nullopt;
}

RMat FusionRing::fusion_matrix(int s) const
{
    const int r = rank();
    RMat m(r, r);
    for (int b = 0; b < r; ++b)
        for (int c = 0; c < r; ++c)
            m(b, c) = static_cast<double>(N(s, b, c));
    return m;
}

FusionRing fibonacci_ring()
{
    FusionRing f("fibonacci", {"1", "tau"}, {0, 1});
    f.N(0, 0, 0) = 1;
    f.N(0, 1, 1) = f.N(1, 0, 1) = 1;
    f.N(1, 1, 0) = f.N(1, 1, 1) = 1;
    return f;
}

FusionRing ising_ring()
{
    FusionRing f("ising", {"1", "sigma", "psi"}, {0, 1, 2});
    for (int a = 0; a < 3; ++a)
        f.N(0, a, a) = f.N(a, 0, a) = 1;
    f.N(1, 1, 0) = f.N(1, 1, 2) = 1;
    f.N(1, 2, 1) = f.N(2, 1, 1) = 1;
    f.N(2, 2, 0) = 1;
    return f;
}

FusionRing cyclic_ring(int n)
{
    if (n < 1)
        throw shape_error("Z_n needs n >= 1");
    std::vector<std::string> lbl;
    std::vector<int> dual;
    for (int a = 0; a < n; ++a) {
        lbl.push_back(a == 0 ? "1" : "g" + std::to_string(a));
        dual.push_back((n - a) % n);
    }
    FusionRing f("z" + std::to_string(n), lbl, dual);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            f.N(a, b, (a + b) % n) = 1;
    return f;
}

FusionRing trivial_ring()
{
    FusionRing f("trivial", {"1"}, {0});
    f.N(0, 0, 0) = 1;
    return f;
}

FusionRing rep_s3_ring()
{
    FusionRing f("rep_s3", {"1", "sign", "std"}, {0, 1, 2});
    for (int a = 0; a < 3; ++a)
        f.N(0, a, a) = f.N(a, 0, a) = 1;
    f.N(1, 1, 0) = 1;
    f.N(1, 2, 2) = f.N(2, 1, 2) = 1;
    f.N(2, 2, 0) = f.N(2, 2, 1) = f.N(2, 2, 2) = 1;
    return f;
}

bool FusionReport::pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const FusionCheck& c) { return c.pass; });
}

const FusionCheck* FusionReport::first_failure() const
{
    for (const auto& c : checks)
        if (!c.pass)
            return &c;
    return nullptr;
}

FusionReport verify_fusion(const FusionRing& fr)
{
    const int r = fr.rank();
    FusionReport rep;

    FusionCheck shape{"shape", true, {}};
    if (fr.n.size() != static_cast<size_t>(r) * r * r || fr.conj.size() != static_cast<size_t>(r)) {
        shape.pass = false;
        rep.checks.push_back(shape);
        return rep;
    }
    for (int a = 0; a < r && shape.pass; ++a) {
        const int ab = fr.conj[a];
        if (ab < 0 || ab >= r || fr.conj[ab] != a) {
            shape.pass = false;
            shape.witness = {a};
        }
    }
    if (shape.pass && fr.conj[0] != 0) {
        shape.pass = false;
        shape.witness = {0};
    }
    for (int a = 0; a < r && shape.pass; ++a)
        for (int b = 0; b < r && shape.pass; ++b)
            for (int c = 0; c < r && shape.pass; ++c)
                if (fr.N(a, b, c) < 0) {
                    shape.pass = false;
                    shape.witness = {a, b, c};
                }
    rep.checks.push_back(shape);
    if (!shape.pass)
        return rep;

    FusionCheck unit{"unit", true, {}};
    for (int b = 0; b < r && unit.pass; ++b)
        for (int c = 0; c < r && unit.pass; ++c) {
            const long long want = b == c ? 1 : 0;
            if (fr.N(0, b, c) != want || fr.N(b, 0, c) != want) {
                unit.pass = false;
                unit.witness = {b, c};
            }
        }
    rep.checks.push_back(unit);

    FusionCheck assoc{"associativity", true, {}};
    for (int a = 0; a < r && assoc.pass; ++a)
        for (int b = 0; b < r && assoc.pass; ++b)
            for (int c = 0; c < r && assoc.pass; ++c)
                for (int d = 0; d < r && assoc.pass; ++d) {
                    long long lhs = 0, rhs = 0;
                    for (int e = 0; e < r; ++e) {
                        lhs = checked_add(lhs, checked_mul(fr.N(a, b, e), fr.N(e, c, d)));
                        rhs = checked_add(rhs, checked_mul(fr.N(b, c, e), fr.N(a, e, d)));
                    }
                    if (lhs != rhs) {
                        assoc.pass = false;
                        assoc.witness = {a, b, c, d};
                    }
                }
    rep.checks.push_back(assoc);

    FusionCheck frob{"frobenius", true, {}};
    for (int a = 0; a < r && frob.pass; ++a)
        for (int b = 0; b < r && frob.pass; ++b)
            for (int c = 0; c < r && frob.pass; ++c) {
                const long long x = fr.N(a, b, c);
                if (x != fr.N(fr.conj[a], c, b) || x != fr.N(c, fr.conj[b], a)) {
                    frob.pass = false;
                    frob.witness = {a, b, c};
                }
            }
    rep.checks.push_back(frob);

    FusionCheck duality{"duality", true, {}};
    for (int a = 0; a < r && duality.pass; ++a)
        for (int b = 0; b < r && duality.pass; ++b)
            if (fr.N(a, b, 0) != (b == fr.conj[a] ? 1 : 0)) {
                duality.pass = false;
                duality.witness = {a, b};
            }
    rep.checks.push_back(duality);
    return rep;
}

std::string describe(const FusionRing& fr, const FusionCheck& c)
{
    std::string s = c.axiom + (c.pass ? " ok" : " violated");
    if (!c.witness.empty()) {
        s += " at (";
        for (size_t i = 0; i < c.witness.size(); ++i) {
            const int w = c.witness[i];
            s += (i ? "," : "") + (w >= 0 && w < fr.rank() ? fr.labels[w] : std::to_string(w));
        }
        s += ")";
    }
    return s;
}

void require_valid(const FusionRing& fr)
{
    FusionReport rep = verify_fusion(fr);
    if (const FusionCheck* f = rep.first_failure())
        throw invalid_structure("fusion ring " + fr.name + ": " + describe(fr, *f));
}

QuantumDimensions quantum_dimensions(const FusionRing& fr)
{
    require_valid(fr);
    const int r = fr.rank();
    QuantumDimensions q;
    for (int s = 0; s < r; ++s)
        q.d.push_back(perron_frobenius(fr.fusion_matrix(s), 1e-12).value);
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
            double lhs = 0.0;
            for (int c = 0; c < r; ++c)
                lhs += static_cast<double>(fr.N(a, b, c)) * q.d[c];
            q.consistency = std::max(q.consistency, std::abs(lhs - q.d[a] * q.d[b]));
        }
    return q;
}

bool integral_dimensions(const QuantumDimensions& q, double tol)
{
    return std::all_of(q.d.begin(), q.d.end(), [&](double x) { return std::abs(x - std::round(x)) <= tol; });
}

std::vector<long long> conjugate(const FusionRing& fr, const std::vector<long long>& m)
{
    std::vector<long long> out(m.size(), 0);
    for (int a = 0; a < fr.rank(); ++a)
        out[fr.conj[a]] = m[a];
    return out;
}

std::vector<long long> fuse(const FusionRing& fr, const std::vector<long long>& x, const std::vector<long long>& y)
{
    const int r = fr.rank();
    std::vector<long long> out(r, 0);
    for (int a = 0; a < r; ++a) {
        if (x[a] == 0)
            continue;
        for (int b = 0; b < r; ++b) {
            if (y[b] == 0)
                continue;
            const long long xy = checked_mul(x[a], y[b]);
            for (int c = 0; c < r; ++c)
                out[c] = checked_add(out[c], checked_mul(xy, fr.N(a, b, c)));
        }
    }
    return out;
}

SectorData sector_data(const FusionRing& fr, const std::vector<long long>& sigma, const std::string& kind)
{
    check_labels(fr, sigma);
    QuantumDimensions q = quantum_dimensions(fr);
    SectorData s;
    s.kind = kind;
    s.dims = q.d;
    s.sigma = sigma;
    s.n = fuse(fr, sigma, sigma);
    for (int a = 0; a < fr.rank(); ++a) {
        s.z_weights.push_back(std::sqrt(static_cast<double>(sigma[a]) / q.d[a]));
        s.d_sigma += static_cast<double>(sigma[a]) * q.d[a];
        s.global_dim += q.d[a] * q.d[a];
    }
    s.index = s.d_sigma * s.d_sigma;
    for (long long x : s.n)
        s.dim_q = checked_add(s.dim_q, checked_mul(x, x));
    return s;
}

SectorData sigma_oplus(const FusionRing& fr)
{
    return sector_data(fr, std::vector<long long>(fr.rank(), 1), "oplus");
}

SectorData sigma_reg(const FusionRing& fr)
{
    QuantumDimensions q = quantum_dimensions(fr);
    if (!integral_dimensions(q))
        throw invalid_structure("sigma_reg needs integral quantum dimensions; " + fr.name + " has non-integral ones");
    std::vector<long long> m;
    for (double x : q.d)
        m.push_back(std::llround(x));
    SectorData s = sector_data(fr, m, "reg");
    for (double z : s.z_weights)
        if (std::abs(z - 1.0) > 1e-9)
            throw error("sigma_reg produced a z-weight different from 1");
    return s;
}

long long symmetry_dimension(const FusionRing& fr, const std::vector<long long>& sigma)
{
    require_valid(fr);
    check_labels(fr, sigma);
    long long dim = 0;
    for (long long x : fuse(fr, sigma, sigma))
        dim = checked_add(dim, checked_mul(x, x));
    return dim;
}

DepthTwoResult depth_two_test(const FusionRing& fr, const std::vector<long long>& sigma)
{
    require_valid(fr);
    check_labels(fr, sigma);
    DepthTwoResult res;
    res.triple = fuse(fr, fuse(fr, sigma, conjugate(fr, sigma)), sigma);
    for (int a = 0; a < fr.rank(); ++a)
        if (res.triple[a] > 0 && sigma[a] == 0) {
            res.pass = false;
            res.witness = a;
            break;
        }
    return res;
}

double frobenius_identity_check(const FusionRing& fr, const std::vector<double>& dims)
{
    const int r = fr.rank();
    if (static_cast<int>(dims.size()) != r)
        throw shape_error("one dimension per label expected");
    double worst = 0.0;
    for (int a = 0; a < r; ++a)
        for (int s = 0; s < r; ++s) {
            double lhs = 0.0;
            for (int b = 0; b < r; ++b)
                lhs += dims[b] * static_cast<double>(fr.N(a, b, s));
            worst = std::max(worst, std::abs(lhs - dims[a] * dims[s]));
        }
    return worst;
}

SectorReport report(const FusionRing& fr, const SectorData& data)
{
    SectorReport rep;
    rep.ring = fr.name;
    rep.labels = fr.labels;
    rep.data = data;
    QuantumDimensions q = quantum_dimensions(fr);
    rep.dims_consistency = q.consistency;
    rep.frobenius_residual = frobenius_identity_check(fr, q.d);
    rep.depth_two = depth_two_test(fr, data.sigma);
    if (integral_dimensions(q)) {
        rep.reg = sigma_reg(fr);
        rep.index_ratio = rep.reg->index / data.index;
        rep.dim_ratio = static_cast<double>(rep.reg->dim_q) / static_cast<double>(data.dim_q);
    }
    return rep;
}

}  // namespace whopf
