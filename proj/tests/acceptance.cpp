// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "whopf/reports.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

using namespace whopf;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::ostringstream why;

    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            if (!pass)
                why << "; ";
            why << what;
            pass = false;
        }
    }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

IMat row(std::initializer_list<int> v)
{
    IMat m(1, static_cast<Eigen::Index>(v.size()));
    int j = 0;
    for (int x : v)
        m(0, j++) = x;
    return m;
}

// dim(A' n L_k) as the sum of squared entries of alternating products of lambda
long long path_oracle(const IMat& l, int level)
{
    Eigen::MatrixXi m = Eigen::MatrixXi::Identity(l.cols(), l.cols());
    for (int k = 0; k < level; ++k)
        m = (k % 2 == 0) ? Eigen::MatrixXi(l * m) : Eigen::MatrixXi(l.transpose() * m);
    return m.cwiseProduct(m).sum();
}

std::vector<WeakHopfAlgebra> stock_algebras()
{
    std::vector<WeakHopfAlgebra> out;
    for (const auto& e : fs::directory_iterator(WHOPF_DATA))
        if (e.path().extension() == ".whopf")
            out.push_back(parse_weak_hopf(read_file(e.path().string())));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return out;
}

std::vector<FusionRing> stock_rings()
{
    std::vector<FusionRing> out;
    for (const auto& e : fs::directory_iterator(WHOPF_DATA))
        if (e.path().extension() == ".fr")
            out.push_back(parse_fusion(read_file(e.path().string())));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return out;
}

Inclusion c2_in_mat2() { return make_inclusion(parse_inclusion(read_file(std::string(WHOPF_DATA) + "/c2_in_mat2.incl")).embed); }

std::vector<Inclusion> depth_two_inclusions()
{
    std::vector<Inclusion> out;
    for (const char* f : {"c2_in_mat2.incl", "c3_in_mat3.incl", "cmat2_in_mat3.incl"})
        out.push_back(make_inclusion(parse_inclusion(read_file(std::string(WHOPF_DATA) + "/" + f)).embed));
    out.push_back(standard_inclusion({1, 1}, row({2, 1})));
    return out;
}

void criterion1(Outcome& o)
{
    auto t0 = Clock::now();
    Rng rng(1);
    struct Case {
        WeakHopfAlgebra w;
        Verdict v;
    };
    std::vector<Case> cases = {{group_algebra(cyclic_group(2), rng), Verdict::True},
                               {group_algebra(cyclic_group(3), rng), Verdict::True},
                               {group_algebra(symmetric_group(3), rng), Verdict::True},
                               {function_algebra(cyclic_group(2)), Verdict::True},
                               {function_algebra(cyclic_group(3)), Verdict::True},
                               {function_algebra(symmetric_group(3)), Verdict::True},
                               {groupoid_algebra(pair_groupoid(2), rng), Verdict::Weak},
                               {groupoid_algebra(pair_groupoid(3), rng), Verdict::Weak}};
    double worst = 0.0;
    for (const auto& c : cases) {
        AxiomSuite s = verify_all(c.w);
        for (const auto& [name, chk] : s.checks) {
            worst = std::max(worst, chk.residual);
            o.require(chk.pass && chk.residual < 1e-9, c.w.name + " " + name);
        }
        o.require(s.classification.verdict == c.v, c.w.name + " verdict " + verdict_name(s.classification.verdict));
        if (c.v == Verdict::Weak) {
            const int r = delta_one_rank(c.w);
            o.require(r < c.w.dim() * c.w.dim(), c.w.name + " Delta(1) not proper");
            // pair groupoid: Delta(1) = sum_x e_x (x) e_x has rank equal to the number of points
            o.require(r == c.w.Q.blocks[0], c.w.name + " Delta(1) rank " + std::to_string(r));
        }
    }
    const double t = seconds_since(t0);
    o.require(t < 5.0, "runtime " + std::to_string(t) + " s");
    o.why << (o.pass ? "" : "; ") << "worst residual " << worst << ", " << t << " s";
}

void criterion2(Outcome& o)
{
    Rng rng(2);
    int n = 0;
    auto check = [&](const WeakHopfAlgebra& w) {
        ClassificationReport c = classify(w);
        ++n;
        o.require(c.true_axioms[0] == c.true_axioms[1] && c.true_axioms[1] == c.true_axioms[2],
                  w.name + " incoherent");
    };
    for (const auto& w : stock_algebras()) {
        check(w);
        check(dualize(w, rng).dual);
    }
    for (const auto& inc : depth_two_inclusions()) {
        ExtractionResult res = extract_weak_hopf(inc, rng);
        check(res.Q);
        check(res.Qhat);
    }
    ExtractionResult factor = extract_weak_hopf(standard_inclusion({2}, row({1})), rng);
    check(factor.Q);
    check(factor.Qhat);
    o.why << (o.pass ? "" : "; ") << n << " algebras";
}

void criterion3(Outcome& o)
{
    Rng rng(3);
    double worst = 0.0;
    int n = 0;
    auto check = [&](const WeakHopfAlgebra& w) {
        DualPair p = dualize(w, rng);
        o.require(p.dual.dim() == w.dim(), w.name + " dual dimension");
        DoubleDualReport dd = double_dual_check(w, rng);
        worst = std::max(worst, dd.residual());
        o.require(dd.pass() && dd.residual() < 1e-8, w.name + " double dual");
        ++n;
    };
    for (const auto& w : stock_algebras())
        check(w);
    for (const auto& inc : depth_two_inclusions()) {
        ExtractionResult res = extract_weak_hopf(inc, rng);
        check(res.Q);
        check(res.Qhat);
    }
    DualPair z2 = dualize(group_algebra(cyclic_group(2), rng), rng);
    std::vector<int> b = z2.dual.Q.blocks;
    std::sort(b.begin(), b.end());
    o.require(b == std::vector<int>{1, 1}, "Z2 dual blocks " + z2.dual.Q.str());
    o.require(z2.dual.Q.same_shape(function_algebra(cyclic_group(2)).Q), "Z2 dual is not C(Z2)");
    o.why << (o.pass ? "" : "; ") << n << " algebras, worst double-dual residual " << worst;
}

void criterion4(Outcome& o)
{
    auto t0 = Clock::now();
    Rng rng(4);
    Inclusion inc = c2_in_mat2();
    o.require(std::abs(inc.index - 2.0) < 1e-9, "index " + format_double(inc.index));
    o.require(depth(inc) == 2, "depth " + std::to_string(depth(inc)));
    ExtractionResult res = extract_weak_hopf(inc, rng);
    const long long oracle = path_oracle(inc.lambda, 2);
    o.require(oracle == 4, "path oracle " + std::to_string(oracle));
    // B in B3 has inclusion matrix lambda lambda^T
    const Eigen::MatrixXi bb = inc.lambda * inc.lambda.transpose();
    const long long oracle_hat = bb.cwiseProduct(bb).sum();
    o.require(oracle_hat == 4, "path oracle for Qhat " + std::to_string(oracle_hat));
    o.require(res.Q.dim() == oracle && res.Qhat.dim() == oracle_hat,
              "dim Q " + std::to_string(res.Q.dim()) + ", dim Qhat " + std::to_string(res.Qhat.dim()));
    o.require(commutant_dimensions_numeric(res.tower)[2] == oracle, "numeric commutant");
    o.require(verify_all(res.Q).all_pass(), "Q verifiers");
    o.require(classify(res.Q).verdict == Verdict::Weak, "Q not Weak");

    Subalgebra inv = invariants(res.action);
    Subalgebra a = image(inc.embed);
    o.require(inv.dim() == 2, "invariants dim " + std::to_string(inv.dim()));
    double gap = 0.0;
    for (int k = 0; k < inv.dim(); ++k)
        gap = std::max(gap, a.distance_to(inv.element(k)));
    for (int k = 0; k < a.dim(); ++k)
        gap = std::max(gap, inv.distance_to(a.element(k)));
    o.require(gap < 1e-9, "invariants basis residual " + format_double(gap));

    ReconstructionReport rr = reconstruct(res, rng);
    o.require(rr.checkable && rr.crossed.blocks == std::vector<int>{2}, "crossed product " + rr.crossed.str());
    o.require(rr.intertwiner_residual < 1e-8, "intertwiner residual " + format_double(rr.intertwiner_residual));
    o.require(rr.pass(), "reconstruction");
    const double t = seconds_since(t0);
    o.require(t < 10.0, "runtime");
    o.why << (o.pass ? "" : "; ") << "intertwiner residual " << rr.intertwiner_residual << ", " << t << " s";
}

void criterion5(Outcome& o)
{
    Rng rng(5);
    Inclusion inc = c2_in_mat2();
    ExtractionResult res = extract_weak_hopf(inc, rng);
    MinimalExpectation me = minimal_expectation(res);
    LinearMap avg = averaging_expectation(res.action);
    // trace conditional expectation, built from the Markov trace alone
    LinearMap tr = conditional_expectation(image(inc.embed), inc.trace);
    const double r1 = max_abs(Mat(avg.m - tr.m));
    const double r2 = max_abs(Mat(me.mu.m - tr.m));
    const double r3 = max_abs(Mat(avg.m - me.mu.m));
    const double worst = std::max({r1, r2, r3, me.residual});
    o.require(worst < 1e-9, "pairwise residual " + format_double(worst));
    o.why << (o.pass ? "" : "; ") << "pairwise residual " << worst;
}

void criterion6(Outcome& o)
{
    Rng rng(6);
    ExtractionResult res = extract_weak_hopf(c2_in_mat2(), rng);
    InnerPartReport ip = inner_part(res);
    o.require(ip.nontrivial && ip.P.dim() > 1, "P trivial");
    o.require(ip.commute.pass, "[P, Pbar] = " + format_double(ip.commute.residual));
    o.require(ip.delta_p.pass && ip.delta_p.residual < 1e-9, "Delta(p) residual " + format_double(ip.delta_p.residual));
    o.require(ip.implementers.pass, "implementers");
    o.why << (o.pass ? "" : "; ") << "dim P " << ip.P.dim() << ", Delta(p) residual " << ip.delta_p.residual;
}

void criterion7(Outcome& o)
{
    Rng rng(7);
    auto hand = [](const DualPair& p, const Action& act) {
        const int n = p.primal.dim();
        double worst = 0.0;
        for (int q = 0; q < n; ++q) {
            Mat rep = act.rep(Vec(Vec::Unit(n, q)));
            for (int a = 0; a < n; ++a)
                for (int r = 0; r < n; ++r) {
                    Element eq = basis_element(p.primal.Q, q), er = basis_element(p.primal.Q, r);
                    cplx lhs = (Vec(rep.col(a)).transpose() * p.pairing * coords(er))(0);
                    cplx rhs = (p.pairing.row(a) * coords(er * eq))(0);
                    worst = std::max(worst, std::abs(lhs - rhs));
                }
        }
        return worst;
    };
    DualPair z2 = dualize(group_algebra(cyclic_group(2), rng), rng);
    Action a1 = solve_adjoint_action(z2);
    ExtractionResult res = extract_weak_hopf(c2_in_mat2(), rng);
    Action a2 = solve_adjoint_action(res.pair);
    const double w1 = std::max(hand(z2, a1), verify_adjoint_action(z2, a1).residual);
    const double w2 = std::max(hand(res.pair, a2), verify_adjoint_action(res.pair, a2).residual);
    o.require(w1 < 1e-9, "Z2 residual " + format_double(w1));
    o.require(w2 < 1e-9, "pipeline residual " + format_double(w2));
    o.why << (o.pass ? "" : "; ") << "residuals " << w1 << ", " << w2;
}

void criterion8(Outcome& o)
{
    // independent square of sigma: sum over all label pairs of the multiplicity table
    auto brute = [](const FusionRing& fr, const std::vector<long long>& m) {
        std::vector<long long> out(fr.rank(), 0);
        for (int a = 0; a < fr.rank(); ++a) {
            RMat na = fr.fusion_matrix(a);
            for (int b = 0; b < fr.rank(); ++b)
                for (int s = 0; s < fr.rank(); ++s)
                    out[s] += m[a] * m[b] * std::llround(na(b, s));
        }
        return out;
    };
    const double phi = (1 + std::sqrt(5.0)) / 2;
    FusionRing fib = fibonacci_ring(), ising = ising_ring(), z2 = cyclic_ring(2);
    SectorData f = sigma_oplus(fib);
    o.require(f.n == std::vector<long long>{2, 3}, "Fibonacci N");
    o.require(f.n == brute(fib, f.sigma), "Fibonacci brute force");
    o.require(f.dim_q == 13, "Fibonacci dim Q " + std::to_string(f.dim_q));
    o.require(std::abs(quantum_dimensions(fib).d[1] - 1.6180340) < 1e-6, "d_tau");
    o.require(std::abs(f.index - std::pow(phi, 4)) < 1e-6, "Fibonacci index " + format_double(f.index));

    SectorData i = sigma_oplus(ising);
    o.require(i.n == std::vector<long long>{3, 4, 3}, "Ising N");
    o.require(i.n == brute(ising, i.sigma), "Ising brute force");
    o.require(i.dim_q == 34, "Ising dim Q " + std::to_string(i.dim_q));
    o.require(std::abs(i.index - std::pow(2 + std::sqrt(2.0), 2)) < 1e-6, "Ising index " + format_double(i.index));

    SectorData reg = sigma_reg(z2), plus = sigma_oplus(z2);
    o.require(reg.sigma == plus.sigma, "Z2 reg != oplus");
    o.require(reg.z_weights == std::vector<double>{1.0, 1.0}, "Z2 z weights");
    o.require(reg.n == brute(z2, reg.sigma), "Z2 brute force");
    o.why << (o.pass ? "" : "; ") << "Fibonacci index " << f.index << ", Ising index " << i.index;
}

void criterion9(Outcome& o)
{
    int n = 0;
    for (const auto& fr : stock_rings()) {
        o.require(depth_two_test(fr, sigma_oplus(fr).sigma).pass, fr.name + " oplus fails");
        ++n;
    }
    FusionRing fib = fibonacci_ring();
    DepthTwoResult d = depth_two_test(fib, {0, 1});
    o.require(!d.pass, "Fibonacci {tau} passes");
    o.require(d.witness && fib.labels[*d.witness] == "1", "witness");
    o.require(depth_two_test(ising_ring(), {0, 1, 0}).pass, "Ising {sigma} fails");
    o.why << (o.pass ? "" : "; ") << n << " shipped rings, Fibonacci {tau} witness "
          << (d.witness ? fib.labels[*d.witness] : "none");
}

void criterion10(Outcome& o)
{
    auto reports = [] {
        std::string all;
        Rng rng(99);
        TowerOptions opt;
        opt.extract = true;
        for (const auto& inc : depth_two_inclusions())
            all += tower_report(inc, rng, opt).built.report.render(true);
        for (const auto& w : stock_algebras()) {
            all += verify_report(w, 1e-9).report.render(true);
            all += dualize_report(w, rng, 1e-9).built.report.render(true);
        }
        for (const auto& fr : stock_rings())
            all += sectors_report(fr, sigma_oplus(fr), false).report.render(true);
        return all;
    };
    const std::string a = reports(), b = reports();
    o.require(a == b, "reports differ between runs");

    int files = 0;
    for (const auto& e : fs::directory_iterator(WHOPF_DATA)) {
        RoundTrip rt = round_trip(read_file(e.path().string()));
        o.require(rt.pass, e.path().filename().string() + " round trip");
        ++files;
    }
    for (const auto& name : stock_names()) {
        Rng rng(1);
        for (const auto& f : stock_example(name, rng)) {
            o.require(round_trip(f.content).pass, f.filename + " regenerated round trip");
            o.require(read_file(std::string(WHOPF_DATA) + "/" + f.filename) == f.content, f.filename + " stale");
        }
    }
    o.why << (o.pass ? "" : "; ") << a.size() << " report bytes identical, " << files << " files round trip";
}

}  // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
        {"axiom suite", criterion1},
        {"classification coherence", criterion2},
        {"duality", criterion3},
        {"tower pipeline on C2 in Mat2", criterion4},
        {"expectation coherence", criterion5},
        {"inner part", criterion6},
        {"adjoint action rule", criterion7},
        {"sector calculus", criterion8},
        {"depth-2 fusion criterion", criterion9},
        {"determinism and round trip", criterion10},
    };
    int failed = 0;
    for (size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            criteria[k].second(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        failed += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << k + 1 << " " << criteria[k].first << ": "
                  << o.why.str() << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
