#include "whopf/reports.hpp"

#include <algorithm>
#include <sstream>

namespace whopf {

namespace {

template <class T>
std::string join(const std::vector<T>& v, const char* sep = ",")
{
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i)
        os << (i ? sep : "") << v[i];
    return os.str();
}

std::string join_doubles(const std::vector<double>& v)
{
    std::string s;
    for (size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + format_double(v[i]);
    return s;
}

std::string matrix_string(const IMat& m)
{
    std::ostringstream os;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        os << (i ? ";" : "");
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            os << (j ? " " : "") << m(i, j);
    }
    return os.str();
}

double subspace_gap(const Subalgebra& a, const Subalgebra& b)
{
    double g = 0.0;
    for (int k = 0; k < a.dim(); ++k)
        g = std::max(g, b.distance_to(a.element(k)));
    for (int k = 0; k < b.dim(); ++k)
        g = std::max(g, a.distance_to(b.element(k)));
    return g;
}

void add_classification(Report& r, const std::string& p, const ClassificationReport& c)
{
    r.add(p + "verdict", verdict_name(c.verdict));
    r.add(p + "true_axioms", std::string(c.true_axioms[0] ? "1" : "0") + (c.true_axioms[1] ? "1" : "0") +
                                 (c.true_axioms[2] ? "1" : "0"));
    r.add(p + "coherent", c.coherent());
}

bool add_suite(Report& r, const std::string& p, const WeakHopfAlgebra& w, double tol)
{
    AxiomSuite s = verify_all(w, tol);
    r.add(p + "name", w.name);
    r.add(p + "blocks", join(w.Q.blocks));
    r.add(p + "dim", w.dim());
    for (const auto& [name, c] : s.checks)
        r.add_check(p + name, c);
    int unit_rank = 0;
    for (int n : w.Q.blocks)
        unit_rank += n;
    r.add(p + "delta_one_rank", delta_one_rank(w));
    r.add(p + "unit_rank", unit_rank * unit_rank);
    add_classification(r, p, s.classification);
    r.add(p + "all_pass", s.all_pass());
    return s.all_pass() && s.classification.coherent();
}

bool add_action(Report& r, const std::string& p, const Action& act, double tol)
{
    ActionReport ar = verify_action(act, tol);
    r.add_check(p + "unital", ar.unital);
    r.add_check(p + "homomorphism", ar.homomorphism);
    r.add_check(p + "module_algebra", ar.module_algebra);
    r.add_check(p + "star_law", ar.star_law);
    Subalgebra inv = invariants(act, tol);
    r.add(p + "invariants_dim", inv.dim());
    IsotypicDecomposition iso = isotypic_decomposition(act, tol);
    r.add(p + "isotypic.multiplicity", join(iso.multiplicity));
    r.add(p + "isotypic.block_size", join(iso.block_size));
    r.add(p + "isotypic.trivial_multiplicity", join(iso.trivial_multiplicity));
    r.add(p + "isotypic.total_dim", iso.total_dim());
    r.add(p + "isotypic.trivial_dim", iso.trivial_dim());
    r.add(p + "isotypic.invariant_count", iso.invariant_count());
    return ar.pass() && iso.invariant_count() == inv.dim() && iso.total_dim() == act.target.dim();
}

}  // namespace

Built verify_report(const WeakHopfAlgebra& w, double tol)
{
    Built b;
    b.report.add("kind", "weak-hopf");
    b.ok = add_suite(b.report, "", w, tol);
    return b;
}

Built classify_report(const WeakHopfAlgebra& w, double tol)
{
    Built b;
    ClassificationReport c = classify(w, tol);
    b.report.add("name", w.name);
    b.report.add("blocks", join(w.Q.blocks));
    add_classification(b.report, "", c);
    for (int k = 0; k < 3; ++k)
        b.report.add("true_residual." + std::to_string(k), c.true_residuals[k]);
    b.ok = c.verdict != Verdict::Invalid && c.coherent();
    return b;
}

Built action_report(const Action& act, double tol)
{
    Built b;
    b.report.add("kind", "action");
    b.report.add("symmetry", act.symmetry.name);
    b.report.add("target_blocks", join(act.target.blocks));
    b.ok = add_action(b.report, "", act, tol);
    return b;
}

Built fusion_report(const FusionRing& fr)
{
    Built b;
    FusionReport rep = verify_fusion(fr);
    b.report.add("kind", "fusion");
    b.report.add("ring", fr.name);
    b.report.add("labels", join(fr.labels));
    for (const auto& c : rep.checks) {
        b.report.add(c.axiom + ".pass", c.pass);
        if (!c.pass)
            b.report.add(c.axiom + ".witness", describe(fr, c));
    }
    b.ok = rep.pass();
    if (b.ok) {
        QuantumDimensions q = quantum_dimensions(fr);
        b.report.add("dims", join_doubles(q.d));
        b.report.add("dims_consistency", q.consistency);
        b.report.add("frobenius_residual", frobenius_identity_check(fr, q.d));
    }
    return b;
}

Built inclusion_report(const Inclusion& inc)
{
    Built b;
    b.report.add("kind", "inclusion");
    b.report.add("A.blocks", join(inc.A.blocks));
    b.report.add("B.blocks", join(inc.B.blocks));
    b.report.add("lambda", matrix_string(inc.lambda));
    b.report.add("connected", is_connected(inc.lambda));
    b.report.add("index", inc.index);
    b.report.add("markov_weights", join_doubles(inc.trace.w));
    return b;
}

DualizeOutput dualize_report(const WeakHopfAlgebra& w, Rng& rng, double tol)
{
    DualizeOutput out{{}, dualize(w, rng, tol)};
    Report& r = out.built.report;
    r.add("primal", w.name);
    r.add("primal.blocks", join(w.Q.blocks));
    r.add("pairing.condition", out.pair.condition);
    bool ok = add_suite(r, "dual.", out.pair.dual, tol);
    DoubleDualReport dd = double_dual_check(w, rng, std::max(tol, 1e-8));
    r.add_check("double_dual.multiplicative", dd.multiplicative);
    r.add_check("double_dual.star", dd.star);
    r.add_check("double_dual.coproduct", dd.coproduct);
    r.add_check("double_dual.counit", dd.counit);
    r.add_check("double_dual.antipode", dd.antipode);
    r.add("double_dual.pass", dd.pass());
    SelfDualityReport sd = algebra_level_self_duality(w, rng, tol);
    r.add("self_dual_algebra", sd.pass);
    out.built.ok = ok && dd.pass() && out.pair.dual.dim() == w.dim();
    return out;
}

TowerOutput tower_report(const Inclusion& inc, Rng& rng, const TowerOptions& opt)
{
    TowerOutput out;
    Built& b = out.built;
    Report& r = b.report;
    const double tol = opt.tol;
    b = inclusion_report(inc);
    const int dep = depth(inc);
    r.add("depth", dep);
    r.add("depth_two", dep <= 2);
    std::vector<long long> paths = commutant_dimensions(inc.lambda, 3);
    r.add("path_counts", join(paths));
    if (!opt.extract)
        return out;
    if (dep > 2) {
        r.add("extract", "refused: depth " + std::to_string(dep) + " exceeds 2");
        b.ok = false;
        return out;
    }

    ExtractOptions eo;
    eo.dress = opt.dress;
    eo.tol = tol;
    ExtractionResult res = extract_weak_hopf(inc, rng, eo);
    const TowerContext& t = res.tower;
    bool ok = true;

    for (size_t k = 0; k < t.level.size(); ++k)
        r.add("tower.L" + std::to_string(k), join(t.level[k].blocks));
    for (size_t k = 0; k < t.steps.size(); ++k) {
        r.add_check("tower.step" + std::to_string(k + 1) + ".markov", t.steps[k].markov_relation);
        r.add_check("tower.step" + std::to_string(k + 1) + ".trace", t.steps[k].trace_relation);
        ok = ok && t.steps[k].markov_relation.pass && t.steps[k].trace_relation.pass;
    }
    std::vector<int> numeric = commutant_dimensions_numeric(t, tol);
    r.add("commutant_dims", join(numeric));
    bool paths_agree = true;
    for (size_t k = 0; k < numeric.size() && k < paths.size(); ++k)
        paths_agree = paths_agree && numeric[k] == paths[k];
    r.add("commutant_dims_match_paths", paths_agree);
    ok = ok && paths_agree;

    r.add("dressed", res.dressed);
    r.add("scale", res.scale);
    r.add("pairing.condition", res.pair.condition);
    for (const auto& row : res.sector_table) {
        const std::string p = "sector." + std::to_string(row.block) + ".";
        r.add(p + "n", row.n);
        r.add(p + "d", row.d);
        r.add(p + "z", row.z);
        r.add(p + "trace", row.trace);
    }
    ok = add_suite(r, "Q.", res.Q, tol) && ok;
    ok = add_suite(r, "Qhat.", res.Qhat, tol) && ok;
    r.add("dim_equal", res.Q.dim() == res.Qhat.dim());

    ok = add_action(r, "action.", res.action, tol) && ok;
    Subalgebra inv = invariants(res.action, tol);
    const double gap = inv.dim() == image(inc.embed, tol).dim() ? subspace_gap(inv, image(inc.embed, tol)) : INFINITY;
    r.add("action.invariants_equal_A", gap <= std::sqrt(tol));
    r.add("action.invariants_gap", gap);
    ok = ok && gap <= std::sqrt(tol);

    if (haar_integral(res.Q, tol)) {
        MinimalExpectation me = minimal_expectation(res, tol);
        r.add("expectation.residual", me.residual);
        ok = ok && me.residual <= std::sqrt(tol);
    } else {
        r.add("expectation", "no Haar integral");
        ok = false;
    }

    InnerPartReport ip = inner_part(res, tol);
    r.add("inner.P_dim", ip.P.dim());
    r.add("inner.Pbar_dim", ip.Pbar.dim());
    r.add("inner.nontrivial", ip.nontrivial);
    r.add_check("inner.commute", ip.commute);
    r.add_check("inner.delta_p", ip.delta_p);
    r.add_check("inner.delta_pbar", ip.delta_pbar);
    r.add_check("inner.implementers", ip.implementers);
    ok = ok && ip.pass();

    Action adj = solve_adjoint_action(res.pair);
    Check ac = verify_adjoint_action(res.pair, adj, tol);
    r.add_check("adjoint_action", ac);
    ok = ok && ac.pass;

    ReconstructionReport rr = reconstruct(res, rng, tol);
    r.add("reconstruction.checkable", rr.checkable);
    if (rr.checkable) {
        r.add("reconstruction.crossed_blocks", join(rr.crossed.blocks));
        r.add("reconstruction.invariants_match", rr.invariants_match);
        r.add("reconstruction.blocks_match", rr.blocks_match);
        r.add("reconstruction.intertwiner_residual", rr.intertwiner_residual);
        r.add("reconstruction.pass", rr.pass());
        ok = ok && rr.pass();
    } else {
        r.add("reconstruction.note", rr.note);
    }

    QSystemReport qr = verify_qsystem(qsystem_from_inclusion(inc, tol), tol);
    r.add("qsystem.pass", qr.pass());
    ok = ok && qr.pass();

    b.ok = ok;
    out.extraction = std::move(res);
    return out;
}

Built sectors_report(const FusionRing& fr, const SectorData& data, bool locality_requested)
{
    Built b;
    Report& r = b.report;
    SectorReport rep = report(fr, data);
    r.add("ring", rep.ring);
    r.add("labels", join(rep.labels));
    r.add("dims", join_doubles(data.dims));
    r.add("dims_consistency", rep.dims_consistency);
    r.add("frobenius_residual", rep.frobenius_residual);
    r.add("sigma.kind", data.kind);
    r.add("sigma", join(data.sigma));
    r.add("N", join(data.n));
    r.add("dim_Q", data.dim_q);
    r.add("d_sigma", data.d_sigma);
    r.add("index", data.index);
    r.add("global_dim", data.global_dim);
    r.add("z_weights", join_doubles(data.z_weights));
    r.add("depth_two", rep.depth_two.pass);
    r.add("sigma_sigmabar_sigma", join(rep.depth_two.triple));
    if (rep.depth_two.witness)
        r.add("depth_two.witness", fr.labels[*rep.depth_two.witness]);
    if (rep.reg) {
        r.add("reg.sigma", join(rep.reg->sigma));
        r.add("reg.N", join(rep.reg->n));
        r.add("reg.dim_Q", rep.reg->dim_q);
        r.add("reg.index", rep.reg->index);
        r.add("reg.z_weights", join_doubles(rep.reg->z_weights));
        r.add("reg.equals_oplus", rep.reg->sigma == std::vector<long long>(fr.rank(), 1));
        r.add("reg.index_ratio", rep.index_ratio);
        r.add("reg.dim_ratio", rep.dim_ratio);
    } else {
        r.add("reg", "not defined: non-integral dimensions");
    }
    if (locality_requested)
        r.add("locality", "not modeled: statistics operators are not determined by fusion multiplicities");
    b.ok = rep.dims_consistency <= 1e-9 && rep.frobenius_residual <= 1e-9 && rep.depth_two.pass;
    return b;
}

}  // namespace whopf
