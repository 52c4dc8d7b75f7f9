#include "whopf/reports.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

using namespace whopf;

namespace {

struct Config {
    double tol = 1e-9;
    unsigned long long seed = 1;
    bool machine = false;
};

int emit(const Built& b, const Config& cfg)
{
    std::cout << b.report.render(cfg.machine);
    return b.ok ? 0 : 1;
}

std::filesystem::path with_dir(const std::string& dir, const std::string& file)
{
    if (dir.empty())
        return file;
    std::filesystem::create_directories(dir);
    return std::filesystem::path(dir) / file;
}

Inclusion load_inclusion(const std::string& path, double tol)
{
    InclusionFile f = parse_inclusion(read_file(path));
    return make_inclusion(f.embed, tol);
}

int cmd_verify(const std::string& path, const Config& cfg)
{
    const std::string text = read_file(path);
    switch (detect_kind(text)) {
    case FileKind::WeakHopf:
        return emit(verify_report(parse_weak_hopf(text), cfg.tol), cfg);
    case FileKind::Action:
        return emit(action_report(load_action(path), cfg.tol), cfg);
    case FileKind::Fusion:
        return emit(fusion_report(parse_fusion(text)), cfg);
    case FileKind::Inclusion:
        return emit(inclusion_report(make_inclusion(parse_inclusion(text).embed, cfg.tol)), cfg);
    default: {
        RoundTrip rt = round_trip(text);
        Built b;
        b.report.add("kind", kind_name(rt.kind));
        b.report.add("parsed", true);
        return emit(b, cfg);
    }
    }
}

int cmd_dualize(const std::string& path, const std::string& out, const std::string& pairing_out,
                const Config& cfg)
{
    WeakHopfAlgebra w = parse_weak_hopf(read_file(path));
    Rng rng(cfg.seed);
    DualizeOutput d = dualize_report(w, rng, cfg.tol);
    if (!out.empty()) {
        WeakHopfAlgebra dual = d.pair.dual;
        if (dual.name.empty())
            dual.name = w.name + "_dual";
        write_file(out, write_weak_hopf(dual));
    }
    if (!pairing_out.empty())
        write_file(pairing_out, write_pairing({w.name + "_pairing", d.pair.pairing}));
    return emit(d.built, cfg);
}

int cmd_tower(const std::string& path, bool extract, bool undressed, const std::string& out_dir,
              const Config& cfg)
{
    Inclusion inc = load_inclusion(path, cfg.tol);
    Rng rng(cfg.seed);
    TowerOptions opt;
    opt.extract = extract || !out_dir.empty();
    opt.dress = !undressed;
    opt.tol = cfg.tol;
    TowerOutput t = tower_report(inc, rng, opt);
    if (t.extraction && !out_dir.empty()) {
        const std::string stem = std::filesystem::path(path).stem().string();
        WeakHopfAlgebra q = t.extraction->Q, qhat = t.extraction->Qhat;
        q.name = stem + "_Q";
        qhat.name = stem + "_Qhat";
        write_file(with_dir(out_dir, q.name + ".whopf").string(), write_weak_hopf(q));
        write_file(with_dir(out_dir, qhat.name + ".whopf").string(), write_weak_hopf(qhat));
        write_file(with_dir(out_dir, stem + "_pairing.pair").string(),
                   write_pairing({stem + "_pairing", t.extraction->pair.pairing}));
    }
    return emit(t.built, cfg);
}

std::vector<long long> parse_multiplicities(const FusionRing& fr, const std::string& text)
{
    std::vector<long long> m(fr.rank(), 0);
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        const auto eq = item.find('=');
        const std::string label = item.substr(0, eq);
        auto idx = fr.find(label);
        if (!idx)
            throw error("unknown label '" + label + "' in --mult");
        long long k = 1;
        if (eq != std::string::npos) {
            try {
                size_t used = 0;
                k = std::stoll(item.substr(eq + 1), &used);
                if (used != item.size() - eq - 1)
                    throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw error("bad multiplicity in '" + item + "'");
            }
            if (k < 0)
                throw error("negative multiplicity in '" + item + "'");
        }
        m[*idx] += k;
    }
    return m;
}

FusionRing load_ring(const std::string& arg)
{
    if (std::filesystem::exists(arg))
        return parse_fusion(read_file(arg));
    Rng rng(1);
    for (const auto& f : stock_example(arg, rng))
        if (f.filename.ends_with(".fr"))
            return parse_fusion(f.content);
    throw error("no such file or stock ring: " + arg);
}

int cmd_sectors(const std::string& arg, const std::string& sigma, const std::string& mult, bool locality,
                const Config& cfg)
{
    FusionRing fr = load_ring(arg);
    require_valid(fr);
    SectorData data;
    if (!mult.empty() || sigma == "custom") {
        if (mult.empty())
            throw error("--sigma custom needs --mult");
        data = sector_data(fr, parse_multiplicities(fr, mult), "custom");
    } else if (sigma == "reg") {
        data = sigma_reg(fr);
    } else {
        data = sigma_oplus(fr);
    }
    return emit(sectors_report(fr, data, locality), cfg);
}

int cmd_example(const std::string& name, bool list, const std::string& out_dir, const Config& cfg)
{
    if (list || name.empty()) {
        for (const auto& n : stock_names())
            std::cout << n << "\n";
        return 0;
    }
    Rng rng(cfg.seed);
    auto files = stock_example(name, rng);
    if (files.empty())
        throw error("unknown stock example: " + name);
    for (const auto& f : files) {
        const auto p = with_dir(out_dir, f.filename);
        write_file(p.string(), f.content);
        std::cout << p.string() << "\n";
    }
    return 0;
}

int cmd_roundtrip(const std::vector<std::string>& paths, const Config& cfg)
{
    Report r;
    bool ok = true;
    for (const auto& p : paths) {
        RoundTrip rt = round_trip(read_file(p));
        r.add(p + ".kind", kind_name(rt.kind));
        r.add(p + ".pass", rt.pass);
        r.add(p + ".max_difference", rt.max_difference);
        if (!rt.detail.empty())
            r.add(p + ".detail", rt.detail);
        ok = ok && rt.pass;
    }
    std::cout << r.render(cfg.machine);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"finite-dimensional weak Hopf algebras, towers and sectors"};
    app.require_subcommand(1);
    Config cfg;
    app.add_option("--tol", cfg.tol, "numerical tolerance")->check(CLI::PositiveNumber)->check(CLI::Range(0.0, 1e-3));
    app.add_option("--seed", cfg.seed, "seed for randomized decompositions");
    app.add_flag("--machine", cfg.machine, "key=value output");

    std::string path, out, pairing_out, out_dir, sigma = "oplus", mult, name;
    std::vector<std::string> paths;
    bool extract = false, undressed = false, locality = false, list = false;

    auto* verify = app.add_subcommand("verify", "run every verifier on a file");
    verify->add_option("file", path)->required();
    auto* classify = app.add_subcommand("classify", "true, weak or invalid");
    classify->add_option("file", path)->required();
    auto* dual = app.add_subcommand("dualize", "build the dual and check the double dual");
    dual->add_option("file", path)->required();
    dual->add_option("-o,--out", out, "write the dual here");
    dual->add_option("--pairing", pairing_out, "write the pairing matrix here");
    auto* tower = app.add_subcommand("tower", "Jones tower of an inclusion");
    tower->add_option("file", path)->required();
    tower->add_flag("--extract", extract, "extract the dual pair (depth 2 only)");
    tower->add_flag("--undressed", undressed, "use the bare trace pairing");
    tower->add_option("--out-dir", out_dir, "write Q, Qhat and the pairing here");
    auto* sectors = app.add_subcommand("sectors", "sector data of a fusion ring");
    sectors->add_option("ring", path, "a .fr file or a stock ring name")->required();
    sectors->add_option("--sigma", sigma, "oplus, reg or custom")
        ->check(CLI::IsMember({"oplus", "reg", "custom"}));
    sectors->add_option("--mult", mult, "label=multiplicity,... for a custom sigma");
    sectors->add_flag("--locality", locality, "ask for locality data");
    auto* example = app.add_subcommand("example", "write a stock input");
    example->add_option("name", name);
    example->add_flag("--list", list);
    example->add_option("--out-dir", out_dir);
    auto* rt = app.add_subcommand("roundtrip", "parse, write, parse and compare");
    rt->add_option("files", paths)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*verify)
            return cmd_verify(path, cfg);
        if (*classify)
            return emit(classify_report(parse_weak_hopf(read_file(path)), cfg.tol), cfg);
        if (*dual)
            return cmd_dualize(path, out, pairing_out, cfg);
        if (*tower)
            return cmd_tower(path, extract, undressed, out_dir, cfg);
        if (*sectors)
            return cmd_sectors(path, sigma, mult, locality, cfg);
        if (*example)
            return cmd_example(name, list, out_dir, cfg);
        if (*rt)
            return cmd_roundtrip(paths, cfg);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const invalid_structure& e) {
        std::cerr << "invalid: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
