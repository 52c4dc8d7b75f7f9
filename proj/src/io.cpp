#include "whopf/io.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace whopf {

parse_error::parse_error(int ln, const std::string& msg)
    : error("line " + std::to_string(ln) + ": " + msg), line(ln)
{
}

namespace {

struct Line {
    int number = 0;
    std::vector<std::string> tok;
    std::string rest;  // text after the first token, trimmed
};

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// significant lines only: blank lines and '#' comments are dropped
class Reader {
public:
    explicit Reader(const std::string& text)
    {
        std::istringstream in(text);
        std::string raw;
        int n = 0;
        while (std::getline(in, raw)) {
            ++n;
            std::string t = trim(raw);
            if (t.empty() || t[0] == '#')
                continue;
            Line l;
            l.number = n;
            std::istringstream ls(t);
            std::string w;
            while (ls >> w)
                l.tok.push_back(w);
            const auto sp = t.find_first_of(" \t");
            l.rest = sp == std::string::npos ? "" : trim(t.substr(sp));
            lines_.push_back(std::move(l));
        }
        last_ = n;
    }

    bool done() const { return pos_ >= lines_.size(); }
    const Line& peek() const
    {
        if (done())
            throw parse_error(last_ + 1, "unexpected end of file");
        return lines_[pos_];
    }
    const Line& next()
    {
        const Line& l = peek();
        ++pos_;
        return l;
    }
    const Line& expect(const std::string& keyword)
    {
        const Line& l = next();
        if (l.tok[0] != keyword)
            throw parse_error(l.number, "expected '" + keyword + "', found '" + l.tok[0] + "'");
        return l;
    }
    bool at(const std::string& keyword) const { return !done() && lines_[pos_].tok[0] == keyword; }
    void finish() const
    {
        if (!done())
            throw parse_error(lines_[pos_].number, "unexpected content '" + lines_[pos_].tok[0] + "'");
    }

private:
    std::vector<Line> lines_;
    size_t pos_ = 0;
    int last_ = 0;
};

long long to_int(const std::string& s, int line)
{
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw parse_error(line, "expected an integer, found '" + s + "'");
    return v;
}

double to_double(const std::string& s, int line)
{
    if (s.empty())
        throw parse_error(line, "empty number");
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    // underflow to a subnormal is fine, overflow is not
    if (end != s.c_str() + s.size() || (errno == ERANGE && std::abs(v) >= 1.0) || !std::isfinite(v))
        throw parse_error(line, "expected a finite real number, found '" + s + "'");
    return v;
}

// re:im, or a bare real
cplx to_complex(const std::string& s, int line)
{
    const auto c = s.find(':');
    if (c == std::string::npos)
        return {to_double(s, line), 0.0};
    return {to_double(s.substr(0, c), line), to_double(s.substr(c + 1), line)};
}

std::string complex_token(cplx z) { return format_double(z.real()) + ":" + format_double(z.imag()); }

Mat read_dense(Reader& r, Eigen::Index rows, Eigen::Index cols)
{
    Mat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const Line& l = r.next();
        if (static_cast<Eigen::Index>(l.tok.size()) != cols)
            throw parse_error(l.number, "expected " + std::to_string(cols) + " entries, found " +
                                            std::to_string(l.tok.size()));
        for (Eigen::Index j = 0; j < cols; ++j)
            m(i, j) = to_complex(l.tok[j], l.number);
    }
    return m;
}

void write_dense(std::ostringstream& os, const Mat& m)
{
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            os << (j ? " " : "") << complex_token(m(i, j));
        os << '\n';
    }
}

int positive(const std::string& s, int line, const char* what)
{
    long long v = to_int(s, line);
    if (v < 1 || v > 4096)
        throw parse_error(line, std::string(what) + " must lie in 1..4096, found " + s);
    return static_cast<int>(v);
}

// algebra NAME / blocks ... / [labels ...]
std::pair<std::string, Algebra> read_algebra_head(Reader& r)
{
    const Line& h = r.expect("algebra");
    std::string name = h.rest;
    const Line& b = r.expect("blocks");
    if (b.tok.size() < 2)
        throw parse_error(b.number, "blocks needs at least one size");
    std::vector<int> sizes;
    for (size_t i = 1; i < b.tok.size(); ++i)
        sizes.push_back(positive(b.tok[i], b.number, "block size"));
    std::vector<std::string> labels;
    if (r.at("labels")) {
        const Line& l = r.next();
        labels.assign(l.tok.begin() + 1, l.tok.end());
        if (labels.size() != sizes.size())
            throw parse_error(l.number, "one label per block expected");
    }
    long long dim = 0;
    for (int n : sizes)
        dim += static_cast<long long>(n) * n;
    if (dim > 1 << 22)
        throw parse_error(b.number, "algebra too large");
    return {name, Algebra(sizes, labels)};
}

void write_algebra_head(std::ostringstream& os, const std::string& name, const Algebra& a)
{
    os << "algebra " << name << '\n' << "blocks";
    for (int n : a.blocks)
        os << ' ' << n;
    os << '\n';
    if (!a.labels.empty()) {
        os << "labels";
        for (const auto& l : a.labels)
            os << ' ' << l;
        os << '\n';
    }
}

double rel_diff(const Mat& a, const Mat& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        return INFINITY;
    double worst = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const double scale = std::max(1.0, std::abs(a(i)));
        worst = std::max(worst, std::abs(a(i) - b(i)) / scale);
    }
    return worst;
}

}  // namespace

std::string format_double(double x)
{
    if (x == 0.0)
        return std::signbit(x) ? "-0" : "0";
    char buf[32];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x)
            return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// ---------------- algebra ----------------

AlgebraFile parse_algebra(const std::string& text)
{
    Reader r(text);
    AlgebraFile f;
    std::tie(f.name, f.alg) = read_algebra_head(r);
    while (r.at("element")) {
        const Line& h = r.next();
        Element x(f.alg);
        while (!r.done() && r.peek().tok[0] != "element") {
            const Line& l = r.next();
            if (l.tok.size() != 5)
                throw parse_error(l.number, "element entry needs 'block row col re im'");
            long long b = to_int(l.tok[0], l.number), i = to_int(l.tok[1], l.number), j = to_int(l.tok[2], l.number);
            if (b < 0 || b >= f.alg.nblocks())
                throw parse_error(l.number, "block index out of range");
            const int n = f.alg.blocks[b];
            if (i < 0 || i >= n || j < 0 || j >= n)
                throw parse_error(l.number, "matrix index out of range for block of size " + std::to_string(n));
            x.blk[b](i, j) = cplx(to_double(l.tok[3], l.number), to_double(l.tok[4], l.number));
        }
        f.elements.emplace_back(h.rest, std::move(x));
    }
    r.finish();
    return f;
}

std::string write_algebra(const AlgebraFile& f)
{
    std::ostringstream os;
    write_algebra_head(os, f.name, f.alg);
    for (const auto& [name, x] : f.elements) {
        os << "element " << name << '\n';
        for (int b = 0; b < x.alg.nblocks(); ++b)
            for (Eigen::Index i = 0; i < x.blk[b].rows(); ++i)
                for (Eigen::Index j = 0; j < x.blk[b].cols(); ++j) {
                    cplx z = x.blk[b](i, j);
                    if (z != cplx(0.0))
                        os << b << ' ' << i << ' ' << j << ' ' << format_double(z.real()) << ' '
                           << format_double(z.imag()) << '\n';
                }
    }
    return os.str();
}

// ---------------- weak Hopf ----------------

WeakHopfAlgebra parse_weak_hopf(const std::string& text)
{
    Reader r(text);
    auto [name, q] = read_algebra_head(r);
    const int d = q.dim();
    r.expect("coproduct");
    Mat delta = read_dense(r, static_cast<Eigen::Index>(d) * d, d);
    r.expect("counit");
    Mat eps = read_dense(r, 1, d);
    r.expect("antipode");
    Mat s = read_dense(r, d, d);
    r.finish();
    return make_weak_hopf(name, q, delta, eps.row(0).transpose(), s);
}

std::string write_weak_hopf(const WeakHopfAlgebra& w)
{
    std::ostringstream os;
    write_algebra_head(os, w.name, w.Q);
    os << "coproduct\n";
    write_dense(os, w.delta_kron());
    os << "counit\n";
    write_dense(os, w.counit.m);
    os << "antipode\n";
    write_dense(os, w.antipode.m);
    return os.str();
}

// ---------------- inclusion ----------------

InclusionFile parse_inclusion(const std::string& text)
{
    Reader r(text);
    InclusionFile f;
    f.name = r.expect("inclusion").rest;
    auto a = read_algebra_head(r);
    auto b = read_algebra_head(r);
    r.expect("embedding");
    Mat m = read_dense(r, b.second.dim(), a.second.dim());
    r.finish();
    f.embed = LinearMap(a.second, b.second, m);
    return f;
}

std::string write_inclusion(const InclusionFile& f)
{
    std::ostringstream os;
    os << "inclusion " << f.name << '\n';
    write_algebra_head(os, "A", f.embed.src);
    write_algebra_head(os, "B", f.embed.tgt);
    os << "embedding\n";
    write_dense(os, f.embed.m);
    return os.str();
}

// ---------------- action ----------------

ActionFile parse_action(const std::string& text)
{
    Reader r(text);
    ActionFile f;
    f.name = r.expect("action").rest;
    const Line& s = r.expect("symmetry");
    if (s.rest.empty())
        throw parse_error(s.number, "symmetry needs a file path");
    f.symmetry = s.rest;
    const Line& t = r.expect("target");
    if (t.rest.empty())
        throw parse_error(t.number, "target needs a file path");
    f.target = t.rest;
    const Line& o = r.expect("operators");
    if (o.tok.size() != 3)
        throw parse_error(o.number, "operators needs a count and a size");
    const int count = positive(o.tok[1], o.number, "operator count");
    const int size = positive(o.tok[2], o.number, "operator size");
    for (int k = 0; k < count; ++k) {
        const Line& h = r.expect("op");
        if (h.tok.size() != 2 || to_int(h.tok[1], h.number) != k)
            throw parse_error(h.number, "expected 'op " + std::to_string(k) + "'");
        f.ops.push_back(read_dense(r, size, size));
    }
    r.finish();
    return f;
}

std::string write_action(const ActionFile& f)
{
    std::ostringstream os;
    os << "action " << f.name << '\n';
    os << "symmetry " << f.symmetry << '\n';
    os << "target " << f.target << '\n';
    const long long size = f.ops.empty() ? 0 : f.ops[0].rows();
    os << "operators " << f.ops.size() << ' ' << size << '\n';
    for (size_t k = 0; k < f.ops.size(); ++k) {
        os << "op " << k << '\n';
        write_dense(os, f.ops[k]);
    }
    return os.str();
}

Action load_action(const std::string& path)
{
    ActionFile f = parse_action(read_file(path));
    const std::filesystem::path base = std::filesystem::path(path).parent_path();
    auto resolve = [&](const std::string& p) {
        std::filesystem::path q(p);
        return (q.is_absolute() ? q : base / q).string();
    };
    WeakHopfAlgebra w = parse_weak_hopf(read_file(resolve(f.symmetry)));
    AlgebraFile b = parse_algebra(read_file(resolve(f.target)));
    if (static_cast<int>(f.ops.size()) != w.dim())
        throw invalid_structure("action lists " + std::to_string(f.ops.size()) + " operators, symmetry has dimension " +
                                std::to_string(w.dim()));
    if (!f.ops.empty() && f.ops[0].rows() != b.alg.dim())
        throw invalid_structure("operator size does not match the target algebra");
    return make_action(w, b.alg, f.ops);
}

// ---------------- fusion ring ----------------

FusionRing parse_fusion(const std::string& text)
{
    Reader r(text);
    std::string name = "ring";
    if (r.at("fusion"))
        name = r.next().rest;
    const Line& l = r.expect("labels");
    std::vector<std::string> labels(l.tok.begin() + 1, l.tok.end());
    if (labels.empty())
        throw parse_error(l.number, "labels needs at least the unit");
    for (size_t i = 0; i < labels.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (labels[i] == labels[j])
                throw parse_error(l.number, "duplicate label '" + labels[i] + "'");
    auto index_of = [&](const std::string& s, int line) {
        auto it = std::find(labels.begin(), labels.end(), s);
        if (it == labels.end())
            throw parse_error(line, "unknown label '" + s + "'");
        return static_cast<int>(it - labels.begin());
    };
    const Line& dl = r.expect("dual");
    if (dl.tok.size() != labels.size() + 1)
        throw parse_error(dl.number, "dual must list one label per label");
    std::vector<int> conj;
    for (size_t i = 1; i < dl.tok.size(); ++i)
        conj.push_back(index_of(dl.tok[i], dl.number));
    FusionRing fr(name, labels, conj);
    std::vector<bool> seen(fr.n.size(), false);
    while (!r.done()) {
        const Line& e = r.next();
        if (e.tok.size() != 4)
            throw parse_error(e.number, "fusion entry needs 'a b c m'");
        const int a = index_of(e.tok[0], e.number), b = index_of(e.tok[1], e.number), c = index_of(e.tok[2], e.number);
        const long long m = to_int(e.tok[3], e.number);
        if (m < 1)
            throw parse_error(e.number, "listed multiplicities must be positive");
        const size_t k = (static_cast<size_t>(a) * labels.size() + b) * labels.size() + c;
        if (seen[k])
            throw parse_error(e.number, "entry listed twice");
        seen[k] = true;
        fr.N(a, b, c) = m;
    }
    return fr;
}

std::string write_fusion(const FusionRing& fr)
{
    std::ostringstream os;
    os << "fusion " << fr.name << '\n' << "labels";
    for (const auto& l : fr.labels)
        os << ' ' << l;
    os << '\n' << "dual";
    for (int c : fr.conj)
        os << ' ' << fr.labels[c];
    os << '\n';
    for (int a = 0; a < fr.rank(); ++a)
        for (int b = 0; b < fr.rank(); ++b)
            for (int c = 0; c < fr.rank(); ++c)
                if (fr.N(a, b, c) != 0)
                    os << fr.labels[a] << ' ' << fr.labels[b] << ' ' << fr.labels[c] << ' ' << fr.N(a, b, c) << '\n';
    return os.str();
}

// ---------------- pairing ----------------

PairingFile parse_pairing(const std::string& text)
{
    Reader r(text);
    PairingFile f;
    f.name = r.expect("pairing").rest;
    const Line& s = r.expect("size");
    if (s.tok.size() != 3)
        throw parse_error(s.number, "size needs rows and columns");
    const int rows = positive(s.tok[1], s.number, "rows"), cols = positive(s.tok[2], s.number, "columns");
    f.pairing = read_dense(r, rows, cols);
    r.finish();
    return f;
}

std::string write_pairing(const PairingFile& f)
{
    std::ostringstream os;
    os << "pairing " << f.name << '\n' << "size " << f.pairing.rows() << ' ' << f.pairing.cols() << '\n';
    write_dense(os, f.pairing);
    return os.str();
}

// ---------------- detection and round trip ----------------

const char* kind_name(FileKind k)
{
    switch (k) {
    case FileKind::Algebra: return "algebra";
    case FileKind::WeakHopf: return "weak-hopf";
    case FileKind::Inclusion: return "inclusion";
    case FileKind::Action: return "action";
    case FileKind::Fusion: return "fusion";
    case FileKind::Pairing: return "pairing";
    }
    return "?";
}

FileKind detect_kind(const std::string& text)
{
    Reader r(text);
    if (r.done())
        throw parse_error(1, "empty file");
    const std::string& k = r.peek().tok[0];
    if (k == "inclusion")
        return FileKind::Inclusion;
    if (k == "action")
        return FileKind::Action;
    if (k == "fusion" || k == "labels")
        return FileKind::Fusion;
    if (k == "pairing")
        return FileKind::Pairing;
    if (k == "algebra") {
        while (!r.done())
            if (r.next().tok[0] == "coproduct")
                return FileKind::WeakHopf;
        return FileKind::Algebra;
    }
    throw parse_error(r.peek().number, "unknown file kind '" + k + "'");
}

RoundTrip round_trip(const std::string& text)
{
    RoundTrip rt;
    rt.kind = detect_kind(text);
    std::string once, twice;
    double diff = 0.0;
    bool exact = true;
    switch (rt.kind) {
    case FileKind::Algebra: {
        AlgebraFile a = parse_algebra(text);
        once = write_algebra(a);
        AlgebraFile b = parse_algebra(once);
        exact = a.name == b.name && a.alg.blocks == b.alg.blocks && a.alg.labels == b.alg.labels &&
                a.elements.size() == b.elements.size();
        for (size_t i = 0; exact && i < a.elements.size(); ++i) {
            exact = a.elements[i].first == b.elements[i].first;
            diff = std::max(diff, rel_diff(coords(a.elements[i].second), coords(b.elements[i].second)));
        }
        twice = write_algebra(b);
        break;
    }
    case FileKind::WeakHopf: {
        WeakHopfAlgebra a = parse_weak_hopf(text);
        once = write_weak_hopf(a);
        WeakHopfAlgebra b = parse_weak_hopf(once);
        exact = a.name == b.name && a.Q.blocks == b.Q.blocks;
        diff = std::max({rel_diff(a.delta_kron(), b.delta_kron()), rel_diff(a.counit.m, b.counit.m),
                         rel_diff(a.antipode.m, b.antipode.m)});
        twice = write_weak_hopf(b);
        break;
    }
    case FileKind::Inclusion: {
        InclusionFile a = parse_inclusion(text);
        once = write_inclusion(a);
        InclusionFile b = parse_inclusion(once);
        exact = a.name == b.name && a.embed.src.blocks == b.embed.src.blocks &&
                a.embed.tgt.blocks == b.embed.tgt.blocks;
        diff = rel_diff(a.embed.m, b.embed.m);
        twice = write_inclusion(b);
        break;
    }
    case FileKind::Action: {
        ActionFile a = parse_action(text);
        once = write_action(a);
        ActionFile b = parse_action(once);
        exact = a.name == b.name && a.symmetry == b.symmetry && a.target == b.target && a.ops.size() == b.ops.size();
        for (size_t k = 0; exact && k < a.ops.size(); ++k)
            diff = std::max(diff, rel_diff(a.ops[k], b.ops[k]));
        twice = write_action(b);
        break;
    }
    case FileKind::Fusion: {
        FusionRing a = parse_fusion(text);
        once = write_fusion(a);
        FusionRing b = parse_fusion(once);
        exact = a.name == b.name && a.labels == b.labels && a.conj == b.conj && a.n == b.n;
        twice = write_fusion(b);
        break;
    }
    case FileKind::Pairing: {
        PairingFile a = parse_pairing(text);
        once = write_pairing(a);
        PairingFile b = parse_pairing(once);
        exact = a.name == b.name;
        diff = rel_diff(a.pairing, b.pairing);
        twice = write_pairing(b);
        break;
    }
    }
    rt.max_difference = diff;
    const bool stable = once == twice;
    rt.pass = exact && stable && diff <= 1e-15;
    if (!exact)
        rt.detail = "integer or name data changed";
    else if (!stable)
        rt.detail = "serialization is not stable";
    else if (diff > 1e-15)
        rt.detail = "float data changed by " + format_double(diff);
    return rt;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw error("cannot write " + path);
    out << text;
    if (!out)
        throw error("write failed for " + path);
}

// ---------------- reports ----------------

void Report::add(const std::string& key, const std::string& value) { rows_.emplace_back(key, value); }
void Report::add(const std::string& key, long long value) { rows_.emplace_back(key, std::to_string(value)); }
void Report::add(const std::string& key, double value) { rows_.emplace_back(key, format_double(value)); }
void Report::add(const std::string& key, bool value) { rows_.emplace_back(key, value ? "true" : "false"); }

void Report::add_check(const std::string& key, const Check& c)
{
    add(key + ".pass", c.pass);
    add(key + ".residual", c.residual);
    if (!c.worst.empty())
        add(key + ".worst", c.worst);
}

std::string Report::render(bool machine) const
{
    std::ostringstream os;
    if (machine) {
        for (const auto& [k, v] : rows_)
            os << k << '=' << v << '\n';
        return os.str();
    }
    size_t width = 0;
    for (const auto& kv : rows_)
        width = std::max(width, kv.first.size());
    for (const auto& [k, v] : rows_)
        os << k << std::string(width - k.size() + 2, ' ') << v << '\n';
    return os.str();
}

// ---------------- stock inputs ----------------

std::vector<std::string> stock_names()
{
    return {"group_z2",    "group_z3",      "group_s3",       "function_z2",  "function_z3", "function_s3",
            "groupoid_pair2", "groupoid_pair3", "c2_in_mat2",  "c3_in_mat3",   "cmat2_in_mat3", "z2_on_mat2",
            "fibonacci",   "ising",         "z2",             "z3",           "trivial",     "rep_s3"};
}

std::vector<StockFile> stock_example(const std::string& name, Rng& rng)
{
    auto whopf = [&](const WeakHopfAlgebra& w) {
        WeakHopfAlgebra c = w;
        c.name = name;
        return std::vector<StockFile>{{name + ".whopf", write_weak_hopf(c)}};
    };
    auto incl = [&](const std::vector<int>& a, std::initializer_list<int> lambda_rows) {
        std::vector<int> entries(lambda_rows);
        IMat l(1, static_cast<Eigen::Index>(entries.size()));
        for (size_t i = 0; i < entries.size(); ++i)
            l(0, static_cast<Eigen::Index>(i)) = entries[i];
        Inclusion inc = standard_inclusion(a, l);
        return std::vector<StockFile>{{name + ".incl", write_inclusion({name, inc.embed})}};
    };
    auto ring = [&](FusionRing fr) {
        fr.name = name;
        return std::vector<StockFile>{{name + ".fr", write_fusion(fr)}};
    };

    if (name == "group_z2") return whopf(group_algebra(cyclic_group(2), rng));
    if (name == "group_z3") return whopf(group_algebra(cyclic_group(3), rng));
    if (name == "group_s3") return whopf(group_algebra(symmetric_group(3), rng));
    if (name == "function_z2") return whopf(function_algebra(cyclic_group(2)));
    if (name == "function_z3") return whopf(function_algebra(cyclic_group(3)));
    if (name == "function_s3") return whopf(function_algebra(symmetric_group(3)));
    if (name == "groupoid_pair2") return whopf(groupoid_algebra(pair_groupoid(2), rng));
    if (name == "groupoid_pair3") return whopf(groupoid_algebra(pair_groupoid(3), rng));
    if (name == "c2_in_mat2") return incl({1, 1}, {1, 1});
    if (name == "c3_in_mat3") return incl({1, 1, 1}, {1, 1, 1});
    if (name == "cmat2_in_mat3") return incl({1, 2}, {1, 1});
    if (name == "z2_on_mat2") {
        Transported t = group_algebra_transported(cyclic_group(2), rng);
        t.w.name = "z2_on_mat2_symmetry";
        Mat swap = Mat::Zero(4, 4);
        swap(0, 3) = swap(3, 0) = swap(1, 2) = swap(2, 1) = 1.0;
        Action act = group_action(t, full_matrix(2), {Mat::Identity(4, 4), swap});
        ActionFile f{name, "z2_on_mat2_symmetry.whopf", "mat2.alg", act.ops};
        AlgebraFile m2{"mat2", full_matrix(2), {}};
        return {{name + ".act", write_action(f)},
                {"z2_on_mat2_symmetry.whopf", write_weak_hopf(t.w)},
                {"mat2.alg", write_algebra(m2)}};
    }
    if (name == "fibonacci") return ring(fibonacci_ring());
    if (name == "ising") return ring(ising_ring());
    if (name == "z2") return ring(cyclic_ring(2));
    if (name == "z3") return ring(cyclic_ring(3));
    if (name == "trivial") return ring(trivial_ring());
    if (name == "rep_s3") return ring(rep_s3_ring());
    return {};
}

}  // namespace whopf
