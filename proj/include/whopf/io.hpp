#pragma once

#include "whopf/sectors.hpp"
#include "whopf/towers.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace whopf {

struct parse_error : error {
    int line;
    parse_error(int ln, const std::string& msg);
};

// --- file grammars, see docs/formats.md ---

struct AlgebraFile {
    std::string name;
    Algebra alg;
    std::vector<std::pair<std::string, Element>> elements;
};
AlgebraFile parse_algebra(const std::string& text);
std::string write_algebra(const AlgebraFile& f);

WeakHopfAlgebra parse_weak_hopf(const std::string& text);
std::string write_weak_hopf(const WeakHopfAlgebra& w);

struct InclusionFile {
    std::string name;
    LinearMap embed;  // A -> B
};
InclusionFile parse_inclusion(const std::string& text);
std::string write_inclusion(const InclusionFile& f);

// symmetry and target are paths, resolved relative to the action file
struct ActionFile {
    std::string name;
    std::string symmetry;
    std::string target;
    std::vector<Mat> ops;
};
ActionFile parse_action(const std::string& text);
std::string write_action(const ActionFile& f);
Action load_action(const std::string& path);

FusionRing parse_fusion(const std::string& text);
std::string write_fusion(const FusionRing& fr);

struct PairingFile {
    std::string name;
    Mat pairing;  // rows: dual basis, columns: primal basis
};
PairingFile parse_pairing(const std::string& text);
std::string write_pairing(const PairingFile& f);

enum class FileKind { Algebra, WeakHopf, Inclusion, Action, Fusion, Pairing };
const char* kind_name(FileKind k);
FileKind detect_kind(const std::string& text);

// parse, write, parse again and compare; integers exactly, floats to 1e-15 relative
struct RoundTrip {
    FileKind kind = FileKind::Algebra;
    bool pass = false;
    double max_difference = 0.0;
    std::string detail;
};
RoundTrip round_trip(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// %.17g, shortest form that reads back bit-exact
std::string format_double(double x);

// ordered key/value report; machine form is one key=value per line
class Report {
public:
    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, const char* value) { add(key, std::string(value)); }
    void add(const std::string& key, long long value);
    void add(const std::string& key, int value) { add(key, static_cast<long long>(value)); }
    void add(const std::string& key, double value);
    void add(const std::string& key, bool value);
    void add_check(const std::string& key, const Check& c);
    std::string render(bool machine) const;
    const std::vector<std::pair<std::string, std::string>>& entries() const { return rows_; }

private:
    std::vector<std::pair<std::string, std::string>> rows_;
};

// --- stock inputs ---

struct StockFile {
    std::string filename;
    std::string content;
};
std::vector<std::string> stock_names();
// the files making up one stock input; empty for an unknown name
std::vector<StockFile> stock_example(const std::string& name, Rng& rng);

}  // namespace whopf
