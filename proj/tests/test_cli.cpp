#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "whopf/io.hpp"

#include <array>
#include <cstdio>
#include <filesystem>
#include <sys/wait.h>

using namespace whopf;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run cli(const std::string& args)
{
    const std::string cmd = std::string(WHOPF_CLI) + " " + args + " 2>&1";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0)
        r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string data(const std::string& f) { return std::string(WHOPF_DATA) + "/" + f; }

bool has(const Run& r, const std::string& line) { return r.out.find(line + "\n") != std::string::npos; }

fs::path scratch()
{
    fs::path d = fs::temp_directory_path() / ("whopf_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("verify")
{
    Run r = cli("--machine verify " + data("groupoid_pair2.whopf"));
    CHECK(r.code == 0);
    CHECK(has(r, "verdict=Weak"));
    CHECK(has(r, "all_pass=true"));
    Run z = cli("--machine verify " + data("group_z2.whopf"));
    CHECK(z.code == 0);
    CHECK(has(z, "verdict=True"));
    CHECK(cli("verify " + data("ising.fr")).code == 0);
    CHECK(cli("verify " + data("z2_on_mat2.act")).code == 0);
    CHECK(cli("verify " + data("c2_in_mat2.incl")).code == 0);
}

TEST_CASE("input errors exit with 2")
{
    fs::path d = scratch();
    std::string text = read_file(data("group_z3.whopf"));
    write_file((d / "cut.whopf").string(), text.substr(0, text.size() / 3));
    Run r = cli("verify " + (d / "cut.whopf").string());
    CHECK(r.code == 2);
    CHECK(r.out.find("line ") != std::string::npos);
    CHECK(cli("verify " + (d / "missing.whopf").string()).code == 2);
    CHECK(cli("--tol 0.5 verify " + data("group_z2.whopf")).code == 2);
    CHECK(cli("--tol -1 verify " + data("group_z2.whopf")).code == 2);
    CHECK(cli("frobnicate").code == 2);
    CHECK(cli("sectors fibonacci --mult nope=1").code == 2);
    CHECK(cli("example no_such_example").code == 2);
    fs::remove_all(d);
}

TEST_CASE("property failures exit with 1")
{
    fs::path d = scratch();
    std::string bad = read_file(data("group_z2.whopf"));
    bad.replace(bad.find("counit\n1:0"), 10, "counit\n2:0");
    write_file((d / "bad.whopf").string(), bad);
    Run r = cli("--machine verify " + (d / "bad.whopf").string());
    CHECK(r.code == 1);
    CHECK(has(r, "verdict=Invalid"));

    Inclusion deep = standard_inclusion({1, 1}, (IMat(2, 2) << 1, 1, 1, 0).finished());
    write_file((d / "deep.incl").string(), write_inclusion({"deep", deep.embed}));
    Run t = cli("--machine tower " + (d / "deep.incl").string() + " --extract");
    CHECK(t.code == 1);
    CHECK(has(t, "depth=3"));
    CHECK(cli("tower " + (d / "deep.incl").string()).code == 0);

    Run s = cli("--machine sectors fibonacci --sigma custom --mult tau=1");
    CHECK(s.code == 1);
    CHECK(has(s, "depth_two.witness=1"));
    fs::remove_all(d);
}

TEST_CASE("tower pipeline")
{
    fs::path d = scratch();
    Run r = cli("--machine tower " + data("c2_in_mat2.incl") + " --extract --out-dir " + d.string());
    CHECK(r.code == 0);
    CHECK(has(r, "depth=2"));
    CHECK(has(r, "index=2"));
    CHECK(has(r, "Q.dim=4"));
    CHECK(has(r, "Qhat.dim=4"));
    CHECK(has(r, "Q.verdict=Weak"));
    CHECK(has(r, "reconstruction.crossed_blocks=2"));
    CHECK(cli("verify " + (d / "c2_in_mat2_Q.whopf").string()).code == 0);
    CHECK(cli("verify " + (d / "c2_in_mat2_Qhat.whopf").string()).code == 0);
    CHECK(cli("roundtrip " + (d / "c2_in_mat2_pairing.pair").string()).code == 0);
    fs::remove_all(d);
}

TEST_CASE("sectors")
{
    Run r = cli("--machine sectors " + data("fibonacci.fr"));
    CHECK(r.code == 0);
    CHECK(has(r, "dim_Q=13"));
    CHECK(has(r, "N=2,3"));
    Run reg = cli("--machine sectors z2 --sigma reg");
    CHECK(reg.code == 0);
    CHECK(has(reg, "z_weights=1,1"));
    CHECK(has(reg, "reg.equals_oplus=true"));
    Run loc = cli("--machine sectors ising --locality");
    CHECK(loc.code == 0);
    CHECK(loc.out.find("locality=not modeled") != std::string::npos);
}

TEST_CASE("example, dualize and roundtrip")
{
    fs::path d = scratch();
    Run e = cli("example group_z2 --out-dir " + d.string());
    CHECK(e.code == 0);
    CHECK(cli("verify " + (d / "group_z2.whopf").string()).code == 0);
    Run du = cli("--machine dualize " + (d / "group_z2.whopf").string() + " -o " + (d / "dual.whopf").string() +
                 " --pairing " + (d / "p.pair").string());
    CHECK(du.code == 0);
    CHECK(has(du, "dual.blocks=1,1"));
    CHECK(cli("verify " + (d / "dual.whopf").string()).code == 0);

    std::string all;
    for (const auto& entry : fs::directory_iterator(WHOPF_DATA))
        all += " " + entry.path().string();
    CHECK(cli("roundtrip" + all).code == 0);
    Run list = cli("example --list");
    CHECK(list.code == 0);
    CHECK(has(list, "fibonacci"));
    fs::remove_all(d);
}

TEST_CASE("same seed, same bytes")
{
    const std::string args = "--machine --seed 17 tower " + data("cmat2_in_mat3.incl") + " --extract";
    Run a = cli(args), b = cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    Run c = cli("--machine --seed 5 dualize " + data("group_s3.whopf"));
    Run c2 = cli("--machine --seed 5 dualize " + data("group_s3.whopf"));
    CHECK(c.out == c2.out);
}
