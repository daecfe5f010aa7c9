// Drives the tfq binary end to end: file formats, exit codes, determinism.
// The binary path arrives via the TFQ_BIN environment variable.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tfq/io.hpp"
#include "tfq/verify.hpp"

using namespace tfq;

namespace {

struct Cli {
    std::filesystem::path dir;
    std::string bin;

    Cli() {
        const char* env = std::getenv("TFQ_BIN");
        REQUIRE(env != nullptr);
        bin = env;
        dir = std::filesystem::temp_directory_path() / "tfq_cli_test";
        std::filesystem::create_directories(dir);
    }
    ~Cli() { std::filesystem::remove_all(dir); }

    std::string file(const std::string& name) const { return (dir / name).string(); }

    int run(const std::string& args) const {
        std::string cmd = bin + " " + args + " >" + file("stdout.txt") + " 2>" + file("stderr.txt");
        int rc = std::system(cmd.c_str());
        return WEXITSTATUS(rc);
    }
    std::string out() const {
        std::ifstream in(file("stdout.txt"));
        return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    }
};

}  // namespace

TEST_CASE("cli: transforms, render, exit codes, determinism") {
    Cli cli;
    Grid g = make_grid(64, 1.0 / 8.0);
    Signal f = gaussian(GaussianKind::phi_l2, 1.0, g);
    io::write_signal(f, cli.file("f.json"));

    CHECK(cli.run("wigner --f " + cli.file("f.json") + " --g " + cli.file("f.json") + " --out " +
                  cli.file("w.tf")) == 0);
    TFFunction W = io::read_tf(cli.file("w.tf"));
    CHECK(std::abs(W.at(32, 32) - cd(2.0, 0.0)) < 1e-6);

    CHECK(cli.run("stft --f " + cli.file("f.json") + " --out " + cli.file("v.tf")) == 0);
    CHECK(cli.run("cohen --f " + cli.file("f.json") + " --kernel gausswig:1 --out " + cli.file("q.tf")) == 0);
    CHECK(cli.run("render --in " + cli.file("w.tf") + " --out " + cli.file("w.pgm")) == 0);
    CHECK(std::filesystem::exists(cli.file("w.pgm")));

    // identical argv and files give identical outputs
    CHECK(cli.run("wigner --f " + cli.file("f.json") + " --out " + cli.file("w2.tf")) == 0);
    std::ifstream a(cli.file("w.tf")), b(cli.file("w2.tf"));
    std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);

    // usage errors exit with 2
    CHECK(cli.run("wigner --no-such-flag x") == 2);
    CHECK(cli.run("bogus-subcommand") == 2);
    // missing input exits with 1
    CHECK(cli.run("wigner --f " + cli.file("missing.json") + " --out " + cli.file("x.tf")) == 1);
}

TEST_CASE("cli: constants eval prints the documented value") {
    Cli cli;
    CHECK(cli.run("constants eval --name H --p 4 --q 2 --d 1") == 0);
    std::string out = cli.out();
    CHECK(out.find("0.84089641525371") != std::string::npos);
    CHECK(cli.run("constants eval --name A --p 4") == 0);
    CHECK(cli.out().find("1.06759239809835") != std::string::npos);
    CHECK(cli.run("constants eval --name wigner_bounded --r 3 --s 1.5 --p 4") == 0);
    CHECK(cli.out().find("\"value\":1.0") != std::string::npos);
}

TEST_CASE("cli: operator build/apply/norm pipeline") {
    Cli cli;
    Grid g = make_grid(32, 0.25);
    Signal f = gaussian(GaussianKind::phi_l2, 1.0, g);
    io::write_signal(f, cli.file("f.json"));

    std::ofstream sym(cli.file("sym.json"));
    sym << R"({"grid":{"dim":1,"n":32,"dx":0.25,"x0":-4.0},"kind":"constant","value":1.0})";
    sym.close();

    CHECK(cli.run("op build --type weyl --symbol " + cli.file("sym.json") + " --out " + cli.file("m.op")) == 0);
    CHECK(cli.run("op apply --op " + cli.file("m.op") + " --signal " + cli.file("f.json") + " --out " +
                  cli.file("g.json")) == 0);
    Signal out = io::read_signal(cli.file("g.json"));
    double dev = 0.0;
    for (std::size_t i = 0; i < f.v.size(); ++i) dev = std::max(dev, std::abs(out.v[i] - f.v[i]));
    CHECK(dev < 1e-8);

    CHECK(cli.run("op norm --op " + cli.file("m.op")) == 0);
    CHECK(cli.out().find("\"norm\":") != std::string::npos);

    // localization build through windows
    std::ofstream sym2(cli.file("chi.json"));
    sym2 << R"({"grid":{"dim":1,"n":32,"dx":0.25,"x0":-4.0},"kind":"chi_t","intervals":[[-1.0,1.0]]})";
    sym2.close();
    CHECK(cli.run("op build --type loc --symbol " + cli.file("chi.json") + " --win-phi " +
                  cli.file("f.json") + " --path direct --out " + cli.file("l.op")) == 0);
    CHECK(cli.run("op build --type cohen --symbol " + cli.file("chi.json") +
                  " --kernel gausswig:1 --out " + cli.file("c.op")) == 0);

    OperatorMatrix L = io::read_operator(cli.file("l.op"));
    OperatorMatrix C = io::read_operator(cli.file("c.op"));
    double scale = 0.0, diff = 0.0;
    for (std::size_t i = 0; i < L.m.size(); ++i) {
        scale = std::max(scale, std::abs(L.m[i]));
        diff = std::max(diff, std::abs(L.m[i] - C.m[i]));
    }
    CHECK(diff < 1e-6 * scale);
}

TEST_CASE("cli: uncertainty subcommands") {
    Cli cli;
    Grid g = make_grid(256, 1.0 / 16.0);
    Signal f = gaussian(GaussianKind::phi_l2, 1.0, g);
    io::write_signal(f, cli.file("f.json"));
    std::ofstream t(cli.file("T.json"));
    t << R"({"grid":{"dim":1,"n":256,"dx":0.0625,"x0":-8.0},"intervals":[[-2.0,2.0]]})";
    t.close();
    std::ofstream o(cli.file("O.json"));
    o << R"({"grid":{"dim":1,"n":256,"dx":0.0625,"x0":-8.0},"intervals":[[-2.0,2.0]]})";
    o.close();

    CHECK(cli.run("up check --signal " + cli.file("f.json") + " --set-t " + cli.file("T.json") +
                  " --set-omega " + cli.file("O.json") + " --lambda1 1 --lambda2 1 --out " +
                  cli.file("rep.json")) == 0);
    std::ifstream rep(cli.file("rep.json"));
    std::string body((std::istreambuf_iterator<char>(rep)), std::istreambuf_iterator<char>());
    CHECK(body.find("\"satisfied\": true") != std::string::npos);

    CHECK(cli.run("up check --signal " + cli.file("f.json") + " --set-t " + cli.file("T.json") +
                  " --set-omega " + cli.file("O.json") + " --kernel gausswig:1 --out " +
                  cli.file("rep2.json")) == 0);

    CHECK(cli.run("up bound --eps-t 0.05 --eps-omega 0.05 --d 1") == 0);
    std::string out = cli.out();
    CHECK(out.find("\"bound\":0.91") != std::string::npos);

    CHECK(cli.run("up scaling --q 4 --p 4 --lambdas 1,2,4,8") == 0);
    CHECK(cli.out().find("\"slope\":-0.") != std::string::npos);
}

TEST_CASE("cli: verify subset runs and reports per-case lines") {
    Cli cli;
    CHECK(cli.run("verify constants") == 0);
    std::string out = cli.out();
    CHECK(out.find("PASS") != std::string::npos);
    CHECK(out.find("AC1.a") != std::string::npos);
    CHECK(out.find("OVERALL PASS") != std::string::npos);
}
