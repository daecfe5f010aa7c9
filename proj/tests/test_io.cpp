#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "tfq/io.hpp"
#include "tfq/verify.hpp"

using namespace tfq;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() / "tfq_io_test";
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

const Grid g32 = make_grid(32, 0.25);

}  // namespace

TEST_CASE("signal round trip is bitwise") {
    TempDir tmp;
    verify::Rng rng(1);
    Signal f = verify::random_mixture(g32, rng);
    f.gen = GaussianGen{1.5, 0.75};
    io::write_signal(f, tmp.file("f.json"));
    Signal g = io::read_signal(tmp.file("f.json"));
    CHECK(g.grid == f.grid);
    REQUIRE(g.v.size() == f.v.size());
    for (std::size_t i = 0; i < f.v.size(); ++i) CHECK(g.v[i] == f.v[i]);
    REQUIRE(g.gen.has_value());
    CHECK(g.gen->lambda == 1.5);
    CHECK(g.gen->amplitude == 0.75);
}

TEST_CASE("set round trip and interval compilation") {
    TempDir tmp;
    MeasurableSet s = set_from_intervals(g32, {{-2.0, -1.0}, {0.5, 3.0}});
    io::write_set(s, tmp.file("s.json"));
    MeasurableSet r = io::read_set(tmp.file("s.json"));
    CHECK(r.mask == s.mask);

    // interval form compiles on read
    std::ofstream out(tmp.file("iv.json"));
    out << R"({"grid":{"dim":1,"n":32,"dx":0.25,"x0":-4.0},"intervals":[[-1.0,1.0]]})";
    out.close();
    MeasurableSet iv = io::read_set(tmp.file("iv.json"));
    CHECK(iv.measure() == doctest::Approx(2.25));  // 9 cells of width 1/4
}

TEST_CASE("tf round trip is bitwise") {
    TempDir tmp;
    verify::Rng rng(2);
    Signal f = verify::random_mixture(g32, rng);
    TFFunction V = gabor(f, f);
    io::write_tf(V, tmp.file("v.tf"));
    TFFunction R = io::read_tf(tmp.file("v.tf"));
    CHECK(R.grid == V.grid);
    for (std::size_t i = 0; i < V.v.size(); ++i) CHECK(R.v[i] == V.v[i]);
}

TEST_CASE("operator round trip is bitwise, provenance included") {
    TempDir tmp;
    verify::Rng rng(3);
    TFFunction a = verify::random_symbol(g32, rng, true);
    OperatorMatrix M = weyl_matrix(a);
    io::write_operator(M, tmp.file("m.op"));
    OperatorMatrix R = io::read_operator(tmp.file("m.op"));
    CHECK(R.grid == M.grid);
    CHECK(R.prov.kind == M.prov.kind);
    CHECK(R.prov.description == M.prov.description);
    for (std::size_t i = 0; i < M.m.size(); ++i) CHECK(R.m[i] == M.m[i]);

    // a multiplication-provenance operator keeps its multiplier
    TFFunction bx(g32);
    for (int xi = 0; xi < g32.n(); ++xi)
        for (int ki = 0; ki < g32.n(); ++ki) bx.at(xi, ki) = std::exp(-g32.x(xi) * g32.x(xi));
    OperatorMatrix Mx = weyl_matrix(bx);
    io::write_operator(Mx, tmp.file("mx.op"));
    OperatorMatrix Rx = io::read_operator(tmp.file("mx.op"));
    CHECK(Rx.prov.kind == Provenance::Kind::multiplication);
    REQUIRE(Rx.prov.multiplier.size() == Mx.prov.multiplier.size());
    for (std::size_t i = 0; i < Mx.prov.multiplier.size(); ++i)
        CHECK(Rx.prov.multiplier[i] == Mx.prov.multiplier[i]);
}

TEST_CASE("pgm rendering: header, constant image, zero image, peak location") {
    TempDir tmp;
    // constant -> uniform 65535
    TFFunction C(g32);
    for (auto& z : C.v) z = cd(0.7, 0.0);
    io::write_pgm(C, tmp.file("c.pgm"));
    std::ifstream in(tmp.file("c.pgm"), std::ios::binary);
    std::string magic;
    int w, h, maxval;
    in >> magic >> w >> h >> maxval;
    CHECK(magic == "P5");
    CHECK(w == 32);
    CHECK(h == 32);
    CHECK(maxval == 65535);
    in.get();  // single whitespace after the header
    std::vector<unsigned char> buf(2 * 32 * 32);
    in.read(reinterpret_cast<char*>(buf.data()), buf.size());
    REQUIRE(in.gcount() == static_cast<std::streamsize>(buf.size()));
    for (std::size_t i = 0; i < buf.size(); i += 2) {
        CHECK(buf[i] == 0xFF);
        CHECK(buf[i + 1] == 0xFF);
    }

    // zero -> all-zero payload
    TFFunction Z(g32);
    io::write_pgm(Z, tmp.file("z.pgm"));
    std::ifstream zin(tmp.file("z.pgm"), std::ios::binary);
    zin >> magic >> w >> h >> maxval;
    zin.get();
    std::vector<unsigned char> zbuf(2 * 32 * 32);
    zin.read(reinterpret_cast<char*>(zbuf.data()), zbuf.size());
    for (unsigned char c : zbuf) CHECK(c == 0);

    // Wigner of the Gaussian: single centered blob, max at the center cell
    Grid g = make_grid(64, 1.0 / 8.0);
    Signal Phi = gaussian(GaussianKind::phi_l2, 1.0, g);
    TFFunction W = wigner(Phi, Phi);
    io::write_pgm(W, tmp.file("w.pgm"));
    std::ifstream win(tmp.file("w.pgm"), std::ios::binary);
    win >> magic >> w >> h >> maxval;
    win.get();
    std::vector<unsigned char> wbuf(2 * 64 * 64);
    win.read(reinterpret_cast<char*>(wbuf.data()), wbuf.size());
    std::size_t arg = 0;
    unsigned best = 0;
    for (std::size_t i = 0; i < wbuf.size(); i += 2) {
        unsigned val = (static_cast<unsigned>(wbuf[i]) << 8) | wbuf[i + 1];
        if (val > best) {
            best = val;
            arg = i / 2;
        }
    }
    CHECK(best == 65535);
    std::size_t row = arg / 64, col = arg % 64;
    CHECK(col == 32);                 // x = 0
    CHECK(row == 64 - 1 - 32);        // w = 0, top row is the highest frequency
}

TEST_CASE("report serialization carries every field") {
    TempDir tmp;
    Grid g = make_grid(64, 1.0 / 8.0);
    Signal Phi = gaussian(GaussianKind::phi_l2, 1.0, g);
    MeasurableSet T = set_from_intervals(g, {{-1.0, 1.0}});
    MeasurableSet Om = set_from_intervals(g.dual(), {{-1.0, 1.0}});
    ConcentrationReport rep = up_check(Phi, T, Om, 1.0, 1.0);
    io::write_report(rep, tmp.file("r.json"));
    std::ifstream in(tmp.file("r.json"));
    std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    for (const char* key : {"eps_t", "eps_omega", "measure_t", "measure_omega", "bound_classical",
                            "bound_improved", "r_star", "hypothesis_flags", "product_t_omega",
                            "satisfied", "search_lattice", "pipeline"})
        CHECK(body.find(key) != std::string::npos);
}

TEST_CASE("atomic write replaces content and leaves no temp file") {
    TempDir tmp;
    io::atomic_write(tmp.file("a.txt"), "first");
    io::atomic_write(tmp.file("a.txt"), "second");
    std::ifstream in(tmp.file("a.txt"));
    std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(body == "second");
    CHECK_FALSE(std::filesystem::exists(tmp.file("a.txt.tmp")));
}

TEST_CASE("read errors") {
    TempDir tmp;
    CHECK_THROWS(io::read_signal(tmp.file("missing.json")));
    std::ofstream out(tmp.file("bad.json"));
    out << "{\"grid\":{\"dim\":1,\"n\":32,\"dx\":0.25,\"x0\":-4.0},\"samples\":[[0,0]]}";
    out.close();
    CHECK_THROWS(io::read_signal(tmp.file("bad.json")));  // sample count mismatch
}
