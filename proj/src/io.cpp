#include "tfq/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace tfq::io {

namespace {

using nlohmann::json;

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

json grid_to_json(const Grid& g) {
    return json{{"dim", g.dim()}, {"n", g.n()}, {"dx", g.dx()}, {"x0", g.x0()}};
}

Grid grid_from_json(const json& j) {
    return Grid(j.at("dim").get<int>(), j.at("n").get<int>(), j.at("dx").get<double>(),
                j.at("x0").get<double>());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path dir = target.parent_path();
    if (dir.empty()) dir = ".";
    fs::path tmp = dir / (target.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out.good()) throw std::runtime_error("short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

void write_signal(const Signal& f, const std::string& path) {
    json j;
    j["grid"] = grid_to_json(f.grid);
    json samples = json::array();
    for (const cd& z : f.v) samples.push_back(json::array({z.real(), z.imag()}));
    j["samples"] = samples;
    if (f.gen) j["generator"] = json{{"lambda", f.gen->lambda}, {"amplitude", f.gen->amplitude}};
    atomic_write(path, j.dump());
}

Signal read_signal(const std::string& path) {
    json j = json::parse(slurp(path));
    Grid g = grid_from_json(j.at("grid"));
    Signal f(g);
    const auto& samples = j.at("samples");
    if (samples.size() != g.size()) throw std::runtime_error("signal: sample count mismatch in " + path);
    for (std::size_t i = 0; i < f.v.size(); ++i)
        f.v[i] = cd(samples[i][0].get<double>(), samples[i][1].get<double>());
    if (j.contains("generator"))
        f.gen = GaussianGen{j["generator"].at("lambda").get<double>(),
                            j["generator"].at("amplitude").get<double>()};
    f.check_finite();
    return f;
}

void write_set(const MeasurableSet& s, const std::string& path) {
    json j;
    j["grid"] = grid_to_json(s.grid);
    json mask = json::array();
    for (auto m : s.mask) mask.push_back(m ? 1 : 0);
    j["mask"] = mask;
    atomic_write(path, j.dump());
}

MeasurableSet read_set(const std::string& path) {
    json j = json::parse(slurp(path));
    Grid g = grid_from_json(j.at("grid"));
    if (j.contains("intervals")) {
        std::vector<std::pair<double, double>> iv;
        for (const auto& e : j["intervals"]) iv.emplace_back(e[0].get<double>(), e[1].get<double>());
        return set_from_intervals(g, iv);
    }
    if (j.contains("boxes")) {
        std::vector<std::array<std::pair<double, double>, 2>> boxes;
        for (const auto& e : j["boxes"])
            boxes.push_back({std::make_pair(e[0][0].get<double>(), e[0][1].get<double>()),
                             std::make_pair(e[1][0].get<double>(), e[1][1].get<double>())});
        return set_from_boxes(g, boxes);
    }
    MeasurableSet s(g);
    const auto& mask = j.at("mask");
    if (mask.size() != g.size()) throw std::runtime_error("set: mask size mismatch in " + path);
    for (std::size_t i = 0; i < s.mask.size(); ++i) s.mask[i] = mask[i].get<int>() ? 1 : 0;
    return s;
}

void write_tf(const TFFunction& F, const std::string& path) {
    json hdr;
    hdr["grid"] = grid_to_json(F.grid);
    hdr["fgrid"] = grid_to_json(F.grid.dual());
    std::ostringstream out;
    out << hdr.dump() << "\n";
    const std::size_t R = F.rows(), C = F.cols();
    for (std::size_t xi = 0; xi < R; ++xi)
        for (std::size_t ki = 0; ki < C; ++ki) {
            const cd& z = F.at(xi, ki);
            out << xi << "," << ki << "," << fmt17(z.real()) << "," << fmt17(z.imag()) << "\n";
        }
    atomic_write(path, out.str());
}

TFFunction read_tf(const std::string& path) {
    std::string body = slurp(path);
    std::istringstream in(body);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("tf: empty file " + path);
    json hdr = json::parse(line);
    Grid g = grid_from_json(hdr.at("grid"));
    TFFunction F(g);
    std::size_t xi, ki;
    double re, im;
    char c;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        row >> xi >> c >> ki >> c >> re >> c >> im;
        if (!row) throw std::runtime_error("tf: malformed row in " + path);
        if (xi >= F.rows() || ki >= F.cols()) throw std::runtime_error("tf: index out of range in " + path);
        F.at(xi, ki) = cd(re, im);
    }
    return F;
}

namespace {

json provenance_to_json(const Provenance& p) {
    const char* kind = "generic";
    switch (p.kind) {
        case Provenance::Kind::generic: kind = "generic"; break;
        case Provenance::Kind::identity: kind = "identity"; break;
        case Provenance::Kind::multiplication: kind = "multiplication"; break;
        case Provenance::Kind::fourier_multiplier: kind = "fourier_multiplier"; break;
    }
    json j{{"kind", kind}, {"description", p.description}};
    if (!p.multiplier.empty()) {
        json m = json::array();
        for (const cd& z : p.multiplier) m.push_back(json::array({z.real(), z.imag()}));
        j["multiplier"] = m;
    }
    return j;
}

Provenance provenance_from_json(const json& j) {
    Provenance p;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "identity") p.kind = Provenance::Kind::identity;
    else if (kind == "multiplication") p.kind = Provenance::Kind::multiplication;
    else if (kind == "fourier_multiplier") p.kind = Provenance::Kind::fourier_multiplier;
    else p.kind = Provenance::Kind::generic;
    p.description = j.value("description", "");
    if (j.contains("multiplier"))
        for (const auto& e : j["multiplier"]) p.multiplier.emplace_back(e[0].get<double>(), e[1].get<double>());
    return p;
}

}  // namespace

void write_operator(const OperatorMatrix& M, const std::string& path) {
    json hdr;
    hdr["grid"] = grid_to_json(M.grid);
    hdr["provenance"] = provenance_to_json(M.prov);
    std::ostringstream out;
    out << hdr.dump() << "\n";
    const std::size_t N = M.dim();
    for (std::size_t t = 0; t < N; ++t)
        for (std::size_t u = 0; u < N; ++u) {
            const cd& z = M.at(t, u);
            out << t << "," << u << "," << fmt17(z.real()) << "," << fmt17(z.imag()) << "\n";
        }
    atomic_write(path, out.str());
}

OperatorMatrix read_operator(const std::string& path) {
    std::string body = slurp(path);
    std::istringstream in(body);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("operator: empty file " + path);
    json hdr = json::parse(line);
    OperatorMatrix M(grid_from_json(hdr.at("grid")));
    M.prov = provenance_from_json(hdr.at("provenance"));
    std::size_t t, u;
    double re, im;
    char c;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        row >> t >> c >> u >> c >> re >> c >> im;
        if (!row) throw std::runtime_error("operator: malformed row in " + path);
        if (t >= M.dim() || u >= M.dim()) throw std::runtime_error("operator: index out of range in " + path);
        M.at(t, u) = cd(re, im);
    }
    return M;
}

std::string report_to_json(const ConcentrationReport& rep) {
    json j;
    j["pipeline"] = rep.pipeline;
    j["eps_t"] = rep.eps_t;
    j["eps_omega"] = rep.eps_omega;
    j["measure_t"] = rep.measure_t;
    j["measure_omega"] = rep.measure_omega;
    j["product_t_omega"] = rep.product_t_omega;
    j["bound_classical"] = rep.bound_classical;
    j["bound_improved"] = rep.bound_improved;
    j["r_star"] = rep.r_star;
    if (rep.pipeline == "cohen") {
        j["s_star"] = rep.s_star;
        j["p_star"] = rep.p_star;
    }
    j["hypothesis_flags"] = json{{"eps_sum_le_1", rep.flag_eps_sum},
                                 {"f_sup_le_1", rep.flag_f_sup},
                                 {"min_opnorm_le_1", rep.flag_min_opnorm}};
    j["f1_sup"] = rep.f1_sup;
    j["f2_sup"] = rep.f2_sup;
    j["opnorm_t"] = rep.opnorm_t;
    j["opnorm_omega"] = rep.opnorm_omega;
    j["applicable"] = rep.applicable;
    j["satisfied"] = rep.satisfied;
    j["r_boundary"] = rep.boundary;
    j["search_lattice"] = json{{"r_min", rep.lattice.r_min},     {"r_max", rep.lattice.r_max},
                               {"r_points", rep.lattice.r_points}, {"p_min", rep.lattice.p_min},
                               {"p_max", rep.lattice.p_max},     {"p_points", rep.lattice.p_points}};
    return j.dump(2);
}

void write_report(const ConcentrationReport& rep, const std::string& path) {
    atomic_write(path, report_to_json(rep) + "\n");
}

void write_pgm(const TFFunction& F, const std::string& path) {
    if (F.grid.dim() != 1) throw std::invalid_argument("write_pgm: d = 1 only");
    const std::size_t n = F.rows();
    double mx = 0.0;
    for (const cd& z : F.v) mx = std::max(mx, std::abs(z));
    std::ostringstream out;
    out << "P5\n" << n << " " << n << "\n65535\n";
    for (std::size_t r = 0; r < n; ++r) {
        std::size_t ki = n - 1 - r;  // top row = highest frequency
        for (std::size_t xi = 0; xi < n; ++xi) {
            unsigned val = 0;
            if (mx > 0.0) val = static_cast<unsigned>(std::lround(65535.0 * std::abs(F.at(xi, ki)) / mx));
            out.put(static_cast<char>((val >> 8) & 0xFF));
            out.put(static_cast<char>(val & 0xFF));
        }
    }
    atomic_write(path, out.str());
}

}  // namespace tfq::io
