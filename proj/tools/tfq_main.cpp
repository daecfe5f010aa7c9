// tfq: command-line front end for the time-frequency toolkit.
//
// Subcommands: stft, wigner, cohen, constants, op, up, render, verify.
// Exit codes: 0 success, 1 computation or hypothesis failure, 2 usage error.

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tfq/constants.hpp"
#include "tfq/io.hpp"
#include "tfq/operators.hpp"
#include "tfq/parallel.hpp"
#include "tfq/transforms.hpp"
#include "tfq/uncertainty.hpp"
#include "tfq/verify.hpp"

namespace {

using nlohmann::json;
using namespace tfq;

Exponent parse_exponent(const std::string& s) {
    if (s == "inf" || s == "infinity") return Exponent::infinity();
    // accept simple fractions like 4/3
    auto slash = s.find('/');
    if (slash != std::string::npos)
        return Exponent(std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1)));
    return Exponent(std::stod(s));
}

CohenKernel parse_kernel(const std::string& spec) {
    if (spec == "dirac") return CohenKernel::dirac();
    if (spec.rfind("gausswig:", 0) == 0) return CohenKernel::gauss_wigner(std::stod(spec.substr(9)));
    return CohenKernel::sampled(io::read_tf(spec));
}

// A symbol argument is either a .tf file (header line + CSV) or a JSON
// descriptor {"grid": ..., "kind": chi_t|chi_omega|constant|gauss, ...}.
TFFunction load_symbol(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string body = ss.str();
    json j = json::parse(body, nullptr, false);
    if (j.is_discarded()) return io::read_tf(path);

    Grid g(j.at("grid").at("dim").get<int>(), j.at("grid").at("n").get<int>(),
           j.at("grid").at("dx").get<double>(), j.at("grid").at("x0").get<double>());
    const std::string kind = j.at("kind").get<std::string>();
    const int n = g.n();
    TFFunction a(g);
    if (kind == "chi_t" || kind == "chi_omega") {
        std::vector<std::pair<double, double>> iv;
        for (const auto& e : j.at("intervals")) iv.emplace_back(e[0].get<double>(), e[1].get<double>());
        MeasurableSet s = set_from_intervals(kind == "chi_t" ? g : g.dual(), iv);
        for (int xi = 0; xi < n; ++xi)
            for (int ki = 0; ki < n; ++ki)
                a.at(xi, ki) = (kind == "chi_t" ? s.mask[xi] : s.mask[ki]) ? cd(1.0, 0.0) : cd(0.0, 0.0);
    } else if (kind == "constant") {
        double val = j.value("value", 1.0);
        for (auto& z : a.v) z = cd(val, 0.0);
    } else if (kind == "gauss") {
        double lx = j.value("lambda_x", 1.0), lw = j.value("lambda_w", 1.0);
        const Grid dual = g.dual();
        for (int xi = 0; xi < n; ++xi)
            for (int ki = 0; ki < n; ++ki) {
                double x = g.x(xi), w = dual.x(ki);
                a.at(xi, ki) = std::exp(-kPi * (lx * x * x + lw * w * w));
            }
    } else {
        throw std::runtime_error("unknown symbol kind: " + kind);
    }
    return a;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    configure_threads();
    CLI::App app{"tfq: Cohen-class time-frequency representations, quantized operators, "
                 "sharp constants and uncertainty bounds"};
    app.require_subcommand(1);

    // ---- transforms ----
    std::string f_path, g_path, out_path, kernel_spec = "dirac";
    auto add_pair_opts = [&](CLI::App* c, bool kernel) {
        c->add_option("--f", f_path, "signal file (JSON)")->required();
        c->add_option("--g", g_path, "window/second signal file (defaults to --f)");
        if (kernel) c->add_option("--kernel", kernel_spec, "dirac | gausswig:lambda | sampled kernel .tf");
        c->add_option("--out", out_path, "output TF file")->required();
    };
    CLI::App* stft = app.add_subcommand("stft", "short-time Fourier transform V_g f");
    add_pair_opts(stft, false);
    CLI::App* wig = app.add_subcommand("wigner", "cross-Wigner distribution Wig(f,g)");
    add_pair_opts(wig, false);
    CLI::App* coh = app.add_subcommand("cohen", "Cohen-class representation sigma * Wig(f,g)");
    add_pair_opts(coh, true);

    // ---- constants ----
    CLI::App* cst = app.add_subcommand("constants", "sharp-constant calculus");
    CLI::App* ceval = cst->add_subcommand("eval", "evaluate a named constant as JSON");
    std::string cname, cp = "2", cq = "2", cr = "2", cs = "2";
    int cd_ = 1;
    double nphi = 1.0, npsi = 1.0, na = 1.0;
    ceval->add_option("--name", cname, "A | H | C | wigner_bounded | loc_bound | cohen_bound")->required();
    ceval->add_option("--p", cp);
    ceval->add_option("--q", cq);
    ceval->add_option("--r", cr);
    ceval->add_option("--s", cs);
    ceval->add_option("--d", cd_);
    ceval->add_option("--nphi", nphi);
    ceval->add_option("--npsi", npsi);
    ceval->add_option("--na", na);

    // ---- operators ----
    CLI::App* op = app.add_subcommand("op", "build, apply and measure operators");
    CLI::App* opb = op->add_subcommand("build", "build an operator matrix");
    std::string op_type, symbol_path, phi_path, psi_path, op_path, sig_path;
    std::string loc_path_mode = "via_weyl";
    opb->add_option("--type", op_type, "weyl | loc | cohen")->required();
    opb->add_option("--symbol", symbol_path, "symbol (.tf or JSON descriptor)")->required();
    opb->add_option("--kernel", kernel_spec, "Cohen kernel (cohen type)");
    opb->add_option("--win-phi", phi_path, "analysis window (loc type)");
    opb->add_option("--win-psi", psi_path, "synthesis window (loc type)");
    opb->add_option("--path", loc_path_mode, "loc construction path: direct | via_weyl");
    opb->add_option("--out", out_path, "output operator file")->required();
    CLI::App* opa = op->add_subcommand("apply", "apply an operator to a signal");
    opa->add_option("--op", op_path)->required();
    opa->add_option("--signal", sig_path)->required();
    opa->add_option("--out", out_path)->required();
    CLI::App* opn = op->add_subcommand("norm", "operator norm (largest singular value)");
    opn->add_option("--op", op_path)->required();

    // ---- uncertainty ----
    CLI::App* up = app.add_subcommand("up", "uncertainty-principle computations");
    CLI::App* upc = up->add_subcommand("check", "measure epsilons and verify the bound");
    std::string set_t_path, set_o_path;
    double lambda1 = 1.0, lambda2 = 1.0;
    std::string up_kernel;
    upc->add_option("--signal", sig_path)->required();
    upc->add_option("--set-t", set_t_path)->required();
    upc->add_option("--set-omega", set_o_path)->required();
    upc->add_option("--lambda1", lambda1);
    upc->add_option("--lambda2", lambda2);
    upc->add_option("--kernel", up_kernel, "switch to the Cohen pipeline");
    upc->add_option("--out", out_path)->required();
    CLI::App* upb = up->add_subcommand("bound", "optimize the improved lower bound");
    double eps_t = 0.0, eps_o = 0.0, r_max = 1e3;
    int up_d = 1;
    upb->add_option("--eps-t", eps_t)->required();
    upb->add_option("--eps-omega", eps_o)->required();
    upb->add_option("--d", up_d);
    upb->add_option("--r-max", r_max);
    CLI::App* ups = up->add_subcommand("scaling", "dilation scaling experiment");
    std::string q_str = "2", p_str = "4", lambda_list = "1,2,4,8";
    int sc_n = 512;
    double sc_dx = 1.0 / 64.0;
    ups->add_option("--q", q_str);
    ups->add_option("--p", p_str);
    ups->add_option("--lambdas", lambda_list);
    ups->add_option("--n", sc_n);
    ups->add_option("--dx", sc_dx);

    // ---- render / verify ----
    CLI::App* ren = app.add_subcommand("render", "render a TF file to 16-bit PGM");
    std::string in_path;
    ren->add_option("--in", in_path)->required();
    ren->add_option("--out", out_path)->required();
    CLI::App* ver = app.add_subcommand("verify", "run the verification suite");
    std::string suite = "all";
    ver->add_option("suite", suite, "all | constants | transforms | operators | uncertainty");
    std::string ver_json;
    ver->add_option("--json", ver_json, "also write the report as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        std::cerr << app.help() << "\n";
        return 2;
    }

    try {
        if (*stft || *wig || *coh) {
            Signal f = io::read_signal(f_path);
            Signal g = g_path.empty() ? f : io::read_signal(g_path);
            TFFunction F;
            if (*stft) F = gabor(f, g);
            else if (*wig) F = wigner(f, g);
            else F = cohen_rep(parse_kernel(kernel_spec), f, g);
            io::write_tf(F, out_path);
            return 0;
        }
        if (*ceval) {
            json out;
            out["name"] = cname;
            json args;
            double value = 0.0;
            if (cname == "A") {
                args["p"] = cp;
                value = babenko(parse_exponent(cp));
            } else if (cname == "H") {
                args = {{"p", cp}, {"q", cq}, {"d", cd_}};
                value = h_const(parse_exponent(cp), parse_exponent(cq), cd_);
            } else if (cname == "C") {
                args = {{"p", cp}, {"q", cq}, {"d", cd_}};
                value = c_const(parse_exponent(cp), parse_exponent(cq), cd_);
            } else if (cname == "wigner_bounded") {
                args = {{"r", cr}, {"s", cs}, {"p", cp}};
                value = wigner_bounded(parse_exponent(cr), parse_exponent(cs), parse_exponent(cp)) ? 1.0 : 0.0;
            } else if (cname == "loc_bound") {
                args = {{"q", cq}, {"d", cd_}, {"nphi", nphi}, {"npsi", npsi}, {"na", na}};
                value = loc_norm_bound(parse_exponent(cq), cd_, nphi, npsi, na);
            } else if (cname == "cohen_bound") {
                args = {{"r", cr}, {"s", cs}, {"q", cq}, {"p", cp}, {"d", cd_}};
                value = cohen_norm_bound(parse_exponent(cr), parse_exponent(cs), parse_exponent(cq),
                                         parse_exponent(cp), cd_);
            } else {
                std::cerr << "unknown constant name: " << cname << "\n";
                return 2;
            }
            out["args"] = args;
            out["value"] = value;
            std::cout << out.dump() << "\n";
            return 0;
        }
        if (*opb) {
            TFFunction sym = load_symbol(symbol_path);
            OperatorMatrix M;
            if (op_type == "weyl") {
                M = weyl_matrix(sym);
            } else if (op_type == "loc") {
                Signal phi = io::read_signal(phi_path);
                Signal psi = psi_path.empty() ? phi : io::read_signal(psi_path);
                LocPath lp = loc_path_mode == "direct" ? LocPath::direct : LocPath::via_weyl;
                M = localization_matrix(sym, phi, psi, lp);
            } else if (op_type == "cohen") {
                M = cohen_op_matrix(sym, parse_kernel(kernel_spec));
            } else {
                std::cerr << "unknown operator type: " << op_type << "\n";
                return 2;
            }
            io::write_operator(M, out_path);
            return 0;
        }
        if (*opa) {
            OperatorMatrix M = io::read_operator(op_path);
            Signal f = io::read_signal(sig_path);
            io::write_signal(apply(M, f), out_path);
            return 0;
        }
        if (*opn) {
            OperatorMatrix M = io::read_operator(op_path);
            OperatorNorm nr = operator_norm(M);
            json out{{"norm", nr.value},
                     {"iterations", nr.iterations},
                     {"converged", nr.converged},
                     {"fallback", nr.used_fallback}};
            std::cout << out.dump() << "\n";
            return nr.converged ? 0 : 1;
        }
        if (*upc) {
            Signal f = io::read_signal(sig_path);
            MeasurableSet T = io::read_set(set_t_path);
            MeasurableSet Om = io::read_set(set_o_path);
            std::optional<CohenKernel> kern;
            if (!up_kernel.empty()) kern = parse_kernel(up_kernel);
            ConcentrationReport rep = up_check(f, T, Om, lambda1, lambda2, kern);
            io::write_report(rep, out_path);
            std::cout << io::report_to_json(rep) << "\n";
            return (rep.applicable && rep.satisfied) ? 0 : 1;
        }
        if (*upb) {
            DsOptimum opt = ds_bound_optimize(eps_t, eps_o, up_d, r_max);
            json out{{"r_star", opt.r_star},
                     {"bound", opt.bound},
                     {"boundary", opt.boundary},
                     {"classical", ds_classical_bound(eps_t, eps_o)}};
            std::cout << out.dump() << "\n";
            return 0;
        }
        if (*ups) {
            Grid g = make_grid(sc_n, sc_dx);
            ScalingFit fit = scaling_experiment(parse_exponent(q_str), parse_exponent(p_str),
                                                parse_list(lambda_list), g);
            json pts = json::array();
            for (auto& [lam, rho] : fit.points) pts.push_back(json::array({lam, rho}));
            json out{{"slope", fit.slope}, {"theory", fit.theory}, {"points", pts}};
            std::cout << out.dump() << "\n";
            return 0;
        }
        if (*ren) {
            io::write_pgm(io::read_tf(in_path), out_path);
            return 0;
        }
        if (*ver) {
            VerifyReport rep = run_verify(suite);
            std::cout << verify_report_text(rep);
            if (!ver_json.empty()) io::atomic_write(ver_json, verify_report_json(rep) + "\n");
            return rep.overall ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "tfq: " << e.what() << "\n";
        return 1;
    }
    std::cerr << app.help() << "\n";
    return 2;
}
