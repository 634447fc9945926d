// Command-line front end: evaluate the kernels and the Hecke form, locate
// tau-zeros, sample the zero atlas, solve the spectral inverse problem,
// verify monodromy, and classify tori. JSON on stdout unless a CSV/SVG
// path is given. Exit codes: 0 ok, 2 inconclusive verdict, 1 error.

#include <CLI11.hpp>
#include <json.hpp>

#include "hecke/classifier.hpp"

#include <fstream>
#include <iostream>

using namespace hecke;
using nlohmann::json;

namespace {

json jc(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

cplx parse_pair(const std::string& text, const std::string& what) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError(what, "expected RE,IM");
    return cplx(std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1)));
}

json family_json(const FamilyVerdict& f) {
    json out{{"exists", f.exists},
             {"inconclusive", f.inconclusive},
             {"boundary", f.boundary},
             {"tau_domain", jc(f.tau_domain)},
             {"tau_reduced", jc(f.tau_reduced)},
             {"min_abs", f.min_abs}};
    if (f.exists) {
        out["witness_reduced"] = json{{"r", f.witness_r}, {"s", f.witness_s}};
        out["witness"] = json{{"r", f.original_r}, {"s", f.original_s}};
        out["residual"] = f.residual;
    }
    return out;
}

json report_json(const ClassificationReport& rep) {
    return json{{"tau", jc(rep.tau)},      {"k", rep.k},
                {"even", family_json(rep.even)}, {"noneven", family_json(rep.noneven)},
                {"inconclusive", rep.inconclusive()}, {"note", rep.note}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hecke-form zero atlas and torus classifier"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "key = value file for numeric tolerances");

    // ell eval
    auto* ell = app.add_subcommand("ell", "Weierstrass kernel evaluation");
    ell->require_subcommand(1);
    auto* ell_eval = ell->add_subcommand("eval");
    std::string ell_tau, ell_z, ell_fn;
    ell_eval->add_option("--tau", ell_tau, "modulus RE,IM")->required();
    ell_eval->add_option("--z", ell_z, "point RE,IM")->required();
    ell_eval->add_option("--fn", ell_fn, "wp|wpp|zeta|sigma")->required();

    // hecke eval / hecke zero
    auto* hk = app.add_subcommand("hecke", "Hecke form Z(r,s,tau)");
    hk->require_subcommand(1);
    auto* hk_eval = hk->add_subcommand("eval");
    double hk_r = 0, hk_s = 0;
    std::string hk_tau;
    int hk_premod = 0, hk_n000 = 0;
    hk_eval->add_option("--r", hk_r)->required();
    hk_eval->add_option("--s", hk_s)->required();
    hk_eval->add_option("--tau", hk_tau)->required();
    hk_eval->add_option("--premodular", hk_premod, "companion form index k in {1,2,3}");
    hk_eval->add_option("--n000", hk_n000, "Z-polynomial order n in {1,2,3}");
    auto* hk_zero = hk->add_subcommand("zero");
    double hz_r = 0, hz_s = 0;
    std::string hz_domain = "f0";
    hk_zero->add_option("--r", hz_r)->required();
    hk_zero->add_option("--s", hz_s)->required();
    hk_zero->add_option("--domain", hz_domain, "search domain (f0)");

    // atlas sample / atlas curve
    auto* atlas = app.add_subcommand("atlas", "zero atlas sampling");
    atlas->require_subcommand(1);
    auto* at_sample = atlas->add_subcommand("sample");
    int at_grid = 24;
    std::string at_out, at_svg;
    at_sample->add_option("--grid", at_grid, "grid size N")->required();
    at_sample->add_option("--out", at_out, "CSV path")->required();
    at_sample->add_option("--svg", at_svg, "SVG path");
    auto* at_curve = atlas->add_subcommand("curve");
    int at_i = 1, at_samples = 40;
    at_curve->add_option("--i", at_i, "curve index 1|2|3")->required();
    at_curve->add_option("--samples", at_samples, "scan lines");

    // spectral solve
    auto* sp = app.add_subcommand("spectral", "spectral curve inverse problem");
    sp->require_subcommand(1);
    auto* sp_solve = sp->add_subcommand("solve");
    double sp_r = 0, sp_s = 0;
    std::string sp_tau;
    int sp_k = 1;
    sp_solve->add_option("--r", sp_r)->required();
    sp_solve->add_option("--s", sp_s)->required();
    sp_solve->add_option("--tau", sp_tau)->required();
    sp_solve->add_option("--k", sp_k)->required();

    // monodromy verify
    auto* mo = app.add_subcommand("monodromy", "direct monodromy integration");
    mo->require_subcommand(1);
    auto* mo_verify = mo->add_subcommand("verify");
    std::string mo_T, mo_tau;
    int mo_k = 1;
    mo_verify->add_option("--T", mo_T, "spectral parameter RE,IM")->required();
    mo_verify->add_option("--tau", mo_tau)->required();
    mo_verify->add_option("--k", mo_k)->required();

    // classify
    auto* cl = app.add_subcommand("classify", "solution-family classification");
    std::string cl_tau, cl_batch;
    int cl_k = 1;
    cl->add_option("--tau", cl_tau);
    cl->add_option("--k", cl_k);
    cl->add_option("--batch", cl_batch, "file with lines tau_re,tau_im[,k]");

    // obstruction
    auto* ob = app.add_subcommand("obstruction", "rectangle weight conditions");
    std::string ob_m;
    ob->add_option("--m", ob_m, "M0,M1,M2,M3")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        NumericConfig cfg;
        if (!config_path.empty()) cfg = load_config(config_path);

        if (ell_eval->parsed()) {
            LatticeContext ctx{Tau(parse_pair(ell_tau, "--tau")), cfg};
            const cplx z = parse_pair(ell_z, "--z");
            cplx value;
            if (ell_fn == "wp") value = ctx.wp(z);
            else if (ell_fn == "wpp") value = ctx.wp_prime(z);
            else if (ell_fn == "zeta") value = ctx.zeta_w(z);
            else if (ell_fn == "sigma") value = ctx.sigma_w(z);
            else throw std::runtime_error("unknown --fn " + ell_fn);
            std::cout << json{{"fn", ell_fn}, {"tau", jc(ctx.tau)}, {"z", jc(z)},
                              {"value", jc(value)},
                              {"precision_warning", ctx.precision_warning}}
                      << "\n";
        } else if (hk_eval->parsed()) {
            LatticeContext ctx{Tau(parse_pair(hk_tau, "--tau")), cfg};
            json out{{"r", hk_r}, {"s", hk_s}, {"tau", jc(ctx.tau)}};
            if (hk_premod && hk_n000)
                throw std::runtime_error("--premodular and --n000 are exclusive");
            if (hk_premod) {
                out["form"] = "companion_m" + std::to_string(hk_premod);
                out["value"] = jc(premodular_Zmk(cplx(hk_r), cplx(hk_s), ctx, KIndex(hk_premod)));
            } else if (hk_n000) {
                out["form"] = "Z_n000_" + std::to_string(hk_n000);
                out["value"] = jc(premodular_Zn000(cplx(hk_r), cplx(hk_s), ctx, hk_n000));
            } else {
                out["form"] = "Z";
                out["value"] = jc(hecke_Z(hk_r, hk_s, ctx));
            }
            std::cout << out << "\n";
        } else if (hk_zero->parsed()) {
            if (hz_domain != "f0") throw std::runtime_error("only --domain f0 is supported");
            TauZeroSearch res = find_tau_zero(hz_r, hz_s, cfg);
            json out{{"r", hz_r}, {"s", hz_s}, {"domain", hz_domain}};
            if (res.zero) {
                out["found"] = true;
                out["tau"] = jc(res.zero->tau_star);
                out["residual"] = res.zero->residual;
                out["newton_iterations"] = res.zero->newton_iterations;
                out["derivative"] = jc(res.zero->derivative_at_zero);
            } else {
                out["found"] = false;
                out["grid_min"] = res.none.grid_min;
                out["inconclusive"] = res.none.inconclusive;
            }
            std::cout << out << "\n";
            if (!res.zero && res.none.inconclusive) return 2;
        } else if (at_sample->parsed()) {
            auto samples = sample_lambda_grid(at_grid, cfg);
            write_atlas_csv(samples, at_out);
            json out{{"grid", at_grid}, {"rows", samples.size()}, {"csv", at_out}};
            if (!at_svg.empty()) {
                std::vector<std::vector<cplx>> curves;
                for (int i = 1; i <= 3; ++i)
                    curves.push_back(trace_degenerate_curve(i, 60, cfg));
                write_atlas_svg(samples, curves, at_svg);
                out["svg"] = at_svg;
            }
            std::cout << out << "\n";
        } else if (at_curve->parsed()) {
            std::vector<std::string> excluded;
            auto pts = trace_degenerate_curve(at_i, at_samples, cfg, &excluded);
            json arr = json::array();
            for (const cplx& t : pts) arr.push_back(jc(t));
            json out{{"i", at_i}, {"points", arr}, {"excluded", excluded}};
            if (at_i == 1) out["b0"] = compute_b0(cfg);
            std::cout << out << "\n";
        } else if (sp_solve->parsed()) {
            LatticeContext ctx{Tau(parse_pair(sp_tau, "--tau")), cfg};
            const KIndex k(sp_k);
            SolveDiagnostics diag;
            auto T = solve_T_from_rs(cplx(sp_r), cplx(sp_s), ctx, k, &diag);
            json out{{"r", sp_r}, {"s", sp_s}, {"tau", jc(ctx.tau)}, {"k", sp_k},
                     {"shifted_Z_abs", diag.shifted_Z_abs}, {"solvable", diag.solvable}};
            if (T) {
                out["T"] = jc(*T);
                const SpectralPoint P = spectral_point(*T, ctx, k);
                out["C"] = jc(P.C);
                out["Q"] = jc(spectral_Q_closed(*T, ctx, k));
                MonodromyClass mc = classify_point(P, ctx, k);
                out["completely_reducible"] = mc.tag == MonodromyClass::CompletelyReducible;
                if (mc.tag == MonodromyClass::CompletelyReducible) {
                    MonodromyData md = monodromy_data_from_point(P, ctx, k);
                    out["sigma"] = jc(md.sigma);
                    out["recovered"] = json{{"r", jc(md.r)}, {"s", jc(md.s)}};
                    BakerAkhiezerData ba = zeros_a1a2(P, ctx, k);
                    out["a1"] = jc(ba.a1);
                    out["a2"] = jc(ba.a2);
                    out["c"] = jc(ba.c);
                }
            }
            std::cout << out << "\n";
        } else if (mo_verify->parsed()) {
            LatticeContext ctx{Tau(parse_pair(mo_tau, "--tau")), cfg};
            const KIndex k(mo_k);
            const LameParams p = LameParams::constrain(k, parse_pair(mo_T, "--T"), ctx);
            CycleMonodromy m;
            const bool unitary = verify_unitary(p, ctx, &m);
            std::cout << json{{"T", jc(p.T)},
                              {"E", jc(p.E)},
                              {"tau", jc(ctx.tau)},
                              {"k", mo_k},
                              {"t1", jc(m.t1)},
                              {"t2", jc(m.t2)},
                              {"commutator", m.commutator_norm},
                              {"det_error", m.det_error},
                              {"unitary", unitary}}
                      << "\n";
        } else if (cl->parsed()) {
            bool any_inconclusive = false;
            if (!cl_batch.empty()) {
                std::ifstream in(cl_batch);
                if (!in) throw std::runtime_error("cannot open " + cl_batch);
                json arr = json::array();
                std::string line;
                while (std::getline(in, line)) {
                    if (line.empty() || line[0] == '#') continue;
                    double re, im;
                    int k = cl_k;
                    std::replace(line.begin(), line.end(), ',', ' ');
                    std::istringstream ls(line);
                    ls >> re >> im;
                    if (!(ls >> k)) k = cl_k;
                    auto rep = classify_torus(cplx(re, im), k, cfg);
                    any_inconclusive |= rep.inconclusive();
                    arr.push_back(report_json(rep));
                }
                std::cout << arr << "\n";
            } else {
                if (cl_tau.empty()) throw std::runtime_error("classify needs --tau or --batch");
                auto rep = classify_torus(parse_pair(cl_tau, "--tau"), cl_k, cfg);
                any_inconclusive = rep.inconclusive();
                std::cout << report_json(rep) << "\n";
            }
            if (any_inconclusive) return 2;
        } else if (ob->parsed()) {
            std::array<long, 4> m{};
            std::string text = ob_m;
            std::replace(text.begin(), text.end(), ',', ' ');
            std::istringstream ms(text);
            if (!(ms >> m[0] >> m[1] >> m[2] >> m[3]))
                throw std::runtime_error("--m expects M0,M1,M2,M3");
            auto v = rectangle_obstruction(m);
            std::cout << json{{"m", m},
                              {"holds_first", v.holds_first},
                              {"holds_second", v.holds_second},
                              {"holds_either", v.holds_first || v.holds_second}}
                      << "\n";
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
