#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cpmfrob/io.hpp"
#include "json.hpp"

using namespace cpmfrob;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;  // mathematical rejection
constexpr int kExitUsage = 2;     // input / usage error

double default_tol() {
    if (const char* env = std::getenv("CPMFROB_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && v > 0.0) return v;
    }
    return 1e-8;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

json residuals_to_json(const AxiomReport& rep) {
    json r;
    for (const auto& [name, v] : rep.residuals) r[name] = v;
    return r;
}

void print_residuals_text(const AxiomReport& rep, double tol) {
    for (const auto& [name, v] : rep.residuals)
        std::printf("  %-12s %.2e  %s\n", name.c_str(), v, v <= tol ? "ok" : "FAIL");
}

json real_mat_to_json(const Mat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).real());
        rows.push_back(std::move(row));
    }
    return rows;
}

void emit_report(const std::string& path, const json& j) {
    if (path.empty()) return;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open for writing: " + path);
    f << j.dump(2) << "\n";
}

// "spider:3" / "matrix:2" / "cyclic:4"
FrobeniusAlgebra make_algebra(const std::string& kind, std::size_t param) {
    if (kind == "spider") return spider(param);
    if (kind == "matrix") return matrix_algebra(param);
    if (kind == "cyclic") return cyclic_group_algebra(param);
    throw ParseError("unknown generator kind: " + kind);
}

FrobeniusAlgebra parse_summand(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw ParseError("expected kind:dim, got " + spec);
    const std::string kind = spec.substr(0, colon);
    const int param = std::stoi(spec.substr(colon + 1));
    if (param < 1) throw ParseError("generator parameter must be >= 1");
    return make_algebra(kind, static_cast<std::size_t>(param));
}

Mat fourier_unitary(std::size_t d) {
    Mat u(d, d);
    const double s = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const double ang = 2.0 * std::numbers::pi * static_cast<double>(i * j) / static_cast<double>(d);
            u(i, j) = s * cplx(std::cos(ang), std::sin(ang));
        }
    return u;
}

struct GenerateOpts {
    std::string kind;
    std::vector<std::string> params;
    std::string out;
    bool make_double = false;
    bool mix = false;
    double perturb = 0.0;
    bool has_perturb = false;
    long long seed = 0;
};

int cmd_generate(const GenerateOpts& o) {
    FrobeniusAlgebra alg;
    if (o.kind == "direct_sum") {
        if (o.params.size() != 2) throw ParseError("direct_sum needs two kind:dim arguments");
        alg = direct_sum(parse_summand(o.params[0]), parse_summand(o.params[1]));
    } else {
        if (o.params.size() != 1) throw ParseError("generator needs one dimension argument");
        const int param = std::stoi(o.params[0]);
        if (param < 1) throw ParseError("generator parameter must be >= 1");
        alg = make_algebra(o.kind, static_cast<std::size_t>(param));
    }

    io::StructureFile s;
    s.metadata["generator"] = o.kind;
    s.metadata["seed"] = std::to_string(o.seed);

    if (o.mix) {
        if (!o.make_double) throw ParseError("--mix requires --double");
        const CpComonoid c1 = double_algebra(alg);
        const CpComonoid c2 = double_algebra(rotated_spider(fourier_unitary(alg.dim)));
        const std::vector<CpComonoid> cs{c1, c2};
        const std::vector<double> w{0.5, 0.5};
        s.payload = mix_comonoids(cs, w);
        s.metadata["mixture"] = "0.5 standard + 0.5 fourier-rotated spider";
    } else if (o.has_perturb) {
        auto [delta, eps] = perturb_phases(alg, std::vector<double>{0.0, o.perturb});
        if (o.make_double)
            s.payload = CpComonoid{alg.dim, cpm_double(delta), cpm_double(eps)};
        else
            s.payload = FrobeniusAlgebra{alg.dim, std::move(delta), std::move(eps), false};
        s.metadata["perturb_phases"] = std::to_string(o.perturb);
    } else if (o.make_double) {
        s.payload = double_algebra(alg);
    } else {
        s.payload = alg;
    }
    io::save_structure(o.out, s);
    return kExitOk;
}

int cmd_check(const std::string& input, double tol, bool as_json, bool no_timing,
              const std::string& report_path) {
    Timer timer;
    const io::StructureFile s = io::load_structure(input);
    json out;
    bool ok = true;
    if (const auto* alg = std::get_if<FrobeniusAlgebra>(&s.payload)) {
        const AxiomReport rep = check_fhilb_algebra(*alg, tol);
        ok = rep.all_within(tol);
        out = {{"kind", "fhilb_algebra"},   {"dim", alg->dim},
               {"tol", tol},                {"residuals", residuals_to_json(rep)},
               {"snake_trace", rep.snake_trace},
               {"expected_snake_trace", static_cast<double>(alg->dim * alg->dim)},
               {"verdict", ok ? "ok" : "violations"}};
        if (!as_json) {
            std::printf("fhilb_algebra dim %zu (tol %.1e)\n", alg->dim, tol);
            print_residuals_text(rep, tol);
            std::printf("  snake_trace  %.6f (expect %zu)\n", rep.snake_trace, alg->dim * alg->dim);
        }
    } else if (const auto* com = std::get_if<CpComonoid>(&s.payload)) {
        const AxiomReport rep = check_cp_comonoid(*com, tol);
        ok = rep.all_within(tol);
        out = {{"kind", "cp_comonoid"},     {"dim", com->dim},
               {"tol", tol},                {"residuals", residuals_to_json(rep)},
               {"snake_trace", rep.snake_trace},
               {"expected_snake_trace", static_cast<double>(com->dim * com->dim)},
               {"verdict", ok ? "ok" : "violations"}};
        if (rep.lambda_matrix) out["lambda_matrix"] = real_mat_to_json(*rep.lambda_matrix);
        if (rep.rho_matrix) out["rho_matrix"] = real_mat_to_json(*rep.rho_matrix);
        if (!as_json) {
            std::printf("cp_comonoid dim %zu (tol %.1e)\n", com->dim, tol);
            print_residuals_text(rep, tol);
            std::printf("  snake_trace  %.6f (expect %zu)\n", rep.snake_trace, com->dim * com->dim);
        }
    } else {
        // cp_map: complete positivity is structural (Gram spectrum >= 0);
        // report the purity diagnostics instead.
        const auto& m = std::get<CpMap>(s.payload);
        const PurityVerdict pv = is_pure(m, tol);
        out = {{"kind", "cp_map"},
               {"dims", json::array({m.in_dim(), m.out_dim()})},
               {"tol", tol},
               {"kraus_count", m.kraus().size()},
               {"pure", pv.is_pure},
               {"rank1_residual", pv.residual},
               {"verdict", "ok"}};
        if (!as_json)
            std::printf("cp_map %zu -> %zu, %zu kraus, pure=%s (rank-1 residual %.2e)\n",
                        m.in_dim(), m.out_dim(), m.kraus().size(), pv.is_pure ? "yes" : "no",
                        pv.residual);
    }
    if (!no_timing) out["timing_ms"] = timer.ms();
    if (as_json) std::printf("%s\n", out.dump(2).c_str());
    emit_report(report_path, out);
    return ok ? kExitOk : kExitRejected;
}

int cmd_canonicalize(const std::string& input, double tol, bool as_json, bool no_timing,
                     const std::string& out_path, const std::string& report_path) {
    Timer timer;
    const io::StructureFile s = io::load_structure(input);
    const auto* com = std::get_if<CpComonoid>(&s.payload);
    if (!com) throw ParseError("canonicalize expects a cp_comonoid file");

    json rep;
    rep["tol"] = tol;
    int code = kExitOk;
    try {
        const CanonicalizationResult res = canonicalize_comonoid(*com, tol);
        const AxiomReport verify = verify_canonical(res, *com);
        rep["verdict"] = "canonical";
        rep["lambda_used"] = res.lambda_used;
        rep["residual_delta"] = res.residual_delta;
        rep["residual_epsilon"] = res.residual_epsilon;
        rep["input_residuals"] = residuals_to_json(res.report);
        rep["input_snake_trace"] = res.report.snake_trace;
        rep["algebra_residuals"] = residuals_to_json(verify);
        if (!out_path.empty()) {
            io::StructureFile outfile;
            outfile.payload = res.algebra;
            outfile.metadata["source"] = input;
            outfile.metadata["lambda_used"] = std::to_string(res.lambda_used);
            io::save_structure(out_path, outfile);
        }
        if (!as_json) {
            std::printf("canonical: dim %zu, lambda %.6f\n", com->dim, res.lambda_used);
            std::printf("  residual_delta    %.2e\n", res.residual_delta);
            std::printf("  residual_epsilon  %.2e\n", res.residual_epsilon);
            print_residuals_text(verify, tol);
        }
    } catch (const HypothesesFailed& e) {
        rep["verdict"] = "hypotheses_failed";
        rep["input_residuals"] = residuals_to_json(e.report);
        if (!as_json) {
            std::printf("hypotheses_failed\n");
            print_residuals_text(e.report, tol);
        }
        code = kExitRejected;
    } catch (const NotIsometry& e) {
        rep["verdict"] = "not_isometry";
        rep["choi_distance"] = e.choi_distance;
        if (!as_json) std::printf("not_isometry (choi distance %.2e)\n", e.choi_distance);
        code = kExitRejected;
    } catch (const CounitNotPure&) {
        rep["verdict"] = "counit_not_pure";
        if (!as_json) std::printf("counit_not_pure\n");
        code = kExitRejected;
    } catch (const NotFrobenius& e) {
        rep["verdict"] = "not_frobenius";
        rep["detail"] = e.what();
        if (!as_json) std::printf("not_frobenius: %s\n", e.what());
        code = kExitRejected;
    }
    if (!no_timing) rep["timing_ms"] = timer.ms();
    if (as_json) std::printf("%s\n", rep.dump(2).c_str());
    emit_report(report_path, rep);
    return code;
}

int cmd_decompose(const std::string& input, double tol, bool as_json, bool no_timing,
                  const std::string& report_path) {
    Timer timer;
    const io::StructureFile s = io::load_structure(input);
    const auto* m = std::get_if<CpMap>(&s.payload);
    if (!m) throw ParseError("decompose expects a cp_map file");

    json rep;
    rep["tol"] = tol;
    int code = kExitOk;
    try {
        const IsometryDecomposition dec = decompose_cp_isometry(*m, tol);
        const std::size_t n = dec.count;
        Mat ortho(n, n);
        const Mat id = Mat::identity(m->in_dim());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Mat expect = id;
                expect *= (i == j) ? 1.0 : 0.0;
                ortho(i, j) = frob_dist(dec.isometries[j].dagger() * dec.isometries[i], expect);
            }
        std::vector<CpMap> parts;
        for (const auto& v : dec.isometries) parts.push_back(cpm_double(v));
        const double recon =
            n ? choi_dist(add(parts, dec.coeffs), *m) : choi_dist(CpMap::zero(m->in_dim(), m->out_dim()), *m);

        rep["verdict"] = "decomposed";
        rep["n"] = n;
        rep["coeffs"] = dec.coeffs;
        rep["orthogonality_residuals"] = real_mat_to_json(ortho);
        rep["reconstruction_residual"] = recon;
        if (!as_json) {
            std::printf("decomposed into %zu pure isometries\n", n);
            for (std::size_t i = 0; i < n; ++i) std::printf("  q_%zu = %.12f\n", i, dec.coeffs[i]);
            double worst = 0.0;
            for (std::size_t i = 0; i < ortho.size(); ++i)
                worst = std::max(worst, ortho.data()[i].real());
            std::printf("  max orthogonality residual  %.2e\n", worst);
            std::printf("  reconstruction residual     %.2e\n", recon);
        }
    } catch (const NotIsometry& e) {
        rep["verdict"] = "not_isometry";
        rep["choi_distance"] = e.choi_distance;
        if (!as_json) std::printf("not_isometry (choi distance to identity channel %.2e)\n",
                                  e.choi_distance);
        code = kExitRejected;
    }
    if (!no_timing) rep["timing_ms"] = timer.ms();
    if (as_json) std::printf("%s\n", rep.dump(2).c_str());
    emit_report(report_path, rep);
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CP maps, doubling, and canonicalization of CPM Frobenius structures"};
    app.require_subcommand(1);

    double tol = default_tol();
    bool as_json = false, as_text = false, no_timing = false;
    app.add_option("--tol", tol, "tolerance for residual checks")->capture_default_str();
    app.add_flag("--json", as_json, "JSON output");
    app.add_flag("--text", as_text, "text output (default)");
    app.add_flag("--no-timing", no_timing, "omit timing from reports (golden tests)");

    GenerateOpts gen;
    auto* g = app.add_subcommand("generate", "emit a structure file");
    g->add_option("kind", gen.kind, "spider|matrix|cyclic|direct_sum")->required();
    g->add_option("params", gen.params, "dimension, or kind:dim pair(s) for direct_sum");
    g->add_flag("--double", gen.make_double, "emit the doubled cp_comonoid");
    g->add_flag("--mix", gen.mix, "mix with a fourier-rotated doubled spider (adversarial)");
    g->add_option("--perturb-phases", gen.perturb, "scale epsilon by e^{i theta}")
        ->each([&](const std::string&) { gen.has_perturb = true; });
    g->add_option("--seed", gen.seed, "recorded in metadata");
    g->add_option("--out", gen.out, "output path")->required();

    std::string in_check, in_canon, in_dec, out_path, report_path;
    auto* c = app.add_subcommand("check", "check algebra / comonoid laws");
    c->add_option("input", in_check, "structure file")->required();
    c->add_option("--report", report_path, "write JSON report to this path");

    auto* k = app.add_subcommand("canonicalize", "recover the underlying fHilb dagger-SSFA");
    k->add_option("input", in_canon, "cp_comonoid structure file")->required();
    k->add_option("--out", out_path, "write recovered fhilb_algebra here");
    k->add_option("--report", report_path, "write JSON report to this path");

    auto* d = app.add_subcommand("decompose", "decompose a CP isometry into pure isometries");
    d->add_option("input", in_dec, "cp_map structure file")->required();
    d->add_option("--report", report_path, "write JSON report to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (g->parsed()) return cmd_generate(gen);
        if (c->parsed()) return cmd_check(in_check, tol, as_json, no_timing, report_path);
        if (k->parsed())
            return cmd_canonicalize(in_canon, tol, as_json, no_timing, out_path, report_path);
        if (d->parsed()) return cmd_decompose(in_dec, tol, as_json, no_timing, report_path);
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRejected;
    }
    return kExitUsage;
}
