// Acceptance gate: seven property-based criteria, one pass/fail line each.
// Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <vector>

#include "cpmfrob/canonicalize.hpp"
#include "cpmfrob/io.hpp"
#include "test_util.hpp"

using namespace cpmfrob;
using namespace testutil;

namespace {

int g_failures = 0;

void report(int idx, const char* name, bool ok, const std::string& detail = "") {
    std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", idx, name,
                detail.empty() ? "" : " — ", detail.c_str());
    if (!ok) ++g_failures;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Mat fourier_unitary(std::size_t d) {
    Mat u(d, d);
    const double s = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const double ang =
                2.0 * std::numbers::pi * static_cast<double>(i * j) / static_cast<double>(d);
            u(i, j) = s * cplx(std::cos(ang), std::sin(ang));
        }
    return u;
}

std::vector<FrobeniusAlgebra> corpus() {
    std::vector<FrobeniusAlgebra> algs;
    for (std::size_t d = 1; d <= 4; ++d) algs.push_back(spider(d));
    algs.push_back(matrix_algebra(2));
    algs.push_back(matrix_algebra(3));
    for (std::size_t n = 2; n <= 4; ++n) algs.push_back(cyclic_group_algebra(n));
    algs.push_back(direct_sum(spider(2), matrix_algebra(2)));
    return algs;
}

// 1. Theorem 1 recovery on 200 randomized CP isometries.
void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<std::size_t> in_d(1, 4), k_d(1, 3);
    int bad = 0;
    std::string why;
    for (int rep = 0; rep < 200 && bad == 0; ++rep) {
        const std::size_t in = in_d(rng);
        const std::size_t k = k_d(rng);
        const std::size_t out_max = std::min<std::size_t>(12, 3 * k * in);
        std::uniform_int_distribution<std::size_t> out_d(k * in, out_max);
        const std::size_t out = out_d(rng);
        const auto vs = orthogonal_image_isometries(rng, in, out, k);
        const auto q = random_unit_weights(rng, k);
        std::vector<CpMap> parts;
        for (const auto& v : vs) parts.push_back(cpm_double(v));
        const CpMap phi = add(parts, q);

        IsometryDecomposition dec;
        try {
            dec = decompose_cp_isometry(phi);
        } catch (const Error& e) {
            ++bad;
            why = e.what();
            break;
        }
        double qsum = 0.0;
        for (double qi : dec.coeffs) qsum += qi * qi;
        if (std::abs(qsum - 1.0) > 1e-9) { ++bad; why = "sum q^2 off"; break; }

        const Mat id = Mat::identity(in);
        for (std::size_t i = 0; i < dec.count && !bad; ++i)
            for (std::size_t j = 0; j < dec.count; ++j) {
                const double want = (i == j) ? 1.0 : 0.0;
                if (frob_dist(dec.isometries[j].dagger() * dec.isometries[i], want * id) > 1e-8) {
                    ++bad;
                    why = "orthogonality residual";
                    break;
                }
            }
        if (bad) break;

        std::vector<CpMap> rec;
        for (const auto& v : dec.isometries) rec.push_back(cpm_double(v));
        if (choi_dist(add(rec, dec.coeffs), phi) > 1e-8) { ++bad; why = "reconstruction"; break; }

        // coefficient multiset when the planted spectrum is nondegenerate
        auto planted = q;
        std::sort(planted.begin(), planted.end(), std::greater<>());
        bool nondegenerate = true;
        for (std::size_t i = 1; i < planted.size(); ++i)
            if (planted[i - 1] * planted[i - 1] - planted[i] * planted[i] <= 1e-6)
                nondegenerate = false;
        if (nondegenerate) {
            if (dec.count != k) { ++bad; why = "component count"; break; }
            for (std::size_t i = 0; i < k; ++i)
                if (std::abs(dec.coeffs[i] - planted[i]) > 1e-7) { ++bad; why = "coefficients"; break; }
        }
    }
    const double secs = elapsed_s(t0);
    char detail[128];
    std::snprintf(detail, sizeof detail, "200 randomized CP isometries, %.2fs%s%s", secs,
                  why.empty() ? "" : ", first failure: ", why.c_str());
    report(1, "isometry decomposition recovery", bad == 0 && secs < 10.0, detail);
}

// 2. double -> canonicalize -> re-double round trip on the generator corpus.
void criterion2() {
    const auto t0 = std::chrono::steady_clock::now();
    int bad = 0;
    std::string why;
    for (const auto& a : corpus()) {
        try {
            const CpComonoid c = double_algebra(a);
            const CanonicalizationResult res = canonicalize_comonoid(c);
            if (choi_dist(cpm_double(res.algebra.delta), c.delta) > 1e-8 ||
                choi_dist(cpm_double(res.algebra.epsilon), c.counit) > 1e-8 ||
                check_fhilb_algebra(res.algebra).max_residual() > 1e-8) {
                ++bad;
                why = "dim " + std::to_string(a.dim) + " residuals";
            }
        } catch (const Error& e) {
            ++bad;
            why = e.what();
        }
    }
    const double secs = elapsed_s(t0);
    char detail[160];
    std::snprintf(detail, sizeof detail, "10 generator instances up to dim 9, %.2fs%s%s", secs,
                  why.empty() ? "" : ", first failure: ", why.c_str());
    report(2, "canonicalization round trip", bad == 0 && secs < 30.0, detail);
}

// 3. snake trace equals dim^2 for every doubled generator.
void criterion3() {
    int bad = 0;
    double worst = 0.0;
    for (const auto& a : corpus()) {
        const AxiomReport rep = check_cp_comonoid(double_algebra(a));
        const double d2 = static_cast<double>(a.dim * a.dim);
        const double err = std::abs(rep.snake_trace - d2);
        worst = std::max(worst, err / d2);
        if (err > 1e-6 * d2) ++bad;
    }
    char detail[96];
    std::snprintf(detail, sizeof detail, "worst relative deviation %.2e", worst);
    report(3, "snake-trace identity", bad == 0, detail);
}

// 4. phase measurement and normalization on 50 randomly perturbed structures.
void criterion4() {
    std::mt19937_64 rng(104);
    std::uniform_real_distribution<double> u(-std::numbers::pi + 1e-6, std::numbers::pi);
    const auto algs = corpus();
    int bad = 0;
    std::string why;
    for (int rep = 0; rep < 50; ++rep) {
        const FrobeniusAlgebra& a = algs[rep % algs.size()];
        const double theta = u(rng);
        const auto [delta, eps] = perturb_phases(a, std::vector<double>{0.0, theta});
        try {
            const PhaseReport pr = measure_phases(delta, eps);
            if (std::abs(pr.lambda - theta) > 1e-9) { ++bad; why = "lambda off"; break; }
            const FrobeniusAlgebra fixed = normalize_phases(delta, eps);
            if (check_fhilb_algebra(fixed).max_residual() > 1e-8) { ++bad; why = "residuals"; break; }
            if (choi_dist(cpm_double(fixed.epsilon), cpm_double(eps)) > 1e-10) {
                ++bad;
                why = "doubled counit changed";
                break;
            }
        } catch (const Error& e) {
            ++bad;
            why = e.what();
            break;
        }
    }
    report(4, "phase normalization", bad == 0,
           bad ? why : "50 planted phases recovered within 1e-9");
}

// 5. adversarial rejection: MUB spider mixtures and non-isometric channels.
void criterion5() {
    std::mt19937_64 rng(105);
    std::uniform_real_distribution<double> wdist(0.2, 0.8);
    int accepted = 0;
    double min_resid = 1e300;
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t d = 2 + rep % 2;  // dims 2 and 3
        const CpComonoid c1 = double_algebra(rotated_spider(random_unitary(rng, d)));
        const CpComonoid c2 = double_algebra(
            rotated_spider(random_unitary(rng, d) * fourier_unitary(d)));
        const double w = wdist(rng);
        const std::vector<CpComonoid> cs{c1, c2};
        const std::vector<double> ws{w, 1.0 - w};
        const CpComonoid mixed = mix_comonoids(cs, ws);
        try {
            canonicalize_comonoid(mixed);
            ++accepted;
        } catch (const HypothesesFailed& e) {
            min_resid = std::min(min_resid, e.report.max_residual());
        } catch (const Error&) {
            ++accepted;  // wrong verdict counts as a failure
        }
    }
    int wrong_verdict = 0;
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t d = 2 + rep % 3;
        const CpMap ch = random_channel(rng, d, 2 + rep % 2);
        try {
            decompose_cp_isometry(ch);
            ++accepted;
        } catch (const NotIsometry& e) {
            min_resid = std::min(min_resid, e.choi_distance);
        } catch (const Error&) {
            ++wrong_verdict;
        }
    }
    char detail[128];
    std::snprintf(detail, sizeof detail,
                  "%d false acceptances, %d wrong verdicts, min named residual %.2e", accepted,
                  wrong_verdict, min_resid);
    report(5, "adversarial rejection", accepted == 0 && wrong_verdict == 0 && min_resid > 1e-3,
           detail);
}

// 6. purity-principle witness recovery on 100 random (g, v) pairs.
void criterion6() {
    std::mt19937_64 rng(106);
    std::uniform_int_distribution<std::size_t> dim_d(1, 4), env_d(1, 4);
    int bad = 0;
    double worst = 1.0;
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t in = dim_d(rng), out = dim_d(rng), env = env_d(rng);
        const Mat g = random_mat(rng, out, in);
        if (g.frob_norm() < 1e-6) continue;
        Mat v = random_mat(rng, env, 1);
        double nrm = 0.0;
        for (std::size_t i = 0; i < env; ++i) nrm += std::norm(v(i, 0));
        v *= 1.0 / std::sqrt(nrm);
        try {
            const Mat rec = purity_witness(kron(g, v), env, cpm_double(g));
            cplx overlap = 0.0;
            for (std::size_t i = 0; i < env; ++i) overlap += std::conj(rec(i, 0)) * v(i, 0);
            worst = std::min(worst, std::abs(overlap));
            if (std::abs(overlap) < 1.0 - 1e-8) ++bad;
        } catch (const Error&) {
            ++bad;
        }
    }
    char detail[96];
    std::snprintf(detail, sizeof detail, "worst |<v_rec, v>| = %.12f over 100 runs", worst);
    report(6, "purity-principle witness", bad == 0, detail);
}

// 7. kernel oracles: eigensolver, Choi round trips, serialization.
void criterion7() {
    std::mt19937_64 rng(107);
    std::uniform_int_distribution<std::size_t> dim_d(1, 64);
    int bad_eig = 0;
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t d = dim_d(rng);
        const Mat h = random_hermitian(rng, d);
        const auto r = herm_eig(h);
        Mat lam(d, d);
        for (std::size_t i = 0; i < d; ++i) lam(i, i) = r.eigenvalues[i];
        const Mat rec = r.eigenvectors * lam * r.eigenvectors.dagger();
        if (frob_dist(rec, h) > 1e-9 * (1.0 + h.frob_norm())) ++bad_eig;
    }

    std::uniform_int_distribution<std::size_t> small(1, 4);
    int bad_choi = 0;
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t in = small(rng), out = small(rng);
        const CpMap phi = random_cp_map(rng, in, out, 1 + rep % 3);
        const CpMap back = from_choi(choi(phi), in, out);
        if (choi_dist(phi, back) > 1e-10 * (1.0 + choi(phi).frob_norm())) ++bad_choi;
    }

    int bad_ser = 0;
    for (const auto& a : corpus()) {
        io::StructureFile alg{a, {}};
        const std::string t1 = io::emit_structure(alg);
        if (io::emit_structure(io::parse_structure(t1)) != t1) ++bad_ser;
        io::StructureFile com{double_algebra(a), {}};
        const std::string t2 = io::emit_structure(com);
        if (io::emit_structure(io::parse_structure(t2)) != t2) ++bad_ser;
    }
    char detail[128];
    std::snprintf(detail, sizeof detail,
                  "eig failures %d/100, choi failures %d/100, serialization failures %d", bad_eig,
                  bad_choi, bad_ser);
    report(7, "kernel oracles", bad_eig == 0 && bad_choi == 0 && bad_ser == 0, detail);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all 7 criteria passed\n");
    return 0;
}
