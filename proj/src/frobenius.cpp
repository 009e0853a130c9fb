#include "cpmfrob/frobenius.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cpmfrob {

double AxiomReport::max_residual() const {
    double m = 0.0;
    for (const auto& [name, r] : residuals) m = std::max(m, r);
    return m;
}

bool AxiomReport::all_within(double tol) const { return max_residual() <= tol; }

namespace {

void check_shapes(std::size_t d, const Mat& delta, const Mat& epsilon) {
    if (delta.rows() != d * d || delta.cols() != d) throw DimMismatch("delta must be d^2 x d");
    if (epsilon.rows() != 1 || epsilon.cols() != d) throw DimMismatch("epsilon must be 1 x d");
}

// Doubled scalar of a CP map H -> H with both wires closed (the categorical
// trace in CPM): sum_k |Tr(K_k)|^2. Invariant under Kraus remixing.
double closed_loop_scalar(const CpMap& m) {
    double s = 0.0;
    for (const auto& k : m.kraus()) s += std::norm(k.trace());
    return s;
}

}  // namespace

AxiomReport check_fhilb_algebra(const FrobeniusAlgebra& a, double /*tol*/) {
    const std::size_t d = a.dim;
    check_shapes(d, a.delta, a.epsilon);
    const Mat id = Mat::identity(d);
    const Mat& delta = a.delta;
    const Mat& eps = a.epsilon;
    const Mat deltad = delta.dagger();

    AxiomReport rep;
    rep.residuals["assoc"] = frob_dist(kron(delta, id) * delta, kron(id, delta) * delta);
    rep.residuals["left_unit"] = frob_dist(kron(eps, id) * delta, id);
    rep.residuals["right_unit"] = frob_dist(kron(id, eps) * delta, id);
    // symmetry of the induced form: Tr-form eps . delta^dagger is invariant
    // under swapping its two inputs (commutative would instead ask S delta = delta,
    // which the matrix algebras rightly fail)
    const Mat form = eps * deltad;  // 1 x d^2
    rep.residuals["symmetry"] = frob_dist(form * swap_op(d, d), form);
    rep.residuals["speciality"] = frob_dist(deltad * delta, id);
    const Mat mid = delta * deltad;
    rep.residuals["frobenius"] = std::max(frob_dist(kron(id, deltad) * kron(delta, id), mid),
                                          frob_dist(kron(deltad, id) * kron(id, delta), mid));
    const Mat cup = delta * eps.dagger();  // d^2 x 1
    const Mat cap = eps * deltad;          // 1 x d^2
    const Mat snake_l = kron(cap, id) * kron(id, cup);
    rep.residuals["snake_left"] = frob_dist(snake_l, id);
    rep.residuals["snake_right"] = frob_dist(kron(id, cap) * kron(cup, id), id);
    rep.snake_trace = std::norm(snake_l.trace());
    return rep;
}

AxiomReport check_cp_comonoid(const CpComonoid& c, double /*tol*/) {
    const std::size_t d = c.dim;
    if (c.delta.in_dim() != d || c.delta.out_dim() != d * d)
        throw DimMismatch("comonoid delta must map d -> d^2");
    if (c.counit.in_dim() != d || c.counit.out_dim() != 1)
        throw DimMismatch("comonoid counit must map d -> 1");
    const CpMap id = identity_channel(d);

    AxiomReport rep;
    rep.residuals["assoc"] =
        choi_dist(compose(tensor(c.delta, id), c.delta), compose(tensor(id, c.delta), c.delta));
    rep.residuals["left_unit"] = choi_dist(compose(tensor(c.counit, id), c.delta), id);
    rep.residuals["right_unit"] = choi_dist(compose(tensor(id, c.counit), c.delta), id);
    rep.residuals["speciality"] = choi_dist(compose(dagger(c.delta), c.delta), id);

    const CpMap cup = compose(c.delta, dagger(c.counit));  // 1 -> d^2
    const CpMap cap = compose(c.counit, dagger(c.delta));  // d^2 -> 1
    rep.residuals["symmetry"] = choi_dist(compose(cap, cpm_double(swap_op(d, d))), cap);
    const CpMap snake_l = compose(tensor(cap, id), tensor(id, cup));
    rep.residuals["snake_left"] = choi_dist(snake_l, id);
    rep.residuals["snake_right"] = choi_dist(compose(tensor(id, cap), tensor(cup, id)), id);
    rep.snake_trace = closed_loop_scalar(snake_l);

    // Per-component snake scalars: decompose delta into vec-orthogonal
    // operators B_i, normalize each to an isometry candidate V_i, and close
    // the snake built from (V_i, V_j). Expected delta_ij for a canonical
    // structure (zero-trace wires otherwise flag which component misbehaves).
    if (d > 0) {
        const std::vector<Mat> comps = minimal_kraus(c.delta);
        const std::size_t n = comps.size();
        Mat lam(n, n), rho(n, n);
        std::vector<CpMap> cups, caps;
        cups.reserve(n);
        caps.reserve(n);
        for (const auto& b : comps) {
            const double nb = b.frob_norm();
            Mat vi = b;
            if (nb > 0.0) vi *= std::sqrt(static_cast<double>(d)) / nb;
            cups.push_back(compose(cpm_double(vi), dagger(c.counit)));
            caps.push_back(compose(c.counit, dagger(cpm_double(vi))));
        }
        const double dd = static_cast<double>(d) * static_cast<double>(d);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                lam(i, j) = closed_loop_scalar(compose(tensor(caps[j], id), tensor(id, cups[i]))) / dd;
                rho(i, j) = closed_loop_scalar(compose(tensor(id, caps[j]), tensor(cups[i], id))) / dd;
            }
        rep.lambda_matrix = std::move(lam);
        rep.rho_matrix = std::move(rho);
    }
    return rep;
}

namespace {

struct Law {
    const char* name;
    Mat lhs, rhs;
};

std::vector<Law> phase_laws(const Mat& delta, const Mat& epsilon) {
    const std::size_t d = delta.cols();
    check_shapes(d, delta, epsilon);
    const Mat id = Mat::identity(d);
    const Mat deltad = delta.dagger();
    return {
        {"assoc", kron(delta, id) * delta, kron(id, delta) * delta},
        {"left_unit", kron(epsilon, id) * delta, id},
        {"right_unit", kron(id, epsilon) * delta, id},
        {"symmetry", epsilon * deltad * swap_op(d, d), epsilon * deltad},
        {"frobenius", kron(id, deltad) * kron(delta, id), delta * deltad},
    };
}

// theta = arg <RHS, LHS>, the phase minimizing ||LHS - e^{i theta} RHS||_F
double law_phase(const Law& law) {
    const cplx z = frob_inner(law.rhs, law.lhs);
    const double theta = (z == cplx{}) ? 0.0 : std::arg(z);
    Mat shifted = law.rhs;
    shifted *= std::exp(cplx(0.0, theta));
    const double residual = frob_dist(law.lhs, shifted);
    if (residual > 1e-7 * (1.0 + law.rhs.frob_norm())) throw NotProjectiveAlgebra(law.name, residual);
    return theta;
}

}  // namespace

PhaseReport measure_phases(const Mat& delta, const Mat& epsilon) {
    PhaseReport rep;
    for (const auto& law : phase_laws(delta, epsilon)) {
        const double theta = law_phase(law);
        const std::string name = law.name;
        if (name == "assoc")
            rep.alpha = theta;
        else if (name == "left_unit")
            rep.lambda = theta;
        else if (name == "right_unit")
            rep.rho = theta;
        else if (name == "symmetry")
            rep.sigma = theta;
        else
            rep.phi = theta;
    }
    return rep;
}

FrobeniusAlgebra normalize_phases(const Mat& delta, const Mat& epsilon) {
    const PhaseReport phases = measure_phases(delta, epsilon);
    Mat eps = epsilon;
    eps *= std::exp(cplx(0.0, -phases.lambda));
    FrobeniusAlgebra alg{delta.cols(), delta, std::move(eps), false};
    const AxiomReport rep = check_fhilb_algebra(alg);
    if (!rep.all_within(1e-8))
        throw NotFrobenius("left-unit phase removal did not yield an exact dagger-SSFA");
    alg.verified = true;
    return alg;
}

FrobeniusAlgebra spider(std::size_t d) {
    Mat delta(d * d, d);
    Mat eps(1, d);
    for (std::size_t i = 0; i < d; ++i) {
        delta(i * d + i, i) = 1.0;
        eps(0, i) = 1.0;
    }
    return {d, std::move(delta), std::move(eps), true};
}

FrobeniusAlgebra matrix_algebra(std::size_t n) {
    const std::size_t d = n * n;  // basis E_ij at index i*n + j
    Mat delta(d * d, d);
    Mat eps(1, d);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t col = i * n + j;
            for (std::size_t k = 0; k < n; ++k)
                delta((i * n + k) * d + (k * n + j), col) = inv_sqrt_n;
            if (i == j) eps(0, col) = std::sqrt(static_cast<double>(n));
        }
    return {d, std::move(delta), std::move(eps), true};
}

FrobeniusAlgebra cyclic_group_algebra(std::size_t n) {
    Mat delta(n * n, n);
    Mat eps(1, n);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t g = 0; g < n; ++g) {
        for (std::size_t h = 0; h < n; ++h) {
            const std::size_t hinv_g = (g + n - h) % n;
            delta(h * n + hinv_g, g) = inv_sqrt_n;
        }
    }
    eps(0, 0) = std::sqrt(static_cast<double>(n));
    return {n, std::move(delta), std::move(eps), true};
}

FrobeniusAlgebra direct_sum(const FrobeniusAlgebra& a, const FrobeniusAlgebra& b) {
    const std::size_t da = a.dim, db = b.dim, d = da + db;
    Mat delta(d * d, d);
    Mat eps(1, d);
    for (std::size_t col = 0; col < da; ++col) {
        for (std::size_t x = 0; x < da; ++x)
            for (std::size_t y = 0; y < da; ++y) delta(x * d + y, col) = a.delta(x * da + y, col);
        eps(0, col) = a.epsilon(0, col);
    }
    for (std::size_t col = 0; col < db; ++col) {
        for (std::size_t x = 0; x < db; ++x)
            for (std::size_t y = 0; y < db; ++y)
                delta((da + x) * d + (da + y), da + col) = b.delta(x * db + y, col);
        eps(0, da + col) = b.epsilon(0, col);
    }
    return {d, std::move(delta), std::move(eps), a.verified && b.verified};
}

FrobeniusAlgebra rotated_spider(const Mat& u) {
    const std::size_t d = u.rows();
    if (u.cols() != d) throw DimMismatch("rotated_spider needs a square unitary");
    const FrobeniusAlgebra s = spider(d);
    const Mat ud = u.dagger();
    return {d, kron(u, u) * s.delta * ud, s.epsilon * ud, true};
}

CpComonoid double_algebra(const FrobeniusAlgebra& a) {
    return {a.dim, cpm_double(a.delta), cpm_double(a.epsilon)};
}

std::pair<Mat, Mat> perturb_phases(const FrobeniusAlgebra& a, std::span<const double> theta) {
    Mat delta = a.delta;
    Mat eps = a.epsilon;
    if (!theta.empty()) delta *= std::exp(cplx(0.0, theta[0]));
    if (theta.size() > 1) eps *= std::exp(cplx(0.0, theta[1]));
    return {std::move(delta), std::move(eps)};
}

CpComonoid mix_comonoids(std::span<const CpComonoid> cs, std::span<const double> weights) {
    if (cs.empty() || cs.size() != weights.size()) throw DimMismatch("mix: size mismatch");
    const std::size_t d = cs[0].dim;
    std::vector<CpMap> deltas, counits;
    for (const auto& c : cs) {
        if (c.dim != d) throw DimMismatch("mix: dimension mismatch");
        deltas.push_back(c.delta);
        counits.push_back(c.counit);
    }
    return {d, add(deltas, weights), add(counits, weights)};
}

}  // namespace cpmfrob
