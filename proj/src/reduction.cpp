#include "necklace/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>

#include "necklace/errors.hpp"
#include "necklace/geometry.hpp"

namespace necklace {

LeadingCoupling gamma_leading(const DelaunayProfile& profile, int n) {
    if (n < 2) throw DomainError("gamma_leading needs n >= 2");
    LeadingCoupling g;
    g.c3 = profile.V / profile.T;
    g.c5 = 2.0 * profile.Ia / g.c3;
    g.gamma = g.c5 / std::log(static_cast<double>(n));
    return g;
}

Reduction::Reduction(double a, int n, ReductionOptions options)
    : a_(a),
      n_(n),
      options_(options),
      profile_(solve_profile(a, options.chart_tol)),
      fine_(build_chart(a, options.chart_tol, options.geometry_N)),
      solver_(build_chart(a, options.chart_tol, options.solver_N), options.kmax) {
    if (n < 4) throw DomainError("reduction needs n >= 4");
    if (std::abs(fine_.tau - solver_.chart().tau) > 1e-9 * fine_.tau)
        throw GridMismatch("geometry and solver charts disagree on tau");
    options_.inner.threads = options_.threads;
    options_.final_pass.threads = options_.threads;
}

std::vector<double> Reduction::thetas() const {
    const int K = options_.kmax;
    std::vector<double> out(K + 1);
    for (int i = 0; i <= K; ++i) out[i] = std::numbers::pi * i / K - 0.5 * std::numbers::pi;
    return out;
}

std::vector<double> Reduction::ts() const {
    const int M = options_.solver_N / 2;
    const double tau = solver_.chart().tau;
    std::vector<double> out(M + 1);
    for (int m = 0; m <= M; ++m) out[m] = tau * m / M;
    return out;
}

EquationValue Reduction::evaluate(const SymmetricField& h, double gamma, const NonlocalOptions& nonlocal) const {
    const SurfacePatch patch = build_coil(fine_, n_, std::make_shared<SymmetricField>(h));
    check_embedding(patch);
    const auto th = thetas();
    const auto t = ts();
    const std::size_t M1 = t.size();

    EquationValue out;
    out.samples.assign(th.size() * M1, 0.0);
    std::unique_ptr<CoilPotential> pot;
    if (gamma != 0.0) pot = std::make_unique<CoilPotential>(patch, nonlocal);
    for (std::size_t m = 0; m < M1; ++m) {
        std::vector<double> N(th.size(), 0.0);
        if (pot) N = pot->row(th, t[m]);
        for (std::size_t i = 0; i < th.size(); ++i)
            out.samples[i * M1 + m] = evaluate_forms(patch, th[i], t[m]).H + gamma * N[i];
    }
    out.G = SymmetricField::from_samples(options_.kmax, options_.solver_N, solver_.chart().tau, out.samples);
    std::tie(out.c, out.d) = project_coeffs(solver_, out.G);
    for (double s : out.samples) out.residual = std::max(out.residual, std::abs(s - out.d));
    return out;
}

ReductionState Reduction::fixed_point(double gamma, const SymmetricField* start) const {
    ReductionState st;
    st.a = a_;
    st.n = n_;
    st.gamma = gamma;
    st.h = start ? *start : solver_.zero();

    double prev = std::numeric_limits<double>::infinity();
    double omega = 1.0;
    int increases = 0;
    for (int it = 1; it <= options_.max_iter; ++it) {
        const EquationValue E = evaluate(st.h, gamma);
        const ProjectedSolution step = solve_projected(solver_, E.G);
        const double norm = step.h.grid_sup();
        st.c = E.c;
        st.d = E.d;
        st.residual = E.residual;
        st.iterations = it;
        if (norm > prev) {
            omega *= options_.damping;
            if (++increases >= 3) throw NoContraction("fixed point step grew in three consecutive iterations");
        } else {
            increases = 0;
        }
        st.history.push_back({it, gamma, norm, omega, E.c, E.d, E.residual});
        st.h += omega * step.h;
        prev = norm;
        if (omega * norm <= options_.tol * std::max(st.h.grid_sup(), 1e-12)) {
            st.converged = true;
            break;
        }
    }
    // diagnostics at the returned h
    const EquationValue E = evaluate(st.h, gamma);
    st.c = E.c;
    st.d = E.d;
    st.lambda = E.d;
    st.residual = E.residual;
    return st;
}

ReductionState Reduction::solve_gamma() const {
    const LeadingCoupling lead = leading();
    const double ln = std::log(static_cast<double>(n_));
    const double M = options_.window_M > 0.0 ? options_.window_M : 2.0 * lead.c5;
    const double lo_w = lead.gamma - M / (ln * ln), hi_w = lead.gamma + M / (ln * ln);

    std::vector<ReductionState> seen;
    auto run = [&](double g) -> const ReductionState& {
        const SymmetricField* start = nullptr;
        double best = std::numeric_limits<double>::infinity();
        for (const auto& s : seen)
            if (std::abs(s.gamma - g) < best) {
                best = std::abs(s.gamma - g);
                start = &s.h;
            }
        ReductionState st = fixed_point(g, start);
        if (!st.converged) throw NonConvergence("fixed point did not converge within max_iter");
        seen.push_back(std::move(st));
        return seen.back();
    };
    auto done = [&](const ReductionState& s) { return std::abs(s.c) < options_.c_tol * std::abs(s.d); };
    auto finish = [&](ReductionState s) {
        std::vector<IterationRecord> all;
        for (const auto& p : seen) all.insert(all.end(), p.history.begin(), p.history.end());
        s.history = std::move(all);
        s.iterations = static_cast<int>(s.history.size());
        return s;
    };

    double g0 = lead.gamma, g1 = 1.1 * lead.gamma;
    double c0 = run(g0).c;
    if (done(seen.back())) return finish(seen.back());
    double c1 = run(g1).c;
    if (done(seen.back())) return finish(seen.back());

    // bracket [blo, bhi] with c(blo), c(bhi) of opposite sign, once known
    bool bracketed = false;
    double blo = 0.0, bhi = 0.0, clo = 0.0, chi = 0.0;
    auto note = [&](double ga, double ca, double gb, double cb) {
        if ((ca < 0.0) != (cb < 0.0)) {
            bracketed = true;
            if (ga < gb) {
                blo = ga, clo = ca, bhi = gb, chi = cb;
            } else {
                blo = gb, clo = cb, bhi = ga, chi = ca;
            }
        }
    };
    note(g0, c0, g1, c1);

    for (int k = 0; k < options_.max_secant; ++k) {
        double g2 = g1 - c1 * (g1 - g0) / (c1 - c0);
        if (!std::isfinite(g2) || g2 < lo_w || g2 > hi_w) {
            if (!bracketed) {
                const double ca = run(lo_w).c;
                const double cb = run(hi_w).c;
                if ((ca < 0.0) == (cb < 0.0))
                    throw RootNotBracketed("c(gamma) keeps its sign over the admissible gamma window");
                note(lo_w, ca, hi_w, cb);
            }
            g2 = blo - clo * (bhi - blo) / (chi - clo);
        } else if (bracketed && (g2 <= blo || g2 >= bhi)) {
            g2 = 0.5 * (blo + bhi);
        }
        const ReductionState& s2 = run(g2);
        if (done(s2)) return finish(s2);
        if (bracketed) {
            if ((s2.c < 0.0) == (clo < 0.0))
                blo = g2, clo = s2.c;
            else
                bhi = g2, chi = s2.c;
        } else {
            note(g1, c1, g2, s2.c);
        }
        g0 = g1, c0 = c1;
        g1 = g2, c1 = s2.c;
    }
    throw NonConvergence("secant iteration on gamma did not reach |c| < c_tol |d|");
}

void Reduction::finalize(ReductionState& state) const {
    const EquationValue E = evaluate(state.h, state.gamma, options_.final_pass);
    state.final_c = E.c;
    state.final_residual = E.residual;
    state.lambda = E.d;
}

double Reduction::volume(const SymmetricField& h) const {
    const SurfacePatch patch = build_coil(fine_, n_, std::make_shared<SymmetricField>(h));
    return n_ * BlockQuadrature::build(patch, 0.0, options_.final_pass.block).coiled_volume(patch.R);
}

EquationValue evaluate_equation(const Reduction& reduction, const SymmetricField& h, double gamma) {
    return reduction.evaluate(h, gamma);
}

ReductionState fixed_point_solve(const Reduction& reduction, double gamma) { return reduction.fixed_point(gamma); }

ReductionState solve_gamma(const Reduction& reduction) { return reduction.solve_gamma(); }

double sphere_equation_residual(double radius, double gamma, int n_samples, const SelfResolution& res) {
    const SurfacePatch sphere = make_sphere(radius);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = 0; i < n_samples; ++i)
        for (int j = 0; j < n_samples; ++j) {
            const double theta = 2.0 * std::numbers::pi * i / n_samples;
            const double v = std::numbers::pi * (j + 0.5) / n_samples;
            const double g = evaluate_forms(sphere, theta, v).H + gamma * potential_closed(sphere, theta, v, res);
            lo = std::min(lo, g);
            hi = std::max(hi, g);
        }
    return hi - lo;
}

MassMap mass_map(double a, int n, MassMode mode, const ReductionOptions& options) {
    MassMap mm;
    mm.a = a;
    mm.n = n;
    mm.mode = mode;
    if (mode == MassMode::Leading) {
        const DelaunayProfile p = solve_profile(a, options.chart_tol);
        mm.gamma = gamma_leading(p, n).gamma;
        mm.volume = n * p.V;
    } else {
        const Reduction red(a, n, options);
        const ReductionState st = red.solve_gamma();
        mm.gamma = st.gamma;
        mm.volume = red.volume(st.h);
    }
    mm.m = mm.gamma * mm.volume;
    return mm;
}

int suggest_blocks(double m, const DelaunayProfile& profile) {
    if (!(m > std::exp(1.0))) throw DomainError("mass must exceed e for the block-count heuristic");
    const double Ca = 1.0 / (2.0 * profile.Ia * profile.T);
    return static_cast<int>(std::lround(m * (std::log(m) - std::log(std::log(m))) * Ca));
}

NeckParameter find_neck_for_mass(double m, int n, double a_lo, double a_hi, MassMode mode,
                                 const ReductionOptions& options, double tol) {
    if (!(0.0 < a_lo && a_lo < a_hi && a_hi <= 0.5)) throw DomainError("neck bracket must satisfy 0 < lo < hi <= 1/2");
    NeckParameter out;
    MassMap lo = mass_map(a_lo, n, mode, options);
    MassMap hi = mass_map(a_hi, n, mode, options);
    out.evaluations = 2;
    if (!(lo.m < hi.m)) throw BracketFailure("mass map is not increasing across the neck bracket");
    if (!(lo.m <= m && m <= hi.m)) throw BracketFailure("target mass lies outside the bracket's mass range");
    while (hi.a - lo.a > tol) {
        const MassMap mid = mass_map(0.5 * (lo.a + hi.a), n, mode, options);
        ++out.evaluations;
        (mid.m < m ? lo : hi) = mid;
    }
    out.map = (std::abs(lo.m - m) < std::abs(hi.m - m)) ? lo : hi;
    out.a = out.map.a;
    return out;
}

}  // namespace necklace
