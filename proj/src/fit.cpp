#include "recinet/fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace recinet {

namespace {

enum Family : int { FDOut = 0, FDIn, FDRec, FSOut, FSIn, FSRec, FamilyCount };

const std::vector<double>* family_target(const NodeConstraints& c, int f) {
    switch (f) {
        case FDOut: return &c.d_out;
        case FDIn: return &c.d_in;
        case FDRec: return &c.d_rec;
        case FSOut: return &c.s_out;
        case FSIn: return &c.s_in;
        case FSRec: return &c.s_rec;
    }
    return nullptr;
}

std::vector<double>* family_multiplier(ParamSet& p, int f) {
    switch (f) {
        case FDOut: return &p.k_out;
        case FDIn: return &p.k_in;
        case FDRec: return &p.k_rec;
        case FSOut: return &p.l_out;
        case FSIn: return &p.l_in;
        case FSRec: return &p.l_rec;
    }
    return nullptr;
}

std::vector<int> model_families(ModelKind model) {
    switch (model) {
        case ModelKind::DECM: return {FDOut, FDIn, FSOut, FSIn};
        case ModelKind::RWCM: return {FSOut, FSIn, FSRec};
        case ModelKind::RECM: return {FDOut, FDIn, FDRec, FSOut, FSIn, FSRec};
    }
    throw std::logic_error("unknown model");
}

// Free-parameter layout: one slot per (family, node) whose target is
// positive; zero-target channels are pinned to multiplier 0 and excluded.
struct Layout {
    ModelKind model;
    int n = 0;
    std::vector<int> families;
    std::array<std::vector<int>, FamilyCount> index;  // (family, node) -> flat or -1
    std::vector<std::pair<int, int>> owner;           // flat -> (family, node)
    std::vector<double> target;                       // flat

    static Layout build(const NodeConstraints& targets) {
        Layout lay;
        lay.model = targets.model;
        lay.n = targets.n;
        lay.families = model_families(targets.model);
        for (int f : lay.families) {
            lay.index[f].assign(lay.n, -1);
            const std::vector<double>& t = *family_target(targets, f);
            for (int i = 0; i < lay.n; ++i) {
                if (t[i] > 0.0) {
                    lay.index[f][i] = static_cast<int>(lay.owner.size());
                    lay.owner.emplace_back(f, i);
                    lay.target.push_back(t[i]);
                }
            }
        }
        return lay;
    }

    int free_count() const { return static_cast<int>(owner.size()); }
};

void write_params(const Layout& lay, const Eigen::VectorXd& theta, ParamSet& params) {
    for (int m = 0; m < lay.free_count(); ++m) {
        const auto [f, i] = lay.owner[m];
        (*family_multiplier(params, f))[i] = std::exp(theta[m]);
    }
}

// Fraction-to-the-boundary rule. Log products are linear along the step, so
// the largest multiple of `dir` keeping every live pairwise l-product below
// the cap is exact; staying slightly short keeps the iterate interior. Only
// live series bind: a weight series whose topological entry points are all
// pinned never occurs in the dyad law and is free to roam.
double max_feasible_step(const Layout& lay, const Eigen::VectorXd& theta, const Eigen::VectorXd& dir,
                         double cap) {
    const double log_cap = std::log(cap);
    double t_max = 1.0;
    const int n = lay.n;
    auto bind = [&](int idx_a, int idx_b) {
        if (idx_a < 0 || idx_b < 0) return;  // a pinned side keeps the product at zero
        const double slope = dir[idx_a] + dir[idx_b];
        if (slope <= 0) return;
        const double gap = log_cap - (theta[idx_a] + theta[idx_b]);
        t_max = std::min(t_max, 0.9995 * gap / slope);
    };
    const std::vector<int>& lo = lay.index[FSOut];
    const std::vector<int>& li = lay.index[FSIn];
    const std::vector<int>& lr = lay.index[FSRec];
    const std::vector<int>& ko = lay.index[FDOut];
    const std::vector<int>& ki = lay.index[FDIn];
    const std::vector<int>& kr = lay.index[FDRec];
    auto free_at = [](const std::vector<int>& idx, int node) { return !idx.empty() && idx[node] >= 0; };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            bool live;
            switch (lay.model) {
                case ModelKind::RWCM: live = true; break;
                case ModelKind::DECM: live = free_at(ko, i) && free_at(ki, j); break;
                default:
                    live = (free_at(ko, i) && free_at(ki, j)) ||
                           (free_at(kr, i) && free_at(kr, j) && free_at(lr, i) && free_at(lr, j));
            }
            if (live) bind(lo[i], li[j]);
        }
    }
    if (lay.model != ModelKind::DECM) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (lay.model == ModelKind::RWCM || (free_at(kr, i) && free_at(kr, j))) bind(lr[i], lr[j]);
    }
    return std::max(t_max, 0.0);
}

// Dual objective: sum_theta theta * target - sum_dyads log Z_dyad. Equals the
// log-likelihood of the reference graph up to data-only constants, so accepted
// ascent steps are likelihood ascent steps.
double dual_objective(const Layout& lay, const Eigen::VectorXd& theta, const ParamSet& params) {
    double value = 0.0;
    for (int m = 0; m < lay.free_count(); ++m) value += theta[m] * lay.target[m];
    const int n = params.n;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (params.model == ModelKind::DECM) {
                const double k1 = params.k_out[i] * params.k_in[j];
                const double k2 = params.k_out[j] * params.k_in[i];
                const double u1 = k1 > 0 ? params.l_out[i] * params.l_in[j] : 0.0;
                const double u2 = k2 > 0 ? params.l_out[j] * params.l_in[i] : 0.0;
                value -= std::log1p(k1 * u1 / (1.0 - u1)) + std::log1p(k2 * u2 / (1.0 - u2));
            } else {
                const RecmDyad d = recm_dyad(i, j, params);
                value -= std::log(d.X) - std::log1p(-d.x) - std::log1p(-d.y) - std::log1p(-d.z);
            }
        }
    }
    return value;
}

Eigen::VectorXd flat_residual(const Layout& lay, const NodeConstraints& expect) {
    Eigen::VectorXd r(lay.free_count());
    for (int m = 0; m < lay.free_count(); ++m) {
        const auto [f, i] = lay.owner[m];
        r[m] = lay.target[m] - (*family_target(expect, f))[i];
    }
    return r;
}

// Covariance of the free constraint vector, assembled dyad by dyad. This is
// the Jacobian of the expectations with respect to the log-multipliers.
Eigen::MatrixXd constraint_covariance(const Layout& lay, const ParamSet& params) {
    const int nf = lay.free_count();
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(nf, nf);
    const int n = lay.n;
    // Constraint slots touched by each dyad statistic, per node side.
    // Order: a_out, a_in, a_rec, w_out, w_in, w_rec.
    constexpr int fam_i[6] = {FDOut, FDIn, FDRec, FSOut, FSIn, FSRec};
    constexpr int fam_j[6] = {FDIn, FDOut, FDRec, FSIn, FSOut, FSRec};
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const DyadMoments mom = dyad_moments(i, j, params);
            int inc[6][2];
            int inc_count[6];
            for (int s = 0; s < 6; ++s) {
                inc_count[s] = 0;
                if (!lay.index[fam_i[s]].empty()) {
                    const int idx = lay.index[fam_i[s]][i];
                    if (idx >= 0) inc[s][inc_count[s]++] = idx;
                }
                if (!lay.index[fam_j[s]].empty()) {
                    const int idx = lay.index[fam_j[s]][j];
                    if (idx >= 0) inc[s][inc_count[s]++] = idx;
                }
            }
            for (int s = 0; s < 6; ++s) {
                if (inc_count[s] == 0) continue;
                for (int t = 0; t < 6; ++t) {
                    if (inc_count[t] == 0) continue;
                    const double c = mom.cov[s][t];
                    if (c == 0.0) continue;
                    for (int ei = 0; ei < inc_count[s]; ++ei)
                        for (int ej = 0; ej < inc_count[t]; ++ej)
                            J(inc[s][ei], inc[t][ej]) += c;
                }
            }
        }
    }
    return J;
}

// Homogeneous starting point: one multiplier value per constraint family,
// matched to the global per-pair means, broadcast to every free node.
void initialize_params(const Layout& lay, const NodeConstraints& targets, ParamSet& params) {
    const int n = lay.n;
    const double m = static_cast<double>(n) * (n - 1);
    auto mean_of = [&](const std::vector<double>& v) {
        double s = 0;
        for (double t : v) s += t;
        return s / m;
    };
    auto clamp01 = [](double v) { return std::clamp(v, 1e-6, 1.0 - 1e-6); };

    double k0_out = 1.0, l0_out = 0.5, k0_rec = 1.0, l0_rec = 0.5;
    if (targets.model == ModelKind::DECM || targets.model == ModelKind::RECM) {
        const double td = mean_of(targets.d_out);
        const double ts = mean_of(targets.s_out);
        if (ts > 0.0) {
            double x0;
            if (td > 0.0) {
                x0 = clamp01(1.0 - td / ts);
                const double dd = clamp01(td);
                k0_out = std::sqrt(dd * (1.0 - x0) / ((1.0 - dd) * x0));
            } else {
                x0 = clamp01(ts / (1.0 + ts));
            }
            l0_out = std::sqrt(x0);
        }
    } else {
        const double ts = mean_of(targets.s_out);
        if (ts > 0.0) {
            // exact homogeneous solution of q / (1 - q^2) = ts
            const double q = (std::sqrt(1.0 + 4.0 * ts * ts) - 1.0) / (2.0 * ts);
            l0_out = std::sqrt(clamp01(q));
        }
    }
    if (targets.model != ModelKind::DECM) {
        const double tsr = mean_of(targets.s_rec);
        if (tsr > 0.0) {
            double z0;
            if (targets.model == ModelKind::RECM) {
                const double tdr = mean_of(targets.d_rec);
                z0 = clamp01(1.0 - tdr / tsr);
                const double dd = clamp01(tdr);
                k0_rec = std::sqrt(dd * (1.0 - z0) / ((1.0 - dd) * z0));
            } else {
                z0 = clamp01(tsr / (1.0 + tsr));
            }
            l0_rec = std::sqrt(z0);
        }
    }

    for (int m2 = 0; m2 < lay.free_count(); ++m2) {
        const auto [f, i] = lay.owner[m2];
        double v = 1.0;
        switch (f) {
            case FDOut:
            case FDIn: v = k0_out; break;
            case FDRec: v = k0_rec; break;
            case FSOut:
            case FSIn: v = l0_out; break;
            case FSRec: v = l0_rec; break;
        }
        (*family_multiplier(params, f))[i] = v;
    }
}

}  // namespace

FitReport fit(const NodeConstraints& targets, const FitOptions& options) {
    targets.validate();
    if (!(options.tolerance > 0.0)) throw std::invalid_argument("fit: tolerance must be positive");

    const Layout lay = Layout::build(targets);
    const int nf = lay.free_count();
    const int n = lay.n;

    ParamSet params;
    params.model = targets.model;
    params.n = n;
    params.l_out.assign(n, 0.0);
    params.l_in.assign(n, 0.0);
    if (targets.model != ModelKind::RWCM) {
        params.k_out.assign(n, 0.0);
        params.k_in.assign(n, 0.0);
    }
    if (targets.model == ModelKind::RECM) {
        params.k_rec.assign(n, 0.0);
        params.l_rec.assign(n, 0.0);
    }
    if (targets.model == ModelKind::RWCM) params.l_rec.assign(n, 0.0);

    FitReport report;
    report.params = params;

    if (nf == 0) {
        report.converged = true;
        report.iterations = 0;
        report.residual_sup_norm = 0.0;
        report.residuals = expected_constraints(report.params);  // all-zero shape
        report.message = "all targets zero; every channel pinned";
        return report;
    }

    initialize_params(lay, targets, params);
    Eigen::VectorXd theta(nf);
    for (int m = 0; m < nf; ++m) {
        const auto [f, i] = lay.owner[m];
        theta[m] = std::log((*family_multiplier(params, f))[i]);
    }

    double best_norm = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_theta = theta;
    int iterations = 0;
    int stalls = 0;
    double phi = dual_objective(lay, theta, params);

    for (; iterations < options.max_iterations; ++iterations) {
        const NodeConstraints expect = expected_constraints(params);
        const Eigen::VectorXd r = flat_residual(lay, expect);
        const double norm = r.lpNorm<Eigen::Infinity>();
        if (norm < best_norm) {
            best_norm = norm;
            best_theta = theta;
            stalls = 0;
        } else if (++stalls > 40) {
            report.message = "stalled: no residual progress over 40 iterations";
            break;
        }
        if (norm <= options.tolerance) break;

        Eigen::MatrixXd J = constraint_covariance(lay, params);
        Eigen::VectorXd delta;
        bool have_direction = false;
        const double scale = 1.0 + J.diagonal().maxCoeff();
        for (double ridge = 1e-12 * scale; ridge <= 1e-2 * scale; ridge *= 1e4) {
            Eigen::MatrixXd Jr = J;
            Jr.diagonal().array() += ridge;
            Eigen::LDLT<Eigen::MatrixXd> ldlt(Jr);
            if (ldlt.info() != Eigen::Success) continue;
            delta = ldlt.solve(r);
            if (delta.allFinite() && r.dot(delta) > 0.0) {
                have_direction = true;
                break;
            }
        }

        bool stepped = false;
        if (have_direction) {
            const double cap = delta.lpNorm<Eigen::Infinity>();
            if (cap > options.max_log_step) delta *= options.max_log_step / cap;
            const double slope = r.dot(delta);
            const double alpha0 = max_feasible_step(lay, theta, delta, options.product_cap);
            ParamSet trial = params;
            for (double alpha = alpha0; alpha >= 1e-10 * alpha0 && alpha > 0; alpha *= 0.5) {
                const Eigen::VectorXd theta_trial = theta + alpha * delta;
                write_params(lay, theta_trial, trial);
                const double phi_trial = dual_objective(lay, theta_trial, trial);
                if (phi_trial >= phi + 1e-4 * alpha * slope) {
                    theta = theta_trial;
                    params = trial;
                    phi = phi_trial;
                    stepped = true;
                    break;
                }
            }
        }
        if (!stepped) {
            // Fixed-point fallback: per-family multiplicative rescaling toward
            // each target, capped at the same boundary fraction.
            Eigen::VectorXd step(nf);
            for (int m = 0; m < nf; ++m) {
                const auto [f, i] = lay.owner[m];
                const double e = (*family_target(expect, f))[i];
                step[m] = e > 1e-300 ? 0.5 * std::log(lay.target[m] / e) : 1.0;
                step[m] = std::clamp(step[m], -options.max_log_step, options.max_log_step);
            }
            const double beta = max_feasible_step(lay, theta, step, options.product_cap);
            if (beta > 0) {
                theta += beta * step;
                write_params(lay, theta, params);
                phi = dual_objective(lay, theta, params);
                stepped = true;
            }
        }
        if (!stepped) {
            report.message = "no admissible step found";
            break;
        }
    }

    write_params(lay, best_theta, params);
    const NodeConstraints expect = expected_constraints(params);
    const Eigen::VectorXd r = flat_residual(lay, expect);
    const double norm = nf > 0 ? r.lpNorm<Eigen::Infinity>() : 0.0;

    report.params = params;
    report.iterations = iterations;
    report.residual_sup_norm = norm;
    report.converged = norm <= options.tolerance;

    NodeConstraints residuals = targets;
    auto subtract = [&](std::vector<double>& t, const std::vector<double>& e) {
        for (std::size_t i = 0; i < t.size(); ++i) t[i] -= e[i];
    };
    subtract(residuals.d_out, expect.d_out);
    subtract(residuals.d_in, expect.d_in);
    subtract(residuals.d_rec, expect.d_rec);
    subtract(residuals.s_out, expect.s_out);
    subtract(residuals.s_in, expect.s_in);
    subtract(residuals.s_rec, expect.s_rec);
    report.residuals = std::move(residuals);
    if (report.message.empty())
        report.message = report.converged ? "converged" : "maximum iterations reached";
    return report;
}

}  // namespace recinet
