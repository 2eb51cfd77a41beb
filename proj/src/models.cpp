#include "recinet/models.hpp"

#include <cmath>
#include <stdexcept>

namespace recinet {

namespace {

// Moments of the shifted geometric on {1,2,...} with P(k) = (1-q) q^(k-1).
inline double geo1_mean(double q) { return 1.0 / (1.0 - q); }
inline double geo1_mom2(double q) { return (1.0 + q) / ((1.0 - q) * (1.0 - q)); }

void require_pair(int i, int j, int n) {
    if (i == j) throw std::invalid_argument("dyad requires two distinct nodes");
    if (i < 0 || j < 0 || i >= n || j >= n) throw std::out_of_range("node index out of range");
}

void check_product(double p) {
    if (!(p < 1.0))
        throw std::domain_error("invalid parameters: pairwise l-product reaches 1, geometric series diverges");
}

// Probability of one DECM directed edge i -> j carrying weight w.
double decm_edge_probability(double kappa, double u, Weight w) {
    const double denom = 1.0 - u + kappa * u;
    if (w == 0) return (1.0 - u) / denom;
    if (u == 0.0) return 0.0;
    return kappa * std::pow(u, static_cast<double>(w)) * (1.0 - u) / denom;
}

// Shifted-geometric pmf factor q^(w-1) (1-q) for an existing component.
double geo1_pmf(double q, Weight w) {
    if (w < 1) return 0.0;
    if (q == 0.0) return w == 1 ? 1.0 : 0.0;
    return std::pow(q, static_cast<double>(w - 1)) * (1.0 - q);
}

}  // namespace

std::string model_name(ModelKind model) {
    switch (model) {
        case ModelKind::DECM: return "decm";
        case ModelKind::RWCM: return "rwcm";
        case ModelKind::RECM: return "recm";
    }
    throw std::logic_error("unknown model");
}

ModelKind model_from_name(const std::string& name) {
    if (name == "decm" || name == "DECM") return ModelKind::DECM;
    if (name == "rwcm" || name == "RWCM") return ModelKind::RWCM;
    if (name == "recm" || name == "RECM") return ModelKind::RECM;
    throw std::invalid_argument("unknown model name: " + name);
}

std::int64_t param_count(ModelKind model, int n) {
    if (n < 1) throw std::invalid_argument("param_count: n must be >= 1");
    switch (model) {
        case ModelKind::DECM: return 4LL * n;
        case ModelKind::RWCM: return 3LL * n;
        case ModelKind::RECM: return 6LL * n;
    }
    throw std::logic_error("unknown model");
}

void NodeConstraints::validate() const {
    auto nonneg = [](const std::vector<double>& v, const char* name) {
        for (double t : v)
            if (!(t >= 0.0))
                throw std::invalid_argument(std::string("constraint ") + name + " must be non-negative");
    };
    nonneg(d_out, "d_out");
    nonneg(d_in, "d_in");
    nonneg(d_rec, "d_rec");
    nonneg(s_out, "s_out");
    nonneg(s_in, "s_in");
    nonneg(s_rec, "s_rec");

    auto fail = [](int i, const std::string& what) {
        throw std::invalid_argument("infeasible targets: node " + std::to_string(i) + " " + what);
    };
    auto sum = [](const std::vector<double>& v) {
        double s = 0;
        for (double t : v) s += t;
        return s;
    };
    auto check_totals = [&](const std::vector<double>& a, const std::vector<double>& b, const char* what) {
        const double sa = sum(a), sb = sum(b);
        if (std::abs(sa - sb) > 1e-9 * (1.0 + sa + sb))
            throw std::invalid_argument(std::string("infeasible targets: ") + what +
                                        " totals must balance over ordered pairs");
    };

    if (model == ModelKind::DECM) {
        for (int i = 0; i < n; ++i) {
            if (s_out[i] > 0.0 && d_out[i] == 0.0) fail(i, "sends weight without an outgoing link");
            if (s_in[i] > 0.0 && d_in[i] == 0.0) fail(i, "receives weight without an incoming link");
            if (s_out[i] < d_out[i]) fail(i, "has out-strength below out-degree; links carry weight >= 1");
            if (s_in[i] < d_in[i]) fail(i, "has in-strength below in-degree; links carry weight >= 1");
        }
        check_totals(d_out, d_in, "out/in-degree");
        check_totals(s_out, s_in, "out/in-strength");
    } else if (model == ModelKind::RWCM) {
        check_totals(s_out, s_in, "non-reciprocated strength");
    } else {
        for (int i = 0; i < n; ++i) {
            if (s_rec[i] > 0.0 && d_rec[i] == 0.0) fail(i, "has reciprocated strength without a reciprocated link");
            if (s_rec[i] < d_rec[i]) fail(i, "has reciprocated strength below reciprocated degree");
            if (s_out[i] < d_out[i]) fail(i, "has one-way out-strength below one-way out-degree");
            if (s_in[i] < d_in[i]) fail(i, "has one-way in-strength below one-way in-degree");
            // A positive out-surplus needs either a one-way link or a
            // reciprocated dyad to sit on.
            if (s_out[i] > 0.0 && d_out[i] == 0.0 && d_rec[i] == 0.0)
                fail(i, "has out-surplus without any outgoing or reciprocated link");
            if (s_in[i] > 0.0 && d_in[i] == 0.0 && d_rec[i] == 0.0)
                fail(i, "has in-surplus without any incoming or reciprocated link");
        }
        check_totals(d_out, d_in, "one-way degree");
        check_totals(s_out, s_in, "one-way strength");
    }
}

NodeConstraints constraints_from_graph(const WeightedDigraph& g, ModelKind model) {
    const int n = g.node_count();
    const std::vector<NodeStats> stats = node_stats(g);
    NodeConstraints c;
    c.model = model;
    c.n = n;
    c.d_out.resize(n);
    c.d_in.resize(n);
    c.d_rec.resize(n);
    c.s_out.resize(n);
    c.s_in.resize(n);
    c.s_rec.resize(n);
    for (int i = 0; i < n; ++i) {
        const NodeStats& s = stats[static_cast<std::size_t>(i)];
        switch (model) {
            case ModelKind::DECM:
                c.d_out[i] = static_cast<double>(s.d_out);
                c.d_in[i] = static_cast<double>(s.d_in);
                c.s_out[i] = static_cast<double>(s.s_out);
                c.s_in[i] = static_cast<double>(s.s_in);
                break;
            case ModelKind::RWCM:
                c.s_out[i] = static_cast<double>(s.s_out_nonrec);
                c.s_in[i] = static_cast<double>(s.s_in_nonrec);
                c.s_rec[i] = static_cast<double>(s.s_rec);
                break;
            case ModelKind::RECM:
                c.d_out[i] = static_cast<double>(s.d_out_nonrec);
                c.d_in[i] = static_cast<double>(s.d_in_nonrec);
                c.d_rec[i] = static_cast<double>(s.d_rec);
                c.s_out[i] = static_cast<double>(s.s_out_nonrec);
                c.s_in[i] = static_cast<double>(s.s_in_nonrec);
                c.s_rec[i] = static_cast<double>(s.s_rec);
                break;
        }
    }
    if (model == ModelKind::DECM || model == ModelKind::RWCM) {
        c.d_rec.clear();
        c.s_rec.clear();
    }
    if (model == ModelKind::RWCM) {
        c.d_out.clear();
        c.d_in.clear();
    }
    return c;
}

ParamSet ParamSet::uniform(ModelKind model, int n, double k, double l) {
    ParamSet p;
    p.model = model;
    p.n = n;
    p.l_out.assign(n, l);
    p.l_in.assign(n, l);
    switch (model) {
        case ModelKind::DECM:
            p.k_out.assign(n, k);
            p.k_in.assign(n, k);
            break;
        case ModelKind::RWCM:
            p.l_rec.assign(n, l);
            break;
        case ModelKind::RECM:
            p.k_out.assign(n, k);
            p.k_in.assign(n, k);
            p.k_rec.assign(n, k);
            p.l_rec.assign(n, l);
            break;
    }
    return p;
}

void ParamSet::validate() const {
    auto check = [](const std::vector<double>& v, const char* name) {
        for (double m : v)
            if (!(m >= 0.0) || !std::isfinite(m))
                throw std::domain_error(std::string("multiplier ") + name + " must be finite and non-negative");
    };
    check(k_out, "k_out");
    check(k_in, "k_in");
    check(k_rec, "k_rec");
    check(l_out, "l_out");
    check(l_in, "l_in");
    check(l_rec, "l_rec");
    // Convergence of the geometric series is required only where the series
    // can actually occur; a pinned topological channel makes the paired
    // weight product vacuous.
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double x = l_out[i] * l_in[j];
            switch (model) {
                case ModelKind::DECM:
                    if (k_out[i] * k_in[j] > 0) check_product(x);
                    break;
                case ModelKind::RWCM:
                    check_product(x);
                    if (j > i) check_product(l_rec[i] * l_rec[j]);
                    break;
                case ModelKind::RECM: {
                    const double z = k_rec[i] * k_rec[j] > 0 ? l_rec[i] * l_rec[j] : 0.0;
                    if (j > i) check_product(z);
                    if (k_out[i] * k_in[j] > 0 || z > 0) check_product(x);
                    break;
                }
            }
        }
    }
}

RecmDyad recm_dyad(int i, int j, const ParamSet& params) {
    require_pair(i, j, params.n);
    if (params.model != ModelKind::RECM && params.model != ModelKind::RWCM)
        throw std::invalid_argument("recm_dyad: parameters must be RECM or RWCM");
    const bool rwcm = params.model == ModelKind::RWCM;

    RecmDyad d;
    // RWCM is the RECM with the topological multipliers switched off (all 1).
    d.a = rwcm ? 1.0 : params.k_out[i] * params.k_in[j];
    d.b = rwcm ? 1.0 : params.k_in[i] * params.k_out[j];
    d.c = rwcm ? 1.0 : params.k_rec[i] * params.k_rec[j];
    d.x = params.l_out[i] * params.l_in[j];
    d.y = params.l_in[i] * params.l_out[j];
    d.z = params.l_rec[i] * params.l_rec[j];
    // A weight series whose every entry point is pinned never appears in the
    // dyad law (its factors cancel), so its multiplier product is vacuous;
    // substituting 0 is exact and keeps the live-series convergence checks
    // meaningful.
    if (d.c == 0.0) d.z = 0.0;
    const bool rec_ride = d.c > 0.0 && d.z > 0.0;
    if (d.a == 0.0 && !rec_ride) d.x = 0.0;
    if (d.b == 0.0 && !rec_ride) d.y = 0.0;
    check_product(d.x);
    check_product(d.y);
    check_product(d.z);

    const double cx = 1.0 - d.x, cy = 1.0 - d.y, cz = 1.0 - d.z;
    const double t_none = cz * cx * cy;
    const double t_out = d.a * cz * d.x * cy;
    const double t_in = d.b * cz * d.y * cx;
    const double t_rec_equal = d.c * d.z * cx * cy;
    const double t_rec_out = d.c * d.z * d.x * cy;
    const double t_rec_in = d.c * d.z * d.y * cx;
    d.X = ((t_none + t_out) + (t_in + t_rec_equal)) + (t_rec_out + t_rec_in);

    d.p.p_none = t_none / d.X;
    d.p.p_out = t_out / d.X;
    d.p.p_in = t_in / d.X;
    d.p.p_rec_equal = t_rec_equal / d.X;
    d.p.p_rec_out = t_rec_out / d.X;
    d.p.p_rec_in = t_rec_in / d.X;
    return d;
}

CaseProbabilities recm_case_probabilities(int i, int j, const ParamSet& params) {
    return recm_dyad(i, j, params).p;
}

double dyad_probability(int i, int j, Weight w_ij, Weight w_ji, const ParamSet& params) {
    require_pair(i, j, params.n);
    if (w_ij < 0 || w_ji < 0) throw std::invalid_argument("weights must be non-negative");

    if (params.model == ModelKind::DECM) {
        const double k_out = params.k_out[i] * params.k_in[j];
        const double k_in = params.k_out[j] * params.k_in[i];
        // pinned edge: the weight series never occurs, its ratio is vacuous
        const double u_out = k_out > 0 ? params.l_out[i] * params.l_in[j] : 0.0;
        const double u_in = k_in > 0 ? params.l_out[j] * params.l_in[i] : 0.0;
        check_product(u_out);
        check_product(u_in);
        return decm_edge_probability(k_out, u_out, w_ij) * decm_edge_probability(k_in, u_in, w_ji);
    }

    const RecmDyad d = recm_dyad(i, j, params);
    const DyadDecomposition w = dyad_decompose(w_ij, w_ji);
    if (w.w_rec == 0) {
        if (w.a_none) return d.p.p_none;
        if (w.w_out_nonrec > 0) return d.p.p_out * geo1_pmf(d.x, w.w_out_nonrec);
        return d.p.p_in * geo1_pmf(d.y, w.w_in_nonrec);
    }
    const double rec = geo1_pmf(d.z, w.w_rec);
    if (w.w_out_nonrec > 0) return d.p.p_rec_out * rec * geo1_pmf(d.x, w.w_out_nonrec);
    if (w.w_in_nonrec > 0) return d.p.p_rec_in * rec * geo1_pmf(d.y, w.w_in_nonrec);
    return d.p.p_rec_equal * rec;
}

NodeConstraints expected_constraints(const ParamSet& params) {
    const int n = params.n;
    NodeConstraints e;
    e.model = params.model;
    e.n = n;
    const bool has_degrees = params.model != ModelKind::RWCM;
    const bool has_rec = params.model != ModelKind::DECM;
    if (has_degrees) {
        e.d_out.assign(n, 0.0);
        e.d_in.assign(n, 0.0);
    }
    e.s_out.assign(n, 0.0);
    e.s_in.assign(n, 0.0);
    if (has_rec) {
        if (params.model == ModelKind::RECM) e.d_rec.assign(n, 0.0);
        e.s_rec.assign(n, 0.0);
    }

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            if (params.model == ModelKind::DECM) {
                const double kappa = params.k_out[i] * params.k_in[j];
                const double u = kappa > 0 ? params.l_out[i] * params.l_in[j] : 0.0;
                check_product(u);
                const double p_edge = kappa * u / (1.0 - u + kappa * u);
                e.d_out[i] += p_edge;
                e.d_in[j] += p_edge;
                e.s_out[i] += p_edge * geo1_mean(u);
                e.s_in[j] += p_edge * geo1_mean(u);
            } else {
                const RecmDyad d = recm_dyad(i, j, params);
                const double p_rec = d.p.p_rec();
                if (params.model == ModelKind::RECM) {
                    e.d_out[i] += d.p.p_out;
                    e.d_in[i] += d.p.p_in;
                    e.d_rec[i] += p_rec;
                }
                e.s_out[i] += (d.p.p_out + d.p.p_rec_out) * geo1_mean(d.x);
                e.s_in[i] += (d.p.p_in + d.p.p_rec_in) * geo1_mean(d.y);
                e.s_rec[i] += p_rec * geo1_mean(d.z);
            }
        }
    }
    return e;
}

double log_likelihood(const WeightedDigraph& g, const ParamSet& params) {
    if (g.node_count() != params.n)
        throw std::invalid_argument("log_likelihood: graph and parameters disagree on n");
    double ll = 0.0;
    for (int i = 0; i < params.n; ++i)
        for (int j = i + 1; j < params.n; ++j)
            ll += std::log(dyad_probability(i, j, g.weight(i, j), g.weight(j, i), params));
    return ll;
}

DyadMoments dyad_moments(int i, int j, const ParamSet& params) {
    require_pair(i, j, params.n);
    DyadMoments m;
    // Statistic order: a_out, a_in, a_rec, w_out, w_in, w_rec (from node i's
    // perspective on the ordered pair (i,j)).
    enum { AO = 0, AI = 1, AR = 2, WO = 3, WI = 4, WR = 5 };
    std::array<std::array<double, 6>, 6> second{};

    if (params.model == ModelKind::DECM) {
        // The two directed edges of a DECM dyad are independent.
        const double k1 = params.k_out[i] * params.k_in[j];
        const double k2 = params.k_out[j] * params.k_in[i];
        const double u1 = k1 > 0 ? params.l_out[i] * params.l_in[j] : 0.0;
        const double u2 = k2 > 0 ? params.l_out[j] * params.l_in[i] : 0.0;
        check_product(u1);
        check_product(u2);
        const double p1 = k1 * u1 / (1.0 - u1 + k1 * u1);
        const double p2 = k2 * u2 / (1.0 - u2 + k2 * u2);
        m.mean[AO] = p1;
        m.mean[AI] = p2;
        m.mean[WO] = p1 * geo1_mean(u1);
        m.mean[WI] = p2 * geo1_mean(u2);
        second[AO][AO] = p1;
        second[AI][AI] = p2;
        second[AO][WO] = p1 * geo1_mean(u1);
        second[AI][WI] = p2 * geo1_mean(u2);
        second[WO][WO] = p1 * geo1_mom2(u1);
        second[WI][WI] = p2 * geo1_mom2(u2);
        second[AO][AI] = p1 * p2;
        second[AO][WI] = p1 * m.mean[WI];
        second[AI][WO] = p2 * m.mean[WO];
        second[WO][WI] = m.mean[WO] * m.mean[WI];
    } else {
        const RecmDyad d = recm_dyad(i, j, params);
        const double p_out = d.p.p_out, p_in = d.p.p_in;
        const double p_ro = d.p.p_rec_out, p_ri = d.p.p_rec_in;
        const double p_rec = d.p.p_rec();
        const double m1x = geo1_mean(d.x), m1y = geo1_mean(d.y), m1z = geo1_mean(d.z);

        m.mean[AO] = p_out;
        m.mean[AI] = p_in;
        m.mean[AR] = p_rec;
        m.mean[WO] = (p_out + p_ro) * m1x;
        m.mean[WI] = (p_in + p_ri) * m1y;
        m.mean[WR] = p_rec * m1z;

        second[AO][AO] = p_out;
        second[AI][AI] = p_in;
        second[AR][AR] = p_rec;
        second[AO][WO] = p_out * m1x;
        second[AI][WI] = p_in * m1y;
        second[AR][WO] = p_ro * m1x;
        second[AR][WI] = p_ri * m1y;
        second[AR][WR] = p_rec * m1z;
        second[WO][WO] = (p_out + p_ro) * geo1_mom2(d.x);
        second[WI][WI] = (p_in + p_ri) * geo1_mom2(d.y);
        second[WR][WR] = p_rec * geo1_mom2(d.z);
        second[WO][WR] = p_ro * m1x * m1z;
        second[WI][WR] = p_ri * m1y * m1z;
        // a_out a_in, a_out a_rec, a_in a_rec, w_out w_in and the remaining
        // indicator/weight crosses vanish: the six cases are exclusive.
    }

    // Cross moments were filled in the upper triangle only.
    for (int r = 0; r < 6; ++r)
        for (int c = r; c < 6; ++c) {
            const double cov = second[r][c] - m.mean[r] * m.mean[c];
            m.cov[r][c] = cov;
            m.cov[c][r] = cov;
        }
    return m;
}

}  // namespace recinet
