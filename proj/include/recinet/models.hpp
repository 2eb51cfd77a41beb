#pragma once

#include <array>
#include <string>
#include <vector>

#include "recinet/graph.hpp"

namespace recinet {

/// The three maximum-entropy ensembles over directed integer-weighted graphs.
///
/// DECM preserves per-node out/in-degrees and out/in-strengths (4n params).
/// RWCM preserves per-node non-reciprocated out/in-strengths and the
/// reciprocated strength (3n params). RECM preserves the full reciprocity
/// split of both degrees and strengths (6n params) and nests the RWCM when
/// all k-multipliers equal 1.
enum class ModelKind { DECM, RWCM, RECM };

std::string model_name(ModelKind model);
ModelKind model_from_name(const std::string& name);

/// Number of Lagrange multipliers: 4n (DECM), 3n (RWCM), 6n (RECM).
std::int64_t param_count(ModelKind model, int n);

/// Per-node target statistics for a model. Vector semantics per model:
///   DECM: d_out = d^=>, d_in = d^<=, s_out = s^=>, s_in = s^<= (d_rec/s_rec unused)
///   RWCM: s_out = s^->, s_in = s^<-, s_rec = s^<-> (degree vectors unused)
///   RECM: d_out = d^->, d_in = d^<-, d_rec = d^<->, and the matching strengths
struct NodeConstraints {
    ModelKind model = ModelKind::RECM;
    int n = 0;
    std::vector<double> d_out, d_in, d_rec;
    std::vector<double> s_out, s_in, s_rec;

    /// Throws std::invalid_argument when the targets cannot come from any
    /// graph (negative values, s below paired d, strength without a link,
    /// mismatched one-way bookkeeping sums).
    void validate() const;
};

NodeConstraints constraints_from_graph(const WeightedDigraph& g, ModelKind model);

/// Exponentiated Lagrange multipliers, every entry in [0, infinity) with the
/// additional requirement that every pairwise l-product stays below 1.
/// A value of exactly 0 marks a pinned channel (the corresponding targets are
/// zero, so the link probability is exactly zero and the parameter is excluded
/// from fitting). Vector semantics mirror NodeConstraints.
struct ParamSet {
    ModelKind model = ModelKind::RECM;
    int n = 0;
    std::vector<double> k_out, k_in, k_rec;
    std::vector<double> l_out, l_in, l_rec;

    static ParamSet uniform(ModelKind model, int n, double k, double l);

    /// Throws std::domain_error when a multiplier is negative/non-finite or a
    /// pairwise l-product reaches 1 (the geometric series would diverge).
    void validate() const;
};

/// The six mutually exclusive topological outcomes of one RECM dyad: empty,
/// one-way out, one-way in, and the three reciprocated variants (exactly
/// balanced, out-surplus, in-surplus). Probabilities sum to 1.
struct CaseProbabilities {
    double p_none = 0;
    double p_out = 0;
    double p_in = 0;
    double p_rec_equal = 0;
    double p_rec_out = 0;
    double p_rec_in = 0;

    double p_rec() const { return p_rec_equal + p_rec_out + p_rec_in; }
};

/// Closed-form per-dyad quantities of the RECM for the ordered pair (i,j).
/// x/y/z are the geometric weight ratios of the out-surplus, in-surplus and
/// reciprocated components; X is the dyad normalization (symmetric in i,j).
struct RecmDyad {
    double x = 0, y = 0, z = 0;
    double a = 0, b = 0, c = 0;
    double X = 0;
    CaseProbabilities p;
};

RecmDyad recm_dyad(int i, int j, const ParamSet& params);
CaseProbabilities recm_case_probabilities(int i, int j, const ParamSet& params);

/// Probability that the ordered pair (i,j) carries exactly (w_ij, w_ji).
/// For RWCM/RECM this is the probability of the whole dyad (the unordered
/// pair is the atomic unit); for DECM the dyad factorizes into two
/// independent directed edges and their product is returned.
double dyad_probability(int i, int j, Weight w_ij, Weight w_ji, const ParamSet& params);

/// Ensemble expectations of the constrained statistics, same shape as
/// NodeConstraints. O(n^2).
NodeConstraints expected_constraints(const ParamSet& params);

/// log P(G) under the model, summed over dyads.
double log_likelihood(const WeightedDigraph& g, const ParamSet& params);

/// Per-dyad first and second moments of the dyad statistic vector
/// (a_out, a_in, a_rec, w_out, w_in, w_rec) for the unordered pair (i,j).
/// Used to assemble the covariance of the constraint vector, which is the
/// Jacobian of the expectations in log-multiplier space. Entries for
/// statistics a model does not constrain are ignored by the solver.
struct DyadMoments {
    std::array<double, 6> mean{};
    std::array<std::array<double, 6>, 6> cov{};
};

DyadMoments dyad_moments(int i, int j, const ParamSet& params);

}  // namespace recinet
