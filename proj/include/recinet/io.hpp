#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recinet/analysis.hpp"
#include "recinet/fit.hpp"
#include "recinet/graph.hpp"

namespace recinet {

inline constexpr int kSchemaVersion = 1;

/// Shortest round-trip decimal rendering (to_chars); used everywhere a double
/// lands in a file so repeated runs emit identical bytes.
std::string format_double(double v);

// --- graph edge lists -------------------------------------------------------
// CSV with a one-line header `src_label,dst_label,weight`, UTF-8, LF,
// decimal integer weights. Rows are written in row-major node order, so
// write(read(x)) == x byte for byte.

WeightedDigraph read_graph_csv(const std::string& path);
void write_graph_csv(const WeightedDigraph& g, const std::string& path);

// --- transactions ------------------------------------------------------------

struct TransactionRecord {
    std::string date;  // ISO-8601 day
    std::optional<std::int64_t> seconds_of_day;
    std::string lender;
    std::string borrower;
    std::int64_t amount = 0;  // minor currency units, >= 1
};

enum class PeriodGranularity { Quarter, Month, Year };

PeriodGranularity granularity_from_name(const std::string& name);

/// Period key of an ISO date: 2008-07-15 -> "2008Q3" / "2008-07" / "2008".
std::string period_key(const std::string& iso_date, PeriodGranularity granularity);

struct IngestOptions {
    PeriodGranularity granularity = PeriodGranularity::Quarter;
    bool strict = false;  // strict: malformed rows abort; otherwise skipped with a note
    std::optional<std::string> start_date;  // inclusive ISO bounds
    std::optional<std::string> end_date;
    std::int64_t min_amount = 1;
};

struct IngestResult {
    /// Period-keyed graphs in ascending period order. Node set per period =
    /// labels active in that period, sorted, so ingestion is order-independent.
    std::vector<std::pair<std::string, WeightedDigraph>> graphs;
    std::vector<std::string> skipped;  // one note per rejected row, with line number
    std::int64_t rows_used = 0;
};

/// Columns are located by header name: date, lender, borrower, amount are
/// required; time is optional; anything else (rate, maturity, ...) is ignored.
IngestResult ingest_transactions_csv(std::istream& in, const IngestOptions& options);
IngestResult ingest_transactions_file(const std::string& path, const IngestOptions& options);

/// Aggregates parsed records into per-period graphs (w_ij = summed amounts).
IngestResult aggregate_transactions(const std::vector<TransactionRecord>& records, const IngestOptions& options);

// --- parameter files ---------------------------------------------------------

struct ParamsFile {
    ParamSet params;
    std::vector<std::string> labels;
    FitReport fit;
    NodeConstraints targets;
    double tolerance = 1e-4;
};

void write_params_json(const ParamsFile& pf, const std::string& path);
ParamsFile read_params_json(const std::string& path);

// --- reports ------------------------------------------------------------------

void write_period_report_json(const PeriodReport& report, const AnalysisConfig& config, const std::string& path);

/// Long-format CSV: period,model,statistic,empirical,mean,std,p2_5,p97_5,z
/// (one row per tracked statistic and model; absent values stay empty, the
/// infinite-deviation sentinel prints as inf/-inf).
void write_report_csv(const std::vector<PeriodReport>& reports, const std::string& path);

/// Motif-only view of the same z-scores: model,period,motif_id,variant,z.
void write_motif_zscore_csv(const std::vector<PeriodReport>& reports, const std::string& path);

/// Flat per-sample spill: sample_index,statistic,value.
void write_sample_stats_csv(const std::vector<std::pair<std::string, WeightedDigraph>>& samples,
                            const std::string& path);

// --- misc ---------------------------------------------------------------------

std::string render_global_stats_json(const WeightedDigraph& g);
void write_global_stats_json(const WeightedDigraph& g, const std::string& path);
void write_block_stats_json(const BlockStats& blocks, const std::string& path);
void write_bipartition_json(const WeightedDigraph& g, const Bipartition& part, const std::string& path);
void write_motifs_csv(const MotifVector& mv, const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace recinet
