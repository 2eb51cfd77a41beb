#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "recinet/analysis.hpp"
#include "recinet/coreperiphery.hpp"
#include "recinet/fit.hpp"
#include "recinet/io.hpp"
#include "recinet/motifs.hpp"
#include "recinet/sampler.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace recinet;

namespace {

std::string default_output_dir() {
    if (const char* env = std::getenv("RECINET_OUTPUT_DIR")) return env;
    return ".";
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir + ": " + ec.message());
}

std::string sample_file_name(int index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "sample_%06d.csv", index);
    return buf;
}

std::vector<ModelKind> parse_models(const std::string& list) {
    std::vector<ModelKind> models;
    std::string cur;
    for (char c : list + ",") {
        if (c == ',') {
            if (!cur.empty()) models.push_back(model_from_name(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (models.empty()) throw std::invalid_argument("no models requested");
    return models;
}

std::vector<std::pair<std::string, WeightedDigraph>> load_graph_dir(const std::string& dir) {
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    std::vector<std::pair<std::string, WeightedDigraph>> graphs;
    for (const std::string& f : files) graphs.emplace_back(fs::path(f).stem().string(), read_graph_csv(f));
    if (graphs.empty()) throw std::runtime_error("no .csv graph files found in " + dir);
    return graphs;
}

int run(int argc, char** argv) {
    CLI::App app{"maximum-entropy null models for directed weighted networks with reciprocity"};
    app.require_subcommand(1);

    // ingest ------------------------------------------------------------
    auto* ingest = app.add_subcommand("ingest", "aggregate a transaction log into per-period graphs");
    std::string tx_path, ingest_period = "quarter", ingest_out = default_output_dir();
    IngestOptions iopt;
    std::string start_date, end_date;
    ingest->add_option("--transactions", tx_path, "transactions CSV (date,lender,borrower,amount[,time,...])")
        ->required();
    ingest->add_option("--period", ingest_period, "aggregation period: quarter, month or year");
    ingest->add_option("--output-dir", ingest_out, "output directory");
    ingest->add_flag("--strict", iopt.strict, "abort on the first malformed row instead of skipping");
    ingest->add_option("--start-date", start_date, "keep only rows on or after this ISO date");
    ingest->add_option("--end-date", end_date, "keep only rows on or before this ISO date");
    ingest->add_option("--min-amount", iopt.min_amount, "drop rows below this amount");

    // fit ---------------------------------------------------------------
    auto* fit_cmd = app.add_subcommand("fit", "estimate model multipliers for one graph");
    std::string fit_graph, fit_model = "recm", fit_out;
    FitOptions fopt;
    fit_cmd->add_option("--graph", fit_graph, "graph CSV")->required();
    fit_cmd->add_option("--model", fit_model, "decm, rwcm or recm");
    fit_cmd->add_option("--tol", fopt.tolerance, "residual sup-norm tolerance");
    fit_cmd->add_option("--max-iter", fopt.max_iterations, "iteration cap");
    fit_cmd->add_option("--output", fit_out, "params JSON path")->required();

    // sample ------------------------------------------------------------
    auto* sample_cmd = app.add_subcommand("sample", "draw graphs from a fitted ensemble");
    std::string sample_params, sample_out = default_output_dir(), sample_stats_csv;
    int sample_count = 1000;
    std::uint64_t sample_seed = 0;
    bool no_graph_files = false;
    sample_cmd->add_option("--params", sample_params, "params JSON from `fit`")->required();
    sample_cmd->add_option("--samples", sample_count, "number of graphs to draw");
    sample_cmd->add_option("--seed", sample_seed, "master seed");
    sample_cmd->add_option("--output-dir", sample_out, "directory for sample_XXXXXX.csv files");
    sample_cmd->add_option("--stats-csv", sample_stats_csv, "also spill per-sample statistics to this CSV");
    sample_cmd->add_flag("--no-graph-files", no_graph_files, "skip writing per-sample graph files");

    // stats ---------------------------------------------------------------
    auto* stats_cmd = app.add_subcommand("stats", "global and per-node statistics of a graph");
    std::string stats_graph, stats_out;
    stats_cmd->add_option("--graph", stats_graph, "graph CSV")->required();
    stats_cmd->add_option("--output", stats_out, "JSON output path (stdout when omitted)");

    // coreperiphery -------------------------------------------------------
    auto* cp_cmd = app.add_subcommand("coreperiphery", "detect the error-minimizing core");
    std::string cp_graph, cp_out, cp_blocks;
    bool cp_refine = false;
    cp_cmd->add_option("--graph", cp_graph, "graph CSV")->required();
    cp_cmd->add_flag("--refine", cp_refine, "greedy single-swap refinement after detection");
    cp_cmd->add_option("--output", cp_out, "bipartition JSON path (stdout when omitted)");
    cp_cmd->add_option("--blocks", cp_blocks, "also write 2x2 block statistics JSON here");

    // motifs ----------------------------------------------------------------
    auto* motifs_cmd = app.add_subcommand("motifs", "13-motif triadic census");
    std::string motifs_graph, motifs_out;
    motifs_cmd->add_option("--graph", motifs_graph, "graph CSV")->required();
    motifs_cmd->add_option("--output", motifs_out, "CSV output path (stdout when omitted)");

    // report -----------------------------------------------------------------
    auto* report_cmd = app.add_subcommand("report", "full pipeline: fit, sample, z-score every period");
    std::string report_dir, report_out = default_output_dir(), report_models = "decm,rwcm,recm";
    AnalysisConfig cfg;
    report_cmd->add_option("--graphs-dir", report_dir, "directory of per-period graph CSVs")->required();
    report_cmd->add_option("--models", report_models, "comma-separated model list");
    report_cmd->add_option("--samples", cfg.samples, "ensemble size per model");
    report_cmd->add_option("--seed", cfg.seed, "master seed");
    report_cmd->add_option("--tol", cfg.tolerance, "fit tolerance");
    report_cmd->add_option("--max-iter", cfg.max_iterations, "fit iteration cap");
    report_cmd->add_option("--significance", cfg.significance, "|z| significance bound");
    report_cmd->add_option("--percentile-lo", cfg.percentile_lo, "lower interval percentile");
    report_cmd->add_option("--percentile-hi", cfg.percentile_hi, "upper interval percentile");
    report_cmd->add_option("--threads", cfg.threads, "sampling worker threads");
    report_cmd->add_option("--output-dir", report_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    if (*ingest) {
        iopt.granularity = granularity_from_name(ingest_period);
        if (!start_date.empty()) iopt.start_date = start_date;
        if (!end_date.empty()) iopt.end_date = end_date;
        const IngestResult result = ingest_transactions_file(tx_path, iopt);
        ensure_dir(ingest_out);
        ordered_json index;
        index["schema_version"] = kSchemaVersion;
        index["rows_used"] = result.rows_used;
        index["rows_skipped"] = result.skipped.size();
        ordered_json periods = ordered_json::array();
        for (const auto& [period, graph] : result.graphs) {
            const std::string file = period + ".csv";
            write_graph_csv(graph, ingest_out + "/" + file);
            ordered_json p;
            p["period"] = period;
            p["file"] = file;
            p["nodes"] = graph.node_count();
            periods.push_back(std::move(p));
        }
        index["periods"] = std::move(periods);
        if (!result.skipped.empty()) index["skipped"] = result.skipped;
        write_text_file(ingest_out + "/periods.json", index.dump(2) + "\n");
        std::cout << "wrote " << result.graphs.size() << " period graph(s) to " << ingest_out << " ("
                  << result.rows_used << " rows used, " << result.skipped.size() << " skipped)\n";
        return 0;
    }

    if (*fit_cmd) {
        const WeightedDigraph g = read_graph_csv(fit_graph);
        ParamsFile pf;
        pf.targets = constraints_from_graph(g, model_from_name(fit_model));
        pf.labels = g.labels();
        pf.tolerance = fopt.tolerance;
        pf.fit = fit(pf.targets, fopt);
        pf.params = pf.fit.params;
        write_params_json(pf, fit_out);
        std::cout << model_name(pf.params.model) << " fit: " << pf.fit.message
                  << " (iterations=" << pf.fit.iterations
                  << ", residual=" << format_double(pf.fit.residual_sup_norm) << ")\n";
        if (!pf.fit.converged) {
            ordered_json err;
            err["error"] = {{"message", "fit did not reach tolerance"},
                            {"residual_sup_norm", pf.fit.residual_sup_norm}};
            std::cerr << err.dump() << "\n";
            return 3;
        }
        return 0;
    }

    if (*sample_cmd) {
        const ParamsFile pf = read_params_json(sample_params);
        if (sample_count < 1) throw std::runtime_error("--samples must be >= 1");
        ensure_dir(sample_out);
        std::vector<std::pair<std::string, WeightedDigraph>> stat_rows;
        for (int s = 0; s < sample_count; ++s) {
            WeightedDigraph g = sample_graph(pf.params, sample_seed, static_cast<std::uint64_t>(s));
            if (!pf.labels.empty()) g.set_labels(pf.labels);
            if (!no_graph_files) write_graph_csv(g, sample_out + "/" + sample_file_name(s));
            if (!sample_stats_csv.empty()) stat_rows.emplace_back(std::to_string(s), std::move(g));
        }
        if (!sample_stats_csv.empty()) write_sample_stats_csv(stat_rows, sample_stats_csv);
        std::cout << "drew " << sample_count << " " << model_name(pf.params.model) << " sample(s) (seed "
                  << sample_seed << ")\n";
        return 0;
    }

    if (*stats_cmd) {
        const WeightedDigraph g = read_graph_csv(stats_graph);
        if (stats_out.empty())
            std::cout << render_global_stats_json(g);
        else
            write_global_stats_json(g, stats_out);
        return 0;
    }

    if (*cp_cmd) {
        const WeightedDigraph g = read_graph_csv(cp_graph);
        Bipartition part = detect_core_sorted(g);
        if (cp_refine) part = refine_greedy(g, part);
        if (cp_out.empty()) {
            std::cout << "core size " << part.core.size() << ", error " << format_double(part.error) << "\n";
        } else {
            write_bipartition_json(g, part, cp_out);
        }
        if (!cp_blocks.empty()) write_block_stats_json(block_stats(g, part), cp_blocks);
        return 0;
    }

    if (*motifs_cmd) {
        const WeightedDigraph g = read_graph_csv(motifs_graph);
        const MotifVector mv = motif_census(g);
        if (motifs_out.empty()) {
            std::cout << "motif_id,unweighted,weighted\n";
            for (int m = 0; m < 13; ++m)
                std::cout << (m + 1) << ',' << mv.unweighted[m] << ',' << format_double(mv.weighted[m])
                          << '\n';
        } else {
            write_motifs_csv(mv, motifs_out);
        }
        return 0;
    }

    if (*report_cmd) {
        cfg.models = parse_models(report_models);
        cfg.validate();
        const auto graphs = load_graph_dir(report_dir);
        ensure_dir(report_out);
        const std::vector<PeriodReport> reports = run_pipeline(graphs, cfg);
        for (const PeriodReport& pr : reports)
            write_period_report_json(pr, cfg, report_out + "/report_" + pr.period + ".json");
        write_report_csv(reports, report_out + "/report.csv");
        write_motif_zscore_csv(reports, report_out + "/motif_zscores.csv");
        std::cout << "wrote " << reports.size() << " period report(s) to " << report_out << "\n";
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        ordered_json err;
        err["error"] = {{"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
}
