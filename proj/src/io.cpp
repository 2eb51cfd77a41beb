#include "recinet/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace recinet {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

std::int64_t parse_int(const std::string& s, const char* what) {
    std::int64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::runtime_error(std::string("invalid ") + what + ": '" + s + "'");
    return v;
}

bool valid_iso_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (s[i] < '0' || s[i] > '9') return false;
    const int month = (s[5] - '0') * 10 + (s[6] - '0');
    const int day = (s[8] - '0') * 10 + (s[9] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

std::string label_or_index(const WeightedDigraph& g, int i, int width) {
    if (g.has_labels()) return g.labels()[static_cast<std::size_t>(i)];
    char buf[32];
    std::snprintf(buf, sizeof(buf), "node_%0*d", std::min(width, 10), i);
    return buf;
}

}  // namespace

WeightedDigraph read_graph_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty graph file: " + path);
    {
        const auto header = split_csv_line(line);
        if (header.size() != 3 || header[0] != "src_label" || header[1] != "dst_label" || header[2] != "weight")
            throw std::runtime_error("graph file must start with header src_label,dst_label,weight: " + path);
    }

    struct Row {
        std::string src, dst;
        std::int64_t w;
    };
    std::vector<Row> rows;
    std::set<std::string> labels;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 3)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 3 fields");
        const std::int64_t w = parse_int(f[2], "weight");
        if (w < 0) throw std::runtime_error(path + ":" + std::to_string(lineno) + ": negative weight");
        if (f[0] == f[1] && w != 0)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": self-loop");
        labels.insert(f[0]);
        labels.insert(f[1]);
        rows.push_back({f[0], f[1], w});
    }
    if (labels.empty()) throw std::runtime_error("graph file has no rows: " + path);

    std::vector<std::string> sorted(labels.begin(), labels.end());
    std::map<std::string, int> index;
    for (int i = 0; i < static_cast<int>(sorted.size()); ++i) index[sorted[i]] = i;
    WeightedDigraph g(static_cast<int>(sorted.size()), sorted);
    for (const Row& r : rows)
        if (r.w > 0) g.add_weight(index[r.src], index[r.dst], r.w);
    return g;
}

void write_graph_csv(const WeightedDigraph& g, const std::string& path) {
    const int n = g.node_count();
    int width = 1;
    for (int v = n - 1; v >= 10; v /= 10) ++width;
    std::ostringstream out;
    out << "src_label,dst_label,weight\n";
    std::vector<char> appears(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && g.weight(i, j) > 0) {
                out << label_or_index(g, i, width) << ',' << label_or_index(g, j, width) << ','
                    << g.weight(i, j) << '\n';
                appears[i] = appears[j] = 1;
            }
    // Nodes without any link are declared by a zero-weight row so the node
    // set survives a round trip.
    for (int i = 0; i < n; ++i)
        if (!appears[i]) {
            const std::string l = label_or_index(g, i, width);
            out << l << ',' << l << ",0\n";
        }
    write_text_file(path, out.str());
}

PeriodGranularity granularity_from_name(const std::string& name) {
    if (name == "quarter" || name == "quarterly") return PeriodGranularity::Quarter;
    if (name == "month" || name == "monthly") return PeriodGranularity::Month;
    if (name == "year" || name == "yearly") return PeriodGranularity::Year;
    throw std::invalid_argument("unknown aggregation period: " + name + " (use quarter, month or year)");
}

std::string period_key(const std::string& iso_date, PeriodGranularity granularity) {
    if (!valid_iso_date(iso_date)) throw std::runtime_error("invalid ISO date: '" + iso_date + "'");
    const std::string year = iso_date.substr(0, 4);
    const int month = (iso_date[5] - '0') * 10 + (iso_date[6] - '0');
    switch (granularity) {
        case PeriodGranularity::Quarter: return year + "Q" + std::to_string((month - 1) / 3 + 1);
        case PeriodGranularity::Month: return iso_date.substr(0, 7);
        case PeriodGranularity::Year: return year;
    }
    throw std::logic_error("unknown granularity");
}

IngestResult aggregate_transactions(const std::vector<TransactionRecord>& records, const IngestOptions& options) {
    IngestResult result;
    std::map<std::string, std::map<std::pair<std::string, std::string>, std::int64_t>> periods;
    for (const TransactionRecord& r : records) {
        periods[period_key(r.date, options.granularity)][{r.lender, r.borrower}] += r.amount;
        ++result.rows_used;
    }
    for (const auto& [period, edges] : periods) {
        std::set<std::string> labels;
        for (const auto& [pair, w] : edges) {
            labels.insert(pair.first);
            labels.insert(pair.second);
        }
        std::vector<std::string> sorted(labels.begin(), labels.end());
        std::map<std::string, int> index;
        for (int i = 0; i < static_cast<int>(sorted.size()); ++i) index[sorted[i]] = i;
        WeightedDigraph g(static_cast<int>(sorted.size()), sorted);
        for (const auto& [pair, w] : edges) g.set_weight(index[pair.first], index[pair.second], w);
        result.graphs.emplace_back(period, std::move(g));
    }
    return result;
}

IngestResult ingest_transactions_csv(std::istream& in, const IngestOptions& options) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("transactions file is empty");
    const auto header = split_csv_line(line);
    auto column = [&](const std::string& name) -> int {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        return -1;
    };
    const int col_date = column("date");
    const int col_time = column("time");
    const int col_lender = column("lender");
    const int col_borrower = column("borrower");
    const int col_amount = column("amount");
    if (col_date < 0 || col_lender < 0 || col_borrower < 0 || col_amount < 0)
        throw std::runtime_error("transactions header must name date, lender, borrower and amount columns");

    std::vector<TransactionRecord> records;
    IngestResult errors;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        auto reject = [&](const std::string& why) {
            if (options.strict)
                throw std::runtime_error("line " + std::to_string(lineno) + ": " + why);
            errors.skipped.push_back("line " + std::to_string(lineno) + ": " + why);
        };
        const int needed = std::max({col_date, col_lender, col_borrower, col_amount, col_time});
        if (static_cast<int>(f.size()) <= needed) {
            reject("too few fields");
            continue;
        }
        TransactionRecord r;
        r.date = f[static_cast<std::size_t>(col_date)];
        r.lender = f[static_cast<std::size_t>(col_lender)];
        r.borrower = f[static_cast<std::size_t>(col_borrower)];
        if (!valid_iso_date(r.date)) {
            reject("invalid date '" + r.date + "'");
            continue;
        }
        if (r.lender.empty() || r.borrower.empty()) {
            reject("empty counterparty id");
            continue;
        }
        if (r.lender == r.borrower) {
            reject("self-loop (lender equals borrower)");
            continue;
        }
        try {
            r.amount = parse_int(f[static_cast<std::size_t>(col_amount)], "amount");
            if (col_time >= 0 && !f[static_cast<std::size_t>(col_time)].empty())
                r.seconds_of_day = parse_int(f[static_cast<std::size_t>(col_time)], "time");
        } catch (const std::exception& e) {
            reject(e.what());
            continue;
        }
        if (r.amount < 1) {
            reject("amount must be >= 1");
            continue;
        }
        // Filter flags drop rows silently; they are not errors.
        if (r.amount < options.min_amount) continue;
        if (options.start_date && r.date < *options.start_date) continue;
        if (options.end_date && r.date > *options.end_date) continue;
        records.push_back(std::move(r));
    }

    IngestResult result = aggregate_transactions(records, options);
    result.skipped = std::move(errors.skipped);
    return result;
}

IngestResult ingest_transactions_file(const std::string& path, const IngestOptions& options) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open transactions file: " + path);
    return ingest_transactions_csv(in, options);
}

namespace {

ordered_json vec_json(const std::vector<double>& v) {
    ordered_json arr = ordered_json::array();
    for (double x : v) arr.push_back(x);
    return arr;
}

std::vector<double> json_vec(const ordered_json& j) {
    std::vector<double> v;
    for (const auto& x : j) v.push_back(x.get<double>());
    return v;
}

ordered_json constraints_json(const NodeConstraints& c) {
    ordered_json j;
    if (!c.d_out.empty()) j["d_out"] = vec_json(c.d_out);
    if (!c.d_in.empty()) j["d_in"] = vec_json(c.d_in);
    if (!c.d_rec.empty()) j["d_rec"] = vec_json(c.d_rec);
    if (!c.s_out.empty()) j["s_out"] = vec_json(c.s_out);
    if (!c.s_in.empty()) j["s_in"] = vec_json(c.s_in);
    if (!c.s_rec.empty()) j["s_rec"] = vec_json(c.s_rec);
    return j;
}

NodeConstraints constraints_from_json(const ordered_json& j, ModelKind model, int n) {
    NodeConstraints c;
    c.model = model;
    c.n = n;
    if (j.contains("d_out")) c.d_out = json_vec(j["d_out"]);
    if (j.contains("d_in")) c.d_in = json_vec(j["d_in"]);
    if (j.contains("d_rec")) c.d_rec = json_vec(j["d_rec"]);
    if (j.contains("s_out")) c.s_out = json_vec(j["s_out"]);
    if (j.contains("s_in")) c.s_in = json_vec(j["s_in"]);
    if (j.contains("s_rec")) c.s_rec = json_vec(j["s_rec"]);
    return c;
}

}  // namespace

void write_params_json(const ParamsFile& pf, const std::string& path) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["model"] = model_name(pf.params.model);
    j["n"] = pf.params.n;
    if (!pf.labels.empty()) j["labels"] = pf.labels;
    ordered_json mult;
    if (!pf.params.k_out.empty()) mult["k_out"] = vec_json(pf.params.k_out);
    if (!pf.params.k_in.empty()) mult["k_in"] = vec_json(pf.params.k_in);
    if (!pf.params.k_rec.empty()) mult["k_rec"] = vec_json(pf.params.k_rec);
    mult["l_out"] = vec_json(pf.params.l_out);
    mult["l_in"] = vec_json(pf.params.l_in);
    if (!pf.params.l_rec.empty()) mult["l_rec"] = vec_json(pf.params.l_rec);
    j["multipliers"] = std::move(mult);
    ordered_json fitj;
    fitj["converged"] = pf.fit.converged;
    fitj["iterations"] = pf.fit.iterations;
    fitj["residual_sup_norm"] = pf.fit.residual_sup_norm;
    fitj["tolerance"] = pf.tolerance;
    fitj["message"] = pf.fit.message;
    j["fit"] = std::move(fitj);
    j["targets"] = constraints_json(pf.targets);
    j["residuals"] = constraints_json(pf.fit.residuals);
    write_text_file(path, j.dump(2) + "\n");
}

ParamsFile read_params_json(const std::string& path) {
    const ordered_json j = ordered_json::parse(read_text_file(path));
    if (j.at("schema_version").get<int>() != kSchemaVersion)
        throw std::runtime_error("unsupported schema_version in " + path);
    ParamsFile pf;
    const ModelKind model = model_from_name(j.at("model").get<std::string>());
    const int n = j.at("n").get<int>();
    pf.params.model = model;
    pf.params.n = n;
    const auto& mult = j.at("multipliers");
    if (mult.contains("k_out")) pf.params.k_out = json_vec(mult["k_out"]);
    if (mult.contains("k_in")) pf.params.k_in = json_vec(mult["k_in"]);
    if (mult.contains("k_rec")) pf.params.k_rec = json_vec(mult["k_rec"]);
    pf.params.l_out = json_vec(mult.at("l_out"));
    pf.params.l_in = json_vec(mult.at("l_in"));
    if (mult.contains("l_rec")) pf.params.l_rec = json_vec(mult["l_rec"]);
    if (j.contains("labels")) pf.labels = j["labels"].get<std::vector<std::string>>();
    if (j.contains("fit")) {
        pf.fit.converged = j["fit"].value("converged", false);
        pf.fit.iterations = j["fit"].value("iterations", 0);
        pf.fit.residual_sup_norm = j["fit"].value("residual_sup_norm", 0.0);
        pf.tolerance = j["fit"].value("tolerance", 1e-4);
        pf.fit.message = j["fit"].value("message", std::string());
    }
    if (j.contains("targets")) pf.targets = constraints_from_json(j["targets"], model, n);
    if (j.contains("residuals")) pf.fit.residuals = constraints_from_json(j["residuals"], model, n);
    pf.fit.params = pf.params;
    pf.params.validate();
    return pf;
}

namespace {

ordered_json opt_json(const std::optional<double>& v) {
    if (!v) return nullptr;
    return *v;
}

const char* z_status_name(ZStatus s) {
    switch (s) {
        case ZStatus::Ok: return "ok";
        case ZStatus::Undefined: return "undefined";
        case ZStatus::Degenerate: return "degenerate";
    }
    return "undefined";
}

ordered_json stat_report_json(const StatReport& sr) {
    ordered_json j;
    j["name"] = sr.name;
    j["empirical"] = opt_json(sr.empirical);
    j["count"] = sr.dist.count;
    j["mean"] = sr.dist.mean;
    j["std"] = sr.dist.std_dev;
    j["p2_5"] = opt_json(sr.dist.p2_5);
    j["p97_5"] = opt_json(sr.dist.p97_5);
    j["z"] = sr.z.status == ZStatus::Ok ? ordered_json(sr.z.value) : ordered_json(nullptr);
    j["z_status"] = z_status_name(sr.z.status);
    j["significant"] = sr.significant;
    return j;
}

ordered_json global_stats_json(const GlobalStats& gs) {
    ordered_json j;
    j["nodes"] = gs.nodes;
    j["links"] = gs.links;
    j["possible_links"] = gs.possible_links;
    j["density"] = opt_json(gs.density);
    j["volume"] = gs.volume;
    j["weighted_density"] = opt_json(gs.weighted_density);
    j["rec_links"] = gs.rec_links;
    j["reciprocity_ratio"] = opt_json(gs.reciprocity_ratio);
    j["rec_volume"] = gs.rec_volume;
    j["avg_rec_weight"] = opt_json(gs.avg_rec_weight);
    return j;
}

ordered_json block_entry_json(const BlockEntry& e) {
    ordered_json j;
    j["links"] = e.links;
    j["max_links"] = e.max_links;
    j["density"] = opt_json(e.density);
    j["volume"] = e.volume;
    j["volume_per_link"] = opt_json(e.volume_per_link);
    return j;
}

ordered_json blocks_json(const BlockStats& bs) {
    ordered_json j;
    j["cc"] = block_entry_json(bs.cc);
    j["cp"] = block_entry_json(bs.cp);
    j["pc"] = block_entry_json(bs.pc);
    j["pp"] = block_entry_json(bs.pp);
    ordered_json rec;
    rec["cc_rec_links"] = bs.cc_rec_links;
    rec["cc_rec_volume"] = bs.cc_rec_volume;
    rec["pp_rec_links"] = bs.pp_rec_links;
    rec["pp_rec_volume"] = bs.pp_rec_volume;
    rec["cross_rec_links"] = bs.cross_rec_links;
    rec["cross_rec_volume"] = bs.cross_rec_volume;
    rec["cc_reciprocity_ratio"] = opt_json(bs.cc_reciprocity_ratio);
    rec["pp_reciprocity_ratio"] = opt_json(bs.pp_reciprocity_ratio);
    j["reciprocity"] = std::move(rec);
    return j;
}

}  // namespace

void write_period_report_json(const PeriodReport& report, const AnalysisConfig& config, const std::string& path) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["period"] = report.period;
    j["nodes"] = report.nodes;
    if (!report.labels.empty()) j["labels"] = report.labels;
    ordered_json emp;
    emp["global"] = global_stats_json(report.global);
    ordered_json node_summary = ordered_json::array();
    for (std::size_t i = 0; i < report.node_summary.size(); ++i) {
        const NodeStats& s = report.node_summary[i];
        ordered_json nj;
        nj["label"] = report.labels.empty() ? std::to_string(i) : report.labels[i];
        nj["d_out"] = s.d_out;
        nj["d_in"] = s.d_in;
        nj["d_rec"] = s.d_rec;
        nj["s_out"] = s.s_out;
        nj["s_in"] = s.s_in;
        nj["s_rec"] = s.s_rec;
        node_summary.push_back(std::move(nj));
    }
    emp["node_stats"] = std::move(node_summary);
    if (report.core) {
        ordered_json core;
        core["size"] = report.core->core.size();
        core["error"] = report.core->error;
        std::vector<std::string> members;
        for (int v : report.core->core)
            members.push_back(report.labels.empty() ? std::to_string(v)
                                                    : report.labels[static_cast<std::size_t>(v)]);
        core["members"] = members;
        emp["core"] = std::move(core);
        emp["blocks"] = blocks_json(report.blocks);
    } else {
        emp["core"] = nullptr;
    }
    ordered_json motifs;
    motifs["unweighted"] = report.motifs.unweighted;
    motifs["weighted"] = report.motifs.weighted;
    emp["motifs"] = std::move(motifs);
    j["empirical"] = std::move(emp);

    ordered_json models;
    for (const ModelReport& mr : report.models) {
        ordered_json m;
        ordered_json fitj;
        fitj["converged"] = mr.fit_converged;
        fitj["iterations"] = mr.fit_iterations;
        fitj["residual_sup_norm"] = mr.fit_residual;
        fitj["message"] = mr.fit_message;
        m["fit"] = std::move(fitj);
        ordered_json stats = ordered_json::array();
        for (const StatReport& sr : mr.stats) stats.push_back(stat_report_json(sr));
        m["statistics"] = std::move(stats);
        models[model_name(mr.model)] = std::move(m);
    }
    j["models"] = std::move(models);

    ordered_json cfg;
    cfg["samples"] = config.samples;
    cfg["seed"] = config.seed;
    cfg["tolerance"] = config.tolerance;
    cfg["significance"] = config.significance;
    cfg["redetect_core_per_sample"] = config.redetect_core_per_sample;
    j["config"] = std::move(cfg);
    write_text_file(path, j.dump(2) + "\n");
}

void write_report_csv(const std::vector<PeriodReport>& reports, const std::string& path) {
    std::ostringstream out;
    out << "period,model,statistic,empirical,mean,std,p2_5,p97_5,z\n";
    auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
    for (const PeriodReport& pr : reports) {
        for (const ModelReport& mr : pr.models) {
            for (const StatReport& sr : mr.stats) {
                out << pr.period << ',' << model_name(mr.model) << ',' << sr.name << ','
                    << opt(sr.empirical) << ',';
                if (sr.dist.count > 0)
                    out << format_double(sr.dist.mean) << ',' << format_double(sr.dist.std_dev);
                else
                    out << ',';
                out << ',' << opt(sr.dist.p2_5) << ',' << opt(sr.dist.p97_5) << ',';
                if (sr.z.status != ZStatus::Undefined) out << format_double(sr.z.value);
                out << '\n';
            }
        }
    }
    write_text_file(path, out.str());
}

void write_motif_zscore_csv(const std::vector<PeriodReport>& reports, const std::string& path) {
    std::ostringstream out;
    out << "model,period,motif_id,variant,z\n";
    for (const PeriodReport& pr : reports) {
        for (const ModelReport& mr : pr.models) {
            for (const StatReport& sr : mr.stats) {
                const bool unweighted = sr.name.rfind("motif_u_", 0) == 0;
                const bool weighted = sr.name.rfind("motif_w_", 0) == 0;
                if (!unweighted && !weighted) continue;
                out << model_name(mr.model) << ',' << pr.period << ','
                    << std::stoi(sr.name.substr(8)) << ',' << (unweighted ? "unweighted" : "weighted")
                    << ',';
                if (sr.z.status != ZStatus::Undefined) out << format_double(sr.z.value);
                out << '\n';
            }
        }
    }
    write_text_file(path, out.str());
}

void write_block_stats_json(const BlockStats& blocks, const std::string& path) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["blocks"] = blocks_json(blocks);
    write_text_file(path, j.dump(2) + "\n");
}

void write_sample_stats_csv(const std::vector<std::pair<std::string, WeightedDigraph>>& samples,
                            const std::string& path) {
    std::ostringstream out;
    out << "sample_index,statistic,value\n";
    for (const auto& [index, g] : samples) {
        for (const auto& [name, value] : tracked_statistics(g, std::nullopt, true))
            if (value) out << index << ',' << name << ',' << format_double(*value) << '\n';
    }
    write_text_file(path, out.str());
}

std::string render_global_stats_json(const WeightedDigraph& g) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["global"] = global_stats_json(global_stats(g));
    ordered_json nodes = ordered_json::array();
    const auto stats = node_stats(g);
    for (int i = 0; i < g.node_count(); ++i) {
        const NodeStats& s = stats[static_cast<std::size_t>(i)];
        ordered_json nj;
        nj["label"] = g.label_of(i);
        nj["d_out"] = s.d_out;
        nj["d_in"] = s.d_in;
        nj["d_total"] = s.d_total;
        nj["d_out_nonrec"] = s.d_out_nonrec;
        nj["d_in_nonrec"] = s.d_in_nonrec;
        nj["d_rec"] = s.d_rec;
        nj["s_out"] = s.s_out;
        nj["s_in"] = s.s_in;
        nj["s_out_nonrec"] = s.s_out_nonrec;
        nj["s_in_nonrec"] = s.s_in_nonrec;
        nj["s_rec"] = s.s_rec;
        nodes.push_back(std::move(nj));
    }
    j["nodes"] = std::move(nodes);
    return j.dump(2) + "\n";
}

void write_global_stats_json(const WeightedDigraph& g, const std::string& path) {
    write_text_file(path, render_global_stats_json(g));
}

void write_bipartition_json(const WeightedDigraph& g, const Bipartition& part, const std::string& path) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["core_size"] = part.core.size();
    j["error"] = part.error;
    std::vector<std::string> members;
    for (int v : part.core) members.push_back(g.label_of(v));
    j["core"] = members;
    write_text_file(path, j.dump(2) + "\n");
}

void write_motifs_csv(const MotifVector& mv, const std::string& path) {
    std::ostringstream out;
    out << "motif_id,unweighted,weighted\n";
    for (int m = 0; m < 13; ++m)
        out << (m + 1) << ',' << mv.unweighted[m] << ',' << format_double(mv.weighted[m]) << '\n';
    write_text_file(path, out.str());
}

}  // namespace recinet
