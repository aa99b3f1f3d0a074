#include "ucs/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>

#include "ucs/common.hpp"
#include "ucs/rate_region.hpp"
#include "ucs/soft_cover.hpp"
#include "ucs/synthesis.hpp"

namespace fs = std::filesystem;

namespace ucs::cli {

namespace {

std::string fmt_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

nlohmann::json load_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path.string());
    nlohmann::json j;
    in >> j;
    return j;
}

// Inline object, or {"file": "relative/path.json"}.
nlohmann::json resolve_ref(const nlohmann::json& j, const fs::path& base) {
    if (j.is_object() && j.contains("file")) {
        fs::path p = j.at("file").get<std::string>();
        if (p.is_relative()) p = base / p;
        return load_json_file(p);
    }
    return j;
}

class CsvWriter {
public:
    CsvWriter(const fs::path& path, const std::vector<std::string>& header) : out_(path) {
        if (!out_) throw std::runtime_error("cannot write " + path.string());
        write_row(header);
    }
    void write_row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::vector<std::uint64_t> spec_seeds(const nlohmann::json& config,
                                      const std::optional<std::uint64_t>& override_seed) {
    if (config.contains("seeds") && !override_seed)
        return config.at("seeds").get<std::vector<std::uint64_t>>();
    const std::uint64_t master = override_seed ? *override_seed
                                               : config.value("seed", std::uint64_t{1});
    const std::size_t trials = config.value("trials", std::size_t{1});
    std::vector<std::uint64_t> seeds(trials);
    for (std::size_t i = 0; i < trials; ++i) seeds[i] = derive_seed(master, i);
    return seeds;
}

struct ProblemConfig {
    prob::JointPmf p_x1x2;
    prob::CondPmf chan_w1, chan_w2, chan_y;
    std::optional<prob::JointPmf> target;
    double delta = 0.2;
    double eta = 0.1;
};

ProblemConfig parse_problem(const nlohmann::json& j, const fs::path& base) {
    ProblemConfig cfg{
        prob::joint_from_json(resolve_ref(j.at("p_x1x2"), base)),
        prob::cond_from_json(resolve_ref(j.at("chan_w1"), base)),
        prob::cond_from_json(resolve_ref(j.at("chan_w2"), base)),
        prob::cond_from_json(resolve_ref(j.at("chan_y_given_z"), base)),
        std::nullopt,
        j.value("delta", 0.2),
        j.value("eta", 0.1),
    };
    if (j.contains("target"))
        cfg.target = prob::joint_from_json(resolve_ref(j.at("target"), base));
    return cfg;
}

synth::SynthesisProblem make_problem(const ProblemConfig& cfg, const ucc::UccParams& params) {
    if (cfg.target) {
        synth::SynthesisProblem problem(*cfg.target, cfg.chan_w1, cfg.chan_w2, cfg.chan_y,
                                        cfg.delta, cfg.eta, params);
        problem.require_admissible(1e-6);
        return problem;
    }
    return synth::SynthesisProblem::from_channels(cfg.p_x1x2, cfg.chan_w1, cfg.chan_w2,
                                                  cfg.chan_y, cfg.delta, cfg.eta, params);
}

std::vector<ucc::UccParams> parse_sweep(const nlohmann::json& config) {
    std::vector<ucc::UccParams> sweep;
    for (const auto& item : config.at("ucc_sweep")) sweep.push_back(item.get<ucc::UccParams>());
    if (sweep.empty()) throw std::invalid_argument("ucc_sweep is empty");
    return sweep;
}

nlohmann::json system_to_json(const region::LinearInequalitySystem& sys) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : sys.rows())
        rows.push_back({{"coeff", row.coeff}, {"constant", row.constant}});
    return nlohmann::json{{"vars", sys.vars()}, {"constraints", rows}};
}

// ---- synthesize ------------------------------------------------------

RunManifest run_synthesize(const ExperimentSpec& spec, const RunOptions& options,
                           RunManifest manifest) {
    const auto& config = spec.config;
    const ProblemConfig problem_cfg = parse_problem(config.at("problem"), spec.base_dir);
    const auto sweep = parse_sweep(config);
    const auto seeds = spec_seeds(config, options.seed_override);
    manifest.seeds = seeds;
    const std::size_t ambiguity_executions =
        config.value("ambiguity_executions", std::size_t{2000});
    const bool row_diagnostics = config.value("row_diagnostics", true);

    struct RowResult {
        unsigned n = 0;
        std::uint64_t seed = 0;
        double tv = std::nan("");
        double overflow1 = std::nan(""), overflow2 = std::nan(""), ambiguity = std::nan("");
        double runtime_ms = 0.0;
        std::string skip_reason;
    };
    std::vector<RowResult> rows(sweep.size() * seeds.size());

    parallel_for(options.jobs, rows.size(), [&](std::size_t slot) {
        const auto& params = sweep[slot / seeds.size()];
        const std::uint64_t seed = seeds[slot % seeds.size()];
        RowResult& row = rows[slot];
        row.n = params.n;
        row.seed = seed;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const synth::SynthesisProblem problem = make_problem(problem_cfg, params);
            const auto pair = ucc::sample_codebooks(seed, params);
            row.tv = synth::synthesis_tv(problem, pair);
            if (row_diagnostics) {
                const std::vector<std::uint64_t> one{seed};
                row.overflow1 = synth::overflow_probability(problem, params, one, 1);
                row.overflow2 = synth::overflow_probability(problem, params, one, 2);
                row.ambiguity = synth::ambiguity_probability(problem, params, one,
                                                             ambiguity_executions);
            }
        } catch (const BudgetError& e) {
            row.skip_reason = e.what();
        }
        row.runtime_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - t0).count();
    });

    const fs::path out = options.out_dir / "results.csv";
    CsvWriter csv(out, {"n", "seed", "tv", "overflow1", "overflow2", "ambiguity", "runtime_ms"});
    for (const auto& row : rows) {
        csv.write_row({std::to_string(row.n), std::to_string(row.seed), fmt_num(row.tv),
                       fmt_num(row.overflow1), fmt_num(row.overflow2), fmt_num(row.ambiguity),
                       fmt_num(row.runtime_ms)});
        if (!row.skip_reason.empty())
            manifest.skipped.push_back("n=" + std::to_string(row.n) +
                                       " seed=" + std::to_string(row.seed) + ": " +
                                       row.skip_reason);
    }
    manifest.outputs.push_back({out.string(), ""});
    if (!manifest.skipped.empty()) manifest.exit_code = 3;
    return manifest;
}

// ---- diagnostics -----------------------------------------------------

RunManifest run_diagnostics(const ExperimentSpec& spec, const RunOptions& options,
                            RunManifest manifest) {
    const auto& config = spec.config;
    const ProblemConfig problem_cfg = parse_problem(config.at("problem"), spec.base_dir);
    const auto sweep = parse_sweep(config);
    const auto seeds = spec_seeds(config, options.seed_override);
    manifest.seeds = seeds;
    const std::size_t executions = config.value("executions", std::size_t{2000});
    const std::vector<std::string> kinds =
        config.value("kinds", std::vector<std::string>{"overflow", "ambiguity"});

    const fs::path out = options.out_dir / "diagnostics.csv";
    CsvWriter csv(out, {"kind", "side", "n", "k", "l1", "l2", "estimate", "seed_count",
                        "executions"});
    for (const auto& params : sweep) {
        const synth::SynthesisProblem problem = make_problem(problem_cfg, params);
        for (const auto& kind : kinds) {
            try {
                if (kind == "overflow") {
                    for (int side : {1, 2}) {
                        const double est = synth::overflow_probability(problem, params, seeds,
                                                                       side, options.jobs);
                        csv.write_row({"overflow", std::to_string(side), std::to_string(params.n),
                                       std::to_string(params.k), std::to_string(params.l1),
                                       std::to_string(params.l2), fmt_num(est),
                                       std::to_string(seeds.size()), "0"});
                    }
                } else if (kind == "ambiguity") {
                    const double est = synth::ambiguity_probability(problem, params, seeds,
                                                                    executions, options.jobs);
                    csv.write_row({"ambiguity", "0", std::to_string(params.n),
                                   std::to_string(params.k), std::to_string(params.l1),
                                   std::to_string(params.l2), fmt_num(est),
                                   std::to_string(seeds.size()), std::to_string(executions)});
                } else {
                    throw std::invalid_argument("unknown diagnostics kind " + kind);
                }
            } catch (const BudgetError& e) {
                manifest.skipped.push_back("n=" + std::to_string(params.n) + " " + kind + ": " +
                                           e.what());
            }
        }
    }
    manifest.outputs.push_back({out.string(), ""});
    if (!manifest.skipped.empty()) manifest.exit_code = 3;
    return manifest;
}

// ---- soft-cover ------------------------------------------------------

RunManifest run_soft_cover(const ExperimentSpec& spec, const RunOptions& options,
                           RunManifest manifest) {
    const auto& config = spec.config;
    const auto& inst_cfg = config.at("instance");
    const prob::JointPmf p_xy =
        prob::joint_from_json(resolve_ref(inst_cfg.at("p_xy"), spec.base_dir));
    const prob::Pmf q_x = prob::pmf_from_json(resolve_ref(inst_cfg.at("q_x"), spec.base_dir));
    const auto n_list = config.at("n_list").get<std::vector<unsigned>>();
    const auto r_list = config.at("R_list").get<std::vector<double>>();
    const auto seeds = spec_seeds(config, options.seed_override);
    manifest.seeds = seeds;
    const std::vector<std::string> samplers =
        config.value("samplers", std::vector<std::string>{"iid"});
    const bool force_full_rank = config.value("force_full_rank", false);

    const fs::path out = options.out_dir / "results.csv";
    CsvWriter csv(out, {"sampler", "n", "R", "seed", "tv", "mass"});
    for (const auto& sampler : samplers) {
        if (sampler != "iid" && sampler != "coset")
            throw std::invalid_argument("unknown sampler " + sampler);
        for (unsigned n : n_list)
            for (double r : r_list) {
                try {
                    const softcover::ChangeOfMeasureInstance inst(p_xy, q_x, r, n);
                    const std::vector<double> target = inst.output_product();
                    std::vector<double> tvs(seeds.size()), masses(seeds.size());
                    parallel_for(options.jobs, seeds.size(), [&](std::size_t i) {
                        const auto codebook = sampler == "iid"
                            ? softcover::sample_iid_codebook(inst, seeds[i])
                            : softcover::sample_coset_codebook(inst, seeds[i], force_full_rank)
                                  .words;
                        const auto mix = softcover::approx_output_pmf(inst, codebook);
                        tvs[i] = prob::total_variation(std::span<const double>(target),
                                                       std::span<const double>(mix.table));
                        masses[i] = mix.mass;
                    });
                    for (std::size_t i = 0; i < seeds.size(); ++i)
                        csv.write_row({sampler, std::to_string(n), fmt_num(r),
                                       std::to_string(seeds[i]), fmt_num(tvs[i]),
                                       fmt_num(masses[i])});
                } catch (const BudgetError& e) {
                    manifest.skipped.push_back("n=" + std::to_string(n) + " R=" + fmt_num(r) +
                                               ": " + e.what());
                }
            }
    }
    manifest.outputs.push_back({out.string(), ""});
    if (!manifest.skipped.empty()) manifest.exit_code = 3;
    return manifest;
}

// ---- rate region / example 1 ----------------------------------------

void write_theta_sweep(const fs::path& path, const region::Example1Result& res) {
    CsvWriter csv(path, {"theta", "sum_rate", "feasible"});
    for (const auto& pt : res.sweep)
        csv.write_row({fmt_num(pt.theta), fmt_num(pt.sum_rate), pt.feasible ? "1" : "0"});
}

RunManifest run_example1(const ExperimentSpec& spec, const RunOptions& options,
                         RunManifest manifest) {
    const auto& config = spec.config;
    const double p = config.at("p").get<double>();
    const double q = config.at("q").get<double>();
    const std::size_t grid = config.value("theta_grid", std::size_t{10000});

    const region::Example1Result structured = region::example1_structured_min(p, q, grid);
    const region::Example1Result unstructured = region::example1_unstructured_sum_min(p, q, grid);
    const region::AuxPmf at_zero = region::example1_aux(p, q, 0.0, 0.0);
    const region::LinearInequalitySystem sys = region::beta_region(at_zero);
    const auto lp = region::min_sum_rate(sys);

    const nlohmann::json out_json{
        {"p", p},
        {"q", q},
        {"structured_min_sum_rate", structured.min_sum},
        {"argmin_theta", structured.argmin_theta},
        {"unstructured_sum_lower_bound_min", unstructured.min_sum},
        {"unstructured_argmin_theta", unstructured.argmin_theta},
        {"theta0_region", system_to_json(sys)},
        {"theta0_min_sum_rate", lp.value},
    };
    const fs::path jpath = options.out_dir / "example1.json";
    std::ofstream(jpath) << out_json.dump(2) << '\n';
    manifest.outputs.push_back({jpath.string(), ""});

    const fs::path spath = options.out_dir / "theta_sweep.csv";
    write_theta_sweep(spath, structured);
    manifest.outputs.push_back({spath.string(), ""});
    return manifest;
}

RunManifest run_rate_region(const ExperimentSpec& spec, const RunOptions& options,
                            RunManifest manifest) {
    const auto& config = spec.config;
    if (config.contains("example1")) {
        ExperimentSpec sub = spec;
        sub.config = config.at("example1");
        sub.config["theta_grid"] = config.value("theta_grid", std::size_t{10000});
        return run_example1(sub, options, std::move(manifest));
    }
    const prob::JointPmf joint =
        prob::joint_from_json(resolve_ref(config.at("aux"), spec.base_dir));
    const std::uint32_t p = config.value("p", std::uint32_t{2});
    const region::AuxPmf aux(joint, p);
    const region::LinearInequalitySystem sys = region::beta_region(aux);
    const auto lp = region::min_sum_rate(sys);

    const nlohmann::json out_json{
        {"region", system_to_json(sys)},
        {"min_sum_rate", lp.value},
        {"argmin", lp.argmin},
        {"max_chain_deviation", aux.max_chain_deviation()},
    };
    const fs::path jpath = options.out_dir / "region.json";
    std::ofstream(jpath) << out_json.dump(2) << '\n';
    manifest.outputs.push_back({jpath.string(), ""});
    return manifest;
}

// ---- validation ------------------------------------------------------

void validate_problem(const nlohmann::json& config, const fs::path& base,
                      ValidationReport& report) {
    if (!config.contains("problem")) {
        report.problems.push_back({"problem", "missing"});
        return;
    }
    try {
        const ProblemConfig cfg = parse_problem(config.at("problem"), base);
        if (!config.contains("ucc_sweep") || config.at("ucc_sweep").empty()) {
            report.problems.push_back({"ucc_sweep", "missing or empty"});
            return;
        }
        for (const auto& item : config.at("ucc_sweep")) {
            try {
                const auto params = item.get<ucc::UccParams>();
                const synth::SynthesisProblem problem = make_problem(cfg, params);
                const double t1 = std::pow(static_cast<double>(problem.x1_letters()), params.n);
                const double t2 = std::pow(static_cast<double>(problem.x2_letters()), params.n);
                const double ty = std::pow(static_cast<double>(problem.y_letters()), params.n);
                const double tableau = t1 * t2 * ty;
                if (tableau > static_cast<double>(kEnumerationBudget))
                    report.problems.push_back(
                        {"ucc_sweep n=" + std::to_string(params.n),
                         "enumeration budget exceeded (estimated " + fmt_num(tableau) +
                             " entries)",
                         false});
            } catch (const std::exception& e) {
                report.problems.push_back({"ucc_sweep", e.what()});
            }
        }
    } catch (const std::exception& e) {
        report.problems.push_back({"problem", e.what()});
    }
}

// ---- plot data -------------------------------------------------------

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t col(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw std::invalid_argument("results file lacks column " + name);
    }
};

CsvTable read_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path.string());
    CsvTable table;
    std::string line;
    if (std::getline(in, line)) table.header = split_csv_line(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        table.rows.push_back(split_csv_line(line));
    }
    return table;
}

} // namespace

ExperimentSpec ExperimentSpec::load_file(const fs::path& path) {
    return from_json(load_json_file(path), path.parent_path());
}

ExperimentSpec ExperimentSpec::from_json(nlohmann::json j, fs::path base_dir) {
    ExperimentSpec spec;
    if (!j.contains("mode")) throw std::invalid_argument("config lacks mode");
    spec.mode = j.at("mode").get<std::string>();
    spec.config = std::move(j);
    spec.base_dir = std::move(base_dir);
    return spec;
}

ValidationReport validate(const ExperimentSpec& spec) {
    ValidationReport report;
    const auto& config = spec.config;
    if (spec.mode == "synthesize" || spec.mode == "diagnostics") {
        validate_problem(config, spec.base_dir, report);
    } else if (spec.mode == "soft-cover") {
        try {
            if (!config.contains("instance")) throw std::invalid_argument("instance missing");
            const auto p_xy =
                prob::joint_from_json(resolve_ref(config.at("instance").at("p_xy"), spec.base_dir));
            const auto q_x =
                prob::pmf_from_json(resolve_ref(config.at("instance").at("q_x"), spec.base_dir));
            const auto n_list = config.at("n_list").get<std::vector<unsigned>>();
            const auto r_list = config.at("R_list").get<std::vector<double>>();
            if (n_list.empty()) report.problems.push_back({"n_list", "empty"});
            if (r_list.empty()) report.problems.push_back({"R_list", "empty"});
            for (unsigned n : n_list)
                for (double r : r_list) {
                    try {
                        const softcover::ChangeOfMeasureInstance inst(p_xy, q_x, r, n);
                        const double ty = std::pow(static_cast<double>(inst.y_letters()), n);
                        if (ty > static_cast<double>(kEnumerationBudget))
                            report.problems.push_back(
                                {"n=" + std::to_string(n),
                                 "output enumeration budget exceeded (estimated " + fmt_num(ty) +
                                     " entries)",
                                 false});
                        (void)inst.codebook_size();
                    } catch (const std::exception& e) {
                        report.problems.push_back(
                            {"n=" + std::to_string(n) + " R=" + fmt_num(r), e.what()});
                    }
                }
        } catch (const std::exception& e) {
            report.problems.push_back({"instance", e.what()});
        }
    } else if (spec.mode == "rate-region") {
        if (config.contains("example1")) {
            ExperimentSpec sub = spec;
            sub.mode = "example1";
            sub.config = config.at("example1");
            return validate(sub);
        }
        try {
            const auto joint = prob::joint_from_json(resolve_ref(config.at("aux"), spec.base_dir));
            const region::AuxPmf aux(joint, config.value("p", std::uint32_t{2}));
            if (!aux.chains_verified())
                report.problems.push_back(
                    {"aux", "Markov chains violated (max deviation " +
                                fmt_num(aux.max_chain_deviation()) + ")"});
        } catch (const std::exception& e) {
            report.problems.push_back({"aux", e.what()});
        }
    } else if (spec.mode == "example1") {
        const double p = config.value("p", -1.0);
        const double q = config.value("q", -1.0);
        if (p <= 0.0 || p >= 0.5) report.problems.push_back({"p", "must lie in (0, 0.5)"});
        if (q < 0.0 || q >= 0.5) report.problems.push_back({"q", "must lie in [0, 0.5)"});
    } else {
        report.problems.push_back({"mode", "unknown mode " + spec.mode});
    }
    return report;
}

RunManifest run(const ExperimentSpec& spec, const RunOptions& options) {
    RunManifest manifest;
    {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx",
                      static_cast<unsigned long long>(fnv1a(spec.config.dump())));
        manifest.spec_digest = std::string("fnv64:") + buf;
    }
    manifest.timestamp = iso_timestamp();

    const ValidationReport report = validate(spec);
    bool fatal = false;
    for (const auto& issue : report.problems) fatal = fatal || issue.fatal;
    if (fatal) {
        manifest.exit_code = 2;
        for (const auto& issue : report.problems)
            manifest.skipped.push_back(issue.where + ": " + issue.what);
        return manifest;
    }

    fs::create_directories(options.out_dir);
    if (spec.mode == "synthesize")
        manifest = run_synthesize(spec, options, std::move(manifest));
    else if (spec.mode == "diagnostics")
        manifest = run_diagnostics(spec, options, std::move(manifest));
    else if (spec.mode == "soft-cover")
        manifest = run_soft_cover(spec, options, std::move(manifest));
    else if (spec.mode == "rate-region")
        manifest = run_rate_region(spec, options, std::move(manifest));
    else if (spec.mode == "example1")
        manifest = run_example1(spec, options, std::move(manifest));
    else
        throw std::invalid_argument("unknown mode " + spec.mode);

    for (auto& rec : manifest.outputs) rec.digest = results_digest(rec.path);
    const fs::path mpath = options.out_dir / "manifest.json";
    nlohmann::json mj;
    to_json(mj, manifest);
    std::ofstream(mpath) << mj.dump(2) << '\n';
    return manifest;
}

void plot_data(const fs::path& results_csv, const std::string& kind, const fs::path& out_csv) {
    const CsvTable table = read_csv(results_csv);

    if (kind == "tv-vs-n") {
        CsvWriter out(out_csv, {"n", "seed", "tv"});
        if (table.rows.empty()) return;
        const std::size_t cn = table.col("n"), cs = table.col("seed"), ct = table.col("tv");
        for (const auto& row : table.rows) out.write_row({row[cn], row[cs], row[ct]});
        return;
    }
    if (kind == "theta-sweep") {
        CsvWriter out(out_csv, {"theta", "sum_rate", "feasible"});
        if (table.rows.empty()) return;
        const std::size_t cth = table.col("theta"), cs = table.col("sum_rate"),
                          cf = table.col("feasible");
        for (const auto& row : table.rows) out.write_row({row[cth], row[cs], row[cf]});
        return;
    }
    if (kind == "threshold-heatmap") {
        CsvWriter out(out_csv, {"n", "R", "mean_tv"});
        if (table.rows.empty()) return;
        const std::size_t cn = table.col("n"), cr = table.col("R"), ct = table.col("tv");
        std::map<std::pair<std::string, std::string>, std::pair<double, std::size_t>> cells;
        for (const auto& row : table.rows) {
            auto& cell = cells[{row[cn], row[cr]}];
            cell.first += std::stod(row[ct]);
            cell.second += 1;
        }
        for (const auto& [key, cell] : cells)
            out.write_row({key.first, key.second,
                           fmt_num(cell.first / static_cast<double>(cell.second))});
        return;
    }
    throw std::invalid_argument("unknown plot kind " + kind);
}

std::string results_digest(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path.string());
    std::string line, canonical;
    std::size_t runtime_col = SIZE_MAX;
    bool first = true;
    while (std::getline(in, line)) {
        if (first) {
            first = false;
            const auto header = split_csv_line(line);
            for (std::size_t i = 0; i < header.size(); ++i)
                if (header[i] == "runtime_ms") runtime_col = i;
            canonical += line;
            canonical += '\n';
            continue;
        }
        if (runtime_col != SIZE_MAX) {
            auto cells = split_csv_line(line);
            if (runtime_col < cells.size()) cells[runtime_col] = "0";
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i) canonical += ',';
                canonical += cells[i];
            }
            canonical += '\n';
        } else {
            canonical += line;
            canonical += '\n';
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical)));
    return std::string("fnv64:") + buf;
}

void to_json(nlohmann::json& j, const RunManifest& m) {
    nlohmann::json outputs = nlohmann::json::array();
    for (const auto& rec : m.outputs)
        outputs.push_back({{"path", rec.path}, {"digest", rec.digest}});
    j = nlohmann::json{
        {"spec_digest", m.spec_digest}, {"code_version", m.code_version},
        {"timestamp", m.timestamp},     {"seeds", m.seeds},
        {"outputs", outputs},           {"skipped", m.skipped},
        {"exit_code", m.exit_code},
    };
}

} // namespace ucs::cli
