#include "hllab/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hllab/exponents.hpp"
#include "hllab/json_io.hpp"
#include "hllab/ksz.hpp"
#include "hllab/norms.hpp"
#include "hllab/parallel.hpp"
#include "hllab/rng.hpp"
#include "hllab/search.hpp"
#include "hllab/tensor.hpp"
#include "hllab/verify.hpp"
#include "hllab/version.hpp"

namespace hllab::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_p_entries(const std::string& text) {
    std::vector<double> entries;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "inf") {
            entries.push_back(kInf);
            continue;
        }
        try {
            std::size_t used = 0;
            double v = std::stod(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            entries.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("--p: cannot parse entry '" + item + "' (number or 'inf')");
        }
    }
    if (entries.empty()) throw UsageError("--p: at least one entry required");
    return entries;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& flag) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            int v = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw UsageError(flag + ": cannot parse entry '" + item + "'");
        }
    }
    if (out.empty()) throw UsageError(flag + ": at least one entry required");
    return out;
}

json p_entries_json(const std::vector<double>& entries) {
    json out = json::array();
    for (double p : entries) {
        if (std::isinf(p))
            out.push_back("inf");
        else
            out.push_back(p);
    }
    return out;
}

SubsetMode parse_mode(const std::string& mode) {
    if (mode == "distinct-indices") return SubsetMode::DistinctIndices;
    if (mode == "distinct-values") return SubsetMode::DistinctValues;
    throw UsageError("--mode: expected distinct-indices or distinct-values");
}

Field parse_field(const std::string& field) {
    if (field == "real") return Field::Real;
    if (field == "complex") return Field::Complex;
    throw UsageError("--field: expected real or complex");
}

Dist parse_dist(const std::string& dist) {
    if (dist == "signs") return Dist::Signs;
    if (dist == "gaussian") return Dist::Gaussian;
    throw UsageError("--dist: expected signs or gaussian");
}

BoundChoice parse_rule(const std::string& rule) {
    if (rule == "classical") return BoundChoice::Classical;
    if (rule == "universal") return BoundChoice::Universal;
    if (rule == "main") return BoundChoice::Main;
    if (rule == "best") return BoundChoice::Best;
    throw UsageError("--rule: expected classical, universal, main or best");
}

int resolve_threads(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("HLLAB_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return default_threads();
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

// every option a subcommand can resolve, with its defaults
struct Opts {
    std::string p_str;
    std::string dims_str;
    std::string n_list_str = "2,4,8,16";
    std::string rule = "best";
    std::string mode = "distinct-indices";
    std::string field = "real";
    std::string dist = "gaussian";
    std::string method = "auto";
    std::string format = "csv";
    std::string input;
    std::string output;
    std::vector<std::string> seed_tensors;
    int n = 0;
    int count = 1;
    int trials = 50;
    int starts = 16;
    int probe_starts = 8;
    int restarts = 8;
    int steps = 500;
    int max_iters = 10000;
    int threads = 0;
    double q = 1.0;
    double tol = 1e-12;
    double step_size = 0.1;
    std::uint64_t seed = kDefaultSeed;
    bool extrapolated = false;
};

NormConfig norm_config(const Opts& o, int starts) {
    NormConfig cfg;
    cfg.starts = starts;
    cfg.max_iters = o.max_iters;
    cfg.tol = o.tol;
    cfg.seed = o.seed;
    return cfg;
}

json base_config(const Opts& o, const std::string& subcommand) {
    json cfg;
    cfg["subcommand"] = subcommand;
    cfg["seed"] = o.seed;
    return cfg;
}

int cmd_exponent(const Opts& o, std::ostream& out) {
    PVector p(parse_p_entries(o.p_str));
    Regime regime = classify_regime(p);
    if (regime.tag == RegimeTag::Invalid)
        throw std::domain_error("p is inadmissible: the theorems require |1/p| < 1, got |1/p| = " +
                                std::to_string(regime.recip_sum));
    json j;
    j["config"] = base_config(o, "exponent");
    j["config"]["p"] = p_entries_json(p.entries());
    j["version"] = kVersion;
    j["regime"] = regime_to_json(regime);
    j["rho"] = critical_exponent(p);
    emit(out, j);
    return 0;
}

int cmd_bound(const Opts& o, std::ostream& out) {
    PVector p(parse_p_entries(o.p_str));
    SubsetMode mode = parse_mode(o.mode);
    json j;
    j["config"] = base_config(o, "bound");
    j["config"]["p"] = p_entries_json(p.entries());
    j["config"]["rule"] = o.rule;
    j["config"]["mode"] = o.mode;
    j["config"]["extrapolated"] = o.extrapolated;
    j["version"] = kVersion;

    BoundChoice rule = parse_rule(o.rule);
    switch (rule) {
        case BoundChoice::Classical:
            j["constant"] = bound_classical(p.m());
            j["bound_source"] = to_string(BoundSource::Classical);
            break;
        case BoundChoice::Universal:
            j["constant"] = bound_universal(p);
            j["bound_source"] = to_string(BoundSource::Universal);
            break;
        case BoundChoice::Main: {
            SubsetReport rep = subset_parameter_s(p, mode);
            j["subset"] = subset_report_to_json(rep);
            auto b = bound_main(p, mode);
            if (b) {
                j["constant"] = *b;
                j["bound_source"] = to_string(BoundSource::MainTheorem);
            } else {
                j["constant"] = bound_universal(p);
                j["bound_source"] = to_string(BoundSource::Universal);
                j["note"] = "no qualifying subset in this mode; fell back to the universal bound";
            }
            break;
        }
        case BoundChoice::Best: {
            BestBound b = bound_best(p, mode, o.extrapolated);
            j["constant"] = b.value;
            std::string src;
            for (std::size_t i = 0; i < b.sources.size(); ++i) {
                if (i) src += "+";
                src += to_string(b.sources[i]);
            }
            j["bound_source"] = src;
            j["bounds"] = best_bound_to_json(b);
            break;
        }
    }
    emit(out, j);
    return 0;
}

int cmd_norm(const Opts& o, std::ostream& out) {
    PVector p(parse_p_entries(o.p_str));
    if (o.input.empty()) throw UsageError("norm: --input tensor file required");
    CoeffTensor t = load_tensor(o.input);

    NormResult result;
    if (o.method == "auto") {
        result = compute_norm_auto(t, p, norm_config(o, o.starts));
    } else if (o.method == "alternating") {
        result = sup_norm_alternating(t, p, norm_config(o, o.starts));
    } else if (o.method == "vertex") {
        for (int k = 0; k < p.m(); ++k)
            if (!std::isinf(p[k]))
                throw std::domain_error("norm: the vertex oracle requires every p entry = inf");
        if (p.m() != t.order())
            throw std::invalid_argument("norm: p length does not match tensor order");
        result = sup_norm_vertex_exact(t);
    } else {
        throw UsageError("--method: expected auto, alternating or vertex");
    }

    json j;
    j["config"] = base_config(o, "norm");
    j["config"]["p"] = p_entries_json(p.entries());
    j["config"]["input"] = o.input;
    j["config"]["method"] = o.method;
    j["config"]["starts"] = o.starts;
    j["config"]["tol"] = o.tol;
    j["version"] = kVersion;
    j["field"] = t.field() == Field::Real ? "real" : "complex";
    j["norm"] = norm_to_json(result, t.field());
    emit(out, j);
    return 0;
}

int cmd_verify(const Opts& o, std::ostream& out) {
    PVector p(parse_p_entries(o.p_str));
    BoundChoice rule = parse_rule(o.rule);
    SubsetMode mode = parse_mode(o.mode);
    NormConfig cfg = norm_config(o, o.starts);

    json config = base_config(o, "verify");
    config["p"] = p_entries_json(p.entries());
    config["rule"] = o.rule;
    config["mode"] = o.mode;
    config["starts"] = o.starts;
    config["tol"] = o.tol;
    config["threads"] = resolve_threads(o.threads);

    if (!o.input.empty()) {
        config["input"] = o.input;
        CoeffTensor t = load_tensor(o.input);
        VerificationRecord rec = verify_inequality(t, p, rule, cfg, mode);
        json j = record_to_json(rec, t.field());
        j["config"] = config;
        j["version"] = kVersion;
        j["seed"] = o.seed;
        emit(out, j);
        return rec.verdict == Verdict::CertifiedViolation ? 4 : 0;
    }

    if (o.dims_str.empty()) throw UsageError("verify: either --input or --dims with --count");
    EnsembleSpec spec;
    spec.dims = parse_int_list(o.dims_str, "--dims");
    spec.dist = parse_dist(o.dist);
    spec.count = o.count;
    spec.seed = o.seed;
    spec.field = parse_field(o.field);
    config["dims"] = spec.dims;
    config["dist"] = o.dist;
    config["count"] = o.count;
    config["field"] = o.field;

    BatchResult batch = batch_verify(spec, p, rule, cfg, resolve_threads(o.threads));
    for (int i = 0; i < spec.count; ++i) {
        json line = record_to_json(batch.records[static_cast<std::size_t>(i)], spec.field);
        line["tensor_id"] = i;
        line["seed"] = split_seed(spec.seed, static_cast<std::uint64_t>(i));
        out << line.dump() << '\n';
    }
    json sum = summary_to_json(batch.summary);
    sum["config"] = config;
    sum["version"] = kVersion;
    sum["seed"] = spec.seed;
    out << sum.dump() << '\n';
    return batch.summary.violations > 0 ? 4 : 0;
}

int cmd_khinchine(const Opts& o, std::ostream& out) {
    PVector p(parse_p_entries(o.p_str));
    CoeffTensor t = [&] {
        if (!o.input.empty()) return load_tensor(o.input);
        if (o.dims_str.empty())
            throw UsageError("khinchine-step: either --input or --dims to draw one tensor");
        return random_tensor(parse_int_list(o.dims_str, "--dims"), parse_field(o.field),
                             parse_dist(o.dist), o.seed);
    }();
    VerificationRecord rec = verify_khinchine_step(t, p, norm_config(o, o.starts));
    json j = record_to_json(rec, t.field());
    j["config"] = base_config(o, "khinchine-step");
    j["config"]["p"] = p_entries_json(p.entries());
    j["config"]["input"] = o.input;
    j["config"]["dims"] = o.dims_str;
    j["config"]["starts"] = o.starts;
    j["version"] = kVersion;
    j["seed"] = o.seed;
    emit(out, j);
    return rec.verdict == Verdict::CertifiedViolation ? 4 : 0;
}

int cmd_search(const Opts& o, std::ostream& out) {
    PVector p(parse_p_entries(o.p_str));
    if (o.n < 2) throw UsageError("search: --n >= 2 required");
    SearchConfig cfg;
    cfg.restarts = o.restarts;
    cfg.steps = o.steps;
    cfg.step_size = o.step_size;
    cfg.seed = o.seed;
    cfg.norm_cfg = norm_config(o, o.starts);
    for (const std::string& path : o.seed_tensors) cfg.file_seeds.push_back(load_tensor(path));

    RatioRecord rec = lower_bound_search(p, o.n, cfg);

    json j = ratio_record_to_json(rec);
    j["config"] = base_config(o, "search");
    j["config"]["p"] = p_entries_json(p.entries());
    j["config"]["n"] = o.n;
    j["config"]["restarts"] = o.restarts;
    j["config"]["steps"] = o.steps;
    j["config"]["step_size"] = o.step_size;
    j["config"]["starts"] = o.starts;
    j["config"]["output"] = o.output;
    j["version"] = kVersion;
    j["certified"] = rec.norm.certified_exact;

    if (!o.output.empty()) {
        save_tensor(rec.tensor, o.output);
        BestBound bound = bound_best(p);
        json side;
        side["ratio"] = rec.ratio;
        side["p"] = p_entries_json(p.entries());
        side["bound"] = bound.value;
        side["bound_source"] = to_string(bound.sources.empty() ? BoundSource::Classical
                                                               : bound.sources.front());
        side["verdict"] = rec.norm.certified_exact
                              ? (rec.ratio <= bound.value + 1e-6 ? "HOLDS" : "CERTIFIED_VIOLATION")
                              : "INCONCLUSIVE";
        side["seed"] = o.seed;
        side["version"] = kVersion;
        std::ofstream meta(o.output + ".meta.json");
        if (!meta) throw std::runtime_error("search: cannot write " + o.output + ".meta.json");
        meta << side.dump(2) << '\n';
        j["sidecar"] = o.output + ".meta.json";
    }
    emit(out, j);
    return 0;
}

int cmd_probe(const Opts& o, std::ostream& out) {
    PVector p(parse_p_entries(o.p_str));
    std::vector<int> n_list = parse_int_list(o.n_list_str, "--n-list");
    NormConfig cfg = norm_config(o, o.probe_starts);
    int threads = resolve_threads(o.threads);

    GrowthTable table = growth_probe(p, o.q, n_list, o.trials, o.seed, cfg, threads);

    json config = base_config(o, "probe");
    config["p"] = p_entries_json(p.entries());
    config["q"] = o.q;
    config["n_list"] = n_list;
    config["trials"] = o.trials;
    config["starts"] = o.probe_starts;
    config["threads"] = threads;
    config["format"] = o.format;

    if (o.format == "json") {
        json j = growth_table_to_json(table);
        j["config"] = config;
        j["version"] = kVersion;
        emit(out, j);
    } else if (o.format == "csv") {
        out << "# config: " << config.dump() << '\n';
        out << "# version: " << kVersion << '\n';
        growth_table_csv(table, out);
        out << "# slope: " << table.slope << " stderr: " << table.slope_stderr << '\n';
    } else {
        throw UsageError("--format: expected csv or json");
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hardy-Littlewood inequalities on finite-dimensional lp spaces: "
                 "exponent/constant calculus, sup norms, verification, search, growth probes"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    Opts o;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", o.seed, "master 64-bit seed")->capture_default_str();
        cmd->add_option("--threads", o.threads,
                        "worker threads (0 = HLLAB_THREADS env or all available)")
            ->capture_default_str();
    };

    CLI::App* c_exp = app.add_subcommand("exponent", "regime and critical exponent of p");
    c_exp->add_option("--p", o.p_str, "exponents, e.g. 8,8,2 or inf,inf")->required();
    add_common(c_exp);

    CLI::App* c_bound = app.add_subcommand("bound", "constant bounds for p");
    c_bound->add_option("--p", o.p_str, "exponents")->required();
    c_bound->add_option("--rule", o.rule, "classical|universal|main|best")->capture_default_str();
    c_bound->add_option("--mode", o.mode, "distinct-indices|distinct-values")
        ->capture_default_str();
    c_bound->add_flag("--extrapolated", o.extrapolated,
                      "let non-minimal subset bounds compete in --rule best");
    add_common(c_bound);

    CLI::App* c_norm = app.add_subcommand("norm", "sup norm of a tensor over the p balls");
    c_norm->add_option("--p", o.p_str, "exponents")->required();
    c_norm->add_option("--input", o.input, "tensor JSON file")->required();
    c_norm->add_option("--method", o.method, "auto|alternating|vertex")->capture_default_str();
    c_norm->add_option("--starts", o.starts, "random starts for alternating")
        ->capture_default_str();
    c_norm->add_option("--tol", o.tol, "relative convergence tolerance")->capture_default_str();
    c_norm->add_option("--max-iters", o.max_iters, "iteration cap per start")
        ->capture_default_str();
    add_common(c_norm);

    CLI::App* c_verify = app.add_subcommand("verify", "check an inequality on a tensor or ensemble");
    c_verify->add_option("--p", o.p_str, "exponents")->required();
    c_verify->add_option("--rule", o.rule, "classical|universal|main|best")->capture_default_str();
    c_verify->add_option("--mode", o.mode, "distinct-indices|distinct-values")
        ->capture_default_str();
    c_verify->add_option("--input", o.input, "tensor JSON file (single check)");
    c_verify->add_option("--dims", o.dims_str, "ensemble dims, e.g. 3,3,3");
    c_verify->add_option("--dist", o.dist, "signs|gaussian")->capture_default_str();
    c_verify->add_option("--count", o.count, "ensemble size")->capture_default_str();
    c_verify->add_option("--field", o.field, "real|complex")->capture_default_str();
    c_verify->add_option("--starts", o.starts, "random starts per norm")->capture_default_str();
    c_verify->add_option("--tol", o.tol, "norm convergence tolerance")->capture_default_str();
    add_common(c_verify);

    CLI::App* c_khin = app.add_subcommand(
        "khinchine-step", "mixed-norm inequality for an order-(s+1) form, last mode on the sup ball");
    c_khin->add_option("--p", o.p_str, "first s exponents (1/2 <= |1/p| < 1)")->required();
    c_khin->add_option("--input", o.input, "tensor JSON file of order s+1");
    c_khin->add_option("--dims", o.dims_str, "draw one random tensor of these dims instead");
    c_khin->add_option("--dist", o.dist, "signs|gaussian")->capture_default_str();
    c_khin->add_option("--field", o.field, "real|complex")->capture_default_str();
    c_khin->add_option("--starts", o.starts, "random starts per norm")->capture_default_str();
    add_common(c_khin);

    CLI::App* c_search = app.add_subcommand("search", "lower-bound search for the optimal constant");
    c_search->add_option("--p", o.p_str, "exponents")->required();
    c_search->add_option("--n", o.n, "dimension per mode")->required();
    c_search->add_option("--restarts", o.restarts, "random restarts")->capture_default_str();
    c_search->add_option("--steps", o.steps, "gradient steps per start")->capture_default_str();
    c_search->add_option("--step-size", o.step_size, "initial step size")->capture_default_str();
    c_search->add_option("--starts", o.starts, "random starts per norm")->capture_default_str();
    c_search->add_option("--output", o.output, "write the best tensor here (+ .meta.json sidecar)");
    c_search->add_option("--seed-tensor", o.seed_tensors, "tensor JSON file used as extra seed")
        ->take_all();
    add_common(c_search);

    CLI::App* c_probe = app.add_subcommand("probe", "ratio growth against n for a fixed exponent q");
    c_probe->add_option("--p", o.p_str, "exponent pattern")->required();
    c_probe->add_option("--q", o.q, "coefficient-sum exponent")->required();
    c_probe->add_option("--n-list", o.n_list_str, "dimensions per row")->capture_default_str();
    c_probe->add_option("--trials", o.trials, "tensors per n")->capture_default_str();
    c_probe->add_option("--starts", o.probe_starts, "random starts per norm")
        ->capture_default_str();
    c_probe->add_option("--format", o.format, "csv|json")->capture_default_str();
    add_common(c_probe);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_exp->parsed()) return cmd_exponent(o, out);
        if (c_bound->parsed()) return cmd_bound(o, out);
        if (c_norm->parsed()) return cmd_norm(o, out);
        if (c_verify->parsed()) return cmd_verify(o, out);
        if (c_khin->parsed()) return cmd_khinchine(o, out);
        if (c_search->parsed()) return cmd_search(o, out);
        if (c_probe->parsed()) return cmd_probe(o, out);
        err << "error: no subcommand\n";
        return 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const SchemaError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace hllab::cli
