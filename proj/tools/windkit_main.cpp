// Command-line front end: ingestion, interpolation, statistics and ARX
// modeling as reproducible batch reports (CSV tables plus a JSON manifest).
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical error.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "windkit/commands.hpp"
#include "windkit/errors.hpp"
#include "windkit/version.hpp"

namespace {

using namespace windkit;

struct CliArgs {
    cmd::Options opt;
    std::string fill;
    std::string qs_boundary = "notaknot";
    std::string site;
    std::string target;
    std::string var = "avg";
    std::string inputs_csv;
    std::string m_set_csv;
    std::string k_set_csv;
    std::string model_file;
    std::string acf_norm = "segment";
    int max_lag = -1;
    int m = 0;
    int k = 0;
    double holdout = 0.0;
};

std::vector<std::string> split_csv(const std::string& s)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty())
                out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty())
        out.push_back(cur);
    return out;
}

// empty flag -> all other sites; the literal "none" -> pure auto-regression
std::optional<std::vector<std::string>> parse_inputs(const std::string& s)
{
    if (s.empty())
        return std::nullopt;
    if (s == "none")
        return std::vector<std::string>{};
    return split_csv(s);
}

std::vector<int> split_int_csv(const std::string& s)
{
    std::vector<int> out;
    for (const std::string& tok : split_csv(s)) {
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw DataError("bad integer '" + tok + "' in list '" + s + "'");
        }
    }
    return out;
}

void add_common(CLI::App* sub, CliArgs& args)
{
    sub->add_option("--data", args.opt.data_dir, "Dataset directory (one <site>.csv per site)")
        ->envname("WINDKIT_DATA_DIR")
        ->required();
    sub->add_option("--out", args.opt.out_dir, "Output directory for the report bundle")
        ->required();
    sub->add_option("--fill", args.fill, "Repair missing samples first: ma2, ma4 or qs");
    sub->add_option("--qs-boundary", args.qs_boundary,
                    "Spline end condition for --fill qs: notaknot (default) or natural");
}

void finish_common(CliArgs& args)
{
    if (!args.fill.empty())
        args.opt.fill = parse_interp_method(args.fill);
    if (args.qs_boundary == "natural")
        args.opt.qs_boundary = SplineBoundary::Natural;
    else if (args.qs_boundary != "notaknot")
        throw DataError("unknown spline boundary '" + args.qs_boundary +
                        "' (expected notaknot or natural)");
}

void report(const cmd::ReportBundle& bundle)
{
    std::cout << "wrote " << bundle.files.size() << " files to " << bundle.out_dir.string()
              << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Multi-site daily wind series toolkit: ingestion, gap repair, correlation "
                 "analysis and ARX forecasting"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);
    app.require_subcommand(1);

    CliArgs args;
    std::vector<Diagnostic> warnings;
    args.opt.warnings = &warnings;

    CLI::App* c_stats = app.add_subcommand(
        "stats", "Per-site histograms, wind roses and moment summaries");
    add_common(c_stats, args);

    CLI::App* c_acf =
        app.add_subcommand("acf", "Auto-correlation of one site variable with a Gaussian "
                                  "comparator overlay");
    add_common(c_acf, args);
    c_acf->add_option("--site", args.site, "Site id")->required();
    c_acf->add_option("--var", args.var, "Variable: avg, gust or dir");
    c_acf->add_option("--max-lag", args.max_lag, "Largest lag (default: full frame, n-1)");
    c_acf->add_option("--norm", args.acf_norm,
                      "Lag normalization: segment (per-lag window moments, default) or global");
    c_acf->add_option("--seed", args.opt.seed, "Comparator seed");

    CLI::App* c_xcorr = app.add_subcommand(
        "xcorr", "Variable-pair correlations per site and the cross-site matrix");
    add_common(c_xcorr, args);
    c_xcorr->add_option("--var", args.var, "Cross-site variable: avg, gust or dir");

    CLI::App* c_fit = app.add_subcommand("fit", "Least-squares ARX identification");
    add_common(c_fit, args);
    c_fit->add_option("--target", args.target, "Site whose series is predicted")->required();
    c_fit->add_option("--var", args.var, "Variable: avg, gust or dir");
    c_fit->add_option("--m", args.m, "Output kernel order (past outputs)")->required();
    c_fit->add_option("--k", args.k, "Input kernel taps per exogenous site")->required();
    c_fit->add_option("--inputs", args.inputs_csv,
                      "Comma-separated input sites, or 'none' for a pure auto-regression "
                      "(default: all other sites)");
    c_fit->add_option("--holdout", args.holdout,
                      "Fraction of trailing days held out for out-of-sample scoring "
                      "(default 0: in-sample)");

    CLI::App* c_scan =
        app.add_subcommand("scan", "Fit every (m, k) combination and rank by FPE");
    add_common(c_scan, args);
    c_scan->add_option("--target", args.target, "Site whose series is predicted")->required();
    c_scan->add_option("--var", args.var, "Variable: avg, gust or dir");
    c_scan->add_option("--m-set", args.m_set_csv, "Comma-separated output orders")->required();
    c_scan->add_option("--k-set", args.k_set_csv, "Comma-separated input tap counts")
        ->required();
    c_scan->add_option("--inputs", args.inputs_csv,
                       "Comma-separated input sites, or 'none' for a pure auto-regression "
                       "(default: all other sites)");

    CLI::App* c_forecast = app.add_subcommand(
        "forecast", "Replay a saved model and predict the next day");
    add_common(c_forecast, args);
    c_forecast->add_option("--model", args.model_file, "Serialized model file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        finish_common(args);
        const WindVar var = parse_wind_var(args.var);
        cmd::ReportBundle bundle;
        if (c_stats->parsed()) {
            bundle = cmd::stats(args.opt);
        } else if (c_acf->parsed()) {
            AcfNormalization norm = AcfNormalization::Segment;
            if (args.acf_norm == "global")
                norm = AcfNormalization::Global;
            else if (args.acf_norm != "segment")
                throw DataError("unknown normalization '" + args.acf_norm +
                                "' (expected segment or global)");
            bundle = cmd::acf(args.opt, args.site, var, args.max_lag, norm);
        } else if (c_xcorr->parsed()) {
            bundle = cmd::xcorr(args.opt, var);
        } else if (c_fit->parsed()) {
            bundle = cmd::fit(args.opt, args.target, var, args.m, args.k,
                              parse_inputs(args.inputs_csv), args.holdout);
        } else if (c_scan->parsed()) {
            bundle = cmd::scan(args.opt, args.target, var, split_int_csv(args.m_set_csv),
                               split_int_csv(args.k_set_csv), parse_inputs(args.inputs_csv));
        } else {
            bundle = cmd::forecast(args.opt, args.model_file);
        }
        for (const Diagnostic& w : warnings)
            std::cerr << "warning: " << w.str() << '\n';
        report(bundle);
        return 0;
    } catch (const NumericError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
