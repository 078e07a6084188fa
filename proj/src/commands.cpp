#include "windkit/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "windkit/arx.hpp"
#include "windkit/errors.hpp"
#include "windkit/numio.hpp"
#include "windkit/stats.hpp"
#include "windkit/version.hpp"

namespace windkit::cmd {

namespace {

namespace fs = std::filesystem;

Dataset load_dataset(const Options& opt)
{
    if (!fs::is_directory(opt.data_dir))
        throw DataError("dataset directory '" + opt.data_dir.string() + "' does not exist");
    std::vector<fs::path> paths;
    for (const auto& entry : fs::directory_iterator(opt.data_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv")
            paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end());
    if (paths.empty())
        throw DataError("no .csv files in '" + opt.data_dir.string() + "'");
    Dataset ds = read_dataset(paths, opt.warnings);
    if (opt.fill)
        ds = fill_missing(ds, *opt.fill, opt.qs_boundary);
    if (!ds.complete())
        throw DataError("dataset has missing samples; rerun with --fill ma2|ma4|qs");
    return ds;
}

class Bundle {
public:
    Bundle(const Options& opt, std::string command)
    {
        bundle_.command = std::move(command);
        bundle_.out_dir = opt.out_dir;
        std::error_code ec;
        fs::create_directories(opt.out_dir, ec);
        if (ec)
            throw DataError("cannot create output directory '" + opt.out_dir.string() +
                            "': " + ec.message());
    }

    std::ofstream open(const std::string& name)
    {
        std::ofstream f(bundle_.out_dir / name);
        if (!f)
            throw DataError("cannot write '" + (bundle_.out_dir / name).string() + "'");
        bundle_.files.push_back(name);
        return f;
    }

    void note(const std::string& name) { bundle_.files.push_back(name); }

    ReportBundle finish()
    {
        bundle_.files.push_back("manifest.json");
        nlohmann::ordered_json j;
        j["tool"] = kToolName;
        j["version"] = kVersion;
        j["command"] = bundle_.command;
        j["files"] = bundle_.files;
        std::ofstream f(bundle_.out_dir / "manifest.json");
        if (!f)
            throw DataError("cannot write manifest in '" + bundle_.out_dir.string() + "'");
        f << j.dump(2) << '\n';
        return std::move(bundle_);
    }

private:
    ReportBundle bundle_;
};

std::string common_flags(const Options& opt)
{
    std::string s = " --data " + opt.data_dir.string() + " --out " + opt.out_dir.string();
    if (opt.fill) {
        s += " --fill " + std::string(to_string(*opt.fill));
        if (*opt.fill == InterpMethod::QS && opt.qs_boundary == SplineBoundary::Natural)
            s += " --qs-boundary natural";
    }
    return s;
}

std::string fmt(double v)
{
    return std::isnan(v) ? std::string(kMissingToken) : format_double(v);
}

std::string corr_row(const CorrResult& c)
{
    return fmt(c.r) + ',' + fmt(c.p_two_tailed) + ',' + std::string(to_string(c.band));
}

std::string model_label(int m, int k)
{
    // report label kept in the form the source analysis used; quoted because
    // it carries a comma
    return "\"ARMA(" + std::to_string(m) + "," + std::to_string(k) + ")\"";
}

void emit_histogram(std::ofstream& f, const Histogram& h)
{
    f << "bin_lo,bin_hi,count,frequency\n";
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        f << fmt(h.bin_lo(int(i))) << ',' << fmt(h.bin_hi(int(i))) << ',' << h.counts[i] << ','
          << fmt(h.frequencies[i]) << '\n';
    }
}

void emit_wind_rose(std::ofstream& f, const Histogram& h)
{
    f << "sector,center_deg,count,frequency\n";
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        f << compass_label(int(i)) << ',' << fmt(h.bin_center(int(i))) << ',' << h.counts[i]
          << ',' << fmt(h.frequencies[i]) << '\n';
    }
}

void emit_series_table(std::ofstream& f, const Dataset& ds, int first_row,
                       std::span<const double> y, std::span<const double> yhat)
{
    f << "date,actual,predicted,residual\n";
    for (std::size_t i = 0; i < yhat.size(); ++i) {
        const double actual = y[std::size_t(first_row) + i];
        f << format_date(ds.date_at(first_row + int(i))) << ',' << fmt(actual) << ','
          << fmt(yhat[i]) << ',' << fmt(actual - yhat[i]) << '\n';
    }
}

void emit_fit_report(std::ofstream& f, const ArxModel& model, const FitReport& rep)
{
    f << "model,target,variable,fitness_pct,rmse,fpe,n_params,n_samples,a_spectral_radius,a_"
         "stable\n";
    f << model_label(model.m, model.k) << ',' << model.target << ','
      << to_string(model.variable) << ',' << fmt(rep.fitness) << ',' << fmt(rep.rmse) << ','
      << fmt(rep.fpe) << ',' << rep.n_params << ',' << rep.n_samples << ','
      << fmt(rep.a_spectral_radius) << ',' << (rep.a_stable ? "true" : "false") << '\n';
}

std::vector<SiteId> default_inputs(const Dataset& ds, const SiteId& target)
{
    std::vector<SiteId> inputs;
    for (const SiteId& s : ds.site_ids()) {
        if (s != target)
            inputs.push_back(s);
    }
    return inputs;
}

std::string model_stem(const SiteId& target, WindVar var, int m, int k)
{
    return target + "_" + std::string(to_string(var)) + "_m" + std::to_string(m) + "_k" +
           std::to_string(k);
}

std::string join_ints(const std::vector<int>& v)
{
    std::string s;
    for (int x : v) {
        if (!s.empty())
            s += ',';
        s += std::to_string(x);
    }
    return s;
}

std::string join_sites(const std::vector<SiteId>& v)
{
    if (v.empty())
        return "none";
    std::string s;
    for (const SiteId& x : v) {
        if (!s.empty())
            s += ',';
        s += x;
    }
    return s;
}

} // namespace

ReportBundle stats(const Options& opt)
{
    const Dataset ds = load_dataset(opt);
    Bundle bundle(opt, "windkit stats" + common_flags(opt));

    std::ofstream summary = bundle.open("summary.csv");
    summary << "site,variable,n,mean,stddev,min,max,dominant_sector\n";

    for (const WindSeries& s : ds.series()) {
        for (WindVar var : kAllVars) {
            const std::vector<double> xs = complete_series(ds, s.site, var);
            const Moments mom = moments(xs);
            std::string dominant;
            if (var == WindVar::Dir) {
                const Histogram rose = histogram(xs, wind_rose_spec());
                std::ofstream f =
                    bundle.open("rose_" + s.site + "_" + std::string(to_string(var)) + ".csv");
                emit_wind_rose(f, rose);
                const auto it = std::max_element(rose.counts.begin(), rose.counts.end());
                dominant = compass_label(int(it - rose.counts.begin()));
            } else {
                const Histogram h = histogram(xs, speed_histogram_spec(mom.max));
                std::ofstream f =
                    bundle.open("hist_" + s.site + "_" + std::string(to_string(var)) + ".csv");
                emit_histogram(f, h);
            }
            summary << s.site << ',' << to_string(var) << ',' << mom.n << ',' << fmt(mom.mean)
                    << ',' << fmt(mom.stddev) << ',' << fmt(mom.min) << ',' << fmt(mom.max)
                    << ',' << dominant << '\n';
        }
    }
    summary.close();
    return bundle.finish();
}

ReportBundle acf(const Options& opt, const SiteId& site, WindVar var, int max_lag,
                 AcfNormalization norm)
{
    const Dataset ds = load_dataset(opt);
    const std::vector<double> xs = complete_series(ds, site, var);
    const int lag = max_lag < 0 ? int(xs.size()) - 1 : max_lag;

    const AcfResult series_acf = autocorrelation(xs, lag, norm);
    const std::vector<double> surrogate = gaussian_comparator(xs, opt.seed);
    const AcfResult comp_acf = autocorrelation(surrogate, lag, norm);

    Bundle bundle(opt, "windkit acf" + common_flags(opt) + " --site " + site + " --var " +
                           std::string(to_string(var)) + " --max-lag " + std::to_string(lag) +
                           " --norm " +
                           (norm == AcfNormalization::Global ? "global" : "segment") +
                           " --seed " + std::to_string(opt.seed));
    std::ofstream f =
        bundle.open("acf_" + site + "_" + std::string(to_string(var)) + ".csv");
    f << "lag,r,r_comparator\n";
    for (int k = -lag; k <= lag; ++k)
        f << k << ',' << fmt(series_acf.at(k)) << ',' << fmt(comp_acf.at(k)) << '\n';
    f.close();
    return bundle.finish();
}

ReportBundle xcorr(const Options& opt, WindVar var)
{
    const Dataset ds = load_dataset(opt);
    Bundle bundle(opt,
                  "windkit xcorr" + common_flags(opt) + " --var " + std::string(to_string(var)));

    // per-site correlations between the three wind variables
    std::ofstream pairs = bundle.open("varpair_correlations.csv");
    pairs << "site,pair,r,p,band\n";
    constexpr std::pair<WindVar, WindVar> kPairs[] = {
        {WindVar::Avg, WindVar::Gust}, {WindVar::Avg, WindVar::Dir},
        {WindVar::Gust, WindVar::Dir}};
    for (const WindSeries& s : ds.series()) {
        for (const auto& [va, vb] : kPairs) {
            const CorrResult c =
                pearson(complete_series(ds, s.site, va), complete_series(ds, s.site, vb));
            pairs << s.site << ',' << to_string(va) << '/' << to_string(vb) << ','
                  << corr_row(c) << '\n';
        }
    }
    pairs.close();

    const CrossSiteMatrix m = cross_site_matrix(ds, var);
    std::ofstream cross =
        bundle.open("cross_site_" + std::string(to_string(var)) + ".csv");
    cross << "site_a,site_b,r,p,band\n";
    for (std::size_t i = 0; i < m.sites.size(); ++i) {
        for (std::size_t j = i; j < m.sites.size(); ++j)
            cross << m.sites[i] << ',' << m.sites[j] << ',' << corr_row(m.at(i, j)) << '\n';
    }
    cross.close();
    return bundle.finish();
}

namespace {

Dataset truncate_dataset(const Dataset& ds, int n_days)
{
    std::vector<WindSeries> series = ds.series();
    for (WindSeries& s : series)
        s.samples.resize(std::size_t(n_days));
    return Dataset(std::move(series));
}

} // namespace

ReportBundle fit(const Options& opt, const SiteId& target, WindVar var, int m, int k,
                 std::optional<std::vector<SiteId>> inputs, double holdout)
{
    const Dataset ds = load_dataset(opt);
    if (!inputs)
        inputs = default_inputs(ds, target);

    int n_train = ds.n_days();
    if (holdout != 0.0) {
        if (!(holdout > 0.0 && holdout < 1.0))
            throw DataError("holdout fraction must lie in (0, 1)");
        const int n_held = std::max(1, int(std::lround(holdout * ds.n_days())));
        n_train = ds.n_days() - n_held;
        if (n_train < 2)
            throw DataError("holdout fraction leaves too little training data");
    }

    const bool split = n_train < ds.n_days();
    const auto [model, rep] =
        windkit::fit(split ? truncate_dataset(ds, n_train) : ds, target, *inputs, var, m, k);

    std::string command = "windkit fit" + common_flags(opt) + " --target " + target + " --var " +
                          std::string(to_string(var)) + " --m " + std::to_string(m) + " --k " +
                          std::to_string(k) + " --inputs " + join_sites(*inputs);
    if (split)
        command += " --holdout " + format_double(holdout);
    Bundle bundle(opt, command);

    // effective orders: k collapses to 0 for a pure auto-regression
    const std::string stem = model_stem(target, var, model.m, model.k);
    save_model(model, opt.out_dir / (stem + ".model"));
    bundle.note(stem + ".model");

    {
        std::ofstream f = bundle.open("fit_" + stem + "_report.csv");
        emit_fit_report(f, model, rep);
    }
    const std::vector<double> y = complete_series(ds, target, var);
    std::vector<std::vector<double>> us;
    for (const SiteId& s : model.inputs)
        us.push_back(complete_series(ds, s, var));
    if (split) {
        const FitReport held = evaluate_from(model, y, us, n_train);
        std::ofstream f = bundle.open("fit_" + stem + "_holdout_report.csv");
        emit_fit_report(f, model, held);
    }
    {
        std::ofstream f = bundle.open("fit_" + stem + "_series.csv");
        emit_series_table(f, ds, model.first_usable_row(), y, replay(model, y, us));
    }
    return bundle.finish();
}

ReportBundle scan(const Options& opt, const SiteId& target, WindVar var,
                  const std::vector<int>& m_set, const std::vector<int>& k_set,
                  std::optional<std::vector<SiteId>> inputs)
{
    const Dataset ds = load_dataset(opt);
    if (!inputs)
        inputs = default_inputs(ds, target);
    const std::vector<ScanRow> rows = order_scan(ds, target, *inputs, var, m_set, k_set);

    Bundle bundle(opt, "windkit scan" + common_flags(opt) + " --target " + target + " --var " +
                           std::string(to_string(var)) + " --m-set " + join_ints(m_set) +
                           " --k-set " + join_ints(k_set) + " --inputs " + join_sites(*inputs));

    std::ofstream f =
        bundle.open("scan_" + target + "_" + std::string(to_string(var)) + ".csv");
    f << "model,m,k,fitness_pct,rmse,fpe,n_params,n_samples\n";
    for (const ScanRow& row : rows) {
        f << model_label(row.m, row.k) << ',' << row.m << ',' << row.k << ','
          << fmt(row.report.fitness) << ',' << fmt(row.report.rmse) << ',' << fmt(row.report.fpe)
          << ',' << row.report.n_params << ',' << row.report.n_samples << '\n';
    }
    f.close();

    // refit the FPE-best configuration and keep its artifacts
    const ScanRow& best = rows.front();
    const auto [model, rep] = windkit::fit(ds, target, *inputs, var, best.m, best.k);
    save_model(model, opt.out_dir / "scan_best.model");
    bundle.note("scan_best.model");
    {
        const std::vector<double> y = complete_series(ds, target, var);
        std::vector<std::vector<double>> us;
        for (const SiteId& s : model.inputs)
            us.push_back(complete_series(ds, s, var));
        std::ofstream t = bundle.open("scan_best_series.csv");
        emit_series_table(t, ds, rep.first_row, y, replay(model, y, us));
    }
    return bundle.finish();
}

ReportBundle forecast(const Options& opt, const std::filesystem::path& model_file)
{
    const ArxModel model = load_model(model_file);
    const Dataset ds = load_dataset(opt);
    if (!ds.has_site(model.target))
        throw DataError("model target '" + model.target + "' not present in dataset");
    for (const SiteId& s : model.inputs) {
        if (!ds.has_site(s))
            throw DataError("model input '" + s + "' not present in dataset");
    }
    const int n = ds.n_days();
    if (model.m >= n || model.k > n || model.first_usable_row() >= n)
        throw DataError("dataset too short for the model orders");

    const std::vector<double> y = complete_series(ds, model.target, model.variable);
    std::vector<std::vector<double>> us;
    for (const SiteId& s : model.inputs)
        us.push_back(complete_series(ds, s, model.variable));

    const FitReport rep = evaluate(model, y, us);

    // Next-day prediction from the latest window: the most recent k exogenous
    // readings feed the input kernel, so the j = 0 tap sees the latest
    // available value.
    std::vector<double> y_hist(y.end() - model.m, y.end());
    std::vector<std::vector<double>> u_hists;
    for (const auto& u : us)
        u_hists.emplace_back(u.end() - model.k, u.end());
    const double next = predict_one_step(model, y_hist, u_hists);

    Bundle bundle(opt,
                  "windkit forecast" + common_flags(opt) + " --model " + model_file.string());
    {
        std::ofstream f = bundle.open("forecast_next.csv");
        f << "date,predicted\n";
        f << format_date(ds.date_at(n)) << ',' << fmt(next) << '\n';
    }
    {
        std::ofstream f = bundle.open("forecast_replay.csv");
        emit_series_table(f, ds, rep.first_row, y, replay(model, y, us));
    }
    {
        std::ofstream f = bundle.open("forecast_report.csv");
        emit_fit_report(f, model, rep);
    }
    return bundle.finish();
}

} // namespace windkit::cmd
