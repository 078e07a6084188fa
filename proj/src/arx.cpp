#include "windkit/arx.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "windkit/errors.hpp"
#include "windkit/numio.hpp"

namespace windkit {

namespace {

std::string regressor_label(const ArxModel& model, int col)
{
    if (col < model.m)
        return "y(t-" + std::to_string(col + 1) + ")";
    const int rest = col - model.m;
    const int site = rest / model.k;
    const int lag = rest % model.k;
    return model.inputs[std::size_t(site)] + ":u(t-" + std::to_string(lag) + ")";
}

// Largest root magnitude of z^m + a1 z^(m-1) + ... + am via the companion
// matrix.
double output_kernel_spectral_radius(const std::vector<double>& a)
{
    const int m = int(a.size());
    if (m == 0)
        return 0.0;
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i)
        comp(0, i) = -a[std::size_t(i)];
    for (int i = 1; i < m; ++i)
        comp(i, i - 1) = 1.0;
    const Eigen::VectorXcd eig = comp.eigenvalues();
    double radius = 0.0;
    for (int i = 0; i < m; ++i)
        radius = std::max(radius, std::abs(eig(i)));
    return radius;
}

} // namespace

void ArxModel::validate() const
{
    if (m < 0 || k < 0)
        throw DataError("model orders must be non-negative");
    if (int(a.size()) != m)
        throw DataError("model stores " + std::to_string(a.size()) + " a-coefficients for m = " +
                        std::to_string(m));
    if (b.size() != inputs.size())
        throw DataError("model stores " + std::to_string(b.size()) + " input kernels for " +
                        std::to_string(inputs.size()) + " input sites");
    for (std::size_t s = 0; s < b.size(); ++s) {
        if (int(b[s].size()) != k)
            throw DataError("input kernel for '" + inputs[s] + "' has " +
                            std::to_string(b[s].size()) + " taps for k = " + std::to_string(k));
    }
    if (parameter_count() == 0)
        throw DataError("model has no parameters");
}

double fitness(std::span<const double> y, std::span<const double> yhat)
{
    if (y.size() != yhat.size())
        throw DataError("fitness inputs differ in length");
    if (y.size() < 2)
        throw DataError("fitness needs at least 2 samples");
    double mean = 0.0;
    for (double v : y)
        mean += v;
    mean /= double(y.size());
    double err = 0.0, spread = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        err += (y[i] - yhat[i]) * (y[i] - yhat[i]);
        spread += (y[i] - mean) * (y[i] - mean);
    }
    if (spread == 0.0)
        throw NumericError("fitness is undefined for a constant true series");
    return 100.0 * (1.0 - std::sqrt(err) / std::sqrt(spread));
}

double rmse(std::span<const double> y, std::span<const double> yhat)
{
    if (y.size() != yhat.size())
        throw DataError("rmse inputs differ in length");
    if (y.empty())
        throw DataError("rmse needs a nonempty input");
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
        s += (y[i] - yhat[i]) * (y[i] - yhat[i]);
    return std::sqrt(s / double(y.size()));
}

double fpe(double residual_sum_squares, int n_samples, int n_params)
{
    if (residual_sum_squares < 0.0)
        throw DataError("negative residual sum of squares");
    if (n_params < 0 || n_samples <= n_params)
        throw DataError("fpe needs n_samples > n_params >= 0");
    const double n = double(n_samples);
    const double d = double(n_params);
    return (residual_sum_squares / n) * (1.0 + d / n) / (1.0 - d / n);
}

double predict_one_step(const ArxModel& model, std::span<const double> y_hist,
                        const std::vector<std::vector<double>>& u_hists)
{
    if (int(y_hist.size()) != model.m)
        throw DataError("y history has " + std::to_string(y_hist.size()) + " values, expected " +
                        std::to_string(model.m));
    if (u_hists.size() != model.inputs.size())
        throw DataError("got " + std::to_string(u_hists.size()) + " input histories, expected " +
                        std::to_string(model.inputs.size()));
    for (const auto& u : u_hists) {
        if (int(u.size()) != model.k)
            throw DataError("input history has " + std::to_string(u.size()) +
                            " values, expected " + std::to_string(model.k));
    }
    double acc = 0.0;
    // y_hist is chronological: y_hist[m-i] is y(t-i)
    for (int i = 1; i <= model.m; ++i)
        acc += -model.a[std::size_t(i - 1)] * y_hist[std::size_t(model.m - i)];
    // u_hists are chronological ending at the current day: u[k-1-j] is u(t-j)
    for (std::size_t s = 0; s < u_hists.size(); ++s) {
        for (int j = 0; j < model.k; ++j)
            acc += model.b[s][std::size_t(j)] * u_hists[s][std::size_t(model.k - 1 - j)];
    }
    return acc;
}

double predict_polynomial(const ArxModel& model, std::span<const double> y,
                          const std::vector<std::vector<double>>& us, int t)
{
    if (us.size() != model.inputs.size())
        throw DataError("got " + std::to_string(us.size()) + " input series, expected " +
                        std::to_string(model.inputs.size()));
    if (t < model.first_usable_row() || t >= int(y.size()))
        throw DataError("day index " + std::to_string(t) + " lacks full history");

    // A(z) y(t) = B(z) u(t) + e(t) with monic A; solving the convolution for
    // y(t) and dropping e(t) gives the one-step prediction.
    std::vector<double> a_full(std::size_t(model.m) + 1);
    a_full[0] = 1.0;
    std::copy(model.a.begin(), model.a.end(), a_full.begin() + 1);

    double conv_b = 0.0;
    for (std::size_t s = 0; s < us.size(); ++s) {
        for (int j = 0; j < model.k; ++j)
            conv_b += model.b[s][std::size_t(j)] * us[s][std::size_t(t - j)];
    }
    double conv_a_past = 0.0; // A(z)y(t) minus the leading y(t) term
    for (int i = 1; i <= model.m; ++i)
        conv_a_past += a_full[std::size_t(i)] * y[std::size_t(t - i)];
    return conv_b - conv_a_past;
}

std::vector<double> replay(const ArxModel& model, std::span<const double> y,
                           const std::vector<std::vector<double>>& us)
{
    model.validate();
    if (us.size() != model.inputs.size())
        throw DataError("got " + std::to_string(us.size()) + " input series, expected " +
                        std::to_string(model.inputs.size()));
    const int n = int(y.size());
    for (const auto& u : us) {
        if (int(u.size()) != n)
            throw DataError("input series length differs from output series length");
    }
    const int t0 = model.first_usable_row();
    if (t0 >= n)
        throw DataError("series too short for the model orders");

    std::vector<double> yhat;
    yhat.reserve(std::size_t(n - t0));
    std::vector<double> y_hist(std::size_t(model.m));
    std::vector<std::vector<double>> u_hists(us.size(),
                                             std::vector<double>(std::size_t(model.k)));
    for (int t = t0; t < n; ++t) {
        for (int i = 0; i < model.m; ++i)
            y_hist[std::size_t(i)] = y[std::size_t(t - model.m + i)];
        for (std::size_t s = 0; s < us.size(); ++s) {
            for (int j = 0; j < model.k; ++j)
                u_hists[s][std::size_t(j)] = us[s][std::size_t(t - model.k + 1 + j)];
        }
        yhat.push_back(predict_one_step(model, y_hist, u_hists));
    }
    return yhat;
}

FitReport evaluate(const ArxModel& model, std::span<const double> y,
                   const std::vector<std::vector<double>>& us)
{
    return evaluate_from(model, y, us, model.first_usable_row());
}

FitReport evaluate_from(const ArxModel& model, std::span<const double> y,
                        const std::vector<std::vector<double>>& us, int first_scored_row)
{
    const int t0 = model.first_usable_row();
    if (first_scored_row < t0 || first_scored_row >= int(y.size()))
        throw DataError("scoring window start " + std::to_string(first_scored_row) +
                        " outside the usable rows [" + std::to_string(t0) + ", " +
                        std::to_string(y.size()) + ")");
    const std::vector<double> yhat_all = replay(model, y, us);
    const std::span<const double> yhat(yhat_all.data() + (first_scored_row - t0),
                                       yhat_all.size() - std::size_t(first_scored_row - t0));
    const std::span<const double> y_window = y.subspan(std::size_t(first_scored_row));

    FitReport rep;
    rep.first_row = first_scored_row;
    rep.n_samples = int(yhat.size());
    rep.n_params = model.parameter_count();
    rep.residuals.resize(yhat.size());
    double rss = 0.0;
    for (std::size_t i = 0; i < yhat.size(); ++i) {
        rep.residuals[i] = y_window[i] - yhat[i];
        rss += rep.residuals[i] * rep.residuals[i];
    }
    rep.rmse = rmse(y_window, yhat);
    rep.fitness = fitness(y_window, yhat);
    rep.fpe = rep.n_samples > rep.n_params
                  ? fpe(rss, rep.n_samples, rep.n_params)
                  : std::numeric_limits<double>::quiet_NaN();
    rep.a_spectral_radius = output_kernel_spectral_radius(model.a);
    rep.a_stable = rep.a_spectral_radius < 1.0;
    return rep;
}

std::pair<ArxModel, FitReport> fit(const Dataset& ds, const SiteId& target,
                                   const std::vector<SiteId>& inputs, WindVar var, int m, int k)
{
    if (m < 0 || k < 0)
        throw DataError("model orders must be non-negative");
    if (!inputs.empty() && k == 0)
        throw DataError("k must be at least 1 when input sites are given");
    for (const SiteId& s : inputs) {
        if (s == target)
            throw DataError("target site '" + target + "' cannot also be an input");
    }

    ArxModel model;
    model.target = target;
    model.variable = var;
    model.inputs = inputs;
    model.m = m;
    model.k = inputs.empty() ? 0 : k;
    const int d = model.parameter_count();
    if (d == 0)
        throw DataError("no parameters to fit (m = 0 and no inputs)");

    const std::vector<double> y = complete_series(ds, target, var);
    std::vector<std::vector<double>> us;
    us.reserve(inputs.size());
    for (const SiteId& s : inputs)
        us.push_back(complete_series(ds, s, var));

    const int n = int(y.size());
    const int t0 = model.first_usable_row();
    const int rows = n - t0;
    if (rows <= d)
        throw DataError("insufficient data: " + std::to_string(rows) +
                        " usable rows for " + std::to_string(d) + " parameters");

    // Row t: yhat(t) = sum_i a_i * (-y(t-i)) + sum_{s,j} b_{s,j} * u_s(t-j),
    // so the solved coefficient vector is the stored model layout verbatim.
    Eigen::MatrixXd X(rows, d);
    Eigen::VectorXd rhs(rows);
    for (int r = 0; r < rows; ++r) {
        const int t = t0 + r;
        int c = 0;
        for (int i = 1; i <= m; ++i)
            X(r, c++) = -y[std::size_t(t - i)];
        for (std::size_t s = 0; s < us.size(); ++s) {
            for (int j = 0; j < model.k; ++j)
                X(r, c++) = us[s][std::size_t(t - j)];
        }
        rhs(r) = y[std::size_t(t)];
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double sigma_max = svd.singularValues()(0);
    const double tol =
        double(std::max(rows, d)) * std::numeric_limits<double>::epsilon() * sigma_max;
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i) {
        if (svd.singularValues()(i) > tol && svd.singularValues()(i) > 0.0)
            ++rank;
    }
    if (rank < d) {
        std::string cols;
        if (sigma_max == 0.0) {
            cols = "all (zero regressor matrix)";
        } else {
            // name the redundant columns via the pivot order of a rank-revealing QR
            Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
            qr.setThreshold(tol / sigma_max);
            const auto perm = qr.colsPermutation().indices();
            for (int i = qr.rank(); i < d; ++i) {
                if (!cols.empty())
                    cols += ", ";
                cols += regressor_label(model, perm(i));
            }
        }
        throw NumericError("rank-deficient regressor matrix (rank " + std::to_string(rank) +
                           " of " + std::to_string(d) + "); collinear columns: " + cols);
    }

    const Eigen::VectorXd theta = svd.solve(rhs);
    model.a.assign(theta.data(), theta.data() + m);
    model.b.clear();
    for (std::size_t s = 0; s < inputs.size(); ++s) {
        const double* base = theta.data() + m + int(s) * model.k;
        model.b.emplace_back(base, base + model.k);
    }

    return {model, evaluate(model, y, us)};
}

std::vector<ScanRow> order_scan(const Dataset& ds, const SiteId& target,
                                const std::vector<SiteId>& inputs, WindVar var,
                                std::span<const int> m_set, std::span<const int> k_set)
{
    if (m_set.empty() || k_set.empty())
        throw DataError("order scan needs nonempty m and k sets");
    std::vector<int> ms(m_set.begin(), m_set.end());
    std::vector<int> ks(k_set.begin(), k_set.end());
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

    std::vector<ScanRow> rows;
    for (int m : ms) {
        for (int k : ks)
            rows.push_back(ScanRow{m, k, fit(ds, target, inputs, var, m, k).second});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const ScanRow& a, const ScanRow& b) {
        if (a.report.fpe != b.report.fpe)
            return a.report.fpe < b.report.fpe;
        if (a.m != b.m)
            return a.m < b.m;
        return a.k < b.k;
    });
    return rows;
}

namespace {

constexpr const char* kModelMagic = "windkit-arx-model v1";

[[noreturn]] void model_fail(const std::filesystem::path& path, int line, const std::string& msg)
{
    throw DataError(path.filename().string() + ":" + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split_tokens(const std::string& line)
{
    std::vector<std::string> out;
    std::istringstream iss(line);
    std::string tok;
    while (iss >> tok)
        out.push_back(tok);
    return out;
}

} // namespace

void save_model(const ArxModel& model, const std::filesystem::path& path)
{
    model.validate();
    std::ofstream f(path);
    if (!f)
        throw DataError("cannot write '" + path.string() + "'");
    f << kModelMagic << '\n';
    f << "target " << model.target << '\n';
    f << "variable " << to_string(model.variable) << '\n';
    f << "orders " << model.m << ' ' << model.k << '\n';
    f << "inputs";
    for (const SiteId& s : model.inputs)
        f << ' ' << s;
    f << '\n';
    f << "a";
    for (double v : model.a)
        f << ' ' << format_double(v);
    f << '\n';
    for (std::size_t s = 0; s < model.inputs.size(); ++s) {
        f << "b " << model.inputs[s];
        for (double v : model.b[s])
            f << ' ' << format_double(v);
        f << '\n';
    }
    if (!f)
        throw DataError("write failed for '" + path.string() + "'");
}

ArxModel load_model(const std::filesystem::path& path)
{
    std::ifstream f(path);
    if (!f)
        throw DataError("cannot open '" + path.string() + "'");
    std::string line;
    int lineno = 0;
    const auto next_line = [&]() {
        if (!std::getline(f, line))
            model_fail(path, lineno, "unexpected end of file");
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
    };

    next_line();
    if (line != kModelMagic)
        model_fail(path, lineno, "not a windkit model file (bad header)");

    ArxModel model;
    next_line();
    auto toks = split_tokens(line);
    if (toks.size() != 2 || toks[0] != "target")
        model_fail(path, lineno, "expected 'target <site>'");
    model.target = toks[1];

    next_line();
    toks = split_tokens(line);
    if (toks.size() != 2 || toks[0] != "variable")
        model_fail(path, lineno, "expected 'variable <avg|gust|dir>'");
    model.variable = parse_wind_var(toks[1]);

    next_line();
    toks = split_tokens(line);
    if (toks.size() != 3 || toks[0] != "orders")
        model_fail(path, lineno, "expected 'orders <m> <k>'");
    try {
        model.m = std::stoi(toks[1]);
        model.k = std::stoi(toks[2]);
    } catch (const std::exception&) {
        model_fail(path, lineno, "bad order values");
    }

    next_line();
    toks = split_tokens(line);
    if (toks.empty() || toks[0] != "inputs")
        model_fail(path, lineno, "expected 'inputs [site...]'");
    model.inputs.assign(toks.begin() + 1, toks.end());

    next_line();
    toks = split_tokens(line);
    if (toks.empty() || toks[0] != "a")
        model_fail(path, lineno, "expected 'a [coeff...]'");
    for (std::size_t i = 1; i < toks.size(); ++i) {
        const auto v = parse_double(toks[i]);
        if (!v)
            model_fail(path, lineno, "bad coefficient '" + toks[i] + "'");
        model.a.push_back(*v);
    }

    for (std::size_t s = 0; s < model.inputs.size(); ++s) {
        next_line();
        toks = split_tokens(line);
        if (toks.size() < 2 || toks[0] != "b")
            model_fail(path, lineno, "expected 'b <site> [coeff...]'");
        if (toks[1] != model.inputs[s])
            model_fail(path, lineno, "input kernel order mismatch: expected '" + model.inputs[s] +
                                         "', got '" + toks[1] + "'");
        std::vector<double> kernel;
        for (std::size_t i = 2; i < toks.size(); ++i) {
            const auto v = parse_double(toks[i]);
            if (!v)
                model_fail(path, lineno, "bad coefficient '" + toks[i] + "'");
            kernel.push_back(*v);
        }
        model.b.push_back(std::move(kernel));
    }

    try {
        model.validate();
    } catch (const DataError& e) {
        model_fail(path, lineno, e.what());
    }
    return model;
}

} // namespace windkit
