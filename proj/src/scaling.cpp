#include "colorloss/scaling.h"

#include <cmath>
#include <limits>
#include <string>

#include "colorloss/types.h"

namespace colorloss {

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& sigma,
                     int min_points) {
    const size_t n = x.size();
    if (y.size() != n || (!sigma.empty() && sigma.size() != n))
        throw ValidationError("linear_fit: input lengths differ");
    if (static_cast<int>(n) < min_points)
        throw ValidationError("linear_fit: need at least " + std::to_string(min_points) + " points, got " +
                              std::to_string(n));
    const bool weighted = !sigma.empty();
    std::vector<double> w(n, 1.0);
    for (size_t i = 0; i < n; i++) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i])) throw ValidationError("linear_fit: non-finite input");
        if (weighted) {
            if (!(sigma[i] > 0.0)) throw ValidationError("linear_fit: sigma must be positive");
            w[i] = 1.0 / (sigma[i] * sigma[i]);
        }
    }
    double sw = 0, sx = 0, sy = 0;
    for (size_t i = 0; i < n; i++) {
        sw += w[i];
        sx += w[i] * x[i];
        sy += w[i] * y[i];
    }
    const double xm = sx / sw, ym = sy / sw;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; i++) {
        sxx += w[i] * (x[i] - xm) * (x[i] - xm);
        sxy += w[i] * (x[i] - xm) * (y[i] - ym);
    }
    bool spread = false;
    for (size_t i = 1; i < n; i++) spread |= x[i] != x[0];
    if (!spread || !(sxx > 0.0)) throw ValidationError("linear_fit: all x values are equal");

    LinearFit f;
    f.n_points = static_cast<int>(n);
    f.slope = sxy / sxx;
    f.intercept = ym - f.slope * xm;
    f.residuals.resize(n);
    for (size_t i = 0; i < n; i++) {
        f.residuals[i] = y[i] - (f.intercept + f.slope * x[i]);
        f.chi2 += w[i] * f.residuals[i] * f.residuals[i];
    }
    // Covariance of (a, b) from the normal equations, centered form.
    double scale = 1.0;
    if (!weighted) {
        scale = n > 2 ? f.chi2 / double(n - 2) : std::numeric_limits<double>::quiet_NaN();
    }
    const double var_b = scale / sxx;
    const double var_a = scale * (1.0 / sw + xm * xm / sxx);
    f.slope_err = std::sqrt(var_b);
    f.intercept_err = std::sqrt(var_a);
    f.covariance = -xm * var_b;
    return f;
}

namespace {

bool all_sigmas(const std::vector<ScalingPoint>& points) {
    if (points.empty()) return false;
    for (const auto& p : points) {
        if (!p.sigma) return false;
    }
    return true;
}

void check_distances(const std::vector<ScalingPoint>& points) {
    for (const auto& p : points) {
        if (!(p.d > 0.0)) throw ValidationError("scaling: distances must be positive");
    }
}

}  // namespace

ScalingFit fit_threshold(const std::vector<ScalingPoint>& points, double inv_nu) {
    if (points.size() < 3) throw ValidationError("fit_threshold: need at least 3 points");
    if (!(inv_nu > 0.0)) throw ValidationError("fit_threshold: inv_nu must be positive");
    check_distances(points);
    std::vector<double> x, y, s;
    const bool weighted = all_sigmas(points);
    for (const auto& p : points) {
        x.push_back(std::pow(p.d, -inv_nu));
        y.push_back(p.value);
        if (weighted) s.push_back(*p.sigma);
    }
    LinearFit lf = linear_fit(x, y, s, 3);
    ScalingFit f;
    f.p_inf = lf.intercept;
    f.p_inf_err = lf.intercept_err;
    f.b = lf.slope;
    f.b_err = lf.slope_err;
    f.inv_nu = inv_nu;
    f.chi2 = lf.chi2;
    f.n_points = lf.n_points;
    f.weighted = weighted;
    f.residuals = std::move(lf.residuals);
    return f;
}

ExponentFit fit_exponent(const std::vector<ScalingPoint>& points) {
    if (points.size() < 2) throw ValidationError("fit_exponent: need at least 2 points");
    check_distances(points);
    std::vector<double> x, y;
    for (const auto& p : points) {
        if (!(p.value > 0.0)) throw ValidationError("fit_exponent: Delta must be positive");
        x.push_back(std::log(1.0 / p.d));
        y.push_back(std::log(p.value));
    }
    LinearFit lf = linear_fit(x, y, {}, 2);
    ExponentFit f;
    f.inv_nu = lf.slope;
    f.inv_nu_err = lf.slope_err;
    f.amplitude = std::exp(lf.intercept);
    f.chi2 = lf.chi2;
    f.n_points = lf.n_points;
    f.residuals = std::move(lf.residuals);
    return f;
}

FractionFit fit_fraction(const std::vector<ScalingPoint>& points) {
    if (points.size() < 3) throw ValidationError("fit_fraction: need at least 3 points");
    check_distances(points);
    std::vector<double> x, y, s;
    const bool weighted = all_sigmas(points);
    for (const auto& p : points) {
        x.push_back(1.0 / p.d);
        y.push_back(p.value);
        if (weighted) s.push_back(*p.sigma);
    }
    LinearFit lf = linear_fit(x, y, s, 3);
    FractionFit f;
    f.fraction_inf = lf.intercept;
    f.fraction_inf_err = lf.intercept_err;
    f.slope = lf.slope;
    f.chi2 = lf.chi2;
    f.n_points = lf.n_points;
    f.residuals = std::move(lf.residuals);
    return f;
}

}  // namespace colorloss
