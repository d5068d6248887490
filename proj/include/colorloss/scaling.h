#pragma once

#include <optional>
#include <vector>

namespace colorloss {

// Straight-line least squares y = a + b x, optionally inverse-variance weighted.
struct LinearFit {
    double intercept = 0.0;
    double slope = 0.0;
    double intercept_err = 0.0;
    double slope_err = 0.0;
    double covariance = 0.0;  // cov(intercept, slope)
    double chi2 = 0.0;        // weighted sum of squared residuals
    int n_points = 0;
    std::vector<double> residuals;  // y - fit, in input order
};

// Rejects fewer than min_points points, mismatched lengths, equal x values
// and nonpositive sigmas. Without sigmas the parameter errors use the
// residual variance (n - 2 degrees of freedom); with sigmas they come from
// the weights alone.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y,
                     const std::vector<double>& sigma = {}, int min_points = 2);

struct ScalingPoint {
    double d = 0.0;
    double value = 0.0;
    std::optional<double> sigma;
};

// p_c(d) = p_inf + b d^(-inv_nu).
struct ScalingFit {
    double p_inf = 0.0;
    double p_inf_err = 0.0;
    double b = 0.0;
    double b_err = 0.0;
    double inv_nu = 1.0;
    double chi2 = 0.0;
    int n_points = 0;
    bool weighted = false;
    std::vector<double> residuals;
};

// Needs at least 3 points. Weighted when every point carries a sigma.
ScalingFit fit_threshold(const std::vector<ScalingPoint>& points, double inv_nu);

struct ExponentFit {
    double inv_nu = 0.0;  // slope of log Delta against log(1/d)
    double inv_nu_err = 0.0;
    double amplitude = 0.0;  // Delta = amplitude * d^(-inv_nu)
    double chi2 = 0.0;
    int n_points = 0;
    std::vector<double> residuals;  // in log space
};

// Points are (d, Delta) with Delta > 0. Two points interpolate exactly and
// carry no error estimate.
ExponentFit fit_exponent(const std::vector<ScalingPoint>& points);

struct FractionFit {
    double fraction_inf = 0.0;
    double fraction_inf_err = 0.0;
    double slope = 0.0;
    double chi2 = 0.0;
    int n_points = 0;
    std::vector<double> residuals;
};

// Linear in 1/d, at least 3 points.
FractionFit fit_fraction(const std::vector<ScalingPoint>& points);

}  // namespace colorloss
