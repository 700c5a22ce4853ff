#include "dbas/math.hpp"

#include <algorithm>
#include <cmath>

#include "dbas/errors.hpp"

namespace dbas {

namespace {

// Rational coefficients from W. J. Cody's CALERF (SPECFUN).
constexpr double kErfA[5] = {3.16112374387056560e0, 1.13864154151050156e2,
                             3.77485237685302021e2, 3.20937758913846947e3,
                             1.85777706184603153e-1};
constexpr double kErfB[4] = {2.36012909523441209e1, 2.44024637934444173e2,
                             1.28261652607737228e3, 2.84423683343917062e3};
constexpr double kErfcC[9] = {5.64188496988670089e-1, 8.88314979438837594e0,
                              6.61191906371416295e1,  2.98635138197400131e2,
                              8.81952221241769090e2,  1.71204761263407058e3,
                              2.05107837782607147e3,  1.23033935479799725e3,
                              2.15311535474403846e-8};
constexpr double kErfcD[8] = {1.57449261107098347e1, 1.17693950891312499e2,
                              5.37181101862009858e2, 1.62138957456669019e3,
                              3.29079923573345963e3, 4.36261909014324716e3,
                              3.43936767414372164e3, 1.23033935480374942e3};
constexpr double kErfcP[6] = {3.05326634961232344e-1, 3.60344899949804439e-1,
                              1.25781726111229246e-1, 1.60837851487422766e-2,
                              6.58749161529837803e-4, 1.63153871373020978e-2};
constexpr double kErfcQ[5] = {2.56852019228982242e0, 1.87295284992346047e0,
                              5.27905102951428412e-1, 6.05183413124413191e-2,
                              2.33520497626869185e-3};

constexpr double kInvSqrtPi = 5.6418958354775628695e-1;  // 1/sqrt(pi)
constexpr double kInvSqrt2 = 7.0710678118654752440e-1;   // 1/sqrt(2)
constexpr double kErfSmallCut = 0.46875;

// erf on |x| <= 0.46875
double erf_small(double x) {
    const double z = x * x;
    double num = kErfA[4] * z;
    double den = z;
    for (int i = 0; i < 3; ++i) {
        num = (num + kErfA[i]) * z;
        den = (den + kErfB[i]) * z;
    }
    return x * (num + kErfA[3]) / (den + kErfB[3]);
}

// erfc on 0.46875 < y <= 4, with the split-exponential trick for accuracy
double erfc_mid(double y) {
    double num = kErfcC[8] * y;
    double den = y;
    for (int i = 0; i < 7; ++i) {
        num = (num + kErfcC[i]) * y;
        den = (den + kErfcD[i]) * y;
    }
    const double r = (num + kErfcC[7]) / (den + kErfcD[7]);
    const double ysq = std::floor(y * 16.0) / 16.0;
    const double del = (y - ysq) * (y + ysq);
    return std::exp(-ysq * ysq) * std::exp(-del) * r;
}

// erfc on y > 4; underflows to 0 near y ~ 26.5, which is the correct limit
double erfc_tail(double y) {
    const double z = 1.0 / (y * y);
    double num = kErfcP[5] * z;
    double den = z;
    for (int i = 0; i < 4; ++i) {
        num = (num + kErfcP[i]) * z;
        den = (den + kErfcQ[i]) * z;
    }
    double r = z * (num + kErfcP[4]) / (den + kErfcQ[4]);
    r = (kInvSqrtPi - r) / y;
    const double ysq = std::floor(y * 16.0) / 16.0;
    const double del = (y - ysq) * (y + ysq);
    return std::exp(-ysq * ysq) * std::exp(-del) * r;
}

}  // namespace

double erf_approx(double x) {
    const double y = std::fabs(x);
    if (y <= kErfSmallCut) return erf_small(x);
    const double c = (y <= 4.0) ? erfc_mid(y) : erfc_tail(y);
    return (x < 0.0) ? c - 1.0 : 1.0 - c;
}

double erfc_approx(double x) {
    const double y = std::fabs(x);
    if (y <= kErfSmallCut) return 1.0 - erf_small(x);
    const double c = (y <= 4.0) ? erfc_mid(y) : erfc_tail(y);
    return (x < 0.0) ? 2.0 - c : c;
}

double normal_cdf(double z) { return 0.5 * erfc_approx(-z * kInvSqrt2); }

double normal_sf(double z) { return 0.5 * erfc_approx(z * kInvSqrt2); }

double log_sum_exp(std::span<const double> log_values) {
    if (log_values.empty()) throw EmptyInput("log_sum_exp: empty input");
    double hi = log_values[0];
    for (double v : log_values) hi = std::max(hi, v);
    if (std::isinf(hi) && hi < 0.0) return hi;  // all -inf
    double acc = 0.0;
    for (double v : log_values) acc += std::exp(v - hi);
    return hi + std::log(acc);
}

double linear_quantile(std::span<const double> values, double q) {
    if (values.empty()) throw EmptyInput("linear_quantile: empty input");
    if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("linear_quantile: q outside [0,1]");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double rank = static_cast<double>(sorted.size() - 1) * q;
    const auto lo = static_cast<std::size_t>(rank);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = rank - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

std::pair<double, double> mean_std(std::span<const double> values) {
    if (values.empty()) throw EmptyInput("mean_std: empty input");
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / static_cast<double>(values.size()))};
}

}  // namespace dbas
