#pragma once

#include <cstdint>
#include <string>

namespace ordermec::bounds {

// Expected-unorientable-edge bound for one extra vertex:
//   rhs(rho, n) = rho * n * (1 - rho(1-rho))^(n-1).
double rhs(double rho, int n);

// Tail sum  sum_{i >= n} rhs(rho, i)  in closed form,
//   (1 - rho(1-rho))^n / (rho (1-rho)^2) + n (1 - rho(1-rho))^(n-1) / (1-rho).
// Requires 0 < rho < 1.
double epsilon(double rho, int n);

// The same tail summed term by term (Kahan-compensated, stops when the
// relative term drops below 1e-18). Cross-checks the closed form.
double epsilon_series(double rho, int n);

// Tail bound for downstream-independent algorithm metrics:
//   sum_{i >= n} rho * i^2 (i+1)/2 * (1 - rho(1-rho))^(i-1).
// No closed form; summed numerically (Kahan).
double epsilon_algo(double rho, int n);
// Plain forward summation of the same series, used as a cross-check.
double epsilon_algo_forward(double rho, int n);

// Lower bound on E[X_n] - E[X_{n-1}]: (n-1) * rho * (1-rho)^(2n-4), n >= 2.
double diff_lower_bound(double rho, int n);

// Empirical Bernstein upper confidence bound on the mean of i.i.d. samples in
// [0, range] (Maurer & Pontil, 2009):
//   mean + sqrt(2 V log(2/delta) / s) + range * 7 log(2/delta) / (3 (s-1)).
// Natural logarithm. Requires s >= 2, variance >= 0, 0 < delta < 1, range > 0.
double bernstein_upper(double mean, double variance, std::uint64_t s, double range,
                       double delta);
// Matching lower bound: mean minus the same deviation terms.
double bernstein_lower(double mean, double variance, std::uint64_t s, double range,
                       double delta);

enum class MetricDirection { kNonDecreasing, kNonIncreasing };
enum class EpsilonKind { kStandard, kAlgorithm };

struct BoundInputs {
    std::string metric;  // label carried into the report
    int n = 0;
    double rho = 0.0;
    int r = -1;  // -1 = observational
    std::uint64_t samples = 0;
    double mean = 0.0;
    double variance = 0.0;
    double range = 0.0;  // per-sample range bound B
    double delta = 0.01;
    MetricDirection direction = MetricDirection::kNonDecreasing;
    EpsilonKind eps_kind = EpsilonKind::kStandard;
    bool exact_samples = true;  // false when the stats came from greedy upper bounds
};

// Sandwich on the asymptotic mean. For a non-decreasing metric the limit is
// bounded below by the finite-n mean and above by the Bernstein bound plus
// the tail term; for a non-increasing metric the sides flip.
struct BoundReport {
    BoundInputs in;
    double bernstein_upper = 0.0;
    double epsilon_n = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

BoundReport asymptotic_interval(const BoundInputs& in);

std::string report_csv_header();
std::string report_csv_row(const BoundReport& report);
std::string report_json(const BoundReport& report);

}  // namespace ordermec::bounds
