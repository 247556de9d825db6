#include "ordermec/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace ordermec::bounds {

namespace {

void check_rho_open(double rho) {
    if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("rho must be in (0, 1)");
}

std::string fmt12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// Kahan-compensated accumulation in extended precision; terms are produced by
// `term(i)` starting at i = n. Underflow-adjacent regimes (x^i for i in the
// hundreds) stay accurate this way.
template <class TermFn>
long double kahan_tail(int n, TermFn term) {
    long double sum = 0.0L, carry = 0.0L;
    for (int i = n;; ++i) {
        long double t = term(i);
        long double y = t - carry;
        long double s = sum + y;
        carry = (s - sum) - y;
        sum = s;
        if (i > n && t < 1e-18L * sum) break;
        if (i > n + 4000000) throw std::runtime_error("series failed to converge");
    }
    return sum;
}

double deviation_terms(double variance, std::uint64_t s, double range, double delta) {
    if (s < 2) throw std::invalid_argument("need at least two samples");
    if (variance < 0.0) throw std::invalid_argument("variance must be >= 0");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must be in (0, 1)");
    if (!(range > 0.0)) throw std::invalid_argument("range bound must be positive");
    const long double log_term = std::log(2.0L / static_cast<long double>(delta));
    const long double sqrt_term =
        std::sqrt(2.0L * static_cast<long double>(variance) * log_term / static_cast<long double>(s));
    const long double range_term =
        static_cast<long double>(range) * 7.0L * log_term / (3.0L * static_cast<long double>(s - 1));
    return static_cast<double>(sqrt_term + range_term);
}

}  // namespace

double rhs(double rho, int n) {
    check_rho_open(rho);
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const long double x = 1.0L - static_cast<long double>(rho) * (1.0L - rho);
    return static_cast<double>(rho * n * std::pow(x, static_cast<long double>(n - 1)));
}

double epsilon(double rho, int n) {
    check_rho_open(rho);
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const long double r = rho;
    const long double x = 1.0L - r * (1.0L - r);
    const long double xn1 = std::pow(x, static_cast<long double>(n - 1));
    return static_cast<double>(x * xn1 / (r * (1.0L - r) * (1.0L - r)) +
                               n * xn1 / (1.0L - r));
}

double epsilon_series(double rho, int n) {
    check_rho_open(rho);
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const long double r = rho;
    const long double x = 1.0L - r * (1.0L - r);
    return static_cast<double>(kahan_tail(n, [&](int i) {
        return r * i * std::pow(x, static_cast<long double>(i - 1));
    }));
}

double epsilon_algo(double rho, int n) {
    check_rho_open(rho);
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const long double r = rho;
    const long double x = 1.0L - r * (1.0L - r);
    return static_cast<double>(kahan_tail(n, [&](int i) {
        const long double li = i;
        return r * li * li * (li + 1.0L) / 2.0L * std::pow(x, li - 1.0L);
    }));
}

double epsilon_algo_forward(double rho, int n) {
    check_rho_open(rho);
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const long double r = rho;
    const long double x = 1.0L - r * (1.0L - r);
    long double sum = 0.0L;
    for (int i = n;; ++i) {
        const long double li = i;
        const long double t = r * li * li * (li + 1.0L) / 2.0L * std::pow(x, li - 1.0L);
        sum += t;
        if (i > n && t < 1e-18L * sum) break;
    }
    return static_cast<double>(sum);
}

double diff_lower_bound(double rho, int n) {
    check_rho_open(rho);
    if (n < 2) throw std::invalid_argument("n must be >= 2");
    return static_cast<double>((n - 1) * static_cast<long double>(rho) *
                               std::pow(1.0L - static_cast<long double>(rho),
                                        static_cast<long double>(2 * n - 4)));
}

double bernstein_upper(double mean, double variance, std::uint64_t s, double range,
                       double delta) {
    return mean + deviation_terms(variance, s, range, delta);
}

double bernstein_lower(double mean, double variance, std::uint64_t s, double range,
                       double delta) {
    return mean - deviation_terms(variance, s, range, delta);
}

BoundReport asymptotic_interval(const BoundInputs& in) {
    BoundReport report;
    report.in = in;
    report.epsilon_n =
        in.eps_kind == EpsilonKind::kStandard ? epsilon(in.rho, in.n) : epsilon_algo(in.rho, in.n);
    report.bernstein_upper = bernstein_upper(in.mean, in.variance, in.samples, in.range, in.delta);
    if (in.direction == MetricDirection::kNonDecreasing) {
        // limit >= E[metric_n] (estimated by the mean) and
        // limit <= E[metric_n] + eps_n <= bernstein + eps_n.
        report.lower = in.mean;
        report.upper = report.bernstein_upper + report.epsilon_n;
    } else {
        // Non-increasing metrics approach the limit from above:
        // E[metric_n] - eps_n <= limit <= E[metric_n].
        report.lower = std::max(
            0.0, bernstein_lower(in.mean, in.variance, in.samples, in.range, in.delta) -
                     report.epsilon_n);
        report.upper = report.bernstein_upper;
    }
    return report;
}

std::string report_csv_header() {
    return "metric,n,rho,r,samples,mean,variance,range,delta,bernstein_upper,epsilon_n,"
           "lower,upper,exact\n";
}

std::string report_csv_row(const BoundReport& report) {
    std::ostringstream out;
    const BoundInputs& in = report.in;
    out << in.metric << ',' << in.n << ',' << fmt12(in.rho) << ',' << in.r << ','
        << in.samples << ',' << fmt12(in.mean) << ',' << fmt12(in.variance) << ','
        << fmt12(in.range) << ',' << fmt12(in.delta) << ',' << fmt12(report.bernstein_upper)
        << ',' << fmt12(report.epsilon_n) << ',' << fmt12(report.lower) << ','
        << fmt12(report.upper) << ',' << (in.exact_samples ? 1 : 0) << '\n';
    return out.str();
}

std::string report_json(const BoundReport& report) {
    std::ostringstream out;
    const BoundInputs& in = report.in;
    out << "{\"metric\":\"" << in.metric << "\",\"n\":" << in.n << ",\"rho\":" << fmt12(in.rho)
        << ",\"r\":" << in.r << ",\"samples\":" << in.samples << ",\"mean\":" << fmt12(in.mean)
        << ",\"variance\":" << fmt12(in.variance) << ",\"range\":" << fmt12(in.range)
        << ",\"delta\":" << fmt12(in.delta) << ",\"bernstein_upper\":"
        << fmt12(report.bernstein_upper) << ",\"epsilon_n\":" << fmt12(report.epsilon_n)
        << ",\"lower\":" << fmt12(report.lower) << ",\"upper\":" << fmt12(report.upper)
        << ",\"exact\":" << (in.exact_samples ? "true" : "false") << "}";
    return out.str();
}

}  // namespace ordermec::bounds
