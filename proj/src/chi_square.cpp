#include "lncat/chi_square.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "lncat/errors.hpp"

namespace lncat {

namespace {

constexpr int kMaxIterations = 300;
const double kEps = std::numeric_limits<double>::epsilon();
const double kFpMin = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();

// Lower regularized incomplete gamma P(a, x) by its series, for x < a + 1.
double gamma_p_series(double a, double x) {
    if (x == 0.0) return 0.0;
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int i = 0; i < kMaxIterations; ++i) {
        ++ap;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEps) {
            return sum * std::exp(-x + a * std::log(x) - gammln(a));
        }
    }
    throw InternalConsistencyError("incomplete gamma series did not converge");
}

// Upper regularized incomplete gamma Q(a, x) by modified Lentz continued
// fraction, for x >= a + 1.
double gamma_q_contfrac(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kFpMin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIterations; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = b + an / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) <= kEps) {
            return std::exp(-x + a * std::log(x) - gammln(a)) * h;
        }
    }
    throw InternalConsistencyError("incomplete gamma continued fraction did not converge");
}

}  // namespace

double gammln(double xx) {
    static const double cof[14] = {57.1562356658629235,     -59.5979603554754912,
                                   14.1360979747417471,     -0.491913816097620199,
                                   0.339946499848118887e-4, 0.465236289270485756e-4,
                                   -0.983744753048795646e-4, 0.158088703224912494e-3,
                                   -0.210264441724104883e-3, 0.217439618115212643e-3,
                                   -0.164318106536763890e-3, 0.844182239838527433e-4,
                                   -0.261908384015814087e-4, 0.368991826595316234e-5};
    if (!(xx > 0.0)) throw InvalidInput("gammln requires a positive argument");
    double y = xx;
    double tmp = xx + 5.24218750000000000;
    tmp = (xx + 0.5) * std::log(tmp) - tmp;
    double ser = 0.999999999999997092;
    for (int j = 0; j < 14; ++j) ser += cof[j] / ++y;
    return tmp + std::log(2.5066282746310005 * ser / xx);
}

double gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0) {
        throw InvalidInput("gamma_q requires a > 0 and x >= 0");
    }
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_contfrac(a, x);
}

double chi2_upper_tail(double x, int df) {
    if (df < 1) throw InvalidInput("degrees of freedom must be >= 1, got " + std::to_string(df));
    if (x < 0.0) throw InvalidInput("chi-square statistic must be nonnegative");
    return gamma_q(0.5 * df, 0.5 * x);
}

}  // namespace lncat
