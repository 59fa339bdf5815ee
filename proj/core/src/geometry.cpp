#include "hrgvc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hrgvc/errors.hpp"

namespace hrgvc {

namespace {

double reduce_angle(double phi) {
    double a = std::fmod(phi, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    // fmod of a tiny negative value can round up to exactly 2*pi
    if (a >= kTwoPi) a = 0.0;
    return a;
}

std::string format_double(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

} // namespace

PolarPoint::PolarPoint(double r, double phi) : radius(r), angle(reduce_angle(phi)) {
    if (!(r >= 0.0)) throw ContractError("PolarPoint: radius must be nonnegative");
}

ModelParams::ModelParams(std::uint64_t n, double alpha, double c) : n_(n), alpha_(alpha), c_(c) {
    if (n == 0) throw DomainError("ModelParams: n must be positive");
    if (!(alpha > 0.5 && alpha < 1.0)) throw DomainError("ModelParams: alpha must lie in (1/2, 1)");
    radius_ = 2.0 * std::log(static_cast<double>(n)) + c;
    if (!(radius_ > 0.0)) throw DomainError("ModelParams: R = 2 ln n + C must be positive");
}

double angular_distance(double a, double b) noexcept {
    return kPi - std::abs(kPi - std::abs(a - b));
}

double cosh_distance(const PolarPoint& p, const PolarPoint& q) noexcept {
    const double half = std::sin(angular_distance(p.angle, q.angle) / 2.0);
    const double value = std::cosh(p.radius - q.radius)
                         + 2.0 * std::sinh(p.radius) * std::sinh(q.radius) * half * half;
    return std::max(1.0, value);
}

double hyperbolic_distance(const PolarPoint& p, const PolarPoint& q) noexcept {
    return std::acosh(cosh_distance(p, q));
}

double max_angle_theta(double r1, double r2, double R) noexcept {
    // 1 - cos(theta) = (cosh R - cosh(r1 - r2)) / (sinh r1 sinh r2)
    const double numer = std::cosh(R) - std::cosh(r1 - r2);
    const double denom = std::sinh(r1) * std::sinh(r2);
    if (denom <= 0.0) return numer >= 0.0 ? kPi : 0.0;
    const double y = numer / denom;
    if (y <= 0.0) return 0.0;
    if (y >= 2.0) return kPi;
    return 2.0 * std::asin(std::sqrt(y / 2.0));
}

double disk_measure(double r, const ModelParams& params) {
    const double R = params.radius();
    if (!(r >= 0.0 && r <= R)) throw DomainError("disk_measure: r must lie in [0, R]");
    const double a = params.alpha();
    // cosh(x) - 1 == expm1(x) + expm1(-x) over 2, keeping precision near 0
    const auto cosh_m1 = [](double x) { return 2.0 * std::sinh(x / 2.0) * std::sinh(x / 2.0); };
    return cosh_m1(a * r) / cosh_m1(a * R);
}

double radial_quantile(double u, const ModelParams& params) {
    if (!(u >= 0.0 && u <= 1.0)) throw DomainError("radial_quantile: u must lie in [0, 1]");
    const double a = params.alpha();
    const double R = params.radius();
    const double cosh_m1 = 2.0 * std::sinh(a * R / 2.0) * std::sinh(a * R / 2.0);
    // acosh(1 + x) = 2 asinh(sqrt(x / 2))
    const double r = 2.0 * std::asinh(std::sqrt(u * cosh_m1 / 2.0)) / a;
    return std::min(r, R);
}

std::size_t component_limit(std::uint64_t n, double tau) {
    if (!(tau > 0.0)) throw DomainError("component_limit: tau must be positive");
    if (n < 3) return 1;
    const double raw = std::floor(tau * std::log(std::log(static_cast<double>(n))));
    return raw < 1.0 ? 1 : static_cast<std::size_t>(raw);
}

std::size_t protocol_component_limit(std::uint64_t n, double tau) {
    if (!(tau > 0.0)) throw DomainError("protocol_component_limit: tau must be positive");
    if (n < 3) return 1;
    const double raw = std::floor(tau * std::ceil(std::log(std::log(static_cast<double>(n)))));
    return raw < 1.0 ? 1 : static_cast<std::size_t>(raw);
}

double gamma_function(std::uint64_t n, double tau) {
    if (!(tau > 0.0)) throw DomainError("gamma(n, tau): tau must be positive");
    // ln ln ln n > 0 requires n > e^e
    if (n < 16) {
        throw DomainError("gamma(n, tau): iterated logarithms undefined for n = " + std::to_string(n)
                          + "; minimum admissible n is 16");
    }
    const double l2 = std::log(std::log(static_cast<double>(n)));
    const double l3 = std::log(l2);
    return std::log(tau * l2 / (2.0 * l3 * l3));
}

namespace {

// gamma > 0 iff ln(tau) + ln(x) - 2 ln ln(x) > 0 with x = ln ln n. The left
// side is minimal at x = e^2, so the inadmissible x form one interval.
std::string gamma_admissibility(double tau) {
    const auto g = [tau](double x) { return std::log(tau) + std::log(x) - 2.0 * std::log(std::log(x)); };
    const double pivot = std::exp(2.0);
    std::ostringstream os;
    os << "minimum admissible n for tau = " << format_double(tau) << " is 16";
    if (g(pivot) > 0.0) return os.str();
    const auto root = [&](double lo, double hi) {
        // g(lo) and g(hi) have opposite signs
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            if ((g(mid) > 0.0) == (g(lo) > 0.0)) lo = mid; else hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    double lo = 1.0 + 1e-12;
    double hi = pivot * 2.0;
    while (g(hi) <= 0.0) hi *= 2.0;
    const double x1 = root(lo, pivot);
    const double x2 = root(pivot, hi);
    os << "; gamma(n, tau) <= 0 while ln ln n lies in [" << format_double(x1) << ", " << format_double(x2)
       << "], so admissible n satisfy 16 <= n < exp(exp(" << format_double(x1)
       << ")) or n > exp(exp(" << format_double(x2) << "))";
    return os.str();
}

} // namespace

AnalysisConstants analysis_constants(const ModelParams& params, double tau) {
    const std::uint64_t n = params.n();
    const double gamma = gamma_function(n, tau);
    if (!(gamma > 0.0)) {
        throw DomainError("analysis constants: gamma(n, tau) = " + format_double(gamma) + " <= 0 at n = "
                          + std::to_string(n) + "; " + gamma_admissibility(tau));
    }
    const double R = params.radius();
    const double shift = std::log(kPi / 2.0 * std::exp(params.c() / 2.0) * gamma);
    const double rho = R - shift;
    if (!(rho < R)) {
        const double l2 = std::log(std::log(static_cast<double>(n)));
        const double l3 = std::log(l2);
        const double tau_min = 2.0 * l3 * l3 / l2 * std::exp(2.0 * std::exp(-params.c() / 2.0) / kPi);
        const double c_min = 2.0 * std::log(2.0 / (kPi * gamma));
        throw DomainError("analysis constants: rho = " + format_double(rho) + " >= R = " + format_double(R)
                          + " at n = " + std::to_string(n) + " (pi/2 e^(C/2) gamma <= 1); requires tau > "
                          + format_double(tau_min) + " or C > " + format_double(c_min)
                          + "; minimum admissible n is 16 for tau above that bound");
    }
    if (!(rho > 0.0)) {
        throw DomainError("analysis constants: rho = " + format_double(rho) + " <= 0 at n = " + std::to_string(n));
    }

    AnalysisConstants k;
    k.tau = tau;
    k.gamma = gamma;
    k.rho = rho;
    k.w = std::exp(gamma) * std::log(std::log(std::log(static_cast<double>(n))));
    k.sector_width = max_angle_theta(rho, rho, R);
    const double count = std::floor(kTwoPi / k.sector_width);
    if (!(count >= 1.0)) throw DomainError("analysis constants: sector width exceeds the full circle");
    k.n_sectors = static_cast<std::size_t>(count);
    k.component_limit = component_limit(n, tau);
    return k;
}

} // namespace hrgvc
