#pragma once

#include <cstddef>
#include <cstdint>

namespace hrgvc {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Position in the native polar representation of the hyperbolic disk.
/// The angle is always kept reduced to [0, 2*pi).
struct PolarPoint {
    double radius = 0.0;
    double angle = 0.0;

    PolarPoint() = default;
    PolarPoint(double r, double phi);

    friend bool operator==(const PolarPoint&, const PolarPoint&) = default;
};

/// Generative parameters of a hyperbolic random graph: n vertices (or the
/// Poisson mean), alpha in (1/2, 1) and the radius offset C.
class ModelParams {
public:
    ModelParams(std::uint64_t n, double alpha, double c);

    std::uint64_t n() const noexcept { return n_; }
    double alpha() const noexcept { return alpha_; }
    double c() const noexcept { return c_; }
    /// Disk radius and connection threshold, 2 ln n + C.
    double radius() const noexcept { return radius_; }
    /// Power-law exponent 2 alpha + 1.
    double beta() const noexcept { return 2.0 * alpha_ + 1.0; }

private:
    std::uint64_t n_;
    double alpha_;
    double c_;
    double radius_;
};

/// Discretization constants of the inner-disk / outer-band analysis.
struct AnalysisConstants {
    double tau = 0.0;
    double gamma = 0.0;        // gamma(n, tau)
    double rho = 0.0;          // inner disk / outer band threshold radius
    double w = 0.0;            // narrow/wide run threshold, in sectors
    double sector_width = 0.0; // theta(rho, rho)
    std::size_t n_sectors = 0;
    std::size_t component_limit = 0;
};

/// Angular distance pi - |pi - |a - b||, in [0, pi].
double angular_distance(double a, double b) noexcept;

/// cosh of the hyperbolic distance. Evaluated as
/// cosh(r1 - r2) + 2 sinh r1 sinh r2 sin^2(dphi / 2), which is the
/// textbook formula rearranged to avoid cancellation for nearby points.
double cosh_distance(const PolarPoint& p, const PolarPoint& q) noexcept;

double hyperbolic_distance(const PolarPoint& p, const PolarPoint& q) noexcept;

/// Maximum angular distance at which points with radii r1, r2 are still
/// within distance R. Returns pi when every angle connects and 0 when none
/// does.
double max_angle_theta(double r1, double r2, double R) noexcept;

/// Probability that a sampled vertex has radius <= r.
double disk_measure(double r, const ModelParams& params);

/// Inverse of disk_measure.
double radial_quantile(double u, const ModelParams& params);

/// floor(tau * ln ln n), never below 1.
std::size_t component_limit(std::uint64_t n, double tau);

/// Component size cap used by the real-network protocol: tau * ceil(ln ln n),
/// floored to an integer and never below 1.
std::size_t protocol_component_limit(std::uint64_t n, double tau);

/// gamma(n, tau) = ln(tau ln ln n / (2 (ln ln ln n)^2)). Throws DomainError
/// when an iterated logarithm is undefined; may return a nonpositive value.
double gamma_function(std::uint64_t n, double tau);

/// Builds the constant bundle. Throws DomainError when gamma <= 0 or the
/// derived radius rho is not inside (0, R).
AnalysisConstants analysis_constants(const ModelParams& params, double tau);

} // namespace hrgvc
