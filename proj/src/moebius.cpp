#include "canal/moebius.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <limits>

#include "canal/errors.hpp"

namespace canal {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;

double wrap_pm_pi(double x) {
    double r = std::remainder(x, kTwoPi);
    if (r <= -M_PI) r += kTwoPi;
    return r;
}
}  // namespace

MoebiusMap::MoebiusMap(double a, double b, double c, double d)
    : a_(a), b_(b), c_(c), d_(d) {
    const double det = a_ * d_ - b_ * c_;
    if (!(det > 0.0))
        throw FitFailure("moebius: determinant " + std::to_string(det) +
                         " is not positive");
    const double s = 1.0 / std::sqrt(det);
    a_ *= s;
    b_ *= s;
    c_ *= s;
    d_ *= s;
    if (a_ + d_ < 0.0) {
        a_ = -a_;
        b_ = -b_;
        c_ = -c_;
        d_ = -d_;
    }
}

MoebiusMap MoebiusMap::identity() { return MoebiusMap(1.0, 0.0, 0.0, 1.0); }

MoebiusMap MoebiusMap::rotation(double psi) {
    const double ch = std::cos(0.5 * psi);
    const double sh = std::sin(0.5 * psi);
    return MoebiusMap(ch, sh, -sh, ch);
}

double MoebiusMap::apply_z(double z) const {
    if (std::isinf(z)) {
        if (c_ == 0.0) return std::numeric_limits<double>::infinity();
        return a_ / c_;
    }
    const double den = c_ * z + d_;
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    return (a_ * z + b_) / den;
}

double MoebiusMap::apply_angle(double phi) const {
    const double s = std::sin(0.5 * phi);
    const double c = std::cos(0.5 * phi);
    const double u = a_ * s + b_ * c;
    const double v = c_ * s + d_ * c;
    return wrap_angle(2.0 * std::atan2(u, v));
}

double MoebiusMap::displacement(double phi) const {
    return wrap_pm_pi(apply_angle(phi) - phi);
}

double MoebiusMap::derivative_angle(double phi) const {
    const double s = std::sin(0.5 * phi);
    const double c = std::cos(0.5 * phi);
    const double u = a_ * s + b_ * c;
    const double v = c_ * s + d_ * c;
    return 1.0 / (u * u + v * v);
}

double MoebiusMap::second_derivative_angle(double phi) const {
    const double s = std::sin(0.5 * phi);
    const double c = std::cos(0.5 * phi);
    const double u = a_ * s + b_ * c;
    const double v = c_ * s + d_ * c;
    const double up = 0.5 * (a_ * c - b_ * s);
    const double vp = 0.5 * (c_ * c - d_ * s);
    const double q = u * u + v * v;
    return -2.0 * (u * up + v * vp) / (q * q);
}

MoebiusMap MoebiusMap::inverse() const {
    return MoebiusMap(d_, -b_, -c_, a_);
}

MoebiusMap MoebiusMap::compose(const MoebiusMap& rhs) const {
    return MoebiusMap(a_ * rhs.a_ + b_ * rhs.c_, a_ * rhs.b_ + b_ * rhs.d_,
                      c_ * rhs.a_ + d_ * rhs.c_, c_ * rhs.b_ + d_ * rhs.d_);
}

std::string to_string(MapClass c) {
    switch (c) {
        case MapClass::identity: return "identity";
        case MapClass::elliptic: return "elliptic";
        case MapClass::hyperbolic: return "hyperbolic";
        case MapClass::parabolic: return "parabolic";
    }
    return "unknown";
}

MoebiusFit fit_moebius(const FlowField& flow, double tol) {
    const double starts[3] = {0.0, kTwoPi / 3.0, 2.0 * kTwoPi / 3.0};
    Eigen::Matrix<double, 3, 4> A;
    double lift0 = 0.0;
    for (int i = 0; i < 3; ++i) {
        const ReturnPoint rp = return_map_point(flow, starts[i], tol);
        if (i == 0) lift0 = rp.lift_delta;
        const double s0 = std::sin(0.5 * starts[i]);
        const double c0 = std::cos(0.5 * starts[i]);
        const double s1 = std::sin(0.5 * rp.phi1);
        const double c1 = std::cos(0.5 * rp.phi1);
        // s1 (c s0 + d c0) - c1 (a s0 + b c0) = 0
        A(i, 0) = -c1 * s0;
        A(i, 1) = -c1 * c0;
        A(i, 2) = s1 * s0;
        A(i, 3) = s1 * c0;
    }
    Eigen::JacobiSVD<Eigen::Matrix<double, 3, 4>> svd(
        A, Eigen::ComputeFullV);
    const Eigen::Vector4d n = svd.matrixV().col(3);

    MoebiusFit fit;
    fit.map = MoebiusMap(n[0], n[1], n[2], n[3]);  // throws if det <= 0
    fit.lift_delta0 = lift0;

    // Chebyshev-distributed validation angles; none hits the z pole at pi.
    double residual = 0.0;
    for (int j = 1; j <= 8; ++j) {
        const double phi0 = M_PI + M_PI * std::cos((2.0 * j - 1.0) * M_PI / 16.0);
        const ReturnPoint rp = return_map_point(flow, phi0, tol);
        const double predicted = fit.map.apply_angle(phi0);
        const double chordal =
            2.0 * std::abs(std::sin(0.5 * (predicted - rp.phi1)));
        residual = std::max(residual, chordal);
    }
    fit.residual = residual;
    if (!(residual <= 100.0 * tol))
        throw FitFailure("moebius fit residual " + std::to_string(residual) +
                         " exceeds 100*tol; return map is not fractional-linear");
    return fit;
}

namespace {

FixedPointInfo make_fixed_point(double phi, double multiplier) {
    FixedPointInfo fp;
    fp.phi = wrap_angle(phi);
    fp.multiplier = multiplier;
    if (multiplier < 1.0)
        fp.stability = FixedPointInfo::Stability::attracting;
    else if (multiplier > 1.0)
        fp.stability = FixedPointInfo::Stability::repelling;
    else
        fp.stability = FixedPointInfo::Stability::semi_stable;
    return fp;
}

/// Rotation angle of an elliptic map resolved against a reference lift:
/// the eigen-angle gives the rotation number up to sign and winding.
double elliptic_rotation(double trace, double lift_reference) {
    const double theta = std::acos(std::clamp(0.5 * trace, -1.0, 1.0));
    const double base = 2.0 * theta;  // rotation conjugate to phi -> phi + base
    auto nearest = [&](double psi) {
        const double k = std::round((lift_reference - psi) / kTwoPi);
        return psi + kTwoPi * k;
    };
    const double plus = nearest(base);
    const double minus = nearest(-base);
    const double d_plus = std::abs(plus - lift_reference);
    const double d_minus = std::abs(minus - lift_reference);
    return (d_plus <= d_minus ? plus : minus) / kTwoPi;
}

}  // namespace

ReturnMapReport classify_return_map(const MoebiusMap& map, double lift_reference,
                                    double delta) {
    ReturnMapReport rep;
    rep.moebius = map;
    rep.lift_delta = lift_reference;
    const double a = map.a(), b = map.b(), c = map.c(), d = map.d();
    const double trace = map.trace();  // >= 0 by normalization

    if (trace < 2.0 - delta) {
        rep.classification = MapClass::elliptic;
        rep.rotation_number = elliptic_rotation(trace, lift_reference);
        return rep;
    }

    if (trace > 2.0 + delta) {
        rep.classification = MapClass::hyperbolic;
        rep.rotation_number = std::round(lift_reference / kTwoPi);
        // Fixed points: roots of c z^2 + (d - a) z - b = 0 mapped back to
        // angles; the multiplier is the angle-chart derivative there.
        const double scale = std::abs(a) + std::abs(b) + std::abs(d) + 1.0;
        double phi1, phi2;
        if (std::abs(c) < 1e-14 * scale) {
            phi1 = 2.0 * std::atan(b / (d - a));
            phi2 = M_PI;  // the z = inf root
        } else {
            const double B = d - a;
            const double sq = std::sqrt(trace * trace - 4.0);
            const double q = -0.5 * (B + (B >= 0.0 ? sq : -sq));
            phi1 = 2.0 * std::atan(q / c);
            phi2 = 2.0 * std::atan(-b / q);
        }
        for (double phi : {phi1, phi2})
            rep.fixed_points.push_back(
                make_fixed_point(phi, map.derivative_angle(phi)));
        return rep;
    }

    // |trace| within delta of 2.
    if (std::abs(b) < delta && std::abs(c) < delta && std::abs(a - d) < delta) {
        rep.classification = MapClass::identity;
        rep.rotation_number = std::round(lift_reference / kTwoPi);
        return rep;
    }

    rep.classification = MapClass::parabolic;
    rep.rotation_number = std::round(lift_reference / kTwoPi);

    // Double fixed point of the quadratic, then Newton on the displacement.
    double phi;
    const double scale = std::abs(a) + std::abs(b) + std::abs(d) + 1.0;
    if (std::abs(c) < 1e-14 * scale)
        phi = M_PI;
    else
        phi = 2.0 * std::atan((a - d) / (2.0 * c));

    // Critical point of the displacement first (Newton on its derivative);
    // at the double root both f and f' vanish, so plain Newton on f stalls.
    for (int it = 0; it < 30; ++it) {
        const double fp = map.derivative_angle(phi) - 1.0;
        const double fpp = map.second_derivative_angle(phi);
        if (std::abs(fpp) < 1e-300) break;
        const double step = fp / fpp;
        phi -= step;
        if (std::abs(step) < 1e-15) break;
    }
    double best_phi = phi;
    double best_res = std::abs(map.displacement(phi));
    const double f_crit = map.displacement(phi);
    const double fpp_crit = map.second_derivative_angle(phi);
    if (f_crit * fpp_crit < 0.0 && std::abs(fpp_crit) > 1e-300) {
        // Local quadratic model has real zeros; polish one with Newton on f.
        const double offset = std::sqrt(-2.0 * f_crit / fpp_crit);
        for (double start : {phi + offset, phi - offset}) {
            double p = start;
            for (int it = 0; it < 30; ++it) {
                const double f = map.displacement(p);
                const double fp = map.derivative_angle(p) - 1.0;
                if (std::abs(fp) < 1e-300) break;
                const double step = f / fp;
                p -= step;
                if (std::abs(step) < 1e-15) break;
            }
            const double res = std::abs(map.displacement(p));
            if (res < best_res) {
                best_res = res;
                best_phi = p;
            }
        }
    }
    rep.parabolic_confident = best_res < 1.5e-8;
    rep.fixed_points.push_back(make_fixed_point(best_phi, 1.0));
    return rep;
}

ReturnMapReport find_principal_cycles(const FlowField& flow, double tol) {
    const MoebiusFit fit = fit_moebius(flow, tol);
    ReturnMapReport rep = classify_return_map(fit.map, fit.lift_delta0);
    rep.fit_residual = fit.residual;

    for (const FixedPointInfo& fp : rep.fixed_points) {
        const ReturnPoint rp = return_map_point(flow, fp.phi, tol);
        const double resid = std::abs(wrap_pm_pi(rp.phi1 - fp.phi));
        if (!(resid < 10.0 * tol))
            throw FitFailure("principal cycle at phi=" + std::to_string(fp.phi) +
                             " failed direct verification: |Pi(phi)-phi|=" +
                             std::to_string(resid));
        const double h = 1e-5;
        const double lift_p = return_map_point(flow, fp.phi + h, tol).lift_delta;
        const double lift_m = return_map_point(flow, fp.phi - h, tol).lift_delta;
        const double fd = 1.0 + (lift_p - lift_m) / (2.0 * h);
        const double analytic = fit.map.derivative_angle(fp.phi);
        if (!(std::abs(fd - analytic) <= 1e-4 * std::abs(analytic)))
            throw FitFailure(
                "multiplier cross-check failed at phi=" + std::to_string(fp.phi) +
                ": fd=" + std::to_string(fd) +
                " analytic=" + std::to_string(analytic));
    }
    return rep;
}

}  // namespace canal
