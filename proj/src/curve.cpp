#include "canal/curve.hpp"

#include <cmath>
#include <utility>

#include "canal/ellipse_kappa.hpp"
#include "canal/errors.hpp"
#include "canal/quadrature.hpp"

namespace canal {

Eigen::Vector4d FourierSeries::eval(double t, double w) const {
    Eigen::Vector4d out(a0, 0.0, 0.0, 0.0);
    const std::size_t n = std::max(cos_coeffs.size(), sin_coeffs.size());
    for (std::size_t k = 1; k <= n; ++k) {
        const double ak = k <= cos_coeffs.size() ? cos_coeffs[k - 1] : 0.0;
        const double bk = k <= sin_coeffs.size() ? sin_coeffs[k - 1] : 0.0;
        const double wk = w * static_cast<double>(k);
        const double c = std::cos(wk * t);
        const double s = std::sin(wk * t);
        out[0] += ak * c + bk * s;
        out[1] += wk * (-ak * s + bk * c);
        out[2] += wk * wk * (-ak * c - bk * s);
        out[3] += wk * wk * wk * (ak * s - bk * c);
    }
    return out;
}

ClosedCurve::ClosedCurve(double period, std::string kind,
                         std::function<CurveJet(double)> eval)
    : period_(period), kind_(std::move(kind)), eval_(std::move(eval)) {
    validate();
}

double ClosedCurve::reduce(double t) const {
    double r = std::fmod(t, period_);
    if (r < 0.0) r += period_;
    return r;
}

CurveJet ClosedCurve::eval(double t) const { return eval_(reduce(t)); }

void ClosedCurve::validate() const {
    if (!(period_ > 0.0))
        throw ConstructionError("curve: period must be positive");
    // Regularity: |c'| > 0 on a check grid.
    const int n = 256;
    for (int i = 0; i < n; ++i) {
        const double t = period_ * static_cast<double>(i) / n;
        const CurveJet j = eval_(t);
        if (!(j.vel.norm() > 1e-12))
            throw ConstructionError("curve: speed vanishes on check grid (t=" +
                                    std::to_string(t) + ")");
    }
    // Periodicity of the raw evaluator: all four jet entries agree at 0 and T.
    const CurveJet j0 = eval_(0.0);
    const CurveJet jT = eval_(period_);
    const double d = (j0.point - jT.point).norm() + (j0.vel - jT.vel).norm() +
                     (j0.acc - jT.acc).norm() + (j0.jerk - jT.jerk).norm();
    if (!(d < 1e-12))
        throw ConstructionError("curve: evaluator is not T-periodic");
}

ClosedCurve ClosedCurve::ellipse(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw ConstructionError("ellipse: semi-axes must be positive");
    auto eval = [a, b](double t) {
        const double c = std::cos(t);
        const double s = std::sin(t);
        CurveJet j;
        j.point = Vec3(a * c, b * s, 0.0);
        j.vel = Vec3(-a * s, b * c, 0.0);
        j.acc = Vec3(-a * c, -b * s, 0.0);
        j.jerk = Vec3(a * s, -b * c, 0.0);
        return j;
    };
    return ClosedCurve(2.0 * M_PI, "ellipse", eval);
}

ClosedCurve ClosedCurve::circle(double radius) {
    if (!(radius > 0.0))
        throw ConstructionError("circle: radius must be positive");
    const double w = 1.0 / radius;  // unit speed
    auto eval = [radius, w](double t) {
        const double c = std::cos(w * t);
        const double s = std::sin(w * t);
        CurveJet j;
        j.point = Vec3(radius * c, radius * s, 0.0);
        j.vel = Vec3(-s, c, 0.0);
        j.acc = Vec3(-w * c, -w * s, 0.0);
        j.jerk = Vec3(w * w * s, -w * w * c, 0.0);
        return j;
    };
    return ClosedCurve(2.0 * M_PI * radius, "circle", eval);
}

ClosedCurve ClosedCurve::deformed_ellipse(double eps) {
    auto eval = [eps](double t) {
        const double c = std::cos(t);
        const double s = std::sin(t);
        const EllipseKappaJet k = ellipse_kappa_jet(t);
        CurveJet j;
        j.point = Vec3(2.0 * c, s, eps * k.d1);
        j.vel = Vec3(-2.0 * s, c, eps * k.d2);
        j.acc = Vec3(-2.0 * c, -s, eps * k.d3);
        j.jerk = Vec3(2.0 * s, -c, eps * k.d4);
        return j;
    };
    return ClosedCurve(2.0 * M_PI, "family_curve", eval);
}

ClosedCurve ClosedCurve::fourier(FourierSeries x, FourierSeries y,
                                 FourierSeries z, double period) {
    if (!(period > 0.0))
        throw ConstructionError("fourier curve: period must be positive");
    const double w = 2.0 * M_PI / period;
    auto eval = [x = std::move(x), y = std::move(y), z = std::move(z),
                 w](double t) {
        const Eigen::Vector4d jx = x.eval(t, w);
        const Eigen::Vector4d jy = y.eval(t, w);
        const Eigen::Vector4d jz = z.eval(t, w);
        CurveJet j;
        j.point = Vec3(jx[0], jy[0], jz[0]);
        j.vel = Vec3(jx[1], jy[1], jz[1]);
        j.acc = Vec3(jx[2], jy[2], jz[2]);
        j.jerk = Vec3(jx[3], jy[3], jz[3]);
        return j;
    };
    return ClosedCurve(period, "fourier", eval);
}

FrenetData frenet(const CurveJet& jet) {
    FrenetData f;
    f.speed = jet.vel.norm();
    if (!(f.speed > 1e-12))
        throw BiRegularityFailure("frenet: curve speed vanishes");
    const Vec3 cross = jet.vel.cross(jet.acc);
    const double cross_norm = cross.norm();
    if (!(cross_norm / f.speed > 1e-12))
        throw BiRegularityFailure("frenet: |c' ^ c''| vanishes (normal undefined)");
    f.tangent = jet.vel / f.speed;
    f.binormal = cross / cross_norm;
    f.normal = f.binormal.cross(f.tangent);
    f.curvature = cross_norm / (f.speed * f.speed * f.speed);
    f.torsion = cross.dot(jet.jerk) / (cross_norm * cross_norm);
    return f;
}

FrenetData frenet(const ClosedCurve& curve, double t) {
    return frenet(curve.eval(t));
}

double biregularity_margin(const ClosedCurve& curve, int grid_n) {
    if (grid_n < 64) throw InputError("biregularity_margin: grid_n must be >= 64");
    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_n; ++i) {
        const double t = curve.period() * static_cast<double>(i) / grid_n;
        const CurveJet j = curve.eval(t);
        const double speed = j.vel.norm();
        margin = std::min(margin, j.vel.cross(j.acc).norm() / speed);
    }
    return margin;
}

double arc_length(const ClosedCurve& curve, double t0, double t1) {
    if (t0 > t1) throw InputError("arc_length: t0 must be <= t1");
    return integrate([&](double t) { return curve.eval(t).vel.norm(); }, t0, t1,
                     1e-11);
}

}  // namespace canal
