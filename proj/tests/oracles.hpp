// Independent test oracles: finite differences, fixed-step RK4, spectral
// trapezoid quadrature, a dual-chart Riccati integrator, and a minimal OBJ
// reader. Everything here is deliberately separate from the implementation
// paths it checks.
#pragma once
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

/// splitmix64-based uniform doubles; identical on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    double uniform(double lo, double hi) {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z = z ^ (z >> 31);
        const double u = static_cast<double>(z >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

  private:
    std::uint64_t state_;
};

/// Composite trapezoid rule; spectrally accurate for smooth periodic f over
/// a full period.
template <class F>
double trapezoid_periodic(const F& f, double a, double b, int n) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += f(a + (b - a) * i / n);
    return sum * (b - a) / n;
}

/// Classic fixed-step RK4 for scalar ODEs.
template <class F>
double rk4(const F& f, double t0, double y0, double t1, int n) {
    const double h = (t1 - t0) / n;
    double t = t0, y = y0;
    for (int i = 0; i < n; ++i) {
        const double k1 = f(t, y);
        const double k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
        const double k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
        const double k4 = f(t + h, y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;
    }
    return y;
}

/// Central finite difference of a vector-valued function of one variable.
template <class F>
Eigen::Vector3d fd_derivative(const F& f, double t, double h = 1e-5) {
    return (f(t + h) - f(t - h)) / (2.0 * h);
}

struct ObjData {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<Eigen::Vector3d> normals;
    std::vector<std::vector<int>> faces;  // 1-based vertex indices
};

inline ObjData read_obj(const std::string& path) {
    ObjData obj;
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag == "v" || tag == "vn") {
            double x, y, z;
            ss >> x >> y >> z;
            (tag == "v" ? obj.vertices : obj.normals).emplace_back(x, y, z);
        } else if (tag == "f") {
            std::vector<int> face;
            std::string tok;
            while (ss >> tok)
                face.push_back(std::stoi(tok.substr(0, tok.find('/'))));
            obj.faces.push_back(face);
        }
    }
    return obj;
}

}  // namespace oracle
