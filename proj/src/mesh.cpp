#include "canal/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "canal/errors.hpp"

namespace canal {

namespace {

std::string fmt17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

MeshStats export_mesh(const CanalSurface& surface, int nt, int nphi,
                      const std::string& path,
                      const std::vector<std::string>& header) {
    if (nt < 3 || nphi < 3)
        throw InputError("export_mesh: nt and nphi must be >= 3");

    std::ofstream out(path);
    if (!out) throw Error("export_mesh: cannot open " + path);
    for (const std::string& line : header) out << "# " << line << "\n";

    const double period = surface.period();
    std::vector<Vec3> points(static_cast<std::size_t>(nt) * nphi);
    std::vector<Vec3> normals(points.size());
    for (int i = 0; i < nt; ++i) {
        const double t = period * static_cast<double>(i) / nt;
        const SurfaceFrame fr = surface.frame(t);
        const Vec3 center = surface.curve().eval(t).point;
        for (int j = 0; j < nphi; ++j) {
            const double phi = 2.0 * M_PI * static_cast<double>(j) / nphi;
            const std::size_t idx = static_cast<std::size_t>(i) * nphi + j;
            points[idx] = canal_point(fr, center, phi);
            normals[idx] = canal_normal(fr, phi);
        }
    }

    for (const Vec3& p : points)
        out << "v " << fmt17(p.x()) << " " << fmt17(p.y()) << " " << fmt17(p.z())
            << "\n";
    for (const Vec3& n : normals)
        out << "vn " << fmt17(n.x()) << " " << fmt17(n.y()) << " "
            << fmt17(n.z()) << "\n";

    MeshStats stats;
    stats.vertex_count = nt * nphi;
    stats.face_count = nt * nphi;
    auto vid = [&](int i, int j) {
        return ((i % nt) * nphi + (j % nphi)) + 1;  // 1-based, periodic wrap
    };
    for (int i = 0; i < nt; ++i) {
        for (int j = 0; j < nphi; ++j) {
            const int q[4] = {vid(i, j), vid(i + 1, j), vid(i + 1, j + 1),
                              vid(i, j + 1)};
            out << "f";
            for (int v : q) out << " " << v << "//" << v;
            out << "\n";
            // Face normal against the analytic inward normal.
            const Vec3& p0 = points[q[0] - 1];
            const Vec3& p1 = points[q[1] - 1];
            const Vec3& p3 = points[q[3] - 1];
            const Vec3 face_n = (p1 - p0).cross(p3 - p0);
            if (face_n.dot(normals[q[0] - 1]) <= 0.0)
                stats.normal_flip_warning = true;
        }
    }
    if (!out) throw Error("export_mesh: write failed for " + path);
    return stats;
}

}  // namespace canal
