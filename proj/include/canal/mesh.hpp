#pragma once
#include <string>
#include <vector>

#include "canal/surface.hpp"

namespace canal {

struct MeshStats {
    int vertex_count = 0;
    int face_count = 0;
    bool normal_flip_warning = false;  ///< some face disagreed with the
                                       ///< analytic inward normal
};

/// Wavefront OBJ export: nt x nphi vertex grid alpha(t_i, phi_j) with
/// analytic per-vertex normals and quad faces wrapping periodically in both
/// directions (torus combinatorics, V - E + F = 0). Floats are written with
/// 17 significant digits. `header` lines are emitted as leading # comments.
/// Requires nt, nphi >= 3.
MeshStats export_mesh(const CanalSurface& surface, int nt, int nphi,
                      const std::string& path,
                      const std::vector<std::string>& header = {});

}  // namespace canal
