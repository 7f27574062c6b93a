#include <vfcm/fcm_mesh.hpp>

#include <cmath>

namespace vfcm {

void shape_functions_1d(int p, Real xi, Real* N, Real* dN) {
    N[0] = 0.5 * (1.0 - xi);
    N[1] = 0.5 * (1.0 + xi);
    dN[0] = -0.5;
    dN[1] = 0.5;
    if (p < 2) return;
    // Legendre values up to order p
    Real P0 = 1.0, P1 = xi;
    std::array<Real, 32> P;
    P[0] = P0;
    P[1] = P1;
    for (int k = 2; k <= p; ++k) P[k] = ((2 * k - 1) * xi * P[k - 1] - (k - 1) * P[k - 2]) / k;
    for (int k = 2; k <= p; ++k) {
        const Real scale = 1.0 / std::sqrt(2.0 * (2.0 * k - 1.0));
        N[k] = (P[k] - P[k - 2]) * scale;
        dN[k] = std::sqrt((2.0 * k - 1.0) / 2.0) * P[k - 1];
    }
}

FiniteCellMesh::FiniteCellMesh(const Box3& bbox, std::array<int, 3> divisions, int degree)
    : bbox_(bbox), div_(divisions), p_(degree) {
    if (degree < 1) throw InvalidArgument("mesh: degree must be at least 1");
    for (int d = 0; d < 3; ++d) {
        if (div_[d] < 1) throw InvalidArgument("mesh: divisions must be positive");
        h_[d] = (bbox_.hi[d] - bbox_.lo[d]) / div_[d];
        if (!(h_[d] > 0)) throw InvalidArgument("mesh: empty bbox");
    }
    const long nx = div_[0], ny = div_[1], nz = div_[2];
    const long em = edge_modes(), fm = face_modes();
    const long vm = long(p_ - 1) * (p_ - 1) * (p_ - 1);
    long off = 0;
    offsets_[0] = off;
    off += (nx + 1) * (ny + 1) * (nz + 1);                   // vertices
    offsets_[1] = off;
    off += nx * (ny + 1) * (nz + 1) * em;                    // x edges
    offsets_[2] = off;
    off += (nx + 1) * ny * (nz + 1) * em;                    // y edges
    offsets_[3] = off;
    off += (nx + 1) * (ny + 1) * nz * em;                    // z edges
    offsets_[4] = off;
    off += (nx + 1) * ny * nz * fm;                          // faces normal x
    offsets_[5] = off;
    off += nx * (ny + 1) * nz * fm;                          // faces normal y
    offsets_[6] = off;
    off += nx * ny * (nz + 1) * fm;                          // faces normal z
    offsets_[7] = off;
    off += nx * ny * nz * vm;                                // volumes
    n_scalar_ = off;
}

Box3 FiniteCellMesh::cell_box(long flat) const {
    const auto c = cell_coords(flat);
    Box3 b;
    b.lo = bbox_.lo + Vec3(c[0] * h_[0], c[1] * h_[1], c[2] * h_[2]);
    b.hi = b.lo + h_;
    return b;
}

long FiniteCellMesh::locate(const Vec3& x) const {
    if (!bbox_.contains(x, 1e-12 * bbox_.diagonal()))
        throw DomainError("mesh: point outside the extended domain");
    std::array<int, 3> idx;
    for (int d = 0; d < 3; ++d) {
        const int i = static_cast<int>(std::floor((x[d] - bbox_.lo[d]) / h_[d]));
        idx[d] = std::clamp(i, 0, div_[d] - 1);
    }
    return cell_flat(idx[0], idx[1], idx[2]);
}

Vec3 FiniteCellMesh::vertex_position(int i, int j, int k) const {
    return bbox_.lo + Vec3(i * h_[0], j * h_[1], k * h_[2]);
}

long FiniteCellMesh::vertex_dof(int i, int j, int k) const {
    const long nx = div_[0], ny = div_[1];
    return offsets_[0] + i + (nx + 1) * (j + (ny + 1) * long(k));
}

long FiniteCellMesh::edge_dof(int axis, int i, int j, int k, int mode) const {
    const long nx = div_[0], ny = div_[1];
    long idx = 0;
    switch (axis) {
        case 0: idx = i + nx * (j + (ny + 1) * long(k)); break;
        case 1: idx = i + (nx + 1) * (j + long(ny) * k); break;
        default: idx = i + (nx + 1) * (j + (ny + 1) * long(k)); break;
    }
    return offsets_[1 + axis] + idx * edge_modes() + mode;
}

long FiniteCellMesh::face_dof(int normal, int i, int j, int k, int mode) const {
    const long nx = div_[0], ny = div_[1], nz = div_[2];
    long idx = 0;
    switch (normal) {
        case 0: idx = i + (nx + 1) * (j + long(ny) * k); break;          // yz faces
        case 1: idx = i + long(nx) * (j + (ny + 1) * long(k)); break;     // xz faces
        default: idx = i + long(nx) * (j + long(ny) * k); break;          // xy faces
    }
    (void)nz;
    return offsets_[4 + normal] + idx * face_modes() + mode;
}

void FiniteCellMesh::cell_scalar_dofs(long flat, std::vector<long>& out) const {
    const auto c = cell_coords(flat);
    const int i = c[0], j = c[1], k = c[2];
    const int p = p_;
    out.resize(modes_per_cell());
    const long nx = div_[0], ny = div_[1], nz = div_[2];
    const long vm = long(p - 1) * (p - 1) * (p - 1);
    long l = 0;
    for (int cc = 0; cc <= p; ++cc)
        for (int bb = 0; bb <= p; ++bb)
            for (int aa = 0; aa <= p; ++aa, ++l) {
                const bool na = aa < 2, nb = bb < 2, nc = cc < 2;
                const int ia = na ? i + aa : aa - 2;
                const int jb = nb ? j + bb : bb - 2;
                const int kc = nc ? k + cc : cc - 2;
                long dof;
                if (na && nb && nc) {
                    dof = vertex_dof(ia, jb, kc);
                } else if (!na && nb && nc) {
                    dof = edge_dof(0, i, jb, kc, ia);
                } else if (na && !nb && nc) {
                    dof = edge_dof(1, ia, j, kc, jb);
                } else if (na && nb && !nc) {
                    dof = edge_dof(2, ia, jb, k, kc);
                } else if (na && !nb && !nc) {
                    dof = face_dof(0, ia, j, k, jb + (p - 1) * kc);
                } else if (!na && nb && !nc) {
                    dof = face_dof(1, i, jb, k, ia + (p - 1) * kc);
                } else if (!na && !nb && nc) {
                    dof = face_dof(2, i, j, kc, ia + (p - 1) * jb);
                } else {
                    const long cell = cell_flat(i, j, k);
                    dof = offsets_[7] + cell * vm +
                          (ia + long(p - 1) * (jb + long(p - 1) * kc));
                }
                out[l] = dof;
            }
    (void)nx;
    (void)ny;
    (void)nz;
}

std::vector<long> FiniteCellMesh::boundary_face_scalar_dofs(int face) const {
    const int axis = face / 2;
    const bool maxside = face % 2;
    const int nx = div_[0], ny = div_[1], nz = div_[2];
    const int plane = maxside ? (axis == 0 ? nx : axis == 1 ? ny : nz) : 0;
    std::vector<long> dofs;

    auto on_plane_v = [&](int i, int j, int k) {
        return (axis == 0 ? i : axis == 1 ? j : k) == plane;
    };
    for (int k = 0; k <= nz; ++k)
        for (int j = 0; j <= ny; ++j)
            for (int i = 0; i <= nx; ++i)
                if (on_plane_v(i, j, k)) dofs.push_back(vertex_dof(i, j, k));

    // edges lying in the plane: those whose axis differs from `axis`
    for (int ea = 0; ea < 3; ++ea) {
        if (ea == axis) continue;
        const int ni = (ea == 0) ? nx : nx + 1;
        const int nj = (ea == 1) ? ny : ny + 1;
        const int nk = (ea == 2) ? nz : nz + 1;
        for (int k = 0; k < nk; ++k)
            for (int j = 0; j < nj; ++j)
                for (int i = 0; i < ni; ++i) {
                    const int along = axis == 0 ? i : axis == 1 ? j : k;
                    if (along != plane) continue;
                    for (int m = 0; m < edge_modes(); ++m)
                        dofs.push_back(edge_dof(ea, i, j, k, m));
                }
    }
    // faces with normal == axis at the plane
    {
        const int ni = (axis == 0) ? nx + 1 : nx;
        const int nj = (axis == 1) ? ny + 1 : ny;
        const int nk = (axis == 2) ? nz + 1 : nz;
        for (int k = 0; k < nk; ++k)
            for (int j = 0; j < nj; ++j)
                for (int i = 0; i < ni; ++i) {
                    const int along = axis == 0 ? i : axis == 1 ? j : k;
                    if (along != plane) continue;
                    for (int m = 0; m < face_modes(); ++m)
                        dofs.push_back(face_dof(axis, i, j, k, m));
                }
    }
    return dofs;
}

}  // namespace vfcm
