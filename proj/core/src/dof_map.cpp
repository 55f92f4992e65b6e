#include "porohho/dof_map.hpp"

namespace porohho {

GlobalDofMap::GlobalDofMap(const HhoSpace& U, const PressureSpace& P, bool zero_mean_multiplier) {
  const PolyMesh& mesh = U.mesh();
  m_cell_block = U.cell_block();
  m_pressure_block = P.block();
  m_n_cell_dofs = mesh.n_cells() * m_cell_block;

  m_face_offset.assign(mesh.n_faces(), -1);
  int offset = m_n_cell_dofs;
  for (int iF = 0; iF < mesh.n_faces(); ++iF) {
    if (!mesh.face(iF).is_boundary()) {
      m_face_offset[iF] = offset;
      offset += U.face_block();
    }
  }
  m_n_interior_face_dofs = offset - m_n_cell_dofs;
  m_pressure_base = offset;
  m_n_pressure_dofs = P.total_dofs();
  offset += m_n_pressure_dofs;
  if (zero_mean_multiplier) m_multiplier = offset++;
  m_n_unknowns = offset;
}

}  // namespace porohho
