#ifndef POROHHO_DOF_MAP_HPP
#define POROHHO_DOF_MAP_HPP

#include <vector>

#include "porohho/hho_space.hpp"
#include "porohho/pressure_space.hpp"

namespace porohho {

/// Unknown numbering of the coupled system. Displacement cell blocks come
/// first, then interior-face blocks (boundary faces are eliminated by the
/// strong Dirichlet condition), then pressure cell blocks, then the optional
/// zero-mean multiplier. The reduced (statically condensed) numbering is the
/// same with the displacement cell blocks dropped, so reduced indices are
/// unknown indices shifted by the cell block count.
class GlobalDofMap {
public:
  GlobalDofMap(const HhoSpace& U, const PressureSpace& P, bool zero_mean_multiplier);

  int n_unknowns() const { return m_n_unknowns; }
  int n_reduced() const { return m_n_unknowns - m_n_cell_dofs; }
  int n_cell_dofs() const { return m_n_cell_dofs; }
  int n_interior_face_dofs() const { return m_n_interior_face_dofs; }
  int n_pressure_dofs() const { return m_n_pressure_dofs; }
  bool has_multiplier() const { return m_multiplier >= 0; }

  int cell_offset(int iT) const { return iT * m_cell_block; }
  /// -1 for boundary (Dirichlet) faces.
  int face_offset(int iF) const { return m_face_offset[iF]; }
  int pressure_offset(int iT) const { return m_pressure_base + iT * m_pressure_block; }
  int multiplier_index() const { return m_multiplier; }

  int reduced_face_offset(int iF) const {
    return m_face_offset[iF] < 0 ? -1 : m_face_offset[iF] - m_n_cell_dofs;
  }
  int reduced_pressure_offset(int iT) const { return pressure_offset(iT) - m_n_cell_dofs; }
  int reduced_multiplier_index() const { return m_multiplier < 0 ? -1 : m_multiplier - m_n_cell_dofs; }

private:
  int m_cell_block, m_pressure_block;
  int m_n_cell_dofs, m_n_interior_face_dofs, m_n_pressure_dofs;
  int m_pressure_base;
  int m_multiplier = -1;
  int m_n_unknowns;
  std::vector<int> m_face_offset;
};

}  // namespace porohho

#endif
