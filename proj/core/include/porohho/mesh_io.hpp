#ifndef POROHHO_MESH_IO_HPP
#define POROHHO_MESH_IO_HPP

#include <iosfwd>
#include <string>

#include "porohho/mesh.hpp"

namespace porohho {

/// Supported mesh file formats. polymesh_2d is the whitespace-delimited text
/// format described in the README ("polymesh 2d" header, vertices/cells blocks,
/// optional starpoints block, '#' comments).
enum class MeshFormat { polymesh_2d };

/// Loads and fully builds a mesh. Parse errors carry the offending line number.
PolyMesh load_mesh(const std::string& path, MeshFormat format = MeshFormat::polymesh_2d);

/// Stream variant, used by tests; `name` only decorates error messages.
PolyMesh read_polymesh(std::istream& in, const std::string& name = "<stream>");

/// Writes the polymesh 2d text format (star points included when they differ
/// from the centroids).
void save_mesh(const PolyMesh& mesh, const std::string& path);

}  // namespace porohho

#endif
