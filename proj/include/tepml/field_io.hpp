#pragma once

/**
 * @file field_io.hpp
 * @brief Legacy VTK (ASCII unstructured grid) dump of a hexahedral mesh with
 * complex nodal fields, for external visualization.
 *
 * Point data: arrays u_re, u_im (3 components) and p_re, p_im (scalars).
 * Cell data: in_b1 (1 for cells inside B1).
 */

#include <string>

#include "tepml/fem.hpp"

namespace tepml {

/// Throws IoError when the file cannot be written.
void write_vtk(const std::string& path, const DiscreteField& field);

}  // namespace tepml
