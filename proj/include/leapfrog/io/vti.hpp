#pragma once

#include "leapfrog/io/csv.hpp"

#include <iosfwd>

namespace leapfrog::io {

/// ASCII VTK ImageData over the node lattice with point fields vnorm, divv, rotv.
void write_vti(std::ostream& out, const SnapshotTable& s, long long nx, long long ny, double h, double x0, double y0);

}  // namespace leapfrog::io
