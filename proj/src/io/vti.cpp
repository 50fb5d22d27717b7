#include "leapfrog/io/vti.hpp"

#include "leapfrog/io/format.hpp"

#include <ostream>
#include <stdexcept>

namespace leapfrog::io {

namespace {

void array(std::ostream& out, const char* name, const std::vector<double>& values)
{
    out << "        <DataArray type=\"Float64\" Name=\"" << name << "\" format=\"ascii\">\n         ";
    for (double x : values) {
        out << ' ' << format_double(x);
    }
    out << "\n        </DataArray>\n";
}

}  // namespace

void write_vti(std::ostream& out, const SnapshotTable& s, long long nx, long long ny, double h, double x0, double y0)
{
    if (s.size() != static_cast<std::size_t>((nx + 1) * (ny + 1))) {
        throw std::invalid_argument("snapshot does not match the node lattice");
    }
    const std::string extent = "0 " + std::to_string(nx) + " 0 " + std::to_string(ny) + " 0 0";
    out << "<?xml version=\"1.0\"?>\n"
        << "<VTKFile type=\"ImageData\" version=\"0.1\" byte_order=\"LittleEndian\">\n"
        << "  <ImageData WholeExtent=\"" << extent << "\" Origin=\"" << format_double(x0) << ' '
        << format_double(y0) << " 0\" Spacing=\"" << format_double(h) << ' ' << format_double(h) << " 1\">\n"
        << "    <Piece Extent=\"" << extent << "\">\n"
        << "      <PointData Scalars=\"vnorm\">\n";
    array(out, "vnorm", s.vnorm);
    array(out, "divv", s.divv);
    array(out, "rotv", s.rotv);
    out << "      </PointData>\n"
        << "    </Piece>\n"
        << "  </ImageData>\n"
        << "</VTKFile>\n";
}

}  // namespace leapfrog::io
