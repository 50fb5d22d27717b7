#pragma once

#include "leapfrog/core/integrator.hpp"
#include "leapfrog/elastic2d/elastic_ops.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace leapfrog::io {

/// Node-resampled velocity diagnostics of one state, row-major over the
/// (nx+1) x (ny+1) nodes with x running fastest.
struct SnapshotTable {
    std::vector<double> x, y, vnorm, divv, rotv;

    std::size_t size() const { return x.size(); }
};

struct AlphaRow {
    double t = 0;
    long long segment_index = 0;  ///< index along the side
    double alpha = 0;
    double sigma_x = 0;  ///< adhesive proto-stress
    double sigma_y = 0;
};

SnapshotTable make_snapshot(const Elastic2D<double>& ops, const Vector<double>& v);

/// Rows for every adhesive segment of `alpha` at time t.
std::vector<AlphaRow> alpha_rows(const Elastic2D<double>& ops, const Vector<double>& sigma,
                                 const Vector<double>& alpha, double t);

void write_energy_csv(std::ostream& out, const std::vector<EnergyLedger<double>>& rows);
void write_energy_header(std::ostream& out);
void write_energy_row(std::ostream& out, const EnergyLedger<double>& row);
void write_snapshot_csv(std::ostream& out, const SnapshotTable& s);
void write_alpha_header(std::ostream& out);
void write_alpha_rows(std::ostream& out, const std::vector<AlphaRow>& rows);

/// Readers check the header and throw std::runtime_error on malformed input.
std::vector<EnergyLedger<double>> read_energy_csv(std::istream& in);
SnapshotTable read_snapshot_csv(std::istream& in);
std::vector<AlphaRow> read_alpha_csv(std::istream& in);

std::vector<EnergyLedger<double>> read_energy_csv(const std::string& path);
SnapshotTable read_snapshot_csv(const std::string& path);
std::vector<AlphaRow> read_alpha_csv(const std::string& path);

}  // namespace leapfrog::io
