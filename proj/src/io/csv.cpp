#include "leapfrog/io/csv.hpp"

#include "leapfrog/io/format.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace leapfrog::io {

namespace {

constexpr const char* kEnergyHeader = "k,t,twisted_kinetic,stored,dissipated_cum,work_cum,a_coeff,imbalance";
constexpr const char* kSnapshotHeader = "x,y,vnorm,divv,rotv";
constexpr const char* kAlphaHeader = "t,segment_index,alpha,sigma_x,sigma_y";

std::vector<std::string_view> split(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) {
            return out;
        }
        start = comma + 1;
    }
}

/// Calls row(fields, line_number) for each data line after checking the header.
template <typename F>
void read_table(std::istream& in, const char* header, std::size_t columns, F&& row)
{
    std::string line;
    if (!std::getline(in, line) || trim(line) != header) {
        throw std::runtime_error(std::string("expected CSV header '") + header + "'");
    }
    std::size_t n = 1;
    while (std::getline(in, line)) {
        ++n;
        if (trim(line).empty()) {
            continue;
        }
        const auto f = split(trim(line));
        if (f.size() != columns) {
            throw std::runtime_error("line " + std::to_string(n) + ": expected " + std::to_string(columns) +
                                     " columns, got " + std::to_string(f.size()));
        }
        try {
            row(f);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error("line " + std::to_string(n) + ": " + e.what());
        }
    }
}

std::ifstream open(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    return in;
}

}  // namespace

SnapshotTable make_snapshot(const Elastic2D<double>& ops, const Vector<double>& v)
{
    const auto& g = ops.grid();
    const Vector<double> nv = node_velocity(ops, v);
    const auto hf = helmholtz(ops, v);
    SnapshotTable s;
    const auto n = static_cast<std::size_t>(g.node_count());
    s.x.reserve(n);
    s.y.reserve(n);
    s.vnorm.reserve(n);
    s.divv.reserve(n);
    s.rotv.reserve(n);
    for (Index j = 0; j <= g.ny; ++j) {
        for (Index i = 0; i <= g.nx; ++i) {
            const Index k = g.node(i, j);
            const Vector2<double> p = g.node_position(i, j);
            s.x.push_back(p.x());
            s.y.push_back(p.y());
            s.vnorm.push_back(nv.segment<2>(2 * k).norm());
            s.divv.push_back(hf.div[k]);
            s.rotv.push_back(hf.rot[k]);
        }
    }
    return s;
}

std::vector<AlphaRow> alpha_rows(const Elastic2D<double>& ops, const Vector<double>& sigma,
                                 const Vector<double>& alpha, double t)
{
    std::vector<AlphaRow> rows;
    const Index off = ops.segment_offset();
    for (Index s = 0; s < ops.segment_count(); ++s) {
        rows.push_back({t, static_cast<long long>(ops.boundary().adhesive[static_cast<std::size_t>(s)].index),
                        alpha[s], sigma[off + 2 * s], sigma[off + 2 * s + 1]});
    }
    return rows;
}

void write_energy_header(std::ostream& out) { out << kEnergyHeader << '\n'; }

void write_energy_row(std::ostream& out, const EnergyLedger<double>& r)
{
    out << r.k << ',' << format_double(r.t) << ',' << format_double(r.twisted_kinetic) << ','
        << format_double(r.stored) << ',' << format_double(r.dissipated_cum) << ',' << format_double(r.work_cum)
        << ',' << format_double(r.a_coeff) << ',' << format_double(r.imbalance) << '\n';
}

void write_energy_csv(std::ostream& out, const std::vector<EnergyLedger<double>>& rows)
{
    write_energy_header(out);
    for (const auto& r : rows) {
        write_energy_row(out, r);
    }
}

void write_snapshot_csv(std::ostream& out, const SnapshotTable& s)
{
    out << kSnapshotHeader << '\n';
    for (std::size_t i = 0; i < s.size(); ++i) {
        out << format_double(s.x[i]) << ',' << format_double(s.y[i]) << ',' << format_double(s.vnorm[i]) << ','
            << format_double(s.divv[i]) << ',' << format_double(s.rotv[i]) << '\n';
    }
}

void write_alpha_header(std::ostream& out) { out << kAlphaHeader << '\n'; }

void write_alpha_rows(std::ostream& out, const std::vector<AlphaRow>& rows)
{
    for (const auto& r : rows) {
        out << format_double(r.t) << ',' << r.segment_index << ',' << format_double(r.alpha) << ','
            << format_double(r.sigma_x) << ',' << format_double(r.sigma_y) << '\n';
    }
}

std::vector<EnergyLedger<double>> read_energy_csv(std::istream& in)
{
    std::vector<EnergyLedger<double>> rows;
    read_table(in, kEnergyHeader, 8, [&](const auto& f) {
        EnergyLedger<double> r;
        r.k = parse_integer(f[0], "k");
        r.t = parse_double(f[1], "t");
        r.twisted_kinetic = parse_double(f[2], "twisted_kinetic");
        r.stored = parse_double(f[3], "stored");
        r.dissipated_cum = parse_double(f[4], "dissipated_cum");
        r.work_cum = parse_double(f[5], "work_cum");
        r.a_coeff = parse_double(f[6], "a_coeff");
        r.imbalance = parse_double(f[7], "imbalance");
        rows.push_back(r);
    });
    return rows;
}

SnapshotTable read_snapshot_csv(std::istream& in)
{
    SnapshotTable s;
    read_table(in, kSnapshotHeader, 5, [&](const auto& f) {
        s.x.push_back(parse_double(f[0], "x"));
        s.y.push_back(parse_double(f[1], "y"));
        s.vnorm.push_back(parse_double(f[2], "vnorm"));
        s.divv.push_back(parse_double(f[3], "divv"));
        s.rotv.push_back(parse_double(f[4], "rotv"));
    });
    return s;
}

std::vector<AlphaRow> read_alpha_csv(std::istream& in)
{
    std::vector<AlphaRow> rows;
    read_table(in, kAlphaHeader, 5, [&](const auto& f) {
        rows.push_back({parse_double(f[0], "t"), parse_integer(f[1], "segment_index"), parse_double(f[2], "alpha"),
                        parse_double(f[3], "sigma_x"), parse_double(f[4], "sigma_y")});
    });
    return rows;
}

std::vector<EnergyLedger<double>> read_energy_csv(const std::string& path)
{
    auto in = open(path);
    return read_energy_csv(in);
}

SnapshotTable read_snapshot_csv(const std::string& path)
{
    auto in = open(path);
    return read_snapshot_csv(in);
}

std::vector<AlphaRow> read_alpha_csv(const std::string& path)
{
    auto in = open(path);
    return read_alpha_csv(in);
}

}  // namespace leapfrog::io
