#include "leapfrog/scenarios/config.hpp"

#include "leapfrog/core/errors.hpp"
#include "leapfrog/io/format.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace leapfrog::scenarios {

namespace pt = boost::property_tree;

namespace {

ProcessKind parse_process_kind(const std::string& s)
{
    if (s == "null") return ProcessKind::null;
    if (s == "viscoplastic") return ProcessKind::viscoplastic;
    if (s == "adhesive") return ProcessKind::adhesive;
    throw ConfigError("process.kind: unknown process '" + s + "'");
}

LoadKind parse_load_kind(const std::string& s)
{
    if (s == "none") return LoadKind::none;
    if (s == "ramp_normal") return LoadKind::ramp_normal;
    if (s == "ramp_tangential") return LoadKind::ramp_tangential;
    if (s == "pulse") return LoadKind::pulse;
    if (s == "translation") return LoadKind::translation;
    throw ConfigError("loading.kind: unknown loading '" + s + "'");
}

struct Field {
    const char* section;
    const char* key;
    std::function<std::string(const ScenarioConfig&)> get;
    std::function<void(ScenarioConfig&, const std::string&, const std::string&)> set;
};

template <typename M>
Field real(const char* section, const char* key, M member)
{
    return {section, key, [member](const ScenarioConfig& c) { return io::format_double(member(c)); },
            [member](ScenarioConfig& c, const std::string& v, const std::string& what) {
                member(c) = io::parse_double(v, what);
            }};
}

template <typename M>
Field integer(const char* section, const char* key, M member)
{
    return {section, key, [member](const ScenarioConfig& c) { return std::to_string(member(c)); },
            [member](ScenarioConfig& c, const std::string& v, const std::string& what) {
                member(c) = io::parse_integer(v, what);
            }};
}

template <typename M>
Field boolean(const char* section, const char* key, M member)
{
    return {section, key,
            [member](const ScenarioConfig& c) {
                return std::string(member(c) ? "true" : "false");
            },
            [member](ScenarioConfig& c, const std::string& v, const std::string& what) {
                member(c) = io::parse_bool(v, what);
            }};
}

template <typename M>
Field text(const char* section, const char* key, M member)
{
    return {section, key, [member](const ScenarioConfig& c) { return member(c); },
            [member](ScenarioConfig& c, const std::string& v, const std::string&) { member(c) = v; }};
}

#define LF_MEMBER(path) [](auto& c) -> auto& { return c.path; }

const std::vector<Field>& fields()
{
    static const std::vector<Field> table = {
        text("scenario", "name", LF_MEMBER(name)),

        real("domain", "lx", LF_MEMBER(domain.lx)),
        real("domain", "ly", LF_MEMBER(domain.ly)),
        integer("domain", "nx", LF_MEMBER(domain.nx)),
        integer("domain", "ny", LF_MEMBER(domain.ny)),

        real("material", "bulk_modulus", LF_MEMBER(material.bulk_modulus)),
        real("material", "shear_modulus", LF_MEMBER(material.shear_modulus)),
        real("material", "density", LF_MEMBER(material.density)),

        Field{"process", "kind", [](const ScenarioConfig& c) { return std::string(to_string(c.process.kind)); },
              [](ScenarioConfig& c, const std::string& v, const std::string&) {
                  c.process.kind = parse_process_kind(v);
              }},
        real("process", "yield_stress", LF_MEMBER(process.yield_stress)),
        real("process", "viscosity", LF_MEMBER(process.viscosity)),
        real("process", "hardening", LF_MEMBER(process.hardening)),
        real("process", "toughness", LF_MEMBER(process.toughness)),
        real("process", "eps1", LF_MEMBER(process.eps1)),
        boolean("process", "healing", LF_MEMBER(process.healing)),
        text("process", "toughness_sign", LF_MEMBER(process.toughness_sign)),
        real("process", "stiffness_xx", LF_MEMBER(process.stiffness_xx)),
        real("process", "stiffness_xy", LF_MEMBER(process.stiffness_xy)),
        real("process", "stiffness_yy", LF_MEMBER(process.stiffness_yy)),
        real("process", "band_start", LF_MEMBER(process.band_start)),
        real("process", "band_end", LF_MEMBER(process.band_end)),

        Field{"loading", "kind", [](const ScenarioConfig& c) { return std::string(to_string(c.loading.kind)); },
              [](ScenarioConfig& c, const std::string& v, const std::string&) {
                  c.loading.kind = parse_load_kind(v);
              }},
        text("loading", "side", LF_MEMBER(loading.side)),
        real("loading", "amplitude", LF_MEMBER(loading.amplitude)),
        real("loading", "ramp_time", LF_MEMBER(loading.ramp_time)),
        real("loading", "center_x", LF_MEMBER(loading.center_x)),
        real("loading", "center_y", LF_MEMBER(loading.center_y)),
        real("loading", "width", LF_MEMBER(loading.width)),
        real("loading", "velocity_x", LF_MEMBER(loading.velocity_x)),
        real("loading", "velocity_y", LF_MEMBER(loading.velocity_y)),

        real("time", "duration", LF_MEMBER(time.duration)),
        real("time", "tau", LF_MEMBER(time.tau)),
        real("time", "cfl_factor", LF_MEMBER(time.cfl_factor)),
        real("time", "eta", LF_MEMBER(time.eta)),
        boolean("time", "allow_unstable", LF_MEMBER(time.allow_unstable)),
        Field{"time", "snapshots", [](const ScenarioConfig& c) { return io::format_double_list(c.time.snapshots); },
              [](ScenarioConfig& c, const std::string& v, const std::string& what) {
                  c.time.snapshots = io::parse_double_list(v, what);
              }},

        text("output", "directory", LF_MEMBER(output.directory)),
        boolean("output", "csv", LF_MEMBER(output.csv)),
        boolean("output", "vti", LF_MEMBER(output.vti)),
        integer("output", "alpha_stride", LF_MEMBER(output.alpha_stride)),
        integer("output", "seed", LF_MEMBER(output.seed)),
    };
    return table;
}

#undef LF_MEMBER

bool is_side(const std::string& s) { return s == "bottom" || s == "right" || s == "top" || s == "left"; }

void require(bool ok, const std::string& msg)
{
    if (!ok) {
        throw ConfigError(msg);
    }
}

}  // namespace

const char* to_string(ProcessKind k)
{
    switch (k) {
    case ProcessKind::null: return "null";
    case ProcessKind::viscoplastic: return "viscoplastic";
    case ProcessKind::adhesive: return "adhesive";
    }
    return "?";
}

const char* to_string(LoadKind k)
{
    switch (k) {
    case LoadKind::none: return "none";
    case LoadKind::ramp_normal: return "ramp_normal";
    case LoadKind::ramp_tangential: return "ramp_tangential";
    case LoadKind::pulse: return "pulse";
    case LoadKind::translation: return "translation";
    }
    return "?";
}

void ScenarioConfig::validate() const
{
    const auto& d = domain;
    require(d.lx > 0 && d.ly > 0, "domain: lx and ly must be positive");
    require(d.nx >= 2 && d.ny >= 2, "domain: at least 2x2 cells");
    const double hx = d.lx / static_cast<double>(d.nx);
    const double hy = d.ly / static_cast<double>(d.ny);
    require(std::abs(hx - hy) <= 1e-12 * hx, "domain: cells must be square (lx/nx == ly/ny)");

    const auto& m = material;
    require(m.bulk_modulus > 0 && m.shear_modulus > 0 && m.density > 0,
            "material: moduli and density must be positive");

    const auto& p = process;
    if (p.kind == ProcessKind::viscoplastic) {
        require(p.yield_stress >= 0 && p.viscosity >= 0 && p.hardening >= 0,
                "process: yield_stress, viscosity and hardening must be non-negative");
        require(!(p.yield_stress > 0) || p.viscosity > 0, "process: yield_stress > 0 needs viscosity > 0");
    }
    if (p.kind == ProcessKind::adhesive) {
        require(p.toughness >= 0 && p.eps1 >= 0, "process: toughness and eps1 must be non-negative");
        require(!p.healing || p.eps1 > 0, "process: healing needs eps1 > 0");
        require(p.toughness_sign == "threshold" || p.toughness_sign == "literal",
                "process: toughness_sign must be threshold or literal");
        require(p.stiffness_xx > 0 && p.stiffness_xx * p.stiffness_yy - p.stiffness_xy * p.stiffness_xy > 0,
                "process: adhesive stiffness must be positive definite");
        require(p.band_start >= 0 && p.band_start < p.band_end && p.band_end <= 1,
                "process: need 0 <= band_start < band_end <= 1");
    }

    const auto& l = loading;
    require(is_side(l.side), "loading: side must be bottom, right, top or left");
    if (l.kind == LoadKind::ramp_normal || l.kind == LoadKind::ramp_tangential) {
        require(l.ramp_time > 0, "loading: ramp_time must be positive");
    }
    if (l.kind == LoadKind::pulse) {
        require(l.width > 0, "loading: pulse width must be positive");
    }

    const auto& t = time;
    require(t.duration > 0, "time: duration must be positive");
    require(t.tau >= 0, "time: tau must be non-negative");
    require(t.cfl_factor > 0, "time: cfl_factor must be positive");
    require(t.cfl_factor <= 1 || t.allow_unstable, "time: cfl_factor > 1 needs allow_unstable");
    require(t.eta > 0 && t.eta < 4, "time: eta must lie in (0, 4)");
    for (double s : t.snapshots) {
        require(s >= 0 && s <= t.duration, "time: snapshot time " + io::format_double(s) + " outside [0, duration]");
    }

    require(!output.directory.empty(), "output: directory must not be empty");
    require(output.alpha_stride >= 1, "output: alpha_stride must be at least 1");
    require(output.seed >= 0, "output: seed must be non-negative");
}

ScenarioConfig parse_config(const std::string& text)
{
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
    }

    ScenarioConfig c;
    for (const auto& [section, body] : tree) {
        if (body.empty()) {
            throw ConfigError("config: key '" + section + "' outside any section");
        }
        for (const auto& [key, value] : body) {
            const Field* f = nullptr;
            for (const auto& cand : fields()) {
                if (section == cand.section && key == cand.key) {
                    f = &cand;
                    break;
                }
            }
            if (!f) {
                throw ConfigError("config: unknown key [" + section + "] " + key);
            }
            const std::string what = section + "." + key;
            try {
                f->set(c, value.data(), what);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("config: ") + e.what());
            }
        }
    }
    c.validate();
    return c;
}

ScenarioConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const ScenarioConfig& c)
{
    pt::ptree tree;
    for (const auto& f : fields()) {
        tree.put(pt::ptree::path_type(std::string(f.section) + "/" + f.key, '/'), f.get(c));
    }
    std::ostringstream out;
    pt::write_ini(out, tree);
    return out.str();
}

std::vector<std::pair<std::string, std::string>> flatten_config(const ScenarioConfig& c)
{
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& f : fields()) {
        out.emplace_back(std::string(f.section) + "." + f.key, f.get(c));
    }
    return out;
}

}  // namespace leapfrog::scenarios
