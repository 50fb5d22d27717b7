#include "leapfrog/io/manifest.hpp"

#include "leapfrog/io/format.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace leapfrog::io {

void Manifest::set(const std::string& key, const std::string& value)
{
    if (key.empty() || key.find_first_of("=\n") != std::string::npos || value.find('\n') != std::string::npos) {
        throw std::invalid_argument("manifest: bad entry '" + key + "'");
    }
    for (auto& [k, v] : entries_) {
        if (k == key) {
            v = value;
            return;
        }
    }
    entries_.emplace_back(key, value);
}

void Manifest::set(const std::string& key, double value) { set(key, format_double(value)); }

void Manifest::set(const std::string& key, long long value) { set(key, std::to_string(value)); }

bool Manifest::has(const std::string& key) const
{
    for (const auto& e : entries_) {
        if (e.first == key) {
            return true;
        }
    }
    return false;
}

const std::string& Manifest::get(const std::string& key) const
{
    for (const auto& e : entries_) {
        if (e.first == key) {
            return e.second;
        }
    }
    throw std::out_of_range("manifest: no key '" + key + "'");
}

double Manifest::get_double(const std::string& key) const { return parse_double(get(key), key); }

void write_manifest(std::ostream& out, const Manifest& m)
{
    for (const auto& [k, v] : m.entries()) {
        out << k << '=' << v << '\n';
    }
}

Manifest read_manifest(std::istream& in)
{
    Manifest m;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("manifest: line without '=': " + line);
        }
        m.set(std::string(trim(std::string_view(line).substr(0, eq))), line.substr(eq + 1));
    }
    return m;
}

Manifest read_manifest(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    return read_manifest(in);
}

}  // namespace leapfrog::io
