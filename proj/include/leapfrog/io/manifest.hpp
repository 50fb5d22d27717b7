#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace leapfrog::io {

/// Flat key=value record, kept in insertion order.
class Manifest {
public:
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    void set(const std::string& key, long long value);

    bool has(const std::string& key) const;
    /// Throws std::out_of_range for a missing key.
    const std::string& get(const std::string& key) const;
    double get_double(const std::string& key) const;

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

void write_manifest(std::ostream& out, const Manifest& m);
Manifest read_manifest(std::istream& in);
Manifest read_manifest(const std::string& path);

}  // namespace leapfrog::io
