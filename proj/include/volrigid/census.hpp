#ifndef VOLRIGID_CENSUS_HPP
#define VOLRIGID_CENSUS_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace volrigid {

struct VolumeRecord
{
    std::string name;
    double volume; // finite, > 0
};

struct ParseError
{
    std::size_t line; // 1-based
    std::string text;
    std::string message;
};

struct CensusParseResult
{
    std::vector<VolumeRecord> records;
    std::vector<ParseError> errors;
};

/// Reads `name,volume` lines. Blank lines and lines starting with '#' are
/// skipped; a first data line of the form `name,volume` is taken as a
/// header. Bad lines are reported and parsing continues.
CensusParseResult parse_census(std::istream& in);

struct VolumeCluster
{
    double representative; // smallest member volume
    std::size_t count;
    std::vector<std::string> names;
};

constexpr double default_cluster_epsilon = 1e-6;

/// Sorts by (volume, name) and chains neighbours whose gap is <= epsilon.
std::vector<VolumeCluster> cluster_volumes(std::vector<VolumeRecord> records,
                                           double epsilon = default_cluster_epsilon);

std::vector<std::pair<double, std::size_t>> histogram(const std::vector<VolumeCluster>& clusters);

/// [{"volume": v, "count": c, "names": [...]}, ...]
nlohmann::json clusters_to_json(const std::vector<VolumeCluster>& clusters);

} // namespace volrigid

#endif
