#include "volrigid/census.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <stdexcept>

#include "volrigid/format.hpp"

namespace volrigid {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool is_header(const std::string& name, const std::string& volume)
{
    auto lower = [](std::string s) {
        std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
        return s;
    };
    return lower(name) == "name" && lower(volume) == "volume";
}

} // namespace

CensusParseResult parse_census(std::istream& in)
{
    CensusParseResult result;
    std::string raw;
    std::size_t line_no = 0;
    bool seen_data = false;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line.front() == '#')
            continue;
        auto fail = [&](std::string msg) { result.errors.push_back({line_no, raw, std::move(msg)}); };
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            fail("expected exactly two fields: name,volume");
            seen_data = true;
            continue;
        }
        const std::string name = trim(line.substr(0, comma));
        const std::string vol = trim(line.substr(comma + 1));
        if (!seen_data && is_header(name, vol)) {
            seen_data = true;
            continue;
        }
        seen_data = true;
        if (name.empty()) {
            fail("empty name");
            continue;
        }
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(vol.data(), vol.data() + vol.size(), v);
        if (ec != std::errc() || ptr != vol.data() + vol.size()) {
            fail("volume is not a number: '" + vol + "'");
            continue;
        }
        if (!std::isfinite(v) || v <= 0.0) {
            fail("volume must be finite and positive: '" + vol + "'");
            continue;
        }
        result.records.push_back({name, v});
    }
    return result;
}

std::vector<VolumeCluster> cluster_volumes(std::vector<VolumeRecord> records, double epsilon)
{
    if (!(epsilon > 0.0))
        throw std::domain_error("cluster_volumes: epsilon must be positive");
    std::sort(records.begin(), records.end(), [](const VolumeRecord& x, const VolumeRecord& y) {
        return x.volume != y.volume ? x.volume < y.volume : x.name < y.name;
    });
    std::vector<VolumeCluster> out;
    double previous = 0.0;
    for (const auto& r : records) {
        if (out.empty() || r.volume - previous > epsilon)
            out.push_back({r.volume, 0, {}});
        out.back().names.push_back(r.name);
        out.back().count = out.back().names.size();
        previous = r.volume;
    }
    return out;
}

std::vector<std::pair<double, std::size_t>> histogram(const std::vector<VolumeCluster>& clusters)
{
    std::vector<std::pair<double, std::size_t>> out;
    out.reserve(clusters.size());
    for (const auto& c : clusters)
        out.emplace_back(c.representative, c.count);
    std::sort(out.begin(), out.end());
    return out;
}

nlohmann::json clusters_to_json(const std::vector<VolumeCluster>& clusters)
{
    auto arr = nlohmann::json::array();
    for (const auto& c : clusters)
        arr.push_back({{"volume", round_significant(c.representative)},
                       {"count", c.count},
                       {"names", c.names}});
    return arr;
}

} // namespace volrigid
