#pragma once

#include <string>
#include <string_view>

namespace multifact {

// America includes North and South America plus Oceania (Australia and
// New Zealand are tagged with subregion "Oceania" under continent America).
enum class Continent { Africa, America, Asia, Europe };

std::string to_string(Continent c);
Continent parse_continent(std::string_view name);

struct GeoTag {
    Continent continent;
    std::string subregion;  // UN geoscheme name, e.g. "Eastern Asia", "Oceania"

    bool operator==(const GeoTag&) const = default;
};

}  // namespace multifact
